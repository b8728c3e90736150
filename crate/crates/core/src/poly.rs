//! Sparse multivariate polynomials over the coefficient tower.
//!
//! Terms live in a BTreeMap keyed by monomial in graded lexicographic order
//! (total degree first, then earlier variables win). The variable set is an
//! explicit shared context carrying names and weights; binary operations on
//! polynomials over different variable sets are programming errors and panic.
//! Weights only matter for weighted degrees and validation, never for the
//! term order, so exact division works uniformly.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::coeff::{Coeff, ExtField, Rational};
use num_traits::{One, Signed, Zero};

/// Ordered list of variable names with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    pub fn new(names: &[&str], weights: &[u32]) -> Rc<Self> {
        assert_eq!(names.len(), weights.len());
        assert!(!names.is_empty());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        Rc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        })
    }

    /// Projective plane coordinates.
    pub fn p2() -> Rc<Self> {
        VarSet::new(&["x1", "x2", "x3"], &[1, 1, 1])
    }

    /// Weighted coordinates for the hyperelliptic ambient P(1,1,1,3).
    pub fn p1113() -> Rc<Self> {
        VarSet::new(&["x1", "x2", "x3", "y"], &[1, 1, 1, 3])
    }

    /// Weighted coordinates for the unigonal ambient P(1,1,1,2,3).
    pub fn p11123() -> Rc<Self> {
        VarSet::new(&["x1", "x2", "x3", "y", "z"], &[1, 1, 1, 2, 3])
    }

    /// The subring of the unigonal ambient that carries the input data: the
    /// degree-six form lives in x1, x2, x3 and y only, never z.
    pub fn p1112() -> Rc<Self> {
        VarSet::new(&["x1", "x2", "x3", "y"], &[1, 1, 1, 2])
    }

    /// Parameter line coordinates for conic parametrizations.
    pub fn uv() -> Rc<Self> {
        VarSet::new(&["u", "v"], &[1, 1])
    }

    /// Coordinates on P(1,1,4), where rank-three unigonal data lives after
    /// the conic is rationally parametrized.
    pub fn p114() -> Rc<Self> {
        VarSet::new(&["u", "v", "y"], &[1, 1, 4])
    }

    /// Coordinates on P(1,1,2), used when restricting to a line of a rank
    /// two conic.
    pub fn p112() -> Rc<Self> {
        VarSet::new(&["u", "v", "y"], &[1, 1, 2])
    }

    /// Affine chart coordinates.
    pub fn affine2() -> Rc<Self> {
        VarSet::new(&["a", "b"], &[1, 1])
    }

    /// Local coordinates at a point, used by the germ classifier.
    pub fn germ2() -> Rc<Self> {
        VarSet::new(&["x", "y"], &[1, 1])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically with
/// earlier variables more significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, vars: &VarSet) -> u64 {
        self.0
            .iter()
            .zip(&vars.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. Invariant: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Rc<VarSet>,
    terms: BTreeMap<Monomial, Coeff>,
}

fn assert_same_vars(a: &MultiPoly, b: &MultiPoly) {
    assert!(
        Rc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomials over different variable sets: {:?} vs {:?}",
        a.vars.names,
        b.vars.names
    );
}

impl MultiPoly {
    pub fn zero(vars: &Rc<VarSet>) -> Self {
        MultiPoly {
            vars: Rc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Rc<VarSet>, c: Coeff) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn one(vars: &Rc<VarSet>) -> Self {
        MultiPoly::constant(vars, Coeff::one())
    }

    pub fn var(vars: &Rc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len());
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        MultiPoly::monomial(vars, &exps, Coeff::one())
    }

    pub fn monomial(vars: &Rc<VarSet>, exps: &[u32], c: Coeff) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps.to_vec()), c);
        }
        p
    }

    pub fn from_terms(vars: &Rc<VarSet>, terms: Vec<(Vec<u32>, Coeff)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len());
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn vars(&self) -> &Rc<VarSet> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1
            && self
                .terms
                .keys()
                .all(|m| m.0.iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Coeff {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    /// As a constant, if it is one (zero polynomial gives zero).
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_same_vars(self, other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_same_vars(self, other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_same_vars(self, other);
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        assert!(i < self.vars.len());
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c.mul(&Coeff::from_int(e as i64)));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&self.vars))
            .max()
    }

    /// True when every term has the same weighted degree (zero counts).
    pub fn is_weighted_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(&self.vars));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Coefficients of powers of variable `i`, lowest first, as polynomials
    /// over the same variable set (not involving `i`). Empty for zero.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(i) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![MultiPoly::zero(&self.vars); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut exps = m.0.clone();
            exps[i] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Inverse of `coeffs_in`: sum of coeffs[k] * x_i^k.
    pub fn from_coeffs_in(vars: &Rc<VarSet>, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            assert!(
                Rc::ptr_eq(&c.vars, vars) || *c.vars == **vars,
                "coefficient over wrong variable set"
            );
            for (m, a) in &c.terms {
                let mut exps = m.0.clone();
                exps[i] += k as u32;
                out.add_term(Monomial(exps), a.clone());
            }
        }
        out
    }

    /// Full evaluation.
    pub fn eval(&self, values: &[Coeff]) -> Coeff {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&values[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute a constant for variable `i`, staying in the same ring.
    pub fn eval_at(&self, i: usize, value: &Coeff) -> MultiPoly {
        assert!(i < self.vars.len());
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            out.add_term(Monomial(exps), c.mul(&value.pow(e)));
        }
        out
    }

    /// Ring homomorphism determined by sending variable `i` to `images[i]`,
    /// all of which live over `target`. Coefficients pass through unchanged.
    pub fn map_vars(&self, target: &Rc<VarSet>, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len());
        for im in images {
            assert!(
                Rc::ptr_eq(&im.vars, target) || *im.vars == **target,
                "image over wrong variable set"
            );
        }
        // Memoize powers of each image up to the largest exponent used.
        let mut max_exp = vec![0u32; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(images.len());
        for (i, im) in images.iter().enumerate() {
            let mut tower = Vec::with_capacity(max_exp[i] as usize + 1);
            tower.push(MultiPoly::one(target));
            for k in 1..=max_exp[i] as usize {
                let next = tower[k - 1].mul(im);
                tower.push(next);
            }
            powers.push(tower);
        }
        let mut acc = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact division: Some(q) with self == q * divisor, or None.
    pub fn try_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_same_vars(self, divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(&self.vars);
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.quotient(&dm);
            let qc = rc.div(&dc).expect("leading coefficient is nonzero");
            let mut step = MultiPoly::zero(&self.vars);
            step.terms.insert(qm.clone(), qc.clone());
            rem = rem.sub(&step.mul(divisor));
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// The extension field any coefficient lives in, if one does.
    pub fn ext_field(&self) -> Option<Rc<ExtField>> {
        self.terms
            .values()
            .find_map(|c| c.ext_field().cloned())
    }

    /// Canonical scalar normalization. Over Q: clear denominators, divide by
    /// the integer content and make the leading coefficient positive. If any
    /// coefficient lies in an extension: make the polynomial monic.
    pub fn normalize_primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        if self.ext_field().is_some() {
            let lc = self.leading().unwrap().1.clone();
            return self.scale(&lc.inv().expect("leading coefficient nonzero"));
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            denom_lcm = denom_lcm.lcm(r.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            let scaled = r.numer() * (&denom_lcm / r.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut unit = Rational::new(denom_lcm, numer_gcd);
        if self.leading().unwrap().1.as_rational().unwrap().is_negative() == !unit.is_negative() {
            unit = -unit;
        }
        self.scale(&Coeff::Rat(unit))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let is_const_mono = m.0.iter().all(|&e| e == 0);
            // Decide sign handling and the magnitude text of the coefficient.
            let (neg, mag_text, needs_parens) = match c {
                Coeff::Rat(r) => {
                    let neg = r.is_negative();
                    (neg, format!("{}", r.abs()), false)
                }
                Coeff::Ext(_) => (false, format!("{c}"), true),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_unit = !needs_parens && mag_text == "1";
            let mut wrote_factor = false;
            if is_const_mono || !coeff_is_unit {
                if needs_parens {
                    write!(f, "({mag_text})")?;
                } else {
                    write!(f, "{mag_text}")?;
                }
                wrote_factor = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
            debug_assert!(wrote_factor);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xy() -> Rc<VarSet> {
        VarSet::germ2()
    }

    fn x(vars: &Rc<VarSet>) -> MultiPoly {
        MultiPoly::var(vars, 0)
    }

    fn y(vars: &Rc<VarSet>) -> MultiPoly {
        MultiPoly::var(vars, 1)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let mk = |a: u32, b: u32| Monomial(vec![a, b]);
        let mut ms = vec![mk(0, 0), mk(0, 1), mk(1, 0), mk(0, 2), mk(1, 1), mk(2, 0)];
        ms.sort();
        assert_eq!(
            ms,
            vec![mk(0, 0), mk(0, 1), mk(1, 0), mk(0, 2), mk(1, 1), mk(2, 0)]
        );
    }

    #[test]
    fn binomial_square() {
        let v = xy();
        let p = x(&v).add(&y(&v));
        let sq = p.pow(2);
        let expect = MultiPoly::from_terms(
            &v,
            vec![
                (vec![2, 0], Coeff::one()),
                (vec![1, 1], Coeff::from_int(2)),
                (vec![0, 2], Coeff::one()),
            ],
        );
        assert_eq!(sq, expect);
        // (x+y)(x-y) = x^2 - y^2
        let diff = x(&v).sub(&y(&v));
        let prod = p.mul(&diff);
        let expect = MultiPoly::from_terms(
            &v,
            vec![
                (vec![2, 0], Coeff::one()),
                (vec![0, 2], Coeff::from_int(-1)),
            ],
        );
        assert_eq!(prod, expect);
    }

    #[test]
    fn derivative_basic() {
        let v = xy();
        // d/dx (x^3 y + x) = 3 x^2 y + 1
        let p = MultiPoly::from_terms(
            &v,
            vec![(vec![3, 1], Coeff::one()), (vec![1, 0], Coeff::one())],
        );
        let d = p.derivative(0);
        let expect = MultiPoly::from_terms(
            &v,
            vec![(vec![2, 1], Coeff::from_int(3)), (vec![0, 0], Coeff::one())],
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn weighted_degrees() {
        let v = VarSet::p1113();
        // y^2 and x1^6 both have weighted degree 6.
        let p = MultiPoly::from_terms(
            &v,
            vec![
                (vec![0, 0, 0, 2], Coeff::one()),
                (vec![6, 0, 0, 0], Coeff::from_int(-1)),
            ],
        );
        assert_eq!(p.weighted_degree(), Some(6));
        assert!(p.is_weighted_homogeneous());
        let q = p.add(&MultiPoly::var(&v, 0));
        assert!(!q.is_weighted_homogeneous());
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let num = x(&v).pow(2).sub(&y(&v).pow(2));
        let den = x(&v).sub(&y(&v));
        let q = num.try_div(&den).unwrap();
        assert_eq!(q, x(&v).add(&y(&v)));
        assert!(num.try_div(&x(&v).add(&MultiPoly::one(&v))).is_none());
    }

    #[test]
    fn division_round_trip_seeded() {
        let v = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let mut p = MultiPoly::zero(&v);
                for _ in 0..4 {
                    let e = vec![rng.gen_range(0..3), rng.gen_range(0..3)];
                    let c = rng.gen_range(-4i64..=4);
                    p = p.add(&MultiPoly::monomial(&v, &e, Coeff::from_int(c)));
                }
                p
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            if b.is_zero() {
                continue;
            }
            let prod = a.mul(&b);
            let q = prod.try_div(&b).expect("product must divide");
            assert_eq!(q, a);
        }
    }

    #[test]
    fn homogeneity_closed_under_multiplication() {
        let v = VarSet::p1113();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            // Random weighted-homogeneous polynomials of weighted degree 6.
            let monos6: Vec<Vec<u32>> = vec![
                vec![6, 0, 0, 0],
                vec![0, 6, 0, 0],
                vec![0, 0, 6, 0],
                vec![0, 0, 0, 2],
                vec![3, 0, 0, 1],
                vec![2, 2, 2, 0],
                vec![1, 2, 0, 1],
            ];
            let build = |rng: &mut ChaCha8Rng| {
                let mut p = MultiPoly::zero(&v);
                for m in &monos6 {
                    let c = rng.gen_range(-3i64..=3);
                    p = p.add(&MultiPoly::monomial(&v, m, Coeff::from_int(c)));
                }
                p
            };
            let a = build(&mut rng);
            let b = build(&mut rng);
            let prod = a.mul(&b);
            assert!(prod.is_weighted_homogeneous());
            if !prod.is_zero() {
                assert_eq!(prod.weighted_degree(), Some(12));
            }
        }
    }

    #[test]
    fn map_vars_is_a_ring_homomorphism() {
        let v = xy();
        let target = VarSet::affine2();
        let a = MultiPoly::var(&target, 0);
        let b = MultiPoly::var(&target, 1);
        // x -> a + b, y -> a*b
        let images = vec![a.add(&b), a.mul(&b)];
        let f = x(&v).pow(2).add(&y(&v));
        let g = x(&v).sub(&y(&v).pow(2));
        let fg = f.mul(&g);
        let lhs = fg.map_vars(&target, &images);
        let rhs = f.map_vars(&target, &images).mul(&g.map_vars(&target, &images));
        assert_eq!(lhs, rhs);
        // Spot check: x^2 + y -> (a+b)^2 + ab = a^2 + 3ab + b^2
        let expect = MultiPoly::from_terms(
            &target,
            vec![
                (vec![2, 0], Coeff::one()),
                (vec![1, 1], Coeff::from_int(3)),
                (vec![0, 2], Coeff::one()),
            ],
        );
        assert_eq!(f.map_vars(&target, &images), expect);
    }

    #[test]
    fn eval_and_eval_at() {
        let v = xy();
        let f = x(&v).pow(3).add(&y(&v).scale(&Coeff::from_int(2)));
        let val = f.eval(&[Coeff::from_int(2), Coeff::from_int(-1)]);
        assert_eq!(val, Coeff::from_int(6));
        let g = f.eval_at(0, &Coeff::from_int(2));
        let expect = MultiPoly::from_terms(
            &v,
            vec![(vec![0, 0], Coeff::from_int(8)), (vec![0, 1], Coeff::from_int(2))],
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn coeffs_in_round_trip() {
        let v = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..25 {
            let mut p = MultiPoly::zero(&v);
            for _ in 0..6 {
                let e = vec![rng.gen_range(0..4), rng.gen_range(0..4)];
                let c = rng.gen_range(-5i64..=5);
                p = p.add(&MultiPoly::monomial(&v, &e, Coeff::from_int(c)));
            }
            for i in 0..2 {
                let cs = p.coeffs_in(i);
                let back = MultiPoly::from_coeffs_in(&v, i, &cs);
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn primitive_normalization() {
        let v = xy();
        let p = x(&v)
            .scale(&Coeff::Rat(rat(2, 3)))
            .sub(&y(&v).scale(&Coeff::Rat(rat(4, 3))));
        let n = p.normalize_primitive();
        let expect = x(&v).sub(&y(&v).scale(&Coeff::from_int(2)));
        assert_eq!(n, expect);
        // Leading sign flips to positive.
        let q = p.neg().normalize_primitive();
        assert_eq!(q, expect);
        // Idempotent.
        assert_eq!(n.normalize_primitive(), n);
    }

    #[test]
    fn display_canonical_form() {
        let v = VarSet::p2();
        let p = MultiPoly::from_terms(
            &v,
            vec![
                (vec![2, 0, 0], Coeff::from_int(1)),
                (vec![1, 1, 0], Coeff::from_int(-3)),
                (vec![0, 0, 2], Coeff::Rat(rat(1, 2))),
                (vec![0, 0, 0], Coeff::from_int(-7)),
            ],
        );
        assert_eq!(format!("{p}"), "x1^2 - 3*x1*x2 + 1/2*x3^2 - 7");
        assert_eq!(format!("{}", MultiPoly::zero(&v)), "0");
        let m = MultiPoly::monomial(&v, &[0, 1, 0], Coeff::from_int(-1));
        assert_eq!(format!("{m}"), "-x2");
        let _ = rat_int(0);
    }

    #[test]
    #[should_panic(expected = "different variable sets")]
    fn mismatched_variables_panic() {
        let a = MultiPoly::var(&VarSet::p2(), 0);
        let b = MultiPoly::var(&VarSet::germ2(), 0);
        let _ = a.add(&b);
    }
}
