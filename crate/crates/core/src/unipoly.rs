//! Dense univariate polynomials over the coefficient tower.
//!
//! The coefficient type is a field (rationals or one simple extension), so
//! plain Euclidean division works and gcds need no pseudo-remainders. This
//! is the engine behind squarefree decomposition and the base case of the
//! multivariate gcd.

use std::rc::Rc;

use crate::coeff::Coeff;
use crate::poly::{MultiPoly, VarSet};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(Vec<Coeff>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Self {
        let mut p = UPoly(coeffs);
        p.trim();
        p
    }

    pub fn constant(c: Coeff) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        UPoly(vec![Coeff::zero(), Coeff::one()])
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.0.get(i).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&Coeff> {
        self.0.last()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &Coeff) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly::from_coeffs(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Coeff::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::constant(Coeff::one());
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

    /// Euclidean division; the divisor's leading coefficient is inverted, so
    /// this needs the coefficients to form a field. Panics on zero divisor.
    pub fn divrem(&self, other: &UPoly) -> (UPoly, UPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.0.len() < other.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let mut quo = vec![Coeff::zero(); self.0.len() - other.0.len() + 1];
        let lead_inv = other.lead().unwrap().inv().expect("nonzero lead");
        for k in (0..quo.len()).rev() {
            let top = rem[k + other.0.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lead_inv);
            for (i, c) in other.0.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&q.mul(c));
            }
            quo[k] = q;
        }
        (UPoly::from_coeffs(quo), UPoly::from_coeffs(rem))
    }

    pub fn rem(&self, other: &UPoly) -> UPoly {
        self.divrem(other).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, other: &UPoly) -> UPoly {
        let (q, r) = self.divrem(other);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        if self.0.len() <= 1 {
            return UPoly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for (i, c) in self.0.iter().enumerate().skip(1) {
            out.push(c.mul(&Coeff::from_int(i as i64)));
        }
        UPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Yun's squarefree decomposition (characteristic zero): returns the
    /// monic squarefree parts with their multiplicities, nonconstant parts
    /// only, multiplicities ascending. The scalar content is dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.is_constant() {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut b = f.div_exact(&g);
        let mut d = df.div_exact(&g).sub(&b.derivative());
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            b = b.div_exact(&a);
            let c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// True when gcd(f, f') is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// View a multivariate polynomial as univariate in variable `var`;
    /// None if any other variable occurs.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Option<UPoly> {
        let deg = match p.degree_in(var) {
            None => return Some(UPoly::zero()),
            Some(d) => d,
        };
        let mut out = vec![Coeff::zero(); deg as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if i != var && e != 0 {
                    return None;
                }
            }
            out[m.0[var] as usize] = c.clone();
        }
        Some(UPoly::from_coeffs(out))
    }

    pub fn to_multipoly(&self, vars: &Rc<VarSet>, var: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for (i, c) in self.0.iter().enumerate() {
            let mut exps = vec![0u32; vars.len()];
            exps[var] = i as u32;
            p = p.add(&MultiPoly::monomial(vars, &exps, c.clone()));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn upoly(cs: &[i64]) -> UPoly {
        UPoly::from_coeffs(cs.iter().map(|&c| Coeff::from_int(c)).collect())
    }

    #[test]
    fn divrem_euclid() {
        // (x^3 - 1) = (x - 1)(x^2 + x + 1)
        let f = upoly(&[-1, 0, 0, 1]);
        let g = upoly(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, upoly(&[1, 1, 1]));
        // Remainder of x^3 - 1 by x^2: -1
        let (q2, r2) = f.divrem(&upoly(&[0, 0, 1]));
        assert_eq!(q2, upoly(&[0, 1]));
        assert_eq!(r2, upoly(&[-1]));
    }

    #[test]
    fn gcd_of_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rand_poly = |rng: &mut ChaCha8Rng, d: usize| {
                let mut cs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-4..=4)).collect();
                if cs.iter().all(|&c| c == 0) {
                    cs[d] = 1;
                }
                if cs[d] == 0 {
                    cs[d] = 1;
                }
                upoly(&cs)
            };
            let a = rand_poly(&mut rng, 2);
            let b = rand_poly(&mut rng, 2);
            let c = rand_poly(&mut rng, 2);
            let f = a.mul(&b);
            let g = a.mul(&c);
            let h = f.gcd(&g);
            // a divides the gcd.
            assert!(h.rem(&a.monic()).is_zero() || a.is_constant());
            // and the gcd divides both products.
            assert!(f.rem(&h).is_zero());
            assert!(g.rem(&h).is_zero());
        }
    }

    #[test]
    fn yun_decomposition() {
        // f = (x-1)^2 (x+2)^3 x
        let f = upoly(&[-1, 1]).pow(2).mul(&upoly(&[2, 1]).pow(3)).mul(&upoly(&[0, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (upoly(&[0, 1]), 1));
        assert_eq!(parts[1], (upoly(&[-1, 1]), 2));
        assert_eq!(parts[2], (upoly(&[2, 1]), 3));
        // Reassembling gives back the monic f.
        let mut re = UPoly::constant(Coeff::one());
        for (p, m) in &parts {
            re = re.mul(&p.pow(*m));
        }
        assert_eq!(re, f.monic());
    }

    #[test]
    fn squarefree_flag() {
        assert!(upoly(&[-1, 0, 1]).is_squarefree());
        assert!(!upoly(&[1, 2, 1]).is_squarefree());
        assert!(upoly(&[5]).is_squarefree());
    }

    #[test]
    fn multipoly_round_trip() {
        let vars = VarSet::germ2();
        let p = MultiPoly::from_terms(
            &vars,
            vec![
                (vec![3, 0], Coeff::from_int(2)),
                (vec![1, 0], Coeff::from_int(-1)),
                (vec![0, 0], Coeff::from_int(5)),
            ],
        );
        let u = UPoly::from_multipoly(&p, 0).unwrap();
        assert_eq!(u, upoly(&[5, -1, 0, 2]));
        assert_eq!(u.to_multipoly(&vars, 0), p);
        // Mixed variables refuse the conversion.
        let q = p.add(&MultiPoly::var(&vars, 1));
        assert!(UPoly::from_multipoly(&q, 0).is_none());
    }

    #[test]
    fn eval_horner() {
        let f = upoly(&[1, -3, 0, 2]); // 2x^3 - 3x + 1
        assert_eq!(f.eval(&Coeff::from_int(2)), Coeff::from_int(11));
        assert_eq!(f.eval(&Coeff::zero()), Coeff::one());
    }
}
