//! Coefficient arithmetic for the whole crate.
//!
//! Every number we touch is either a rational or an element of a single
//! simple extension Q[t]/(p) with p monic and irreducible over Q. Elements
//! of an extension whose representative is actually constant are demoted to
//! plain rationals on the spot, so equality of values never depends on which
//! field they were computed in. Mixing elements of two *different* proper
//! extensions is a programming error and panics; the classification pipeline
//! only ever works over one extension at a time.

use std::fmt;
use std::rc::Rc;

use num_traits::{One, Signed, Zero};

/// Exact rational scalar. All algorithms in this crate are exact; floating
/// point appears only in the numeric root boxes of `algnum`.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational n/d. Panics if d == 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    DivisionByZero,
    /// Minimal polynomial handed to `ExtField::new` was not monic of degree >= 2.
    BadMinimalPolynomial(String),
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero"),
            CoeffError::BadMinimalPolynomial(why) => {
                write!(f, "bad minimal polynomial: {why}")
            }
        }
    }
}

impl std::error::Error for CoeffError {}

/// A simple extension Q[t]/(p). The minimal polynomial is stored dense,
/// lowest degree first, and must be monic of degree at least two. Callers
/// are responsible for only building fields from certified irreducible
/// polynomials; every construction site in this crate gets its polynomial
/// from the factorization routines, which guarantee that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    name: String,
    min_poly: Vec<Rational>,
}

impl ExtField {
    pub fn new(name: impl Into<String>, min_poly: Vec<Rational>) -> Result<Rc<Self>, CoeffError> {
        let mut min_poly = min_poly;
        while min_poly.last().map_or(false, |c| c.is_zero()) {
            min_poly.pop();
        }
        if min_poly.len() < 3 {
            return Err(CoeffError::BadMinimalPolynomial(
                "degree must be at least 2".into(),
            ));
        }
        if !min_poly.last().unwrap().is_one() {
            return Err(CoeffError::BadMinimalPolynomial("must be monic".into()));
        }
        Ok(Rc::new(ExtField {
            name: name.into(),
            min_poly,
        }))
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dense minimal polynomial, lowest degree first, monic.
    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    /// The residue class of t itself.
    pub fn generator(self: &Rc<Self>) -> Coeff {
        let mut rep = vec![Rational::zero(); self.degree()];
        rep[1] = Rational::one();
        Coeff::Ext(ExtElem {
            field: Rc::clone(self),
            rep,
        })
    }

    /// Element with the given representative (lowest degree first); reduced
    /// mod the minimal polynomial and demoted to a rational if constant.
    pub fn element(self: &Rc<Self>, rep: Vec<Rational>) -> Coeff {
        let rep = reduce_mod(rep, &self.min_poly);
        normalize_ext(Rc::clone(self), rep)
    }
}

/// Element of an extension field: dense representative of length exactly
/// `field.degree()`, with at least one nonzero entry above index 0 (constant
/// representatives live as `Coeff::Rat`).
#[derive(Debug, Clone)]
pub struct ExtElem {
    field: Rc<ExtField>,
    rep: Vec<Rational>,
}

impl ExtElem {
    pub fn field(&self) -> &Rc<ExtField> {
        &self.field
    }

    /// Dense representative, lowest degree first, length == field degree.
    pub fn rep(&self) -> &[Rational] {
        &self.rep
    }
}

/// A coefficient: rational, or element of the ambient simple extension.
#[derive(Debug, Clone)]
pub enum Coeff {
    Rat(Rational),
    Ext(ExtElem),
}

fn reduce_mod(mut rep: Vec<Rational>, min_poly: &[Rational]) -> Vec<Rational> {
    let deg = min_poly.len() - 1;
    while rep.len() > deg {
        let lead = rep.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = rep.len() - deg;
        for (i, m) in min_poly[..deg].iter().enumerate() {
            let delta = &lead * m;
            rep[shift + i] -= delta;
        }
    }
    rep.resize(deg, Rational::zero());
    rep
}

fn normalize_ext(field: Rc<ExtField>, rep: Vec<Rational>) -> Coeff {
    debug_assert_eq!(rep.len(), field.degree());
    if rep.iter().skip(1).all(|c| c.is_zero()) {
        Coeff::Rat(rep.into_iter().next().unwrap_or_else(Rational::zero))
    } else {
        Coeff::Ext(ExtElem { field, rep })
    }
}

fn same_field(a: &ExtElem, b: &ExtElem) -> bool {
    Rc::ptr_eq(&a.field, &b.field) || a.field == b.field
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => a == b,
            // Ext representatives are never constant, so they never equal a rational.
            (Coeff::Rat(_), Coeff::Ext(_)) | (Coeff::Ext(_), Coeff::Rat(_)) => false,
            (Coeff::Ext(a), Coeff::Ext(b)) => {
                assert!(
                    same_field(a, b),
                    "compared elements of different extensions {} and {}",
                    a.field.name,
                    b.field.name
                );
                a.rep == b.rep
            }
        }
    }
}

impl Eq for Coeff {}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Coeff::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::Rat(rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Ext(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Ext(_) => false,
        }
    }

    /// Some(..) exactly when the value lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Ext(_) => None,
        }
    }

    /// The extension this value needs, if any.
    pub fn ext_field(&self) -> Option<&Rc<ExtField>> {
        match self {
            Coeff::Rat(_) => None,
            Coeff::Ext(e) => Some(&e.field),
        }
    }

    /// Dense representative of this value inside `field` (lifting rationals).
    fn rep_in(&self, field: &Rc<ExtField>) -> Vec<Rational> {
        match self {
            Coeff::Rat(r) => {
                let mut rep = vec![Rational::zero(); field.degree()];
                rep[0] = r.clone();
                rep
            }
            Coeff::Ext(e) => {
                assert!(
                    Rc::ptr_eq(&e.field, field) || *e.field == **field,
                    "mixed elements of extensions {} and {}",
                    e.field.name,
                    field.name
                );
                e.rep.clone()
            }
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => {
                let field = self
                    .ext_field()
                    .or_else(|| other.ext_field())
                    .unwrap()
                    .clone();
                let a = self.rep_in(&field);
                let b = other.rep_in(&field);
                let rep = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
                normalize_ext(field, rep)
            }
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(r) => Coeff::Rat(-r),
            Coeff::Ext(e) => Coeff::Ext(ExtElem {
                field: e.field.clone(),
                rep: e.rep.iter().map(|c| -c).collect(),
            }),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Rat(a), Coeff::Ext(e)) | (Coeff::Ext(e), Coeff::Rat(a)) => {
                if a.is_zero() {
                    return Coeff::zero();
                }
                Coeff::Ext(ExtElem {
                    field: e.field.clone(),
                    rep: e.rep.iter().map(|c| c * a).collect(),
                })
            }
            (Coeff::Ext(a), Coeff::Ext(b)) => {
                assert!(
                    same_field(a, b),
                    "mixed elements of extensions {} and {}",
                    a.field.name,
                    b.field.name
                );
                let mut prod = vec![Rational::zero(); a.rep.len() + b.rep.len() - 1];
                for (i, x) in a.rep.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.rep.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                let rep = reduce_mod(prod, &a.field.min_poly);
                normalize_ext(a.field.clone(), rep)
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inv(&self) -> Result<Coeff, CoeffError> {
        match self {
            Coeff::Rat(r) => {
                if r.is_zero() {
                    Err(CoeffError::DivisionByZero)
                } else {
                    Ok(Coeff::Rat(r.recip()))
                }
            }
            Coeff::Ext(e) => {
                // gcd(rep, min_poly) = 1 since min_poly is irreducible and
                // rep is not a multiple of it (degree too small, nonzero).
                let (g, u) = half_ext_gcd(&e.rep, &e.field.min_poly);
                debug_assert_eq!(g.len(), 1, "minimal polynomial was reducible");
                let scale = g[0].recip();
                let rep: Vec<Rational> = u.iter().map(|c| c * &scale).collect();
                let rep = reduce_mod(rep, &e.field.min_poly);
                Ok(normalize_ext(e.field.clone(), rep))
            }
        }
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = Coeff::one();
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
}

/// Extended gcd over Q[t] returning (g, u) with u*a == g mod b, g the last
/// nonzero remainder (not normalized). Only the `a` cofactor is tracked.
fn half_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let trim = |mut v: Vec<Rational>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0 = vec![Rational::one()];
    let mut u1: Vec<Rational> = Vec::new();
    while !r1.is_empty() {
        let (q, rem) = qpoly_divrem(&r0, &r1);
        let u_next = qpoly_sub(&u0, &qpoly_mul(&q, &u1));
        r0 = r1;
        r1 = trim(rem);
        u0 = std::mem::replace(&mut u1, u_next);
    }
    (r0, u0)
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quo.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let q = &top / lead;
        for (i, c) in b.iter().enumerate() {
            let delta = &q * c;
            rem[k + i] -= delta;
        }
        quo[k] = q;
    }
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    (quo, rem)
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => write!(f, "{r}"),
            Coeff::Ext(e) => {
                let mut first = true;
                for (i, c) in e.rep.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    if i == 0 {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        write!(f, "{}", e.field.name)?;
                        if i > 1 {
                            write!(f, "^{i}")?;
                        }
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> Rc<ExtField> {
        // t^2 + 1
        ExtField::new("t", vec![rat_int(1), rat_int(0), rat_int(1)]).unwrap()
    }

    fn sqrt2() -> Rc<ExtField> {
        // t^2 - 2
        ExtField::new("t", vec![rat_int(-2), rat_int(0), rat_int(1)]).unwrap()
    }

    #[test]
    fn gauss_arithmetic() {
        let k = gauss();
        let t = k.generator();
        assert_eq!(t.mul(&t), Coeff::from_int(-1));
        // (1 + t)(1 - t) = 1 - t^2 = 2
        let a = Coeff::one().add(&t);
        let b = Coeff::one().sub(&t);
        assert_eq!(a.mul(&b), Coeff::from_int(2));
        // 1/t = -t
        assert_eq!(t.inv().unwrap(), t.neg());
    }

    #[test]
    fn sqrt2_inverse() {
        let k = sqrt2();
        let t = k.generator();
        // 1/(1 + t) = t/... check by multiplying back
        let a = Coeff::one().add(&t);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), Coeff::one());
        // explicitly: 1/(1+sqrt2) = sqrt2 - 1
        assert_eq!(inv, t.sub(&Coeff::one()));
    }

    #[test]
    fn constant_reps_demote() {
        let k = gauss();
        let t = k.generator();
        // t^2 is -1 and must compare equal to the plain rational -1.
        let sq = t.mul(&t);
        assert!(matches!(sq, Coeff::Rat(_)));
        assert_eq!(sq, Coeff::from_int(-1));
        // t + (-t) demotes to zero.
        assert!(t.add(&t.neg()).is_zero());
    }

    #[test]
    fn element_reduces_high_degree_reps() {
        let k = gauss();
        // t^3 + t = 0 in Q[t]/(t^2+1)
        let e = k.element(vec![rat_int(0), rat_int(1), rat_int(0), rat_int(1)]);
        assert!(e.is_zero());
    }

    #[test]
    #[should_panic(expected = "different extensions")]
    fn cross_field_comparison_panics() {
        let a = gauss().generator();
        let b = sqrt2().generator();
        let _ = a == b;
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let k = sqrt2();
        let x = k.generator().add(&Coeff::from_int(3));
        let mut acc = Coeff::one();
        for e in 0..8u32 {
            assert_eq!(x.pow(e), acc);
            acc = acc.mul(&x);
        }
    }

    #[test]
    fn rejects_non_monic_and_low_degree() {
        assert!(ExtField::new("t", vec![rat_int(1), rat_int(1)]).is_err());
        assert!(ExtField::new("t", vec![rat_int(1), rat_int(0), rat_int(2)]).is_err());
    }

    #[test]
    fn display_reads_naturally() {
        let k = gauss();
        let t = k.generator();
        let v = t.mul(&Coeff::from_int(2)).sub(&Coeff::from_int(3));
        assert_eq!(format!("{v}"), "2*t - 3");
        assert_eq!(format!("{}", Coeff::zero()), "0");
    }
}
