//! Local algebra at the origin of a two-variable polynomial ring.
//!
//! Everything here reduces to one computation: the dimension of
//! K[[x,y]] / (J + m^(N+1)) for an ideal J given by polynomial generators,
//! which is a finite linear algebra problem over the coefficient field. The
//! truncation level is certified rather than guessed: if the dimension at
//! levels N and N+1 agree, then m^(N+1) lies inside J by Nakayama (the
//! module (J + m^(N+1))/J is finitely generated and equals its own product
//! with the maximal ideal), so the computed value is the exact dimension of
//! K[[x,y]]/J. Milnor numbers and local intersection multiplicities are the
//! two consumers.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::gcd::{gcd, partials_gcd};
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAlgError {
    /// The ideal has a positive-dimensional zero locus through the origin,
    /// so the quotient is infinite dimensional.
    NonIsolated,
    /// The certified truncation schedule hit its cap without stabilizing;
    /// the dimensions at the last two levels are reported for diagnosis.
    TruncationCap { cap: u32, last: (u32, u32) },
}

impl fmt::Display for LocalAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalAlgError::NonIsolated => {
                write!(f, "non-isolated: the local quotient is infinite dimensional")
            }
            LocalAlgError::TruncationCap { cap, last } => write!(
                f,
                "truncation cap {cap} reached without certification (last dims {} and {})",
                last.0, last.1
            ),
        }
    }
}

impl std::error::Error for LocalAlgError {}

/// Order of vanishing at the origin: the least total degree of a term.
/// None for the zero polynomial.
pub fn order_at_origin(f: &MultiPoly) -> Option<u32> {
    f.terms().map(|(m, _)| m.total_degree()).min()
}

/// Terms of exactly the minimal total degree (the tangent cone equation).
pub fn leading_form(f: &MultiPoly) -> MultiPoly {
    let ord = match order_at_origin(f) {
        None => return f.clone(),
        Some(o) => o,
    };
    let mut out = MultiPoly::zero(f.vars());
    for (m, c) in f.terms() {
        if m.total_degree() == ord {
            out = out.add(&MultiPoly::monomial(f.vars(), &m.0, c.clone()));
        }
    }
    out
}

/// Sparse row in the monomial basis, sorted by descending index, no zeros.
type Row = Vec<(usize, Coeff)>;

fn row_sub_scaled(row: &Row, pivot: &Row, factor: &Coeff) -> Row {
    // row - factor * pivot, both sorted descending.
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let mut i = 0;
    let mut j = 0;
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 > pivot[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || pivot[j].0 > row[i].0 {
            let c = pivot[j].1.mul(factor).neg();
            if !c.is_zero() {
                out.push((pivot[j].0, c));
            }
            j += 1;
        } else {
            let c = row[i].1.sub(&pivot[j].1.mul(factor));
            if !c.is_zero() {
                out.push((row[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// dim K[x,y] / (span of generator multiples + all monomials of degree > n).
fn quotient_dim(gens: &[&MultiPoly], n: u32) -> u32 {
    let vars = gens[0].vars().clone();
    assert_eq!(vars.len(), 2, "local algebra works in two variables");
    // Monomial index: (a, b) with a + b <= n, graded-lex ascending.
    let mut index = BTreeMap::new();
    let mut count = 0usize;
    for d in 0..=n {
        for b in (0..=d).rev() {
            let a = d - b;
            index.insert((a, b), count);
            count += 1;
        }
    }
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for g in gens {
        for d in 0..=n {
            for mb in 0..=d {
                let ma = d - mb;
                // Row for x^ma y^mb * g, truncated to degree <= n.
                let mut row: Row = Vec::new();
                for (mono, c) in g.terms() {
                    let a = mono.0[0] + ma;
                    let b = mono.0[1] + mb;
                    if a + b <= n {
                        row.push((index[&(a, b)], c.clone()));
                    }
                }
                if row.is_empty() {
                    continue;
                }
                row.sort_by(|x, y| y.0.cmp(&x.0));
                // Reduce against existing pivots.
                loop {
                    let (lead, coeff) = match row.first() {
                        None => break,
                        Some((l, c)) => (*l, c.clone()),
                    };
                    match pivots.get(&lead) {
                        Some(p) => row = row_sub_scaled(&row, p, &coeff),
                        None => {
                            let inv = coeff.inv().expect("leading entry nonzero");
                            for e in row.iter_mut() {
                                e.1 = e.1.mul(&inv);
                            }
                            pivots.insert(lead, row);
                            break;
                        }
                    }
                }
            }
        }
    }
    (count - pivots.len()) as u32
}

/// Dimension of K[[x,y]] / (gens), certified by agreement of two
/// consecutive truncation levels.
pub fn local_dim(gens: &[MultiPoly]) -> Result<u32, LocalAlgError> {
    let live: Vec<&MultiPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if live.is_empty() {
        return Err(LocalAlgError::NonIsolated);
    }
    let d0 = live
        .iter()
        .map(|g| g.total_degree().unwrap())
        .max()
        .unwrap();
    let cap = 40u32;
    let mut n = d0.max(2).min(cap);
    loop {
        let a = quotient_dim(&live, n);
        let b = quotient_dim(&live, n + 1);
        if a == b {
            return Ok(a);
        }
        if n >= cap {
            return Err(LocalAlgError::TruncationCap { cap, last: (a, b) });
        }
        n = (2 * n).min(cap);
    }
}

/// Milnor number of the curve germ f at the origin. Infinite (NonIsolated)
/// exactly when a repeated factor of f passes through the origin.
pub fn milnor(f: &MultiPoly) -> Result<u32, LocalAlgError> {
    assert_eq!(f.vars().len(), 2);
    let rep = partials_gcd(f);
    let zero2 = [Coeff::zero(), Coeff::zero()];
    if rep.eval(&zero2).is_zero() {
        return Err(LocalAlgError::NonIsolated);
    }
    local_dim(&[f.derivative(0), f.derivative(1)])
}

/// Local intersection multiplicity of the curves g and h at the origin:
/// dim K[[x,y]]/(g,h). NonIsolated when they share a component through the
/// origin.
pub fn intersection_multiplicity(g: &MultiPoly, h: &MultiPoly) -> Result<u32, LocalAlgError> {
    assert_eq!(g.vars().len(), 2);
    let common = gcd(g, h);
    if !common.is_constant() {
        let zero2 = [Coeff::zero(), Coeff::zero()];
        if common.eval(&zero2).is_zero() {
            return Err(LocalAlgError::NonIsolated);
        }
    }
    local_dim(&[g.clone(), h.clone()])
}
