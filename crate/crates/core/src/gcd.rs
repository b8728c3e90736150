//! Multivariate gcd and squarefree machinery.
//!
//! The gcd recurses on the number of variables actually present: a single
//! variable drops to dense Euclid over the coefficient field, more variables
//! use content extraction plus a primitive pseudo-remainder sequence in the
//! least-degree variable. Everything is returned in the canonical primitive
//! normalization of `MultiPoly::normalize_primitive`.

use crate::poly::MultiPoly;
use crate::unipoly::UPoly;

/// Variables occurring in either polynomial.
fn present_vars(polys: &[&MultiPoly]) -> Vec<usize> {
    let n = polys[0].vars().len();
    (0..n)
        .filter(|&i| polys.iter().any(|p| p.degree_in(i).unwrap_or(0) > 0))
        .collect()
}

/// Pseudo-remainder of f by g in variable `var`:
/// lc_g^(deg f - deg g + 1) * f = q * g + r with deg_var r < deg_var g.
pub fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let dg = g.degree_in(var).expect("pseudo_rem by zero") as i64;
    let df = match f.degree_in(var) {
        None => return f.clone(),
        Some(d) => d as i64,
    };
    if df < dg {
        return f.clone();
    }
    let vars = f.vars().clone();
    let gc = g.coeffs_in(var);
    let lcg = gc[dg as usize].clone();
    let mut r = f.clone();
    let mut e = df - dg + 1;
    while let Some(dr) = r.degree_in(var) {
        let dr = dr as i64;
        if dr < dg {
            break;
        }
        let rc = r.coeffs_in(var);
        let lcr = rc[dr as usize].clone();
        let mut shift_exps = vec![0u32; vars.len()];
        shift_exps[var] = (dr - dg) as u32;
        let shift = MultiPoly::monomial(&vars, &shift_exps, crate::coeff::Coeff::one());
        r = r.mul(&lcg).sub(&lcr.mul(&shift).mul(g));
        e -= 1;
        if r.is_zero() {
            break;
        }
    }
    for _ in 0..e {
        r = r.mul(&lcg);
    }
    r
}

/// Content of f with respect to variable `var`: the gcd of its coefficients
/// viewed as polynomials in the remaining variables.
pub fn content_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = f.coeffs_in(var);
    let mut acc = MultiPoly::zero(f.vars());
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

/// Multivariate gcd, canonically normalized. gcd(0, 0) = 0; nonzero
/// constants count as units, so any coprime pair returns 1.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalize_primitive();
    }
    if b.is_zero() {
        return a.normalize_primitive();
    }
    let vars = a.vars().clone();
    let present = present_vars(&[a, b]);
    if present.is_empty() {
        return MultiPoly::one(&vars);
    }
    if present.len() == 1 {
        let v = present[0];
        let ua = UPoly::from_multipoly(a, v).expect("single present variable");
        let ub = UPoly::from_multipoly(b, v).expect("single present variable");
        return ua.gcd(&ub).to_multipoly(&vars, v).normalize_primitive();
    }
    // Main variable: the one of least maximal degree keeps the remainder
    // sequence short.
    let main = *present
        .iter()
        .min_by_key(|&&v| {
            a.degree_in(v)
                .unwrap_or(0)
                .max(b.degree_in(v).unwrap_or(0))
        })
        .unwrap();
    let da = a.degree_in(main).unwrap_or(0);
    let db = b.degree_in(main).unwrap_or(0);
    if da == 0 || db == 0 {
        // One side is free of the main variable: it can only share content.
        let (flat, other) = if da == 0 { (a, b) } else { (b, a) };
        return gcd(flat, &content_in(other, main));
    }
    let (hi, lo) = if da >= db { (a, b) } else { (b, a) };
    let cont_hi = content_in(hi, main);
    let cont_lo = content_in(lo, main);
    let cont_gcd = gcd(&cont_hi, &cont_lo);
    let mut r0 = hi.try_div(&cont_hi).expect("content divides");
    let mut r1 = lo.try_div(&cont_lo).expect("content divides");
    while !r1.is_zero() {
        let r = pseudo_rem(&r0, &r1, main);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, main);
            r.try_div(&c).expect("content divides").normalize_primitive()
        };
    }
    let prim = if r0.degree_in(main).unwrap_or(0) == 0 {
        // The sequence degenerated to a polynomial free of the main
        // variable; the primitive parts are then coprime.
        MultiPoly::one(&vars)
    } else {
        let c = content_in(&r0, main);
        r0.try_div(&c).expect("content divides")
    };
    cont_gcd.mul(&prim).normalize_primitive()
}

/// gcd of f with all of its first partial derivatives. In characteristic
/// zero, for f = prod p_i^(e_i) this equals prod p_i^(e_i - 1).
pub fn partials_gcd(f: &MultiPoly) -> MultiPoly {
    let mut acc = f.clone();
    for i in 0..f.vars().len() {
        if acc.is_constant() {
            break;
        }
        let d = f.derivative(i);
        if d.is_zero() {
            continue;
        }
        acc = gcd(&acc, &d);
    }
    acc.normalize_primitive()
}

/// True when f has no repeated irreducible factor.
pub fn is_squarefree(f: &MultiPoly) -> bool {
    if f.is_constant() {
        return true;
    }
    partials_gcd(f).is_constant()
}

/// Multivariate squarefree decomposition: the list of (S_e, e) where S_e is
/// the (primitive, canonical) product of the irreducible factors of f that
/// occur with multiplicity exactly e. Nonconstant parts only, e ascending.
/// unit * prod S_e^e == f for a scalar unit.
pub fn squarefree_parts(f: &MultiPoly) -> Vec<(MultiPoly, u32)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    if f.is_constant() {
        return Vec::new();
    }
    // p_chain[k] = prod p_i^(max(e_i - k, 0)), starting at k = 0 with f.
    let mut p_chain = vec![f.normalize_primitive()];
    loop {
        let last = p_chain.last().unwrap();
        if last.is_constant() {
            break;
        }
        p_chain.push(partials_gcd(last));
    }
    // rad_k = p_chain[k] / p_chain[k+1] = product of p_i with e_i >= k+1.
    let rads: Vec<MultiPoly> = p_chain
        .windows(2)
        .map(|w| {
            w[0].try_div(&w[1])
                .expect("derivative gcd divides")
                .normalize_primitive()
        })
        .collect();
    let mut out = Vec::new();
    for e in 1..rads.len() {
        let s = rads[e - 1]
            .try_div(&rads[e])
            .expect("radical chain divides")
            .normalize_primitive();
        if !s.is_constant() {
            out.push((s, e as u32));
        }
    }
    if let Some(last) = rads.last() {
        if !last.is_constant() {
            out.push((last.clone(), rads.len() as u32));
        }
    }
    out
}

/// Split f = square^2 * residue with residue squarefree-away-from-square:
/// square collects floor(e/2) copies of every multiplicity-e factor. The
/// residue carries the scalar so that f == square^2 * residue exactly.
pub fn square_split(f: &MultiPoly) -> (MultiPoly, MultiPoly) {
    assert!(!f.is_zero(), "square split of zero");
    let parts = squarefree_parts(f);
    let mut square = MultiPoly::one(f.vars());
    for (p, e) in &parts {
        if e / 2 > 0 {
            square = square.mul(&p.pow(e / 2));
        }
    }
    let square = square.normalize_primitive();
    let residue = f
        .try_div(&square.pow(2))
        .expect("square part divides");
    (square, residue)
}

/// Error from [`square_part_decompose`]: the square part itself carries a
/// repeated factor, i.e. some irreducible divides f at least four times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarePartNotReduced;

impl std::fmt::Display for SquarePartNotReduced {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "square part of the form is not squarefree")
    }
}

impl std::error::Error for SquarePartNotReduced {}

/// [`square_split`] restricted to the forms the fibre classification can
/// use: the square part g must itself be reduced, so every irreducible
/// factor of f occurs at most three times.
pub fn square_part_decompose(
    f: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly), SquarePartNotReduced> {
    assert!(!f.is_zero(), "square decomposition of zero");
    if squarefree_parts(f).iter().any(|(_, e)| *e >= 4) {
        return Err(SquarePartNotReduced);
    }
    Ok(square_split(f))
}
