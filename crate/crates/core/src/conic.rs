//! Exact geometry of ternary quadratic forms.
//!
//! The degree-two form attached to a unigonal model decides everything
//! downstream: a rank-three conic gets parametrized by a rational point so
//! the sextic data can be pulled back to a double line, a rank-two conic
//! splits into two lines (possibly conjugate over a quadratic field) that the
//! sextic is restricted to, and rank one is rejected outright. All of this
//! is done over Q with certified arithmetic; no floating point appears.

use crate::coeff::{Coeff, ExtField, Rational};
use crate::poly::{MultiPoly, VarSet};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::rc::Rc;

#[derive(Debug, Clone, PartialEq)]
pub enum ConicError {
    /// The form is a scalar times the square of a single line. Models built
    /// on such a form fall outside the classification.
    DoubleLine { line: MultiPoly },
    /// The input is not a nonzero ternary quadratic form over the rationals.
    NotAConic(String),
    /// A point handed to `parametrization_from_point` does not lie on the
    /// conic (or is the zero vector).
    PointNotOnConic,
}

impl fmt::Display for ConicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConicError::DoubleLine { line } => {
                write!(f, "quadratic form is the double line ({})^2", line)
            }
            ConicError::NotAConic(why) => write!(f, "not a ternary quadratic form: {}", why),
            ConicError::PointNotOnConic => write!(f, "point does not lie on the conic"),
        }
    }
}

impl std::error::Error for ConicError {}

/// The two lines of a rank-two form `f2 = c * l1 * l2`. When the form does
/// not split over Q the pair is conjugate over the quadratic extension
/// recorded in `extension` and the two polynomials have coefficients there.
#[derive(Debug, Clone)]
pub struct ConicLines {
    pub l1: MultiPoly,
    pub l2: MultiPoly,
    pub extension: Option<Rc<ExtField>>,
    /// The intersection point of the two lines. It is rational even for a
    /// conjugate pair, because it is cut out by the rational forms spanning
    /// the pair.
    pub meet: [Coeff; 3],
}

/// Everything the classifier needs to know about a degree-two form.
#[derive(Debug, Clone)]
pub struct ConicAnalysis {
    pub rank: u32,
    /// Present exactly when `rank == 2`.
    pub lines: Option<ConicLines>,
    /// Present when `rank == 3` and a rational point was found: three
    /// quadratics in the parameter variables u, v whose image is the conic.
    pub parametrization: Option<[MultiPoly; 3]>,
    /// The rational point the parametrization was built from.
    pub base_point: Option<[Rational; 3]>,
}

/// Analyze a nonzero quadratic form in three variables.
///
/// Rank one is an error (`DoubleLine`). Rank two always yields `lines`.
/// Rank three yields a parametrization whenever a rational point of height
/// at most 100 exists; forms that are definite over the reals, or whose
/// points are all larger than the search bound, report `parametrization:
/// None` and the caller decides how to proceed (see
/// [`parametrization_from_point`] for supplying a point by hand).
pub fn analyze_conic(f2: &MultiPoly) -> Result<ConicAnalysis, ConicError> {
    validate_form(f2)?;
    let parts = lagrange_decompose(f2);
    match parts.len() {
        0 => unreachable!("validated form is nonzero"),
        1 => Err(ConicError::DoubleLine {
            line: parts[0].1.normalize_primitive(),
        }),
        2 => {
            let lines = split_lines(f2, &parts);
            Ok(ConicAnalysis {
                rank: 2,
                lines: Some(lines),
                parametrization: None,
                base_point: None,
            })
        }
        3 => {
            // A definite form has no real points, hence no rational ones;
            // skip the search entirely.
            let indefinite = {
                let pos = parts.iter().filter(|(d, _)| d.is_positive()).count();
                pos != 0 && pos != 3
            };
            let point = if indefinite { rational_point(f2) } else { None };
            let parametrization = point
                .as_ref()
                .map(|p| parametrize(f2, p).expect("searched point lies on the conic"));
            Ok(ConicAnalysis {
                rank: 3,
                lines: None,
                parametrization,
                base_point: point,
            })
        }
        _ => unreachable!("at most three squares in three variables"),
    }
}

/// Build the degree-two parametrization of a rank-three conic through a given
/// rational point: the second intersection of the pencil of lines through the
/// point. The result is content-normalized with a positive leading sign and
/// satisfies `f2(q1, q2, q3) = 0` identically.
pub fn parametrization_from_point(
    f2: &MultiPoly,
    point: &[Rational; 3],
) -> Result<[MultiPoly; 3], ConicError> {
    validate_form(f2)?;
    parametrize(f2, point)
}

/// Two points spanning the projective line `l = 0`. The line must be a
/// nonzero linear form in three variables; its coefficients (and hence the
/// span) may lie in a quadratic extension.
pub fn line_span(l: &MultiPoly) -> [[Coeff; 3]; 2] {
    assert_eq!(l.vars().len(), 3, "line must live in three variables");
    assert_eq!(l.total_degree(), Some(1), "line must be a linear form");
    assert!(l.terms().all(|(m, _)| m.0.iter().sum::<u32>() == 1));
    let c = linear_coeffs(l);
    let pivot = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero form");
    let mut span = Vec::with_capacity(2);
    for m in 0..3 {
        if m == pivot {
            continue;
        }
        let mut v = [Coeff::zero(), Coeff::zero(), Coeff::zero()];
        v[m] = Coeff::one();
        v[pivot] = c[m].div(&c[pivot]).unwrap().neg();
        span.push(v);
    }
    debug_assert!(span.iter().all(|v| l.eval(v).is_zero()));
    [span[0].clone(), span[1].clone()]
}

fn validate_form(f2: &MultiPoly) -> Result<(), ConicError> {
    if f2.vars().len() != 3 {
        return Err(ConicError::NotAConic("expected three variables".into()));
    }
    if f2.is_zero() {
        return Err(ConicError::NotAConic("form is zero".into()));
    }
    if f2.ext_field().is_some() {
        return Err(ConicError::NotAConic(
            "coefficients must be rational".into(),
        ));
    }
    if f2.terms().any(|(m, _)| m.0.iter().sum::<u32>() != 2) {
        return Err(ConicError::NotAConic(
            "form is not homogeneous of degree two".into(),
        ));
    }
    Ok(())
}

/// Write `f2` as a sum of scaled squares of independent linear forms
/// (Lagrange reduction). The number of summands is the rank.
fn lagrange_decompose(f2: &MultiPoly) -> Vec<(Rational, MultiPoly)> {
    let n = f2.vars().len();
    let mut rem = f2.clone();
    let mut out: Vec<(Rational, MultiPoly)> = Vec::new();
    while !rem.is_zero() {
        let square = (0..n).find_map(|k| {
            let mut e = vec![0u32; n];
            e[k] = 2;
            let a = rem.coeff(&e);
            (!a.is_zero()).then(|| (k, a))
        });
        if let Some((k, a)) = square {
            // rem = a*x_k^2 + x_k*B + C, so rem - a*L^2 with L = d_k rem / 2a
            // removes x_k entirely.
            let l = rem
                .derivative(k)
                .scale(&a.mul(&Coeff::from_int(2)).inv().unwrap());
            rem = rem.sub(&l.mul(&l).scale(&a));
            debug_assert_eq!(rem.degree_in(k).unwrap_or(0), 0);
            out.push((a.as_rational().unwrap().clone(), l));
        } else {
            // No squares left: pick a cross term c*x_i*x_j and split it as a
            // difference of squares. With A, B, C free of x_i and x_j,
            //   rem = c*x_i*x_j + x_i*A + x_j*B + C
            //       = c*(x_i + B/c)*(x_j + A/c) + (C - A*B/c)
            // and c*p*q = (c/4)(p+q)^2 - (c/4)(p-q)^2.
            let (i, j, c) = cross_term(&rem).expect("nonzero form with no squares");
            let vars = rem.vars().clone();
            let mut a = MultiPoly::zero(&vars);
            let mut b = MultiPoly::zero(&vars);
            for l in 0..n {
                if l == i || l == j {
                    continue;
                }
                let mut ei = vec![0u32; n];
                ei[i] = 1;
                ei[l] += 1;
                a = a.add(&MultiPoly::var(&vars, l).scale(&rem.coeff(&ei)));
                let mut ej = vec![0u32; n];
                ej[j] = 1;
                ej[l] += 1;
                b = b.add(&MultiPoly::var(&vars, l).scale(&rem.coeff(&ej)));
            }
            let cinv = c.inv().unwrap();
            let p = MultiPoly::var(&vars, i).add(&b.scale(&cinv));
            let q = MultiPoly::var(&vars, j).add(&a.scale(&cinv));
            rem = rem.sub(&p.mul(&q).scale(&c));
            debug_assert_eq!(rem.degree_in(i).unwrap_or(0), 0);
            debug_assert_eq!(rem.degree_in(j).unwrap_or(0), 0);
            let quarter = c
                .as_rational()
                .unwrap()
                .clone()
                / Rational::from_integer(4.into());
            out.push((quarter.clone(), p.add(&q)));
            out.push((-quarter, p.sub(&q)));
        }
    }
    debug_assert!({
        let mut check = MultiPoly::zero(f2.vars());
        for (d, l) in &out {
            check = check.add(&l.mul(l).scale(&Coeff::Rat(d.clone())));
        }
        check == *f2
    });
    out
}

fn cross_term(f: &MultiPoly) -> Option<(usize, usize, Coeff)> {
    let n = f.vars().len();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e[j] = 1;
            let c = f.coeff(&e);
            if !c.is_zero() {
                return Some((i, j, c));
            }
        }
    }
    None
}

fn split_lines(f2: &MultiPoly, parts: &[(Rational, MultiPoly)]) -> ConicLines {
    let (d1, l1) = (&parts[0].0, &parts[0].1);
    let (d2, l2) = (&parts[1].0, &parts[1].1);
    // f2 = d1*L1^2 + d2*L2^2 = d1*(L1 - s*L2)(L1 + s*L2) with s^2 = -d2/d1.
    let delta = -(d2 / d1);
    let meet = meet_point(l1, l2);
    let (a, b, extension) = match rational_sqrt(&delta) {
        Some(s) => {
            let s = Coeff::Rat(s);
            (
                l1.sub(&l2.scale(&s)).normalize_primitive(),
                l1.add(&l2.scale(&s)).normalize_primitive(),
                None,
            )
        }
        None => {
            let field = ExtField::new("t", vec![-delta, Rational::zero(), Rational::one()])
                .expect("monic quadratic");
            let t = field.generator();
            (
                l1.sub(&l2.scale(&t)).normalize_primitive(),
                l1.add(&l2.scale(&t)).normalize_primitive(),
                Some(field),
            )
        }
    };
    debug_assert!({
        let prod = a.mul(&b);
        let ratio = prod.leading().unwrap().1.div(f2.leading().unwrap().1).unwrap();
        prod == f2.scale(&ratio)
    });
    debug_assert!(a.eval(&meet).is_zero() && b.eval(&meet).is_zero());
    ConicLines {
        l1: a,
        l2: b,
        extension,
        meet,
    }
}

fn linear_coeffs(l: &MultiPoly) -> [Coeff; 3] {
    [
        l.coeff(&[1, 0, 0]),
        l.coeff(&[0, 1, 0]),
        l.coeff(&[0, 0, 1]),
    ]
}

/// Intersection point of two independent rational lines, as a primitive
/// integer vector with positive first nonzero entry.
fn meet_point(l1: &MultiPoly, l2: &MultiPoly) -> [Coeff; 3] {
    let a: Vec<Rational> = linear_coeffs(l1)
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let b: Vec<Rational> = linear_coeffs(l2)
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let cross = [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ];
    let cross = normalize_rat3(cross);
    [
        Coeff::Rat(cross[0].clone()),
        Coeff::Rat(cross[1].clone()),
        Coeff::Rat(cross[2].clone()),
    ]
}

/// Scale a nonzero rational triple to primitive integers with positive first
/// nonzero entry.
fn normalize_rat3(v: [Rational; 3]) -> [Rational; 3] {
    let mut denom_lcm = BigInt::one();
    for r in &v {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for r in &v {
        numer_gcd = numer_gcd.gcd(&(r.numer() * (&denom_lcm / r.denom())));
    }
    assert!(!numer_gcd.is_zero(), "zero vector");
    let mut unit = Rational::new(denom_lcm, numer_gcd);
    if let Some(first) = v.iter().find(|r| !r.is_zero()) {
        if (first * &unit).is_negative() {
            unit = -unit;
        }
    }
    [&v[0] * &unit, &v[1] * &unit, &v[2] * &unit]
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let sn = r.numer().sqrt();
    if &(&sn * &sn) != r.numer() {
        return None;
    }
    let sd = r.denom().sqrt();
    if &(&sd * &sd) != r.denom() {
        return None;
    }
    Some(Rational::new(sn, sd))
}

/// Symmetric Gram matrix of the form: `f2 = x^T G x`.
fn gram(f2: &MultiPoly) -> [[Rational; 3]; 3] {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut g: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = f2.coeff(&e).as_rational().unwrap().clone();
            g[i][j] = if i == j { c } else { c * &half };
        }
    }
    g
}

/// Deterministic search for a rational point on the conic, trying integer
/// parameter pairs of increasing height up to 100. Each of the three
/// variables takes a turn as the solved-for coordinate, so coordinate points
/// and points at infinity are found at height zero or one.
fn rational_point(f2: &MultiPoly) -> Option<[Rational; 3]> {
    // Pre-split f2 = A*x_k^2 + B_k*x_k + C_k per role.
    let mut roles = Vec::with_capacity(3);
    for k in 0..3 {
        let cs = f2.coeffs_in(k);
        let get = |i: usize| cs.get(i).cloned().unwrap_or_else(|| MultiPoly::zero(f2.vars()));
        roles.push((k, get(2), get(1), get(0)));
    }
    let eval2 = |p: &MultiPoly, k: usize, a: &Rational, b: &Rational| -> Rational {
        // Evaluate at the two variables other than x_k set to (a, b).
        let mut vals = vec![Coeff::zero(); 3];
        let mut it = [a, b].into_iter();
        for (m, v) in vals.iter_mut().enumerate() {
            if m != k {
                *v = Coeff::Rat(it.next().unwrap().clone());
            }
        }
        p.eval(&vals).as_rational().unwrap().clone()
    };
    let four = Rational::from_integer(4.into());
    let two = Rational::from_integer(2.into());
    for h in 0i64..=100 {
        for ai in -h..=h {
            for bi in -h..=h {
                if ai.abs().max(bi.abs()) != h {
                    continue;
                }
                let a = Rational::from_integer(ai.into());
                let b = Rational::from_integer(bi.into());
                for (k, aa, bb, cc) in &roles {
                    let qa = aa.as_constant().map(|c| c.as_rational().unwrap().clone())
                        .unwrap_or_else(Rational::zero);
                    let qb = eval2(bb, *k, &a, &b);
                    let qc = eval2(cc, *k, &a, &b);
                    let t = if qa.is_zero() {
                        if !qb.is_zero() {
                            -qc / qb
                        } else if qc.is_zero() && h == 0 {
                            // The coordinate point x_k itself lies on the conic.
                            Rational::one()
                        } else {
                            continue;
                        }
                    } else {
                        let disc = &qb * &qb - &four * &qa * &qc;
                        match rational_sqrt(&disc) {
                            Some(s) => (s - &qb) / (&two * &qa),
                            None => continue,
                        }
                    };
                    let mut p = [a.clone(), b.clone(), Rational::zero()];
                    p.swap(2, *k);
                    if *k == 0 {
                        // swap put the pair in slots (1, 2) but reversed the
                        // remaining order; restore index order.
                        p.swap(1, 2);
                    }
                    p[*k] = t;
                    if p.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let vals: Vec<Coeff> = p.iter().map(|c| Coeff::Rat(c.clone())).collect();
                    if f2.eval(&vals).is_zero() {
                        return Some(normalize_rat3(p));
                    }
                }
            }
        }
    }
    None
}

fn parametrize(f2: &MultiPoly, point: &[Rational; 3]) -> Result<[MultiPoly; 3], ConicError> {
    if point.iter().all(|c| c.is_zero()) {
        return Err(ConicError::PointNotOnConic);
    }
    let vals: Vec<Coeff> = point.iter().map(|c| Coeff::Rat(c.clone())).collect();
    if !f2.eval(&vals).is_zero() {
        return Err(ConicError::PointNotOnConic);
    }
    let g = gram(f2);
    // Parameter line: the coordinate line missing the base point.
    let k = (0..3).find(|&k| !point[k].is_zero()).unwrap();
    let (i1, i2) = ((k + 1) % 3, (k + 2) % 3);
    // Q(u, v) = u*e_{i1} + v*e_{i2}; the second intersection of the line
    // through P and Q with the conic is
    //   X = q(Q) * P - 2 * B(P, Q) * Q,
    // which is identically on the conic because q(P) = 0.
    let quu = g[i1][i1].clone();
    let quv = &g[i1][i2] * &Rational::from_integer(2.into());
    let qvv = g[i2][i2].clone();
    let dot = |col: usize| -> Rational {
        (0..3).map(|m| &point[m] * &g[m][col]).sum()
    };
    let (b1, b2) = (dot(i1), dot(i2));
    let uvset = VarSet::uv();
    let mut forms = Vec::with_capacity(3);
    for m in 0..3 {
        // coefficient of u^2, uv, v^2 in X_m
        let mut cu2 = &quu * &point[m];
        let mut cuv = &quv * &point[m];
        let mut cv2 = &qvv * &point[m];
        let two = Rational::from_integer(2.into());
        if m == i1 {
            cu2 -= &two * &b1;
            cuv -= &two * &b2;
        }
        if m == i2 {
            cuv -= &two * &b1;
            cv2 -= &two * &b2;
        }
        forms.push(MultiPoly::from_terms(
            &uvset,
            vec![
                (vec![2, 0], Coeff::Rat(cu2)),
                (vec![1, 1], Coeff::Rat(cuv)),
                (vec![0, 2], Coeff::Rat(cv2)),
            ],
        ));
    }
    let forms = normalize_triple(forms);
    assert!(
        f2.map_vars(&uvset, &forms).is_zero(),
        "parametrization must satisfy the form identically"
    );
    let [q1, q2, q3] = <[MultiPoly; 3]>::try_from(forms).unwrap();
    Ok([q1, q2, q3])
}

/// Scale three polynomials by one common rational unit so that coefficients
/// are coprime integers and the first nonzero coefficient is positive.
fn normalize_triple(forms: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for f in &forms {
        for (_, c) in f.terms() {
            let r = c.as_rational().unwrap();
            denom_lcm = denom_lcm.lcm(r.denom());
        }
    }
    for f in &forms {
        for (_, c) in f.terms() {
            let r = c.as_rational().unwrap();
            numer_gcd = numer_gcd.gcd(&(r.numer() * (&denom_lcm / r.denom())));
        }
    }
    assert!(!numer_gcd.is_zero(), "all three components are zero");
    let mut unit = Rational::new(denom_lcm, numer_gcd);
    let lead = forms
        .iter()
        .find(|f| !f.is_zero())
        .and_then(|f| f.leading())
        .unwrap()
        .1
        .as_rational()
        .unwrap()
        .clone();
    if (lead * &unit).is_negative() {
        unit = -unit;
    }
    let scale = Coeff::Rat(unit);
    forms.iter().map(|f| f.scale(&scale)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2_poly(terms: &[(i64, [u32; 3])]) -> MultiPoly {
        let vars = VarSet::p2();
        MultiPoly::from_terms(
            &vars,
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), Coeff::Rat(rat_int(*c))))
                .collect(),
        )
    }

    fn var(i: usize) -> MultiPoly {
        MultiPoly::var(&VarSet::p2(), i)
    }

    #[test]
    fn splits_rational_pairs() {
        // x1*x2
        let f = p2_poly(&[(1, [1, 1, 0])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 2);
        let lines = an.lines.unwrap();
        assert!(lines.extension.is_none());
        let set = [lines.l1.clone(), lines.l2.clone()];
        assert!(set.contains(&var(0)) && set.contains(&var(1)));
        let meet: Vec<Rational> = lines
            .meet
            .iter()
            .map(|c| c.as_rational().unwrap().clone())
            .collect();
        assert_eq!(meet, vec![rat_int(0), rat_int(0), rat_int(1)]);

        // x2*(x1 + x3), written out
        let f = p2_poly(&[(1, [1, 1, 0]), (1, [0, 1, 1])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 2);
        let lines = an.lines.unwrap();
        let expect = var(0).add(&var(2));
        let set = [lines.l1.clone(), lines.l2.clone()];
        assert!(set.contains(&var(1)) && set.contains(&expect));
        assert!(lines.l1.eval(&lines.meet).is_zero());
        assert!(lines.l2.eval(&lines.meet).is_zero());
    }

    #[test]
    fn conjugate_line_pairs() {
        // x1^2 + x2^2 splits over Q(i) only.
        let f = p2_poly(&[(1, [2, 0, 0]), (1, [0, 2, 0])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 2);
        let lines = an.lines.unwrap();
        assert!(lines.extension.is_some());
        // The product of the conjugate pair must descend to the rational
        // form, up to the recorded scale.
        let prod = lines.l1.mul(&lines.l2);
        assert!(prod.ext_field().is_none(), "product must be rational");
        let ratio = prod
            .leading()
            .unwrap()
            .1
            .div(f.leading().unwrap().1)
            .unwrap();
        assert_eq!(prod, f.scale(&ratio));
        let meet: Vec<Rational> = lines
            .meet
            .iter()
            .map(|c| c.as_rational().unwrap().clone())
            .collect();
        assert_eq!(meet, vec![rat_int(0), rat_int(0), rat_int(1)]);

        // x1^2 - 2*x3^2: real quadratic extension, meet on the x2 axis.
        let f = p2_poly(&[(1, [2, 0, 0]), (-2, [0, 0, 2])]);
        let an = analyze_conic(&f).unwrap();
        let lines = an.lines.unwrap();
        assert!(lines.extension.is_some());
        let meet: Vec<Rational> = lines
            .meet
            .iter()
            .map(|c| c.as_rational().unwrap().clone())
            .collect();
        assert_eq!(meet, vec![rat_int(0), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn parametrizes_rank_three_conics() {
        // x1*x3 - x2^2 gets the standard Veronese parametrization.
        let f = p2_poly(&[(1, [1, 0, 1]), (-1, [0, 2, 0])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 3);
        let q = an.parametrization.unwrap();
        let uvset = VarSet::uv();
        let u2 = MultiPoly::monomial(&uvset, &[2, 0], Coeff::one());
        let uv = MultiPoly::monomial(&uvset, &[1, 1], Coeff::one());
        let v2 = MultiPoly::monomial(&uvset, &[0, 2], Coeff::one());
        assert_eq!(q[0], u2);
        assert_eq!(q[1], uv);
        assert_eq!(q[2], v2);

        // A circle with rational points.
        let f = p2_poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 3);
        let q = an.parametrization.unwrap();
        assert!(f.map_vars(&VarSet::uv(), &q).is_zero());
        assert!(q.iter().any(|c| c.total_degree() == Some(2)));
        let p = an.base_point.unwrap();
        let vals: Vec<Coeff> = p.iter().map(|c| Coeff::Rat(c.clone())).collect();
        assert!(f.eval(&vals).is_zero());
    }

    #[test]
    fn reports_pointless_conics() {
        // Definite: no real points at all, search is skipped.
        let f = p2_poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 3);
        assert!(an.parametrization.is_none());
        assert!(an.base_point.is_none());

        // Indefinite but with no rational points (x^2 + y^2 = 3 z^2 is
        // insoluble mod 3); the bounded search comes up empty.
        let f = p2_poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-3, [0, 0, 2])]);
        let an = analyze_conic(&f).unwrap();
        assert_eq!(an.rank, 3);
        assert!(an.parametrization.is_none());
    }

    #[test]
    fn explicit_points_give_parametrizations() {
        let f = p2_poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
        let q = parametrization_from_point(&f, &[rat_int(3), rat_int(4), rat_int(5)]).unwrap();
        assert!(f.map_vars(&VarSet::uv(), &q).is_zero());
        let err = parametrization_from_point(&f, &[rat_int(1), rat_int(1), rat_int(1)]);
        assert_eq!(err.unwrap_err(), ConicError::PointNotOnConic);
        let err = parametrization_from_point(&f, &[rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(err.unwrap_err(), ConicError::PointNotOnConic);
    }

    #[test]
    fn rank_one_is_rejected() {
        // 3*(x1 + 2*x2 - x3)^2
        let l = var(0).add(&var(1).scale(&Coeff::from_int(2))).sub(&var(2));
        let f = l.mul(&l).scale(&Coeff::from_int(3));
        match analyze_conic(&f) {
            Err(ConicError::DoubleLine { line }) => assert_eq!(line, l),
            other => panic!("expected DoubleLine, got {:?}", other),
        }
        match analyze_conic(&var(1).mul(&var(1))) {
            Err(ConicError::DoubleLine { line }) => assert_eq!(line, var(1)),
            other => panic!("expected DoubleLine, got {:?}", other),
        }
    }

    #[test]
    fn rejects_junk() {
        let vars = VarSet::p2();
        assert!(matches!(
            analyze_conic(&MultiPoly::zero(&vars)),
            Err(ConicError::NotAConic(_))
        ));
        // Inhomogeneous.
        let f = var(0).mul(&var(0)).add(&var(0));
        assert!(matches!(analyze_conic(&f), Err(ConicError::NotAConic(_))));
        // Wrong degree.
        let f = var(0).mul(&var(0)).mul(&var(0));
        assert!(matches!(analyze_conic(&f), Err(ConicError::NotAConic(_))));
        // Wrong variable count.
        let g2 = VarSet::germ2();
        let f = MultiPoly::monomial(&g2, &[2, 0], Coeff::one());
        assert!(matches!(analyze_conic(&f), Err(ConicError::NotAConic(_))));
    }

    #[test]
    fn line_spans_cover_their_lines() {
        let l = var(0).scale(&Coeff::from_int(2)).sub(&var(2));
        let span = line_span(&l);
        for v in &span {
            assert!(l.eval(v).is_zero());
        }
        // The two span points must be projectively independent: some 2x2
        // minor of the coordinate matrix is nonzero.
        let indep = (0..3).any(|i| {
            (0..3).any(|j| {
                i != j
                    && !span[0][i]
                        .mul(&span[1][j])
                        .sub(&span[0][j].mul(&span[1][i]))
                        .is_zero()
            })
        });
        assert!(indep);
    }

    #[test]
    fn random_products_recover_their_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x636f6e6963);
        let vars = VarSet::p2();
        let rand_line = |rng: &mut ChaCha8Rng| -> MultiPoly {
            loop {
                let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
                if coeffs.iter().all(|c| *c == 0) {
                    continue;
                }
                let mut l = MultiPoly::zero(&vars);
                for (i, c) in coeffs.iter().enumerate() {
                    l = l.add(&MultiPoly::var(&vars, i).scale(&Coeff::from_int(*c)));
                }
                return l.normalize_primitive();
            }
        };
        let mut seen_rank2 = 0;
        for _ in 0..40 {
            let l1 = rand_line(&mut rng);
            let l2 = rand_line(&mut rng);
            let scale = Coeff::from_int(rng.gen_range(1..=5));
            let f = l1.mul(&l2).scale(&scale);
            if l1 == l2 {
                match analyze_conic(&f) {
                    Err(ConicError::DoubleLine { line }) => assert_eq!(line, l1),
                    other => panic!("expected DoubleLine, got {:?}", other),
                }
                continue;
            }
            seen_rank2 += 1;
            let an = analyze_conic(&f).unwrap();
            assert_eq!(an.rank, 2);
            let lines = an.lines.unwrap();
            assert!(lines.extension.is_none());
            let got = [lines.l1, lines.l2];
            assert!(got.contains(&l1) && got.contains(&l2), "lost a factor");
        }
        assert!(seen_rank2 >= 30);
    }

    #[test]
    fn random_coordinate_changes_keep_rank_three_parametrizable() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7665726f);
        let vars = VarSet::p2();
        let base = p2_poly(&[(1, [1, 0, 1]), (-1, [0, 2, 0])]);
        let mut checked = 0;
        for _ in 0..12 {
            // Small unimodular-ish integer substitutions keep points small
            // enough for the bounded search.
            let m: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if det == 0 {
                continue;
            }
            let images: Vec<MultiPoly> = (0..3)
                .map(|i| {
                    let mut p = MultiPoly::zero(&vars);
                    for (j, c) in m[i].iter().enumerate() {
                        p = p.add(&MultiPoly::var(&vars, j).scale(&Coeff::from_int(*c)));
                    }
                    p
                })
                .collect();
            let f = base.map_vars(&vars, &images);
            let an = analyze_conic(&f).unwrap();
            assert_eq!(an.rank, 3);
            let q = an.parametrization.expect("split conic keeps its points");
            assert!(f.map_vars(&VarSet::uv(), &q).is_zero());
            checked += 1;
        }
        assert!(checked >= 8);
    }
}
