//! Singular loci of plane and weighted-plane curves, located exactly.
//!
//! Points come out as Galois orbits: an irreducible polynomial defining the
//! orbit's residue field, explicit chart coordinates of one representative in
//! that field, and a germ report computed at that representative. The
//! ambient is covered by a triangular family of charts so every projective
//! point is examined exactly once: the main affine chart, then the locus at
//! infinity of that chart, and (for the plane) the final corner point. The
//! quarter-point of P(1,1,4) and the half-point of P(1,1,2) never need a
//! chart because valid branch data stays away from the vertex.
//!
//! The elimination works with bivariate resultants computed by evaluation
//! and Newton interpolation, which on the sparse high-degree curves arising
//! here is far cheaper than expanding a Sylvester determinant.

use crate::coeff::{Coeff, ExtField, Rational};
use crate::factor::factor;
use crate::gcd::{gcd, is_squarefree};
use crate::germ::{germ_report_at, GermReport};
use crate::poly::{MultiPoly, VarSet};
use crate::unipoly::UPoly;
use std::fmt;
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// The projective plane, coordinates x1, x2, x3.
    P2,
    /// P(1,1,4), coordinates u, v, y; branch curves have weighted degree 12.
    P114,
    /// P(1,1,2), coordinates u, v, y; restriction halves have degree 6.
    P112,
}

impl Ambient {
    pub fn varset(self) -> Rc<VarSet> {
        match self {
            Ambient::P2 => VarSet::p2(),
            Ambient::P114 => VarSet::p114(),
            Ambient::P112 => VarSet::p112(),
        }
    }

    /// The triangular chart list. Each chart owns a disjoint piece of the
    /// ambient and the union is everything a branch curve can touch.
    pub fn charts(self) -> Vec<Chart> {
        match self {
            Ambient::P2 => vec![
                Chart {
                    one: 2,
                    coords: (0, 1),
                    search: Search::Full,
                    label: "x3=1",
                },
                Chart {
                    one: 1,
                    coords: (0, 2),
                    search: Search::Line { pinned: 1 },
                    label: "x2=1, x3=0",
                },
                Chart {
                    one: 0,
                    coords: (1, 2),
                    search: Search::Origin,
                    label: "x1=1, x2=x3=0",
                },
            ],
            Ambient::P114 | Ambient::P112 => vec![
                Chart {
                    one: 0,
                    coords: (1, 2),
                    search: Search::Full,
                    label: "u=1",
                },
                Chart {
                    one: 1,
                    coords: (0, 2),
                    search: Search::Line { pinned: 0 },
                    label: "v=1, u=0",
                },
            ],
        }
    }
}

/// What part of a chart an entry is responsible for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Search {
    /// The whole affine chart.
    Full,
    /// Only the locus where the chart coordinate at this position of
    /// `coords` vanishes (the previous charts covered the rest).
    Line { pinned: usize },
    /// Only the chart origin.
    Origin,
}

#[derive(Debug, Clone)]
pub struct Chart {
    /// Index of the ambient coordinate set to 1.
    pub one: usize,
    /// Ambient coordinates serving as the chart coordinates (a, b).
    pub coords: (usize, usize),
    pub search: Search,
    pub label: &'static str,
}

impl Chart {
    /// Restrict a form on the ambient to this chart, as a polynomial in the
    /// chart coordinates (a, b).
    pub fn restrict(&self, f: &MultiPoly) -> MultiPoly {
        let target = VarSet::affine2();
        let n = f.vars().len();
        let mut images = Vec::with_capacity(n);
        for m in 0..n {
            images.push(if m == self.one {
                MultiPoly::one(&target)
            } else if m == self.coords.0 {
                MultiPoly::var(&target, 0)
            } else if m == self.coords.1 {
                MultiPoly::var(&target, 1)
            } else {
                unreachable!("chart indices cover the variable set")
            });
        }
        f.map_vars(&target, &images)
    }
}

/// A Galois orbit of singular points, with the germ analysis of one
/// representative (all conjugates share it).
#[derive(Debug, Clone)]
pub struct SingularOrbit {
    /// Index into `Ambient::charts()`.
    pub chart: usize,
    /// Monic irreducible polynomial over the curve's coefficient field
    /// defining the orbit's residue field; None when the representative is
    /// already rational over it.
    pub min_poly: Option<UPoly>,
    /// Chart coordinates (a, b) of the representative.
    pub point: [Coeff; 2],
    /// Number of geometric points in the orbit.
    pub orbit_size: u32,
    pub report: GermReport,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocusError {
    /// The curve has a repeated factor; singular loci are only enumerated
    /// for squarefree curves.
    NotSquarefree,
    /// The located set is not finite (the system has a shared component).
    NotFinite,
    /// The branch passes through the weighted vertex (0:0:1), which valid
    /// model data never does.
    VertexOnBranch,
    /// No shear in the search budget separated the points; should not occur
    /// for the degrees this crate handles.
    ShearBudget,
    /// The points live in an extension of an extension, which the
    /// coefficient tower does not represent.
    SecondExtension,
    WrongAmbient(String),
}

impl fmt::Display for LocusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusError::NotSquarefree => write!(f, "curve is not squarefree"),
            LocusError::NotFinite => write!(f, "solution set is not finite"),
            LocusError::VertexOnBranch => {
                write!(f, "branch curve passes through the weighted vertex")
            }
            LocusError::ShearBudget => write!(f, "no shear separated the solution points"),
            LocusError::SecondExtension => write!(
                f,
                "points require a second field extension on top of the coefficient field"
            ),
            LocusError::WrongAmbient(why) => write!(f, "curve does not fit the ambient: {}", why),
        }
    }
}

impl std::error::Error for LocusError {}

/// All singular points of a squarefree curve in the given ambient, as Galois
/// orbits with germ reports. Every orbit is verified exactly: the curve and
/// both chart partials vanish at the representative.
pub fn singular_locus(
    curve: &MultiPoly,
    ambient: Ambient,
) -> Result<Vec<SingularOrbit>, LocusError> {
    let vs = ambient.varset();
    if curve.vars().as_ref() != vs.as_ref() {
        return Err(LocusError::WrongAmbient(format!(
            "expected coordinates of {:?}",
            ambient
        )));
    }
    if curve.is_zero() {
        return Err(LocusError::WrongAmbient("curve is zero".into()));
    }
    if !curve.is_weighted_homogeneous() {
        return Err(LocusError::WrongAmbient(
            "curve is not weighted-homogeneous".into(),
        ));
    }
    if !is_squarefree(curve) {
        return Err(LocusError::NotSquarefree);
    }
    if matches!(ambient, Ambient::P114 | Ambient::P112) {
        let vertex = [Coeff::zero(), Coeff::zero(), Coeff::one()];
        if curve.eval(&vertex).is_zero() {
            return Err(LocusError::VertexOnBranch);
        }
    }
    let mut out = Vec::new();
    for (ci, chart) in ambient.charts().iter().enumerate() {
        let d = chart.restrict(curve);
        let orbits = match chart.search {
            Search::Full => solve_system(&|k| {
                let c = shear(&d, k);
                vec![c.clone(), c.derivative(0), c.derivative(1)]
            })?,
            Search::Line { pinned } => {
                let sys = [d.clone(), d.derivative(0), d.derivative(1)];
                line_zeros(&sys, pinned)?
            }
            Search::Origin => {
                let origin = [Coeff::zero(), Coeff::zero()];
                let singular = d.eval(&origin).is_zero()
                    && d.derivative(0).eval(&origin).is_zero()
                    && d.derivative(1).eval(&origin).is_zero();
                if singular {
                    vec![PointOrbit {
                        min_poly: None,
                        point: origin,
                        size: 1,
                    }]
                } else {
                    Vec::new()
                }
            }
        };
        for o in orbits {
            let report = germ_report_at(&d, &o.point);
            assert!(
                report.multiplicity >= 2,
                "located point is not singular on its chart curve"
            );
            out.push(SingularOrbit {
                chart: ci,
                min_poly: o.min_poly,
                point: o.point,
                orbit_size: o.size,
                report,
            });
        }
    }
    Ok(out)
}

/// A located Galois orbit before germ analysis.
#[derive(Debug, Clone)]
pub(crate) struct PointOrbit {
    pub min_poly: Option<UPoly>,
    pub point: [Coeff; 2],
    pub size: u32,
}

/// Common zeros of a bivariate polynomial system over the chart plane,
/// expected finite. The builder is handed a shear parameter k and must
/// return the system in the sheared coordinates (a, b) with b replaced by
/// b + k*a; the solver undoes the shear on the points it finds. Shearing is
/// only needed when a solution's first coordinate does not lie in the field
/// generated by its second.
pub(crate) fn solve_system(
    build: &dyn Fn(i64) -> Vec<MultiPoly>,
) -> Result<Vec<PointOrbit>, LocusError> {
    for k in 0..=60i64 {
        let sys = build(k);
        match try_solve(&sys)? {
            Some(mut orbits) => {
                if k != 0 {
                    let kc = Coeff::from_int(k);
                    for o in &mut orbits {
                        o.point[1] = o.point[1].add(&o.point[0].mul(&kc));
                    }
                }
                return Ok(orbits);
            }
            None => continue,
        }
    }
    Err(LocusError::ShearBudget)
}

fn shear(f: &MultiPoly, k: i64) -> MultiPoly {
    if k == 0 {
        return f.clone();
    }
    let vars = f.vars().clone();
    let a = MultiPoly::var(&vars, 0);
    let b = MultiPoly::var(&vars, 1).add(&a.scale(&Coeff::from_int(k)));
    f.map_vars(&vars, &[a, b])
}

/// One attempt at the given system. `Ok(None)` asks the caller to shear and
/// retry; otherwise the full list of solution orbits is returned.
fn try_solve(input: &[MultiPoly]) -> Result<Option<Vec<PointOrbit>>, LocusError> {
    let sys: Vec<&MultiPoly> = input.iter().filter(|p| !p.is_zero()).collect();
    if sys.is_empty() || sys.len() == 1 {
        return Err(LocusError::NotFinite);
    }
    if sys.iter().any(|p| p.is_constant()) {
        return Ok(Some(Vec::new()));
    }
    let mut common = sys[0].clone();
    for p in &sys[1..] {
        common = gcd(&common, p);
    }
    if !common.is_constant() {
        return Err(LocusError::NotFinite);
    }
    let base_is_ext = sys.iter().any(|p| p.ext_field().is_some());

    // Candidate polynomial for the b-coordinates: gcd of every constraint
    // that does not involve a, together with resultants eliminating a.
    let mut with_a: Vec<&MultiPoly> = Vec::new();
    let mut sources: Vec<UPoly> = Vec::new();
    for p in &sys {
        if p.degree_in(0).unwrap_or(0) > 0 {
            with_a.push(p);
        } else {
            sources.push(UPoly::from_multipoly(p, 1).expect("polynomial in b alone"));
        }
    }
    for i in 1..with_a.len() {
        let r = resultant_in_a(with_a[0], with_a[i]);
        if !r.is_zero() {
            sources.push(r);
        }
    }
    if sources.is_empty() {
        // Every resultant against the first polynomial vanished: positive
        // a-degree common factors. A shear cannot remove those (the full
        // system gcd is constant, so they are not shared by everything and
        // the set is still finite), but re-pairing after a shear does.
        return Ok(None);
    }
    let mut cands = sources[0].clone();
    for s in &sources[1..] {
        cands = cands.gcd(s);
    }
    let cands = squarefree_upoly(&cands);
    if cands.is_constant() {
        return Ok(Some(Vec::new()));
    }

    let mut orbits: Vec<PointOrbit> = Vec::new();
    let (_, factors) = factor(&cands);
    for (p, _) in factors {
        let d = p.degree().unwrap();
        if d == 1 {
            let beta = linear_root(&p);
            match zeros_over(&sys, &beta, None, base_is_ext)? {
                Some(found) => orbits.extend(found),
                None => return Ok(None),
            }
        } else {
            if base_is_ext {
                return Err(LocusError::SecondExtension);
            }
            let field = ext_from_upoly(&p);
            let beta = field.generator();
            match zeros_over(&sys, &beta, Some(p.monic()), base_is_ext)? {
                Some(found) => orbits.extend(found),
                None => return Ok(None),
            }
        }
    }
    for o in &orbits {
        assert!(
            sys.iter().all(|p| p.eval(&o.point).is_zero()),
            "located point does not satisfy the system"
        );
    }
    Ok(Some(orbits))
}

/// Solutions of the system with second coordinate fixed to `beta`.
/// `beta_min_poly` is Some exactly when beta generates a proper extension.
fn zeros_over(
    sys: &[&MultiPoly],
    beta: &Coeff,
    beta_min_poly: Option<UPoly>,
    base_is_ext: bool,
) -> Result<Option<Vec<PointOrbit>>, LocusError> {
    let mut evals: Vec<UPoly> = Vec::new();
    for p in sys {
        let e = p.eval_at(1, beta);
        if !e.is_zero() {
            evals.push(UPoly::from_multipoly(&e, 0).expect("polynomial in a alone"));
        }
    }
    if evals.is_empty() {
        return Err(LocusError::NotFinite);
    }
    let mut g = evals[0].clone();
    for e in &evals[1..] {
        g = g.gcd(e);
    }
    if g.is_constant() {
        // Spurious candidate (resultant root without a common zero above it).
        return Ok(Some(Vec::new()));
    }
    let beta_degree = beta_min_poly.as_ref().map_or(1, |p| p.degree().unwrap());
    let mut out = Vec::new();
    let (_, factors) = factor(&g);
    for (q, _) in factors {
        let dq = q.degree().unwrap();
        if dq == 1 {
            let alpha = linear_root(&q);
            out.push(PointOrbit {
                min_poly: beta_min_poly.clone(),
                point: [alpha, beta.clone()],
                size: beta_degree as u32,
            });
        } else if beta_degree == 1 && !base_is_ext {
            // The a-coordinate generates the orbit's field instead.
            let field = ext_from_upoly(&q);
            out.push(PointOrbit {
                min_poly: Some(q.monic()),
                point: [field.generator(), beta.clone()],
                size: dq as u32,
            });
        } else if base_is_ext {
            return Err(LocusError::SecondExtension);
        } else {
            // Both coordinates irrational and the first does not lie in the
            // field of the second: ask for a shear.
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// Solutions of the system on the line where the pinned chart coordinate
/// vanishes; the remaining coordinate is solved by univariate gcds.
pub(crate) fn line_zeros(
    sys: &[MultiPoly],
    pinned: usize,
) -> Result<Vec<PointOrbit>, LocusError> {
    let free = 1 - pinned;
    let mut evals: Vec<UPoly> = Vec::new();
    let mut base_is_ext = false;
    for p in sys {
        base_is_ext |= p.ext_field().is_some();
        let e = p.eval_at(pinned, &Coeff::zero());
        if !e.is_zero() {
            evals.push(UPoly::from_multipoly(&e, free).expect("polynomial in one variable"));
        }
    }
    if evals.is_empty() {
        return Err(LocusError::NotFinite);
    }
    let mut g = evals[0].clone();
    for e in &evals[1..] {
        g = g.gcd(e);
    }
    if g.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let (_, factors) = factor(&g);
    for (q, _) in factors {
        let dq = q.degree().unwrap();
        let (min_poly, root) = if dq == 1 {
            (None, linear_root(&q))
        } else if base_is_ext {
            return Err(LocusError::SecondExtension);
        } else {
            let field = ext_from_upoly(&q);
            (Some(q.monic()), field.generator())
        };
        let mut point = [Coeff::zero(), Coeff::zero()];
        point[free] = root;
        assert!(
            sys.iter().all(|p| p.eval(&point).is_zero()),
            "located point does not satisfy the system"
        );
        out.push(PointOrbit {
            min_poly,
            point,
            size: dq as u32,
        });
    }
    Ok(out)
}

fn linear_root(q: &UPoly) -> Coeff {
    q.coeff(0).div(&q.coeff(1)).unwrap().neg()
}

fn ext_from_upoly(p: &UPoly) -> Rc<ExtField> {
    let monic = p.monic();
    let coeffs: Vec<Rational> = monic
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational minimal polynomial").clone())
        .collect();
    ExtField::new("t", coeffs).expect("irreducible monic polynomial of degree at least 2")
}

fn squarefree_upoly(p: &UPoly) -> UPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.clone();
    }
    p.div_exact(&p.gcd(&d)).monic()
}

/// Resultant of two bivariate polynomials with respect to the first
/// variable, as a univariate polynomial in the second, via evaluation and
/// Newton interpolation. Both inputs must have positive degree in a.
fn resultant_in_a(f: &MultiPoly, g: &MultiPoly) -> UPoly {
    let df = f.degree_in(0).unwrap() as usize;
    let dg = g.degree_in(0).unwrap() as usize;
    let fb = f.degree_in(1).unwrap_or(0) as usize;
    let gb = g.degree_in(1).unwrap_or(0) as usize;
    let bound = df * gb + dg * fb;
    let lcf = f.coeffs_in(0).pop().unwrap();
    let lcg = g.coeffs_in(0).pop().unwrap();
    let mut samples: Vec<(Coeff, Coeff)> = Vec::with_capacity(bound + 1);
    let mut x = 0i64;
    while samples.len() <= bound {
        let xc = Coeff::from_int(x);
        // Alternate 0, 1, -1, 2, -2, ...
        x = if x > 0 { -x } else { -x + 1 };
        if lcf.eval(&[Coeff::zero(), xc.clone()]).is_zero()
            || lcg.eval(&[Coeff::zero(), xc.clone()]).is_zero()
        {
            continue;
        }
        let fu = UPoly::from_multipoly(&f.eval_at(1, &xc), 0).unwrap();
        let gu = UPoly::from_multipoly(&g.eval_at(1, &xc), 0).unwrap();
        samples.push((xc, univariate_resultant(&fu, &gu)));
    }
    if samples.iter().all(|(_, v)| v.is_zero()) {
        return UPoly::zero();
    }
    newton_interpolate(&samples)
}

/// Exact resultant of two univariate polynomials by the Euclidean identity
/// Res(f, g) = (-1)^(df*dg) * lc(g)^(df - dr) * Res(g, r) with r = f mod g.
fn univariate_resultant(f: &UPoly, g: &UPoly) -> Coeff {
    let df = f.degree().expect("nonzero");
    let dg = g.degree().expect("nonzero");
    if df == 0 {
        return f.coeff(0).pow(dg as u32);
    }
    if dg == 0 {
        return g.coeff(0).pow(df as u32);
    }
    let r = f.rem(g);
    if r.is_zero() {
        return Coeff::zero();
    }
    let dr = r.degree().unwrap();
    let mut out = g
        .lead()
        .unwrap()
        .pow((df - dr) as u32)
        .mul(&univariate_resultant(g, &r));
    if df * dg % 2 == 1 {
        out = out.neg();
    }
    out
}

fn newton_interpolate(samples: &[(Coeff, Coeff)]) -> UPoly {
    let n = samples.len();
    let mut coef: Vec<Coeff> = samples.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = samples[i].0.sub(&samples[i - j].0);
            coef[i] = coef[i].sub(&coef[i - 1]).div(&dx).unwrap();
        }
    }
    let mut p = UPoly::zero();
    let mut basis = UPoly::constant(Coeff::one());
    for (i, c) in coef.iter().enumerate() {
        p = p.add(&basis.scale(c));
        if i + 1 < n {
            let lin = UPoly::from_coeffs(vec![samples[i].0.neg(), Coeff::one()]);
            basis = basis.mul(&lin);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;
    use crate::germ::SingularityClass;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2(terms: &[(i64, [u32; 3])]) -> MultiPoly {
        let vars = VarSet::p2();
        MultiPoly::from_terms(
            &vars,
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), Coeff::Rat(rat_int(*c))))
                .collect(),
        )
    }

    fn wp(vars: &Rc<VarSet>, terms: &[(i64, [u32; 3])]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), Coeff::Rat(rat_int(*c))))
                .collect(),
        )
    }

    #[test]
    fn fermat_sextic_is_smooth() {
        let f = p2(&[(1, [6, 0, 0]), (1, [0, 6, 0]), (1, [0, 0, 6])]);
        let orbits = singular_locus(&f, Ambient::P2).unwrap();
        assert!(orbits.is_empty());
    }

    #[test]
    fn six_generic_lines_have_fifteen_nodes() {
        // x1 * x2 * x3 * (x1+x2+x3) * (x1+2*x2+3*x3) * (x1+5*x2+7*x3)
        let vars = VarSet::p2();
        let line = |c: [i64; 3]| {
            let mut l = MultiPoly::zero(&vars);
            for (i, ci) in c.iter().enumerate() {
                l = l.add(&MultiPoly::var(&vars, i).scale(&Coeff::from_int(*ci)));
            }
            l
        };
        let f = line([1, 0, 0])
            .mul(&line([0, 1, 0]))
            .mul(&line([0, 0, 1]))
            .mul(&line([1, 1, 1]))
            .mul(&line([1, 2, 3]))
            .mul(&line([1, 5, 7]));
        let orbits = singular_locus(&f, Ambient::P2).unwrap();
        let total: u32 = orbits.iter().map(|o| o.orbit_size).sum();
        assert_eq!(total, 15);
        for o in &orbits {
            assert_eq!(o.report.class, SingularityClass::A(1), "{:?}", o);
        }
        // The intersections spread over all three charts: 10 affine, 4 on
        // the line at infinity, 1 at the corner.
        let by_chart = |c: usize| -> u32 {
            orbits
                .iter()
                .filter(|o| o.chart == c)
                .map(|o| o.orbit_size)
                .sum()
        };
        assert_eq!(by_chart(0), 10);
        assert_eq!(by_chart(1), 4);
        assert_eq!(by_chart(2), 1);
    }

    #[test]
    fn weighted_branch_without_singularities() {
        let f = wp(
            &VarSet::p114(),
            &[(1, [12, 0, 0]), (1, [6, 6, 0]), (1, [0, 12, 0]), (1, [0, 0, 3])],
        );
        let orbits = singular_locus(&f, Ambient::P114).unwrap();
        assert!(orbits.is_empty());
    }

    #[test]
    fn weighted_cube_point_is_simple_elliptic() {
        // v^6 + y^3 in P(1,1,2) has exactly one singular point, at the
        // origin of the u=1 chart, where the germ is y^3 + v^6.
        let f = wp(&VarSet::p112(), &[(1, [0, 6, 0]), (1, [0, 0, 3])]);
        let orbits = singular_locus(&f, Ambient::P112).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].chart, 0);
        assert_eq!(orbits[0].orbit_size, 1);
        assert_eq!(orbits[0].report.class, SingularityClass::TildeE8);
    }

    #[test]
    fn conjugate_tacnodes_in_one_orbit() {
        // (x1^2 - 2*x3^2)^2 - x2^4: the two factors are tangent where they
        // meet, at (±sqrt2 : 0 : 1). One orbit of size two, class A3; the
        // points have rational second coordinate and the first coordinate
        // generates the field.
        let inner = p2(&[(1, [2, 0, 0]), (-2, [0, 0, 2])]);
        let f = inner.mul(&inner).sub(&p2(&[(1, [0, 4, 0])]));
        let orbits = singular_locus(&f, Ambient::P2).unwrap();
        assert_eq!(orbits.len(), 1);
        let o = &orbits[0];
        assert_eq!(o.orbit_size, 2);
        assert_eq!(o.report.class, SingularityClass::A(3));
        let mp = o.min_poly.as_ref().unwrap();
        assert_eq!(mp.degree(), Some(2));
        assert!(mp.coeff(0).eq(&Coeff::from_int(-2)) && mp.coeff(1).is_zero());
    }

    #[test]
    fn quartic_orbit_needs_a_shear() {
        // (x1^2 - 3*x3^2)^2 - (x2^2 - 2*x3^2)^2 has four nodes at
        // (±sqrt3 : ±sqrt2 : 1), a single Galois orbit of size four whose
        // points only split linearly after b is replaced by b + k*a.
        let p = p2(&[(1, [2, 0, 0]), (-3, [0, 0, 2])]);
        let q = p2(&[(1, [0, 2, 0]), (-2, [0, 0, 2])]);
        let f = p.mul(&p).sub(&q.mul(&q));
        let orbits = singular_locus(&f, Ambient::P2).unwrap();
        let affine: Vec<_> = orbits.iter().filter(|o| o.chart == 0).collect();
        assert_eq!(affine.len(), 1);
        let o = affine[0];
        assert_eq!(o.orbit_size, 4);
        assert_eq!(o.report.class, SingularityClass::A(1));
        assert_eq!(o.min_poly.as_ref().unwrap().degree(), Some(4));
        // At infinity the two conics also meet: x1^4 - x2^4 vanishes with
        // multiplicity on... check completeness via total intersection count
        // instead: factors are conics meeting in 4 affine points only.
        assert_eq!(orbits.len(), 1, "{:?}", orbits);
    }

    #[test]
    fn lines_through_infinity_are_found() {
        // x1 * x2 * (x1 - x3) * (x2 - x3): six nodes, two at infinity-ish
        // positions: (0:1:0) on the x2=1 chart line and (1:0:0) at the
        // corner.
        let f = p2(&[(1, [1, 1, 0])])
            .mul(&p2(&[(1, [1, 0, 0]), (-1, [0, 0, 1])]))
            .mul(&p2(&[(1, [0, 1, 0]), (-1, [0, 0, 1])]));
        let orbits = singular_locus(&f, Ambient::P2).unwrap();
        let total: u32 = orbits.iter().map(|o| o.orbit_size).sum();
        assert_eq!(total, 6);
        assert!(orbits.iter().all(|o| o.report.class == SingularityClass::A(1)));
        assert_eq!(orbits.iter().filter(|o| o.chart == 1).count(), 1);
        assert_eq!(orbits.iter().filter(|o| o.chart == 2).count(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = p2(&[(1, [2, 4, 0])]);
        assert_eq!(
            singular_locus(&f, Ambient::P2).unwrap_err(),
            LocusError::NotSquarefree
        );
        // Vertex on branch: no y^3 term.
        let f = wp(&VarSet::p114(), &[(1, [4, 0, 2]), (1, [0, 12, 0])]);
        assert_eq!(
            singular_locus(&f, Ambient::P114).unwrap_err(),
            LocusError::VertexOnBranch
        );
        // Inhomogeneous.
        let f = p2(&[(1, [2, 0, 0]), (1, [1, 0, 0])]);
        assert!(matches!(
            singular_locus(&f, Ambient::P2),
            Err(LocusError::WrongAmbient(_))
        ));
    }

    #[test]
    fn interpolated_resultants_match_direct_elimination() {
        // Cross-check the evaluation/interpolation resultant against the
        // Sylvester-determinant implementation on random inputs.
        use crate::resultant::resultant;
        let mut rng = ChaCha8Rng::seed_from_u64(0x726573);
        let vars = VarSet::affine2();
        for _ in 0..25 {
            let mut rand_poly = |dmax: u32| -> MultiPoly {
                let terms: Vec<(Vec<u32>, Coeff)> = (0..6)
                    .map(|_| {
                        let i = rng.gen_range(0..=dmax);
                        let j = rng.gen_range(0..=(dmax - i));
                        (vec![i, j], Coeff::from_int(rng.gen_range(-3..=3)))
                    })
                    .collect();
                MultiPoly::from_terms(&vars, terms)
            };
            let f = rand_poly(4);
            let g = rand_poly(3);
            if f.degree_in(0).unwrap_or(0) == 0 || g.degree_in(0).unwrap_or(0) == 0 {
                continue;
            }
            let fast = resultant_in_a(&f, &g);
            let slow = resultant(&f, &g, 0).unwrap();
            let slow = UPoly::from_multipoly(&slow, 1).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn random_line_arrangements_have_binomial_node_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6c696e65);
        let vars = VarSet::p2();
        let mut done = 0;
        'outer: while done < 12 {
            let lines: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..3).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            // Genericity: no zero line, no proportional pair, no concurrent
            // triple (3x3 determinant).
            for l in &lines {
                if l.iter().all(|c| *c == 0) {
                    continue 'outer;
                }
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let (a, b) = (&lines[i], &lines[j]);
                    let cross = [
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ];
                    if cross.iter().all(|c| *c == 0) {
                        continue 'outer;
                    }
                }
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    for k in (j + 1)..4 {
                        let m = [&lines[i], &lines[j], &lines[k]];
                        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                        if det == 0 {
                            continue 'outer;
                        }
                    }
                }
            }
            let mut f = MultiPoly::one(&vars);
            for l in &lines {
                let mut lp = MultiPoly::zero(&vars);
                for (i, c) in l.iter().enumerate() {
                    lp = lp.add(&MultiPoly::var(&vars, i).scale(&Coeff::from_int(*c)));
                }
                f = f.mul(&lp);
            }
            let orbits = singular_locus(&f, Ambient::P2).unwrap();
            let total: u32 = orbits.iter().map(|o| o.orbit_size).sum();
            assert_eq!(total, 6, "four generic lines meet in six nodes");
            assert!(orbits.iter().all(|o| o.report.class == SingularityClass::A(1)));
            done += 1;
        }
    }
}
