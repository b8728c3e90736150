//! Classification of plane curve germs at the origin.
//!
//! The decision tree keys on the multiplicity of the germ, the multiplicity
//! pattern of the tangent cone (as a multiset of line multiplicities over
//! the algebraic closure), Milnor numbers, and contact orders along repeated
//! tangent lines. The recognized classes are the ones that can appear on the
//! branch curve of a double-plane polarized surface of this degree: A and D
//! chains, E6/E7/E8, the two simple elliptic classes with tilde-E labels,
//! and the degenerate cusps T(2,q,r). Everything else is reported as
//! Unclassified with a reason string rather than guessed at.
//!
//! There is a genuine ambiguity in the multiplicity-3, single-tangent
//! branch: a germ with that cone and Milnor number q+4 (q >= 7) is labeled
//! T(2,3,q) on the strength of those two invariants alone, which is what
//! the intended consumers need, but exceptional unimodal germs with the
//! same invariants would receive the same label.

use std::fmt;

use crate::coeff::Coeff;
use crate::factor::factor;
use crate::localalg::{intersection_multiplicity, leading_form, milnor, order_at_origin, LocalAlgError};
use crate::poly::MultiPoly;
use crate::unipoly::UPoly;

/// Local type of a curve germ, or of a point on the non-normal locus of a
/// double cover (the last four variants).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum SingularityClass {
    Smooth,
    /// A_mu for mu >= 1.
    A(u32),
    /// D_mu for mu >= 4.
    D(u32),
    /// E6, E7 or E8.
    E(u32),
    /// Simple elliptic of degree 2 (quadruple point, four distinct tangents).
    TildeE7,
    /// Simple elliptic of degree 1 (triple point, Milnor number 10).
    TildeE8,
    /// Degenerate cusp T(2, q, r), stored with q <= r.
    Cusp(u32, u32),
    /// Two sheets crossing normally along the double locus.
    NormalCrossing,
    /// Pinch point of the non-normal locus.
    Pinch,
    /// Degenerate cusp on the non-normal locus: double locus has a node.
    DegCuspA,
    /// Degenerate cusp on the non-normal locus: residual curve tangent to
    /// the double locus; the index records the local chain length.
    DegCuspB(u32),
    /// Anything the tree does not recognize, with a reason.
    Unclassified(String),
}

impl SingularityClass {
    pub fn label(&self) -> String {
        match self {
            SingularityClass::Smooth => "smooth".to_string(),
            SingularityClass::A(m) => format!("A{m}"),
            SingularityClass::D(m) => format!("D{m}"),
            SingularityClass::E(m) => format!("E{m}"),
            SingularityClass::TildeE7 => "~E7".to_string(),
            SingularityClass::TildeE8 => "~E8".to_string(),
            SingularityClass::Cusp(q, r) => format!("T(2,{q},{r})"),
            SingularityClass::NormalCrossing => "normal_crossing".to_string(),
            SingularityClass::Pinch => "pinch".to_string(),
            SingularityClass::DegCuspA => "deg_cusp_A".to_string(),
            SingularityClass::DegCuspB(n) => format!("deg_cusp_B({n})"),
            SingularityClass::Unclassified(why) => format!("unclassified: {why}"),
        }
    }

    pub fn is_unclassified(&self) -> bool {
        matches!(self, SingularityClass::Unclassified(_))
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermError {
    /// The given point does not lie on the curve it is supposed to.
    PointNotOnCurve,
}

impl fmt::Display for GermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermError::PointNotOnCurve => write!(f, "point does not lie on the curve"),
        }
    }
}

impl std::error::Error for GermError {}

fn unclassified(why: impl Into<String>) -> SingularityClass {
    SingularityClass::Unclassified(why.into())
}

fn milnor_or_unclassified(f: &MultiPoly) -> Result<u32, SingularityClass> {
    match milnor(f) {
        Ok(mu) => Ok(mu),
        Err(LocalAlgError::NonIsolated) => Err(unclassified("non-isolated singularity")),
        Err(e @ LocalAlgError::TruncationCap { .. }) => Err(unclassified(e.to_string())),
    }
}

/// A tangent line of the cone: direction vector and multiplicity in the
/// cone, with `extension_degree` the degree of its field of definition over
/// the base (1 for rational lines). Conjugate lines of an irreducible
/// factor are represented once, by the factor.
struct TangentFactor {
    multiplicity: u32,
    degree: u32,
    poly: UPoly,
    is_infinity: bool,
}

/// Factor the tangent cone of f into tangent lines. Returns the factors and
/// the multiset pattern of line multiplicities over the closure, sorted
/// descending.
fn tangent_cone_lines(f: &MultiPoly) -> (Vec<TangentFactor>, Vec<u32>) {
    let cone = leading_form(f);
    let m = cone.total_degree().expect("nonzero");
    // Dehomogenize on the first variable: the line x = 0 appears with
    // multiplicity m - deg, every other line y = t x as a root t.
    let g = UPoly::from_coeffs(
        (0..=m).map(|j| cone.coeff(&[m - j, j])).collect(),
    );
    let dg = g.degree().expect("cone nonzero") as u32;
    let mut factors = Vec::new();
    let mut pattern = Vec::new();
    if dg < m {
        factors.push(TangentFactor {
            multiplicity: m - dg,
            degree: 1,
            poly: UPoly::x(),
            is_infinity: true,
        });
        pattern.push(m - dg);
    }
    let irred = if dg == 0 { Vec::new() } else { factor(&g).1 };
    for (p, e) in irred {
        let d = p.degree().unwrap() as u32;
        for _ in 0..d {
            pattern.push(e);
        }
        factors.push(TangentFactor {
            multiplicity: e,
            degree: d,
            poly: p,
            is_infinity: false,
        });
    }
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    (factors, pattern)
}

/// Order of vanishing of f along the line through the origin with direction
/// (d1, d2); None when the line is a component of f.
fn order_along_line(f: &MultiPoly, d1: &Coeff, d2: &Coeff) -> Option<u32> {
    let deg = f.total_degree()? ;
    let mut by_degree: Vec<Coeff> = vec![Coeff::zero(); deg as usize + 1];
    for (mono, c) in f.terms() {
        let (a, b) = (mono.0[0], mono.0[1]);
        let v = c.mul(&d1.pow(a)).mul(&d2.pow(b));
        let slot = &mut by_degree[(a + b) as usize];
        *slot = slot.add(&v);
    }
    by_degree.iter().position(|c| !c.is_zero()).map(|k| k as u32)
}

/// Direction vector of the line cut out by a tangent factor, when the
/// factor is linear; the root of c1 t + c0 is -c0/c1.
fn line_direction(t: &TangentFactor) -> Option<(Coeff, Coeff)> {
    if t.is_infinity {
        return Some((Coeff::zero(), Coeff::one()));
    }
    if t.degree != 1 {
        return None;
    }
    let c0 = t.poly.coeff(0);
    let c1 = t.poly.coeff(1);
    let root = c0.neg().div(&c1).expect("linear factor has nonzero lead");
    Some((Coeff::one(), root))
}

fn cusp_is_hyperbolic(q: u32, r: u32) -> bool {
    // (q, r) with q <= r; excludes the parabolic boundary cases.
    (q == 3 && r >= 7) || (q >= 4 && r >= 5)
}

/// Everything the decision tree saw: the class together with the
/// discriminating invariants, for reports and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GermReport {
    pub class: SingularityClass,
    pub multiplicity: u32,
    /// None when the Milnor number is infinite, or when it could not be
    /// certified (the class reason says which).
    pub milnor: Option<u32>,
    /// Multiset of tangent-line multiplicities over the closure, sorted
    /// descending; empty below multiplicity 2.
    pub tangent_cone_pattern: Vec<u32>,
}

/// Classify the germ at the origin of a reduced plane curve f = 0 in two
/// variables. The function is total: inputs outside the recognized classes
/// come back as Unclassified, never as a panic.
pub fn classify_germ(f: &MultiPoly) -> SingularityClass {
    germ_report(f).class
}

/// Full report for the germ of f at the origin.
pub fn germ_report(f: &MultiPoly) -> GermReport {
    assert_eq!(f.vars().len(), 2, "germ classification works in two variables");
    let m = match order_at_origin(f) {
        None => {
            return GermReport {
                class: unclassified("zero polynomial"),
                multiplicity: 0,
                milnor: None,
                tangent_cone_pattern: Vec::new(),
            }
        }
        Some(m) => m,
    };
    if m <= 1 {
        return GermReport {
            class: SingularityClass::Smooth,
            multiplicity: m,
            milnor: Some(0),
            tangent_cone_pattern: Vec::new(),
        };
    }
    let (factors, pattern) = tangent_cone_lines(f);
    let mu = match milnor(f) {
        Ok(mu) => mu,
        Err(err) => {
            let class = match &err {
                LocalAlgError::NonIsolated => unclassified("non-isolated singularity"),
                e @ LocalAlgError::TruncationCap { .. } => unclassified(e.to_string()),
            };
            return GermReport {
                class,
                multiplicity: m,
                milnor: None,
                tangent_cone_pattern: pattern,
            };
        }
    };
    GermReport {
        class: decide(f, m, mu, &factors, &pattern),
        multiplicity: m,
        milnor: Some(mu),
        tangent_cone_pattern: pattern,
    }
}

fn decide(
    f: &MultiPoly,
    m: u32,
    mu: u32,
    factors: &[TangentFactor],
    pattern: &[u32],
) -> SingularityClass {
    if m == 2 {
        return SingularityClass::A(mu);
    }
    if m == 3 {
        return match pattern {
            [1, 1, 1] => {
                debug_assert_eq!(mu, 4);
                SingularityClass::D(4)
            }
            [2, 1] => {
                debug_assert!(mu >= 5);
                SingularityClass::D(mu)
            }
            [3] => match mu {
                6 => SingularityClass::E(6),
                7 => SingularityClass::E(7),
                8 => SingularityClass::E(8),
                9 => unclassified("triple point with a single tangent and milnor number 9"),
                10 => SingularityClass::TildeE8,
                mu if mu >= 11 => SingularityClass::Cusp(3, mu - 4),
                _ => unclassified("triple point with a single tangent and milnor number below 6"),
            },
            _ => unreachable!("patterns of a cubic form"),
        };
    }
    if m == 4 {
        return match pattern {
            [1, 1, 1, 1] => {
                if mu == 9 {
                    SingularityClass::TildeE7
                } else {
                    unclassified("quadruple point with four distinct tangents but unexpected milnor number")
                }
            }
            [2, 1, 1] => {
                let double = factors
                    .iter()
                    .find(|t| t.multiplicity == 2)
                    .expect("pattern has a double line");
                let (d1, d2) = line_direction(double).expect("double line in [2,1,1] is linear");
                match order_along_line(f, &d1, &d2) {
                    Some(r) if r >= 5 && mu == r + 5 => SingularityClass::Cusp(4, r),
                    Some(_) => unclassified(
                        "double tangent line with contact order inconsistent with a degenerate cusp",
                    ),
                    None => unclassified("double tangent line is a component of the curve"),
                }
            }
            [2, 2] => classify_two_double_lines(f, factors, mu),
            _ => unclassified("quadruple point with tangent cone outside the classification"),
        };
    }
    unclassified(format!("multiplicity {m} exceeds the classification"))
}

/// Quadruple point whose cone is a product of two double lines: a
/// degenerate cusp candidate with both indices read off as contact orders.
fn classify_two_double_lines(
    f: &MultiPoly,
    factors: &[TangentFactor],
    mu: u32,
) -> SingularityClass {
    let doubles: Vec<&TangentFactor> = factors.iter().filter(|t| t.multiplicity == 2).collect();
    let mut orders: Vec<u32> = Vec::new();
    if doubles.len() == 1 && doubles[0].degree == 2 {
        // Conjugate pair of double lines. The two contact orders agree by
        // conjugation, so one line over the quadratic extension suffices.
        if f.ext_field().is_some() {
            return unclassified(
                "conjugate double tangents over an extension field would need a second extension",
            );
        }
        let monic = doubles[0].poly.monic();
        let min_poly: Vec<crate::coeff::Rational> = monic
            .coeffs()
            .iter()
            .map(|c| c.as_rational().expect("base field factor").clone())
            .collect();
        let field = match crate::coeff::ExtField::new("t", min_poly) {
            Ok(k) => k,
            Err(_) => return unclassified("tangent quadratic does not define an extension"),
        };
        let root = field.generator();
        match order_along_line(f, &Coeff::one(), &root) {
            Some(q) => {
                orders.push(q);
                orders.push(q);
            }
            None => return unclassified("double tangent line is a component of the curve"),
        }
    } else {
        for t in doubles {
            let (d1, d2) = match line_direction(t) {
                Some(d) => d,
                None => return unclassified("unexpected tangent factor shape"),
            };
            match order_along_line(f, &d1, &d2) {
                Some(q) => orders.push(q),
                None => return unclassified("double tangent line is a component of the curve"),
            }
        }
    }
    orders.sort_unstable();
    let (q, r) = (orders[0], orders[1]);
    if cusp_is_hyperbolic(q, r) && mu == q + r + 1 {
        SingularityClass::Cusp(q, r)
    } else {
        unclassified("pair of double tangents inconsistent with a degenerate cusp")
    }
}

/// Classify a point of the double locus of a non-normal double cover whose
/// branch data splits as g^2 h with g the double locus and h the residual
/// branch curve, both passed as germs at the origin. The origin must lie
/// on g.
pub fn classify_nonnormal_germ(
    g: &MultiPoly,
    h: &MultiPoly,
) -> Result<SingularityClass, GermError> {
    assert_eq!(g.vars().len(), 2);
    let zero2 = [Coeff::zero(), Coeff::zero()];
    if !g.eval(&zero2).is_zero() {
        return Err(GermError::PointNotOnCurve);
    }
    let mg = order_at_origin(g).unwrap_or(0);
    if mg == 1 {
        if !h.eval(&zero2).is_zero() {
            return Ok(SingularityClass::NormalCrossing);
        }
        let i = match intersection_multiplicity(g, h) {
            Ok(i) => i,
            Err(e) => return Ok(unclassified(format!("double locus meets residual curve badly: {e}"))),
        };
        return Ok(match i {
            1 => SingularityClass::Pinch,
            2 => {
                let mh = order_at_origin(h).unwrap_or(0);
                match mh {
                    1 => SingularityClass::DegCuspB(1),
                    2 => match milnor_or_unclassified(h) {
                        Ok(mu) => SingularityClass::DegCuspB(mu + 1),
                        Err(u) => u,
                    },
                    _ => unclassified("residual curve too singular where it meets the double locus"),
                }
            }
            _ => unclassified("contact of residual curve with double locus exceeds 2"),
        });
    }
    if mg == 2 {
        let node = matches!(milnor(g), Ok(1));
        if node && !h.eval(&zero2).is_zero() {
            return Ok(SingularityClass::DegCuspA);
        }
        return Ok(unclassified(if node {
            "residual curve passes through a node of the double locus"
        } else {
            "double locus singularity is not a node"
        }
        .to_string()));
    }
    Ok(unclassified(format!(
        "double locus has multiplicity {mg} at the point"
    )))
}

/// Translate f so that the given point becomes the origin.
pub fn shift_to_origin(f: &MultiPoly, point: &[Coeff]) -> MultiPoly {
    let vars = f.vars().clone();
    assert_eq!(point.len(), vars.len());
    let images: Vec<MultiPoly> = (0..vars.len())
        .map(|i| {
            MultiPoly::var(&vars, i).add(&MultiPoly::constant(&vars, point[i].clone()))
        })
        .collect();
    f.map_vars(&vars, &images)
}

/// Classify the germ of f at an arbitrary point.
pub fn classify_germ_at(f: &MultiPoly, point: &[Coeff]) -> SingularityClass {
    classify_germ(&shift_to_origin(f, point))
}

/// Full report for the germ of f at an arbitrary point.
pub fn germ_report_at(f: &MultiPoly, point: &[Coeff]) -> GermReport {
    germ_report(&shift_to_origin(f, point))
}

/// Sum of Milnor numbers such a class contributes, used by consistency
/// checks on total invariants; None when the class has no finite Milnor
/// number attached.
pub fn milnor_of_class(c: &SingularityClass) -> Option<u32> {
    match c {
        SingularityClass::Smooth => Some(0),
        SingularityClass::A(m) | SingularityClass::D(m) | SingularityClass::E(m) => Some(*m),
        SingularityClass::TildeE7 => Some(9),
        SingularityClass::TildeE8 => Some(10),
        SingularityClass::Cusp(q, r) => Some(q + r + 1),
        _ => None,
    }
}
