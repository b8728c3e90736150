//! The two weighted models of candidate degenerate fibres and their
//! geometry-changing reductions.
//!
//! A hyperelliptic model is a double cover of the plane branched in a sextic
//! (a sextic hypersurface in P(1,1,1,3)); the data is the branch sextic. A
//! unigonal model is a (2,6) complete intersection in P(1,1,1,2,3); the data
//! is the quadric f2 in x1, x2, x3 and the degree-six form f6 in x1, x2, x3
//! and the weight-two coordinate y. The unigonal intersection must avoid
//! the ambient's singular point at (0:0:0:0:1), which is exactly the
//! condition f6(0,0,0,1) != 0.
//!
//! Depending on the rank of f2, a unigonal model reduces to branch data on
//! a simpler surface: a smooth conic turns the model into a curve of
//! weighted degree 12 in P(1,1,4) by pulling f6 back along a parametrization,
//! and a rank-two conic (two distinct lines through a vertex) restricts f6
//! to the vertex fibre and to each line separately. Rank one is rejected at
//! validation.

use crate::coeff::Coeff;
use crate::conic::{analyze_conic, line_span, ConicError};
use crate::factor::factor;
use crate::gcd::is_squarefree;
use crate::poly::{MultiPoly, VarSet};
use crate::unipoly::UPoly;
use std::fmt;

#[derive(Debug, Clone)]
pub enum FiberModel {
    /// Branch sextic in the plane.
    Hyperelliptic { f6: MultiPoly },
    /// Quadric in x1, x2, x3 and degree-six form in x1, x2, x3, y.
    Unigonal { f2: MultiPoly, f6: MultiPoly },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    WrongVariables { form: &'static str },
    ZeroForm { form: &'static str },
    WrongDegree { form: &'static str, expected: u64 },
    /// The complete intersection passes through the singular point of the
    /// ambient: f6 has no y^3 term.
    VertexInIntersection,
    /// The quadric is a double line (rank one).
    DoubleLineQuadric,
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::WrongVariables { form } => {
                write!(f, "{} is over the wrong variable set", form)
            }
            ModelViolation::ZeroForm { form } => write!(f, "{} is zero", form),
            ModelViolation::WrongDegree { form, expected } => {
                write!(f, "{} is not homogeneous of degree {}", form, expected)
            }
            ModelViolation::VertexInIntersection => write!(
                f,
                "f6 has no y^3 term, so the intersection meets the ambient vertex"
            ),
            ModelViolation::DoubleLineQuadric => write!(f, "f2 is a double line"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    Invalid(Vec<ModelViolation>),
    /// The quadric has the wrong rank for the requested reduction.
    WrongRank { expected: u32, found: u32 },
    /// The conic is smooth but carries no rational point within the search
    /// budget; pass a parametrization explicitly (build one through a known
    /// point with `conic::parametrization_from_point`, then call
    /// `reduce_with_parametrization`).
    NoRationalPoint,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Invalid(vs) => {
                write!(f, "invalid model:")?;
                for v in vs {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
            ModelError::WrongRank { expected, found } => {
                write!(f, "quadric has rank {}, expected {}", found, expected)
            }
            ModelError::NoRationalPoint => write!(
                f,
                "no rational point found on the conic; supply a parametrization \
                 through a known point"
            ),
        }
    }
}

impl std::error::Error for ModelError {}

impl FiberModel {
    /// All the ways the data fails to be a model. Empty means valid.
    pub fn validate(&self) -> Vec<ModelViolation> {
        match self {
            FiberModel::Hyperelliptic { f6 } => {
                let mut out = Vec::new();
                check_form(f6, &VarSet::p2(), "f6", 6, &mut out);
                out
            }
            FiberModel::Unigonal { f2, f6 } => unigonal_violations(f2, f6),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

fn check_form(
    f: &MultiPoly,
    vars: &VarSet,
    name: &'static str,
    degree: u64,
    out: &mut Vec<ModelViolation>,
) -> bool {
    if f.vars().as_ref() != vars {
        out.push(ModelViolation::WrongVariables { form: name });
        return false;
    }
    if f.is_zero() {
        out.push(ModelViolation::ZeroForm { form: name });
        return false;
    }
    if !f.is_weighted_homogeneous() || f.weighted_degree() != Some(degree) {
        out.push(ModelViolation::WrongDegree {
            form: name,
            expected: degree,
        });
        return false;
    }
    true
}

fn unigonal_violations(f2: &MultiPoly, f6: &MultiPoly) -> Vec<ModelViolation> {
    let mut out = Vec::new();
    let f2_ok = check_form(f2, &VarSet::p2(), "f2", 2, &mut out);
    if check_form(f6, &VarSet::p1112(), "f6", 6, &mut out) {
        let vertex = [Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::one()];
        if f6.eval(&vertex).is_zero() {
            out.push(ModelViolation::VertexInIntersection);
        }
    }
    if f2_ok {
        if let Err(ConicError::DoubleLine { .. }) = analyze_conic(f2) {
            out.push(ModelViolation::DoubleLineQuadric);
        }
    }
    out
}

/// Pull f6 back along a degree-two parametrization of the quadric, giving
/// the branch curve of the reduced model: a curve of weighted degree 12 in
/// P(1,1,4). The parametrization components live in the (u, v) parameter
/// ring; y keeps its role and doubles its weight.
pub fn reduce_with_parametrization(f6: &MultiPoly, q: &[MultiPoly; 3]) -> MultiPoly {
    assert_eq!(f6.vars().as_ref(), VarSet::p1112().as_ref());
    let target = VarSet::p114();
    let uv = VarSet::uv();
    let embed = |p: &MultiPoly| {
        assert_eq!(p.vars().as_ref(), uv.as_ref());
        assert!(p.is_zero() || p.weighted_degree() == Some(2));
        p.map_vars(
            &target,
            &[MultiPoly::var(&target, 0), MultiPoly::var(&target, 1)],
        )
    };
    let images = [
        embed(&q[0]),
        embed(&q[1]),
        embed(&q[2]),
        MultiPoly::var(&target, 2),
    ];
    let f12 = f6.map_vars(&target, &images);
    assert!(f12.is_weighted_homogeneous() && f12.weighted_degree() == Some(12));
    f12
}

/// Reduce a smooth-conic unigonal model to its weighted branch curve. The
/// conic is analyzed and parametrized from a rational point found by search.
pub fn unigonal_reduce(f2: &MultiPoly, f6: &MultiPoly) -> Result<MultiPoly, ModelError> {
    let violations = unigonal_violations(f2, f6);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }
    let analysis = analyze_conic(f2).expect("validated quadric");
    if analysis.rank != 3 {
        return Err(ModelError::WrongRank {
            expected: 3,
            found: analysis.rank,
        });
    }
    match analysis.parametrization {
        Some(q) => Ok(reduce_with_parametrization(f6, &q)),
        None => Err(ModelError::NoRationalPoint),
    }
}

/// Restriction of f6 to one line of a rank-two quadric, as a curve of
/// weighted degree 6 in P(1,1,2). For a conjugate line pair the coefficients
/// live in the pair's quadratic field.
#[derive(Debug, Clone)]
pub struct HalfRestriction {
    /// The line, as a linear form in the plane.
    pub line: MultiPoly,
    /// f6 pulled back to the line: u, v span the line, y keeps weight 2.
    pub curve: MultiPoly,
    pub squarefree: bool,
}

/// Restriction data of a rank-two unigonal model: the cubic over the
/// intersection point of the two lines, and the two halves of f6.
#[derive(Debug, Clone)]
pub struct LineRestriction {
    /// f6 evaluated on the fibre over the lines' intersection point, a
    /// monic-normalizable cubic in y with nonzero leading coefficient.
    pub vertex_cubic: UPoly,
    /// Root multiplicities of the vertex cubic over the closure, descending;
    /// always sums to 3.
    pub root_pattern: Vec<u32>,
    pub halves: [HalfRestriction; 2],
    /// True when the two lines are conjugate over a quadratic extension.
    pub conjugate: bool,
}

/// Restrict a rank-two unigonal model to its vertex fibre and line halves.
pub fn line_restriction(f2: &MultiPoly, f6: &MultiPoly) -> Result<LineRestriction, ModelError> {
    let violations = unigonal_violations(f2, f6);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }
    let analysis = analyze_conic(f2).expect("validated quadric");
    if analysis.rank != 2 {
        return Err(ModelError::WrongRank {
            expected: 2,
            found: analysis.rank,
        });
    }
    let lines = analysis.lines.expect("rank two always yields lines");

    // The fibre over the intersection point: a cubic in y whose leading
    // coefficient is the (constant, nonzero) y^3 coefficient of f6.
    let meet = &lines.meet;
    let by_y = f6.coeffs_in(3);
    let mut cubic = vec![Coeff::zero(); 4];
    for (b, c) in by_y.iter().enumerate() {
        cubic[b] = c.eval(&[meet[0].clone(), meet[1].clone(), meet[2].clone(), Coeff::zero()]);
    }
    let vertex_cubic = UPoly::from_coeffs(cubic);
    assert_eq!(vertex_cubic.degree(), Some(3));
    let (_, factors) = factor(&vertex_cubic);
    let mut root_pattern = Vec::new();
    for (p, e) in &factors {
        for _ in 0..p.degree().unwrap() {
            root_pattern.push(*e);
        }
    }
    root_pattern.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(root_pattern.iter().sum::<u32>(), 3);

    let halves = [restrict_half(f6, &lines.l1), restrict_half(f6, &lines.l2)];
    Ok(LineRestriction {
        vertex_cubic,
        root_pattern,
        halves,
        conjugate: lines.extension.is_some(),
    })
}

fn restrict_half(f6: &MultiPoly, line: &MultiPoly) -> HalfRestriction {
    let target = VarSet::p112();
    let span = line_span(line);
    let u = MultiPoly::var(&target, 0);
    let v = MultiPoly::var(&target, 1);
    let mut images = Vec::with_capacity(4);
    for j in 0..3 {
        images.push(
            u.scale(&span[0][j])
                .add(&v.scale(&span[1][j])),
        );
    }
    images.push(MultiPoly::var(&target, 2));
    let curve = f6.map_vars(&target, &images);
    assert!(curve.is_zero() || curve.weighted_degree() == Some(6));
    let squarefree = !curve.is_zero() && is_squarefree(&curve);
    HalfRestriction {
        line: line.clone(),
        curve,
        squarefree,
    }
}
