//! The fibre classifier.
//!
//! A candidate degenerate fibre of a degree-two K3 surface is presented
//! either as a double plane w^2 = f6(x1,x2,x3) branched over a sextic, or
//! as a unigonal model f2 = f6 = 0 in P(1,1,1,2,3). Writing the sextic as
//! f6 = g^2 h with h squarefree, the classifier computes an exact
//! singularity inventory of the branch data and matches it against the
//! fourteen rows of the degeneration table:
//!
//! * g constant: the rows I.h, II.0h, III.0h are told apart by the germs
//!   of the reduced sextic (at worst ADE; ADE plus a simple-elliptic set;
//!   ADE plus exactly one degenerate cusp).
//! * g a line, conic or cubic: the rows II.1 through III.3 are told apart
//!   by the degree of g, the singularities of g itself, the contact of g
//!   with the residual curve h, and the germs of h away from g.
//! * unigonal models reduce, through a parametrization of the quadric, to
//!   a weighted branch curve of degree 12 in P(1,1,4) (rows I.u, II.0u,
//!   III.0u mirror the reduced trichotomy) or, for a rank-two quadric,
//!   restrict to the two lines (rows II.4 and III.4, told apart by the
//!   root pattern of the cubic over the vertex).
//!
//! Everything else is reported as [`Row::Unclassified`] with a diagnostic,
//! except for inputs the table excludes outright (a quadruple factor, a
//! double-line quadric), which fail with
//! [`ClassifyError::NotInClassification`]. The row predicates are mutually
//! exclusive by construction and [`decide`] asserts this on every run.

use std::fmt;

use serde::Serialize;

use crate::gcd::square_part_decompose;
use crate::germ::{classify_nonnormal_germ, SingularityClass};
use crate::germ::shift_to_origin;
use crate::locus::{singular_locus, Ambient, SingularOrbit};
use crate::models::{line_restriction, unigonal_reduce, FiberModel, ModelError, ModelViolation};
use crate::poly::{MultiPoly, VarSet};
use crate::profile::{intersection_profile, ProfileError, ProfilePoint};
use crate::tables::{annotate, Annotation};
use crate::unipoly::UPoly;

/// Kulikov type of a classified fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberType {
    I,
    II,
    III,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberType::I => "I",
            FiberType::II => "II",
            FiberType::III => "III",
        })
    }
}

/// A row of the degeneration table, or `Unclassified` when the evidence
/// matches none of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Row {
    IH,
    II0H,
    II1,
    II2,
    II3,
    III0H,
    III1,
    III2,
    III3,
    IU,
    II0U,
    II4,
    III0U,
    III4,
    Unclassified,
}

impl Row {
    /// The fourteen named rows, hyperelliptic first.
    pub const NAMED: [Row; 14] = [
        Row::IH,
        Row::II0H,
        Row::II1,
        Row::II2,
        Row::II3,
        Row::III0H,
        Row::III1,
        Row::III2,
        Row::III3,
        Row::IU,
        Row::II0U,
        Row::II4,
        Row::III0U,
        Row::III4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Row::IH => "I.h",
            Row::II0H => "II.0h",
            Row::II1 => "II.1",
            Row::II2 => "II.2",
            Row::II3 => "II.3",
            Row::III0H => "III.0h",
            Row::III1 => "III.1",
            Row::III2 => "III.2",
            Row::III3 => "III.3",
            Row::IU => "I.u",
            Row::II0U => "II.0u",
            Row::II4 => "II.4",
            Row::III0U => "III.0u",
            Row::III4 => "III.4",
            Row::Unclassified => "Unclassified",
        }
    }

    pub fn fiber_type(self) -> Option<FiberType> {
        match self {
            Row::IH | Row::IU => Some(FiberType::I),
            Row::II0H | Row::II1 | Row::II2 | Row::II3 | Row::II0U | Row::II4 => {
                Some(FiberType::II)
            }
            Row::III0H | Row::III1 | Row::III2 | Row::III3 | Row::III0U | Row::III4 => {
                Some(FiberType::III)
            }
            Row::Unclassified => None,
        }
    }

    pub fn from_name(name: &str) -> Option<Row> {
        if name == "Unclassified" {
            return Some(Row::Unclassified);
        }
        Row::NAMED.iter().copied().find(|r| r.name() == name)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Row {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// The singularity evidence a classification was decided on. Orbit sizes
/// accompany every class so that conjugate points count with the right
/// weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// A reduced branch curve: the sextic itself (g constant) or the
    /// weighted degree-12 curve of a reduced unigonal model.
    Reduced {
        unigonal: bool,
        classes: Vec<(SingularityClass, u32)>,
    },
    /// A sextic with a double curve g of degree 1, 2 or 3.
    Split {
        deg_g: u32,
        /// Curve germs of g at its own singular points.
        double_locus: Vec<(SingularityClass, u32)>,
        /// Surface germs over those points, where the residual curve
        /// stays away; one entry per double_locus entry when complete.
        double_locus_surface: Vec<(SingularityClass, u32)>,
        /// Surface germs where g meets h: (class, orbit size, local
        /// intersection multiplicity).
        contact: Vec<(SingularityClass, u32, u32)>,
        /// Curve germs of h at singular points off g.
        residual_away: Vec<(SingularityClass, u32)>,
        common_component: bool,
    },
    /// A rank-two unigonal model, restricted to the two lines of the
    /// quadric and to the fibre over their intersection point.
    VertexSplit {
        pattern: Vec<u32>,
        halves_squarefree: [bool; 2],
        /// Germs of the two line restrictions, pooled; None when a half
        /// is non-reduced or its analysis did not complete.
        half_classes: Option<Vec<(SingularityClass, u32)>>,
        conjugate: bool,
    },
    /// The exact analysis did not run to completion (see diagnostics).
    Incomplete,
}

/// One Galois orbit in the printed inventory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InventoryItem {
    /// Where the orbit lives, e.g. "branch curve (x3=1)".
    pub site: String,
    pub class: SingularityClass,
    pub orbit_size: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor: Option<u32>,
    /// Local intersection multiplicity, for contact orbits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<u32>,
    /// Minimal polynomial of the orbit's residue field, in t.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

/// Result of a classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub row: Row,
    pub inventory: Vec<InventoryItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<Annotation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyError {
    /// The input is not a fibre model at all.
    Invalid(Vec<ModelViolation>),
    /// A well-formed model the table excludes from the start.
    NotInClassification(String),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::Invalid(violations) => {
                write!(f, "invalid model:")?;
                for v in violations {
                    write!(f, " {};", v)?;
                }
                Ok(())
            }
            ClassifyError::NotInClassification(why) => {
                write!(f, "not a candidate fibre: {}", why)
            }
        }
    }
}

impl std::error::Error for ClassifyError {}

#[derive(Default)]
struct ClassCounts {
    e7: u32,
    e8: u32,
    cusps: u32,
    other: u32,
}

/// Pool a class list by kind, weighting every entry with its orbit size.
/// ADE germs are the background and are not counted.
fn class_counts(classes: &[(SingularityClass, u32)]) -> ClassCounts {
    let mut counts = ClassCounts::default();
    for (class, size) in classes {
        match class {
            SingularityClass::A(_) | SingularityClass::D(_) | SingularityClass::E(_) => {}
            SingularityClass::TildeE7 => counts.e7 += size,
            SingularityClass::TildeE8 => counts.e8 += size,
            SingularityClass::Cusp(_, _) => counts.cusps += size,
            _ => counts.other += size,
        }
    }
    counts
}

/// At worst ADE.
fn mild(classes: &[(SingularityClass, u32)]) -> bool {
    let c = class_counts(classes);
    c.e7 == 0 && c.e8 == 0 && c.cusps == 0 && c.other == 0
}

/// ADE plus one E7-tilde, one E8-tilde or two E8-tilde points.
fn elliptic_set(classes: &[(SingularityClass, u32)]) -> bool {
    let c = class_counts(classes);
    c.other == 0 && c.cusps == 0 && matches!((c.e7, c.e8), (1, 0) | (0, 1) | (0, 2))
}

/// ADE plus exactly one degenerate cusp.
fn one_cusp(classes: &[(SingularityClass, u32)]) -> bool {
    let c = class_counts(classes);
    c.other == 0 && c.e7 == 0 && c.e8 == 0 && c.cusps == 1
}

fn all_pinch(contact: &[(SingularityClass, u32, u32)]) -> bool {
    contact
        .iter()
        .all(|(class, _, _)| *class == SingularityClass::Pinch)
}

fn pinch_or_deg_cusp(contact: &[(SingularityClass, u32, u32)]) -> bool {
    contact.iter().all(|(class, _, _)| {
        matches!(class, SingularityClass::Pinch | SingularityClass::DegCuspB(_))
    })
}

fn has_deg_cusp(contact: &[(SingularityClass, u32, u32)]) -> bool {
    contact
        .iter()
        .any(|(class, _, _)| matches!(class, SingularityClass::DegCuspB(_)))
}

fn contact_points(contact: &[(SingularityClass, u32, u32)]) -> u32 {
    contact.iter().map(|(_, size, _)| size).sum()
}

/// Whether one row's predicate accepts the evidence. The predicates are
/// pairwise disjoint; [`matching_rows`] relies on that.
pub fn row_matches(row: Row, evidence: &Evidence) -> bool {
    match (row, evidence) {
        (
            Row::IH,
            Evidence::Reduced {
                unigonal: false,
                classes,
            },
        ) => mild(classes),
        (
            Row::II0H,
            Evidence::Reduced {
                unigonal: false,
                classes,
            },
        ) => elliptic_set(classes),
        (
            Row::III0H,
            Evidence::Reduced {
                unigonal: false,
                classes,
            },
        ) => one_cusp(classes),
        (
            Row::IU,
            Evidence::Reduced {
                unigonal: true,
                classes,
            },
        ) => mild(classes),
        (
            Row::II0U,
            Evidence::Reduced {
                unigonal: true,
                classes,
            },
        ) => elliptic_set(classes),
        (
            Row::III0U,
            Evidence::Reduced {
                unigonal: true,
                classes,
            },
        ) => one_cusp(classes),
        (
            Row::II1,
            Evidence::Split {
                deg_g: 1,
                double_locus,
                contact,
                residual_away,
                common_component: false,
                ..
            },
        ) => {
            // A line meeting the residual quartic in four transverse
            // points; the quartic itself at worst ADE plus at most one
            // E7-tilde point.
            let away = class_counts(residual_away);
            double_locus.is_empty()
                && all_pinch(contact)
                && contact_points(contact) == 4
                && away.e7 <= 1
                && away.e8 == 0
                && away.cusps == 0
                && away.other == 0
        }
        (
            Row::III1,
            Evidence::Split {
                deg_g: 1,
                double_locus,
                contact,
                residual_away,
                common_component: false,
                ..
            },
        ) => {
            // The line is tangent to the quartic or passes through one of
            // its double points somewhere; the quartic stays ADE.
            double_locus.is_empty()
                && pinch_or_deg_cusp(contact)
                && has_deg_cusp(contact)
                && mild(residual_away)
        }
        (
            Row::II2,
            Evidence::Split {
                deg_g: 2,
                double_locus,
                contact,
                residual_away,
                common_component: false,
                ..
            },
        ) => {
            // A smooth conic meeting the residual conic transversally.
            double_locus.is_empty() && all_pinch(contact) && mild(residual_away)
        }
        (
            Row::III2,
            Evidence::Split {
                deg_g: 2,
                double_locus,
                double_locus_surface,
                contact,
                residual_away,
                common_component: false,
            },
        ) => {
            // Either a smooth conic with a tangency, or a nodal conic
            // whose node stays off the residual curve.
            let smooth_tangent = double_locus.is_empty() && has_deg_cusp(contact);
            let nodal = double_locus == &[(SingularityClass::A(1), 1)]
                && double_locus_surface == &[(SingularityClass::DegCuspA, 1)];
            pinch_or_deg_cusp(contact) && mild(residual_away) && (smooth_tangent || nodal)
        }
        (
            Row::II3,
            Evidence::Split {
                deg_g: 3,
                double_locus,
                common_component: false,
                ..
            },
        ) => double_locus.is_empty(),
        (
            Row::III3,
            Evidence::Split {
                deg_g: 3,
                double_locus,
                double_locus_surface,
                common_component: false,
                ..
            },
        ) => {
            // A cubic with nodes only, every node giving a degenerate
            // cusp of type A on the surface.
            !double_locus.is_empty()
                && double_locus
                    .iter()
                    .all(|(class, _)| *class == SingularityClass::A(1))
                && double_locus_surface.len() == double_locus.len()
                && double_locus_surface
                    .iter()
                    .all(|(class, _)| *class == SingularityClass::DegCuspA)
        }
        (
            Row::II4,
            Evidence::VertexSplit {
                pattern,
                halves_squarefree: [true, true],
                half_classes: Some(classes),
                ..
            },
        ) => {
            // Three distinct points over the vertex and two reduced line
            // restrictions, each at worst ADE with together at most two
            // E8-tilde points.
            let c = class_counts(classes);
            pattern == &[1, 1, 1] && c.e7 == 0 && c.cusps == 0 && c.other == 0 && c.e8 <= 2
        }
        (Row::III4, Evidence::VertexSplit { pattern, .. }) => pattern == &[2, 1],
        _ => false,
    }
}

/// All rows accepting the evidence; at most one by design.
pub fn matching_rows(evidence: &Evidence) -> Vec<Row> {
    Row::NAMED
        .iter()
        .copied()
        .filter(|row| row_matches(*row, evidence))
        .collect()
}

fn unclassified_reason(evidence: &Evidence) -> String {
    match evidence {
        Evidence::Incomplete => "the exact analysis could not be completed".to_string(),
        Evidence::Split {
            common_component: true,
            ..
        } => "the double curve shares a component with the residual curve".to_string(),
        Evidence::VertexSplit { pattern, .. } if pattern.as_slice() == [3] => {
            "the vertex cubic has a triple root, which no row covers".to_string()
        }
        _ => "the singularity inventory matches no row of the table".to_string(),
    }
}

fn decide(
    evidence: Evidence,
    inventory: Vec<InventoryItem>,
    mut diagnostics: Vec<String>,
) -> Classification {
    let rows = matching_rows(&evidence);
    assert!(
        rows.len() <= 1,
        "row predicates must be mutually exclusive, got {:?}",
        rows
    );
    let row = rows.into_iter().next().unwrap_or(Row::Unclassified);
    if row == Row::Unclassified && diagnostics.is_empty() {
        diagnostics.push(unclassified_reason(&evidence));
    }
    let annotation = match annotate(row, &evidence) {
        Annotation {
            friedman: None,
            shah: None,
        } => None,
        found => Some(found),
    };
    Classification {
        row,
        inventory,
        annotation,
        diagnostics,
        evidence,
    }
}

fn upoly_string(p: &UPoly) -> String {
    let t = VarSet::new(&["t"], &[1]);
    p.to_multipoly(&t, 0).to_string()
}

fn point_string(point: &[crate::coeff::Coeff; 2]) -> String {
    format!("({}, {})", point[0], point[1])
}

fn orbit_item(orbit: &SingularOrbit, site: String) -> InventoryItem {
    InventoryItem {
        site,
        class: orbit.report.class.clone(),
        orbit_size: orbit.orbit_size,
        milnor: orbit.report.milnor,
        intersection: None,
        min_poly: orbit.min_poly.as_ref().map(upoly_string),
        point: Some(point_string(&orbit.point)),
    }
}

fn contact_item(point: &ProfilePoint, label: &str) -> InventoryItem {
    InventoryItem {
        site: format!("contact of the double curve with the residual curve ({})", label),
        class: point.class.clone(),
        orbit_size: point.orbit_size,
        milnor: None,
        intersection: Some(point.intersection),
        min_poly: point.min_poly.as_ref().map(upoly_string),
        point: Some(point_string(&point.point)),
    }
}

/// Classify a reduced branch curve: the sextic itself, or the reduced
/// unigonal branch curve in P(1,1,4).
fn classify_reduced(curve: &MultiPoly, ambient: Ambient, unigonal: bool) -> Classification {
    let charts = ambient.charts();
    match singular_locus(curve, ambient) {
        Ok(orbits) => {
            let classes = orbits
                .iter()
                .map(|o| (o.report.class.clone(), o.orbit_size))
                .collect();
            let inventory = orbits
                .iter()
                .map(|o| {
                    orbit_item(o, format!("branch curve ({})", charts[o.chart].label))
                })
                .collect();
            decide(Evidence::Reduced { unigonal, classes }, inventory, Vec::new())
        }
        Err(err) => decide(
            Evidence::Incomplete,
            Vec::new(),
            vec![format!("singular locus of the branch curve: {}", err)],
        ),
    }
}

/// Classify a sextic g^2 h with nonconstant double curve g.
fn classify_split(g: &MultiPoly, h: &MultiPoly, deg_g: u32) -> Classification {
    let charts = Ambient::P2.charts();
    let deg_h = h.weighted_degree().expect("residual curve is nonzero") as u32;
    let mut inventory = Vec::new();
    let mut diagnostics = Vec::new();

    // Singular points of the double curve, with the surface germ over
    // each one that the residual curve stays away from.
    let g_orbits = match singular_locus(g, Ambient::P2) {
        Ok(orbits) => orbits,
        Err(err) => {
            diagnostics.push(format!("singular locus of the double curve: {}", err));
            return decide(Evidence::Incomplete, inventory, diagnostics);
        }
    };
    let mut double_locus = Vec::new();
    let mut double_locus_surface = Vec::new();
    for orbit in &g_orbits {
        let chart = &charts[orbit.chart];
        double_locus.push((orbit.report.class.clone(), orbit.orbit_size));
        inventory.push(orbit_item(
            orbit,
            format!("double curve ({})", chart.label),
        ));
        let h_chart = chart.restrict(h);
        if h_chart.eval(&orbit.point).is_zero() {
            // The point reappears in the contact profile and is graded
            // there; without a residual-free neighbourhood there is no
            // separate surface germ to record.
            continue;
        }
        let g_germ = shift_to_origin(&chart.restrict(g), &orbit.point);
        let h_germ = shift_to_origin(&h_chart, &orbit.point);
        let class = classify_nonnormal_germ(&g_germ, &h_germ)
            .expect("representative verified on the double curve");
        double_locus_surface.push((class.clone(), orbit.orbit_size));
        inventory.push(InventoryItem {
            site: format!("surface germ over the double curve ({})", chart.label),
            class,
            orbit_size: orbit.orbit_size,
            milnor: None,
            intersection: None,
            min_poly: orbit.min_poly.as_ref().map(upoly_string),
            point: Some(point_string(&orbit.point)),
        });
    }

    // Contact of the double curve with the residual curve.
    let mut contact = Vec::new();
    let mut common_component = false;
    if deg_h > 0 {
        match intersection_profile(g, h) {
            Ok(profile) => {
                for point in &profile.points {
                    contact.push((point.class.clone(), point.orbit_size, point.intersection));
                    inventory.push(contact_item(point, charts[point.chart].label));
                }
            }
            Err(ProfileError::CommonComponent) => common_component = true,
            Err(err) => {
                diagnostics.push(format!(
                    "contact of the double curve with the residual curve: {}",
                    err
                ));
                return decide(Evidence::Incomplete, inventory, diagnostics);
            }
        }
    }

    // Singular points of the residual curve away from the double curve.
    let mut residual_away = Vec::new();
    if deg_h > 0 {
        match singular_locus(h, Ambient::P2) {
            Ok(orbits) => {
                for orbit in &orbits {
                    let chart = &charts[orbit.chart];
                    if chart.restrict(g).eval(&orbit.point).is_zero() {
                        continue;
                    }
                    residual_away.push((orbit.report.class.clone(), orbit.orbit_size));
                    inventory.push(orbit_item(
                        orbit,
                        format!("residual curve away from the double curve ({})", chart.label),
                    ));
                }
            }
            Err(err) => {
                diagnostics.push(format!("singular locus of the residual curve: {}", err));
                return decide(Evidence::Incomplete, inventory, diagnostics);
            }
        }
    }

    let evidence = Evidence::Split {
        deg_g,
        double_locus,
        double_locus_surface,
        contact,
        residual_away,
        common_component,
    };
    decide(evidence, inventory, diagnostics)
}

/// Classify a double plane branched over the sextic f6.
pub fn classify_hyperelliptic(f6: &MultiPoly) -> Result<Classification, ClassifyError> {
    let model = FiberModel::Hyperelliptic { f6: f6.clone() };
    let violations = model.validate();
    if !violations.is_empty() {
        return Err(ClassifyError::Invalid(violations));
    }
    let (g, h) = match square_part_decompose(f6) {
        Ok(parts) => parts,
        Err(_) => {
            return Err(ClassifyError::NotInClassification(
                "an irreducible factor of the sextic occurs four or more times".to_string(),
            ))
        }
    };
    let deg_g = g.weighted_degree().expect("square part is nonzero") as u32;
    if deg_g == 0 {
        Ok(classify_reduced(&h, Ambient::P2, false))
    } else {
        Ok(classify_split(&g, &h, deg_g))
    }
}

/// Classify the line restrictions of a rank-two unigonal model.
fn classify_vertex_split(f2: &MultiPoly, f6: &MultiPoly) -> Classification {
    let restriction = line_restriction(f2, f6).expect("rank-two model verified");
    let charts = Ambient::P112.charts();
    let pattern = restriction.root_pattern.clone();
    let halves_squarefree = [
        restriction.halves[0].squarefree,
        restriction.halves[1].squarefree,
    ];
    let mut inventory = Vec::new();
    let mut diagnostics = Vec::new();
    let mut half_classes = None;

    if pattern == [1, 1, 1] {
        if halves_squarefree == [true, true] {
            // For a conjugate line pair the two restrictions are Galois
            // twins; analyzing one gives the germs of both.
            let analyzed: &[usize] = if restriction.conjugate { &[0] } else { &[0, 1] };
            let mut pooled = Vec::new();
            let mut complete = true;
            for &index in analyzed {
                match singular_locus(&restriction.halves[index].curve, Ambient::P112) {
                    Ok(orbits) => {
                        let copies = if restriction.conjugate { 0..2 } else { index..index + 1 };
                        for line in copies {
                            for orbit in &orbits {
                                pooled.push((orbit.report.class.clone(), orbit.orbit_size));
                                inventory.push(orbit_item(
                                    orbit,
                                    format!(
                                        "restriction to line {} ({})",
                                        line + 1,
                                        charts[orbit.chart].label
                                    ),
                                ));
                            }
                        }
                    }
                    Err(err) => {
                        complete = false;
                        diagnostics.push(format!(
                            "singular locus of the restriction to line {}: {}",
                            index + 1,
                            err
                        ));
                    }
                }
            }
            if complete {
                half_classes = Some(pooled);
            }
        } else {
            diagnostics.push("a line restriction is non-reduced".to_string());
        }
    } else if pattern == [2, 1] {
        for (index, half) in restriction.halves.iter().enumerate() {
            if !half.squarefree {
                diagnostics.push(format!("the restriction to line {} is non-reduced", index + 1));
            }
        }
    }

    let evidence = Evidence::VertexSplit {
        pattern,
        halves_squarefree,
        half_classes,
        conjugate: restriction.conjugate,
    };
    decide(evidence, inventory, diagnostics)
}

/// Classify a unigonal model f2 = f6 = 0 in P(1,1,1,2,3).
pub fn classify_unigonal(
    f2: &MultiPoly,
    f6: &MultiPoly,
) -> Result<Classification, ClassifyError> {
    let model = FiberModel::Unigonal {
        f2: f2.clone(),
        f6: f6.clone(),
    };
    let violations = model.validate();
    if violations
        .iter()
        .any(|v| matches!(v, ModelViolation::DoubleLineQuadric))
    {
        return Err(ClassifyError::NotInClassification(
            "the quadric is a double line".to_string(),
        ));
    }
    if !violations.is_empty() {
        return Err(ClassifyError::Invalid(violations));
    }
    match unigonal_reduce(f2, f6) {
        Ok(f12) => {
            let (square, residue) =
                match square_part_decompose(&f12) {
                    Ok(parts) => parts,
                    Err(_) => return Err(ClassifyError::NotInClassification(
                        "an irreducible factor of the branch curve occurs four or more times"
                            .to_string(),
                    )),
                };
            if square.weighted_degree() != Some(0) {
                return Ok(decide(
                    Evidence::Incomplete,
                    Vec::new(),
                    vec![
                        "the branch curve of the reduced model is non-reduced, which no row covers"
                            .to_string(),
                    ],
                ));
            }
            Ok(classify_reduced(&residue, Ambient::P114, true))
        }
        Err(ModelError::NoRationalPoint) => Ok(decide(
            Evidence::Incomplete,
            Vec::new(),
            vec![
                "the quadric has no rational point, so the model was not reduced to P(1,1,4)"
                    .to_string(),
            ],
        )),
        Err(ModelError::WrongRank { found: 2, .. }) => Ok(classify_vertex_split(f2, f6)),
        Err(err) => unreachable!("validated unigonal model failed to reduce: {}", err),
    }
}

/// Classify either model shape.
pub fn classify(model: &FiberModel) -> Result<Classification, ClassifyError> {
    match model {
        FiberModel::Hyperelliptic { f6 } => classify_hyperelliptic(f6),
        FiberModel::Unigonal { f2, f6 } => classify_unigonal(f2, f6),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat_int, Coeff};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::rc::Rc;

    fn form(vars: &Rc<VarSet>, terms: &[(i64, Vec<u32>)]) -> MultiPoly {
        MultiPoly::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, e)| (e.clone(), Coeff::Rat(rat_int(*c))))
                .collect(),
        )
    }

    fn classes_of(c: &Classification) -> Vec<(SingularityClass, u32)> {
        c.inventory
            .iter()
            .map(|item| (item.class.clone(), item.orbit_size))
            .collect()
    }

    #[test]
    fn row_names_round_trip() {
        for row in Row::NAMED {
            assert_eq!(Row::from_name(row.name()), Some(row));
            assert!(row.fiber_type().is_some());
        }
        assert_eq!(Row::from_name("Unclassified"), Some(Row::Unclassified));
        assert_eq!(Row::from_name("IV"), None);
        assert_eq!(Row::II0H.fiber_type(), Some(FiberType::II));
        assert_eq!(format!("{}", Row::III0U), "III.0u");
        assert_eq!(format!("{}", FiberType::III), "III");
    }

    #[test]
    fn smooth_sextic_lands_in_the_mild_row() {
        let p2 = VarSet::p2();
        let fermat = form(
            &p2,
            &[(1, vec![6, 0, 0]), (1, vec![0, 6, 0]), (1, vec![0, 0, 6])],
        );
        let c = classify_hyperelliptic(&fermat).unwrap();
        assert_eq!(c.row, Row::IH);
        assert!(c.inventory.is_empty());
        assert!(c.annotation.is_none());
        assert!(c.diagnostics.is_empty());
    }

    #[test]
    fn tangent_conic_triple_carries_two_elliptic_points() {
        // Three conics x2 x3 = s x1^2 for the roots of s^3 - 3s^2 + 2s + 1,
        // pairwise tangent at (0:1:0) and (0:0:1).
        let p2 = VarSet::p2();
        let q = form(&p2, &[(1, vec![0, 1, 1])]);
        let s1 = q.sub(&form(&p2, &[(1, vec![2, 0, 0])]));
        let s2 = q.sub(&form(&p2, &[(2, vec![2, 0, 0])]));
        let f6 = q.mul(&s1).mul(&s2).add(&form(&p2, &[(1, vec![6, 0, 0])]));
        let c = classify_hyperelliptic(&f6).unwrap();
        assert_eq!(c.row, Row::II0H);
        let classes = classes_of(&c);
        assert_eq!(classes.len(), 2);
        assert!(classes
            .iter()
            .all(|(class, size)| *class == SingularityClass::TildeE8 && *size == 1));
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.2)"),
                shah: Some("(II.1)"),
            })
        );
    }

    #[test]
    fn one_degenerate_cusp_lands_in_the_third_type() {
        // x2 (x2^2 x3^3 - 2 x1^2 x2 x3^2 + x1^4 x3 - x1^5): a T(2,3,7)
        // point at (0:0:1), an E8 at (0:1:0) and a node.
        let p2 = VarSet::p2();
        let f6 = form(
            &p2,
            &[
                (1, vec![0, 3, 3]),
                (-2, vec![2, 2, 2]),
                (1, vec![4, 1, 1]),
                (-1, vec![5, 1, 0]),
            ],
        );
        let c = classify_hyperelliptic(&f6).unwrap();
        assert_eq!(c.row, Row::III0H);
        let classes = classes_of(&c);
        assert!(classes.contains(&(SingularityClass::Cusp(3, 7), 1)));
        assert!(classes.contains(&(SingularityClass::E(8), 1)));
        assert!(classes.contains(&(SingularityClass::A(1), 1)));
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: None,
                shah: Some("(III.1)"),
            })
        );
    }

    #[test]
    fn double_line_rows_split_on_the_contact() {
        let p2 = VarSet::p2();
        // x1^2 (x2^4 + x3^4): four transverse points in one orbit, plus an
        // E7-tilde of the quartic away from the line.
        let f6 = form(&p2, &[(1, vec![2, 4, 0]), (1, vec![2, 0, 4])]);
        let c = classify_hyperelliptic(&f6).unwrap();
        assert_eq!(c.row, Row::II1);
        assert!(classes_of(&c).contains(&(SingularityClass::TildeE7, 1)));
        assert!(classes_of(&c).contains(&(SingularityClass::Pinch, 4)));
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.3)"),
                shah: Some("(II.2)"),
            })
        );

        // x1^2 (x2^2 x3^2 - x1^4): the line meets the quartic in two
        // points of contact order two, over double points of the quartic.
        let f6 = form(&p2, &[(1, vec![2, 2, 2]), (-1, vec![6, 0, 0])]);
        let c = classify_hyperelliptic(&f6).unwrap();
        assert_eq!(c.row, Row::III1);
        let contact: Vec<_> = c
            .inventory
            .iter()
            .filter(|item| item.intersection.is_some())
            .collect();
        assert_eq!(contact.len(), 2);
        assert!(contact
            .iter()
            .all(|item| item.class == SingularityClass::DegCuspB(4)));
    }

    #[test]
    fn double_conic_rows_split_on_the_contact() {
        let p2 = VarSet::p2();
        let conic = form(&p2, &[(1, vec![1, 0, 1]), (-1, vec![0, 2, 0])]);
        // Against the circle: one orbit of four transverse points.
        let circle = form(
            &p2,
            &[(1, vec![2, 0, 0]), (1, vec![0, 2, 0]), (-1, vec![0, 0, 2])],
        );
        let c = classify_hyperelliptic(&conic.pow(2).mul(&circle)).unwrap();
        assert_eq!(c.row, Row::II2);
        assert_eq!(classes_of(&c), vec![(SingularityClass::Pinch, 4)]);
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.4)"),
                shah: Some("(II.3)"),
            })
        );

        // Against the line pair x3 (x1 - x3): tangent to the first line,
        // transverse to the second, node of the pair off the conic.
        let pair = form(&p2, &[(1, vec![1, 0, 1]), (-1, vec![0, 0, 2])]);
        let c = classify_hyperelliptic(&conic.pow(2).mul(&pair)).unwrap();
        assert_eq!(c.row, Row::III2);
        let classes = classes_of(&c);
        assert!(classes.contains(&(SingularityClass::DegCuspB(1), 1)));
        assert!(classes.contains(&(SingularityClass::A(1), 1)));
        assert_eq!(c.annotation.unwrap().shah, Some("(III.1)"));
    }

    #[test]
    fn double_cubic_rows_split_on_the_nodes() {
        let p2 = VarSet::p2();
        let smooth = form(
            &p2,
            &[(1, vec![3, 0, 0]), (1, vec![0, 3, 0]), (1, vec![0, 0, 3])],
        );
        let c = classify_hyperelliptic(&smooth.pow(2)).unwrap();
        assert_eq!(c.row, Row::II3);
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.1)"),
                shah: Some("(II.4)"),
            })
        );

        let nodal = form(
            &p2,
            &[(1, vec![0, 2, 1]), (-1, vec![3, 0, 0]), (-1, vec![2, 0, 1])],
        );
        let c = classify_hyperelliptic(&nodal.pow(2)).unwrap();
        assert_eq!(c.row, Row::III3);
        let classes = classes_of(&c);
        assert!(classes.contains(&(SingularityClass::A(1), 1)));
        assert!(classes.contains(&(SingularityClass::DegCuspA, 1)));
        assert_eq!(c.annotation.unwrap().shah, Some("(III.2)"));

        // A triangle of lines: three nodes, three degenerate cusps.
        let triangle = form(&p2, &[(1, vec![1, 1, 1])]);
        let c = classify_hyperelliptic(&triangle.pow(2)).unwrap();
        assert_eq!(c.row, Row::III3);
        assert_eq!(
            classes_of(&c)
                .iter()
                .filter(|(class, _)| *class == SingularityClass::DegCuspA)
                .count(),
            3
        );
    }

    #[test]
    fn unigonal_reduced_rows_mirror_the_trichotomy() {
        let p1112 = VarSet::p1112();
        let f2 = form(
            &VarSet::p2(),
            &[(1, vec![1, 0, 1]), (-1, vec![0, 2, 0])],
        );

        let mild = form(
            &p1112,
            &[
                (1, vec![6, 0, 0, 0]),
                (1, vec![0, 6, 0, 0]),
                (1, vec![0, 0, 6, 0]),
                (1, vec![0, 0, 0, 3]),
            ],
        );
        let c = classify_unigonal(&f2, &mild).unwrap();
        assert_eq!(c.row, Row::IU);

        // y (y - x1 x3)(y - 2 x1 x3): three sheets pairwise tangent over
        // u v = 0, one E8-tilde at each of the two contact points.
        let y = form(&p1112, &[(1, vec![0, 0, 0, 1])]);
        let q = form(&p1112, &[(1, vec![1, 0, 1, 0])]);
        let elliptic = y
            .mul(&y.sub(&q))
            .mul(&y.sub(&q.scale(&Coeff::Rat(rat_int(2)))));
        let c = classify_unigonal(&f2, &elliptic).unwrap();
        assert_eq!(c.row, Row::II0U);
        let classes = classes_of(&c);
        assert_eq!(classes.len(), 2);
        assert!(classes
            .iter()
            .all(|(class, size)| *class == SingularityClass::TildeE8 && *size == 1));
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.2)"),
                shah: Some("(IV), case 1(ii)"),
            })
        );

        // y^3 + x1 x3 y^2 + x1^2 x2 x3^3 + x3^6 reduces to a curve with a
        // single T(2,3,7) point.
        let cusp = form(
            &p1112,
            &[
                (1, vec![0, 0, 0, 3]),
                (1, vec![1, 0, 1, 2]),
                (1, vec![2, 1, 3, 0]),
                (1, vec![0, 0, 6, 0]),
            ],
        );
        let c = classify_unigonal(&f2, &cusp).unwrap();
        assert_eq!(c.row, Row::III0U);
        assert_eq!(classes_of(&c), vec![(SingularityClass::Cusp(3, 7), 1)]);
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: None,
                shah: Some("(IV), case 2(ii)"),
            })
        );
    }

    #[test]
    fn rank_two_quadrics_split_on_the_vertex_cubic() {
        let p1112 = VarSet::p1112();
        let f2 = form(&VarSet::p2(), &[(1, vec![1, 1, 0])]);

        // x3^6 + y^3: three distinct points over the vertex, one E8-tilde
        // on each line restriction.
        let f6 = form(&p1112, &[(1, vec![0, 0, 6, 0]), (1, vec![0, 0, 0, 3])]);
        let c = classify_unigonal(&f2, &f6).unwrap();
        assert_eq!(c.row, Row::II4);
        let classes = classes_of(&c);
        assert_eq!(classes.len(), 2);
        assert!(classes
            .iter()
            .all(|(class, size)| *class == SingularityClass::TildeE8 && *size == 1));
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: Some("(5.2.2)"),
                shah: Some("(IV), case 2(i)"),
            })
        );

        // y^3 - 3 y x3^4 + 2 x3^6: the vertex cubic (y-1)^2 (y+2).
        let f6 = form(
            &p1112,
            &[
                (1, vec![0, 0, 0, 3]),
                (-3, vec![0, 0, 4, 1]),
                (2, vec![0, 0, 6, 0]),
            ],
        );
        let c = classify_unigonal(&f2, &f6).unwrap();
        assert_eq!(c.row, Row::III4);
        assert_eq!(
            c.annotation,
            Some(Annotation {
                friedman: None,
                shah: Some("(IV), case 2(ii)"),
            })
        );

        // y^3 alone: a triple root over the vertex, left open.
        let f6 = form(&p1112, &[(1, vec![0, 0, 0, 3])]);
        let c = classify_unigonal(&f2, &f6).unwrap();
        assert_eq!(c.row, Row::Unclassified);
        assert!(c.diagnostics.iter().any(|d| d.contains("triple root")));
    }

    #[test]
    fn excluded_inputs_are_refused() {
        let p2 = VarSet::p2();
        let quad = form(&p2, &[(1, vec![4, 2, 0])]);
        assert_eq!(
            classify_hyperelliptic(&quad),
            Err(ClassifyError::NotInClassification(
                "an irreducible factor of the sextic occurs four or more times".to_string()
            ))
        );

        let quintic = form(&p2, &[(1, vec![5, 0, 0])]);
        assert!(matches!(
            classify_hyperelliptic(&quintic),
            Err(ClassifyError::Invalid(_))
        ));

        let double_line = form(&p2, &[(1, vec![2, 0, 0])]);
        let f6 = form(
            &VarSet::p1112(),
            &[(1, vec![0, 0, 0, 3]), (1, vec![6, 0, 0, 0])],
        );
        assert_eq!(
            classify_unigonal(&double_line, &f6),
            Err(ClassifyError::NotInClassification(
                "the quadric is a double line".to_string()
            ))
        );
    }

    #[test]
    fn open_cases_stay_unclassified() {
        let p2 = VarSet::p2();
        // A cuspidal double cubic.
        let cuspidal = form(&p2, &[(1, vec![0, 2, 1]), (-1, vec![3, 0, 0])]);
        let c = classify_hyperelliptic(&cuspidal.pow(2)).unwrap();
        assert_eq!(c.row, Row::Unclassified);

        // A cubed factor: the double curve and the residual curve agree.
        let cubes = form(&p2, &[(1, vec![3, 3, 0])]);
        let c = classify_hyperelliptic(&cubes).unwrap();
        assert_eq!(c.row, Row::Unclassified);
        assert!(matches!(
            c.evidence,
            Evidence::Split {
                common_component: true,
                ..
            }
        ));

        // A quadric without rational points cannot be reduced.
        let pointless = form(
            &p2,
            &[(1, vec![2, 0, 0]), (1, vec![0, 2, 0]), (1, vec![0, 0, 2])],
        );
        let f6 = form(
            &VarSet::p1112(),
            &[(1, vec![0, 0, 0, 3]), (1, vec![6, 0, 0, 0])],
        );
        let c = classify_unigonal(&pointless, &f6).unwrap();
        assert_eq!(c.row, Row::Unclassified);
        assert!(c.diagnostics.iter().any(|d| d.contains("rational point")));

        // y^2 (y - x1 x3) reduces to a non-reduced branch curve.
        let p1112 = VarSet::p1112();
        let f6 = form(&p1112, &[(1, vec![0, 0, 0, 3]), (-1, vec![1, 0, 1, 2])]);
        let c = classify_unigonal(&vertex_quadric_in_p2(), &f6).unwrap();
        assert_eq!(c.row, Row::Unclassified);
        assert!(c.diagnostics.iter().any(|d| d.contains("non-reduced")));
    }

    fn vertex_quadric_in_p2() -> MultiPoly {
        form(
            &VarSet::p2(),
            &[(1, vec![1, 0, 1]), (-1, vec![0, 2, 0])],
        )
    }

    #[test]
    fn synthetic_evidence_never_matches_two_rows() {
        use SingularityClass::*;
        let pools: Vec<Vec<(SingularityClass, u32)>> = vec![
            vec![],
            vec![(A(1), 3)],
            vec![(TildeE7, 1)],
            vec![(TildeE8, 1), (A(2), 1)],
            vec![(TildeE8, 2)],
            vec![(Cusp(3, 9), 1)],
            vec![(Cusp(4, 5), 1), (TildeE8, 1)],
            vec![(Unclassified("?".to_string()), 1)],
        ];
        for unigonal in [false, true] {
            for classes in &pools {
                let evidence = Evidence::Reduced {
                    unigonal,
                    classes: classes.clone(),
                };
                assert!(matching_rows(&evidence).len() <= 1);
            }
        }
        for deg_g in 1..=3 {
            for double in [vec![], vec![(A(1), 1)], vec![(A(2), 1)]] {
                for contact in [
                    vec![],
                    vec![(Pinch, 4, 1)],
                    vec![(Pinch, 2, 1), (DegCuspB(1), 1, 2)],
                    vec![(Unclassified("?".to_string()), 1, 3)],
                ] {
                    let surface = double
                        .iter()
                        .map(|(_, size)| (DegCuspA, *size))
                        .collect();
                    let evidence = Evidence::Split {
                        deg_g,
                        double_locus: double.clone(),
                        double_locus_surface: surface,
                        contact,
                        residual_away: vec![],
                        common_component: false,
                    };
                    assert!(matching_rows(&evidence).len() <= 1);
                }
            }
        }
    }

    #[test]
    fn rows_are_stable_under_plane_coordinate_changes() {
        let p2 = VarSet::p2();
        let conic = form(&p2, &[(1, vec![1, 0, 1]), (-1, vec![0, 2, 0])]);
        let circle = form(
            &p2,
            &[(1, vec![2, 0, 0]), (1, vec![0, 2, 0]), (-1, vec![0, 0, 2])],
        );
        let ii2 = conic.pow(2).mul(&circle);
        let nodal = form(
            &p2,
            &[(1, vec![0, 2, 1]), (-1, vec![3, 0, 0]), (-1, vec![2, 0, 1])],
        );
        let iii3 = nodal.pow(2);

        let mut rng = ChaCha8Rng::seed_from_u64(0x726f77);
        for (f6, expected) in [(&ii2, Row::II2), (&iii3, Row::III3)] {
            for _ in 0..2 {
                let m = random_invertible(&mut rng);
                let images: Vec<MultiPoly> = (0..3)
                    .map(|i| {
                        form(
                            &p2,
                            &[
                                (m[i][0], vec![1, 0, 0]),
                                (m[i][1], vec![0, 1, 0]),
                                (m[i][2], vec![0, 0, 1]),
                            ],
                        )
                    })
                    .collect();
                let moved = f6.map_vars(&p2, &images);
                let c = classify_hyperelliptic(&moved).unwrap();
                assert_eq!(c.row, expected, "row changed under a coordinate change");
            }
        }
    }

    fn random_invertible(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
        loop {
            let mut m = [[0i64; 3]; 3];
            for row in &mut m {
                for entry in row.iter_mut() {
                    *entry = rng.gen_range(-3..=3);
                }
            }
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if det != 0 {
                return m;
            }
        }
    }
}
