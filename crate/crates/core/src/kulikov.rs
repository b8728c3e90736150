//! Combinatorial checks for polarized Kulikov configurations.
//!
//! A Kulikov degeneration of K3 surfaces has a central fibre built from
//! surfaces glued along double curves, with triple points where three
//! sheets cross. This module models such a fibre together with its
//! polarization data: per component the self-intersection H^2 of the
//! polarization and its degrees on the double curves, per double curve
//! the two self-intersections of its restrictions and the kind of curve.
//! Components may meet themselves (i = j), in which case the curve
//! carries two restriction records on the one component.
//!
//! Three checkers test the necessary numerical conditions: the triple
//! point formula on every double curve, the 0/1/2-surface trichotomy of
//! the components, and the global shape constraints (total degree two, a
//! chain with elliptic double curves for Type II, a sphere-like dual
//! complex with rational curves for Type III, and the isolation lemmas
//! for 0-surfaces). Passing every check does not certify that a
//! configuration arises from an actual degeneration; the checks are
//! necessary, not sufficient. The dual-complex sphere test is Euler
//! characteristic, connectivity and face-count bookkeeping, not a full
//! homeomorphism test; that is adequate at this scale.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ComponentKind {
    Rational,
    EllipticRuled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CurveKind {
    SmoothRational,
    SmoothElliptic,
    NodalRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeclaredType {
    II,
    III,
}

impl fmt::Display for DeclaredType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeclaredType::II => "II",
            DeclaredType::III => "III",
        })
    }
}

/// Degree of the polarization on one restriction of a double curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdRecord {
    /// Index into `double_curves`.
    pub curve: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    /// Self-intersection of the polarization on this component.
    pub h_square: i64,
    /// One record per restriction of a double curve to this component;
    /// a self-curve contributes two records.
    #[serde(default)]
    pub hd: Vec<HdRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DoubleCurve {
    pub i: String,
    pub j: String,
    pub self_int_on_i: i64,
    pub self_int_on_j: i64,
    pub curve_kind: CurveKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KulikovConfig {
    pub declared_type: DeclaredType,
    pub components: Vec<Component>,
    pub double_curves: Vec<DoubleCurve>,
    /// Unordered triples of double-curve indices, one per triple point.
    #[serde(default)]
    pub triple_points: Vec<[usize; 3]>,
}

/// A structural defect: the data does not describe a configuration at
/// all, as opposed to describing one that breaks the numerical checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    DuplicateComponentId(String),
    NegativeSquare { component: String },
    UnknownEndpoint { curve: usize, id: String },
    TriplePointRange { point: usize },
    HdRange { component: String, curve: usize },
    HdCoverage { component: String, curve: usize, expected: usize, found: usize },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::DuplicateComponentId(id) => {
                write!(f, "component id {:?} appears twice", id)
            }
            ConfigError::NegativeSquare { component } => {
                write!(f, "component {:?} has negative H^2", component)
            }
            ConfigError::UnknownEndpoint { curve, id } => {
                write!(f, "double curve {} references unknown component {:?}", curve, id)
            }
            ConfigError::TriplePointRange { point } => {
                write!(f, "triple point {} references a double curve out of range", point)
            }
            ConfigError::HdRange { component, curve } => {
                write!(
                    f,
                    "component {:?} records a degree on nonexistent double curve {}",
                    component, curve
                )
            }
            ConfigError::HdCoverage { component, curve, expected, found } => {
                write!(
                    f,
                    "component {:?} needs {} degree record(s) for double curve {}, found {}",
                    component, expected, curve, found
                )
            }
        }
    }
}

impl std::error::Error for ConfigError {}

/// Trichotomy of components by the polarization data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceClass {
    Zero,
    One,
    Two,
}

impl SurfaceClass {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceClass::Zero => "0-surface",
            SurfaceClass::One => "1-surface",
            SurfaceClass::Two => "2-surface",
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SurfaceClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// The polarization is nef, so its degree on an effective curve cannot
/// be negative; a configuration claiming otherwise is malformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefnessBreach {
    pub component: String,
}

impl fmt::Display for NefnessBreach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {:?} has a negative polarization degree", self.component)
    }
}

impl std::error::Error for NefnessBreach {}

/// One broken numerical condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Violation {
    TriplePointFormula { curve: usize, expected: i64, found: i64 },
    PolarizationMismatch { curve: usize },
    Nefness { component: String },
    TotalDegree { found: i64 },
    TooManyZeroSurfaces { found: usize },
    NotAChain { why: String },
    ChainEndNotRational { component: String },
    ChainInteriorNotRuled { component: String },
    DoubleCurveKind { curve: usize, expected: String },
    ComponentNotRational { component: String },
    DualGraphDisconnected,
    EulerCharacteristic { found: i64 },
    CurveFaceCount { curve: usize, found: usize },
    RuledZeroSurfaceWithoutTwoSurface { component: String },
    ZeroSurfaceNotIsolated { component: String, why: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TriplePointFormula { curve, expected, found } => write!(
                f,
                "double curve {}: restriction self-intersections sum to {}, expected {}",
                curve, found, expected
            ),
            Violation::PolarizationMismatch { curve } => write!(
                f,
                "double curve {}: polarization degree differs between restrictions",
                curve
            ),
            Violation::Nefness { component } => {
                write!(f, "component {:?} has a negative polarization degree", component)
            }
            Violation::TotalDegree { found } => {
                write!(f, "polarization degrees sum to {}, expected 2", found)
            }
            Violation::TooManyZeroSurfaces { found } => {
                write!(f, "{} 0-surfaces, at most two are possible", found)
            }
            Violation::NotAChain { why } => {
                write!(f, "a Type II fibre is a chain of components: {}", why)
            }
            Violation::ChainEndNotRational { component } => {
                write!(f, "chain end {:?} is not rational", component)
            }
            Violation::ChainInteriorNotRuled { component } => {
                write!(f, "chain interior component {:?} is not elliptic ruled", component)
            }
            Violation::DoubleCurveKind { curve, expected } => {
                write!(f, "double curve {} must be {}", curve, expected)
            }
            Violation::ComponentNotRational { component } => {
                write!(f, "component {:?} of a Type III fibre is not rational", component)
            }
            Violation::DualGraphDisconnected => write!(f, "the dual graph is disconnected"),
            Violation::EulerCharacteristic { found } => {
                write!(f, "dual complex Euler characteristic is {}, expected 2", found)
            }
            Violation::CurveFaceCount { curve, found } => write!(
                f,
                "double curve {} lies on {} triple point(s), expected exactly 2",
                curve, found
            ),
            Violation::RuledZeroSurfaceWithoutTwoSurface { component } => write!(
                f,
                "elliptic ruled 0-surface {:?} does not meet a 2-surface",
                component
            ),
            Violation::ZeroSurfaceNotIsolated { component, why } => write!(
                f,
                "0-surface {:?} is numerically trivial on its double curves but {}",
                component, why
            ),
        }
    }
}

impl KulikovConfig {
    /// Check the data shape: unique ids, endpoints and indices resolve,
    /// and every restriction of a double curve to a component carries
    /// exactly one degree record.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut index = HashMap::new();
        for (position, component) in self.components.iter().enumerate() {
            if index.insert(component.id.clone(), position).is_some() {
                return Err(ConfigError::DuplicateComponentId(component.id.clone()));
            }
            if component.h_square < 0 {
                return Err(ConfigError::NegativeSquare {
                    component: component.id.clone(),
                });
            }
        }
        for (position, curve) in self.double_curves.iter().enumerate() {
            for id in [&curve.i, &curve.j] {
                if !index.contains_key(id) {
                    return Err(ConfigError::UnknownEndpoint {
                        curve: position,
                        id: id.clone(),
                    });
                }
            }
        }
        for (position, triple) in self.triple_points.iter().enumerate() {
            if triple.iter().any(|&c| c >= self.double_curves.len()) {
                return Err(ConfigError::TriplePointRange { point: position });
            }
        }
        for component in &self.components {
            for record in &component.hd {
                if record.curve >= self.double_curves.len() {
                    return Err(ConfigError::HdRange {
                        component: component.id.clone(),
                        curve: record.curve,
                    });
                }
            }
            for (position, curve) in self.double_curves.iter().enumerate() {
                let expected = usize::from(curve.i == component.id)
                    + usize::from(curve.j == component.id);
                let found = component
                    .hd
                    .iter()
                    .filter(|record| record.curve == position)
                    .count();
                if found != expected {
                    return Err(ConfigError::HdCoverage {
                        component: component.id.clone(),
                        curve: position,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }

    fn component_index(&self) -> HashMap<&str, usize> {
        self.components
            .iter()
            .enumerate()
            .map(|(position, component)| (component.id.as_str(), position))
            .collect()
    }

    /// Endpoint component positions of a double curve.
    fn endpoints(&self, curve: &DoubleCurve) -> (usize, usize) {
        let index = self.component_index();
        (index[curve.i.as_str()], index[curve.j.as_str()])
    }
}

/// Check the triple point formula on every double curve: the two
/// restriction self-intersections sum to 0 for Type II fibres and for
/// nodal curves on Type III fibres, and to -2 for smooth curves on
/// Type III fibres.
pub fn check_triple_point_formula(config: &KulikovConfig) -> Vec<Violation> {
    let mut violations = Vec::new();
    for (position, curve) in config.double_curves.iter().enumerate() {
        let found = curve.self_int_on_i + curve.self_int_on_j;
        let expected = match (config.declared_type, curve.curve_kind) {
            (DeclaredType::II, _) => 0,
            (DeclaredType::III, CurveKind::NodalRational) => 0,
            (DeclaredType::III, _) => -2,
        };
        if found != expected {
            violations.push(Violation::TriplePointFormula {
                curve: position,
                expected,
                found,
            });
        }
    }
    violations
}

/// Smooth rational double curves of a Type III fibre with both
/// restriction self-intersections equal to -1. Such (*)-curves are the
/// only double curves a 0-surface polarization may fix.
pub fn star_curves(config: &KulikovConfig) -> Vec<usize> {
    if config.declared_type != DeclaredType::III {
        return Vec::new();
    }
    config
        .double_curves
        .iter()
        .enumerate()
        .filter(|(_, curve)| {
            curve.curve_kind == CurveKind::SmoothRational
                && curve.self_int_on_i == -1
                && curve.self_int_on_j == -1
        })
        .map(|(position, _)| position)
        .collect()
}

/// Sort the components by the polarization: H^2 > 0 gives a 0-surface,
/// H^2 = 0 with positive total degree on the double curves a 1-surface,
/// and numerically trivial polarization a 2-surface.
pub fn classify_surfaces(config: &KulikovConfig) -> Result<Vec<SurfaceClass>, NefnessBreach> {
    let mut classes = Vec::with_capacity(config.components.len());
    for component in &config.components {
        if component.h_square > 0 && component.hd.iter().any(|record| record.value < 0) {
            return Err(NefnessBreach {
                component: component.id.clone(),
            });
        }
        let degree: i64 = component.hd.iter().map(|record| record.value).sum();
        classes.push(if component.h_square > 0 {
            SurfaceClass::Zero
        } else if degree > 0 {
            SurfaceClass::One
        } else {
            SurfaceClass::Two
        });
    }
    Ok(classes)
}

/// Positions of the neighbours of every component in the dual graph
/// (self-curves adjoin a component to itself).
fn adjacency(config: &KulikovConfig) -> Vec<Vec<usize>> {
    let mut neighbours = vec![Vec::new(); config.components.len()];
    for curve in &config.double_curves {
        let (i, j) = config.endpoints(curve);
        neighbours[i].push(j);
        if i != j {
            neighbours[j].push(i);
        }
    }
    neighbours
}

fn connected(config: &KulikovConfig) -> bool {
    let n = config.components.len();
    if n == 0 {
        return true;
    }
    let neighbours = adjacency(config);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(at) = stack.pop() {
        for &next in &neighbours[at] {
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn chain_violations(
    config: &KulikovConfig,
    classes: Option<&[SurfaceClass]>,
    violations: &mut Vec<Violation>,
) {
    let n = config.components.len();
    let mut shape_broken = false;
    let fail = |why: &str, violations: &mut Vec<Violation>| {
        violations.push(Violation::NotAChain {
            why: why.to_string(),
        });
    };
    if n < 2 {
        fail("fewer than two components", violations);
        shape_broken = true;
    }
    if !config.triple_points.is_empty() {
        fail("triple points present", violations);
        shape_broken = true;
    }
    if config
        .double_curves
        .iter()
        .any(|curve| curve.i == curve.j)
    {
        fail("a component meets itself", violations);
        shape_broken = true;
    }
    if config.double_curves.len() + 1 != n {
        fail("the double curves do not link the components in sequence", violations);
        shape_broken = true;
    }
    let neighbours = adjacency(config);
    if neighbours.iter().any(|adjacent| adjacent.len() > 2) {
        fail("a component meets more than two others", violations);
        shape_broken = true;
    }
    if !connected(config) {
        fail("the components do not all connect", violations);
        shape_broken = true;
    }
    if !shape_broken {
        for (position, component) in config.components.iter().enumerate() {
            let interior = neighbours[position].len() == 2;
            match (interior, component.kind) {
                (false, ComponentKind::Rational) | (true, ComponentKind::EllipticRuled) => {}
                (false, _) => violations.push(Violation::ChainEndNotRational {
                    component: component.id.clone(),
                }),
                (true, _) => violations.push(Violation::ChainInteriorNotRuled {
                    component: component.id.clone(),
                }),
            }
        }
    }
    for (position, curve) in config.double_curves.iter().enumerate() {
        if curve.curve_kind != CurveKind::SmoothElliptic {
            violations.push(Violation::DoubleCurveKind {
                curve: position,
                expected: "a smooth elliptic curve".to_string(),
            });
        }
    }
    // An elliptic ruled 0-surface must meet a 2-surface.
    if let Some(classes) = classes {
        for (position, component) in config.components.iter().enumerate() {
            if component.kind == ComponentKind::EllipticRuled
                && classes[position] == SurfaceClass::Zero
                && !neighbours[position]
                    .iter()
                    .any(|&next| classes[next] == SurfaceClass::Two)
            {
                violations.push(Violation::RuledZeroSurfaceWithoutTwoSurface {
                    component: component.id.clone(),
                });
            }
        }
    }
}

fn sphere_violations(
    config: &KulikovConfig,
    classes: Option<&[SurfaceClass]>,
    violations: &mut Vec<Violation>,
) {
    for component in &config.components {
        if component.kind != ComponentKind::Rational {
            violations.push(Violation::ComponentNotRational {
                component: component.id.clone(),
            });
        }
    }
    for (position, curve) in config.double_curves.iter().enumerate() {
        if curve.curve_kind == CurveKind::SmoothElliptic {
            violations.push(Violation::DoubleCurveKind {
                curve: position,
                expected: "a rational curve".to_string(),
            });
        }
    }
    if !connected(config) {
        violations.push(Violation::DualGraphDisconnected);
    }
    let euler = config.components.len() as i64 - config.double_curves.len() as i64
        + config.triple_points.len() as i64;
    if euler != 2 {
        violations.push(Violation::EulerCharacteristic { found: euler });
    }
    // In a closed dual complex every double curve borders exactly two
    // triple-point faces, counted with multiplicity.
    for position in 0..config.double_curves.len() {
        let found = config
            .triple_points
            .iter()
            .flatten()
            .filter(|&&c| c == position)
            .count();
        if found != 2 {
            violations.push(Violation::CurveFaceCount {
                curve: position,
                found,
            });
        }
    }
    // A 0-surface that is numerically trivial on its double curves must
    // be the only 0-surface, all other components 2-surfaces.
    if let Some(classes) = classes {
        for (position, component) in config.components.iter().enumerate() {
            if classes[position] != SurfaceClass::Zero
                || component.hd.iter().any(|record| record.value != 0)
            {
                continue;
            }
            let mut reasons = Vec::new();
            if classes
                .iter()
                .enumerate()
                .any(|(other, &class)| other != position && class == SurfaceClass::Zero)
            {
                reasons.push("another 0-surface is present");
            }
            if classes
                .iter()
                .enumerate()
                .any(|(other, &class)| other != position && class == SurfaceClass::One)
            {
                reasons.push("a 1-surface is present");
            }
            for why in reasons {
                violations.push(Violation::ZeroSurfaceNotIsolated {
                    component: component.id.clone(),
                    why: why.to_string(),
                });
            }
        }
    }
}

/// Check the global constraints: the polarization has total degree two
/// and consistent degrees on the double curves, at most two 0-surfaces,
/// and the declared type imposes its shape (a rational-ended chain of
/// elliptic ruled surfaces with elliptic double curves for Type II; a
/// connected, spherical dual complex of rational surfaces and rational
/// curves for Type III) together with the 0-surface isolation lemmas.
pub fn check_global_constraints(config: &KulikovConfig) -> Vec<Violation> {
    let mut violations = Vec::new();

    for position in 0..config.double_curves.len() {
        let degrees: Vec<i64> = config
            .components
            .iter()
            .flat_map(|component| component.hd.iter())
            .filter(|record| record.curve == position)
            .map(|record| record.value)
            .collect();
        if degrees.windows(2).any(|pair| pair[0] != pair[1]) {
            violations.push(Violation::PolarizationMismatch { curve: position });
        }
    }

    let total: i64 = config.components.iter().map(|c| c.h_square).sum();
    if total != 2 {
        violations.push(Violation::TotalDegree { found: total });
    }

    let classes = match classify_surfaces(config) {
        Ok(classes) => Some(classes),
        Err(breach) => {
            violations.push(Violation::Nefness {
                component: breach.component,
            });
            None
        }
    };
    if let Some(classes) = &classes {
        let zeros = classes
            .iter()
            .filter(|&&class| class == SurfaceClass::Zero)
            .count();
        if zeros > 2 {
            violations.push(Violation::TooManyZeroSurfaces { found: zeros });
        }
    }

    match config.declared_type {
        DeclaredType::II => chain_violations(config, classes.as_deref(), &mut violations),
        DeclaredType::III => sphere_violations(config, classes.as_deref(), &mut violations),
    }
    violations
}

/// Run every checker; empty means the configuration passes.
pub fn check_all(config: &KulikovConfig) -> Vec<Violation> {
    let mut violations = check_triple_point_formula(config);
    violations.extend(check_global_constraints(config));
    violations
}

/// A deterministic stream of pseudo-random configurations for property
/// testing. Each draw builds a structurally valid configuration from a
/// small library of shapes (chains, a theta complex, a tetrahedron, free
/// graphs) and then, half of the time, corrupts some of its numerical or
/// shape data, so the stream exercises both the passing and the failing
/// paths of every checker.
pub struct ConfigStream {
    rng: ChaCha8Rng,
    max_components: usize,
}

impl ConfigStream {
    pub fn new(seed: u64, max_components: usize) -> ConfigStream {
        assert!(
            (1..=12).contains(&max_components),
            "component bound must be between 1 and 12"
        );
        ConfigStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_components,
        }
    }

    fn draw(&mut self) -> KulikovConfig {
        let mut shapes: Vec<u8> = vec![0, 3];
        if self.max_components >= 3 {
            shapes.push(1);
        }
        if self.max_components >= 4 {
            shapes.push(2);
        }
        let shape = shapes[self.rng.gen_range(0..shapes.len())];
        let mut config = match shape {
            0 => self.draw_chain(),
            1 => self.draw_theta(),
            2 => self.draw_tetrahedron(),
            _ => self.draw_free_graph(),
        };
        if self.rng.gen_bool(0.5) {
            let corruptions = self.rng.gen_range(1..=3);
            for _ in 0..corruptions {
                self.corrupt(&mut config);
            }
        }
        debug_assert_eq!(config.validate(), Ok(()));
        config
    }

    fn component(id: usize, kind: ComponentKind, h_square: i64) -> Component {
        Component {
            id: format!("V{}", id + 1),
            kind,
            h_square,
            hd: Vec::new(),
        }
    }

    /// Attach the degree records implied by the double curves: every
    /// restriction of curve k to a component gets the degree chosen for
    /// that curve.
    fn attach_degrees(config: &mut KulikovConfig, degrees: &[i64]) {
        for component in &mut config.components {
            component.hd.clear();
        }
        for (position, curve) in config.double_curves.iter().enumerate() {
            let i = curve.i.clone();
            let j = curve.j.clone();
            for component in &mut config.components {
                let mut copies = usize::from(component.id == i);
                copies += usize::from(component.id == j);
                for _ in 0..copies {
                    component.hd.push(HdRecord {
                        curve: position,
                        value: degrees[position],
                    });
                }
            }
        }
    }

    fn split_degree_two(&mut self, n: usize) -> Vec<i64> {
        let mut squares = vec![0i64; n];
        if n == 1 || self.rng.gen_bool(0.5) {
            squares[self.rng.gen_range(0..n)] = 2;
        } else {
            let first = self.rng.gen_range(0..n);
            let mut second = self.rng.gen_range(0..n - 1);
            if second >= first {
                second += 1;
            }
            squares[first] = 1;
            squares[second] = 1;
        }
        squares
    }

    fn draw_chain(&mut self) -> KulikovConfig {
        let n = if self.max_components >= 2 {
            self.rng.gen_range(2..=self.max_components.min(6))
        } else {
            1
        };
        let squares = self.split_degree_two(n);
        let mut components = Vec::new();
        for position in 0..n {
            let interior = position > 0 && position + 1 < n;
            let kind = if interior {
                ComponentKind::EllipticRuled
            } else {
                ComponentKind::Rational
            };
            components.push(Self::component(position, kind, squares[position]));
        }
        let mut double_curves = Vec::new();
        let mut degrees = Vec::new();
        for position in 1..n {
            let s = self.rng.gen_range(-2..=2);
            double_curves.push(DoubleCurve {
                i: format!("V{}", position),
                j: format!("V{}", position + 1),
                self_int_on_i: s,
                self_int_on_j: -s,
                curve_kind: CurveKind::SmoothElliptic,
            });
            degrees.push([0, 0, 1, 2][self.rng.gen_range(0..4)]);
        }
        let mut config = KulikovConfig {
            declared_type: DeclaredType::II,
            components,
            double_curves,
            triple_points: Vec::new(),
        };
        Self::attach_degrees(&mut config, &degrees);
        config
    }

    fn theta_shape(&mut self) -> (Vec<DoubleCurve>, Vec<[usize; 3]>) {
        let curve = |i: usize, j: usize| DoubleCurve {
            i: format!("V{}", i),
            j: format!("V{}", j),
            self_int_on_i: -1,
            self_int_on_j: -1,
            curve_kind: CurveKind::SmoothRational,
        };
        let double_curves = vec![curve(1, 2), curve(1, 3), curve(2, 3)];
        let triple_points = vec![[0, 1, 2], [0, 1, 2]];
        (double_curves, triple_points)
    }

    fn draw_theta(&mut self) -> KulikovConfig {
        let (double_curves, triple_points) = self.theta_shape();
        let squares = self.split_degree_two(3);
        let components = (0..3)
            .map(|position| Self::component(position, ComponentKind::Rational, squares[position]))
            .collect();
        let degrees: Vec<i64> = (0..3)
            .map(|_| [0, 0, 0, 1, 2, 3, 4][self.rng.gen_range(0..7)])
            .collect();
        let mut config = KulikovConfig {
            declared_type: DeclaredType::III,
            components,
            double_curves,
            triple_points,
        };
        Self::attach_degrees(&mut config, &degrees);
        config
    }

    fn draw_tetrahedron(&mut self) -> KulikovConfig {
        let curve = |i: usize, j: usize| DoubleCurve {
            i: format!("V{}", i),
            j: format!("V{}", j),
            self_int_on_i: -1,
            self_int_on_j: -1,
            curve_kind: CurveKind::SmoothRational,
        };
        let double_curves = vec![
            curve(1, 2),
            curve(1, 3),
            curve(1, 4),
            curve(2, 3),
            curve(2, 4),
            curve(3, 4),
        ];
        let triple_points = vec![[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
        let components = (0..4)
            .map(|position| {
                Self::component(
                    position,
                    ComponentKind::Rational,
                    if position == 0 { 2 } else { 0 },
                )
            })
            .collect();
        // Zero degrees keep the 0-surface isolation lemma satisfied;
        // occasionally polarize one curve instead.
        let mut degrees = vec![0i64; 6];
        if self.rng.gen_bool(0.4) {
            degrees[self.rng.gen_range(0..2)] = self.rng.gen_range(1..=4);
        }
        let mut config = KulikovConfig {
            declared_type: DeclaredType::III,
            components,
            double_curves,
            triple_points,
        };
        Self::attach_degrees(&mut config, &degrees);
        config
    }

    fn draw_free_graph(&mut self) -> KulikovConfig {
        let n = self.rng.gen_range(1..=self.max_components);
        let declared_type = if self.rng.gen_bool(0.5) {
            DeclaredType::II
        } else {
            DeclaredType::III
        };
        let mut components: Vec<Component> = (0..n)
            .map(|position| {
                let kind = if self.rng.gen_bool(0.6) {
                    ComponentKind::Rational
                } else {
                    ComponentKind::EllipticRuled
                };
                Self::component(position, kind, self.rng.gen_range(0..=2))
            })
            .collect();
        components[0].h_square = self.rng.gen_range(0..=2);
        let curves = self.rng.gen_range(0..=n + 1);
        let kinds = [
            CurveKind::SmoothRational,
            CurveKind::SmoothElliptic,
            CurveKind::NodalRational,
        ];
        let mut double_curves = Vec::new();
        let mut degrees = Vec::new();
        for _ in 0..curves {
            double_curves.push(DoubleCurve {
                i: format!("V{}", self.rng.gen_range(1..=n)),
                j: format!("V{}", self.rng.gen_range(1..=n)),
                self_int_on_i: self.rng.gen_range(-2..=2),
                self_int_on_j: self.rng.gen_range(-2..=2),
                curve_kind: kinds[self.rng.gen_range(0..3)],
            });
            degrees.push(self.rng.gen_range(0..=3));
        }
        let triples = self.rng.gen_range(0..=3);
        let triple_points = if double_curves.is_empty() {
            Vec::new()
        } else {
            (0..triples)
                .map(|_| {
                    [
                        self.rng.gen_range(0..double_curves.len()),
                        self.rng.gen_range(0..double_curves.len()),
                        self.rng.gen_range(0..double_curves.len()),
                    ]
                })
                .collect()
        };
        let mut config = KulikovConfig {
            declared_type,
            components,
            double_curves,
            triple_points,
        };
        Self::attach_degrees(&mut config, &degrees);
        config
    }

    /// Break one aspect of a configuration without damaging its
    /// structural validity.
    fn corrupt(&mut self, config: &mut KulikovConfig) {
        match self.rng.gen_range(0..6) {
            0 => {
                let at = self.rng.gen_range(0..config.components.len());
                config.components[at].h_square = self.rng.gen_range(0..=3);
            }
            1 => {
                if !config.double_curves.is_empty() {
                    let at = self.rng.gen_range(0..config.double_curves.len());
                    config.double_curves[at].self_int_on_i = self.rng.gen_range(-3..=3);
                }
            }
            2 => {
                let at = self.rng.gen_range(0..config.components.len());
                config.components[at].kind = match config.components[at].kind {
                    ComponentKind::Rational => ComponentKind::EllipticRuled,
                    ComponentKind::EllipticRuled => ComponentKind::Rational,
                };
            }
            3 => {
                if !config.double_curves.is_empty() {
                    let at = self.rng.gen_range(0..config.double_curves.len());
                    let kinds = [
                        CurveKind::SmoothRational,
                        CurveKind::SmoothElliptic,
                        CurveKind::NodalRational,
                    ];
                    config.double_curves[at].curve_kind = kinds[self.rng.gen_range(0..3)];
                }
            }
            4 => {
                let at = self.rng.gen_range(0..config.components.len());
                if let Some(record) = config.components[at].hd.first_mut() {
                    record.value = self.rng.gen_range(0..=4);
                }
            }
            _ => {
                if !config.double_curves.is_empty() && self.rng.gen_bool(0.5) {
                    let triple = [
                        self.rng.gen_range(0..config.double_curves.len()),
                        self.rng.gen_range(0..config.double_curves.len()),
                        self.rng.gen_range(0..config.double_curves.len()),
                    ];
                    config.triple_points.push(triple);
                } else if !config.triple_points.is_empty() {
                    config.triple_points.pop();
                }
            }
        }
    }
}

impl Iterator for ConfigStream {
    type Item = KulikovConfig;

    fn next(&mut self) -> Option<KulikovConfig> {
        Some(self.draw())
    }
}
