//! Machine-readable reports.
//!
//! Every subcommand fills the same top-level document so that callers
//! can parse one shape. The JSON layout is frozen by
//! `schema/report.schema.json` at the repository root and stamped with
//! `schemaVersion`; the document round-trips through serde, and with
//! `--json` the timing field stays null so that equal inputs and seeds
//! give byte-identical output.

use serde::{Deserialize, Serialize};

use k3fibre_core::classify::{Classification, InventoryItem};
use k3fibre_core::germ::GermReport;
use k3fibre_core::kulikov::{classify_surfaces, star_curves, KulikovConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    /// Milliseconds, or null in JSON mode to keep output deterministic.
    pub timing_ms: Option<f64>,
    pub input: InputEcho,
    pub classification: Option<ClassificationSection>,
    pub germ: Option<GermSection>,
    pub kulikov: Option<KulikovSection>,
    pub corpus: Option<CorpusSection>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InputEcho {
    pub model: Option<String>,
    pub f2: Option<String>,
    pub f6: Option<String>,
    pub f: Option<String>,
    pub at: Option<String>,
    pub config: Option<String>,
    pub filter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationSection {
    pub row: String,
    pub fiber_type: Option<String>,
    pub annotation: Option<AnnotationSection>,
    pub inventory: Vec<OrbitSection>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnnotationSection {
    pub friedman: Option<String>,
    pub shah: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitSection {
    pub site: String,
    pub class: String,
    pub multiplicity: u32,
    pub milnor: Option<u32>,
    pub intersection: Option<u32>,
    pub min_poly: Option<String>,
    pub point: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GermSection {
    pub class: String,
    pub multiplicity: u32,
    pub milnor: Option<u32>,
    pub tangent_cone: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KulikovSection {
    pub declared_type: String,
    pub valid: bool,
    pub surfaces: Vec<SurfaceSection>,
    pub star_curves: Vec<usize>,
    pub violations: Vec<ViolationSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceSection {
    pub id: String,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViolationSection {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusSection {
    pub passed: bool,
    pub rows_covered: Vec<String>,
    pub entries: Vec<CorpusEntrySection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusEntrySection {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            timing_ms: None,
            input: InputEcho::default(),
            classification: None,
            germ: None,
            kulikov: None,
            corpus: None,
            errors: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    /// Plain-text rendering for the terminal.
    pub fn human(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.classification {
            out.push_str(&format!("row          {}\n", c.row));
            if let Some(t) = &c.fiber_type {
                out.push_str(&format!("fiber type   {}\n", t));
            }
            if let Some(a) = &c.annotation {
                if let Some(case) = &a.friedman {
                    out.push_str(&format!("Friedman     {}\n", case));
                }
                if let Some(case) = &a.shah {
                    out.push_str(&format!("Shah         {}\n", case));
                }
            }
            if !c.inventory.is_empty() {
                out.push_str("\nsingular orbits\n");
                let mut rows = vec![vec![
                    "site".to_string(),
                    "class".to_string(),
                    "orbit".to_string(),
                    "milnor".to_string(),
                    "contact".to_string(),
                    "point".to_string(),
                ]];
                for item in &c.inventory {
                    rows.push(vec![
                        item.site.clone(),
                        item.class.clone(),
                        item.multiplicity.to_string(),
                        item.milnor.map_or("-".to_string(), |m| m.to_string()),
                        item.intersection.map_or("-".to_string(), |i| i.to_string()),
                        item.point.clone().unwrap_or_else(|| "-".to_string()),
                    ]);
                }
                out.push_str(&table(&rows));
                for item in &c.inventory {
                    if let Some(p) = &item.min_poly {
                        out.push_str(&format!(
                            "  residue field of {}: {} = 0\n",
                            item.site, p
                        ));
                    }
                }
            }
            if !c.diagnostics.is_empty() {
                out.push_str("\ndiagnostics\n");
                for line in &c.diagnostics {
                    out.push_str(&format!("  - {}\n", line));
                }
            }
        }
        if let Some(g) = &self.germ {
            out.push_str(&format!("class         {}\n", g.class));
            out.push_str(&format!("multiplicity  {}\n", g.multiplicity));
            out.push_str(&format!(
                "milnor        {}\n",
                g.milnor.map_or("-".to_string(), |m| m.to_string())
            ));
            if !g.tangent_cone.is_empty() {
                let pattern: Vec<String> =
                    g.tangent_cone.iter().map(|m| m.to_string()).collect();
                out.push_str(&format!("tangent cone  {{{}}}\n", pattern.join(", ")));
            }
        }
        if let Some(k) = &self.kulikov {
            out.push_str(&format!("declared type  {}\n", k.declared_type));
            out.push_str(&format!(
                "result         {}\n",
                if k.valid {
                    "all checks pass".to_string()
                } else {
                    format!("{} violation(s)", k.violations.len())
                }
            ));
            if !k.surfaces.is_empty() {
                out.push_str("\ncomponents\n");
                let mut rows = vec![vec!["id".to_string(), "class".to_string()]];
                for s in &k.surfaces {
                    rows.push(vec![s.id.clone(), s.class.clone()]);
                }
                out.push_str(&table(&rows));
            }
            if !k.star_curves.is_empty() {
                let list: Vec<String> = k.star_curves.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("(*)-curves: {}\n", list.join(", ")));
            }
            if !k.violations.is_empty() {
                out.push_str("\nviolations\n");
                for v in &k.violations {
                    out.push_str(&format!("  - {}\n", v.message));
                }
            }
        }
        if let Some(c) = &self.corpus {
            let mut rows = vec![vec![
                "entry".to_string(),
                "expected".to_string(),
                "found".to_string(),
                "pass".to_string(),
            ]];
            for entry in &c.entries {
                rows.push(vec![
                    entry.name.clone(),
                    entry.expected.clone(),
                    entry.found.clone(),
                    if entry.pass { "yes" } else { "NO" }.to_string(),
                ]);
            }
            out.push_str(&table(&rows));
            out.push_str(&format!(
                "rows covered: {} of 14\nresult: {}\n",
                c.rows_covered.len(),
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        for error in &self.errors {
            out.push_str(&format!("error: {}\n", error));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {:.1} ms\n", ms));
        }
        out
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        out.push_str("  ");
        for (i, cell) in row.iter().enumerate() {
            out.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.chars().count()..widths[i] + 2 {
                    out.push(' ');
                }
            }
        }
        out.push('\n');
    }
    out
}

fn orbit_section(item: &InventoryItem) -> OrbitSection {
    OrbitSection {
        site: item.site.clone(),
        class: item.class.label(),
        multiplicity: item.orbit_size,
        milnor: item.milnor,
        intersection: item.intersection,
        min_poly: item.min_poly.clone(),
        point: item.point.clone(),
    }
}

pub fn classification_section(c: &Classification) -> ClassificationSection {
    ClassificationSection {
        row: c.row.name().to_string(),
        fiber_type: c.row.fiber_type().map(|t| t.to_string()),
        annotation: c.annotation.as_ref().map(|a| AnnotationSection {
            friedman: a.friedman.map(str::to_string),
            shah: a.shah.map(str::to_string),
        }),
        inventory: c.inventory.iter().map(orbit_section).collect(),
        diagnostics: c.diagnostics.clone(),
    }
}

pub fn germ_section(r: &GermReport) -> GermSection {
    GermSection {
        class: r.class.label(),
        multiplicity: r.multiplicity,
        milnor: r.milnor,
        tangent_cone: r.tangent_cone_pattern.clone(),
    }
}

pub fn kulikov_section(config: &KulikovConfig) -> KulikovSection {
    let violations = k3fibre_core::kulikov::check_all(config);
    let surfaces = match classify_surfaces(config) {
        Ok(classes) => config
            .components
            .iter()
            .zip(classes)
            .map(|(component, class)| SurfaceSection {
                id: component.id.clone(),
                class: class.name().to_string(),
            })
            .collect(),
        Err(_) => Vec::new(),
    };
    KulikovSection {
        declared_type: config.declared_type.to_string(),
        valid: violations.is_empty(),
        surfaces,
        star_curves: star_curves(config),
        violations: violations
            .iter()
            .map(|violation| {
                let value = serde_json::to_value(violation).expect("violations serialize");
                ViolationSection {
                    kind: value
                        .get("kind")
                        .and_then(|k| k.as_str())
                        .unwrap_or("violation")
                        .to_string(),
                    message: violation.to_string(),
                }
            })
            .collect(),
    }
}
