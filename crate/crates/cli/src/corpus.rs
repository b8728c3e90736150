//! Driver for the bundled corpus.
//!
//! A corpus entry is a JSON file naming a model, its defining forms as
//! expression strings, and the row it must classify into. The driver
//! runs every entry (in parallel, reported in file order) and compares
//! the computed row against the expected one. An unfiltered run of the
//! bundled corpus must exercise all fourteen named rows, so missing
//! coverage counts as failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use k3fibre_core::poly::VarSet;
use k3fibre_core::{classify, FiberModel, Row};

use crate::parser::parse_poly;
use crate::report::{CorpusEntrySection, CorpusSection};

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CorpusEntry {
    /// Defaults to the file stem.
    #[serde(default)]
    pub name: Option<String>,
    pub model: String,
    #[serde(default)]
    pub f2: Option<String>,
    pub f6: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    MissingDir(PathBuf),
    Empty(PathBuf),
    BadEntry { file: PathBuf, message: String },
    NoMatch(String),
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::MissingDir(dir) => {
                write!(f, "corpus directory {} cannot be read", dir.display())
            }
            CorpusError::Empty(dir) => {
                write!(f, "corpus directory {} has no .json entries", dir.display())
            }
            CorpusError::BadEntry { file, message } => {
                write!(f, "{}: {}", file.display(), message)
            }
            CorpusError::NoMatch(row) => {
                write!(f, "no corpus entry expects row {}", row)
            }
        }
    }
}

impl std::error::Error for CorpusError {}

fn bad(file: &Path, message: impl Into<String>) -> CorpusError {
    CorpusError::BadEntry {
        file: file.to_path_buf(),
        message: message.into(),
    }
}

pub fn load_entries(dir: &Path) -> Result<Vec<(PathBuf, CorpusEntry)>, CorpusError> {
    let listing = fs::read_dir(dir).map_err(|_| CorpusError::MissingDir(dir.to_path_buf()))?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|path| path.extension().is_some_and(|ext| ext == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }
    let mut entries = Vec::with_capacity(files.len());
    for file in files {
        let text = fs::read_to_string(&file)
            .map_err(|error| bad(&file, format!("cannot read: {}", error)))?;
        let mut entry: CorpusEntry =
            serde_json::from_str(&text).map_err(|error| bad(&file, error.to_string()))?;
        if entry.name.is_none() {
            entry.name = file
                .file_stem()
                .map(|stem| stem.to_string_lossy().into_owned());
        }
        if Row::from_name(&entry.expected).is_none() {
            return Err(bad(&file, format!("unknown expected row {:?}", entry.expected)));
        }
        match entry.model.as_str() {
            "hyperelliptic" => {
                if entry.f2.is_some() {
                    return Err(bad(&file, "a hyperelliptic entry takes no f2"));
                }
            }
            "unigonal" => {
                if entry.f2.is_none() {
                    return Err(bad(&file, "a unigonal entry needs an f2"));
                }
            }
            other => {
                return Err(bad(&file, format!("unknown model {:?}", other)));
            }
        }
        entries.push((file, entry));
    }
    Ok(entries)
}

fn run_entry(file: &Path, entry: &CorpusEntry) -> Result<CorpusEntrySection, CorpusError> {
    let model = match entry.model.as_str() {
        "hyperelliptic" => {
            let f6 = parse_poly(&entry.f6, &VarSet::p2())
                .map_err(|error| bad(file, format!("f6: {}", error)))?;
            FiberModel::Hyperelliptic { f6 }
        }
        _ => {
            let f2 = parse_poly(entry.f2.as_deref().unwrap_or(""), &VarSet::p2())
                .map_err(|error| bad(file, format!("f2: {}", error)))?;
            let f6 = parse_poly(&entry.f6, &VarSet::p1112())
                .map_err(|error| bad(file, format!("f6: {}", error)))?;
            FiberModel::Unigonal { f2, f6 }
        }
    };
    let found = match classify(&model) {
        Ok(c) => c.row.name().to_string(),
        Err(error) => format!("error: {}", error),
    };
    let name = entry.name.clone().unwrap_or_default();
    Ok(CorpusEntrySection {
        pass: found == entry.expected,
        name,
        expected: entry.expected.clone(),
        found,
    })
}

pub fn run_corpus(dir: &Path, filter: Option<&str>) -> Result<CorpusSection, CorpusError> {
    let mut entries = load_entries(dir)?;
    if let Some(row) = filter {
        entries.retain(|(_, entry)| entry.expected == row);
        if entries.is_empty() {
            return Err(CorpusError::NoMatch(row.to_string()));
        }
    }
    let sections: Vec<CorpusEntrySection> = entries
        .par_iter()
        .map(|(file, entry)| run_entry(file, entry))
        .collect::<Result<_, _>>()?;
    let rows_covered: Vec<String> = Row::NAMED
        .iter()
        .map(|row| row.name())
        .filter(|name| sections.iter().any(|section| section.expected.as_str() == *name))
        .map(str::to_string)
        .collect();
    let full_coverage = rows_covered.len() == Row::NAMED.len();
    let passed =
        sections.iter().all(|section| section.pass) && (filter.is_some() || full_coverage);
    Ok(CorpusSection {
        passed,
        rows_covered,
        entries: sections,
    })
}
