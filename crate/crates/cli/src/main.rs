//! Command line front end for the degree-two fibre classifier.
//!
//! Exit codes: 0 when the input classifies (or every check passes),
//! 1 when the answer is Unclassified or a configuration breaks a check,
//! 2 when the input itself is invalid.

use k3fibre_cli::{corpus, parser, report};

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser as CliParser, Subcommand, ValueEnum};

use k3fibre_core::germ::germ_report_at;
use k3fibre_core::poly::VarSet;
use k3fibre_core::{classify, Coeff, FiberModel, KulikovConfig, Row};

use report::Report;

#[derive(CliParser)]
#[command(name = "k3fibre", version, about = "Classify degenerate degree-two K3 fibres")]
struct Cli {
    /// Emit the JSON report instead of the plain-text rendering.
    #[arg(long, global = true)]
    json: bool,
    /// Seed echoed into the report; equal seeds give byte-identical JSON.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a fibre model into its row.
    Classify {
        #[arg(long, value_enum)]
        model: Model,
        /// Quadric in x1, x2, x3; unigonal model only.
        #[arg(long)]
        f2: Option<String>,
        /// Sextic in x1, x2, x3, together with y of weight 2 for the
        /// unigonal model.
        #[arg(long)]
        f6: String,
    },
    /// Classify a plane curve germ at a point.
    Germ {
        /// Curve in x and y.
        #[arg(long)]
        f: String,
        /// The point, as two comma separated rationals: `--at 1,-3/2`.
        #[arg(long)]
        at: String,
    },
    /// Work with Kulikov configuration files.
    Kulikov {
        #[command(subcommand)]
        action: KulikovAction,
    },
    /// Work with the bundled corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Hyperelliptic,
    Unigonal,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Hyperelliptic => "hyperelliptic",
            Model::Unigonal => "unigonal",
        }
    }
}

#[derive(Subcommand)]
enum KulikovAction {
    /// Validate a configuration file and run every numerical check.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Classify every entry and compare against its expected row.
    Run {
        /// Only run the entries expecting this row.
        #[arg(long)]
        filter: Option<String>,
        /// Directory holding the corpus entries.
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
    },
}

const OK: u8 = 0;
const UNRESOLVED: u8 = 1;
const INVALID: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (mut report, code) = run(&cli);
    if cli.json {
        print!("{}", report.to_json());
    } else {
        report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
        print!("{}", report.human());
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> (Report, u8) {
    match &cli.command {
        Command::Classify { model, f2, f6 } => run_classify(cli.seed, *model, f2.as_deref(), f6),
        Command::Germ { f, at } => run_germ(cli.seed, f, at),
        Command::Kulikov {
            action: KulikovAction::Check { file },
        } => run_kulikov_check(cli.seed, file),
        Command::Corpus {
            action: CorpusAction::Run { filter, dir },
        } => run_corpus(cli.seed, filter.as_deref(), dir),
    }
}

fn run_classify(seed: u64, model: Model, f2: Option<&str>, f6: &str) -> (Report, u8) {
    let mut report = Report::new("classify", seed);
    report.input.model = Some(model.name().to_string());
    let fiber = match model {
        Model::Hyperelliptic => {
            if f2.is_some() {
                report
                    .errors
                    .push("the hyperelliptic model takes no --f2".to_string());
                return (report, INVALID);
            }
            let f6 = match parser::parse_poly(f6, &VarSet::p2()) {
                Ok(poly) => poly,
                Err(error) => {
                    report.errors.push(format!("f6: {}", error));
                    return (report, INVALID);
                }
            };
            report.input.f6 = Some(f6.to_string());
            FiberModel::Hyperelliptic { f6 }
        }
        Model::Unigonal => {
            let Some(f2) = f2 else {
                report
                    .errors
                    .push("the unigonal model needs an --f2".to_string());
                return (report, INVALID);
            };
            let f2 = match parser::parse_poly(f2, &VarSet::p2()) {
                Ok(poly) => poly,
                Err(error) => {
                    report.errors.push(format!("f2: {}", error));
                    return (report, INVALID);
                }
            };
            let f6 = match parser::parse_poly(f6, &VarSet::p1112()) {
                Ok(poly) => poly,
                Err(error) => {
                    report.errors.push(format!("f6: {}", error));
                    return (report, INVALID);
                }
            };
            report.input.f2 = Some(f2.to_string());
            report.input.f6 = Some(f6.to_string());
            FiberModel::Unigonal { f2, f6 }
        }
    };
    match classify(&fiber) {
        Ok(classification) => {
            let code = if classification.row == Row::Unclassified {
                UNRESOLVED
            } else {
                OK
            };
            report.classification = Some(report::classification_section(&classification));
            (report, code)
        }
        Err(error) => {
            report.errors.push(error.to_string());
            (report, INVALID)
        }
    }
}

fn run_germ(seed: u64, f: &str, at: &str) -> (Report, u8) {
    let mut report = Report::new("germ", seed);
    let f = match parser::parse_poly(f, &VarSet::germ2()) {
        Ok(poly) => poly,
        Err(error) => {
            report.errors.push(format!("f: {}", error));
            return (report, INVALID);
        }
    };
    let coords = match parser::parse_point(at) {
        Ok(coords) => coords,
        Err(error) => {
            report.errors.push(format!("at: {}", error));
            return (report, INVALID);
        }
    };
    if coords.len() != 2 {
        report
            .errors
            .push("the point needs exactly two coordinates".to_string());
        return (report, INVALID);
    }
    report.input.f = Some(f.to_string());
    report.input.at = Some(format!("{},{}", coords[0], coords[1]));
    let point: Vec<Coeff> = coords.into_iter().map(Coeff::Rat).collect();
    if !f.eval(&point).is_zero() {
        report
            .errors
            .push("the point does not lie on the curve".to_string());
        return (report, INVALID);
    }
    let germ = germ_report_at(&f, &point);
    let code = if germ.class.is_unclassified() {
        UNRESOLVED
    } else {
        OK
    };
    report.germ = Some(report::germ_section(&germ));
    (report, code)
}

fn run_kulikov_check(seed: u64, file: &PathBuf) -> (Report, u8) {
    let mut report = Report::new("kulikov check", seed);
    report.input.config = Some(file.display().to_string());
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(error) => {
            report
                .errors
                .push(format!("{}: {}", file.display(), error));
            return (report, INVALID);
        }
    };
    let config: KulikovConfig = match serde_json::from_str(&text) {
        Ok(config) => config,
        Err(error) => {
            report
                .errors
                .push(format!("{}: {}", file.display(), error));
            return (report, INVALID);
        }
    };
    if let Err(error) = config.validate() {
        report.errors.push(error.to_string());
        return (report, INVALID);
    }
    let section = report::kulikov_section(&config);
    let code = if section.valid { OK } else { UNRESOLVED };
    report.kulikov = Some(section);
    (report, code)
}

fn run_corpus(seed: u64, filter: Option<&str>, dir: &PathBuf) -> (Report, u8) {
    let mut report = Report::new("corpus run", seed);
    report.input.filter = filter.map(str::to_string);
    match corpus::run_corpus(dir, filter) {
        Ok(section) => {
            let code = if section.passed { OK } else { UNRESOLVED };
            report.corpus = Some(section);
            (report, code)
        }
        Err(error) => {
            report.errors.push(error.to_string());
            (report, INVALID)
        }
    }
}
