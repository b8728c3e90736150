//! Benchmarks along the classification pipeline: one fibre per model
//! kind, the germ machinery on its own, the square-part splitter and the
//! configuration checker.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use k3fibre_cli::parser::parse_poly;
use k3fibre_core::gcd::square_part_decompose;
use k3fibre_core::germ::germ_report;
use k3fibre_core::{check_all, classify, FiberModel, KulikovConfig, MultiPoly, VarSet};

fn hyperelliptic(name: &str) -> FiberModel {
    FiberModel::Hyperelliptic {
        f6: parse_poly(name, &VarSet::p2()).expect("fixture parses"),
    }
}

fn unigonal(f2: &str, f6: &str) -> FiberModel {
    FiberModel::Unigonal {
        f2: parse_poly(f2, &VarSet::p2()).expect("fixture parses"),
        f6: parse_poly(f6, &VarSet::p1112()).expect("fixture parses"),
    }
}

fn classify_models(c: &mut Criterion) {
    let smooth = hyperelliptic("x1^6 + x2^6 + x3^6");
    let double_conic = hyperelliptic("(x1*x3 - x2^2)^2*(x1^2 + x2^2 - x3^2)");
    let wide_cusp = unigonal(
        "x1*x3 - x2^2",
        "y^3 + x1*x3*y^2 + x1^2*x2*x3^3 + x3^6",
    );
    let vertex = unigonal("x1*x2", "y^3 - 3*y*x3^4 + 2*x3^6");
    c.bench_function("classify smooth sextic", |b| {
        b.iter(|| classify(black_box(&smooth)))
    });
    c.bench_function("classify double conic sextic", |b| {
        b.iter(|| classify(black_box(&double_conic)))
    });
    c.bench_function("classify unigonal wide cusp", |b| {
        b.iter(|| classify(black_box(&wide_cusp)))
    });
    c.bench_function("classify unigonal vertex split", |b| {
        b.iter(|| classify(black_box(&vertex)))
    });
}

fn germ_reports(c: &mut Criterion) {
    let vars = VarSet::germ2();
    let triple_tangent = parse_poly("y*(y - x^2)*(y + x^2)", &vars).unwrap();
    let high_milnor = parse_poly("x^5 + x^2*y^3 + y^6", &vars).unwrap();
    c.bench_function("germ report, triple tangent", |b| {
        b.iter(|| germ_report(black_box(&triple_tangent)))
    });
    c.bench_function("germ report, dense degree six", |b| {
        b.iter(|| germ_report(black_box(&high_milnor)))
    });
}

fn square_parts(c: &mut Criterion) {
    let f = parse_poly(
        "(x1^3 + x2^3 + x3^3)^2",
        &VarSet::p2(),
    )
    .unwrap();
    let mixed: MultiPoly = parse_poly(
        "(x1*x3 - x2^2)^2*(x1^2 + x2^2 - x3^2)",
        &VarSet::p2(),
    )
    .unwrap();
    c.bench_function("square part of a double cubic", |b| {
        b.iter(|| square_part_decompose(black_box(&f)))
    });
    c.bench_function("square part of a double conic times conic", |b| {
        b.iter(|| square_part_decompose(black_box(&mixed)))
    });
}

fn kulikov_checks(c: &mut Criterion) {
    let text = std::fs::read_to_string(
        concat!(env!("CARGO_MANIFEST_DIR"), "/../../kulikov/tetrahedron.json"),
    )
    .expect("bundled configuration");
    let config: KulikovConfig = serde_json::from_str(&text).unwrap();
    config.validate().unwrap();
    c.bench_function("check tetrahedron configuration", |b| {
        b.iter(|| check_all(black_box(&config)))
    });
}

criterion_group!(
    benches,
    classify_models,
    germ_reports,
    square_parts,
    kulikov_checks
);
criterion_main!(benches);
