//! One line per acceptance criterion: required checks present and passing with exact-zero
//! residuals, within the stated runtime.

use std::io::Write;
use std::time::{Duration, Instant};

use cliffkern::report::Report;
use cliffkern::suites::{self, Grid};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: &'static str,
    required: &'static [&'static str],
    limit: Duration,
}

fn line(text: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{text}");
}

fn evaluate(c: &Criterion) -> Result<String, String> {
    let start = Instant::now();
    let reports: Vec<Report> = suites::run(c.suite, &Grid::default()).map_err(|e| format!("suite error: {e}"))?;
    let elapsed = start.elapsed();
    let report = &reports[0];
    let missing: Vec<&str> = c.required.iter().copied().filter(|id| !report.checks.iter().any(|k| k.identity == *id)).collect();
    let failing: Vec<String> = report
        .checks
        .iter()
        .filter(|k| !k.passed())
        .map(|k| format!("{} ({} nonzero residuals of {} cases)", k.identity, k.failed, k.cases))
        .collect();
    let summary = format!(
        "{} checks, {} cases, elapsed {:.2}s (limit {}s)",
        report.checks.len(),
        report.total_cases(),
        elapsed.as_secs_f64(),
        c.limit.as_secs()
    );
    let mut problems = Vec::new();
    if !missing.is_empty() {
        problems.push(format!("missing checks: {}", missing.join(", ")));
    }
    if !failing.is_empty() {
        problems.push(format!("failing: {}", failing.join("; ")));
    }
    if elapsed > c.limit {
        problems.push("runtime limit exceeded".into());
    }
    if problems.is_empty() {
        Ok(format!("{summary}, all residuals exactly zero"))
    } else {
        Err(format!("{summary}; {}", problems.join("; ")))
    }
}

fn run(c: Criterion) {
    match evaluate(&c) {
        Ok(msg) => line(&format!("criterion {} [PASS] {}: {msg}", c.number, c.title)),
        Err(msg) => {
            line(&format!("criterion {} [FAIL] {}: {msg}", c.number, c.title));
            panic!("criterion {} failed: {msg}", c.number);
        }
    }
}

#[test]
fn criterion_1_orthogonal_polynomials() {
    run(Criterion {
        number: 1,
        title: "orthogonal polynomials",
        suite: "orthopoly",
        required: &["jacobi1", "jacobi2", "jacobi3", "jacobi4", "jacobi5", "jacobi6", "jacobi7", "jacobi8", "GegenRec", "Gegen1", "Gegen2", "Gegen3", "Gegen4"],
        limit: Duration::from_secs(5),
    });
}

#[test]
fn criterion_2_algebra() {
    run(Criterion {
        number: 2,
        title: "Clifford and Witt algebra",
        suite: "algebra",
        required: &["clifford-generators", "clifford-associativity", "grassmann", "witt", "beta-symmetry", "comm1", "betafactor", "spinor-beta-eigenvalue"],
        limit: Duration::from_secs(10),
    });
}

#[test]
fn criterion_3_operators() {
    run(Criterion {
        number: 3,
        title: "operator identities",
        suite: "operators",
        required: &["osp12", "sl12a", "sl12b", "laplace-dirac-square", "laplace-wirtinger", "euler-split"],
        limit: Duration::from_secs(30),
    });
}

#[test]
fn criterion_4_duality() {
    run(Criterion {
        number: 4,
        title: "duality and proportionality",
        suite: "duality",
        required: &[
            "duality-euclidean",
            "duality-z-left",
            "duality-z-right",
            "duality-zdag-left",
            "duality-zdag-right",
            "fischer-sphere-proportionality",
            "fischer-sphere-cross-degree",
        ],
        limit: Duration::from_secs(60),
    });
}

#[test]
fn criterion_5_euclidean_kernels() {
    run(Criterion {
        number: 5,
        title: "Euclidean reproducing kernels",
        suite: "kernels-euclidean",
        required: &["fischer-kernel-euclidean", "zonal-reproduction", "rep1", "rep2", "monogenic-operational"],
        limit: Duration::from_secs(180),
    });
}

#[test]
fn criterion_6_hermitian_kernels() {
    run(Criterion {
        number: 6,
        title: "Hermitian reproducing kernels",
        suite: "kernels-hermitian",
        required: &[
            "fischer-kernel-hermitian",
            "koornwinder-reproduction",
            "dirac-stage1",
            "dirac-stage2",
            "dirac-stage3",
            "dirac4",
            "dirac4-q0",
            "dirac4-diagonal",
            "corollary-symm",
            "rep3",
            "rep4",
            "rep5",
            "rep6",
        ],
        limit: Duration::from_secs(600),
    });
}

#[test]
fn criterion_7_normalization() {
    run(Criterion {
        number: 7,
        title: "beta-valued normalization",
        suite: "normalization",
        required: &["norm", "L1", "L2", "L3"],
        limit: Duration::from_secs(5),
    });
}

#[test]
fn criterion_8_decompositions() {
    run(Criterion {
        number: 8,
        title: "Fischer decompositions",
        suite: "decompositions",
        required: &[
            "fischer-scalar-reassembly",
            "fischer-scalar-harmonic",
            "fischer2-reassembly",
            "fischer2-monogenic",
            "hermitian-fischer-reassembly",
            "dim-fischer-scalar",
            "dim-fischer-clifford",
            "dim-hermitian-fischer",
        ],
        limit: Duration::from_secs(120),
    });
}
