//! Command-line front end: `verify`, `kernel`, `dims` and `decompose`.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cliffpoly::CliffPoly;
use crate::error::{Error, Result};
use crate::kernels::{self, KernelPoly, STAGE_NAMES};
use crate::spaces::{basis, fischer_decompose_euclidean, fischer_decompose_hermitian, Decomposition, EuclideanMode, Space};
use crate::suites::{self, Grid};

#[derive(Debug, Parser)]
#[command(name = "ck", version, about = "Exact Clifford kernels and their verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Zonal,
    Koornwinder,
    Monogenic,
    Hermitian,
    FischerEuclidean,
    FischerHermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Operational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Scalar,
    Clifford,
    Hermitian,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "kmax")]
        k_max: Option<usize>,
        #[arg(long = "pmax")]
        p_max: Option<usize>,
        #[arg(long = "qmax")]
        q_max: Option<usize>,
        #[arg(long = "degmax")]
        deg_max: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a reproducing kernel in the polynomial text format.
    Kernel {
        #[arg(value_enum)]
        kind: KernelKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Construction route for the monogenic and Hermitian kernels.
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Dump the four Dirac stages (Hermitian kernel only).
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimension of a polynomial space, optionally with its exact basis.
    Dims {
        #[arg(long)]
        space: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        elements: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Fischer decomposition of a polynomial given inline or in a file.
    Decompose {
        /// Polynomial in the text format.
        #[arg(long, conflicts_with = "file")]
        poly: Option<String>,
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Scalar)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parses `args` (program name first) and runs the command, writing results to `out`
/// and diagnostics to `err`. Returns the exit code: 0 on success, 1 on failing checks, 2 on errors.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::range(format!("output failed: {e}"))
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify { suite, m, n, k_max, p_max, q_max, deg_max, seed, timing, format } => {
            let grid = Grid { m: *m, n: *n, k_max: *k_max, p_max: *p_max, q_max: *q_max, deg_max: *deg_max, seed: *seed };
            verify(suite, &grid, *timing, *format, out)
        }
        Command::Kernel { kind, k, m, p, q, n, method, trace, format } => {
            kernel(*kind, KernelArgs { k: *k, m: *m, p: *p, q: *q, n: *n }, *method, *trace, *format, out)?;
            Ok(0)
        }
        Command::Dims { space, m, n, k, p, q, j, elements, format } => {
            let s = Space::from_name(space, *m, *n, *k, *p, *q, *j)?;
            dims(s, *elements, *format, out)?;
            Ok(0)
        }
        Command::Decompose { poly, file, m, n, j, mode, format } => {
            let src = match (poly, file) {
                (Some(p), _) => p.clone(),
                (None, Some(f)) => std::fs::read_to_string(f).map_err(|e| Error::range(format!("cannot read {}: {e}", f.display())))?,
                (None, None) => return Err(Error::range("decompose needs --poly or --file")),
            };
            decompose(&src, *m, *n, *j, *mode, *format, out)?;
            Ok(0)
        }
    }
}

fn verify(suite: &str, grid: &Grid, timing: bool, format: Format, out: &mut dyn Write) -> Result<i32> {
    let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite] };
    grid.validate()?;
    let mut reports = Vec::new();
    for name in names {
        let start = Instant::now();
        let mut r = suites::run(name, grid)?.remove(0);
        if timing {
            r.timing_ms = Some(start.elapsed().as_millis());
        }
        if format == Format::Text {
            write!(out, "{}", r.to_text()).map_err(io)?;
            writeln!(out).map_err(io)?;
        }
        reports.push(r);
    }
    if format == Format::Json {
        let text = serde_json::to_string_pretty(&reports).expect("report serialisation");
        writeln!(out, "{text}").map_err(io)?;
    }
    let failing: usize = reports.iter().map(|r| r.failures()).sum();
    if format == Format::Text {
        writeln!(out, "total: {} suites, {failing} failing checks", reports.len()).map_err(io)?;
    }
    Ok(if failing == 0 { 0 } else { 1 })
}

struct KernelArgs {
    k: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
    n: Option<usize>,
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    v.ok_or_else(|| Error::range(format!("kernel {kind} needs --{flag}")))
}

fn kernel(kind: KernelKind, a: KernelArgs, method: Method, trace: bool, format: Format, out: &mut dyn Write) -> Result<()> {
    let name = kind.to_possible_value().expect("value").get_name().to_string();
    let km = || -> Result<(usize, usize)> { Ok((need(a.k, "k", &name)?, need(a.m, "m", &name)?)) };
    let pqn = || -> Result<(usize, usize, usize)> { Ok((need(a.p, "p", &name)?, need(a.q, "q", &name)?, need(a.n, "n", &name)?)) };
    if trace && kind != KernelKind::Hermitian {
        return Err(Error::range("--trace is only available for the hermitian kernel"));
    }
    let kp: KernelPoly = match kind {
        KernelKind::Zonal => {
            let (k, m) = km()?;
            kernels::zonal_harmonic(k, m)?
        }
        KernelKind::FischerEuclidean => {
            let (k, m) = km()?;
            kernels::fischer_kernel_euclidean(k, m)?
        }
        KernelKind::Monogenic => {
            let (k, m) = km()?;
            match method {
                Method::Closed => kernels::monogenic_kernel_closed(k, m)?,
                Method::Operational => kernels::monogenic_kernel_operational(k, m)?,
            }
        }
        KernelKind::Koornwinder => {
            let (p, q, n) = pqn()?;
            kernels::koornwinder_kernel(p, q, n)?
        }
        KernelKind::FischerHermitian => {
            let (p, q, n) = pqn()?;
            kernels::fischer_kernel_hermitian(p, q, n)?
        }
        KernelKind::Hermitian => {
            let (p, q, n) = pqn()?;
            match method {
                Method::Closed => kernels::hermitian_kernel_closed(p, q, n)?,
                Method::Operational => kernels::hermitian_kernel_operational(p, q, n)?,
            }
        }
    };
    let stages = if trace {
        let (p, q, n) = pqn()?;
        Some(kernels::hermitian_trace(p, q, n)?)
    } else {
        None
    };
    match format {
        Format::Text => {
            if let Some(t) = &stages {
                for (i, (label, s)) in STAGE_NAMES.iter().zip(&t.stages).enumerate() {
                    writeln!(out, "# stage {} ({label}): {}", i + 1, s.render()).map_err(io)?;
                }
            }
            writeln!(out, "{}", kp.poly.render()).map_err(io)?;
        }
        Format::Json => {
            let mut v = kp.to_json_value();
            if let Some(t) = &stages {
                let dumps: Vec<serde_json::Value> = STAGE_NAMES
                    .iter()
                    .zip(&t.stages)
                    .enumerate()
                    .map(|(i, (label, s))| serde_json::json!({"stage": i + 1, "name": label, "terms": s.to_json_value()["terms"].clone()}))
                    .collect();
                v["trace"] = serde_json::Value::Array(dumps);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("kernel serialisation")).map_err(io)?;
        }
    }
    Ok(())
}

fn dims(space: Space, elements: bool, format: Format, out: &mut dyn Write) -> Result<()> {
    let b = basis(space)?;
    match format {
        Format::Text => {
            writeln!(out, "{}", b.dim()).map_err(io)?;
            if elements {
                for e in &b.elements {
                    writeln!(out, "{}", e.render()).map_err(io)?;
                }
            }
        }
        Format::Json => {
            let params: serde_json::Map<String, serde_json::Value> = space.params().into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
            let mut v = serde_json::json!({"space": space.name(), "params": params, "dim": b.dim()});
            if elements {
                v["elements"] = b.elements.iter().map(|e| serde_json::Value::String(e.render())).collect();
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("dims serialisation")).map_err(io)?;
        }
    }
    Ok(())
}

fn decompose(src: &str, m: Option<usize>, n: Option<usize>, j: Option<usize>, mode: Mode, format: Format, out: &mut dyn Write) -> Result<()> {
    let d: Decomposition = match mode {
        Mode::Scalar | Mode::Clifford => {
            let m = m.ok_or_else(|| Error::range("decompose needs --m"))?;
            let p = CliffPoly::parse(src, m)?;
            let em = if mode == Mode::Scalar { EuclideanMode::Scalar } else { EuclideanMode::Clifford };
            fischer_decompose_euclidean(&p, em)?
        }
        Mode::Hermitian => {
            let n = n.ok_or_else(|| Error::range("hermitian decompose needs --n"))?;
            let j = j.ok_or_else(|| Error::range("hermitian decompose needs --j"))?;
            let h = CliffPoly::parse(src, 2 * n)?;
            let (p, q) = h.bidegree(crate::cliffpoly::Slot::X)?.ok_or(Error::NonHomogeneous)?;
            fischer_decompose_hermitian(&h, n, j, p, q)?
        }
    };
    match format {
        Format::Text => {
            for c in &d.components {
                writeln!(out, "{}: {}", c.label, c.component.render()).map_err(io)?;
                writeln!(out, "  inner: {}", c.inner.render()).map_err(io)?;
            }
            for note in &d.notes {
                writeln!(out, "note: {note}").map_err(io)?;
            }
        }
        Format::Json => {
            let comps: Vec<serde_json::Value> = d
                .components
                .iter()
                .map(|c| serde_json::json!({"label": c.label, "component": c.component.render(), "inner": c.inner.render()}))
                .collect();
            let v = serde_json::json!({"components": comps, "notes": d.notes});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("decomposition serialisation")).map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_from(std::iter::once("ck").chain(args.iter().copied()), &mut out, &mut err);
        out.extend(err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn dims_oracles() {
        assert_eq!(run(&["dims", "--space", "H", "--m", "3", "--k", "2"]), (0, "5\n".into()));
        assert_eq!(run(&["dims", "--space", "P", "--m", "4", "--k", "3"]), (0, "20\n".into()));
        let (code, text) = run(&["dims", "--space", "Hpq", "--n", "2", "--p", "1", "--q", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 3);
        assert_eq!(v["space"], "Hpq");
    }

    #[test]
    fn kernel_oracles_and_round_trip() {
        let (code, text) = run(&["kernel", "zonal", "--k", "1", "--m", "3"]);
        assert_eq!(code, 0);
        let parsed = CliffPoly::parse(text.trim(), 3).unwrap();
        assert_eq!(parsed, kernels::zonal_harmonic(1, 3).unwrap().poly);
        assert_eq!(run(&["kernel", "monogenic", "--k", "0", "--m", "3"]), (0, "1\n".into()));
        let (code, text) = run(&["kernel", "hermitian", "--p", "1", "--q", "0", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(CliffPoly::parse(text.trim(), 4).unwrap(), kernels::hermitian_kernel_closed(1, 0, 2).unwrap().poly);
    }

    #[test]
    fn kernel_json_and_trace() {
        let (code, text) = run(&["kernel", "hermitian", "--p", "2", "--q", "1", "--n", "2", "--format", "json", "--trace"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["bidegree"], serde_json::json!([2, 1]));
        assert!(v["terms"].as_array().unwrap().iter().all(|t| t["blade"].is_string() && t["monomial"].is_string() && t["coef"].is_string()));
        assert_eq!(v["trace"].as_array().unwrap().len(), 4);
        let (code, _) = run(&["kernel", "zonal", "--k", "1", "--m", "3", "--trace"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn decompose_x1_squared() {
        let (code, text) = run(&["decompose", "--poly", "x1^2", "--m", "3"]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("1/3"), "{text}");
        let (code, text) = run(&["decompose", "--poly", "x1^2 + (", "--m", "3"]);
        assert_eq!(code, 2);
        assert!(text.contains("line 1, column"), "{text}");
    }

    #[test]
    fn verify_exit_codes() {
        let (code, text) = run(&["verify", "--suite", "orthopoly", "--kmax", "3", "--pmax", "3"]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(run(&["verify", "--suite", "bogus"]).0, 2);
        assert_eq!(run(&["verify", "--suite", "algebra", "--n", "9"]).0, 2);
    }

    #[test]
    fn verify_is_deterministic() {
        let args = ["verify", "--suite", "decompositions", "--m", "2", "--n", "1", "--kmax", "2", "--pmax", "1", "--format", "json"];
        assert_eq!(run(&args), run(&args));
    }
}
