//! Python bindings: kernels, space dimensions and bases, decompositions and verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cliffkern::cliffpoly::{CliffPoly, Slot};
use cliffkern::kernels::{self, KernelPoly};
use cliffkern::spaces::{self, EuclideanMode, Space};
use cliffkern::suites::{self, Grid};

fn err(e: cliffkern::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn need(v: Option<usize>, name: &str) -> PyResult<usize> {
    v.ok_or_else(|| PyValueError::new_err(format!("missing parameter `{name}`")))
}

fn build_kernel(kind: &str, k: Option<usize>, m: Option<usize>, p: Option<usize>, q: Option<usize>, n: Option<usize>, method: &str) -> PyResult<KernelPoly> {
    let operational = match method {
        "closed" => false,
        "operational" => true,
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    let r = match kind {
        "zonal" => kernels::zonal_harmonic(need(k, "k")?, need(m, "m")?),
        "fischer-euclidean" => kernels::fischer_kernel_euclidean(need(k, "k")?, need(m, "m")?),
        "monogenic" if operational => kernels::monogenic_kernel_operational(need(k, "k")?, need(m, "m")?),
        "monogenic" => kernels::monogenic_kernel_closed(need(k, "k")?, need(m, "m")?),
        "koornwinder" => kernels::koornwinder_kernel(need(p, "p")?, need(q, "q")?, need(n, "n")?),
        "fischer-hermitian" => kernels::fischer_kernel_hermitian(need(p, "p")?, need(q, "q")?, need(n, "n")?),
        "hermitian" if operational => kernels::hermitian_kernel_operational(need(p, "p")?, need(q, "q")?, need(n, "n")?),
        "hermitian" => kernels::hermitian_kernel_closed(need(p, "p")?, need(q, "q")?, need(n, "n")?),
        other => return Err(PyValueError::new_err(format!("unknown kernel kind `{other}`"))),
    };
    r.map_err(err)
}

/// Kernel polynomial in the text format, or as JSON with `json=True`.
#[pyfunction]
#[pyo3(signature = (kind, k=None, m=None, p=None, q=None, n=None, method="closed", json=false))]
#[allow(clippy::too_many_arguments)]
fn kernel(kind: &str, k: Option<usize>, m: Option<usize>, p: Option<usize>, q: Option<usize>, n: Option<usize>, method: &str, json: bool) -> PyResult<String> {
    let kp = build_kernel(kind, k, m, p, q, n, method)?;
    Ok(if json { kp.to_json_value().to_string() } else { kp.poly.render() })
}

/// The four Dirac stages of the operational Hermitian kernel, rendered.
#[pyfunction]
fn hermitian_trace(p: usize, q: usize, n: usize) -> PyResult<Vec<String>> {
    let t = kernels::hermitian_trace(p, q, n).map_err(err)?;
    Ok(t.stages.iter().map(|s| s.render()).collect())
}

fn space(name: &str, m: Option<usize>, n: Option<usize>, k: Option<usize>, p: Option<usize>, q: Option<usize>, j: Option<usize>) -> PyResult<Space> {
    Space::from_name(name, m, n, k, p, q, j).map_err(err)
}

/// Dimension of a polynomial space by exact rank.
#[pyfunction]
#[pyo3(signature = (name, m=None, n=None, k=None, p=None, q=None, j=None))]
fn dim(name: &str, m: Option<usize>, n: Option<usize>, k: Option<usize>, p: Option<usize>, q: Option<usize>, j: Option<usize>) -> PyResult<usize> {
    spaces::dim(space(name, m, n, k, p, q, j)?).map_err(err)
}

/// Exact basis of a polynomial space, rendered.
#[pyfunction]
#[pyo3(signature = (name, m=None, n=None, k=None, p=None, q=None, j=None))]
fn basis(name: &str, m: Option<usize>, n: Option<usize>, k: Option<usize>, p: Option<usize>, q: Option<usize>, j: Option<usize>) -> PyResult<Vec<String>> {
    let b = spaces::basis(space(name, m, n, k, p, q, j)?).map_err(err)?;
    Ok(b.elements.iter().map(|e| e.render()).collect())
}

/// Canonical rendering of a polynomial in `m` real (or `m/2` complex) variables.
#[pyfunction]
fn canonical(poly: &str, m: usize) -> PyResult<String> {
    Ok(CliffPoly::parse(poly, m).map_err(err)?.render())
}

/// Fischer decomposition as `(label, component, inner)` triples.
/// `mode` is `scalar` or `clifford` (needs `m`) or `hermitian` (needs `n` and `j`).
#[pyfunction]
#[pyo3(signature = (poly, mode="scalar", m=None, n=None, j=None))]
fn decompose(poly: &str, mode: &str, m: Option<usize>, n: Option<usize>, j: Option<usize>) -> PyResult<Vec<(String, String, String)>> {
    let d = match mode {
        "scalar" | "clifford" => {
            let p = CliffPoly::parse(poly, need(m, "m")?).map_err(err)?;
            let em = if mode == "scalar" { EuclideanMode::Scalar } else { EuclideanMode::Clifford };
            spaces::fischer_decompose_euclidean(&p, em).map_err(err)?
        }
        "hermitian" => {
            let n = need(n, "n")?;
            let h = CliffPoly::parse(poly, 2 * n).map_err(err)?;
            let (p, q) = h.bidegree(Slot::X).map_err(err)?.ok_or_else(|| PyValueError::new_err("polynomial is not bihomogeneous"))?;
            spaces::fischer_decompose_hermitian(&h, n, need(j, "j")?, p, q).map_err(err)?
        }
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    Ok(d.components.iter().map(|c| (c.label.clone(), c.component.render(), c.inner.render())).collect())
}

/// Runs a verification suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, m=None, n=None, k_max=None, p_max=None, q_max=None, deg_max=None, seed=None))]
#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    m: Option<usize>,
    n: Option<usize>,
    k_max: Option<usize>,
    p_max: Option<usize>,
    q_max: Option<usize>,
    deg_max: Option<usize>,
    seed: Option<u64>,
) -> PyResult<(bool, String)> {
    let grid = Grid { m, n, k_max, p_max, q_max, deg_max, seed };
    let reports = suites::run(suite, &grid).map_err(err)?;
    let passed = reports.iter().all(|r| r.passed());
    let json = format!("[{}]", reports.iter().map(|r| r.to_json()).collect::<Vec<_>>().join(","));
    Ok((passed, json))
}

#[pymodule]
fn pycliffkern(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_function(wrap_pyfunction!(kernel, module)?)?;
    module.add_function(wrap_pyfunction!(hermitian_trace, module)?)?;
    module.add_function(wrap_pyfunction!(dim, module)?)?;
    module.add_function(wrap_pyfunction!(basis, module)?)?;
    module.add_function(wrap_pyfunction!(canonical, module)?)?;
    module.add_function(wrap_pyfunction!(decompose, module)?)?;
    module.add_function(wrap_pyfunction!(verify, module)?)?;
    module.add("SUITES", suites::SUITES.to_vec())?;
    Ok(())
}
