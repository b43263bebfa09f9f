//! Python bindings: a thin JSON-string API over the exact plane-curve
//! toolkit. Every function takes and returns JSON text so the Python side
//! needs no custom types.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

use severi_core::analysis::{analyze, AnalysisMode};
use severi_core::brill_noether::{mu_map_of_analysis, mu_rank_after_delete, SingularityData};
use severi_core::constructions::{
    quintic_3cusps, tricuspidal_quartic, zariski_sextic_default,
};
use severi_core::io::{
    analysis_json, census_json, deletion_json, mu_json, normality_json, params_json,
    classification_json, CurveFile,
};
use severi_core::normality::is_geometrically_t_normal;
use severi_core::{Field, ProjPoint};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load(curve_json: &str, ext: usize) -> PyResult<severi_core::analysis::CurveAnalysis> {
    let file = CurveFile::from_json_str(curve_json).map_err(err)?;
    let form = file.form().map_err(err)?;
    let mode = match file.declared_points().map_err(err)? {
        Some(points) => AnalysisMode::Declared {
            points,
            asserted_complete: true,
        },
        None => AnalysisMode::Search { max_ext: ext },
    };
    analyze(&form, mode).map_err(err)
}

/// Classify the singularities of a curve file (JSON text) and report
/// (k, d, g) with the full inventory.
#[pyfunction]
#[pyo3(signature = (curve_json, ext = 2))]
fn analyze_curve(curve_json: &str, ext: usize) -> PyResult<String> {
    let a = load(curve_json, ext)?;
    Ok(analysis_json(&a).to_string())
}

/// Decide geometric t-normality by interpolation rank.
#[pyfunction]
#[pyo3(signature = (curve_json, t, ext = 2))]
fn normality(curve_json: &str, t: usize, ext: usize) -> PyResult<String> {
    let a = load(curve_json, ext)?;
    let r = is_geometrically_t_normal(&a, t).map_err(err)?;
    Ok(normality_json(&r).to_string())
}

/// Rank and kernel of the multiplication map on the adjoint systems,
/// optionally after deleting one singular point.
#[pyfunction]
#[pyo3(signature = (curve_json, delete_point = None, ext = 2))]
fn mu(curve_json: &str, delete_point: Option<usize>, ext: usize) -> PyResult<String> {
    let a = load(curve_json, ext)?;
    let field = a.field().clone();
    let v = match delete_point {
        None => mu_json(&field, &mu_map_of_analysis(&a).map_err(err)?),
        Some(i) => {
            let data = SingularityData::from_analysis(&a);
            deletion_json(&field, &mu_rank_after_delete(&data, i).map_err(err)?)
        }
    };
    Ok(v.to_string())
}

/// Family numerology and classification flags for (n, k, d).
#[pyfunction]
fn params(n: u64, k: u64, d: u64) -> PyResult<String> {
    let p = severi_core::numerology::family_params(n, k, d).map_err(err)?;
    let v = severi_core::numerology::classify_family(n, k, d).map_err(err)?;
    let mut out = params_json(&p);
    out["classification"] = classification_json(&v);
    Ok(out.to_string())
}

/// Classification table over inclusive ranges of (n, k) and optionally d.
#[pyfunction]
#[pyo3(signature = (n_lo, n_hi, k_lo, k_hi, d_lo = None, d_hi = None))]
fn census(
    n_lo: u64,
    n_hi: u64,
    k_lo: u64,
    k_hi: u64,
    d_lo: Option<u64>,
    d_hi: Option<u64>,
) -> PyResult<String> {
    let d_range = match (d_lo, d_hi) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err(PyValueError::new_err("give both d_lo and d_hi or neither")),
    };
    let rows = severi_core::numerology::census((n_lo, n_hi), (k_lo, k_hi), d_range).map_err(err)?;
    Ok(census_json(&rows))
}

/// Build a gallery curve; returns {"curve_file": ..., "analysis": ...}.
#[pyfunction]
#[pyo3(signature = (recipe, seed = 7, p = 31))]
fn construct(recipe: &str, seed: u64, p: u64) -> PyResult<String> {
    let field = Field::prime(p).map_err(err)?;
    let analysis = match recipe {
        "tricuspidal-quartic" => tricuspidal_quartic(&field).map_err(err)?,
        "zariski-sextic" => zariski_sextic_default(&field, seed).map_err(err)?,
        "quintic-3cusps" => quintic_3cusps(&field, seed).map_err(err)?.analysis,
        "four-node-sextic" => {
            let nodes = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
                .iter()
                .map(|c| ProjPoint::from_i64(&field, *c))
                .collect::<severi_core::Result<Vec<_>>>()
                .map_err(err)?;
            severi_core::constructions::curve_with_prescribed_singularities(
                &field, 6, &nodes, &[], seed,
            )
            .map_err(err)?
            .analysis
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown recipe {other:?}"
            )))
        }
    };
    let file = CurveFile::from_analysis(&analysis);
    let out = json!({
        "curve_file": serde_json::to_value(&file).map_err(err)?,
        "analysis": analysis_json(&analysis),
    });
    Ok(out.to_string())
}

/// Run the verification suite; returns a JSON list of per-item results.
#[pyfunction]
#[pyo3(signature = (fast = true))]
fn verify_paper(fast: bool) -> PyResult<String> {
    let suite = severi_core::verify::verify_all(fast);
    let items: Vec<_> = suite
        .items
        .iter()
        .map(|i| {
            json!({
                "id": i.id,
                "title": i.title,
                "citation": i.citation,
                "passed": i.passed,
                "skipped": i.skipped,
                "detail": i.detail,
                "elapsed_ms": i.elapsed_ms,
            })
        })
        .collect();
    Ok(json!({"all_passed": suite.all_passed, "items": items}).to_string())
}

#[pymodule]
fn severi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(analyze_curve, m)?)?;
    m.add_function(wrap_pyfunction!(normality, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(params, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
