//! File formats and report payloads: the curve file (exact coefficients as
//! text), canonical JSON emission, and JSON views of every analysis result
//! with per-claim provenance annotations.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{Completeness, CurveAnalysis, Irreducibility, SingularPoint};
use crate::brill_noether::{DeletionReport, MuReport, Prop41Verdict, SyzygyCheck};
use crate::constructions::{CrossRatioReport, MarkedUnion, PrescribedResult};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::{monomial_basis, TernaryForm};
use crate::normality::{AdjointSystem, H0OmegaReport, NormalityBranch, NormalityReport};
use crate::numerology::{
    CensusRow, ClassificationVerdict, DegenerationStep, FamilyParams, Thm35Breakdown,
    Thm49Breakdown, Thm49Regime,
};
use crate::point::ProjPoint;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldDesc {
    Rationals,
    Prime {
        p: u64,
        #[serde(default = "default_ext")]
        ext: usize,
    },
}

fn default_ext() -> usize {
    1
}

impl FieldDesc {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldDesc::Rationals => Ok(Field::rationals()),
            FieldDesc::Prime { p, ext } => Field::prime_ext(*p, *ext),
        }
    }

    pub fn of_field(field: &Field) -> FieldDesc {
        match field.characteristic() {
            0 => FieldDesc::Rationals,
            p => FieldDesc::Prime {
                p,
                ext: field.ext_degree(),
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FieldDesc::Rationals => "Q".into(),
            FieldDesc::Prime { p, ext: 1 } => format!("F_{p}"),
            FieldDesc::Prime { p, ext } => format!("F_{p}^{ext}"),
        }
    }
}

/// Parse a coefficient: integers / fractions over the rationals, residues
/// over prime fields, bracketed digit lists "[c0,c1,...]" over extensions.
pub fn parse_field_elem(field: &Field, s: &str) -> Result<Elem> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let ctx = field
            .gf()
            .ok_or_else(|| Error::InvalidInput("bracket syntax needs a finite field".into()))?;
        let digits: Vec<u64> = inner
            .split(',')
            .map(|d| {
                d.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad digit {d:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if digits.is_empty() || digits.len() > ctx.ext() {
            return Err(Error::InvalidInput(format!(
                "expected at most {} base-p digits",
                ctx.ext()
            )));
        }
        let mut code = 0u64;
        for &d in digits.iter().rev() {
            if d >= ctx.p() {
                return Err(Error::InvalidInput(format!("digit {d} >= p")));
            }
            code = code * ctx.p() + d;
        }
        Ok(Elem::Gf(ctx.decode(code)))
    } else {
        field.parse_elem(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub exponents: [u32; 3],
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredSingularity {
    pub point: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub field: FieldDesc,
    pub degree: usize,
    pub coefficients: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_singularities: Option<Vec<DeclaredSingularity>>,
}

impl CurveFile {
    pub fn field(&self) -> Result<Field> {
        self.field.to_field()
    }

    pub fn form(&self) -> Result<TernaryForm> {
        let field = self.field()?;
        let mut seen: Vec<[u32; 3]> = Vec::new();
        let mut terms = Vec::new();
        for entry in &self.coefficients {
            let e = entry.exponents;
            if (e[0] + e[1] + e[2]) as usize != self.degree {
                return Err(Error::InvalidInput(format!(
                    "exponents {e:?} do not sum to the degree {}",
                    self.degree
                )));
            }
            if seen.contains(&e) {
                return Err(Error::InvalidInput(format!("duplicate exponents {e:?}")));
            }
            seen.push(e);
            terms.push((e, parse_field_elem(&field, &entry.value)?));
        }
        TernaryForm::from_terms(&field, self.degree, &terms)
    }

    pub fn declared_points(&self) -> Result<Option<Vec<ProjPoint>>> {
        let Some(entries) = &self.declared_singularities else {
            return Ok(None);
        };
        let field = self.field()?;
        let mut points = Vec::new();
        for entry in entries {
            let coords = [
                parse_field_elem(&field, &entry.point[0])?,
                parse_field_elem(&field, &entry.point[1])?,
                parse_field_elem(&field, &entry.point[2])?,
            ];
            points.push(ProjPoint::new(&field, coords)?);
        }
        Ok(Some(points))
    }

    /// Build a file from a form, omitting zero coefficients.
    pub fn from_form(form: &TernaryForm) -> CurveFile {
        let field = form.field();
        let coefficients = monomial_basis(form.degree())
            .into_iter()
            .zip(form.coeffs())
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e, c)| CoeffEntry {
                exponents: e,
                value: field.elem_to_string(c),
            })
            .collect();
        CurveFile {
            field: FieldDesc::of_field(field),
            degree: form.degree(),
            coefficients,
            declared_singularities: None,
        }
    }

    pub fn from_analysis(analysis: &CurveAnalysis) -> CurveFile {
        let field = analysis.field();
        let mut file = CurveFile::from_form(&analysis.curve);
        file.declared_singularities = Some(
            analysis
                .singular_points
                .iter()
                .map(|s| DeclaredSingularity {
                    point: s
                        .point
                        .coords()
                        .clone()
                        .map(|c| field.elem_to_string(&c)),
                    kind: Some(s.kind.as_str().to_string()),
                })
                .collect(),
        );
        file
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<CurveFile> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read_path(path: &std::path::Path) -> Result<CurveFile> {
        CurveFile::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_path(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json_string())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Assumed,
    Cited,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Annotation {
    pub claim: String,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl Annotation {
    pub fn computed(claim: impl Into<String>) -> Annotation {
        Annotation {
            claim: claim.into(),
            provenance: Provenance::Computed,
            citation: None,
        }
    }

    pub fn assumed(claim: impl Into<String>, citation: impl Into<String>) -> Annotation {
        Annotation {
            claim: claim.into(),
            provenance: Provenance::Assumed,
            citation: Some(citation.into()),
        }
    }

    pub fn cited(claim: impl Into<String>, citation: impl Into<String>) -> Annotation {
        Annotation {
            claim: claim.into(),
            provenance: Provenance::Cited,
            citation: Some(citation.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Value,
    pub results: Value,
    pub annotations: Vec<Annotation>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            field: None,
            seed: None,
            inputs: Value::Null,
            results: Value::Null,
            annotations: Vec::new(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn elem_json(field: &Field, e: &Elem) -> Value {
    Value::String(field.elem_to_string(e))
}

fn point_json(p: &ProjPoint) -> Value {
    let field = p.field();
    Value::Array(p.coords().iter().map(|c| elem_json(field, c)).collect())
}

fn singular_point_json(s: &SingularPoint) -> Value {
    json!({
        "point": point_json(&s.point),
        "kind": s.kind.as_str(),
        "tangents": s.tangents.iter().map(|t| t.to_string_pretty()).collect::<Vec<_>>(),
        "tangents_rational": s.tangents_rational,
        "delta": s.delta,
        "adjoint_multiplicity": s.adjoint_multiplicity,
        "quad_rank": s.quad_rank,
    })
}

pub fn completeness_json(c: &Completeness) -> Value {
    match c {
        Completeness::DeclaredVerified { asserted_complete } => json!({
            "mode": "declared_verified",
            "asserted_complete": asserted_complete,
        }),
        Completeness::ExhaustiveUpToExt(k) => json!({
            "mode": "exhaustive_search",
            "max_ext": k,
        }),
    }
}

pub fn irreducibility_str(i: &Irreducibility) -> &'static str {
    match i {
        Irreducibility::Certified => "certified",
        Irreducibility::ReducibleByConstruction => "reducible_by_construction",
        Irreducibility::Assumed => "assumed",
    }
}

pub fn analysis_json(a: &CurveAnalysis) -> Value {
    json!({
        "degree": a.degree(),
        "field": FieldDesc::of_field(a.field()).describe(),
        "equation": a.curve.to_string_pretty(),
        "cusps": a.k,
        "nodes": a.d,
        "genus": a.genus,
        "reduced": a.reduced,
        "completeness": completeness_json(&a.completeness),
        "irreducibility": irreducibility_str(&a.irreducibility),
        "singular_points": a.singular_points.iter().map(singular_point_json).collect::<Vec<_>>(),
    })
}

pub fn normality_json(r: &NormalityReport) -> Value {
    json!({
        "t": r.t,
        "interpolation_degree": r.m,
        "branch": match r.branch {
            NormalityBranch::NegativeDegree => "negative_degree",
            NormalityBranch::Interpolation => "interpolation",
        },
        "rank": r.rank,
        "independent": r.independent,
        "verdict": r.verdict,
    })
}

pub fn adjoint_json(s: &AdjointSystem) -> Value {
    json!({
        "degree": s.m,
        "dim": s.dim,
        "basis": s.basis.iter().map(|b| b.to_string_pretty()).collect::<Vec<_>>(),
    })
}

pub fn h0_omega_json(r: &H0OmegaReport) -> Value {
    json!({
        "t": r.t,
        "h0": r.h0,
        "closed_form": r.closed_form,
        "equality": r.equality,
    })
}

pub fn mu_json(field: &Field, r: &MuReport) -> Value {
    json!({
        "degree": r.n,
        "genus": r.g,
        "geometrically_linearly_normal": r.gln,
        "dim_w": r.dim_w,
        "dim_omega_minus_1": r.dim_omega_minus_1,
        "dim_omega": r.dim_omega,
        "domain_dim": r.domain_dim,
        "rank": r.rank,
        "ker_dim": r.ker_dim,
        "surjective": r.surjective,
        "injective": r.injective,
        "rho": r.rho,
        "kernel": r.kernel.iter()
            .map(|v| v.iter().map(|e| elem_json(field, e)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn deletion_json(field: &Field, r: &DeletionReport) -> Value {
    json!({
        "full": mu_json(field, &r.full),
        "deleted": mu_json(field, &r.deleted),
        "lemma_applicable": r.lemma_applicable,
        "rank_increment_holds": r.rank_increment_holds,
    })
}

pub fn prop41_json(v: &Prop41Verdict) -> Value {
    json!({
        "geometrically_linearly_normal": v.gln,
        "mu_surjective": v.mu_surjective,
        "expected_dim_assumed": v.expected_dim_assumed,
        "expected_moduli": v.expected_moduli,
    })
}

pub fn syzygy_json(field: &Field, s: &SyzygyCheck) -> Value {
    json!({
        "passed": s.passed,
        "ker_dim": s.ker_dim,
        "witness": s.witness.as_ref().map(|w| w.iter()
            .map(|v| v.iter().map(|e| elem_json(field, e)).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    })
}

pub fn params_json(p: &FamilyParams) -> Value {
    json!({
        "n": p.n,
        "k": p.k,
        "d": p.d,
        "curve_space_dim": p.cap_n,
        "genus": p.g,
        "delta": p.delta,
        "rho": p.rho,
        "expected_dim": p.expected_dim,
        "dim_mg": p.dim_mg,
        "expected_moduli": p.expected_moduli,
        "fibre_lower_bound": p.fibre_lower_bound,
    })
}

pub fn classification_json(v: &ClassificationVerdict) -> Value {
    json!({
        "flags": v.flags.iter().map(|f| json!({
            "flag": format!("{f:?}"),
            "citation": f.provenance(),
            "general_moduli": f.is_general_moduli(),
            "expected_moduli": f.is_expected_moduli(),
        })).collect::<Vec<_>>(),
        "annotations": v.annotations,
    })
}

pub fn thm35_json(b: &Thm35Breakdown) -> Value {
    json!({
        "t": b.t,
        "cond3": b.cond3,
        "cond4": b.cond4,
        "cond5": b.cond5,
        "cond6": b.cond6,
        "covered": b.covered,
        "satisfied": b.satisfied,
        "non_sharpness_note": b.non_sharpness_note,
    })
}

pub fn thm49_json(b: &Thm49Breakdown) -> Value {
    json!({
        "cond16": b.cond16,
        "regime": match b.regime {
            Thm49Regime::HighGenus => "high_genus",
            Thm49Regime::LowGenus => "low_genus",
        },
        "cusp_bound": b.cusp_bound,
        "satisfied": b.satisfied,
    })
}

pub fn degeneration_json(s: &DegenerationStep) -> Value {
    json!({
        "left": s.left,
        "right": s.right,
        "holds": s.holds,
        "nodes_after": s.nodes_after,
    })
}

pub fn census_row_json(row: &CensusRow) -> Value {
    json!({
        "params": params_json(&row.params),
        "classification": classification_json(&row.verdict),
    })
}

pub fn census_json(rows: &[CensusRow]) -> String {
    let v = Value::Array(rows.iter().map(census_row_json).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn row_flags(row: &CensusRow) -> String {
    row.verdict
        .flags
        .iter()
        .map(|f| format!("{f:?}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn opt_str(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(
        "n,k,d,genus,rho,expected_dim,dim_mg,expected_moduli,fibre_lower_bound,flags\n",
    );
    for row in rows {
        let p = &row.params;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},\"{}\"\n",
            p.n,
            p.k,
            p.d,
            p.g,
            p.rho,
            p.expected_dim,
            opt_str(p.dim_mg),
            opt_str(p.expected_moduli),
            p.fibre_lower_bound,
            row_flags(row)
        ));
    }
    out
}

pub fn census_markdown(rows: &[CensusRow]) -> String {
    let mut out = String::from(
        "| n | k | d | g | rho | expected_dim | dim_mg | expected_moduli | flags |\n\
         |---|---|---|---|-----|--------------|--------|-----------------|-------|\n",
    );
    for row in rows {
        let p = &row.params;
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            p.n,
            p.k,
            p.d,
            p.g,
            p.rho,
            p.expected_dim,
            opt_str(p.dim_mg),
            opt_str(p.expected_moduli),
            row_flags(row)
        ));
    }
    out
}

pub fn union_json(u: &MarkedUnion) -> Value {
    json!({
        "union_equation": u.union_form.to_string_pretty(),
        "components": u.components.iter().map(|c| c.to_string_pretty()).collect::<Vec<_>>(),
        "marked_points": u.marked_points.iter().map(point_json).collect::<Vec<_>>(),
        "degree_after": u.n_after,
        "cusps_after": u.k_after,
        "nodes_after": u.d_after,
        "criterion_value": u.criterion_value,
        "criterion_ok": u.criterion_ok,
    })
}

pub fn prescribed_json(r: &PrescribedResult) -> Value {
    json!({
        "solution_dim": r.solution_dim,
        "seed_used": r.seed_used,
        "analysis": analysis_json(&r.analysis),
    })
}

pub fn cross_ratio_json(field: &Field, r: &CrossRatioReport) -> Value {
    json!({
        "j1": elem_json(field, &r.j1),
        "j2": elem_json(field, &r.j2),
        "distinct": r.distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, AnalysisMode};

    fn tricuspidal_file() -> CurveFile {
        let f = Field::rationals();
        let c = TernaryForm::from_int_terms(
            &f,
            4,
            &[
                ([2, 2, 0], 1),
                ([0, 2, 2], 1),
                ([2, 0, 2], 1),
                ([2, 1, 1], -2),
                ([1, 2, 1], -2),
                ([1, 1, 2], -2),
            ],
        )
        .unwrap();
        CurveFile::from_form(&c)
    }

    #[test]
    fn round_trip_canonical() {
        let file = tricuspidal_file();
        let text = file.to_json_string();
        let reparsed = CurveFile::from_json_str(&text).unwrap();
        // canonical files re-serialize byte-identically
        assert_eq!(reparsed.to_json_string(), text);
        // and the parsed form matches the original
        assert_eq!(reparsed.form().unwrap(), file.form().unwrap());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"field":{"type":"rationals"},"degree":1,
            "coefficients":[{"exponents":[1,0,0],"value":"1"}],"surprise":3}"#;
        assert!(CurveFile::from_json_str(text).is_err());
    }

    #[test]
    fn exponent_sum_validated() {
        let text = r#"{"field":{"type":"rationals"},"degree":2,
            "coefficients":[{"exponents":[1,0,0],"value":"1"}]}"#;
        let f = CurveFile::from_json_str(text).unwrap();
        assert!(f.form().is_err());
    }

    #[test]
    fn fraction_and_residue_values() {
        let text = r#"{"field":{"type":"rationals"},"degree":1,
            "coefficients":[{"exponents":[1,0,0],"value":"2/3"},
                            {"exponents":[0,1,0],"value":"-5"}]}"#;
        let form = CurveFile::from_json_str(text).unwrap().form().unwrap();
        let f = Field::rationals();
        assert_eq!(*form.coeff(1, 0, 0), f.div(&f.from_i64(2), &f.from_i64(3)).unwrap());
        let text = r#"{"field":{"type":"prime","p":31},"degree":1,
            "coefficients":[{"exponents":[0,0,1],"value":"-1"}]}"#;
        let form = CurveFile::from_json_str(text).unwrap().form().unwrap();
        let f31 = Field::prime(31).unwrap();
        assert_eq!(*form.coeff(0, 0, 1), f31.from_i64(30));
        // extension-field digits
        let f = Field::prime_ext(5, 2).unwrap();
        let e = parse_field_elem(&f, "[2,3]").unwrap();
        assert_eq!(f.elem_to_string(&e), "[2,3]");
    }

    #[test]
    fn declared_points_and_analysis_round_trip() {
        let file = tricuspidal_file();
        let form = file.form().unwrap();
        let a = analyze(
            &form,
            AnalysisMode::Declared {
                points: vec![
                    ProjPoint::from_i64(&Field::rationals(), [1, 0, 0]).unwrap(),
                    ProjPoint::from_i64(&Field::rationals(), [0, 1, 0]).unwrap(),
                    ProjPoint::from_i64(&Field::rationals(), [0, 0, 1]).unwrap(),
                ],
                asserted_complete: true,
            },
        )
        .unwrap();
        let with_sings = CurveFile::from_analysis(&a);
        let text = with_sings.to_json_string();
        let back = CurveFile::from_json_str(&text).unwrap();
        let pts = back.declared_points().unwrap().unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(back.to_json_string(), text);
        // report payloads build and serialize
        let report = Report {
            command: "analyze".into(),
            field: Some("Q".into()),
            inputs: json!({"degree": 4}),
            results: analysis_json(&a),
            annotations: vec![Annotation::computed("k = 3")],
            ..Report::new("analyze")
        };
        let s = report.to_json_string();
        assert!(s.contains("\"cusps\": 3"));
    }

    #[test]
    fn census_emitters() {
        let rows = crate::numerology::census((6, 6), (6, 6), Some((0, 0))).unwrap();
        let j = census_json(&rows);
        assert!(j.contains("\"expected_moduli\": 7"));
        let c = census_csv(&rows);
        assert!(c.lines().count() == 2 && c.contains("6,6,0,4,4,15,9,7,"));
        let m = census_markdown(&rows);
        assert!(m.contains("| 6 | 6 | 0 | 4 | 4 | 15 | 9 | 7 |"));
    }
}
