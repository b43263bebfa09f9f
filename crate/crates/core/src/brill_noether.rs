//! The Brill-Noether multiplication map mu: H^0(O(1)) (x) H^0(omega(-1))
//! -> H^0(omega), modeled on the plane by multiplying linear forms against
//! adjoint forms of degree n-4 and reading the products in degree n-3.
//! The polynomial model computes the honest mu exactly when the curve is
//! geometrically linearly normal.

use crate::analysis::CurveAnalysis;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::{dim_forms, TernaryForm};
use crate::matrix::ExactMatrix;
use crate::normality::{adjoint_system_of_points, evaluation_matrix};
use crate::point::ProjPoint;

/// The inputs the multiplication-map model actually depends on: a degree
/// and a set of (delta-1) singular points. A full curve analysis reduces to
/// this; synthetic point configurations can be studied without a curve.
#[derive(Clone, Debug)]
pub struct SingularityData {
    pub n: usize,
    pub points: Vec<ProjPoint>,
    pub field: Field,
    pub g: i64,
}

impl SingularityData {
    pub fn from_points(field: &Field, n: usize, points: Vec<ProjPoint>) -> SingularityData {
        let g = ((n as i64 - 1) * (n as i64 - 2)) / 2 - points.len() as i64;
        SingularityData {
            n,
            points,
            field: field.clone(),
            g,
        }
    }

    pub fn from_analysis(a: &CurveAnalysis) -> SingularityData {
        SingularityData {
            n: a.degree(),
            points: a.points(),
            field: a.field().clone(),
            g: a.genus,
        }
    }

    /// Geometric linear normality: the points impose independent conditions
    /// in degree n - 4 (or the configuration is empty with n <= 4).
    pub fn gln(&self) -> Result<bool> {
        let m = self.n as i64 - 4;
        if m < 0 {
            return Ok(self.points.is_empty());
        }
        let rank = evaluation_matrix(&self.points, m as usize)?.rank();
        Ok(rank == self.points.len())
    }
}

#[derive(Clone, Debug)]
pub struct MuReport {
    pub n: usize,
    pub g: i64,
    /// Whether the curve is geometrically linearly normal; only then does
    /// the polynomial model compute the Brill-Noether map itself.
    pub gln: bool,
    pub dim_w: usize,
    pub dim_omega_minus_1: usize,
    pub dim_omega: usize,
    pub domain_dim: usize,
    pub rank: usize,
    pub ker_dim: usize,
    pub surjective: bool,
    pub injective: bool,
    pub rho: i64,
    /// Kernel vectors, as coefficient vectors over the domain basis
    /// x*a_1, ..., x*a_s, y*a_1, ..., z*a_s.
    pub kernel: Vec<Vec<Elem>>,
}

/// Matrix of the bilinear multiplication: columns indexed by (coordinate,
/// adjoint basis element), rows by degree-(n-3) monomials.
fn mu_matrix(data: &SingularityData) -> Result<(ExactMatrix, usize, usize)> {
    if data.n < 5 {
        return Err(Error::InvalidInput(
            "multiplication-map model needs degree at least 5".into(),
        ));
    }
    let fld = &data.field;
    let low = adjoint_system_of_points(fld, &data.points, data.n - 4)?;
    let target_cols = dim_forms(data.n - 3);
    let domain = 3 * low.dim;
    let mut mat = ExactMatrix::zero(fld, target_cols, domain);
    for (ci, coord) in (0..3)
        .map(|i| TernaryForm::coordinate(fld, i))
        .enumerate()
    {
        for (ai, adj) in low.basis.iter().enumerate() {
            let prod = coord.mul(adj);
            let col = ci * low.dim + ai;
            for (row, c) in prod.coeffs().iter().enumerate() {
                mat.set(row, col, c.clone());
            }
        }
    }
    Ok((mat, low.dim, domain))
}

pub fn mu_map(data: &SingularityData) -> Result<MuReport> {
    let fld = &data.field;
    let gln = data.gln()?;
    let (mat, dim_low, domain_dim) = mu_matrix(data)?;
    let high = adjoint_system_of_points(fld, &data.points, data.n - 3)?;
    let rank = mat.rank();
    let kernel = mat.kernel_basis();
    let ker_dim = kernel.len();
    let rho = 3 * data.n as i64 - 2 * data.g - 6;
    Ok(MuReport {
        n: data.n,
        g: data.g,
        gln,
        dim_w: 3,
        dim_omega_minus_1: dim_low,
        dim_omega: high.dim,
        domain_dim,
        rank,
        ker_dim,
        surjective: rank == high.dim,
        injective: ker_dim == 0,
        rho,
        kernel,
    })
}

pub fn mu_map_of_analysis(a: &CurveAnalysis) -> Result<MuReport> {
    mu_map(&SingularityData::from_analysis(a))
}

#[derive(Clone, Debug)]
pub struct DeletionReport {
    pub full: MuReport,
    pub deleted: MuReport,
    /// Hypotheses of the rank-increment lemma: gln, g > n - 2, n >= 5.
    pub lemma_applicable: bool,
    /// rank(deleted) >= rank(full) + 1, checked whenever computed.
    pub rank_increment_holds: bool,
}

/// Model of keeping one singular point through partial normalization:
/// drop that point's adjoint condition and recompute the map.
pub fn mu_rank_after_delete(data: &SingularityData, index: usize) -> Result<DeletionReport> {
    if index >= data.points.len() {
        return Err(Error::InvalidInput(format!(
            "point index {index} out of range (have {})",
            data.points.len()
        )));
    }
    let full = mu_map(data)?;
    let mut rest = data.points.clone();
    rest.remove(index);
    // genus of the partial normalization rises by the deleted delta = 1
    let deleted_data = SingularityData {
        n: data.n,
        points: rest,
        field: data.field.clone(),
        g: data.g + 1,
    };
    let deleted = mu_map(&deleted_data)?;
    let lemma_applicable = full.gln && data.g > data.n as i64 - 2 && data.n >= 5;
    let rank_increment_holds = deleted.rank >= full.rank + 1;
    Ok(DeletionReport {
        full,
        deleted,
        lemma_applicable,
        rank_increment_holds,
    })
}

#[derive(Clone, Debug)]
pub struct Prop41Verdict {
    pub gln: bool,
    pub mu_surjective: bool,
    /// k < 3n, the arithmetic surrogate for the expected-dimension
    /// assumption; recorded as assumed, not proved.
    pub expected_dim_assumed: bool,
    /// 3g - 3 + rho - k when all hypotheses pass, None otherwise.
    pub expected_moduli: Option<i64>,
}

/// Hypothesis checks and conclusion formula for the expected-number-of-
/// moduli criterion: gln + mu surjective (computed) + expected dimension
/// (assumed, with the k < 3n arithmetic check) give 3g - 3 + rho - k.
pub fn prop41_verdict(data: &SingularityData, k: usize) -> Result<Prop41Verdict> {
    if data.g < 2 {
        return Err(Error::InvalidInput(
            "number of moduli is defined for genus at least 2".into(),
        ));
    }
    let report = mu_map(data)?;
    let expected_dim_assumed = (k as i64) < 3 * data.n as i64;
    let all = report.gln && report.surjective && expected_dim_assumed;
    let expected_moduli = if all {
        Some(3 * data.g - 3 + report.rho - k as i64)
    } else {
        None
    };
    Ok(Prop41Verdict {
        gln: report.gln,
        mu_surjective: report.surjective,
        expected_dim_assumed,
        expected_moduli,
    })
}

#[derive(Clone, Debug)]
pub struct SyzygyCheck {
    pub passed: bool,
    pub ker_dim: usize,
    /// Present when the check fails (two or more kernel vectors), so the
    /// degenerate configuration can be inspected.
    pub witness: Option<Vec<Vec<Elem>>>,
}

/// When the degree-(n-4) adjoint system has dimension exactly 3, two
/// independent kernel relations would force proportionality syzygies
/// f_i q_j = f_j q_i among the basis elements, impossible for irreducible
/// ones; the check verifies ker_dim <= 1.
pub fn kernel_syzygy_check(report: &MuReport) -> Result<SyzygyCheck> {
    if report.dim_omega_minus_1 != 3 {
        return Err(Error::Dimension(format!(
            "syzygy check needs a 3-dimensional low adjoint system, got {}",
            report.dim_omega_minus_1
        )));
    }
    let passed = report.ker_dim <= 1;
    Ok(SyzygyCheck {
        passed,
        ker_dim: report.ker_dim,
        witness: if passed {
            None
        } else {
            Some(report.kernel.clone())
        },
    })
}
