//! Closed-form arithmetic for families of degree-n plane curves with k
//! cusps and d nodes: dimension counts, Brill-Noether number, expected
//! number of moduli, the hypothesis systems of the existence and moduli
//! theorems, and a census engine that classifies every (n, k, d) cell.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    /// Dimension of the space of degree-n plane curves: n(n+3)/2.
    pub cap_n: i64,
    /// Geometric genus (n-1)(n-2)/2 - k - d.
    pub g: i64,
    /// Total delta invariant d + k.
    pub delta: i64,
    /// Brill-Noether number rho(2, g, n) = 3n - 2g - 6.
    pub rho: i64,
    /// N - d - 2k = 3n + g - 1 - k.
    pub expected_dim: i64,
    /// 3g - 3, defined for g >= 2.
    pub dim_mg: Option<i64>,
    /// min(3g - 3, 3g - 3 + rho - k), defined for g >= 2.
    pub expected_moduli: Option<i64>,
    /// Lower bound for the fibre dimension of the map to moduli:
    /// min(8, rho - k + 8).
    pub fibre_lower_bound: i64,
}

pub fn family_params(n: u64, k: u64, d: u64) -> Result<FamilyParams> {
    if n < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let (ni, ki, di) = (n as i64, k as i64, d as i64);
    let g = (ni - 1) * (ni - 2) / 2 - ki - di;
    if g < 0 {
        return Err(Error::InvalidInput(format!(
            "genus {g} < 0 for (n, k, d) = ({n}, {k}, {d})"
        )));
    }
    let cap_n = ni * (ni + 3) / 2;
    let rho = 3 * ni - 2 * g - 6;
    let expected_dim = cap_n - di - 2 * ki;
    debug_assert_eq!(expected_dim, 3 * ni + g - 1 - ki);
    let (dim_mg, expected_moduli) = if g >= 2 {
        let m = 3 * g - 3;
        (Some(m), Some(m.min(m + rho - ki)))
    } else {
        (None, None)
    };
    Ok(FamilyParams {
        n,
        k,
        d,
        cap_n,
        g,
        delta: di + ki,
        rho,
        expected_dim,
        dim_mg,
        expected_moduli,
        fibre_lower_bound: 8.min(rho - ki + 8),
    })
}

#[derive(Clone, Debug)]
pub struct Thm35Breakdown {
    pub t: u64,
    /// d + k <= (n^2 - (3+2t)n + 2 + t^2 + 3t)/2.
    pub cond3: bool,
    /// For k = 0: t <= n - 3. None when k > 0.
    pub cond4: Option<bool>,
    /// For t in {1, 2}: k <= 6. None otherwise.
    pub cond5: Option<bool>,
    /// For t = 3: k <= 6 + floor((n-8)/3). None otherwise.
    pub cond6: Option<bool>,
    /// Whether (t, k) falls in a regime the theorem covers at all
    /// (k > 0 with t >= 4 is not covered).
    pub covered: bool,
    pub satisfied: bool,
    /// Set when the verdict is false but the literature shows the bound is
    /// not sharp for this cell.
    pub non_sharpness_note: Option<String>,
}

pub fn thm35_hypotheses(n: u64, k: u64, d: u64, t: u64) -> Result<Thm35Breakdown> {
    if t < 1 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let (ni, ki, di, ti) = (n as i64, k as i64, d as i64, t as i64);
    let bound3 = (ni * ni - (3 + 2 * ti) * ni + 2 + ti * ti + 3 * ti) / 2;
    let cond3 = di + ki <= bound3;
    let cond4 = if k == 0 { Some(ti <= ni - 3) } else { None };
    let cond5 = if k > 0 && (t == 1 || t == 2) {
        Some(ki <= 6)
    } else {
        None
    };
    let cond6 = if k > 0 && t == 3 {
        Some(ki <= 6 + (ni - 8).div_euclid(3))
    } else {
        None
    };
    let covered = k == 0 || t <= 3;
    let satisfied = covered
        && cond3
        && cond4.unwrap_or(true)
        && cond5.unwrap_or(true)
        && cond6.unwrap_or(true);
    let non_sharpness_note = if !satisfied
        && k > 0
        && k <= 9
        && (cond5 == Some(false) || cond6 == Some(false) || !covered)
    {
        Some(
            "cusp bound known not sharp: families with up to 9 cusps exist in higher degree \
             (Example 3.7)"
                .into(),
        )
    } else {
        None
    };
    Ok(Thm35Breakdown {
        t,
        cond3,
        cond4,
        cond5,
        cond6,
        covered,
        satisfied,
        non_sharpness_note,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thm49Regime {
    /// g >= 3n - 9 and n >= 6: k <= 6 + floor((n-8)/3).
    HighGenus,
    /// Otherwise: k <= 6.
    LowGenus,
}

#[derive(Clone, Debug)]
pub struct Thm49Breakdown {
    /// k + d <= (n-2)(n-3)/2, equivalently n - 2 <= g.
    pub cond16: bool,
    pub regime: Thm49Regime,
    pub cusp_bound: bool,
    pub satisfied: bool,
}

pub fn thm49_hypotheses(n: u64, k: u64, d: u64) -> Result<Thm49Breakdown> {
    if n < 4 {
        return Err(Error::InvalidInput(
            "moduli hypotheses need degree at least 4".into(),
        ));
    }
    let params = family_params(n, k, d)?;
    let (ni, ki) = (n as i64, k as i64);
    let cond16 = ki + d as i64 <= (ni - 2) * (ni - 3) / 2;
    let (regime, cusp_bound) = if params.g >= 3 * ni - 9 && n >= 6 {
        (Thm49Regime::HighGenus, ki <= 6 + (ni - 8).div_euclid(3))
    } else {
        (Thm49Regime::LowGenus, ki <= 6)
    };
    Ok(Thm49Breakdown {
        cond16,
        regime,
        cusp_bound,
        satisfied: cond16 && cusp_bound,
    })
}

/// A ramification sequence (b_0, ..., b_r) of nonnegative integers.
pub type RamificationSequence = Vec<i64>;

/// Existence of a g^r_n with ramification at least b at one point:
/// sum over i of max(b_i + g - n + r, 0) must not exceed g.
pub fn eisenbud_harris_exists(g: i64, n: i64, r: usize, b: &RamificationSequence) -> Result<bool> {
    if r < 1 || n < 1 || g < 0 {
        return Err(Error::InvalidInput(
            "need r >= 1, n >= 1, g >= 0".into(),
        ));
    }
    if b.len() != r + 1 || b.iter().any(|&x| x < 0) {
        return Err(Error::InvalidInput(format!(
            "ramification sequence must have {} nonnegative entries",
            r + 1
        )));
    }
    let sum: i64 = b.iter().map(|&bi| (bi + g - n + r as i64).max(0)).sum();
    Ok(sum <= g)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    /// Nonempty family with an irreducible member that is t-normal
    /// (existence theorem hypotheses hold at this t).
    NonemptyThm35(u64),
    /// Expected number of moduli when rho <= 0 (Thm 4.9).
    ExpectedModuliThm49,
    /// General moduli: n > 2g - 1 + 2k (Prop 2.5).
    GeneralModuliProp25,
    /// General moduli: k <= 3 and rho >= 2k (Cor 2.7).
    GeneralModuliCor27,
    /// Expected number of moduli for one cusp, any d (Thm 4.11).
    GeneralModuliThm411,
    /// Special moduli: rho < k (Prop 2.4).
    SpecialModuliProp24,
    /// The moduli-number upper bound applies: k < 3n (Lemma 2.2).
    UpperBoundLemma22Applies,
    Unknown,
}

impl Flag {
    pub fn provenance(&self) -> String {
        match self {
            Flag::NonemptyThm35(t) => format!("Thm 3.5 (t = {t})"),
            Flag::ExpectedModuliThm49 => "Thm 4.9".into(),
            Flag::GeneralModuliProp25 => "Prop 2.5".into(),
            Flag::GeneralModuliCor27 => "Cor 2.7".into(),
            Flag::GeneralModuliThm411 => "Thm 4.11".into(),
            Flag::SpecialModuliProp24 => "Prop 2.4".into(),
            Flag::UpperBoundLemma22Applies => "Lemma 2.2".into(),
            Flag::Unknown => "no cited statement applies".into(),
        }
    }

    pub fn is_general_moduli(&self) -> bool {
        matches!(
            self,
            Flag::GeneralModuliProp25 | Flag::GeneralModuliCor27 | Flag::GeneralModuliThm411
        )
    }

    pub fn is_expected_moduli(&self) -> bool {
        matches!(self, Flag::ExpectedModuliThm49 | Flag::GeneralModuliThm411)
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub flags: Vec<Flag>,
    pub annotations: Vec<String>,
}

impl ClassificationVerdict {
    pub fn has(&self, f: &Flag) -> bool {
        self.flags.contains(f)
    }
}

pub fn classify_family(n: u64, k: u64, d: u64) -> Result<ClassificationVerdict> {
    let p = family_params(n, k, d)?;
    let (ni, ki) = (n as i64, k as i64);
    let mut flags = Vec::new();
    let mut annotations = Vec::new();
    for t in 1..=3u64 {
        if let Ok(b) = thm35_hypotheses(n, k, d, t) {
            if b.satisfied {
                flags.push(Flag::NonemptyThm35(t));
            } else if let Some(note) = b.non_sharpness_note {
                annotations.push(format!("t = {t}: {note}"));
            }
        }
    }
    if p.g >= 2 {
        if p.rho < ki {
            flags.push(Flag::SpecialModuliProp24);
        }
        if ni > 2 * p.g - 1 + 2 * ki {
            flags.push(Flag::GeneralModuliProp25);
        }
        if k <= 3 && p.rho >= 2 * ki {
            flags.push(Flag::GeneralModuliCor27);
        }
        if k == 1 && p.rho >= 1 {
            flags.push(Flag::GeneralModuliThm411);
        }
        if p.rho <= 0 && n >= 4 && thm49_hypotheses(n, k, d)?.satisfied {
            flags.push(Flag::ExpectedModuliThm49);
        }
        if ki < 3 * ni {
            flags.push(Flag::UpperBoundLemma22Applies);
        } else {
            annotations.push(
                "k >= 3n: no dimension bound available; expected number of moduli is \
                 conditional on the expected dimension (Remark 2.3)"
                    .into(),
            );
        }
    }
    let substantive = flags
        .iter()
        .any(|f| !matches!(f, Flag::UpperBoundLemma22Applies));
    if !substantive {
        flags.push(Flag::Unknown);
    }
    debug_assert!(
        !(flags.iter().any(Flag::is_general_moduli) && flags.contains(&Flag::SpecialModuliProp24)),
        "general- and special-moduli flags must never co-fire"
    );
    Ok(ClassificationVerdict { flags, annotations })
}

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub params: FamilyParams,
    pub verdict: ClassificationVerdict,
}

/// One row per (n, k, d) with nonnegative genus, in lexicographic order.
/// With no d range, every d keeping g >= 0 is included.
pub fn census(
    n_range: (u64, u64),
    k_range: (u64, u64),
    d_range: Option<(u64, u64)>,
) -> Result<Vec<CensusRow>> {
    if n_range.0 > n_range.1 || k_range.0 > k_range.1 {
        return Err(Error::InvalidInput("empty range".into()));
    }
    let mut rows = Vec::new();
    for n in n_range.0..=n_range.1 {
        let gmax = ((n as i64 - 1) * (n as i64 - 2)) / 2;
        for k in k_range.0..=k_range.1 {
            if (k as i64) > gmax {
                continue;
            }
            let d_hi_default = (gmax - k as i64) as u64;
            let (dlo, dhi) = match d_range {
                Some((a, b)) => (a, b.min(d_hi_default)),
                None => (0, d_hi_default),
            };
            if dlo > dhi {
                continue;
            }
            for d in dlo..=dhi {
                let params = family_params(n, k, d)?;
                let verdict = classify_family(n, k, d)?;
                rows.push(CensusRow { params, verdict });
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct DegenerationStep {
    pub left: i64,
    pub right: i64,
    pub holds: bool,
    /// Node bookkeeping of the union step: d' = d + n*t - t^2 - 1.
    pub nodes_after: i64,
}

/// The induction's node-count identity for attaching a degree-t curve to a
/// degree-n curve with n = t + 3 + a:
/// (a^2 + 3a + 2)/2 + n - t - 1 = ((a+1)^2 + 3(a+1) + 2)/2.
pub fn degeneration_step_arithmetic(
    n: u64,
    t: u64,
    nodes_before: u64,
    a: u64,
) -> Result<DegenerationStep> {
    if n != t + 3 + a {
        return Err(Error::InvalidInput(format!(
            "expected n = t + 3 + a, got n = {n}, t + 3 + a = {}",
            t + 3 + a
        )));
    }
    let (ni, ti, ai) = (n as i64, t as i64, a as i64);
    let left = (ai * ai + 3 * ai + 2) / 2 + ni - ti - 1;
    let right = ((ai + 1) * (ai + 1) + 3 * (ai + 1) + 2) / 2;
    Ok(DegenerationStep {
        left,
        right,
        holds: left == right,
        nodes_after: nodes_before as i64 + ni * ti - ti * ti - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zariski_sextic_numerology() {
        let p = family_params(6, 6, 0).unwrap();
        assert_eq!(p.g, 4);
        assert_eq!(p.rho, 4);
        assert_eq!(p.cap_n, 27);
        assert_eq!(p.expected_dim, 15);
        assert_eq!(p.expected_moduli, Some(7)); // min(9, 9 + 4 - 6)
        assert_eq!(p.dim_mg, Some(9));
    }

    #[test]
    fn smooth_curves_fill_the_space() {
        for n in 1..=12u64 {
            let p = family_params(n, 0, 0).unwrap();
            assert_eq!(p.g, ((n as i64 - 1) * (n as i64 - 2)) / 2);
            assert_eq!(p.expected_dim, p.cap_n);
        }
    }

    #[test]
    fn septic_one_cusp() {
        let p = family_params(7, 1, 7).unwrap();
        assert_eq!(p.g, 7);
        assert_eq!(p.rho, 1);
    }

    #[test]
    fn genus_guard() {
        assert!(family_params(5, 0, 7).is_err());
    }

    #[test]
    fn expected_dim_identity() {
        for n in 3..=12u64 {
            for k in 0..=6u64 {
                for d in 0..=20u64 {
                    if let Ok(p) = family_params(n, k, d) {
                        assert_eq!(p.expected_dim, 3 * n as i64 + p.g - 1 - k as i64);
                        if let Some(m) = p.dim_mg {
                            assert_eq!(p.expected_dim, m + p.rho - k as i64 + 8);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn thm35_examples() {
        // Zariski sextic cell at t = 1: both conditions tight
        let b = thm35_hypotheses(6, 6, 0, 1).unwrap();
        assert!(b.cond3 && b.cond5 == Some(true) && b.satisfied);
        // nine cusps in degree 12 at t = 3: bound fails but is known non-sharp
        let b = thm35_hypotheses(12, 9, 0, 3).unwrap();
        assert_eq!(b.cond6, Some(false));
        assert!(!b.satisfied);
        assert!(b.non_sharpness_note.is_some());
        // nodal boundary case: t = n - 3, one node
        for n in 4..=10u64 {
            let t = n - 3;
            let b = thm35_hypotheses(n, 0, 1, t).unwrap();
            assert!(b.cond3, "equality case d = 1 at t = n - 3 must pass");
            assert!(b.satisfied);
            // and d = 2 must fail condition (3)
            let b2 = thm35_hypotheses(n, 0, 2, t).unwrap();
            assert!(!b2.cond3);
        }
    }

    #[test]
    fn thm35_cond3_monotone_downward_in_t() {
        // condition (3) at t implies it at every t' <= t
        for n in 4..=12u64 {
            for k in 0..=6 {
                for d in 0..=10 {
                    let mut ok_at: Vec<bool> = Vec::new();
                    for t in 1..=(n as i64 - 3).max(1) as u64 {
                        ok_at.push(thm35_hypotheses(n, k, d, t).unwrap().cond3);
                    }
                    for w in ok_at.windows(2) {
                        if w[1] {
                            assert!(w[0], "condition (3) must get harder as t grows");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn thm49_examples() {
        let b = thm49_hypotheses(7, 6, 2).unwrap();
        assert_eq!(b.regime, Thm49Regime::LowGenus);
        assert!(b.cond16 && b.cusp_bound && b.satisfied);
        let b = thm49_hypotheses(6, 6, 0).unwrap();
        assert_eq!(b.regime, Thm49Regime::LowGenus); // g = 4 < 3n - 9 = 9
        assert!(b.satisfied);
    }

    #[test]
    fn eisenbud_harris_examples() {
        assert!(eisenbud_harris_exists(4, 6, 2, &vec![0, 1, 1]).unwrap());
        assert!(!eisenbud_harris_exists(4, 5, 2, &vec![0, 1, 1]).unwrap());
        // no ramification demanded, nonspecial range
        assert!(eisenbud_harris_exists(3, 5, 2, &vec![0, 0, 0]).unwrap());
        assert!(eisenbud_harris_exists(0, 3, 2, &vec![0, 0, 0]).unwrap());
        // malformed sequences
        assert!(eisenbud_harris_exists(4, 6, 2, &vec![0, 1]).is_err());
        assert!(eisenbud_harris_exists(4, 6, 2, &vec![0, 1, -1]).is_err());
    }

    #[test]
    fn classification_examples() {
        // one cusp, one node, quintic: rho = 1 >= 1
        let v = classify_family(5, 1, 1).unwrap();
        assert!(v.has(&Flag::GeneralModuliThm411));
        assert!(!v.has(&Flag::SpecialModuliProp24));
        // low genus sextic: n = 6 > 2g - 1 + 2k = 5
        let v = classify_family(6, 1, 7).unwrap();
        assert!(v.has(&Flag::GeneralModuliProp25));
        // Zariski cell: rho = 4 < k = 6
        let v = classify_family(6, 6, 0).unwrap();
        assert!(v.has(&Flag::SpecialModuliProp24));
        assert!(v.has(&Flag::NonemptyThm35(1)));
        assert!(!v.flags.iter().any(Flag::is_general_moduli));
    }

    #[test]
    fn census_shape_and_exclusivity() {
        let rows = census((4, 6), (0, 6), None).unwrap();
        assert!(!rows.is_empty());
        for row in &rows {
            assert!(row.params.g >= 0);
            let gen = row.verdict.flags.iter().any(Flag::is_general_moduli);
            let special = row.verdict.has(&Flag::SpecialModuliProp24);
            assert!(!(gen && special));
        }
        // the (5, 3, 0) cell: rho = 3, expected_moduli = 6 = dim M_3
        let row = rows
            .iter()
            .find(|r| (r.params.n, r.params.k, r.params.d) == (5, 3, 0))
            .unwrap();
        assert_eq!(row.params.rho, 3);
        assert_eq!(row.params.expected_moduli, Some(6));
    }

    #[test]
    fn degeneration_identities() {
        let s = degeneration_step_arithmetic(4, 1, 0, 0).unwrap();
        assert_eq!((s.left, s.right), (3, 3));
        assert!(s.holds);
        let s = degeneration_step_arithmetic(7, 1, 10, 3).unwrap();
        assert_eq!((s.left, s.right), (15, 15));
        assert!(s.holds);
        assert!(degeneration_step_arithmetic(6, 1, 0, 3).is_err());
    }

    #[test]
    fn fibre_bound() {
        // rho - k + 8 caps at 8
        let p = family_params(6, 6, 0).unwrap();
        assert_eq!(p.fibre_lower_bound, 6); // 4 - 6 + 8
        let p = family_params(4, 0, 0).unwrap();
        assert_eq!(p.rho, 0);
        assert_eq!(p.fibre_lower_bound, 8);
    }
}
