//! Explicit curves and configurations: gallery equations, a linear solver
//! for curves with prescribed nodes and cusps, marked unions with lines and
//! conics, implicitization of rational parametrizations, and the
//! cross-ratio comparison for pencils of conics.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    analyze, transversal_intersection, AnalysisMode, CurveAnalysis,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::{dim_forms, local_expansion, monomial_basis, TernaryForm};
use crate::matrix::ExactMatrix;
use crate::normality::evaluation_matrix;
use crate::point::ProjPoint;

fn random_elem(field: &Field, rng: &mut ChaCha8Rng) -> Elem {
    match field.characteristic() {
        0 => field.from_i64(rng.random_range(-50..=50)),
        p => {
            let q = field.gf().map(|c| c.order()).unwrap_or(p);
            let code = rng.random_range(0..q);
            match field.gf() {
                Some(ctx) => Elem::Gf(ctx.decode(code)),
                None => field.from_i64(code as i64),
            }
        }
    }
}

/// The classical three-cusped quartic
/// x^2 y^2 + y^2 z^2 + z^2 x^2 - 2xyz(x + y + z),
/// with cusps exactly at the three coordinate points.
pub fn tricuspidal_quartic(field: &Field) -> Result<CurveAnalysis> {
    let c = TernaryForm::from_int_terms(
        field,
        4,
        &[
            ([2, 2, 0], 1),
            ([0, 2, 2], 1),
            ([2, 0, 2], 1),
            ([2, 1, 1], -2),
            ([1, 2, 1], -2),
            ([1, 1, 2], -2),
        ],
    )?;
    let mode = if field.is_rationals() {
        // the three coordinate cusps exhaust the singular locus: any further
        // singularity would push the geometric genus of an irreducible
        // quartic below 0
        let pts = vec![
            ProjPoint::from_i64(field, [1, 0, 0])?,
            ProjPoint::from_i64(field, [0, 1, 0])?,
            ProjPoint::from_i64(field, [0, 0, 1])?,
        ];
        AnalysisMode::Declared {
            points: pts,
            asserted_complete: true,
        }
    } else {
        AnalysisMode::Search { max_ext: 2 }
    };
    analyze(&c, mode)
}

/// Sextic with six cusps on a conic, built as f2^3 + f3^2 where f3 is a
/// seeded cubic through six chosen points of the smooth conic f2 meeting it
/// transversally exactly there.
pub fn zariski_sextic(
    field: &Field,
    f2: &TernaryForm,
    six_points: &[ProjPoint],
    seed: u64,
) -> Result<CurveAnalysis> {
    if f2.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: f2.degree(),
        });
    }
    if six_points.len() != 6 {
        return Err(Error::InvalidInput(format!(
            "need exactly six points on the conic, got {}",
            six_points.len()
        )));
    }
    for p in six_points {
        if !field.is_zero(&f2.eval_point(p)?) {
            return Err(Error::PointNotOnCurve(p.to_string_pretty()));
        }
    }
    // f2 must be smooth (an irreducible conic)
    if !conic_is_smooth(f2)? {
        return Err(Error::InvalidInput("the conic must be smooth".into()));
    }
    // cubics through the six points: at least 10 - 6 = 4 dimensional
    let cubic_space = evaluation_matrix(six_points, 3)?.kernel_basis();
    if cubic_space.is_empty() {
        return Err(Error::EmptySolutionSpace);
    }
    let mut last_err = Error::Construction("no attempt made".into());
    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut coeffs = vec![field.zero(); dim_forms(3)];
        for basis_vec in &cubic_space {
            let r = random_elem(field, &mut rng);
            for (c, b) in coeffs.iter_mut().zip(basis_vec) {
                *c = field.add(c, &field.mul(&r, b));
            }
        }
        let f3 = TernaryForm::from_coeff_vec(field, 3, coeffs)?;
        if f3.is_zero() || f3.try_div_exact(f2).is_some() {
            last_err = Error::Construction(
                "sampled cubic degenerate (zero or divisible by the conic); reseed".into(),
            );
            continue;
        }
        // transversality: the conic and cubic meet exactly at the six points
        if !field.is_rationals() {
            match transversal_intersection(f2, &f3, 2) {
                Ok(rep) => {
                    let mut got: Vec<String> =
                        rep.points.iter().map(|p| p.to_string_pretty()).collect();
                    got.sort();
                    let mut want: Vec<String> =
                        six_points.iter().map(|p| p.to_string_pretty()).collect();
                    want.sort();
                    if !rep.transversal || got != want {
                        last_err = Error::Construction(
                            "conic and sampled cubic do not meet transversally in exactly \
                             the six points; reseed"
                                .into(),
                        );
                        continue;
                    }
                }
                Err(e) => {
                    last_err = e;
                    continue;
                }
            }
        }
        let sextic = f2.pow(3).add(&f3.mul(&f3));
        let mode = if field.is_rationals() {
            AnalysisMode::Declared {
                points: six_points.to_vec(),
                asserted_complete: false,
            }
        } else {
            AnalysisMode::Search { max_ext: 2 }
        };
        match analyze(&sextic, mode) {
            Ok(a) if a.k == 6 && a.d == 0 => return Ok(a),
            Ok(_) => {
                last_err = Error::Construction(
                    "sampled sextic has unexpected singularities; reseed".into(),
                );
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Default Zariski sextic: conic xz - y^2 with the six points (t^2 : t : 1).
pub fn zariski_sextic_default(field: &Field, seed: u64) -> Result<CurveAnalysis> {
    let f2 = TernaryForm::from_int_terms(field, 2, &[([1, 0, 1], 1), ([0, 2, 0], -1)])?;
    let pts: Vec<ProjPoint> = (1..=6)
        .map(|t| ProjPoint::from_i64(field, [t * t, t, 1]))
        .collect::<Result<Vec<_>>>()?;
    zariski_sextic(field, &f2, &pts, seed)
}

fn conic_is_smooth(f2: &TernaryForm) -> Result<bool> {
    // symmetric matrix of the quadratic form; nonzero determinant (rank 3)
    // detects smoothness away from characteristic 2
    let fld = f2.field().clone();
    if fld.characteristic() == 2 {
        return Err(Error::SmallCharacteristic { p: 2, degree: 2 });
    }
    let two = fld.from_i64(2);
    let a = f2.coeff(2, 0, 0).clone();
    let b = f2.coeff(1, 1, 0).clone();
    let c = f2.coeff(1, 0, 1).clone();
    let d = f2.coeff(0, 2, 0).clone();
    let e = f2.coeff(0, 1, 1).clone();
    let f = f2.coeff(0, 0, 2).clone();
    let rows = vec![
        vec![fld.mul(&two, &a), b.clone(), c.clone()],
        vec![b, fld.mul(&two, &d), e.clone()],
        vec![c, e, fld.mul(&two, &f)],
    ];
    Ok(ExactMatrix::from_rows(&fld, rows)?.rank() == 3)
}

/// The linear conditions a node or cusp at a given point imposes on the
/// coefficient vector of a degree-n form: three gradient rows, plus for a
/// cusp two rows forcing the local quadratic part proportional to the
/// square of the prescribed tangent.
fn singularity_condition_rows(
    field: &Field,
    n: usize,
    point: &ProjPoint,
    cusp_tangent: Option<&TernaryForm>,
) -> Result<Vec<Vec<Elem>>> {
    let basis = monomial_basis(n);
    let cols = basis.len();
    let mut rows: Vec<Vec<Elem>> = vec![vec![field.zero(); cols]; 3];
    let chart = point.chart();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    // per-monomial contributions
    let mut quad_rows: Vec<Vec<Elem>> = vec![vec![field.zero(); cols]; 3]; // q20, q11, q02
    for (j, e) in basis.iter().enumerate() {
        let mono = TernaryForm::monomial(field, *e);
        let parts = mono.partials()?;
        for (axis, part) in parts.iter().enumerate() {
            rows[axis][j] = part.eval_point(point)?;
        }
        if cusp_tangent.is_some() {
            let exp = local_expansion(&mono, chart, point)?;
            let q2 = exp.homogeneous_part(2);
            for (qi, v) in q2.into_iter().enumerate() {
                quad_rows[qi][j] = v;
            }
        }
    }
    if let Some(line) = cusp_tangent {
        if line.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: line.degree(),
            });
        }
        if !field.is_zero(&line.eval_point(point)?) {
            return Err(Error::InvalidInput(
                "cusp tangent must pass through the cusp".into(),
            ));
        }
        // local form of the tangent: alpha u + beta v
        let alpha = line.coeffs()[others[0]].clone();
        let beta = line.coeffs()[others[1]].clone();
        if field.is_zero(&alpha) && field.is_zero(&beta) {
            return Err(Error::InvalidInput(
                "tangent line degenerates at the cusp's chart".into(),
            ));
        }
        // proportionality of (q20, q11, q02) to (alpha^2, 2 alpha beta, beta^2):
        // alpha q11 - 2 beta q20 = 0 and beta q11 - 2 alpha q02 = 0
        let two = field.from_i64(2);
        let mut r1 = vec![field.zero(); cols];
        let mut r2 = vec![field.zero(); cols];
        for j in 0..cols {
            r1[j] = field.sub(
                &field.mul(&alpha, &quad_rows[1][j]),
                &field.mul(&field.mul(&two, &beta), &quad_rows[0][j]),
            );
            r2[j] = field.sub(
                &field.mul(&beta, &quad_rows[1][j]),
                &field.mul(&field.mul(&two, &alpha), &quad_rows[2][j]),
            );
        }
        rows.push(r1);
        rows.push(r2);
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct PrescribedResult {
    pub solution_dim: usize,
    pub analysis: CurveAnalysis,
    pub seed_used: u64,
}

/// Solve the linear system for degree-n curves with nodes at given points
/// and cusps at given points with given tangent lines; sample a seeded
/// member and verify a posteriori that it has exactly the prescribed
/// singularities (within the search bound over a prime field).
pub fn curve_with_prescribed_singularities(
    field: &Field,
    n: usize,
    nodes: &[ProjPoint],
    cusps: &[(ProjPoint, TernaryForm)],
    seed: u64,
) -> Result<PrescribedResult> {
    let p = field.characteristic();
    if p != 0 && p <= n as u64 {
        return Err(Error::SmallCharacteristic { p, degree: n });
    }
    let mut all_points: Vec<&ProjPoint> = nodes.iter().collect();
    all_points.extend(cusps.iter().map(|(p, _)| p));
    for (i, pt) in all_points.iter().enumerate() {
        if all_points[..i].contains(pt) {
            return Err(Error::DuplicatePoints);
        }
    }
    let mut rows = Vec::new();
    for p in nodes {
        rows.extend(singularity_condition_rows(field, n, p, None)?);
    }
    for (p, line) in cusps {
        rows.extend(singularity_condition_rows(field, n, p, Some(line))?);
    }
    let mat = ExactMatrix::from_rows(field, rows)?;
    let kernel = mat.kernel_basis();
    let solution_dim = kernel.len();
    if solution_dim == 0 {
        return Err(Error::EmptySolutionSpace);
    }
    let expected_k = cusps.len();
    let expected_d = nodes.len();
    let mut last_err = Error::Construction("no attempt made".into());
    for attempt in 0..3u64 {
        let used = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(used);
        let mut coeffs = vec![field.zero(); dim_forms(n)];
        for basis_vec in &kernel {
            let r = random_elem(field, &mut rng);
            for (c, b) in coeffs.iter_mut().zip(basis_vec) {
                *c = field.add(c, &field.mul(&r, b));
            }
        }
        let form = TernaryForm::from_coeff_vec(field, n, coeffs)?;
        if form.is_zero() {
            last_err = Error::Construction("sampled the zero form; reseed".into());
            continue;
        }
        let mode = if field.is_rationals() {
            AnalysisMode::Declared {
                points: all_points.iter().map(|p| (*p).clone()).collect(),
                asserted_complete: false,
            }
        } else {
            AnalysisMode::Search { max_ext: 2 }
        };
        match analyze(&form, mode) {
            Ok(a) => {
                let kinds_match = a.k == expected_k && a.d == expected_d;
                let points_match = {
                    let mut got: Vec<String> = a
                        .singular_points
                        .iter()
                        .map(|s| {
                            format!("{}:{}", s.kind.as_str(), s.point.to_string_pretty())
                        })
                        .collect();
                    got.sort();
                    let mut want: Vec<String> = nodes
                        .iter()
                        .map(|p| format!("node:{}", p.to_string_pretty()))
                        .chain(
                            cusps
                                .iter()
                                .map(|(p, _)| format!("cusp:{}", p.to_string_pretty())),
                        )
                        .collect();
                    want.sort();
                    got == want
                };
                if kinds_match && points_match {
                    return Ok(PrescribedResult {
                        solution_dim,
                        analysis: a,
                        seed_used: used,
                    });
                }
                last_err = Error::Construction(
                    "sampled member has unprescribed or misclassified singularities; reseed"
                        .into(),
                );
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Three-cusped quintic with cusps in general position (hence not
/// collinear), produced by the prescribed-singularity solver and fully
/// verified by the classifier and the exhaustive singular search.
pub fn quintic_3cusps(field: &Field, seed: u64) -> Result<PrescribedResult> {
    let cusp_data: [([i64; 3], [i64; 3]); 3] = [
        // (point, tangent-line coefficients), tangents chosen generically
        ([1, 0, 0], [0, 1, 1]),
        ([0, 1, 0], [1, 0, 2]),
        ([0, 0, 1], [1, 3, 0]),
    ];
    let mut cusps = Vec::new();
    for (pt, ln) in &cusp_data {
        let p = ProjPoint::from_i64(field, *pt)?;
        let line = TernaryForm::from_int_terms(
            field,
            1,
            &[([1, 0, 0], ln[0]), ([0, 1, 0], ln[1]), ([0, 0, 1], ln[2])],
        )?;
        cusps.push((p, line));
    }
    let res = curve_with_prescribed_singularities(field, 5, &[], &cusps, seed)?;
    if res.analysis.genus != 3 {
        return Err(Error::Construction(format!(
            "three-cusp quintic has genus {}, expected 3",
            res.analysis.genus
        )));
    }
    Ok(res)
}

#[derive(Clone, Debug)]
pub struct MarkedUnion {
    pub union_form: TernaryForm,
    pub components: Vec<TernaryForm>,
    pub marked_points: Vec<ProjPoint>,
    /// Target family of the smoothing step: degree, cusps, nodes.
    pub n_after: usize,
    pub k_after: usize,
    pub d_after: usize,
    /// Degree of the twisted line bundle on the added component after
    /// subtracting the marked points: t^2 - marked count (t = component
    /// degree). Negative iff the union step preserves h^0.
    pub criterion_value: i64,
    pub criterion_ok: bool,
}

/// The h^0-preservation criterion of the union step: t^2 minus the marked
/// count, where t is the degree of the attached component (1 for a line,
/// 2 for a conic).
pub fn union_criterion(component_degree: usize, marked: usize) -> i64 {
    (component_degree * component_degree) as i64 - marked as i64
}

fn union_with_component(
    analysis: &CurveAnalysis,
    component: &TernaryForm,
    marked: &[ProjPoint],
    required_marked: usize,
) -> Result<MarkedUnion> {
    let t = component.degree();
    if marked.len() != required_marked {
        return Err(Error::InvalidInput(format!(
            "a degree-{t} component needs exactly {required_marked} marked points, got {}",
            marked.len()
        )));
    }
    let inter = transversal_intersection(&analysis.curve, component, 2)?;
    if !inter.transversal {
        return Err(Error::Construction(
            "component does not meet the curve transversally".into(),
        ));
    }
    for p in marked {
        if !inter.points.contains(p) {
            return Err(Error::InvalidInput(format!(
                "marked point {} is not an intersection point",
                p.to_string_pretty()
            )));
        }
    }
    let criterion_value = union_criterion(t, marked.len());
    Ok(MarkedUnion {
        union_form: analysis.curve.mul(component),
        components: vec![analysis.curve.clone(), component.clone()],
        marked_points: marked.to_vec(),
        n_after: analysis.degree() + t,
        k_after: analysis.k,
        d_after: analysis.d + marked.len(),
        criterion_value,
        criterion_ok: criterion_value < 0,
    })
}

pub fn union_with_line(
    analysis: &CurveAnalysis,
    line: &TernaryForm,
    marked: &[ProjPoint],
) -> Result<MarkedUnion> {
    if line.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: line.degree(),
        });
    }
    union_with_component(analysis, line, marked, 2)
}

pub fn union_with_conic(
    analysis: &CurveAnalysis,
    conic: &TernaryForm,
    marked: &[ProjPoint],
) -> Result<MarkedUnion> {
    if conic.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: conic.degree(),
        });
    }
    union_with_component(analysis, conic, marked, 5)
}

/// A binary form of degree m in (s, t): coefficients of s^(m-i) t^i.
pub type BinaryForm = Vec<Elem>;

fn binary_forms_coprime(field: &Field, forms: &[&BinaryForm]) -> bool {
    // common root at (1 : 0)?
    if forms.iter().all(|f| field.is_zero(&f[0])) {
        return false;
    }
    // common root elsewhere: gcd of the dehomogenizations at s = 1
    let to_univ = |f: &BinaryForm| -> Vec<Elem> {
        // ascending powers of t
        f.to_vec()
    };
    let mut g = to_univ(forms[0]);
    for f in &forms[1..] {
        g = univ_gcd(field, &g, &to_univ(f));
        if univ_degree(field, &g) == Some(0) {
            return true;
        }
    }
    matches!(univ_degree(field, &g), Some(0))
}

fn univ_degree(field: &Field, f: &[Elem]) -> Option<usize> {
    (0..f.len()).rev().find(|&i| !field.is_zero(&f[i]))
}

fn univ_gcd(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        let Some(dy) = univ_degree(field, &y) else {
            return x;
        };
        let Some(dx) = univ_degree(field, &x) else {
            return y;
        };
        if dx < dy {
            std::mem::swap(&mut x, &mut y);
            continue;
        }
        // x -= (lead x / lead y) t^(dx-dy) * y
        let factor = field.div(&x[dx], &y[dy]).expect("leading coefficient nonzero");
        let shift = dx - dy;
        for i in 0..=dy {
            let sub = field.mul(&factor, &y[i]);
            x[i + shift] = field.sub(&x[i + shift], &sub);
        }
        debug_assert!(field.is_zero(&x[dx]));
    }
}

/// Resultant of two binary forms of the same degree m whose coefficients
/// are ternary forms, via the full 2m x 2m Sylvester matrix (no trimming:
/// vanishing leading coefficients encode roots at infinity).
fn binary_resultant(
    field: &Field,
    a: &[TernaryForm],
    b: &[TernaryForm],
) -> Result<TernaryForm> {
    let m = a.len() - 1;
    if b.len() != m + 1 {
        return Err(Error::Dimension("binary forms of unequal degree".into()));
    }
    let n = 2 * m;
    let zero = TernaryForm::zero(field, 0);
    let mut mat = vec![vec![zero; n]; n];
    for r in 0..m {
        for (i, c) in a.iter().enumerate() {
            mat[r][r + i] = c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            mat[m + r][r + i] = c.clone();
        }
    }
    // Bareiss over the form ring (same scheme as the Sylvester resultant)
    let mut sign_flip = false;
    let mut prev = TernaryForm::monomial(field, [0, 0, 0]);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return Ok(TernaryForm::zero(field, 0));
            };
            mat.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .try_div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            mat[i][k] = TernaryForm::zero(field, 0);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}

fn eval_binary(field: &Field, f: &BinaryForm, s: &Elem, t: &Elem) -> Elem {
    let m = f.len() - 1;
    let mut acc = field.zero();
    for (i, c) in f.iter().enumerate() {
        let v = field.mul(
            &field.pow_u64(s, (m - i) as u64),
            &field.pow_u64(t, i as u64),
        );
        acc = field.add(&acc, &field.mul(c, &v));
    }
    acc
}

/// Implicit equation of the rational curve (X(s,t) : Y(s,t) : Z(s,t)),
/// by eliminating (s, t) from y X - x Y and z X - x Z and stripping
/// extraneous coordinate factors. The result has degree exactly m for a
/// birational degree-m parametrization; a degree collapse is reported.
pub fn implicitize_rational_curve(
    field: &Field,
    x_form: &BinaryForm,
    y_form: &BinaryForm,
    z_form: &BinaryForm,
) -> Result<TernaryForm> {
    let m = x_form.len() - 1;
    if y_form.len() != m + 1 || z_form.len() != m + 1 {
        return Err(Error::Dimension(
            "parametrization components of unequal degree".into(),
        ));
    }
    if !binary_forms_coprime(field, &[x_form, y_form, z_form]) {
        return Err(Error::InvalidInput(
            "parametrization components share a common root".into(),
        ));
    }
    let x = TernaryForm::coordinate(field, 0);
    let y = TernaryForm::coordinate(field, 1);
    let z = TernaryForm::coordinate(field, 2);
    let lift = |f: &BinaryForm, l: &TernaryForm| -> Vec<TernaryForm> {
        f.iter()
            .map(|c| l.scale(c))
            .collect()
    };
    // coefficients of y X(s,t) - x Y(s,t) as a binary form in (s, t)
    let a: Vec<TernaryForm> = lift(x_form, &y)
        .into_iter()
        .zip(lift(y_form, &x))
        .map(|(p, q)| p.sub(&q))
        .collect();
    let b: Vec<TernaryForm> = lift(x_form, &z)
        .into_iter()
        .zip(lift(z_form, &x))
        .map(|(p, q)| p.sub(&q))
        .collect();
    let mut res = binary_resultant(field, &a, &b)?;
    if res.is_zero() {
        return Err(Error::Construction(
            "vanishing resultant: parametrization is degenerate".into(),
        ));
    }
    // strip powers of the coordinates introduced by base points of the
    // two auxiliary pencils
    for coord in [&x, &y, &z] {
        while res.degree() > 0 {
            match res.try_div_exact(coord) {
                Some(q) if !q.is_zero() => res = q,
                _ => break,
            }
        }
    }
    if res.degree() < m {
        return Err(Error::Construction(format!(
            "degree collapse: implicit equation has degree {} < {m} \
             (parametrization not birational onto a degree-{m} curve)",
            res.degree()
        )));
    }
    if res.degree() > m {
        return Err(Error::Construction(format!(
            "extraneous factor: implicit equation has degree {} > {m}",
            res.degree()
        )));
    }
    // sampled check: the equation vanishes on the parametrized points
    for i in 0..=(2 * m as i64) {
        let (s, t) = (field.one(), field.from_i64(i));
        let px = eval_binary(field, x_form, &s, &t);
        let py = eval_binary(field, y_form, &s, &t);
        let pz = eval_binary(field, z_form, &s, &t);
        if field.is_zero(&px) && field.is_zero(&py) && field.is_zero(&pz) {
            continue;
        }
        let v = res.eval(&[px, py, pz]);
        if !field.is_zero(&v) {
            return Err(Error::Construction(
                "implicit equation fails on a parametrized point".into(),
            ));
        }
    }
    Ok(res)
}

#[derive(Clone, Debug)]
pub struct CrossRatioReport {
    pub j1: Elem,
    pub j2: Elem,
    pub distinct: bool,
}

/// Pull the four base points back to each conic's parameter line and
/// compare the S4-invariants j of the two cross-ratios. Distinct j proves
/// the unordered quadruples are not projectively equivalent; equal j is
/// reported as "possibly equivalent" (distinct = false).
pub fn pencil_cross_ratio_check(
    base: &[ProjPoint],
    conic1: &TernaryForm,
    conic2: &TernaryForm,
) -> Result<CrossRatioReport> {
    if base.len() != 4 {
        return Err(Error::InvalidInput("need exactly four base points".into()));
    }
    let field = base[0].field().clone();
    // general position: no three collinear
    for skip in 0..4 {
        let triple: Vec<ProjPoint> = (0..4)
            .filter(|&i| i != skip)
            .map(|i| base[i].clone())
            .collect();
        if evaluation_matrix(&triple, 1)?.rank() < 3 {
            return Err(Error::InvalidInput(
                "three of the base points are collinear".into(),
            ));
        }
    }
    for conic in [conic1, conic2] {
        if conic.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: conic.degree(),
            });
        }
        if !conic_is_smooth(conic)? {
            return Err(Error::InvalidInput("conic is singular".into()));
        }
        for p in base {
            if !field.is_zero(&conic.eval_point(p)?) {
                return Err(Error::PointNotOnCurve(p.to_string_pretty()));
            }
        }
    }
    let j1 = conic_quadruple_j(&field, conic1, base)?;
    let j2 = conic_quadruple_j(&field, conic2, base)?;
    let distinct = j1 != j2;
    Ok(CrossRatioReport { j1, j2, distinct })
}

/// Parameter of each base point on the conic, seen from the first base
/// point: the line joining P0 to the point (the tangent line for P0
/// itself), traced to a fixed auxiliary line.
fn conic_quadruple_j(field: &Field, conic: &TernaryForm, base: &[ProjPoint]) -> Result<Elem> {
    let p0 = &base[0];
    // auxiliary coordinate line x_c = 0 not through p0
    let c_axis = (0..3)
        .find(|&i| !field.is_zero(&p0.coords()[i]))
        .expect("projective point has a nonzero coordinate");
    let others: Vec<usize> = (0..3).filter(|&i| i != c_axis).collect();
    let mut params: Vec<(Elem, Elem)> = Vec::with_capacity(4);
    // tangent line at p0: gradient coefficients
    let parts = conic.partials()?;
    let tangent = [
        parts[0].eval_point(p0)?,
        parts[1].eval_point(p0)?,
        parts[2].eval_point(p0)?,
    ];
    // intersection of the tangent with x_c = 0: solve a*u + b*v = 0 in the
    // two free coordinates (u, v) = (-b_coeff... direction orthogonal)
    {
        let a = tangent[others[0]].clone();
        let b = tangent[others[1]].clone();
        if field.is_zero(&a) && field.is_zero(&b) {
            return Err(Error::InvalidInput(
                "degenerate tangent direction at the first base point".into(),
            ));
        }
        params.push((field.neg(&b), a));
    }
    for p in &base[1..] {
        // line p0-p meets x_c = 0 at p0_c * p - p_c * p0
        let scale_p = p0.coords()[c_axis].clone();
        let scale_p0 = p.coords()[c_axis].clone();
        let u = field.sub(
            &field.mul(&scale_p, &p.coords()[others[0]]),
            &field.mul(&scale_p0, &p0.coords()[others[0]]),
        );
        let v = field.sub(
            &field.mul(&scale_p, &p.coords()[others[1]]),
            &field.mul(&scale_p0, &p0.coords()[others[1]]),
        );
        if field.is_zero(&u) && field.is_zero(&v) {
            return Err(Error::DuplicatePoints);
        }
        params.push((u, v));
    }
    let lambda = cross_ratio(field, &params)?;
    j_invariant(field, &lambda)
}

/// Cross-ratio of four points (u_i : v_i) of the projective line:
/// (d13 d24) / (d14 d23) with d_ij = u_i v_j - u_j v_i.
pub fn cross_ratio(field: &Field, pts: &[(Elem, Elem)]) -> Result<Elem> {
    if pts.len() != 4 {
        return Err(Error::InvalidInput("cross-ratio needs four points".into()));
    }
    let d = |i: usize, j: usize| {
        field.sub(
            &field.mul(&pts[i].0, &pts[j].1),
            &field.mul(&pts[j].0, &pts[i].1),
        )
    };
    let num = field.mul(&d(0, 2), &d(1, 3));
    let den = field.mul(&d(0, 3), &d(1, 2));
    if field.is_zero(&den) {
        return Err(Error::DuplicatePoints);
    }
    field.div(&num, &den)
}

/// The S4-invariant of the cross-ratio:
/// j(lambda) = 256 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2).
pub fn j_invariant(field: &Field, lambda: &Elem) -> Result<Elem> {
    let one = field.one();
    if field.is_zero(lambda) || *lambda == one {
        return Err(Error::InvalidInput(
            "cross-ratio is degenerate (0 or 1)".into(),
        ));
    }
    let l2 = field.mul(lambda, lambda);
    let num_base = field.add(&field.sub(&l2, lambda), &one);
    let num = field.mul(
        &field.from_i64(256),
        &field.mul(&num_base, &field.mul(&num_base, &num_base)),
    );
    let lm1 = field.sub(lambda, &one);
    let den = field.mul(&l2, &field.mul(&lm1, &lm1));
    field.div(&num, &den)
}

/// Seeded random pencil experiment: four random points in general position
/// over the field, two random smooth members of the pencil of conics
/// through them, and the j-comparison. Returns the report.
pub fn random_pencil_trial(field: &Field, seed: u64) -> Result<CrossRatioReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let mut pts = Vec::new();
        let mut ok = true;
        for _ in 0..4 {
            let coords = [
                random_elem(field, &mut rng),
                random_elem(field, &mut rng),
                field.one(),
            ];
            match ProjPoint::new(field, coords) {
                Ok(p) => {
                    if pts.contains(&p) {
                        ok = false;
                    }
                    pts.push(p);
                }
                Err(_) => ok = false,
            }
        }
        if !ok {
            continue;
        }
        // general position
        let mut general = true;
        for skip in 0..4 {
            let triple: Vec<ProjPoint> = (0..4)
                .filter(|&i| i != skip)
                .map(|i| pts[i].clone())
                .collect();
            if evaluation_matrix(&triple, 1)?.rank() < 3 {
                general = false;
            }
        }
        if !general {
            continue;
        }
        let pencil = evaluation_matrix(&pts, 2)?.kernel_basis();
        if pencil.len() != 2 {
            continue;
        }
        let sample = |rng: &mut ChaCha8Rng| -> Result<TernaryForm> {
            let mut coeffs = vec![field.zero(); dim_forms(2)];
            for basis_vec in &pencil {
                let r = random_elem(field, rng);
                for (c, b) in coeffs.iter_mut().zip(basis_vec) {
                    *c = field.add(c, &field.mul(&r, b));
                }
            }
            TernaryForm::from_coeff_vec(field, 2, coeffs)
        };
        let c1 = sample(&mut rng)?;
        let c2 = sample(&mut rng)?;
        if c1.is_zero() || c2.is_zero() {
            continue;
        }
        if !conic_is_smooth(&c1)? || !conic_is_smooth(&c2)? {
            continue;
        }
        if c1.normalized() == c2.normalized() {
            continue;
        }
        match pencil_cross_ratio_check(&pts, &c1, &c2) {
            Ok(rep) => return Ok(rep),
            Err(_) => continue,
        }
    }
    Err(Error::Construction(
        "could not draw a nondegenerate pencil configuration; reseed".into(),
    ))
}
