//! Singularity inventory of a reduced plane curve: locate singular points
//! (exhaustive search over a prime field and small extensions, or declared
//! and verified), classify each as node (A1) or ordinary cusp (A2), compute
//! the geometric genus, and certify irreducibility by a Bezout count.

use crate::error::{Error, Result};
use crate::field::{Elem, Field, GfCtx, GfEl, MAX_EXT};
use crate::form::{local_expansion, TernaryForm};
use crate::point::ProjPoint;
use crate::resultant::{coefficients_wrt, sylvester_resultant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingKind {
    Node,
    Cusp,
    Other,
}

impl SingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SingKind::Node => "node",
            SingKind::Cusp => "cusp",
            SingKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub kind: SingKind,
    /// Tangent cone lines as global linear forms: two for a node whose
    /// tangent directions are rational over the working field, one for a
    /// cusp, empty for a node with conjugate tangents or kind `other`.
    pub tangents: Vec<TernaryForm>,
    /// For a node: whether the two tangent directions are rational over
    /// the working field. Always true for a cusp.
    pub tangents_rational: bool,
    /// Local delta invariant (1 for both node and cusp).
    pub delta: usize,
    /// Multiplicity of the adjoint (reduced point) condition.
    pub adjoint_multiplicity: usize,
    /// Rank of the local quadratic part (2 node, 1 cusp, diagnostic for other).
    pub quad_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Points were declared and each was verified singular; the list is
    /// exhaustive only if the construction asserted so.
    DeclaredVerified { asserted_complete: bool },
    /// Every point of P^2 over F_{p^e}, e <= K, was tested.
    ExhaustiveUpToExt(usize),
}

impl Completeness {
    pub fn is_complete(&self) -> bool {
        match self {
            Completeness::DeclaredVerified { asserted_complete } => *asserted_complete,
            Completeness::ExhaustiveUpToExt(_) => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Certified,
    ReducibleByConstruction,
    Assumed,
}

#[derive(Clone, Debug)]
pub struct CurveAnalysis {
    pub curve: TernaryForm,
    pub singular_points: Vec<SingularPoint>,
    pub k: usize,
    pub d: usize,
    pub genus: i64,
    pub reduced: bool,
    pub completeness: Completeness,
    pub irreducibility: Irreducibility,
}

impl CurveAnalysis {
    pub fn degree(&self) -> usize {
        self.curve.degree()
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.singular_points.iter().map(|s| s.point.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum AnalysisMode {
    Declared {
        points: Vec<ProjPoint>,
        asserted_complete: bool,
    },
    Search {
        max_ext: usize,
    },
}

/// Guard shared by all derivative-based operations: the characteristic must
/// exceed the curve degree (or be zero).
fn char_guard(f: &TernaryForm) -> Result<()> {
    let p = f.field().characteristic();
    if p != 0 && p <= f.degree() as u64 {
        return Err(Error::SmallCharacteristic {
            p,
            degree: f.degree(),
        });
    }
    Ok(())
}

/// Check that P satisfies f = f_x = f_y = f_z = 0.
pub fn verify_singular(f: &TernaryForm, p: &ProjPoint) -> Result<()> {
    let fld = f.field();
    if !fld.is_zero(&f.eval_point(p)?) {
        return Err(Error::PointNotOnCurve(p.to_string_pretty()));
    }
    let parts = f.partials()?;
    for d in &parts {
        if !fld.is_zero(&d.eval_point(p)?) {
            return Err(Error::PointNotSingular(p.to_string_pretty()));
        }
    }
    Ok(())
}

pub fn declare_singular_points(f: &TernaryForm, points: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
    char_guard(f)?;
    for (i, p) in points.iter().enumerate() {
        verify_singular(f, p)?;
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoints);
        }
    }
    Ok(points.to_vec())
}

/// Fast evaluator for forms over a finite field, working directly on raw
/// extension elements to keep the exhaustive point search allocation-free.
struct GfEvaluator {
    terms: Vec<([usize; 3], GfEl)>,
    deg: usize,
}

impl GfEvaluator {
    fn new(f: &TernaryForm) -> GfEvaluator {
        let mut terms = Vec::new();
        for (idx, e) in crate::form::monomial_basis(f.degree()).iter().enumerate() {
            if let Elem::Gf(g) = &f.coeffs()[idx] {
                let ctx = f.field().gf().expect("finite-field form");
                if !ctx.is_zero_el(g) {
                    terms.push(([e[0] as usize, e[1] as usize, e[2] as usize], *g));
                }
            }
        }
        GfEvaluator {
            terms,
            deg: f.degree(),
        }
    }

    fn eval(&self, ctx: &GfCtx, coords: &[GfEl; 3]) -> GfEl {
        let mut pows = [[ctx.zero_el(); 16]; 3];
        for v in 0..3 {
            pows[v][0] = ctx.one_el();
            for k in 1..=self.deg {
                pows[v][k] = ctx.mul_el(&pows[v][k - 1], &coords[v]);
            }
        }
        let mut acc = ctx.zero_el();
        for (e, c) in &self.terms {
            let m = ctx.mul_el(&ctx.mul_el(&pows[0][e[0]], &pows[1][e[1]]), &pows[2][e[2]]);
            acc = ctx.add_el(&acc, &ctx.mul_el(&m, c));
        }
        acc
    }
}

/// Exhaustively enumerate P^2(F_{p^e}) for e <= max_ext and return every
/// point where f and all three partials vanish. Each point is returned over
/// the smallest extension containing it, paired with that degree.
pub fn find_singular_points(
    f: &TernaryForm,
    max_ext: usize,
) -> Result<Vec<(usize, ProjPoint)>> {
    let base = f.field().clone();
    let Some(ctx0) = base.gf() else {
        return Err(Error::NeedsDeclaredPoints);
    };
    if ctx0.ext() != 1 {
        return Err(Error::InvalidInput(
            "singular-point search starts from the prime field".into(),
        ));
    }
    if max_ext == 0 || max_ext > MAX_EXT {
        return Err(Error::ExtDegree(max_ext, MAX_EXT));
    }
    char_guard(f)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut found = Vec::new();
    for e in 1..=max_ext {
        let fld = if e == 1 {
            base.clone()
        } else {
            Field::prime_ext(ctx0.p(), e)?
        };
        let fe = f.rebase(&fld)?;
        let parts = fe.partials()?;
        let ctx = fld.gf().unwrap();
        let evs: Vec<GfEvaluator> = std::iter::once(&fe)
            .chain(parts.iter())
            .map(GfEvaluator::new)
            .collect();
        let proper_divs: Vec<usize> = (1..e).filter(|d| e % d == 0).collect();
        let q = ctx.order();
        let consider = |coords: [GfEl; 3], found: &mut Vec<(usize, ProjPoint)>| {
            // skip points already found over a proper subfield
            if !proper_divs.is_empty()
                && proper_divs.iter().any(|&dd| {
                    coords.iter().all(|c| ctx.in_subfield(c, dd))
                })
            {
                return;
            }
            if evs.iter().all(|ev| ctx.is_zero_el(&ev.eval(ctx, &coords))) {
                let elems = [
                    Elem::Gf(coords[0]),
                    Elem::Gf(coords[1]),
                    Elem::Gf(coords[2]),
                ];
                let p = ProjPoint::new(&fld, elems).expect("nonzero coordinates");
                found.push((e, p));
            }
        };
        // (a : b : 1)
        for ca in 0..q {
            let a = ctx.decode(ca);
            for cb in 0..q {
                let b = ctx.decode(cb);
                consider([a, b, ctx.one_el()], &mut found);
            }
        }
        // (a : 1 : 0)
        for ca in 0..q {
            consider([ctx.decode(ca), ctx.one_el(), ctx.zero_el()], &mut found);
        }
        // (1 : 0 : 0)
        consider([ctx.one_el(), ctx.zero_el(), ctx.zero_el()], &mut found);
    }
    Ok(found)
}

/// Classify a singular point by its local expansion in the affine chart
/// where coordinate `chart` is nonzero.
pub fn classify_in_chart(f: &TernaryForm, p: &ProjPoint, chart: usize) -> Result<SingularPoint> {
    char_guard(f)?;
    let fld = f.field().clone();
    let exp = local_expansion(f, chart, p)?;
    if !exp.part_is_zero(0) {
        return Err(Error::PointNotOnCurve(p.to_string_pretty()));
    }
    if !exp.part_is_zero(1) {
        return Err(Error::PointNotSingular(p.to_string_pretty()));
    }
    let q2 = exp.homogeneous_part(2);
    let (q20, q11, q02) = (q2[0].clone(), q2[1].clone(), q2[2].clone());
    // disc = q11^2 - 4 q20 q02; nonzero iff the quadratic part has rank 2
    let disc = fld.sub(
        &fld.mul(&q11, &q11),
        &fld.mul(&fld.from_i64(4), &fld.mul(&q20, &q02)),
    );
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    // a local linear form alpha*u + beta*v as a global line through p
    let to_line = |alpha: &Elem, beta: &Elem| -> TernaryForm {
        let inv = fld.inv(&p.coords()[chart]).expect("chart coordinate nonzero");
        let cu = fld.mul(&p.coords()[others[0]], &inv);
        let cv = fld.mul(&p.coords()[others[1]], &inv);
        // alpha*(X_u - cu*X_c) + beta*(X_v - cv*X_c)
        let mut lu = TernaryForm::coordinate(&fld, others[0])
            .sub(&TernaryForm::coordinate(&fld, chart).scale(&cu));
        lu = lu.scale(alpha);
        let lv = TernaryForm::coordinate(&fld, others[1])
            .sub(&TernaryForm::coordinate(&fld, chart).scale(&cv));
        lu.add(&lv.scale(beta))
    };
    if !fld.is_zero(&disc) {
        // node: factor q20 u^2 + q11 uv + q02 v^2 into two distinct lines
        let (tangents, rational) = if let Some(s) = fld.sqrt(&disc) {
            if !fld.is_zero(&q20) {
                // roots u/v = (-q11 +- s)/(2 q20): lines 2 q20 u + (q11 -+ s) v
                let two_q20 = fld.mul(&fld.from_i64(2), &q20);
                let l1 = to_line(&two_q20, &fld.add(&q11, &s));
                let l2 = to_line(&two_q20, &fld.sub(&q11, &s));
                (vec![l1, l2], true)
            } else {
                // q = v (q11 u + q02 v)
                let l1 = to_line(&fld.zero(), &fld.one());
                let l2 = to_line(&q11, &q02);
                (vec![l1, l2], true)
            }
        } else {
            (Vec::new(), false)
        };
        return Ok(SingularPoint {
            point: p.clone(),
            kind: SingKind::Node,
            tangents,
            tangents_rational: rational,
            delta: 1,
            adjoint_multiplicity: 1,
            quad_rank: 2,
        });
    }
    let quad_zero = fld.is_zero(&q20) && fld.is_zero(&q11) && fld.is_zero(&q02);
    if quad_zero {
        return Ok(SingularPoint {
            point: p.clone(),
            kind: SingKind::Other,
            tangents: Vec::new(),
            tangents_rational: false,
            delta: 1,
            adjoint_multiplicity: 1,
            quad_rank: 0,
        });
    }
    // rank 1: q = c * L^2 with L = alpha u + beta v rational over the field
    let (alpha, beta) = if !fld.is_zero(&q20) {
        // q20 (u + q11/(2 q20) v)^2
        let half = fld
            .div(&q11, &fld.mul(&fld.from_i64(2), &q20))
            .expect("q20 nonzero");
        (fld.one(), half)
    } else {
        // q02 (v + q11/(2 q02) u)^2, and q11 = 0 here since disc = 0
        (fld.zero(), fld.one())
    };
    // A2 condition: the cubic part does not vanish on the direction of L = 0,
    // which is (u, v) = (beta, -alpha)
    let c3 = exp.homogeneous_part(3);
    let dir = [beta.clone(), fld.neg(&alpha)];
    let mut val = fld.zero();
    for (j, c) in c3.iter().enumerate() {
        // c * u^{3-j} v^j
        let t = fld.mul(
            &fld.pow_u64(&dir[0], (3 - j) as u64),
            &fld.pow_u64(&dir[1], j as u64),
        );
        val = fld.add(&val, &fld.mul(c, &t));
    }
    if fld.is_zero(&val) {
        return Ok(SingularPoint {
            point: p.clone(),
            kind: SingKind::Other,
            tangents: vec![to_line(&alpha, &beta)],
            tangents_rational: true,
            delta: 1,
            adjoint_multiplicity: 1,
            quad_rank: 1,
        });
    }
    Ok(SingularPoint {
        point: p.clone(),
        kind: SingKind::Cusp,
        tangents: vec![to_line(&alpha, &beta)],
        tangents_rational: true,
        delta: 1,
        adjoint_multiplicity: 1,
        quad_rank: 1,
    })
}

pub fn classify_singularity(f: &TernaryForm, p: &ProjPoint) -> Result<SingularPoint> {
    classify_in_chart(f, p, p.chart())
}

/// Find a substitution x -> x, y -> y + a x, z -> z + b x making the
/// coefficient of x^n nonzero; returns the transformed form.
fn x_lead_substitution(f: &TernaryForm) -> Result<TernaryForm> {
    let fld = f.field().clone();
    let n = f.degree() as i64;
    for a in 0..=n {
        for b in 0..=n {
            let v = f.eval(&[fld.one(), fld.from_i64(a), fld.from_i64(b)]);
            if !fld.is_zero(&v) {
                let x = TernaryForm::coordinate(&fld, 0);
                let lines = [
                    x.clone(),
                    TernaryForm::coordinate(&fld, 1).add(&x.scale(&fld.from_i64(a))),
                    TernaryForm::coordinate(&fld, 2).add(&x.scale(&fld.from_i64(b))),
                ];
                return Ok(f.linear_substitute(&lines));
            }
        }
    }
    Err(Error::ZeroPolynomial)
}

/// Decide whether a nonzero binary resultant form vanishes identically,
/// by specializing the eliminated pair (y, z) at points of P^1. Both input
/// polynomials must have constant (degree-0 in y, z) leading coefficients,
/// so specialization commutes with the resultant.
fn resultant_vanishes(f: &TernaryForm, g: &TernaryForm) -> Result<bool> {
    let fld = f.field().clone();
    let res_deg = f.degree() * g.degree();
    let p = fld.characteristic();
    let q = if p == 0 { u64::MAX } else { fld.gf().unwrap().order() };
    if (q as u128) < res_deg as u128 + 1 {
        // not enough rational points of P^1: take the full form resultant
        let r = crate::resultant::resultant_wrt(f, g, 0)?;
        return Ok(r.is_zero());
    }
    let pf = coefficients_wrt(f, 0);
    let pg = coefficients_wrt(g, 0);
    let specialize = |poly: &crate::resultant::FormPoly, y0: &Elem, z0: &Elem| {
        let coeffs: Vec<TernaryForm> = poly
            .coeffs
            .iter()
            .map(|c| {
                let v = c.eval(&[fld.zero(), y0.clone(), z0.clone()]);
                let mut t = TernaryForm::zero(&fld, 0);
                t.set_coeff(0, 0, 0, v);
                t
            })
            .collect();
        crate::resultant::FormPoly { coeffs }
    };
    let mut points: Vec<(Elem, Elem)> = Vec::with_capacity(res_deg + 2);
    if p == 0 {
        for i in 0..=(res_deg as i64) {
            points.push((fld.from_i64(i), fld.one()));
        }
        points.push((fld.one(), fld.zero()));
    } else {
        let ctx = fld.gf().unwrap();
        for c in 0..q.min(res_deg as u64 + 1) {
            points.push((Elem::Gf(ctx.decode(c)), fld.one()));
        }
        points.push((fld.one(), fld.zero()));
    }
    for (y0, z0) in points.iter().take(res_deg + 1) {
        let sf = specialize(&pf, y0, z0);
        let sg = specialize(&pg, y0, z0);
        let r = sylvester_resultant(&fld, &sf, &sg)?;
        if !r.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A curve is reduced iff, after a coordinate change giving it a nonzero
/// x^n coefficient, the resultant of f and f_x with respect to x is a
/// nonzero form (discriminant criterion; valid since char > degree).
pub fn is_reduced(f: &TernaryForm) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    char_guard(f)?;
    if f.degree() == 0 {
        return Ok(true);
    }
    if f.degree() == 1 {
        return Ok(true);
    }
    let g = x_lead_substitution(f)?;
    let gx = g.partials()?[0].clone();
    Ok(!resultant_vanishes(&g, &gx)?)
}

pub fn analyze(f: &TernaryForm, mode: AnalysisMode) -> Result<CurveAnalysis> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    char_guard(f)?;
    if !is_reduced(f)? {
        return Err(Error::NotReduced);
    }
    let n = f.degree();
    let (work_curve, raw_points, completeness) = match mode {
        AnalysisMode::Declared {
            points,
            asserted_complete,
        } => {
            let pts = declare_singular_points(f, &points)?;
            (
                f.clone(),
                pts,
                Completeness::DeclaredVerified { asserted_complete },
            )
        }
        AnalysisMode::Search { max_ext } => {
            let found = find_singular_points(f, max_ext)?;
            // move everything to the smallest field containing all points
            let mut need = 1usize;
            for (e, _) in &found {
                need = lcm(need, *e);
            }
            if need > MAX_EXT {
                return Err(Error::ExtDegree(need, MAX_EXT));
            }
            let p = f.field().characteristic();
            let target = if need == 1 {
                f.field().clone()
            } else {
                Field::prime_ext(p, need)?
            };
            let fe = f.rebase(&target)?;
            let pts = found
                .iter()
                .map(|(_, pt)| pt.rebase(&target))
                .collect::<Result<Vec<_>>>()?;
            (fe, pts, Completeness::ExhaustiveUpToExt(max_ext))
        }
    };
    let mut sing = Vec::new();
    for p in &raw_points {
        let s = classify_singularity(&work_curve, p)?;
        if s.kind == SingKind::Other {
            return Err(Error::UnsupportedSingularity {
                point: p.to_string_pretty(),
                quad_rank: s.quad_rank,
            });
        }
        sing.push(s);
    }
    let k = sing.iter().filter(|s| s.kind == SingKind::Cusp).count();
    let d = sing.iter().filter(|s| s.kind == SingKind::Node).count();
    let genus = ((n as i64 - 1) * (n as i64 - 2)) / 2 - d as i64 - k as i64;
    let mut analysis = CurveAnalysis {
        curve: work_curve,
        singular_points: sing,
        k,
        d,
        genus,
        reduced: true,
        completeness,
        irreducibility: Irreducibility::Assumed,
    };
    if irreducibility_certificate(&analysis)? == Irreducibility::Certified {
        analysis.irreducibility = Irreducibility::Certified;
    }
    Ok(analysis)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Bezout certificate: a reducible reduced curve of degree n splits as
/// A union B with deg A * deg B >= n - 1 intersection points, each of which
/// is a two-branch singularity, hence a node (cusps are unibranch). So a
/// complete inventory with d < n - 1 forces irreducibility.
pub fn irreducibility_certificate(analysis: &CurveAnalysis) -> Result<Irreducibility> {
    if analysis.irreducibility == Irreducibility::ReducibleByConstruction {
        return Ok(Irreducibility::ReducibleByConstruction);
    }
    if !analysis.completeness.is_complete() {
        return Err(Error::IncompleteInventory);
    }
    let n = analysis.degree();
    let all_simple = analysis
        .singular_points
        .iter()
        .all(|s| matches!(s.kind, SingKind::Node | SingKind::Cusp));
    if all_simple && n >= 1 && analysis.d + 1 < n {
        Ok(Irreducibility::Certified)
    } else {
        Ok(Irreducibility::Assumed)
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub points: Vec<ProjPoint>,
    pub transversal: bool,
    pub searched_ext: usize,
}

/// Common points of two curves up to the extension bound, with a
/// conservative transversality verdict: "transversal" only when the point
/// count equals deg A * deg B and both curves are smooth with distinct
/// tangent lines at every common point.
pub fn transversal_intersection(
    a: &TernaryForm,
    b: &TernaryForm,
    max_ext: usize,
) -> Result<IntersectionReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fld = a.field().clone();
    let Some(ctx0) = fld.gf() else {
        return Err(Error::NeedsPrimeField);
    };
    if ctx0.ext() != 1 {
        return Err(Error::InvalidInput(
            "intersection search starts from the prime field".into(),
        ));
    }
    if max_ext == 0 || max_ext > MAX_EXT {
        return Err(Error::ExtDegree(max_ext, MAX_EXT));
    }
    // common-component check: after a shared coordinate change giving both
    // full x-degree, Res_x(a, b) = 0 identically iff they share a factor
    {
        let prod = a.mul(b);
        let n = prod.degree() as i64;
        let mut done = false;
        'outer: for s in 0..=n {
            for t in 0..=n {
                let v = prod.eval(&[fld.one(), fld.from_i64(s), fld.from_i64(t)]);
                if !fld.is_zero(&v) {
                    let x = TernaryForm::coordinate(&fld, 0);
                    let lines = [
                        x.clone(),
                        TernaryForm::coordinate(&fld, 1).add(&x.scale(&fld.from_i64(s))),
                        TernaryForm::coordinate(&fld, 2).add(&x.scale(&fld.from_i64(t))),
                    ];
                    let at = a.linear_substitute(&lines);
                    let bt = b.linear_substitute(&lines);
                    if resultant_vanishes(&at, &bt)? {
                        return Err(Error::CommonComponent);
                    }
                    done = true;
                    break 'outer;
                }
            }
        }
        if !done {
            return Err(Error::ZeroPolynomial);
        }
    }
    // enumerate common zeros
    let mut points = Vec::new();
    let mut all_fields: Vec<Field> = Vec::new();
    for e in 1..=max_ext {
        let f_e = if e == 1 {
            fld.clone()
        } else {
            Field::prime_ext(ctx0.p(), e)?
        };
        all_fields.push(f_e);
    }
    for (ei, f_e) in all_fields.iter().enumerate() {
        let e = ei + 1;
        let ctx = f_e.gf().unwrap();
        let ae = a.rebase(f_e)?;
        let be = b.rebase(f_e)?;
        let eva = GfEvaluator::new(&ae);
        let evb = GfEvaluator::new(&be);
        let proper_divs: Vec<usize> = (1..e).filter(|d| e % d == 0).collect();
        let q = ctx.order();
        let consider = |coords: [GfEl; 3], points: &mut Vec<ProjPoint>| {
            if !proper_divs.is_empty()
                && proper_divs
                    .iter()
                    .any(|&dd| coords.iter().all(|c| ctx.in_subfield(c, dd)))
            {
                return;
            }
            if ctx.is_zero_el(&eva.eval(ctx, &coords)) && ctx.is_zero_el(&evb.eval(ctx, &coords)) {
                let elems = [
                    Elem::Gf(coords[0]),
                    Elem::Gf(coords[1]),
                    Elem::Gf(coords[2]),
                ];
                points.push(ProjPoint::new(f_e, elems).expect("nonzero coordinates"));
            }
        };
        for ca in 0..q {
            let x = ctx.decode(ca);
            for cb in 0..q {
                consider([x, ctx.decode(cb), ctx.one_el()], &mut points);
            }
        }
        for ca in 0..q {
            consider([ctx.decode(ca), ctx.one_el(), ctx.zero_el()], &mut points);
        }
        consider([ctx.one_el(), ctx.zero_el(), ctx.zero_el()], &mut points);
    }
    // transversality: full count, and smooth with distinct tangents everywhere
    let expected = a.degree() * b.degree();
    let mut transversal = points.len() == expected;
    if transversal {
        'check: for p in &points {
            let f_e = p.field().clone();
            let ae = a.rebase(&f_e)?;
            let be = b.rebase(&f_e)?;
            let ga = ae.partials()?;
            let gb = be.partials()?;
            let grad = |g: &[TernaryForm; 3]| -> Result<[Elem; 3]> {
                Ok([
                    g[0].eval_point(p)?,
                    g[1].eval_point(p)?,
                    g[2].eval_point(p)?,
                ])
            };
            let ta = grad(&ga)?;
            let tb = grad(&gb)?;
            let za = ta.iter().all(|v| f_e.is_zero(v));
            let zb = tb.iter().all(|v| f_e.is_zero(v));
            if za || zb {
                transversal = false;
                break 'check;
            }
            // distinct tangent lines: gradients not proportional
            let mut proportional = true;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let det = f_e.sub(&f_e.mul(&ta[i], &tb[j]), &f_e.mul(&ta[j], &tb[i]));
                    if !f_e.is_zero(&det) {
                        proportional = false;
                    }
                }
            }
            if proportional {
                transversal = false;
                break 'check;
            }
        }
    }
    Ok(IntersectionReport {
        points,
        transversal,
        searched_ext: max_ext,
    })
}

#[derive(Clone, Debug)]
pub struct PositionReport {
    pub rank: usize,
    pub h0_ideal: usize,
    pub independent: bool,
}

/// Dimension of the degree-m forms vanishing at all the points, and whether
/// the points impose independent conditions.
pub fn points_position(points: &[ProjPoint], m: usize) -> Result<PositionReport> {
    let mat = crate::normality::evaluation_matrix(points, m)?;
    let rank = mat.rank();
    Ok(PositionReport {
        rank,
        h0_ideal: crate::form::dim_forms(m) - rank,
        independent: rank == points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cuspidal_cubic(f: &Field) -> TernaryForm {
        // z y^2 - x^3
        TernaryForm::from_int_terms(f, 3, &[([0, 2, 1], 1), ([3, 0, 0], -1)]).unwrap()
    }

    pub fn tricuspidal_quartic(f: &Field) -> TernaryForm {
        // x^2 y^2 + y^2 z^2 + z^2 x^2 - 2xyz(x + y + z)
        TernaryForm::from_int_terms(
            f,
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
        .unwrap()
    }

    #[test]
    fn find_cuspidal_cubic_singularities() {
        let f = Field::prime(31).unwrap();
        let c = cuspidal_cubic(&f);
        let found = find_singular_points(&c, 1).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].1, ProjPoint::from_i64(&f, [0, 0, 1]).unwrap());
    }

    #[test]
    fn smooth_conic_has_no_singularities() {
        let f = Field::prime(31).unwrap();
        let c = TernaryForm::from_int_terms(&f, 2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]).unwrap();
        let found = find_singular_points(&c, 2).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn tricuspidal_quartic_search_is_exhaustive() {
        let f = Field::prime(31).unwrap();
        let c = tricuspidal_quartic(&f);
        let found = find_singular_points(&c, 2).unwrap();
        let mut pts: Vec<ProjPoint> = found.iter().map(|(_, p)| p.clone()).collect();
        pts.sort_by_key(|p| p.to_string_pretty());
        let mut expected = vec![
            ProjPoint::from_i64(&f, [1, 0, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 1, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 0, 1]).unwrap(),
        ];
        expected.sort_by_key(|p| p.to_string_pretty());
        assert_eq!(pts, expected);
    }

    #[test]
    fn declare_accepts_and_rejects() {
        let f = Field::rationals();
        let c = cuspidal_cubic(&f);
        let good = ProjPoint::from_i64(&f, [0, 0, 1]).unwrap();
        assert!(declare_singular_points(&c, &[good]).is_ok());
        let bad = ProjPoint::from_i64(&f, [1, 1, 1]).unwrap();
        assert!(matches!(
            declare_singular_points(&c, &[bad]),
            Err(Error::PointNotSingular(_)) | Err(Error::PointNotOnCurve(_))
        ));
    }

    #[test]
    fn classify_cusp_and_node() {
        let f = Field::rationals();
        let c = cuspidal_cubic(&f);
        let p = ProjPoint::from_i64(&f, [0, 0, 1]).unwrap();
        let s = classify_singularity(&c, &p).unwrap();
        assert_eq!(s.kind, SingKind::Cusp);
        // cuspidal tangent is the line y = 0
        assert_eq!(s.tangents.len(), 1);
        assert_eq!(
            s.tangents[0].normalized(),
            TernaryForm::coordinate(&f, 1)
        );
        // z y^2 - x^2 (x + z): node at (0:0:1) with tangents y - x, y + x
        let nodal =
            TernaryForm::from_int_terms(&f, 3, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)])
                .unwrap();
        let s = classify_singularity(&nodal, &p).unwrap();
        assert_eq!(s.kind, SingKind::Node);
        assert!(s.tangents_rational);
        let mut t: Vec<TernaryForm> = s.tangents.iter().map(|l| l.normalized()).collect();
        t.sort_by_key(|l| l.to_string_pretty());
        let x = TernaryForm::coordinate(&f, 0);
        let y = TernaryForm::coordinate(&f, 1);
        let mut expected = vec![y.sub(&x).normalized(), y.add(&x).normalized()];
        expected.sort_by_key(|l| l.to_string_pretty());
        assert_eq!(t, expected);
    }

    #[test]
    fn classify_tricuspidal_corner() {
        let f = Field::rationals();
        let c = tricuspidal_quartic(&f);
        let p = ProjPoint::from_i64(&f, [1, 0, 0]).unwrap();
        let s = classify_singularity(&c, &p).unwrap();
        assert_eq!(s.kind, SingKind::Cusp);
        // tangent y - z (chart x = 1: quadratic part (y - z)^2)
        let y = TernaryForm::coordinate(&f, 1);
        let z = TernaryForm::coordinate(&f, 2);
        assert_eq!(s.tangents[0].normalized(), y.sub(&z).normalized());
    }

    #[test]
    fn tacnode_is_other() {
        // y^2 z^2 - x^4 has a tacnode-like point at (0:0:1): quadratic part
        // y^2 (rank 1), cubic part vanishes on y = 0 -> kind other
        let f = Field::rationals();
        let c = TernaryForm::from_int_terms(&f, 4, &[([0, 2, 2], 1), ([4, 0, 0], -1)]).unwrap();
        let p = ProjPoint::from_i64(&f, [0, 0, 1]).unwrap();
        let s = classify_singularity(&c, &p).unwrap();
        assert_eq!(s.kind, SingKind::Other);
        assert_eq!(s.quad_rank, 1);
    }

    #[test]
    fn reducedness() {
        let f = Field::rationals();
        assert!(is_reduced(&cuspidal_cubic(&f)).unwrap());
        let line = TernaryForm::from_int_terms(&f, 1, &[([1, 0, 0], 1), ([0, 1, 0], 1)]).unwrap();
        let double = line.mul(&line);
        assert!(!is_reduced(&double).unwrap());
        // double line times a conic: still non-reduced
        let conic = TernaryForm::from_int_terms(&f, 2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]).unwrap();
        assert!(!is_reduced(&double.mul(&conic)).unwrap());
        // distinct lines: reduced though reducible
        let line2 = TernaryForm::coordinate(&f, 2);
        assert!(is_reduced(&line.mul(&line2)).unwrap());
        // same checks over F_31
        let fp = Field::prime(31).unwrap();
        assert!(is_reduced(&cuspidal_cubic(&fp)).unwrap());
        let lp = TernaryForm::from_int_terms(&fp, 1, &[([1, 0, 0], 1), ([0, 1, 0], 1)]).unwrap();
        assert!(!is_reduced(&lp.mul(&lp)).unwrap());
    }

    #[test]
    fn analyze_tricuspidal_quartic() {
        let f = Field::rationals();
        let c = tricuspidal_quartic(&f);
        let pts = vec![
            ProjPoint::from_i64(&f, [1, 0, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 1, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 0, 1]).unwrap(),
        ];
        let a = analyze(
            &c,
            AnalysisMode::Declared {
                points: pts,
                asserted_complete: true,
            },
        )
        .unwrap();
        assert_eq!((a.k, a.d, a.genus), (3, 0, 0));
        assert_eq!(a.irreducibility, Irreducibility::Certified);
    }

    #[test]
    fn analyze_smooth_fermat_quintic() {
        let f = Field::prime(31).unwrap();
        let c = TernaryForm::from_int_terms(
            &f,
            5,
            &[([5, 0, 0], 1), ([0, 5, 0], 1), ([0, 0, 5], 1)],
        )
        .unwrap();
        let a = analyze(&c, AnalysisMode::Search { max_ext: 1 }).unwrap();
        assert_eq!((a.k, a.d, a.genus), (0, 0, 6));
    }

    #[test]
    fn small_characteristic_rejected() {
        let f = Field::prime(5).unwrap();
        // degree 5 = p: guard fires
        let c = TernaryForm::from_int_terms(&f, 5, &[([5, 0, 0], 1), ([0, 5, 0], 1)]).unwrap();
        assert!(matches!(
            analyze(&c, AnalysisMode::Search { max_ext: 1 }),
            Err(Error::SmallCharacteristic { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let f = Field::prime(31).unwrap();
        let x = TernaryForm::coordinate(&f, 0);
        let conic = TernaryForm::from_int_terms(&f, 2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]).unwrap();
        // tangent line: one point, not transversal
        let r = transversal_intersection(&x, &conic, 2).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0], ProjPoint::from_i64(&f, [0, 0, 1]).unwrap());
        assert!(!r.transversal);
        // secant line x - z: y^2 = z^2 on the line, two points
        let sec = TernaryForm::from_int_terms(&f, 1, &[([1, 0, 0], 1), ([0, 0, 1], -1)]).unwrap();
        let r = transversal_intersection(&sec, &conic, 1).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(r.transversal);
        // two distinct lines
        let y = TernaryForm::coordinate(&f, 1);
        let r = transversal_intersection(&x, &y, 1).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!(r.transversal);
        // common component
        let prod = x.mul(&conic);
        assert!(matches!(
            transversal_intersection(&x, &prod, 1),
            Err(Error::CommonComponent)
        ));
    }

    #[test]
    fn position_predicates() {
        let f = Field::rationals();
        let collinear = vec![
            ProjPoint::from_i64(&f, [0, 0, 1]).unwrap(),
            ProjPoint::from_i64(&f, [1, 0, 1]).unwrap(),
            ProjPoint::from_i64(&f, [2, 0, 1]).unwrap(),
        ];
        let r = points_position(&collinear, 1).unwrap();
        assert_eq!((r.rank, r.h0_ideal, r.independent), (2, 1, false));
        let general = vec![
            ProjPoint::from_i64(&f, [1, 0, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 1, 0]).unwrap(),
            ProjPoint::from_i64(&f, [0, 0, 1]).unwrap(),
        ];
        let r = points_position(&general, 1).unwrap();
        assert_eq!((r.rank, r.h0_ideal, r.independent), (3, 0, true));
        // six points on the conic xz = y^2: (t^2 : t : 1)
        let on_conic: Vec<ProjPoint> = (1..=6)
            .map(|t| ProjPoint::from_i64(&f, [t * t, t, 1]).unwrap())
            .collect();
        let r = points_position(&on_conic, 2).unwrap();
        assert_eq!((r.rank, r.h0_ideal, r.independent), (5, 1, false));
    }
}
