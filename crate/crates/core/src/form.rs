//! Dense homogeneous ternary forms over an exact field.
//!
//! Coefficients are stored in graded-lex order on the exponent triples of a
//! fixed degree: (a, b, c) before (a', b', c') when a > a', or a = a' and
//! b > b'. So degree 1 lists x, y, z in that order.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::point::ProjPoint;

/// Exponent triples of total degree m, in graded-lex order.
pub fn monomial_basis(m: usize) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(dim_forms(m));
    for a in (0..=m).rev() {
        for b in (0..=m - a).rev() {
            out.push([a as u32, b as u32, (m - a - b) as u32]);
        }
    }
    out
}

/// Number of degree-m monomials: (m+1)(m+2)/2.
pub fn dim_forms(m: usize) -> usize {
    (m + 1) * (m + 2) / 2
}

/// Index of (a, b, *) inside the degree-m basis.
pub fn mono_index(m: usize, a: u32, b: u32) -> usize {
    let d = m - a as usize;
    d * (d + 1) / 2 + (d - b as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    degree: usize,
    field: Field,
    coeffs: Vec<Elem>,
}

impl TernaryForm {
    pub fn zero(field: &Field, degree: usize) -> TernaryForm {
        TernaryForm {
            degree,
            field: field.clone(),
            coeffs: vec![field.zero(); dim_forms(degree)],
        }
    }

    pub fn from_terms(field: &Field, degree: usize, terms: &[([u32; 3], Elem)]) -> Result<TernaryForm> {
        let mut f = TernaryForm::zero(field, degree);
        for (exps, c) in terms {
            let total = (exps[0] + exps[1] + exps[2]) as usize;
            if total != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: total,
                });
            }
            let idx = mono_index(degree, exps[0], exps[1]);
            f.coeffs[idx] = field.add(&f.coeffs[idx], c);
        }
        Ok(f)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(field: &Field, degree: usize, terms: &[([u32; 3], i64)]) -> Result<TernaryForm> {
        let terms: Vec<([u32; 3], Elem)> = terms
            .iter()
            .map(|(e, v)| (*e, field.from_i64(*v)))
            .collect();
        TernaryForm::from_terms(field, degree, &terms)
    }

    pub fn monomial(field: &Field, exps: [u32; 3]) -> TernaryForm {
        let degree = (exps[0] + exps[1] + exps[2]) as usize;
        let mut f = TernaryForm::zero(field, degree);
        f.coeffs[mono_index(degree, exps[0], exps[1])] = field.one();
        f
    }

    /// The coordinate linear forms x, y, z.
    pub fn coordinate(field: &Field, i: usize) -> TernaryForm {
        let mut exps = [0u32; 3];
        exps[i] = 1;
        TernaryForm::monomial(field, exps)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn from_coeff_vec(field: &Field, degree: usize, coeffs: Vec<Elem>) -> Result<TernaryForm> {
        if coeffs.len() != dim_forms(degree) {
            return Err(Error::Dimension(format!(
                "expected {} coefficients for degree {degree}, got {}",
                dim_forms(degree),
                coeffs.len()
            )));
        }
        Ok(TernaryForm {
            degree,
            field: field.clone(),
            coeffs,
        })
    }

    pub fn coeff(&self, a: u32, b: u32, c: u32) -> &Elem {
        debug_assert_eq!((a + b + c) as usize, self.degree);
        &self.coeffs[mono_index(self.degree, a, b)]
    }

    pub fn set_coeff(&mut self, a: u32, b: u32, c: u32, v: Elem) {
        debug_assert_eq!((a + b + c) as usize, self.degree);
        let m = self.degree;
        self.coeffs[mono_index(m, a, b)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Addition; a zero form of any stated degree acts as a neutral element.
    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        if self.is_zero() && self.degree != other.degree {
            return other.clone();
        }
        if other.is_zero() && self.degree != other.degree {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "form degree mismatch in add");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        TernaryForm {
            degree: self.degree,
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &TernaryForm) -> TernaryForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, s: &Elem) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.mul(c, s)).collect(),
        }
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let deg = self.degree + other.degree;
        let mut out = TernaryForm::zero(&self.field, deg);
        let ba = monomial_basis(self.degree);
        let bb = monomial_basis(other.degree);
        for (i, ea) in ba.iter().enumerate() {
            if self.field.is_zero(&self.coeffs[i]) {
                continue;
            }
            for (j, eb) in bb.iter().enumerate() {
                if self.field.is_zero(&other.coeffs[j]) {
                    continue;
                }
                let idx = mono_index(deg, ea[0] + eb[0], ea[1] + eb[1]);
                let prod = self.field.mul(&self.coeffs[i], &other.coeffs[j]);
                out.coeffs[idx] = self.field.add(&out.coeffs[idx], &prod);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> TernaryForm {
        let mut acc = TernaryForm::monomial(&self.field, [0, 0, 0]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, coords: &[Elem; 3]) -> Elem {
        let f = &self.field;
        // power tables
        let n = self.degree;
        let mut pows: [Vec<Elem>; 3] = [vec![], vec![], vec![]];
        for i in 0..3 {
            let mut v = Vec::with_capacity(n + 1);
            v.push(f.one());
            for k in 1..=n {
                let prev = v[k - 1].clone();
                v.push(f.mul(&prev, &coords[i]));
            }
            pows[i] = v;
        }
        let mut acc = f.zero();
        for (idx, e) in monomial_basis(n).iter().enumerate() {
            if f.is_zero(&self.coeffs[idx]) {
                continue;
            }
            let m = f.mul(
                &f.mul(&pows[0][e[0] as usize], &pows[1][e[1] as usize]),
                &pows[2][e[2] as usize],
            );
            acc = f.add(&acc, &f.mul(&self.coeffs[idx], &m));
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Result<Elem> {
        if p.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.eval(p.coords()))
    }

    /// The three formal partial derivatives.
    pub fn partials(&self) -> Result<[TernaryForm; 3]> {
        if self.degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let n = self.degree;
        let f = &self.field;
        let mut outs = [
            TernaryForm::zero(f, n - 1),
            TernaryForm::zero(f, n - 1),
            TernaryForm::zero(f, n - 1),
        ];
        for (idx, e) in monomial_basis(n).iter().enumerate() {
            if f.is_zero(&self.coeffs[idx]) {
                continue;
            }
            for v in 0..3 {
                if e[v] == 0 {
                    continue;
                }
                let mut de = *e;
                de[v] -= 1;
                let target = mono_index(n - 1, de[0], de[1]);
                let term = f.mul(&self.coeffs[idx], &f.from_i64(e[v] as i64));
                outs[v].coeffs[target] = f.add(&outs[v].coeffs[target], &term);
            }
        }
        Ok(outs)
    }

    /// Compose with linear forms: f(l0, l1, l2).
    pub fn linear_substitute(&self, lines: &[TernaryForm; 3]) -> TernaryForm {
        let f = &self.field;
        let n = self.degree;
        let mut acc = TernaryForm::zero(f, n);
        for (idx, e) in monomial_basis(n).iter().enumerate() {
            if f.is_zero(&self.coeffs[idx]) {
                continue;
            }
            let mut term = TernaryForm::monomial(f, [0, 0, 0]);
            for v in 0..3 {
                for _ in 0..e[v] {
                    term = term.mul(&lines[v]);
                }
            }
            acc = acc.add(&term.scale(&self.coeffs[idx]));
        }
        acc
    }

    /// First nonzero coefficient in graded-lex order, with its exponents.
    pub fn leading(&self) -> Option<([u32; 3], Elem)> {
        for (idx, e) in monomial_basis(self.degree).iter().enumerate() {
            if !self.field.is_zero(&self.coeffs[idx]) {
                return Some((*e, self.coeffs[idx].clone()));
            }
        }
        None
    }

    /// Scale so the leading coefficient is 1.
    pub fn normalized(&self) -> TernaryForm {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.field.inv(&lc).expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Exact multivariate division: Some(q) with self = q * g, or None.
    pub fn try_div_exact(&self, g: &TernaryForm) -> Option<TernaryForm> {
        let f = &self.field;
        if self.is_zero() {
            if self.degree >= g.degree() {
                return Some(TernaryForm::zero(f, self.degree - g.degree()));
            }
            return Some(TernaryForm::zero(f, 0));
        }
        if g.is_zero() || g.degree() > self.degree {
            return None;
        }
        let qdeg = self.degree - g.degree();
        let (glead, glc) = g.leading().expect("nonzero divisor");
        let glc_inv = f.inv(&glc).ok()?;
        let mut rem = self.clone();
        let mut quot = TernaryForm::zero(f, qdeg);
        loop {
            let Some((rlead, rlc)) = rem.leading() else {
                return Some(quot);
            };
            if rlead[0] < glead[0] || rlead[1] < glead[1] || rlead[2] < glead[2] {
                return None;
            }
            let qe = [
                rlead[0] - glead[0],
                rlead[1] - glead[1],
                rlead[2] - glead[2],
            ];
            let qc = f.mul(&rlc, &glc_inv);
            let qidx = mono_index(qdeg, qe[0], qe[1]);
            quot.coeffs[qidx] = f.add(&quot.coeffs[qidx], &qc);
            let mono = TernaryForm::monomial(f, qe).scale(&qc);
            rem = rem.sub(&mono.mul(g));
        }
    }

    /// Re-express the form over `target`, embedding each coefficient.
    pub fn rebase(&self, target: &Field) -> Result<TernaryForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| target.embed_base(&self.field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TernaryForm {
            degree: self.degree,
            field: target.clone(),
            coeffs,
        })
    }

    pub fn to_string_pretty(&self) -> String {
        let vars = ["x", "y", "z"];
        let mut parts = Vec::new();
        for (idx, e) in monomial_basis(self.degree).iter().enumerate() {
            if self.field.is_zero(&self.coeffs[idx]) {
                continue;
            }
            let mut term = self.field.elem_to_string(&self.coeffs[idx]);
            for v in 0..3 {
                match e[v] {
                    0 => {}
                    1 => term.push_str(&format!("*{}", vars[v])),
                    k => term.push_str(&format!("*{}^{}", vars[v], k)),
                }
            }
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Dense bivariate polynomial, used for local expansions of a curve at a
/// singular point. Index (i, j) with i + j <= deg.
#[derive(Clone, Debug)]
pub struct BiPoly {
    pub deg: usize,
    pub field: Field,
    coeffs: Vec<Elem>,
}

fn bi_index(deg: usize, i: usize, j: usize) -> usize {
    debug_assert!(i + j <= deg);
    // row i has deg - i + 1 entries
    let mut off = 0;
    for r in 0..i {
        off += deg - r + 1;
    }
    off + j
}

impl BiPoly {
    pub fn zero(field: &Field, deg: usize) -> BiPoly {
        let n = (deg + 1) * (deg + 2) / 2;
        BiPoly {
            deg,
            field: field.clone(),
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Elem {
        &self.coeffs[bi_index(self.deg, i, j)]
    }

    pub fn add_term(&mut self, i: usize, j: usize, v: &Elem) {
        let idx = bi_index(self.deg, i, j);
        self.coeffs[idx] = self.field.add(&self.coeffs[idx], v);
    }

    /// Coefficients (c_0, ..., c_k) of the degree-k homogeneous part
    /// c_0 u^k + c_1 u^{k-1} v + ... + c_k v^k.
    pub fn homogeneous_part(&self, k: usize) -> Vec<Elem> {
        (0..=k)
            .map(|j| self.coeff(k - j, j).clone())
            .collect()
    }

    pub fn part_is_zero(&self, k: usize) -> bool {
        self.homogeneous_part(k)
            .iter()
            .all(|c| self.field.is_zero(c))
    }
}

/// Expand f around a point in an affine chart. `chart` is the coordinate
/// set to 1; the two remaining coordinates (in ascending index order)
/// become center + (u, v).
pub fn local_expansion(f: &TernaryForm, chart: usize, center: &ProjPoint) -> Result<BiPoly> {
    let fld = f.field().clone();
    if center.field() != &fld {
        return Err(Error::FieldMismatch);
    }
    let c = center.coords();
    if fld.is_zero(&c[chart]) {
        return Err(Error::InvalidInput(
            "chart coordinate vanishes at the center".into(),
        ));
    }
    // normalize the center so the chart coordinate is exactly 1
    let inv = fld.inv(&c[chart])?;
    let cc: Vec<Elem> = (0..3).map(|i| fld.mul(&c[i], &inv)).collect();
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (iu, iv) = (others[0], others[1]);
    let n = f.degree();
    // binomial table (Pascal's triangle as field elements)
    let mut binom = vec![vec![fld.zero(); n + 1]; n + 1];
    for a in 0..=n {
        binom[a][0] = fld.one();
        for b in 1..=a {
            let left = binom[a - 1][b - 1].clone();
            let right = if b <= a - 1 {
                binom[a - 1][b].clone()
            } else {
                fld.zero()
            };
            binom[a][b] = fld.add(&left, &right);
        }
    }
    let mut out = BiPoly::zero(&fld, n);
    // powers of the center coordinates
    let mut pu = Vec::with_capacity(n + 1);
    let mut pv = Vec::with_capacity(n + 1);
    pu.push(fld.one());
    pv.push(fld.one());
    for k in 1..=n {
        let a = fld.mul(&pu[k - 1], &cc[iu]);
        pu.push(a);
        let b = fld.mul(&pv[k - 1], &cc[iv]);
        pv.push(b);
    }
    for (idx, e) in monomial_basis(n).iter().enumerate() {
        let coeff = &f.coeffs()[idx];
        if fld.is_zero(coeff) {
            continue;
        }
        let eu = e[iu] as usize;
        let ev = e[iv] as usize;
        // (center_u + u)^eu (center_v + v)^ev, chart coordinate contributes 1
        for i in 0..=eu {
            for j in 0..=ev {
                let t = fld.mul(
                    &fld.mul(&binom[eu][i], &pu[eu - i]),
                    &fld.mul(&binom[ev][j], &pv[ev - j]),
                );
                out.add_term(i, j, &fld.mul(coeff, &t));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn conic(f: &Field) -> TernaryForm {
        // xz - y^2
        TernaryForm::from_int_terms(f, 2, &[([1, 0, 1], 1), ([0, 2, 0], -1)]).unwrap()
    }

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(monomial_basis(2).len(), 6);
        // brute enumeration oracle for m = 3
        let mut count = 0;
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    if a + b + c == 3 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(monomial_basis(3).len(), count);
        assert_eq!(count, 10);
        for m in 0..=20 {
            assert_eq!(monomial_basis(m).len(), (m + 1) * (m + 2) / 2);
        }
    }

    #[test]
    fn index_consistency() {
        for m in 0..=8 {
            for (idx, e) in monomial_basis(m).iter().enumerate() {
                assert_eq!(mono_index(m, e[0], e[1]), idx);
            }
        }
    }

    #[test]
    fn eval_conic() {
        let f = q();
        let c = conic(&f);
        let p = ProjPoint::new(&f, [f.from_i64(1), f.from_i64(1), f.from_i64(1)]).unwrap();
        assert!(f.is_zero(&c.eval_point(&p).unwrap()));
        let p2 = ProjPoint::new(&f, [f.from_i64(1), f.from_i64(2), f.from_i64(1)]).unwrap();
        assert_eq!(c.eval_point(&p2).unwrap(), f.from_i64(-3));
        let z = TernaryForm::zero(&f, 4);
        assert!(f.is_zero(&z.eval_point(&p2).unwrap()));
    }

    #[test]
    fn partials_conic_and_cubic() {
        let f = q();
        let c = conic(&f);
        let [dx, dy, dz] = c.partials().unwrap();
        assert_eq!(dx, TernaryForm::coordinate(&f, 2));
        assert_eq!(dy, TernaryForm::coordinate(&f, 1).scale(&f.from_i64(-2)));
        assert_eq!(dz, TernaryForm::coordinate(&f, 0));
        let x3 = TernaryForm::monomial(&f, [3, 0, 0]);
        let [dx, dy, dz] = x3.partials().unwrap();
        assert_eq!(dx, TernaryForm::monomial(&f, [2, 0, 0]).scale(&f.from_i64(3)));
        assert!(dy.is_zero());
        assert!(dz.is_zero());
    }

    #[test]
    fn euler_identity_f31() {
        // x f_x + y f_y + z f_z = n f for a pseudo-random degree-4 form over F_31
        let f = Field::prime(31).unwrap();
        let mut form = TernaryForm::zero(&f, 4);
        let mut seed = 7i64;
        let basis = monomial_basis(4);
        for e in &basis {
            seed = (seed * 31 + 17) % 97;
            form.set_coeff(e[0], e[1], e[2], f.from_i64(seed));
        }
        let [fx, fy, fz] = form.partials().unwrap();
        let lhs = TernaryForm::coordinate(&f, 0)
            .mul(&fx)
            .add(&TernaryForm::coordinate(&f, 1).mul(&fy))
            .add(&TernaryForm::coordinate(&f, 2).mul(&fz));
        assert_eq!(lhs, form.scale(&f.from_i64(4)));
    }

    #[test]
    fn product_degree_and_eval() {
        let f = q();
        let a = conic(&f);
        let b = TernaryForm::from_int_terms(&f, 1, &[([1, 0, 0], 2), ([0, 0, 1], -5)]).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.degree(), 3);
        let p = ProjPoint::new(&f, [f.from_i64(2), f.from_i64(3), f.from_i64(7)]).unwrap();
        let lhs = prod.eval_point(&p).unwrap();
        let rhs = f.mul(&a.eval_point(&p).unwrap(), &b.eval_point(&p).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let f = q();
        let a = conic(&f);
        let b = TernaryForm::from_int_terms(&f, 1, &[([1, 0, 0], 1), ([0, 1, 0], 3)]).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.try_div_exact(&a).unwrap(), b);
        assert_eq!(prod.try_div_exact(&b).unwrap(), a);
        let c = TernaryForm::from_int_terms(&f, 1, &[([0, 0, 1], 1)]).unwrap();
        assert!(prod.try_div_exact(&c).is_none());
    }

    #[test]
    fn local_expansion_cuspidal_cubic() {
        // z y^2 - x^3 at (0:0:1), chart z: F = v^2 - u^3
        let f = q();
        let cubic =
            TernaryForm::from_int_terms(&f, 3, &[([0, 2, 1], 1), ([3, 0, 0], -1)]).unwrap();
        let p = ProjPoint::new(&f, [f.from_i64(0), f.from_i64(0), f.from_i64(1)]).unwrap();
        let exp = local_expansion(&cubic, 2, &p).unwrap();
        assert!(exp.part_is_zero(0));
        assert!(exp.part_is_zero(1));
        let q2 = exp.homogeneous_part(2);
        assert_eq!(q2, vec![f.zero(), f.zero(), f.one()]); // v^2
        let q3 = exp.homogeneous_part(3);
        assert_eq!(q3[0], f.from_i64(-1)); // -u^3
    }

    #[test]
    fn linear_substitution() {
        let f = q();
        let c = conic(&f);
        // swap x and z: z x - y^2 = same conic
        let lines = [
            TernaryForm::coordinate(&f, 2),
            TernaryForm::coordinate(&f, 1),
            TernaryForm::coordinate(&f, 0),
        ];
        assert_eq!(c.linear_substitute(&lines), c);
    }
}
