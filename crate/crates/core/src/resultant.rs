//! Sylvester resultants of ternary forms with respect to one variable.
//!
//! The Sylvester matrix has entries in the polynomial ring generated by the
//! remaining variables, so its determinant is computed with the Bareiss
//! fraction-free algorithm: every division along the way is exact in the
//! form ring.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::TernaryForm;

/// Univariate polynomial in an eliminated variable, with ternary-form
/// coefficients. `coeffs[i]` multiplies the i-th power (ascending).
#[derive(Clone, Debug)]
pub struct FormPoly {
    pub coeffs: Vec<TernaryForm>,
}

impl FormPoly {
    /// Degree after trimming trailing zero coefficients; None for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        (0..self.coeffs.len()).rev().find(|&i| !self.coeffs[i].is_zero())
    }
}

/// Read f as a polynomial in the coordinate `var`: the coefficient of
/// var^i is a form of degree deg(f) - i in the other two coordinates.
pub fn coefficients_wrt(f: &TernaryForm, var: usize) -> FormPoly {
    let n = f.degree();
    let fld = f.field();
    let mut coeffs: Vec<TernaryForm> = (0..=n)
        .map(|i| TernaryForm::zero(fld, n - i))
        .collect();
    for (idx, e) in crate::form::monomial_basis(n).iter().enumerate() {
        let c = &f.coeffs()[idx];
        if fld.is_zero(c) {
            continue;
        }
        let i = e[var] as usize;
        let mut rest = *e;
        rest[var] = 0;
        let prev = coeffs[i].coeff(rest[0], rest[1], rest[2]).clone();
        coeffs[i].set_coeff(rest[0], rest[1], rest[2], fld.add(&prev, c));
    }
    FormPoly { coeffs }
}

/// Bareiss fraction-free determinant of a square matrix of forms.
fn determinant_bareiss(field: &Field, mut m: Vec<Vec<TernaryForm>>) -> TernaryForm {
    let n = m.len();
    if n == 0 {
        return TernaryForm::monomial(field, [0, 0, 0]);
    }
    let mut sign_flip = false;
    let mut prev = TernaryForm::monomial(field, [0, 0, 0]); // previous pivot, starts at 1
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return TernaryForm::zero(field, 0);
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .try_div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            m[i][k] = TernaryForm::zero(field, 0);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant of two form polynomials. The matrix lists the rows
/// built from `q` first, then those from `p`, so Res(u - a, u - b) = b - a.
pub fn sylvester_resultant(field: &Field, p: &FormPoly, q: &FormPoly) -> Result<TernaryForm> {
    let dp = p.degree().ok_or(Error::ZeroPolynomial)?;
    let dq = q.degree().ok_or(Error::ZeroPolynomial)?;
    if dp == 0 {
        // Res = p_0^{dq}
        return Ok(p.coeffs[0].pow(dq));
    }
    if dq == 0 {
        return Ok(q.coeffs[0].pow(dp));
    }
    let n = dp + dq;
    let zero = TernaryForm::zero(field, 0);
    let mut m: Vec<Vec<TernaryForm>> = vec![vec![zero; n]; n];
    // dp rows of q's coefficients, descending, shifted
    for r in 0..dp {
        for (i, c) in q.coeffs.iter().take(dq + 1).enumerate() {
            m[r][r + dq - i] = c.clone();
        }
    }
    // dq rows of p's coefficients
    for r in 0..dq {
        for (i, c) in p.coeffs.iter().take(dp + 1).enumerate() {
            m[dp + r][r + dp - i] = c.clone();
        }
    }
    Ok(determinant_bareiss(field, m))
}

/// Resultant of two ternary forms with respect to the coordinate `var`.
pub fn resultant_wrt(f: &TernaryForm, g: &TernaryForm, var: usize) -> Result<TernaryForm> {
    let p = coefficients_wrt(f, var);
    let q = coefficients_wrt(g, var);
    sylvester_resultant(f.field(), &p, &q)
}
