//! Exact coefficient fields: arbitrary-precision rationals and prime fields
//! F_{p^e} with a fixed, deterministically chosen irreducible modulus.
//!
//! All arithmetic is exact. Elements are kept in canonical form: fully
//! reduced fractions with positive denominator, or residue vectors with
//! entries in [0, p).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_EXT: usize = 4;

/// Fixed-size residue vector for allocation-free inner loops.
/// Coefficients of the extension element in the monomial basis; indices
/// at or above the extension degree are zero.
pub type GfEl = [u64; MAX_EXT];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(GfCtx),
}

/// Context for F_{p^e}: the prime, the extension degree, and the monic
/// irreducible modulus (ascending coefficients, length e + 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfCtx {
    p: u64,
    ext: usize,
    modulus: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Rat(BigRational),
    Gf(GfEl),
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::prime_ext(p, 1)
    }

    pub fn prime_ext(p: u64, ext: usize) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if ext < 1 || ext > MAX_EXT {
            return Err(Error::ExtDegree(ext, MAX_EXT));
        }
        if (p as u128).pow(ext as u32) > u32::MAX as u128 {
            return Err(Error::InvalidInput(format!(
                "field order {p}^{ext} too large for exhaustive arithmetic"
            )));
        }
        let modulus = if ext == 1 {
            vec![0, 1] // x
        } else {
            least_irreducible(p, ext)
        };
        Ok(Field::Prime(GfCtx { p, ext, modulus }))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    pub fn gf(&self) -> Option<&GfCtx> {
        match self {
            Field::Rationals => None,
            Field::Prime(ctx) => Some(ctx),
        }
    }

    /// Characteristic (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(ctx) => ctx.p,
        }
    }

    pub fn ext_degree(&self) -> usize {
        match self {
            Field::Rationals => 1,
            Field::Prime(ctx) => ctx.ext,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::zero()),
            Field::Prime(_) => Elem::Gf([0; MAX_EXT]),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::one()),
            Field::Prime(_) => {
                let mut e = [0; MAX_EXT];
                e[0] = 1;
                Elem::Gf(e)
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Rat(BigRational::from(BigInt::from(v))),
            Field::Prime(ctx) => {
                let p = ctx.p as i128;
                let r = (((v as i128) % p) + p) % p;
                let mut e = [0; MAX_EXT];
                e[0] = r as u64;
                Elem::Gf(e)
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Gf(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Field::Prime(ctx), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(ctx.add_el(x, y)),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Field::Prime(ctx), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(ctx.sub_el(x, y)),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Field::Prime(ctx), Elem::Gf(x)) => Elem::Gf(ctx.neg_el(x)),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Field::Prime(ctx), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(ctx.mul_el(x, y)),
            _ => panic!("field/element mismatch"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Field::Prime(ctx), Elem::Gf(x)) => Elem::Gf(ctx.inv_el(x)),
            _ => panic!("field/element mismatch"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow_u64(&self, a: &Elem, mut n: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Square root in the field, if one exists. For F_{p^e} (odd p) this is
    /// Tonelli-Shanks on the cyclic multiplicative group of order p^e - 1.
    pub fn sqrt(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match (self, a) {
            (Field::Rationals, Elem::Rat(x)) => {
                if x.is_negative() {
                    return None;
                }
                let ns = x.numer().sqrt();
                let ds = x.denom().sqrt();
                if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
                    Some(Elem::Rat(BigRational::new(ns, ds)))
                } else {
                    None
                }
            }
            (Field::Prime(ctx), Elem::Gf(x)) => ctx.sqrt_el(x).map(Elem::Gf),
            _ => panic!("field/element mismatch"),
        }
    }

    /// Embed an element of the prime subfield (or a rational) into this field.
    /// Only base-field inputs are accepted for prime-field targets.
    pub fn embed_base(&self, src: &Field, a: &Elem) -> Result<Elem> {
        match (self, src, a) {
            (Field::Rationals, Field::Rationals, Elem::Rat(_)) => Ok(a.clone()),
            (Field::Prime(dst), Field::Prime(sctx), Elem::Gf(v)) => {
                if sctx.p != dst.p {
                    return Err(Error::Rebase(format!(
                        "different characteristics {} and {}",
                        sctx.p, dst.p
                    )));
                }
                if sctx.ext == dst.ext && sctx.modulus == dst.modulus {
                    return Ok(a.clone());
                }
                if sctx.ext != 1 {
                    return Err(Error::Rebase(format!(
                        "only base-field elements embed into F_{{{}^{}}}",
                        dst.p, dst.ext
                    )));
                }
                let mut e = [0; MAX_EXT];
                e[0] = v[0];
                Ok(Elem::Gf(e))
            }
            _ => Err(Error::Rebase("incompatible fields".into())),
        }
    }

    /// Parse a coefficient from text: an integer, a fraction "a/b" (rationals),
    /// or an integer residue (prime fields, reduced mod p).
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match self {
            Field::Rationals => {
                if let Some((n, d)) = s.split_once('/') {
                    let n = BigInt::from_str(n.trim())
                        .map_err(|_| Error::InvalidInput(format!("bad numerator {n:?}")))?;
                    let d = BigInt::from_str(d.trim())
                        .map_err(|_| Error::InvalidInput(format!("bad denominator {d:?}")))?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    Ok(Elem::Rat(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(s)
                        .map_err(|_| Error::InvalidInput(format!("bad integer {s:?}")))?;
                    Ok(Elem::Rat(BigRational::from(n)))
                }
            }
            Field::Prime(_) => {
                let v = i64::from_str(s)
                    .map_err(|_| Error::InvalidInput(format!("bad residue {s:?}")))?;
                Ok(self.from_i64(v))
            }
        }
    }

    pub fn elem_to_string(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Gf(v) => {
                let ext = self.ext_degree();
                if ext == 1 {
                    v[0].to_string()
                } else {
                    let coeffs: Vec<String> = v[..ext].iter().map(|c| c.to_string()).collect();
                    format!("[{}]", coeffs.join(","))
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(ctx) => {
                if ctx.ext == 1 {
                    write!(f, "F_{}", ctx.p)
                } else {
                    write!(f, "F_{{{}^{}}}", ctx.p, ctx.ext)
                }
            }
        }
    }
}

impl GfCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ext(&self) -> usize {
        self.ext
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order p^e.
    pub fn order(&self) -> u64 {
        self.p.pow(self.ext as u32)
    }

    pub fn zero_el(&self) -> GfEl {
        [0; MAX_EXT]
    }

    pub fn one_el(&self) -> GfEl {
        let mut e = [0; MAX_EXT];
        e[0] = 1;
        e
    }

    pub fn is_zero_el(&self, a: &GfEl) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn from_u64(&self, v: u64) -> GfEl {
        let mut e = [0; MAX_EXT];
        e[0] = v % self.p;
        e
    }

    /// Decode an index in [0, p^e) into an element (base-p digits).
    /// This is the deterministic enumeration order used everywhere.
    pub fn decode(&self, mut code: u64) -> GfEl {
        let mut e = [0; MAX_EXT];
        for slot in e.iter_mut().take(self.ext) {
            *slot = code % self.p;
            code /= self.p;
        }
        e
    }

    pub fn add_el(&self, a: &GfEl, b: &GfEl) -> GfEl {
        let mut out = [0; MAX_EXT];
        for i in 0..self.ext {
            out[i] = (a[i] + b[i]) % self.p;
        }
        out
    }

    pub fn sub_el(&self, a: &GfEl, b: &GfEl) -> GfEl {
        let mut out = [0; MAX_EXT];
        for i in 0..self.ext {
            out[i] = (a[i] + self.p - b[i]) % self.p;
        }
        out
    }

    pub fn neg_el(&self, a: &GfEl) -> GfEl {
        let mut out = [0; MAX_EXT];
        for i in 0..self.ext {
            out[i] = (self.p - a[i]) % self.p;
        }
        out
    }

    pub fn mul_el(&self, a: &GfEl, b: &GfEl) -> GfEl {
        let e = self.ext;
        if e == 1 {
            let mut out = [0; MAX_EXT];
            out[0] = mulmod(a[0], b[0], self.p);
            return out;
        }
        let mut prod = [0u64; 2 * MAX_EXT - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                if b[j] == 0 {
                    continue;
                }
                prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], self.p)) % self.p;
            }
        }
        // reduce mod the monic modulus
        for i in (e..2 * e - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(e) {
                let idx = i - e + j;
                let sub = mulmod(m, c, self.p);
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        let mut out = [0; MAX_EXT];
        out[..e].copy_from_slice(&prod[..e]);
        out
    }

    pub fn pow_el(&self, a: &GfEl, mut n: u64) -> GfEl {
        let mut base = *a;
        let mut acc = self.one_el();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_el(&acc, &base);
            }
            base = self.mul_el(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inv_el(&self, a: &GfEl) -> GfEl {
        debug_assert!(!self.is_zero_el(a));
        self.pow_el(a, self.order() - 2)
    }

    /// True iff the element lies in the proper subfield F_{p^d}, i.e.
    /// satisfies a^{p^d} = a.
    pub fn in_subfield(&self, a: &GfEl, d: usize) -> bool {
        debug_assert!(d < self.ext);
        let q = self.p.pow(d as u32);
        self.pow_el(a, q) == *a
    }

    fn sqrt_el(&self, a: &GfEl) -> Option<GfEl> {
        if self.is_zero_el(a) {
            return Some(self.zero_el());
        }
        let q = self.order();
        debug_assert!(q % 2 == 1, "sqrt needs odd field order");
        // Euler criterion
        if self.pow_el(a, (q - 1) / 2) != self.one_el() {
            return None;
        }
        // q = 3 mod 4 shortcut
        if q % 4 == 3 {
            return Some(self.pow_el(a, (q + 1) / 4));
        }
        // Tonelli-Shanks
        let mut m = q - 1;
        let mut s = 0u32;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        // deterministic non-residue search
        let mut z = self.one_el();
        for code in 2..q {
            let cand = self.decode(code);
            if self.pow_el(&cand, (q - 1) / 2) != self.one_el() {
                z = cand;
                break;
            }
        }
        let mut c = self.pow_el(&z, m);
        let mut t = self.pow_el(a, m);
        let mut r = self.pow_el(a, (m + 1) / 2);
        let mut e = s;
        while t != self.one_el() {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != self.one_el() {
                t2 = self.mul_el(&t2, &t2);
                i += 1;
                if i == e {
                    return None;
                }
            }
            let mut b = c;
            for _ in 0..(e - i - 1) {
                b = self.mul_el(&b, &b);
            }
            r = self.mul_el(&r, &b);
            c = self.mul_el(&b, &b);
            t = self.mul_el(&t, &c);
            e = i;
        }
        Some(r)
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// -- univariate helpers over F_p for modulus selection ------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(ai, bj, p)) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // f monic
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let k = r.len() - 1 - df;
        if lead != 0 {
            for (j, &fj) in f.iter().enumerate() {
                let idx = k + j;
                let sub = mulmod(lead, fj, p);
                r[idx] = (r[idx] + p - sub % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(&mut r);
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        // make y monic for the remainder step
        let lead = *y.last().unwrap();
        let inv = modpow_u64(lead, p - 2, p);
        let ym: Vec<u64> = y.iter().map(|&c| mulmod(c, inv, p)).collect();
        let r = poly_rem(&x, &ym, p);
        x = y;
        y = r;
    }
    x
}

fn modpow_u64(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        n >>= 1;
    }
    acc
}

/// x^{p^k} mod f, by repeated Frobenius.
fn frobenius_power(f: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut x = vec![0u64, 1];
    x = poly_rem(&x, f, p);
    for _ in 0..k {
        // raise to p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut n = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            n >>= 1;
        }
        x = acc;
    }
    x
}

fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    // x^{p^e} = x mod f
    let xpe = frobenius_power(f, p, e);
    let mut x_itself = poly_rem(&[0, 1], f, p);
    poly_trim(&mut x_itself);
    let mut xpe_t = xpe;
    poly_trim(&mut xpe_t);
    if xpe_t != x_itself {
        return false;
    }
    // gcd(x^{p^{e/r}} - x, f) = 1 for every prime r | e
    let mut primes = Vec::new();
    let mut m = e;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let xq = frobenius_power(f, p, e / r);
        // xq - x
        let mut diff = xq;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        let g = poly_gcd(&diff, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree e over F_p,
/// where candidates x^e + c_{e-1} x^{e-1} + ... + c_0 are enumerated by the
/// base-p integer with digits (c_0, c_1, ...). Deterministic, so extension
/// fields are reproducible across runs.
fn least_irreducible(p: u64, e: usize) -> Vec<u64> {
    let bound = p.pow(e as u32);
    for code in 0..bound {
        let mut f = vec![0u64; e + 1];
        f[e] = 1;
        let mut c = code;
        for slot in f.iter_mut().take(e) {
            *slot = c % p;
            c /= p;
        }
        if poly_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}
