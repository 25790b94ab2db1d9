use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::gf::{format_raw, Field, Fq};
use super::poly::{owned_binop, DensePoly};
use super::Scalar;
use crate::error::{Error, Result};

/// Relative precision used when inverting an exact, non-monomial series.
pub const DEFAULT_INVERSE_PRECISION: i64 = 64;

/// Truncated Laurent series in `t` over a finite field.
///
/// `prec = Some(N)` means every coefficient of exponent `>= N` is unknown
/// (the series is known modulo `t^N`); `None` marks an exact value with finite
/// support. Arithmetic never reports more precision than the inputs justify.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    val: i64,
    coeffs: Vec<u32>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl LaurentSeries {
    fn build(field: &Field, val: i64, coeffs: Vec<u32>, prec: Option<i64>) -> Self {
        let mut s = LaurentSeries { field: field.clone(), val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            None => {
                self.coeffs.clear();
                self.val = 0;
                return;
            }
            Some(k) if k > 0 => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            _ => {}
        }
        if let Some(n) = self.prec {
            let keep = (n - self.val).max(0) as usize;
            if self.coeffs.len() > keep {
                self.coeffs.truncate(keep);
            }
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::build(field, 0, Vec::new(), None)
    }

    /// `O(t^prec)`.
    pub fn big_o(field: &Field, prec: i64) -> Self {
        Self::build(field, 0, Vec::new(), Some(prec))
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(&field.one(), 0)
    }

    /// `c * t^e`, exact.
    pub fn monomial(c: &Fq, e: i64) -> Self {
        Self::build(c.field(), e, vec![c.raw()], None)
    }

    pub fn from_terms(field: &Field, terms: &[(i64, Fq)], prec: Option<i64>) -> Self {
        if terms.is_empty() {
            return Self::build(field, 0, Vec::new(), prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = field.add_raw(*slot, c.raw());
        }
        Self::build(field, lo, coeffs, prec)
    }

    pub fn from_poly(p: &DensePoly) -> Self {
        Self::build(p.field(), 0, p.raw_coeffs().to_vec(), None)
    }

    /// Random series supported on `[lo, hi)` with precision `prec`.
    pub fn random<R: Rng + ?Sized>(field: &Field, lo: i64, hi: i64, prec: Option<i64>, rng: &mut R) -> Self {
        let coeffs = (lo..hi).map(|_| field.random(rng).raw()).collect();
        Self::build(field, lo, coeffs, prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No known nonzero coefficient (zero, or `O(t^N)`).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation of the first known nonzero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound on the valuation (the precision for `O(t^N)`).
    fn lower(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.val)
        }
    }

    /// Largest exponent with a known nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.val + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Result<Fq> {
        if let Some(n) = self.prec {
            if e >= n {
                return Err(Error::PrecisionExhausted { needed: e + 1, available: n });
            }
        }
        let raw = if e < self.val { 0 } else { self.coeffs.get((e - self.val) as usize).copied().unwrap_or(0) };
        Ok(self.field.elem(raw))
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, Fq)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.val + i as i64, self.field.elem(c)))
            .collect()
    }

    /// Lowers the precision to `min(prec, n)`.
    pub fn truncate(&self, n: i64) -> Self {
        Self::build(&self.field, self.val, self.coeffs.clone(), min_prec(self.prec, Some(n)))
    }

    pub fn with_precision(&self, prec: Option<i64>) -> Self {
        Self::build(&self.field, self.val, self.coeffs.clone(), prec)
    }

    /// Terms of negative exponent, as an exact value (requires `prec >= 0`).
    pub fn negative_part(&self) -> Self {
        let terms: Vec<(i64, Fq)> = self.terms().into_iter().filter(|(e, _)| *e < 0).collect();
        Self::from_terms(&self.field, &terms, None)
    }

    /// Terms of exponent `>= 0`, keeping the precision.
    pub fn nonnegative_part(&self) -> Self {
        let terms: Vec<(i64, Fq)> = self.terms().into_iter().filter(|(e, _)| *e >= 0).collect();
        Self::from_terms(&self.field, &terms, self.prec)
    }

    pub fn scale(&self, c: &Fq) -> Self {
        let f = &self.field;
        Self::build(f, self.val, self.coeffs.iter().map(|&a| f.mul_raw(a, c.raw())).collect(), self.prec)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::build(&self.field, self.val + k, self.coeffs.clone(), self.prec.map(|n| n + k))
    }

    /// `self^(p^k)` with precision `p^k * prec`.
    pub fn frobenius_k(&self, k: u32) -> Self {
        let mut r = self.clone();
        for _ in 0..k {
            r = Scalar::frobenius(&r);
        }
        r
    }

    /// Inverse, known to absolute precision at most `target`.
    pub fn inv_to(&self, target: i64) -> Option<Self> {
        let v = self.valuation()?;
        let natural = self.prec.map(|n| n - 2 * v);
        if self.prec.is_none() && self.coeffs.len() == 1 {
            let c = self.field.inv_raw(self.coeffs[0]).unwrap();
            return Some(Self::build(&self.field, -v, vec![c], None));
        }
        let prec = min_prec(natural, Some(target)).unwrap();
        let rel = (prec + v).max(0) as usize;
        let f = &self.field;
        let u0inv = f.inv_raw(self.coeffs[0]).unwrap();
        let mut w = vec![0u32; rel];
        if rel > 0 {
            w[0] = u0inv;
        }
        for k in 1..rel {
            let mut acc = 0u32;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.add_raw(acc, f.mul_raw(self.coeffs[i], w[k - i]));
            }
            w[k] = f.neg_raw(f.mul_raw(acc, u0inv));
        }
        Some(Self::build(f, -v, w, Some(prec)))
    }

    /// Agreement of all coefficients below `n`; both sides must know them.
    pub fn agrees_below(&self, other: &Self, n: i64) -> Result<bool> {
        let lo = self.lower().unwrap_or(n).min(other.lower().unwrap_or(n));
        for e in lo..n {
            if self.coeff(e)? != other.coeff(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-expresses the coefficients in another field via `map`.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(&Fq) -> Fq) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| map(&self.field.elem(c)).raw()).collect();
        Self::build(target, self.val, coeffs, self.prec)
    }

    /// Parseable text form, e.g. `t^-2+2*t^-1+O(t^40)`.
    pub fn format_in(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            let cs = format_raw(&self.field, c.raw());
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            terms.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => cs,
                (false, true) => mono,
                (false, false) => format!("{cs}*{mono}"),
            });
        }
        if let Some(n) = self.prec {
            terms.push(format!("O({var}^{n})"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_in("t"))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_in("t"))
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let prec = min_prec(self.prec, rhs.prec);
        if self.coeffs.is_empty() {
            return rhs.with_precision(prec);
        }
        if rhs.coeffs.is_empty() {
            return self.with_precision(prec);
        }
        let lo = self.val.min(rhs.val);
        let hi = self.max_exponent().unwrap().max(rhs.max_exponent().unwrap());
        let mut v = vec![0u32; (hi - lo + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[(self.val - lo) as usize + i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut v[(rhs.val - lo) as usize + i];
            *slot = f.add_raw(*slot, c);
        }
        LaurentSeries::build(f, lo, v, prec)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries::build(f, self.val, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect(), self.prec)
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let f = &self.field;
        let exact_zero = |s: &LaurentSeries| s.coeffs.is_empty() && s.prec.is_none();
        if exact_zero(self) || exact_zero(rhs) {
            return LaurentSeries::zero(f);
        }
        // error terms: a * O(t^pb) and b * O(t^pa)
        let mut prec = None;
        if let Some(pb) = rhs.prec {
            prec = min_prec(prec, Some(self.lower().unwrap() + pb));
        }
        if let Some(pa) = self.prec {
            prec = min_prec(prec, Some(rhs.lower().unwrap() + pa));
        }
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return LaurentSeries::build(f, 0, Vec::new(), prec);
        }
        let lo = self.val + rhs.val;
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(n) = prec {
            len = len.min((n - lo).max(0) as usize);
        }
        let mut v = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b != 0 {
                    v[i + j] = f.add_raw(v[i + j], f.mul_raw(a, b));
                }
            }
        }
        LaurentSeries::build(f, lo, v, prec)
    }
}

owned_binop!(LaurentSeries, Add, add);
owned_binop!(LaurentSeries, Sub, sub);
owned_binop!(LaurentSeries, Mul, mul);

impl Scalar for LaurentSeries {
    fn zero_like(&self) -> Self {
        LaurentSeries::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        LaurentSeries::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn base_field(&self) -> &Field {
        &self.field
    }
    fn constant_like(&self, c: &Fq) -> Self {
        LaurentSeries::monomial(c, 0)
    }
    fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as i64;
        if self.coeffs.is_empty() {
            return LaurentSeries::build(f, 0, Vec::new(), self.prec.map(|n| n * p));
        }
        let mut v = vec![0u32; (self.coeffs.len() - 1) * p as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * p as usize] = f.frobenius_raw(c);
        }
        LaurentSeries::build(f, self.val * p, v, self.prec.map(|n| n * p))
    }
    fn inv(&self) -> Option<Self> {
        let v = self.valuation()?;
        self.inv_to(DEFAULT_INVERSE_PRECISION - v)
    }
}
