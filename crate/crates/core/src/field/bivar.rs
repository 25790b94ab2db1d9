//! Sparse polynomials and rational functions in two variables `s, t`.
//!
//! Only what the imperfection-degree-two computations need: ring arithmetic,
//! exact division, gcd, `q`-th roots and `q`-basis components.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::gf::{format_raw, Field, Fq};
use super::poly::{owned_binop, DensePoly};
use super::{FunctionField, Scalar};
use crate::error::{Error, Result};

/// Monomial key `(deg_s, deg_t)`.
type Mono = (u32, u32);

/// Sparse bivariate polynomial over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: Field,
    terms: BTreeMap<Mono, u32>,
}

fn lex_key(m: &Mono) -> (u32, u32) {
    (m.1, m.0)
}

impl BivarPoly {
    pub fn zero(field: &Field) -> Self {
        BivarPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(&field.one(), 0, 0)
    }

    pub fn monomial(c: &Fq, ds: u32, dt: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ds, dt), c.raw());
        }
        BivarPoly { field: c.field().clone(), terms }
    }

    pub fn s(field: &Field) -> Self {
        Self::monomial(&field.one(), 1, 0)
    }

    pub fn t(field: &Field) -> Self {
        Self::monomial(&field.one(), 0, 1)
    }

    pub fn constant(c: &Fq) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: u32, rng: &mut R) -> Self {
        let mut p = Self::zero(field);
        for ds in 0..=max_deg {
            for dt in 0..=(max_deg - ds) {
                if rng.gen_bool(0.5) {
                    p.add_term((ds, dt), field.random(rng).raw());
                }
            }
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    /// `(deg_s, deg_t, coefficient)` for every nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Fq)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, self.field.elem(c)))
    }

    fn add_term(&mut self, m: Mono, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field.clone();
        let entry = self.terms.entry(m).or_insert(0);
        *entry = f.add_raw(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    /// Leading monomial in lex order with `t > s`.
    fn lead(&self) -> Option<(Mono, u32)> {
        self.terms.iter().max_by_key(|(m, _)| lex_key(m)).map(|(&m, &c)| (m, c))
    }

    pub fn scale(&self, c: &Fq) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&m, &a) in &self.terms {
            out.add_term(m, f.mul_raw(a, c.raw()));
        }
        out
    }

    fn mul_mono(&self, m: Mono, c: u32) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (&(a, b), &x) in &self.terms {
            out.add_term((a + m.0, b + m.1), f.mul_raw(x, c));
        }
        out
    }

    /// Makes the lex-leading coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.elem(self.field.inv_raw(c).unwrap())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient by `d`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let f = &self.field;
        let (dm, dc) = d.lead()?;
        let dinv = f.inv_raw(dc).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(f);
        while let Some((m, c)) = rem.lead() {
            if m.0 < dm.0 || m.1 < dm.1 {
                return None;
            }
            let qm = (m.0 - dm.0, m.1 - dm.1);
            let qc = f.mul_raw(c, dinv);
            quot.add_term(qm, qc);
            rem = &rem - &d.mul_mono(qm, qc);
        }
        Some(quot)
    }

    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic();
        let mut out = Self::zero(f);
        for (&(a, b), &c) in &self.terms {
            out.add_term((a * p, b * p), f.frobenius_raw(c));
        }
        out
    }

    fn log_q(&self, q: u64) -> u32 {
        let p = self.field.characteristic() as u64;
        let mut k = 0;
        let mut v = 1;
        while v < q {
            v *= p;
            k += 1;
        }
        k
    }

    /// `g` with `g^q = self`, when every exponent is divisible by `q`.
    pub fn qth_root(&self, q: u64) -> Option<Self> {
        let f = &self.field;
        let k = self.log_q(q);
        let q = q as u32;
        let mut out = Self::zero(f);
        for (&(a, b), &c) in &self.terms {
            if a % q != 0 || b % q != 0 {
                return None;
            }
            out.add_term((a / q, b / q), f.root_pk_raw(c, k));
        }
        Some(out)
    }

    /// Splits `self = sum s^i t^j P_ij^q`; index `i * q + j`.
    pub fn q_components(&self, q: u64) -> Vec<Self> {
        let f = &self.field;
        let k = self.log_q(q);
        let qq = q as u32;
        let mut parts = vec![Self::zero(f); (q * q) as usize];
        for (&(a, b), &c) in &self.terms {
            let idx = ((a % qq) * qq + (b % qq)) as usize;
            parts[idx].add_term((a / qq, b / qq), f.root_pk_raw(c, k));
        }
        parts
    }

    /// Coefficients in `F_q[s]` of the powers of `t`.
    fn to_t_poly(&self) -> Vec<DensePoly> {
        let f = &self.field;
        let deg_t = self.terms.keys().map(|m| m.1).max().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); deg_t];
        for (&(a, b), &c) in &self.terms {
            let row = &mut rows[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, 0);
            }
            row[a as usize] = c;
        }
        rows.into_iter().map(|r| DensePoly::from_raw(f, r)).collect()
    }

    fn from_t_poly(field: &Field, rows: &[DensePoly]) -> Self {
        let mut out = Self::zero(field);
        for (j, row) in rows.iter().enumerate() {
            for (i, &c) in row.raw_coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c);
            }
        }
        out
    }

    /// Greatest common divisor with lex-leading coefficient 1.
    pub fn gcd(&self, other: &Self) -> Self {
        let f = self.field.clone();
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let a = self.to_t_poly();
        let b = other.to_t_poly();
        let ca = content(&a);
        let cb = content(&b);
        let c = ca.gcd(&cb);
        let mut pa = primitive_part(&a, &ca);
        let mut pb = primitive_part(&b, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        let g = loop {
            if pb.is_empty() {
                break pa;
            }
            if pb.len() == 1 {
                break vec![DensePoly::one(&f)];
            }
            let r = pseudo_rem(&pa, &pb);
            pa = pb;
            pb = if r.is_empty() { r } else { primitive_part(&r, &content(&r)) };
        };
        let g = primitive_part(&g, &content(&g));
        let scaled: Vec<DensePoly> = g.iter().map(|x| x * &c).collect();
        Self::from_t_poly(&f, &scaled).normalized()
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by_key(|m| std::cmp::Reverse(lex_key(m)));
        let mut parts = Vec::new();
        for m in keys {
            let c = self.terms[m];
            let cs = format_raw(&self.field, c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mut factors = Vec::new();
            for (v, e) in [("s", m.0), ("t", m.1)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let mono = factors.join("*");
            parts.push(match (mono.is_empty(), c == 1) {
                (true, _) => cs,
                (false, true) => mono,
                (false, false) => format!("{cs}*{mono}"),
            });
        }
        parts.join("+")
    }
}

fn trim_rows(mut v: Vec<DensePoly>) -> Vec<DensePoly> {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    v
}

fn content(rows: &[DensePoly]) -> DensePoly {
    let f = rows[0].field().clone();
    rows.iter().fold(DensePoly::zero(&f), |acc, r| acc.gcd(r))
}

fn primitive_part(rows: &[DensePoly], c: &DensePoly) -> Vec<DensePoly> {
    trim_rows(rows.iter().map(|r| r.div_exact(c).expect("content divides")).collect())
}

fn pseudo_rem(a: &[DensePoly], b: &[DensePoly]) -> Vec<DensePoly> {
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let mut next: Vec<DensePoly> = r.iter().map(|x| x * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = &next[shift + j] - &(bj * &lr);
        }
        r = trim_rows(next);
    }
    r
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&m, &c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        let f = &self.field;
        let terms = self.terms.iter().map(|(&m, &c)| (m, f.neg_raw(c))).collect();
        BivarPoly { field: f.clone(), terms }
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let f = &self.field;
        let mut out = BivarPoly::zero(f);
        for (&(a, b), &x) in &self.terms {
            for (&(c, d), &y) in &rhs.terms {
                out.add_term((a + c, b + d), f.mul_raw(x, y));
            }
        }
        out
    }
}

owned_binop!(BivarPoly, Add, add);
owned_binop!(BivarPoly, Sub, sub);
owned_binop!(BivarPoly, Mul, mul);

/// Element of `F_q(s, t)` as a gcd-reduced fraction with normalized denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarRatFunc {
    num: BivarPoly,
    den: BivarPoly,
}

impl BivarRatFunc {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BivarPoly, den: BivarPoly) -> Self {
        let f = den.field().clone();
        if num.is_zero() {
            return BivarRatFunc { num, den: BivarPoly::one(&f) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let (_, lc) = den.lead().unwrap();
        let inv = f.elem(f.inv_raw(lc).unwrap());
        BivarRatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: BivarPoly) -> Self {
        let f = p.field().clone();
        BivarRatFunc { num: p, den: BivarPoly::one(&f) }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(BivarPoly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(BivarPoly::one(field))
    }

    pub fn s(field: &Field) -> Self {
        Self::from_poly(BivarPoly::s(field))
    }

    pub fn t(field: &Field) -> Self {
        Self::from_poly(BivarPoly::t(field))
    }

    pub fn constant(c: &Fq) -> Self {
        Self::from_poly(BivarPoly::constant(c))
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: u32, rng: &mut R) -> Self {
        let num = BivarPoly::random(field, max_deg, rng);
        let mut den = BivarPoly::random(field, max_deg, rng);
        while den.is_zero() {
            den = BivarPoly::random(field, max_deg, rng);
        }
        Self::reduce(num, den)
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn numerator(&self) -> &BivarPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BivarPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Scalar::inv(other).map(|i| self * &i)
    }

    pub fn qth_root(&self, q: u64) -> Option<Self> {
        Some(BivarRatFunc { num: self.num.qth_root(q)?, den: self.den.qth_root(q)? })
    }

    pub fn format(&self) -> String {
        if self.den.is_one() {
            return self.num.format();
        }
        format!("({})/({})", self.num.format(), self.den.format())
    }
}

impl fmt::Debug for BivarRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Display for BivarRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl<'a> Add<&'a BivarRatFunc> for &'a BivarRatFunc {
    type Output = BivarRatFunc;
    fn add(self, rhs: &BivarRatFunc) -> BivarRatFunc {
        if self.den == rhs.den {
            return BivarRatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        BivarRatFunc::reduce(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a BivarRatFunc> for &'a BivarRatFunc {
    type Output = BivarRatFunc;
    fn sub(self, rhs: &BivarRatFunc) -> BivarRatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BivarRatFunc> for &'a BivarRatFunc {
    type Output = BivarRatFunc;
    fn mul(self, rhs: &BivarRatFunc) -> BivarRatFunc {
        BivarRatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &BivarRatFunc {
    type Output = BivarRatFunc;
    fn neg(self) -> BivarRatFunc {
        BivarRatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for BivarRatFunc {
    type Output = BivarRatFunc;
    fn neg(self) -> BivarRatFunc {
        -&self
    }
}

owned_binop!(BivarRatFunc, Add, add);
owned_binop!(BivarRatFunc, Sub, sub);
owned_binop!(BivarRatFunc, Mul, mul);

impl Scalar for BivarRatFunc {
    fn zero_like(&self) -> Self {
        BivarRatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        BivarRatFunc::one(self.field())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn base_field(&self) -> &Field {
        self.field()
    }
    fn constant_like(&self, c: &Fq) -> Self {
        BivarRatFunc::constant(c)
    }
    fn frobenius(&self) -> Self {
        BivarRatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(BivarRatFunc::reduce(self.den.clone(), self.num.clone()))
        }
    }
}

impl FunctionField for BivarRatFunc {
    fn imperfection_degree(&self) -> u32 {
        2
    }

    fn pth_root(&self) -> Option<Self> {
        self.qth_root(self.field().characteristic() as u64)
    }

    fn q_basis(&self, q: u64) -> Vec<Self> {
        let one = self.field().one();
        let q = q as u32;
        let mut out = Vec::new();
        for i in 0..q {
            for j in 0..q {
                out.push(BivarRatFunc::from_poly(BivarPoly::monomial(&one, i, j)));
            }
        }
        out
    }

    fn q_components(&self, q: u64) -> Vec<Self> {
        let scaled = &self.num * &self.den.pow(q - 1);
        scaled
            .q_components(q)
            .into_iter()
            .map(|c| BivarRatFunc::reduce(c, self.den.clone()))
            .collect()
    }
}
