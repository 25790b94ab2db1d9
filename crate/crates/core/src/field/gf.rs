//! Small finite fields `F_{p^e}` in a polynomial basis.
//!
//! Elements are packed as base-`p` integers: the digit of weight `p^j` is the
//! coefficient of `w^j`, where `w` is the class of `x` modulo the defining
//! polynomial. Containers (polynomials, series) store these raw `u32` values
//! next to a single [`Field`] handle; [`Fq`] pairs a raw value with its field
//! for standalone use.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

/// Fields up to this size get discrete-log tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Characteristic, extension degree and defining polynomial of `F_{p^e}`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    /// Monic defining polynomial over `F_p`, low degree first, length `e + 1`.
    modulus: Vec<u32>,
    size: u64,
    logs: Option<Arc<LogTables>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec").field("p", &self.p).field("modulus", &self.modulus).finish()
    }
}

/// `exp[i] = g^i` and `log[g^i] = i` for a primitive element `g`.
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a finite field.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn is_supported_prime(p: u32) -> bool {
    matches!(p, 2 | 3 | 5 | 7)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_supported_prime(p) {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        Ok(Field(Arc::new(FieldSpec {
            p,
            modulus: vec![0, 1],
            size: p as u64,
            logs: None,
        })))
    }

    /// `F_p[w]/(modulus)`; the modulus must be monic and irreducible over `F_p`.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_supported_prime(p) {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        let mut modulus: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        let e = modulus.len().saturating_sub(1);
        if e == 0 {
            return Err(Error::Malformed("defining polynomial must have degree >= 1".into()));
        }
        if modulus[e] != 1 {
            return Err(Error::Malformed("defining polynomial must be monic".into()));
        }
        let size = (p as u64).checked_pow(e as u32).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE || e > MAX_DEGREE {
            return Err(Error::FieldTooLarge { p, degree: e as u32 });
        }
        if !is_irreducible_mod_p(p, &modulus) {
            return Err(Error::Reducible);
        }
        if e == 1 {
            return Field::prime(p);
        }
        let mut field = Field(Arc::new(FieldSpec { p, modulus, size, logs: None }));
        if size <= TABLE_LIMIT {
            let logs = field.build_logs();
            Arc::get_mut(&mut field.0).expect("fresh field").logs = Some(Arc::new(logs));
        }
        Ok(field)
    }

    /// `F_{p^e}` with the lexicographically first monic irreducible modulus.
    pub fn with_degree(p: u32, e: u32) -> Result<Field> {
        if e == 1 {
            return Field::prime(p);
        }
        let modulus = first_irreducible(p, e as usize)?;
        Field::new(p, &modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        (self.0.modulus.len() - 1) as u32
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    /// Powers of the first element whose order is `size - 1`.
    fn build_logs(&self) -> LogTables {
        let order = (self.size() - 1) as usize;
        for g in 2..self.size() as u32 {
            let mut exp = Vec::with_capacity(order);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.mul_raw(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == order {
                let mut log = vec![0u32; self.size() as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                return LogTables { exp, log };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn is_prime_field(&self) -> bool {
        self.0.modulus.len() == 2
    }

    /// Short human-readable name such as `F3` or `F4:w^2+w+1`.
    pub fn describe(&self) -> String {
        if self.is_prime_field() && self.0.modulus[0] == 0 {
            return format!("F{}", self.0.p);
        }
        let mut terms = Vec::new();
        for (j, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match j {
                0 => format!("{c}"),
                1 => "w".to_string(),
                _ => format!("w^{j}"),
            };
            if c != 1 && j > 0 {
                terms.push(format!("{c}*{mono}"));
            } else {
                terms.push(mono);
            }
        }
        format!("F{}:{}", self.0.size, terms.join("+"))
    }

    pub fn zero(&self) -> Fq {
        Fq::from_raw(self, 0)
    }

    pub fn one(&self) -> Fq {
        Fq::from_raw(self, self.one_raw())
    }

    /// The class `w` of the variable; for the prime field this is its root of the modulus.
    pub fn generator(&self) -> Fq {
        Fq::from_raw(self, self.generator_raw())
    }

    pub fn from_int(&self, n: i64) -> Fq {
        Fq::from_raw(self, self.int_raw(n))
    }

    pub fn elem(&self, raw: u32) -> Fq {
        assert!((raw as u64) < self.size(), "raw value out of range");
        Fq::from_raw(self, raw)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq::from_raw(self, rng.gen_range(0..self.size()) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.size()).map(move |r| Fq::from_raw(self, r as u32))
    }

    // ---- raw arithmetic -------------------------------------------------

    pub(crate) fn one_raw(&self) -> u32 {
        1
    }

    pub(crate) fn generator_raw(&self) -> u32 {
        if self.is_prime_field() {
            (self.0.p - self.0.modulus[0]) % self.0.p
        } else {
            self.0.p
        }
    }

    pub(crate) fn int_raw(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    fn unpack(&self, mut a: u32, out: &mut [u32; MAX_DEGREE]) -> usize {
        let p = self.0.p;
        let e = self.degree() as usize;
        for slot in out.iter_mut().take(e) {
            *slot = a % p;
            a /= p;
        }
        e
    }

    fn pack(&self, digits: &[u32]) -> u32 {
        let p = self.0.p;
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.is_prime_field() {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (a, b);
        let mut out = 0u32;
        let mut weight = 1u32;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * weight;
            x /= p;
            y /= p;
            weight *= p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.is_prime_field() {
            return (p - a) % p;
        }
        let mut x = a;
        let mut out = 0u32;
        let mut weight = 1u32;
        while x > 0 {
            out += ((p - x % p) % p) * weight;
            x /= p;
            weight *= p;
        }
        out
    }

    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if a == 0 || b == 0 {
            return 0;
        }
        if self.is_prime_field() {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        if let Some(t) = &self.0.logs {
            let i = (t.log[a as usize] + t.log[b as usize]) as usize;
            return t.exp[i % t.exp.len()];
        }
        let mut da = [0u32; MAX_DEGREE];
        let mut db = [0u32; MAX_DEGREE];
        let e = self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u32; 2 * MAX_DEGREE];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let modulus = &self.0.modulus;
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..e {
                let sub = (c * modulus[j]) % p;
                prod[k - e + j] = (prod[k - e + j] + p - sub) % p;
            }
        }
        self.pack(&prod[..e])
    }

    pub(crate) fn pow_raw(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = self.one_raw();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else if let Some(t) = &self.0.logs {
            let n = t.exp.len();
            Some(t.exp[(n - t.log[a as usize] as usize) % n])
        } else {
            Some(self.pow_raw(a, self.size() - 2))
        }
    }

    pub(crate) fn frobenius_raw(&self, a: u32) -> u32 {
        if self.is_prime_field() {
            a
        } else {
            self.pow_raw(a, self.0.p as u64)
        }
    }

    /// Inverse Frobenius: `x^(p^(e-1))`.
    pub(crate) fn pth_root_raw(&self, a: u32) -> u32 {
        if self.is_prime_field() {
            a
        } else {
            self.pow_raw(a, self.size() / self.0.p as u64)
        }
    }

    /// Unique `p^k`-th root.
    pub(crate) fn root_pk_raw(&self, a: u32, k: u32) -> u32 {
        let e = self.degree();
        let mut r = a;
        for _ in 0..(k % e.max(1)) {
            r = self.pth_root_raw(r);
        }
        r
    }

    /// Coefficient digits of `a` over `F_p` in the basis `1, w, ..., w^(e-1)`.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = [0u32; MAX_DEGREE];
        let e = self.unpack(a, &mut d);
        d[..e].to_vec()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.0.p;
        let e = self.degree() as usize;
        let mut d = vec![0u32; e];
        for (i, &c) in digits.iter().enumerate().take(e) {
            d[i] = c % p;
        }
        self.pack(&d)
    }
}

/// An element of a finite field together with its field handle.
#[derive(Clone)]
pub struct Fq {
    field: Field,
    raw: u32,
}

impl Fq {
    pub(crate) fn from_raw(field: &Field, raw: u32) -> Fq {
        Fq { field: field.clone(), raw }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> u32 {
        self.raw
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    pub fn pow(&self, exp: u64) -> Fq {
        Fq::from_raw(&self.field, self.field.pow_raw(self.raw, exp))
    }

    pub fn inv(&self) -> Option<Fq> {
        self.field.inv_raw(self.raw).map(|r| Fq::from_raw(&self.field, r))
    }

    /// `x^p`.
    pub fn frobenius(&self) -> Fq {
        Fq::from_raw(&self.field, self.field.frobenius_raw(self.raw))
    }

    /// The unique `y` with `y^p = x`.
    pub fn pth_root(&self) -> Fq {
        Fq::from_raw(&self.field, self.field.pth_root_raw(self.raw))
    }

    /// The unique `y` with `y^(p^k) = x`.
    pub fn root_pk(&self, k: u32) -> Fq {
        Fq::from_raw(&self.field, self.field.root_pk_raw(self.raw, k))
    }

    pub fn digits(&self) -> Vec<u32> {
        self.field.digits(self.raw)
    }

    fn check(&self, other: &Fq) {
        debug_assert!(self.field == other.field, "mixed fields");
    }
}

/// Frobenius inverse on a finite field.
pub fn pth_root(x: &Fq) -> Fq {
    x.pth_root()
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.field == other.field
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.raw.hash(state)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_raw(&self.field, self.raw))
    }
}

/// Formats a raw element as a polynomial in `w` (an integer in the prime field).
pub fn format_raw(field: &Field, raw: u32) -> String {
    if field.is_prime_field() {
        return raw.to_string();
    }
    let digits = field.digits(raw);
    let mut terms = Vec::new();
    for (j, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (j, c) {
            (0, c) => c.to_string(),
            (1, 1) => "w".to_string(),
            (1, c) => format!("{c}*w"),
            (j, 1) => format!("w^{j}"),
            (j, c) => format!("{c}*w^{j}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        &self + &rhs
    }
}

impl<'a> Add<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn add(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        Fq::from_raw(&self.field, self.field.add_raw(self.raw, rhs.raw))
    }
}

impl Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        &self - &rhs
    }
}

impl<'a> Sub<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn sub(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        Fq::from_raw(&self.field, self.field.sub_raw(self.raw, rhs.raw))
    }
}

impl Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn mul(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        Fq::from_raw(&self.field, self.field.mul_raw(self.raw, rhs.raw))
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        -&self
    }
}

impl Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq::from_raw(&self.field, self.field.neg_raw(self.raw))
    }
}

// ---- polynomials over F_p used to validate moduli ------------------------

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mulmod_p(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_p(p, prod, m)
}

fn rem_p(p: u32, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
    // m monic
    let dm = m.len() - 1;
    trim(&mut a);
    while a.len() > dm {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for j in 0..=dm {
            let sub = (c * m[j]) % p;
            a[shift + j] = (a[shift + j] + p - sub) % p;
        }
        trim(&mut a);
    }
    a
}

fn gcd_p(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = *b.last().unwrap();
        let inv = (1..p).find(|x| (x * lead) % p == 1).unwrap();
        let monic: Vec<u32> = b.iter().map(|c| (c * inv) % p).collect();
        let r = rem_p(p, a, &monic);
        a = monic;
        b = r;
    }
    a
}

/// `x^(p^k) mod m` over `F_p`.
fn x_pow_pk(p: u32, k: usize, m: &[u32]) -> Vec<u32> {
    let mut r = rem_p(p, vec![0, 1], m);
    for _ in 0..k {
        // r <- r^p
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = mulmod_p(p, &acc, &r, m);
        }
        r = acc;
    }
    r
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over `F_p` for a monic polynomial.
pub(crate) fn is_irreducible_mod_p(p: u32, m: &[u32]) -> bool {
    let e = m.len() - 1;
    if e == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let sub_x = |mut v: Vec<u32>| {
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        trim(&mut v);
        v
    };
    if sub_x(x_pow_pk(p, e, m)) != Vec::<u32>::new() {
        return false;
    }
    let _ = x;
    for r in prime_divisors(e) {
        let h = sub_x(x_pow_pk(p, e / r, m));
        let g = gcd_p(p, m, &h);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn first_irreducible(p: u32, e: usize) -> Result<Vec<u32>> {
    let size = (p as u64).checked_pow(e as u32).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE || e > MAX_DEGREE {
        return Err(Error::FieldTooLarge { p, degree: e as u32 });
    }
    for idx in 0..size {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut x = idx;
        for _ in 0..e {
            coeffs.push((x % p as u64) as u32);
            x /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if is_irreducible_mod_p(p, &coeffs) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
