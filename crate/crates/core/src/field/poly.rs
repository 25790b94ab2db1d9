use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::gf::{format_raw, Field, Fq};

/// Dense univariate polynomial over a finite field, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct DensePoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl DensePoly {
    pub fn from_raw(field: &Field, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        DensePoly { field: field.clone(), coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: &[Fq]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|c| c.raw()).collect())
    }

    /// Integer coefficients reduced mod `p`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.int_raw(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        DensePoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(&field.one())
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(&field.one(), 1)
    }

    pub fn constant(c: &Fq) -> Self {
        Self::from_raw(c.field(), vec![c.raw()])
    }

    pub fn monomial(c: &Fq, deg: usize) -> Self {
        let mut v = vec![0u32; deg + 1];
        v[deg] = c.raw();
        Self::from_raw(c.field(), v)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Self {
        let coeffs = (0..=max_deg).map(|_| field.random(rng).raw()).collect();
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading(&self) -> Fq {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn scale(&self, c: &Fq) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul_raw(a, c.raw())).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.field.inv_raw(lc).expect("nonzero leading coefficient");
                self.scale(&self.field.elem(inv))
            }
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u32; k];
        v.extend_from_slice(&self.coeffs);
        Self::from_raw(&self.field, v)
    }

    pub fn eval(&self, x: &Fq) -> Fq {
        let f = &self.field;
        let r = self.coeffs.iter().rev().fold(0u32, |acc, &c| f.add_raw(f.mul_raw(acc, x.raw()), c));
        f.elem(r)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul_raw(c, f.int_raw(i as i64)))
            .collect();
        Self::from_raw(f, coeffs)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv_raw(*d.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul_raw(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub_raw(r[k + j], f.mul_raw(c, dj));
            }
        }
        r.truncate(dd);
        (Self::from_raw(f, q), Self::from_raw(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powmod(&self, mut exp: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            exp >>= 1;
            if exp > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// `self^p`, computed coefficientwise.
    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u32; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * p] = f.frobenius_raw(c);
        }
        Self::from_raw(f, v)
    }

    /// `g` with `g^p = self`, if all exponents are divisible by `p`.
    pub fn pth_root(&self) -> Option<Self> {
        self.qth_root(self.field.characteristic() as u64)
    }

    /// `g` with `g^q = self` for `q` a power of `p`.
    pub fn qth_root(&self, q: u64) -> Option<Self> {
        let f = &self.field;
        let k = log_p(f.characteristic(), q);
        let q = q as usize;
        let mut v = Vec::with_capacity(self.coeffs.len() / q + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % q != 0 {
                if c != 0 {
                    return None;
                }
                continue;
            }
            v.push(f.root_pk_raw(c, k));
        }
        Some(Self::from_raw(f, v))
    }

    /// Splits `self = sum_{i<q} x^i * P_i^q`, returning the `P_i`.
    pub fn q_components(&self, q: u64) -> Vec<Self> {
        let f = &self.field;
        let k = log_p(f.characteristic(), q);
        let q = q as usize;
        let mut parts = vec![Vec::new(); q];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let (r, e) = (i % q, i / q);
            let part = &mut parts[r];
            if part.len() <= e {
                part.resize(e + 1, 0);
            }
            part[e] = f.root_pk_raw(c, k);
        }
        parts.into_iter().map(|v| Self::from_raw(f, v)).collect()
    }

    /// Substitutes `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::from_raw(&self.field, v)
    }

    /// Re-expresses the coefficients in another field via `map`.
    pub fn map_coeffs(&self, target: &Field, map: impl Fn(&Fq) -> Fq) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| map(&self.field.elem(c)).raw()).collect();
        Self::from_raw(target, coeffs)
    }

    /// `x^Q mod self` where `Q` is the field size.
    fn x_pow_field_size(&self, m: &Self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let mut r = Self::x(f).rem(m);
        for _ in 0..f.degree() {
            r = r.powmod(p, m);
        }
        r
    }

    /// Distinct roots in the coefficient field, sorted by raw value.
    pub fn roots(&self) -> Vec<Fq> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = self.field.clone();
        if f.size() <= 256 {
            return f.elements().filter(|x| self.eval(x).is_zero()).collect();
        }
        let g = self.monic();
        if g.degree() == Some(0) {
            return Vec::new();
        }
        let xq = g.x_pow_field_size(&g);
        let h = g.gcd(&(&xq - &Self::x(&f)));
        let mut out = Vec::new();
        let mut rng = StdRng::seed_from_u64(0x5eed_0f70_07);
        split_linear(&h, &mut rng, &mut out);
        out.sort_by_key(|x| x.raw());
        out.dedup();
        out
    }

    /// Smallest `d` such that `self` has an irreducible factor of degree `d`.
    pub fn min_factor_degree(&self) -> Option<usize> {
        let g = self.monic();
        let deg = g.degree()?;
        if deg == 0 {
            return None;
        }
        let f = &self.field;
        let p = f.characteristic() as u64;
        let x = Self::x(f);
        let mut r = x.rem(&g);
        for d in 1..=deg {
            for _ in 0..f.degree() {
                r = r.powmod(p, &g);
            }
            if g.gcd(&(&r - &x)).degree().unwrap_or(0) > 0 {
                return Some(d);
            }
        }
        Some(deg)
    }
}

fn log_p(p: u32, q: u64) -> u32 {
    let mut k = 0;
    let mut v = 1u64;
    while v < q {
        v *= p as u64;
        k += 1;
    }
    assert_eq!(v, q, "{q} is not a power of {p}");
    k
}

fn split_linear(h: &DensePoly, rng: &mut StdRng, out: &mut Vec<Fq>) {
    let f = h.field().clone();
    match h.degree() {
        None | Some(0) => return,
        Some(1) => {
            let m = h.monic();
            out.push(-m.coeff(0));
            return;
        }
        _ => {}
    }
    let p = f.characteristic();
    let x = DensePoly::x(&f);
    loop {
        let delta = f.random(rng);
        let candidate = if p == 2 {
            let base = x.scale(&delta).rem(h);
            let mut acc = base.clone();
            let mut cur = base;
            for _ in 1..f.degree() {
                cur = (&cur * &cur).rem(h);
                acc = &acc + &cur;
            }
            acc
        } else {
            let shifted = &x + &DensePoly::constant(&delta);
            let e = (f.size() - 1) / 2;
            &shifted.powmod(e, h) - &DensePoly::one(&f)
        };
        let g = h.gcd(&candidate);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < h.degree().unwrap() {
            let (q, _) = h.divrem(&g);
            split_linear(&g, rng, out);
            split_linear(&q, rng, out);
            return;
        }
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_in("t"))
    }
}

impl DensePoly {
    /// Human-readable form in the given variable, highest degree first.
    pub fn format_in(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = format_raw(&self.field, c);
            let coef_needs_parens = cs.contains('+');
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if mono.is_empty() {
                if coef_needs_parens { format!("({cs})") } else { cs }
            } else if c == 1 {
                mono
            } else if coef_needs_parens {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl<'a> Add<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.add_raw(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    rhs.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        DensePoly::from_raw(f, v)
    }
}

impl<'a> Sub<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self + &(-rhs)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        let f = &self.field;
        DensePoly::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }
}

impl<'a> Mul<&'a DensePoly> for &'a DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero(f);
        }
        let mut v = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add_raw(v[i + j], f.mul_raw(a, b));
                }
            }
        }
        DensePoly::from_raw(f, v)
    }
}

macro_rules! owned_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
pub(crate) use owned_binop;

owned_binop!(DensePoly, Add, add);
owned_binop!(DensePoly, Sub, sub);
owned_binop!(DensePoly, Mul, mul);

impl Neg for DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let f = Field::prime(3).unwrap();
        let a = DensePoly::from_ints(&f, &[1, 0, 1]); // t^2+1
        let b = DensePoly::from_ints(&f, &[1, 1]); // t+1
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.gcd(&a), a);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn roots_small_and_large_fields() {
        let f = Field::prime(3).unwrap();
        let g = DensePoly::from_ints(&f, &[0, 1, 0, 1]); // t^3 + t
        assert_eq!(g.roots(), vec![f.zero()]);
        let big = Field::with_degree(2, 10).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let rs: Vec<Fq> = (0..4).map(|_| big.random(&mut rng)).collect();
        let mut prod = DensePoly::one(&big);
        for r in &rs {
            prod = &prod * &(&DensePoly::x(&big) - &DensePoly::constant(r));
        }
        let found = prod.roots();
        for r in &rs {
            assert!(found.contains(r));
        }
        let big3 = Field::with_degree(3, 6).unwrap();
        let rs: Vec<Fq> = (0..3).map(|_| big3.random(&mut rng)).collect();
        let mut prod = DensePoly::one(&big3);
        for r in &rs {
            prod = &prod * &(&DensePoly::x(&big3) - &DensePoly::constant(r));
        }
        let found = prod.roots();
        for r in &rs {
            assert!(found.contains(r));
        }
    }

    #[test]
    fn min_factor_degree_of_artin_schreier() {
        let f = Field::prime(3).unwrap();
        // c^3 - c - 1 is irreducible over F_3
        let g = DensePoly::from_ints(&f, &[-1, -1, 0, 1]);
        assert_eq!(g.min_factor_degree(), Some(3));
        let g = DensePoly::from_ints(&f, &[0, 1, 0, 1]);
        assert_eq!(g.min_factor_degree(), Some(1));
    }

    #[test]
    fn frobenius_and_root() {
        let f = Field::with_degree(2, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let a = DensePoly::random(&f, 5, &mut rng);
            let sq = a.frobenius();
            assert_eq!(sq, &a * &a);
            assert_eq!(sq.pth_root().unwrap(), a);
        }
    }
}
