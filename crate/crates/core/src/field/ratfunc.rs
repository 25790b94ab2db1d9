use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::gf::{Field, Fq};
use super::laurent::LaurentSeries;
use super::poly::{owned_binop, DensePoly};
use super::{FunctionField, Scalar};
use crate::error::{Error, Result};

/// Element of `F_q(t)`: reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: DensePoly,
    den: DensePoly,
}

impl RatFunc {
    pub fn new(num: DensePoly, den: DensePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: DensePoly, den: DensePoly) -> Self {
        if num.is_zero() {
            let f = den.field().clone();
            return RatFunc { num: DensePoly::zero(&f), den: DensePoly::one(&f) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: DensePoly) -> Self {
        let f = p.field().clone();
        RatFunc { num: p, den: DensePoly::one(&f) }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(DensePoly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(DensePoly::one(field))
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Self {
        Self::from_poly(DensePoly::x(field))
    }

    pub fn constant(c: &Fq) -> Self {
        Self::from_poly(DensePoly::constant(c))
    }

    /// `c * t^e` for any integer `e`.
    pub fn monomial(c: &Fq, e: i64) -> Self {
        let f = c.field();
        if e >= 0 {
            Self::from_poly(DensePoly::monomial(c, e as usize))
        } else {
            Self::reduce(DensePoly::constant(c), DensePoly::monomial(&f.one(), (-e) as usize))
        }
    }

    /// Random element with numerator and denominator of degree at most `max_deg`.
    pub fn random<R: Rng + ?Sized>(field: &Field, max_deg: usize, rng: &mut R) -> Self {
        let num = DensePoly::random(field, max_deg, rng);
        let mut den = DensePoly::random(field, max_deg, rng);
        while den.is_zero() {
            den = DensePoly::random(field, max_deg, rng);
        }
        Self::reduce(num, den)
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn numerator(&self) -> &DensePoly {
        &self.num
    }

    pub fn denominator(&self) -> &DensePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv_ratfunc().map(|i| self * &i)
    }

    fn inv_ratfunc(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }

    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(Scalar::pow(self, e as u64))
        } else {
            self.inv_ratfunc().map(|i| Scalar::pow(&i, (-e) as u64))
        }
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn t_valuation(&self) -> Option<i64> {
        let a = self.num.low_degree()? as i64;
        let b = self.den.low_degree().unwrap() as i64;
        Some(a - b)
    }

    /// `Some(e)` if the value is `c * t^e` with `c` constant.
    pub fn monomial_exponent(&self) -> Option<i64> {
        let single = |p: &DensePoly| {
            let nz: Vec<usize> =
                p.raw_coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect();
            (nz.len() == 1).then(|| nz[0] as i64)
        };
        Some(single(&self.num)? - single(&self.den)?)
    }

    /// `g` with `g^q = self` for `q` a power of `p`.
    pub fn qth_root(&self, q: u64) -> Option<Self> {
        let num = self.num.qth_root(q)?;
        let den = self.den.qth_root(q)?;
        Some(RatFunc { num, den })
    }

    /// `t`-adic expansion with absolute precision `prec`.
    pub fn to_laurent(&self, prec: i64) -> LaurentSeries {
        let n = LaurentSeries::from_poly(&self.num);
        let d = LaurentSeries::from_poly(&self.den);
        let dinv = d.inv_to(prec).expect("nonzero denominator");
        (n * dinv).truncate(prec)
    }

    /// Parseable text form in variable `t`.
    pub fn format_in(&self, var: &str) -> String {
        let n = self.num.format_in(var);
        if self.den.is_one() {
            return n;
        }
        format!("({})/({})", n, self.den.format_in(var))
    }
}

/// `Some(g)` with `g^p = f` when `f` is a `p`-th power in `F_q(t)`.
pub fn is_pth_power(f: &RatFunc) -> Option<RatFunc> {
    FunctionField::pth_root(f)
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_in("t"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_in("t"))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

owned_binop!(RatFunc, Add, add);
owned_binop!(RatFunc, Sub, sub);
owned_binop!(RatFunc, Mul, mul);

impl Scalar for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn base_field(&self) -> &Field {
        self.field()
    }
    fn constant_like(&self, c: &Fq) -> Self {
        RatFunc::constant(c)
    }
    fn frobenius(&self) -> Self {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }
    fn inv(&self) -> Option<Self> {
        self.inv_ratfunc()
    }
}

impl FunctionField for RatFunc {
    fn imperfection_degree(&self) -> u32 {
        1
    }

    fn pth_root(&self) -> Option<Self> {
        self.qth_root(self.field().characteristic() as u64)
    }

    fn q_basis(&self, q: u64) -> Vec<Self> {
        let one = self.field().one();
        (0..q as i64).map(|i| RatFunc::monomial(&one, i)).collect()
    }

    fn q_components(&self, q: u64) -> Vec<Self> {
        // N/D = N D^(q-1) / D^q
        let scaled = &self.num * &self.den.pow(q - 1);
        scaled
            .q_components(q)
            .into_iter()
            .map(|c| RatFunc::reduce(c, self.den.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn pth_power_examples() {
        let f2 = Field::prime(2).unwrap();
        let t = RatFunc::t(&f2);
        let one = RatFunc::one(&f2);
        let g = is_pth_power(&(&(&t * &t) + &one)).unwrap();
        assert_eq!(g, &t + &one);
        assert!(is_pth_power(&t).is_none());
    }

    #[test]
    fn pth_power_recovers_random_roots() {
        let mut rng = StdRng::seed_from_u64(11);
        for (p, e) in [(2, 1), (3, 1), (3, 2), (5, 1), (2, 3)] {
            let f = Field::with_degree(p, e).unwrap();
            for _ in 0..100 {
                let g = RatFunc::random(&f, 3, &mut rng);
                let gp = Scalar::pow(&g, p as u64);
                assert_eq!(gp, Scalar::frobenius(&g));
                assert_eq!(is_pth_power(&gp).unwrap(), g);
            }
        }
    }

    #[test]
    fn q_components_reassemble() {
        let mut rng = StdRng::seed_from_u64(5);
        let f = Field::prime(2).unwrap();
        for q in [2u64, 4] {
            for _ in 0..30 {
                let x = RatFunc::random(&f, 4, &mut rng);
                let basis = x.q_basis(q);
                let comps = x.q_components(q);
                let k = if q == 2 { 1 } else { 2 };
                let mut acc = RatFunc::zero(&f);
                for (b, c) in basis.iter().zip(&comps) {
                    acc = &acc + &(b * &c.frobenius_pow(k));
                }
                assert_eq!(acc, x);
            }
        }
    }

    #[test]
    fn laurent_expansion_of_inverse() {
        let f = Field::prime(3).unwrap();
        let x = RatFunc::new(DensePoly::one(&f), DensePoly::from_ints(&f, &[1, 1])).unwrap();
        let s = x.to_laurent(6);
        for e in 0..6 {
            let expected = if e % 2 == 0 { 1 } else { 2 };
            assert_eq!(s.coeff(e).unwrap(), f.from_int(expected));
        }
    }
}
