//! Exact arithmetic carriers: finite fields, polynomials, rational functions,
//! truncated Laurent series and a minimal bivariate function field.

mod bivar;
mod gf;
mod hensel;
mod laurent;
mod pbasis;
mod poly;
mod ratfunc;
mod tower;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use bivar::{BivarPoly, BivarRatFunc};
pub use gf::{format_raw, pth_root, Field, FieldSpec, Fq, MAX_FIELD_SIZE};
pub use hensel::hensel_solve;
pub use laurent::LaurentSeries;
pub use pbasis::{membership_f2_plus_f2a, pth_power_degree, q_rank};
pub use poly::DensePoly;
pub use ratfunc::{is_pth_power, RatFunc};
pub use tower::{FieldTower, TowerStep};

/// Common interface of the coefficient carriers.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn base_field(&self) -> &Field;
    /// Constant with value `c` in the same ring.
    fn constant_like(&self, c: &Fq) -> Self;
    /// `x^p`.
    fn frobenius(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn characteristic(&self) -> u32 {
        self.base_field().characteristic()
    }

    /// `x^(p^k)`.
    fn frobenius_pow(&self, k: u32) -> Self {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.frobenius();
        }
        r
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Function fields `F_q(t)` and `F_q(s,t)`: finite imperfection degree over a
/// perfect constant field, with an explicit monomial `p`-basis.
pub trait FunctionField: Scalar {
    /// Number of independent transcendental variables.
    fn imperfection_degree(&self) -> u32;
    /// `g` with `g^p = self`, if one exists.
    fn pth_root(&self) -> Option<Self>;
    /// Monomials `b` forming a basis of the field over its `q`-th powers.
    fn q_basis(&self, q: u64) -> Vec<Self>;
    /// Components `X_b` with `self = sum_b b * X_b^q`, in the order of [`Self::q_basis`].
    fn q_components(&self, q: u64) -> Vec<Self>;
}

impl Scalar for Fq {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Fq::is_zero(self)
    }
    fn base_field(&self) -> &Field {
        self.field()
    }
    fn constant_like(&self, c: &Fq) -> Self {
        c.clone()
    }
    fn frobenius(&self) -> Self {
        Fq::frobenius(self)
    }
    fn inv(&self) -> Option<Self> {
        Fq::inv(self)
    }
    fn pow(&self, exp: u64) -> Self {
        Fq::pow(self, exp)
    }
}

/// `p^k` as `u64`.
pub fn ppow(p: u32, k: u32) -> u64 {
    (p as u64).pow(k)
}
