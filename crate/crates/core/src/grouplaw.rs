//! The quasi-rational group `u^2 + v + a v^2 = 0` in characteristic 2.
//!
//! Points are recorded by the parameter `s` of the conic,
//! `(u, v) = (s / (1 + a s^2), s^2 / (1 + a s^2))`, with
//! `s1 ⊕ s2 = (s1 + s2) / (1 + a s1 s2)`. The denominator of the group law can
//! vanish (at `s1 s2 = 1/a`), so the parameter lives on the projective line:
//! `s = ∞` is the point `(0, 1/a)` of the curve.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FunctionField;

#[derive(Clone, PartialEq)]
pub enum ParamPoint<X> {
    Finite(X),
    Infinity,
}

impl<X: fmt::Debug> fmt::Debug for ParamPoint<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamPoint::Finite(s) => write!(f, "{s:?}"),
            ParamPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QrGroup<X> {
    a: X,
}

impl<X: FunctionField> QrGroup<X> {
    /// Rejects `a` that is a square, reporting the square root.
    pub fn new(a: X) -> Result<Self> {
        if a.characteristic() != 2 {
            return Err(Error::UnsupportedCharacteristic(a.characteristic()));
        }
        if let Some(r) = a.pth_root() {
            return Err(Error::SquareParameter(format!("a = ({r:?})^2")));
        }
        Ok(QrGroup { a })
    }

    pub fn a(&self) -> &X {
        &self.a
    }

    pub fn identity(&self) -> ParamPoint<X> {
        ParamPoint::Finite(self.a.zero_like())
    }

    pub fn point(&self, s: X) -> ParamPoint<X> {
        ParamPoint::Finite(s)
    }

    /// Homogeneous coordinates `(x : y)` with `s = x / y`.
    fn coords(&self, p: &ParamPoint<X>) -> (X, X) {
        let one = self.a.one_like();
        match p {
            ParamPoint::Finite(s) => (s.clone(), one),
            ParamPoint::Infinity => (one.clone(), one.zero_like()),
        }
    }

    fn from_coords(&self, x: X, y: X) -> Result<ParamPoint<X>> {
        match y.inv() {
            Some(yi) => Ok(ParamPoint::Finite(x * yi)),
            None if !x.is_zero() => Ok(ParamPoint::Infinity),
            None => Err(Error::SquareParameter(format!("{:?}", self.a))),
        }
    }

    /// The point `(u, v)` on `u^2 + v + a v^2 = 0`.
    pub fn embed(&self, p: &ParamPoint<X>) -> Result<(X, X)> {
        let (x, y) = self.coords(p);
        let den = y.clone() * y.clone() + self.a.clone() * x.clone() * x.clone();
        let inv = den.inv().ok_or_else(|| Error::SquareParameter(format!("{:?}", self.a)))?;
        Ok((x.clone() * y * inv.clone(), x.clone() * x * inv))
    }

    /// `s1 ⊕ s2`. Fails only if `1 + a s^2` vanishes, which means `a` is a square.
    pub fn add(&self, p1: &ParamPoint<X>, p2: &ParamPoint<X>) -> Result<ParamPoint<X>> {
        let (x1, y1) = self.coords(p1);
        let (x2, y2) = self.coords(p2);
        let x = x1.clone() * y2.clone() + x2.clone() * y1.clone();
        let y = y1 * y2 + self.a.clone() * x1 * x2;
        self.from_coords(x, y)
    }

    /// Every element has order dividing 2.
    pub fn neg(&self, p: &ParamPoint<X>) -> ParamPoint<X> {
        p.clone()
    }

    pub fn on_curve(&self, u: &X, v: &X) -> bool {
        (u.clone() * u.clone() + v.clone() + self.a.clone() * v.clone() * v.clone()).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{DensePoly, Field, RatFunc, Scalar};

    fn setup() -> (Field, QrGroup<RatFunc>) {
        let f = Field::prime(2).unwrap();
        let g = QrGroup::new(RatFunc::t(&f)).unwrap();
        (f, g)
    }

    fn rf(f: &Field, num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(DensePoly::from_ints(f, num), DensePoly::from_ints(f, den)).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let (f, g) = setup();
        assert_eq!(g.embed(&g.identity()).unwrap(), (RatFunc::zero(&f), RatFunc::zero(&f)));
        let inv1t = rf(&f, &[1], &[1, 1]);
        assert_eq!(g.embed(&g.point(RatFunc::one(&f))).unwrap(), (inv1t.clone(), inv1t));
        let (u, v) = g.embed(&g.point(RatFunc::t(&f))).unwrap();
        assert_eq!(u, rf(&f, &[0, 1], &[1, 0, 0, 1]));
        assert_eq!(v, rf(&f, &[0, 0, 1], &[1, 0, 0, 1]));
        let (u, v) = g.embed(&ParamPoint::Infinity).unwrap();
        assert!(g.on_curve(&u, &v));
    }

    #[test]
    fn addition_examples() {
        let (f, g) = setup();
        let t = g.point(RatFunc::t(&f));
        assert_eq!(g.add(&g.identity(), &t).unwrap(), t);
        assert_eq!(g.add(&t, &t).unwrap(), g.identity());
        let s = g.add(&g.point(RatFunc::one(&f)), &t).unwrap();
        assert_eq!(s, g.point(rf(&f, &[1], &[1, 1])));
        // 1 ⊕ 1/t has vanishing affine denominator.
        let inv_t = g.point(rf(&f, &[1], &[0, 1]));
        assert_eq!(g.add(&g.point(RatFunc::one(&f)), &inv_t).unwrap(), ParamPoint::Infinity);
    }

    #[test]
    fn embedding_is_additive() {
        // U is a subgroup of G_a^2, so embed(s1 ⊕ s2) = embed(s1) + embed(s2).
        let (f, g) = setup();
        let mut pts = vec![ParamPoint::Infinity, g.identity()];
        for (n, d) in [(&[1][..], &[1][..]), (&[0, 1], &[1]), (&[1, 1], &[0, 1]), (&[1], &[0, 1]), (&[1, 0, 1], &[1, 1])] {
            pts.push(g.point(rf(&f, n, d)));
        }
        for p in &pts {
            for q in &pts {
                let (u1, v1) = g.embed(p).unwrap();
                let (u2, v2) = g.embed(q).unwrap();
                let (u, v) = g.embed(&g.add(p, q).unwrap()).unwrap();
                assert_eq!((u, v), (&u1 + &u2, &v1 + &v2));
            }
        }
    }

    #[test]
    fn square_parameter_is_rejected() {
        let f = Field::prime(2).unwrap();
        let t2 = Scalar::pow(&RatFunc::t(&f), 2);
        assert!(matches!(QrGroup::new(t2), Err(Error::SquareParameter(_))));
    }
}
