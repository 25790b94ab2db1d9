//! Additive polynomials, Russell equations and their invariants.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::UvPoly;
use crate::field::{
    membership_f2_plus_f2a, ppow, pth_power_degree, DensePoly, Field, FunctionField, LaurentSeries, RatFunc,
    Scalar,
};

/// `Φ(x_0..x_r) = sum_i sum_j c_j^(i) x_i^(p^j)`; `coeffs[i][j] = c_j^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PPolynomial<X> {
    coeffs: Vec<Vec<X>>,
}

impl<X: Scalar> PPolynomial<X> {
    /// Trailing zero coefficients of every variable are dropped.
    pub fn new(mut coeffs: Vec<Vec<X>>) -> Self {
        for c in coeffs.iter_mut() {
            while c.last().is_some_and(|x| x.is_zero()) {
                c.pop();
            }
        }
        PPolynomial { coeffs }
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self, var: usize) -> &[X] {
        &self.coeffs[var]
    }

    /// `k_i`: the largest `j` with `c_j^(i) != 0`.
    pub fn top_index(&self, var: usize) -> Option<usize> {
        self.coeffs[var].len().checked_sub(1)
    }

    pub fn eval(&self, xs: &[X]) -> X {
        assert_eq!(xs.len(), self.coeffs.len(), "one value per variable");
        let mut acc = xs[0].zero_like();
        for (cs, x) in self.coeffs.iter().zip(xs) {
            let mut power = x.clone();
            for c in cs {
                if !c.is_zero() {
                    acc = acc + c.clone() * power.clone();
                }
                power = power.frobenius();
            }
        }
        acc
    }

    /// Keeps only `c_(k_i)^(i) x_i^(p^(k_i))` for every variable.
    pub fn principal_part(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|cs| match cs.split_last() {
                None => Vec::new(),
                Some((top, rest)) => {
                    let mut v: Vec<X> = rest.iter().map(|x| x.zero_like()).collect();
                    v.push(top.clone());
                    v
                }
            })
            .collect();
        PPolynomial { coeffs }
    }

    /// Some variable has a nonzero linear coefficient.
    pub fn is_separable(&self) -> bool {
        self.coeffs.iter().any(|cs| cs.first().is_some_and(|c| !c.is_zero()))
    }
}

/// `u^(p^n) + v + a_1 v^p + ... + a_m v^(p^m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RussellEquation<X> {
    p: u32,
    n: u32,
    a: Vec<X>,
}

impl<X: Scalar> RussellEquation<X> {
    /// `a = [a_1, .., a_m]`; `a_m` must be nonzero.
    pub fn new(n: u32, a: Vec<X>) -> Result<Self> {
        let Some(last) = a.last() else {
            return Err(Error::Malformed("a Russell equation needs m >= 1".into()));
        };
        if n == 0 {
            return Err(Error::Malformed("height n must be at least 1".into()));
        }
        if last.is_zero() {
            return Err(Error::Malformed("leading coefficient a_m is zero".into()));
        }
        let p = last.characteristic();
        Ok(RussellEquation { p, n, a })
    }

    /// Reads a polynomial in `u, v` of the exact Russell shape.
    pub fn from_uv(poly: &UvPoly<X>) -> Result<Self> {
        let bad = |msg: &str| Error::Malformed(format!("not a Russell equation: {msg}"));
        let (&(du, _), first) = poly.terms.iter().find(|(k, _)| k.0 > 0).ok_or_else(|| bad("no u term"))?;
        let p = first.characteristic();
        let mut n = 0;
        let mut q = 1u64;
        while q < du as u64 {
            q *= p as u64;
            n += 1;
        }
        if q != du as u64 || n == 0 {
            return Err(bad("u must appear as u^(p^n)"));
        }
        let mut a: Vec<X> = Vec::new();
        for (&(eu, ev), c) in &poly.terms {
            match (eu, ev) {
                (e, 0) if e == du => {
                    if c != &c.one_like() {
                        return Err(bad("coefficient of u^(p^n) must be 1"));
                    }
                }
                (0, 1) => {
                    if c != &c.one_like() {
                        return Err(bad("coefficient of v must be 1"));
                    }
                }
                (0, e) => {
                    let mut i = 0usize;
                    let mut w = 1u64;
                    while w < e as u64 {
                        w *= p as u64;
                        i += 1;
                    }
                    if w != e as u64 {
                        return Err(bad("v must appear with p-power exponents"));
                    }
                    if a.len() < i {
                        a.resize(i, c.zero_like());
                    }
                    a[i - 1] = c.clone();
                }
                _ => return Err(bad("unexpected monomial")),
            }
        }
        if !poly.terms.contains_key(&(0, 1)) {
            return Err(bad("missing linear term v"));
        }
        Self::new(n, a)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Height.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn coeffs(&self) -> &[X] {
        &self.a
    }

    pub fn leading(&self) -> &X {
        self.a.last().unwrap()
    }

    /// As a `p`-polynomial in `(u, v)`.
    pub fn to_ppoly(&self) -> PPolynomial<X> {
        let one = self.leading().one_like();
        let zero = one.zero_like();
        let mut u = vec![zero; self.n as usize];
        u.push(one.clone());
        let mut v = vec![one];
        v.extend(self.a.iter().cloned());
        PPolynomial::new(vec![u, v])
    }

    /// `Φ(u, v)`.
    pub fn eval(&self, u: &X, v: &X) -> X {
        self.to_ppoly().eval(&[u.clone(), v.clone()])
    }

    /// `a_m ↦ a_m + g^(p^n)`, which gives an isomorphic group.
    pub fn shift_leading(&self, g: &X) -> Result<Self> {
        let mut a = self.a.clone();
        let last = a.pop().unwrap();
        a.push(last + g.frobenius_pow(self.n));
        Self::new(self.n, a)
    }

    pub fn genus(&self) -> i64 {
        genus(self.p, self.n, self.m())
    }
}

impl<X: Scalar> fmt::Display for RussellEquation<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{}+v", ppow(self.p, self.n))?;
        for (i, a) in self.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            write!(f, "+({:?})*v^{}", a, ppow(self.p, i as u32 + 1))?;
        }
        Ok(())
    }
}

/// `½(p^min(n,m) - 1)(p^max(n,m) - 2)`: arithmetic genus of the weighted
/// compactification (the group's genus when that curve is regular).
pub fn genus(p: u32, n: u32, m: u32) -> i64 {
    let lo = ppow(p, n.min(m)) as i64;
    let hi = ppow(p, n.max(m)) as i64;
    (lo - 1) * (hi - 2) / 2
}

/// `[F(a_1^(1/p^n), .., a_m^(1/p^n)) : F]`.
pub fn splitting_degree<X: FunctionField>(r: &RussellEquation<X>) -> u64 {
    let nonzero: Vec<X> = r.a.iter().filter(|x| !x.is_zero()).cloned().collect();
    pth_power_degree(&nonzero, r.n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QeCase {
    OneA,
    OneB,
    OneC,
    Two,
}

impl QeCase {
    pub fn label(&self) -> &'static str {
        match self {
            QeCase::OneA => "1a",
            QeCase::OneB => "1b",
            QeCase::OneC => "1c",
            QeCase::Two => "2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    SplitsToGa,
    QuasiRational,
    QuasiElliptic(QeCase),
    HigherGenus { genus: i64 },
    Undetermined { reason: String },
}

impl Classification {
    /// Stable short tag.
    pub fn tag(&self) -> String {
        match self {
            Classification::SplitsToGa => "splits-to-Ga".into(),
            Classification::QuasiRational => "quasi-rational".into(),
            Classification::QuasiElliptic(c) => format!("quasi-elliptic-{}", c.label()),
            Classification::HigherGenus { genus } => format!("higher-genus-{genus}"),
            Classification::Undetermined { .. } => "undetermined".into(),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

fn undetermined(reason: &str) -> Classification {
    Classification::Undetermined { reason: reason.into() }
}

/// Removes top coefficients that are `p^n`-th powers when `m >= n`:
/// `u ↦ u + g v^(p^(m-n))` cancels `g^(p^n) v^(p^m)`.
fn drop_power_tops<X: FunctionField>(r: &RussellEquation<X>) -> Option<RussellEquation<X>> {
    let mut a = r.a.clone();
    loop {
        while a.last().is_some_and(|x| x.is_zero()) {
            a.pop();
        }
        let m = a.len() as u32;
        if m == 0 {
            return None;
        }
        if m < r.n {
            break;
        }
        let top = a.last().unwrap();
        let q = ppow(r.p, r.n);
        let comps = top.q_components(q);
        if comps.iter().skip(1).any(|c| !c.is_zero()) {
            break;
        }
        a.pop();
    }
    Some(RussellEquation { p: r.p, n: r.n, a })
}

/// Data of the genus-one cubic `y^2 + x^3 + a x + c` attached to
/// `u^4 + v + a v^2 + c^2 v^4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Case1cReduction<X> {
    pub a: X,
    pub c: X,
    /// `a` is a square: the group has genus 0.
    pub genus_zero: bool,
    /// `(alpha, beta)` with `c = a alpha^2 + beta^2`: the group is of case 1(b).
    pub reduces_to_1b: Option<(X, X)>,
    /// `[F(a^(1/2), c^(1/2)) : F]`.
    pub degree: u64,
}

pub fn reduce_case_1c<X: FunctionField>(a: &X, c: &X) -> Result<Case1cReduction<X>> {
    if a.characteristic() != 2 {
        return Err(Error::UnsupportedShape("case 1(c) reduction is for characteristic 2".into()));
    }
    let genus_zero = a.pth_root().is_some();
    let reduces_to_1b = if genus_zero { None } else { membership_f2_plus_f2a(c, a) };
    let nonzero: Vec<X> = [a, c].into_iter().filter(|x| !x.is_zero()).cloned().collect();
    let degree = pth_power_degree(&nonzero, 1);
    Ok(Case1cReduction { a: a.clone(), c: c.clone(), genus_zero, reduces_to_1b, degree })
}

/// Matches the equation against the known genus 0 and genus 1 shapes.
pub fn classify<X: FunctionField>(r: &RussellEquation<X>) -> Result<Classification> {
    if r.leading().is_zero() {
        return Err(Error::Malformed("leading coefficient a_m is zero".into()));
    }
    if splitting_degree(r) == 1 {
        return Ok(Classification::SplitsToGa);
    }
    let Some(r) = drop_power_tops(r) else {
        return Ok(Classification::SplitsToGa);
    };
    let p = r.p;
    let regular = r.leading().pth_root().is_none();
    let square = |x: &X| x.pth_root().is_some();
    Ok(match (p, r.n, r.m()) {
        (2, 1, 1) => Classification::QuasiRational,
        (2, 1, 2) => {
            let (a1, a2) = (&r.a[0], &r.a[1]);
            if square(a2) {
                undetermined("a_2 is a square; compactification is not regular")
            } else {
                let nonzero: Vec<X> = [a1, a2].into_iter().filter(|x| !x.is_zero()).cloned().collect();
                match pth_power_degree(&nonzero, 1) {
                    2 => Classification::QuasiElliptic(QeCase::OneA),
                    _ => undetermined("regular of genus 1 but [F(a_1^(1/2), a_2^(1/2)):F] = 4"),
                }
            }
        }
        (2, 2, 1) => {
            if square(&r.a[0]) {
                undetermined("a is a square; compactification is not regular")
            } else {
                Classification::QuasiElliptic(QeCase::OneB)
            }
        }
        (2, 2, 2) => match r.a[1].pth_root() {
            None => Classification::HigherGenus { genus: genus(2, 2, 2) },
            Some(c) => {
                let red = reduce_case_1c(&r.a[0], &c)?;
                if red.genus_zero {
                    undetermined("a_1 is a square; the group has genus 0")
                } else if red.reduces_to_1b.is_some() {
                    Classification::QuasiElliptic(QeCase::OneB)
                } else if red.degree == 4 {
                    Classification::QuasiElliptic(QeCase::OneC)
                } else {
                    undetermined("case 1(c) degree condition not met")
                }
            }
        },
        (3, 1, 1) => Classification::QuasiElliptic(QeCase::Two),
        (_, n, m) if regular => Classification::HigherGenus { genus: genus(p, n, m) },
        _ => undetermined("compactification is not regular and no normalization is known"),
    })
}

/// `c * t0^e0 * t1^e1 * t2^e2`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedMonomial<X> {
    pub coeff: X,
    pub exps: [u64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompactificationReport<X> {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    /// Weights of `(t0, t1, t2)`.
    pub weights: [u64; 3],
    pub degree: u64,
    pub monomials: Vec<WeightedMonomial<X>>,
    pub regular: bool,
    /// `[F(a_m^(1/p^n)) : F]`.
    pub boundary_degree: u64,
    pub canonical_degree: i64,
    pub genus: i64,
}

impl<X: Scalar> CompactificationReport<X> {
    pub fn weighted_degree(&self, mono: &WeightedMonomial<X>) -> u64 {
        mono.exps.iter().zip(self.weights).map(|(e, w)| e * w).sum()
    }

    /// Sets `t0 = 1` and reads the result as a polynomial in `u = t2`, `v = t1`.
    pub fn dehomogenize(&self) -> Result<RussellEquation<X>> {
        let mut terms = std::collections::BTreeMap::new();
        for mono in &self.monomials {
            terms.insert((mono.exps[2] as u32, mono.exps[1] as u32), mono.coeff.clone());
        }
        RussellEquation::from_uv(&UvPoly { terms })
    }
}

/// Closure of the curve in the weighted plane with `U = {t0 != 0}`.
pub fn compactify<X: FunctionField>(r: &RussellEquation<X>) -> CompactificationReport<X> {
    let (p, n, m) = (r.p, r.n, r.m());
    let one = r.leading().one_like();
    let hi = n.max(m);
    let lo = n.min(m);
    let degree = ppow(p, hi);
    let w = ppow(p, hi - lo);
    let mut monomials = vec![WeightedMonomial { coeff: one.clone(), exps: [0, 0, ppow(p, n)] }];
    let (weights, v_weight) = if n <= m { ([1, 1, w], 1) } else { ([1, w, 1], w) };
    let linear = std::iter::once(one).chain(r.a.iter().cloned());
    for (i, c) in linear.enumerate() {
        if c.is_zero() {
            continue;
        }
        let e1 = ppow(p, i as u32);
        monomials.push(WeightedMonomial { coeff: c, exps: [degree - v_weight * e1, e1, 0] });
    }
    let a_m = r.leading();
    CompactificationReport {
        p,
        n,
        m,
        weights,
        degree,
        monomials,
        regular: a_m.pth_root().is_none(),
        boundary_degree: pth_power_degree(std::slice::from_ref(a_m), n),
        canonical_degree: -2 - w as i64 + degree as i64,
        genus: genus(p, n, m),
    }
}

/// Coefficient rings where woundness can be argued through the `t`-adic valuation.
pub trait TAdic: Scalar {
    fn t_valuation(&self) -> Option<i64>;
    /// `Some(e)` when the value is exactly `c t^e`.
    fn monomial_exponent(&self) -> Option<i64>;
    fn from_poly(p: &DensePoly) -> Self;
    /// Zero with certainty (no precision caveat).
    fn is_certainly_zero(&self) -> bool;
}

impl TAdic for RatFunc {
    fn t_valuation(&self) -> Option<i64> {
        RatFunc::t_valuation(self)
    }
    fn monomial_exponent(&self) -> Option<i64> {
        RatFunc::monomial_exponent(self)
    }
    fn from_poly(p: &DensePoly) -> Self {
        RatFunc::from_poly(p.clone())
    }
    fn is_certainly_zero(&self) -> bool {
        self.is_zero()
    }
}

impl TAdic for LaurentSeries {
    fn t_valuation(&self) -> Option<i64> {
        self.valuation()
    }
    fn monomial_exponent(&self) -> Option<i64> {
        let terms = self.terms();
        (self.is_exact() && terms.len() == 1).then(|| terms[0].0)
    }
    fn from_poly(p: &DensePoly) -> Self {
        LaurentSeries::from_poly(p)
    }
    fn is_certainly_zero(&self) -> bool {
        self.is_exact() && self.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Woundness<X> {
    Wound,
    NotWound { witness: Vec<X> },
    Unknown,
}

/// Limits of the zero search in [`is_wound`].
#[derive(Clone, Copy, Debug)]
pub struct WoundSearch {
    pub max_degree: usize,
    pub max_candidates: u64,
}

impl Default for WoundSearch {
    fn default() -> Self {
        WoundSearch { max_degree: 2, max_candidates: 1 << 16 }
    }
}

/// Decides whether the principal part of `phi` has a nontrivial zero.
///
/// With monomial coefficients `c_i t^(e_i)`, a zero needs two terms of equal
/// valuation, so `e_i ≡ e_j (mod p^min(k_i, k_j))` for some `i != j`; when no
/// pair qualifies the principal part has no zero and the group is wound.
/// Otherwise polynomial tuples of growing degree are tried.
pub fn is_wound<X: TAdic>(phi: &PPolynomial<X>, field: &Field, search: WoundSearch) -> Woundness<X> {
    let pp = phi.principal_part();
    let tops: Vec<(usize, X)> = (0..pp.num_vars())
        .filter_map(|i| pp.top_index(i).map(|k| (k, pp.coeffs(i)[k].clone())))
        .collect();
    if tops.len() < pp.num_vars() {
        // Some variable does not occur at all.
        return search_zero(&pp, field, search);
    }
    if tops.len() == 1 {
        return Woundness::Wound;
    }
    let p = field.characteristic();
    let exps: Option<Vec<i64>> = tops.iter().map(|(_, c)| c.monomial_exponent()).collect();
    if let Some(exps) = exps {
        let blocked = (0..tops.len()).any(|i| {
            (i + 1..tops.len()).any(|j| {
                let modulus = ppow(p, tops[i].0.min(tops[j].0) as u32) as i64;
                (exps[i] - exps[j]).rem_euclid(modulus) == 0
            })
        });
        if !blocked {
            return Woundness::Wound;
        }
    }
    search_zero(&pp, field, search)
}

fn search_zero<X: TAdic>(pp: &PPolynomial<X>, field: &Field, search: WoundSearch) -> Woundness<X> {
    let nvars = pp.num_vars();
    let q = field.size();
    let mut tried = 0u64;
    for deg in 0..=search.max_degree {
        let slots = (deg + 1) * nvars;
        let Some(total) = q.checked_pow(slots as u32) else { return Woundness::Unknown };
        for code in 1..total {
            let mut digits = Vec::with_capacity(slots);
            let mut c = code;
            for _ in 0..slots {
                digits.push((c % q) as u32);
                c /= q;
            }
            let polys: Vec<DensePoly> = digits.chunks(deg + 1).map(|d| DensePoly::from_raw(field, d.to_vec())).collect();
            // Tuples of lower degree were covered by earlier rounds.
            if deg > 0 && polys.iter().all(|p| p.degree().is_none_or(|d| d < deg)) {
                continue;
            }
            tried += 1;
            if tried > search.max_candidates {
                return Woundness::Unknown;
            }
            let xs: Vec<X> = polys.iter().map(X::from_poly).collect();
            if pp.eval(&xs).is_certainly_zero() {
                return Woundness::NotWound { witness: xs };
            }
        }
    }
    Woundness::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BivarRatFunc;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn tpow(field: &Field, e: u64) -> RatFunc {
        Scalar::pow(&RatFunc::t(field), e)
    }

    #[test]
    fn principal_part_and_separability() {
        let f2 = f(2);
        let one = RatFunc::one(&f2);
        let zero = RatFunc::zero(&f2);
        let t = RatFunc::t(&f2);
        let phi = PPolynomial::new(vec![vec![zero.clone(), one.clone()], vec![one.clone(), t.clone()]]);
        let pp = phi.principal_part();
        assert_eq!(pp, PPolynomial::new(vec![vec![zero.clone(), one.clone()], vec![zero.clone(), t.clone()]]));
        assert!(phi.is_separable());
        assert!(!pp.is_separable());
        let single = PPolynomial::new(vec![vec![t.clone(), one.clone(), t.clone()]]);
        assert_eq!(single.principal_part().coeffs(0), &[zero.clone(), zero, t][..]);
    }

    #[test]
    fn genus_table() {
        assert_eq!(genus(3, 1, 1), 1);
        assert_eq!(genus(2, 2, 2), 3);
        assert_eq!(genus(2, 1, 1), 0);
        assert_eq!(genus(5, 1, 1), 6);
        assert_eq!(genus(2, 1, 2), 1);
        assert_eq!(genus(2, 2, 1), 1);
    }

    #[test]
    fn splitting_degree_examples() {
        let f3 = f(3);
        let f2 = f(2);
        let r = RussellEquation::new(1, vec![RatFunc::t(&f3)]).unwrap();
        assert_eq!(splitting_degree(&r), 3);
        let r = RussellEquation::new(1, vec![tpow(&f2, 2)]).unwrap();
        assert_eq!(splitting_degree(&r), 1);
        let r = RussellEquation::new(2, vec![RatFunc::t(&f2)]).unwrap();
        assert_eq!(splitting_degree(&r), 4);
    }

    #[test]
    fn classification_examples() {
        let f2 = f(2);
        let f3 = f(3);
        let r = RussellEquation::new(1, vec![RatFunc::t(&f3)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::QuasiElliptic(QeCase::Two));
        let r = RussellEquation::new(1, vec![RatFunc::t(&f2)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::QuasiRational);
        let r = RussellEquation::new(2, vec![RatFunc::t(&f2)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::QuasiElliptic(QeCase::OneB));
        let s = BivarRatFunc::s(&f2);
        let t = BivarRatFunc::t(&f2);
        let r = RussellEquation::new(2, vec![s, Scalar::pow(&t, 2)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::QuasiElliptic(QeCase::OneC));
        let r = RussellEquation::new(1, vec![tpow(&f2, 2)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::SplitsToGa);
        let r = RussellEquation::new(1, vec![RatFunc::t(&f(5))]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::HigherGenus { genus: 6 });
        let r = RussellEquation::new(1, vec![RatFunc::t(&f2), tpow(&f2, 3)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::QuasiElliptic(QeCase::OneA));
        let r = RussellEquation::new(2, vec![RatFunc::t(&f2), tpow(&f2, 3)]).unwrap();
        assert_eq!(classify(&r).unwrap(), Classification::HigherGenus { genus: 3 });
    }

    #[test]
    fn case_1c_reduction_flags() {
        let f2 = f(2);
        let s = BivarRatFunc::s(&f2);
        let t = BivarRatFunc::t(&f2);
        let red = reduce_case_1c(&s, &t).unwrap();
        assert!(!red.genus_zero && red.reduces_to_1b.is_none());
        assert_eq!(red.degree, 4);
        let red = reduce_case_1c(&Scalar::pow(&t, 2), &s).unwrap();
        assert!(red.genus_zero);
        // c = a alpha^2 + beta^2 with alpha = t, beta = 1 + s.
        let one = BivarRatFunc::one(&f2);
        let c = &(&s * &Scalar::pow(&t, 2)) + &Scalar::pow(&(&one + &s), 2);
        let red = reduce_case_1c(&s, &c).unwrap();
        let (al, be) = red.reduces_to_1b.unwrap();
        assert_eq!(&(&s * &Scalar::pow(&al, 2)) + &Scalar::pow(&be, 2), c);
    }

    #[test]
    fn compactification_examples() {
        let f3 = f(3);
        let r = RussellEquation::new(1, vec![RatFunc::t(&f3)]).unwrap();
        let rep = compactify(&r);
        assert_eq!((rep.weights, rep.degree, rep.genus), ([1, 1, 1], 3, 1));
        let exps: Vec<[u64; 3]> = rep.monomials.iter().map(|m| m.exps).collect();
        assert_eq!(exps, vec![[0, 0, 3], [2, 1, 0], [0, 3, 0]]);
        assert!(rep.regular);
        assert_eq!(rep.boundary_degree, 3);
        assert_eq!(rep.dehomogenize().unwrap(), r);

        let f2 = f(2);
        let r = RussellEquation::new(1, vec![RatFunc::t(&f2), tpow(&f2, 3)]).unwrap();
        let rep = compactify(&r);
        assert_eq!((rep.weights, rep.degree), ([1, 1, 2], 4));
        assert!(rep.monomials.iter().all(|m| rep.weighted_degree(m) == 4));
        let r = RussellEquation::new(2, vec![RatFunc::t(&f2)]).unwrap();
        let rep = compactify(&r);
        assert_eq!((rep.weights, rep.degree), ([1, 2, 1], 4));
        assert!(rep.monomials.iter().all(|m| rep.weighted_degree(m) == 4));
        assert_eq!(rep.dehomogenize().unwrap(), r);
    }

    #[test]
    fn woundness_examples() {
        let f2 = f(2);
        let zero = RatFunc::zero(&f2);
        let one = RatFunc::one(&f2);
        let t = RatFunc::t(&f2);
        let pp = PPolynomial::new(vec![vec![zero.clone(), one.clone()], vec![zero.clone(), t.clone()]]);
        assert_eq!(is_wound(&pp, &f2, WoundSearch::default()), Woundness::Wound);
        let pp = PPolynomial::new(vec![vec![zero.clone(), one.clone()], vec![zero.clone(), tpow(&f2, 2)]]);
        assert_eq!(
            is_wound(&pp, &f2, WoundSearch::default()),
            Woundness::NotWound { witness: vec![t.clone(), one.clone()] }
        );
    }

    #[test]
    fn remark_example_is_inconclusive() {
        // y^p + x + a x^p after x ↦ x + x^p, with a = 1 + t.
        let f2 = f(2);
        let one = RatFunc::one(&f2);
        let zero = RatFunc::zero(&f2);
        let a = &one + &RatFunc::t(&f2);
        let phi = PPolynomial::new(vec![vec![one.clone(), &one + &a, a.clone()], vec![zero, one.clone()]]);
        assert_eq!(is_wound(&phi, &f2, WoundSearch::default()), Woundness::Unknown);
        // with a = t the principal part y^2 + t x^4 is wound by parity
        let a = RatFunc::t(&f2);
        let phi = PPolynomial::new(vec![vec![one.clone(), &one + &a, a.clone()], vec![RatFunc::zero(&f2), one]]);
        assert_eq!(is_wound(&phi, &f2, WoundSearch::default()), Woundness::Wound);
    }

    #[test]
    fn parses_russell_text() {
        let f3 = f(3);
        let uv = crate::expr::parse_uv_ratfunc(&f3, "u^3+v+t*v^3").unwrap();
        let r = RussellEquation::from_uv(&uv).unwrap();
        assert_eq!((r.p(), r.n(), r.m()), (3, 1, 1));
        assert!(RussellEquation::from_uv(&crate::expr::parse_uv_ratfunc(&f3, "u^2+v").unwrap()).is_err());
    }
}
