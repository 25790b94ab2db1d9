//! Torsor classes `f ∈ K / Φ(K ⊕ K)` over `K = k((t))`, `k` algebraically closed.
//!
//! The reducer subtracts `Φ(u, v)` for monomial `u, v` until every negative
//! exponent left is terminal, then absorbs the integral part by a Hensel step.
//! For `Φ = u^(p^n) + v + ε t^k v^(p^m)` and a term `c t^(-j)` the moves are:
//!
//! * u-move, when `p^n | j`: `u = c' t^(-j/p^n)` with `c'^(p^n) = c`;
//! * v-move on the linear term, `v = c t^(-j)`, allowed when the companion
//!   `ε c^(p^m) t^(k - p^m j)` is shallower (`(p^m - 1) j < k`);
//! * v-move on the Frobenius term, `v = c' t^(-l)` with `p^m l - k = j` and
//!   `ε c'^(p^m) = c`, allowed when the companion `t^(-l)` is shallower;
//! * self-move when both land on `t^(-j)`: solve `c' + ε c'^(p^m) = c`, which
//!   may extend the constant field.
//!
//! Every move kills `t^(-j)` and only adds shallower terms, so one sweep from
//! the deepest exponent upwards terminates. An exponent with no move must lie
//! in the declared representative set of the shape, otherwise the reduction
//! reports the escape instead of returning a wrong normal form.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{hensel_solve, ppow, DensePoly, Field, FieldTower, Fq, LaurentSeries, Scalar};

/// Default absolute precision for torsor computations.
pub const DEFAULT_PRECISION: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `p = 3`, `u^3 + v + ε t^k v^3`, `k ∈ {1,2,4,5}`; `shift` is the `α` of
    /// the substitution `(u, v) ↦ (t^α u, t^(3α) v)` that brought `k` there.
    Lang { k: i64, shift: i64 },
    /// `p = 2` representatives from the list with unique normal forms; `case`
    /// is its number there (1, 2, 3, 7 or 9).
    Unique { case: u8, k: i64 },
    /// `p = 2`, `u^2 + v + ε t^k v^2`, `k` odd: every class is trivial.
    QuasiRational { k: i64 },
    Unsupported,
}

impl Shape {
    /// Exponents `j` such that `t^(-j)` may survive in a normal form.
    pub fn is_terminal(&self, j: i64) -> bool {
        match *self {
            Shape::Lang { k, .. } => j >= k && (j - k) % 3 == 0,
            Shape::Unique { case: 7, .. } => j >= 2 && (j - 2) % 4 == 0,
            Shape::Unique { case: 9, .. } => j >= 6 && (j - 6) % 4 == 0,
            Shape::Unique { k, .. } => j >= k && (j - k) % 4 == 0,
            Shape::QuasiRational { .. } | Shape::Unsupported => false,
        }
    }

    /// Smallest terminal exponent (the `k` of `t^(-k) q(t^(-p^m))`).
    pub fn lang_k(&self) -> Option<i64> {
        match *self {
            Shape::Lang { k, .. } => Some(k),
            Shape::Unique { case: 7, .. } => Some(2),
            Shape::Unique { case: 9, .. } => Some(6),
            Shape::Unique { k, .. } => Some(k),
            _ => None,
        }
    }

    fn step(&self) -> i64 {
        match self {
            Shape::Lang { .. } => 3,
            _ => 4,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Shape::Lang { k, .. } => format!("lang-k{k}"),
            Shape::Unique { case, .. } => format!("case-{case}"),
            Shape::QuasiRational { .. } => "quasi-rational".into(),
            Shape::Unsupported => "unsupported".into(),
        }
    }
}

/// `u^(p^n) + v + a_1 v^p + .. + a_m v^(p^m)` over `k((t))` with integral `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalRussell {
    field: Field,
    n: u32,
    a: Vec<LaurentSeries>,
    shape: Shape,
}

impl LocalRussell {
    pub fn new(n: u32, a: Vec<LaurentSeries>) -> Result<Self> {
        let last = a.last().ok_or_else(|| Error::Malformed("need m >= 1".into()))?;
        if n == 0 {
            return Err(Error::Malformed("height n must be at least 1".into()));
        }
        if last.is_zero() {
            return Err(Error::Malformed("leading coefficient a_m is zero".into()));
        }
        if a.iter().any(|x| x.valuation().is_some_and(|v| v < 0)) {
            return Err(Error::Malformed("coefficients must be integral".into()));
        }
        let field = last.field().clone();
        let mut r = LocalRussell { field, n, a, shape: Shape::Unsupported };
        r.shape = r.detect_shape();
        Ok(r)
    }

    /// `a_m = ε t^k`, all other `a_i = 0`.
    pub fn monomial(field: &Field, n: u32, m: u32, k: i64, unit: Option<Fq>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Malformed("need m >= 1".into()));
        }
        let eps = unit.unwrap_or_else(|| field.one());
        if eps.is_zero() {
            return Err(Error::Malformed("unit must be nonzero".into()));
        }
        let mut a = vec![LaurentSeries::zero(field); m as usize - 1];
        a.push(LaurentSeries::monomial(&eps, k));
        Self::new(n, a)
    }

    fn detect_shape(&self) -> Shape {
        let p = self.field.characteristic();
        let m = self.a.len();
        if self.a[..m - 1].iter().any(|x| !x.is_zero()) {
            return Shape::Unsupported;
        }
        let top = &self.a[m - 1];
        let terms = top.terms();
        if !top.is_exact() || terms.len() != 1 {
            return Shape::Unsupported;
        }
        let k = terms[0].0;
        match (p, self.n, m) {
            (3, 1, 1) if k % 3 != 0 => {
                let kk = k.rem_euclid(6);
                Shape::Lang { k: kk, shift: (kk - k) / 6 }
            }
            (2, 1, 2) if matches!(k, 1 | 3 | 5) => Shape::Unique { case: ((k + 1) / 2) as u8, k },
            (2, 2, 1) if k == 1 => Shape::Unique { case: 7, k },
            (2, 2, 1) if k == 3 => Shape::Unique { case: 9, k },
            (2, 1, 1) if k % 2 != 0 => Shape::QuasiRational { k },
            _ => Shape::Unsupported,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.a
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn is_supported(&self) -> bool {
        self.shape != Shape::Unsupported
    }

    /// The equation in which the reducer works (Lang shapes have `k` moved into `{1,2,4,5}`).
    pub fn normalized(&self) -> LocalRussell {
        match self.shape {
            Shape::Lang { k, shift } if shift != 0 => {
                let eps = self.a[0].terms()[0].1.clone();
                let a = vec![LaurentSeries::monomial(&eps, k)];
                LocalRussell { field: self.field.clone(), n: self.n, a, shape: self.shape.clone() }
            }
            _ => self.clone(),
        }
    }

    /// `u^(p^n) + v + sum_i a_i v^(p^i)` with tracked precision.
    pub fn phi(&self, u: &LaurentSeries, v: &LaurentSeries) -> Result<LaurentSeries> {
        if u.field() != &self.field || v.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(phi_with(&self.a, self.n, u, v))
    }

    fn max_power(&self) -> u64 {
        ppow(self.p(), self.n.max(self.m()))
    }
}

fn phi_with(a: &[LaurentSeries], n: u32, u: &LaurentSeries, v: &LaurentSeries) -> LaurentSeries {
    let mut acc = &u.frobenius_k(n) + v;
    let mut vp = v.clone();
    for ai in a {
        vp = Scalar::frobenius(&vp);
        if !ai.is_zero() {
            acc = &acc + &(ai * &vp);
        }
    }
    acc
}

/// `phi_image(Φ, u, v)`.
pub fn phi_image(r: &LocalRussell, u: &LaurentSeries, v: &LaurentSeries) -> Result<LaurentSeries> {
    r.phi(u, v)
}

/// The class of `f` modulo `Φ(K ⊕ K)`, known modulo `t^precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsorClass {
    pub russell: LocalRussell,
    pub f: LaurentSeries,
    pub precision: i64,
}

impl TorsorClass {
    pub fn new(russell: LocalRussell, f: LaurentSeries, precision: i64) -> Result<Self> {
        if f.field() != russell.field() {
            return Err(Error::FieldMismatch);
        }
        let precision = f.precision().map_or(precision, |n| n.min(precision));
        Ok(TorsorClass { russell, f, precision })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    U,
    V,
    SelfV,
    Hensel,
    FieldExtension,
}

impl MoveKind {
    pub fn label(&self) -> &'static str {
        match self {
            MoveKind::U => "u-move",
            MoveKind::V => "v-move",
            MoveKind::SelfV => "self-move",
            MoveKind::Hensel => "hensel",
            MoveKind::FieldExtension => "field-extension",
        }
    }
}

/// One step of a reduction: `f ← f - Φ(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Move {
    pub kind: MoveKind,
    /// Exponent acted on (0 for the Hensel step).
    pub exponent: i64,
    pub u: LaurentSeries,
    pub v: LaurentSeries,
    /// The coefficient equation that was solved, as text.
    pub equation: String,
    /// `(depth, count)` of the deepest non-terminal exponents before the move.
    pub measure: (i64, usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at t^{}: {} (u = {}, v = {})", self.kind.label(), self.exponent, self.equation, self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    /// Canonical representative: a polynomial in `t^-1` over the base field.
    pub representative: LaurentSeries,
    pub precision: i64,
    pub trivial: bool,
    pub shape: Shape,
    /// `k` and `deg q` of `t^(-k) q(t^(-p^m))` for nontrivial classes.
    pub lang_k: Option<i64>,
    pub lang_n: Option<i64>,
    /// Degree of the constant field reached over the base field.
    pub extension_degree: u32,
    pub trace: Vec<Move>,
}

struct Reducer {
    tower: FieldTower,
    n: u32,
    p: u32,
    k: i64,
    eps: Fq,
    a: Vec<LaurentSeries>,
    pm: u64,
    f: LaurentSeries,
    prec: i64,
    shape: Shape,
    trace: Vec<Move>,
}

impl Reducer {
    fn lift_series(&self, s: &LaurentSeries) -> LaurentSeries {
        s.map_coeffs(self.tower.top(), |c| self.tower.lift(c).expect("tower level"))
    }

    fn sync(&mut self) {
        self.f = self.lift_series(&self.f);
        self.a = self.a.iter().map(|x| self.lift_series(x)).collect();
        self.eps = self.tower.lift(&self.eps).unwrap();
    }

    fn measure(&self) -> (i64, usize) {
        let terms = self.f.terms();
        let bad: Vec<i64> = terms.iter().filter(|(e, _)| *e < 0 && !self.shape.is_terminal(-e)).map(|t| -t.0).collect();
        match bad.iter().max() {
            Some(&d) => (d, bad.iter().filter(|&&x| x == d).count()),
            None if terms.iter().any(|(e, _)| *e >= 0) => (0, 1),
            None => (-1, 0),
        }
    }

    fn root(&mut self, poly: DensePoly, why: &str) -> Result<Fq> {
        let before = self.tower.height();
        let r = self.tower.find_root(&poly, why)?;
        if self.tower.height() > before {
            self.sync();
            let measure = self.measure();
            for step in &self.tower.steps()[before + 1..] {
                let zero = LaurentSeries::zero(&step.field);
                self.trace.push(Move {
                    kind: MoveKind::FieldExtension,
                    exponent: 0,
                    u: zero.clone(),
                    v: zero,
                    equation: format!("adjoin {} ({})", step.field.describe(), step.reason),
                    measure,
                });
            }
        }
        self.tower.lift(&r)
    }

    /// `x` with `x^(p^e) = c`.
    fn root_pk(&self, c: &Fq, e: u32) -> Fq {
        c.root_pk(e)
    }

    fn apply(&mut self, kind: MoveKind, j: i64, u: LaurentSeries, v: LaurentSeries, equation: String) {
        let measure = self.measure();
        let image = phi_with(&self.a, self.n, &u, &v).truncate(self.prec);
        self.f = (&self.f - &image).truncate(self.prec);
        self.trace.push(Move { kind, exponent: -j, u, v, equation, measure });
    }

    /// Kills the coefficient at `t^(-j)` if some move applies.
    fn try_move(&mut self, j: i64) -> Result<bool> {
        let c = self.f.coeff(-j)?;
        let top = self.tower.top().clone();
        let zero = LaurentSeries::zero(&top);
        let pn = ppow(self.p, self.n) as i64;
        let pm = self.pm as i64;
        let m_exp = (pm as f64).log(self.p as f64).round() as u32;
        if j % pn == 0 {
            let cu = self.root_pk(&c, self.n);
            let u = LaurentSeries::monomial(&cu, -j / pn);
            self.apply(MoveKind::U, j, u, zero, format!("x^{pn} = {c}"));
            return Ok(true);
        }
        let lhs = (pm - 1) * j;
        if lhs < self.k {
            let v = LaurentSeries::monomial(&c, -j);
            self.apply(MoveKind::V, j, zero, v, format!("x = {c}"));
            return Ok(true);
        }
        if lhs > self.k && (j + self.k) % pm == 0 {
            let l = (j + self.k) / pm;
            let ratio = &c * &self.eps.inv().unwrap();
            let cv = self.root_pk(&ratio, m_exp);
            let v = LaurentSeries::monomial(&cv, -l);
            self.apply(MoveKind::V, j, zero, v, format!("{}*x^{pm} = {c}", self.eps));
            return Ok(true);
        }
        if lhs == self.k {
            // eps x^(p^m) + x - c
            let mut coeffs = vec![top.zero(); pm as usize + 1];
            coeffs[0] = -c.clone();
            coeffs[1] = top.one();
            coeffs[pm as usize] = &coeffs[pm as usize] + &self.eps;
            let poly = DensePoly::from_coeffs(&top, &coeffs);
            let x = self.root(poly, &format!("self-move at t^-{j}"))?;
            let top = self.tower.top().clone();
            let v = LaurentSeries::monomial(&x, -j);
            let c = self.f.coeff(-j)?;
            self.apply(MoveKind::SelfV, j, LaurentSeries::zero(&top), v, format!("x + {}*x^{pm} = {c}", self.eps));
            return Ok(true);
        }
        Ok(false)
    }
}

fn series_to_base(tower: &FieldTower, s: &LaurentSeries) -> Result<LaurentSeries> {
    let base = tower.base().clone();
    let mut terms = Vec::new();
    for (e, c) in s.terms() {
        let d = tower
            .descend(&c)
            .ok_or_else(|| Error::Malformed(format!("coefficient of t^{e} is not in the base field")))?;
        terms.push((e, d));
    }
    Ok(LaurentSeries::from_terms(&base, &terms, s.precision()))
}

/// Canonical representative of a class in a supported shape.
pub fn reduce(class: &TorsorClass) -> Result<NormalForm> {
    let r = &class.russell;
    if !r.is_supported() {
        return Err(Error::UnsupportedShape(format!(
            "p={} n={} m={}: no canonical representatives known; use the triviality search",
            r.p(),
            r.n(),
            r.m()
        )));
    }
    let need = 2 * r.max_power() as i64;
    if class.precision < need {
        return Err(Error::PrecisionExhausted { needed: need, available: class.precision });
    }
    let norm = r.normalized();
    let shift = match r.shape {
        Shape::Lang { shift, .. } => shift,
        _ => 0,
    };
    // f ↦ t^(-3α) f; the precision moves with it.
    let prec = class.precision - 3 * shift;
    let f = class.f.shift(-3 * shift).truncate(prec);
    let (k, eps) = {
        let (k, c) = norm.a.last().unwrap().terms()[0].clone();
        (k, c)
    };
    let mut red = Reducer {
        tower: FieldTower::new(r.field()),
        n: norm.n,
        p: r.p(),
        k,
        eps,
        a: norm.a.clone(),
        pm: ppow(r.p(), norm.m()),
        f,
        prec,
        shape: r.shape.clone(),
        trace: Vec::new(),
    };

    let deepest = red.f.valuation().unwrap_or(0).min(0);
    for j in (1..=-deepest).rev() {
        if red.f.coeff(-j)?.is_zero() {
            continue;
        }
        if !red.try_move(j)? && !red.shape.is_terminal(j) {
            return Err(Error::ShapeEscaped(-j));
        }
    }

    let integral = red.f.nonnegative_part();
    if !integral.is_zero() {
        let measure = red.measure();
        let before = red.tower.height();
        let v = hensel_solve(&mut red.tower, &red.a, &integral, red.prec)?;
        if red.tower.height() > before {
            red.sync();
            for step in &red.tower.steps()[before + 1..] {
                let zero = LaurentSeries::zero(&step.field);
                red.trace.push(Move {
                    kind: MoveKind::FieldExtension,
                    exponent: 0,
                    u: zero.clone(),
                    v: zero,
                    equation: format!("adjoin {} ({})", step.field.describe(), step.reason),
                    measure,
                });
            }
        }
        let v = red.lift_series(&v);
        let top = red.tower.top().clone();
        let image = phi_with(&red.a, red.n, &LaurentSeries::zero(&top), &v).truncate(red.prec);
        red.f = (&red.f - &image).truncate(red.prec);
        red.trace.push(Move {
            kind: MoveKind::Hensel,
            exponent: 0,
            u: LaurentSeries::zero(&top),
            v,
            equation: format!("v + a(v) = {integral}"),
            measure,
        });
    }
    if !red.f.nonnegative_part().is_zero() {
        return Err(Error::ShapeEscaped(0));
    }

    let representative = series_to_base(&red.tower, &red.f.negative_part())?;
    let trivial = representative.is_zero();
    let lang_k = if trivial { None } else { r.shape.lang_k() };
    let lang_n = match (lang_k, representative.valuation()) {
        (Some(k0), Some(v)) => Some((-v - k0) / r.shape.step()),
        _ => None,
    };
    Ok(NormalForm {
        representative,
        precision: red.prec,
        trivial,
        shape: r.shape.clone(),
        lang_k,
        lang_n,
        extension_degree: red.tower.top().degree() / r.field().degree(),
        trace: red.trace,
    })
}

impl NormalForm {
    /// Recomputes the representative by subtracting every recorded `Φ(u, v)` from `f`.
    pub fn replay(&self, class: &TorsorClass) -> Result<LaurentSeries> {
        let r = class.russell.normalized();
        let shift = match r.shape {
            Shape::Lang { shift, .. } => shift,
            _ => 0,
        };
        let mut tower = FieldTower::new(r.field());
        for mv in &self.trace {
            if mv.kind == MoveKind::FieldExtension {
                let d = mv.u.field().degree() / tower.top().degree();
                tower.extend(d, "replay")?;
            }
        }
        // The replayed tower uses the same canonical fields and embeddings.
        let lift = |s: &LaurentSeries| -> Result<LaurentSeries> {
            let top = tower.top().clone();
            let terms: Result<Vec<(i64, Fq)>> = s.terms().into_iter().map(|(e, c)| Ok((e, tower.lift(&c)?))).collect();
            Ok(LaurentSeries::from_terms(&top, &terms?, s.precision()))
        };
        let a: Vec<LaurentSeries> = r.a.iter().map(&lift).collect::<Result<_>>()?;
        let mut f = lift(&class.f.shift(-3 * shift).truncate(self.precision))?;
        for mv in &self.trace {
            if mv.kind == MoveKind::FieldExtension {
                continue;
            }
            let image = phi_with(&a, r.n, &lift(&mv.u)?, &lift(&mv.v)?).truncate(self.precision);
            f = (&f - &image).truncate(self.precision);
        }
        series_to_base(&tower, &f.negative_part())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    NonTrivial,
    Unknown,
}

impl Triviality {
    pub fn label(&self) -> &'static str {
        match self {
            Triviality::Trivial => "true",
            Triviality::NonTrivial => "false",
            Triviality::Unknown => "unknown",
        }
    }
}

/// Limits of the brute-force search used for unsupported shapes.
#[derive(Clone, Copy, Debug)]
pub struct TrivialSearch {
    /// `v` ranges over polynomials in `t^-1` of degree at most this.
    pub depth: i64,
    pub max_candidates: u64,
}

impl Default for TrivialSearch {
    fn default() -> Self {
        TrivialSearch { depth: 4, max_candidates: 1 << 16 }
    }
}

/// Whether the class of `f` is zero.
///
/// Supported shapes are decided by [`reduce`]. Otherwise `v` is searched over
/// polynomials in `t^-1` with base-field coefficients; a hit leaves a negative
/// part that a u-move cancels, and the integral part is always absorbed. The
/// search never concludes non-triviality.
pub fn is_trivial(class: &TorsorClass, search: TrivialSearch) -> Result<Triviality> {
    let r = &class.russell;
    if r.is_supported() {
        let nf = reduce(class)?;
        return Ok(if nf.trivial { Triviality::Trivial } else { Triviality::NonTrivial });
    }
    let field = r.field().clone();
    let pn = ppow(r.p(), r.n) as i64;
    let target = class.f.negative_part();
    let cancellable = |g: &LaurentSeries| g.negative_part().terms().iter().all(|(e, _)| e % pn == 0);
    let q = field.size();
    let depth = search.depth.max(0) as u32;
    let Some(total) = q.checked_pow(depth) else { return Ok(Triviality::Unknown) };
    if total > search.max_candidates {
        return Ok(Triviality::Unknown);
    }
    for code in 0..total {
        let mut c = code;
        let mut terms = Vec::new();
        for e in 1..=depth as i64 {
            let d = (c % q) as u32;
            c /= q;
            if d != 0 {
                terms.push((-e, field.elem(d)));
            }
        }
        let v = LaurentSeries::from_terms(&field, &terms, None);
        let image = phi_with(&r.a, r.n, &LaurentSeries::zero(&field), &v);
        if cancellable(&(&target - &image)) {
            return Ok(Triviality::Trivial);
        }
    }
    Ok(Triviality::Unknown)
}

/// Random class data for property checks: `f` supported on `[-depth, prec)`.
pub fn random_class<R: Rng + ?Sized>(r: &LocalRussell, depth: i64, prec: i64, rng: &mut R) -> Result<TorsorClass> {
    let f = LaurentSeries::random(r.field(), -depth, prec, Some(prec), rng);
    TorsorClass::new(r.clone(), f, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn lang(k: i64) -> LocalRussell {
        LocalRussell::monomial(&Field::prime(3).unwrap(), 1, 1, k, None).unwrap()
    }

    fn mono(field: &Field, c: i64, e: i64) -> LaurentSeries {
        LaurentSeries::monomial(&field.from_int(c), e)
    }

    #[test]
    fn phi_examples() {
        let f3 = Field::prime(3).unwrap();
        let r = lang(1);
        let img = r.phi(&LaurentSeries::one(&f3), &mono(&f3, 1, 1)).unwrap();
        assert_eq!(img, LaurentSeries::from_terms(&f3, &[(0, f3.one()), (1, f3.one()), (4, f3.one())], None));
        let z = LaurentSeries::zero(&f3);
        assert!(r.phi(&z, &z).unwrap().is_zero());
        let f2 = Field::prime(2).unwrap();
        let r2 = LocalRussell::monomial(&f2, 1, 2, 1, None).unwrap();
        let img = r2.phi(&mono(&f2, 1, -1), &LaurentSeries::one(&f2)).unwrap();
        assert_eq!(img, LaurentSeries::from_terms(&f2, &[(-2, f2.one()), (0, f2.one()), (1, f2.one())], None));
    }

    #[test]
    fn lang_examples() {
        let f3 = Field::prime(3).unwrap();
        let r = lang(1);
        for (f, expected) in [
            (mono(&f3, 1, 2), LaurentSeries::zero(&f3)),
            (mono(&f3, 1, -3), LaurentSeries::zero(&f3)),
            (mono(&f3, 1, -2), mono(&f3, 2, -1)),
        ] {
            let class = TorsorClass::new(r.clone(), f, 40).unwrap();
            let nf = reduce(&class).unwrap();
            assert_eq!(nf.representative, expected);
            assert_eq!(nf.replay(&class).unwrap(), expected);
        }
        let class = TorsorClass::new(r, mono(&f3, 1, -1), 40).unwrap();
        assert_eq!(is_trivial(&class, TrivialSearch::default()).unwrap(), Triviality::NonTrivial);
    }

    #[test]
    fn self_moves_extend_the_field() {
        // u^4 + v + t v^2: t^-1 is killed by c + c^2 = 1, which has no root in F_2.
        let f2 = Field::prime(2).unwrap();
        let r = LocalRussell::monomial(&f2, 2, 1, 1, None).unwrap();
        let class = TorsorClass::new(r, mono(&f2, 1, -1), 40).unwrap();
        let nf = reduce(&class).unwrap();
        assert!(nf.trivial);
        assert!(nf.extension_degree > 1);
        assert!(nf.trace.iter().any(|m| m.kind == MoveKind::FieldExtension));
        assert_eq!(nf.replay(&class).unwrap(), nf.representative);
    }

    #[test]
    fn quasi_rational_classes_vanish() {
        let f2 = Field::prime(2).unwrap();
        let r = LocalRussell::monomial(&f2, 1, 1, 1, None).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let class = random_class(&r, 12, 40, &mut rng).unwrap();
            assert!(reduce(&class).unwrap().trivial);
        }
    }

    #[test]
    fn large_k_is_normalized() {
        let f3 = Field::prime(3).unwrap();
        let r = lang(7);
        assert_eq!(r.shape(), &Shape::Lang { k: 1, shift: -1 });
        // t^-4 for k = 7 corresponds to t^-1 for k = 1.
        let class = TorsorClass::new(r, mono(&f3, 1, -4), 40).unwrap();
        let nf = reduce(&class).unwrap();
        assert_eq!(nf.representative, mono(&f3, 1, -1));
    }

    #[test]
    fn precision_refusal() {
        let f3 = Field::prime(3).unwrap();
        let class = TorsorClass::new(lang(1), mono(&f3, 1, -2), 5).unwrap();
        assert!(matches!(reduce(&class), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn unsupported_shapes_search() {
        // Case (4): u^2 + v + t^3 v^2 + t v^4.
        let f2 = Field::prime(2).unwrap();
        let r = LocalRussell::new(1, vec![mono(&f2, 1, 3), mono(&f2, 1, 1)]).unwrap();
        assert!(!r.is_supported());
        let class = TorsorClass::new(r.clone(), mono(&f2, 1, -1), 40).unwrap();
        assert!(reduce(&class).is_err());
        assert_eq!(is_trivial(&class, TrivialSearch::default()).unwrap(), Triviality::Unknown);
        let v = &mono(&f2, 1, -3) + &mono(&f2, 1, -1);
        let f = r.phi(&LaurentSeries::zero(&f2), &v).unwrap();
        let class = TorsorClass::new(r, f, 40).unwrap();
        assert_eq!(is_trivial(&class, TrivialSearch::default()).unwrap(), Triviality::Trivial);
    }
}
