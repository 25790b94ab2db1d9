//! Text expressions for field elements, polynomials, rational functions and
//! truncated Laurent series.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] int | '^' '(' ['-'] int ')')?
//! atom   := int | ident | '(' expr ')' | 'O' '(' expr ')'
//! ```
//!
//! Identifiers are `t s t0 t1 u v w`; `w` is the generator of the coefficient
//! field and `O(t^N)` sets the precision of a Laurent series.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{
    BivarPoly, BivarRatFunc, DensePoly, Field, Fq, LaurentSeries, RatFunc, Scalar,
};

pub const VARIABLES: [&str; 7] = ["t", "s", "t0", "t1", "u", "v", "w"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    BigO(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i]
                .parse()
                .map_err(|_| Error::Syntax { pos: start, msg: "integer too large".into() })?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Int(n)) => *n,
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "O" => {
                self.pos += 1;
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                match inner {
                    Expr::Var(ref v) if v == "t" => Ok(Expr::BigO(1)),
                    Expr::Pow(ref b, n) if **b == Expr::Var("t".into()) => Ok(Expr::BigO(n)),
                    Expr::Int(1) => Ok(Expr::BigO(0)),
                    _ => Err(Error::Syntax { pos: start, msg: "O(...) takes a power of t".into() }),
                }
            }
            Some(Tok::Ident(name)) => {
                if !VARIABLES.contains(&name.as_str()) {
                    return Err(Error::UnknownVariable(name));
                }
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Variables occurring in the expression.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => out.push(v.clone()),
            Expr::Int(_) | Expr::BigO(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates in a ring `X`; `var` supplies the variables, `big_o` the
    /// precision terms (if the target has them).
    pub fn eval<X: Scalar>(
        &self,
        one: &X,
        var: &dyn Fn(&str) -> Result<X>,
        big_o: &dyn Fn(i64) -> Result<X>,
    ) -> Result<X> {
        let rec = |e: &Expr| e.eval(one, var, big_o);
        Ok(match self {
            Expr::Int(n) => one.constant_like(&one.base_field().from_int(*n)),
            Expr::Var(v) => var(v)?,
            Expr::BigO(n) => big_o(*n)?,
            Expr::Neg(a) => -rec(a)?,
            Expr::Add(a, b) => rec(a)? + rec(b)?,
            Expr::Sub(a, b) => rec(a)? - rec(b)?,
            Expr::Mul(a, b) => rec(a)? * rec(b)?,
            Expr::Div(a, b) => {
                let d = rec(b)?.inv().ok_or(Error::DivisionByZero)?;
                rec(a)? * d
            }
            Expr::Pow(a, e) => {
                let base = rec(a)?;
                if *e >= 0 {
                    base.pow(*e as u64)
                } else {
                    base.inv().ok_or(Error::DivisionByZero)?.pow(e.unsigned_abs())
                }
            }
        })
    }
}

fn no_big_o<X>(_: i64) -> Result<X> {
    Err(Error::Syntax { pos: 0, msg: "O(...) is only allowed in Laurent series".into() })
}

fn only<'a>(allowed: &'a [&'a str]) -> impl Fn(&str) -> Result<()> + 'a {
    move |v: &str| {
        if allowed.contains(&v) {
            Ok(())
        } else {
            Err(Error::UnknownVariable(v.to_string()))
        }
    }
}

/// A field given as `F<q>` or `F<q>:<modulus in w>`, e.g. `F3`, `F9`, `F4:w^2+w+1`.
pub fn parse_field(text: &str) -> Result<Field> {
    let text = text.trim();
    let bad = || Error::Malformed(format!("expected a field such as F3 or F4:w^2+w+1, got `{text}`"));
    let rest = text.strip_prefix('F').ok_or_else(bad)?;
    let (q, modulus) = match rest.split_once(':') {
        Some((q, m)) => (q, Some(m)),
        None => (rest, None),
    };
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    let (p, e) = [2u32, 3, 5, 7]
        .into_iter()
        .find_map(|p| {
            let mut e = 0;
            let mut x = q;
            while x > 1 && x.is_multiple_of(p as u64) {
                x /= p as u64;
                e += 1;
            }
            (x == 1 && e > 0).then_some((p, e))
        })
        .ok_or(Error::UnsupportedCharacteristic(q as u32))?;
    let Some(modulus) = modulus else { return Field::with_degree(p, e) };
    let fp = Field::prime(p)?;
    let check = only(&["w"]);
    let var = |v: &str| check(v).map(|_| RatFunc::t(&fp));
    let poly = parse(modulus)?.eval(&RatFunc::one(&fp), &var, &no_big_o)?;
    if !poly.is_polynomial() || poly.numerator().degree() != Some(e as usize) {
        return Err(Error::Malformed(format!("modulus of F{q} must be a polynomial of degree {e} in w")));
    }
    let raw: Vec<u32> = (0..=e as usize).map(|i| poly.numerator().coeff(i).raw()).collect();
    Field::new(p, &raw)
}

/// A constant of `field` (the only variable is the generator `w`).
pub fn parse_element(field: &Field, text: &str) -> Result<Fq> {
    let check = only(&["w"]);
    parse(text)?.eval(&field.one(), &|v| check(v).map(|_| field.generator()), &no_big_o)
}

pub fn parse_ratfunc(field: &Field, text: &str) -> Result<RatFunc> {
    let check = only(&["t", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(if v == "t" { RatFunc::t(field) } else { RatFunc::constant(&field.generator()) })
    };
    parse(text)?.eval(&RatFunc::one(field), &var, &no_big_o)
}

pub fn parse_bivar(field: &Field, text: &str) -> Result<BivarRatFunc> {
    let check = only(&["s", "t", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(match v {
            "s" => BivarRatFunc::s(field),
            "t" => BivarRatFunc::t(field),
            _ => BivarRatFunc::constant(&field.generator()),
        })
    };
    parse(text)?.eval(&BivarRatFunc::one(field), &var, &no_big_o)
}

/// Laurent series in `t`; `default_prec` applies when no `O(t^N)` term is
/// given and a division needs an expansion.
pub fn parse_laurent(field: &Field, text: &str) -> Result<LaurentSeries> {
    let check = only(&["t", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(if v == "t" {
            LaurentSeries::monomial(&field.one(), 1)
        } else {
            LaurentSeries::monomial(&field.generator(), 0)
        })
    };
    let big_o = |n: i64| Ok(LaurentSeries::big_o(field, n));
    parse(text)?.eval(&LaurentSeries::one(field), &var, &big_o)
}

/// Homogeneous polynomial in `t0, t1`, returned as `c_0..c_N` with `c_i` the
/// coefficient of `t0^i t1^(N-i)`.
pub fn parse_binary_form(field: &Field, text: &str) -> Result<Vec<Fq>> {
    let check = only(&["t0", "t1", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(match v {
            "t0" => BivarRatFunc::s(field),
            "t1" => BivarRatFunc::t(field),
            _ => BivarRatFunc::constant(&field.generator()),
        })
    };
    let value = parse(text)?.eval(&BivarRatFunc::one(field), &var, &no_big_o)?;
    if !value.denominator().is_one() {
        return Err(Error::Malformed("binary form must be a polynomial".into()));
    }
    binary_form_coeffs(value.numerator())
}

/// [`parse_binary_form`] with a known degree, so that the zero form keeps it.
pub fn parse_binary_form_of_degree(field: &Field, text: &str, degree: usize) -> Result<Vec<Fq>> {
    let c = parse_binary_form(field, text)?;
    if c.iter().all(Fq::is_zero) {
        return Ok(vec![field.zero(); degree + 1]);
    }
    if c.len() != degree + 1 {
        return Err(Error::DegreeMismatch { expected: degree, found: c.len() - 1 });
    }
    Ok(c)
}

fn binary_form_coeffs(poly: &BivarPoly) -> Result<Vec<Fq>> {
    let field = poly.field().clone();
    let terms: Vec<(u32, u32, Fq)> = poly.terms().collect();
    let Some(deg) = terms.first().map(|t| t.0 + t.1) else {
        return Ok(vec![field.zero()]);
    };
    if terms.iter().any(|t| t.0 + t.1 != deg) {
        return Err(Error::Malformed("binary form must be homogeneous".into()));
    }
    let mut c = vec![field.zero(); deg as usize + 1];
    for (i, _, x) in terms {
        c[i as usize] = x;
    }
    Ok(c)
}

/// Polynomial in `u, v` with coefficients in `X`, keyed by `(deg_u, deg_v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UvPoly<X> {
    pub terms: BTreeMap<(u32, u32), X>,
}

impl<X: Scalar> UvPoly<X> {
    fn constant(x: X) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert((0, 0), x);
        }
        UvPoly { terms }
    }

    fn add(mut self, other: Self) -> Self {
        for (k, x) in other.terms {
            let merged = match self.terms.remove(&k) {
                Some(y) => y + x,
                None => x,
            };
            if !merged.is_zero() {
                self.terms.insert(k, merged);
            }
        }
        self
    }

    fn scale(&self, c: &X) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, x)| (*k, x.clone() * c.clone()))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        UvPoly { terms }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = UvPoly { terms: BTreeMap::new() };
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let mut single = BTreeMap::new();
                single.insert((a + c, b + d), x.clone() * y.clone());
                out = out.add(UvPoly { terms: single });
            }
        }
        out
    }

    /// The value if no `u` or `v` occurs.
    fn as_constant(&self, zero: &X) -> Option<X> {
        match self.terms.len() {
            0 => Some(zero.clone()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

/// Evaluates an expression polynomial in `u, v` whose coefficients are built by `coef_var`.
pub fn eval_uv<X: Scalar>(expr: &Expr, one: &X, coef_var: &dyn Fn(&str) -> Result<X>) -> Result<UvPoly<X>> {
    let zero = one.zero_like();
    let rec = |e: &Expr| eval_uv(e, one, coef_var);
    Ok(match expr {
        Expr::Var(v) if v == "u" => UvPoly { terms: BTreeMap::from([((1, 0), one.clone())]) },
        Expr::Var(v) if v == "v" => UvPoly { terms: BTreeMap::from([((0, 1), one.clone())]) },
        Expr::Int(_) | Expr::Var(_) => UvPoly::constant(expr.eval(one, coef_var, &no_big_o)?),
        Expr::BigO(_) => return no_big_o(0),
        Expr::Neg(a) => rec(a)?.scale(&-one.clone()),
        Expr::Add(a, b) => rec(a)?.add(rec(b)?),
        Expr::Sub(a, b) => rec(a)?.add(rec(b)?.scale(&-one.clone())),
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
        Expr::Div(a, b) => {
            let d = rec(b)?
                .as_constant(&zero)
                .ok_or_else(|| Error::Malformed("cannot divide by an expression in u, v".into()))?;
            rec(a)?.scale(&d.inv().ok_or(Error::DivisionByZero)?)
        }
        Expr::Pow(a, e) => {
            let base = rec(a)?;
            if *e < 0 {
                let c = base
                    .as_constant(&zero)
                    .ok_or_else(|| Error::Malformed("negative power of u or v".into()))?;
                UvPoly::constant(c.inv().ok_or(Error::DivisionByZero)?.pow(e.unsigned_abs()))
            } else {
                let mut acc = UvPoly::constant(one.clone());
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
        }
    })
}

/// Parses a polynomial in `u, v` over `F(t)`.
pub fn parse_uv_ratfunc(field: &Field, text: &str) -> Result<UvPoly<RatFunc>> {
    let check = only(&["t", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(if v == "t" { RatFunc::t(field) } else { RatFunc::constant(&field.generator()) })
    };
    eval_uv(&parse(text)?, &RatFunc::one(field), &var)
}

/// Parses a polynomial in `u, v` over `F(s, t)`.
pub fn parse_uv_bivar(field: &Field, text: &str) -> Result<UvPoly<BivarRatFunc>> {
    let check = only(&["s", "t", "w"]);
    let var = |v: &str| {
        check(v)?;
        Ok(match v {
            "s" => BivarRatFunc::s(field),
            "t" => BivarRatFunc::t(field),
            _ => BivarRatFunc::constant(&field.generator()),
        })
    };
    eval_uv(&parse(text)?, &BivarRatFunc::one(field), &var)
}

/// Text form of a binary form `sum c_i t0^i t1^(N-i)`.
pub fn format_binary_form(c: &[Fq]) -> String {
    let mut parts = Vec::new();
    let n = c.len().saturating_sub(1);
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let mut factors = Vec::new();
        for (v, e) in [("t0", i), ("t1", n - i)] {
            match e {
                0 => {}
                1 => factors.push(v.to_string()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        let cs = x.to_string();
        let cs = if cs.contains('+') { format!("({cs})") } else { cs };
        let mono = factors.join("*");
        parts.push(match (mono.is_empty(), x.is_one()) {
            (true, _) => cs,
            (false, true) => mono,
            (false, false) => format!("{cs}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Polynomial in `t` (no negative powers) with coefficients in `field`.
pub fn parse_poly(field: &Field, text: &str) -> Result<DensePoly> {
    let r = parse_ratfunc(field, text)?;
    if !r.is_polynomial() {
        return Err(Error::Malformed("expected a polynomial".into()));
    }
    Ok(r.numerator().clone())
}
