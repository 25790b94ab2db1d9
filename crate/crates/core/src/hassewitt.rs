//! Hasse–Witt data of Néron models over the projective line.
//!
//! For `C = P^1`, `L = O(-k)` and a binary form `a` of degree `N = P (q - 1)`
//! with `P = p^n k` and `q = p^m`, the operator `φ(x) = a · x^q` acts
//! `q`-semilinearly on `H^1(C, O(-P))`. That space has the Čech basis
//! `e_i = t0^(-i) t1^(-(P - i))`, `i = 1..P-1`. Multiplying by `a` and keeping the
//! monomials with both exponents negative gives `φ(e_i) = sum_j c_(q i - j) e_j`.
//! Matrices store the image of `e_i` in column `i`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{ppow, Field, FieldTower, Fq, MAX_FIELD_SIZE};

/// `sum_i c_i t0^i t1^(N - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Fq>,
}

impl BinaryForm {
    pub fn new(field: &Field, coeffs: Vec<Fq>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Malformed("a binary form needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(BinaryForm { field: field.clone(), coeffs })
    }

    pub fn zero(field: &Field, degree: usize) -> Self {
        BinaryForm { field: field.clone(), coeffs: vec![field.zero(); degree + 1] }
    }

    pub fn from_ints(field: &Field, degree: usize, terms: &[(usize, i64)]) -> Result<Self> {
        let mut f = Self::zero(field, degree);
        for &(i, c) in terms {
            if i > degree {
                return Err(Error::Malformed(format!("t0^{i} exceeds the degree {degree}")));
            }
            f.coeffs[i] = &f.coeffs[i] + &field.from_int(c);
        }
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// `c_i`, zero outside `0..=N`.
    pub fn coeff(&self, i: i64) -> Fq {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fq::is_zero)
    }
}

/// A `q`-semilinear operator `x ↦ A x^(q)` on `F^d`.
#[derive(Clone, PartialEq, Eq)]
pub struct SemilinearMatrix {
    field: Field,
    q: u64,
    rows: Vec<Vec<Fq>>,
}

impl fmt::Debug for SemilinearMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SemilinearMatrix(q = {}) [", self.q)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl SemilinearMatrix {
    pub fn new(field: &Field, q: u64, rows: Vec<Vec<Fq>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Malformed("semilinear matrix must be square".into()));
        }
        if rows.iter().flatten().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let p = field.characteristic() as u64;
        let mut k = q;
        while k > 1 && k.is_multiple_of(p) {
            k /= p;
        }
        if k != 1 {
            return Err(Error::Malformed(format!("twist {q} is not a power of {p}")));
        }
        Ok(SemilinearMatrix { field: field.clone(), q, rows })
    }

    pub fn from_ints(field: &Field, q: u64, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&c| field.from_int(c)).collect()).collect();
        Self::new(field, q, rows)
    }

    pub fn identity(field: &Field, d: usize, q: u64) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        SemilinearMatrix { field: field.clone(), q, rows }
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, d: usize, q: u64, rng: &mut R) -> Self {
        let rows = (0..d).map(|_| (0..d).map(|_| field.random(rng)).collect()).collect();
        SemilinearMatrix { field: field.clone(), q, rows }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    /// Entry in row `j`, column `i` (0-based).
    pub fn entry(&self, j: usize, i: usize) -> &Fq {
        &self.rows[j][i]
    }

    /// `φ(e_i)` as a coordinate vector.
    pub fn column(&self, i: usize) -> Vec<Fq> {
        self.rows.iter().map(|r| r[i].clone()).collect()
    }

    /// `φ(x) = A x^(q)`.
    pub fn apply(&self, x: &[Fq]) -> Vec<Fq> {
        let xq: Vec<Fq> = x.iter().map(|c| c.pow(self.q)).collect();
        mat_vec(&self.rows, &xq)
    }

    /// `Π_len = A A^(q) A^(q^2) ... A^(q^(len-1))`, the matrix of `φ^len` as a
    /// linear map in `x^(q^len)`.
    pub fn product(&self, len: usize) -> Vec<Vec<Fq>> {
        let d = self.dim();
        let mut acc = SemilinearMatrix::identity(&self.field, d, self.q).rows;
        let mut twisted = self.rows.clone();
        for _ in 0..len {
            acc = mat_mul(&acc, &twisted);
            twisted = twisted.iter().map(|r| r.iter().map(|c| c.pow(self.q)).collect()).collect();
        }
        acc
    }
}

fn mat_vec(a: &[Vec<Fq>], x: &[Fq]) -> Vec<Fq> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(x[0].field().zero(), |acc, (r, c)| &acc + &(r * c)))
        .collect()
}

fn mat_mul(a: &[Vec<Fq>], b: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(row[0].field().zero(), |acc, (x, brow)| &acc + &(x * &brow[j])))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut [Vec<Fq>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][col].inv().unwrap();
        for c in rows[r].iter_mut() {
            *c = &*c * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..ncols {
                    let delta = &f * &rows[r][c];
                    rows[i][c] = &rows[i][c] - &delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank over the coefficient field.
pub fn matrix_rank(rows: &[Vec<Fq>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(field: &Field, rows: &[Vec<Fq>], ncols: usize) -> Vec<Vec<Fq>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![field.zero(); ncols];
        x[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Whether `(p, n, m)` lies outside the regime with published numbers.
pub fn is_experimental(p: u32, n: u32, m: u32) -> bool {
    (p, n, m) != (3, 1, 1)
}

/// Checks `deg a = p^n k (p^m - 1)` and returns `P = p^n k`.
fn check_degree(p: u32, n: u32, m: u32, k: u32, a: &BinaryForm) -> Result<u64> {
    if a.field().characteristic() != p {
        return Err(Error::UnsupportedCharacteristic(a.field().characteristic()));
    }
    if k == 0 || m == 0 {
        return Err(Error::Malformed("need k >= 1 and m >= 1".into()));
    }
    let big_p = ppow(p, n) * k as u64;
    let expected = big_p * (ppow(p, m) - 1);
    if a.degree() as u64 != expected {
        return Err(Error::DegreeMismatch { expected: expected as usize, found: a.degree() });
    }
    Ok(big_p)
}

/// The matrix of `φ` on the basis `e_1..e_(P-1)`.
pub fn build_matrix(p: u32, n: u32, m: u32, k: u32, a: &BinaryForm) -> Result<SemilinearMatrix> {
    let big_p = check_degree(p, n, m, k, a)? as i64;
    let q = ppow(p, m);
    let d = (big_p - 1) as usize;
    let rows = (1..=d as i64)
        .map(|j| (1..=d as i64).map(|i| a.coeff(q as i64 * i - j)).collect())
        .collect();
    SemilinearMatrix::new(a.field(), q, rows)
}

/// `φ(e_i)` by expanding `a · e_i^q` monomial by monomial and dropping every
/// term whose exponents are not both negative.
/// Independent of [`build_matrix`]; used to check it.
pub fn truncated_image(p: u32, n: u32, m: u32, k: u32, a: &BinaryForm, i: usize) -> Result<Vec<Fq>> {
    let big_p = check_degree(p, n, m, k, a)? as i64;
    let q = ppow(p, m) as i64;
    let d = (big_p - 1) as usize;
    let mut out = vec![a.field().zero(); d];
    let (e0, e1) = (-(i as i64) * q, -(big_p - i as i64) * q);
    let deg = a.degree() as i64;
    for (l, c) in a.coeffs().iter().enumerate() {
        let (x0, x1) = (e0 + l as i64, e1 + deg - l as i64);
        if x0 < 0 && x1 < 0 {
            // x0 = -j, x1 = -(P - j)
            let j = (-x0) as usize;
            debug_assert_eq!(x1, -(big_p - j as i64));
            out[j - 1] = &out[j - 1] + c;
        }
    }
    Ok(out)
}

/// Rank of `Π_d`: the dimension of the part of `F^d` on which `φ` is bijective.
pub fn stable_rank(a: &SemilinearMatrix) -> usize {
    matrix_rank(&a.product(a.dim()))
}

/// `(rank Π_d, rank Π_(d+1))`; the two agree for every semilinear operator.
pub fn certified_stable_rank(a: &SemilinearMatrix) -> (usize, usize) {
    (stable_rank(a), matrix_rank(&a.product(a.dim() + 1)))
}

/// Applies `φ` `d` times to each standard basis vector and returns the rank of the images.
pub fn iterate_oracle(a: &SemilinearMatrix) -> usize {
    let d = a.dim();
    let images: Vec<Vec<Fq>> = (0..d)
        .map(|i| {
            let mut w: Vec<Fq> = (0..d).map(|j| if i == j { a.field.one() } else { a.field.zero() }).collect();
            for _ in 0..d {
                w = a.apply(&w);
            }
            w
        })
        .collect();
    matrix_rank(&images)
}

/// `F_p`-basis of `{x ∈ F_(p^E)^d : φ(x) = x}` where `F_(p^E)` is the degree
/// `s` extension of the field of `a`.
pub fn fixed_points(a: &SemilinearMatrix, s: u32) -> Result<(Field, Vec<Vec<Fq>>)> {
    let mut tower = FieldTower::new(a.field());
    if s > 1 {
        tower.extend(s, "fixed points of the Hasse-Witt operator")?;
    }
    let top = tower.top().clone();
    let p = top.characteristic();
    let e = top.degree() as usize;
    let d = a.dim();
    let rows: Vec<Vec<Fq>> = a.rows.iter().map(|r| r.iter().map(|c| tower.lift(c)).collect()).collect::<Result<_>>()?;
    let lifted = SemilinearMatrix { field: top.clone(), q: a.q, rows };
    let fp = Field::prime(p)?;
    // Columns of the F_p-matrix of x ↦ x - φ(x), in the basis w^b e_s.
    let mut cols: Vec<Vec<Fq>> = Vec::with_capacity(d * e);
    let basis_vec = |s: usize, b: usize| -> Vec<Fq> {
        let mut digits = vec![0u32; e];
        digits[b] = 1;
        let w = top.elem(top.from_digits(&digits));
        (0..d).map(|i| if i == s { w.clone() } else { top.zero() }).collect()
    };
    for s in 0..d {
        for b in 0..e {
            let x = basis_vec(s, b);
            let img = lifted.apply(&x);
            let diff: Vec<Fq> = x.iter().zip(&img).map(|(u, v)| u - v).collect();
            cols.push(diff.iter().flat_map(|c| c.digits()).map(|dg| fp.from_int(dg as i64)).collect());
        }
    }
    let n = d * e;
    let rows: Vec<Vec<Fq>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace(&fp, &rows, n);
    let basis = kernel
        .into_iter()
        .map(|v| {
            (0..d)
                .map(|s| {
                    let digits: Vec<u32> = (0..e).map(|b| v[s * e + b].raw()).collect();
                    top.elem(top.from_digits(&digits))
                })
                .collect()
        })
        .collect();
    Ok((top, basis))
}

/// Fixed points over the smallest tested extension whose `F_p`-dimension
/// reaches `m r`, where `q = p^m` and `r` is the stable rank.
pub fn fixed_point_space(a: &SemilinearMatrix, max_steps: u32) -> Result<Option<(Field, Vec<Vec<Fq>>)>> {
    let r = stable_rank(a);
    let p = a.field.characteristic() as u64;
    let mut m = 0;
    let mut q = a.q;
    while q > 1 {
        q /= p;
        m += 1;
    }
    for s in 1..=max_steps {
        let size = (a.field.size() as f64).powi(s as i32);
        if size > MAX_FIELD_SIZE as f64 {
            break;
        }
        let (field, basis) = fixed_points(a, s)?;
        if basis.len() == m * r {
            return Ok(Some((field, basis)));
        }
    }
    Ok(None)
}

/// Cohomology of the Néron model over `P^1` attached to `(p, n, m, k, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub d: usize,
    pub r: usize,
    /// `H^1(C, G) ≅ (Z / torsion)^r`.
    pub h1g_torsion: u64,
    /// `H^2(C, U)`; always zero over a curve.
    pub h2: u64,
    /// `dim H^1(C, L)` for `L` of degree `-k`.
    pub h1l_dim: u32,
    pub experimental: bool,
    pub matrix: SemilinearMatrix,
    /// `F_p`-basis of the fixed points of `φ`, with the field it lives over.
    pub fixed_points: Option<(Field, Vec<Vec<Fq>>)>,
}

impl CohomologyReport {
    pub fn h1g(&self) -> String {
        if self.r == 0 {
            "0".into()
        } else {
            format!("(Z/{}Z)^{}", self.h1g_torsion, self.r)
        }
    }
}

pub fn cohomology_report(p: u32, n: u32, m: u32, k: u32, a: &BinaryForm, with_kernel: bool) -> Result<CohomologyReport> {
    let matrix = build_matrix(p, n, m, k, a)?;
    let r = stable_rank(&matrix);
    let fixed_points = if with_kernel { fixed_point_space(&matrix, 6)? } else { None };
    Ok(CohomologyReport {
        p,
        n,
        m,
        k,
        d: matrix.dim(),
        r,
        h1g_torsion: ppow(p, m),
        h2: 0,
        h1l_dim: k - 1,
        experimental: is_experimental(p, n, m),
        matrix,
        fixed_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    pub(crate) fn fermat() -> BinaryForm {
        BinaryForm::from_ints(&f3(), 12, &[(2, 1), (10, 1)]).unwrap()
    }

    #[test]
    fn fermat_matrix() {
        let a = build_matrix(3, 1, 1, 2, &fermat()).unwrap();
        assert_eq!(a.dim(), 5);
        let ones = [(1, 1), (4, 2), (2, 4), (5, 5)];
        for j in 1..=5 {
            for i in 1..=5 {
                let expected = if ones.contains(&(j, i)) { 1 } else { 0 };
                assert_eq!(a.entry(j - 1, i - 1), &f3().from_int(expected), "({j},{i})");
            }
        }
        assert_eq!(stable_rank(&a), 4);
        assert_eq!(iterate_oracle(&a), 4);
    }

    #[test]
    fn small_examples() {
        let a = BinaryForm::from_ints(&f3(), 6, &[(2, 1)]).unwrap();
        let m = build_matrix(3, 1, 1, 1, &a).unwrap();
        assert_eq!(m, SemilinearMatrix::from_ints(&f3(), 3, &[&[1, 0], &[0, 0]]).unwrap());
        let z = build_matrix(3, 1, 1, 2, &BinaryForm::zero(&f3(), 12)).unwrap();
        assert!(z.rows().iter().flatten().all(Fq::is_zero));
        assert_eq!(stable_rank(&z), 0);
        assert!(matches!(
            build_matrix(3, 1, 1, 2, &BinaryForm::zero(&f3(), 11)),
            Err(Error::DegreeMismatch { expected: 12, found: 11 })
        ));
    }

    #[test]
    fn second_k3() {
        let a = BinaryForm::from_ints(&f3(), 12, &[(2, 1), (5, 1), (8, 1), (10, 1)]).unwrap();
        let r = cohomology_report(3, 1, 1, 2, &a, false).unwrap();
        assert_eq!(r.r, 4);
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(stable_rank(&SemilinearMatrix::identity(&f3(), 3, 3)), 3);
        let jordan = SemilinearMatrix::from_ints(&f3(), 3, &[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(stable_rank(&jordan), 0);
        assert_eq!(iterate_oracle(&jordan), 0);
    }

    #[test]
    fn fermat_report() {
        let r = cohomology_report(3, 1, 1, 2, &fermat(), true).unwrap();
        assert_eq!((r.d, r.r, r.h2, r.h1l_dim), (5, 4, 0, 1));
        assert_eq!(r.h1g(), "(Z/3Z)^4");
        assert!(!r.experimental);
        let (field, basis) = r.fixed_points.unwrap();
        assert_eq!(basis.len(), 4);
        for x in &basis {
            assert_eq!(field, *x[0].field());
            let lifted = SemilinearMatrix::new(&field, 3, r.matrix.rows().iter().map(|row| row.iter().map(|c| field.from_int(c.raw() as i64)).collect()).collect()).unwrap();
            assert_eq!(&lifted.apply(x), x);
        }
    }

    #[test]
    fn matrix_matches_truncation() {
        let a = fermat();
        let m = build_matrix(3, 1, 1, 2, &a).unwrap();
        for i in 0..m.dim() {
            assert_eq!(m.column(i), truncated_image(3, 1, 1, 2, &a, i + 1).unwrap());
        }
    }
}
