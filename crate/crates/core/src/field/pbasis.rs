//! Degree computations relative to subfields of `q`-th powers.
//!
//! For `F = F_q(t)` or `F_q(s,t)` and `q = p^k`, every `x` decomposes uniquely as
//! `sum_b b * X_b^q` over the monomial basis. Elements `x_1..x_r` are linearly
//! independent over `F^q` exactly when their component vectors are independent
//! over `F`, so all degree questions reduce to ranks of component matrices.

use super::{ppow, FunctionField, Scalar};

/// Rank of a matrix over a field, by Gaussian elimination.
pub(crate) fn rank<X: Scalar>(mut rows: Vec<Vec<X>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<X> = rows[rank].iter().map(|x| x.clone() * inv.clone()).collect();
        for r in (rank + 1)..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let delta = factor.clone() * pivot_row[c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Dimension over `F^q` of the span of `xs`.
pub fn q_rank<X: FunctionField>(xs: &[X], q: u64) -> usize {
    if xs.is_empty() {
        return 0;
    }
    rank(xs.iter().map(|x| x.q_components(q)).collect())
}

/// `[F(x_1^(1/p^k), ..., x_r^(1/p^k)) : F]`, computed as `[F^q(x_1..x_r) : F^q]`
/// with `q = p^k`: the `F^q`-span of the monomials `prod x_i^(e_i)`, `e_i < q`.
pub fn pth_power_degree<X: FunctionField>(xs: &[X], k: u32) -> u64 {
    let Some(first) = xs.first() else { return 1 };
    let q = ppow(first.characteristic(), k);
    let mut span = vec![first.one_like()];
    let mut dim = 1usize;
    for x in xs {
        // Adjoin x to the current subfield: new span is span * {1, x, .., x^(q-1)}.
        let mut candidates = Vec::new();
        let mut power = x.one_like();
        for _ in 0..q {
            for b in &span {
                candidates.push(b.clone() * power.clone());
            }
            power = power * x.clone();
        }
        let basis = independent_subset(&candidates, q);
        if basis.len() == dim {
            continue;
        }
        dim = basis.len();
        span = basis;
    }
    dim as u64
}

/// Greedy maximal `F^q`-independent subset, preserving order.
fn independent_subset<X: FunctionField>(xs: &[X], q: u64) -> Vec<X> {
    let mut chosen: Vec<X> = Vec::new();
    let mut rows: Vec<Vec<X>> = Vec::new();
    for x in xs {
        let mut trial = rows.clone();
        trial.push(x.q_components(q));
        if rank(trial.clone()) > chosen.len() {
            rows = trial;
            chosen.push(x.clone());
        }
    }
    chosen
}

/// In characteristic 2 with `a` not a square: `(alpha, beta)` with
/// `b = a * alpha^2 + beta^2`, if `b` lies in `F^2 + F^2 a`.
pub fn membership_f2_plus_f2a<X: FunctionField>(b: &X, a: &X) -> Option<(X, X)> {
    assert_eq!(a.characteristic(), 2, "membership test is for characteristic 2");
    let ac = a.q_components(2);
    let bc = b.q_components(2);
    // Component 0 belongs to the basis element 1.
    let pivot = (1..ac.len()).find(|&i| !ac[i].is_zero())?;
    let alpha = bc[pivot].clone() * ac[pivot].inv()?;
    for i in 1..ac.len() {
        if bc[i] != alpha.clone() * ac[i].clone() {
            return None;
        }
    }
    let beta = bc[0].clone() + alpha.clone() * ac[0].clone();
    Some((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BivarRatFunc, Field, RatFunc};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn membership_examples() {
        let f = Field::prime(2).unwrap();
        let t = RatFunc::t(&f);
        let (al, be) = membership_f2_plus_f2a(&t, &t).unwrap();
        assert_eq!((al, be), (RatFunc::one(&f), RatFunc::zero(&f)));
        let t3 = Scalar::pow(&t, 3);
        let (al, be) = membership_f2_plus_f2a(&t3, &t).unwrap();
        assert_eq!((al, be), (t.clone(), RatFunc::zero(&f)));

        let s2 = BivarRatFunc::s(&f);
        let t2 = BivarRatFunc::t(&f);
        assert!(membership_f2_plus_f2a(&t2, &s2).is_none());
    }

    #[test]
    fn membership_finds_constructed_witnesses() {
        let f = Field::prime(2).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let a = &BivarRatFunc::s(&f) + &BivarRatFunc::t(&f);
        for _ in 0..10 {
            let al = BivarRatFunc::random(&f, 2, &mut rng);
            let be = BivarRatFunc::random(&f, 2, &mut rng);
            let b = &(&a * &Scalar::pow(&al, 2)) + &Scalar::pow(&be, 2);
            let (x, y) = membership_f2_plus_f2a(&b, &a).unwrap();
            assert_eq!(&(&a * &Scalar::pow(&x, 2)) + &Scalar::pow(&y, 2), b);
        }
    }

    #[test]
    fn degrees_of_root_extensions() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let t2 = RatFunc::t(&f2);
        assert_eq!(pth_power_degree(&[RatFunc::t(&f3)], 1), 3);
        assert_eq!(pth_power_degree(&[Scalar::pow(&t2, 2)], 1), 1);
        assert_eq!(pth_power_degree(std::slice::from_ref(&t2), 2), 4);
        assert_eq!(pth_power_degree(&[t2.clone(), Scalar::pow(&t2, 3)], 1), 2);
        let s = BivarRatFunc::s(&f2);
        let t = BivarRatFunc::t(&f2);
        assert_eq!(pth_power_degree(&[s.clone(), t.clone()], 1), 4);
        assert_eq!(pth_power_degree(&[s.clone(), &s * &Scalar::pow(&t, 2)], 1), 2);
    }
}
