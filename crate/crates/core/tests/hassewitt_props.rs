use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use woundlab::field::{Field, Fq};
use woundlab::hassewitt::{
    build_matrix, certified_stable_rank, fixed_points, iterate_oracle, matrix_rank, nullspace, stable_rank,
    truncated_image, BinaryForm, SemilinearMatrix,
};

/// Random operator over F3, F4 or F9, twisted by p or p^2 when the field allows.
fn random_operator(seed: u64, max_d: usize) -> SemilinearMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let (f, qs): (Field, &[u64]) = match seed % 3 {
        0 => (Field::prime(3).unwrap(), &[3]),
        1 => (Field::with_degree(2, 2).unwrap(), &[2, 4]),
        _ => (Field::with_degree(3, 2).unwrap(), &[3, 9]),
    };
    let q = qs[rng.gen_range(0..qs.len())];
    let d = rng.gen_range(1..=max_d);
    // Sparse matrices make nilpotent parts common.
    let density = rng.gen_range(0.2..1.0);
    let rows = (0..d)
        .map(|_| (0..d).map(|_| if rng.gen_bool(density) { f.random(&mut rng) } else { f.zero() }).collect())
        .collect();
    SemilinearMatrix::new(&f, q, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stable_rank_matches_oracle(seed in any::<u64>()) {
        let a = random_operator(seed, 8);
        let (r, r_next) = certified_stable_rank(&a);
        prop_assert_eq!(r, r_next);
        prop_assert_eq!(r, iterate_oracle(&a));
        prop_assert!(r <= a.dim());
    }

    #[test]
    fn semisimple_nilpotent_decomposition(seed in any::<u64>()) {
        let a = random_operator(seed, 6);
        let d = a.dim();
        let pd = a.product(d);
        // φ^d x = Π_d x^(q^d), so V_nil is the q^d-th root of ker Π_d.
        let q_exp = {
            let p = a.field().characteristic() as u64;
            let mut k = 0;
            let mut q = a.q();
            while q > 1 { q /= p; k += 1; }
            k * d as u32
        };
        for y in nullspace(a.field(), &pd, d) {
            let mut x: Vec<Fq> = y.iter().map(|c| c.root_pk(q_exp)).collect();
            for _ in 0..d {
                x = a.apply(&x);
            }
            prop_assert!(x.iter().all(Fq::is_zero));
        }
        // φ maps the image of Π_d onto itself: its span keeps rank r under φ.
        let cols: Vec<Vec<Fq>> = (0..d).map(|i| pd.iter().map(|row| row[i].clone()).collect()).collect();
        let images: Vec<Vec<Fq>> = cols.iter().map(|c| a.apply(c)).collect();
        prop_assert_eq!(matrix_rank(&images), stable_rank(&a));
        let mut both = cols.clone();
        both.extend(images);
        prop_assert_eq!(matrix_rank(&both), stable_rank(&a));
    }
}

/// All vectors of `field^d`.
fn all_vectors(field: &Field, d: usize) -> Vec<Vec<Fq>> {
    let elems: Vec<Fq> = field.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| elems.iter().map(move |e| { let mut w = v.clone(); w.push(e.clone()); w })).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fixed_points_by_brute_force(seed in any::<u64>(), s in 1u32..=2) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f3 = Field::prime(3).unwrap();
        let d = rng.gen_range(1..=if s == 1 { 4 } else { 3 });
        let a = SemilinearMatrix::random(&f3, d, 3, &mut rng);
        let (field, basis) = fixed_points(&a, s).unwrap();
        let lifted = SemilinearMatrix::new(&field, 3, a.rows().iter().map(|r| r.iter().map(|c| field.from_int(c.raw() as i64)).collect()).collect()).unwrap();
        let count = all_vectors(&field, d).into_iter().filter(|x| &lifted.apply(x) == x).count();
        prop_assert_eq!(count as u64, 3u64.pow(basis.len() as u32));
        // Over the closure the fixed points form an F_q-space of dimension r; finite levels see at most that.
        prop_assert!(basis.len() <= stable_rank(&a));
    }
}

#[test]
fn matrix_support_matches_truncation_exhaustively() {
    // Every column of every matrix built from small random forms, across regimes.
    let mut rng = StdRng::seed_from_u64(7);
    for (p, n, m, k) in [(3, 1, 1, 1), (3, 1, 1, 2), (3, 1, 1, 3), (2, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1), (2, 1, 1, 3), (5, 1, 1, 1)] {
        let f = Field::prime(p).unwrap();
        let pn = (p as usize).pow(n);
        let deg = pn * k as usize * ((p as usize).pow(m) - 1);
        for _ in 0..10 {
            let a = BinaryForm::new(&f, (0..=deg).map(|_| f.random(&mut rng)).collect()).unwrap();
            let mat = build_matrix(p, n, m, k, &a).unwrap();
            assert_eq!(mat.dim(), pn * k as usize - 1);
            for i in 0..mat.dim() {
                assert_eq!(mat.column(i), truncated_image(p, n, m, k, &a, i + 1).unwrap(), "{p} {n} {m} {k} column {i}");
            }
        }
    }
}
