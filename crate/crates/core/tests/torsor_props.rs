use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use woundlab::field::{Field, LaurentSeries};
use woundlab::torsor::{reduce, LocalRussell, MoveKind, Shape, TorsorClass};

/// Every supported shape, with a unit and a large `k` among them.
fn shapes() -> Vec<LocalRussell> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let mut out = Vec::new();
    for k in [1, 2, 4, 5, 7] {
        out.push(LocalRussell::monomial(&f3, 1, 1, k, None).unwrap());
    }
    out.push(LocalRussell::monomial(&f3, 1, 1, 2, Some(f3.from_int(2))).unwrap());
    for k in [1, 3, 5] {
        out.push(LocalRussell::monomial(&f2, 1, 2, k, None).unwrap());
    }
    out.push(LocalRussell::monomial(&f2, 2, 1, 1, None).unwrap());
    out.push(LocalRussell::monomial(&f2, 2, 1, 3, None).unwrap());
    out.push(LocalRussell::monomial(&f2, 1, 1, 1, None).unwrap());
    out
}

fn setup(idx: usize, seed: u64) -> (LocalRussell, StdRng) {
    let all = shapes();
    (all[idx % all.len()].clone(), StdRng::seed_from_u64(seed))
}

const PREC: i64 = 40;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn coset_invariance(idx in 0usize..12, seed in any::<u64>()) {
        let (r, mut rng) = setup(idx, seed);
        let f = LaurentSeries::random(r.field(), -14, PREC, Some(PREC), &mut rng);
        let u = LaurentSeries::random(r.field(), -5, 4, None, &mut rng);
        let v = LaurentSeries::random(r.field(), -8, 4, None, &mut rng);
        let g = &f + &r.phi(&u, &v).unwrap();
        let a = reduce(&TorsorClass::new(r.clone(), f, PREC).unwrap()).unwrap();
        let b = reduce(&TorsorClass::new(r, g, PREC).unwrap()).unwrap();
        prop_assert_eq!(a.representative, b.representative);
    }

    #[test]
    fn normal_forms_are_fixed_and_shaped(idx in 0usize..12, seed in any::<u64>()) {
        let (r, mut rng) = setup(idx, seed);
        let class = TorsorClass::new(r.clone(), LaurentSeries::random(r.field(), -20, PREC, Some(PREC), &mut rng), PREC).unwrap();
        let nf = reduce(&class).unwrap();
        // Support lies in the terminal set of the normalized equation.
        let shift = match r.shape() { Shape::Lang { shift, .. } => *shift, _ => 0 };
        for (e, _) in nf.representative.terms() {
            prop_assert!(e < 0 && r.shape().is_terminal(-e), "t^{} outside the shape", e);
        }
        // Reducing the representative (moved back to the original coordinates) changes nothing.
        let back = nf.representative.shift(3 * shift);
        let again = reduce(&TorsorClass::new(r, back, PREC).unwrap()).unwrap();
        prop_assert_eq!(again.representative, nf.representative.clone());
        prop_assert_eq!(nf.replay(&class).unwrap(), nf.representative);
        prop_assert_eq!(nf.trivial, nf.lang_n.is_none());
    }

    #[test]
    fn measure_strictly_decreases(idx in 0usize..12, seed in any::<u64>()) {
        let (r, mut rng) = setup(idx, seed);
        let class = TorsorClass::new(r.clone(), LaurentSeries::random(r.field(), -20, PREC, Some(PREC), &mut rng), PREC).unwrap();
        let nf = reduce(&class).unwrap();
        let measures: Vec<(i64, usize)> = nf.trace.iter().filter(|m| m.kind != MoveKind::FieldExtension).map(|m| m.measure).collect();
        for w in measures.windows(2) {
            prop_assert!(w[1] < w[0], "{:?} then {:?}", w[0], w[1]);
        }
    }
}
