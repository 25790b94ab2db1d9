//! Seeded property checks run by `verify-paper` alongside the corpus.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use woundlab::expr::parse_laurent;
use woundlab::field::{DensePoly, Field, LaurentSeries, RatFunc, Scalar};
use woundlab::grouplaw::{ParamPoint, QrGroup};
use woundlab::hassewitt::{certified_stable_rank, iterate_oracle, SemilinearMatrix};
use woundlab::torsor::{reduce, LocalRussell, TorsorClass};

pub struct PropertyResult {
    pub name: &'static str,
    pub samples: usize,
    pub failure: Option<String>,
}

fn stable_rank_oracle(rng: &mut StdRng) -> Result<usize, String> {
    let fields = [(Field::prime(3).unwrap(), 3u64), (Field::with_degree(2, 2).unwrap(), 4), (Field::with_degree(3, 2).unwrap(), 3)];
    for i in 0..100 {
        let (f, q) = &fields[i % 3];
        let a = SemilinearMatrix::random(f, rng.gen_range(1..=8), *q, rng);
        let (r, r_next) = certified_stable_rank(&a);
        if r != r_next || r != iterate_oracle(&a) {
            return Err(format!("sample {i}: {a:?}"));
        }
    }
    Ok(100)
}

fn torsor_cosets(rng: &mut StdRng) -> Result<usize, String> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let mut shapes = vec![];
    for k in [1, 2, 4, 5] {
        shapes.push(LocalRussell::monomial(&f3, 1, 1, k, None).unwrap());
    }
    for (n, m, k) in [(1, 2, 1), (1, 2, 3), (1, 2, 5), (2, 1, 1), (2, 1, 3), (1, 1, 1)] {
        shapes.push(LocalRussell::monomial(&f2, n, m, k, None).unwrap());
    }
    let mut count = 0;
    for r in &shapes {
        for _ in 0..10 {
            let f = LaurentSeries::random(r.field(), -12, 40, Some(40), rng);
            let u = LaurentSeries::random(r.field(), -4, 4, None, rng);
            let v = LaurentSeries::random(r.field(), -6, 4, None, rng);
            let g = &f + &r.phi(&u, &v).map_err(|e| e.to_string())?;
            let a = reduce(&TorsorClass::new(r.clone(), f.clone(), 40).unwrap()).map_err(|e| e.to_string())?;
            let b = reduce(&TorsorClass::new(r.clone(), g, 40).unwrap()).map_err(|e| e.to_string())?;
            if a.representative != b.representative || a.replay(&TorsorClass::new(r.clone(), f, 40).unwrap()).ok() != Some(a.representative.clone()) {
                return Err(format!("{}: {} vs {}", r.shape().name(), a.representative, b.representative));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn group_law_additive(rng: &mut StdRng) -> Result<usize, String> {
    let f4 = Field::with_degree(2, 2).unwrap();
    for i in 0..50 {
        let sq = Scalar::pow(&RatFunc::from_poly(DensePoly::random(&f4, 2, rng)), 2);
        let g = QrGroup::new(&RatFunc::t(&f4) + &sq).map_err(|e| e.to_string())?;
        let pick = |rng: &mut StdRng| {
            if rng.gen_ratio(1, 8) {
                ParamPoint::Infinity
            } else {
                ParamPoint::Finite(RatFunc::random(&f4, 2, rng))
            }
        };
        let (p, q) = (pick(rng), pick(rng));
        let (u1, v1) = g.embed(&p).map_err(|e| e.to_string())?;
        let (u2, v2) = g.embed(&q).map_err(|e| e.to_string())?;
        let (u, v) = g.embed(&g.add(&p, &q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if (u, v) != (&u1 + &u2, &v1 + &v2) {
            return Err(format!("sample {i}: {p:?} + {q:?}"));
        }
    }
    Ok(50)
}

fn laurent_round_trip(rng: &mut StdRng) -> Result<usize, String> {
    let fields = [Field::prime(5).unwrap(), Field::with_degree(3, 2).unwrap(), Field::with_degree(2, 3).unwrap()];
    for i in 0..100 {
        let f = &fields[i % 3];
        let x = LaurentSeries::random(f, -5, 6, Some(6), rng);
        let back = parse_laurent(f, &x.to_string()).map_err(|e| e.to_string())?;
        if back != x {
            return Err(format!("{x} came back as {back}"));
        }
    }
    Ok(100)
}

type Check = fn(&mut StdRng) -> Result<usize, String>;

pub fn run_properties(seed: u64) -> Vec<PropertyResult> {
    let checks: [(&'static str, Check); 4] = [
        ("stable rank equals iteration oracle", stable_rank_oracle),
        ("torsor normal forms are coset invariants", torsor_cosets),
        ("group-law embedding is additive", group_law_additive),
        ("Laurent series text round trip", laurent_round_trip),
    ];
    checks
        .into_iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(i as u64));
            match check(&mut rng) {
                Ok(samples) => PropertyResult { name, samples, failure: None },
                Err(msg) => PropertyResult { name, samples: 0, failure: Some(msg) },
            }
        })
        .collect()
}

pub fn properties_json(results: &[PropertyResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| json!({"name": r.name, "samples": r.samples, "pass": r.failure.is_none(), "failure": r.failure}))
            .collect(),
    )
}
