use super::gf::Fq;
use super::laurent::LaurentSeries;
use super::poly::DensePoly;
use super::tower::FieldTower;
use super::ppow;
use crate::error::{Error, Result};

/// Solves `v + sum_i a_i v^(p^i) = f` in `k[[t]]` modulo `t^n`.
///
/// `a[i-1]` is the coefficient of `v^(p^i)`. All inputs must be integral and
/// known modulo `t^n`. The residue equation is an additive polynomial over the
/// constants; when it has no root in the current top field the tower grows.
/// Higher coefficients are then determined one at a time, since every other
/// contribution to `t^e` only involves lower coefficients of `v`.
pub fn hensel_solve(tower: &mut FieldTower, a: &[LaurentSeries], f: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
    for s in a.iter().chain([f]) {
        if let Some(v) = s.valuation() {
            if v < 0 {
                return Err(Error::Malformed("Hensel step needs integral coefficients".into()));
            }
        }
        if let Some(prec) = s.precision() {
            if prec < n {
                return Err(Error::PrecisionExhausted { needed: n, available: prec });
            }
        }
    }
    let p = tower.top().characteristic();

    // Residue equation c + sum_i a_i(0) c^(p^i) = f(0).
    let mut terms: Vec<(u64, Fq)> = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        let c0 = tower.lift(&ai.coeff(0)?)?;
        if !c0.is_zero() {
            terms.push((ppow(p, i as u32 + 1), c0));
        }
    }
    let f0 = tower.lift(&f.coeff(0)?)?;
    let c = if terms.is_empty() {
        f0
    } else {
        let top = tower.top().clone();
        let deg = terms.iter().map(|t| t.0).max().unwrap() as usize;
        let mut coeffs = vec![top.zero(); deg + 1];
        coeffs[0] = -f0;
        coeffs[1] = top.one();
        for (e, c0) in &terms {
            coeffs[*e as usize] = &coeffs[*e as usize] + c0;
        }
        let poly = DensePoly::from_coeffs(&top, &coeffs);
        tower.find_root(&poly, "residue equation of Hensel step")?
    };

    let top = tower.top().clone();
    let lift = |s: &LaurentSeries| -> Result<Vec<Fq>> {
        (0..n.max(0)).map(|e| tower.lift(&s.coeff(e)?)).collect()
    };
    let acoef: Vec<Vec<Fq>> = a.iter().map(&lift).collect::<Result<_>>()?;
    let fcoef = lift(f)?;
    if n <= 0 {
        return Ok(LaurentSeries::big_o(&top, n));
    }
    let c = tower.lift(&c)?;
    let mut v: Vec<Fq> = vec![c];
    // Frobenius powers v_e^(p^i), cached per i.
    let mut vpow: Vec<Vec<Fq>> = (0..a.len()).map(|i| vec![v[0].pow(ppow(p, i as u32 + 1))]).collect();
    for e in 1..n as usize {
        let mut acc = fcoef[e].clone();
        for (i, ai) in acoef.iter().enumerate() {
            let q = ppow(p, i as u32 + 1) as usize;
            let mut ep = 0;
            while ep * q <= e {
                let s = e - ep * q;
                if !ai[s].is_zero() && ep < v.len() {
                    acc = &acc - &(&ai[s] * &vpow[i][ep]);
                }
                ep += 1;
            }
        }
        for (i, row) in vpow.iter_mut().enumerate() {
            row.push(acc.pow(ppow(p, i as u32 + 1)));
        }
        v.push(acc);
    }
    let terms: Vec<(i64, Fq)> = v.into_iter().enumerate().map(|(e, c)| (e as i64, c)).collect();
    Ok(LaurentSeries::from_terms(&top, &terms, Some(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Scalar};

    fn residual(a: &[LaurentSeries], v: &LaurentSeries, f: &LaurentSeries) -> LaurentSeries {
        let mut acc = v - f;
        let mut vp = v.clone();
        for ai in a {
            vp = Scalar::frobenius(&vp);
            acc = &acc + &(ai * &vp);
        }
        acc
    }

    #[test]
    fn cubic_example() {
        let f3 = Field::prime(3).unwrap();
        let t = LaurentSeries::monomial(&f3.one(), 1);
        let mut tower = FieldTower::new(&f3);
        let v = hensel_solve(&mut tower, std::slice::from_ref(&t), &t, 13).unwrap();
        let expected = LaurentSeries::from_terms(&f3, &[(1, f3.one()), (4, f3.from_int(-1))], Some(13));
        assert_eq!(v, expected);
        let zero = hensel_solve(&mut tower, std::slice::from_ref(&t), &LaurentSeries::zero(&f3), 13).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn residue_needs_extension() {
        // v + v^2 = 1 has no solution with constant term in F_2.
        let f2 = Field::prime(2).unwrap();
        let one = LaurentSeries::one(&f2);
        let f = &one + &LaurentSeries::monomial(&f2.one(), 1);
        let mut tower = FieldTower::new(&f2);
        let v = hensel_solve(&mut tower, std::slice::from_ref(&one), &f, 8).unwrap();
        assert_eq!(tower.top().size(), 4);
        let lift = |s: &LaurentSeries| s.map_coeffs(tower.top(), |c| tower.lift(c).unwrap());
        let r = residual(&[lift(&one)], &v, &lift(&f));
        assert!(r.valuation().is_none_or(|x| x >= 8));
    }

    #[test]
    fn linear_residue_example() {
        let f2 = Field::prime(2).unwrap();
        let t = LaurentSeries::monomial(&f2.one(), 1);
        let f = &LaurentSeries::one(&f2) + &t;
        let mut tower = FieldTower::new(&f2);
        let v = hensel_solve(&mut tower, std::slice::from_ref(&t), &f, 8).unwrap();
        assert_eq!(v.coeff(0).unwrap(), f2.one());
        let r = residual(&[t], &v, &f);
        assert!(r.is_zero() || r.valuation().unwrap() >= 8);
    }
}
