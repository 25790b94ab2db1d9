//! A lazily grown chain of finite fields `F_{p^e0} ⊂ F_{p^e1} ⊂ ...`.
//!
//! Computations that need a root which the current field lacks extend the
//! tower by the smallest degree that produces one. Elements of any level can
//! be lifted to the top, and top elements that happen to lie in the base can
//! be brought back down.

use super::gf::{Field, Fq};
use super::poly::DensePoly;
use crate::error::{Error, Result};

/// One level of the tower.
#[derive(Clone, Debug)]
pub struct TowerStep {
    pub field: Field,
    /// Image in this level of the previous level's generator `w`.
    pub gen_image: Option<Fq>,
    /// Why the step was taken.
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    steps: Vec<TowerStep>,
}

impl FieldTower {
    pub fn new(base: &Field) -> Self {
        FieldTower {
            steps: vec![TowerStep { field: base.clone(), gen_image: None, reason: "base".into() }],
        }
    }

    pub fn base(&self) -> &Field {
        &self.steps[0].field
    }

    pub fn top(&self) -> &Field {
        &self.steps.last().unwrap().field
    }

    pub fn steps(&self) -> &[TowerStep] {
        &self.steps
    }

    pub fn height(&self) -> usize {
        self.steps.len() - 1
    }

    /// Adjoins a degree-`d` extension of the top field.
    pub fn extend(&mut self, d: u32, reason: &str) -> Result<&Field> {
        let top = self.top().clone();
        let p = top.characteristic();
        let new = Field::with_degree(p, top.degree() * d)?;
        let modulus = DensePoly::from_raw(&new, top.modulus().iter().map(|&c| new.int_raw(c as i64)).collect());
        let image = modulus
            .roots()
            .into_iter()
            .next()
            .expect("a finite field contains every root of its subfields' moduli");
        self.steps.push(TowerStep { field: new, gen_image: Some(image), reason: reason.into() });
        Ok(self.top())
    }

    fn embed_step(&self, level: usize, x: &Fq) -> Fq {
        let step = &self.steps[level];
        let g = step.gen_image.as_ref().expect("level above base");
        let f = &step.field;
        let mut acc = f.zero();
        for d in x.digits().iter().rev() {
            acc = &(&acc * g) + &f.from_int(*d as i64);
        }
        acc
    }

    fn level_of(&self, field: &Field) -> Result<usize> {
        self.steps.iter().rposition(|s| &s.field == field).ok_or(Error::FieldMismatch)
    }

    /// Image of `x` (from any level) in the top field.
    pub fn lift(&self, x: &Fq) -> Result<Fq> {
        let mut level = self.level_of(x.field())?;
        let mut cur = x.clone();
        while level + 1 < self.steps.len() {
            level += 1;
            cur = self.embed_step(level, &cur);
        }
        Ok(cur)
    }

    /// Lifts every coefficient of a polynomial to the top field.
    pub fn lift_poly(&self, poly: &DensePoly) -> Result<DensePoly> {
        let top = self.top().clone();
        let coeffs: Result<Vec<Fq>> = (0..poly.raw_coeffs().len()).map(|i| self.lift(&poly.coeff(i))).collect();
        Ok(DensePoly::from_coeffs(&top, &coeffs?))
    }

    /// The base-field element mapping to `x`, if `x` lies in the image of the base.
    pub fn descend(&self, x: &Fq) -> Option<Fq> {
        let level = self.level_of(x.field()).ok()?;
        if level == 0 {
            return Some(x.clone());
        }
        let base = self.base();
        let p = base.characteristic();
        let e = base.degree() as usize;
        // Images of the power basis 1, w, .., w^(e-1) of the base as digit vectors over F_p.
        let mut basis = Vec::with_capacity(e);
        let mut w = base.one();
        for _ in 0..e {
            basis.push(self.lift_to_level(&w, level).digits());
            w = &w * &base.generator();
        }
        let coords = solve_fp(p, &basis, &x.digits())?;
        Some(base.elem(base.from_digits(&coords)))
    }

    fn lift_to_level(&self, x: &Fq, target: usize) -> Fq {
        let mut cur = x.clone();
        for level in 1..=target {
            cur = self.embed_step(level, &cur);
        }
        cur
    }

    /// A root of `poly` (coefficients at any level), extending the tower as needed.
    pub fn find_root(&mut self, poly: &DensePoly, reason: &str) -> Result<Fq> {
        loop {
            let lifted = self.lift_poly(poly)?;
            if let Some(r) = lifted.roots().into_iter().next() {
                return Ok(r);
            }
            let d = lifted
                .min_factor_degree()
                .ok_or_else(|| Error::Malformed("constant polynomial has no root".into()))?;
            self.extend(d as u32, reason)?;
        }
    }
}

/// Solves `sum_i c_i * cols[i] = target` over `F_p` (columns given as digit vectors).
fn solve_fp(p: u32, cols: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let nrows = cols.iter().map(|c| c.len()).chain([target.len()]).max().unwrap_or(0);
    let ncols = cols.len();
    let get = |v: &Vec<u32>, i: usize| v.get(i).copied().unwrap_or(0);
    let mut m: Vec<Vec<u32>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<u32> = cols.iter().map(|c| get(c, r)).collect();
            row.push(target.get(r).copied().unwrap_or(0));
            row
        })
        .collect();
    let inv = |a: u32| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..nrows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=ncols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    let mut out = vec![0; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = m[i][ncols];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_images_satisfy_old_modulus() {
        let mut tower = FieldTower::new(&Field::with_degree(2, 2).unwrap());
        tower.extend(3, "test").unwrap();
        tower.extend(2, "test").unwrap();
        assert_eq!(tower.top().size(), 1 << 12);
        for level in 1..=2 {
            let step = &tower.steps()[level];
            let prev = &tower.steps()[level - 1].field;
            let m = DensePoly::from_raw(
                &step.field,
                prev.modulus().iter().map(|&c| step.field.int_raw(c as i64)).collect(),
            );
            assert!(m.eval(step.gen_image.as_ref().unwrap()).is_zero());
        }
    }

    #[test]
    fn lift_is_a_homomorphism_and_descend_inverts_it() {
        let base = Field::with_degree(3, 2).unwrap();
        let mut tower = FieldTower::new(&base);
        tower.extend(2, "test").unwrap();
        for x in base.elements() {
            let lx = tower.lift(&x).unwrap();
            assert_eq!(tower.descend(&lx).unwrap(), x);
            for y in base.elements().step_by(3) {
                let ly = tower.lift(&y).unwrap();
                assert_eq!(tower.lift(&(&x * &y)).unwrap(), &lx * &ly);
                assert_eq!(tower.lift(&(&x + &y)).unwrap(), &lx + &ly);
            }
        }
        assert!(tower.descend(&tower.top().generator()).is_none());
    }

    #[test]
    fn find_root_extends_when_needed() {
        let f = Field::prime(2).unwrap();
        let mut tower = FieldTower::new(&f);
        // x^2 + x + 1 has no root in F_2.
        let poly = DensePoly::from_ints(&f, &[1, 1, 1]);
        let r = tower.find_root(&poly, "test").unwrap();
        assert_eq!(tower.top().size(), 4);
        assert!(tower.lift_poly(&poly).unwrap().eval(&r).is_zero());
    }
}
