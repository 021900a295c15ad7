//! The GL3 action on ternary forms: (u . F)(x) = F(u^{-1} x).

use crate::form::TernaryForm;
use crate::{Error, Rat, Result};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL3Matrix {
    entries: [[Rat; 3]; 3],
    det: Rat,
}

impl GL3Matrix {
    pub fn new(entries: [[Rat; 3]; 3]) -> Result<Self> {
        let det = det3(&entries);
        if det.is_zero() {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        Ok(GL3Matrix { entries, det })
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        let entries = rows.map(|r| r.map(crate::rat_int));
        Self::new(entries)
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn scalar(lambda: &Rat) -> Result<Self> {
        let z = Rat::zero;
        Self::new([
            [lambda.clone(), z(), z()],
            [z(), lambda.clone(), z()],
            [z(), z(), lambda.clone()],
        ])
    }

    pub fn det(&self) -> &Rat {
        &self.det
    }

    pub fn entries(&self) -> &[[Rat; 3]; 3] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: [[Rat; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Rat::zero();
                for k in 0..3 {
                    acc += &self.entries[i][k] * &other.entries[k][j];
                }
                out[i][j] = acc;
            }
        }
        GL3Matrix { det: &self.det * &other.det, entries: out }
    }

    /// Inverse via the adjugate; exact.
    pub fn inverse(&self) -> Self {
        let e = &self.entries;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| -> Rat {
            &e[r0][c0] * &e[r1][c1] - &e[r0][c1] * &e[r1][c0]
        };
        let mut adj: [[Rat; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (c0, c1) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let sign = if (i + j) % 2 == 0 { Rat::one() } else { -Rat::one() };
                adj[i][j] = sign * cof(r0, r1, c0, c1);
            }
        }
        let inv_det = Rat::one() / &self.det;
        let entries = adj.map(|row| row.map(|x| x * &inv_det));
        GL3Matrix { entries, det: Rat::one() / &self.det }
    }

    /// Apply the left regular representation: returns x -> F(u^{-1} x).
    pub fn act(&self, form: &TernaryForm) -> TernaryForm {
        let inv = self.inverse();
        substitute_linear(form, &inv.entries)
    }

    /// The substitution x -> F(u x) (the inverse of `act`). Under this
    /// direction the discriminant transforms with det(u)^{+36} for quartics.
    pub fn compose(&self, form: &TernaryForm) -> TernaryForm {
        substitute_linear(form, &self.entries)
    }
}

/// Substitute x_i -> sum_j m[i][j] x_j into the form and expand.
fn substitute_linear(form: &TernaryForm, m: &[[Rat; 3]; 3]) -> TernaryForm {
    let d = form.degree();
    let lin: Vec<TernaryForm> = (0..3)
        .map(|i| {
            TernaryForm::new(
                1,
                [
                    ((1, 0, 0), m[i][0].clone()),
                    ((0, 1, 0), m[i][1].clone()),
                    ((0, 0, 1), m[i][2].clone()),
                ],
            )
            .unwrap()
        })
        .collect();
    // cache powers of each substituted linear form up to the degree
    let mut pows: Vec<Vec<TernaryForm>> = Vec::with_capacity(3);
    for l in &lin {
        let mut p = vec![TernaryForm::monomial(0, (0, 0, 0), Rat::one()).unwrap()];
        for k in 1..=d {
            let next = p[(k - 1) as usize].mul(l);
            p.push(next);
        }
        pows.push(p);
    }
    let mut out = TernaryForm::zero(d);
    for (&(i, j, k), c) in form.terms().map(|(e, c)| (e, c)) {
        let term = pows[0][i as usize].mul(&pows[1][j as usize]).mul(&pows[2][k as usize]);
        out = out.add(&term.scale(c)).unwrap();
    }
    out
}

fn det3(e: &[[Rat; 3]; 3]) -> Rat {
    &e[0][0] * (&e[1][1] * &e[2][2] - &e[1][2] * &e[2][1])
        - &e[0][1] * (&e[1][0] * &e[2][2] - &e[1][2] * &e[2][0])
        + &e[0][2] * (&e[1][0] * &e[2][1] - &e[1][1] * &e[2][0])
}

/// Deterministic unimodular matrices (products of elementary shears), used to
/// perturb coordinates when a Macaulay minor degenerates. det = 1 always.
pub fn unimodular_sequence(seed: u64, steps: usize) -> GL3Matrix {
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut m = GL3Matrix::identity();
    for _ in 0..steps {
        let r = next();
        let i = (r % 3) as usize;
        let j = ((r / 3) % 3) as usize;
        if i == j {
            continue;
        }
        let amt = 1 + ((r / 9) % 2) as i64;
        let sign = if (r / 18) % 2 == 0 { 1 } else { -1 };
        let mut rows = [[0i64; 3]; 3];
        for (k, row) in rows.iter_mut().enumerate() {
            row[k] = 1;
        }
        rows[i][j] = sign * amt;
        m = m.mul(&GL3Matrix::from_i64(rows).unwrap());
    }
    m
}
