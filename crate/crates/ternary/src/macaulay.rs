//! The multivariate resultant of three ternary forms via Macaulay matrices.
//!
//! For forms f1, f2, f3 of degrees d1, d2, d3 the Macaulay matrix M is built
//! in total degree t = d1 + d2 + d3 - 2; classical elimination theory gives
//! det M = Res(f1,f2,f3) * det M', where M' is the minor on the non-reduced
//! monomials (those divisible by x_i^{d_i} for at least two i). Both
//! determinants are computed fraction-free. The result is normalized by the
//! value of the same quotient at (x^d1, y^d2, z^d3), so the normalization
//! Res(x^d1, y^d2, z^d3) = 1 holds whatever minor convention is in force.
//!
//! When det M' vanishes for a particular coefficient vector (the minor is a
//! polynomial that can vanish even when the resultant does not), the forms
//! are pulled back along a unimodular change of variables, which leaves the
//! resultant unchanged, and the quotient is retried.

use crate::form::{Expo, TernaryForm};
use crate::gl3::unimodular_sequence;
use crate::{bareiss, Error, Rat, Result};
use num_traits::Zero;
use std::collections::HashMap;

const MAX_PERTURBATIONS: u64 = 24;

fn monomials_of_degree(t: u32) -> Vec<Expo> {
    TernaryForm::monomial_basis(t)
}

/// det M / det M' for one coefficient vector; `None` when det M' = 0.
fn raw_quotient(fs: [&TernaryForm; 3]) -> Option<Rat> {
    let degs = [fs[0].degree(), fs[1].degree(), fs[2].degree()];
    let t = degs[0] + degs[1] + degs[2] - 2;
    let monos = monomials_of_degree(t);
    let index: HashMap<Expo, usize> = monos.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let dim = monos.len();

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    let mut nonreduced: Vec<usize> = Vec::new();
    for (r, &alpha) in monos.iter().enumerate() {
        let a = [alpha.0, alpha.1, alpha.2];
        let hits: Vec<usize> = (0..3).filter(|&i| a[i] >= degs[i]).collect();
        debug_assert!(!hits.is_empty());
        if hits.len() >= 2 {
            nonreduced.push(r);
        }
        let i = hits[0];
        let mut mu = a;
        mu[i] -= degs[i];
        let mut row = vec![Rat::zero(); dim];
        for (&(b0, b1, b2), c) in fs[i].terms() {
            let col = (mu[0] + b0, mu[1] + b1, mu[2] + b2);
            row[index[&col]] = c.clone();
        }
        rows.push(row);
    }

    let minor: Vec<Vec<Rat>> = nonreduced
        .iter()
        .map(|&r| nonreduced.iter().map(|&c| rows[r][c].clone()).collect())
        .collect();
    let det_minor = bareiss::det_rational(&minor);
    if det_minor.is_zero() {
        return None;
    }
    let det_full = bareiss::det_rational(&rows);
    Some(det_full / det_minor)
}

fn monomial_system(degs: [u32; 3]) -> [TernaryForm; 3] {
    [
        TernaryForm::monomial(degs[0], (degs[0], 0, 0), Rat::from_integer(1.into())).unwrap(),
        TernaryForm::monomial(degs[1], (0, degs[1], 0), Rat::from_integer(1.into())).unwrap(),
        TernaryForm::monomial(degs[2], (0, 0, degs[2]), Rat::from_integer(1.into())).unwrap(),
    ]
}

/// The normalized multivariate resultant Res(f1, f2, f3).
///
/// Vanishes exactly when the three forms share a common nonzero root over the
/// algebraic closure; Res(x^d1, y^d2, z^d3) = 1.
pub fn macaulay_resultant(f1: &TernaryForm, f2: &TernaryForm, f3: &TernaryForm) -> Result<Rat> {
    for f in [f1, f2, f3] {
        if f.is_zero() {
            return Err(Error::InvalidInput("resultant of a zero form".into()));
        }
        if f.degree() < 1 {
            return Err(Error::InvalidInput("resultant requires degrees >= 1".into()));
        }
    }
    let degs = [f1.degree(), f2.degree(), f3.degree()];
    let monos = monomial_system(degs);
    let norm = raw_quotient([&monos[0], &monos[1], &monos[2]])
        .ok_or_else(|| Error::Internal("degenerate Macaulay minor on the monomial system".into()))?;

    if let Some(q) = raw_quotient([f1, f2, f3]) {
        return Ok(q / norm);
    }
    // det M' vanished: pull back along unimodular coordinate changes
    // (det = 1, so the resultant itself is unchanged).
    for seed in 0..MAX_PERTURBATIONS {
        let u = unimodular_sequence(seed.wrapping_add(0xC0FFEE), 6);
        let gs = [u.act(f1), u.act(f2), u.act(f3)];
        if let Some(q) = raw_quotient([&gs[0], &gs[1], &gs[2]]) {
            return Ok(q / norm);
        }
    }
    Err(Error::Internal(
        "Macaulay minor degenerate for all attempted coordinate changes".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, rat_pow};

    fn mono(d: u32, e: Expo, c: i64) -> TernaryForm {
        TernaryForm::monomial(d, e, rat_int(c)).unwrap()
    }

    #[test]
    fn normalization_linear() {
        let x = mono(1, (1, 0, 0), 1);
        let y = mono(1, (0, 1, 0), 1);
        let z = mono(1, (0, 0, 1), 1);
        assert_eq!(macaulay_resultant(&x, &y, &z).unwrap(), rat_int(1));
    }

    #[test]
    fn normalization_mixed_degrees() {
        let f1 = mono(2, (2, 0, 0), 1);
        let f2 = mono(3, (0, 3, 0), 1);
        let f3 = mono(4, (0, 0, 4), 1);
        assert_eq!(macaulay_resultant(&f1, &f2, &f3).unwrap(), rat_int(1));
    }

    #[test]
    fn fermat_partials() {
        // Res(4x^3, 4y^3, 4z^3) = 4^(9+9+9) = 2^54
        let q1 = mono(3, (3, 0, 0), 4);
        let q2 = mono(3, (0, 3, 0), 4);
        let q3 = mono(3, (0, 0, 3), 4);
        let r = macaulay_resultant(&q1, &q2, &q3).unwrap();
        assert_eq!(r, rat_pow(&rat_int(2), 54));
    }

    #[test]
    fn multihomogeneity_in_first_argument() {
        // scaling f1 by c multiplies the resultant by c^(d2*d3)
        let f1 = TernaryForm::new(
            2,
            [((2, 0, 0), rat_int(1)), ((0, 1, 1), rat_int(3)), ((0, 0, 2), rat_int(-1))],
        )
        .unwrap();
        let f2 = TernaryForm::new(
            1,
            [((1, 0, 0), rat_int(2)), ((0, 1, 0), rat_int(1))],
        )
        .unwrap();
        let f3 = TernaryForm::new(
            1,
            [((0, 1, 0), rat_int(1)), ((0, 0, 1), rat_int(5))],
        )
        .unwrap();
        let base = macaulay_resultant(&f1, &f2, &f3).unwrap();
        let scaled = macaulay_resultant(&f1.scale(&rat_int(7)), &f2, &f3).unwrap();
        assert_eq!(scaled, base * rat_int(7)); // d2*d3 = 1
    }

    #[test]
    fn common_root_vanishes() {
        // all three vanish at (0:0:1)
        let f1 = mono(1, (1, 0, 0), 1);
        let f2 = mono(1, (0, 1, 0), 1);
        let f3 = TernaryForm::new(
            1,
            [((1, 0, 0), rat_int(1)), ((0, 1, 0), rat_int(-2))],
        )
        .unwrap();
        assert_eq!(macaulay_resultant(&f1, &f2, &f3).unwrap(), rat_int(0));
    }

    #[test]
    fn zero_form_rejected() {
        let z4 = TernaryForm::zero(4);
        let x = mono(1, (1, 0, 0), 1);
        let y = mono(1, (0, 1, 0), 1);
        assert!(macaulay_resultant(&z4, &x, &y).is_err());
    }
}
