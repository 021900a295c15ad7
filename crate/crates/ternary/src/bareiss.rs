//! Fraction-free determinants (Bareiss elimination).

use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss' fraction-free
/// elimination. All intermediate divisions are exact.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Determinant of a square rational matrix: clear denominators per row, run
/// the integer Bareiss elimination, divide back out.
pub fn det_rational(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = BigInt::one();
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let mut l = BigInt::one();
        for x in row {
            l = l.lcm(x.denom());
        }
        let ints = row
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect::<Vec<_>>();
        scale *= &l;
        int_rows.push(ints);
    }
    let d = det_bigint(int_rows);
    Rat::new(d, scale)
}
