//! The Ciani family: quartics F_m(x,y,z) = G_m(x^2, y^2, z^2) attached to a
//! symmetric 3x3 matrix m, with a closed-form discriminant.

use crate::form::TernaryForm;
use crate::{rat_int, rat_pow, Rat};
use num_traits::One;
#[cfg(test)]
use num_traits::Zero;

/// Symmetric matrix
/// ```text
///   [ a1 b3 b2 ]
///   [ b3 a2 b1 ]
///   [ b2 b1 a3 ]
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CianiMatrix {
    pub a: [Rat; 3],
    pub b: [Rat; 3],
}

impl CianiMatrix {
    pub fn new(a: [Rat; 3], b: [Rat; 3]) -> Self {
        CianiMatrix { a, b }
    }

    pub fn from_i64(a: [i64; 3], b: [i64; 3]) -> Self {
        Self::new(a.map(rat_int), b.map(rat_int))
    }

    pub fn identity() -> Self {
        Self::from_i64([1, 1, 1], [0, 0, 0])
    }

    /// Cofactor c_i = a_j a_k - b_i^2 for {i,j,k} = {1,2,3}.
    pub fn cofactor(&self, i: usize) -> Rat {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        &self.a[j] * &self.a[k] - &self.b[i] * &self.b[i]
    }

    pub fn det(&self) -> Rat {
        let [a1, a2, a3] = &self.a;
        let [b1, b2, b3] = &self.b;
        a1 * a2 * a3 + rat_int(2) * b1 * b2 * b3 - a1 * b1 * b1 - a2 * b2 * b2 - a3 * b3 * b3
    }

    /// The quartic a1 x^4 + a2 y^4 + a3 z^4 + 2(b1 y^2z^2 + b2 x^2z^2 + b3 x^2y^2).
    pub fn form(&self) -> TernaryForm {
        let two = rat_int(2);
        TernaryForm::new(
            4,
            [
                ((4, 0, 0), self.a[0].clone()),
                ((0, 4, 0), self.a[1].clone()),
                ((0, 0, 4), self.a[2].clone()),
                ((0, 2, 2), &two * &self.b[0]),
                ((2, 0, 2), &two * &self.b[1]),
                ((2, 2, 0), &two * &self.b[2]),
            ],
        )
        .unwrap()
    }

    /// Closed-form discriminant 2^40 a1 a2 a3 (c1 c2 c3)^2 det(m)^4.
    pub fn discriminant(&self) -> Rat {
        let mut prod = rat_pow(&rat_int(2), 40);
        for a in &self.a {
            prod *= a;
        }
        let mut cs = Rat::one();
        for i in 0..3 {
            cs *= self.cofactor(i);
        }
        prod * rat_pow(&cs, 2) * rat_pow(&self.det(), 4)
    }
}

/// Convenience free functions mirroring the operation names.
pub fn ciani_form(m: &CianiMatrix) -> TernaryForm {
    m.form()
}

pub fn ciani_discriminant(m: &CianiMatrix) -> Rat {
    m.discriminant()
}
