//! Dense complex matrices of small dimension (g <= 4 in practice).
//!
//! Gaussian elimination with partial pivoting is entirely adequate here; the
//! matrices are tiny and the working precision generous.

use crate::{cabs, norm_sq, Prec};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

#[derive(Clone, Debug)]
pub struct CMat {
    pub n: usize,
    pub prec: Prec,
    data: Vec<Complex>,
}

impl CMat {
    pub fn zero(n: usize, prec: Prec) -> Self {
        let data = vec![Complex::with_val(prec, (0, 0)); n * n];
        CMat { n, prec, data }
    }

    pub fn identity(n: usize, prec: Prec) -> Self {
        let mut m = Self::zero(n, prec);
        for i in 0..n {
            *m.at_mut(i, i) = Complex::with_val(prec, (1, 0));
        }
        m
    }

    pub fn from_fn(n: usize, prec: Prec, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zero(n, prec);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Complex {
        &self.data[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex {
        &mut self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| {
            (self.at(i, j) + o.at(i, j)).complete((self.prec, self.prec))
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| {
            (self.at(i, j) - o.at(i, j)).complete((self.prec, self.prec))
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, self.prec, |i, j| {
            let mut acc = Complex::with_val(self.prec, (0, 0));
            for k in 0..n {
                acc += (self.at(i, k) * o.at(k, j)).complete((self.prec, self.prec));
            }
            acc
        })
    }

    pub fn scale(&self, s: &Complex) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| {
            (self.at(i, j) * s).complete((self.prec, self.prec))
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| (-self.at(i, j)).complete((self.prec, self.prec)))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> Float {
        let mut best = Float::with_val(self.prec, 0);
        for z in &self.data {
            let a = cabs(z);
            if a > best {
                best = a;
            }
        }
        best
    }

    /// max_ij |self - self^t|_ij, the symmetry residual.
    pub fn asymmetry(&self) -> Float {
        let mut best = Float::with_val(self.prec, 0);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = (self.at(i, j) - self.at(j, i)).complete((self.prec, self.prec));
                let a = cabs(&d);
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// (self + self^t) / 2.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, self.prec, |i, j| {
            let mut s = (self.at(i, j) + self.at(j, i)).complete((self.prec, self.prec));
            s /= 2u32;
            s
        })
    }

    pub fn det(&self) -> Complex {
        let n = self.n;
        let mut a = self.data.clone();
        let prec = self.prec;
        let mut det = Complex::with_val(prec, (1, 0));
        for k in 0..n {
            // partial pivot on |.|^2
            let mut piv = k;
            let mut best = norm_sq(&a[k * n + k]);
            for r in (k + 1)..n {
                let m = norm_sq(&a[r * n + k]);
                if m > best {
                    best = m;
                    piv = r;
                }
            }
            if best == 0 {
                return Complex::with_val(prec, (0, 0));
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            for r in (k + 1)..n {
                let factor = (&a[r * n + k] / &pivot).complete((prec, prec));
                for j in k..n {
                    let sub = (&factor * &a[k * n + j]).complete((prec, prec));
                    a[r * n + j] -= sub;
                }
            }
        }
        det
    }

    /// Solve self * X = B for X (B given column-wise as a matrix).
    /// Returns `None` when a pivot vanishes to working precision.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        let n = self.n;
        let prec = self.prec;
        let mut a = self.data.clone();
        let mut x = b.data.clone();
        for k in 0..n {
            let mut piv = k;
            let mut best = norm_sq(&a[k * n + k]);
            for r in (k + 1)..n {
                let m = norm_sq(&a[r * n + k]);
                if m > best {
                    best = m;
                    piv = r;
                }
            }
            if best == 0 {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                    x.swap(k * n + j, piv * n + j);
                }
            }
            let pivot = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] /= &pivot;
                x[k * n + j] /= &pivot;
            }
            for r in 0..n {
                if r == k {
                    continue;
                }
                let factor = a[r * n + k].clone();
                if factor == 0u32 {
                    continue;
                }
                for j in 0..n {
                    let s = (&factor * &a[k * n + j]).complete((prec, prec));
                    a[r * n + j] -= s;
                    let s = (&factor * &x[k * n + j]).complete((prec, prec));
                    x[r * n + j] -= s;
                }
            }
        }
        Some(CMat { n, prec, data: x })
    }

    pub fn inverse(&self) -> Option<CMat> {
        self.solve(&CMat::identity(self.n, self.prec))
    }

    /// Real part as a new matrix (imaginary parts zeroed).
    pub fn real_part(&self) -> CMat {
        CMat::from_fn(self.n, self.prec, |i, j| {
            Complex::with_val(self.prec, (self.at(i, j).real(), &Float::with_val(self.prec, 0)))
        })
    }

    pub fn imag_part(&self) -> CMat {
        CMat::from_fn(self.n, self.prec, |i, j| {
            Complex::with_val(self.prec, (self.at(i, j).imag(), &Float::with_val(self.prec, 0)))
        })
    }

    /// Cholesky-style LDL^t positive definiteness test of the real symmetric
    /// matrix stored in the real parts. Returns the smallest pivot (a cheap
    /// definiteness certificate, not the smallest eigenvalue).
    pub fn posdef_min_pivot(&self) -> Option<Float> {
        let n = self.n;
        let prec = self.prec;
        let mut a: Vec<Float> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(Float::with_val(prec, self.at(i, j).real()));
            }
        }
        let mut min_piv: Option<Float> = None;
        for k in 0..n {
            let piv = a[k * n + k].clone();
            if piv <= 0 {
                return None;
            }
            if min_piv.as_ref().map_or(true, |m| piv < *m) {
                min_piv = Some(piv.clone());
            }
            for r in (k + 1)..n {
                let f = (&a[r * n + k] / &piv).complete(prec);
                for j in k..n {
                    let s = (&f * &a[k * n + j]).complete(prec);
                    a[r * n + j] -= s;
                }
            }
        }
        min_piv
    }

    /// Rigorous lower bound for the smallest eigenvalue of the real symmetric
    /// positive definite matrix in the real parts:
    /// lambda_min >= 1 / ||Y^{-1}||_inf.
    pub fn sym_min_eig_lower_bound(&self) -> Option<f64> {
        let inv = self.real_part().inverse()?;
        let mut norm = 0f64;
        for i in 0..self.n {
            let mut row = 0f64;
            for j in 0..self.n {
                row += cabs(inv.at(i, j)).to_f64();
            }
            norm = norm.max(row);
        }
        if norm <= 0.0 || !norm.is_finite() {
            return None;
        }
        Some(1.0 / norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: Prec, re: f64, im: f64) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    #[test]
    fn inverse_round_trip() {
        let p = 128;
        let m = CMat::from_fn(3, p, |i, j| c(p, (i * 3 + j) as f64 + if i == j { 5.0 } else { 0.0 }, 0.3 * (i as f64 - j as f64)));
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        let id = CMat::identity(3, p);
        assert!(prod.sub(&id).max_abs().to_f64() < 1e-30);
    }

    #[test]
    fn det_of_triangularizable() {
        let p = 96;
        let mut m = CMat::identity(2, p);
        *m.at_mut(0, 0) = c(p, 2.0, 0.0);
        *m.at_mut(0, 1) = c(p, 7.0, 1.0);
        *m.at_mut(1, 1) = c(p, 3.0, 0.0);
        let d = m.det();
        assert!((Float::with_val(p, d.real() - 6i32)).abs().to_f64() < 1e-25);
    }

    #[test]
    fn posdef_detects_signature() {
        let p = 96;
        let mut y = CMat::identity(2, p);
        assert!(y.posdef_min_pivot().is_some());
        *y.at_mut(0, 0) = c(p, -1.0, 0.0);
        assert!(y.posdef_min_pivot().is_none());
    }
}
