//! The Siegel upper half space and the integer symplectic group action.

use crate::{Error, Result};
use mpnum::{cabs, CMat, Prec};
use rug::ops::Pow;
use rug::{Complex, Float};

/// A point tau of the Siegel space H_g: symmetric g x g complex matrix with
/// positive definite imaginary part, held at a working precision.
///
/// The stored matrix is exactly symmetrized; the asymmetry of the input is
/// kept as a residual for diagnostics.
#[derive(Clone, Debug)]
pub struct SiegelPoint {
    pub g: usize,
    pub prec: Prec,
    tau: CMat,
    asym_residual: Float,
    /// Rigorous lower bound for the smallest eigenvalue of Im tau.
    min_eig_lb: f64,
}

impl SiegelPoint {
    /// Strict constructor: requires symmetry to working precision,
    /// |tau - tau^t| <= 2^{-p+8} * max(1, |tau|).
    pub fn new(tau: CMat) -> Result<Self> {
        let p = tau.prec;
        let scale = tau.max_abs().max(&Float::with_val(p, 1));
        let tol = scale * mpnum::float_exp2(p, -(p as f64) + 8.0);
        Self::with_symmetry_tolerance(tau, &tol)
    }

    /// Constructor for matrices of limited provenance (e.g. double-precision
    /// period computations): accepts asymmetry up to `tol`, then symmetrizes.
    pub fn with_symmetry_tolerance(tau: CMat, tol: &Float) -> Result<Self> {
        let g = tau.n;
        let asym = tau.asymmetry();
        if asym > *tol {
            return Err(Error::NotSymmetric(asym.to_f64().log2()));
        }
        let tau = tau.symmetrized();
        let im = tau.imag_part();
        if im.posdef_min_pivot().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let min_eig_lb = im.sym_min_eig_lower_bound().ok_or(Error::NotPositiveDefinite)?;
        Ok(SiegelPoint { g, prec: tau.prec, tau, asym_residual: asym, min_eig_lb })
    }

    pub fn tau(&self) -> &CMat {
        &self.tau
    }

    pub fn asym_residual(&self) -> &Float {
        &self.asym_residual
    }

    pub fn min_eig_lower_bound(&self) -> f64 {
        self.min_eig_lb
    }

    /// i * identity, the standard base point.
    pub fn i_identity(g: usize, prec: Prec) -> Self {
        let mut m = CMat::zero(g, prec);
        for k in 0..g {
            *m.at_mut(k, k) = Complex::with_val(prec, (0, 1));
        }
        Self::new(m).unwrap()
    }

    /// Block-diagonal join diag(tau1, tau2).
    pub fn block_diag(a: &SiegelPoint, b: &SiegelPoint) -> Self {
        let prec = a.prec.max(b.prec);
        let g = a.g + b.g;
        let m = CMat::from_fn(g, prec, |i, j| {
            if i < a.g && j < a.g {
                a.tau.at(i, j).clone()
            } else if i >= a.g && j >= a.g {
                b.tau.at(i - a.g, j - a.g).clone()
            } else {
                Complex::with_val(prec, (0, 0))
            }
        });
        Self::new(m).unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.g)
            .map(|i| {
                let row: Vec<serde_json::Value> = (0..self.g)
                    .map(|j| {
                        let (re, im) = mpnum::complex_to_dec_pair(self.tau.at(i, j));
                        serde_json::json!([re, im])
                    })
                    .collect();
                serde_json::Value::Array(row)
            })
            .collect();
        serde_json::json!({ "g": self.g, "tau": rows })
    }

    /// Accepts {"g": g, "tau": [[[re,im],...]]} or a bare 2D array.
    pub fn from_json(v: &serde_json::Value, prec: Prec) -> Result<Self> {
        let rows = v
            .get("tau")
            .or(Some(v))
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::InvalidInput("expected a tau matrix".into()))?;
        let g = rows.len();
        let mut m = CMat::zero(g, prec);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == g)
                .ok_or_else(|| Error::InvalidInput("tau must be square".into()))?;
            for (j, cell) in row.iter().enumerate() {
                let pair = cell
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::InvalidInput("entries must be [re, im]".into()))?;
                let (re, im) = (pair[0].as_str(), pair[1].as_str());
                let (re, im) = match (re, im) {
                    (Some(a), Some(b)) => (a.to_string(), b.to_string()),
                    // tolerate bare numbers
                    _ => (pair[0].to_string(), pair[1].to_string()),
                };
                *m.at_mut(i, j) = mpnum::complex_from_dec_pair(prec, &re, &im)
                    .map_err(Error::InvalidInput)?;
            }
        }
        // inputs arrive with serialization-level asymmetry; accept anything
        // below a coarse relative threshold, then symmetrize
        let scale = m.max_abs().max(&Float::with_val(prec, 1));
        let tol = scale * mpnum::float_exp2(prec, -(prec as f64).min(40.0));
        Self::with_symmetry_tolerance(m, &tol)
    }
}

/// An element of Sp(2g, Z) in block form [[a, b], [c, d]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMatrix {
    pub g: usize,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
}

fn mat_mul(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j]
                    .checked_add(x[i][k].checked_mul(y[k][j]).expect("symplectic overflow"))
                    .expect("symplectic overflow");
            }
        }
    }
    out
}

fn mat_tr(x: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| x[j][i]).collect()).collect()
}

fn mat_sub(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    x.iter()
        .zip(y)
        .map(|(r, s)| r.iter().zip(s).map(|(&a, &b)| a - b).collect())
        .collect()
}

fn mat_add(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    x.iter()
        .zip(y)
        .map(|(r, s)| r.iter().zip(s).map(|(&a, &b)| a + b).collect())
        .collect()
}

fn is_zero(x: &[Vec<i64>]) -> bool {
    x.iter().all(|r| r.iter().all(|&v| v == 0))
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl SymplecticMatrix {
    /// Validates M^t J M = J exactly.
    pub fn new(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>, c: Vec<Vec<i64>>, d: Vec<Vec<i64>>) -> Result<Self> {
        let g = a.len();
        for m in [&a, &b, &c, &d] {
            if m.len() != g || m.iter().any(|r| r.len() != g) {
                return Err(Error::InvalidInput("ragged symplectic blocks".into()));
            }
        }
        let m = SymplecticMatrix { g, a, b, c, d };
        if !m.is_symplectic() {
            return Err(Error::InvalidInput("M^t J M != J".into()));
        }
        Ok(m)
    }

    /// M^t J M = J in block terms: a^t c = c^t a, b^t d = d^t b,
    /// a^t d - c^t b = I.
    pub fn is_symplectic(&self) -> bool {
        let atc = mat_mul(&mat_tr(&self.a), &self.c);
        let btd = mat_mul(&mat_tr(&self.b), &self.d);
        let atd = mat_mul(&mat_tr(&self.a), &self.d);
        let ctb = mat_mul(&mat_tr(&self.c), &self.b);
        is_zero(&mat_sub(&atc, &mat_tr(&atc)))
            && is_zero(&mat_sub(&btd, &mat_tr(&btd)))
            && mat_sub(&atd, &ctb) == identity(self.g)
    }

    pub fn identity_matrix(g: usize) -> Self {
        let z = vec![vec![0; g]; g];
        Self::new(identity(g), z.clone(), z, identity(g)).unwrap()
    }

    /// The inversion generator [[0, -I], [I, 0]].
    pub fn inversion(g: usize) -> Self {
        let z = vec![vec![0i64; g]; g];
        let mut mi = identity(g);
        for r in mi.iter_mut() {
            for v in r.iter_mut() {
                *v = -*v;
            }
        }
        Self::new(z.clone(), mi, identity(g), z).unwrap()
    }

    /// Translation [[I, B], [0, I]] for symmetric integer B.
    pub fn translation(bmat: Vec<Vec<i64>>) -> Result<Self> {
        let g = bmat.len();
        if bmat != mat_tr(&bmat) {
            return Err(Error::InvalidInput("translation block must be symmetric".into()));
        }
        let z = vec![vec![0; g]; g];
        Self::new(identity(g), bmat, z, identity(g))
    }

    /// GL embedding [[U, 0], [0, U^{-t}]] for unimodular U (U^{-t} passed in).
    pub fn gl_embed(u: Vec<Vec<i64>>, u_inv_t: Vec<Vec<i64>>) -> Result<Self> {
        let g = u.len();
        let z = vec![vec![0; g]; g];
        Self::new(u, z.clone(), z, u_inv_t)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let na = mat_add(&mat_mul(&self.a, &o.a), &mat_mul(&self.b, &o.c));
        let nb = mat_add(&mat_mul(&self.a, &o.b), &mat_mul(&self.b, &o.d));
        let nc = mat_add(&mat_mul(&self.c, &o.a), &mat_mul(&self.d, &o.c));
        let nd = mat_add(&mat_mul(&self.c, &o.b), &mat_mul(&self.d, &o.d));
        Self::new(na, nb, nc, nd).expect("product of symplectic matrices is symplectic")
    }

    fn block_to_cmat(block: &[Vec<i64>], prec: Prec) -> CMat {
        let g = block.len();
        CMat::from_fn(g, prec, |i, j| Complex::with_val(prec, (block[i][j], 0)))
    }

    /// The cocycle j(M, tau) = c tau + d.
    pub fn cocycle(&self, tau: &SiegelPoint) -> CMat {
        let prec = tau.prec;
        let c = Self::block_to_cmat(&self.c, prec);
        let d = Self::block_to_cmat(&self.d, prec);
        c.mul(tau.tau()).add(&d)
    }

    /// M.tau = (a tau + b)(c tau + d)^{-1}; also returns det j(M, tau).
    pub fn apply(&self, tau: &SiegelPoint) -> Result<(SiegelPoint, Complex)> {
        let prec = tau.prec;
        let n = self.cocycle(tau);
        let det_j = n.det();
        // conditioning guard: reject a cocycle whose determinant has lost
        // more than half the working bits relative to its entries
        let scale = n.max_abs().max(&Float::with_val(prec, 1));
        let mut floor = Float::with_val(prec, scale);
        floor = floor.pow(self.g as u32);
        floor *= mpnum::float_exp2(prec, -(prec as f64) / 2.0);
        if cabs(&det_j) < floor {
            return Err(Error::IllConditioned);
        }
        let a = Self::block_to_cmat(&self.a, prec);
        let b = Self::block_to_cmat(&self.b, prec);
        let num = a.mul(tau.tau()).add(&b);
        // (num) * n^{-1} via n^t x^t = num^t
        let xt = n
            .transpose()
            .solve(&num.transpose())
            .ok_or(Error::IllConditioned)?;
        let new_tau = xt.transpose();
        let scale2 = new_tau.max_abs().max(&Float::with_val(prec, 1));
        let tol = scale2 * mpnum::float_exp2(prec, -(prec as f64) / 2.0);
        let pt = SiegelPoint::with_symmetry_tolerance(new_tau, &tol)?;
        Ok((pt, det_j))
    }
}

/// Deterministic generic Siegel points for tests.
pub mod tests_support {
    use super::*;

    /// A fixed symmetric tau with positive definite imaginary part and no
    /// block structure.
    pub fn generic_tau(prec: Prec) -> SiegelPoint {
        let re = [[0.11, -0.07, 0.23], [-0.07, 0.05, -0.31], [0.23, -0.31, 0.17]];
        let im = [[1.13, 0.21, -0.14], [0.21, 0.97, 0.25], [-0.14, 0.25, 1.31]];
        let m = CMat::from_fn(3, prec, |i, j| Complex::with_val(prec, (re[i][j], im[i][j])));
        SiegelPoint::new(m).unwrap()
    }
}
