//! Period matrix assembly: orchestrates monodromy, homology, integration,
//! chooses the column convention placing tau in the Siegel space, and
//! validates the Riemann relations.

use crate::cf::{C64Ctx, MpCtx, CF};
use crate::curve::AffineCurve;
use crate::homology::homology_basis;
use crate::integrate::integrate_cycles;
use crate::monodromy::{monodromy, MonodromyData};
use crate::{Error, Result};
use mpnum::CMat;
use rug::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionMode {
    /// Double-precision tracking and quadrature (default).
    Double,
    /// Arbitrary-precision re-integration along the same certified paths.
    High(u32),
}

impl PrecisionMode {
    fn working_prec(&self) -> u32 {
        match self {
            PrecisionMode::Double => 64,
            PrecisionMode::High(p) => p + 32,
        }
    }

    fn gl_order(&self) -> usize {
        match self {
            PrecisionMode::Double => 40,
            PrecisionMode::High(p) => ((*p as f64 + 64.0) / 2.6).ceil() as usize,
        }
    }

    fn symmetry_tolerance(&self) -> f64 {
        match self {
            PrecisionMode::Double => 1e-9,
            PrecisionMode::High(p) => 2f64.powf(-(*p as f64) / 2.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub genus: usize,
    pub sheet_count: usize,
    pub branch_count: usize,
    pub rh_deficiency: usize,
    pub rh_expected: usize,
    pub product_identity: bool,
    pub transitive: bool,
    pub symmetry_residual: f64,
    pub min_eig_im_tau: f64,
    /// max |Omega(n_gl) - Omega(n_gl + 12)| from the verification pass.
    pub quadrature_residual: f64,
}

#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub g: usize,
    pub prec: u32,
    pub omega1: CMat,
    pub omega2: CMat,
    /// tau = Omega2^{-1} Omega1, exactly symmetrized.
    pub tau: CMat,
    pub diagnostics: Diagnostics,
}

impl PeriodMatrix {
    pub fn det_omega2(&self) -> Complex {
        self.omega2.det()
    }

    pub fn scale_rows(&self, factor: &Complex) -> PeriodMatrix {
        let o1 = self.omega1.scale(factor);
        let o2 = self.omega2.scale(factor);
        // tau is unchanged by row scaling
        PeriodMatrix {
            g: self.g,
            prec: self.prec,
            omega1: o1,
            omega2: o2,
            tau: self.tau.clone(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    /// Apply an invertible complex matrix to the rows (a change of the
    /// differential basis).
    pub fn transform_rows(&self, m: &CMat) -> PeriodMatrix {
        PeriodMatrix {
            g: self.g,
            prec: self.prec,
            omega1: m.mul(&self.omega1),
            omega2: m.mul(&self.omega2),
            tau: self.tau.clone(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat = |m: &CMat| -> serde_json::Value {
            let rows: Vec<serde_json::Value> = (0..m.n)
                .map(|i| {
                    (0..m.n)
                        .map(|j| {
                            let (re, im) = mpnum::complex_to_dec_pair(m.at(i, j));
                            serde_json::json!([re, im])
                        })
                        .collect()
                })
                .collect();
            serde_json::Value::Array(rows)
        };
        serde_json::json!({
            "g": self.g,
            "Omega1": mat(&self.omega1),
            "Omega2": mat(&self.omega2),
            "tau": mat(&self.tau),
            "diagnostics": {
                "genus": self.diagnostics.genus,
                "sheets": self.diagnostics.sheet_count,
                "branch_points": self.diagnostics.branch_count,
                "rh_check": {
                    "deficiency": self.diagnostics.rh_deficiency,
                    "expected": self.diagnostics.rh_expected,
                },
                "product_identity": self.diagnostics.product_identity,
                "transitive": self.diagnostics.transitive,
                "symmetry_residual": self.diagnostics.symmetry_residual,
                "min_eig_im_tau": self.diagnostics.min_eig_im_tau,
                "quadrature_residual": self.diagnostics.quadrature_residual,
            }
        })
    }

    pub fn from_json(v: &serde_json::Value, prec: u32) -> Result<PeriodMatrix> {
        let read = |key: &str| -> Result<CMat> {
            let rows = v
                .get(key)
                .and_then(|r| r.as_array())
                .ok_or_else(|| Error::InvalidInput(format!("missing '{key}'")))?;
            let g = rows.len();
            let mut m = CMat::zero(g, prec);
            for (i, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == g)
                    .ok_or_else(|| Error::InvalidInput("matrix must be square".into()))?;
                for (j, cell) in row.iter().enumerate() {
                    let pair = cell
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::InvalidInput("entries must be [re, im]".into()))?;
                    let as_str = |x: &serde_json::Value| match x.as_str() {
                        Some(s) => s.to_string(),
                        None => x.to_string(),
                    };
                    *m.at_mut(i, j) =
                        mpnum::complex_from_dec_pair(prec, &as_str(&pair[0]), &as_str(&pair[1]))
                            .map_err(Error::InvalidInput)?;
                }
            }
            Ok(m)
        };
        let omega1 = read("Omega1")?;
        let omega2 = read("Omega2")?;
        let g = omega1.n;
        let (tau, sym, mineig) = derive_tau(&omega1, &omega2, prec, 1e-6)
            .ok_or_else(|| Error::InvalidInput("Omega2^{-1} Omega1 is not a Siegel point".into()))?;
        Ok(PeriodMatrix {
            g,
            prec,
            omega1,
            omega2,
            tau,
            diagnostics: Diagnostics {
                genus: g,
                sheet_count: 0,
                branch_count: 0,
                rh_deficiency: 0,
                rh_expected: 0,
                product_identity: true,
                transitive: true,
                symmetry_residual: sym,
                min_eig_im_tau: mineig,
                quadrature_residual: 0.0,
            },
        })
    }
}

/// Smallest eigenvalue of a small symmetric f64 matrix (Jacobi sweeps).
pub fn min_eig_sym(mat: &[Vec<f64>]) -> f64 {
    let n = mat.len();
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    for _ in 0..64 {
        let mut p = 0;
        let mut q = 1;
        let mut big = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i][j].abs() > big {
                    big = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if big < 1e-14 {
            break;
        }
        let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        for k in 0..n {
            let (akp, akq) = (a[k][p], a[k][q]);
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
        }
        for k in 0..n {
            let (apk, aqk) = (a[p][k], a[q][k]);
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}

/// Try tau = B^{-1} A and the symplectic relabeling (a,b) -> (b,-a); return
/// the symmetrized tau, the raw asymmetry and min eig of Im tau.
fn derive_tau(a: &CMat, b: &CMat, prec: u32, tol: f64) -> Option<(CMat, f64, f64)> {
    let scale = a.max_abs().max(&b.max_abs()).to_f64().max(1.0);
    let try_pair = |o1: &CMat, o2: &CMat| -> Option<(CMat, f64, f64)> {
        let x = o2.solve(o1)?;
        let asym = x.asymmetry().to_f64();
        if !(asym <= tol * scale.max(x.max_abs().to_f64())) {
            return None;
        }
        let tau = x.symmetrized();
        let im: Vec<Vec<f64>> = (0..tau.n)
            .map(|i| (0..tau.n).map(|j| tau.at(i, j).imag().to_f64()).collect())
            .collect();
        let me = min_eig_sym(&im);
        if me <= 0.0 {
            return None;
        }
        Some((tau, asym, me))
    };
    // J-preserving relabelings plus the global orientation swap: the
    // combinatorial intersection form is only pinned up to sign, so the
    // halves may need to trade places (spec: swap/negate as needed).
    let _ = prec;
    if let Some(r) = try_pair(a, b) {
        return Some(r);
    }
    let na = a.neg();
    if let Some(r) = try_pair(b, &na) {
        return Some(r);
    }
    if let Some(r) = try_pair(b, a) {
        return Some(r);
    }
    let nb = b.neg();
    try_pair(a, &nb)
}

/// Period matrix of a curve: monodromy, homology, integration, validation.
pub fn periods(curve: &AffineCurve, mode: PrecisionMode) -> Result<PeriodMatrix> {
    let mono = monodromy(curve)?;
    periods_with_monodromy(curve, &mono, mode)
}

pub fn periods_with_monodromy(
    curve: &AffineCurve,
    mono: &MonodromyData,
    mode: PrecisionMode,
) -> Result<PeriodMatrix> {
    let n = curve.n;
    let rh_expected = 2 * (curve.genus + n - 1);
    if mono.deficiency != rh_expected {
        return Err(Error::RiemannHurwitz {
            got: mono.deficiency,
            expected: rh_expected,
        });
    }
    let perms: Vec<(usize, Vec<usize>)> =
        mono.perms.iter().enumerate().map(|(i, p)| (i, p.clone())).collect();
    let hom = homology_basis(n, &perms)?;
    if hom.genus != curve.genus {
        return Err(Error::Internal(format!(
            "homology genus {} differs from expected {}",
            hom.genus, curve.genus
        )));
    }

    let g = curve.genus;
    let prec = mode.working_prec();
    let n_gl = mode.gl_order();

    // main pass + verification pass at higher order
    let (omega, resid) = match mode {
        PrecisionMode::Double => {
            let ctx = C64Ctx;
            let o1 = integrate_cycles(&ctx, curve, mono, &hom, n_gl)?;
            let o2 = integrate_cycles(&ctx, curve, mono, &hom, n_gl + 12)?;
            let mut resid = 0f64;
            for (r1, r2) in o1.iter().zip(&o2) {
                for (a, b) in r1.iter().zip(r2) {
                    resid = resid.max(a.sub(b).abs_f64());
                }
            }
            let lift: Vec<Vec<Complex>> = o2
                .iter()
                .map(|row| row.iter().map(|z| z.to_mp(prec)).collect())
                .collect();
            (lift, resid)
        }
        PrecisionMode::High(_) => {
            let ctx = MpCtx { prec };
            let o1 = integrate_cycles(&ctx, curve, mono, &hom, n_gl)?;
            let o2 = integrate_cycles(&ctx, curve, mono, &hom, n_gl + 12)?;
            let mut resid = 0f64;
            for (r1, r2) in o1.iter().zip(&o2) {
                for (a, b) in r1.iter().zip(r2) {
                    resid = resid.max(a.sub(b).abs_f64());
                }
            }
            (o2, resid)
        }
    };

    let cols = 2 * g;
    if omega.len() != g || omega[0].len() != cols {
        return Err(Error::Internal("period matrix has wrong shape".into()));
    }
    let half_a = CMat::from_fn(g, prec, |i, j| omega[i][j].clone());
    let half_b = CMat::from_fn(g, prec, |i, j| omega[i][g + j].clone());

    let tol = mode.symmetry_tolerance();
    let Some((tau, asym, min_eig)) = derive_tau(&half_a, &half_b, prec, tol) else {
        return Err(Error::IntegrationAccuracy {
            symmetry_residual: {
                let x = half_b.solve(&half_a).map(|x| x.asymmetry().to_f64());
                x.unwrap_or(f64::NAN)
            },
            quadrature_residual: resid,
        });
    };
    // recover which pair derive_tau settled on: tau must equal
    // omega2^{-1} omega1 for the stored halves
    let (omega1, omega2) = {
        let candidates = [
            (half_a.clone(), half_b.clone()),
            (half_b.clone(), half_a.neg()),
            (half_b.clone(), half_a.clone()),
            (half_a.clone(), half_b.neg()),
        ];
        let mut chosen = None;
        for (o1, o2) in candidates {
            if let Some(x) = o2.solve(&o1) {
                let d = x.sub(&tau).max_abs().to_f64();
                let scale = tau.max_abs().to_f64().max(1.0);
                if d <= 2.0 * tol * scale {
                    chosen = Some((o1, o2));
                    break;
                }
            }
        }
        chosen.ok_or_else(|| Error::Internal("could not reconstruct the chosen half pair".into()))?
    };

    Ok(PeriodMatrix {
        g,
        prec,
        omega1,
        omega2,
        tau,
        diagnostics: Diagnostics {
            genus: hom.genus,
            sheet_count: n,
            branch_count: mono.branch.len(),
            rh_deficiency: mono.deficiency,
            rh_expected,
            product_identity: mono.product_is_identity(),
            transitive: mono.transitive(),
            symmetry_residual: asym,
            min_eig_im_tau: min_eig,
            quadrature_residual: resid,
        },
    })
}
