//! Truncated lattice sums for the Thetanullwerte.
//!
//! One pass over the ellipsoid { m : m^t (Im tau) m <= T } accumulates all
//! 2^{2g} theta constants simultaneously. The cutoff T is chosen so that the
//! discarded Gaussian tail is rigorously below 2^{-p-8}; shell counting over
//! |m|_inf gives the bound.

use crate::characteristic::ThetaCharacteristic;
use crate::siegel::SiegelPoint;
use crate::{Error, Result, RADIUS_CAP};
use mpnum::{float_exp2, Prec};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// A complex value with a rigorous absolute error bound.
#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub value: Complex,
    pub error_bound: Float,
}

/// All 2^{2g} theta constants at one tau, sharing a single error bound.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    pub g: usize,
    pub prec: Prec,
    values: Vec<Complex>,
    /// log2 of the shared absolute error bound.
    pub err_log2: f64,
}

impl ThetaTable {
    pub fn value(&self, ch: &ThetaCharacteristic) -> &Complex {
        &self.values[ch.table_index()]
    }

    pub fn theta_value(&self, ch: &ThetaCharacteristic) -> ThetaValue {
        ThetaValue {
            value: self.value(ch).clone(),
            error_bound: self.error_bound(),
        }
    }

    pub fn error_bound(&self) -> Float {
        float_exp2(64, self.err_log2)
    }

    /// log2 of max_e |theta[e]| over all characteristics.
    pub fn max_abs_log2(&self) -> f64 {
        self.values
            .iter()
            .map(log2_cabs)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }
}

/// log2 |z| computed through MPFR so that magnitudes below the f64 range
/// still give finite logs.
pub fn log2_cabs(z: &Complex) -> f64 {
    let n = mpnum::norm_sq(z);
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    n.log2().to_f64() / 2.0
}

/// Rigorous bound for sum over { m : Q(m) > T } of exp(-pi/4 Q(m)), with
/// Q(m) >= lambda |m|^2, lambda = lambda_min(Im tau) lower bound.
/// Shell |m|_inf = j contributes at most ((2j+1)^g - (2j-1)^g) terms, each
/// at most exp(-pi/4 max(T, lambda j^2)). Returned as log2.
fn tail_bound_log2(t_cut: f64, lambda: f64, g: usize) -> f64 {
    let log2e = std::f64::consts::LOG2_E;
    let c = std::f64::consts::PI / 4.0 * log2e; // bits per unit of Q
    let shell_log2 = |j: f64| -> f64 {
        // (2j+1)^g - (2j-1)^g <= g * 2 * (2j+1)^{g-1}
        ((g as f64) * 2.0 * (2.0 * j + 1.0).powi(g as i32 - 1)).log2() + 0.1
    };
    let j1 = (t_cut / lambda).sqrt().ceil().max(1.0);
    // shells entirely inside radius j1 may still contain excluded points
    // with Q > T; bound their count crudely by the full ball
    let inside_log2 = ((2.0 * j1 + 3.0).powi(g as i32)).log2() - c * t_cut;
    // shells beyond j1: geometric-ish decay, summed explicitly
    let mut acc = inside_log2;
    let mut j = j1;
    loop {
        let term = shell_log2(j) - c * lambda * j * j;
        acc = log2_add(acc, term);
        if term < acc - 80.0 {
            break;
        }
        j += 1.0;
        if j > j1 + 10_000.0 {
            // lambda so small that the series barely decays; give up with a
            // huge bound, the caller will reject via the radius cap
            return f64::INFINITY;
        }
    }
    acc + 0.5 // slop for the f64 log arithmetic
}

fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// Pick the quadratic-form cutoff T so the tail is below 2^{-p-8}.
fn choose_cutoff(prec: Prec, lambda: f64, g: usize) -> Result<f64> {
    let target = -(prec as f64) - 8.0;
    let mut t_cut = 4.0 * std::f64::consts::LN_2 / std::f64::consts::PI * (prec as f64 + 10.0);
    for _ in 0..200 {
        if tail_bound_log2(t_cut, lambda, g, ) <= target {
            let radius = (t_cut / lambda).sqrt();
            if radius > RADIUS_CAP {
                return Err(Error::RadiusCap(radius, RADIUS_CAP));
            }
            return Ok(t_cut);
        }
        t_cut *= 1.15;
    }
    Err(Error::RadiusCap(f64::INFINITY, RADIUS_CAP))
}

/// f64 shadow of a real symmetric matrix, for enumeration ranges.
fn real_shadow(tau: &SiegelPoint) -> Vec<Vec<f64>> {
    let g = tau.g;
    (0..g)
        .map(|i| (0..g).map(|j| tau.tau().at(i, j).imag().to_f64()).collect())
        .collect()
}

/// diag of (Im tau)^{-1}, for the per-axis bounding box.
fn inv_diag(tau: &SiegelPoint) -> Result<Vec<f64>> {
    let inv = tau
        .tau()
        .imag_part()
        .inverse()
        .ok_or(Error::NotPositiveDefinite)?;
    Ok((0..tau.g).map(|i| inv.at(i, i).real().to_f64()).collect())
}

/// All 2^{2g} theta constants theta[e1,e2](0, tau) in one lattice pass.
pub fn theta_constants_all(tau: &SiegelPoint, prec: Prec) -> Result<ThetaTable> {
    let g = tau.g;
    let lambda = tau.min_eig_lower_bound();
    if !(lambda > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let t_cut = choose_cutoff(prec, lambda, g)?;

    let yf = real_shadow(tau);
    let idiag = inv_diag(tau)?;

    // accumulators: (re, im) per (e1_bits << g | e2_bits)
    let nchars = 1usize << (2 * g);
    let mut acc: Vec<(Float, Float)> = (0..nchars)
        .map(|_| (Float::with_val(prec, 0), Float::with_val(prec, 0)))
        .collect();

    // quarter pi times i, for the exponent i*pi/4 * Q
    let pi = mpnum::pi(prec);
    let quarter_pi = Float::with_val(prec, &pi / 4u32);

    // recursion state: partial complex quadratic form and linear forms,
    // plus their f64 imaginary-part shadows
    let mut m = vec![0i64; g];
    let mut n_points: u64 = 0;

    // partial_q[k]: sum over a,b < k of tau_ab m_a m_b
    // lin[k][j] (j >= k): sum over a < k of tau_aj m_a
    let mut partial_q: Vec<Complex> = (0..=g).map(|_| Complex::with_val(prec, (0, 0))).collect();
    let mut lin: Vec<Vec<Complex>> =
        (0..=g).map(|_| (0..g).map(|_| Complex::with_val(prec, (0, 0))).collect()).collect();
    let mut partial_qf = vec![0f64; g + 1];
    let mut linf = vec![vec![0f64; g]; g + 1];

    // explicit stack recursion over coordinates
    fn recurse(
        level: usize,
        g: usize,
        prec: Prec,
        t_cut: f64,
        tau: &SiegelPoint,
        yf: &[Vec<f64>],
        idiag: &[f64],
        quarter_pi: &Float,
        m: &mut [i64],
        partial_q: &mut [Complex],
        lin: &mut [Vec<Complex>],
        partial_qf: &mut [f64],
        linf: &mut [Vec<f64>],
        acc: &mut [(Float, Float)],
        n_points: &mut u64,
    ) {
        if level == g {
            // Q = partial_q[g]; exponent w = i*pi/4*Q
            let q = &partial_q[g];
            let re_w = -(quarter_pi.clone() * q.imag());
            let im_w = quarter_pi.clone() * q.real();
            // skip terms below the noise floor
            if re_w.to_f64() < -((prec as f64) + 16.0) * std::f64::consts::LN_2 {
                return;
            }
            let mag = re_w.exp();
            let (sin_w, cos_w) = im_w.sin_cos(Float::new(prec));
            let ter = (mag.clone() * cos_w, mag * sin_w);
            *n_points += 1;
            let class = {
                let mut bits = 0usize;
                for (j, &mj) in m.iter().enumerate() {
                    bits |= ((mj & 1) as usize & 1) << j;
                }
                bits
            };
            for e2 in 0..(1usize << g) {
                // k = m . e2 mod 4 picks the quarter turn i^k
                let mut dot: i64 = 0;
                for (j, &mj) in m.iter().enumerate() {
                    if (e2 >> j) & 1 == 1 {
                        dot += mj;
                    }
                }
                let k = dot.rem_euclid(4);
                let slot = &mut acc[(class << g) | e2];
                match k {
                    0 => {
                        slot.0 += &ter.0;
                        slot.1 += &ter.1;
                    }
                    1 => {
                        slot.0 -= &ter.1;
                        slot.1 += &ter.0;
                    }
                    2 => {
                        slot.0 -= &ter.0;
                        slot.1 -= &ter.1;
                    }
                    _ => {
                        slot.0 += &ter.1;
                        slot.1 -= &ter.0;
                    }
                }
            }
            return;
        }
        // range for m[level] from the f64 shadow:
        // yf[l][l] v^2 + 2 linf v + (qf - T) <= 0
        let a = yf[level][level];
        let b = linf[level][level];
        let cq = partial_qf[level] - t_cut;
        let disc = (b / a) * (b / a) - cq / a;
        if disc < 0.0 && level > 0 {
            return;
        }
        let center = -b / a;
        let halfw = disc.max(0.0).sqrt() + 1.5;
        let axis = (t_cut * idiag[level]).sqrt() + 1.5;
        let lo = (center - halfw).max(-axis).floor() as i64;
        let hi = (center + halfw).min(axis).ceil() as i64;
        for v in lo..=hi {
            m[level] = v;
            // update MP partials
            let tll = tau.tau().at(level, level);
            let mut q = partial_q[level].clone();
            let two_lin = (&lin[level][level] * 2u32).complete((prec, prec));
            let mut t = (tll * v).complete((prec, prec));
            t += two_lin;
            t *= v;
            q += t;
            partial_q[level + 1] = q;
            let mut qf = partial_qf[level];
            qf += (yf[level][level] * v as f64 + 2.0 * linf[level][level]) * v as f64;
            partial_qf[level + 1] = qf;
            for j in (level + 1)..g {
                let add = (tau.tau().at(level, j) * v).complete((prec, prec));
                lin[level + 1][j] = lin[level][j].clone() + add;
                linf[level + 1][j] = linf[level][j] + yf[level][j] * v as f64;
            }
            recurse(
                level + 1,
                g,
                prec,
                t_cut,
                tau,
                yf,
                idiag,
                quarter_pi,
                m,
                partial_q,
                lin,
                partial_qf,
                linf,
                acc,
                n_points,
            );
        }
    }

    recurse(
        0,
        g,
        prec,
        t_cut,
        tau,
        &yf,
        &idiag,
        &quarter_pi,
        &mut m,
        &mut partial_q,
        &mut lin,
        &mut partial_qf,
        &mut linf,
        &mut acc,
        &mut n_points,
    );

    // truncation tail + rounding accumulation
    let tail_log2 = tail_bound_log2(t_cut, lambda, g);
    let round_log2 = (n_points.max(1) as f64).log2() + 3.0 - prec as f64;
    let err_log2 = log2_add(tail_log2, round_log2);

    let values = acc
        .into_iter()
        .map(|(re, im)| Complex::with_val(prec, (re, im)))
        .collect();
    Ok(ThetaTable { g, prec, values, err_log2 })
}

/// Single theta value theta[e](z, tau) for general z, by direct summation
/// over n with the Gaussian centered at -e1/2 - Y^{-1} Im z.
pub fn theta_z(
    ch: &ThetaCharacteristic,
    z: &[Complex],
    tau: &SiegelPoint,
    prec: Prec,
) -> Result<ThetaValue> {
    let g = tau.g;
    if ch.g() != g || z.len() != g {
        return Err(Error::InvalidInput("genus mismatch".into()));
    }
    let lambda = tau.min_eig_lower_bound();
    // shift of the Gaussian by the imaginary part of z
    let imz: Vec<f64> = z.iter().map(|c| c.imag().to_f64()).collect();
    let yinv = tau
        .tau()
        .imag_part()
        .inverse()
        .ok_or(Error::NotPositiveDefinite)?;
    let mut shift = vec![0f64; g];
    let mut shift_quad = 0f64;
    for i in 0..g {
        for j in 0..g {
            shift[i] += yinv.at(i, j).real().to_f64() * imz[j];
        }
    }
    for i in 0..g {
        shift_quad += shift[i] * imz[i];
    }
    // prefactor exp(pi w^t Y^{-1} w) enlarges the needed cutoff
    let extra_bits = std::f64::consts::PI * shift_quad * std::f64::consts::LOG2_E;
    let t_cut = choose_cutoff(prec + extra_bits.max(0.0).ceil() as u32 + 8, lambda, g)?;

    let center: Vec<f64> = (0..g).map(|i| -(ch.eps1[i] as f64) / 2.0 - shift[i]).collect();
    let radius = (t_cut / lambda).sqrt() + 2.0;
    if radius > RADIUS_CAP {
        return Err(Error::RadiusCap(radius, RADIUS_CAP));
    }

    let pi = mpnum::pi(prec);
    let i_pi = Complex::with_val(prec, (Float::with_val(prec, 0), pi.clone()));
    let mut total = Complex::with_val(prec, (0, 0));

    let lo: Vec<i64> = center.iter().map(|c| (c - radius).floor() as i64).collect();
    let hi: Vec<i64> = center.iter().map(|c| (c + radius).ceil() as i64).collect();
    let mut n = lo.clone();
    let mut n_points: u64 = 0;
    'outer: loop {
        // x = n + e1/2 (exact at prec), w = x^t tau x + 2 x . (z + e2/2)
        let x: Vec<Float> = (0..g)
            .map(|i| {
                let mut v = Float::with_val(prec, n[i]);
                if ch.eps1[i] == 1 {
                    v += Float::with_val(prec, 0.5);
                }
                v
            })
            .collect();
        // quick magnitude screen via the shadow
        let mut qf = 0f64;
        for i in 0..g {
            let xi = x[i].to_f64();
            for j in 0..g {
                qf += tau.tau().at(i, j).imag().to_f64() * xi * x[j].to_f64();
            }
            qf += 2.0 * xi * imz[i];
        }
        if std::f64::consts::PI * qf * std::f64::consts::LOG2_E <= (prec as f64) + 24.0 {
            let mut w = Complex::with_val(prec, (0, 0));
            for i in 0..g {
                for j in 0..g {
                    let mut t = (tau.tau().at(i, j) * &x[i]).complete((prec, prec));
                    t *= &x[j];
                    w += t;
                }
                let mut lin = z[i].clone();
                if ch.eps2[i] == 1 {
                    lin += Float::with_val(prec, 0.5);
                }
                lin *= &x[i];
                lin *= 2u32;
                w += lin;
            }
            let e = (w * &i_pi).exp();
            total += e;
            n_points += 1;
        }
        // odometer
        for i in 0..g {
            n[i] += 1;
            if n[i] <= hi[i] {
                continue 'outer;
            }
            n[i] = lo[i];
        }
        break;
    }

    let tail_log2 = tail_bound_log2(t_cut, lambda, g) + extra_bits.max(0.0);
    let round_log2 = (n_points.max(1) as f64).log2() + 4.0 - prec as f64
        + tau.tau().max_abs().to_f64().log2().max(0.0);
    let err = float_exp2(64, log2_add(tail_log2, round_log2));
    Ok(ThetaValue { value: total, error_bound: err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::enumerate_characteristics;

    #[test]
    fn genus_one_classical_value() {
        // theta[0,0](0, i) = pi^{1/4} / Gamma(3/4) = 1.0864348112133080...
        let tau = SiegelPoint::i_identity(1, 212);
        let table = theta_constants_all(&tau, 212).unwrap();
        let ch = ThetaCharacteristic::new(vec![0], vec![0]);
        let v = table.value(&ch);
        let expect = "1.0864348112133080145753161215102234570702057072452188859207903160";
        let e = mpnum::float_from_dec(212, expect).unwrap();
        let diff = (v.real() - e).abs();
        assert!(diff.to_f64() < 1e-55, "diff = {:e}", diff.to_f64());
        assert!(v.imag().clone().abs().to_f64() < 1e-60);
    }

    #[test]
    fn odd_characteristics_vanish() {
        let tau = SiegelPoint::i_identity(3, 160);
        let table = theta_constants_all(&tau, 160).unwrap();
        for ch in enumerate_characteristics(3) {
            if ch.is_even() {
                continue;
            }
            let v = table.value(&ch);
            assert!(
                log2_cabs(v) < table.err_log2,
                "odd characteristic {:?} gave {}",
                ch,
                log2_cabs(v)
            );
        }
    }

    #[test]
    fn block_diagonal_factorization() {
        let prec = 160;
        let t1 = SiegelPoint::i_identity(1, prec);
        let t3 = SiegelPoint::i_identity(3, prec);
        let tab1 = theta_constants_all(&t1, prec).unwrap();
        let tab3 = theta_constants_all(&t3, prec).unwrap();
        let c1 = ThetaCharacteristic::new(vec![0], vec![0]);
        let c3 = ThetaCharacteristic::new(vec![0, 0, 0], vec![0, 0, 0]);
        let v1 = tab1.value(&c1);
        let cube = (v1 * v1).complete((prec, prec)) * v1;
        let diff = (tab3.value(&c3) - &cube).complete((prec, prec));
        assert!(mpnum::cabs(&diff).to_f64() < 1e-40);
    }

    #[test]
    fn doubling_precision_is_stable() {
        let tau = SiegelPoint::i_identity(2, 128);
        let t128 = theta_constants_all(&tau, 128).unwrap();
        let tau2 = SiegelPoint::i_identity(2, 256);
        let t256 = theta_constants_all(&tau2, 256).unwrap();
        let eb = t128.error_bound();
        for ch in enumerate_characteristics(2) {
            let d = (t128.value(&ch) - t256.value(&ch)).complete((256, 256));
            assert!(mpnum::cabs(&d) < eb);
        }
    }

    #[test]
    fn theta_z_matches_table_at_zero() {
        let prec = 128;
        let tau = SiegelPoint::i_identity(2, prec);
        let table = theta_constants_all(&tau, prec).unwrap();
        let z = vec![Complex::with_val(prec, (0, 0)), Complex::with_val(prec, (0, 0))];
        for ch in enumerate_characteristics(2) {
            let tv = theta_z(&ch, &z, &tau, prec).unwrap();
            let d = tv.value.clone() - table.value(&ch);
            assert!(mpnum::cabs(&d).to_f64() < 1e-30);
        }
    }

    #[test]
    fn z_symmetry_sign_is_parity() {
        let prec = 128;
        let tau = SiegelPoint::i_identity(2, prec);
        let z = vec![
            Complex::with_val(prec, (0.31, 0.12)),
            Complex::with_val(prec, (-0.07, 0.22)),
        ];
        let minus_z: Vec<Complex> = z.iter().map(|c| (-c).complete((prec, prec))).collect();
        for ch in enumerate_characteristics(2) {
            let a = theta_z(&ch, &z, &tau, prec).unwrap().value;
            let b = theta_z(&ch, &minus_z, &tau, prec).unwrap().value;
            let expect = if ch.is_even() { b.clone() } else { -b };
            let d = a - expect;
            assert!(mpnum::cabs(&d).to_f64() < 1e-28, "characteristic {ch:?}");
        }
    }
}
