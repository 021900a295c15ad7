//! The two genus-3 separating forms assembled from the Thetanullwerte:
//! the raw weight-18 product over the 36 even characteristics, and the
//! weight-140 thirty-fifth elementary symmetric function of their eighth
//! powers. All 2*pi and sign normalizations live downstream in the
//! classifier's calibration constant.
//!
//! Zero testing. Both forms are tiny in absolute terms at any reasonable
//! tau (they carry high q-powers), so vanishing must be judged relative to
//! the structure of each form:
//!   - the product vanishes iff its smallest factor vanishes relative to the
//!     largest theta constant (no cancellation can occur in a product);
//!   - e_35 of the eighth powers vanishes iff at least two even theta
//!     constants vanish relatively (then every 35-term product contains a
//!     zero), or iff the sum cancels far below its largest single term.
//! The relative threshold separating true (exponentially small) vanishing
//! from roundoff is max(10^{-0.15 p}, 64 * relative error bound).

use crate::characteristic::even_characteristics;
use crate::siegel::SiegelPoint;
use crate::sum::{log2_cabs, theta_constants_all, ThetaTable};
use crate::{Error, Result};
use mpnum::{float_exp2, Prec};
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// prod theta[e], 36 factors, modular weight 18 (g = 3)
    EvenProduct,
    /// e_35(theta[e]^8), modular weight 140 (g = 3)
    SymmetricE35,
}

/// A modular form value with propagated error and the structural data the
/// zero test needs.
#[derive(Clone, Debug)]
pub struct ModularFormValue {
    pub kind: FormKind,
    pub value: Complex,
    /// log2 of the absolute propagated error bound of `value`.
    pub err_log2: f64,
    /// degree of the form as a polynomial in the theta constants.
    pub theta_degree: u32,
    /// log2 |theta[e]| for the even characteristics, enumeration order.
    pub even_theta_log2: Vec<f64>,
    /// log2 of the absolute error bound shared by the theta constants.
    pub theta_err_log2: f64,
    pub prec: Prec,
}

impl ModularFormValue {
    pub fn error_bound(&self) -> Float {
        float_exp2(64, self.err_log2)
    }

    fn max_theta_log2(&self) -> f64 {
        self.even_theta_log2.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Relative vanishing threshold in bits below the largest theta constant.
    pub fn relative_threshold_log2(&self) -> f64 {
        let analytic = -0.15 * (self.prec as f64) * std::f64::consts::LOG2_10;
        let numeric = self.theta_err_log2 + 6.0 - self.max_theta_log2();
        analytic.max(numeric)
    }

    /// Number of even theta constants vanishing relative to the largest one.
    pub fn vanishing_count(&self) -> usize {
        let max = self.max_theta_log2();
        let thr = self.relative_threshold_log2();
        self.even_theta_log2.iter().filter(|&&l| l - max < thr).count()
    }

    /// log2 of the largest single term of e_35 (product omitting the
    /// smallest eighth power); the natural magnitude scale of the sum.
    fn e35_max_term_log2(&self) -> f64 {
        let logs8: Vec<f64> = self.even_theta_log2.iter().map(|l| 8.0 * l).collect();
        let total: f64 = logs8.iter().sum();
        let min = logs8.iter().cloned().fold(f64::INFINITY, f64::min);
        total - min
    }

    pub fn is_zero(&self) -> bool {
        self.zero_margin_bits() < 0.0
    }

    /// Signed distance (bits) of the deciding quantity from its vanishing
    /// threshold: negative means "zero", positive "nonzero"; magnitudes
    /// within ~log2(10) of 0 should be treated as indeterminate.
    pub fn zero_margin_bits(&self) -> f64 {
        let thr = self.relative_threshold_log2();
        let max = self.max_theta_log2();
        match self.kind {
            FormKind::EvenProduct => {
                let min = self.even_theta_log2.iter().cloned().fold(f64::INFINITY, f64::min);
                (min - max) - thr
            }
            FormKind::SymmetricE35 => {
                // two vanishing thetas kill every 35-subset
                let mut sorted = self.even_theta_log2.clone();
                sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let second_smallest = sorted[1];
                let structural = (second_smallest - max) - thr;
                // cancellation of the sum below its largest term
                let cancel = log2_cabs(&self.value) - self.e35_max_term_log2() - thr;
                structural.min(cancel)
            }
        }
    }
}

/// Raw product P(tau) = prod over S_g of theta[e](0, tau); 36 factors of
/// modular weight 18 for g = 3. No 2*i*pi prefactor.
pub fn chi_product_from_table(table: &ThetaTable) -> Result<ModularFormValue> {
    let g = table.g;
    if !(2..=4).contains(&g) {
        return Err(Error::InvalidInput("chi product needs 2 <= g <= 4".into()));
    }
    let prec = table.prec;
    let evens = even_characteristics(g);
    let mut prod = Complex::with_val(prec, (1, 0));
    let logs: Vec<f64> = evens.iter().map(|ch| log2_cabs(table.value(ch))).collect();
    for ch in &evens {
        prod *= table.value(ch);
    }
    // error propagation: E <= err_theta * max_i prod_{j != i} |theta_j| * n
    let finite_sum: f64 = logs.iter().filter(|l| l.is_finite()).sum();
    let mut worst = f64::NEG_INFINITY;
    for (i, l) in logs.iter().enumerate() {
        let without = if l.is_finite() {
            finite_sum - l
        } else {
            logs.iter()
                .enumerate()
                .filter(|&(j, lj)| j != i && lj.is_finite())
                .map(|(_, lj)| lj)
                .sum()
        };
        worst = worst.max(without);
    }
    let err_log2 = table.err_log2 + worst + (evens.len() as f64).log2() + 1.0;
    Ok(ModularFormValue {
        kind: FormKind::EvenProduct,
        value: prod,
        err_log2,
        theta_degree: evens.len() as u32,
        even_theta_log2: logs,
        theta_err_log2: table.err_log2,
        prec,
    })
}

/// P(tau) from scratch.
pub fn chi_product(tau: &SiegelPoint, prec: Prec) -> Result<ModularFormValue> {
    let table = theta_constants_all(tau, prec)?;
    chi_product_from_table(&table)
}

/// Sigma_140: the 35th elementary symmetric function of the eighth powers of
/// the 36 even theta constants (g = 3 only).
pub fn sigma140_from_table(table: &ThetaTable) -> Result<ModularFormValue> {
    if table.g != 3 {
        return Err(Error::InvalidInput("Sigma_140 is a genus-3 form".into()));
    }
    let prec = table.prec;
    let evens = even_characteristics(3);
    let logs: Vec<f64> = evens.iter().map(|ch| log2_cabs(table.value(ch))).collect();
    let powers: Vec<Complex> = evens
        .iter()
        .map(|ch| table.value(ch).clone().pow(8u32))
        .collect();
    let e35 = elementary_symmetric(&powers, 35, prec);

    // error: each term of e35 is a 35-fold product of eighth powers; the
    // dominant contribution comes from perturbing the largest theta in the
    // largest term
    let max_l = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let logs8_sum: f64 = logs.iter().map(|l| 8.0 * l).filter(|l| l.is_finite()).sum();
    let min8 = logs.iter().map(|l| 8.0 * l).fold(f64::INFINITY, f64::min);
    let max_term = logs8_sum - min8.max(f64::NEG_INFINITY).min(logs8_sum);
    let rel_err_largest = table.err_log2 + 3.0 - max_l;
    let err_log2 = max_term + rel_err_largest + (36.0f64 * 35.0).log2() + 2.0;
    Ok(ModularFormValue {
        kind: FormKind::SymmetricE35,
        value: e35,
        err_log2,
        theta_degree: 280,
        even_theta_log2: logs,
        theta_err_log2: table.err_log2,
        prec,
    })
}

pub fn sigma140(tau: &SiegelPoint, prec: Prec) -> Result<ModularFormValue> {
    let table = theta_constants_all(tau, prec)?;
    sigma140_from_table(&table)
}

/// e_k of the given values by the stable ascending recurrence
/// e_j <- e_j + v * e_{j-1}.
fn elementary_symmetric(values: &[Complex], k: usize, prec: Prec) -> Complex {
    let mut e: Vec<Complex> = (0..=k).map(|_| Complex::with_val(prec, (0, 0))).collect();
    e[0] = Complex::with_val(prec, (1, 0));
    for v in values {
        let top = k.min(values.len());
        for j in (1..=top).rev() {
            let add = (v * &e[j - 1]).complete((prec, prec));
            e[j] += add;
        }
    }
    e[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_symmetric_on_equal_values() {
        // e_35 of 36 copies of t is 36 t^35
        let prec = 96;
        let t = Complex::with_val(prec, (1.5, 0.25));
        let vals = vec![t.clone(); 36];
        let e = elementary_symmetric(&vals, 35, prec);
        let expect = t.pow(35u32) * 36u32;
        let d = e - expect;
        assert!(mpnum::cabs(&d).to_f64() < 1e-20);
    }

    #[test]
    fn one_zero_input_leaves_product_of_rest() {
        let prec = 96;
        let mut vals = vec![Complex::with_val(prec, (2, 0)); 36];
        vals[7] = Complex::with_val(prec, (0, 0));
        let e = elementary_symmetric(&vals, 35, prec);
        // exactly one vanishing entry: e35 = product of the other 35
        let expect = Complex::with_val(prec, (2, 0)).pow(35u32);
        let d = e - expect;
        assert!(mpnum::cabs(&d).to_f64() < 1e-20);
    }

    #[test]
    fn product_vanishes_on_block_diagonal_tau() {
        let prec = 160;
        let t1 = SiegelPoint::i_identity(1, prec);
        let t2 = SiegelPoint::i_identity(2, prec);
        let tau = SiegelPoint::block_diag(&t1, &t2);
        let p = chi_product(&tau, prec).unwrap();
        assert!(p.is_zero(), "P margin = {}", p.zero_margin_bits());
        // a 1+2 split leaves six odd*odd even characteristics
        assert!(p.vanishing_count() >= 6);
        let s = sigma140(&tau, prec).unwrap();
        assert!(s.is_zero(), "Sigma margin = {}", s.zero_margin_bits());
    }

    #[test]
    fn forms_do_not_vanish_at_generic_tau() {
        let prec = 160;
        let tau = crate::siegel::tests_support::generic_tau(prec);
        let p = chi_product(&tau, prec).unwrap();
        assert_eq!(p.vanishing_count(), 0);
        assert!(!p.is_zero(), "P margin = {}", p.zero_margin_bits());
        let s = sigma140(&tau, prec).unwrap();
        assert!(!s.is_zero(), "Sigma margin = {}", s.zero_margin_bits());
    }
}
