//! Gauss-Legendre nodes and weights at arbitrary precision.
//!
//! Nodes are the roots of P_n on (-1,1), found by Newton iteration from the
//! Chebyshev-like initial guesses; weights are 2 / ((1-x^2) P_n'(x)^2).
//! Results are cached per (n, prec).

use crate::Prec;
use once_cell::sync::Lazy;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub type Rule = Arc<(Vec<Float>, Vec<Float>)>;

static CACHE: Lazy<Mutex<HashMap<(usize, Prec), Rule>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Evaluate (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_pair(n: usize, x: &Float, prec: Prec) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    if n == 0 {
        return (p0, Float::with_val(prec, 0));
    }
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let mut t = Float::with_val(prec, 2 * k as u32 + 1);
        t *= x;
        t *= &p1;
        let mut s = Float::with_val(prec, k as u32);
        s *= &p0;
        t -= s;
        t /= (k + 1) as u32;
        p0 = std::mem::replace(&mut p1, t);
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let mut num = x.clone();
    num *= &p1;
    num -= &p0;
    num *= n as u32;
    let mut den = x.clone();
    den.square_mut();
    den -= 1u32;
    num /= &den;
    (p1, num)
}

/// n-point Gauss-Legendre rule on [-1, 1] at `prec` bits.
pub fn gauss_legendre(n: usize, prec: Prec) -> Rule {
    assert!(n >= 2);
    if let Some(r) = CACHE.lock().unwrap().get(&(n, prec)) {
        return r.clone();
    }
    let wp = prec + 32;
    let mut nodes: Vec<Float> = Vec::with_capacity(n);
    let mut weights: Vec<Float> = Vec::with_capacity(n);
    let half = n / 2;
    for k in 0..n {
        // exploit symmetry: only solve for the first half
        if k >= n - half {
            let mirror = n - 1 - k;
            nodes.push(-nodes[mirror].clone());
            let w: Float = weights[mirror].clone();
            weights.push(w);
            continue;
        }
        let guess = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(wp, guess);
        // Newton, quadratic convergence; 8 + log2(prec) iterations are ample
        let iters = 8 + (prec as f64).log2().ceil() as usize;
        for _ in 0..iters {
            let (p, dp) = legendre_pair(n, &x, wp);
            let step = p / dp;
            x -= step;
        }
        let (_, dp) = legendre_pair(n, &x, wp);
        let mut w = Float::with_val(wp, 1);
        let mut x2 = x.clone();
        x2.square_mut();
        let one_minus = Float::with_val(wp, 1) - x2;
        w *= 2u32;
        w /= &one_minus;
        let mut dp2 = dp;
        dp2.square_mut();
        w /= &dp2;
        nodes.push(Float::with_val(prec, -&x)); // ascending order
        weights.push(Float::with_val(prec, w));
    }
    let rule: Rule = Arc::new((nodes, weights));
    CACHE.lock().unwrap().insert((n, prec), rule.clone());
    rule
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let prec = 160;
        let rule = gauss_legendre(8, prec);
        // integral of x^6 over [-1,1] = 2/7
        let mut acc = Float::with_val(prec, 0);
        for (x, w) in rule.0.iter().zip(rule.1.iter()) {
            let mut t = x.clone();
            t.square_mut();
            let t3 = t.clone() * &t * &t;
            acc += t3 * w;
        }
        let expect = Float::with_val(prec, 2) / 7u32;
        assert!((acc - expect).abs().to_f64() < 1e-40);
    }

    #[test]
    fn weights_sum_to_two() {
        let rule = gauss_legendre(32, 212);
        let mut acc = Float::with_val(212, 0);
        for w in rule.1.iter() {
            acc += w;
        }
        assert!((acc - 2u32).abs().to_f64() < 1e-55);
    }
}
