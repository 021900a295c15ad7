//! Simultaneous complex root finding (Aberth-Ehrlich) in double precision.

use num_complex::Complex64;

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All complex roots of the polynomial with the given ascending real
/// coefficients.
pub fn all_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    all_roots_c(&c)
}

/// All complex roots of the polynomial with the given ascending complex
/// coefficients (Aberth-Ehrlich with Newton polish). Degenerate leading
/// zeros are trimmed; multiple roots converge slowly, so callers should
/// pass squarefree input when possible.
pub fn all_roots_c(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut p: Vec<Complex64> = coeffs.to_vec();
    while p.last().map_or(false, |c| c.norm() == 0.0) {
        p.pop();
    }
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    // strip roots at the origin
    let mut shift = 0usize;
    while shift < n && p[shift].norm() == 0.0 {
        shift += 1;
    }
    let q: Vec<Complex64> = p[shift..].to_vec();
    let m = q.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); shift];
    if m == 0 {
        return roots;
    }

    // Cauchy-style radius: 1 + max |a_i / a_m|
    let lead = q[m];
    let radius = 1.0 + q[..m].iter().fold(0f64, |a, &c| a.max((c / lead).norm()));
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.354) / m as f64;
            Complex64::from_polar(radius * 0.7, ang) + Complex64::new(0.0, 0.13)
        })
        .collect();

    for _ in 0..300 {
        let mut delta_max = 0f64;
        let snapshot = z.clone();
        for i in 0..m {
            let (v, d) = horner(&q, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if d.norm() > 0.0 { v / d } else { v };
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &other) in snapshot.iter().enumerate() {
                if j != i {
                    let diff = z[i] - other;
                    if diff.norm() > 1e-300 {
                        s += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-12 { newton / denom } else { newton };
            z[i] -= step;
            delta_max = delta_max.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta_max < 1e-14 {
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let (v, d) = horner(&q, *zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            *zi -= step;
            if step.norm() < 1e-15 * (1.0 + zi.norm()) {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn quartic_x4_plus_1() {
        let r = sorted_by_re(all_roots(&[1.0, 0.0, 0.0, 0.0, 1.0]));
        assert_eq!(r.len(), 4);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(4) + Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn factored_cubic() {
        // (x-1)(x-2)(x-5) = x^3 - 8x^2 + 17x - 10
        let mut r = all_roots(&[-10.0, 17.0, -8.0, 1.0]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let expect = [1.0, 2.0, 5.0];
        for (z, e) in r.iter().zip(expect) {
            assert!((z - Complex64::new(e, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn origin_roots_are_kept() {
        // x^2 (x - 3)
        let r = sorted_by_re(all_roots(&[0.0, 0.0, -3.0, 1.0]));
        assert_eq!(r.len(), 3);
        assert!(r.iter().filter(|z| z.norm() < 1e-12).count() == 2);
    }

    #[test]
    fn degree_twenty_eight_roots_of_unity_scaled() {
        // x^28 - 1
        let mut c = vec![0.0; 29];
        c[0] = -1.0;
        c[28] = 1.0;
        let r = all_roots(&c);
        assert_eq!(r.len(), 28);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }
}
