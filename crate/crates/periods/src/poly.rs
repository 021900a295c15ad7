//! Exact univariate and bivariate polynomial utilities over the rationals.

use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use ternary::{bareiss, Rat};

/// Dense univariate polynomial, ascending coefficients. Kept normalized
/// (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rat>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(vec![])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.0.iter().map(|c| c * s).collect())
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            None => Self::zero(),
            Some(lc) => {
                let inv = Rat::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Euclidean remainder.
    fn rem(&self, div: &Self) -> Self {
        let d = div.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lc = div.0[d].clone();
        while r.len() > d {
            let k = r.len() - 1;
            let q = &r[k] / &lc;
            if !q.is_zero() {
                for i in 0..=d {
                    let sub = &q * &div.0[i];
                    r[k - d + i] -= sub;
                }
            }
            r.pop();
        }
        Self::new(r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    fn div_exact(&self, div: &Self) -> Self {
        let d = div.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lc = div.0[d].clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(d)];
        while r.len() > d {
            let k = r.len() - 1;
            let c = &r[k] / &lc;
            q[k - d] = c.clone();
            for i in 0..=d {
                let sub = &c * &div.0[i];
                r[k - d + i] -= sub;
            }
            r.pop();
        }
        Self::new(q)
    }

    /// Coefficients as f64 (for root finding).
    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|c| {
                let n = c.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
                let d = c.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
                n / d
            })
            .collect()
    }

    /// Rescale so the largest |coefficient| is about 1 (numerically safer
    /// root finding); roots are unchanged.
    pub fn to_f64_normalized(&self) -> Vec<f64> {
        let v = self.to_f64();
        let m = v.iter().fold(0f64, |a, &b| a.max(b.abs()));
        if m == 0.0 || !m.is_finite() {
            return v;
        }
        v.iter().map(|c| c / m).collect()
    }
}

/// Resultant of two univariate rational polynomials via the Sylvester
/// matrix and fraction-free elimination.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rat {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return Rat::zero();
    };
    if n == 0 {
        return ternary::rat_pow(&f.0[0], m as u32);
    }
    if m == 0 {
        return ternary::rat_pow(&g.0[0], n as u32);
    }
    let size = n + m;
    let mut rows = vec![vec![Rat::zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.0.iter().enumerate() {
            rows[i][i + n - j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.0.iter().enumerate() {
            rows[m + i][i + m - j] = c.clone();
        }
    }
    bareiss::det_rational(&rows)
}

/// Discriminant of a univariate polynomial: (-1)^{n(n-1)/2} Res(f, f') / lc.
pub fn discriminant(f: &UniPoly) -> Result<Rat> {
    let n = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("discriminant of zero polynomial".into()))?;
    if n < 1 {
        return Err(Error::InvalidInput("discriminant needs degree >= 1".into()));
    }
    let res = resultant(f, &f.derivative());
    let lc = f.0.last().unwrap();
    let sign = if (n * (n - 1) / 2) % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(sign * res / lc)
}

/// Bivariate polynomial with exact coefficients, stored as y-coefficient
/// list of x-polynomials: P(x,y) = sum_j c_j(x) y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub ycoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut ycoeffs: Vec<UniPoly>) -> Self {
        while ycoeffs.last().map_or(false, |c| c.is_zero()) {
            ycoeffs.pop();
        }
        BiPoly { ycoeffs }
    }

    pub fn deg_y(&self) -> Option<usize> {
        if self.ycoeffs.is_empty() {
            None
        } else {
            Some(self.ycoeffs.len() - 1)
        }
    }

    /// Partial derivative with respect to y.
    pub fn dy(&self) -> BiPoly {
        if self.ycoeffs.len() <= 1 {
            return BiPoly::new(vec![]);
        }
        BiPoly::new(
            self.ycoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Rat::from_integer(j.into())))
                .collect(),
        )
    }

    /// The univariate polynomial y -> P(x0, y).
    pub fn at_x(&self, x: &Rat) -> UniPoly {
        UniPoly::new(self.ycoeffs.iter().map(|c| c.eval(x)).collect())
    }

    /// Resultant Res_y(P, dP/dy) as a polynomial in x, by evaluation and
    /// Lagrange interpolation (exact).
    pub fn disc_y_resultant(&self) -> Result<UniPoly> {
        let n = self
            .deg_y()
            .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        if n < 1 {
            return Err(Error::InvalidInput("deg_y must be >= 1".into()));
        }
        let dx: usize = self.ycoeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
        // deg_x Res_y(P, P_y) <= dx*(n-1) + dx*n
        let bound = dx * (2 * n - 1) + 1;
        let dp = self.dy();
        let mut xs = Vec::with_capacity(bound);
        let mut ys = Vec::with_capacity(bound);
        let mut k: i64 = 0;
        while xs.len() < bound {
            let x = Rat::from_integer(k.into());
            let fy = self.at_x(&x);
            let gy = dp.at_x(&x);
            // evaluation points must preserve the y-degrees, otherwise the
            // specialized resultant differs from the specialized value
            if fy.degree() == Some(n) && gy.degree() == dp.deg_y() {
                xs.push(x);
                ys.push(resultant(&fy, &gy));
            }
            k = if k >= 0 { -(k + 1) } else { -k };
            if k.unsigned_abs() as usize > 8 * bound + 16 {
                return Err(Error::Internal("could not find good interpolation nodes".into()));
            }
        }
        Ok(lagrange_interpolate(&xs, &ys))
    }
}

/// Exact Lagrange interpolation through (xs[i], ys[i]).
pub fn lagrange_interpolate(xs: &[Rat], ys: &[Rat]) -> UniPoly {
    let n = xs.len();
    let mut acc = vec![Rat::zero(); n];
    // Newton form for O(n^2) arithmetic
    let mut divided = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &divided[i] - &divided[i - 1];
            let den = &xs[i] - &xs[i - level];
            divided[i] = num / den;
        }
    }
    // expand Newton basis
    let mut basis = vec![Rat::one()];
    for (i, d) in divided.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            acc[j] += d * b;
        }
        if i + 1 < n {
            // basis *= (x - xs[i])
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= b * &xs[i];
            }
            basis = next;
        }
    }
    UniPoly::new(acc)
}

/// Largest |coefficient| as a crude magnitude scale.
pub fn coeff_scale(p: &UniPoly) -> Rat {
    let mut best = Rat::zero();
    for c in &p.0 {
        let a = c.abs();
        if a > best {
            best = a;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use ternary::{rat, rat_int};

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn resultant_of_linear_pair() {
        // res(x - 2, x - 3) = (2 - 3)... = -1 * ... sign convention check:
        // Sylvester [[1,-2],[1,-3]] = -3 + 2 = -1
        let f = poly(&[-2, 1]);
        let g = poly(&[-3, 1]);
        assert_eq!(resultant(&f, &g), rat_int(-1));
    }

    #[test]
    fn discriminant_of_quadratic() {
        // disc(ax^2 + bx + c) = b^2 - 4ac
        let f = poly(&[5, 3, 2]); // 2x^2 + 3x + 5
        assert_eq!(discriminant(&f).unwrap(), rat_int(9 - 40));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = poly(&[2, -3, 0, 1]);
        let sf = f.squarefree_part();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, poly(&[-2, 1, 1]).monic());
        assert!(!f.is_squarefree());
        assert!(sf.is_squarefree());
    }

    #[test]
    fn interpolation_round_trip() {
        let f = poly(&[3, -1, 0, 7, 2]);
        let xs: Vec<Rat> = (0..6).map(|k| rat_int(k - 2)).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(lagrange_interpolate(&xs, &ys), f);
    }

    #[test]
    fn disc_y_of_hyperelliptic_shape() {
        // P = y^2 - (x^2 - 1): Res_y(P, 2y) = -4(x^2-1)
        let p = BiPoly::new(vec![poly(&[1, 0, -1]), UniPoly::zero(), poly(&[1])]);
        let d = p.disc_y_resultant().unwrap();
        assert_eq!(d, poly(&[4, 0, -4]));
        let sf = d.squarefree_part();
        assert_eq!(sf.degree(), Some(2));
    }

    #[test]
    fn rational_eval() {
        let f = poly(&[1, 1]);
        assert_eq!(f.eval(&rat(1, 2)), rat(3, 2));
    }
}
