//! A small complex-field abstraction so tracking and quadrature run both in
//! double precision (path layout, default integration) and at arbitrary
//! precision (certified re-integration along the same paths).

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rug::ops::CompleteRound;
use rug::{Complex, Float};
use ternary::Rat;

pub trait CF: Clone + std::fmt::Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn add_assign(&mut self, o: &Self);
    fn sub_assign(&mut self, o: &Self);
    fn mul_assign(&mut self, o: &Self);
    fn exp(&self) -> Self;
    /// |z| as f64 (clamped); for step control only.
    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    fn to_mp(&self, prec: u32) -> Complex;
}

pub trait Ctx: Copy {
    type F: CF;
    fn from_c64(&self, z: Complex64) -> Self::F;
    fn from_f64(&self, re: f64) -> Self::F {
        self.from_c64(Complex64::new(re, 0.0))
    }
    fn from_rat(&self, r: &Rat) -> Self::F;
    fn zero(&self) -> Self::F {
        self.from_c64(Complex64::new(0.0, 0.0))
    }
    fn one(&self) -> Self::F {
        self.from_c64(Complex64::new(1.0, 0.0))
    }
    /// log2 of the working epsilon (-53 for doubles).
    fn eps_log2(&self) -> f64;
    /// Gauss-Legendre nodes and weights on [-1, 1] as field elements.
    fn gauss_legendre(&self, n: usize) -> (Vec<Self::F>, Vec<Self::F>);
}

impl CF for Complex64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_assign(&mut self, o: &Self) {
        *self *= o;
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
    fn abs_f64(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_mp(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (self.re, self.im))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct C64Ctx;

impl Ctx for C64Ctx {
    type F = Complex64;
    fn from_c64(&self, z: Complex64) -> Complex64 {
        z
    }
    fn from_rat(&self, r: &Rat) -> Complex64 {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        Complex64::new(n / d, 0.0)
    }
    fn eps_log2(&self) -> f64 {
        -52.0
    }
    fn gauss_legendre(&self, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let rule = mpnum::legendre::gauss_legendre(n, 64);
        let xs = rule.0.iter().map(|x| Complex64::new(x.to_f64(), 0.0)).collect();
        let ws = rule.1.iter().map(|w| Complex64::new(w.to_f64(), 0.0)).collect();
        (xs, ws)
    }
}

impl CF for Complex {
    fn add(&self, o: &Self) -> Self {
        (self + o).complete((self.prec().0, self.prec().0))
    }
    fn sub(&self, o: &Self) -> Self {
        (self - o).complete((self.prec().0, self.prec().0))
    }
    fn mul(&self, o: &Self) -> Self {
        (self * o).complete((self.prec().0, self.prec().0))
    }
    fn div(&self, o: &Self) -> Self {
        (self / o).complete((self.prec().0, self.prec().0))
    }
    fn neg(&self) -> Self {
        (-self).complete((self.prec().0, self.prec().0))
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_assign(&mut self, o: &Self) {
        *self -= o;
    }
    fn mul_assign(&mut self, o: &Self) {
        *self *= o;
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn abs_f64(&self) -> f64 {
        mpnum::cabs_f64(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.real().to_f64(), self.imag().to_f64())
    }
    fn to_mp(&self, prec: u32) -> Complex {
        let mut c = self.clone();
        c.set_prec(prec);
        c
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MpCtx {
    pub prec: u32,
}

impl Ctx for MpCtx {
    type F = Complex;
    fn from_c64(&self, z: Complex64) -> Complex {
        Complex::with_val(self.prec, (z.re, z.im))
    }
    fn from_rat(&self, r: &Rat) -> Complex {
        let num = rug::Integer::from_str_radix(&r.numer().to_string(), 10).unwrap();
        let den = rug::Integer::from_str_radix(&r.denom().to_string(), 10).unwrap();
        let q = rug::Rational::from((num, den));
        Complex::with_val(self.prec, (Float::with_val(self.prec, q), Float::new(self.prec)))
    }
    fn eps_log2(&self) -> f64 {
        -(self.prec as f64)
    }
    fn gauss_legendre(&self, n: usize) -> (Vec<Complex>, Vec<Complex>) {
        let rule = mpnum::legendre::gauss_legendre(n, self.prec);
        let xs = rule
            .0
            .iter()
            .map(|x| Complex::with_val(self.prec, (x, &Float::new(self.prec))))
            .collect();
        let ws = rule
            .1
            .iter()
            .map(|w| Complex::with_val(self.prec, (w, &Float::new(self.prec))))
            .collect();
        (xs, ws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ternary::rat;

    #[test]
    fn mp_rational_embedding_is_exact() {
        let ctx = MpCtx { prec: 96 };
        let x = ctx.from_rat(&rat(1, 3));
        let three = ctx.from_f64(3.0);
        let prod = x.mul(&three);
        assert!((prod.to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-25);
    }

    #[test]
    fn exp_agrees_across_fields() {
        let z = Complex64::new(0.3, -1.2);
        let a = CF::exp(&z);
        let ctx = MpCtx { prec: 80 };
        let b = ctx.from_c64(z).exp().to_c64();
        assert!((a - b).norm() < 1e-14);
    }
}
