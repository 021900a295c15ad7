//! Rational recognition of high-precision reals and square classes in Q.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rug::Float;
use ternary::Rat;

/// Continued-fraction recognition: the convergent p/q of x with
/// q < 2^{prec/4} and |x - p/q| < 2^{-prec/2}, if there is one.
pub fn rational_reconstruct(x: &Float, prec: u32) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // exact rational value of the float
    let (mant, exp) = x.to_integer_exp()?;
    let mant = BigInt::parse_bytes(mant.to_string_radix(10).as_bytes(), 10)?;
    let exact = if exp >= 0 {
        Rat::from_integer(mant << exp as usize)
    } else {
        Rat::new(mant, BigInt::one() << (-exp) as usize)
    };

    let den_bound = BigInt::one() << (prec / 4) as usize;
    // residual bound 2^{-prec/2}
    let res_num = BigInt::one();
    let res_den = BigInt::one() << (prec / 2) as usize;
    let res_bound = Rat::new(res_num, res_den);

    // continued fraction of the exact value
    let mut a = exact.clone();
    let mut h_prev = Rat::from_integer(BigInt::one());
    let mut h = a.floor();
    let mut k_prev = Rat::from_integer(BigInt::zero());
    let mut k = Rat::from_integer(BigInt::one());
    let mut int_part = a.floor();
    let mut h_num = int_part.numer().clone();
    let mut k_num = BigInt::one();
    let mut h_num_prev = BigInt::one();
    let mut k_num_prev = BigInt::zero();
    let _ = (&h_prev, &h, &k_prev, &k);
    for _ in 0..10_000 {
        let conv = Rat::new(h_num.clone(), k_num.clone());
        if k_num.magnitude() < den_bound.magnitude() {
            let resid = (&exact - &conv).abs();
            if resid < res_bound {
                return Some(conv);
            }
        } else {
            return None;
        }
        let frac = &a - &int_part;
        if frac.is_zero() {
            return None; // exhausted without meeting the residual bound
        }
        a = Rat::one() / frac;
        int_part = a.floor();
        let ai = int_part.numer().clone();
        let h_next = &ai * &h_num + &h_num_prev;
        let k_next = &ai * &k_num + &k_num_prev;
        h_num_prev = std::mem::replace(&mut h_num, h_next);
        k_num_prev = std::mem::replace(&mut k_num, k_next);
    }
    None
}

/// Squarefree part D of a nonzero rational: q is a square in Q iff D = 1.
/// Factors small primes and perfect-square cofactors; a residual cofactor
/// that cannot be resolved is an error (the classifier treats it as
/// indeterminate rather than guessing).
pub fn square_class(q: &Rat) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::InvalidInput("square class of zero".into()));
    }
    let n = q.numer() * q.denom();
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut n = n.abs();
    let mut d = BigInt::one();

    let two = BigInt::from(2);
    let mut e2 = 0u64;
    while (&n).is_even() {
        n /= &two;
        e2 += 1;
    }
    if e2 % 2 == 1 {
        d *= &two;
    }
    let mut p = BigInt::from(3);
    let bound = BigInt::from(1_000_000u64);
    while &p * &p <= n && p <= bound {
        let mut e = 0u64;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            d *= &p;
        }
        p += 2;
    }
    if n > BigInt::one() {
        let r = n.sqrt();
        if &r * &r == n {
            // perfect square cofactor contributes nothing
        } else if &p * &p > n {
            // the cofactor is prime
            d *= &n;
        } else {
            return Err(Error::Indeterminate(format!(
                "cannot certify the squarefree part: unfactored cofactor {n}"
            )));
        }
    }
    Ok(sign * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ternary::{rat, rat_int, rat_pow};

    #[test]
    fn reconstruct_small_fraction() {
        let x = Float::with_val(128, 22) / Float::with_val(128, 7);
        assert_eq!(rational_reconstruct(&x, 128).unwrap(), rat(22, 7));
    }

    #[test]
    fn reconstruct_large_power_of_two() {
        let x = Float::with_val(212, 2).pow(40u32);
        use rug::ops::Pow;
        let y: Float = x;
        assert_eq!(rational_reconstruct(&y, 212).unwrap(), rat_pow(&rat_int(2), 40));
    }

    #[test]
    fn pi_is_not_recognized() {
        let x = mpnum::pi(128);
        assert!(rational_reconstruct(&x, 128).is_none());
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&rat_int(4)).unwrap(), 1.into());
        assert_eq!(square_class(&rat_int(18)).unwrap(), 2.into());
        assert_eq!(square_class(&rat(1, 2)).unwrap(), 2.into());
        assert_eq!(square_class(&rat_int(-9)).unwrap(), BigInt::from(-1));
        // 2^28 * (2^40)^2 is a perfect square
        let q = rat_pow(&rat_int(2), 28) * rat_pow(&rat_pow(&rat_int(2), 40), 2);
        assert_eq!(square_class(&q).unwrap(), 1.into());
        assert!(square_class(&rat_int(0)).is_err());
    }

    #[test]
    fn noisy_value_near_integer_is_recognized() {
        // 2^80 + 1e-40: the convergent must land on the integer
        let mut x = Float::with_val(300, 2);
        use rug::ops::Pow;
        x = x.pow(80u32);
        let noisy = x.clone() + Float::with_val(300, 1e-40);
        let r = rational_reconstruct(&noisy, 212).unwrap();
        assert_eq!(r, rat_pow(&rat_int(2), 80));
    }
}
