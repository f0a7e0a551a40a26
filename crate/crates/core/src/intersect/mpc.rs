//! Arbitrary-precision complex numbers over MPFR floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use rug::{Assign, Float, Integer};

pub type Real = Float;

fn prec32(prec: usize) -> u32 {
    prec as u32
}

pub fn real_zero(prec: usize) -> Real {
    Float::new(prec32(prec))
}

pub fn real_f64(x: f64, prec: usize) -> Real {
    Float::with_val(prec32(prec), x)
}

pub fn real_int(x: &BigInt, prec: usize) -> Real {
    let i = Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits");
    Float::with_val(prec32(prec), i)
}

/// 2^e, exactly.
pub fn pow2(e: i64, prec: usize) -> Real {
    Float::with_val(prec32(prec), Float::i_exp(1, e as i32))
}

/// log2 |x|; −∞ for zero.
pub fn log2_abs(x: &Real) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    e as f64 + m.abs().log2()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

impl Cx {
    pub fn zero(prec: usize) -> Cx {
        Cx { re: real_zero(prec), im: real_zero(prec) }
    }

    pub fn one(prec: usize) -> Cx {
        Cx { re: real_f64(1.0, prec), im: real_zero(prec) }
    }

    pub fn from_real(re: Real) -> Cx {
        let im = Float::new(re.prec());
        Cx { re, im }
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Cx {
        Cx { re: real_f64(z.re, prec), im: real_f64(z.im, prec) }
    }

    pub fn from_int(x: &BigInt, prec: usize) -> Cx {
        Cx::from_real(real_int(x, prec))
    }

    pub fn prec(&self) -> usize {
        self.re.prec() as usize
    }

    pub fn with_precision(&self, prec: usize) -> Cx {
        Cx { re: Float::with_val(prec32(prec), &self.re), im: Float::with_val(prec32(prec), &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Real {
        let p = self.re.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    /// |z| rounded to the working precision.
    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn log2_abs(&self) -> f64 {
        let a = log2_abs(&self.re);
        let b = log2_abs(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2f64).powf(2.0 * (lo - hi))).log2()
    }

    pub fn scale(&self, s: &Real) -> Cx {
        let p = self.re.prec();
        Cx { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// self ← self·z + a, with a scratch value.
    pub fn mul_add_assign(&mut self, z: &Cx, a: &Cx, t: &mut Real) {
        t.assign(&self.re * &z.re);
        *t -= &self.im * &z.im;
        self.im *= &z.re;
        self.im += &self.re * &z.im;
        self.im += &a.im;
        self.re.assign(&*t + &a.re);
    }

    /// Lexicographic order on (re, im).
    pub fn canonical_cmp(&self, o: &Cx) -> Ordering {
        self.re
            .partial_cmp(&o.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&o.im).unwrap_or(Ordering::Equal))
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        write!(f, "{:.15e}{:+.15e}i", z.re, z.im)
    }
}

fn wp(a: &Cx, b: &Cx) -> u32 {
    a.re.prec().max(b.re.prec())
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        let p = wp(self, o);
        Cx { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        let p = wp(self, o);
        Cx { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        let p = wp(self, o);
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= &self.im * &o.im;
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += &self.im * &o.re;
        Cx { re, im }
    }
}

impl Div for &Cx {
    type Output = Cx;
    fn div(self, o: &Cx) -> Cx {
        let n = o.norm_sqr();
        let num = self * &o.conj();
        Cx { re: num.re / &n, im: num.im / &n }
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Horner evaluation of p and p' at z; coefficients in ascending order.
pub fn horner_with_derivative(coeffs: &[Cx], z: &Cx, prec: usize) -> (Cx, Cx) {
    let mut p = Cx::zero(prec);
    let mut dp = Cx::zero(prec);
    let mut t = real_zero(prec);
    for a in coeffs.iter().rev() {
        dp.mul_add_assign(z, &p, &mut t);
        p.mul_add_assign(z, a, &mut t);
    }
    (p, dp)
}

pub fn horner(coeffs: &[Cx], z: &Cx, prec: usize) -> Cx {
    let mut p = Cx::zero(prec);
    let mut t = real_zero(prec);
    for a in coeffs.iter().rev() {
        p.mul_add_assign(z, a, &mut t);
    }
    p
}

/// Horner evaluation of a real polynomial at a real point.
pub fn horner_real(coeffs: &[Real], x: &Real, prec: usize) -> Real {
    let mut p = real_zero(prec);
    for c in coeffs.iter().rev() {
        p *= x;
        p += c;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let p = 128;
        let a = Cx::from_c64(Complex64::new(1.0, 2.0), p);
        let b = Cx::from_c64(Complex64::new(-3.0, 0.5), p);
        let q = &(&a / &b) * &b;
        assert!((&q - &a).log2_abs() < -120.0);
        assert_eq!((&a * &b).to_c64(), Complex64::new(-4.0, -5.5));
        assert_eq!((-&a).to_c64(), Complex64::new(-1.0, -2.0));
        assert!((a.log2_abs() - 5f64.sqrt().log2()).abs() < 1e-12);
        assert_eq!(Cx::zero(p).log2_abs(), f64::NEG_INFINITY);
        let mut h = a.clone();
        let mut t = real_zero(p);
        h.mul_add_assign(&b, &a, &mut t);
        assert_eq!(h.to_c64(), Complex64::new(-3.0, -3.5));
    }

    #[test]
    fn big_integers_convert() {
        let x: BigInt = BigInt::from(-7) * BigInt::from(2).pow(300) + 5;
        let r = real_int(&x, 400);
        assert!((log2_abs(&r) - (7f64.log2() + 300.0)).abs() < 1e-12);
        let back = r + real_int(&BigInt::from(-5), 400);
        assert_eq!(back, real_int(&(BigInt::from(-7) * BigInt::from(2).pow(300)), 400));
        assert_eq!(log2_abs(&pow2(-3000, 64)), -3000.0);
    }

    #[test]
    fn horner_matches_direct_evaluation() {
        let p = 200;
        let cs: Vec<Cx> = [3.0, -1.0, 0.5, 2.0].iter().map(|&x| Cx::from_c64(Complex64::new(x, 0.0), p)).collect();
        let z = Cx::from_c64(Complex64::new(0.25, -2.0), p);
        let (v, dv) = horner_with_derivative(&cs, &z, p);
        let zc = Complex64::new(0.25, -2.0);
        let want = 3.0 - zc + 0.5 * zc * zc + 2.0 * zc * zc * zc;
        let dwant = -1.0 + zc + 6.0 * zc * zc;
        assert!((v.to_c64() - want).norm() < 1e-12);
        assert!((dv.to_c64() - dwant).norm() < 1e-12);
        assert_eq!(horner(&cs, &z, p).to_c64(), v.to_c64());
    }
}
