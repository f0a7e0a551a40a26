//! Exact integers, rationals and the handful of elementary number-theoretic
//! functions every count is built from.
//!
//! Arguments here never exceed a few thousand, so factorization is plain
//! trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Reduced fraction with positive denominator. `BigRational` canonicalizes
/// on every construction and every arithmetic result.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("{func}: argument must be positive, got {value}")]
    NonPositive { func: &'static str, value: i64 },
    #[error("{context}: expected an integer, got {value}")]
    NonIntegral { context: String, value: String },
    #[error("{context}: expected a non-negative value, got {value}")]
    Negative { context: String, value: String },
    #[error("{func}: precondition violated: {detail}")]
    Domain { func: &'static str, detail: String },
}

fn require_positive(func: &'static str, n: u64) -> Result<(), NumberError> {
    if n == 0 {
        Err(NumberError::NonPositive { func, value: 0 })
    } else {
        Ok(())
    }
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<ExactInt, NumberError> {
    require_positive("euler_phi", n)?;
    Ok(ExactInt::from(phi_u64(n)))
}

pub(crate) fn phi_u64(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn moebius_mu(n: u64) -> Result<i8, NumberError> {
    require_positive("moebius_mu", n)?;
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, NumberError> {
    require_positive("divisors", n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// 2^k as an exact integer.
pub fn pow2(k: u64) -> ExactInt {
    ExactInt::one() << (k as usize)
}

/// 2^k for any integer k as an exact rational.
pub fn pow2_rat(k: i64) -> ExactRational {
    if k >= 0 {
        ExactRational::from_integer(pow2(k as u64))
    } else {
        ExactRational::new(ExactInt::one(), pow2(k.unsigned_abs()))
    }
}

/// (-1)^k.
pub fn sign_pow(k: i64) -> ExactRational {
    if k.rem_euclid(2) == 0 {
        ExactRational::one()
    } else {
        -ExactRational::one()
    }
}

/// (-2)^k for k ≥ 0.
pub fn neg2_pow(k: u64) -> ExactRational {
    sign_pow(k as i64) * pow2_rat(k as i64)
}

pub fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(ExactInt::from(n), ExactInt::from(d))
}

pub fn int_rat(n: impl Into<ExactInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// Collapses a rational that must be an integer; anything else is reported
/// as a formula misuse.
pub fn require_integer(value: ExactRational, context: impl Into<String>) -> Result<ExactInt, NumberError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(NumberError::NonIntegral {
            context: context.into(),
            value: value.to_string(),
        })
    }
}

pub fn require_nonnegative(value: ExactInt, context: impl Into<String>) -> Result<ExactInt, NumberError> {
    if value.is_negative() {
        Err(NumberError::Negative {
            context: context.into(),
            value: value.to_string(),
        })
    } else {
        Ok(value)
    }
}

/// Lossy conversion used only for reporting.
pub fn to_f64(r: &ExactRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        f64::NAN
    }
}

pub fn is_zero_rat(r: &ExactRational) -> bool {
    r.is_zero()
}

/// Serde adapter writing an [`ExactInt`] as a JSON number of any size.
pub mod decimal {
    use super::ExactInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            other => return Err(D::Error::custom(format!("expected an integer, got {other}"))),
        };
        ExactInt::from_str(&text).map_err(D::Error::custom)
    }

    /// Same, for optional values.
    pub mod option {
        use super::ExactInt;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<ExactInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ExactInt>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] ExactInt);
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), ExactInt::from(1));
        assert_eq!(euler_phi(6).unwrap(), ExactInt::from(2));
        assert_eq!(euler_phi(12).unwrap(), ExactInt::from(4));
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(moebius_mu(1).unwrap(), 1);
        assert_eq!(moebius_mu(6).unwrap(), 1);
        assert_eq!(moebius_mu(12).unwrap(), 0);
        assert_eq!(moebius_mu(30).unwrap(), -1);
        assert!(moebius_mu(0).is_err());
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(8).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn phi_matches_coprime_count() {
        for n in 1..300u64 {
            let brute = (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64;
            assert_eq!(phi_u64(n), brute, "n={n}");
        }
    }

    #[test]
    fn divisor_sums_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            let ds = divisors(n).unwrap();
            let phi_sum: u64 = ds.iter().map(|&d| phi_u64(d)).sum();
            assert_eq!(phi_sum, n);
            let mu_sum: i64 = ds.iter().map(|&d| moebius_mu(d).unwrap() as i64).sum();
            assert_eq!(mu_sum, if n == 1 { 1 } else { 0 });
        }
    }

    #[test]
    fn non_integral_is_an_error() {
        assert!(require_integer(rat(1, 2), "half").is_err());
        assert_eq!(require_integer(rat(6, 3), "two").unwrap(), ExactInt::from(2));
    }

    proptest! {
        #[test]
        fn rational_add_sub_roundtrip(a in -10_000i64..10_000, b in 1i64..10_000,
                                      c in -10_000i64..10_000, d in 1i64..10_000) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!((x.clone() + y.clone()) - y, x);
        }
    }
}
