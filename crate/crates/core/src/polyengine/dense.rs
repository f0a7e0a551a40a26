//! Coefficient domains and dense univariate arithmetic over them.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative coefficient ring given by a context value.
pub trait Domain: Clone + Send + Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn from_int(&self, v: &BigInt) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn one(&self) -> Self::E {
        self.from_i64(1)
    }

    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }

    /// Accumulates a·b into acc.
    fn mul_add(&self, acc: &mut Self::E, a: &Self::E, b: &Self::E) {
        *acc = self.add(acc, &self.mul(a, b));
    }
}

/// The integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Domain for Integers {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn mul_add(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        *acc += a * b;
    }
}

/// Drops trailing zeros so the last entry, if any, is the leading coefficient.
pub fn trim<K: Domain>(k: &K, mut p: Vec<K::E>) -> Vec<K::E> {
    while p.last().is_some_and(|c| k.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn add<K: Domain>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn sub<K: Domain>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    let n = a.len().max(b.len());
    let z = k.zero();
    let out = (0..n)
        .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(k, out)
}

pub fn mul<K: Domain>(k: &K, a: &[K::E], b: &[K::E]) -> Vec<K::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !k.is_zero(y) {
                k.mul_add(&mut out[i + j], x, y);
            }
        }
    }
    trim(k, out)
}

pub fn scale<K: Domain>(k: &K, a: &[K::E], s: &K::E) -> Vec<K::E> {
    trim(k, a.iter().map(|x| k.mul(x, s)).collect())
}

/// Horner evaluation.
pub fn eval<K: Domain>(k: &K, a: &[K::E], x: &K::E) -> K::E {
    a.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

pub fn derivative<K: Domain>(k: &K, a: &[K::E]) -> Vec<K::E> {
    trim(
        k,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect(),
    )
}

/// Index of the lowest nonzero coefficient.
pub fn low_degree<K: Domain>(k: &K, a: &[K::E]) -> Option<usize> {
    a.iter().position(|c| !k.is_zero(c))
}
