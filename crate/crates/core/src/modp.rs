//! Arithmetic modulo word-sized primes: the field, univariate polynomial
//! algorithms over it, and Chinese remaindering back to the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::polyengine::dense::{self, Domain};

/// Z/pZ for a prime p < 2^62.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        debug_assert!(p > 2 && p < (1 << 62));
        PrimeField { p }
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b, self.p);
            }
            b = mulmod(b, b, self.p);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        mulmod(a, self.inv(b), self.p)
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Domain for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced value fits")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let f = PrimeField { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes below 2^62, descending.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Iterator over descending primes below 2^62.
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> PrimeStream {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while !is_prime_u64(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        Some(p)
    }
}

/// Remainder of a by b (b nonzero, trimmed).
pub fn rem(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let q = mulmod(lead, inv, f.p);
            let shift = r.len() - 1 - db;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &mulmod(q, *bi, f.p));
            }
        }
        r.pop();
    }
    dense::trim(f, r)
}

/// Quotient and remainder.
pub fn divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), dense::trim(f, r));
    }
    let mut q = vec![0u64; r.len() - db];
    let inv = f.inv(b[db]);
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            let c = mulmod(lead, inv, f.p);
            q[shift] = c;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &mulmod(c, *bi, f.p));
            }
        }
        r.pop();
    }
    (dense::trim(f, q), dense::trim(f, r))
}

/// Monic gcd.
pub fn gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = dense::trim(f, a.to_vec());
    let mut b = dense::trim(f, b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = f.inv(lc);
        a.iter_mut().for_each(|c| *c = mulmod(*c, inv, f.p));
    }
    a
}

/// Resultant of two univariate polynomials given with their nominal
/// degrees. A vanishing nominal leading coefficient is handled by the
/// usual leading-coefficient power.
pub fn resultant(f: &PrimeField, a: &[u64], deg_a: usize, b: &[u64], deg_b: usize) -> u64 {
    let a = dense::trim(f, a.to_vec());
    let b = dense::trim(f, b.to_vec());
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    debug_assert!(da <= deg_a && db <= deg_b);
    // Res_{m,n}(a,b) with deg a < m picks up lc(b)^{m - deg a} up to sign.
    if da < deg_a && db < deg_b {
        return 0;
    }
    let mut scale = 1u64;
    if da < deg_a {
        let mut s = f.pow(b[db], (deg_a - da) as u64);
        if (deg_b % 2 == 1) && ((deg_a - da) % 2 == 1) {
            s = f.neg(&s);
        }
        scale = mulmod(scale, s, f.p);
    }
    if db < deg_b {
        scale = mulmod(scale, f.pow(a[da], (deg_b - db) as u64), f.p);
    }
    mulmod(scale, resultant_exact(f, a, b), f.p)
}

fn resultant_exact(f: &PrimeField, mut a: Vec<u64>, mut b: Vec<u64>) -> u64 {
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mulmod(acc, f.pow(b[0], da as u64), f.p);
        }
        if da == 0 {
            return mulmod(acc, f.pow(a[0], db as u64), f.p);
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = f.neg(&acc);
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = rem(f, &a, &b);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = mulmod(acc, f.pow(b[db], (da - dr) as u64), f.p);
        a = b;
        b = r;
    }
}

/// Newton interpolation through (xs[i], ys[i]); returns coefficients.
pub fn interpolate(f: &PrimeField, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.div(num, den);
        }
    }
    let mut poly: Vec<u64> = vec![0; n];
    for i in (0..n).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if poly[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = f.add(&next[k + 1], &poly[k]);
            }
            next[k] = f.sub(&next[k], &mulmod(poly[k], xs[i], f.p));
        }
        next[0] = f.add(&next[0], &coef[i]);
        poly = next;
    }
    dense::trim(f, poly)
}

/// Incremental Chinese remaindering with symmetric lift.
#[derive(Debug, Clone)]
pub struct Crt {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Crt {
    pub fn new() -> Crt {
        Crt {
            value: BigInt::zero(),
            modulus: BigInt::from(1),
        }
    }

    pub fn add(&mut self, residue: u64, p: u64) {
        let f = PrimeField { p };
        let current = f.from_int(&self.value);
        let m_mod = f.from_int(&self.modulus);
        let t = f.div(f.sub(&residue, &current), m_mod);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    pub fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1u32;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

/// Coefficientwise CRT of polynomial images.
#[derive(Debug, Clone, Default)]
pub struct PolyCrt {
    pub coeffs: Vec<Crt>,
    pub modulus: BigInt,
}

impl PolyCrt {
    pub fn new() -> PolyCrt {
        PolyCrt {
            coeffs: Vec::new(),
            modulus: BigInt::from(1),
        }
    }

    pub fn add(&mut self, image: &[u64], p: u64) {
        if image.len() > self.coeffs.len() {
            let template = Crt {
                value: BigInt::zero(),
                modulus: self.modulus.clone(),
            };
            self.coeffs.resize(image.len(), template);
        }
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            c.add(image.get(i).copied().unwrap_or(0), p);
        }
        self.modulus *= BigInt::from(p);
    }

    pub fn symmetric(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.coeffs.iter().map(Crt::symmetric).collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps = primes(5);
        assert_eq!(ps.len(), 5);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert_eq!(PrimeStream::new().take(3).collect::<Vec<_>>(), primes(3));
    }

    #[test]
    fn resultant_small() {
        let f = PrimeField::new(1_000_000_007);
        let a = vec![f.reduce_i64(-2), 1];
        let b = vec![f.reduce_i64(-5), 1];
        assert_eq!(resultant(&f, &a, 1, &b, 1), f.reduce_i64(-3));
        // Nominal degree 2 for a linear polynomial against a monic linear one.
        assert_eq!(resultant(&f, &a, 2, &b, 1), f.reduce_i64(3));
        assert_eq!(resultant(&f, &a, 2, &b, 2), 0);
        // Res(x^2 - 1, x - 1) = 0
        let c = vec![f.reduce_i64(-1), 0, 1];
        assert_eq!(resultant(&f, &c, 2, &vec![f.reduce_i64(-1), 1], 1), 0);
        // Res(x^2 + 1, 2x + 3) = 4 * ((-3/2)^2 + 1) = 13
        let d = vec![1, 0, 1];
        let e = vec![3, 2];
        assert_eq!(resultant(&f, &d, 2, &e, 1), 13);
        assert_eq!(resultant(&f, &e, 1, &d, 2), 13);
    }

    #[test]
    fn interpolation_and_crt() {
        let f = PrimeField::new(1_000_000_007);
        let xs: Vec<u64> = (1..=4).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| f.reduce_i64(x as i64 * x as i64 * x as i64 - 2)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), vec![f.reduce_i64(-2), 0, 0, 1]);
        let target = BigInt::from(-123456789012345678i64) * BigInt::from(1000);
        let mut crt = Crt::new();
        for p in primes(3) {
            crt.add(PrimeField::new(p).from_int(&target), p);
        }
        assert_eq!(crt.symmetric(), target);
    }

    #[test]
    fn gcd_mod_p() {
        let f = PrimeField::new(101);
        // (x-1)(x-2) and (x-1)(x+3)
        let a = vec![2, f.reduce_i64(-3), 1];
        let b = vec![f.reduce_i64(-3), 2, 1];
        assert_eq!(gcd(&f, &a, &b), vec![f.reduce_i64(-1), 1]);
        let (q, r) = divrem(&f, &a, &[f.reduce_i64(-1), 1]);
        assert_eq!(q, vec![f.reduce_i64(-2), 1]);
        assert!(r.is_empty());
    }
}
