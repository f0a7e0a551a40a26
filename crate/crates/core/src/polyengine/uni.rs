//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::{self, Domain, Integers};
use crate::modp::{self, PolyCrt, PrimeField, PrimeStream};

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<BigInt>) -> UniPoly {
        UniPoly {
            coeffs: dense::trim(&Integers, coeffs),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::from_i64(&[1])
    }

    /// x^k.
    pub fn monomial(k: usize) -> UniPoly {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        UniPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::add(&Integers, &self.coeffs, &o.coeffs),
        }
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::sub(&Integers, &self.coeffs, &o.coeffs),
        }
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        UniPoly {
            coeffs: dense::mul(&Integers, &self.coeffs, &o.coeffs),
        }
    }

    pub fn scale(&self, s: &BigInt) -> UniPoly {
        UniPoly {
            coeffs: dense::scale(&Integers, &self.coeffs, s),
        }
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut r = UniPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly {
            coeffs: dense::derivative(&Integers, &self.coeffs),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        dense::eval(&Integers, &self.coeffs, x)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Multiplicity of the root x = 0.
    pub fn low_degree(&self) -> Option<usize> {
        dense::low_degree(&Integers, &self.coeffs)
    }

    /// Divides by x^k, which must divide exactly.
    pub fn shift_down(&self, k: usize) -> UniPoly {
        assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()), "x^{k} does not divide");
        UniPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact quotient over the integers, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        let lead = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        for i in (0..=ds - dd).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= &qi * dj;
            }
            q[i] = qi;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(UniPoly::new(q))
        } else {
            None
        }
    }

    /// Order of vanishing at a rational point.
    pub fn order_at(&self, x: &BigRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lin = UniPoly::new(vec![-x.numer().clone(), x.denom().clone()]);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            k += 1;
        }
        Some(k)
    }

    /// Largest e with d^e | self, and the cofactor.
    pub fn strip_factor(&self, d: &UniPoly) -> (usize, UniPoly) {
        let mut p = self.clone();
        let mut e = 0;
        if d.degree().unwrap_or(0) == 0 {
            return (0, p);
        }
        while let Some(q) = p.div_exact(d) {
            p = q;
            e += 1;
        }
        (e, p)
    }

    /// Reverses the coefficient list: x^deg · p(1/x).
    pub fn reversed(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Maximum bit length of the coefficients.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

/// Greatest common divisor over the integers, primitive with positive
/// leading coefficient, times the gcd of the contents. Computed from
/// images modulo word primes, lifted by Chinese remaindering and confirmed
/// by exact division.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.primitive().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive().scale(&a.content());
    }
    let content = a.content().gcd(&b.content());
    let (a, b) = (a.primitive(), b.primitive());
    let lc_g = a.leading().unwrap().gcd(b.leading().unwrap());
    let mut best = a.degree().unwrap().min(b.degree().unwrap()) + 1;
    let mut crt = PolyCrt::new();
    let mut last: Option<Vec<BigInt>> = None;
    for p in PrimeStream::new() {
        let f = PrimeField::new(p);
        let lca = f.from_int(a.leading().unwrap());
        let lcb = f.from_int(b.leading().unwrap());
        if lca == 0 || lcb == 0 {
            continue;
        }
        let ap: Vec<u64> = a.coeffs.iter().map(|c| f.from_int(c)).collect();
        let bp: Vec<u64> = b.coeffs.iter().map(|c| f.from_int(c)).collect();
        let g = modp::gcd(&f, &ap, &bp);
        let dg = g.len() - 1;
        if dg == 0 {
            return UniPoly::new(vec![content]);
        }
        if dg > best {
            continue;
        }
        if dg < best {
            best = dg;
            crt = PolyCrt::new();
            last = None;
        }
        let scale = f.from_int(&lc_g);
        let image: Vec<u64> = g.iter().map(|c| modp::mulmod(*c, scale, p)).collect();
        crt.add(&image, p);
        let lifted = crt.symmetric();
        if last.as_ref() == Some(&lifted) {
            let cand = UniPoly::new(lifted.clone()).primitive();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand.scale(&content);
            }
        }
        last = Some(lifted);
    }
    unreachable!("prime stream is infinite")
}

/// Squarefree part, primitive with positive leading coefficient.
pub fn squarefree_part(a: &UniPoly) -> UniPoly {
    let a = a.primitive();
    if a.degree().unwrap_or(0) == 0 {
        return a;
    }
    let g = gcd(&a, &a.derivative());
    a.div_exact(&g.primitive()).expect("gcd divides").primitive()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
