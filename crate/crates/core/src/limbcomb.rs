//! Combinatorial oracles on the Mandelbrot side: limb counts by counting
//! odd-denominator angles, and the limb Markov chain.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactcore::{gcd_u64, int_rat, phi_u64, pow2, sign_pow, ExactInt, ExactRational, NumberError};

/// The p/q-limb of the Mandelbrot set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LimbIndex {
    pub p: u64,
    pub q: u64,
}

impl LimbIndex {
    pub fn new(p: u64, q: u64) -> Result<LimbIndex, NumberError> {
        if p >= 1 && p < q && gcd_u64(p, q) == 1 {
            Ok(LimbIndex { p, q })
        } else {
            Err(NumberError::Domain {
                func: "LimbIndex::new",
                detail: format!("{p}/{q} is not a reduced fraction in (0,1)"),
            })
        }
    }

    /// All limbs with denominator q, in increasing p.
    pub fn all(q: u64) -> Vec<LimbIndex> {
        (1..q).filter(|&p| gcd_u64(p, q) == 1).map(|p| LimbIndex { p, q }).collect()
    }
}

/// State vector (a_1(n), …, a_q(n)) of the limb Markov chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovState {
    pub q: u64,
    pub n: u64,
    pub a: Vec<ExactInt>,
}

impl MarkovState {
    /// a(0) = (0, …, 0, 1).
    pub fn new(q: u64) -> MarkovState {
        assert!(q >= 2, "Markov chain needs q >= 2");
        let mut a = vec![ExactInt::zero(); q as usize];
        a[q as usize - 1] = ExactInt::from(1);
        MarkovState { q, n: 0, a }
    }

    pub fn step(&mut self) {
        let first = self.a[0].clone();
        let rest: ExactInt = self.a[1..].iter().sum();
        self.a.rotate_left(1);
        let last = self.a.len() - 1;
        self.a[last] = first * 2 + rest;
        self.n += 1;
    }

    pub fn mass(&self) -> ExactInt {
        self.a.iter().sum()
    }

    pub fn a1(&self) -> &ExactInt {
        &self.a[0]
    }
}

/// Counts k with 1/(2^q−1) ≤ k/(2^m−1) ≤ 2/(2^q−1), a closed interval.
/// Returns (K, K/2); an odd K is an error.
pub fn interval_count(q: u64, m: u64) -> Result<(ExactInt, ExactInt), NumberError> {
    if q < 2 || m < 1 {
        return Err(NumberError::Domain {
            func: "interval_count",
            detail: format!("need q >= 2 and m >= 1, got q={q}, m={m}"),
        });
    }
    let a = pow2(m) - ExactInt::from(1);
    let b = pow2(q) - ExactInt::from(1);
    let lo = Integer::div_ceil(&a, &b);
    let hi = Integer::div_floor(&(a * 2), &b);
    let k = if hi >= lo { hi - lo + 1 } else { ExactInt::zero() };
    if k.is_odd() {
        return Err(NumberError::Domain {
            func: "interval_count",
            detail: format!("odd angle count {k} for q={q}, m={m}"),
        });
    }
    let nu = &k / 2;
    Ok((k, nu))
}

/// ν′_q(j) = a_1(j−1) by direct iteration of the chain.
pub fn markov_nu_prime(q: u64, j: u64) -> Result<ExactInt, NumberError> {
    if q < 2 || j < 1 {
        return Err(NumberError::Domain {
            func: "markov_nu_prime",
            detail: format!("need q >= 2 and j >= 1, got q={q}, j={j}"),
        });
    }
    let mut state = MarkovState::new(q);
    for _ in 1..j {
        state.step();
    }
    Ok(state.a1().clone())
}

/// Σ_{2≤q≤j} φ(q) ν′_q(j), checked against 2^{j−1} − 1.
pub fn s_sum(j: u64) -> Result<ExactInt, NumberError> {
    if j < 2 {
        return Err(NumberError::Domain {
            func: "s_sum",
            detail: format!("need j >= 2, got {j}"),
        });
    }
    let total = limb_sum(2, j)?;
    let expected = pow2(j - 1) - 1;
    if total != expected {
        return Err(NumberError::Domain {
            func: "s_sum",
            detail: format!("sum {total} differs from 2^(j-1)-1 = {expected} at j={j}"),
        });
    }
    Ok(total)
}

fn limb_sum(q_from: u64, j: u64) -> Result<ExactInt, NumberError> {
    let mut total = ExactInt::zero();
    for q in q_from..=j {
        total += ExactInt::from(phi_u64(q)) * markov_nu_prime(q, j)?;
    }
    Ok(total)
}

/// T(j) = 2^j − j − 1.
pub fn t_count(j: u64) -> ExactInt {
    pow2(j) - ExactInt::from(j) - 1
}

/// Σ_{3≤q≤j} φ(q) ν′_q(j) with the Markov reading.
pub fn limb_sum_from_three(j: u64) -> Result<ExactInt, NumberError> {
    limb_sum(3, j)
}

/// (2^j − (−1)^j)/3 − 1, the value the sum from q = 3 actually takes.
pub fn pro4_corrected_rhs(j: u64) -> ExactRational {
    (int_rat(pow2(j)) - sign_pow(j as i64)) / int_rat(3) - int_rat(1)
}

/// (2^j + (−1)^j)/3 − 1, the sign as printed. Never an integer.
pub fn pro4_printed_rhs(j: u64) -> ExactRational {
    (int_rat(pow2(j)) + sign_pow(j as i64)) / int_rat(3) - int_rat(1)
}

/// (2^{j−1} − (−1)^{j−1})/3.
pub fn nu_prime_two_closed_form(j: u64) -> ExactInt {
    let v = (int_rat(pow2(j - 1)) - sign_pow(j as i64 - 1)) / int_rat(3);
    v.to_integer()
}
