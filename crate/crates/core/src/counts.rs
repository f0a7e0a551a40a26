//! Closed-form counting functions for hyperbolic components of quadratic
//! rational maps.
//!
//! Every formula is evaluated in exact rationals and collapsed to an integer
//! at the end; a non-integral intermediate result is reported as an error
//! rather than rounded.
//!
//! The limb counts ν′_q(j) come in two readings that disagree exactly at
//! j = q (see [`Variant`]). Everything downstream of ν′ takes the variant
//! explicitly.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactcore::{
    divisors, gcd_u64, int_rat, moebius_mu, neg2_pow, phi_u64, pow2, pow2_rat, rat, require_integer,
    require_nonnegative, sign_pow, ExactInt, ExactRational, NumberError,
};

/// Which reading of ν′_q(j) to use.
///
/// `PaperDisplay` is the piecewise display that vanishes for j ≤ q.
/// `MarkovRecurrence` is the closed form of the limb Markov chain, which
/// gives 1 at j = q. They agree everywhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    PaperDisplay,
    MarkovRecurrence,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::PaperDisplay, Variant::MarkovRecurrence];

    pub fn short_name(self) -> &'static str {
        match self {
            Variant::PaperDisplay => "paper",
            Variant::MarkovRecurrence => "markov",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "paper" | "paper-display" | "paperdisplay" => Ok(Variant::PaperDisplay),
            "markov" | "markov-recurrence" | "markovrecurrence" => Ok(Variant::MarkovRecurrence),
            other => Err(format!("unknown variant `{other}` (expected paper|markov)")),
        }
    }
}

/// An exact count, tagged with the ν′ variant when the value depends on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountValue {
    #[serde(with = "crate::exactcore::decimal")]
    pub value: ExactInt,
    pub variant: Option<Variant>,
}

impl CountValue {
    /// Evaluates `f` under both variants and tags the result only if they differ.
    pub fn from_variants<F>(variant: Variant, f: F) -> Result<CountValue, NumberError>
    where
        F: Fn(Variant) -> Result<ExactInt, NumberError>,
    {
        let chosen = f(variant)?;
        let other = f(match variant {
            Variant::PaperDisplay => Variant::MarkovRecurrence,
            Variant::MarkovRecurrence => Variant::PaperDisplay,
        })?;
        Ok(CountValue {
            variant: if chosen == other { None } else { Some(variant) },
            value: chosen,
        })
    }
}

/// Leading coefficient of η_IV(n, m) as a function of 2^m, and the bound on
/// the remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticData {
    pub coefficient: ExactRational,
    pub bound: ExactInt,
}

fn domain(func: &'static str, detail: impl Into<String>) -> NumberError {
    NumberError::Domain {
        func,
        detail: detail.into(),
    }
}

fn mersenne(q: u64) -> ExactRational {
    int_rat(pow2(q) - 1)
}

/// ν_q(n): hyperbolic components of period dividing n in a p/q-limb of the
/// Mandelbrot set.
pub fn nu(q: u64, n: u64) -> Result<ExactInt, NumberError> {
    if q < 2 || n < 1 {
        return Err(domain("nu", format!("need q >= 2 and n >= 1, got q={q}, n={n}")));
    }
    require_integer(nu_rational(q, n), format!("nu_{q}({n})"))
}

fn nu_rational(q: u64, n: u64) -> ExactRational {
    let r = n % q;
    let top = pow2_rat(n as i64 - 1);
    if r != 0 {
        (top - pow2_rat(r as i64 - 1)) / mersenne(q)
    } else {
        (top - rat(1, 2)) / mersenne(q) + rat(1, 2)
    }
}

/// ν′_q(j) under the chosen reading.
pub fn nu_prime(q: u64, j: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    if q < 2 || j < 1 {
        return Err(domain("nu_prime", format!("need q >= 2 and j >= 1, got q={q}, j={j}")));
    }
    let big_j = j - 1;
    let r = big_j % q;
    let base = (pow2_rat(big_j as i64) - pow2_rat(r as i64)) / mersenne(q);
    let value = match variant {
        Variant::PaperDisplay => {
            if big_j < q {
                ExactRational::zero()
            } else if r + 2 <= q {
                base
            } else {
                int_rat(1) + base
            }
        }
        Variant::MarkovRecurrence => {
            if r == q - 1 {
                base + int_rat(1)
            } else {
                base
            }
        }
    };
    require_integer(value, format!("nu'_{q}({j})"))
}

fn check_order(func: &'static str, n: u64, m: u64) -> Result<(), NumberError> {
    if n < 1 || m < 1 {
        Err(domain(func, format!("arguments must be positive, got ({n},{m})")))
    } else {
        Ok(())
    }
}

/// Σ_{2≤q≤n} φ(q) ν_q(n) ν_q(m), starting the sum at `q_from`.
fn limb_pair_sum(q_from: u64, n: u64, m: u64) -> ExactRational {
    (q_from..=n)
        .map(|q| int_rat(phi_u64(q)) * nu_rational(q, n) * nu_rational(q, m))
        .fold(ExactRational::zero(), |a, b| a + b)
}

/// η_IV(n, m): type IV components with one attracting cycle of period
/// dividing n and the other of period dividing m. Symmetric in (n, m).
///
/// The type II correction uses gcd(n, m). It depends on the ν′ variant only
/// through η_II(gcd), which first differs at gcd = 6.
pub fn eta_iv(n: u64, m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    check_order("eta_iv", n, m)?;
    let (n, m) = if n <= m { (n, m) } else { (m, n) };
    let (ni, mi) = (n as i64, m as i64);
    let head = (int_rat(5) * pow2_rat(ni + mi - 3) + pow2_rat(ni - 2) + pow2_rat(mi - 2)) / int_rat(3);
    let limbs = limb_pair_sum(2, n, m) / int_rat(2);
    let type_ii = int_rat(eta_ii(gcd_u64(n, m), variant)?);
    let parity = (sign_pow(ni) + sign_pow(mi) + sign_pow(ni + mi)) / int_rat(6);
    let value = require_integer(head - limbs - type_ii + parity, format!("eta_IV({n},{m})"))?;
    require_nonnegative(value, format!("eta_IV({n},{m})"))
}

/// η_IV evaluated through the Bezout-ledger rewriting: product of degrees,
/// boundary correction, the cancelling ν_2 pair, the low-period line and
/// the type II correction (with gcd).
pub fn eta_iv_bezout_form(n: u64, m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    check_order("eta_iv_bezout_form", n, m)?;
    let (n, m) = if n <= m { (n, m) } else { (m, n) };
    let (ni, mi) = (n as i64, m as i64);
    let (sn, sm) = (sign_pow(ni), sign_pow(mi));
    let one = int_rat(1);
    let line1 = (pow2_rat(ni) - int_rat(3) - sn.clone()) * (int_rat(7) * pow2_rat(mi) + int_rat(3) - sm.clone())
        / int_rat(36);
    let line2 = -limb_pair_sum(3, n, m) / int_rat(2);
    let nu2 = |k: i64| pow2_rat(k) / int_rat(6) + sign_pow(k) / int_rat(3);
    let line3 = -(nu2(ni) * nu2(mi)) / int_rat(2);
    let line4 = (nu2(ni) * nu2(mi)) / int_rat(2);
    let line5 = (int_rat(4) + sn.clone()) / int_rat(6) * pow2_rat(mi) - (one.clone() + sn.clone()) * sm.clone() / int_rat(6)
        + (one.clone() + sn) * (one + sm) / int_rat(4);
    let line6 = -int_rat(eta_ii(gcd_u64(n, m), variant)?);
    require_integer(line1 + line2 + line3 + line4 + line5 + line6, format!("eta_IV rewrite ({n},{m})"))
}

/// Number of points of 𝒳_n ∩ 𝒴_m inside the affine chart ℛ predicted by
/// Bezout: product of degrees minus the boundary multiplicities at the
/// points c_{p,q}. Requires 3 ≤ n.
pub fn chart_count_iv(n: u64, m: u64) -> Result<ExactInt, NumberError> {
    if n < 3 || m < 1 {
        return Err(domain("chart_count_iv", format!("need n >= 3 and m >= 1, got ({n},{m})")));
    }
    let (ni, mi) = (n as i64, m as i64);
    let product = (pow2_rat(ni) - int_rat(3) - sign_pow(ni)) * (int_rat(7) * pow2_rat(mi) + int_rat(3) - sign_pow(mi))
        / int_rat(36);
    let lower = if n <= m { n } else { m };
    let boundary = (3..=lower)
        .map(|q| int_rat(phi_u64(q)) * nu_rational(q, n) * nu_rational(q, m))
        .fold(ExactRational::zero(), |a, b| a + b)
        / int_rat(2);
    let value = require_integer(product - boundary, format!("chart count ({n},{m})"))?;
    require_nonnegative(value, format!("chart count ({n},{m})"))
}

/// Type IV components with one cycle of period exactly n and the other of
/// period dividing m (Möbius inversion in the first argument).
pub fn eta_iv_exact_first(n: u64, m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    check_order("eta_iv_exact_first", n, m)?;
    let mut total = ExactInt::zero();
    for d in divisors(n)? {
        let mu = moebius_mu(n / d)?;
        if mu != 0 {
            total += ExactInt::from(mu) * eta_iv(d, m, variant)?;
        }
    }
    require_nonnegative(total, format!("eta_IV exact-first ({n},{m})"))
}

/// C_n, the coefficient of 2^m in η_IV(n, m).
pub fn eta_iv_coefficient(n: u64) -> Result<ExactRational, NumberError> {
    if n < 1 {
        return Err(domain("eta_iv_coefficient", "n must be positive"));
    }
    let sum = (2..=n)
        .map(|q| int_rat(phi_u64(q)) * nu_rational(q, n) / mersenne(q))
        .fold(ExactRational::zero(), |a, b| a + b);
    Ok(rat(5, 3) * pow2_rat(n as i64 - 3) + rat(1, 12) - sum / int_rat(4))
}

/// Coefficient of 2^m in the count with first period exactly n.
pub fn exact_first_coefficient(n: u64) -> Result<ExactRational, NumberError> {
    let mut total = ExactRational::zero();
    for d in divisors(n)? {
        let mu = moebius_mu(n / d)?;
        if mu != 0 {
            total += int_rat(mu as i64) * eta_iv_coefficient(d)?;
        }
    }
    Ok(total)
}

/// ε_n(m) = η_IV(n, m) − C_n·2^m.
pub fn epsilon(n: u64, m: u64, variant: Variant) -> Result<ExactRational, NumberError> {
    if n < 1 || m < n {
        return Err(domain("epsilon", format!("need 1 <= n <= m, got ({n},{m})")));
    }
    Ok(int_rat(eta_iv(n, m, variant)?) - eta_iv_coefficient(n)? * pow2_rat(m as i64))
}

pub fn asymptotic_data(n: u64, m: u64) -> Result<AsymptoticData, NumberError> {
    Ok(AsymptoticData {
        coefficient: eta_iv_coefficient(n)?,
        bound: epsilon_bound(n, m),
    })
}

/// 2^n + 2^{2·gcd(n,m)}.
pub fn epsilon_bound(n: u64, m: u64) -> ExactInt {
    pow2(n) + pow2(2 * gcd_u64(n, m))
}

fn check_ii(func: &'static str, m: u64, j: u64) -> Result<(), NumberError> {
    if m < 3 || j < 1 || j >= m {
        Err(domain(func, format!("need m >= 3 and 1 <= j < m, got ({m},{j})")))
    } else {
        Ok(())
    }
}

/// Σ_{q≥3} φ(q) ν′_q(j) ν′_q(k). Terms with q > max(j, k) vanish under
/// both readings.
pub fn limb_prime_pair_sum(j: u64, k: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    let mut total = ExactInt::zero();
    for q in 3..=j.max(k) {
        let a = nu_prime(q, j, variant)?;
        if a.is_zero() {
            continue;
        }
        total += ExactInt::from(phi_u64(q)) * a * nu_prime(q, k, variant)?;
    }
    Ok(total)
}

/// η_II(m, j): type II components of period ≥ 3 dividing m in which the
/// second critical point lies in the j-th image of the immediate basin of
/// the first.
pub fn eta_ii_mj(m: u64, j: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    check_ii("eta_ii_mj", m, j)?;
    let (mi, ji, ki) = (m as i64, j as i64, (m - j) as i64);
    let sm = sign_pow(mi);
    let value = rat(7, 36) * pow2_rat(mi) - (pow2_rat(ji) + pow2_rat(ki)) / int_rat(12)
        - sm.clone() * (neg2_pow(j) + neg2_pow(m - j)) / int_rat(36)
        - rat(1, 4)
        - rat(5, 36) * sm
        + (sign_pow(ji) + sign_pow(ki)) / int_rat(12)
        - int_rat(limb_prime_pair_sum(j, m - j, variant)?) / int_rat(2);
    let value = require_integer(value, format!("eta_II({m},{j})"))?;
    require_nonnegative(value, format!("eta_II({m},{j})"))
}

/// Σ_{d|m, d≥3} (m/d) η′_II(d), evaluated from its closed form.
///
/// The limb correction is summed over every split j + (m − j) = m, which
/// coincides with the printed range q < j < m − q under `PaperDisplay`.
pub fn eta_ii_weighted(m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    if m < 3 {
        return Err(domain("eta_ii_weighted", format!("need m >= 3, got {m}")));
    }
    let mi = m as i64;
    let mr = int_rat(mi);
    let sm = sign_pow(mi);
    let mut correction = ExactInt::zero();
    for j in 1..m {
        correction += limb_prime_pair_sum(j, m - j, variant)?;
    }
    let value = rat(7, 36) * mr.clone() * pow2_rat(mi) - rat(37, 108) * pow2_rat(mi) - mr.clone() / int_rat(4)
        - sm.clone() * rat(5, 36) * mr
        + rat(1, 2)
        + sm * rat(5, 54)
        - int_rat(correction) / int_rat(2);
    let value = require_integer(value, format!("weighted eta_II({m})"))?;
    require_nonnegative(value, format!("weighted eta_II({m})"))
}

/// η′_II(d) for every d ≤ m, solved bottom-up from the weighted identity.
pub fn eta_prime_ii_table(m: u64, variant: Variant) -> Result<BTreeMap<u64, ExactInt>, NumberError> {
    let mut table = BTreeMap::new();
    for d in 1..=m {
        let value = match d {
            1 => ExactInt::zero(),
            2 => ExactInt::from(1),
            _ => {
                let mut v = eta_ii_weighted(d, variant)?;
                for e in divisors(d)? {
                    if e >= 3 && e < d {
                        v -= ExactInt::from(d / e) * &table[&e];
                    }
                }
                require_nonnegative(v, format!("eta'_II({d})"))?
            }
        };
        table.insert(d, value);
    }
    Ok(table)
}

/// η′_II(m): type II components of period exactly m.
pub fn eta_prime_ii(m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    if m < 1 {
        return Err(domain("eta_prime_ii", "m must be positive"));
    }
    Ok(eta_prime_ii_table(m, variant)?.remove(&m).expect("table covers m"))
}

/// η_II(m) = Σ_{d|m} η′_II(d).
pub fn eta_ii(m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    if m < 1 {
        return Err(domain("eta_ii", "m must be positive"));
    }
    let table = eta_prime_ii_table(m, variant)?;
    Ok(divisors(m)?.into_iter().map(|d| table[&d].clone()).sum())
}

/// Recovers η′_II from η_II by Möbius inversion.
pub fn eta_prime_ii_by_inversion(m: u64, variant: Variant) -> Result<ExactInt, NumberError> {
    let mut total = ExactInt::zero();
    for d in divisors(m)? {
        let mu = moebius_mu(m / d)?;
        if mu != 0 {
            total += ExactInt::from(mu) * eta_ii(d, variant)?;
        }
    }
    Ok(total)
}

/// 2^k/6 + (−1)^k/3, the closed form of ν_2(k).
pub fn nu2_closed_form(k: u64) -> ExactRational {
    pow2_rat(k as i64) / int_rat(6) + sign_pow(k as i64) / int_rat(3)
}

/// True when the value is non-negative; used by property checks.
pub fn is_count(value: &ExactInt) -> bool {
    !value.is_negative()
}
