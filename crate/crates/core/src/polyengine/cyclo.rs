//! Cyclotomic data and exact factor profiles on the boundary lines.
//!
//! The line d = 0 meets the curves at the parameters c_{p,q} with
//! 1/c = −4cos²(πp/q). Their minimal polynomial Φ̃_q comes from ψ_q, the
//! minimal polynomial of 2cos(2π/q), through 2cos(2πp/q) = −2 − 1/c.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sparse::{PolyError, SparsePoly, Var};
use super::uni::UniPoly;
use crate::exactcore::{divisors, NumberError};

/// Φ_n(z).
pub fn cyclotomic(n: u64) -> Result<UniPoly, NumberError> {
    let mut p = UniPoly::monomial(n as usize).sub(&UniPoly::one());
    for d in divisors(n)? {
        if d < n {
            p = p.div_exact(&cyclotomic(d)?).expect("cyclotomic factor divides z^n - 1");
        }
    }
    Ok(p)
}

/// ψ_q(x), the minimal polynomial of 2cos(2π/q), of degree φ(q)/2 for q ≥ 3.
pub fn psi(q: u64) -> Result<UniPoly, NumberError> {
    if q < 3 {
        return Err(NumberError::Domain {
            func: "psi",
            detail: format!("q = {q} must be at least 3"),
        });
    }
    let phi = cyclotomic(q)?;
    let k = phi.degree().unwrap() / 2;
    // z^{-k} Φ_q(z) = c_k + Σ c_{k+i} V_i(x) with V_i(z + 1/z) = z^i + z^{-i}.
    let x = UniPoly::monomial(1);
    let mut v_prev = UniPoly::from_i64(&[2]);
    let mut v = x.clone();
    let mut out = UniPoly::new(vec![phi.coeff(k)]);
    for i in 1..=k {
        out = out.add(&v.scale(&phi.coeff(k + i)));
        let next = x.mul(&v).sub(&v_prev);
        v_prev = std::mem::replace(&mut v, next);
    }
    Ok(out)
}

/// Φ̃_q(c) as a univariate polynomial: primitive, positive leading
/// coefficient, degree φ(q)/2, roots exactly the c_{p,q}.
pub fn cpq_minimal_uni(q: u64) -> Result<UniPoly, NumberError> {
    let psi = psi(q)?;
    let k = psi.degree().unwrap();
    // c^k ψ(−2 − 1/c) = Σ ψ_i (−2c − 1)^i c^{k−i}.
    let lin = UniPoly::from_i64(&[-1, -2]);
    let mut out = UniPoly::zero();
    for i in 0..=k {
        let term = lin.pow(i as u32).mul(&UniPoly::monomial(k - i)).scale(&psi.coeff(i));
        out = out.add(&term);
    }
    Ok(out.primitive())
}

pub fn cpq_minimal_poly(q: u64) -> Result<SparsePoly, NumberError> {
    Ok(SparsePoly::from_univariate(&cpq_minimal_uni(q)?, Var::C))
}

/// A coordinate line on which a polynomial is restricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Line {
    D0,
    B0,
    E0,
}

impl Line {
    pub fn var(self) -> Var {
        match self {
            Line::D0 => Var::D,
            Line::B0 => Var::B,
            Line::E0 => Var::E,
        }
    }
}

/// Where on the line the order is measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePoint {
    Rational(BigRational),
    /// All conjugate points c_{p,q} together, through Φ̃_q.
    Cpq(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RestrictError {
    #[error("polynomial vanishes identically on {0:?}")]
    VanishesOnLine(Line),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error("restriction has the non-unit cofactor {0}")]
    UnexpectedFactor(String),
}

/// Restriction of `poly` to `line`, as a univariate polynomial in the one
/// remaining variable.
pub fn restrict(poly: &SparsePoly, line: Line) -> Result<UniPoly, RestrictError> {
    let r = poly.substitute(line.var(), &BigInt::zero());
    if r.is_zero() {
        return Err(RestrictError::VanishesOnLine(line));
    }
    let r = r.compact();
    match r.vars() {
        [] => Ok(UniPoly::new(vec![r.coefficient(&[])])),
        [v] => Ok(r.to_univariate(*v)?),
        vs => Err(PolyError::NotUnivariate(vs[0]).into()),
    }
}

/// Order of vanishing of the restriction at a point, or the exponent of
/// Φ̃_q in it.
pub fn restrict_and_order(poly: &SparsePoly, line: Line, at: &LinePoint) -> Result<BigInt, RestrictError> {
    let r = restrict(poly, line)?;
    Ok(uni_order(&r, at)?)
}

pub fn uni_order(r: &UniPoly, at: &LinePoint) -> Result<BigInt, NumberError> {
    Ok(BigInt::from(match at {
        LinePoint::Rational(x) => r.order_at(x).unwrap_or(0),
        LinePoint::Cpq(q) => r.strip_factor(&cpq_minimal_uni(*q)?).0,
    }))
}

/// unit · c^a · Π_q Φ̃_q(c)^{e_q}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorProfile {
    pub unit: String,
    pub c_power: usize,
    pub exponents: BTreeMap<u64, usize>,
}

impl FactorProfile {
    pub fn exponent(&self, q: u64) -> usize {
        self.exponents.get(&q).copied().unwrap_or(0)
    }
}

/// Factors a univariate restriction completely over the Φ̃_q, 3 ≤ q ≤ q_max.
pub fn factor_profile_uni(r: &UniPoly, q_max: u64) -> Result<FactorProfile, RestrictError> {
    let a = r.low_degree().ok_or(RestrictError::UnexpectedFactor("0".into()))?;
    let mut rest = r.shift_down(a);
    let mut exponents = BTreeMap::new();
    for q in 3..=q_max {
        if rest.degree() == Some(0) {
            break;
        }
        let (e, cof) = rest.strip_factor(&cpq_minimal_uni(q)?);
        if e > 0 {
            exponents.insert(q, e);
            rest = cof;
        }
    }
    if rest.degree() != Some(0) {
        return Err(RestrictError::UnexpectedFactor(rest.to_string()));
    }
    Ok(FactorProfile {
        unit: rest.coeff(0).to_string(),
        c_power: a,
        exponents,
    })
}

/// Factor profile of the restriction to d = 0.
pub fn factor_profile_on_line(poly: &SparsePoly, line: Line, q_max: u64) -> Result<FactorProfile, RestrictError> {
    factor_profile_uni(&restrict(poly, line)?, q_max)
}

/// Numerical value of c_{p,q}.
pub fn cpq_value(p: u64, q: u64) -> f64 {
    let c = (std::f64::consts::PI * p as f64 / q as f64).cos();
    -1.0 / (4.0 * c * c)
}

/// True when every nonzero coefficient is positive.
pub fn all_positive(p: &UniPoly) -> bool {
    p.coeffs().iter().all(|c| !c.is_negative())
}

/// Exact root test for a rational point.
pub fn is_root(p: &UniPoly, x: &BigRational) -> bool {
    p.eval_rational(x).is_zero() && !p.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::euler_phi;
    use crate::polyengine::sparse::parse_poly;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1).unwrap(), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), UniPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), UniPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn psi_small() {
        assert_eq!(psi(3).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(psi(4).unwrap(), UniPoly::from_i64(&[0, 1]));
        assert_eq!(psi(5).unwrap(), UniPoly::from_i64(&[-1, 1, 1]));
        assert_eq!(psi(6).unwrap(), UniPoly::from_i64(&[-1, 1]));
        assert!(psi(2).is_err());
    }

    #[test]
    fn cpq_polys() {
        let c = |s: &str| parse_poly(&[Var::C], s).unwrap();
        assert_eq!(cpq_minimal_poly(3).unwrap(), c("1 + c"));
        assert_eq!(cpq_minimal_poly(4).unwrap(), c("1 + 2*c"));
        assert_eq!(cpq_minimal_poly(5).unwrap(), c("c^2 + 3*c + 1"));
        for q in 3..=24u64 {
            let p = cpq_minimal_uni(q).unwrap();
            let half = euler_phi(q).unwrap() / 2;
            assert_eq!(BigInt::from(p.degree().unwrap()), half, "q={q}");
            for pp in (1..q).filter(|&pp| crate::exactcore::gcd_u64(pp, q) == 1) {
                let x = cpq_value(pp, q);
                let v = p.coeffs().iter().rev().fold(0.0, |acc, k| acc * x + crate::exactcore::to_f64(&BigRational::from_integer(k.clone())));
                let scale: f64 = p.coeffs().iter().enumerate().map(|(i, k)| crate::exactcore::to_f64(&BigRational::from_integer(k.abs())) * x.abs().powi(i as i32)).sum();
                assert!(v.abs() < 1e-9 * scale, "q={q} p={pp}");
            }
        }
    }

    #[test]
    fn orders_on_d0() {
        let cd = |s: &str| parse_poly(&[Var::C, Var::D], s).unwrap();
        let p = cd("c + c^2 + 2*d");
        let minus_one = LinePoint::Rational(BigRational::from_integer((-1).into()));
        assert_eq!(restrict_and_order(&p, Line::D0, &minus_one).unwrap(), BigInt::from(1));
        assert_eq!(restrict_and_order(&p, Line::D0, &LinePoint::Cpq(3)).unwrap(), BigInt::from(1));
        assert!(matches!(
            restrict_and_order(&cd("d + c*d"), Line::D0, &minus_one),
            Err(RestrictError::VanishesOnLine(Line::D0))
        ));
        let prof = factor_profile_on_line(&cd("c + 3*c^2 + 2*c^3 + d"), Line::D0, 8).unwrap();
        assert_eq!(prof.c_power, 1);
        assert_eq!(prof.exponents, BTreeMap::from([(3, 1), (4, 1)]));
        assert!(matches!(
            factor_profile_on_line(&cd("c^2 + 7 + d"), Line::D0, 8),
            Err(RestrictError::UnexpectedFactor(_))
        ));
    }
}
