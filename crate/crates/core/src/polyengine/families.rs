//! The recursive polynomial families and their closed-form degrees.
//!
//! With f(z) = 1 + c/z + d/z², the critical value 1 has orbit P_n/Q_n and
//! the other critical point −2d/c has orbit R_m/S_m. Both pairs obey
//! N' = N² + cNM + dM², M' = N².

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::cpq_minimal_poly;
use super::dense::Integers;
use super::ring::{PlaneRing, SparseRing, SubstRing};
use super::sparse::{SparsePoly, Var};
use super::uni::UniPoly;
use crate::exactcore::{pow2, sign_pow, int_rat, require_integer, ExactInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    P,
    Q,
    R,
    S,
    G,
    CPplus2dQ,
    T,
    U,
    T0,
    U0,
    R1,
    S1,
    LrCubic,
    Y1Cubic,
    CpqMinimal,
    GleasonOrbit,
}

impl FamilyId {
    pub const ALL: [FamilyId; 16] = [
        FamilyId::P,
        FamilyId::Q,
        FamilyId::R,
        FamilyId::S,
        FamilyId::G,
        FamilyId::CPplus2dQ,
        FamilyId::T,
        FamilyId::U,
        FamilyId::T0,
        FamilyId::U0,
        FamilyId::R1,
        FamilyId::S1,
        FamilyId::LrCubic,
        FamilyId::Y1Cubic,
        FamilyId::CpqMinimal,
        FamilyId::GleasonOrbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::P => "P",
            FamilyId::Q => "Q",
            FamilyId::R => "R",
            FamilyId::S => "S",
            FamilyId::G => "G",
            FamilyId::CPplus2dQ => "CPplus2dQ",
            FamilyId::T => "T",
            FamilyId::U => "U",
            FamilyId::T0 => "T0",
            FamilyId::U0 => "U0",
            FamilyId::R1 => "R1",
            FamilyId::S1 => "S1",
            FamilyId::LrCubic => "LrCubic",
            FamilyId::Y1Cubic => "Y1Cubic",
            FamilyId::CpqMinimal => "CpqMinimal",
            FamilyId::GleasonOrbit => "GleasonOrbit",
        }
    }

    /// Variables of the generated polynomial.
    pub fn vars(self) -> &'static [Var] {
        match self {
            FamilyId::T | FamilyId::U => &[Var::A, Var::B],
            FamilyId::T0 | FamilyId::U0 => &[Var::A],
            FamilyId::CpqMinimal | FamilyId::GleasonOrbit => &[Var::C],
            _ => &[Var::C, Var::D],
        }
    }

    /// Smallest admissible index.
    pub fn min_index(self) -> u32 {
        match self {
            FamilyId::CpqMinimal => 3,
            FamilyId::GleasonOrbit => 0,
            _ => 1,
        }
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{family} index {index} is out of range: {detail}")]
    InvalidIndex { family: FamilyId, index: u32, detail: String },
    #[error("{family}_{index} exceeds the budget: {detail}")]
    BudgetExceeded { family: FamilyId, index: u32, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Limits for full expansion. Certificates do not go through here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_index: u32,
    /// Largest total degree a bivariate family is expanded to.
    pub max_bivariate_degree: u64,
    /// Largest degree a univariate family is expanded to.
    pub max_univariate_degree: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_index: 12,
            max_bivariate_degree: 400,
            max_univariate_degree: 4096,
        }
    }
}

/// Orbit pair (N_k, M_k) for k = 1..=n under N' = N² + xNM + yM², M' = N².
fn orbit_pairs<R: PlaneRing>(ring: &R, n0: R::Elem, m0: R::Elem, steps: u32) -> Vec<(R::Elem, R::Elem)> {
    let mut out = vec![(n0, m0)];
    for _ in 1..steps {
        let (n, m) = out.last().unwrap();
        let nn = ring.square(n);
        let cross = ring.mul(&ring.x(), &ring.mul(n, m));
        let tail = ring.mul(&ring.y(), &ring.square(m));
        let next = ring.add(&ring.add(&nn, &cross), &tail);
        out.push((next, nn));
    }
    out
}

/// (P_n, Q_n) with P_1 = 1, Q_1 = 0.
pub fn pq<R: PlaneRing>(ring: &R, n: u32) -> (R::Elem, R::Elem) {
    orbit_pairs(ring, ring.constant(1), ring.constant(0), n).pop().unwrap()
}

/// (R_m, S_m) with R_1 = 4d − c², S_1 = 4d.
pub fn rs<R: PlaneRing>(ring: &R, m: u32) -> (R::Elem, R::Elem) {
    let s1 = ring.scale(&ring.y(), 4);
    let r1 = ring.sub(&s1, &ring.square(&ring.x()));
    orbit_pairs(ring, r1, s1, m).pop().unwrap()
}

/// c·R_m + 2d·S_m.
pub fn g<R: PlaneRing>(ring: &R, m: u32) -> R::Elem {
    let (r, s) = rs(ring, m);
    ring.add(&ring.mul(&ring.x(), &r), &ring.scale(&ring.mul(&ring.y(), &s), 2))
}

/// c·P_j + 2d·Q_j.
pub fn cp_plus_2dq<R: PlaneRing>(ring: &R, j: u32) -> R::Elem {
    let (p, q) = pq(ring, j);
    ring.add(&ring.mul(&ring.x(), &p), &ring.scale(&ring.mul(&ring.y(), &q), 2))
}

/// (T_k, U_k) in (a, b) = (x, y): T_1 = a, U_1 = b − 1,
/// T' = aU², U' = T² + 2TU + bU².
pub fn tu<R: PlaneRing>(ring: &R, k: u32) -> (R::Elem, R::Elem) {
    let mut t = ring.x();
    let mut u = ring.sub(&ring.y(), &ring.constant(1));
    for _ in 1..k {
        let uu = ring.square(&u);
        let nt = ring.mul(&ring.x(), &uu);
        let tt = ring.square(&t);
        let tu2 = ring.scale(&ring.mul(&t, &u), 2);
        let nu = ring.add(&ring.add(&tt, &tu2), &ring.mul(&ring.y(), &uu));
        t = nt;
        u = nu;
    }
    (t, u)
}

/// (T⁰_m, U⁰_m) in a = x, by the reduced two-step recursion.
pub fn tu0<R: PlaneRing>(ring: &R, m: u32) -> (R::Elem, R::Elem) {
    let a = ring.x();
    if m == 1 {
        return (a, ring.constant(-1));
    }
    // (t, u) holds the pair at the last even index.
    let mut t = ring.constant(1);
    let mut u = ring.sub(&a, &ring.constant(2));
    let mut idx = 2;
    while idx + 2 <= m {
        let tt = ring.square(&t);
        let uu = ring.square(&u);
        let t_plus_2u = ring.add(&t, &ring.scale(&u, 2));
        let next_t = ring.mul(&tt, &ring.square(&t_plus_2u));
        let inner = ring.add(
            &ring.add(&ring.mul(&a, &uu), &ring.scale(&tt, 2)),
            &ring.scale(&ring.mul(&t, &u), 4),
        );
        let next_u = ring.mul(&uu, &inner);
        t = next_t;
        u = next_u;
        idx += 2;
    }
    if idx == m {
        (t, u)
    } else {
        let t_plus_2u = ring.add(&t, &ring.scale(&u, 2));
        (ring.mul(&a, &ring.square(&u)), ring.mul(&t, &t_plus_2u))
    }
}

/// (R¹_k, S¹_k) with R¹_1 = S¹_1 = 4d, R¹' = (R¹)² + d(S¹)², S¹' = (R¹)².
pub fn rs1<R: PlaneRing>(ring: &R, k: u32) -> (R::Elem, R::Elem) {
    let mut r = ring.scale(&ring.y(), 4);
    let mut s = r.clone();
    for _ in 1..k {
        let rr = ring.square(&r);
        let next = ring.add(&rr, &ring.mul(&ring.y(), &ring.square(&s)));
        r = next;
        s = rr;
    }
    (r, s)
}

/// q_c^{j+1}(c) − q_c^j(c) for q_c(z) = z² + c, in c = x.
pub fn gleason_orbit<R: PlaneRing>(ring: &R, j: u32) -> R::Elem {
    let c = ring.x();
    let mut z = c.clone();
    for _ in 0..j {
        z = ring.add(&ring.square(&z), &c);
    }
    let next = ring.add(&ring.square(&z), &c);
    ring.sub(&next, &z)
}

fn rat_coeff(r: &BigRational, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> BigRational {
    let s = BigRational::from_integer(BigInt::from(2)) + r;
    f(r, &s)
}

fn check_unit_interval(r: &BigRational) -> Result<(), FamilyError> {
    if r.is_positive() && *r < BigRational::one() {
        Ok(())
    } else {
        Err(FamilyError::InvalidParameter(format!("r = {r} must lie in (0, 1)")))
    }
}

fn clear_denominators(terms: Vec<(Vec<u32>, BigRational)>) -> SparsePoly {
    let lcm = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let p = SparsePoly::from_terms(
        &[Var::C, Var::D],
        terms.into_iter().map(|(e, c)| (e, (c * BigRational::from_integer(lcm.clone())).to_integer())),
    );
    p.normalize()
}

/// The cubic L_r through the maps with a fixed point of multiplier r, in the
/// expanded form of its displayed equation (s = 2 + r):
/// c²r²(8 − cs)/s⁴ − c(cs² + 4r)²/s⁴ + cr(cs² + 4r)(4 − 2cs)/s⁵
/// + 4d² + 4d(cs² + 4r)/s³ + 12dcr/s², with denominators cleared.
pub fn lr_cubic(r: &BigRational) -> Result<SparsePoly, FamilyError> {
    check_unit_interval(r)?;
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let p = |x: &BigRational, k: i32| x.pow(k);
    let terms = vec![
        (vec![3, 0], rat_coeff(r, |r, s| -(p(r, 2) / p(s, 3)) - q(1) - q(2) * r / p(s, 2))),
        (vec![2, 0], rat_coeff(r, |r, s| -(q(8) * r / p(s, 2)) + q(4) * r / p(s, 3))),
        (vec![1, 0], rat_coeff(r, |r, s| -(q(16) * p(r, 2) / p(s, 4)) + q(16) * p(r, 2) / p(s, 5))),
        (vec![1, 1], rat_coeff(r, |r, s| q(4) / s + q(12) * r / p(s, 2))),
        (vec![0, 2], q(4)),
        (vec![0, 1], rat_coeff(r, |r, s| q(16) * r / p(s, 3))),
    ];
    let poly = clear_denominators(terms);
    let cubic = poly.component(3);
    if cubic.term_count() != 1 || cubic.coefficient(&[3, 0]).is_zero() {
        return Err(FamilyError::InvalidParameter(format!("L_{r}: cubic part is not a multiple of c^3")));
    }
    if !poly.coefficient(&[0, 0]).is_zero() {
        return Err(FamilyError::InvalidParameter(format!("L_{r}: nonzero constant term")));
    }
    Ok(poly)
}

/// The multiplier-r fixed-point locus obtained by eliminating the fixed
/// point z from z³ = z² + cz + d and rz³ + cz + 2d = 0 (the factor d
/// removed).
pub fn multiplier_locus(r: &BigRational) -> Result<SparsePoly, FamilyError> {
    check_unit_interval(r)?;
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let one_r = q(1) + r;
    let two_r = q(2) + r;
    let terms = vec![
        (vec![3, 0], -(one_r.clone() * one_r)),
        (vec![2, 0], -r.clone()),
        (vec![1, 1], q(4) * r * r + q(10) * r + q(4)),
        (vec![0, 2], two_r.pow(3)),
        (vec![0, 1], q(4) * r),
    ];
    Ok(clear_denominators(terms))
}

/// c³ − 4cd − 8d², the affine 𝒴₁ cubic.
pub fn y1_cubic() -> SparsePoly {
    SparsePoly::from_terms(&[Var::C, Var::D], [(vec![3, 0], 1), (vec![1, 1], -4), (vec![0, 2], -8)])
}

fn closed_rational(v: BigRational, what: &str) -> ExactInt {
    require_integer(v, what.to_string()).expect("closed-form degree is integral")
}

/// Degree formulas for the families.
pub fn closed_form_degree(family: FamilyId, index: u32) -> Option<ExactInt> {
    let k = index as i64;
    let two_k = int_rat(pow2(index as u64));
    let sgn = sign_pow(k);
    let half = BigRational::new(1.into(), 2.into());
    let sixth = |x: BigRational| x / int_rat(6);
    let v = match family {
        FamilyId::P if index >= 1 => sixth(two_k) - half - sixth(sgn),
        FamilyId::Q if index >= 2 => int_rat(2) * (sixth(int_rat(pow2(index as u64 - 1))) - half - sixth(sign_pow(k - 1))),
        FamilyId::G => sixth(int_rat(7) * two_k) + half - sixth(sgn),
        FamilyId::R => sixth(int_rat(7) * two_k) - sixth(sgn) - half,
        FamilyId::CPplus2dQ => sixth(two_k - sgn) + half,
        FamilyId::T | FamilyId::U => two_k - int_rat(1),
        FamilyId::U0 if index % 2 == 0 => (two_k - int_rat(1)) / int_rat(3),
        FamilyId::T0 if index % 2 == 1 => (two_k + int_rat(1)) / int_rat(3),
        FamilyId::R1 => int_rat(5) * two_k / int_rat(6) - half + sixth(sgn),
        FamilyId::GleasonOrbit => int_rat(pow2(index as u64 + 1)),
        FamilyId::Y1Cubic | FamilyId::LrCubic => int_rat(3),
        _ => return None,
    };
    Some(closed_rational(v, family.name()))
}

/// deg(T⁰_m + U⁰_m) = (2^m − (−1)^m)/3.
pub fn tu0_sum_degree(m: u32) -> ExactInt {
    closed_rational((int_rat(pow2(m as u64)) - sign_pow(m as i64)) / int_rat(3), "T0+U0")
}

/// Nominal degrees of (T⁰_m, U⁰_m) from the degree recursion.
pub fn tu0_degrees(m: u32) -> (u64, u64) {
    if m == 1 {
        return (1, 0);
    }
    let (mut t, mut u) = (0u64, 1u64);
    let mut idx = 2;
    while idx + 2 <= m {
        let nt = 2 * (t + u);
        let nu = 4 * u + 1;
        t = nt;
        u = nu;
        idx += 2;
    }
    if idx == m {
        (t, u)
    } else {
        (2 * u + 1, t + u)
    }
}

fn check_index(family: FamilyId, index: u32, budget: &Budget) -> Result<(), FamilyError> {
    if index < family.min_index() {
        return Err(FamilyError::InvalidIndex {
            family,
            index,
            detail: format!("must be at least {}", family.min_index()),
        });
    }
    if index > budget.max_index && !matches!(family, FamilyId::LrCubic | FamilyId::Y1Cubic | FamilyId::CpqMinimal) {
        return Err(FamilyError::BudgetExceeded {
            family,
            index,
            detail: format!("index budget is {}", budget.max_index),
        });
    }
    let bivariate = family.vars().len() == 2;
    let degree = match family {
        FamilyId::Q if index >= 2 => closed_form_degree(FamilyId::P, index - 1).map(|d| d * 2),
        FamilyId::S if index >= 2 => closed_form_degree(FamilyId::R, index - 1).map(|d| d * 2),
        FamilyId::Q | FamilyId::S => Some(ExactInt::from(1)),
        FamilyId::T0 | FamilyId::U0 => {
            let (t, u) = tu0_degrees(index);
            Some(ExactInt::from(t.max(u)))
        }
        FamilyId::S1 => closed_form_degree(FamilyId::R1, index),
        FamilyId::CpqMinimal => Some(ExactInt::from(index)),
        _ => closed_form_degree(family, index),
    }
    .unwrap_or_default();
    let limit = if bivariate { budget.max_bivariate_degree } else { budget.max_univariate_degree };
    if degree > ExactInt::from(limit) {
        return Err(FamilyError::BudgetExceeded {
            family,
            index,
            detail: format!("degree {degree} exceeds the expansion limit {limit}; use the degree certificates instead"),
        });
    }
    Ok(())
}

/// Evaluates a family in an arbitrary ring. `param` is r for LrCubic.
pub fn family_in<R: PlaneRing>(
    ring: &R,
    family: FamilyId,
    index: u32,
    param: Option<&BigRational>,
) -> Result<R::Elem, FamilyError> {
    if index < family.min_index() {
        return Err(FamilyError::InvalidIndex {
            family,
            index,
            detail: format!("must be at least {}", family.min_index()),
        });
    }
    Ok(match family {
        FamilyId::P => pq(ring, index).0,
        FamilyId::Q => pq(ring, index).1,
        FamilyId::R => rs(ring, index).0,
        FamilyId::S => rs(ring, index).1,
        FamilyId::G => g(ring, index),
        FamilyId::CPplus2dQ => cp_plus_2dq(ring, index),
        FamilyId::T => tu(ring, index).0,
        FamilyId::U => tu(ring, index).1,
        FamilyId::T0 => tu0(ring, index).0,
        FamilyId::U0 => tu0(ring, index).1,
        FamilyId::R1 => rs1(ring, index).0,
        FamilyId::S1 => rs1(ring, index).1,
        FamilyId::GleasonOrbit => gleason_orbit(ring, index),
        FamilyId::Y1Cubic => ring.eval_sparse(&y1_cubic(), Var::C, Var::D),
        FamilyId::LrCubic => {
            let r = param.ok_or_else(|| FamilyError::InvalidParameter("LrCubic needs r".into()))?;
            ring.eval_sparse(&lr_cubic(r)?, Var::C, Var::D)
        }
        FamilyId::CpqMinimal => {
            let p = cpq_minimal_poly(index as u64).map_err(|e| FamilyError::InvalidParameter(e.to_string()))?;
            ring.eval_sparse(&p, Var::C, Var::D)
        }
    })
}

/// Fully expanded family member, subject to the budget.
pub fn family_poly(
    family: FamilyId,
    index: u32,
    param: Option<&BigRational>,
    budget: &Budget,
) -> Result<SparsePoly, FamilyError> {
    check_index(family, index, budget)?;
    match family.vars() {
        [Var::A, Var::B] => family_in(&SparseRing::AB, family, index, param),
        [Var::A] | [Var::C] => {
            let ring = SubstRing::on_x_axis(Integers);
            let coeffs = family_in(&ring, family, index, param)?;
            Ok(SparsePoly::from_univariate(&UniPoly::new(coeffs), family.vars()[0]))
        }
        _ => family_in(&SparseRing::CD, family, index, param),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyengine::sparse::parse_poly;

    fn cd(s: &str) -> SparsePoly {
        parse_poly(&[Var::C, Var::D], s).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn seeds() {
        assert_eq!(family_poly(FamilyId::P, 3, None, &budget()).unwrap(), cd("1 + c + d"));
        assert_eq!(family_poly(FamilyId::Q, 3, None, &budget()).unwrap(), cd("1"));
        assert_eq!(family_poly(FamilyId::R, 1, None, &budget()).unwrap(), cd("4*d - c^2"));
        assert_eq!(family_poly(FamilyId::S, 1, None, &budget()).unwrap(), cd("4*d"));
        let a = |s: &str| parse_poly(&[Var::A], s).unwrap();
        assert_eq!(family_poly(FamilyId::T0, 2, None, &budget()).unwrap(), a("1"));
        assert_eq!(family_poly(FamilyId::U0, 2, None, &budget()).unwrap(), a("a - 2"));
        assert_eq!(family_poly(FamilyId::T0, 1, None, &budget()).unwrap(), a("a"));
        assert_eq!(family_poly(FamilyId::U0, 1, None, &budget()).unwrap(), a("-1"));
        assert_eq!(family_poly(FamilyId::CPplus2dQ, 1, None, &budget()).unwrap(), cd("c"));
        assert_eq!(family_poly(FamilyId::CPplus2dQ, 2, None, &budget()).unwrap(), cd("c + 2*d"));
    }

    #[test]
    fn y1_cubic_matches_g1() {
        let g1 = family_poly(FamilyId::G, 1, None, &budget()).unwrap();
        let h = g1.homogenize(Var::E, None).unwrap();
        let target = parse_poly(&[Var::C, Var::D, Var::E], "c^3 - 4*c*d*e - 8*d^2*e").unwrap();
        assert!(h.equals_up_to_sign(&target));
        assert_eq!(g1.neg(), y1_cubic());
    }

    #[test]
    fn orbit_quotient_is_the_critical_orbit() {
        // f(−2d/c) = R_1/S_1 at a sample point, with f(z) = 1 + c/z + d/z².
        let (c, d) = (rat(3, 1), rat(5, 1));
        let f = |z: &BigRational| rat(1, 1) + &c / z + &d / (z * z);
        let omega = -(rat(2, 1) * &d) / &c;
        let ring = crate::polyengine::ring::PointRing {
            k: Integers,
            x0: BigInt::from(3),
            y0: BigInt::from(5),
        };
        let mut z = omega;
        for m in 1..=4 {
            z = f(&z);
            let (r, s) = rs(&ring, m);
            assert_eq!(BigRational::new(r, s), z, "m={m}");
        }
        // P_1/Q_1 is the critical value ∞ and f(∞) = 1.
        let mut w = rat(1, 1);
        for n in 2..=5 {
            if n > 2 {
                w = f(&w);
            }
            let (p, q) = pq(&ring, n);
            assert_eq!(BigRational::new(p, q), w, "n={n}");
        }
    }

    #[test]
    fn tu0_matches_specialised_tu() {
        // g_{a,b}(w) = a/(w² + 2w + b) started at −1; at b = 0 the
        // reduced pair equals (T_m, U_m)(a, 0) after removing common a-powers.
        for m in 1..=8 {
            let t = family_poly(FamilyId::T, m, None, &budget()).unwrap();
            let u = family_poly(FamilyId::U, m, None, &budget()).unwrap();
            let t = t.substitute(Var::B, &BigInt::zero()).to_univariate(Var::A).unwrap();
            let u = u.substitute(Var::B, &BigInt::zero()).to_univariate(Var::A).unwrap();
            let k = t.low_degree().unwrap_or(0).min(u.low_degree().unwrap_or(0));
            let (t, u) = (t.shift_down(k), u.shift_down(k));
            let t0 = family_poly(FamilyId::T0, m, None, &budget()).unwrap().to_univariate(Var::A).unwrap();
            let u0 = family_poly(FamilyId::U0, m, None, &budget()).unwrap().to_univariate(Var::A).unwrap();
            assert!(
                (t == t0 && u == u0) || (t == t0.neg() && u == u0.neg()),
                "m={m}: {t} / {u} vs {t0} / {u0}"
            );
        }
    }

    #[test]
    fn low_index_values() {
        let t3 = family_poly(FamilyId::T0, 3, None, &budget()).unwrap();
        let u3 = family_poly(FamilyId::U0, 3, None, &budget()).unwrap();
        assert_eq!(t3, parse_poly(&[Var::A], "a^3 - 4*a^2 + 4*a").unwrap());
        assert_eq!(u3, parse_poly(&[Var::A], "2*a - 3").unwrap());
        assert_eq!(
            family_poly(FamilyId::R1, 2, None, &budget()).unwrap(),
            cd("16*d^2 + 16*d^3")
        );
    }

    #[test]
    fn lr_cubic_shape() {
        let l = lr_cubic(&rat(1, 2)).unwrap();
        assert_eq!(l.total_degree().unwrap(), 3);
        assert_eq!(l, cd("3675*c^3 + 1600*c^2 - 8000*c*d + 192*c - 12500*d^2 - 1600*d"));
        assert!(!l.coefficient(&[1, 0]).is_zero());
        assert!(!l.coefficient(&[0, 1]).is_zero());
        assert!(lr_cubic(&rat(1, 1)).is_err());
        assert!(lr_cubic(&rat(0, 1)).is_err());
        for (n, d) in [(1, 3), (2, 3), (1, 7)] {
            let l = lr_cubic(&rat(n, d)).unwrap();
            assert!(l.coefficient(&[0, 0]).is_zero());
            assert_eq!(l.component(3).term_count(), 1);
        }
    }

    #[test]
    fn multiplier_locus_is_the_fixed_point_curve() {
        // At a fixed point z with multiplier r: d = rz³... pick z, r, solve c, d.
        let r = rat(1, 2);
        let locus = multiplier_locus(&r).unwrap();
        for zn in [2i64, 3, -5] {
            let z = rat(zn, 1);
            // z³ = z² + cz + d and r z³ + c z + 2d = 0 give c and d linearly.
            // From the first: d = z³ − z² − cz. Substituting: r z³ + cz + 2z³ − 2z² − 2cz = 0.
            let c = (&r * z.pow(3) + rat(2, 1) * z.pow(3) - rat(2, 1) * z.pow(2)) / &z;
            let d = z.pow(3) - z.pow(2) - &c * &z;
            let val = locus
                .terms()
                .map(|(e, k)| BigRational::from_integer(k.clone()) * c.pow(e[0] as i32) * d.pow(e[1] as i32))
                .fold(BigRational::zero(), |a, b| a + b);
            assert!(val.is_zero(), "z={zn}");
        }
        assert_ne!(locus, lr_cubic(&r).unwrap());
    }

    #[test]
    fn closed_forms_small() {
        for n in 3..=8 {
            let p = family_poly(FamilyId::P, n, None, &budget()).unwrap();
            assert_eq!(ExactInt::from(p.total_degree().unwrap()), closed_form_degree(FamilyId::P, n).unwrap());
        }
        for m in 1..=6 {
            let gm = family_poly(FamilyId::G, m, None, &budget()).unwrap();
            assert_eq!(ExactInt::from(gm.total_degree().unwrap()), closed_form_degree(FamilyId::G, m).unwrap());
        }
        assert_eq!(closed_form_degree(FamilyId::P, 6).unwrap(), ExactInt::from(10));
        assert_eq!(tu0_degrees(5), (11, 7));
        assert_eq!(tu0_sum_degree(5), ExactInt::from(11));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            family_poly(FamilyId::P, 13, None, &budget()),
            Err(FamilyError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            family_poly(FamilyId::T, 12, None, &budget()),
            Err(FamilyError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            family_poly(FamilyId::CpqMinimal, 2, None, &budget()),
            Err(FamilyError::InvalidIndex { .. })
        ));
        assert!("nope".parse::<FamilyId>().is_err());
        assert_eq!("gleasonorbit".parse::<FamilyId>().unwrap(), FamilyId::GleasonOrbit);
    }
}
