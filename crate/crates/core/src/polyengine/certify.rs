//! Exact degree, order and sign certificates for the families.
//!
//! A leading (or trailing) form computed modulo a prime at its nominal
//! degree certifies the true degree whenever it is nonzero, so large
//! indices never need the expanded polynomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dense::Integers;
use super::families::{closed_form_degree, family_in, tu0_degrees, tu0_sum_degree, FamilyId};
use super::ring::{Form, FormRing, PlaneRing, PointRing, SubstRing};
use super::sparse::{parse_poly, PolyError, SparsePoly, Var};
use super::uni::UniPoly;
use crate::exactcore::{pow2, ExactInt};
use crate::modp::{primes, PrimeField};

/// Degree data of a single polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub total_degree: u32,
    pub min_total_degree: u32,
    pub degrees: Vec<(String, u32)>,
    /// Degree of the part free of every variable but d (−1 if that part is 0).
    pub pure_d_degree: i64,
    /// The lowest form, when it is a single monomial.
    pub min_form_monomial: Option<Vec<u32>>,
}

pub fn degree_report(poly: &SparsePoly) -> Result<DegreeReport, PolyError> {
    let total_degree = poly.total_degree()?;
    let min_total_degree = poly.min_total_degree()?;
    let degrees = poly.vars().iter().map(|&v| (v.name().to_string(), poly.degree_in(v))).collect();
    let pure_d_degree = match poly.index_of(Var::D) {
        Some(di) => poly
            .terms()
            .filter(|(e, _)| e.iter().enumerate().all(|(i, &x)| i == di || x == 0))
            .map(|(e, _)| e[di] as i64)
            .max()
            .unwrap_or(-1),
        None => -1,
    };
    let low = poly.component(min_total_degree);
    let min_form_monomial = (low.term_count() == 1).then(|| low.terms().next().unwrap().0);
    Ok(DegreeReport {
        total_degree,
        min_total_degree,
        degrees,
        pure_d_degree,
        min_form_monomial,
    })
}

fn certificate_primes() -> Vec<u64> {
    primes(3)
}

/// Leading form of a family modulo a prime, at its nominal degree.
pub fn top_form_mod_p(family: FamilyId, index: u32, p: u64) -> Option<Form<u64>> {
    let ring = FormRing::top(PrimeField::new(p));
    family_in(&ring, family, index, None).ok().flatten()
}

/// Exact degree certified by a nonzero leading form modulo some prime.
pub fn certified_degree(family: FamilyId, index: u32) -> Option<u64> {
    certificate_primes().into_iter().find_map(|p| {
        top_form_mod_p(family, index, p)
            .filter(|f| !f.is_zero_form())
            .map(|f| f.degree as u64)
    })
}

/// Whether x^deg and y^deg both occur, certified modulo a prime.
pub fn extreme_monomials_present(family: FamilyId, index: u32) -> bool {
    certificate_primes().into_iter().any(|p| {
        top_form_mod_p(family, index, p).is_some_and(|f| {
            let n = f.degree as usize;
            f.coeffs.len() == n + 1 && f.coeffs[0] != 0
        })
    })
}

/// Exact lowest form over the integers.
pub fn exact_bottom_form(family: FamilyId, index: u32) -> Option<Form<BigInt>> {
    family_in(&FormRing::bottom(Integers), family, index, None).ok().flatten()
}

/// Exact value at the origin.
pub fn constant_term(family: FamilyId, index: u32) -> BigInt {
    let ring = PointRing {
        k: Integers,
        x0: BigInt::zero(),
        y0: BigInt::zero(),
    };
    family_in(&ring, family, index, None).expect("family without parameter")
}

/// Exact restriction to c = 0, as a polynomial in d.
pub fn restriction_c0(family: FamilyId, index: u32) -> UniPoly {
    let ring = SubstRing::new(Integers, Vec::new(), vec![BigInt::zero(), BigInt::from(1)]);
    UniPoly::new(family_in(&ring, family, index, None).expect("family without parameter"))
}

/// Exact restriction to d = 0, as a polynomial in c.
pub fn restriction_d0(family: FamilyId, index: u32) -> UniPoly {
    let ring = SubstRing::on_x_axis(Integers);
    UniPoly::new(family_in(&ring, family, index, None).expect("family without parameter"))
}

/// Exact (T⁰_m, U⁰_m) in a.
pub fn tu0_exact(m: u32) -> (UniPoly, UniPoly) {
    let ring = SubstRing::on_x_axis(Integers);
    let (t, u) = super::families::tu0(&ring, m);
    (UniPoly::new(t), UniPoly::new(u))
}

/// Sign of the coefficients of p(−A) when they all agree: 1, −1, or 0 for
/// mixed signs (and for p = 0).
pub fn sign_in_minus_a(p: &UniPoly) -> i8 {
    let signs: Vec<bool> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c.is_positive() == (i % 2 == 0))
        .collect();
    match (signs.iter().all(|&s| s), signs.iter().all(|&s| !s)) {
        _ if signs.is_empty() => 0,
        (true, _) => 1,
        (_, true) => -1,
        _ => 0,
    }
}

/// Expected signs of (T⁰_m(−A), U⁰_m(−A)).
pub fn tu0_expected_signs(m: u32) -> (i8, i8) {
    (if m % 2 == 1 { -1 } else { 1 }, -1)
}

/// Checks, as exact identities in free variables, that the displayed
/// T⁰/U⁰ recursion at a = −A is carried by the recursion
///
/// T̃' = AŨ², Ũ' = T̃D, T̃'' = (T̃D)², Ũ'' = Ũ²(AŨ² + 2T̃D),
/// D' = 2AŨ⁴ + T̃³D + 2T̃ŨD², D = 2Ũ − T̃,
///
/// whose right-hand sides have nonnegative coefficients. Together with the
/// seeds T̃_2 = 1, Ũ_2 = A + 2, D_1 = 2A + 3 this makes every coefficient
/// of T⁰_m(−A) and U⁰_m(−A) sign-coherent, for all m.
pub fn tu0_sign_identities() -> Vec<(String, bool)> {
    let vars = [Var::A, Var::B, Var::T];
    let p = |s: &str| parse_poly(&vars, s).expect("identity polynomial");
    // A, Ũ = b, T̃ = t, a = −A.
    let a = p("-a");
    let u_disp = p("-b");
    let t_disp = p("t");
    let d = p("2*b - t");
    let t_odd = p("a*b^2");
    let u_odd = p("t").mul(&d);
    let t_next = u_odd.pow(2);
    let u_next = p("b^2").mul(&p("a*b^2").add(&p("2*t").mul(&d)));
    let d_next = p("2*a*b^4").add(&p("t^3").mul(&d)).add(&p("2*t*b").mul(&d.pow(2)));
    let two = BigInt::from(2);
    let four = BigInt::from(4);
    let checks = vec![
        ("T_odd = -A U^2", a.mul(&u_disp.pow(2)) == t_odd.neg()),
        ("U_odd = -T D", t_disp.mul(&t_disp.add(&u_disp.scale(&two))) == u_odd.neg()),
        ("T_even = (T D)^2", u_odd.neg().pow(2) == t_next),
        (
            "U_even = -U^2 (A U^2 + 2 T D)",
            u_disp
                .pow(2)
                .mul(&a.mul(&u_disp.pow(2)).add(&t_disp.pow(2).scale(&two)).add(&t_disp.mul(&u_disp).scale(&four)))
                == u_next.neg(),
        ),
        ("D_next = 2 U_even - T_even", u_next.scale(&two).sub(&t_next) == d_next),
    ];
    checks.into_iter().map(|(s, ok)| (s.to_string(), ok)).collect()
}

/// One checked claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub holds: bool,
}

impl Claim {
    pub fn new(id: impl Into<String>, statement: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Claim {
        let expected = expected.to_string();
        let computed = computed.to_string();
        Claim {
            id: id.into(),
            statement: statement.into(),
            holds: expected == computed,
            expected,
            computed,
        }
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "inconclusive".to_string(), |d| d.to_string())
}

fn degree_claim(family: FamilyId, index: u32, label: &str) -> Claim {
    let expected = closed_form_degree(family, index).expect("closed form exists");
    Claim::new(
        format!("deg.{}.{index:02}", family.name()),
        format!("deg {label} is given by its closed form"),
        expected,
        opt(certified_degree(family, index)),
    )
}

/// Every degree, order, constant-term and sign claim for the families,
/// indices up to `max_index` (T⁰/U⁰ up to `tu0_max`).
pub fn degree_suite(max_index: u32, tu0_max: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    for n in 1..=max_index {
        out.push(degree_claim(FamilyId::P, n, &format!("P_{n}")));
        if n >= 3 {
            out.push(Claim::new(
                format!("const.P.{n:02}"),
                format!("P_{n}(0,0) = 1"),
                1,
                constant_term(FamilyId::P, n),
            ));
            out.push(Claim::new(
                format!("extreme.P.{n:02}"),
                format!("c^deg and d^deg occur in P_{n}"),
                true,
                extreme_monomials_present(FamilyId::P, n),
            ));
            let q0 = constant_term(FamilyId::Q, n);
            out.push(Claim::new(format!("const.Q.{n:02}"), format!("Q_{n}(0,0) != 0"), true, !q0.is_zero()));
        }
        out.push(degree_claim(FamilyId::G, n, &format!("G_{n}")));
        out.push(degree_claim(FamilyId::CPplus2dQ, n, &format!("cP_{n} + 2dQ_{n}")));
        out.push(Claim::new(
            format!("cterm.CPplus2dQ.{n:02}"),
            format!("c^deg occurs in cP_{n} + 2dQ_{n}"),
            true,
            certificate_primes().into_iter().any(|p| {
                top_form_mod_p(FamilyId::CPplus2dQ, n, p)
                    .is_some_and(|f| f.coeffs.len() == f.degree as usize + 1)
            }),
        ));
        out.push(degree_claim(FamilyId::R, n, &format!("R_{n}")));
        let bottom = exact_bottom_form(FamilyId::R, n);
        let expected_min = pow2(n as u64 - 1);
        let single_d = bottom.as_ref().is_some_and(|f| f.coeffs.len() == 1 && !f.coeffs[0].is_zero());
        out.push(Claim::new(
            format!("mindeg.R.{n:02}"),
            format!("mindeg R_{n} = 2^{}", n - 1),
            &expected_min,
            bottom.as_ref().map_or_else(|| "zero".to_string(), |f| f.degree.to_string()),
        ));
        out.push(Claim::new(
            format!("mindeg-monomial.R.{n:02}"),
            format!("the lowest form of R_{n} is a single power of d"),
            true,
            single_d,
        ));
        out.push(degree_claim(FamilyId::R1, n, &format!("R1_{n}")));
        let r1 = restriction_c0(FamilyId::R, n);
        let r1_rec = restriction_c0(FamilyId::R1, n);
        out.push(Claim::new(
            format!("pure-d.R.{n:02}"),
            format!("R_{n}(0,d) equals R1_{n}(d)"),
            true,
            r1 == r1_rec,
        ));
        let vertex = closed_form_degree(FamilyId::R, n).unwrap() - ExactInt::from(r1.degree().unwrap_or(0));
        let third = (pow2(n as u64) - if n % 2 == 0 { ExactInt::from(1) } else { ExactInt::from(-1) }) / 3;
        out.push(Claim::new(
            format!("vertex.R.{n:02}"),
            format!("deg R_{n} - deg R1_{n} = (2^{n} - (-1)^{n})/3"),
            third,
            vertex,
        ));
        out.push(degree_claim(FamilyId::T, n, &format!("T_{n}")));
        out.push(degree_claim(FamilyId::U, n, &format!("U_{n}")));
    }
    for (statement, ok) in tu0_sign_identities() {
        out.push(Claim::new(format!("tu0.identity.{statement}"), statement, true, ok));
    }
    for m in 1..=tu0_max {
        let (dt, du) = tu0_degrees(m);
        let ct = certified_degree(FamilyId::T0, m);
        let cu = certified_degree(FamilyId::U0, m);
        out.push(Claim::new(format!("deg.T0.{m:02}"), format!("deg T0_{m} from the degree recursion"), dt, opt(ct)));
        out.push(Claim::new(format!("deg.U0.{m:02}"), format!("deg U0_{m} from the degree recursion"), du, opt(cu)));
        if let Some(closed) = closed_form_degree(FamilyId::T0, m) {
            out.push(Claim::new(format!("closed.T0.{m:02}"), format!("deg T0_{m} = (2^{m}+1)/3"), closed, opt(ct)));
        }
        if let Some(closed) = closed_form_degree(FamilyId::U0, m) {
            out.push(Claim::new(format!("closed.U0.{m:02}"), format!("deg U0_{m} = (2^{m}-1)/3"), closed, opt(cu)));
        }
        let sum = certificate_primes().into_iter().find_map(|p| {
            let ring = FormRing::top(PrimeField::new(p));
            let (t, u) = super::families::tu0(&ring, m);
            ring.add(&t, &u).filter(|f| !f.is_zero_form()).map(|f| f.degree as u64)
        });
        out.push(Claim::new(
            format!("deg.T0+U0.{m:02}"),
            format!("deg(T0_{m} + U0_{m}) = (2^{m} - (-1)^{m})/3"),
            tu0_sum_degree(m),
            opt(sum),
        ));
        out.push(Claim::new(
            format!("max.T0+U0.{m:02}"),
            format!("deg(T0_{m} + U0_{m}) is the larger of the two degrees"),
            dt.max(du),
            opt(sum),
        ));
    }
    for m in 1..=tu0_max.min(12) {
        let (t, u) = tu0_exact(m);
        let (st, su) = tu0_expected_signs(m);
        out.push(Claim::new(
            format!("sign.T0.{m:02}"),
            format!("coefficients of T0_{m}(-A) all have sign {st}"),
            st,
            sign_in_minus_a(&t),
        ));
        out.push(Claim::new(
            format!("sign.U0.{m:02}"),
            format!("coefficients of U0_{m}(-A) all have sign {su}"),
            su,
            sign_in_minus_a(&u),
        ));
    }
    out
}

/// Whether T⁰_m has only positive coefficients in a, read literally.
pub fn tu0_literally_positive(m: u32) -> (bool, bool) {
    let (t, u) = tu0_exact(m);
    let pos = |p: &UniPoly| p.coeffs().iter().all(|c| !c.is_negative());
    (pos(&t), pos(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyengine::families::{family_poly, Budget};

    #[test]
    fn reports() {
        let b = Budget::default();
        let p6 = family_poly(FamilyId::P, 6, None, &b).unwrap();
        assert_eq!(degree_report(&p6).unwrap().total_degree, 10);
        let r3 = family_poly(FamilyId::R, 3, None, &b).unwrap();
        let rep = degree_report(&r3).unwrap();
        assert_eq!(rep.min_total_degree, 4);
        assert_eq!(rep.min_form_monomial, Some(vec![0, 4]));
        let t5 = family_poly(FamilyId::T0, 5, None, &b).unwrap();
        let u5 = family_poly(FamilyId::U0, 5, None, &b).unwrap();
        assert_eq!(degree_report(&t5.add(&u5)).unwrap().total_degree, 11);
    }

    #[test]
    fn certificates_match_expansion() {
        let b = Budget::default();
        for f in [FamilyId::P, FamilyId::G, FamilyId::R, FamilyId::CPplus2dQ, FamilyId::T, FamilyId::U, FamilyId::R1] {
            for n in 1..=6 {
                let poly = family_poly(f, n, None, &b).unwrap();
                assert_eq!(certified_degree(f, n), Some(poly.total_degree().unwrap() as u64), "{f}_{n}");
                assert_eq!(constant_term(f, n), poly.coefficient(&[0, 0]));
            }
        }
        let r3 = family_poly(FamilyId::R, 3, None, &b).unwrap();
        let bottom = exact_bottom_form(FamilyId::R, 3).unwrap();
        assert_eq!(bottom.degree, 4);
        assert_eq!(bottom.coeffs, vec![r3.coefficient(&[0, 4])]);
        assert_eq!(restriction_d0(FamilyId::R, 3), UniPoly::from_i64(&[0, 0, 0, 0, 0, 0, 0, 0, 1, 1]));
    }

    #[test]
    fn literal_positivity_fails_but_signs_cohere() {
        assert_eq!(tu0_literally_positive(3), (false, false));
        let (t3, _) = tu0_exact(3);
        assert_eq!(t3, UniPoly::from_i64(&[0, 4, -4, 1]));
        assert!(tu0_sign_identities().iter().all(|(_, ok)| *ok));
        for m in 1..=8 {
            let (t, u) = tu0_exact(m);
            assert_eq!((sign_in_minus_a(&t), sign_in_minus_a(&u)), tu0_expected_signs(m), "m={m}");
        }
    }

    #[test]
    fn small_suite_holds() {
        let claims = degree_suite(7, 9);
        let bad: Vec<_> = claims.iter().filter(|c| !c.holds).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
