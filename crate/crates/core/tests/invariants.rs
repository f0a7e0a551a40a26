use num_traits::Signed;
use proptest::prelude::*;

use hypercount::counts::{
    epsilon, epsilon_bound, eta_ii_mj, eta_ii_weighted, eta_iv, eta_iv_bezout_form, eta_prime_ii,
    eta_prime_ii_by_inversion, nu, nu2_closed_form, nu_prime, Variant,
};
use hypercount::exactcore::{divisors, euler_phi, moebius_mu, pow2, ExactInt, ExactRational};
use hypercount::intersect::ledger::{bezout_ledger, Case, MultiplicitySource};
use hypercount::limbcomb::{interval_count, markov_nu_prime, MarkovState};
use hypercount::polyengine::certify::restriction_d0;
use hypercount::polyengine::cyclo::factor_profile_uni;
use hypercount::polyengine::FamilyId;

fn variant() -> impl Strategy<Value = Variant> {
    prop::sample::select(Variant::ALL.to_vec())
}

proptest! {
    #[test]
    fn divisor_sums(n in 1u64..=10_000) {
        let ds = divisors(n).unwrap();
        let phi: ExactInt = ds.iter().map(|&d| euler_phi(d).unwrap()).sum();
        prop_assert_eq!(phi, ExactInt::from(n));
        let mu: i64 = ds.iter().map(|&d| moebius_mu(d).unwrap() as i64).sum();
        prop_assert_eq!(mu, i64::from(n == 1));
    }

    #[test]
    fn eta_ii_symmetry((m, j) in (3u64..=16).prop_flat_map(|m| (Just(m), 1..m)), v in variant()) {
        prop_assert_eq!(eta_ii_mj(m, j, v).unwrap(), eta_ii_mj(m, m - j, v).unwrap());
    }

    #[test]
    fn eta_ii_row_sums(m in 3u64..=16, v in variant()) {
        let sum: ExactInt = (1..m).map(|j| eta_ii_mj(m, j, v).unwrap()).sum();
        prop_assert_eq!(sum, eta_ii_weighted(m, v).unwrap());
    }

    #[test]
    fn moebius_roundtrip(m in 1u64..=16, v in variant()) {
        prop_assert_eq!(eta_prime_ii_by_inversion(m, v).unwrap(), eta_prime_ii(m, v).unwrap());
    }

    #[test]
    fn eta_iv_is_symmetric(n in 1u64..=14, m in 1u64..=14) {
        prop_assert_eq!(eta_iv(n, m, Variant::PaperDisplay).unwrap(), eta_iv(m, n, Variant::PaperDisplay).unwrap());
    }

    #[test]
    fn rewrite_equivalence((n, m) in (1u64..=12).prop_flat_map(|m| (1..=m, Just(m))), v in variant()) {
        prop_assert_eq!(eta_iv(n, m, v).unwrap(), eta_iv_bezout_form(n, m, v).unwrap());
    }

    #[test]
    fn epsilon_is_bounded(n in 1u64..=6, extra in 0u64..=20) {
        let m = n + extra;
        let e = epsilon(n, m, Variant::PaperDisplay).unwrap();
        prop_assert!(e.abs() <= ExactRational::from(epsilon_bound(n, m)));
    }

    #[test]
    fn nu_two_closed_form(k in 1u64..=40) {
        prop_assert_eq!(ExactRational::from(nu(2, k).unwrap()), nu2_closed_form(k));
    }

    #[test]
    fn interval_count_is_nu(q in 2u64..=8, extra in 0u64..=16) {
        let n = q + extra;
        prop_assert_eq!(interval_count(q, n).unwrap().1, nu(q, n).unwrap());
    }

    #[test]
    fn markov_chain_matches_its_closed_form(q in 2u64..=8, j in 1u64..=24) {
        let chain = markov_nu_prime(q, j).unwrap();
        prop_assert_eq!(&chain, &nu_prime(q, j, Variant::MarkovRecurrence).unwrap());
        let paper = nu_prime(q, j, Variant::PaperDisplay).unwrap();
        prop_assert_eq!(paper == chain, j != q);
    }

    #[test]
    fn markov_mass(q in 2u64..=8, steps in 0u64..=30) {
        let mut s = MarkovState::new(q);
        for _ in 0..steps {
            s.step();
        }
        prop_assert_eq!(s.mass(), pow2(steps));
    }

    #[test]
    fn x_side_profile((q, n) in (3u64..=10).prop_flat_map(|n| (3..=n, Just(n)))) {
        let p = factor_profile_uni(&restriction_d0(FamilyId::P, n as u32), n).unwrap();
        prop_assert_eq!(ExactInt::from(p.exponent(q)), nu(q, n).unwrap());
    }

    #[test]
    fn case_text_roundtrip(n in 3u64..=20, extra in 0u64..=10, j in 1u64..=10) {
        let iv = Case::IV { n, m: n + extra };
        prop_assert_eq!(iv.to_string().parse::<Case>().unwrap(), iv);
        let ii = Case::II { m: j + 1 + extra, j };
        if ii.validate().is_ok() {
            prop_assert_eq!(ii.to_string().parse::<Case>().unwrap(), ii);
        }
    }
}

#[test]
fn ledgers_never_exceed_the_degree_product() {
    for n in 3..=8 {
        for m in n..=8 {
            let l = bezout_ledger(Case::IV { n, m }, Variant::PaperDisplay, MultiplicitySource::ClosedForm).unwrap();
            assert!(l.boundary_total() <= l.product, "IV({n},{m})");
        }
    }
    for m in 3..=10 {
        for j in 1..m {
            for v in Variant::ALL {
                let l = bezout_ledger(Case::II { m, j }, v, MultiplicitySource::ClosedForm).unwrap();
                assert!(l.boundary_total() <= l.product, "II({m},{j})");
                assert!(!l.residual.is_negative(), "II({m},{j})");
            }
        }
    }
}
