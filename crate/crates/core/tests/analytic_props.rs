mod common;

use common::{cfg, cfg_with, random_link};
use noma_secrecy::analytic::{
    pop, pop_boundaries, sop, sop_asymptotic, sop_with_tolerance, DEFAULT_QUAD_TOL,
};
use noma_secrecy::units::{LinkSetup, SnrReference};
use noma_secrecy::{SystemConfig, User};
use proptest::prelude::*;

fn link() -> impl Strategy<Value = LinkSetup> {
    any::<u64>().prop_map(|s| random_link(&mut common::rng(s)))
}

fn user() -> impl Strategy<Value = User> {
    prop_oneof![Just(User::Near), Just(User::Far)]
}

/// Pair outage written out from the four CCDF factors, independent of the
/// library's boundary bookkeeping.
fn pop_oracle(c: &SystemConfig, a: f64) -> f64 {
    let (p1, p2) = (c.pi1(), c.pi2());
    let rho = c.transmit_snr;
    let (l1, l2) = (c.lambda1(), c.lambda2());
    let d2 = 1.0 - a - a * p2;
    let d3 = a - (1.0 - a) * p1;
    if d2 <= 0.0 || d3 <= 0.0 {
        return 1.0;
    }
    let z1 = p1 * c.gamma21() / (rho * a);
    let z2 = p2 / (rho * d2);
    let z3 = p1 / (rho * d3);
    let z4 = p2 * c.gamma12() / (rho * (1.0 - a));
    1.0 - (-z1.max(z2) / l1 - z3.max(z4) / l2).exp()
}

/// The four-case table taken literally: near-user case, middle case with
/// its sub-conditions, far-user case, otherwise one. Only meaningful when
/// `alpha1 <= alpha4`, where the cases do not overlap.
fn pop_table(c: &SystemConfig, a: f64) -> f64 {
    let [a1, a2, a3, a4] = pop_boundaries(c);
    let (p1, p2) = (c.pi1(), c.pi2());
    let rho = c.transmit_snr;
    let (l1, l2) = (c.lambda1(), c.lambda2());
    let f1 = || (-p1 * c.gamma21() / (rho * a * l1)).exp();
    let f2 = || (-p2 / (rho * (1.0 - a - a * p2) * l1)).exp();
    let f3 = || (-p1 / (rho * (a - (1.0 - a) * p1) * l2)).exp();
    let f4 = || (-p2 * c.gamma12() / (rho * (1.0 - a) * l2)).exp();
    let middle = (a1 < a && a < a2 && a2 < a4 && a3 < a1)
        || (a1 < a && a < a4 && a2 > a4 && a3 < a1)
        || (a3 < a && a < a2 && a2 < a4 && a3 > a1)
        || (a3 < a && a < a4 && a2 > a4 && a3 > a1);
    if a3 < a && a < a1 {
        1.0 - f1() * f3()
    } else if middle {
        1.0 - f2() * f3()
    } else if a4 < a && a < a2 {
        1.0 - f2() * f4()
    } else {
        1.0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn outputs_are_probabilities(l in link(), a in 1e-4f64..(1.0 - 1e-4), u in user()) {
        let c = l.to_system_config().unwrap();
        for v in [
            pop(&c, a).unwrap().value,
            sop(&c, a, u).unwrap().value,
            sop_asymptotic(&c, a, u).unwrap().value,
        ] {
            prop_assert!((0.0..=1.0).contains(&v), "{v}");
        }
    }

    #[test]
    fn pop_matches_direct_ccdf_form(l in link(), a in 1e-4f64..(1.0 - 1e-4)) {
        let c = l.to_system_config().unwrap();
        let v = pop(&c, a).unwrap().value;
        prop_assert!((v - pop_oracle(&c, a)).abs() < 1e-12);
    }

    #[test]
    fn pop_is_continuous_at_inner_boundaries(l in link()) {
        let c = l.to_system_config().unwrap();
        let [a1, a2, a3, a4] = pop_boundaries(&c);
        let p = |a: f64| pop(&c, a).unwrap().value;
        let d = 1e-8;
        for b in [a1, a4] {
            if b > a3 + 1e-6 && b < a2 - 1e-6 {
                // Allow for the slope across the 2d gap but not for a jump.
                let (l2, l1, r1, r2) = (p(b - 2.0 * d), p(b - d), p(b + d), p(b + 2.0 * d));
                let slope = ((l1 - l2).abs()).max((r2 - r1).abs()) / d;
                prop_assert!((l1 - r1).abs() <= 1e-9 + 2.5 * d * slope, "{l1} vs {r1}, slope {slope}");
            }
        }
    }

    #[test]
    fn pop_grows_with_rate_targets(l in link(), a in 0.01f64..0.99, bump in 0.0f64..0.3) {
        let c = l.to_system_config().unwrap();
        let harder = LinkSetup { r1_th: l.r1_th + bump, r2_th: l.r2_th + bump, ..l }
            .to_system_config()
            .unwrap();
        prop_assert!(pop(&harder, a).unwrap().value >= pop(&c, a).unwrap().value - 1e-15);
    }

    #[test]
    fn pop_falls_with_transmit_snr(l in link(), a in 0.01f64..0.99, up in 0.0f64..20.0) {
        // Transmit reference keeps the residual terms fixed while rho grows.
        let base = LinkSetup { snr_reference: SnrReference::Transmit, snr_db: 60.0 + l.snr_db, ..l };
        let louder = LinkSetup { snr_db: base.snr_db + up, ..base };
        let (c0, c1) = (base.to_system_config().unwrap(), louder.to_system_config().unwrap());
        prop_assert!(pop(&c1, a).unwrap().value <= pop(&c0, a).unwrap().value + 1e-15);
    }

    #[test]
    fn sop_grows_with_secrecy_targets(l in link(), a in 0.01f64..0.99, bump in 0.0f64..1.0, u in user()) {
        let c = l.to_system_config().unwrap();
        let harder = LinkSetup { rs1_th: l.rs1_th + bump, rs2_th: l.rs2_th + bump, ..l }
            .to_system_config()
            .unwrap();
        prop_assert!(sop(&harder, a, u).unwrap().value >= sop(&c, a, u).unwrap().value - 2e-9);
    }

    #[test]
    fn asymptotic_form_is_pessimistic(l in link(), a in 0.01f64..0.99, u in user()) {
        let c = l.to_system_config().unwrap();
        let exact = sop(&c, a, u).unwrap().value;
        let asy = sop_asymptotic(&c, a, u).unwrap().value;
        prop_assert!(asy >= exact - 2e-9, "{asy} < {exact}");
    }

    #[test]
    fn tighter_tolerance_moves_less_than_error_estimate(l in link(), a in 0.01f64..0.99, u in user()) {
        let c = l.to_system_config().unwrap();
        let coarse = sop_with_tolerance(&c, a, u, DEFAULT_QUAD_TOL).unwrap();
        let fine = sop_with_tolerance(&c, a, u, DEFAULT_QUAD_TOL / 2.0).unwrap();
        prop_assert!(coarse.abs_err <= DEFAULT_QUAD_TOL);
        prop_assert!((coarse.value - fine.value).abs() <= coarse.abs_err + fine.abs_err + 1e-15);
    }
}

#[test]
fn pop_matches_case_table_when_cases_do_not_overlap() {
    // Tight QoS targets and a weak residual push alpha1 below alpha4.
    let c = cfg_with(15.0, |l| {
        l.residual_dbm = -80.0;
        l.r1_th = 0.3;
        l.r2_th = 2.0;
    });
    let [a1, _, _, a4] = pop_boundaries(&c);
    assert!(a1 < a4, "{a1} {a4}");
    for i in 1..1000 {
        let a = i as f64 / 1000.0;
        let (v, t) = (pop(&c, a).unwrap().value, pop_table(&c, a));
        assert!((v - t).abs() < 1e-12, "alpha {a}: {v} vs {t}");
    }
}

#[test]
fn asymptotic_gap_shrinks_with_snr() {
    let gap = |snr: f64| {
        let c = cfg(snr);
        (1..200)
            .map(|i| i as f64 / 200.0)
            .map(|a| (sop(&c, a, User::Near).unwrap().value - sop_asymptotic(&c, a, User::Near).unwrap().value).abs())
            .fold(0.0, f64::max)
    };
    let gaps: Vec<f64> = [10.0, 20.0, 30.0, 40.0].iter().map(|&s| gap(s)).collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
}

#[test]
fn pop_outside_outer_boundaries_is_one() {
    let c = cfg(20.0);
    let [_, a2, a3, _] = pop_boundaries(&c);
    assert_eq!(pop(&c, a3 * 0.99).unwrap().value, 1.0);
    assert_eq!(pop(&c, a2 + 0.99 * (1.0 - a2)).unwrap().value, 1.0);
}
