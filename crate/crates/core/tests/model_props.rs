use noma_secrecy::model::{
    dominant_order, positive_secrecy_window, secrecy_rates, sinr_table, SinrTable,
};
use noma_secrecy::{ChannelGains, DecodingOrder, SystemConfig};
use proptest::prelude::*;

fn system(rho: f64, b: [f64; 4]) -> SystemConfig {
    SystemConfig {
        d1: 50.0,
        d2: 100.0,
        path_loss_const: 1.0,
        path_loss_exp: 2.5,
        noise_power: 1e-9,
        transmit_snr: rho,
        beta11: b[0],
        beta12: b[1],
        beta21: b[2],
        beta22: b[3],
        r1_th: 0.1,
        r2_th: 0.1,
        rs1_th: 1.0,
        rs2_th: 1.0,
        xi: 0.5,
    }
}

fn gains() -> impl Strategy<Value = ChannelGains> {
    (1e-3f64..10.0, 1e-3f64..10.0).prop_map(|(g1, g2)| ChannelGains::new(g1, g2).unwrap())
}

fn betas() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(prop_oneof![Just(0.0), 1e-5f64..1.0])
}

fn order() -> impl Strategy<Value = DecodingOrder> {
    prop::sample::select(DecodingOrder::ALL.to_vec())
}

fn all(t: &SinrTable) -> [f64; 4] {
    [t.gamma_11, t.gamma_12, t.gamma_21, t.gamma_22]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn window_membership_implies_positive_secrecy(
        g in gains(), b in betas(), rho in 1.0f64..1e4, o in order(), alpha in 0.001f64..0.999,
    ) {
        let c = system(rho, b);
        if positive_secrecy_window(&c, g, o).contains(alpha) {
            let r = secrecy_rates(&c, g, o, alpha).unwrap();
            prop_assert!(r.rs1 > -1e-12 && r.rs2 > -1e-12, "{o} at {alpha}: {r:?}");
        }
    }

    #[test]
    fn positive_secrecy_implies_window_membership(
        g in gains(), b in betas(), rho in 1.0f64..1e4, alpha in 0.001f64..0.999,
    ) {
        // (2,2) is excluded: its window is empty by convention.
        let c = system(rho, b);
        for o in [DecodingOrder::O21, DecodingOrder::O12, DecodingOrder::O11] {
            let r = secrecy_rates(&c, g, o, alpha).unwrap();
            let w = positive_secrecy_window(&c, g, o);
            if r.rs1 > 1e-9 && r.rs2 > 1e-9 {
                prop_assert!(
                    w.feasible && alpha >= w.lower - 1e-9 && alpha <= w.upper + 1e-9,
                    "{o} at {alpha}: {r:?} but {w:?}"
                );
            }
        }
    }

    #[test]
    fn sinrs_are_finite_and_non_negative(
        g in gains(), b in betas(), rho in 1e-2f64..1e12, o in order(), alpha in 1e-6f64..(1.0 - 1e-6),
    ) {
        let t = sinr_table(&system(rho, b), g, o, alpha).unwrap();
        for v in all(&t) {
            prop_assert!(v.is_finite() && v >= 0.0, "{t:?}");
        }
    }

    #[test]
    fn protocol_order_sinrs_are_monotone_in_alpha(
        g in gains(), b in betas(), rho in 1.0f64..1e8, a in 0.01f64..0.98, da in 1e-3f64..0.01,
    ) {
        let c = system(rho, b);
        let lo = sinr_table(&c, g, DecodingOrder::O21, a).unwrap();
        let hi = sinr_table(&c, g, DecodingOrder::O21, a + da).unwrap();
        prop_assert!(hi.gamma_11 > lo.gamma_11);
        prop_assert!(hi.gamma_21 < lo.gamma_21);
    }

    /// When every residual term is below the interference it replaces, the
    /// protocol order is never worse for either user.
    #[test]
    fn protocol_order_dominates_with_bounded_residuals(
        g in gains(), rho in 1.0f64..1e6, alpha in 0.01f64..0.99, u in prop::array::uniform4(0.0f64..1.0),
    ) {
        let ChannelGains { g1, g2 } = g;
        let b = [u[0] * alpha * g1, u[1] * alpha * g2, u[2] * (1.0 - alpha) * g1, u[3] * (1.0 - alpha) * g2];
        let c = system(rho, b);
        let base = secrecy_rates(&c, g, DecodingOrder::O21, alpha).unwrap();
        for o in [DecodingOrder::O12, DecodingOrder::O11] {
            let other = secrecy_rates(&c, g, o, alpha).unwrap();
            prop_assert!(base.rs1 >= other.rs1 - 1e-12, "{o}: {base:?} vs {other:?}");
            prop_assert!(base.rs2 >= other.rs2 - 1e-12, "{o}: {base:?} vs {other:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn perfect_sic_picks_protocol_order(
        g2 in 1e-3f64..5.0, ratio in 1.0001f64..50.0, rho in 1.0f64..1e6, t in 0.0f64..1.0,
    ) {
        let g = ChannelGains::new(g2 * ratio, g2).unwrap();
        let c = system(rho, [0.0; 4]);
        let w = positive_secrecy_window(&c, g, DecodingOrder::O21);
        prop_assume!(w.feasible);
        let alpha = w.lower + (w.upper - w.lower) * t;
        prop_assume!(w.contains(alpha));
        prop_assert_eq!(dominant_order(&c, g, alpha).unwrap().order, DecodingOrder::O21);
    }
}

#[test]
fn hand_window_for_protocol_order() {
    let c = system(10.0, [0.0; 4]);
    let w = positive_secrecy_window(&c, ChannelGains::new(2.0, 1.0).unwrap(), DecodingOrder::O21);
    assert!((w.lower - 0.05).abs() < 1e-15);
    assert_eq!(w.upper, 1.0);
}

#[test]
fn equal_gains_window() {
    let b = 0.01;
    let c = system(100.0, [0.0, b, b, 0.0]);
    let g = ChannelGains::new(0.5, 0.5).unwrap();
    let w = positive_secrecy_window(&c, g, DecodingOrder::O21);
    assert!((w.lower - b / 0.5).abs() < 1e-12);
    assert!((w.upper - (1.0 - b / 0.5)).abs() < 1e-12);
}

#[test]
fn conventional_order_is_never_feasible() {
    let c = system(100.0, [0.0; 4]);
    for (g1, g2) in [(2.0, 1.0), (1.0, 2.0), (1.0, 1.0)] {
        let g = ChannelGains::new(g1, g2).unwrap();
        assert!(!positive_secrecy_window(&c, g, DecodingOrder::O22).feasible);
    }
}
