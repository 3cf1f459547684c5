//! Analytic pair outage probability (POP) and secrecy outage probabilities
//! (SOP) under the protocol's `(2,1)` decoding order, plus the high-SNR
//! asymptotic SOP forms.
//!
//! POP is `1 - Pr{|h1|^2 > max(z1, z2)} * Pr{|h2|^2 > max(z3, z4)}` with
//! exponential CCDFs. Which of the two thresholds dominates switches at
//! `alpha1` (near user) and `alpha4` (far user), so the curve is piecewise
//! in `alpha` with up to four active pieces between `alpha3` and `alpha2`.

use crate::error::Result;
use crate::model::{check_alpha, SystemConfig, User};
use crate::quadrature;

/// Absolute tolerance of the SOP integrals.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;

/// Which pair of thresholds sets the POP at a given `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PopPiece {
    /// `alpha3 < alpha <= min(alpha1, alpha4)`.
    Zeta1Zeta3,
    /// `alpha1 < alpha <= alpha4`.
    Zeta2Zeta3,
    /// `max(alpha1, alpha4) < alpha < alpha2`.
    Zeta2Zeta4,
    /// `alpha4 < alpha <= alpha1`. Not reachable when `alpha1 <= alpha4`.
    Zeta1Zeta4,
    /// `alpha <= alpha3` or `alpha >= alpha2`: some link can never reach its
    /// threshold rate, so the pair is always in outage.
    Outage,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopBreakdown {
    pub value: f64,
    pub active_piece: PopPiece,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    /// `zeta1..zeta4`; `zeta2` and `zeta3` are `+inf` where their
    /// denominators are non-positive.
    pub zetas: [f64; 4],
}

/// Piece boundaries `[alpha1, alpha2, alpha3, alpha4]`.
pub fn pop_boundaries(cfg: &SystemConfig) -> [f64; 4] {
    let (p1, p2) = (cfg.pi1(), cfg.pi2());
    let (g21, g12) = (cfg.gamma21(), cfg.gamma12());
    let a1 = p1 * g21 / (p1 * g21 + p2 + p1 * p2 * g21);
    let a2 = 1.0 / (1.0 + p2);
    let a3 = p1 / (1.0 + p1);
    let a4 = (p1 + p1 * p2 * g12) / (p1 + p2 * g12 + p1 * p2 * g12);
    [a1, a2, a3, a4]
}

pub(crate) fn zetas(cfg: &SystemConfig, alpha: f64) -> [f64; 4] {
    let rho = cfg.transmit_snr;
    let (p1, p2) = (cfg.pi1(), cfg.pi2());
    let z1 = p1 * cfg.gamma21() / (rho * alpha);
    let d2 = 1.0 - alpha - alpha * p2;
    let z2 = if d2 > 0.0 { p2 / (rho * d2) } else { f64::INFINITY };
    let d3 = alpha - (1.0 - alpha) * p1;
    let z3 = if d3 > 0.0 { p1 / (rho * d3) } else { f64::INFINITY };
    let z4 = p2 * cfg.gamma12() / (rho * (1.0 - alpha));
    [z1, z2, z3, z4]
}

fn clamp_probability(raw: f64, slack: f64) -> f64 {
    debug_assert!(
        raw >= -(1e-12 + slack) && raw <= 1.0 + 1e-12 + slack,
        "probability {raw} outside [0, 1] beyond slack {slack}"
    );
    raw.clamp(0.0, 1.0)
}

pub fn pop(cfg: &SystemConfig, alpha: f64) -> Result<PopBreakdown> {
    check_alpha(alpha)?;
    let [a1, a2, a3, a4] = pop_boundaries(cfg);
    let z = zetas(cfg, alpha);

    let near_first = alpha <= a1;
    let far_first = alpha <= a4;
    let active_piece = if alpha <= a3 || alpha >= a2 {
        PopPiece::Outage
    } else {
        match (near_first, far_first) {
            (true, true) => PopPiece::Zeta1Zeta3,
            (false, true) => PopPiece::Zeta2Zeta3,
            (false, false) => PopPiece::Zeta2Zeta4,
            (true, false) => PopPiece::Zeta1Zeta4,
        }
    };

    let value = if active_piece == PopPiece::Outage {
        1.0
    } else {
        let t1 = if near_first { z[0] } else { z[1] };
        let t2 = if far_first { z[2] } else { z[3] };
        // 1 - e^{-x} for the combined exponent keeps precision when POP is tiny.
        let x = t1 / cfg.lambda1() + t2 / cfg.lambda2();
        clamp_probability(-(-x).exp_m1(), 0.0)
    };

    Ok(PopBreakdown {
        value,
        active_piece,
        alpha1: a1,
        alpha2: a2,
        alpha3: a3,
        alpha4: a4,
        zetas: z,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SopMethod {
    Quadrature,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopValue {
    pub value: f64,
    pub method: SopMethod,
    /// Quadrature error estimate; zero for closed forms.
    pub abs_err: f64,
}

/// Exact SOP of `user` with the given absolute quadrature tolerance.
///
/// Near user, with `t = y / lambda2`:
/// `1 - e^{-A1/lambda1} * int_0^inf exp(-c t / (b t + 1) - t) dt`,
/// `c = gamma21 Pi1 lambda2 / lambda1`, `b = rho (1 - alpha) lambda2`,
/// `A1 = gamma21 (Pi1 - 1) / (rho alpha)`. The far user swaps the roles of
/// the two users and of `alpha` and `1 - alpha`.
pub fn sop_with_tolerance(
    cfg: &SystemConfig,
    alpha: f64,
    user: User,
    abs_tol: f64,
) -> Result<SopValue> {
    check_alpha(alpha)?;
    let rho = cfg.transmit_snr;
    let (l1, l2) = (cfg.lambda1(), cfg.lambda2());
    let (c, b, offset) = match user {
        User::Near => {
            let g = cfg.gamma21();
            let pi = cfg.big_pi1();
            (
                g * pi * l2 / l1,
                rho * (1.0 - alpha) * l2,
                g * (pi - 1.0) / (rho * alpha) / l1,
            )
        }
        User::Far => {
            let g = cfg.gamma12();
            let pi = cfg.big_pi2();
            (
                g * pi * l1 / l2,
                rho * alpha * l1,
                g * (pi - 1.0) / (rho * (1.0 - alpha)) / l2,
            )
        }
    };

    let integrand = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - u;
        let t = u / w;
        (-c * t / (b * t + 1.0) - t).exp() / (w * w)
    };
    // The exponent saturates around t = 1 / b, a tiny sliver of the mapped
    // range at high SNR, and then creeps towards its limit like 1 / (b t).
    // A geometric partition from 0.01 / b up to t = 1 resolves both.
    let mut breaks = vec![0.0];
    let mut t = 1e-2 / b;
    while t < 1.0 {
        let u = t / (1.0 + t);
        if u > breaks[breaks.len() - 1] {
            breaks.push(u);
        }
        t *= 10.0;
    }
    breaks.push(1.0);
    let integral = quadrature::integrate_partitioned(integrand, &breaks, abs_tol);
    let scale = (-offset).exp();
    let raw = 1.0 - scale * integral.value;
    let abs_err = scale * integral.abs_err;
    Ok(SopValue {
        value: clamp_probability(raw, abs_err),
        method: SopMethod::Quadrature,
        abs_err,
    })
}

pub fn sop(cfg: &SystemConfig, alpha: f64, user: User) -> Result<SopValue> {
    sop_with_tolerance(cfg, alpha, user, DEFAULT_QUAD_TOL)
}

pub fn sop_near(cfg: &SystemConfig, alpha: f64) -> Result<SopValue> {
    sop(cfg, alpha, User::Near)
}

pub fn sop_far(cfg: &SystemConfig, alpha: f64) -> Result<SopValue> {
    sop(cfg, alpha, User::Far)
}

/// High-SNR SOP, an upper bound on the exact value.
pub fn sop_asymptotic(cfg: &SystemConfig, alpha: f64, user: User) -> Result<SopValue> {
    check_alpha(alpha)?;
    let rho = cfg.transmit_snr;
    let denom = rho * alpha * (alpha - 1.0);
    let exponent = match user {
        User::Near => cfg.gamma21() * (cfg.big_pi1() + alpha - 1.0) / (denom * cfg.lambda1()),
        User::Far => cfg.gamma12() * (cfg.big_pi2() - alpha) / (denom * cfg.lambda2()),
    };
    Ok(SopValue {
        value: clamp_probability(-exponent.exp_m1(), 0.0),
        method: SopMethod::Asymptotic,
        abs_err: 0.0,
    })
}

pub fn sop_near_asymptotic(cfg: &SystemConfig, alpha: f64) -> Result<SopValue> {
    sop_asymptotic(cfg, alpha, User::Near)
}

pub fn sop_far_asymptotic(cfg: &SystemConfig, alpha: f64) -> Result<SopValue> {
    sop_asymptotic(cfg, alpha, User::Far)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Pop,
    SopNear,
    SopFar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Analytic,
    Asymptotic,
    MonteCarlo { std_error: f64, samples: u64 },
}

/// One outage value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageReport {
    pub metric: Metric,
    pub alpha: f64,
    pub value: f64,
    pub provenance: Provenance,
}
