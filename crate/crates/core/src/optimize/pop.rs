use super::{best_candidate, AlphaInterval, Candidate, PaSolution, SolveMethod};
use crate::analytic::{pop, pop_boundaries, PopPiece};
use crate::error::{Error, Result};
use crate::model::SystemConfig;

fn pop_value(cfg: &SystemConfig, alpha: f64) -> Option<f64> {
    pop(cfg, alpha).ok().map(|b| b.value)
}

/// Stationary points of the `zeta2/zeta3` piece, where the near user's
/// interference-limited threshold and the far user's decoding threshold
/// trade off. `None` entries are roots that do not exist (negative
/// discriminant cannot happen; a vanishing quadratic term leaves one root).
fn middle_piece_roots(cfg: &SystemConfig) -> [Option<f64>; 2] {
    let (p1, p2) = (cfg.pi1(), cfg.pi2());
    let (l1, l2) = (cfg.lambda1(), cfg.lambda2());
    let (s1, s2) = (1.0 + p1, 1.0 + p2);
    let r1 = p1 * l1 * s1 * s2;
    let r2 = p2 * l2 * s1 * s2;
    let denom = l2 * s1 * s1 * s2 * p2 - l1 * s1 * s2 * s2 * p1;
    let scale = (l2 * s1 * s1 * s2 * p2).abs().max((l1 * s1 * s2 * s2 * p1).abs());
    if denom.abs() <= 1e-12 * scale {
        // t1 = 0: t2 alpha + t3 = 0.
        let t2 = 2.0 * r1 - 2.0 * r2 * p1;
        let t3 = p1 * p1 * p2 * s2 * l2 - p1 * s1 * l1;
        let root = if t2 != 0.0 { Some(-t3 / t2) } else { None };
        return [root, None];
    }
    let disc = ((s2 * p1 - s1).powi(2) * l1 * l2 * s1 * s2 * p1 * p2).sqrt();
    [
        Some((r2 * p1 - r1 + disc) / denom),
        Some((r2 * p1 - r1 - disc) / denom),
    ]
}

/// Minimiser of `a / alpha + b / (1 - alpha)`, the stationary point of the
/// `zeta1/zeta4` piece.
fn outer_piece_root(cfg: &SystemConfig) -> f64 {
    let rho = cfg.transmit_snr;
    let a = cfg.pi1() * cfg.gamma21() / (rho * cfg.lambda1());
    let b = cfg.pi2() * cfg.gamma12() / (rho * cfg.lambda2());
    let (sa, sb) = (a.sqrt(), b.sqrt());
    sa / (sa + sb)
}

/// Pair-outage minimiser by enumeration of the piece boundaries `alpha1`,
/// `alpha4` and the stationary points of the two mixed pieces.
pub fn minimize_pop(cfg: &SystemConfig) -> Result<PaSolution> {
    let [a1, a2, a3, a4] = pop_boundaries(cfg);
    if !(a3 < a2) {
        return Err(Error::NoFeasibleCandidate);
    }
    let in_range = |a: f64| a > a3 && a < a2 && a > 0.0 && a < 1.0;

    let mut candidates = Vec::with_capacity(5);
    let mut push = |label: &str, alpha: f64, piece: Option<PopPiece>| {
        let breakdown = pop(cfg, alpha).ok();
        let on_piece = match (piece, breakdown) {
            (Some(p), Some(b)) => b.active_piece == p,
            (None, _) => true,
            (_, None) => false,
        };
        let objective = breakdown.map(|b| b.value);
        candidates.push(Candidate::new(label, alpha, objective, in_range(alpha) && on_piece));
    };

    push("alpha_c1", a1, None);
    let [r1, r2] = middle_piece_roots(cfg);
    if let Some(r) = r1 {
        push("alpha_r1", r, Some(PopPiece::Zeta2Zeta3));
    }
    if let Some(r) = r2 {
        push("alpha_r2", r, Some(PopPiece::Zeta2Zeta3));
    }
    push("alpha_c2", a4, None);
    push("alpha_r3", outer_piece_root(cfg), Some(PopPiece::Zeta1Zeta4));

    let (alpha_star, objective) = best_candidate(&candidates).ok_or(Error::NoFeasibleCandidate)?;
    Ok(PaSolution {
        alpha_star,
        objective,
        candidates,
        method: SolveMethod::ClosedForm,
        iterations: 0,
    })
}

/// Roots of `pop = xi` on the `zeta1/zeta3` piece in closed form:
/// `L s1 a^2 - (pi1 L - z1 s1 - z2) a - pi1 z1 = 0` with `L = ln(1 - xi)`,
/// `z1 = gamma21 pi1 / (rho lambda1)`, `z2 = pi1 / (rho lambda2)`.
/// Only roots lying on that piece are returned, in ascending order.
pub fn near_side_quadratic_roots(cfg: &SystemConfig, xi: f64) -> Vec<f64> {
    if !(xi > 0.0 && xi < 1.0) {
        return Vec::new();
    }
    let rho = cfg.transmit_snr;
    let p1 = cfg.pi1();
    let s1 = 1.0 + p1;
    let l = (1.0 - xi).ln();
    let z1 = cfg.gamma21() * p1 / (rho * cfg.lambda1());
    let z2 = p1 / (rho * cfg.lambda2());
    let qa = l * s1;
    let qb = -(p1 * l - z1 * s1 - z2);
    let qc = -p1 * z1;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 || qa == 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let mut roots: Vec<f64> = [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
        .into_iter()
        .filter(|&a| {
            a > 0.0
                && a < 1.0
                && pop(cfg, a).is_ok_and(|b| b.active_piece == PopPiece::Zeta1Zeta3)
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

/// Bisection for `pop = xi` on `[lo, hi]` where `pop` is monotone and
/// `outside` is the end with `pop > xi`. Returns the end of the final
/// bracket on the feasible side.
fn bisect_level(cfg: &SystemConfig, xi: f64, mut lo: f64, mut hi: f64, outside_low: bool) -> f64 {
    let above = |a: f64| pop_value(cfg, a).is_none_or(|v| v > xi);
    for _ in 0..200 {
        if hi - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if above(mid) == outside_low {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if outside_low {
        hi
    } else {
        lo
    }
}

/// Power allocations whose pair outage does not exceed `cfg.xi`.
///
/// POP falls from 1 at `alpha3` to its minimum and rises back to 1 at
/// `alpha2`, so the window is bounded by one crossing of `pop = xi` on each
/// side of the minimiser. A crossing on the `zeta1/zeta3` piece is taken from
/// the closed-form quadratic; others are found by bisection.
pub fn pop_feasible_interval(cfg: &SystemConfig) -> Result<AlphaInterval> {
    let xi = cfg.xi;
    let [_, a2, a3, _] = pop_boundaries(cfg);
    let best = match minimize_pop(cfg) {
        Ok(s) => s,
        Err(Error::NoFeasibleCandidate) => return Ok(AlphaInterval::empty_at(a3.min(1.0))),
        Err(e) => return Err(e),
    };
    if xi >= 1.0 {
        return Ok(AlphaInterval::new(a3.max(0.0), a2.min(1.0)));
    }
    if best.objective > xi {
        return Ok(AlphaInterval::empty_at(best.alpha_star));
    }
    let m = best.alpha_star;
    let lo_end = a3.max(0.0);
    let hi_end = a2.min(1.0);

    let mut lb = bisect_level(cfg, xi, lo_end, m, true);
    let mut ub = bisect_level(cfg, xi, m, hi_end, false);

    for r in near_side_quadratic_roots(cfg, xi) {
        if (r - lb).abs() < 1e-9 {
            lb = r;
        }
        if (r - ub).abs() < 1e-9 {
            ub = r;
        }
    }
    Ok(AlphaInterval::new(lb, ub))
}
