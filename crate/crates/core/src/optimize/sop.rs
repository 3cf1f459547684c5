use super::{golden_section, AlphaInterval, PaSolution, SolverOptions};
use crate::analytic::{sop, sop_far, sop_near};
use crate::error::{Error, Result};
use crate::model::{SystemConfig, User};

pub(crate) fn sop_value(cfg: &SystemConfig, alpha: f64, user: User) -> f64 {
    sop(cfg, alpha, user)
        .expect("search points stay inside (0, 1)")
        .value
}

/// Golden-section minimiser of one user's SOP over `(0, 1)`.
pub fn minimize_sop(cfg: &SystemConfig, user: User, opts: &SolverOptions) -> Result<PaSolution> {
    let m = opts.alpha_margin;
    golden_section(|a| sop_value(cfg, a, user), m, 1.0 - m, opts.golden_eps)
}

pub fn minimize_sop_near(cfg: &SystemConfig, opts: &SolverOptions) -> Result<PaSolution> {
    minimize_sop(cfg, User::Near, opts)
}

pub fn minimize_sop_far(cfg: &SystemConfig, opts: &SolverOptions) -> Result<PaSolution> {
    minimize_sop(cfg, User::Far, opts)
}

/// High-SNR optimal power allocations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticOptima {
    /// Minimiser of the asymptotic near-user SOP.
    pub alpha1_hat: f64,
    /// Minimiser of the asymptotic far-user SOP.
    pub alpha2_hat: f64,
    /// Equal asymptotic SOP point, `None` when it falls outside `(0, 1)`.
    pub alpha3_hat: Option<f64>,
}

/// Closed-form high-SNR optima.
///
/// `alpha1_hat = sqrt(Pi1 (Pi1 - 1)) - (Pi1 - 1)` and
/// `alpha2_hat = Pi2 - sqrt(Pi2 (Pi2 - 1))` minimise the two asymptotic SOPs.
/// `alpha3_hat` equates their exponents:
/// `(gamma12 Pi2 lambda1 - gamma21 (Pi1 - 1) lambda2) / (gamma12 lambda1 + gamma21 lambda2)`.
pub fn asymptotic_optima(cfg: &SystemConfig) -> Result<AsymptoticOptima> {
    let (p1, p2) = (cfg.big_pi1(), cfg.big_pi2());
    if p1 <= 1.0 {
        return Err(Error::DegenerateTargetRate(User::Near));
    }
    if p2 <= 1.0 {
        return Err(Error::DegenerateTargetRate(User::Far));
    }
    let alpha1_hat = (p1 * (p1 - 1.0)).sqrt() - (p1 - 1.0);
    let alpha2_hat = p2 - (p2 * (p2 - 1.0)).sqrt();
    let (g21, g12) = (cfg.gamma21(), cfg.gamma12());
    let (l1, l2) = (cfg.lambda1(), cfg.lambda2());
    let a3 = (g12 * p2 * l1 - g21 * (p1 - 1.0) * l2) / (g12 * l1 + g21 * l2);
    Ok(AsymptoticOptima {
        alpha1_hat,
        alpha2_hat,
        alpha3_hat: (a3 > 0.0 && a3 < 1.0).then_some(a3),
    })
}

fn sop_gap(cfg: &SystemConfig, alpha: f64) -> f64 {
    sop_near(cfg, alpha).expect("alpha inside (0, 1)").value
        - sop_far(cfg, alpha).expect("alpha inside (0, 1)").value
}

fn bisect_gap(cfg: &SystemConfig, mut lo: f64, mut hi: f64, mut glo: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let g = sop_gap(cfg, mid);
        if g == 0.0 {
            return mid;
        }
        if (g > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = g;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn clip(bracket: &AlphaInterval, opts: &SolverOptions) -> (f64, f64) {
    (
        bracket.lb.max(opts.alpha_margin),
        bracket.ub.min(1.0 - opts.alpha_margin),
    )
}

/// Root of `sop_near = sop_far` on the bracket by bisection; the difference
/// must change sign between the bracket ends.
pub fn equal_sop_crossing(
    cfg: &SystemConfig,
    bracket: &AlphaInterval,
    opts: &SolverOptions,
) -> Result<f64> {
    let (lo, hi) = clip(bracket, opts);
    let no_crossing = Error::NoCrossing { lo, hi };
    if bracket.empty || !(lo < hi) {
        return Err(no_crossing);
    }
    let (glo, ghi) = (sop_gap(cfg, lo), sop_gap(cfg, hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if (glo > 0.0) == (ghi > 0.0) {
        return Err(no_crossing);
    }
    Ok(bisect_gap(cfg, lo, hi, glo, opts.crossing_tol))
}

/// Every crossing of `sop_near = sop_far` detected on a uniform scan of the
/// bracket, each refined by bisection. Ascending order.
pub fn sop_crossings(cfg: &SystemConfig, bracket: &AlphaInterval, opts: &SolverOptions) -> Vec<f64> {
    let (lo, hi) = clip(bracket, opts);
    if bracket.empty || !(lo < hi) {
        return Vec::new();
    }
    let n = opts.crossing_scan_points.max(2);
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let gaps: Vec<f64> = grid.iter().map(|&a| sop_gap(cfg, a)).collect();
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let (g0, g1) = (gaps[i], gaps[i + 1]);
        if g0 == 0.0 {
            out.push(grid[i]);
        } else if g1 != 0.0 && (g0 > 0.0) != (g1 > 0.0) {
            out.push(bisect_gap(cfg, grid[i], grid[i + 1], g0, opts.crossing_tol));
        }
    }
    if gaps[n - 1] == 0.0 {
        out.push(grid[n - 1]);
    }
    out
}
