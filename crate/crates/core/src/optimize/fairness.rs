use super::{
    asymptotic_optima, best_candidate, minimize_sop, pop_feasible_interval, sop_crossings,
    AlphaInterval, Candidate, PaSolution, SolveMethod, SolverOptions,
};
use crate::analytic::{sop, sop_asymptotic};
use crate::error::{Error, Result};
use crate::model::{check_alpha, SystemConfig, User};

/// `max(sop_near, sop_far)` at `alpha`.
pub fn max_sop(cfg: &SystemConfig, alpha: f64) -> Result<f64> {
    Ok(sop(cfg, alpha, User::Near)?
        .value
        .max(sop(cfg, alpha, User::Far)?.value))
}

pub fn max_sop_asymptotic(cfg: &SystemConfig, alpha: f64) -> Result<f64> {
    Ok(sop_asymptotic(cfg, alpha, User::Near)?
        .value
        .max(sop_asymptotic(cfg, alpha, User::Far)?.value))
}

fn feasible_window(cfg: &SystemConfig) -> Result<AlphaInterval> {
    let w = pop_feasible_interval(cfg)?;
    if w.empty {
        return Err(Error::QosInfeasible { xi: cfg.xi });
    }
    Ok(w)
}

/// Keep an individual optimum if strictly inside the window, else move it
/// to the given window edge.
fn clamp_to(alpha: f64, w: &AlphaInterval, edge: f64) -> f64 {
    if w.contains(alpha) {
        alpha
    } else {
        edge
    }
}

fn evaluate(
    label: impl Into<String>,
    alpha: f64,
    feasible: bool,
    objective: impl Fn(f64) -> Result<f64>,
) -> Candidate {
    let value = check_alpha(alpha).and_then(|_| objective(alpha)).ok();
    Candidate::new(label, alpha, value, feasible && value.is_some())
}

fn finish(candidates: Vec<Candidate>, iterations: usize) -> Result<PaSolution> {
    let (alpha_star, objective) = best_candidate(&candidates).ok_or(Error::NoFeasibleCandidate)?;
    Ok(PaSolution {
        alpha_star,
        objective,
        candidates,
        method: SolveMethod::CandidateEnumeration,
        iterations,
    })
}

/// Min-max secrecy outage under the pair-outage cap.
///
/// Candidates are the two individual SOP minimisers (each replaced by the
/// nearer-side window edge, lower for the near user and upper for the far
/// user, when not strictly inside the window) and every crossing of the two
/// SOP curves inside the window. The candidate with the smallest
/// `max(sop_near, sop_far)` wins.
pub fn minmax_sop(cfg: &SystemConfig, opts: &SolverOptions) -> Result<PaSolution> {
    let w = feasible_window(cfg)?;
    let near = minimize_sop(cfg, User::Near, opts)?;
    let far = minimize_sop(cfg, User::Far, opts)?;
    let a1 = clamp_to(near.alpha_star, &w, w.lb);
    let a2 = clamp_to(far.alpha_star, &w, w.ub);
    let obj = |a: f64| max_sop(cfg, a);

    let mut candidates = vec![
        evaluate("alpha1*", a1, true, obj),
        evaluate("alpha2*", a2, true, obj),
    ];
    for (k, x) in sop_crossings(cfg, &w, opts).into_iter().enumerate() {
        candidates.push(evaluate(format!("alpha3*[{k}]"), x, w.contains(x), obj));
    }
    finish(candidates, near.iterations + far.iterations)
}

/// High-SNR counterpart of [`minmax_sop`] built from the closed-form
/// candidates of [`asymptotic_optima`] and the asymptotic SOPs.
pub fn minmax_sop_asymptotic(cfg: &SystemConfig, _opts: &SolverOptions) -> Result<PaSolution> {
    let w = feasible_window(cfg)?;
    let hat = asymptotic_optima(cfg)?;
    let obj = |a: f64| max_sop_asymptotic(cfg, a);
    let mut candidates = vec![
        evaluate("alpha1_hat", clamp_to(hat.alpha1_hat, &w, w.lb), true, obj),
        evaluate("alpha2_hat", clamp_to(hat.alpha2_hat, &w, w.ub), true, obj),
    ];
    if let Some(a3) = hat.alpha3_hat {
        candidates.push(evaluate("alpha3_hat", a3, w.contains(a3), obj));
    }
    finish(candidates, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rho: f64, rnb: f64) -> SystemConfig {
        SystemConfig {
            d1: 50.0,
            d2: 100.0,
            path_loss_const: 1.0,
            path_loss_exp: 2.5,
            noise_power: 1e-9,
            transmit_snr: rho,
            beta11: rnb / rho,
            beta12: rnb / rho,
            beta21: rnb / rho,
            beta22: rnb / rho,
            r1_th: 0.1,
            r2_th: 0.1,
            rs1_th: 1.0,
            rs2_th: 0.1,
            xi: 0.5,
        }
    }

    #[test]
    fn beats_every_candidate_and_fixed_split() {
        let c = cfg(1.001e9, 1000.0);
        let opts = SolverOptions::default();
        let s = minmax_sop(&c, &opts).unwrap();
        for cand in s.candidates.iter().filter(|c| c.feasible) {
            assert!(s.objective <= cand.objective.unwrap());
        }
        assert!(s.objective <= max_sop(&c, 0.33).unwrap());
    }

    #[test]
    fn infeasible_cap() {
        let mut c = cfg(1e9, 1000.0);
        c.xi = 1e-9;
        assert!(matches!(
            minmax_sop(&c, &SolverOptions::default()),
            Err(Error::QosInfeasible { .. })
        ));
    }

    #[test]
    fn asymptotic_without_cap_picks_best_closed_form() {
        let mut c = cfg(1e10, 1000.0);
        c.xi = 1.0;
        let s = minmax_sop_asymptotic(&c, &SolverOptions::default()).unwrap();
        let hat = asymptotic_optima(&c).unwrap();
        let best = [Some(hat.alpha1_hat), Some(hat.alpha2_hat), hat.alpha3_hat]
            .into_iter()
            .flatten()
            .map(|a| max_sop_asymptotic(&c, a).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(s.objective, best);
    }
}
