//! Power-allocation optimisers.
//!
//! * [`golden_section`]: bracket search for unimodal scalar objectives.
//! * [`minimize_pop`] and [`pop_feasible_interval`]: pair-outage optimum and
//!   the `alpha` window meeting the outage cap `xi`.
//! * [`minimize_sop_near`], [`minimize_sop_far`], [`asymptotic_optima`]:
//!   individual secrecy-outage optima.
//! * [`minmax_sop`], [`minmax_sop_asymptotic`]: QoS-constrained min-max
//!   secrecy fairness by candidate enumeration.

mod fairness;
mod golden;
mod pop;
mod sop;

pub use fairness::{max_sop, max_sop_asymptotic, minmax_sop, minmax_sop_asymptotic};
pub use golden::{golden_iteration_bound, golden_section, golden_section_traced, INV_GOLDEN};
pub use pop::{minimize_pop, near_side_quadratic_roots, pop_feasible_interval};
pub use sop::{
    asymptotic_optima, equal_sop_crossing, minimize_sop, minimize_sop_far, minimize_sop_near,
    sop_crossings, AsymptoticOptima,
};

/// Tuning knobs shared by the numerical solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Final bracket length of golden-section searches.
    pub golden_eps: f64,
    /// Bisection tolerance on `alpha` for equal-SOP crossings.
    pub crossing_tol: f64,
    /// Searches run on `[alpha_margin, 1 - alpha_margin]`.
    pub alpha_margin: f64,
    /// Grid size used to locate sign changes of `sop_near - sop_far`.
    pub crossing_scan_points: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            golden_eps: 0.01,
            crossing_tol: 1e-6,
            alpha_margin: 1e-6,
            crossing_scan_points: 128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    ClosedForm,
    GoldenSection,
    CandidateEnumeration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub label: String,
    pub alpha: f64,
    /// `None` when the objective cannot be evaluated at `alpha` (outside (0, 1)).
    pub objective: Option<f64>,
    pub feasible: bool,
}

impl Candidate {
    pub(crate) fn new(label: impl Into<String>, alpha: f64, objective: Option<f64>, feasible: bool) -> Self {
        Self {
            label: label.into(),
            alpha,
            objective,
            feasible,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaSolution {
    pub alpha_star: f64,
    pub objective: f64,
    pub candidates: Vec<Candidate>,
    pub method: SolveMethod,
    /// Golden-section iterations spent, zero for closed forms.
    pub iterations: usize,
}

/// Feasible candidate with the smallest objective; smallest `alpha` on ties.
pub(crate) fn best_candidate(candidates: &[Candidate]) -> Option<(f64, f64)> {
    candidates
        .iter()
        .filter(|c| c.feasible)
        .filter_map(|c| c.objective.map(|v| (c.alpha, v)))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)))
}

/// Range of power allocations meeting the pair-outage cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaInterval {
    pub lb: f64,
    pub ub: f64,
    pub empty: bool,
}

impl AlphaInterval {
    pub fn new(lb: f64, ub: f64) -> Self {
        Self {
            lb,
            ub,
            empty: !(lb < ub),
        }
    }

    pub fn empty_at(alpha: f64) -> Self {
        Self {
            lb: alpha,
            ub: alpha,
            empty: true,
        }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        !self.empty && alpha > self.lb && alpha < self.ub
    }

    pub fn width(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.ub - self.lb
        }
    }
}
