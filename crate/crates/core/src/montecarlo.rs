//! Seeded Monte Carlo estimates of POP and SOP from raw Rayleigh-fading
//! draws, RMSE validation of the analytic curves, and fairness gains over
//! baseline power allocations.
//!
//! Stream layout: one ChaCha8 stream per seed. Sample `i` reads the 64-bit
//! words at 32-bit word positions `4i` (near user) and `4i + 2` (far user),
//! so any partition of the sample range reproduces the same draws.

use std::fmt;
use std::str::FromStr;

use log::info;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{pop, sop, sop_asymptotic};
use crate::error::{Error, Result};
use crate::model::{check_alpha, sinr_table_unchecked, ChannelGains, DecodingOrder, SystemConfig, User};
use crate::optimize::{max_sop, minimize_sop, minmax_sop, SolverOptions};

const CHUNK: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    /// Independent exponential gains, as the analytic expressions assume.
    #[default]
    Independent,
    /// Only draws with `g1 > g2` are kept (rejection sampling).
    Sorted,
}

impl fmt::Display for Conditioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conditioning::Independent => "independent",
            Conditioning::Sorted => "sorted",
        })
    }
}

impl FromStr for Conditioning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent" => Ok(Self::Independent),
            "sorted" => Ok(Self::Sorted),
            other => Err(Error::Config(format!("unknown conditioning '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationSpec {
    pub sample_count: u64,
    pub seed: u64,
    pub conditioning: Conditioning,
}

impl Default for SimulationSpec {
    fn default() -> Self {
        Self {
            sample_count: 1_000_000,
            seed: 0x5eed_2a11,
            conditioning: Conditioning::Independent,
        }
    }
}

impl SimulationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::InvalidConfig("sample_count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub estimate: f64,
    pub std_error: f64,
    pub sample_count: u64,
}

impl EstimateWithError {
    pub fn from_counts(hits: u64, n: u64) -> Self {
        let p = hits as f64 / n as f64;
        Self {
            estimate: p,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
            sample_count: n,
        }
    }
}

#[inline]
fn exp_from_bits(x: u64, mean: f64) -> f64 {
    // u in (0, 1], never zero so ln is finite.
    let u = ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    -mean * u.ln()
}

/// Raw (unconditioned) draws with indices `start..end`.
struct RawDraws {
    rng: ChaCha8Rng,
    lambdas: (f64, f64),
    next: u64,
    end: u64,
}

impl RawDraws {
    fn new(seed: u64, lambdas: (f64, f64), start: u64, end: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(4 * start as u128);
        Self {
            rng,
            lambdas,
            next: start,
            end,
        }
    }
}

impl Iterator for RawDraws {
    type Item = ChannelGains;

    #[inline]
    fn next(&mut self) -> Option<ChannelGains> {
        if self.next >= self.end {
            return None;
        }
        self.next += 1;
        let g1 = exp_from_bits(self.rng.next_u64(), self.lambdas.0);
        let g2 = exp_from_bits(self.rng.next_u64(), self.lambdas.1);
        Some(ChannelGains { g1, g2 })
    }
}

/// Deterministic stream of `spec.sample_count` channel realisations.
pub fn draw_channels(cfg: &SystemConfig, spec: &SimulationSpec) -> Box<dyn Iterator<Item = ChannelGains>> {
    let lambdas = (cfg.lambda1(), cfg.lambda2());
    let raw = RawDraws::new(spec.seed, lambdas, 0, u64::MAX);
    let n = spec.sample_count as usize;
    match spec.conditioning {
        Conditioning::Independent => Box::new(raw.take(n)),
        Conditioning::Sorted => Box::new(raw.filter(|g| g.g1 > g.g2).take(n)),
    }
}

/// Counts of the three outage events over one set of draws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    pop: u64,
    sop_near: u64,
    sop_far: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            pop: self.pop + o.pop,
            sop_near: self.sop_near + o.sop_near,
            sop_far: self.sop_far + o.sop_far,
        }
    }
}

struct Events {
    cfg: SystemConfig,
    alpha: f64,
    pi1: f64,
    pi2: f64,
}

impl Events {
    #[inline]
    fn count(&self, g: ChannelGains) -> Counts {
        let t = sinr_table_unchecked(&self.cfg, g, DecodingOrder::O21, self.alpha);
        let served = t.gamma_11 > self.pi1
            && t.gamma_21 > self.pi2
            && t.gamma_12 > self.pi1
            && t.gamma_22 > self.pi2;
        let r = t.rates();
        Counts {
            pop: u64::from(!served),
            sop_near: u64::from(r.rs1 < self.cfg.rs1_th),
            sop_far: u64::from(r.rs2 < self.cfg.rs2_th),
        }
    }
}

fn count_events(cfg: &SystemConfig, alpha: f64, spec: &SimulationSpec) -> Result<Counts> {
    check_alpha(alpha)?;
    spec.validate()?;
    let ev = Events {
        cfg: *cfg,
        alpha,
        pi1: cfg.pi1(),
        pi2: cfg.pi2(),
    };
    let n = spec.sample_count;
    let counts = match spec.conditioning {
        Conditioning::Independent => {
            let lambdas = (cfg.lambda1(), cfg.lambda2());
            let chunks = n.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let start = c * CHUNK;
                    let end = (start + CHUNK).min(n);
                    RawDraws::new(spec.seed, lambdas, start, end)
                        .fold(Counts::default(), |acc, g| acc + ev.count(g))
                })
                .reduce(Counts::default, |a, b| a + b)
        }
        Conditioning::Sorted => {
            let lambdas = (cfg.lambda1(), cfg.lambda2());
            let mut raw = RawDraws::new(spec.seed, lambdas, 0, u64::MAX);
            let mut acc = Counts::default();
            let mut kept = 0;
            while kept < n {
                let g = raw.next().expect("unbounded stream");
                if g.g1 > g.g2 {
                    acc = acc + ev.count(g);
                    kept += 1;
                }
            }
            info!(
                "sorted sampling kept {kept} of {} draws (acceptance {:.4})",
                raw.next - 1,
                kept as f64 / (raw.next - 1) as f64
            );
            acc
        }
    };
    Ok(counts)
}

/// Monte Carlo estimates of POP and both SOPs from one shared set of draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimates {
    pub pop: EstimateWithError,
    pub sop_near: EstimateWithError,
    pub sop_far: EstimateWithError,
}

pub fn estimate_outages(cfg: &SystemConfig, alpha: f64, spec: &SimulationSpec) -> Result<OutageEstimates> {
    let c = count_events(cfg, alpha, spec)?;
    let n = spec.sample_count;
    Ok(OutageEstimates {
        pop: EstimateWithError::from_counts(c.pop, n),
        sop_near: EstimateWithError::from_counts(c.sop_near, n),
        sop_far: EstimateWithError::from_counts(c.sop_far, n),
    })
}

/// Frequency of the pair-outage event under the `(2,1)` order.
pub fn estimate_pop(cfg: &SystemConfig, alpha: f64, spec: &SimulationSpec) -> Result<EstimateWithError> {
    Ok(estimate_outages(cfg, alpha, spec)?.pop)
}

/// Frequency of `R_s < R_s^th` for `user` under the `(2,1)` order.
pub fn estimate_sop(
    cfg: &SystemConfig,
    alpha: f64,
    user: User,
    spec: &SimulationSpec,
) -> Result<EstimateWithError> {
    let e = estimate_outages(cfg, alpha, spec)?;
    Ok(match user {
        User::Near => e.sop_near,
        User::Far => e.sop_far,
    })
}

pub fn rmse(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "curves must have equal length");
    if a.is_empty() {
        return 0.0;
    }
    let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (s / a.len() as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmseThresholds {
    pub pop: f64,
    pub sop: f64,
}

impl Default for RmseThresholds {
    fn default() -> Self {
        Self { pop: 3e-4, sop: 5e-4 }
    }
}

/// Analytic, asymptotic and simulated values at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationPoint {
    pub pop: f64,
    pub sop_near: f64,
    pub sop_far: f64,
    pub sop_near_asymptotic: f64,
    pub sop_far_asymptotic: f64,
    pub mc: OutageEstimates,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRmse {
    pub curve: &'static str,
    pub rmse: f64,
    /// `None` for curves that are reported but not judged.
    pub threshold: Option<f64>,
}

impl CurveRmse {
    pub fn passed(&self) -> bool {
        self.threshold.is_none_or(|t| self.rmse < t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub points: Vec<ValidationPoint>,
    pub curves: Vec<CurveRmse>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.curves.iter().all(CurveRmse::passed)
    }

    pub fn curve(&self, name: &str) -> Option<&CurveRmse> {
        self.curves.iter().find(|c| c.curve == name)
    }
}

pub fn validate_point(cfg: &SystemConfig, alpha: f64, spec: &SimulationSpec) -> Result<ValidationPoint> {
    Ok(ValidationPoint {
        pop: pop(cfg, alpha)?.value,
        sop_near: sop(cfg, alpha, User::Near)?.value,
        sop_far: sop(cfg, alpha, User::Far)?.value,
        sop_near_asymptotic: sop_asymptotic(cfg, alpha, User::Near)?.value,
        sop_far_asymptotic: sop_asymptotic(cfg, alpha, User::Far)?.value,
        mc: estimate_outages(cfg, alpha, spec)?,
    })
}

/// RMSE of every analytic curve against Monte Carlo over a grid of
/// configurations. Exact POP/SOP curves are judged against `thresholds`;
/// the asymptotic curves are reported only.
pub fn validate_rmse(
    cfg_grid: &[SystemConfig],
    alpha: f64,
    spec: &SimulationSpec,
    thresholds: &RmseThresholds,
) -> Result<ValidationReport> {
    if cfg_grid.len() < 2 {
        return Err(Error::InvalidConfig("validation needs at least two grid points".into()));
    }
    let points = cfg_grid
        .iter()
        .map(|c| validate_point(c, alpha, spec))
        .collect::<Result<Vec<_>>>()?;
    let col = |f: fn(&ValidationPoint) -> f64| points.iter().map(f).collect::<Vec<f64>>();
    let mc_pop = col(|p| p.mc.pop.estimate);
    let mc_near = col(|p| p.mc.sop_near.estimate);
    let mc_far = col(|p| p.mc.sop_far.estimate);
    let curves = vec![
        CurveRmse {
            curve: "pop",
            rmse: rmse(&col(|p| p.pop), &mc_pop),
            threshold: Some(thresholds.pop),
        },
        CurveRmse {
            curve: "sop_near",
            rmse: rmse(&col(|p| p.sop_near), &mc_near),
            threshold: Some(thresholds.sop),
        },
        CurveRmse {
            curve: "sop_far",
            rmse: rmse(&col(|p| p.sop_far), &mc_far),
            threshold: Some(thresholds.sop),
        },
        CurveRmse {
            curve: "sop_near_asymptotic",
            rmse: rmse(&col(|p| p.sop_near_asymptotic), &mc_near),
            threshold: None,
        },
        CurveRmse {
            curve: "sop_far_asymptotic",
            rmse: rmse(&col(|p| p.sop_far_asymptotic), &mc_far),
            threshold: None,
        },
    ];
    Ok(ValidationReport { points, curves })
}

/// Power allocation used as the comparison point for fairness gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaselinePolicy {
    Fixed(f64),
    /// Unconstrained minimiser of the near user's SOP.
    NearOptimal,
    /// Unconstrained minimiser of the far user's SOP.
    FarOptimal,
    /// The min-max solution itself (zero gain).
    MinMaxOptimal,
}

impl fmt::Display for BaselinePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselinePolicy::Fixed(a) => write!(f, "fixed({a})"),
            BaselinePolicy::NearOptimal => f.write_str("alpha1*"),
            BaselinePolicy::FarOptimal => f.write_str("alpha2*"),
            BaselinePolicy::MinMaxOptimal => f.write_str("minmax"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainPoint {
    pub optimal_alpha: f64,
    pub optimal_objective: f64,
    pub baseline_alpha: f64,
    pub baseline_objective: f64,
    /// `100 (baseline - optimal) / baseline`; `None` when the baseline is 0.
    pub gain_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainReport {
    pub baseline: BaselinePolicy,
    pub points: Vec<GainPoint>,
    /// Mean of the defined per-point gains.
    pub average_gain_pct: f64,
}

/// Percentage reduction of `max(sop_near, sop_far)` achieved by the min-max
/// allocation relative to `baseline`, per grid point and averaged.
pub fn percentage_gain(
    cfg_grid: &[SystemConfig],
    baseline: BaselinePolicy,
    opts: &SolverOptions,
) -> Result<GainReport> {
    let points = cfg_grid
        .iter()
        .map(|cfg| {
            let opt = minmax_sop(cfg, opts)?;
            let baseline_alpha = match baseline {
                BaselinePolicy::Fixed(a) => a,
                BaselinePolicy::NearOptimal => minimize_sop(cfg, User::Near, opts)?.alpha_star,
                BaselinePolicy::FarOptimal => minimize_sop(cfg, User::Far, opts)?.alpha_star,
                BaselinePolicy::MinMaxOptimal => opt.alpha_star,
            };
            let baseline_objective = max_sop(cfg, baseline_alpha)?;
            let gain_pct = (baseline_objective > 0.0)
                .then(|| 100.0 * (baseline_objective - opt.objective) / baseline_objective);
            Ok(GainPoint {
                optimal_alpha: opt.alpha_star,
                optimal_objective: opt.objective,
                baseline_alpha,
                baseline_objective,
                gain_pct,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let defined: Vec<f64> = points.iter().filter_map(|p| p.gain_pct).collect();
    let average_gain_pct = if defined.is_empty() {
        0.0
    } else {
        defined.iter().sum::<f64>() / defined.len() as f64
    };
    Ok(GainReport {
        baseline,
        points,
        average_gain_pct,
    })
}
