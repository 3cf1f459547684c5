use log::{info, warn};
use rayon::prelude::*;

use super::config::{ExperimentConfig, Mode, SweepAxis};
use super::emit::{Cell, Table};
use crate::analytic::{pop, sop, sop_asymptotic, PopPiece};
use crate::error::{Error, Result};
use crate::model::{SystemConfig, User};
use crate::montecarlo::{rmse, validate_point, ValidationPoint};
use crate::optimize::{
    asymptotic_optima, max_sop, minimize_pop, minimize_sop, minmax_sop, minmax_sop_asymptotic,
    pop_feasible_interval, PaSolution, SolverOptions,
};

/// Result of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub table: Table,
    /// `false` only when validate mode breached an RMSE threshold.
    pub passed: bool,
}

fn piece_name(p: PopPiece) -> &'static str {
    match p {
        PopPiece::Zeta1Zeta3 => "zeta1_zeta3",
        PopPiece::Zeta2Zeta3 => "zeta2_zeta3",
        PopPiece::Zeta2Zeta4 => "zeta2_zeta4",
        PopPiece::Zeta1Zeta4 => "zeta1_zeta4",
        PopPiece::Outage => "outage",
    }
}

/// Optimisation errors that mean "no answer for this point" rather than a
/// broken run.
fn soft<T>(r: Result<T>, what: &str, x: f64) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(
            e @ (Error::QosInfeasible { .. }
            | Error::NoFeasibleCandidate
            | Error::DegenerateTargetRate(_)
            | Error::NoCrossing { .. }),
        ) => {
            warn!("{what} at sweep value {x}: {e}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn sol_cells(s: &Option<PaSolution>) -> [Cell; 2] {
    match s {
        Some(s) => [Cell::Num(s.alpha_star), Cell::Num(s.objective)],
        None => [Cell::Infeasible, Cell::Infeasible],
    }
}

struct Point {
    x: f64,
    cfg: SystemConfig,
    alpha: f64,
}

fn points(cfg: &ExperimentConfig) -> Result<Vec<Point>> {
    cfg.validate()?;
    cfg.sweep_values()?
        .into_iter()
        .map(|x| {
            let (sys, alpha) = cfg.point(x)?;
            Ok(Point { x, cfg: sys, alpha })
        })
        .collect()
}

const VALIDATE_HEADER: [&str; 18] = [
    "sweep_value",
    "alpha",
    "pop",
    "pop_mc",
    "pop_mc_se",
    "sop_near",
    "sop_near_mc",
    "sop_near_mc_se",
    "sop_far",
    "sop_far_mc",
    "sop_far_mc_se",
    "sop_near_asy",
    "sop_far_asy",
    "pop_rmse",
    "sop_near_rmse",
    "sop_far_rmse",
    "sop_near_asy_rmse",
    "sop_far_asy_rmse",
];

fn run_validate(cfg: &ExperimentConfig, pts: &[Point]) -> Result<RunOutcome> {
    let spec = cfg.simulation();
    let vals: Vec<ValidationPoint> = pts
        .iter()
        .map(|p| validate_point(&p.cfg, p.alpha, &spec))
        .collect::<Result<_>>()?;
    let col = |f: fn(&ValidationPoint) -> f64| vals.iter().map(f).collect::<Vec<_>>();
    let mc_pop = col(|v| v.mc.pop.estimate);
    let mc_near = col(|v| v.mc.sop_near.estimate);
    let mc_far = col(|v| v.mc.sop_far.estimate);
    let r_pop = rmse(&col(|v| v.pop), &mc_pop);
    let r_near = rmse(&col(|v| v.sop_near), &mc_near);
    let r_far = rmse(&col(|v| v.sop_far), &mc_far);
    let r_near_asy = rmse(&col(|v| v.sop_near_asymptotic), &mc_near);
    let r_far_asy = rmse(&col(|v| v.sop_far_asymptotic), &mc_far);

    let thr = cfg.thresholds();
    let passed = r_pop < thr.pop && r_near < thr.sop && r_far < thr.sop;
    info!(
        "validate: rmse pop {r_pop:.3e} (< {}), sop_near {r_near:.3e}, sop_far {r_far:.3e} (< {}); \
         asymptotic {r_near_asy:.3e} / {r_far_asy:.3e} reported only",
        thr.pop, thr.sop
    );

    let mut table = Table::new(VALIDATE_HEADER.to_vec());
    for (p, v) in pts.iter().zip(&vals) {
        table.push(vec![
            Cell::Num(p.x),
            Cell::Num(p.alpha),
            Cell::Num(v.pop),
            Cell::Num(v.mc.pop.estimate),
            Cell::Num(v.mc.pop.std_error),
            Cell::Num(v.sop_near),
            Cell::Num(v.mc.sop_near.estimate),
            Cell::Num(v.mc.sop_near.std_error),
            Cell::Num(v.sop_far),
            Cell::Num(v.mc.sop_far.estimate),
            Cell::Num(v.mc.sop_far.std_error),
            Cell::Num(v.sop_near_asymptotic),
            Cell::Num(v.sop_far_asymptotic),
            Cell::Num(r_pop),
            Cell::Num(r_near),
            Cell::Num(r_far),
            Cell::Num(r_near_asy),
            Cell::Num(r_far_asy),
        ]);
    }
    Ok(RunOutcome { table, passed })
}

/// Quantities shared by the sweep / optimize / tradeoff rows.
struct Optima {
    window: Option<(f64, f64)>,
    minmax: Option<PaSolution>,
    minmax_asy: Option<PaSolution>,
}

fn optima(sys: &SystemConfig, opts: &SolverOptions, x: f64) -> Result<Optima> {
    let w = pop_feasible_interval(sys)?;
    let window = (!w.empty).then_some((w.lb, w.ub));
    Ok(Optima {
        window,
        minmax: soft(minmax_sop(sys, opts), "min-max SOP", x)?,
        minmax_asy: soft(minmax_sop_asymptotic(sys, opts), "asymptotic min-max SOP", x)?,
    })
}

fn window_cells(w: Option<(f64, f64)>) -> [Cell; 2] {
    match w {
        Some((lb, ub)) => [Cell::Num(lb), Cell::Num(ub)],
        None => [Cell::Infeasible, Cell::Infeasible],
    }
}

const SWEEP_HEADER: [&str; 15] = [
    "sweep_value",
    "alpha",
    "pop",
    "pop_piece",
    "sop_near",
    "sop_far",
    "sop_near_asy",
    "sop_far_asy",
    "max_sop",
    "alpha_lb",
    "alpha_ub",
    "alpha_sop",
    "minmax_sop",
    "alpha_sop_asy",
    "minmax_sop_asy",
];

fn sweep_row(p: &Point, opts: &SolverOptions, shared: Option<&Optima>) -> Result<Vec<Cell>> {
    let own;
    let o = match shared {
        Some(o) => o,
        None => {
            own = optima(&p.cfg, opts, p.x)?;
            &own
        }
    };
    let b = pop(&p.cfg, p.alpha)?;
    let near = sop(&p.cfg, p.alpha, User::Near)?.value;
    let far = sop(&p.cfg, p.alpha, User::Far)?.value;
    let mut row = vec![
        Cell::Num(p.x),
        Cell::Num(p.alpha),
        Cell::Num(b.value),
        Cell::Text(piece_name(b.active_piece).into()),
        Cell::Num(near),
        Cell::Num(far),
        Cell::Num(sop_asymptotic(&p.cfg, p.alpha, User::Near)?.value),
        Cell::Num(sop_asymptotic(&p.cfg, p.alpha, User::Far)?.value),
        Cell::Num(near.max(far)),
    ];
    row.extend(window_cells(o.window));
    row.extend(sol_cells(&o.minmax));
    row.extend(sol_cells(&o.minmax_asy));
    Ok(row)
}

fn run_sweep(cfg: &ExperimentConfig, pts: &[Point]) -> Result<RunOutcome> {
    let opts = cfg.solver();
    // With alpha as the axis the optima do not change between rows.
    let shared = match (cfg.sweep_axis, pts.first()) {
        (SweepAxis::Alpha, Some(p)) => Some(optima(&p.cfg, &opts, p.x)?),
        _ => None,
    };
    let rows: Vec<Vec<Cell>> = pts
        .par_iter()
        .map(|p| sweep_row(p, &opts, shared.as_ref()))
        .collect::<Result<_>>()?;
    let mut table = Table::new(SWEEP_HEADER.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    Ok(RunOutcome { table, passed: true })
}

const OPTIMIZE_HEADER: [&str; 18] = [
    "sweep_value",
    "alpha_pop",
    "min_pop",
    "alpha1_star",
    "sop_near_min",
    "alpha2_star",
    "sop_far_min",
    "alpha1_hat",
    "alpha2_hat",
    "alpha3_hat",
    "alpha_lb",
    "alpha_ub",
    "alpha_sop",
    "minmax_sop",
    "minmax_iterations",
    "candidates",
    "alpha_sop_asy",
    "minmax_sop_asy",
];

fn candidate_summary(s: &Option<PaSolution>) -> Cell {
    match s {
        None => Cell::Infeasible,
        Some(s) => Cell::Text(
            s.candidates
                .iter()
                .map(|c| {
                    let a = super::emit::format_sig9(c.alpha).unwrap_or_default();
                    let tag = if c.feasible { "" } else { "!" };
                    format!("{}{}={}", tag, c.label, a)
                })
                .collect::<Vec<_>>()
                .join(";"),
        ),
    }
}

fn optimize_row(p: &Point, opts: &SolverOptions) -> Result<Vec<Cell>> {
    let o = optima(&p.cfg, opts, p.x)?;
    let pop_min = soft(minimize_pop(&p.cfg), "POP minimisation", p.x)?;
    let near = minimize_sop(&p.cfg, User::Near, opts)?;
    let far = minimize_sop(&p.cfg, User::Far, opts)?;
    let hat = soft(asymptotic_optima(&p.cfg), "asymptotic optima", p.x)?;
    let mut row = vec![Cell::Num(p.x)];
    row.extend(sol_cells(&pop_min));
    row.extend(sol_cells(&Some(near)));
    row.extend(sol_cells(&Some(far)));
    row.push(Cell::opt(hat.map(|h| h.alpha1_hat)));
    row.push(Cell::opt(hat.map(|h| h.alpha2_hat)));
    row.push(Cell::opt(hat.and_then(|h| h.alpha3_hat)));
    row.extend(window_cells(o.window));
    row.extend(sol_cells(&o.minmax));
    row.push(match &o.minmax {
        Some(s) => Cell::Int(s.iterations as u64),
        None => Cell::Infeasible,
    });
    row.push(candidate_summary(&o.minmax));
    row.extend(sol_cells(&o.minmax_asy));
    Ok(row)
}

fn run_optimize(cfg: &ExperimentConfig, pts: &[Point]) -> Result<RunOutcome> {
    let opts = cfg.solver();
    let rows: Vec<Vec<Cell>> = pts
        .par_iter()
        .map(|p| optimize_row(p, &opts))
        .collect::<Result<_>>()?;
    let mut table = Table::new(OPTIMIZE_HEADER.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    Ok(RunOutcome { table, passed: true })
}

const COMPARE_HEADER: [&str; 12] = [
    "sweep_value",
    "alpha_sop",
    "minmax_sop",
    "fixed_alpha",
    "fixed_objective",
    "fixed_gain_pct",
    "alpha1_star",
    "alpha1_objective",
    "alpha1_gain_pct",
    "alpha2_star",
    "alpha2_objective",
    "alpha2_gain_pct",
];

fn gain(base: f64, opt: Option<f64>) -> Cell {
    match opt {
        Some(o) if base > 0.0 => Cell::Num(100.0 * (base - o) / base),
        _ => Cell::Infeasible,
    }
}

fn compare_row(p: &Point, opts: &SolverOptions, fixed: f64) -> Result<Vec<Cell>> {
    let opt = soft(minmax_sop(&p.cfg, opts), "min-max SOP", p.x)?;
    let best = opt.as_ref().map(|s| s.objective);
    let a1 = minimize_sop(&p.cfg, User::Near, opts)?.alpha_star;
    let a2 = minimize_sop(&p.cfg, User::Far, opts)?.alpha_star;
    let mut row = vec![Cell::Num(p.x)];
    row.extend(sol_cells(&opt));
    for a in [fixed, a1, a2] {
        let obj = max_sop(&p.cfg, a)?;
        row.extend([Cell::Num(a), Cell::Num(obj), gain(obj, best)]);
    }
    Ok(row)
}

fn run_compare(cfg: &ExperimentConfig, pts: &[Point]) -> Result<RunOutcome> {
    let opts = cfg.solver();
    let rows: Vec<Vec<Cell>> = pts
        .par_iter()
        .map(|p| compare_row(p, &opts, cfg.fixed_alpha))
        .collect::<Result<_>>()?;
    let mut table = Table::new(COMPARE_HEADER.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    for name in ["fixed_gain_pct", "alpha1_gain_pct", "alpha2_gain_pct"] {
        let vals: Vec<f64> = table
            .column(name)
            .expect("known column")
            .into_iter()
            .filter_map(|c| match c {
                Cell::Num(v) => Some(*v),
                _ => None,
            })
            .collect();
        if !vals.is_empty() {
            info!("average {name}: {:.2}", vals.iter().sum::<f64>() / vals.len() as f64);
        }
    }
    Ok(RunOutcome { table, passed: true })
}

const TRADEOFF_HEADER: [&str; 9] = [
    "sweep_value",
    "xi",
    "min_pop",
    "alpha_lb",
    "alpha_ub",
    "alpha_sop",
    "minmax_sop",
    "alpha_sop_asy",
    "minmax_sop_asy",
];

fn tradeoff_row(p: &Point, opts: &SolverOptions) -> Result<Vec<Cell>> {
    let o = optima(&p.cfg, opts, p.x)?;
    let pop_min = soft(minimize_pop(&p.cfg), "POP minimisation", p.x)?;
    let mut row = vec![
        Cell::Num(p.x),
        Cell::Num(p.cfg.xi),
        Cell::opt(pop_min.map(|s| s.objective)),
    ];
    row.extend(window_cells(o.window));
    row.extend(sol_cells(&o.minmax));
    row.extend(sol_cells(&o.minmax_asy));
    Ok(row)
}

fn run_tradeoff(cfg: &ExperimentConfig, pts: &[Point]) -> Result<RunOutcome> {
    let opts = cfg.solver();
    let rows: Vec<Vec<Cell>> = pts
        .par_iter()
        .map(|p| tradeoff_row(p, &opts))
        .collect::<Result<_>>()?;
    let mut table = Table::new(TRADEOFF_HEADER.to_vec());
    rows.into_iter().for_each(|r| table.push(r));
    Ok(RunOutcome { table, passed: true })
}

/// Execute `mode` over the configured sweep. Rows come back in sweep order.
pub fn run(cfg: &ExperimentConfig, mode: Mode) -> Result<RunOutcome> {
    let pts = points(cfg)?;
    info!("{mode}: {} sweep points on {:?}", pts.len(), cfg.sweep_axis);
    match mode {
        Mode::Validate => run_validate(cfg, &pts),
        Mode::Sweep => run_sweep(cfg, &pts),
        Mode::Optimize => run_optimize(cfg, &pts),
        Mode::Compare => run_compare(cfg, &pts),
        Mode::Tradeoff => run_tradeoff(cfg, &pts),
    }
}
