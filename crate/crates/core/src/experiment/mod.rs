//! Experiment runner: flat TOML configuration in engineering units, sweeps
//! over one axis, and CSV / JSON result tables.
//!
//! | mode       | rows contain                                                     |
//! |------------|------------------------------------------------------------------|
//! | `validate` | analytic, Monte Carlo (with std error) and asymptotic outages, RMSE |
//! | `sweep`    | POP / SOP at the configured split plus the min-max optimum        |
//! | `optimize` | every optimiser's allocation and objective                        |
//! | `compare`  | min-max objective against fixed and individually optimal splits   |
//! | `tradeoff` | feasible window and min-max SOP as the outage cap varies          |

mod config;
mod emit;
mod run;

pub use config::{ExperimentConfig, Mode, OutputFormat, SweepAxis, SweepTargets};
pub use emit::{emit, format_sig9, Cell, Table, INFEASIBLE};
pub use run::{run, RunOutcome};
