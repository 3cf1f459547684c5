use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::montecarlo::{Conditioning, RmseThresholds, SimulationSpec};
use crate::optimize::SolverOptions;
use crate::units::{LinkSetup, SnrReference};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Validate,
    Sweep,
    Optimize,
    Compare,
    Tradeoff,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Validate => "validate",
            Mode::Sweep => "sweep",
            Mode::Optimize => "optimize",
            Mode::Compare => "compare",
            Mode::Tradeoff => "tradeoff",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Alpha,
    SnrDb,
    D2,
    RTh,
    RsTh,
    Xi,
}

/// Which user's threshold a `r_th` / `rs_th` sweep moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepTargets {
    Near,
    Far,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// Flat experiment description. Keys carry their units; anything not given
/// falls back to the reference simulation setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Option<Mode>,

    pub d1_m: f64,
    pub d2_m: f64,
    pub path_loss_const: f64,
    pub path_loss_exp: f64,
    pub noise_dbm: f64,
    pub residual_dbm: f64,
    pub residual11_dbm: Option<f64>,
    pub residual12_dbm: Option<f64>,
    pub residual21_dbm: Option<f64>,
    pub residual22_dbm: Option<f64>,
    pub snr_db: f64,
    pub snr_reference: SnrReference,
    pub snr_offset_db: f64,
    pub r1_th_bps_hz: f64,
    pub r2_th_bps_hz: f64,
    pub rs1_th_bps_hz: f64,
    pub rs2_th_bps_hz: f64,
    pub xi: f64,
    /// Power split used when `alpha` is not the sweep axis.
    pub alpha: f64,
    /// Fixed split used as a baseline in `compare` mode.
    pub fixed_alpha: f64,

    pub golden_eps: f64,
    pub samples: u64,
    pub seed: u64,
    pub conditioning: Conditioning,

    pub sweep_axis: SweepAxis,
    pub sweep_start: f64,
    pub sweep_stop: f64,
    pub sweep_step: f64,
    pub sweep_targets: SweepTargets,

    pub pop_rmse_threshold: f64,
    pub sop_rmse_threshold: f64,

    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let link = LinkSetup::default();
        let sim = SimulationSpec::default();
        let thr = RmseThresholds::default();
        Self {
            mode: None,
            d1_m: link.d1_m,
            d2_m: link.d2_m,
            path_loss_const: link.path_loss_const,
            path_loss_exp: link.path_loss_exp,
            noise_dbm: link.noise_dbm,
            residual_dbm: link.residual_dbm,
            residual11_dbm: None,
            residual12_dbm: None,
            residual21_dbm: None,
            residual22_dbm: None,
            snr_db: link.snr_db,
            snr_reference: link.snr_reference,
            snr_offset_db: link.snr_offset_db,
            r1_th_bps_hz: link.r1_th,
            r2_th_bps_hz: link.r2_th,
            rs1_th_bps_hz: link.rs1_th,
            rs2_th_bps_hz: link.rs2_th,
            xi: link.xi,
            alpha: 0.5,
            fixed_alpha: 0.33,
            golden_eps: SolverOptions::default().golden_eps,
            samples: sim.sample_count,
            seed: sim.seed,
            conditioning: sim.conditioning,
            sweep_axis: SweepAxis::SnrDb,
            sweep_start: 0.0,
            sweep_stop: 30.0,
            sweep_step: 6.0,
            sweep_targets: SweepTargets::Both,
            pop_rmse_threshold: thr.pop,
            sop_rmse_threshold: thr.sop,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn link(&self) -> LinkSetup {
        LinkSetup {
            d1_m: self.d1_m,
            d2_m: self.d2_m,
            path_loss_const: self.path_loss_const,
            path_loss_exp: self.path_loss_exp,
            noise_dbm: self.noise_dbm,
            residual_dbm: self.residual_dbm,
            residual11_dbm: self.residual11_dbm,
            residual12_dbm: self.residual12_dbm,
            residual21_dbm: self.residual21_dbm,
            residual22_dbm: self.residual22_dbm,
            snr_db: self.snr_db,
            snr_reference: self.snr_reference,
            snr_offset_db: self.snr_offset_db,
            r1_th: self.r1_th_bps_hz,
            r2_th: self.r2_th_bps_hz,
            rs1_th: self.rs1_th_bps_hz,
            rs2_th: self.rs2_th_bps_hz,
            xi: self.xi,
        }
    }

    pub fn simulation(&self) -> SimulationSpec {
        SimulationSpec {
            sample_count: self.samples,
            seed: self.seed,
            conditioning: self.conditioning,
        }
    }

    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            golden_eps: self.golden_eps,
            ..SolverOptions::default()
        }
    }

    pub fn thresholds(&self) -> RmseThresholds {
        RmseThresholds {
            pop: self.pop_rmse_threshold,
            sop: self.sop_rmse_threshold,
        }
    }

    /// Sweep points `start, start + step, ...` up to `stop` inclusive.
    pub fn sweep_values(&self) -> Result<Vec<f64>> {
        let (a, b, h) = (self.sweep_start, self.sweep_stop, self.sweep_step);
        if !(a.is_finite() && b.is_finite() && h.is_finite()) {
            return Err(Error::Config("sweep range must be finite".into()));
        }
        if h <= 0.0 {
            return Err(Error::Config(format!("sweep_step must be positive (got {h})")));
        }
        if b < a {
            return Err(Error::Config(format!("empty sweep range [{a}, {b}]")));
        }
        let n = ((b - a) / h + 1e-9).floor() as usize + 1;
        Ok((0..n).map(|i| a + i as f64 * h).collect())
    }

    /// Engineering setup and power split at sweep value `x`.
    pub fn point(&self, x: f64) -> Result<(SystemConfig, f64)> {
        let mut link = self.link();
        let mut alpha = self.alpha;
        let (near, far) = match self.sweep_targets {
            SweepTargets::Near => (true, false),
            SweepTargets::Far => (false, true),
            SweepTargets::Both => (true, true),
        };
        match self.sweep_axis {
            SweepAxis::Alpha => alpha = x,
            SweepAxis::SnrDb => link.snr_db = x,
            SweepAxis::D2 => link.d2_m = x,
            SweepAxis::RTh => {
                if near {
                    link.r1_th = x;
                }
                if far {
                    link.r2_th = x;
                }
            }
            SweepAxis::RsTh => {
                if near {
                    link.rs1_th = x;
                }
                if far {
                    link.rs2_th = x;
                }
            }
            SweepAxis::Xi => link.xi = x,
        }
        Ok((link.to_system_config()?, alpha))
    }

    /// Checks everything that can be checked before running.
    pub fn validate(&self) -> Result<()> {
        let xs = self.sweep_values()?;
        for &x in &xs {
            let (_, alpha) = self.point(x).map_err(|e| Error::Config(e.to_string()))?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::Config(format!("alpha = {alpha} must lie in (0, 1)")));
            }
        }
        if !(self.golden_eps > 0.0) {
            return Err(Error::Config("golden_eps must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_from_empty_file() {
        let c = ExperimentConfig::from_toml_str("").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        assert_eq!(c.sweep_values().unwrap(), vec![0.0, 6.0, 12.0, 18.0, 24.0, 30.0]);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ExperimentConfig::from_toml_str("snr = 3").is_err());
    }

    #[test]
    fn bad_ranges() {
        let mut c = ExperimentConfig {
            sweep_step: 0.0,
            ..Default::default()
        };
        assert!(c.sweep_values().is_err());
        c.sweep_step = 1.0;
        c.sweep_stop = -1.0;
        assert!(c.sweep_values().is_err());
    }

    #[test]
    fn axis_application() {
        let c = ExperimentConfig::from_toml_str(
            "sweep_axis = \"rs_th\"\nsweep_targets = \"far\"\nsnr_reference = \"far_effective\"",
        )
        .unwrap();
        let (cfg, alpha) = c.point(2.5).unwrap();
        assert_eq!((cfg.rs1_th, cfg.rs2_th, alpha), (1.0, 2.5, 0.5));
    }
}
