//! dB/dBm conversions and the engineering-unit link setup that produces a
//! linear [`SystemConfig`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemConfig;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    1e-3 * db_to_linear(dbm)
}

pub fn watts_to_dbm(w: f64) -> f64 {
    linear_to_db(w / 1e-3)
}

/// How the `snr_db` knob is mapped onto the transmit SNR `rho_t`.
///
/// * `Transmit`: `rho_t = snr`.
/// * `FarReceived`: `snr` is the mean received SNR of the far user,
///   `rho_t * lambda2`.
/// * `FarEffective`: `snr` is the far user's mean received SNR relative to
///   noise plus its residual interference,
///   `rho_t * lambda2 / (1 + rho_t * beta12)`.
///
/// Any `snr_offset_db` is added before the mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnrReference {
    #[default]
    Transmit,
    FarReceived,
    FarEffective,
}

impl fmt::Display for SnrReference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SnrReference::Transmit => "transmit",
            SnrReference::FarReceived => "far_received",
            SnrReference::FarEffective => "far_effective",
        })
    }
}

impl FromStr for SnrReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transmit" => Ok(Self::Transmit),
            "far_received" => Ok(Self::FarReceived),
            "far_effective" => Ok(Self::FarEffective),
            other => Err(Error::Config(format!("unknown snr_reference '{other}'"))),
        }
    }
}

/// System parameters in engineering units. `Default` is the reference
/// simulation setup: 50 m / 100 m users, `Lp = 1`, `n = 2.5`, noise
/// -60 dBm, residual interference -30 dBm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSetup {
    pub d1_m: f64,
    pub d2_m: f64,
    pub path_loss_const: f64,
    pub path_loss_exp: f64,
    pub noise_dbm: f64,
    /// Residual interference power used for every `beta_ij` unless overridden.
    pub residual_dbm: f64,
    pub residual11_dbm: Option<f64>,
    pub residual12_dbm: Option<f64>,
    pub residual21_dbm: Option<f64>,
    pub residual22_dbm: Option<f64>,
    pub snr_db: f64,
    pub snr_reference: SnrReference,
    pub snr_offset_db: f64,
    pub r1_th: f64,
    pub r2_th: f64,
    pub rs1_th: f64,
    pub rs2_th: f64,
    pub xi: f64,
}

impl Default for LinkSetup {
    fn default() -> Self {
        Self {
            d1_m: 50.0,
            d2_m: 100.0,
            path_loss_const: 1.0,
            path_loss_exp: 2.5,
            noise_dbm: -60.0,
            residual_dbm: -30.0,
            residual11_dbm: None,
            residual12_dbm: None,
            residual21_dbm: None,
            residual22_dbm: None,
            snr_db: 20.0,
            snr_reference: SnrReference::Transmit,
            snr_offset_db: 0.0,
            r1_th: 0.1,
            r2_th: 0.1,
            rs1_th: 1.0,
            rs2_th: 1.0,
            xi: 0.5,
        }
    }
}

impl LinkSetup {
    fn residual_to_noise(&self, over: Option<f64>) -> f64 {
        db_to_linear(over.unwrap_or(self.residual_dbm) - self.noise_dbm)
    }

    fn lambda2(&self) -> f64 {
        self.path_loss_const * self.d2_m.powf(-self.path_loss_exp)
    }

    /// Linear transmit SNR implied by `snr_db` under the chosen reference.
    pub fn transmit_snr(&self) -> f64 {
        let snr = db_to_linear(self.snr_db + self.snr_offset_db);
        match self.snr_reference {
            SnrReference::Transmit => snr,
            SnrReference::FarReceived => snr / self.lambda2(),
            SnrReference::FarEffective => {
                snr * (1.0 + self.residual_to_noise(self.residual12_dbm)) / self.lambda2()
            }
        }
    }

    /// Convert to linear units. The residual terms are fixed through the
    /// residual-to-noise ratio, so `rho_t * beta_ij` does not depend on the
    /// SNR knob.
    pub fn to_system_config(&self) -> Result<SystemConfig> {
        let rho = self.transmit_snr();
        let cfg = SystemConfig {
            d1: self.d1_m,
            d2: self.d2_m,
            path_loss_const: self.path_loss_const,
            path_loss_exp: self.path_loss_exp,
            noise_power: dbm_to_watts(self.noise_dbm),
            transmit_snr: rho,
            beta11: self.residual_to_noise(self.residual11_dbm) / rho,
            beta12: self.residual_to_noise(self.residual12_dbm) / rho,
            beta21: self.residual_to_noise(self.residual21_dbm) / rho,
            beta22: self.residual_to_noise(self.residual22_dbm) / rho,
            r1_th: self.r1_th,
            r2_th: self.r2_th,
            rs1_th: self.rs1_th,
            rs2_th: self.rs2_th,
            xi: self.xi,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
