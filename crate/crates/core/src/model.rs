//! System parameters and the exact SINR, rate and secrecy-rate algebra for the
//! four SIC decoding orders of a two-user downlink.
//!
//! All quantities here are linear: the transmit SNR is `P_t / sigma^2`, the
//! residual-interference coefficients `beta_ij` are normalised by `P_t`, and
//! channel gains are squared magnitudes. Engineering units (dB, dBm, metres)
//! are converted in [`crate::units`].
//!
//! Index convention: `gamma_ij` is the SINR of user `i`'s data when it is
//! decoded by user `j`, so `gamma_12` is the near user's message as seen by
//! the (untrusted) far user.

use std::fmt;

use crate::error::{Error, Result};

/// Which of the two paired users a quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum User {
    Near,
    Far,
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            User::Near => f.write_str("near"),
            User::Far => f.write_str("far"),
        }
    }
}

/// Physical and protocol parameters of the two-user system, in linear units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    /// Distance of the near user from the base station (m).
    pub d1: f64,
    /// Distance of the far user from the base station (m).
    pub d2: f64,
    pub path_loss_const: f64,
    pub path_loss_exp: f64,
    /// Receiver noise power (W).
    pub noise_power: f64,
    /// Transmit SNR `P_t / sigma^2`.
    pub transmit_snr: f64,
    pub beta11: f64,
    pub beta12: f64,
    pub beta21: f64,
    pub beta22: f64,
    /// QoS threshold rate of the near user (bit/s/Hz).
    pub r1_th: f64,
    /// QoS threshold rate of the far user (bit/s/Hz).
    pub r2_th: f64,
    /// Target secrecy rate of the near user (bit/s/Hz).
    pub rs1_th: f64,
    /// Target secrecy rate of the far user (bit/s/Hz).
    pub rs2_th: f64,
    /// Maximum allowable pair outage probability.
    pub xi: f64,
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let finite = [
            self.d1,
            self.d2,
            self.path_loss_const,
            self.path_loss_exp,
            self.noise_power,
            self.transmit_snr,
            self.beta11,
            self.beta12,
            self.beta21,
            self.beta22,
            self.r1_th,
            self.r2_th,
            self.rs1_th,
            self.rs2_th,
            self.xi,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return bad("all parameters must be finite".into());
        }
        if !(self.d1 > 0.0 && self.d1 < self.d2) {
            return bad(format!(
                "distances must satisfy 0 < d1 < d2 (got d1 = {}, d2 = {})",
                self.d1, self.d2
            ));
        }
        if self.path_loss_const <= 0.0 || self.path_loss_exp <= 0.0 {
            return bad("path loss constant and exponent must be positive".into());
        }
        if self.noise_power <= 0.0 {
            return bad("noise power must be positive".into());
        }
        if self.transmit_snr <= 0.0 {
            return bad("transmit SNR must be positive".into());
        }
        if [self.beta11, self.beta12, self.beta21, self.beta22]
            .iter()
            .any(|&b| b < 0.0)
        {
            return bad("residual interference coefficients must be non-negative".into());
        }
        if [self.r1_th, self.r2_th, self.rs1_th, self.rs2_th]
            .iter()
            .any(|&r| r < 0.0)
        {
            return bad("threshold and target rates must be non-negative".into());
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return bad(format!("xi = {} must lie in [0, 1]", self.xi));
        }
        Ok(())
    }

    /// Mean channel power gain of the near user, `Lp * d1^-n`.
    pub fn lambda1(&self) -> f64 {
        self.path_loss_const * self.d1.powf(-self.path_loss_exp)
    }

    /// Mean channel power gain of the far user, `Lp * d2^-n`.
    pub fn lambda2(&self) -> f64 {
        self.path_loss_const * self.d2.powf(-self.path_loss_exp)
    }

    pub fn lambda(&self, user: User) -> f64 {
        match user {
            User::Near => self.lambda1(),
            User::Far => self.lambda2(),
        }
    }

    pub fn gamma21(&self) -> f64 {
        self.transmit_snr * self.beta21 + 1.0
    }

    pub fn gamma12(&self) -> f64 {
        self.transmit_snr * self.beta12 + 1.0
    }

    /// `2^R1th - 1`
    pub fn pi1(&self) -> f64 {
        self.r1_th.exp2() - 1.0
    }

    /// `2^R2th - 1`
    pub fn pi2(&self) -> f64 {
        self.r2_th.exp2() - 1.0
    }

    /// `2^Rs1th`
    pub fn big_pi1(&self) -> f64 {
        self.rs1_th.exp2()
    }

    /// `2^Rs2th`
    pub fn big_pi2(&self) -> f64 {
        self.rs2_th.exp2()
    }
}

/// One realisation of the two channel power gains `|h1|^2`, `|h2|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub g1: f64,
    pub g2: f64,
}

impl ChannelGains {
    pub fn new(g1: f64, g2: f64) -> Result<Self> {
        if !(g1 > 0.0 && g2 > 0.0 && g1.is_finite() && g2.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "channel gains must be positive and finite (got {g1}, {g2})"
            )));
        }
        Ok(Self { g1, g2 })
    }
}

/// Decoding order `(i, j)`: the near user first decodes user `i`'s data and
/// the far user first decodes user `j`'s data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecodingOrder {
    O11,
    O12,
    /// Both users decode the other user's data first. Protocol default.
    #[default]
    O21,
    /// Conventional NOMA order.
    O22,
}

impl DecodingOrder {
    pub const ALL: [DecodingOrder; 4] = [
        DecodingOrder::O11,
        DecodingOrder::O12,
        DecodingOrder::O21,
        DecodingOrder::O22,
    ];
}

impl fmt::Display for DecodingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecodingOrder::O11 => "(1,1)",
            DecodingOrder::O12 => "(1,2)",
            DecodingOrder::O21 => "(2,1)",
            DecodingOrder::O22 => "(2,2)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrTable {
    pub gamma_11: f64,
    pub gamma_12: f64,
    pub gamma_21: f64,
    pub gamma_22: f64,
}

/// Link rates and the two secrecy rates, unclamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyRatePair {
    pub rs1: f64,
    pub rs2: f64,
    pub r11: f64,
    pub r12: f64,
    pub r21: f64,
    pub r22: f64,
}

/// Range of `alpha` over which both users have strictly positive secrecy rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityWindow {
    pub lower: f64,
    pub upper: f64,
    pub feasible: bool,
}

impl FeasibilityWindow {
    fn clipped(lower: f64, upper: f64) -> Self {
        let lower = lower.max(0.0);
        let upper = upper.min(1.0);
        Self {
            lower,
            upper,
            feasible: lower < upper,
        }
    }

    fn empty() -> Self {
        Self {
            lower: 0.0,
            upper: 0.0,
            feasible: false,
        }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        self.feasible && alpha > self.lower && alpha < self.upper
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfDomain(alpha))
    }
}

pub fn sinr_table(
    cfg: &SystemConfig,
    gains: ChannelGains,
    order: DecodingOrder,
    alpha: f64,
) -> Result<SinrTable> {
    check_alpha(alpha)?;
    Ok(sinr_table_unchecked(cfg, gains, order, alpha))
}

/// [`sinr_table`] without the domain check, for hot sampling loops whose
/// caller has already validated `alpha`.
#[inline]
pub(crate) fn sinr_table_unchecked(
    cfg: &SystemConfig,
    gains: ChannelGains,
    order: DecodingOrder,
    alpha: f64,
) -> SinrTable {
    let ChannelGains { g1, g2 } = gains;
    let inv = 1.0 / cfg.transmit_snr;
    let a = alpha;
    let b = 1.0 - alpha;
    // Own-data SINR after SIC leaves residual beta; before SIC the other
    // user's superposed signal is interference.
    match order {
        DecodingOrder::O22 => SinrTable {
            gamma_21: b * g1 / (a * g1 + inv),
            gamma_11: a * g1 / (cfg.beta21 + inv),
            gamma_22: b * g2 / (a * g2 + inv),
            gamma_12: a * g2 / (cfg.beta22 + inv),
        },
        DecodingOrder::O21 => SinrTable {
            gamma_21: b * g1 / (a * g1 + inv),
            gamma_11: a * g1 / (cfg.beta21 + inv),
            gamma_12: a * g2 / (b * g2 + inv),
            gamma_22: b * g2 / (cfg.beta12 + inv),
        },
        DecodingOrder::O12 => SinrTable {
            gamma_11: a * g1 / (b * g1 + inv),
            gamma_21: b * g1 / (cfg.beta11 + inv),
            gamma_22: b * g2 / (a * g2 + inv),
            gamma_12: a * g2 / (cfg.beta22 + inv),
        },
        DecodingOrder::O11 => SinrTable {
            gamma_11: a * g1 / (b * g1 + inv),
            gamma_21: b * g1 / (cfg.beta11 + inv),
            gamma_12: a * g2 / (b * g2 + inv),
            gamma_22: b * g2 / (cfg.beta12 + inv),
        },
    }
}

impl SinrTable {
    pub fn rates(&self) -> SecrecyRatePair {
        let r11 = self.gamma_11.ln_1p() / std::f64::consts::LN_2;
        let r12 = self.gamma_12.ln_1p() / std::f64::consts::LN_2;
        let r21 = self.gamma_21.ln_1p() / std::f64::consts::LN_2;
        let r22 = self.gamma_22.ln_1p() / std::f64::consts::LN_2;
        SecrecyRatePair {
            rs1: r11 - r12,
            rs2: r22 - r21,
            r11,
            r12,
            r21,
            r22,
        }
    }
}

pub fn secrecy_rates(
    cfg: &SystemConfig,
    gains: ChannelGains,
    order: DecodingOrder,
    alpha: f64,
) -> Result<SecrecyRatePair> {
    Ok(sinr_table(cfg, gains, order, alpha)?.rates())
}

/// Interval of `alpha` giving positive secrecy to both users under `order`.
///
/// The conventional order `(2,2)` is always reported infeasible: it needs
/// `|h2|^2 > |h1|^2` for the far user, which contradicts the near/far
/// labelling. Order `(1,1)` has `alpha`-free conditions, so its window is
/// either all of `(0, 1)` or empty.
pub fn positive_secrecy_window(
    cfg: &SystemConfig,
    gains: ChannelGains,
    order: DecodingOrder,
) -> FeasibilityWindow {
    let ChannelGains { g1, g2 } = gains;
    let rho = cfg.transmit_snr;
    let denom = g1 * g2 * rho;
    match order {
        DecodingOrder::O22 => FeasibilityWindow::empty(),
        DecodingOrder::O21 => FeasibilityWindow::clipped(
            (g1 - g2 + g1 * rho * cfg.beta12) / denom,
            1.0 + (g1 - g2 - g2 * rho * cfg.beta21) / denom,
        ),
        DecodingOrder::O12 => FeasibilityWindow::clipped(
            1.0 - (g1 - g2 + g1 * rho * cfg.beta22) / denom,
            (g2 - g1 + g2 * rho * cfg.beta11) / denom,
        ),
        DecodingOrder::O11 => {
            let near_ok = g1 > g2;
            let far_ok = (rho * cfg.beta11 + 1.0) * g2 > (rho * cfg.beta12 + 1.0) * g1;
            if near_ok && far_ok {
                FeasibilityWindow::clipped(0.0, 1.0)
            } else {
                FeasibilityWindow::empty()
            }
        }
    }
}

/// Secrecy rates of one decoding order together with its window membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRates {
    pub order: DecodingOrder,
    pub rates: SecrecyRatePair,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominantOrder {
    pub order: DecodingOrder,
    pub per_order: Vec<OrderRates>,
}

impl DominantOrder {
    pub fn rates_of(&self, order: DecodingOrder) -> Option<&OrderRates> {
        self.per_order.iter().find(|r| r.order == order)
    }
}

/// Decoding order that maximises `min(rs1, rs2)` among the orders whose
/// positive-secrecy window contains `alpha`. Ties go to `(2,1)`.
pub fn dominant_order(
    cfg: &SystemConfig,
    gains: ChannelGains,
    alpha: f64,
) -> Result<DominantOrder> {
    check_alpha(alpha)?;
    let per_order: Vec<OrderRates> = DecodingOrder::ALL
        .iter()
        .map(|&order| OrderRates {
            order,
            rates: sinr_table_unchecked(cfg, gains, order, alpha).rates(),
            feasible: positive_secrecy_window(cfg, gains, order).contains(alpha),
        })
        .collect();

    let best = per_order
        .iter()
        .filter(|r| r.feasible)
        .max_by(|a, b| {
            let key = |r: &OrderRates| r.rates.rs1.min(r.rates.rs2);
            key(a)
                .total_cmp(&key(b))
                .then_with(|| (a.order == DecodingOrder::O21).cmp(&(b.order == DecodingOrder::O21)))
        })
        .map(|r| r.order)
        .ok_or(Error::NoFeasibleOrder { alpha })?;

    Ok(DominantOrder {
        order: best,
        per_order,
    })
}
