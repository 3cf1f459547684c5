//! Secure two-user NOMA with untrusted users: decoding-order feasibility,
//! pair outage and secrecy outage analysis, QoS-constrained min-max
//! secrecy-fair power allocation, and Monte Carlo validation.
//!
//! ```
//! use noma_secrecy::{analytic, optimize, units::{LinkSetup, SnrReference}};
//!
//! let cfg = LinkSetup {
//!     snr_db: 10.0,
//!     snr_reference: SnrReference::FarEffective,
//!     rs2_th: 0.1,
//!     ..Default::default()
//! }
//! .to_system_config()?;
//! let p = analytic::pop(&cfg, 0.5)?.value;
//! let best = optimize::minmax_sop(&cfg, &optimize::SolverOptions::default())?;
//! assert!(p < 1.0 && best.objective < 1.0);
//! # Ok::<(), noma_secrecy::Error>(())
//! ```

// `!(a < b)` comparisons are deliberate: they reject NaN along with the
// ordinary failure case.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod experiment;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod quadrature;
pub mod units;

pub use error::{Error, Result};
pub use model::{ChannelGains, DecodingOrder, SystemConfig, User};
