#![allow(dead_code)]

use noma_secrecy::units::{LinkSetup, SnrReference};
use noma_secrecy::SystemConfig;
use rand::Rng;
use rayon::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Reference setup with the SNR axis in far-user effective dB.
pub fn link(snr_db: f64) -> LinkSetup {
    LinkSetup {
        snr_db,
        snr_reference: SnrReference::FarEffective,
        ..Default::default()
    }
}

pub fn cfg(snr_db: f64) -> SystemConfig {
    link(snr_db).to_system_config().unwrap()
}

pub fn cfg_with(snr_db: f64, f: impl FnOnce(&mut LinkSetup)) -> SystemConfig {
    let mut l = link(snr_db);
    f(&mut l);
    l.to_system_config().unwrap()
}

pub fn random_link(r: &mut ChaCha8Rng) -> LinkSetup {
    let q = r.random_range(0.05..0.5);
    LinkSetup {
        snr_db: r.random_range(5.0..30.0),
        snr_reference: SnrReference::FarEffective,
        d2_m: r.random_range(70.0..150.0),
        residual_dbm: r.random_range(-40.0..-25.0),
        r1_th: q,
        r2_th: r.random_range(0.05..0.5),
        rs1_th: r.random_range(0.2..1.5),
        rs2_th: r.random_range(0.2..1.5),
        xi: r.random_range(0.2..0.9),
        ..Default::default()
    }
}

pub fn random_cfg(r: &mut ChaCha8Rng) -> SystemConfig {
    random_link(r).to_system_config().unwrap()
}

/// `k * step` for every `k` with the point strictly inside `(lo, hi)`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step).floor() as i64 + 1;
    (first..)
        .map(|k| k as f64 * step)
        .take_while(|&a| a < hi)
        .collect()
}

/// Smallest value of `f` on the points, with its location.
pub fn argmin(points: &[f64], f: impl Fn(f64) -> f64 + Sync) -> (f64, f64) {
    points
        .par_iter()
        .map(|&a| (a, f(a)))
        .collect::<Vec<_>>()
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |b, p| if p.1 < b.1 { p } else { b })
}
