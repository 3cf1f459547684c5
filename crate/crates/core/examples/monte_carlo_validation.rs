//! Analytic outages against seeded Monte Carlo over an SNR grid.
//!
//! cargo run --release --example monte_carlo_validation

use noma_secrecy::montecarlo::{validate_rmse, RmseThresholds, SimulationSpec};
use noma_secrecy::units::{LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    let grid = (0..6)
        .map(|i| {
            LinkSetup {
                snr_db: 6.0 * i as f64,
                snr_reference: SnrReference::FarEffective,
                ..Default::default()
            }
            .to_system_config()
        })
        .collect::<noma_secrecy::Result<Vec<_>>>()?;
    let spec = SimulationSpec::default();
    let report = validate_rmse(&grid, 0.5, &spec, &RmseThresholds::default())?;
    for (i, p) in report.points.iter().enumerate() {
        println!(
            "{:>2} dB  pop {:.5} / {:.5}   near {:.5} / {:.5}   far {:.5} / {:.5}",
            6 * i,
            p.pop,
            p.mc.pop.estimate,
            p.sop_near,
            p.mc.sop_near.estimate,
            p.sop_far,
            p.mc.sop_far.estimate
        );
    }
    for c in &report.curves {
        println!("{:<20} rmse {:.2e}  threshold {:?}  pass {}", c.curve, c.rmse, c.threshold, c.passed());
    }
    Ok(())
}
