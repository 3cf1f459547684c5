//! QoS-constrained min-max secrecy outage: candidates, feasible window, and
//! the high-SNR closed-form counterpart.
//!
//! cargo run --example fairness_allocation

use noma_secrecy::optimize::{
    max_sop, minmax_sop, minmax_sop_asymptotic, pop_feasible_interval, SolverOptions,
};
use noma_secrecy::units::{LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    let opts = SolverOptions::default();
    for snr_db in [10.0, 20.0, 30.0] {
        let cfg = LinkSetup {
            snr_db,
            snr_reference: SnrReference::FarEffective,
            rs2_th: 0.1,
            ..Default::default()
        }
        .to_system_config()?;
        let w = pop_feasible_interval(&cfg)?;
        let s = minmax_sop(&cfg, &opts)?;
        let a = minmax_sop_asymptotic(&cfg, &opts)?;
        println!(
            "snr {snr_db} dB  window ({:.4}, {:.4})  alpha_sop = {:.4}  max sop = {:.5}  (asy alpha {:.4})  fixed 0.33 -> {:.5}",
            w.lb,
            w.ub,
            s.alpha_star,
            s.objective,
            a.alpha_star,
            max_sop(&cfg, 0.33)?
        );
        for c in &s.candidates {
            println!(
                "    {:<10} alpha = {:.5}  objective = {:?}  feasible = {}",
                c.label, c.alpha, c.objective, c.feasible
            );
        }
    }
    Ok(())
}
