//! Optimal min-max secrecy outage as the pair-outage cap is relaxed. QoS
//! targets of 0.5 bit/s/Hz make the cap bind at small `xi`.
//!
//! cargo run --example qos_tradeoff

use noma_secrecy::optimize::{minmax_sop, pop_feasible_interval, SolverOptions};
use noma_secrecy::units::{LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    let opts = SolverOptions::default();
    for (rs1, rs2) in [(1.0, 1.0), (1.0, 0.5)] {
        println!("targets ({rs1}, {rs2})");
        for i in 1..=9 {
            let xi = i as f64 / 10.0;
            let cfg = LinkSetup {
                snr_db: 10.0,
                snr_reference: SnrReference::FarEffective,
                r1_th: 0.5,
                r2_th: 0.5,
                rs1_th: rs1,
                rs2_th: rs2,
                xi,
                ..Default::default()
            }
            .to_system_config()?;
            let w = pop_feasible_interval(&cfg)?;
            match minmax_sop(&cfg, &opts) {
                Ok(s) => println!(
                    "  xi = {xi:.1}  window ({:.4}, {:.4})  alpha = {:.4}  min-max sop = {:.5}",
                    w.lb, w.ub, s.alpha_star, s.objective
                ),
                Err(e) => println!("  xi = {xi:.1}  {e}"),
            }
        }
    }
    Ok(())
}
