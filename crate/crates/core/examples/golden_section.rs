//! Golden-section search on a toy objective and on each user's SOP, next to
//! the high-SNR closed forms.
//!
//! cargo run --example golden_section

use noma_secrecy::optimize::{
    asymptotic_optima, golden_section_traced, minimize_sop_far, minimize_sop_near, SolverOptions,
};
use noma_secrecy::units::{LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    let (sol, trace) = golden_section_traced(|x| (x - 0.3) * (x - 0.3), 0.0, 1.0, 0.01)?;
    println!("toy: alpha* = {:.4} after {} iterations", sol.alpha_star, sol.iterations);
    for (a, b) in trace.iter().take(4) {
        println!("  bracket [{a:.4}, {b:.4}]");
    }

    let opts = SolverOptions::default();
    for snr_db in [10.0, 30.0, 50.0] {
        let cfg = LinkSetup {
            snr_db,
            snr_reference: SnrReference::FarEffective,
            ..Default::default()
        }
        .to_system_config()?;
        let near = minimize_sop_near(&cfg, &opts)?;
        let far = minimize_sop_far(&cfg, &opts)?;
        let hat = asymptotic_optima(&cfg)?;
        println!(
            "snr {snr_db:>4} dB: alpha1* = {:.4} (hat {:.4}), alpha2* = {:.4} (hat {:.4})",
            near.alpha_star, hat.alpha1_hat, far.alpha_star, hat.alpha2_hat
        );
    }
    Ok(())
}
