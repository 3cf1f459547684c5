//! Pair outage probability across the power split, its piece structure and
//! the closed-form minimiser.
//!
//! cargo run --example pair_outage

use noma_secrecy::analytic::{pop, pop_boundaries};
use noma_secrecy::optimize::minimize_pop;
use noma_secrecy::units::{LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    let cfg = LinkSetup {
        snr_db: 20.0,
        snr_reference: SnrReference::FarEffective,
        ..Default::default()
    }
    .to_system_config()?;

    let [a1, a2, a3, a4] = pop_boundaries(&cfg);
    println!("alpha1 = {a1:.4}  alpha2 = {a2:.4}  alpha3 = {a3:.4}  alpha4 = {a4:.4}");
    for i in 1..20 {
        let alpha = i as f64 * 0.05;
        let b = pop(&cfg, alpha)?;
        println!("alpha = {alpha:.2}  pop = {:.6}  piece = {:?}", b.value, b.active_piece);
    }
    let best = minimize_pop(&cfg)?;
    println!("\nminimum pop {:.6} at alpha = {:.4}", best.objective, best.alpha_star);
    for c in &best.candidates {
        println!("  {:<9} alpha = {:>8.4}  feasible = {}", c.label, c.alpha, c.feasible);
    }
    Ok(())
}
