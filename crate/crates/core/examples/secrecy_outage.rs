//! Exact (quadrature) and high-SNR secrecy outage of both users.
//!
//! cargo run --example secrecy_outage

use noma_secrecy::analytic::{sop, sop_asymptotic};
use noma_secrecy::units::{LinkSetup, SnrReference};
use noma_secrecy::User;

fn main() -> noma_secrecy::Result<()> {
    for snr_db in [10.0, 20.0, 30.0] {
        let cfg = LinkSetup {
            snr_db,
            snr_reference: SnrReference::FarEffective,
            ..Default::default()
        }
        .to_system_config()?;
        println!("snr = {snr_db} dB");
        for alpha in [0.2, 0.4, 0.6, 0.8] {
            let n = sop(&cfg, alpha, User::Near)?;
            let f = sop(&cfg, alpha, User::Far)?;
            println!(
                "  alpha = {alpha:.1}  near {:.5} (asy {:.5}, err {:.1e})  far {:.5} (asy {:.5})",
                n.value,
                sop_asymptotic(&cfg, alpha, User::Near)?.value,
                n.abs_err,
                f.value,
                sop_asymptotic(&cfg, alpha, User::Far)?.value,
            );
        }
    }
    Ok(())
}
