//! Engineering units to the linear system model, under each SNR reference.
//!
//! cargo run --example link_budget

use noma_secrecy::units::{linear_to_db, LinkSetup, SnrReference};

fn main() -> noma_secrecy::Result<()> {
    for reference in [SnrReference::Transmit, SnrReference::FarReceived, SnrReference::FarEffective] {
        let setup = LinkSetup {
            snr_db: 20.0,
            snr_reference: reference,
            ..Default::default()
        };
        let cfg = setup.to_system_config()?;
        println!(
            "{reference:>13}: rho_t = {:6.1} dB, far rx SNR = {:6.1} dB, rho_t*beta12 = {:.0}",
            linear_to_db(cfg.transmit_snr),
            linear_to_db(cfg.transmit_snr * cfg.lambda2()),
            cfg.transmit_snr * cfg.beta12,
        );
    }
    let cfg = LinkSetup::default().to_system_config()?;
    println!("lambda1 = {:.4e}, lambda2 = {:.4e}, ratio = {:.4}", cfg.lambda1(), cfg.lambda2(), cfg.lambda1() / cfg.lambda2());
    Ok(())
}
