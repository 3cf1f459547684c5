//! Secrecy rates of all four SIC decoding orders for one channel draw, their
//! positive-secrecy windows and the dominant order.
//!
//! cargo run --example decoding_orders

use noma_secrecy::model::{dominant_order, positive_secrecy_window, secrecy_rates};
use noma_secrecy::{ChannelGains, DecodingOrder, SystemConfig};

fn main() -> noma_secrecy::Result<()> {
    let rho = 100.0;
    let cfg = SystemConfig {
        d1: 50.0,
        d2: 100.0,
        path_loss_const: 1.0,
        path_loss_exp: 2.5,
        noise_power: 1e-9,
        transmit_snr: rho,
        beta11: 0.3,
        beta12: 0.01,
        beta21: 0.01,
        beta22: 0.3,
        r1_th: 0.1,
        r2_th: 0.1,
        rs1_th: 1.0,
        rs2_th: 1.0,
        xi: 0.5,
    };
    let gains = ChannelGains::new(2.0, 1.5)?;
    let alpha = 0.5;

    for order in DecodingOrder::ALL {
        let w = positive_secrecy_window(&cfg, gains, order);
        let r = secrecy_rates(&cfg, gains, order, alpha)?;
        println!(
            "{order}: window ({:.3}, {:.3}) feasible={:<5}  rs1 = {:+.3}  rs2 = {:+.3}",
            w.lower, w.upper, w.feasible, r.rs1, r.rs2
        );
    }
    let dom = dominant_order(&cfg, gains, alpha)?;
    println!("dominant order at alpha = {alpha}: {}", dom.order);
    Ok(())
}
