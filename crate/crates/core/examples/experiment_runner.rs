//! Drive the experiment runner from code and print the CSV it would write.
//!
//! cargo run --example experiment_runner

use noma_secrecy::experiment::{run, ExperimentConfig, Mode, OutputFormat};

fn main() -> noma_secrecy::Result<()> {
    let cfg = ExperimentConfig::from_toml_str(
        r#"
snr_reference = "far_effective"
rs2_th_bps_hz = 0.1
sweep_axis = "snr_db"
sweep_start = 0.0
sweep_stop = 30.0
sweep_step = 10.0
"#,
    )?;
    let out = run(&cfg, Mode::Compare)?;
    print!("{}", String::from_utf8_lossy(&out.table.render(OutputFormat::Csv)?));
    Ok(())
}
