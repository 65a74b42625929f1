//! Runs a job config the way the `hopf-lift` binary does and prints the JSON report.

use hopf_lift::cli::{run, Command, Format, JobConfig};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = JobConfig::from_json(&json!({
        "preset": "qplane",
        "N": 3,
        "f_values": {"z_1": 1, "z_2": 2, "z_21": 1},
        "commands": ["check", "oracle lemma31 --m 3 --n 2"]
    }))?;
    for line in &cfg.commands {
        let report = run(&Command::parse(line)?, &cfg)?;
        print!("{}", report.render(Format::Text));
    }
    println!("{}", serde_json::to_string_pretty(&cfg.to_json())?);
    Ok(())
}
