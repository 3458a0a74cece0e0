//! A seeded box experiment, interrupted halfway and resumed.
//!
//! `cargo run --release --example box_experiment -- 2000 4`

use std::fs;

use hasse_lab::lab::{self, ExperimentConfig, ReportFormat, ResumeCheck};
use hasse_lab::ModelKind;

fn main() -> hasse_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let workers: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let dir = std::env::temp_dir().join(format!("hasse-lab-example-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let out = dir.join("cubics.jsonl");

    let config = ExperimentConfig::new(ModelKind::TernaryCubic, 20, samples, 1).with_workers(workers);
    let first = lab::run(&config, Some(&out))?;
    println!("full run: {} samples in {} ms", first.runtime.new_samples, first.runtime.wall_ms);

    // cut the file mid-record, as a killed run would leave it
    let body = fs::read_to_string(&out)?;
    let cut = body.len() / 2;
    fs::write(&out, &body[..cut])?;
    let resumed = lab::resume(&out, workers, &ResumeCheck::default())?;
    println!("resumed: {} samples redone", resumed.runtime.new_samples);
    assert_eq!(resumed.summary, first.summary);

    print!("{}", lab::report(&out, ReportFormat::Csv)?);
    fs::remove_dir_all(&dir)?;
    Ok(())
}
