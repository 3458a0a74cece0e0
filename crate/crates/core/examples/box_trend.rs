//! How the class proportions move as the box grows.
//!
//! `cargo run --release --example box_trend -- 3 2000`

use hasse_lab::lab::{self, ClassTag, ExperimentConfig};
use hasse_lab::ModelKind;

fn main() -> hasse_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: ModelKind = match args.next().as_deref() {
        Some("2") => ModelKind::BinaryQuartic,
        Some("4") => ModelKind::QuadricPair,
        _ => ModelKind::TernaryCubic,
    };
    let samples: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    println!("{:>5} {:>9} {:>9} {:>9} {:>9}", "t", "loc_sol", "soluble", "fail", "undec");
    for t in [5u64, 10, 20, 50, 100] {
        let s = lab::run(&ExperimentConfig::new(kind, t, samples, 1).with_workers(workers), None)?.summary;
        let frac = |name: &str| s.proportion(name).and_then(|p| p.fraction).unwrap_or(f64::NAN);
        println!(
            "{t:>5} {:>9.4} {:>9.4} {:>9.4} {:>9}",
            frac("locally_soluble/total"),
            frac("soluble/total"),
            frac("failure_candidate/total"),
            s.count(ClassTag::Undecided)
        );
    }
    for r in lab::references(kind) {
        println!("reference {}: {}", r.label, r.decimal);
    }
    Ok(())
}
