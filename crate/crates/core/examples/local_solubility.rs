//! Place-by-place solubility of a few models, with witnesses.
//!
//! `cargo run --release --example local_solubility -- '2;-1,0,0,0,-1'`

use hasse_lab::local::locally_soluble;
use hasse_lab::GenusOneModel;

fn main() -> hasse_lab::Result<()> {
    let models: Vec<GenusOneModel> = match std::env::args().nth(1) {
        Some(s) => vec![s.parse()?],
        None => vec![
            GenusOneModel::diagonal_cubic(3, 4, 5),
            GenusOneModel::diagonal_cubic(1, 2, 4),
            GenusOneModel::binary_quartic([-1, 0, 0, 0, -1]),
            GenusOneModel::binary_quartic([2, 0, 0, 0, -34]),
        ],
    };
    for m in models {
        let report = locally_soluble(&m)?;
        println!("{m}: {:?}", report.overall);
        for (place, verdict) in report.places() {
            println!("  {:>6}  {verdict}", place.to_string());
        }
    }
    Ok(())
}
