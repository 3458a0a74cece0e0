//! The five-way classification on a handful of models.
//!
//! `cargo run --release --example classify -- 500`

use hasse_lab::rational_points::classify;
use hasse_lab::GenusOneModel;

fn main() {
    let height: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let models = [
        GenusOneModel::diagonal_cubic(1, 1, 1),
        GenusOneModel::diagonal_cubic(1, 2, 4),
        GenusOneModel::diagonal_cubic(3, 4, 5),
        GenusOneModel::binary_quartic([2, 0, 0, 0, -34]),
        GenusOneModel::binary_quartic([1, 0, -2, 0, 1]),
        GenusOneModel::weierstrass_cubic(0, -2),
    ];
    for m in models {
        println!("{:<40} {}", m.to_string(), classify(&m, height));
    }
}
