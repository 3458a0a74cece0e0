//! Searches the classical fixtures for rational points up to a height bound.
//!
//! `cargo run --release --example search_fixtures -- 100000`

use std::time::Instant;

use hasse_lab::rational_points::{search_point_with, SearchOptions};
use hasse_lab::GenusOneModel;

fn main() {
    let height: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let fixtures = [
        ("x^3 + y^3 + z^3", GenusOneModel::diagonal_cubic(1, 1, 1)),
        ("3x^3 + 4y^3 + 5z^3", GenusOneModel::diagonal_cubic(3, 4, 5)),
        ("z^2 = 2x^4 - 34y^4", GenusOneModel::binary_quartic([2, 0, 0, 0, -34])),
        ("y^2 z = x^3 - 2 z^3", GenusOneModel::weierstrass_cubic(0, -2)),
    ];
    for (name, model) in fixtures {
        let start = Instant::now();
        let found = search_point_with(&model, height, &SearchOptions { threads });
        let ms = start.elapsed().as_millis();
        match found {
            Some(p) => println!("{name:<22} point {p}  ({ms} ms)"),
            None => println!("{name:<22} no point with height <= {height}  ({ms} ms)"),
        }
    }
}
