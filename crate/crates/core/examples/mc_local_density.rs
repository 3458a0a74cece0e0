//! Monte Carlo estimate of a local density against the exact factor.
//!
//! `cargo run --release --example mc_local_density -- 2 100000`

use num_traits::ToPrimitive;

use hasse_lab::density::{local_factor_ternary_cubic, mc_local_density_with};
use hasse_lab::ModelKind;

fn main() -> hasse_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let est = mc_local_density_with(ModelKind::TernaryCubic, p, 6, n, 1, threads)?;
    let exact = local_factor_ternary_cubic(p)?.value;
    println!("p = {p}, k = 6, {n} samples ({} degenerate, {} undecided)", est.degenerate, est.undecided);
    println!("estimate {:.5} +- {:.5}", est.estimate.unwrap_or(f64::NAN), est.std_err.unwrap_or(f64::NAN));
    let x = exact.to_f64().unwrap();
    println!("exact    {exact} = {x:.5}, z = {:.2}", est.z_score(x).unwrap_or(f64::NAN));
    Ok(())
}
