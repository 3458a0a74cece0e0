//! Rigorous enclosures of the local solubility product for plane cubics.
//!
//! `cargo run --release --example euler_product -- 10000`

use hasse_lab::density::{euler_product, local_factor_ternary_cubic};

fn main() -> hasse_lab::Result<()> {
    let top: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    for p in [2u64, 3, 5, 7] {
        let f = local_factor_ternary_cubic(p)?;
        println!("factor at {p}: {} = 1 - {}", f.value, f.deficit());
    }
    let mut cutoff = 10;
    while cutoff <= top {
        let e = euler_product(cutoff)?;
        let fail = e.scale(&num_rational::BigRational::new(2.into(), 3.into()));
        println!("primes <= {cutoff:>6}: rho in {}, 2/3 rho in {}", e.display(9), fail.display(9));
        cutoff *= 10;
    }
    Ok(())
}
