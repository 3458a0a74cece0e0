//! Point counts of a model and of its Jacobian over small prime fields.
//!
//! `cargo run --example point_counts -- '2;2,0,0,0,-34'`

use num_bigint::BigInt;
use num_traits::Zero;

use hasse_lab::invariants::{count_points_curve_mod_p, count_points_model_mod_p, discriminant, jacobian};
use hasse_lab::GenusOneModel;

fn main() -> hasse_lab::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "3;3,0,0,0,0,0,4,0,0,5".into());
    let m: GenusOneModel = text.parse()?;
    let jac = jacobian(&m)?;
    let bad = discriminant(&m) * BigInt::from(6 * jac.lambda);
    println!("{m}");
    println!("{:>4} {:>6} {:>6}", "p", "#C", "#E");
    for p in (5u64..100).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        let c = count_points_model_mod_p(&m, p)?;
        let e = count_points_curve_mod_p(&jac.curve, p)?;
        println!("{p:>4} {c:>6} {e:>6}{}", if c == e { "" } else { "  differ" });
    }
    Ok(())
}
