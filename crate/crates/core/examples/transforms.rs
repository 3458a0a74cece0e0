//! Moves a model around its orbit and checks what should not move.
//!
//! `cargo run --example transforms`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hasse_lab::invariants::invariants;
use hasse_lab::models::{act, hessian, resolvent_quartic, TwistedTransform};
use hasse_lab::{GenusOneModel, ModelKind};

fn main() -> hasse_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let models = [
        GenusOneModel::binary_quartic([1, 0, -3, 2, 5]),
        GenusOneModel::diagonal_cubic(3, 4, 5),
        GenusOneModel::quadric_pair([1, 0, 0, 0, 1, 0, 0, -1, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0, 0, 3]),
    ];
    for m in models {
        let g = TwistedTransform::random_unimodular(m.kind(), 8, &mut rng);
        let gm = act(&g, &m)?.to_integral()?;
        println!("{m}\n  -> {gm}");
        println!("  invariants {} / {}", invariants(&m), invariants(&gm));
        match m.kind() {
            ModelKind::TernaryCubic => println!("  hessian {}", hessian(&m)?),
            ModelKind::QuadricPair => println!("  resolvent quartic {}", resolvent_quartic(&m)?),
            ModelKind::BinaryQuartic => {}
        }
    }
    Ok(())
}
