//! The exact constant table and the rank inequalities.
//!
//! `cargo run --example ledger`

use num_bigint::BigInt;

use hasse_lab::ledger::{all_values, curve_count, equality_cases, rank_inequalities};

fn main() -> hasse_lab::Result<()> {
    for v in all_values() {
        println!("{:<44} {:>14} = {}", v.label, v.value.to_string(), v.decimal(6));
    }
    let checks = rank_inequalities(30);
    let mut names: Vec<&str> = Vec::new();
    for c in &checks {
        if !names.contains(&c.name.as_str()) {
            names.push(&c.name);
        }
    }
    for name in names {
        let ok = checks.iter().filter(|c| c.name == name).all(|c| c.holds());
        println!("{name:<36} holds to r = 30: {ok}, equality at {:?}", equality_cases(name, 30));
    }
    for e in [6u32, 9, 12] {
        println!("curves of height < 10^{e}: {}", curve_count(&BigInt::from(10).pow(e))?);
    }
    Ok(())
}
