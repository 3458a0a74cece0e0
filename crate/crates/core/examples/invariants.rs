//! Invariants, discriminant, Jacobian and genericity of one model.
//!
//! `cargo run --example invariants -- '3;3,0,0,0,0,0,4,0,0,5'`

use hasse_lab::invariants::{discriminant, invariants, jacobian};
use hasse_lab::models::{is_generic, rational_flex};
use hasse_lab::{GenusOneModel, ModelKind};

fn main() -> hasse_lab::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "2;1,0,-3,2,5".into());
    let m: GenusOneModel = text.parse()?;
    println!("model         {m}");
    println!("invariants    {}", invariants(&m));
    println!("discriminant  {}", discriminant(&m));
    let jac = jacobian(&m)?;
    println!("jacobian      y^2 = x^3 + ({})x + ({}), lambda = {}", jac.curve.a, jac.curve.b, jac.lambda);
    println!("height        {}", jac.curve.height());
    println!("generic       {}", is_generic(&m)?);
    if m.kind() == ModelKind::TernaryCubic {
        if let Some(p) = rational_flex(&m)? {
            println!("flex          {p}");
        }
    }
    Ok(())
}
