//! Genericity: no rational root (n = 2, and the resolvent for n = 4), no
//! rational flex (n = 3).

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{act, cubic_poly, hessian, resolvent_quartic, GenusOneModel, ModelKind, ProjectivePoint, TwistedTransform, TERNARY_CUBIC_MONOMIALS};
use crate::arith::matrix::det_bareiss;
use crate::arith::mpoly::ModPoly;
use crate::arith::upoly::{binary_form_rational_roots, interpolate, rational_roots};
use crate::error::{Error, Result};
use crate::invariants::discriminant;

const FLEX_RETRIES: usize = 20;
const SIEVE_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Generic models are smooth and have no rational root (n = 2), no rational
/// flex (n = 3), or a resolvent quartic with no rational root (n = 4).
/// Singular models are reported as non-generic.
pub fn is_generic(model: &GenusOneModel) -> Result<bool> {
    if discriminant(model).is_zero() {
        return Ok(false);
    }
    Ok(match model.kind() {
        ModelKind::BinaryQuartic => binary_form_rational_roots(model.coeffs()).is_empty(),
        ModelKind::QuadricPair => binary_form_rational_roots(resolvent_quartic(model)?.coeffs()).is_empty(),
        ModelKind::TernaryCubic => rational_flex(model)?.is_none(),
    })
}

/// A rational flex of a ternary cubic, if any (the least one in the point
/// ordering when there are several found by the same elimination).
pub fn rational_flex(model: &GenusOneModel) -> Result<Option<ProjectivePoint>> {
    if model.kind() != ModelKind::TernaryCubic {
        return Err(Error::KindMismatch { transform: 3, model: model.kind().n() });
    }
    if model.is_zero() {
        return Err(Error::Degenerate);
    }
    let h = hessian(model)?;
    let (f_poly, h_poly) = (cubic_poly(model.coeffs()), cubic_poly(h.coeffs()));
    for q in SIEVE_PRIMES {
        if !common_zero_mod(&f_poly.reduce_mod(q), &h_poly.reduce_mod(q), q) {
            return Ok(None);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f1e_c5);
    let mut g = TwistedTransform::identity(ModelKind::TernaryCubic);
    let mut current = model.clone();
    for _ in 0..=FLEX_RETRIES {
        if !current.coeffs()[9].is_zero() {
            return match flex_by_elimination(&current)? {
                Some(p) => Ok(Some(g.push_point(&p)?)),
                None => Ok(None),
            };
        }
        g = TwistedTransform::random_unimodular(ModelKind::TernaryCubic, 4, &mut rng);
        current = act(&g, model)?.to_integral()?;
    }
    Err(Error::Elimination(FLEX_RETRIES))
}

/// Whether `f = h = 0` has a point in `ℙ²(F_q)`.
fn common_zero_mod(f: &ModPoly, h: &ModPoly, q: u64) -> bool {
    let both = |x: u64, y: u64, z: u64| {
        let v = [x, y, z];
        f.eval(&v) == 0 && h.eval(&v) == 0
    };
    if both(0, 0, 1) {
        return true;
    }
    for z in 0..q {
        if both(0, 1, z) {
            return true;
        }
    }
    for y in 0..q {
        for z in 0..q {
            if both(1, y, z) {
                return true;
            }
        }
    }
    false
}

/// Coefficients in `z` (low first) of a cubic at `(x, y) = (x0, y0)`.
fn z_coeffs(c: &[BigInt], x0: &BigInt, y0: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); 4];
    for (e, coef) in TERNARY_CUBIC_MONOMIALS.iter().zip(c) {
        if coef.is_zero() {
            continue;
        }
        out[e[2] as usize] += coef * num_traits::pow(x0.clone(), e[0] as usize) * num_traits::pow(y0.clone(), e[1] as usize);
    }
    out
}

fn sylvester_cubics(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let mut rows = Vec::with_capacity(6);
    for poly in [f, g] {
        for shift in 0..3 {
            let mut row = vec![BigInt::zero(); 6];
            for k in 0..4 {
                row[shift + k] = poly[3 - k].clone();
            }
            rows.push(row);
        }
    }
    det_bareiss(rows)
}

/// Requires a nonzero `z³` coefficient, so that the resultant in `z` vanishes
/// exactly at the projections of common zeros.
fn flex_by_elimination(model: &GenusOneModel) -> Result<Option<ProjectivePoint>> {
    let h = hessian(model)?;
    let one = BigInt::from(1);
    let xs: Vec<BigInt> = (0..10).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| sylvester_cubics(&z_coeffs(model.coeffs(), &one, t), &z_coeffs(h.coeffs(), &one, t)))
        .collect();
    // R(1, t) = Σ r_k t^k, so r_k is the coefficient of x^(9-k) y^k.
    let form = interpolate(&xs, &ys);
    if form.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate);
    }
    let mut found: Vec<ProjectivePoint> = Vec::new();
    for (x0, y0) in binary_form_rational_roots(&form) {
        let fz = z_coeffs(model.coeffs(), &x0, &y0);
        let hz = z_coeffs(h.coeffs(), &x0, &y0);
        for z in rational_roots(&fz) {
            let (a, b) = (z.numer().clone(), z.denom().clone());
            let pt = [&x0 * &b, &y0 * &b, a];
            let hv: BigInt = hz.iter().enumerate().fold(BigInt::zero(), |acc, (k, c)| {
                acc + c * num_traits::pow(pt[2].clone(), k) * num_traits::pow(b.clone(), 3 - k)
            });
            if hv.is_zero() {
                found.push(ProjectivePoint::new(pt.to_vec())?);
            }
        }
    }
    found.sort();
    Ok(found.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::evaluate;

    #[test]
    fn quartic_examples() {
        assert!(is_generic(&GenusOneModel::binary_quartic([1, 0, 0, 0, 1])).unwrap());
        assert!(!is_generic(&GenusOneModel::binary_quartic([1, 0, 0, 2, 0])).unwrap());
        assert!(!is_generic(&GenusOneModel::zero(ModelKind::BinaryQuartic)).unwrap());
        // 2x^4 - 34y^4 has no rational root
        assert!(is_generic(&GenusOneModel::binary_quartic([2, 0, 0, 0, -34])).unwrap());
    }

    #[test]
    fn cubic_examples() {
        let fermat = GenusOneModel::diagonal_cubic(1, 1, 1);
        assert!(!is_generic(&fermat).unwrap());
        let p = rational_flex(&fermat).unwrap().unwrap();
        assert!(evaluate(&fermat, &p).unwrap()[0].is_zero());
        assert!(is_generic(&GenusOneModel::diagonal_cubic(3, 4, 5)).unwrap());
    }

    #[test]
    fn flex_found_without_z_cubed() {
        // y^2 z = x^3 + x z^2 + z^3 has the flex (0 : 1 : 0), and no z^3-free shortcut
        let w = GenusOneModel::ternary_cubic([-1, 0, 0, 0, 0, -1, 0, 1, 0, -1]);
        let p = rational_flex(&w).unwrap().unwrap();
        assert_eq!(p.to_string(), "(0:1:0)");
        // y^2 z = x^3 + x z^2 has no z^3 term
        let k = GenusOneModel::weierstrass_cubic(1, 0);
        let p = rational_flex(&k).unwrap().unwrap();
        assert!(evaluate(&k, &p).unwrap()[0].is_zero());
        assert!(evaluate(&hessian(&k).unwrap(), &p).unwrap()[0].is_zero());
    }

    #[test]
    fn quadric_pair_uses_resolvent() {
        let diag = GenusOneModel::quadric_pair([1, 0, 0, 0, 1, 0, 0, 1, 0, 1], [1, 0, 0, 0, -1, 0, 0, 2, 0, -2]);
        assert!(!is_generic(&diag).unwrap());
    }
}
