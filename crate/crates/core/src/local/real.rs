use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Exhaustion, LocalVerdict, RealCertificate, Witness};
use crate::arith::matrix::det_bareiss;
use crate::arith::upoly::{real_roots, separating_points, sign_at, RealRoot};
use crate::error::{Error, Result};
use crate::invariants::discriminant;
use crate::models::{doubled_gram, resolvent_quartic, GenusOneModel, ModelKind};

/// Whether the model has a point over ℝ. Requires `Δ ≠ 0`.
pub fn real_soluble(model: &GenusOneModel) -> Result<bool> {
    Ok(real_verdict(model)?.is_soluble())
}

pub(crate) fn real_verdict(model: &GenusOneModel) -> Result<LocalVerdict> {
    if discriminant(model).is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(match model.kind() {
        ModelKind::TernaryCubic => LocalVerdict::Soluble(Witness::Real(RealCertificate::OddDegree)),
        ModelKind::BinaryQuartic => quartic(model.coeffs()),
        ModelKind::QuadricPair => pencil(model)?,
    })
}

fn quartic(c: &[BigInt]) -> LocalVerdict {
    let at = |x: BigRational, y: BigRational| LocalVerdict::Soluble(Witness::Real(RealCertificate::NonNegativeAt { x, y }));
    if !c[0].is_negative() {
        return at(BigRational::one(), BigRational::zero());
    }
    // f(t, 1), lowest degree first
    let f: Vec<BigInt> = c.iter().rev().cloned().collect();
    let roots = real_roots(&f);
    for root in &roots {
        if let RealRoot::Exact(r) = root {
            return at(r.clone(), BigRational::one());
        }
    }
    for t in separating_points(&roots) {
        if sign_at(&f, &t) > 0 {
            return at(t, BigRational::one());
        }
    }
    LocalVerdict::Insoluble(Exhaustion::NegativeDefinite)
}

/// `+1` positive definite, `-1` negative definite, `0` otherwise.
fn definiteness(m: &[Vec<BigInt>]) -> i32 {
    let minors: Vec<BigInt> = (1..=m.len())
        .map(|k| det_bareiss(m[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect();
    if minors.iter().all(|d| d.is_positive()) {
        1
    } else if minors.iter().enumerate().all(|(i, d)| if i % 2 == 0 { d.is_negative() } else { d.is_positive() }) {
        -1
    } else {
        0
    }
}

/// Two quadrics in four variables have a common real zero iff no member of
/// the pencil is definite. Definiteness is constant between consecutive real
/// roots of `det(xG + yG′)`, so one sample per interval suffices.
fn pencil(model: &GenusOneModel) -> Result<LocalVerdict> {
    let (q1, q2) = model.quadrics();
    let (g1, g2) = (doubled_gram(q1), doubled_gram(q2));
    let r = resolvent_quartic(model)?;
    let f: Vec<BigInt> = r.coeffs().iter().rev().cloned().collect();
    let roots = real_roots(&f);
    let mut samples: Vec<(BigInt, BigInt)> =
        separating_points(&roots).into_iter().map(|t| (t.numer().clone(), t.denom().clone())).collect();
    samples.push((BigInt::one(), BigInt::zero()));
    for (x, y) in &samples {
        let m: Vec<Vec<BigInt>> = (0..4).map(|i| (0..4).map(|j| x * &g1[i][j] + y * &g2[i][j]).collect()).collect();
        if definiteness(&m) != 0 {
            return Ok(LocalVerdict::Insoluble(Exhaustion::DefiniteMember {
                x: BigRational::from_integer(x.clone()),
                y: BigRational::from_integer(y.clone()),
            }));
        }
    }
    Ok(LocalVerdict::Soluble(Witness::Real(RealCertificate::IndefinitePencil { samples: samples.len() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_cases() {
        assert!(real_soluble(&GenusOneModel::binary_quartic([2, 0, 0, 0, -34])).unwrap());
        assert!(!real_soluble(&GenusOneModel::binary_quartic([-1, 0, 0, 0, -1])).unwrap());
        // -(t^2 - 2)(t^2 - 3) is positive for t^2 in (2, 3)
        assert!(real_soluble(&GenusOneModel::binary_quartic([-1, 0, 5, 0, -6])).unwrap());
        assert!(!real_soluble(&GenusOneModel::binary_quartic([-1, 0, -1, 0, -3])).unwrap());
    }

    #[test]
    fn pencil_cases() {
        // x1^2 + x2^2 + x3^2 + x4^2 is definite
        let m = GenusOneModel::quadric_pair([1, 0, 0, 0, 1, 0, 0, 1, 0, 1], [1, 0, 0, 0, -1, 0, 0, 2, 0, -3]);
        assert!(!real_soluble(&m).unwrap());
        // both vanish at (1, 1, 1, 1)
        let m = GenusOneModel::quadric_pair([1, 0, 0, 0, -1, 0, 0, 2, 0, -2], [2, 0, 0, 0, 1, 0, 0, -1, 0, -2]);
        assert!(real_soluble(&m).unwrap());
        assert!(real_soluble(&GenusOneModel::diagonal_cubic(3, 4, 5)).unwrap());
    }
}
