//! Hessian of a ternary cubic and resolvent quartic of a quadric pair.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{cubic_poly, GenusOneModel, ModelKind, QUADRIC_MONOMIALS, TERNARY_CUBIC_MONOMIALS};
use crate::arith::mpoly::MPoly;
use crate::error::{Error, Result};

/// Half the determinant of the matrix of second partials; the symbolic
/// determinant has content 2, so this is integral and `x³ + y³ + z³ ↦ 108xyz`.
pub fn hessian(model: &GenusOneModel) -> Result<GenusOneModel> {
    if model.kind() != ModelKind::TernaryCubic {
        return Err(Error::KindMismatch { transform: 3, model: model.kind().n() });
    }
    let f = cubic_poly(model.coeffs());
    let first: Vec<MPoly> = (0..3).map(|i| f.partial(i)).collect();
    let h: Vec<Vec<MPoly>> = first.iter().map(|g| (0..3).map(|j| g.partial(j)).collect()).collect();
    let term = |a: usize, b: usize, c: usize| h[0][a].mul(&h[1][b]).mul(&h[2][c]);
    let det = term(0, 1, 2)
        .add(&term(1, 2, 0))
        .add(&term(2, 0, 1))
        .sub(&term(0, 2, 1))
        .sub(&term(1, 0, 2))
        .sub(&term(2, 1, 0));
    let two = BigInt::from(2);
    let coeffs = TERNARY_CUBIC_MONOMIALS
        .iter()
        .map(|e| {
            let c = det.coeff(&[e[0], e[1], e[2], 0]);
            debug_assert!((&c % &two).is_zero());
            c / &two
        })
        .collect();
    GenusOneModel::new(ModelKind::TernaryCubic, coeffs)
}

/// Integer matrix `2·Gram(Q)`: diagonal `2c_ii`, off-diagonal `c_ij`.
pub(crate) fn doubled_gram(q: &[BigInt]) -> [[BigInt; 4]; 4] {
    let mut g: [[BigInt; 4]; 4] = Default::default();
    for (&(i, j), c) in QUADRIC_MONOMIALS.iter().zip(q) {
        if i == j {
            g[i][i] = c * 2;
        } else {
            g[i][j] = c.clone();
            g[j][i] = c.clone();
        }
    }
    g
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det(x·G + y·G′)` with `G = 2·Gram(Q)`, i.e. `16 det(x·Gram(Q) + y·Gram(Q′))`,
/// as a binary quartic model.
pub fn resolvent_quartic(model: &GenusOneModel) -> Result<GenusOneModel> {
    if model.kind() != ModelKind::QuadricPair {
        return Err(Error::KindMismatch { transform: 4, model: model.kind().n() });
    }
    let (q1, q2) = model.quadrics();
    let (g1, g2) = (doubled_gram(q1), doubled_gram(q2));
    // entry (i, j) as a polynomial in t = y/x: G_ij + t G'_ij
    let entry = |i: usize, j: usize| [g1[i][j].clone(), g2[i][j].clone()];
    let mut total = vec![BigInt::zero(); 5];
    let mut perm = [0usize, 1, 2, 3];
    for_each_permutation(&mut perm, 0, &mut |p, sign| {
        let mut acc = vec![BigInt::from(sign)];
        for (i, &j) in p.iter().enumerate() {
            acc = poly_mul(&acc, &entry(i, j));
        }
        for (k, c) in acc.into_iter().enumerate() {
            total[k] += c;
        }
    });
    GenusOneModel::new(ModelKind::BinaryQuartic, total)
}

fn for_each_permutation(p: &mut [usize; 4], k: usize, f: &mut dyn FnMut(&[usize; 4], i64)) {
    if k == p.len() {
        let mut sign = 1;
        for a in 0..4 {
            for b in a + 1..4 {
                if p[a] > p[b] {
                    sign = -sign;
                }
            }
        }
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_of_diagonal_cubics() {
        let h = hessian(&GenusOneModel::diagonal_cubic(1, 1, 1)).unwrap();
        assert_eq!(h, GenusOneModel::ternary_cubic([0, 0, 0, 0, 108, 0, 0, 0, 0, 0]));
        let h = hessian(&GenusOneModel::diagonal_cubic(3, 4, 5)).unwrap();
        assert_eq!(h, GenusOneModel::ternary_cubic([0, 0, 0, 0, 108 * 60, 0, 0, 0, 0, 0]));
        assert!(hessian(&GenusOneModel::zero(ModelKind::TernaryCubic)).unwrap().is_zero());
    }

    #[test]
    fn diagonal_resolvent() {
        // Q = Σ x_i², Q' = Σ d_i x_i² with d = (1, -1, 2, -2): 16 (x² - y²)(x² - 4y²)
        let m = GenusOneModel::quadric_pair([1, 0, 0, 0, 1, 0, 0, 1, 0, 1], [1, 0, 0, 0, -1, 0, 0, 2, 0, -2]);
        let r = resolvent_quartic(&m).unwrap();
        assert_eq!(r, GenusOneModel::binary_quartic([16, 0, -80, 0, 64]));
        let m = GenusOneModel::quadric_pair([1, 0, 0, 0, 2, 0, 0, 3, 0, 4], [0; 10]);
        assert_eq!(resolvent_quartic(&m).unwrap(), GenusOneModel::binary_quartic([16 * 24, 0, 0, 0, 0]));
    }
}
