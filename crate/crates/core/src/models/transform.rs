//! The twisted group actions on model spaces.
//!
//! For `n = 2`: `(γ·f)(x, y) = det(γ)⁻² f((x, y)·γ)`; for `n = 3`:
//! `(γ·f)(x, y, z) = det(γ)⁻¹ f((x, y, z)·γ)`. For `n = 4`, `γ₄` acts on
//! both Gram matrices by congruence `M ↦ γ₄ M γ₄ᵀ` (that is, `Q(X) ↦ Q(X·γ₄)`)
//! and `γ₂ = (r s; u w)` mixes the pencil as `(Q, Q′) ↦ (rQ + sQ′, uQ + wQ′)`.
//! All three are left actions: `g₂·(g₁·v) = (g₂g₁)·v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{cubic_poly, quadric_poly, GenusOneModel, ModelKind, ProjectivePoint, QUADRIC_MONOMIALS, TERNARY_CUBIC_MONOMIALS};
use crate::arith::matrix::QMatrix;
use crate::arith::mpoly::{Exp, MPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedTransform {
    Binary(QMatrix),
    Ternary(QMatrix),
    Pair { pencil: QMatrix, space: QMatrix },
}

fn check(m: &QMatrix, n: usize) -> Result<()> {
    if m.dim() != n || m.det().is_zero() {
        return Err(Error::BadTransform);
    }
    Ok(())
}

impl TwistedTransform {
    pub fn binary(m: QMatrix) -> Result<TwistedTransform> {
        check(&m, 2)?;
        Ok(TwistedTransform::Binary(m))
    }

    pub fn ternary(m: QMatrix) -> Result<TwistedTransform> {
        check(&m, 3)?;
        Ok(TwistedTransform::Ternary(m))
    }

    pub fn pair(pencil: QMatrix, space: QMatrix) -> Result<TwistedTransform> {
        check(&pencil, 2)?;
        check(&space, 4)?;
        Ok(TwistedTransform::Pair { pencil, space })
    }

    pub fn identity(kind: ModelKind) -> TwistedTransform {
        match kind {
            ModelKind::BinaryQuartic => TwistedTransform::Binary(QMatrix::identity(2)),
            ModelKind::TernaryCubic => TwistedTransform::Ternary(QMatrix::identity(3)),
            ModelKind::QuadricPair => TwistedTransform::Pair { pencil: QMatrix::identity(2), space: QMatrix::identity(4) },
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            TwistedTransform::Binary(_) => ModelKind::BinaryQuartic,
            TwistedTransform::Ternary(_) => ModelKind::TernaryCubic,
            TwistedTransform::Pair { .. } => ModelKind::QuadricPair,
        }
    }

    /// The group product `self · other`, so that acting by it equals acting
    /// by `other` first and then by `self`.
    pub fn compose(&self, other: &TwistedTransform) -> Result<TwistedTransform> {
        match (self, other) {
            (TwistedTransform::Binary(a), TwistedTransform::Binary(b)) => Ok(TwistedTransform::Binary(a.mul(b))),
            (TwistedTransform::Ternary(a), TwistedTransform::Ternary(b)) => Ok(TwistedTransform::Ternary(a.mul(b))),
            (TwistedTransform::Pair { pencil: p1, space: s1 }, TwistedTransform::Pair { pencil: p2, space: s2 }) => {
                Ok(TwistedTransform::Pair { pencil: p1.mul(p2), space: s1.mul(s2) })
            }
            _ => Err(Error::KindMismatch { transform: self.kind().n(), model: other.kind().n() }),
        }
    }

    /// `det γ`, or `det γ₂ · det γ₄` for pairs.
    pub fn determinant(&self) -> BigRational {
        match self {
            TwistedTransform::Binary(m) | TwistedTransform::Ternary(m) => m.det(),
            TwistedTransform::Pair { pencil, space } => pencil.det() * space.det(),
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            TwistedTransform::Binary(m) | TwistedTransform::Ternary(m) => m.is_integral(),
            TwistedTransform::Pair { pencil, space } => pencil.is_integral() && space.is_integral(),
        }
    }

    /// Integral with determinant one (for pairs: `det γ₂ = det γ₄ = 1`).
    pub fn is_unimodular(&self) -> bool {
        let one = BigRational::one();
        match self {
            TwistedTransform::Binary(m) | TwistedTransform::Ternary(m) => m.is_integral() && m.det() == one,
            TwistedTransform::Pair { pencil, space } => {
                self.is_integral() && pencil.det() == one && space.det() == one
            }
        }
    }

    /// A random element of `SL(ℤ)` (both factors for pairs), built from
    /// `steps` elementary row operations with multipliers in `[-2, 2]`.
    pub fn random_unimodular<R: Rng + ?Sized>(kind: ModelKind, steps: usize, rng: &mut R) -> TwistedTransform {
        match kind {
            ModelKind::BinaryQuartic => TwistedTransform::Binary(random_sl(2, steps, rng)),
            ModelKind::TernaryCubic => TwistedTransform::Ternary(random_sl(3, steps, rng)),
            ModelKind::QuadricPair => TwistedTransform::Pair { pencil: random_sl(2, steps, rng), space: random_sl(4, steps, rng) },
        }
    }

    /// Maps a zero of `act(self, v)` to a zero of `v`.
    pub fn push_point(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        match self {
            TwistedTransform::Binary(g) => {
                let c = p.coords();
                if c.len() != 3 {
                    return Err(Error::DimensionMismatch { expected: 3, got: c.len() });
                }
                let xy = row_times(&c[..2], g);
                let z = BigRational::from_integer(c[2].clone()) * g.det();
                weighted_from_rationals(&xy, &z)
            }
            TwistedTransform::Ternary(g) | TwistedTransform::Pair { space: g, .. } => {
                if p.dim() != g.dim() {
                    return Err(Error::DimensionMismatch { expected: g.dim(), got: p.dim() });
                }
                projective_from_rationals(&row_times(p.coords(), g))
            }
        }
    }

    /// Maps a zero of `v` to a zero of `act(self, v)`.
    pub fn pull_point(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        self.inverse()?.push_point(p)
    }

    pub fn inverse(&self) -> Result<TwistedTransform> {
        Ok(match self {
            TwistedTransform::Binary(g) => TwistedTransform::Binary(inverse(g)?),
            TwistedTransform::Ternary(g) => TwistedTransform::Ternary(inverse(g)?),
            TwistedTransform::Pair { pencil, space } => TwistedTransform::Pair { pencil: inverse(pencil)?, space: inverse(space)? },
        })
    }
}

fn random_sl<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> QMatrix {
    let mut m = QMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = BigRational::from_integer(BigInt::from(rng.random_range(-2i64..=2)));
        // row_i += k · row_j
        for c in 0..n {
            let v = m.get(i, c) + &k * m.get(j, c);
            m.set(i, c, v);
        }
        if rng.random_bool(0.25) {
            // signed swap of rows i and j keeps determinant 1
            for c in 0..n {
                let a = m.get(i, c).clone();
                let b = m.get(j, c).clone();
                m.set(i, c, -b);
                m.set(j, c, a);
            }
        }
    }
    m
}

fn inverse(g: &QMatrix) -> Result<QMatrix> {
    let n = g.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| g.get(i, j).clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::BadTransform)?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
    }
    Ok(QMatrix::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect()))
}

fn row_times(x: &[BigInt], g: &QMatrix) -> Vec<BigRational> {
    let n = g.dim();
    (0..n)
        .map(|j| (0..n).fold(BigRational::zero(), |acc, i| acc + BigRational::from_integer(x[i].clone()) * g.get(i, j)))
        .collect()
}

fn lcm_denoms<'a>(v: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    v.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

fn projective_from_rationals(v: &[BigRational]) -> Result<ProjectivePoint> {
    let l = BigRational::from_integer(lcm_denoms(v));
    ProjectivePoint::new(v.iter().map(|x| (x * &l).to_integer()).collect())
}

fn weighted_from_rationals(xy: &[BigRational], z: &BigRational) -> Result<ProjectivePoint> {
    let l = lcm_denoms(xy).lcm(z.denom());
    let lq = BigRational::from_integer(l.clone());
    let l2 = BigRational::from_integer(&l * &l);
    ProjectivePoint::weighted((&xy[0] * &lq).to_integer(), (&xy[1] * &lq).to_integer(), (z * &l2).to_integer())
}

/// A model with rational coefficients, the general output of [`act`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalModel {
    kind: ModelKind,
    coeffs: Vec<BigRational>,
}

impl RationalModel {
    pub fn new(kind: ModelKind, coeffs: Vec<BigRational>) -> Result<RationalModel> {
        if coeffs.len() != kind.m() {
            return Err(Error::CoefficientCount { n: kind.n(), expected: kind.m(), got: coeffs.len() });
        }
        Ok(RationalModel { kind, coeffs })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integral(&self) -> Result<GenusOneModel> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        GenusOneModel::new(self.kind, self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// `(M, D)` with `self = M / D`, `D > 0` minimal.
    pub fn clear_denominators(&self) -> (GenusOneModel, BigInt) {
        let d = lcm_denoms(&self.coeffs);
        let dq = BigRational::from_integer(d.clone());
        let m = GenusOneModel { kind: self.kind, coeffs: self.coeffs.iter().map(|c| (c * &dq).to_integer()).collect() };
        (m, d)
    }
}

impl From<&GenusOneModel> for RationalModel {
    fn from(m: &GenusOneModel) -> RationalModel {
        RationalModel { kind: m.kind, coeffs: m.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }
}

/// Integer matrix `Γ` and `D` with `γ = Γ / D`.
fn integer_scaled(g: &QMatrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = g.dim();
    let d = lcm_denoms((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| g.get(i, j)));
    let dq = BigRational::from_integer(d.clone());
    let rows = (0..n).map(|i| (0..n).map(|j| (g.get(i, j) * &dq).to_integer()).collect()).collect();
    (rows, d)
}

/// `f(X · Γ)` for a form `f` in `Γ.len()` variables.
fn substitute(f: &MPoly, gamma: &[Vec<BigInt>]) -> MPoly {
    let n = gamma.len();
    let subs: Vec<MPoly> = (0..n)
        .map(|j| {
            let mut lin = MPoly::zero(n);
            for (i, row) in gamma.iter().enumerate() {
                let mut e: Exp = [0; 4];
                e[i] = 1;
                lin.add_term(e, row[j].clone());
            }
            lin
        })
        .collect();
    f.compose(&subs)
}

fn scaled_coeffs(raw: Vec<BigInt>, factor: &BigRational) -> Vec<BigRational> {
    raw.into_iter().map(|c| BigRational::from_integer(c) * factor).collect()
}

/// Acts on an integral model; the result is rational in general and can be
/// converted back with [`RationalModel::to_integral`].
pub fn act(g: &TwistedTransform, model: &GenusOneModel) -> Result<RationalModel> {
    if g.kind() != model.kind() {
        return Err(Error::KindMismatch { transform: g.kind().n(), model: model.kind().n() });
    }
    let coeffs = match g {
        TwistedTransform::Binary(m) => {
            let (gamma, d) = integer_scaled(m);
            let f = substitute(&model.quartic_poly(), &gamma);
            let raw = (0..5).map(|i| f.coeff(&[4 - i as u8, i as u8, 0, 0])).collect();
            let det = m.det();
            let factor = (&det * &det).recip() / BigRational::from_integer(num_traits::pow(d, 4));
            scaled_coeffs(raw, &factor)
        }
        TwistedTransform::Ternary(m) => {
            let (gamma, d) = integer_scaled(m);
            let f = substitute(&cubic_poly(model.coeffs()), &gamma);
            let raw = TERNARY_CUBIC_MONOMIALS.iter().map(|e| f.coeff(&[e[0], e[1], e[2], 0])).collect();
            let factor = m.det().recip() / BigRational::from_integer(num_traits::pow(d, 3));
            scaled_coeffs(raw, &factor)
        }
        TwistedTransform::Pair { pencil, space } => {
            let (gamma, d) = integer_scaled(space);
            let factor = BigRational::from_integer(&d * &d).recip();
            let (q1, q2) = model.quadrics();
            let t1 = quadric_coeffs(&substitute(&quadric_poly(q1), &gamma), &factor);
            let t2 = quadric_coeffs(&substitute(&quadric_poly(q2), &gamma), &factor);
            let (r, s, u, w) = (pencil.get(0, 0), pencil.get(0, 1), pencil.get(1, 0), pencil.get(1, 1));
            let mut out: Vec<BigRational> = t1.iter().zip(&t2).map(|(a, b)| r * a + s * b).collect();
            out.extend(t1.iter().zip(&t2).map(|(a, b)| u * a + w * b));
            out
        }
    };
    RationalModel::new(model.kind(), coeffs)
}

fn quadric_coeffs(f: &MPoly, factor: &BigRational) -> Vec<BigRational> {
    let raw = QUADRIC_MONOMIALS
        .iter()
        .map(|&(i, j)| {
            let mut e: Exp = [0; 4];
            e[i] += 1;
            e[j] += 1;
            f.coeff(&e)
        })
        .collect();
    scaled_coeffs(raw, factor)
}

/// [`act`] on a rational model (the action is linear in the coefficients).
pub fn act_rational(g: &TwistedTransform, model: &RationalModel) -> Result<RationalModel> {
    let (m, d) = model.clear_denominators();
    let out = act(g, &m)?;
    let dq = BigRational::from_integer(d);
    RationalModel::new(out.kind, out.coeffs.iter().map(|c| c / &dq).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn identity_and_scalars() {
        let m = GenusOneModel::ternary_cubic([1, -2, 3, 0, 5, -1, 7, 2, 0, 4]);
        let id = TwistedTransform::identity(ModelKind::TernaryCubic);
        assert_eq!(act(&id, &m).unwrap().to_integral().unwrap(), m);
        let lam = TwistedTransform::ternary(QMatrix::scalar(3, BigRational::new(3.into(), 7.into()))).unwrap();
        assert_eq!(act(&lam, &m).unwrap().to_integral().unwrap(), m);
    }

    #[test]
    fn swap_reverses_quartic() {
        let m = GenusOneModel::binary_quartic([1, 2, 3, 4, 5]);
        let swap = TwistedTransform::binary(QMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        let out = act(&swap, &m).unwrap().to_integral().unwrap();
        assert_eq!(out, GenusOneModel::binary_quartic([5, 4, 3, 2, 1]));
    }

    #[test]
    fn non_integral_is_flagged() {
        let m = GenusOneModel::binary_quartic([1, 0, 0, 0, 1]);
        let g = TwistedTransform::binary(QMatrix::from_ints(&[&[2, 0], &[0, 1]])).unwrap();
        let out = act(&g, &m).unwrap();
        assert!(!out.is_integral());
        assert!(matches!(out.to_integral(), Err(Error::NonIntegral)));
        assert_eq!(out.coeffs()[0], q(4));
        assert_eq!(out.coeffs()[4], BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn kind_mismatch() {
        let m = GenusOneModel::binary_quartic([1, 0, 0, 0, 1]);
        let g = TwistedTransform::identity(ModelKind::TernaryCubic);
        assert!(matches!(act(&g, &m), Err(Error::KindMismatch { .. })));
        assert!(TwistedTransform::binary(QMatrix::from_ints(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn composition_is_a_left_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let models = [
            GenusOneModel::binary_quartic([1, -3, 2, 5, -7]),
            GenusOneModel::ternary_cubic([1, -2, 3, 0, 5, -1, 7, 2, 0, 4]),
            GenusOneModel::quadric_pair([1, 2, 0, -1, 3, 0, 1, -2, 0, 5], [0, 1, 1, 0, -2, 3, 0, 1, 1, -1]),
        ];
        for m in models {
            let g1 = TwistedTransform::random_unimodular(m.kind(), 6, &mut rng);
            let g2 = TwistedTransform::random_unimodular(m.kind(), 6, &mut rng);
            assert!(g1.is_unimodular());
            let step = act_rational(&g2, &act(&g1, &m).unwrap()).unwrap();
            let once = act(&g2.compose(&g1).unwrap(), &m).unwrap();
            assert_eq!(step, once);
        }
    }

    #[test]
    fn zeros_transport() {
        let fermat = GenusOneModel::diagonal_cubic(1, 1, 1);
        let p = ProjectivePoint::from_ints(&[1, -1, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = TwistedTransform::random_unimodular(ModelKind::TernaryCubic, 5, &mut rng);
        let moved = act(&g, &fermat).unwrap().to_integral().unwrap();
        let p2 = g.pull_point(&p).unwrap();
        assert!(evaluate(&moved, &p2).unwrap().iter().all(|v| v.is_zero()));
        assert_eq!(g.push_point(&p2).unwrap(), p);

        // z^2 = x^4 + y^4 has (1 : 0 : 1)
        let m = GenusOneModel::binary_quartic([1, 0, 0, 0, 1]);
        let g = TwistedTransform::binary(QMatrix::from_ints(&[&[2, 1], &[1, 1]])).unwrap();
        let moved = act(&g, &m).unwrap().to_integral().unwrap();
        let p = ProjectivePoint::weighted(1.into(), 0.into(), 1.into()).unwrap();
        let p2 = g.pull_point(&p).unwrap();
        assert!(evaluate(&moved, &p2).unwrap().iter().all(|v| v.is_zero()));
    }
}
