//! Genus-one models of degree 2, 3 and 4 over ℤ.
//!
//! Coefficient orders:
//!
//! * `n = 2`: `(a, b, c, d, e)` of `f = a x⁴ + b x³y + c x²y² + d xy³ + e y⁴`,
//!   curve `z² = f(x, y)` in weighted projective space with weights `(1, 1, 2)`.
//! * `n = 3`: lexicographic in `(x, y, z)` exponents:
//!   `x³, x²y, x²z, xy², xyz, xz², y³, y²z, yz², z³`.
//! * `n = 4`: `Q` then `Q′`, each as `c_ij x_i x_j` for `i ≤ j` in the order
//!   `11, 12, 13, 14, 22, 23, 24, 33, 34, 44`.

mod covariants;
mod generic;
mod transform;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::mpoly::{Exp, MPoly};
use crate::error::{Error, Result};

pub use covariants::{hessian, resolvent_quartic};
pub(crate) use covariants::doubled_gram;
pub use generic::{is_generic, rational_flex};
pub use transform::{act, act_rational, RationalModel, TwistedTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum ModelKind {
    BinaryQuartic,
    TernaryCubic,
    QuadricPair,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::BinaryQuartic, ModelKind::TernaryCubic, ModelKind::QuadricPair];

    pub fn from_degree(n: u32) -> Result<ModelKind> {
        match n {
            2 => Ok(ModelKind::BinaryQuartic),
            3 => Ok(ModelKind::TernaryCubic),
            4 => Ok(ModelKind::QuadricPair),
            _ => Err(Error::UnknownKind(n)),
        }
    }

    /// Degree of the covering map to projective space.
    pub fn n(self) -> u32 {
        match self {
            ModelKind::BinaryQuartic => 2,
            ModelKind::TernaryCubic => 3,
            ModelKind::QuadricPair => 4,
        }
    }

    /// Number of coefficients.
    pub fn m(self) -> usize {
        match self {
            ModelKind::BinaryQuartic => 5,
            ModelKind::TernaryCubic => 10,
            ModelKind::QuadricPair => 20,
        }
    }

    /// Degree of the discriminant, `6m/5`.
    pub fn d(self) -> u32 {
        (6 * self.m() / 5) as u32
    }

    /// Number of homogeneous coordinates of a point on the model.
    pub fn point_len(self) -> usize {
        match self {
            ModelKind::BinaryQuartic | ModelKind::TernaryCubic => 3,
            ModelKind::QuadricPair => 4,
        }
    }
}

impl From<ModelKind> for u32 {
    fn from(k: ModelKind) -> u32 {
        k.n()
    }
}

impl TryFrom<u32> for ModelKind {
    type Error = Error;
    fn try_from(n: u32) -> Result<ModelKind> {
        ModelKind::from_degree(n)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// Exponents `(i, j)` of `x^i y^j` for the binary quartic coefficients.
pub const BINARY_QUARTIC_MONOMIALS: [[u8; 2]; 5] = [[4, 0], [3, 1], [2, 2], [1, 3], [0, 4]];

/// Exponents of `x^i y^j z^k` for the ternary cubic coefficients.
pub const TERNARY_CUBIC_MONOMIALS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Index pairs `(i, j)`, `i ≤ j`, of `x_i x_j` for each quadric block (0-based).
pub const QUADRIC_MONOMIALS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusOneModel {
    kind: ModelKind,
    coeffs: Vec<BigInt>,
}

impl GenusOneModel {
    pub fn new(kind: ModelKind, coeffs: Vec<BigInt>) -> Result<GenusOneModel> {
        if coeffs.len() != kind.m() {
            return Err(Error::CoefficientCount { n: kind.n(), expected: kind.m(), got: coeffs.len() });
        }
        Ok(GenusOneModel { kind, coeffs })
    }

    pub fn from_ints(kind: ModelKind, coeffs: &[i64]) -> Result<GenusOneModel> {
        GenusOneModel::new(kind, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn binary_quartic(c: [i64; 5]) -> GenusOneModel {
        GenusOneModel::from_ints(ModelKind::BinaryQuartic, &c).unwrap()
    }

    pub fn ternary_cubic(c: [i64; 10]) -> GenusOneModel {
        GenusOneModel::from_ints(ModelKind::TernaryCubic, &c).unwrap()
    }

    pub fn quadric_pair(q: [i64; 10], q2: [i64; 10]) -> GenusOneModel {
        let mut c = q.to_vec();
        c.extend_from_slice(&q2);
        GenusOneModel::from_ints(ModelKind::QuadricPair, &c).unwrap()
    }

    /// `a x³ + b y³ + c z³`.
    pub fn diagonal_cubic(a: i64, b: i64, c: i64) -> GenusOneModel {
        GenusOneModel::ternary_cubic([a, 0, 0, 0, 0, 0, b, 0, 0, c])
    }

    /// `y² z − x³ − A x z² − B z³`, whose invariants are `(A, B)`.
    pub fn weierstrass_cubic(a: i64, b: i64) -> GenusOneModel {
        GenusOneModel::ternary_cubic([-1, 0, 0, 0, 0, -a, 0, 1, 0, -b])
    }

    pub fn zero(kind: ModelKind) -> GenusOneModel {
        GenusOneModel { kind, coeffs: vec![BigInt::zero(); kind.m()] }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, s: &BigInt) -> GenusOneModel {
        GenusOneModel { kind: self.kind, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// The two quadric blocks of an `n = 4` model.
    pub fn quadrics(&self) -> (&[BigInt], &[BigInt]) {
        assert_eq!(self.kind, ModelKind::QuadricPair);
        self.coeffs.split_at(10)
    }

    /// The binary quartic `f(x, y)` of an `n = 2` model as a polynomial in two variables.
    pub fn quartic_poly(&self) -> MPoly {
        assert_eq!(self.kind, ModelKind::BinaryQuartic);
        MPoly::from_terms(
            2,
            BINARY_QUARTIC_MONOMIALS.iter().zip(&self.coeffs).map(|(e, c)| ([e[0], e[1], 0, 0], c.clone())),
        )
    }

    /// Defining equations in the homogeneous coordinates of the ambient space:
    /// `z² − f(x, y)`, `f(x, y, z)`, or `(Q, Q′)`.
    pub fn equations(&self) -> Vec<MPoly> {
        match self.kind {
            ModelKind::BinaryQuartic => {
                let mut f = MPoly::from_terms(
                    3,
                    BINARY_QUARTIC_MONOMIALS.iter().zip(&self.coeffs).map(|(e, c)| ([e[0], e[1], 0, 0], -c)),
                );
                f.add_term([0, 0, 2, 0], BigInt::one());
                vec![f]
            }
            ModelKind::TernaryCubic => vec![cubic_poly(&self.coeffs)],
            ModelKind::QuadricPair => {
                let (q, q2) = self.quadrics();
                vec![quadric_poly(q), quadric_poly(q2)]
            }
        }
    }

    /// Bitwise equality of the canonical text form is equality of models.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn cubic_poly(c: &[BigInt]) -> MPoly {
    MPoly::from_terms(3, TERNARY_CUBIC_MONOMIALS.iter().zip(c).map(|(e, c)| ([e[0], e[1], e[2], 0], c.clone())))
}

pub(crate) fn quadric_poly(c: &[BigInt]) -> MPoly {
    MPoly::from_terms(
        4,
        QUADRIC_MONOMIALS.iter().zip(c).map(|(&(i, j), c)| {
            let mut e: Exp = [0; 4];
            e[i] += 1;
            e[j] += 1;
            (e, c.clone())
        }),
    )
}

impl fmt::Display for GenusOneModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.kind.n())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for GenusOneModel {
    type Err = Error;

    /// Parses `n;c1,...,cm`.
    fn from_str(s: &str) -> Result<GenusOneModel> {
        let s = s.trim();
        let (n, rest) = s.split_once(';').ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let n: u32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad degree {n:?}")))?;
        let kind = ModelKind::from_degree(n)?;
        let coeffs = rest
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        GenusOneModel::new(kind, coeffs)
    }
}

impl Serialize for GenusOneModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GenusOneModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point in ℙ¹, ℙ², ℙ³ or the weighted plane `ℙ(1, 1, 2)`.
///
/// Ordinary points are scaled to be primitive with first nonzero coordinate
/// positive. Weighted points `(x : y : z)` satisfy `(x, y, z) ~ (λx, λy, λ²z)`;
/// they are normalized with `gcd(x, y) = 1` and `(x, y)` sign-normalized,
/// which leaves the sign of `z` meaningful.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
    weighted: bool,
    primitive: bool,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<BigInt>) -> Result<ProjectivePoint> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPoint);
        }
        let g = crate::arith::int::content(&coords);
        let neg = coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let coords = coords
            .into_iter()
            .map(|c| {
                let c = c / &g;
                if neg {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok(ProjectivePoint { coords, weighted: false, primitive: true })
    }

    pub fn from_ints(coords: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// A point of `ℙ(1, 1, 2)`; `(x, y)` must not both vanish. If `gcd(x, y)²`
    /// does not divide `z` the point is kept unscaled and marked non-primitive.
    pub fn weighted(x: BigInt, y: BigInt, z: BigInt) -> Result<ProjectivePoint> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let mut g = x.gcd(&y);
        if x.is_negative() || (x.is_zero() && y.is_negative()) {
            g = -g;
        }
        let g2 = &g * &g;
        if !z.is_multiple_of(&g2) {
            return Ok(ProjectivePoint { coords: vec![x, y, z], weighted: true, primitive: false });
        }
        Ok(ProjectivePoint { coords: vec![&x / &g, &y / &g, &z / &g2], weighted: true, primitive: true })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Largest absolute value among the coordinates that carry weight one.
    pub fn naive_height(&self) -> BigInt {
        let take = if self.weighted { 2 } else { self.coords.len() };
        self.coords[..take].iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;

    /// Parses `(x:y:z)` or `x:y:z` (also comma separated).
    fn from_str(s: &str) -> Result<ProjectivePoint> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split([':', ','])
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coordinate {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords)
    }
}

/// Evaluates the model's equations at a point: `z² − f(x, y)` for `n = 2`,
/// `f(x, y, z)` for `n = 3`, `(Q(p), Q′(p))` for `n = 4`.
pub fn evaluate(model: &GenusOneModel, point: &ProjectivePoint) -> Result<Vec<BigInt>> {
    evaluate_coords(model, point.coords())
}

pub fn evaluate_coords(model: &GenusOneModel, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let expected = model.kind.point_len();
    if x.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: x.len() });
    }
    Ok(model.equations().iter().map(|e| e.eval(x)).collect())
}

/// A closed rational interval for one coefficient of a sampling box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::serde_util::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Interval {
        Interval { lo, hi }
    }

    pub fn ints(lo: i64, hi: i64) -> Interval {
        Interval::new(BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))
    }

    /// The default `[-1, 1]`.
    pub fn unit() -> Interval {
        Interval::ints(-1, 1)
    }

    /// Integers in `t · [lo, hi]`.
    pub fn integer_range(&self, t: u64) -> Option<(BigInt, BigInt)> {
        let t = BigRational::from_integer(t.into());
        let lo = (&self.lo * &t).ceil().to_integer();
        let hi = (&self.hi * &t).floor().to_integer();
        (lo <= hi).then_some((lo, hi))
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `lo:hi`, each a rational like `-1`, `1/2`.
    fn from_str(s: &str) -> Result<Interval> {
        let (a, b) = s.split_once(':').ok_or_else(|| Error::Parse(format!("interval {s:?} must be lo:hi")))?;
        let p = |x: &str| crate::serde_util::parse_rational(x.trim()).map_err(Error::Parse);
        let iv = Interval::new(p(a)?, p(b)?);
        if iv.lo > iv.hi {
            return Err(Error::Parse(format!("empty interval {s:?}")));
        }
        Ok(iv)
    }
}

/// Draws each coefficient uniformly from the integers in `t · [lo_i, hi_i]`.
pub fn sample_box<R: Rng + ?Sized>(kind: ModelKind, bx: &[Interval], t: u64, rng: &mut R) -> Result<GenusOneModel> {
    if bx.len() != kind.m() {
        return Err(Error::CoefficientCount { n: kind.n(), expected: kind.m(), got: bx.len() });
    }
    let mut coeffs = Vec::with_capacity(kind.m());
    for (i, iv) in bx.iter().enumerate() {
        let (lo, hi) = iv.integer_range(t).ok_or(Error::EmptyRange(i))?;
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
            return Err(Error::Invalid(format!("coefficient range {i} exceeds 64 bits")));
        };
        coeffs.push(BigInt::from(rng.random_range(lo..=hi)));
    }
    GenusOneModel::new(kind, coeffs)
}
