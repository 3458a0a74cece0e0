//! Local solubility densities.
//!
//! For ternary cubics the density at `p` has a closed form, and the product
//! over all primes is enclosed between rational bounds. For every kind the
//! density at a single prime can be estimated by sampling forms modulo `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::int::decimal;
use crate::arith::primes::{is_prime_u64, primes_up_to};
use crate::error::{Error, Result};
use crate::invariants::discriminant;
use crate::local::{p_adic_soluble, LocalVerdict};
use crate::models::{GenusOneModel, ModelKind};

pub const DEFAULT_CUTOFF: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFactor {
    pub p: u64,
    #[serde(with = "crate::serde_util::rational")]
    pub value: BigRational,
}

impl RationalFactor {
    pub fn deficit(&self) -> BigRational {
        BigRational::one() - &self.value
    }
}

/// `(numerator, denominator)` of `1 − factor` as integers.
fn deficit_parts(p: u64) -> (BigInt, BigInt) {
    let p = BigInt::from(p);
    let pw = |e: u32| num_traits::pow(p.clone(), e as usize);
    let num = pw(9) - pw(8) + pw(6) - pw(4) + pw(3) + pw(2) - &p * 2 + 1;
    let den = (pw(2) + 1) * (pw(4) + 1) * (pw(6) + pw(3) + 1) * 3;
    (num, den)
}

pub fn local_factor_ternary_cubic(p: u64) -> Result<RationalFactor> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    let (num, den) = deficit_parts(p);
    Ok(RationalFactor { p, value: BigRational::new(&den - num, den) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    #[serde(with = "crate::serde_util::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub hi: BigRational,
}

impl Enclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether some value in the enclosure rounds to the decimal `printed`
    /// (e.g. `"0.97256"` stands for `[0.972555, 0.972565]`).
    pub fn matches_printed(&self, printed: &str) -> Result<bool> {
        let (v, half) = printed_interval(printed)?;
        Ok(self.lo <= &v + &half && &v - &half <= self.hi)
    }

    pub fn scale(&self, s: &BigRational) -> Enclosure {
        Enclosure { lo: &self.lo * s, hi: &self.hi * s }
    }

    /// The smallest enclosure with `digits`-place decimal endpoints containing this one.
    pub fn round_outward(&self, digits: usize) -> Enclosure {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let lo = (self.lo.numer() * &scale).div_floor(self.lo.denom());
        let hi = num_integer::Integer::div_ceil(&(self.hi.numer() * &scale), self.hi.denom());
        Enclosure { lo: BigRational::new(lo, scale.clone()), hi: BigRational::new(hi, scale) }
    }

    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigInt::from(2)).to_f64().unwrap_or(f64::NAN)
    }

    pub fn display(&self, digits: usize) -> String {
        format!("[{}, {}]", decimal(&self.lo, digits), decimal(&self.hi, digits))
    }
}

/// A printed decimal as `(value, half unit in the last place)`.
pub fn printed_interval(printed: &str) -> Result<(BigRational, BigRational)> {
    let bad = || Error::Parse(format!("bad decimal {printed:?}"));
    let s = printed.trim();
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = frac.len();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let n: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok((BigRational::new(n, scale.clone()), BigRational::new(BigInt::one(), scale * 2)))
}

/// The product of the ternary cubic factors over all primes.
///
/// `hi` is the partial product over `p ≤ cutoff`. Every later factor is at
/// least `1 − 1/(2p³)`, the tail sum of `1/(2p³)` is at most `1/(4P²)`, and
/// `1 − x ≥ exp(−x/(1 − x)) ≥ 1 − x/(1 − x)`, so `lo = hi·(1 − τ)` with
/// `τ = (1/(4P²)) / (1 − 1/(2P³))`.
pub fn euler_product(cutoff: u64) -> Result<Enclosure> {
    if cutoff < 2 {
        return Err(Error::Invalid(format!("cutoff {cutoff} is below 2")));
    }
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for p in primes_up_to(cutoff) {
        let (a, b) = deficit_parts(p);
        num *= &b - a;
        den *= b;
    }
    let hi = BigRational::new(num, den);
    let big_p = BigInt::from(cutoff);
    let tail = BigRational::new(BigInt::one(), &big_p * &big_p * 4);
    let shrink = BigRational::one() - BigRational::new(BigInt::one(), num_traits::pow(big_p, 3) * 2);
    let tau = tail / shrink;
    let lo = &hi * (BigRational::one() - tau);
    Ok(Enclosure { lo, hi })
}

/// `(2/3)` times the product of the ternary cubic factors.
pub fn conjectured_failure_proportion() -> Enclosure {
    conjectured_failure_proportion_with(DEFAULT_CUTOFF).expect("default cutoff is valid")
}

pub fn conjectured_failure_proportion_with(cutoff: u64) -> Result<Enclosure> {
    Ok(euler_product(cutoff)?.scale(&BigRational::new(2.into(), 3.into())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub kind: ModelKind,
    pub p: u64,
    pub k: u32,
    pub seed: u64,
    pub samples: usize,
    pub soluble: usize,
    pub insoluble: usize,
    /// Samples with `Δ = 0`, excluded from the estimate.
    pub degenerate: usize,
    pub undecided: usize,
    /// `None` when no sample was decided.
    pub estimate: Option<f64>,
    pub std_err: Option<f64>,
}

impl McEstimate {
    pub fn decided(&self) -> usize {
        self.soluble + self.insoluble
    }

    pub fn z_score(&self, target: f64) -> Option<f64> {
        let (e, s) = (self.estimate?, self.std_err?);
        Some(if s == 0.0 { if e == target { 0.0 } else { f64::INFINITY } } else { (e - target) / s })
    }
}

/// The `index`-th sample: coefficients uniform in `[0, p^k)`, drawn from
/// stream `index` of the ChaCha8 generator seeded with `seed`.
pub fn sample_mod_pk(kind: ModelKind, p: u64, k: u32, seed: u64, index: u64) -> Result<GenusOneModel> {
    let bound = (p as u128).checked_pow(k).ok_or_else(|| Error::Invalid(format!("{p}^{k} exceeds 128 bits")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let coeffs = (0..kind.m()).map(|_| BigInt::from(rng.random_range(0..bound))).collect();
    GenusOneModel::new(kind, coeffs)
}

pub fn mc_local_density(kind: ModelKind, p: u64, k: u32, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_local_density_with(kind, p, k, samples, seed, 1)
}

/// Sample `i` depends only on `(seed, i)`, so the counts do not depend on `threads`.
pub fn mc_local_density_with(
    kind: ModelKind,
    p: u64,
    k: u32,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    if k < 4 {
        return Err(Error::Invalid(format!("precision k = {k} is below 4")));
    }
    let pb = BigInt::from(p);
    let run = |range: std::ops::Range<usize>| -> Result<[usize; 4]> {
        let mut counts = [0usize; 4];
        for i in range {
            let model = sample_mod_pk(kind, p, k, seed, i as u64)?;
            if discriminant(&model).is_zero() {
                counts[2] += 1;
                continue;
            }
            match p_adic_soluble(&model, &pb)? {
                LocalVerdict::Soluble(_) => counts[0] += 1,
                LocalVerdict::Insoluble(_) => counts[1] += 1,
                LocalVerdict::Undecided(_) => counts[3] += 1,
            }
        }
        Ok(counts)
    };
    let threads = threads.max(1).min(samples.max(1));
    let chunk = samples.div_ceil(threads).max(1);
    let parts: Vec<Result<[usize; 4]>> = if threads == 1 {
        vec![run(0..samples)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let range = (t * chunk).min(samples)..((t + 1) * chunk).min(samples);
                    let run = &run;
                    s.spawn(move || run(range))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("sampling worker panicked")).collect()
        })
    };
    let mut counts = [0usize; 4];
    for part in parts {
        for (c, v) in counts.iter_mut().zip(part?) {
            *c += v;
        }
    }
    let [soluble, insoluble, degenerate, undecided] = counts;
    let decided = soluble + insoluble;
    let (estimate, std_err) = if decided == 0 {
        (None, None)
    } else {
        let e = soluble as f64 / decided as f64;
        (Some(e), Some((e * (1.0 - e) / decided as f64).sqrt()))
    };
    Ok(McEstimate { kind, p, k, seed, samples, soluble, insoluble, degenerate, undecided, estimate, std_err })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Remark1Bounds {
    pub zeta2: f64,
    pub zeta3: f64,
    /// `0.7 / (3 ζ(2) ζ(3))`
    pub first: f64,
    /// `(0.585/3 + 0.415 · 7/30) · 0.97256`
    pub second: f64,
}

/// `ζ(3) = (5/2) Σ (−1)^{n+1} / (n³ C(2n, n))`, summed exactly until the
/// first omitted term (which bounds the alternating remainder) is below `10⁻¹⁵`.
pub fn zeta3() -> f64 {
    let mut sum = BigRational::zero();
    let mut binom = BigInt::one();
    let limit = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(15)));
    for n in 1u64.. {
        binom = binom * (4 * n - 2) / n;
        let term = BigRational::new(BigInt::one(), BigInt::from(n * n * n) * &binom);
        if term < limit {
            break;
        }
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    (sum * BigRational::new(5.into(), 2.into())).to_f64().expect("finite")
}

pub fn remark1_bounds() -> Remark1Bounds {
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let zeta3 = zeta3();
    let first = 0.7 / (3.0 * zeta2 * zeta3);
    let second = (0.585 / 3.0 + 0.415 * 7.0 / 30.0) * 0.97256;
    Remark1Bounds { zeta2, zeta3, first, second }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_prime_factors() {
        assert_eq!(local_factor_ternary_cubic(2).unwrap().value, r(18302, 18615));
        assert_eq!(local_factor_ternary_cubic(3).unwrap().deficit(), r(13801, 1862220));
        assert!(matches!(local_factor_ternary_cubic(4), Err(Error::NotPrime(_))));
    }

    /// `3(p²+1)(p⁴+1)(p⁶+p³+1) − 2p³·N(p)` has nonnegative coefficients and a
    /// positive constant term, so the deficit is below `1/(2p³)` for every `p > 0`.
    #[test]
    fn deficit_dominance() {
        fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        // lowest degree first
        let n = [1, -2, 1, 1, -1, 0, 1, 0, -1, 1];
        let d = mul(&mul(&[1, 0, 1], &[1, 0, 0, 0, 1]), &[1, 0, 0, 1, 0, 0, 1]);
        let mut diff: Vec<i64> = d.iter().map(|c| 3 * c).collect();
        for (i, c) in n.iter().enumerate() {
            diff[i + 3] -= 2 * c;
        }
        assert!(diff.iter().all(|&c| c >= 0) && diff[0] > 0, "{diff:?}");
        for p in primes_up_to(10_000) {
            let f = local_factor_ternary_cubic(p).unwrap();
            assert!(f.value > BigRational::zero() && f.value <= BigRational::one());
            assert!(f.deficit() * BigRational::from_integer(BigInt::from(2 * p * p * p)) < BigRational::one());
        }
    }

    #[test]
    fn product_enclosures_nest() {
        let e2 = euler_product(2).unwrap();
        assert_eq!(e2.hi, r(18302, 18615));
        let e100 = euler_product(100).unwrap();
        let e1000 = euler_product(1000).unwrap();
        for (a, b) in [(&e2, &e100), (&e100, &e1000)] {
            assert!(a.lo <= b.lo && b.lo <= b.hi && b.hi <= a.hi);
        }
        assert!(e1000.width() < e100.width());
        assert!(euler_product(1).is_err());
    }

    #[test]
    fn printed_values_match() {
        let e = euler_product(DEFAULT_CUTOFF).unwrap();
        assert!(e.width() <= r(1, 100_000));
        assert!(e.matches_printed("0.97256").unwrap());
        assert!(!e.matches_printed("0.97257").unwrap());
        let c = conjectured_failure_proportion();
        assert_eq!(&c.hi * BigInt::from(3), &e.hi * BigInt::from(2));
        assert!(c.matches_printed("0.64837").unwrap());
    }

    #[test]
    fn zeta_values() {
        // direct sum with the Euler–Maclaurin tail 1/(2N²) − 1/(2N³)
        let n = 20_000u64;
        let direct: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64).powi(3)).sum::<f64>()
            + 1.0 / (2.0 * (n as f64).powi(2))
            - 1.0 / (2.0 * (n as f64).powi(3));
        assert!((zeta3() - direct).abs() < 1e-12);
        let b = remark1_bounds();
        assert!(b.first > 0.118 && b.second > 0.2838);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_mod_pk(ModelKind::TernaryCubic, 2, 6, 9, 17).unwrap();
        assert_eq!(a, sample_mod_pk(ModelKind::TernaryCubic, 2, 6, 9, 17).unwrap());
        assert_ne!(a, sample_mod_pk(ModelKind::TernaryCubic, 2, 6, 9, 18).unwrap());
        assert!(a.coeffs().iter().all(|c| *c >= BigInt::zero() && *c < BigInt::from(64)));
    }

    #[test]
    fn monte_carlo_small() {
        let one = mc_local_density_with(ModelKind::TernaryCubic, 3, 4, 400, 5, 1).unwrap();
        let three = mc_local_density_with(ModelKind::TernaryCubic, 3, 4, 400, 5, 3).unwrap();
        assert_eq!(one, three);
        assert_eq!(one.decided() + one.degenerate + one.undecided, 400);
        assert_eq!(one.undecided, 0);
        let empty = mc_local_density(ModelKind::TernaryCubic, 3, 4, 0, 5).unwrap();
        assert_eq!(empty.estimate, None);
        assert!(mc_local_density(ModelKind::TernaryCubic, 3, 3, 10, 5).is_err());
        assert!(mc_local_density(ModelKind::TernaryCubic, 9, 4, 10, 5).is_err());
    }
}
