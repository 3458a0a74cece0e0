//! Solubility over ℝ and over every ℚ_p.

mod padic;
mod real;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::factor::{factor, FactorBudget};
use crate::error::{Error, Result};
use crate::invariants::discriminant;
use crate::models::GenusOneModel;

pub use padic::{lifting_criterion, p_adic_soluble, p_adic_soluble_with, verify_witness, PadicOptions};
pub use real::real_soluble;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "real" | "inf" | "R" => Ok(Place::Real),
            t => t.parse().map(Place::Finite).map_err(|_| Error::Parse(format!("bad place {t:?}"))),
        }
    }
}

/// A point modulo `p^precision` with `v(F) > 2·v(∂F)` for the relevant
/// derivative data (partials for one equation, 2×2 minors for two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicWitness {
    pub p: BigInt,
    pub coords: Vec<BigInt>,
    pub precision: u32,
    /// `v_p` of the equation values at `coords` (capped at `precision`).
    pub value_valuation: u32,
    pub derivative_valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealCertificate {
    /// Ternary cubics always have a real point.
    OddDegree,
    /// `f(x, y) ≥ 0` at this point, so `z = √f` is real.
    NonNegativeAt { x: BigRational, y: BigRational },
    /// Every member of the pencil `xQ + yQ′` is indefinite; checked at `samples` points.
    IndefinitePencil { samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Real(RealCertificate),
    Padic(PadicWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// All residue discs died; `depth` is the deepest level visited.
    Padic { depth: u32, nodes: usize },
    NegativeDefinite,
    /// `xQ + yQ′` is definite.
    DefiniteMember { x: BigRational, y: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    Soluble(Witness),
    Insoluble(Exhaustion),
    Undecided(String),
}

impl LocalVerdict {
    pub fn is_soluble(&self) -> bool {
        matches!(self, LocalVerdict::Soluble(_))
    }

    pub fn is_insoluble(&self) -> bool {
        matches!(self, LocalVerdict::Insoluble(_))
    }
}

impl fmt::Display for LocalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalVerdict::Soluble(Witness::Real(c)) => match c {
                RealCertificate::OddDegree => f.write_str("soluble (odd degree)"),
                RealCertificate::NonNegativeAt { x, y } => write!(f, "soluble (f({x}, {y}) >= 0)"),
                RealCertificate::IndefinitePencil { samples } => {
                    write!(f, "soluble (no definite pencil member, {samples} samples)")
                }
            },
            LocalVerdict::Soluble(Witness::Padic(w)) => {
                let coords: Vec<String> = w.coords.iter().map(|c| c.to_string()).collect();
                write!(
                    f,
                    "soluble (witness ({}) mod {}^{}, v(F) = {}, v(dF) = {})",
                    coords.join(", "),
                    w.p,
                    w.precision,
                    w.value_valuation,
                    w.derivative_valuation
                )
            }
            LocalVerdict::Insoluble(Exhaustion::Padic { depth, nodes }) => {
                write!(f, "insoluble (exhausted at depth {depth}, {nodes} discs)")
            }
            LocalVerdict::Insoluble(Exhaustion::NegativeDefinite) => f.write_str("insoluble (f negative definite)"),
            LocalVerdict::Insoluble(Exhaustion::DefiniteMember { x, y }) => {
                write!(f, "insoluble ({x}·Q + {y}·Q' definite)")
            }
            LocalVerdict::Undecided(r) => write!(f, "undecided ({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPrimes {
    pub primes: Vec<BigInt>,
    /// Composite part of `Δ` left unsplit by the factoring budget.
    pub cofactor: Option<BigInt>,
}

/// `{2, 3}` together with the prime divisors of `Δ`.
pub fn bad_primes(model: &GenusOneModel) -> Result<BadPrimes> {
    bad_primes_with(model, &FactorBudget::default())
}

pub fn bad_primes_with(model: &GenusOneModel, budget: &FactorBudget) -> Result<BadPrimes> {
    let delta = discriminant(model);
    if delta.is_zero() {
        return Err(Error::Degenerate);
    }
    let fac = factor(&delta, budget);
    let mut primes: Vec<BigInt> = fac.primes.into_keys().collect();
    for p in [2, 3] {
        let p = BigInt::from(p);
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort();
    Ok(BadPrimes { primes, cofactor: fac.cofactor })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overall {
    LocallySoluble,
    LocallyInsoluble(Place),
    Undecided(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolubilityReport {
    pub real: LocalVerdict,
    pub primes: BTreeMap<BigInt, LocalVerdict>,
    pub cofactor: Option<BigInt>,
    pub overall: Overall,
}

impl SolubilityReport {
    pub fn is_locally_soluble(&self) -> bool {
        self.overall == Overall::LocallySoluble
    }

    /// Verdicts in place order, real first.
    pub fn places(&self) -> Vec<(Place, &LocalVerdict)> {
        let mut out = vec![(Place::Real, &self.real)];
        out.extend(self.primes.iter().map(|(p, v)| (Place::Finite(p.clone()), v)));
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct LocalOptions {
    pub budget: FactorBudget,
    pub padic: PadicOptions,
    /// Skip the remaining places once one is insoluble.
    pub stop_at_obstruction: bool,
}

pub fn locally_soluble(model: &GenusOneModel) -> Result<SolubilityReport> {
    locally_soluble_with(model, &LocalOptions::default())
}

/// Real place and every bad prime are searched; other primes are good
/// reduction primes `≥ 5`, where the smooth reduction has an `F_p` point by
/// the Hasse bound and Hensel lifts it.
pub fn locally_soluble_with(model: &GenusOneModel, opts: &LocalOptions) -> Result<SolubilityReport> {
    let bad = bad_primes_with(model, &opts.budget)?;
    let real = real::real_verdict(model)?;
    let mut primes = BTreeMap::new();
    let mut obstruction = real.is_insoluble().then_some(Place::Real);
    let mut undecided: Option<String> = bad.cofactor.as_ref().map(|c| format!("unfactored discriminant cofactor {c}"));
    if !(obstruction.is_some() && opts.stop_at_obstruction) {
        for p in &bad.primes {
            let v = p_adic_soluble_with(model, p, &opts.padic)?;
            match &v {
                LocalVerdict::Insoluble(_) if obstruction.is_none() => obstruction = Some(Place::Finite(p.clone())),
                LocalVerdict::Undecided(r) if undecided.is_none() => undecided = Some(format!("p = {p}: {r}")),
                _ => {}
            }
            let stop = v.is_insoluble() && opts.stop_at_obstruction;
            primes.insert(p.clone(), v);
            if stop {
                break;
            }
        }
    }
    let overall = match (obstruction, undecided) {
        (Some(place), _) => Overall::LocallyInsoluble(place),
        (None, Some(r)) => Overall::Undecided(r),
        (None, None) => Overall::LocallySoluble,
    };
    Ok(SolubilityReport { real, primes, cofactor: bad.cofactor, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::big;

    #[test]
    fn bad_prime_fixtures() {
        let selmer = GenusOneModel::diagonal_cubic(3, 4, 5);
        assert_eq!(bad_primes(&selmer).unwrap().primes, vec![big(2), big(3), big(5)]);
        let lr = GenusOneModel::binary_quartic([2, 0, 0, 0, -34]);
        assert_eq!(bad_primes(&lr).unwrap().primes, vec![big(2), big(3), big(17)]);
        let w = GenusOneModel::weierstrass_cubic(0, -1);
        assert_eq!(bad_primes(&w).unwrap().primes, vec![big(2), big(3)]);
        assert!(matches!(bad_primes(&GenusOneModel::zero(crate::ModelKind::TernaryCubic)), Err(Error::Degenerate)));
    }

    #[test]
    fn report_fixtures() {
        let selmer = locally_soluble(&GenusOneModel::diagonal_cubic(3, 4, 5)).unwrap();
        assert_eq!(selmer.overall, Overall::LocallySoluble);
        let r = locally_soluble(&GenusOneModel::diagonal_cubic(1, 2, 4)).unwrap();
        assert_eq!(r.overall, Overall::LocallyInsoluble(Place::Finite(big(2))));
        let r = locally_soluble(&GenusOneModel::binary_quartic([-1, 0, 0, 0, -1])).unwrap();
        assert_eq!(r.overall, Overall::LocallyInsoluble(Place::Real));
        let lr = locally_soluble(&GenusOneModel::binary_quartic([2, 0, 0, 0, -34])).unwrap();
        assert!(lr.is_locally_soluble());
    }

    #[test]
    fn place_text() {
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("17".parse::<Place>().unwrap(), Place::Finite(big(17)));
        assert_eq!(Place::Finite(big(2)).to_string(), "2");
    }
}
