//! Selmer-group accounting: average Selmer sizes, the rank inequalities they
//! feed, and the resulting bounds and conjectured proportions, all exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::int::decimal;
use crate::error::{Error, Result};

/// Average sizes `σ(n)` of the `n`-Selmer groups of elliptic curves ordered by height.
pub struct SelmerTable;

impl SelmerTable {
    pub const ENTRIES: [(u32, u32); 4] = [(2, 3), (3, 4), (4, 7), (5, 6)];

    pub fn sigma(n: u32) -> Result<u32> {
        Self::ENTRIES
            .iter()
            .find(|(k, _)| *k == n)
            .map(|&(_, s)| s)
            .ok_or_else(|| Error::Invalid(format!("no average Selmer size for n = {n}")))
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sigma(n: u32) -> Result<BigRational> {
    Ok(int(SelmerTable::sigma(n)?))
}

fn pow(b: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerValue {
    pub label: String,
    #[serde(with = "crate::serde_util::rational")]
    pub value: BigRational,
    pub anchor: String,
}

impl LedgerValue {
    fn new(label: impl Into<String>, value: BigRational, anchor: impl Into<String>) -> LedgerValue {
        LedgerValue { label: label.into(), value, anchor: anchor.into() }
    }

    pub fn decimal(&self, digits: usize) -> String {
        decimal(&self.value, digits)
    }
}

/// One instance `lhs ≤ rhs` of a rank inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub r: u32,
    #[serde(with = "crate::serde_util::rational")]
    pub lhs: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub rhs: BigRational,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Every instance for `0 ≤ r ≤ r_max`: the linear minorants `2r ≤ 2^r`,
/// `6r − 3 ≤ 3^r`, `20r − 15 ≤ 5^r` (the last two for `r ≥ 1`), the bound
/// `n^r ≤ (5^r − 5)(n² − n)/20 + n` for `n = 2, 3, 4` and
/// `4^r − 2^r ≤ (5^r − 1)/2`.
pub fn rank_inequalities(r_max: u32) -> Vec<InequalityCheck> {
    let mut out = Vec::new();
    let mut push = |name: String, r: u32, lhs: BigRational, rhs: BigRational| {
        out.push(InequalityCheck { name, r, lhs, rhs })
    };
    for r in 0..=r_max {
        push("2r <= 2^r".into(), r, int(2 * r), int(pow(2, r)));
        if r >= 1 {
            push("6r - 3 <= 3^r".into(), r, int(6 * r as i64 - 3), int(pow(3, r)));
            push("20r - 15 <= 5^r".into(), r, int(20 * r as i64 - 15), int(pow(5, r)));
        }
        for n in 2u32..=4 {
            let rhs = int((pow(5, r) - 5) * (n * n - n)) / int(20) + int(n);
            push(format!("{n}^r <= (5^r - 5)({n}^2 - {n})/20 + {n}"), r, int(pow(n, r)), rhs);
        }
        push("4^r - 2^r <= (5^r - 1)/2".into(), r, int(pow(4, r) - pow(2, r)), int(pow(5, r) - 1) / int(2));
    }
    out
}

pub fn verify_rank_inequalities(r_max: u32) -> bool {
    rank_inequalities(r_max).iter().all(InequalityCheck::holds)
}

/// Values of `r ≤ r_max` where the named inequality is an equality.
pub fn equality_cases(name: &str, r_max: u32) -> Vec<u32> {
    rank_inequalities(r_max).into_iter().filter(|c| c.name == name && c.is_equality()).map(|c| c.r).collect()
}

/// `slope·r − intercept ≤ n^r` for `n = 2, 3, 5`.
fn minorant(n: u32) -> Result<(i64, i64)> {
    match n {
        2 => Ok((2, 0)),
        3 => Ok((6, 3)),
        5 => Ok((20, 15)),
        _ => Err(Error::Invalid(format!("no linear minorant of {n}^r"))),
    }
}

/// Averaging `slope·r − intercept ≤ n^r` against `σ(n)` gives
/// `r̄ ≤ (σ(n) + intercept)/slope`.
pub fn avg_rank_bound(n: u32) -> Result<BigRational> {
    let (slope, intercept) = minorant(n)?;
    Ok((sigma(n)? + int(intercept)) / int(slope))
}

fn check_n(n: u32, allowed: &[u32]) -> Result<()> {
    if allowed.contains(&n) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("n = {n} is not one of {allowed:?}")))
    }
}

/// `(n² − n)/20 + n`, the bound on the average of `n^r` from `σ(5) = 6`.
pub fn bounded_average(n: u32) -> BigRational {
    let n = n as i64;
    q(n * n - n, 20) + int(n)
}

/// `((n² − n)/20 + n)/σ(n)`: the largest share of the `n`-Selmer average that
/// points can account for.
pub fn bounded_average_mass(n: u32) -> Result<BigRational> {
    check_n(n, &[2, 3, 4])?;
    Ok(bounded_average(n) / sigma(n)?)
}

pub fn hasse_failure_lower_bound(n: u32) -> Result<BigRational> {
    Ok(BigRational::one() - bounded_average_mass(n)?)
}

/// For `n = 2, 3` the identity is the only non-generic element and there are
/// `n` generic elements on average; for `n = 4` the average of `4^r − 2^r` is
/// at most `(σ(5) − 1)/2`.
pub fn generic_failure_lower_bound(n: u32) -> Result<BigRational> {
    check_n(n, &[2, 3, 4])?;
    let generic = int(n);
    let with_points = match n {
        4 => (sigma(5)? - int(1)) / int(2),
        _ => bounded_average(n) - int(1),
    };
    Ok(BigRational::one() - with_points / generic)
}

pub fn satisfaction_lower_bound(n: u32, c: &BigRational) -> Result<BigRational> {
    if !c.is_positive() {
        return Err(Error::Invalid(format!("c = {c} must be positive")));
    }
    Ok(c / (sigma(n)? - int(1)))
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u32
}

/// `(n + 1)/(2σ(n))` over all Selmer elements, `φ(n)/(2n)` over generic ones.
pub fn conjectured_soluble_proportion(n: u32, generic: bool) -> Result<BigRational> {
    check_n(n, &[2, 3, 4])?;
    Ok(if generic {
        q(euler_phi(n) as i64, 2 * n as i64)
    } else {
        int(n + 1) / (int(2) * sigma(n)?)
    })
}

/// Conjectured limit of failures among locally soluble forms, `1 − φ(n)/(2n)`.
pub fn conjectured_failure_given_local(n: u32) -> Result<BigRational> {
    Ok(BigRational::one() - conjectured_soluble_proportion(n, true)?)
}

/// `#{(A, B) ∈ ℤ² : max(|A|³, B²) < X}`.
pub fn curve_count(x: &BigInt) -> Result<BigInt> {
    if x < &BigInt::one() {
        return Err(Error::Invalid(format!("X = {x} must be at least 1")));
    }
    let m: BigInt = x - BigInt::one();
    let a = m.cbrt();
    let b = m.sqrt();
    Ok((a * 2 + 1) * (b * 2 + 1))
}

/// The exact values, labelled, in a fixed order.
pub fn all_values() -> Vec<LedgerValue> {
    let mut out = Vec::new();
    for (n, s) in SelmerTable::ENTRIES {
        out.push(LedgerValue::new(format!("sigma({n})"), int(s), format!("average size of the {n}-Selmer group")));
    }
    for n in [2, 3, 5] {
        let (slope, intercept) = minorant(n).expect("tabulated");
        out.push(LedgerValue::new(
            format!("avg_rank_bound({n})"),
            avg_rank_bound(n).expect("tabulated"),
            format!("average rank bound from {slope}r - {intercept} <= {n}^r and sigma({n})"),
        ));
    }
    for n in [2, 3, 4] {
        out.push(LedgerValue::new(
            format!("hasse_failure_lower_bound({n})"),
            hasse_failure_lower_bound(n).expect("tabulated"),
            format!("lower density of {n}-Selmer elements without rational points"),
        ));
    }
    for n in [2, 3, 4] {
        out.push(LedgerValue::new(
            format!("generic_failure_lower_bound({n})"),
            generic_failure_lower_bound(n).expect("tabulated"),
            format!("lower density of generic {n}-Selmer elements without rational points"),
        ));
    }
    for n in [2, 3, 4] {
        out.push(LedgerValue::new(
            format!("conjectured_soluble_proportion({n})"),
            conjectured_soluble_proportion(n, false).expect("tabulated"),
            format!("(n+1)/(2 sigma(n)): {n}-Selmer elements with a rational point"),
        ));
    }
    for n in [2, 3, 4] {
        out.push(LedgerValue::new(
            format!("conjectured_generic_soluble_proportion({n})"),
            conjectured_soluble_proportion(n, true).expect("tabulated"),
            format!("phi(n)/(2n): generic {n}-Selmer elements with a rational point"),
        ));
    }
    out
}
