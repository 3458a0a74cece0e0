//! Trial division followed by Pollard–Brent rho, with explicit work caps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{mul_mod, rem_u64};
use super::primes::{is_prime, is_prime_u64, small_primes};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound.
    pub trial_bound: u64,
    /// Iteration cap for each rho attempt.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 4_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub primes: BTreeMap<BigInt, u32>,
    /// Product of the composite parts the budget could not split.
    pub cofactor: Option<BigInt>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    fn add(&mut self, p: BigInt, e: u32) {
        *self.primes.entry(p).or_insert(0) += e;
    }
}

/// Factors `|n|`; `n` must be nonzero.
///
/// Trial division stops early once the remaining cofactor is 1 or passes the
/// primality test, so the bound only matters for genuinely composite tails.
pub fn factor(n: &BigInt, budget: &FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "factor of zero");
    let mut out = Factorization::default();
    let mut m = n.abs();
    let checkpoints = [1_021u64, 65_537, 262_147];
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        if let Some(mu) = m.to_u64() {
            let rest = trial_u64(mu, p, budget.trial_bound, &mut out);
            m = BigInt::from(rest);
            break;
        }
        if rem_u64(&m, p) == 0 {
            let mut e = 0;
            while rem_u64(&m, p) == 0 {
                m /= p;
                e += 1;
            }
            out.add(BigInt::from(p), e);
        }
        if checkpoints.contains(&p) && is_prime(&m) {
            break;
        }
    }
    if m.is_one() {
        return out;
    }
    let mut stack = vec![m];
    let mut left = BigInt::one();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            out.add(c, 1);
            continue;
        }
        match split(&c, budget.rho_iterations) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => left *= c,
        }
    }
    if !left.is_one() {
        out.cofactor = Some(left);
    }
    out
}

fn trial_u64(mut m: u64, start: u64, bound: u64, out: &mut Factorization) -> u64 {
    for &p in small_primes() {
        if p < start {
            continue;
        }
        if p > bound || p.saturating_mul(p) > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.add(BigInt::from(p), e);
        }
    }
    m
}

/// A nontrivial divisor of the composite `n`, if rho finds one in budget.
fn split(n: &BigInt, max_iter: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    if let Some(r) = perfect_power_root(n) {
        return Some(r);
    }
    if let Some(m) = n.to_u64() {
        return rho_u64(m, max_iter).map(BigInt::from);
    }
    if n.bits() < 127 {
        return rho_u128(n.to_u128().expect("below 2^127"), max_iter).map(BigInt::from);
    }
    rho_big(n, max_iter)
}

fn perfect_power_root(n: &BigInt) -> Option<BigInt> {
    let bits = n.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = n.nth_root(k);
        if r <= BigInt::one() {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *n {
            return Some(r);
        }
    }
    None
}

fn rho_u64(n: u64, max_iter: u64) -> Option<u64> {
    if is_prime_u64(n) {
        return None;
    }
    for c in 1..32u64 {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut spent = 0u64;
        while g == 1 && spent <= max_iter {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            spent += r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != 1 && g != n {
            return Some(g);
        }
    }
    None
}

/// Montgomery arithmetic modulo an odd `n < 2^127` with `R = 2^128`.
struct Mont {
    n: u128,
    neg_inv: u128,
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a0, a1, b0, b1) = (a & mask, a >> 64, b & mask, b >> 64);
    let (p00, p01, p10, p11) = (a0 * b0, a0 * b1, a1 * b0, a1 * b1);
    let mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    let lo = (p00 & mask) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl Mont {
    fn new(n: u128) -> Mont {
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        Mont { n, neg_inv: inv.wrapping_neg() }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let m = lo.wrapping_mul(self.neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let carry = lo.overflowing_add(ml).1 as u128;
        let t = hi + mh + carry;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }
}

fn rho_u128(n: u128, max_iter: u64) -> Option<u128> {
    let mt = Mont::new(n);
    let gcd = |a: u128| a.gcd(&n);
    for c in 1..16u128 {
        let f = |x: u128| {
            let y = mt.mul(x, x) + c;
            if y >= n {
                y - n
            } else {
                y
            }
        };
        let (mut y, mut r, mut q, mut g) = (2u128, 1u64, 1u128, 1u128);
        let (mut x, mut ys) = (0u128, 0u128);
        let mut spent = 0u64;
        while g == 1 && spent <= max_iter {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mt.mul(q, x.abs_diff(y));
                }
                g = gcd(q);
                k += 128;
            }
            spent += r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys));
                if g > 1 {
                    break;
                }
            }
        }
        if g != 1 && g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigInt, max_iter: u64) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1..16u64 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let (mut y, mut q, mut g) = (BigInt::from(2), one.clone(), one.clone());
        let (mut x, mut ys) = (BigInt::zero(), BigInt::zero());
        let mut r = 1u64;
        let mut spent = 0u64;
        while g.is_one() && spent <= max_iter {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()).mod_floor(n);
                }
                g = q.gcd(n);
                k += 128;
            }
            spent += r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &Factorization) -> BigInt {
        let mut p = f.cofactor.clone().unwrap_or_else(BigInt::one);
        for (q, e) in &f.primes {
            p *= num_traits::pow(q.clone(), *e as usize);
        }
        p
    }

    #[test]
    fn small_numbers() {
        let f = factor(&BigInt::from(-360), &FactorBudget::default());
        let v: Vec<(i64, u32)> = f.primes.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(f.is_complete());
        assert!(factor(&BigInt::one(), &FactorBudget::default()).primes.is_empty());
    }

    #[test]
    fn large_semiprimes_split() {
        let p: BigInt = BigInt::from(1_000_000_007u64);
        let q: BigInt = BigInt::from(998_244_353u64);
        let r: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let n = &p * &q * &r * BigInt::from(12);
        let f = factor(&n, &FactorBudget::default());
        assert!(f.is_complete());
        assert_eq!(product(&f), n);
        assert_eq!(f.primes.get(&r), Some(&1));
        let sq = &p * &p * 7;
        let f = factor(&sq, &FactorBudget::default());
        assert_eq!(f.primes.get(&p), Some(&2));
    }

    #[test]
    fn montgomery_matches_bigint() {
        let n: u128 = (1u128 << 126) + 117;
        let mt = Mont::new(n);
        let r = BigInt::one() << 128u32;
        let nb = BigInt::from(n);
        for (a, b) in [(3u128, 5u128), (n - 1, n - 2), (1 << 100, (1 << 90) + 7)] {
            let expect = (BigInt::from(a) * BigInt::from(b) * inv_r(&r, &nb)).mod_floor(&nb);
            assert_eq!(BigInt::from(mt.mul(a, b)), expect);
        }
    }

    fn inv_r(r: &BigInt, n: &BigInt) -> BigInt {
        crate::arith::int::inv_mod(&r.mod_floor(n), n).unwrap()
    }

    #[test]
    fn balanced_128_bit_semiprime() {
        let p = BigInt::from(5405893643693u64);
        let q = BigInt::from(66625032280141u64);
        let f = factor(&(&p * &q * 19), &FactorBudget::default());
        assert!(f.is_complete());
        assert_eq!(f.primes.get(&p), Some(&1));
    }

    #[test]
    fn budget_leaves_cofactor() {
        let a: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let b: BigInt = "1000000000000000000000000000099".parse().unwrap();
        let n = &a * &b;
        let tiny = FactorBudget { trial_bound: 100, rho_iterations: 1000 };
        let f = factor(&n, &tiny);
        assert_eq!(f.cofactor, Some(n));
    }
}
