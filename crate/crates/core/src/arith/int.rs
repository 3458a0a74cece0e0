//! Integer helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `v_p(n)`, or `None` when `n = 0`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    if let Some(q) = p.to_u64() {
        return Some(valuation_u64(n, q));
    }
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `v_p(n)` for a machine-sized prime; `n` must be nonzero.
pub fn valuation_u64(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    if let Some(mut m) = n.abs().to_u128() {
        let p = p as u128;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        return v;
    }
    let mut m = n.clone();
    let pb = BigInt::from(p);
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Minimum of optional valuations, where `None` stands for +∞.
pub fn min_val(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// Square root of a perfect square, `None` otherwise (including negatives).
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Integer cube root when `n` is a perfect cube.
pub fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    if &(&r * &r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// gcd of a list (nonnegative; zero for an all-zero list).
pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Remainder of a nonnegative big integer modulo a small prime, from its limbs.
pub fn rem_u64(n: &BigInt, m: u64) -> u64 {
    let (sign, digits) = n.to_u64_digits();
    let mut r: u128 = 0;
    for d in digits.iter().rev() {
        r = ((r << 64) | *d as u128) % m as u128;
    }
    let r = r as u64;
    if sign == num_bigint::Sign::Minus && r != 0 {
        m - r
    } else {
        r
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo `m` (which need not be prime) when it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Largest value of `|c|` as `f64`, used only for sizing decisions.
pub fn max_abs_f64(v: &[BigInt]) -> f64 {
    v.iter()
        .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// `x` rounded to `digits` decimal places, half away from zero.
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let r = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (int, frac) = r.div_rem(&scale);
    let sign = if x.is_negative() && !r.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
        assert_eq!(decimal(&r(18302, 18615), 5), "0.98319");
        assert_eq!(decimal(&r(-1, 3), 3), "-0.333");
        assert_eq!(decimal(&r(2, 3), 0), "1");
        assert_eq!(decimal(&r(1, 200), 2), "0.01");
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation_u64(&big(96), 2), 5);
        assert_eq!(valuation(&big(-81), &big(3)), Some(4));
        assert_eq!(valuation(&big(0), &big(3)), None);
        let n: BigInt = BigInt::from(7u8).pow(40) * 5;
        assert_eq!(valuation_u64(&n, 7), 40);
        assert_eq!(min_val(None, Some(3)), Some(3));
    }

    #[test]
    fn roots_and_residues() {
        assert_eq!(exact_sqrt(&big(144)), Some(big(12)));
        assert_eq!(exact_sqrt(&big(145)), None);
        assert_eq!(exact_sqrt(&big(-4)), None);
        assert_eq!(exact_cbrt(&big(-27)), Some(big(-3)));
        assert_eq!(exact_sqrt_i128(1 << 100), Some(1 << 50));
        assert_eq!(rem_u64(&big(-7), 5), 3);
        let n: BigInt = BigInt::from(10u8).pow(30) + 1;
        assert_eq!(rem_u64(&n, 1_000_003), (&n % 1_000_003u64).to_u64().unwrap());
        assert_eq!(inv_mod(&big(3), &big(7)), Some(big(5)));
        assert_eq!(inv_mod(&big(2), &big(4)), None);
        assert_eq!(pow_mod(3, 200, 1_000_000_007), 3u64.pow(0) * pow_mod(9, 100, 1_000_000_007));
    }
}
