//! Univariate integer polynomials, coefficients stored lowest degree first.
//!
//! Real roots are isolated with Sturm sequences; rational roots are recovered
//! exactly from isolating intervals narrower than the minimal spacing of
//! rationals whose denominators divide the leading coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int::content;

pub fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    trim(&mut v);
    v
}

/// Degree, `None` for the zero polynomial.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sign of `p(num/den)` for `den > 0`, evaluated as the homogenized integer sum.
pub fn sign_at(p: &[BigInt], x: &BigRational) -> i32 {
    let (num, den) = (x.numer(), x.denom());
    let d = match degree(p) {
        Some(d) => d,
        None => return 0,
    };
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // Horner from the top, scaling lower coefficients by growing powers of den.
    for i in (0..=d).rev() {
        acc = acc * num + &p[i] * &den_pow;
        den_pow *= den;
    }
    sign(&acc)
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

/// Divides out the (positive) content; sign is kept.
pub fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = trimmed(p);
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r = trimmed(a);
    let Some(da) = degree(&r) else { return r };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb, steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some() {
        let r = primitive(&prem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        for c in x.iter_mut() {
            *c = -&*c;
        }
    }
    x
}

/// Exact quotient `a / b` over ℚ, rescaled to a primitive integer polynomial
/// with the sign of `lc(a)·lc(b)`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("division by zero polynomial");
    let Some(da) = degree(a) else { return Vec::new() };
    assert!(da >= db);
    let lb = BigRational::from_integer(b[db].clone());
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut q = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let coef = &r[k + db] / &lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &coef * BigRational::from_integer(c.clone());
        }
        q[k] = coef;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

pub fn squarefree_part(p: &[BigInt]) -> Vec<BigInt> {
    let p = primitive(p);
    match degree(&p) {
        None | Some(0) => p,
        Some(_) => {
            let g = gcd(&p, &derivative(&p));
            if degree(&g) == Some(0) {
                p
            } else {
                div_exact(&p, &g)
            }
        }
    }
}

/// Sturm chain of a squarefree polynomial.
pub struct Sturm {
    seq: Vec<Vec<BigInt>>,
}

impl Sturm {
    pub fn new(p: &[BigInt]) -> Sturm {
        let p0 = trimmed(p);
        let p1 = derivative(&p0);
        let mut seq = vec![p0, p1];
        while degree(&seq[seq.len() - 1]).is_some_and(|d| d > 0) {
            let a = &seq[seq.len() - 2];
            let b = &seq[seq.len() - 1];
            let db = degree(b).unwrap();
            let da = degree(a).unwrap();
            let r = prem(a, b);
            // prem = lc(b)^k · rem; keep the sign of -rem.
            let flip = b[db].is_negative() && (da - db + 1) % 2 == 1;
            let mut r = primitive(&r);
            if !flip {
                for c in r.iter_mut() {
                    *c = -&*c;
                }
            }
            if degree(&r).is_none() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|q| degree(q).is_some());
        Sturm { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|q| sign_at(q, x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.seq.iter().map(|q| {
            let d = degree(q).unwrap();
            let s = sign(&q[d]);
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// A real root, either known exactly or isolated in an open interval whose
/// endpoints are not roots.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Exact(BigRational),
    Isolated { lo: BigRational, hi: BigRational },
}

impl RealRoot {
    fn left(&self) -> &BigRational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated { lo, .. } => lo,
        }
    }

    fn right(&self) -> &BigRational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated { hi, .. } => hi,
        }
    }
}

fn cauchy_bound(p: &[BigInt]) -> BigRational {
    let d = degree(p).unwrap();
    let lead = p[d].abs();
    let m = p[..d].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::from_integer(BigInt::one() + m.div_ceil(&lead) + BigInt::one())
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Real roots of a nonzero polynomial in increasing order, repeated roots once.
pub fn real_roots(p: &[BigInt]) -> Vec<RealRoot> {
    let q = squarefree_part(p);
    match degree(&q) {
        None | Some(0) => return Vec::new(),
        Some(_) => {}
    }
    let sturm = Sturm::new(&q);
    let b = cauchy_bound(&q);
    let lo = -b.clone();
    let mut raw = Vec::new();
    let vlo = sturm.variations_at(&lo);
    let vhi = sturm.variations_at(&b);
    isolate(&sturm, lo, b, vlo, vhi, &mut raw);
    let mut out: Vec<RealRoot> = Vec::with_capacity(raw.len());
    for (mut lo, mut hi) in raw {
        loop {
            if sign_at(&q, &hi) == 0 {
                out.push(RealRoot::Exact(hi));
                break;
            }
            if sign_at(&q, &lo) != 0 {
                out.push(RealRoot::Isolated { lo, hi });
                break;
            }
            let mid = half(&lo, &hi);
            if sturm.variations_at(&lo) - sturm.variations_at(&mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    out
}

fn isolate(s: &Sturm, lo: BigRational, hi: BigRational, vlo: usize, vhi: usize, out: &mut Vec<(BigRational, BigRational)>) {
    match vlo - vhi {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = half(&lo, &hi);
            let vmid = s.variations_at(&mid);
            isolate(s, lo, mid.clone(), vlo, vmid, out);
            isolate(s, mid, hi, vmid, vhi, out);
        }
    }
}

/// Points strictly between consecutive real roots, plus one below the first
/// and one above the last; none of them is a root.
pub fn separating_points(roots: &[RealRoot]) -> Vec<BigRational> {
    let one = BigRational::one();
    if roots.is_empty() {
        return vec![BigRational::zero()];
    }
    let mut pts = vec![roots[0].left() - &one];
    for w in roots.windows(2) {
        let (a, b) = (w[0].right(), w[1].left());
        if a == b {
            pts.push(a.clone());
        } else {
            pts.push(half(a, b));
        }
    }
    pts.push(roots[roots.len() - 1].right() + &one);
    pts
}

/// The rational with least denominator (then least absolute numerator) in `[lo, hi]`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// All rational roots of a nonzero integer polynomial, increasing, without multiplicity.
pub fn rational_roots(p: &[BigInt]) -> Vec<BigRational> {
    let mut q = squarefree_part(p);
    let mut out = Vec::new();
    if degree(&q).is_none_or(|d| d == 0) {
        return out;
    }
    if q[0].is_zero() {
        out.push(BigRational::zero());
        q.remove(0);
    }
    let Some(d) = degree(&q) else { return out };
    if d == 0 {
        return out;
    }
    let lead = q[d].abs();
    // Distinct rationals with denominators dividing `lead` are ≥ 1/lead² apart.
    let gap = BigRational::new(BigInt::one(), &lead * &lead);
    for root in real_roots(&q) {
        match root {
            RealRoot::Exact(r) => out.push(r),
            RealRoot::Isolated { mut lo, mut hi } => {
                let s_lo = sign_at(&q, &lo);
                let mut exact = None;
                while &hi - &lo >= gap {
                    let mid = half(&lo, &hi);
                    let s = sign_at(&q, &mid);
                    if s == 0 {
                        exact = Some(mid);
                        break;
                    }
                    if s == s_lo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let cand = exact.unwrap_or_else(|| simplest_between(&lo, &hi));
                if sign_at(&q, &cand) == 0 {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Rational roots `(x : y)` in ℙ¹ of a binary form given by the coefficients
/// of `x^(d-i) y^i`, as coprime pairs with `y ≥ 0` (and `(1 : 0)` at infinity).
pub fn binary_form_rational_roots(form: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let d = form.len() - 1;
    let mut out = Vec::new();
    if form.iter().all(|c| c.is_zero()) {
        return out;
    }
    if form[0].is_zero() {
        out.push((BigInt::one(), BigInt::zero()));
    }
    // f(t, 1) in powers of t = x / y
    let dehom: Vec<BigInt> = (0..=d).map(|j| form[d - j].clone()).collect();
    if degree(&dehom).is_some_and(|k| k > 0) {
        for r in rational_roots(&dehom) {
            out.push((r.numer().clone(), r.denom().clone()));
        }
    }
    out
}


/// The integer polynomial of degree `< xs.len()` through `(xs[i], ys[i])`;
/// panics if the interpolant is not integral.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigInt> {
    let n = xs.len();
    let xq: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xq[i] - &xq[i - level]);
        }
    }
    // Horner expansion of the Newton form
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * &xq[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "non-integral interpolant");
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod interpolation_tests {
    use super::*;
    use crate::arith::int::bigs;

    #[test]
    fn recovers_polynomial() {
        let p = bigs(&[7, -3, 0, 2, 0, 0, 1]);
        let xs: Vec<BigInt> = (0..7).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }
}
