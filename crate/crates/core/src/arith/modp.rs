//! Arithmetic in `F_p` and `F_p[t]` for odd primes of any size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Fp {
    p: BigInt,
}

impl Fp {
    /// `p` must be an odd prime.
    pub fn new(p: BigInt) -> Fp {
        Fp { p }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.p
    }

    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.p)
    }

    pub fn pow(&self, a: &BigInt, e: &BigInt) -> BigInt {
        a.mod_floor(&self.p).modpow(e, &self.p)
    }

    pub fn inv(&self, a: &BigInt) -> BigInt {
        self.pow(a, &(&self.p - BigInt::from(2)))
    }

    /// Legendre symbol: 0, 1 or -1.
    pub fn legendre(&self, a: &BigInt) -> i32 {
        let a = self.reduce(a);
        if a.is_zero() {
            return 0;
        }
        let e = (&self.p - BigInt::one()) >> 1;
        if self.pow(&a, &e).is_one() {
            1
        } else {
            -1
        }
    }

    /// A square root by Tonelli–Shanks.
    pub fn sqrt(&self, a: &BigInt) -> Option<BigInt> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        if self.legendre(&a) != 1 {
            return None;
        }
        let one = BigInt::one();
        let pm1 = &self.p - &one;
        let s = pm1.trailing_zeros().unwrap_or(0);
        let q = &pm1 >> s;
        let mut z = BigInt::from(2);
        while self.legendre(&z) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, &q);
        let mut t = self.pow(&a, &q);
        let mut r = self.pow(&a, &((&q + &one) >> 1));
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    pub fn poly(&self, f: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = f.iter().map(|c| self.reduce(c)).collect();
        trim(&mut v);
        v
    }

    pub fn poly_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.poly(&out)
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn poly_divrem(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let b = self.poly(b);
        let db = b.len() - 1;
        let inv = self.inv(&b[db]);
        let mut r = self.poly(a);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(&r[r.len() - 1], &inv);
            for (i, bc) in b.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * bc).mod_floor(&self.p);
            }
            q[k] = c;
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn poly_gcd(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut x = self.poly(a);
        let mut y = self.poly(b);
        while !y.is_empty() {
            let (_, r) = self.poly_divrem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(l) = x.last().cloned() {
            let inv = self.inv(&l);
            for c in x.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
        x
    }

    fn poly_powmod(&self, base: &[BigInt], e: &BigInt, m: &[BigInt]) -> Vec<BigInt> {
        let mut result = vec![BigInt::one()];
        let mut b = self.poly_divrem(base, m).1;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.poly_divrem(&self.poly_mul(&result, &b), m).1;
            }
            if i + 1 < bits {
                b = self.poly_divrem(&self.poly_mul(&b, &b), m).1;
            }
        }
        result
    }

    /// Distinct roots in `F_p` of a nonzero polynomial, increasing.
    pub fn roots(&self, f: &[BigInt]) -> Vec<BigInt> {
        let f = self.poly(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut h = self.poly_powmod(&x, &self.p, &f);
        while h.len() < 2 {
            h.push(BigInt::zero());
        }
        h[1] = (&h[1] - BigInt::one()).mod_floor(&self.p);
        trim(&mut h);
        let g = if h.is_empty() { self.poly_gcd(&f, &[]) } else { self.poly_gcd(&f, &h) };
        let mut out = Vec::new();
        self.split(&g, &mut out);
        out.sort();
        out
    }

    fn split(&self, g: &[BigInt], out: &mut Vec<BigInt>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.mul(&-&g[0], &self.inv(&g[1]))),
            _ => {
                let e = (&self.p - BigInt::one()) >> 1;
                let mut delta = BigInt::zero();
                loop {
                    let base = vec![delta.clone(), BigInt::one()];
                    let mut w = self.poly_powmod(&base, &e, g);
                    if w.is_empty() {
                        w.push(BigInt::zero());
                    }
                    w[0] = (&w[0] - BigInt::one()).mod_floor(&self.p);
                    trim(&mut w);
                    let d = self.poly_gcd(g, &w);
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = self.poly_divrem(g, &d);
                        self.split(&d, out);
                        self.split(&q, out);
                        return;
                    }
                    delta += 1;
                }
            }
        }
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::bigs;

    #[test]
    fn square_roots() {
        let f = Fp::new(BigInt::from(1_000_000_007u64));
        for a in [0i64, 1, 2, 4, 5, 123_456_789] {
            let a = BigInt::from(a);
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), f.reduce(&a));
            } else {
                assert_eq!(f.legendre(&a), -1);
            }
        }
        let f = Fp::new(BigInt::from(17));
        assert_eq!(f.legendre(&BigInt::from(3)), -1);
        assert!(f.sqrt(&BigInt::from(2)).is_some());
    }

    #[test]
    fn roots_of_split_and_irreducible() {
        let p: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let f = Fp::new(p.clone());
        // (t - 3)(t + 5)(t - 10^20)
        let r3 = BigInt::from(10u8).pow(20);
        let lin = |r: &BigInt| vec![f.reduce(&-r), BigInt::one()];
        let g = f.poly_mul(&f.poly_mul(&lin(&BigInt::from(3)), &lin(&BigInt::from(-5))), &lin(&r3));
        let roots = f.roots(&g);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&BigInt::from(3)));
        assert!(roots.contains(&(&p - 5)));
        assert!(roots.contains(&r3));
        let small = Fp::new(BigInt::from(7));
        // t^2 + 1 has no roots mod 7; t^3 - 1 has 1, 2, 4
        assert!(small.roots(&bigs(&[1, 0, 1])).is_empty());
        assert_eq!(small.roots(&bigs(&[-1, 0, 0, 1])), bigs(&[1, 2, 4]));
    }
}
