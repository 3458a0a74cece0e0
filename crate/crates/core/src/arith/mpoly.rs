//! Sparse multivariate integer polynomials in at most four variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::{rem_u64, valuation};

pub type Exp = [u8; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exp, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        assert!(nvars <= 4);
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> MPoly {
        let mut m = MPoly::zero(nvars);
        m.add_term([0; 4], c);
        m
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = [0u8; 4];
        e[i] = 1;
        let mut m = MPoly::zero(nvars);
        m.add_term(e, BigInt::one());
        m
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, BigInt)>) -> MPoly {
        let mut m = MPoly::zero(nvars);
        for (e, c) in terms {
            m.add_term(e, c);
        }
        m
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> MPoly {
        if s.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars.max(other.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0u8; 4];
                for k in 0..4 {
                    e[k] = e1[k] + e2[k];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..self.nvars {
                for _ in 0..e[k] {
                    t *= &x[k];
                }
            }
            total += t;
        }
        total
    }

    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * BigInt::from(e[i]));
            }
        }
        out
    }

    /// Substitutes `x_i ↦ subs[i]`; the result lives in the variables of `subs`.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.iter().map(|s| s.nvars).max().unwrap_or(0);
        let maxdeg: Vec<u8> = (0..self.nvars).map(|k| self.terms.keys().map(|e| e[k]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<MPoly>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &d)| {
                let mut v = vec![MPoly::constant(nv, BigInt::one())];
                for k in 0..d as usize {
                    let next = v[k].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for k in 0..self.nvars {
                if e[k] > 0 {
                    t = t.mul(&powers[k][e[k] as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `x_i ↦ shift_i + scale · x_i`.
    pub fn affine_substitute(&self, shift: &[BigInt], scale: &BigInt) -> MPoly {
        let subs: Vec<MPoly> = (0..self.nvars)
            .map(|i| MPoly::constant(self.nvars, shift[i].clone()).add(&MPoly::var(self.nvars, i).scale(scale)))
            .collect();
        self.compose(&subs)
    }

    /// Minimal `p`-adic valuation of the coefficients (`None` for zero).
    pub fn content_valuation(&self, p: &BigInt) -> Option<u32> {
        self.terms.values().filter_map(|c| valuation(c, p)).min()
    }

    pub fn div_exact(&self, d: &BigInt) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    debug_assert!(r.is_zero());
                    (*e, q)
                })
                .collect(),
        }
    }

    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = rem_u64(c, p);
                (r != 0).then_some((*e, r))
            })
            .collect();
        ModPoly { nvars: self.nvars, p, terms }
    }
}

/// A polynomial over `F_p` for a machine-sized prime, for fast enumeration.
#[derive(Clone, Debug)]
pub struct ModPoly {
    nvars: usize,
    p: u64,
    terms: Vec<(Exp, u64)>,
}

impl ModPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for a nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; 4]
    }

    pub fn terms(&self) -> &[(Exp, u64)] {
        &self.terms
    }

    pub fn partial(&self, i: usize) -> ModPoly {
        let p = self.p;
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                if e[i] == 0 {
                    return None;
                }
                let mut f = *e;
                f[i] -= 1;
                let v = (*c as u128 * e[i] as u128 % p as u128) as u64;
                (v != 0).then_some((f, v))
            })
            .collect();
        ModPoly { nvars: self.nvars, p, terms }
    }

    /// Evaluates with precomputed powers `pows[k][j] = x_k^j mod p`.
    pub fn eval_pows(&self, pows: &[[u64; 5]]) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c as u128;
            for k in 0..self.nvars {
                if e[k] > 0 {
                    t = t * pows[k][e[k] as usize] as u128 % p;
                }
            }
            acc += t;
        }
        (acc % p) as u64
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let pows = powers_table(x, self.p);
        self.eval_pows(&pows)
    }
}

pub fn powers_table(x: &[u64], p: u64) -> Vec<[u64; 5]> {
    x.iter()
        .map(|&v| {
            let v = v % p;
            let mut row = [1 % p; 5];
            for j in 1..5 {
                row[j] = (row[j - 1] as u128 * v as u128 % p as u128) as u64;
            }
            row
        })
        .collect()
}
