//! Bounded search for rational points and the Hasse classification.
//!
//! The search covers the box `max |xᵢ| ≤ H` (for `n = 2` only `x, y` are
//! bounded) in stages `2, 8, 32, …, H`. Each stage enumerates rows of the
//! leading coordinates, sieves the next coordinate with residue tables for
//! small prime powers, and solves the last coordinate exactly. The smallest
//! point under the canonical order of the first stage containing any point
//! is returned, so the answer does not depend on the number of threads.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::int::{exact_sqrt, exact_sqrt_i128, rem_u64};
use crate::arith::upoly::{interpolate, rational_roots};
use crate::invariants::discriminant;
use crate::local::{locally_soluble_with, LocalOptions, Overall, Place};
use crate::models::{
    evaluate_coords, GenusOneModel, ModelKind, ProjectivePoint, BINARY_QUARTIC_MONOMIALS, QUADRIC_MONOMIALS,
    TERNARY_CUBIC_MONOMIALS,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HasseClass {
    Degenerate,
    LocallyInsoluble(Place),
    Soluble(ProjectivePoint),
    /// Locally soluble with no point of height at most this bound.
    FailureCandidate(u64),
    Undecided(String),
}

impl HasseClass {
    pub fn label(&self) -> &'static str {
        match self {
            HasseClass::Degenerate => "degenerate",
            HasseClass::LocallyInsoluble(_) => "locally_insoluble",
            HasseClass::Soluble(_) => "soluble",
            HasseClass::FailureCandidate(_) => "failure_candidate",
            HasseClass::Undecided(_) => "undecided",
        }
    }

    pub fn is_locally_soluble(&self) -> bool {
        matches!(self, HasseClass::Soluble(_) | HasseClass::FailureCandidate(_))
    }
}

impl fmt::Display for HasseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HasseClass::Degenerate => f.write_str("degenerate (Δ = 0)"),
            HasseClass::LocallyInsoluble(p) => write!(f, "locally insoluble at {p}"),
            HasseClass::Soluble(pt) => write!(f, "soluble, point {pt}"),
            HasseClass::FailureCandidate(h) => write!(f, "failure candidate (no point of height ≤ {h})"),
            HasseClass::Undecided(r) => write!(f, "undecided ({r})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub local: LocalOptions,
    pub search: SearchOptions,
}

pub fn search_point(model: &GenusOneModel, height: u64) -> Option<ProjectivePoint> {
    search_point_with(model, height, &SearchOptions::default())
}

pub fn search_point_with(model: &GenusOneModel, height: u64, opts: &SearchOptions) -> Option<ProjectivePoint> {
    if height == 0 || model.is_zero() {
        return None;
    }
    let search = Search::new(model, height);
    let mut h = 2u64.min(height);
    loop {
        if let Some(p) = search.stage(h, opts.threads.max(1)) {
            return Some(p);
        }
        if h == height {
            return None;
        }
        h = (h * 4).min(height);
    }
}

pub fn classify(model: &GenusOneModel, height: u64) -> HasseClass {
    classify_with(model, height, &ClassifyOptions::default())
}

/// A rational point is a point over ℝ and every ℚ_p, so the search runs
/// first and the local computation (with its factorization of `Δ`) only for
/// models without a point of height `≤ H`.
pub fn classify_with(model: &GenusOneModel, height: u64, opts: &ClassifyOptions) -> HasseClass {
    if discriminant(model).is_zero() {
        return HasseClass::Degenerate;
    }
    if let Some(p) = search_point_with(model, height, &opts.search) {
        return HasseClass::Soluble(p);
    }
    let local = LocalOptions { stop_at_obstruction: true, ..opts.local.clone() };
    match locally_soluble_with(model, &local) {
        Err(e) => HasseClass::Undecided(e.to_string()),
        Ok(r) => match r.overall {
            Overall::LocallyInsoluble(place) => HasseClass::LocallyInsoluble(place),
            Overall::Undecided(reason) => HasseClass::Undecided(reason),
            Overall::LocallySoluble => HasseClass::FailureCandidate(height),
        },
    }
}

/// Canonical order: max-norm, then absolute values from the last coordinate
/// to the first, then the signed coordinates.
pub fn canonical_cmp(a: &ProjectivePoint, b: &ProjectivePoint) -> Ordering {
    let abs_rev = |p: &ProjectivePoint| p.coords().iter().rev().map(|c| c.abs()).collect::<Vec<_>>();
    a.naive_height()
        .cmp(&b.naive_height())
        .then_with(|| abs_rev(a).cmp(&abs_rev(b)))
        .then_with(|| a.coords().cmp(b.coords()))
}

fn keep_min(best: &mut Option<ProjectivePoint>, p: ProjectivePoint) {
    if best.as_ref().is_none_or(|b| canonical_cmp(&p, b) == Ordering::Less) {
        *best = Some(p);
    }
}

const FAST_COEFF_BITS: u64 = 40;
const FAST_HEIGHT: u64 = 1 << 20;
const MAX_MODULI: usize = 24;
/// Moduli whose tables keep more than this fraction are dropped.
const MAX_DENSITY: f64 = 0.95;

struct Modulus {
    m: u64,
    density: f64,
    /// `words[r * m + s]` has bit `j` set iff residue `(s + j) mod m` of the
    /// sieved coordinate is allowed in row class `r`.
    words: Vec<u64>,
}

struct Search<'a> {
    model: &'a GenusOneModel,
    kind: ModelKind,
    fast: Option<Vec<i128>>,
    moduli: Vec<Modulus>,
}

fn candidate_moduli(kind: ModelKind) -> &'static [u64] {
    match kind {
        ModelKind::BinaryQuartic => &[
            16, 9, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 25, 27, 49, 32,
        ],
        ModelKind::TernaryCubic => &[
            9, 7, 13, 19, 31, 37, 43, 61, 8, 5, 11, 17, 23, 29, 41, 47, 53, 59, 27, 25, 16, 49,
        ],
        ModelKind::QuadricPair => &[8, 9, 5, 7, 11, 13, 17, 16, 19, 25, 23],
    }
}

fn smallest_prime_factor(m: u64) -> u64 {
    (2..=m).find(|d| m % d == 0).unwrap_or(m)
}

impl<'a> Search<'a> {
    fn new(model: &'a GenusOneModel, height: u64) -> Search<'a> {
        let kind = model.kind();
        let fast = (height < FAST_HEIGHT && model.coeffs().iter().all(|c| c.bits() < FAST_COEFF_BITS))
            .then(|| model.coeffs().iter().map(|c| c.to_i128().unwrap()).collect());
        let h = height as f64;
        let work = match kind {
            ModelKind::QuadricPair => (h + 1.0) * (2.0 * h + 1.0) * (2.0 * h + 1.0),
            _ => (h + 1.0) * (2.0 * h + 1.0),
        };
        let dim = if kind == ModelKind::QuadricPair { 4 } else if kind == ModelKind::TernaryCubic { 3 } else { 2 };
        let budget = (work / 8.0).max(4096.0);
        let mut moduli = Vec::new();
        let mut spent = 0.0;
        for &m in candidate_moduli(kind) {
            let cost = (m as f64).powi(dim);
            if spent + cost > budget || moduli.len() == MAX_MODULI {
                continue;
            }
            spent += cost;
            let table = allowed_table(model, m);
            let density = table.iter().filter(|&&b| b).count() as f64 / table.len() as f64;
            if density <= MAX_DENSITY {
                moduli.push(Modulus { m, density, words: pattern_words(&table, m) });
            }
        }
        moduli.sort_by(|a, b| a.density.total_cmp(&b.density).then(a.m.cmp(&b.m)));
        Search { model, kind, fast, moduli }
    }

    /// The canonical minimum over all primitive points in the box of size `h`.
    fn stage(&self, h: u64, threads: usize) -> Option<ProjectivePoint> {
        let h = h as i64;
        let rows: Vec<(i64, i64)> = match self.kind {
            ModelKind::QuadricPair => (0..=h).flat_map(|a| (-h..=h).map(move |b| (a, b))).collect(),
            _ => (0..=h).map(|a| (a, 0)).collect(),
        };
        let nbits = (2 * h + 1) as usize;
        let nwords = nbits.div_ceil(64);
        let offsets: Vec<u16> = (0..nwords)
            .flat_map(|w| self.moduli.iter().map(move |md| (-h + 64 * w as i64).rem_euclid(md.m as i64) as u16))
            .collect();
        let scan = |chunk: &[(i64, i64)]| {
            let mut best = None;
            let mut bases = vec![0usize; self.moduli.len()];
            for &row in chunk {
                self.scan_row(row, h, nbits, &offsets, &mut bases, &mut best);
            }
            best
        };
        if threads <= 1 || rows.len() < 64 {
            return scan(&rows);
        }
        let size = rows.len().div_ceil(threads);
        let found: Vec<Option<ProjectivePoint>> = std::thread::scope(|s| {
            let handles: Vec<_> = rows.chunks(size).map(|c| s.spawn(move || scan(c))).collect();
            handles.into_iter().map(|t| t.join().expect("search worker panicked")).collect()
        });
        let mut best = None;
        for p in found.into_iter().flatten() {
            keep_min(&mut best, p);
        }
        best
    }

    fn scan_row(
        &self,
        row: (i64, i64),
        h: i64,
        nbits: usize,
        offsets: &[u16],
        bases: &mut [usize],
        best: &mut Option<ProjectivePoint>,
    ) {
        let nm = self.moduli.len();
        for (md, base) in self.moduli.iter().zip(bases.iter_mut()) {
            let m = md.m as i64;
            let r = match self.kind {
                ModelKind::QuadricPair => row.0.rem_euclid(m) * m + row.1.rem_euclid(m),
                _ => row.0.rem_euclid(m),
            };
            *base = r as usize * md.m as usize;
        }
        let nwords = nbits.div_ceil(64);
        for w in 0..nwords {
            let mut acc = if w + 1 == nwords && nbits % 64 != 0 { (1u64 << (nbits % 64)) - 1 } else { !0 };
            let offs = &offsets[w * nm..(w + 1) * nm];
            for ((md, &base), &s) in self.moduli.iter().zip(bases.iter()).zip(offs) {
                acc &= md.words[base + s as usize];
                if acc == 0 {
                    break;
                }
            }
            while acc != 0 {
                let j = acc.trailing_zeros() as i64;
                acc &= acc - 1;
                let y = -h + 64 * w as i64 + j;
                self.check(row, y, h, best);
            }
        }
    }

    fn check(&self, row: (i64, i64), y: i64, h: i64, best: &mut Option<ProjectivePoint>) {
        match &self.fast {
            Some(c) => self.check_fast(c, row, y, h, best),
            None => self.check_big(row, y, h, best),
        }
    }

    fn check_fast(&self, c: &[i128], row: (i64, i64), y: i64, h: i64, best: &mut Option<ProjectivePoint>) {
        let mut roots = Vec::new();
        match self.kind {
            ModelKind::BinaryQuartic => {
                let x = row.0;
                if x.gcd(&y) != 1 {
                    return;
                }
                let (x, y) = (x as i128, y as i128);
                let f: i128 = BINARY_QUARTIC_MONOMIALS
                    .iter()
                    .zip(c)
                    .map(|(e, k)| k * x.pow(e[0] as u32) * y.pow(e[1] as u32))
                    .sum();
                if let Some(s) = exact_sqrt_i128(f) {
                    let p = ProjectivePoint::weighted(x.into(), y.into(), s.into()).expect("nonzero (x, y)");
                    keep_min(best, p);
                }
            }
            ModelKind::TernaryCubic => {
                let (x, y) = (row.0 as i128, y as i128);
                let mut g = [0i128; 4];
                for (e, k) in TERNARY_CUBIC_MONOMIALS.iter().zip(c) {
                    g[e[2] as usize] += k * x.pow(e[0] as u32) * y.pow(e[1] as u32);
                }
                if !integer_roots(&g, h as i128, &mut roots) {
                    roots.push(if x == 0 && y == 0 { 1 } else { 0 });
                }
                for z in roots {
                    if let Ok(p) = ProjectivePoint::new(vec![x.into(), y.into(), z.into()]) {
                        keep_min(best, p);
                    }
                }
            }
            ModelKind::QuadricPair => {
                let x = [row.0 as i128, row.1 as i128, y as i128];
                let quad = |q: &[i128]| {
                    let mut g = [0i128; 4];
                    for (&(i, j), k) in QUADRIC_MONOMIALS.iter().zip(q) {
                        match (i, j) {
                            (3, 3) => g[2] += k,
                            (i, 3) => g[1] += k * x[i],
                            (i, j) => g[0] += k * x[i] * x[j],
                        }
                    }
                    g
                };
                let (g1, g2) = (quad(&c[..10]), quad(&c[10..]));
                let eval = |g: &[i128; 4], t: i128| (g[2] * t + g[1]) * t + g[0];
                if integer_roots(&g1, h as i128, &mut roots) {
                    roots.retain(|&t| eval(&g2, t) == 0);
                } else if !integer_roots(&g2, h as i128, &mut roots) {
                    roots.push(if x == [0, 0, 0] { 1 } else { 0 });
                }
                for t in roots {
                    if let Ok(p) = ProjectivePoint::new(vec![x[0].into(), x[1].into(), x[2].into(), t.into()]) {
                        keep_min(best, p);
                    }
                }
            }
        }
    }

    fn check_big(&self, row: (i64, i64), y: i64, h: i64, best: &mut Option<ProjectivePoint>) {
        let hb = BigInt::from(h);
        match self.kind {
            ModelKind::BinaryQuartic => {
                if row.0.gcd(&y) != 1 {
                    return;
                }
                let (x, y) = (BigInt::from(row.0), BigInt::from(y));
                let f: BigInt = BINARY_QUARTIC_MONOMIALS
                    .iter()
                    .zip(self.model.coeffs())
                    .map(|(e, k)| k * x.pow(e[0] as u32) * y.pow(e[1] as u32))
                    .sum();
                if let Some(s) = exact_sqrt(&f) {
                    keep_min(best, ProjectivePoint::weighted(x, y, s).expect("nonzero (x, y)"));
                }
            }
            ModelKind::TernaryCubic | ModelKind::QuadricPair => {
                let mut prefix = vec![BigInt::from(row.0)];
                if self.kind == ModelKind::QuadricPair {
                    prefix.push(BigInt::from(row.1));
                }
                prefix.push(BigInt::from(y));
                let at = |t: &BigInt| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    evaluate_coords(self.model, &v).expect("point length")
                };
                let deg = if self.kind == ModelKind::TernaryCubic { 3 } else { 2 };
                let ts: Vec<BigInt> = (0..=deg).map(BigInt::from).collect();
                let samples: Vec<Vec<BigInt>> = ts.iter().map(at).collect();
                let polys: Vec<Vec<BigInt>> = (0..samples[0].len())
                    .map(|e| interpolate(&ts, &samples.iter().map(|s| s[e].clone()).collect::<Vec<_>>()))
                    .collect();
                let Some(lead) = polys.iter().find(|g| g.iter().any(|c| !c.is_zero())) else {
                    let t = if prefix.iter().all(|c| c.is_zero()) { 1 } else { 0 };
                    prefix.push(BigInt::from(t));
                    if let Ok(p) = ProjectivePoint::new(prefix) {
                        keep_min(best, p);
                    }
                    return;
                };
                for r in rational_roots(lead) {
                    if !r.is_integer() || r.numer().abs() > hb {
                        continue;
                    }
                    let t = r.to_integer();
                    if at(&t).iter().all(|v| v.is_zero()) {
                        let mut v = prefix.clone();
                        v.push(t);
                        if let Ok(p) = ProjectivePoint::new(v) {
                            keep_min(best, p);
                        }
                    }
                }
            }
        }
    }
}

/// Whether some lift of the residues has the last coordinate allowed.
/// Indexed by `row_class * m + sieved_residue`.
fn allowed_table(model: &GenusOneModel, m: u64) -> Vec<bool> {
    let c: Vec<u64> = model.coeffs().iter().map(|k| rem_u64(k, m)).collect();
    let p = smallest_prime_factor(m);
    let mm = m as usize;
    let unit = |v: u64| v % p != 0;
    let pw = |x: u64, e: u8| (0..e).fold(1u64, |acc, _| acc * x % m);
    match model.kind() {
        ModelKind::BinaryQuartic => {
            let mut square = vec![false; mm];
            for z in 0..m {
                square[(z * z % m) as usize] = true;
            }
            let mut t = vec![false; mm * mm];
            for x in 0..m {
                for y in 0..m {
                    if !unit(x) && !unit(y) {
                        continue;
                    }
                    let f = BINARY_QUARTIC_MONOMIALS.iter().zip(&c).fold(0, |acc, (e, k)| {
                        (acc + k * pw(x, e[0]) % m * pw(y, e[1])) % m
                    });
                    t[x as usize * mm + y as usize] = square[f as usize];
                }
            }
            t
        }
        ModelKind::TernaryCubic => {
            let mut t = vec![false; mm * mm];
            for x in 0..m {
                for y in 0..m {
                    let mut g = [0u64; 4];
                    for (e, k) in TERNARY_CUBIC_MONOMIALS.iter().zip(&c) {
                        let v = &mut g[e[2] as usize];
                        *v = (*v + k * pw(x, e[0]) % m * pw(y, e[1])) % m;
                    }
                    let need_unit = !unit(x) && !unit(y);
                    t[x as usize * mm + y as usize] = (0..m)
                        .any(|z| (!need_unit || unit(z)) && ((g[3] * z + g[2]) % m * z + g[1]) % m * z % m == (m - g[0]) % m);
                }
            }
            t
        }
        ModelKind::QuadricPair => {
            let mut t = vec![false; mm * mm * mm];
            let quad = |q: &[u64], x: &[u64; 3]| {
                let mut g = [0u64; 3];
                for (&(i, j), k) in QUADRIC_MONOMIALS.iter().zip(q) {
                    match (i, j) {
                        (3, 3) => g[2] = (g[2] + k) % m,
                        (i, 3) => g[1] = (g[1] + k * x[i]) % m,
                        (i, j) => g[0] = (g[0] + k * x[i] % m * x[j]) % m,
                    }
                }
                g
            };
            for a in 0..m {
                for b in 0..m {
                    for d in 0..m {
                        let x = [a, b, d];
                        let (g1, g2) = (quad(&c[..10], &x), quad(&c[10..], &x));
                        let need_unit = x.iter().all(|&v| !unit(v));
                        t[(a as usize * mm + b as usize) * mm + d as usize] = (0..m).any(|s| {
                            (!need_unit || unit(s))
                                && ((g1[2] * s + g1[1]) % m * s + g1[0]) % m == 0
                                && ((g2[2] * s + g2[1]) % m * s + g2[0]) % m == 0
                        });
                    }
                }
            }
            t
        }
    }
}

fn pattern_words(table: &[bool], m: u64) -> Vec<u64> {
    let mm = m as usize;
    let classes = table.len() / mm;
    let mut words = vec![0u64; classes * mm];
    for r in 0..classes {
        let row = &table[r * mm..(r + 1) * mm];
        for s in 0..mm {
            let mut w = 0u64;
            for j in 0..64 {
                if row[(s + j) % mm] {
                    w |= 1 << j;
                }
            }
            words[r * mm + s] = w;
        }
    }
    words
}

/// Integer roots in `[-h, h]` of `g[0] + g[1] t + g[2] t² + g[3] t³`, appended
/// to `out`. Returns `false` if `g` vanishes identically.
fn integer_roots(g: &[i128; 4], h: i128, out: &mut Vec<i128>) -> bool {
    let Some(deg) = (0..4).rev().find(|&i| g[i] != 0) else {
        return false;
    };
    let eval = |t: i128| ((g[3] * t + g[2]) * t + g[1]) * t + g[0];
    let start = out.len();
    match deg {
        0 => {}
        1 => {
            if g[0] % g[1] == 0 && (g[0] / g[1]).abs() <= h {
                out.push(-g[0] / g[1]);
            }
        }
        _ => {
            let mut crit: Vec<f64> = Vec::new();
            let f = |i: usize| g[i] as f64;
            if deg == 2 {
                crit.push(-f(1) / (2.0 * f(2)));
            } else {
                // 3 g3 t² + 2 g2 t + g1
                let (a, b, c) = (3.0 * f(3), 2.0 * f(2), f(1));
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 {
                    let q = -0.5 * (b + b.signum() * disc.sqrt());
                    if q != 0.0 {
                        crit.push(q / a);
                        crit.push(c / q);
                    } else {
                        crit.push(-b / (2.0 * a));
                    }
                }
            }
            crit.retain(|t| t.is_finite());
            crit.sort_by(f64::total_cmp);
            let mut lo = -h;
            for t in crit {
                let a = (t.floor() as i128 - 2).max(-h);
                let b = (t.ceil() as i128 + 2).min(h);
                if a > b || b < lo {
                    continue;
                }
                monotone_roots(&eval, lo, a - 1, out);
                for s in a.max(lo)..=b {
                    if eval(s) == 0 {
                        out.push(s);
                    }
                }
                lo = b + 1;
            }
            monotone_roots(&eval, lo, h, out);
        }
    }
    let tail = &mut out[start..];
    tail.sort_unstable();
    let mut keep = start;
    for i in start..out.len() {
        if i == start || out[i] != out[keep - 1] {
            out[keep] = out[i];
            keep += 1;
        }
    }
    out.truncate(keep);
    true
}

fn monotone_roots(eval: &impl Fn(i128) -> i128, a: i128, b: i128, out: &mut Vec<i128>) {
    if a > b {
        return;
    }
    let (sa, sb) = (eval(a).signum(), eval(b).signum());
    if sa == 0 {
        out.push(a);
        return;
    }
    if sb == 0 {
        out.push(b);
        return;
    }
    if sa == sb {
        return;
    }
    let (mut lo, mut hi) = (a, b);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let s = eval(mid).signum();
        if s == 0 {
            out.push(mid);
            return;
        }
        if s == sa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
