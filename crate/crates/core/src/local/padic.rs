//! ℚ_p-solubility by residue-disc search.
//!
//! Primitive points are split into patches: one coordinate is 1, the earlier
//! ones are divisible by `p`, the later ones are free (for `z² = f(x, y)` the
//! patches are `(1, t, z)` and `(p·t, 1, z)`). A disc is a patch with an affine
//! change `t = shift + p^e·u`; its equations are the patch equations in `u`
//! divided by their `p`-content, and for two equations a reduction that is a
//! multiple of the other is replaced by the next `p`-adic digit of the
//! difference. A zero mod `p` with a nonsingular Jacobian lifts by Hensel;
//! singular zeros become child discs.

use std::collections::VecDeque;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Exhaustion, LocalVerdict, PadicWitness, Witness};
use crate::arith::int::{inv_mod, valuation};
use crate::arith::modp::Fp;
use crate::arith::mpoly::{powers_table, MPoly, ModPoly};
use crate::arith::primes::is_prime;
use crate::error::{Error, Result};
use crate::invariants::discriminant;
use crate::models::{GenusOneModel, ModelKind};

/// Enumerate residues directly when `p^k` is at most this.
const ENUM_DIRECT: u64 = 1 << 10;
/// Fallback enumeration bound after the line search fails.
const ENUM_FALLBACK: u64 = 1 << 22;
const PROPORTIONAL_CAP: usize = 64;
const NEWTON_STEPS: usize = 24;

#[derive(Clone, Debug)]
pub struct PadicOptions {
    /// Depth cap is `depth_factor · v_p(Δ) + depth_slack`.
    pub depth_factor: u32,
    pub depth_slack: u32,
    pub node_budget: usize,
    /// Lines tried per direction when looking for a smooth residue point at a large prime.
    pub line_trials: u64,
}

impl Default for PadicOptions {
    fn default() -> Self {
        PadicOptions { depth_factor: 2, depth_slack: 6, node_budget: 200_000, line_trials: 48 }
    }
}

#[derive(Clone, Copy, Debug)]
enum Coord {
    One,
    Free(usize),
    Scaled(usize),
}

#[derive(Clone, Debug)]
struct Patch {
    coords: Vec<Coord>,
}

impl Patch {
    fn nfree(&self) -> usize {
        self.coords.iter().filter(|c| !matches!(c, Coord::One)).count()
    }

    fn substitutions(&self, p: &BigInt) -> Vec<MPoly> {
        let k = self.nfree();
        self.coords
            .iter()
            .map(|c| match *c {
                Coord::One => MPoly::constant(k, BigInt::one()),
                Coord::Free(v) => MPoly::var(k, v),
                Coord::Scaled(v) => MPoly::var(k, v).scale(p),
            })
            .collect()
    }

    fn point(&self, t: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        self.coords
            .iter()
            .map(|c| match *c {
                Coord::One => BigInt::one(),
                Coord::Free(v) => t[v].clone(),
                Coord::Scaled(v) => p * &t[v],
            })
            .collect()
    }
}

fn patches(kind: ModelKind) -> Vec<Patch> {
    use Coord::*;
    match kind {
        ModelKind::BinaryQuartic => {
            vec![Patch { coords: vec![One, Free(0), Free(1)] }, Patch { coords: vec![Scaled(0), One, Free(1)] }]
        }
        _ => {
            let n = kind.point_len();
            (0..n)
                .map(|i| {
                    let mut v = 0;
                    let coords = (0..n)
                        .map(|j| {
                            if j == i {
                                return One;
                            }
                            let c = if j < i { Scaled(v) } else { Free(v) };
                            v += 1;
                            c
                        })
                        .collect();
                    Patch { coords }
                })
                .collect()
        }
    }
}

#[derive(Clone, Debug)]
struct Disc {
    patch: usize,
    polys: Vec<MPoly>,
    shift: Vec<BigInt>,
    scale: BigInt,
    depth: u32,
}

impl Disc {
    fn patch_coords(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.shift.iter().zip(u).map(|(s, x)| s + &self.scale * x).collect()
    }

    fn child(&self, residue: &[BigInt], p: &BigInt) -> Option<Disc> {
        let polys = self.polys.iter().map(|g| g.affine_substitute(residue, p)).collect();
        Some(Disc {
            patch: self.patch,
            polys: normalize(polys, p)?,
            shift: self.patch_coords(residue),
            scale: &self.scale * p,
            depth: self.depth + 1,
        })
    }
}

fn p_power(p: &BigInt, e: u32) -> BigInt {
    num_traits::pow(p.clone(), e as usize)
}

fn strip_content(g: MPoly, p: &BigInt) -> Option<MPoly> {
    let v = g.content_valuation(p)?;
    Some(if v == 0 { g } else { g.div_exact(&p_power(p, v)) })
}

/// `λ` with `g2 ≡ λ·g1 (mod p)`, for `g1` with unit content.
fn proportional(g1: &MPoly, g2: &MPoly, p: &BigInt) -> Option<BigInt> {
    let (e, c) = g1.terms().find(|(_, c)| !c.is_multiple_of(p))?;
    let lam = (g2.coeff(e) * inv_mod(c, p)?).mod_floor(p);
    let same = g1.terms().chain(g2.terms()).all(|(e, _)| (g2.coeff(e) - &lam * g1.coeff(e)).is_multiple_of(p));
    same.then_some(lam)
}

fn normalize(polys: Vec<MPoly>, p: &BigInt) -> Option<Vec<MPoly>> {
    let mut polys: Vec<MPoly> = polys.into_iter().map(|g| strip_content(g, p)).collect::<Option<_>>()?;
    if polys.len() == 2 {
        let mut tries = 0;
        while let Some(lam) = proportional(&polys[0], &polys[1], p) {
            tries += 1;
            if tries > PROPORTIONAL_CAP {
                return None;
            }
            let h = polys[1].sub(&polys[0].scale(&lam));
            polys[1] = strip_content(h, p)?;
        }
    }
    Some(polys)
}

/// `(v_p(F), v_p(∂F))` at `x` when the lifting criterion `v(F) > 2·v(∂F)` holds.
/// For one equation `∂F` ranges over the partials, for two over the 2×2
/// minors of the Jacobian. `u32::MAX` stands for an exact zero.
fn criterion_eqs(eqs: &[MPoly], x: &[BigInt], p: &BigInt) -> Option<(u32, u32)> {
    let v = |n: &BigInt| valuation(n, p).unwrap_or(u32::MAX);
    let vf = eqs.iter().map(|f| v(&f.eval(x))).min()?;
    let jac: Vec<Vec<BigInt>> =
        eqs.iter().map(|f| (0..x.len()).map(|i| f.partial(i).eval(x)).collect()).collect();
    let delta = if eqs.len() == 1 {
        jac[0].iter().map(v).min()?
    } else {
        let mut best = u32::MAX;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                best = best.min(v(&(&jac[0][i] * &jac[1][j] - &jac[0][j] * &jac[1][i])));
            }
        }
        best
    };
    (delta != u32::MAX && (vf == u32::MAX || vf > 2 * delta)).then_some((vf, delta))
}

/// The lifting criterion for the model's equations at integer coordinates.
pub fn lifting_criterion(model: &GenusOneModel, coords: &[BigInt], p: &BigInt) -> Option<(u32, u32)> {
    if coords.len() != model.kind().point_len() {
        return None;
    }
    criterion_eqs(&model.equations(), coords, p)
}

fn is_primitive_at(kind: ModelKind, coords: &[BigInt], p: &BigInt) -> bool {
    let relevant = if kind == ModelKind::BinaryQuartic { &coords[..2] } else { coords };
    relevant.iter().any(|c| !c.is_multiple_of(p))
}

/// Re-checks a witness independently of the search that produced it.
pub fn verify_witness(model: &GenusOneModel, w: &PadicWitness) -> bool {
    w.coords.len() == model.kind().point_len()
        && is_primitive_at(model.kind(), &w.coords, &w.p)
        && lifting_criterion(model, &w.coords, &w.p).is_some()
}

fn make_witness(eqs: &[MPoly], x: Vec<BigInt>, p: &BigInt) -> Option<PadicWitness> {
    let (_, delta) = criterion_eqs(eqs, &x, p)?;
    let precision = 2 * delta + 1;
    let m = p_power(p, precision);
    let reduced: Vec<BigInt> = x.iter().map(|c| c.mod_floor(&m)).collect();
    let (vf, d2) = criterion_eqs(eqs, &reduced, p)?;
    Some(PadicWitness {
        p: p.clone(),
        coords: reduced,
        precision,
        value_valuation: vf.min(precision),
        derivative_valuation: d2,
    })
}

/// Newton iteration on the disc equations from a smooth residue point, until
/// the original equations satisfy the lifting criterion.
fn lift(eqs: &[MPoly], patch: &Patch, disc: &Disc, start: Vec<BigInt>, vars: &[usize], p: &BigInt) -> Option<PadicWitness> {
    let grads: Vec<Vec<MPoly>> =
        disc.polys.iter().map(|g| vars.iter().map(|&i| g.partial(i)).collect()).collect();
    let mut u = start;
    let mut prec = 1u32;
    for _ in 0..NEWTON_STEPS {
        let x = patch.point(&disc.patch_coords(&u), p);
        if criterion_eqs(eqs, &x, p).is_some() {
            return make_witness(eqs, x, p);
        }
        prec *= 2;
        let m = p_power(p, prec);
        let vals: Vec<BigInt> = disc.polys.iter().map(|g| g.eval(&u)).collect();
        if vars.len() == 1 {
            let d = grads[0][0].eval(&u).mod_floor(&m);
            let inv = inv_mod(&d, &m)?;
            u[vars[0]] = (&u[vars[0]] - &vals[0] * inv).mod_floor(&m);
        } else {
            let j: Vec<Vec<BigInt>> = grads.iter().map(|row| row.iter().map(|g| g.eval(&u)).collect()).collect();
            let det = (&j[0][0] * &j[1][1] - &j[0][1] * &j[1][0]).mod_floor(&m);
            let inv = inv_mod(&det, &m)?;
            let d0 = (&j[1][1] * &vals[0] - &j[0][1] * &vals[1]) * &inv;
            let d1 = (&j[0][0] * &vals[1] - &j[1][0] * &vals[0]) * &inv;
            u[vars[0]] = (&u[vars[0]] - d0).mod_floor(&m);
            u[vars[1]] = (&u[vars[1]] - d1).mod_floor(&m);
        }
    }
    None
}

/// Variables on which the Jacobian of the reduction is invertible at `u`.
fn smooth_vars(jac: &[Vec<u64>], q: u64) -> Option<Vec<usize>> {
    let k = jac[0].len();
    if jac.len() == 1 {
        return (0..k).find(|&i| jac[0][i] != 0).map(|i| vec![i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            let a = jac[0][i] as u128 * jac[1][j] as u128 % q as u128;
            let b = jac[0][j] as u128 * jac[1][i] as u128 % q as u128;
            if a != b {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

fn smooth_vars_big(polys: &[MPoly], u: &[BigInt], p: &BigInt) -> Option<Vec<usize>> {
    if polys.iter().any(|g| !g.eval(u).is_multiple_of(p)) {
        return None;
    }
    let jac: Vec<Vec<BigInt>> =
        polys.iter().map(|g| (0..u.len()).map(|i| g.partial(i).eval(u).mod_floor(p)).collect()).collect();
    let k = u.len();
    if polys.len() == 1 {
        return (0..k).find(|&i| !jac[0][i].is_zero()).map(|i| vec![i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            if !(&jac[0][i] * &jac[1][j] - &jac[0][j] * &jac[1][i]).is_multiple_of(p) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

/// Calls `visit` on every common zero in `F_q^k` of the reductions, in
/// lexicographic order, until it returns `true`.
fn for_each_zero(red: &[ModPoly], k: usize, q: u64, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    let last = k - 1;
    let mut prefix = vec![0u64; last];
    let mut point = vec![0u64; k];
    let mut coeffs = vec![[0u64; 5]; red.len()];
    loop {
        let pows = powers_table(&prefix, q);
        for (g, row) in red.iter().zip(coeffs.iter_mut()) {
            *row = [0; 5];
            for (e, c) in g.terms() {
                let mut t = *c as u128;
                for (i, pw) in pows.iter().enumerate() {
                    if e[i] > 0 {
                        t = t * pw[e[i] as usize] as u128 % q as u128;
                    }
                }
                let slot = &mut row[e[last] as usize];
                *slot = ((*slot as u128 + t) % q as u128) as u64;
            }
        }
        point[..last].copy_from_slice(&prefix);
        for s in 0..q {
            let zero = coeffs.iter().all(|row| {
                let mut acc: u128 = 0;
                for &c in row.iter().rev() {
                    acc = (acc * s as u128 + c as u128) % q as u128;
                }
                acc == 0
            });
            if zero {
                point[last] = s;
                if visit(&point) {
                    return true;
                }
            }
        }
        // odometer over the prefix
        let mut i = last;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            prefix[i] += 1;
            if prefix[i] < q {
                break;
            }
            prefix[i] = 0;
        }
    }
}

enum Outcome {
    Found(PadicWitness),
    Exhausted { depth: u32, nodes: usize },
    Capped(String),
}

fn exhaust(eqs: &[MPoly], patches: &[Patch], roots: Vec<Disc>, p: &BigInt, q: u64, k_max: u32, opts: &PadicOptions) -> Outcome {
    let mut queue: VecDeque<Disc> = roots.into();
    let mut nodes = 0usize;
    let mut max_depth = 0u32;
    let mut capped: Option<String> = None;
    while let Some(disc) = queue.pop_front() {
        nodes += 1;
        if nodes > opts.node_budget {
            return Outcome::Capped(format!("node budget {} exhausted", opts.node_budget));
        }
        max_depth = max_depth.max(disc.depth);
        let red: Vec<ModPoly> = disc.polys.iter().map(|g| g.reduce_mod(q)).collect();
        if red.iter().any(|g| g.is_unit_constant()) {
            continue;
        }
        let k = disc.polys[0].nvars();
        let grads: Vec<Vec<ModPoly>> = red.iter().map(|g| (0..k).map(|i| g.partial(i)).collect()).collect();
        let mut smooth: Option<(Vec<u64>, Vec<usize>)> = None;
        let mut singular: Vec<Vec<u64>> = Vec::new();
        for_each_zero(&red, k, q, |pt| {
            let jac: Vec<Vec<u64>> = grads.iter().map(|row| row.iter().map(|g| g.eval(pt)).collect()).collect();
            match smooth_vars(&jac, q) {
                Some(vars) => {
                    smooth = Some((pt.to_vec(), vars));
                    true
                }
                None => {
                    singular.push(pt.to_vec());
                    false
                }
            }
        });
        if let Some((pt, vars)) = smooth {
            let start: Vec<BigInt> = pt.iter().map(|&c| BigInt::from(c)).collect();
            match lift(eqs, &patches[disc.patch], &disc, start, &vars, p) {
                Some(w) => return Outcome::Found(w),
                None => return Outcome::Capped("Newton lifting did not converge".into()),
            }
        }
        for pt in singular {
            if disc.depth + 1 > k_max {
                capped.get_or_insert_with(|| format!("depth cap {k_max} reached"));
                continue;
            }
            let residue: Vec<BigInt> = pt.iter().map(|&c| BigInt::from(c)).collect();
            match disc.child(&residue, p) {
                Some(child) => queue.push_back(child),
                None => {
                    capped.get_or_insert_with(|| "degenerate disc".to_string());
                }
            }
        }
    }
    match capped {
        Some(reason) => Outcome::Capped(reason),
        None => Outcome::Exhausted { depth: max_depth, nodes },
    }
}

/// `g` with variable `a` set to `r`, in the remaining variables.
fn restrict(g: &MPoly, a: usize, r: &BigInt) -> MPoly {
    let k = g.nvars();
    let subs: Vec<MPoly> = (0..k)
        .map(|j| match j.cmp(&a) {
            std::cmp::Ordering::Equal => MPoly::constant(k - 1, r.clone()),
            std::cmp::Ordering::Less => MPoly::var(k - 1, j),
            std::cmp::Ordering::Greater => MPoly::var(k - 1, j - 1),
        })
        .collect();
    g.compose(&subs)
}

/// Coefficients in variable `var` (lowest first), each a polynomial in the
/// other variable of a bivariate `g`, reduced mod `p`.
fn coefficient_polys(g: &MPoly, var: usize, fp: &Fp) -> Vec<Vec<BigInt>> {
    let other = 1 - var;
    let deg = g.terms().map(|(e, _)| e[var] as usize).max().unwrap_or(0);
    let mut out = vec![Vec::new(); deg + 1];
    for (e, c) in g.terms() {
        let row = &mut out[e[var] as usize];
        let j = e[other] as usize;
        if row.len() <= j {
            row.resize(j + 1, BigInt::zero());
        }
        row[j] += c;
    }
    let mut out: Vec<Vec<BigInt>> = out.iter().map(|r| fp.poly(r)).collect();
    while out.last().is_some_and(|r| r.is_empty()) {
        out.pop();
    }
    out
}

fn univariate(g: &MPoly, fp: &Fp) -> Vec<BigInt> {
    let deg = g.terms().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
    let mut out = vec![BigInt::zero(); deg + 1];
    for (e, c) in g.terms() {
        out[e[0] as usize] += c;
    }
    fp.poly(&out)
}

fn poly_add(fp: &Fp, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    fp.poly(&v)
}

/// Determinant over `F_p[u]` of a matrix of size at most 4.
fn poly_det(fp: &Fp, m: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut total: Vec<BigInt> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |pm| {
        let mut sign = 1;
        for a in 0..n {
            for b in a + 1..n {
                if pm[a] > pm[b] {
                    sign = -sign;
                }
            }
        }
        let mut acc = vec![BigInt::from(sign)];
        for (i, &j) in pm.iter().enumerate() {
            acc = fp.poly_mul(&acc, &m[i][j]);
            if acc.is_empty() {
                return;
            }
        }
        total = poly_add(fp, &total, &acc);
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Common zeros mod `p` of two bivariate polynomials, via the resultant in
/// the second variable; empty when the resultant vanishes identically.
fn common_zeros(c1: &MPoly, c2: &MPoly, fp: &Fp) -> Vec<[BigInt; 2]> {
    let a = coefficient_polys(c1, 1, fp);
    let b = coefficient_polys(c2, 1, fp);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (d1, d2) = (a.len() - 1, b.len() - 1);
    let n = d1 + d2;
    if n == 0 {
        return Vec::new();
    }
    let mut m = vec![vec![Vec::new(); n]; n];
    for r in 0..d2 {
        for (k, c) in a.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..d1 {
        for (k, c) in b.iter().rev().enumerate() {
            m[d2 + r][r + k] = c.clone();
        }
    }
    let res = poly_det(fp, &m);
    if res.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in fp.roots(&res) {
        let at = |coeffs: &[Vec<BigInt>]| -> Vec<BigInt> {
            let v: Vec<BigInt> = coeffs.iter().map(|c| crate::arith::upoly::eval(c, &s)).collect();
            fp.poly(&v)
        };
        let (ua, ub) = (at(&a), at(&b));
        let g = match (ua.is_empty(), ub.is_empty()) {
            (true, true) => vec![BigInt::zero(), BigInt::one()],
            (true, false) => ub,
            (false, true) => ua,
            (false, false) => fp.poly_gcd(&ua, &ub),
        };
        for w in fp.roots(&g) {
            out.push([s.clone(), w]);
        }
    }
    out
}

/// Looks for a smooth zero of the disc's reduction on the lines (planes for
/// three variables) where one variable is fixed to `0, 1, …`.
fn line_search(disc: &Disc, p: &BigInt, trials: u64) -> Option<(Vec<BigInt>, Vec<usize>)> {
    let fp = Fp::new(p.clone());
    let k = disc.polys[0].nvars();
    for r in 0..trials {
        let r = BigInt::from(r);
        for a in 0..k {
            let slices: Vec<MPoly> = disc.polys.iter().map(|g| restrict(g, a, &r)).collect();
            let candidates: Vec<Vec<BigInt>> = if slices.len() == 1 {
                let uni = univariate(&slices[0], &fp);
                let roots = if uni.is_empty() { vec![BigInt::zero()] } else { fp.roots(&uni) };
                roots.into_iter().map(|s| vec![s]).collect()
            } else {
                common_zeros(&slices[0], &slices[1], &fp).into_iter().map(|z| z.to_vec()).collect()
            };
            for rest in candidates {
                let mut u = rest;
                u.insert(a, r.clone());
                if let Some(vars) = smooth_vars_big(&disc.polys, &u, p) {
                    return Some((u, vars));
                }
            }
        }
    }
    None
}

pub fn p_adic_soluble(model: &GenusOneModel, p: &BigInt) -> Result<LocalVerdict> {
    p_adic_soluble_with(model, p, &PadicOptions::default())
}

/// Decides solubility over ℚ_p. Requires `Δ ≠ 0`.
pub fn p_adic_soluble_with(model: &GenusOneModel, p: &BigInt, opts: &PadicOptions) -> Result<LocalVerdict> {
    if p.sign() != Sign::Plus || !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let delta = discriminant(model);
    if delta.is_zero() {
        return Err(Error::Degenerate);
    }
    let v = valuation(&delta, p).unwrap_or(0);
    let k_max = opts.depth_factor * v + opts.depth_slack;
    let eqs = model.equations();
    let pats = patches(model.kind());
    let mut roots = Vec::with_capacity(pats.len());
    for (i, patch) in pats.iter().enumerate() {
        let subs = patch.substitutions(p);
        let polys: Vec<MPoly> = eqs.iter().map(|f| f.compose(&subs)).collect();
        let Some(polys) = normalize(polys, p) else {
            return Ok(LocalVerdict::Undecided("degenerate patch".into()));
        };
        let k = patch.nfree();
        roots.push(Disc { patch: i, polys, shift: vec![BigInt::zero(); k], scale: BigInt::one(), depth: 0 });
    }
    let k = pats[0].nfree() as u32;
    let small = |bound: u64| p.to_u64().filter(|q| q.checked_pow(k).is_some_and(|n| n <= bound));
    let q = match small(ENUM_DIRECT) {
        Some(q) => q,
        None => {
            for disc in &roots {
                if let Some((u, vars)) = line_search(disc, p, opts.line_trials) {
                    return Ok(match lift(&eqs, &pats[disc.patch], disc, u, &vars, p) {
                        Some(w) => LocalVerdict::Soluble(Witness::Padic(w)),
                        None => LocalVerdict::Undecided("Newton lifting did not converge".into()),
                    });
                }
            }
            match small(ENUM_FALLBACK) {
                Some(q) => q,
                None => return Ok(LocalVerdict::Undecided("no smooth residue point found on sampled lines".into())),
            }
        }
    };
    Ok(match exhaust(&eqs, &pats, roots, p, q, k_max, opts) {
        Outcome::Found(w) => LocalVerdict::Soluble(Witness::Padic(w)),
        Outcome::Exhausted { depth, nodes } => LocalVerdict::Insoluble(Exhaustion::Padic { depth, nodes }),
        Outcome::Capped(reason) => LocalVerdict::Undecided(reason),
    })
}
