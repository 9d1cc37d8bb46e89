//! Buchberger's algorithm over `F_p` for ideals and for submodules of free modules.
//!
//! Polynomials are kept as vectors of terms sorted by decreasing monomial. A term
//! carries a module component; plain ideals use component 0 throughout. Components
//! are ordered position-over-term with component 0 largest, which is what module
//! elimination (syzygies, cofactor lifting) needs.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use smallvec::SmallVec;

use crate::field::PrimeField;
use crate::order::MonomialOrder;

pub(crate) type Exps = SmallVec<[u32; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mon {
    pub comp: u32,
    pub e: Exps,
}

impl Mon {
    fn divides(&self, o: &Mon) -> bool {
        self.comp == o.comp && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    fn lcm(&self, o: &Mon) -> Mon {
        Mon {
            comp: self.comp,
            e: self.e.iter().zip(&o.e).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    fn quotient(&self, by: &Mon) -> Exps {
        self.e.iter().zip(&by.e).map(|(a, b)| a - b).collect()
    }

    fn coprime(&self, o: &Mon) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn degree(&self) -> u64 {
        self.e.iter().map(|&x| x as u64).sum()
    }
}

pub(crate) type EPoly = Vec<(Mon, u32)>;

/// Engine statistics, reported by the CLI as advisory numbers.
static SPAIRS_REDUCED: AtomicU64 = AtomicU64::new(0);
static MAX_BASIS_SIZE: AtomicU64 = AtomicU64::new(0);
static SPAIR_LIMIT: AtomicU64 = AtomicU64::new(0);

/// Panic payload raised when the configured S-pair budget is exhausted.
#[derive(Debug, Clone, Copy)]
pub struct SpairLimitExceeded {
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub spairs_reduced: u64,
    pub max_basis_size: u64,
}

pub fn engine_stats() -> EngineStats {
    EngineStats {
        spairs_reduced: SPAIRS_REDUCED.load(AtomicOrdering::Relaxed),
        max_basis_size: MAX_BASIS_SIZE.load(AtomicOrdering::Relaxed),
    }
}

pub fn reset_engine_stats() {
    SPAIRS_REDUCED.store(0, AtomicOrdering::Relaxed);
    MAX_BASIS_SIZE.store(0, AtomicOrdering::Relaxed);
}

/// Sets a process-wide bound on reduced S-pairs; `0` disables it. Exceeding the
/// bound panics with a [`SpairLimitExceeded`] payload.
pub fn set_spair_limit(limit: u64) {
    SPAIR_LIMIT.store(limit, AtomicOrdering::Relaxed);
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Ctx {
    pub field: PrimeField,
    pub order: MonomialOrder,
    pub nvars: usize,
    /// `true` when every term lives in component 0 (ideal case).
    pub ideal: bool,
    /// Module elimination order `(l, k)`: components below `l` dominate, then the
    /// first `k` variables, then the component, then the remaining variables.
    pub elim: Option<(u32, usize)>,
}

impl Ctx {
    pub fn new(field: PrimeField, order: MonomialOrder, nvars: usize) -> Self {
        Ctx {
            field,
            order,
            nvars,
            ideal: true,
            elim: None,
        }
    }

    pub fn module(field: PrimeField, order: MonomialOrder, nvars: usize) -> Self {
        Ctx {
            field,
            order,
            nvars,
            ideal: false,
            elim: None,
        }
    }

    pub fn module_elim(field: PrimeField, nvars: usize, l: u32, k: usize) -> Self {
        Ctx {
            field,
            order: MonomialOrder::DegRevLex,
            nvars,
            ideal: false,
            elim: Some((l, k)),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        if let Some((l, k)) = self.elim {
            return b
                .comp
                .min(l)
                .cmp(&a.comp.min(l))
                .then_with(|| MonomialOrder::DegRevLex.cmp(&a.e[..k], &b.e[..k]))
                .then_with(|| b.comp.cmp(&a.comp))
                .then_with(|| MonomialOrder::DegRevLex.cmp(&a.e[k..], &b.e[k..]));
        }
        match b.comp.cmp(&a.comp) {
            Ordering::Equal => self.order.cmp(&a.e, &b.e),
            o => o,
        }
    }

    pub fn normalize(&self, mut f: EPoly) -> EPoly {
        f.retain(|t| t.1 != 0);
        f.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: EPoly = Vec::with_capacity(f.len());
        for (m, c) in f {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = self.field.add(last.1, c);
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        out
    }

    fn monic(&self, f: &mut EPoly) {
        if let Some(&(_, lc)) = f.first() {
            if lc != 1 {
                let inv = self.field.inv(lc);
                for t in f.iter_mut() {
                    t.1 = self.field.mul(t.1, inv);
                }
            }
        }
    }

    /// `a - c * x^shift * b`, both inputs sorted.
    fn sub_mul(&self, a: &[(Mon, u32)], b: &[(Mon, u32)], c: u32, shift: &Exps) -> EPoly {
        let k = &self.field;
        let negc = k.neg(c);
        let mut out: EPoly = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &(Mon, u32)| -> (Mon, u32) {
            (
                Mon {
                    comp: t.0.comp,
                    e: t.0.e.iter().zip(shift).map(|(x, y)| x + y).collect(),
                },
                k.mul(t.1, negc),
            )
        };
        let mut pending: Option<(Mon, u32)> = b.first().map(shifted);
        while i < a.len() || pending.is_some() {
            match (&a.get(i), &pending) {
                (Some(ta), Some(tb)) => match self.cmp(&ta.0, &tb.0) {
                    Ordering::Greater => {
                        out.push((*ta).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = b.get(j).map(shifted);
                    }
                    Ordering::Equal => {
                        let s = k.add(ta.1, tb.1);
                        if s != 0 {
                            out.push((ta.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = b.get(j).map(shifted);
                    }
                },
                (Some(ta), None) => {
                    out.push((*ta).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Full normal form of `f` modulo `basis` (basis elements monic).
    pub fn reduce(&self, f: EPoly, basis: &[EPoly]) -> EPoly {
        let mut rem: EPoly = Vec::new();
        let mut cur = f;
        while let Some((lm, lc)) = cur.first().cloned() {
            match basis.iter().find(|g| g[0].0.divides(&lm)) {
                Some(g) => {
                    let shift = lm.quotient(&g[0].0);
                    cur = self.sub_mul(&cur[1..], &g[1..], lc, &shift);
                }
                None => {
                    rem.push((lm, lc));
                    cur.remove(0);
                }
            }
        }
        rem
    }

    /// Reduces only while the leading term is divisible.
    fn top_reduce(&self, f: EPoly, basis: &[&EPoly]) -> EPoly {
        let mut cur = f;
        while let Some((lm, lc)) = cur.first().cloned() {
            match basis.iter().find(|g| g[0].0.divides(&lm)) {
                Some(g) => {
                    let shift = lm.quotient(&g[0].0);
                    cur = self.sub_mul(&cur[1..], &g[1..], lc, &shift);
                }
                None => break,
            }
        }
        cur
    }

    fn spoly(&self, f: &EPoly, g: &EPoly, lcm: &Mon) -> EPoly {
        let sf = lcm.quotient(&f[0].0);
        let sg = lcm.quotient(&g[0].0);
        let lf: EPoly = f[1..]
            .iter()
            .map(|(m, c)| {
                (
                    Mon {
                        comp: m.comp,
                        e: m.e.iter().zip(&sf).map(|(a, b)| a + b).collect(),
                    },
                    *c,
                )
            })
            .collect();
        self.sub_mul(&lf, &g[1..], 1, &sg)
    }

    fn is_unit(&self, f: &EPoly) -> bool {
        self.ideal && f.len() == 1 && f[0].0.e.iter().all(|&x| x == 0)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
    sugar: u64,
}

/// Reduced Gröbner basis (monic, sorted by increasing leading monomial).
pub(crate) fn groebner(ctx: &Ctx, gens: Vec<EPoly>) -> Vec<EPoly> {
    let mut input: Vec<EPoly> = gens
        .into_iter()
        .map(|g| ctx.normalize(g))
        .filter(|g| !g.is_empty())
        .collect();
    input.sort_by(|a, b| ctx.cmp(&a[0].0, &b[0].0));

    let mut polys: Vec<EPoly> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut unit = false;
    for g in input {
        let basis: Vec<&EPoly> = polys
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect();
        let sugar = g.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        let mut h = ctx.top_reduce(g, &basis);
        if h.is_empty() {
            continue;
        }
        ctx.monic(&mut h);
        if ctx.is_unit(&h) {
            unit = true;
            break;
        }
        update(ctx, &mut polys, &mut sugars, &mut active, &mut pairs, h, sugar);
    }

    let limit = SPAIR_LIMIT.load(AtomicOrdering::Relaxed);
    while !unit && !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ctx.cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then(pairs[a].sugar.cmp(&pairs[b].sugar))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let reduced = SPAIRS_REDUCED.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if limit > 0 && reduced > limit {
            std::panic::panic_any(SpairLimitExceeded { limit });
        }
        let s = ctx.spoly(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let basis: Vec<&EPoly> = polys
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect();
        let mut h = ctx.top_reduce(s, &basis);
        if h.is_empty() {
            continue;
        }
        ctx.monic(&mut h);
        if ctx.is_unit(&h) {
            unit = true;
            break;
        }
        update(ctx, &mut polys, &mut sugars, &mut active, &mut pairs, h, pair.sugar);
    }

    if unit {
        return vec![vec![(
            Mon {
                comp: 0,
                e: SmallVec::from_elem(0, ctx.nvars),
            },
            1,
        )]];
    }

    // Minimal basis, then tail-reduce.
    let mut minimal: Vec<EPoly> = Vec::new();
    for (idx, p) in polys.iter().enumerate() {
        if !active[idx] {
            continue;
        }
        let redundant = polys.iter().enumerate().any(|(j, q)| {
            active[j] && j != idx && q[0].0.divides(&p[0].0) && (q[0].0 != p[0].0 || j < idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<EPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<EPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let head = minimal[i][0].clone();
        let tail = ctx.reduce(minimal[i][1..].to_vec(), &others);
        let mut p = vec![head];
        p.extend(tail);
        ctx.monic(&mut p);
        reduced.push(p);
    }
    reduced.sort_by(|a, b| ctx.cmp(&a[0].0, &b[0].0));
    MAX_BASIS_SIZE.fetch_max(reduced.len() as u64, AtomicOrdering::Relaxed);
    reduced
}

/// Gebauer–Möller installation of a new basis element.
fn update(
    ctx: &Ctx,
    polys: &mut Vec<EPoly>,
    sugars: &mut Vec<u64>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: EPoly,
    sugar: u64,
) {
    let hi = polys.len();
    let hm = h[0].0.clone();
    let hsugar = sugar.max(h.iter().map(|t| t.0.degree()).max().unwrap_or(0));

    // Candidate pairs (h, g) for active g in the same component.
    let cands: Vec<(usize, Mon, bool)> = (0..polys.len())
        .filter(|&g| active[g] && polys[g][0].0.comp == hm.comp)
        .map(|g| {
            let gm = &polys[g][0].0;
            (g, hm.lcm(gm), ctx.ideal && hm.coprime(gm))
        })
        .collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<usize> = Vec::new();
    for (a, (_, lcm_a, coprime_a)) in cands.iter().enumerate() {
        if *coprime_a {
            kept.push(a);
            continue;
        }
        let dominated = cands.iter().enumerate().any(|(b, (_, lcm_b, _))| {
            b != a && lcm_b.divides(lcm_a) && (lcm_b != lcm_a || b < a)
        });
        if !dominated {
            kept.push(a);
        }
    }
    // Product criterion: drop coprime pairs, and pairs sharing an lcm with a coprime one.
    let coprime_lcms: Vec<&Mon> = kept
        .iter()
        .filter(|&&a| cands[a].2)
        .map(|&a| &cands[a].1)
        .collect();
    let new_pairs: Vec<Pair> = kept
        .iter()
        .filter(|&&a| !cands[a].2 && !coprime_lcms.contains(&&cands[a].1))
        .map(|&a| {
            let (g, ref lcm, _) = cands[a];
            let gm = &polys[g][0].0;
            let s = (sugars[g] + lcm.degree() - gm.degree()).max(hsugar + lcm.degree() - hm.degree());
            Pair {
                i: g,
                j: hi,
                lcm: lcm.clone(),
                sugar: s,
            }
        })
        .collect();

    // Criterion B on the old pairs.
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(&polys[p.i][0].0);
        let lj = hm.lcm(&polys[p.j][0].0);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    for g in 0..polys.len() {
        if active[g] && hm.divides(&polys[g][0].0) {
            active[g] = false;
        }
    }
    polys.push(h);
    sugars.push(hsugar);
    active.push(true);
}
