//! Submodules of free modules over a quotient of a polynomial ring: kernels and lifting.

use std::sync::Arc;

use crate::groebner::{groebner, Ctx, EPoly};
use crate::ideal::{split_components, to_epoly};
use crate::order::MonomialOrder;
use crate::poly::{MultiPoly, PolyRing};

/// Generators of the kernel of `A^k → A^l / N`, `e_i ↦ images[i]`, where `A` is the
/// polynomial ring modulo `base` and `N` is spanned by `relations`.
///
/// Each image and relation is a vector of length `l`.
pub fn module_kernel(
    ring: &Arc<PolyRing>,
    images: &[Vec<MultiPoly>],
    relations: &[Vec<MultiPoly>],
    base: &[MultiPoly],
    l: usize,
) -> Vec<Vec<MultiPoly>> {
    let k = images.len();
    let ctx = Ctx::module(*ring.field(), MonomialOrder::DegRevLex, ring.nvars());
    let rank = l + k;
    let mut gens: Vec<EPoly> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        assert_eq!(img.len(), l);
        let mut v: EPoly = Vec::new();
        for (c, p) in img.iter().enumerate() {
            v.extend(to_epoly(p, c as u32));
        }
        v.extend(to_epoly(&MultiPoly::one(ring), (l + i) as u32));
        gens.push(ctx.normalize(v));
    }
    for rel in relations {
        let mut v: EPoly = Vec::new();
        for (c, p) in rel.iter().enumerate() {
            v.extend(to_epoly(p, c as u32));
        }
        if !v.is_empty() {
            gens.push(ctx.normalize(v));
        }
    }
    // Multiples of the base ideal in every component.
    for c in 0..rank {
        for b in base {
            if !b.is_zero() {
                gens.push(ctx.normalize(to_epoly(b, c as u32)));
            }
        }
    }
    let gb = groebner(&ctx, gens);
    gb.iter()
        .filter(|g| g[0].0.comp as usize >= l)
        .map(|g| split_components(ring, g, rank)[l..].to_vec())
        .filter(|v: &Vec<MultiPoly>| v.iter().any(|p| !base_reduce_nonzero(p, base)))
        .collect()
}

// Kernel entries that vanish identically modulo the base ideal are redundant.
fn base_reduce_nonzero(p: &MultiPoly, base: &[MultiPoly]) -> bool {
    if p.is_zero() {
        return true;
    }
    if base.is_empty() {
        return false;
    }
    crate::ideal::Ideal::new(p.ring(), base.to_vec()).contains(p)
}

/// Kernel of `S^k → A/base`, `e_i ↦ images[i]`, where `S` is the polynomial ring in the
/// last `nvars - k` variables and `A` is the full polynomial ring. Generators are
/// returned as coefficient vectors involving only the variables of `S`.
pub fn subring_kernel(
    ring: &Arc<PolyRing>,
    images: &[MultiPoly],
    base: &[MultiPoly],
    k: usize,
) -> Vec<Vec<MultiPoly>> {
    let n = images.len();
    let ctx = Ctx::module_elim(*ring.field(), ring.nvars(), 1, k);
    let mut gens: Vec<EPoly> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = to_epoly(img, 0);
        v.extend(to_epoly(&MultiPoly::one(ring), (i + 1) as u32));
        gens.push(ctx.normalize(v));
    }
    for b in base {
        if !b.is_zero() {
            gens.push(ctx.normalize(to_epoly(b, 0)));
        }
    }
    let gb = groebner(&ctx, gens);
    gb.iter()
        .filter(|g| g[0].0.comp >= 1 && g[0].0.e[..k].iter().all(|&d| d == 0))
        .map(|g| split_components(ring, g, n + 1)[1..].to_vec())
        .collect()
}

/// Cofactors `c` with `f ≡ Σ c_j·gens_j` modulo `base`, or `None` if `f ∉ (gens) + (base)`.
pub fn lift(
    ring: &Arc<PolyRing>,
    f: &MultiPoly,
    gens: &[MultiPoly],
    base: &[MultiPoly],
) -> Option<Vec<MultiPoly>> {
    let t = gens.len();
    let ctx = Ctx::module(*ring.field(), MonomialOrder::DegRevLex, ring.nvars());
    let mut input: Vec<EPoly> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let mut v = to_epoly(g, 0);
        v.extend(to_epoly(&MultiPoly::one(ring), (j + 1) as u32));
        input.push(ctx.normalize(v));
    }
    for b in base {
        if !b.is_zero() {
            input.push(ctx.normalize(to_epoly(b, 0)));
        }
    }
    let gb = groebner(&ctx, input);
    let r = ctx.reduce(ctx.normalize(to_epoly(f, 0)), &gb);
    if r.iter().any(|(m, _)| m.comp == 0) {
        return None;
    }
    let parts = split_components(ring, &r, t + 1);
    Some(parts[1..].iter().map(|p| p.neg()).collect())
}
