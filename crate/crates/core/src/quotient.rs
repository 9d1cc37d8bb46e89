//! Invariant rings, quotient maps, and the inseparability exponent.

use std::sync::Arc;

use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::ideal::{Ideal, QuotientRing, RingMap};
use crate::module::subring_kernel;
use crate::order::MonomialOrder;
use crate::points::{closed_points, minimal_generators_at, points_of_degree_dividing};
use crate::poly::{Exponents, MultiPoly, PolyRing};

/// `R^G` as a subring of `R`: generators, an abstract presentation `F_p[u]/K`, and the
/// inclusion `u_i ↦ g_i`, which is also the quotient map `q: X → X/G` on rings.
#[derive(Clone, Debug)]
pub struct InvariantRing {
    pub generators: Vec<MultiPoly>,
    pub presentation: QuotientRing,
    pub inclusion: RingMap,
}

impl InvariantRing {
    /// Images of the presentation variables, as `(u_i, g_i)` strings.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.presentation
            .ring()
            .vars()
            .iter()
            .cloned()
            .zip(self.generators.iter().map(|g| g.to_string()))
            .collect()
    }

    /// Whether `f ∈ R` lies in the subring generated by the invariant generators.
    pub fn contains(&self, f: &MultiPoly) -> bool {
        in_subalgebra(self.inclusion.target(), &self.generators, f)
    }
}

/// `p^h`, where `h` is the height of the group.
fn frobenius_exponent(a: &Coaction) -> u64 {
    let p = a.group().field().p() as u64;
    p.pow(a.group().height())
}

fn box_exponents(bounds: &[u32]) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = vec![Exponents::new()];
    for &q in bounds {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..q).map(move |d| {
                    let mut e = e.clone();
                    e.push(d);
                    e
                })
            })
            .collect();
    }
    out
}

/// Monomials spanning `R` over `S = F_p[x_i^q : i ∈ sub]`, namely the standard monomials
/// of an elimination basis of `J + (x_i^q - s_i)` with the `x` block first, or `None`
/// when `R` is not finite over `S`.
fn spanning_monomials(ring: &QuotientRing, q: u64, sub: &[usize]) -> Option<Vec<Exponents>> {
    let n = ring.nvars();
    let s_names: Vec<String> = (0..sub.len()).map(|i| format!("_s{i}")).collect();
    let big = ring.ring().append(&s_names);
    let xmap: Vec<usize> = (0..n).collect();
    let mut gens: Vec<MultiPoly> = ring.relations().iter().map(|f| f.rename_into(&big, &xmap)).collect();
    for (k, &i) in sub.iter().enumerate() {
        gens.push(MultiPoly::var(&big, i).pow(q).sub(&MultiPoly::var(&big, n + k)));
    }
    let order = MonomialOrder::Block(n);
    let leads: Vec<Exponents> = Ideal::new(&big, gens)
        .groebner_basis(order)
        .iter()
        .filter_map(|g| g.leading(order).map(|t| t.0))
        .filter(|l| l[n..].iter().all(|&d| d == 0))
        .collect();
    let bounds: Vec<u32> = (0..n)
        .map(|i| {
            leads
                .iter()
                .filter(|l| l[..n].iter().enumerate().all(|(j, &d)| j == i || d == 0))
                .map(|l| l[i])
                .min()
        })
        .collect::<Option<_>>()?;
    Some(
        box_exponents(&bounds)
            .into_iter()
            .filter(|e| !leads.iter().any(|l| l[..n].iter().zip(e.iter()).all(|(a, b)| a <= b)))
            .collect(),
    )
}

/// `R^G` as the kernel of `r ↦ a*(r) - 1 ⊗ r`, computed as a syzygy module over a
/// subring `S` generated by `p^h`-th powers of variables: a single one when `R` is
/// finite over it, otherwise all of them.
pub fn invariant_ring(a: &Coaction) -> Result<InvariantRing> {
    let r = a.group().rank();
    let ring = a.ring();
    let n = ring.nvars();
    let q = frobenius_exponent(a);
    let (sub, monos) = (0..n)
        .map(|i| vec![i])
        .chain(std::iter::once((0..n).collect()))
        .find_map(|sub: Vec<usize>| spanning_monomials(ring, q, &sub).map(|m| (sub, m)))
        .expect("R is finite over the q-th powers of all variables");
    let tr = a.tensor();
    let s_names: Vec<String> = (0..sub.len()).map(|i| format!("_s{i}")).collect();
    let big = tr.ring().append(&s_names);
    let into_big: Vec<usize> = (0..r + n).collect();
    let mut base: Vec<MultiPoly> = tr.relations().iter().map(|f| f.rename_into(&big, &into_big)).collect();
    for (k, &i) in sub.iter().enumerate() {
        base.push(MultiPoly::var(&big, r + i).pow(q).sub(&MultiPoly::var(&big, r + n + k)));
    }
    let images: Vec<MultiPoly> = monos
        .iter()
        .map(|e| {
            let m = MultiPoly::monomial(ring.ring(), e.clone(), 1);
            a.difference(&m).rename_into(&big, &into_big)
        })
        .collect();
    let kernel = subring_kernel(&big, &images, &base, r + n);

    // s_k ↦ x_i^q back in R
    let back: Vec<MultiPoly> = (0..r)
        .map(|_| MultiPoly::zero(ring.ring()))
        .chain((0..n).map(|i| ring.var(i)))
        .chain(sub.iter().map(|&i| ring.var(i).pow(q)))
        .collect();
    let mut candidates: Vec<MultiPoly> = (0..n).map(|i| ring.reduce(&ring.var(i).pow(q))).collect();
    for v in &kernel {
        let mut f = MultiPoly::zero(ring.ring());
        for (c, e) in v.iter().zip(&monos) {
            if c.is_zero() {
                continue;
            }
            let c = c.substitute(ring.ring(), &back);
            f = f.add(&c.mul_monomial(e, 1));
        }
        candidates.push(ring.reduce(&f));
    }
    candidates.retain(|f| !f.is_constant());
    candidates.sort_by(|f, g| {
        f.total_degree()
            .cmp(&g.total_degree())
            .then_with(|| f.num_terms().cmp(&g.num_terms()))
            .then_with(|| f.to_string().cmp(&g.to_string()))
    });
    let mut gens: Vec<MultiPoly> = Vec::new();
    for c in candidates {
        let c = c.make_monic();
        if gens.iter().any(|g| *g == c) || (!gens.is_empty() && in_subalgebra(ring, &gens, &c)) {
            continue;
        }
        gens.push(c);
    }
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let rest: Vec<MultiPoly> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        if in_subalgebra(ring, &rest, &gens[i]) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    for g in &gens {
        if !a.is_invariant(g) {
            return Err(Error::Internal(format!("generator {g} is not invariant")));
        }
    }
    let names: Vec<String> = (1..=gens.len()).map(|i| format!("u{i}")).collect();
    let u = PolyRing::from_names(*ring.ring().field(), names);
    let free = QuotientRing::polynomial(&u);
    let to_r = RingMap::new(free, ring.clone(), gens.clone())?;
    let presentation = QuotientRing::new(to_r.kernel())?;
    let inclusion = RingMap::new(presentation.clone(), ring.clone(), gens.clone())?;
    Ok(InvariantRing {
        generators: gens,
        presentation,
        inclusion,
    })
}

/// Whether `f` lies in the `F_p`-subalgebra of `R` generated by `gens`.
pub fn in_subalgebra(r: &QuotientRing, gens: &[MultiPoly], f: &MultiPoly) -> bool {
    let n = r.nvars();
    let names: Vec<String> = (0..gens.len()).map(|i| format!("_u{i}")).collect();
    let big = r.ring().append(&names);
    let xmap: Vec<usize> = (0..n).collect();
    let mut ideal: Vec<MultiPoly> = r.relations().iter().map(|g| g.rename_into(&big, &xmap)).collect();
    for (i, g) in gens.iter().enumerate() {
        ideal.push(MultiPoly::var(&big, n + i).sub(&g.rename_into(&big, &xmap)));
    }
    let nf = Ideal::new(&big, ideal).normal_form_wrt(&f.rename_into(&big, &xmap), MonomialOrder::Block(n));
    nf.terms().keys().all(|e| e[..n].iter().all(|&d| d == 0))
}

/// The quotient `X/G` of a curve chart with a verified radicial quotient map: every
/// point of `X/G` of residue degree at most 2 has exactly one point above it, of the
/// same residue degree.
pub fn quotient_curve(a: &Coaction) -> Result<InvariantRing> {
    let inv = invariant_ring(a)?;
    let pres = inv.presentation.defining_ideal();
    for y in points_of_degree_dividing(pres, 2)? {
        let fiber = fiber_ideal(&inv, &y.ideal);
        let above = closed_points(&fiber)?;
        if above.len() != 1 || above[0].degree != y.degree {
            return Err(Error::Internal(format!(
                "quotient map is not radicial over {}",
                y.label()
            )));
        }
    }
    Ok(inv)
}

/// `m_y·R` in the ambient ring of `R`.
fn fiber_ideal(inv: &InvariantRing, my: &Ideal) -> Ideal {
    let r = inv.inclusion.target();
    let gens: Vec<MultiPoly> = my.gens().iter().map(|g| inv.inclusion.apply(g)).collect();
    r.defining_ideal().add_gens(&gens)
}

/// Degree data of the quotient map: `[K : K^G] = p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLaw {
    pub exponent: u32,
    pub group_order: u64,
    pub generically_free: bool,
}

/// `m` with `[K : L] = p^m`, read off as the generic fiber length of `q`. Sample
/// points of `X/G` are taken smooth, by increasing residue degree, until two agree on
/// the smallest length seen. Asserts that `p^m` divides `|G|` with equality exactly
/// when the action is generically free.
pub fn inseparability_exponent(a: &Coaction) -> Result<u32> {
    Ok(degree_law(a)?.exponent)
}

pub fn degree_law(a: &Coaction) -> Result<DegreeLaw> {
    let r = a.ring();
    let dim = r.krull_dim();
    if dim != 1 {
        return Err(Error::NotACurve(dim));
    }
    let p = r.ring().field().p() as u64;
    let order = a.group().order();
    let inv = invariant_ring(a)?;
    let y = &inv.presentation;
    let mut lengths: Vec<u64> = Vec::new();
    let mut found = None;
    'outer: for d in 1..=8u32 {
        for pt in points_of_degree_dividing(y.defining_ideal(), d)? {
            if pt.degree != d || minimal_generators_at(&pt.ideal, &pt, y)? != 1 {
                continue;
            }
            let len = fiber_ideal(&inv, &pt.ideal)
                .vector_space_dim()
                .finite()
                .ok_or_else(|| Error::Internal("infinite fiber".into()))?
                / d as u64;
            if lengths.contains(&len) && lengths.iter().all(|&l| l >= len) {
                found = Some(len);
                break 'outer;
            }
            lengths.push(len);
        }
    }
    let len = found.ok_or_else(|| Error::Internal("generic fiber length did not stabilize".into()))?;
    let mut m = 0u32;
    let mut pm = 1u64;
    while pm < len {
        pm *= p;
        m += 1;
    }
    if pm != len || order % pm != 0 {
        return Err(Error::Internal(format!("fiber length {len} does not divide {order}")));
    }
    let nfl = a.non_free_locus();
    let generically_free = !r.defining_ideal().contains_ideal(&nfl);
    if generically_free != (pm == order) {
        return Err(Error::Internal(format!(
            "degree {pm} of the quotient against order {order} contradicts generic freeness {generically_free}"
        )));
    }
    Ok(DegreeLaw {
        exponent: m,
        group_order: order,
        generically_free,
    })
}

/// A `p^m`-th root of `g` in the fraction field of the domain `R`, found as a
/// relation `B(x^q)·g = A(x^q)` with `B(x^q) ≠ 0`; the root is then `A(x)/B(x)`.
pub fn pth_power_root(r: &QuotientRing, g: &MultiPoly, m: u32) -> Option<Fraction> {
    let n = r.nvars();
    let q = (r.ring().field().p() as u64).pow(m);
    let s_names: Vec<String> = (0..n).map(|i| format!("_s{i}")).collect();
    let big: Arc<PolyRing> = r.ring().append(&s_names);
    let xmap: Vec<usize> = (0..n).collect();
    let mut base: Vec<MultiPoly> = r.relations().iter().map(|f| f.rename_into(&big, &xmap)).collect();
    for i in 0..n {
        base.push(MultiPoly::var(&big, i).pow(q).sub(&MultiPoly::var(&big, n + i)));
    }
    let images = vec![g.rename_into(&big, &xmap), MultiPoly::one(&big)];
    let kernel = subring_kernel(&big, &images, &base, n);
    // s_i ↦ x_i gives the root; s_i ↦ x_i^q checks the relation
    let to_x: Vec<MultiPoly> = (0..n)
        .map(|_| MultiPoly::zero(r.ring()))
        .chain((0..n).map(|i| r.var(i)))
        .collect();
    let to_xq: Vec<MultiPoly> = (0..n)
        .map(|_| MultiPoly::zero(r.ring()))
        .chain((0..n).map(|i| r.var(i).pow(q)))
        .collect();
    for v in kernel {
        let b = &v[0];
        if r.is_zero(&b.substitute(r.ring(), &to_xq)) {
            continue;
        }
        let num = r.reduce(&v[1].neg().substitute(r.ring(), &to_x));
        let den = r.reduce(&b.substitute(r.ring(), &to_x));
        if r.is_zero(&num.pow(q).sub(&g.mul(&den.pow(q)))) {
            return Some(Fraction::new(num, den));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::group::{Factor, FiniteGroupScheme};

    fn cusp() -> QuotientRing {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"]);
        QuotientRing::new(Ideal::parse(&r, &["y^2 + x^3"]).unwrap()).unwrap()
    }

    fn group(p: u64, f: &[Factor]) -> Arc<FiniteGroupScheme> {
        Arc::new(FiniteGroupScheme::new(p, f).unwrap())
    }

    fn poly_ring(p: u64, vars: &[&str]) -> QuotientRing {
        QuotientRing::polynomial(&PolyRing::new(PrimeField::new(p).unwrap(), vars))
    }

    #[test]
    fn translation_on_the_line() {
        for p in [2u64, 3] {
            let r = poly_ring(p, &["y"]);
            let a = Coaction::parse(group(p, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
            let inv = invariant_ring(&a).unwrap();
            assert_eq!(inv.generators, vec![r.var(0).pow(p as u64)]);
            assert!(inv.presentation.defining_ideal().is_zero());
        }
    }

    #[test]
    fn shear_on_the_plane() {
        let r = poly_ring(3, &["x", "y"]);
        let a = Coaction::parse(group(3, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T*x")]).unwrap();
        let inv = invariant_ring(&a).unwrap();
        assert_eq!(inv.generators.len(), 2);
        assert!(inv.generators.contains(&r.var(0)));
        assert!(inv.generators.contains(&r.var(1).pow(3)));
    }

    #[test]
    fn cusp_quotients() {
        let r = cusp();
        let a = Coaction::parse(group(2, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
        let inv = quotient_curve(&a).unwrap();
        assert_eq!(inv.generators, vec![r.var(0)]);
        assert_eq!(inseparability_exponent(&a).unwrap(), 1);
        let m = Coaction::parse(group(2, &[Factor::mu(1)]), r.clone(), &[("y", "T*y")]).unwrap();
        let inv = quotient_curve(&m).unwrap();
        assert!(inv.contains(&r.var(0)));
        assert!(inv.contains(&r.var(1).pow(2)));
        assert!(!inv.contains(&r.var(1)));
        let t = Coaction::trivial(Arc::new(FiniteGroupScheme::trivial(PrimeField::new(2).unwrap())), r.clone());
        assert_eq!(inseparability_exponent(&t).unwrap(), 0);
    }

    #[test]
    fn non_generically_free_product() {
        let r = poly_ring(2, &["x"]);
        let g = group(2, &[Factor::alpha(1), Factor::alpha(1)]);
        let a = Coaction::parse(g, r.clone(), &[("x", "x + T1")]).unwrap();
        let law = degree_law(&a).unwrap();
        assert_eq!(law.exponent, 1);
        assert!(!law.generically_free);
    }

    #[test]
    fn roots_of_invariants() {
        let r = cusp();
        // x = (y/x)^2 in the function field of the cusp
        let root = pth_power_root(&r, &r.var(0), 1).unwrap();
        assert!(r.is_zero(&root.num.pow(2).sub(&r.var(0).mul(&root.den.pow(2)))));
        assert!(pth_power_root(&poly_ring(2, &["x"]), &poly_ring(2, &["x"]).var(0), 1).is_none());
    }
}
