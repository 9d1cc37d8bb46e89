//! Ideals, quotient rings and ring maps, with the Gröbner-based ideal calculus.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};


use crate::error::{Error, Result};
use crate::groebner::{groebner, Ctx, EPoly, Mon};
use crate::order::MonomialOrder;
use crate::poly::{same_ring, Exponents, MultiPoly, PolyRing};

pub(crate) fn to_epoly(f: &MultiPoly, comp: u32) -> EPoly {
    f.terms()
        .iter()
        .map(|(e, &c)| {
            (
                Mon {
                    comp,
                    e: e.iter().copied().collect(),
                },
                c,
            )
        })
        .collect()
}

pub(crate) fn from_epoly(ring: &Arc<PolyRing>, f: &EPoly) -> MultiPoly {
    MultiPoly::from_terms(ring, f.iter().map(|(m, c)| (m.e.to_vec(), *c)))
}

/// Splits a module element into one polynomial per component in `0..rank`.
pub(crate) fn split_components(ring: &Arc<PolyRing>, f: &EPoly, rank: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(ring); rank];
    for (m, c) in f {
        out[m.comp as usize].add_term(m.e.to_vec(), *c);
    }
    out
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Debug)]
pub struct Basis {
    pub order: MonomialOrder,
    pub polys: Vec<MultiPoly>,
    engine: Vec<EPoly>,
    ctx: Ctx,
}

impl Basis {
    fn compute(ring: &Arc<PolyRing>, gens: &[MultiPoly], order: MonomialOrder) -> Basis {
        let ctx = Ctx::new(*ring.field(), order, ring.nvars());
        let engine = groebner(&ctx, gens.iter().map(|g| to_epoly(g, 0)).collect());
        let polys = engine.iter().map(|g| from_epoly(ring, g)).collect();
        Basis {
            order,
            polys,
            engine,
            ctx,
        }
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let ctx = &self.ctx;
        let r = ctx.reduce(ctx.normalize(to_epoly(f, 0)), &self.engine);
        from_epoly(f.ring(), &r)
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    /// Leading exponent of each basis element.
    pub fn leading_exponents(&self) -> Vec<Exponents> {
        self.engine.iter().map(|g| g[0].0.e.to_vec()).collect()
    }
}

/// Finitely generated ideal of a polynomial ring. The degrevlex basis is computed
/// once on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly>,
    cache: OnceLock<Arc<Basis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<MultiPoly>) -> Self {
        for g in &gens {
            assert!(same_ring(g.ring(), ring), "generator from another ring");
        }
        let gens = if gens.is_empty() {
            vec![MultiPoly::zero(ring)]
        } else {
            gens
        };
        Ideal {
            ring: ring.clone(),
            gens,
            cache: OnceLock::new(),
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| MultiPoly::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![])
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![MultiPoly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    fn nonzero_gens(&self) -> Vec<MultiPoly> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    /// The cached degrevlex basis.
    pub fn basis(&self) -> Arc<Basis> {
        self.cache
            .get_or_init(|| {
                Arc::new(Basis::compute(
                    &self.ring,
                    &self.nonzero_gens(),
                    MonomialOrder::DegRevLex,
                ))
            })
            .clone()
    }

    pub fn basis_for(&self, order: MonomialOrder) -> Arc<Basis> {
        if order == MonomialOrder::DegRevLex {
            return self.basis();
        }
        Arc::new(Basis::compute(&self.ring, &self.nonzero_gens(), order))
    }

    /// Reduced Gröbner basis for `order`.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Vec<MultiPoly> {
        self.basis_for(order).polys.clone()
    }

    /// Same ideal, generated by its reduced degrevlex basis.
    pub fn minimalized(&self) -> Ideal {
        let b = self.basis();
        let id = Ideal::new(&self.ring, b.polys.clone());
        let _ = id.cache.set(b);
        id
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        self.basis().reduce(f)
    }

    pub fn normal_form_wrt(&self, f: &MultiPoly, order: MonomialOrder) -> MultiPoly {
        self.basis_for(order).reduce(f)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, o: &Ideal) -> bool {
        o.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, o: &Ideal) -> bool {
        self.basis().polys == o.basis().polys
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn add(&self, o: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_gens(&self, extra: &[MultiPoly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn mul(&self, o: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in self.nonzero_gens() {
            for b in o.nonzero_gens() {
                g.push(a.mul(&b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// `self^s`; `s = 0` gives the unit ideal.
    pub fn pow(&self, s: usize) -> Ideal {
        let mut r = Ideal::unit(&self.ring);
        for _ in 0..s {
            r = r.mul(self);
        }
        r
    }

    /// Standard monomials of the degrevlex basis, if finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Exponents>> {
        let b = self.basis();
        if b.is_unit() {
            return Some(Vec::new());
        }
        let n = self.ring.nvars();
        let leads = b.leading_exponents();
        // Every variable needs a pure power among the leading monomials.
        let mut bounds = vec![0u32; n];
        for (i, bound) in bounds.iter_mut().enumerate() {
            let pure = leads
                .iter()
                .filter(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0) && e[i] > 0)
                .map(|e| e[i])
                .min()?;
            *bound = pure;
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if !leads
                .iter()
                .any(|l| l.iter().zip(&cur).all(|(a, b)| a <= b))
            {
                out.push(cur.clone());
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Dimension of `ring / self` over `F_p`.
    pub fn vector_space_dim(&self) -> Dim {
        match self.standard_monomials() {
            Some(v) => Dim::Finite(v.len() as u64),
            None => Dim::Infinite,
        }
    }

    /// Krull dimension of `ring / self` (`None` for the unit ideal), from the largest
    /// set of variables independent modulo the leading-term ideal.
    pub fn krull_dim(&self) -> Option<usize> {
        let b = self.basis();
        if b.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let leads: Vec<Vec<usize>> = b
            .leading_exponents()
            .iter()
            .map(|e| (0..n).filter(|&i| e[i] > 0).collect())
            .collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = leads
                .iter()
                .all(|l| !l.iter().all(|&i| mask & (1 << i) != 0));
            if independent {
                best = size;
            }
        }
        Some(best)
    }

    /// Generators of `self ∩ F_p[x_k, ..., x_{n-1}]`, as polynomials of this ring.
    pub fn eliminate_first(&self, k: usize) -> Vec<MultiPoly> {
        let b = self.basis_for(MonomialOrder::Block(k));
        b.polys
            .iter()
            .filter(|g| g.support_vars().iter().all(|&i| i >= k))
            .cloned()
            .collect()
    }

    pub fn intersect(&self, o: &Ideal) -> Ideal {
        let t = "_t".to_string();
        let big = self.ring.prepend(&[t]);
        let tvar = MultiPoly::var(&big, 0);
        let one_minus_t = MultiPoly::one(&big).sub(&tvar);
        let mut gens = Vec::new();
        for g in self.nonzero_gens() {
            gens.push(tvar.mul(&g.embed(&big)));
        }
        for g in o.nonzero_gens() {
            gens.push(one_minus_t.mul(&g.embed(&big)));
        }
        let elim = Ideal::new(&big, gens).eliminate_first(1);
        let back: Vec<usize> = (0..big.nvars()).map(|i| i.saturating_sub(1)).collect();
        Ideal::new(
            &self.ring,
            elim.iter().map(|g| g.rename_into(&self.ring, &back)).collect(),
        )
    }

    /// `(self : (g))`.
    pub fn quotient_by(&self, g: &MultiPoly) -> Ideal {
        if g.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![g.clone()]));
        let gens = inter
            .gens
            .iter()
            .map(|h| {
                h.div_exact(g)
                    .expect("element of (g) ∩ I is divisible by g")
            })
            .collect();
        Ideal::new(&self.ring, gens).minimalized()
    }

    /// `(self : other) = { f : f·other ⊆ self }`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        let gens = other.nonzero_gens();
        if gens.is_empty() {
            return Ideal::unit(&self.ring);
        }
        let mut acc: Option<Ideal> = None;
        for g in gens {
            let q = self.quotient_by(&g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q).minimalized(),
            });
        }
        acc.unwrap()
    }

    /// `(self : other^∞)` and the least `s ≥ 1` with `(self : other^s) = (self : other^(s+1))`.
    pub fn saturate(&self, other: &Ideal) -> (Ideal, usize) {
        let mut cur = self.quotient(other);
        let mut s = 1;
        loop {
            let next = cur.quotient(other);
            if next.same_as(&cur) {
                return (cur, s);
            }
            cur = next;
            s += 1;
        }
    }

    /// Saturation by a single element, via `I + (1 - t·g)` elimination.
    pub fn saturate_by(&self, g: &MultiPoly) -> Ideal {
        let t = "_t".to_string();
        let big = self.ring.prepend(&[t]);
        let tvar = MultiPoly::var(&big, 0);
        let mut gens: Vec<MultiPoly> = self.nonzero_gens().iter().map(|h| h.embed(&big)).collect();
        gens.push(MultiPoly::one(&big).sub(&tvar.mul(&g.embed(&big))));
        let elim = Ideal::new(&big, gens).eliminate_first(1);
        let back: Vec<usize> = (0..big.nvars()).map(|i| i.saturating_sub(1)).collect();
        Ideal::new(
            &self.ring,
            elim.iter().map(|h| h.rename_into(&self.ring, &back)).collect(),
        )
        .minimalized()
    }

    /// Cofactors `c` with `f = Σ c_j·gens_j` modulo this ideal, if `f ∈ (gens) + self`.
    pub fn lift(&self, f: &MultiPoly, gens: &[MultiPoly]) -> Option<Vec<MultiPoly>> {
        crate::module::lift(&self.ring, f, gens, &self.nonzero_gens())
    }
}

/// `F_p[x] / J` for a proper ideal `J`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ideal: Ideal,
}

impl QuotientRing {
    pub fn new(ideal: Ideal) -> Result<Self> {
        if ideal.is_unit() {
            return Err(Error::UnitQuotient);
        }
        Ok(QuotientRing { ideal })
    }

    /// The polynomial ring itself.
    pub fn polynomial(ring: &Arc<PolyRing>) -> Self {
        QuotientRing {
            ideal: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &MultiPoly) -> bool {
        self.ideal.contains(f)
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.ring(), i)
    }

    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        MultiPoly::parse(self.ring(), s)
    }

    /// The ideal of this ring generated by `gens`, as an ideal of the ambient
    /// polynomial ring containing the defining ideal.
    pub fn ideal(&self, gens: Vec<MultiPoly>) -> Ideal {
        self.ideal.add_gens(&gens).minimalized()
    }

    pub fn vector_space_dim(&self) -> Dim {
        self.ideal.vector_space_dim()
    }

    pub fn krull_dim(&self) -> usize {
        self.ideal.krull_dim().expect("proper ideal")
    }

    /// Generators of the defining ideal, omitting zero.
    pub fn relations(&self) -> Vec<MultiPoly> {
        self.ideal.nonzero_gens()
    }
}

/// `F_p`-dimension of `R/I` for a quotient ring `R` and an ideal `I` of its ambient ring.
pub fn vector_space_dim(r: &QuotientRing) -> Dim {
    r.vector_space_dim()
}

/// A ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: QuotientRing,
    target: QuotientRing,
    images: Vec<MultiPoly>,
}

impl RingMap {
    pub fn new(source: QuotientRing, target: QuotientRing, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        let images: Vec<MultiPoly> = images.iter().map(|g| target.reduce(g)).collect();
        let map = RingMap {
            source,
            target,
            images,
        };
        for f in map.source.relations() {
            if !map.target.is_zero(&map.apply(&f)) {
                return Err(Error::InvalidRingMap(f.to_string()));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &QuotientRing {
        &self.source
    }

    pub fn target(&self) -> &QuotientRing {
        &self.target
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let t = &self.target;
        f.substitute_with(t.ring(), &self.images, &|p| t.reduce(&p))
    }

    /// `ker(φ)` as an ideal of the source's ambient ring (it contains the source relations).
    pub fn kernel(&self) -> Ideal {
        kernel_of_ring_map(self)
    }
}

/// Kernel of a ring map, by block elimination of the target variables from the graph ideal.
pub fn kernel_of_ring_map(phi: &RingMap) -> Ideal {
    let src = phi.source.ring();
    let tgt = phi.target.ring();
    let nt = tgt.nvars();
    let mut names: Vec<String> = tgt.vars().iter().map(|v| format!("_t_{v}")).collect();
    names.extend(src.vars().iter().cloned());
    let big = PolyRing::from_names(*src.field(), names);
    let tmap: Vec<usize> = (0..nt).collect();
    let smap: Vec<usize> = (nt..nt + src.nvars()).collect();
    let mut gens: Vec<MultiPoly> = phi
        .target
        .relations()
        .iter()
        .map(|g| g.rename_into(&big, &tmap))
        .collect();
    for (i, img) in phi.images.iter().enumerate() {
        let u = MultiPoly::var(&big, nt + i);
        gens.push(u.sub(&img.rename_into(&big, &tmap)));
    }
    let elim = Ideal::new(&big, gens).eliminate_first(nt);
    let back: Vec<usize> = (0..big.nvars())
        .map(|i| if i >= nt { i - nt } else { 0 })
        .collect();
    let _ = smap;
    let mut kgens: Vec<MultiPoly> = elim.iter().map(|g| g.rename_into(src, &back)).collect();
    kgens.extend(phi.source.relations());
    Ideal::new(src, kgens).minimalized()
}

/// The set of distinct exponents in a list of polynomials.
pub(crate) fn exponent_support(polys: &[MultiPoly]) -> BTreeSet<Exponents> {
    polys
        .iter()
        .flat_map(|p| p.terms().keys().cloned())
        .collect()
}

/// Remainder of `f` under plain multivariate division by `divisors` for `order`.
/// Written without the engine so tests can use it as an independent check.
pub fn divide_remainder(f: &MultiPoly, divisors: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
    let k = *f.field();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(f.ring());
    let leads: Vec<(Exponents, u32)> = divisors
        .iter()
        .filter_map(|d| d.leading(order))
        .collect();
    while let Some((lm, lc)) = p.leading(order) {
        let hit = leads
            .iter()
            .zip(divisors.iter().filter(|d| !d.is_zero()))
            .find(|((e, _), _)| e.iter().zip(&lm).all(|(a, b)| a <= b));
        match hit {
            Some(((e, c), d)) => {
                let shift: Exponents = lm.iter().zip(e).map(|(a, b)| a - b).collect();
                p = p.sub(&d.mul_monomial(&shift, k.mul(lc, k.inv(*c))));
            }
            None => {
                rem.add_term(lm.clone(), lc);
                p.add_term(lm, k.neg(lc));
            }
        }
    }
    rem
}

/// Buchberger's criterion: every S-polynomial of `basis` divides to zero.
pub fn satisfies_buchberger(basis: &[MultiPoly], order: MonomialOrder) -> bool {
    let k = match basis.first() {
        Some(b) => *b.field(),
        None => return true,
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (Some((ei, ci)), Some((ej, cj))) = (basis[i].leading(order), basis[j].leading(order))
            else {
                continue;
            };
            let l: Exponents = ei.iter().zip(&ej).map(|(a, b)| *a.max(b)).collect();
            let si: Exponents = l.iter().zip(&ei).map(|(a, b)| a - b).collect();
            let sj: Exponents = l.iter().zip(&ej).map(|(a, b)| a - b).collect();
            let s = basis[i]
                .mul_monomial(&si, k.inv(ci))
                .sub(&basis[j].mul_monomial(&sj, k.inv(cj)));
            if !divide_remainder(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(PrimeField::new(p).unwrap(), vars)
    }

    fn ideal(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn basis_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(
            ideal(&r, &["x", "y"]).groebner_basis(MonomialOrder::Lex).len(),
            2
        );
        let unit = ideal(&r, &["x*y + 1", "x"]);
        assert!(unit.is_unit());

        // y > x lex over F_2
        let r = ring(2, &["y", "x"]);
        let i = ideal(&r, &["y^2 + x^3", "x*y"]);
        let gb = i.groebner_basis(MonomialOrder::Lex);
        let expected: Vec<MultiPoly> = ["x^4", "y*x", "y^2 + x^3"]
            .iter()
            .map(|s| MultiPoly::parse(&r, s).unwrap())
            .collect();
        for e in &expected {
            assert!(gb.contains(e), "{e} missing from {gb:?}");
        }
        assert_eq!(gb.len(), 3);
        assert!(satisfies_buchberger(&gb, MonomialOrder::Lex));
        for g in i.gens() {
            assert!(divide_remainder(g, &gb, MonomialOrder::Lex).is_zero());
        }
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, &["x", "y"]);
        let p = |s: &str| MultiPoly::parse(&r, s).unwrap();
        let i = ideal(&r, &["x"]);
        assert!(i.normal_form(&p("x^3")).is_zero());
        assert_eq!(i.normal_form(&p("y")), p("y"));
        let r2 = ring(2, &["y", "x"]);
        let j = ideal(&r2, &["y^2 + x^3", "x*y"]);
        let f = MultiPoly::parse(&r2, "y^2").unwrap();
        assert_eq!(
            j.normal_form_wrt(&f, MonomialOrder::Lex),
            MultiPoly::parse(&r2, "x^3").unwrap()
        );
    }

    #[test]
    fn quotient_examples() {
        let r = ring(3, &["x", "y"]);
        let q = ideal(&r, &["x*y"]).quotient(&ideal(&r, &["x"]));
        assert!(q.same_as(&ideal(&r, &["y"])));
        let q = ideal(&r, &["x"]).quotient(&ideal(&r, &["1"]));
        assert!(q.same_as(&ideal(&r, &["x"])));
        let q = ideal(&r, &["x^2"]).quotient(&ideal(&r, &["x"]));
        assert!(q.same_as(&ideal(&r, &["x"])));
    }

    #[test]
    fn saturation_examples() {
        let r = ring(3, &["x", "y"]);
        let (s, e) = ideal(&r, &["x^2*y"]).saturate(&ideal(&r, &["x"]));
        assert!(s.same_as(&ideal(&r, &["y"])));
        assert_eq!(e, 2);
        let (s, e) = ideal(&r, &["x"]).saturate(&ideal(&r, &["y"]));
        assert!(s.same_as(&ideal(&r, &["x"])));
        assert_eq!(e, 1);
        let (s, e) = ideal(&r, &["x^2"]).saturate(&ideal(&r, &["x"]));
        assert!(s.is_unit());
        assert_eq!(e, 2);
        let by = ideal(&r, &["x^2*y"]).saturate_by(&MultiPoly::var(&r, 0));
        assert!(by.same_as(&ideal(&r, &["y"])));
    }

    #[test]
    fn kernel_examples() {
        let k = PrimeField::new(5).unwrap();
        let src = PolyRing::new(k, &["u", "v"]);
        let tgt = PolyRing::new(k, &["t"]);
        let t = MultiPoly::var(&tgt, 0);
        let phi = RingMap::new(
            QuotientRing::polynomial(&src),
            QuotientRing::polynomial(&tgt),
            vec![t.pow(2), t.pow(3)],
        )
        .unwrap();
        let ker = phi.kernel();
        let cusp = MultiPoly::parse(&src, "u^3 - v^2").unwrap();
        assert!(ker.same_as(&Ideal::new(&src, vec![cusp])));
        for g in ker.gens() {
            assert!(phi.apply(g).is_zero());
        }

        let id = RingMap::new(
            QuotientRing::polynomial(&src),
            QuotientRing::polynomial(&src),
            vec![MultiPoly::var(&src, 0), MultiPoly::var(&src, 1)],
        )
        .unwrap();
        assert!(id.kernel().is_zero() || id.kernel().gens().iter().all(|g| g.is_zero()));

        let u = PolyRing::new(k, &["u"]);
        let point = QuotientRing::new(Ideal::new(&tgt, vec![t.clone()])).unwrap();
        let phi = RingMap::new(QuotientRing::polynomial(&u), point, vec![t]).unwrap();
        assert!(phi.kernel().same_as(&Ideal::new(&u, vec![MultiPoly::var(&u, 0)])));
    }

    #[test]
    fn ring_map_checks_relations() {
        let k = PrimeField::new(2).unwrap();
        let r = PolyRing::new(k, &["x"]);
        let src = QuotientRing::new(Ideal::parse(&r, &["x^2"]).unwrap()).unwrap();
        let bad = RingMap::new(src, QuotientRing::polynomial(&r), vec![MultiPoly::var(&r, 0)]);
        assert!(matches!(bad, Err(Error::InvalidRingMap(_))));
    }

    #[test]
    fn dimensions() {
        let r = ring(2, &["T"]);
        assert_eq!(ideal(&r, &["T^4"]).vector_space_dim(), Dim::Finite(4));
        let r = ring(3, &["T"]);
        assert_eq!(ideal(&r, &["T^9 - 1"]).vector_space_dim(), Dim::Finite(9));
        assert_eq!(Ideal::zero(&r).vector_space_dim(), Dim::Infinite);
        let r = ring(2, &["x", "y"]);
        assert_eq!(ideal(&r, &["x", "y^2"]).vector_space_dim(), Dim::Finite(2));
        assert_eq!(ideal(&r, &["y^2 + x^3"]).krull_dim(), Some(1));
        assert_eq!(ideal(&r, &["x", "y"]).krull_dim(), Some(0));
        assert_eq!(Ideal::zero(&r).krull_dim(), Some(2));
    }

    #[test]
    fn lift_through_quotient() {
        let r = ring(2, &["x", "y"]);
        let p = |s: &str| MultiPoly::parse(&r, s).unwrap();
        // in F_2[x,y]/(y^2 + x^3), y^2 is a multiple of x
        let base = ideal(&r, &["y^2 + x^3"]);
        let c = base.lift(&p("y^2"), &[p("x")]).unwrap();
        assert!(base.contains(&c[0].mul(&p("x")).sub(&p("y^2"))));
        assert!(base.lift(&p("y"), &[p("x")]).is_none());
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"]));
        assert!(i.same_as(&ideal(&r, &["x*y"])));
    }
}
