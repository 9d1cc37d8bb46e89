//! G-normality of curves, G-normalization by orbit blow-ups and by G-integral
//! closure, classical normalization, tangent ideals, and local models at fixed points.

use std::collections::BTreeSet;

use crate::coaction::Coaction;
use crate::curve::{orbit_ideal, ChartActions, CurveModel};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::fraction::{AffineRingModel, Fraction};
use crate::ideal::{Ideal, QuotientRing, RingMap};
use crate::linalg::FpMatrix;
use crate::matrix::fitting_ideal;
use crate::order::MonomialOrder;
use crate::points::{
    closed_points, local_length, minimal_generators_at, radical_zero_dim, FiniteAlgebra, PointData,
};
use crate::poly::{Exponents, MultiPoly, PolyRing};
use crate::quotient::quotient_curve;

/// Largest power of the orbit ideal tried when searching for a reduction element.
pub const S_MAX: usize = 4;

/// Ideal of the singular locus of a curve `R`: the relations plus `Fitt_1(Ω_R)`.
pub fn singular_ideal(r: &QuotientRing) -> Ideal {
    let n = r.nvars();
    let rows: Vec<Vec<MultiPoly>> = r
        .relations()
        .iter()
        .map(|f| (0..n).map(|i| f.derivative(i)).collect())
        .collect();
    fitting_ideal(&rows, n, 1, r).add(r.defining_ideal())
}

/// Closed singular points of a curve `R`.
pub fn singular_points_of(r: &QuotientRing) -> Vec<PointData> {
    let s = singular_ideal(r);
    if s.is_unit() {
        return Vec::new();
    }
    closed_points(&s).expect("a curve has finitely many singular points")
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub chart: String,
    pub point: PointData,
    pub orbit: Ideal,
    pub count: u64,
}

#[derive(Clone, Debug)]
pub struct GNormalityVerdict {
    pub is_g_normal: bool,
    pub witnesses: Vec<Witness>,
    pub fast_path_used: bool,
}

fn verdict_at(a: &Coaction, chart: &str, points: &[PointData]) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for x in points {
        let orbit = orbit_ideal(a, x)?;
        let count = minimal_generators_at(&orbit, x, a.ring())?;
        if count != 1 {
            out.push(Witness {
                chart: chart.to_string(),
                point: x.clone(),
                orbit: orbit.minimalized(),
                count,
            });
        }
    }
    Ok(out)
}

// Order-p criterion: X/G normal and X normal at every fixed point.
fn order_p_criterion(a: &Coaction, singular: &[PointData]) -> Result<bool> {
    let fixed = a.fixed_subscheme();
    if singular.iter().any(|x| x.ideal.contains_ideal(&fixed)) {
        return Ok(false);
    }
    let inv = quotient_curve(a)?;
    Ok(singular_points_of(&inv.presentation).is_empty())
}

/// G-normality of an affine curve: the orbit ideal of every singular point must be
/// locally principal. For `|G| = p` the order-`p` criterion is evaluated as well and
/// must agree.
pub fn is_g_normal(a: &Coaction) -> Result<GNormalityVerdict> {
    let singular = singular_points_of(a.ring());
    let witnesses = verdict_at(a, crate::curve::AFFINE_CHART, &singular)?;
    let is_g_normal = witnesses.is_empty();
    let fast = a.group().order() == a.group().field().p() as u64;
    if fast && order_p_criterion(a, &singular)? != is_g_normal {
        return Err(Error::Internal("order-p criterion disagrees with orbit ideals".into()));
    }
    Ok(GNormalityVerdict {
        is_g_normal,
        witnesses,
        fast_path_used: fast,
    })
}

/// G-normality of a projective curve from its chart actions; each singular point is
/// tested in the first chart containing it.
pub fn is_g_normal_projective(curve: &CurveModel, actions: &ChartActions) -> Result<GNormalityVerdict> {
    let mut witnesses = Vec::new();
    let mut fast_used = false;
    for chart in curve.charts() {
        let pts: Vec<PointData> = curve
            .singular_points()
            .into_iter()
            .filter(|(c, _)| *c == chart.name)
            .map(|(_, p)| p)
            .collect();
        let a = actions
            .get(&chart.name)
            .ok_or_else(|| Error::RingMismatch(format!("no action given on chart {}", chart.name)))?;
        let w = verdict_at(a, &chart.name, &pts)?;
        if a.group().order() == a.group().field().p() as u64 {
            fast_used = true;
            let all = singular_points_of(a.ring());
            if order_p_criterion(a, &all)? != verdict_at(a, &chart.name, &all)?.is_empty() {
                return Err(Error::Internal("order-p criterion disagrees with orbit ideals".into()));
            }
        }
        witnesses.extend(w);
    }
    Ok(GNormalityVerdict {
        is_g_normal: witnesses.is_empty(),
        witnesses,
        fast_path_used: fast_used,
    })
}

/// Names `u1, u2, ...` not yet used by the model or the group.
fn fresh_names(model: &AffineRingModel, a: &Coaction, count: usize) -> Vec<String> {
    let mut taken: BTreeSet<String> = model.ring().ring().vars().iter().cloned().collect();
    taken.extend(a.group().t_names());
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < count {
        let name = format!("u{i}");
        if !taken.contains(&name) {
            out.push(name);
        }
        i += 1;
    }
    out
}

fn divide(n: &Fraction, d: &Fraction, base: &QuotientRing) -> Fraction {
    Fraction::new(base.reduce(&n.num.mul(&d.den)), base.reduce(&n.den.mul(&d.num)))
}

/// `R[h_1/a, ..., h_t/a]` presented as `F_p[x, u]/((J + (a u_j - h_j)) : a^∞)`.
fn adjoin_fractions(
    model: &AffineRingModel,
    a: &MultiPoly,
    hs: &[MultiPoly],
    names: Vec<String>,
) -> Result<AffineRingModel> {
    let r = model.ring();
    let n = r.nvars();
    let big = r.ring().append(&names);
    let xmap: Vec<usize> = (0..n).collect();
    let a_big = a.rename_into(&big, &xmap);
    let mut gens: Vec<MultiPoly> = r.relations().iter().map(|f| f.rename_into(&big, &xmap)).collect();
    for (j, h) in hs.iter().enumerate() {
        gens.push(a_big.mul(&MultiPoly::var(&big, n + j)).sub(&h.rename_into(&big, &xmap)));
    }
    let ideal = Ideal::new(&big, gens).saturate_by(&a_big).minimalized();
    let af = model.to_fraction(a);
    let mut extras = model.extras().to_vec();
    for h in hs {
        extras.push(divide(&model.to_fraction(h), &af, model.base()));
    }
    AffineRingModel::new(QuotientRing::new(ideal)?, model.base().clone(), extras)
}

/// Whether every variable after the first `old` is integral over the subring generated
/// by the first `old`: for a block order with the new variables first, each new
/// variable must have a pure power as a leading monomial.
pub fn is_finite_over(r: &QuotientRing, old: usize) -> bool {
    let n = r.nvars();
    let t = n - old;
    if t == 0 {
        return true;
    }
    let perm: Vec<usize> = (0..n).map(|i| if i < old { i + t } else { i - old }).collect();
    let names: Vec<String> = (0..n)
        .map(|i| r.ring().vars()[if i < t { old + i } else { i - t }].clone())
        .collect();
    let moved = PolyRing::from_names(*r.ring().field(), names);
    let gens: Vec<MultiPoly> = r.relations().iter().map(|f| f.rename_into(&moved, &perm)).collect();
    let basis = Ideal::new(&moved, gens).groebner_basis(MonomialOrder::Block(t));
    (0..t).all(|j| {
        basis.iter().any(|g| {
            let (lm, _) = g.leading(MonomialOrder::Block(t)).unwrap();
            lm[j] > 0 && lm.iter().enumerate().all(|(i, &d)| i == j || d == 0)
        })
    })
}

/// Generators of `R` as a module over its planar base: monomials in the extra
/// variables below the pure-power leading monomials of a block order.
pub fn module_generators(model: &AffineRingModel) -> Vec<Fraction> {
    let r = model.ring();
    let n = r.nvars();
    let old = model.base().nvars();
    let t = n - old;
    if t == 0 {
        return vec![Fraction::from_poly(MultiPoly::one(model.base().ring()))];
    }
    let perm: Vec<usize> = (0..n).map(|i| if i < old { i + t } else { i - old }).collect();
    let names: Vec<String> = (0..n)
        .map(|i| r.ring().vars()[if i < t { old + i } else { i - t }].clone())
        .collect();
    let moved = PolyRing::from_names(*r.ring().field(), names);
    let gens: Vec<MultiPoly> = r.relations().iter().map(|f| f.rename_into(&moved, &perm)).collect();
    let order = MonomialOrder::Block(t);
    let basis = Ideal::new(&moved, gens).groebner_basis(order);
    let pure: Vec<Exponents> = basis
        .iter()
        .map(|g| g.leading(order).unwrap().0)
        .filter(|lm| lm[t..].iter().all(|&d| d == 0))
        .map(|lm| lm[..t].to_vec())
        .collect();
    let bounds: Vec<u32> = (0..t)
        .map(|j| {
            pure.iter()
                .filter(|e| e.iter().enumerate().all(|(i, &d)| i == j || d == 0))
                .map(|e| e[j])
                .min()
                .expect("finite over the base")
        })
        .collect();
    let mut exps: Vec<Exponents> = vec![Exponents::new()];
    for &b in &bounds {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (0..b).map(move |d| {
                    let mut e = e.clone();
                    e.push(d);
                    e
                })
            })
            .collect();
    }
    exps.retain(|e| !pure.iter().any(|lm| lm.iter().zip(e).all(|(a, b)| a <= b)));
    exps.into_iter()
        .map(|e| {
            let mut full = vec![0u32; old];
            full.extend(e);
            model.to_fraction(&MultiPoly::monomial(r.ring(), full, 1))
        })
        .collect()
}

/// A nonzero `D` in the base with `D·big ⊆ base`.
fn conductor_element(gens: &[Fraction], base: &QuotientRing) -> MultiPoly {
    let mut d = MultiPoly::one(base.ring());
    for g in gens {
        if !g.den.is_constant() {
            d = base.reduce(&d.mul(&g.den));
        }
    }
    d
}

/// `dim_{F_p}(big/small)` for models over the same base with `small ⊆ big`.
pub fn delta_length(big: &AffineRingModel, small: &AffineRingModel) -> Result<u64> {
    let gens = module_generators(big);
    let base = big.base();
    let d = conductor_element(&gens, base);
    let k = base.nvars();
    let map: Vec<usize> = (0..k).collect();
    let big_mod = big
        .ring()
        .defining_ideal()
        .add_gens(&[d.rename_into(big.ring().ring(), &map)]);
    let mut in_small = Vec::new();
    for g in &gens {
        let q = Fraction::new(base.reduce(&g.num.mul(&d)), g.den.clone());
        let e = small
            .element_of(&q)
            .ok_or_else(|| Error::Internal(format!("{q} is not in the smaller ring")))?;
        in_small.push(e);
    }
    let small_mod = small.ring().defining_ideal().add_gens(&in_small);
    let a = big_mod.vector_space_dim().finite().ok_or_else(|| Error::NotACurve(2))?;
    let b = small_mod.vector_space_dim().finite().ok_or_else(|| Error::NotACurve(2))?;
    Ok(a - b)
}

/// Integral closure by Grauert–Remmert: with `J` the radical of the singular ideal and
/// `a ∈ J` nonzero, replace `R` by `(aJ : J)/a` until it stops growing.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub model: AffineRingModel,
    pub rounds: usize,
    pub module_generators: Vec<Fraction>,
}

pub fn normalize(model: &AffineRingModel) -> Result<Normalization> {
    let mut cur = model.clone();
    let mut rounds = 0;
    loop {
        let r = cur.ring();
        let sing = singular_ideal(r);
        if sing.is_unit() {
            break;
        }
        let rad = radical_zero_dim(&sing);
        let mut cands: Vec<MultiPoly> = rad.gens().iter().map(|g| r.reduce(g)).filter(|g| !g.is_zero()).collect();
        cands.sort_by(|f, g| f.total_degree().cmp(&g.total_degree()).then_with(|| f.to_string().cmp(&g.to_string())));
        let a = cands.first().cloned().ok_or_else(|| Error::Internal("empty singular radical".into()))?;
        let num = rad.mul(&Ideal::new(r.ring(), vec![a.clone()])).add(r.defining_ideal());
        let colon = num.quotient(&rad).minimalized();
        let principal = r.defining_ideal().add_gens(&[a.clone()]);
        let hs: Vec<MultiPoly> = colon
            .gens()
            .iter()
            .map(|h| r.reduce(h))
            .filter(|h| !principal.contains(h))
            .collect();
        if hs.is_empty() {
            break;
        }
        let names = fresh_names_plain(&cur, hs.len());
        cur = adjoin_fractions(&cur, &a, &hs, names)?;
        rounds += 1;
        if rounds > 64 {
            return Err(Error::StepLimitExceeded(64));
        }
    }
    let gens = module_generators(&cur);
    Ok(Normalization {
        model: cur,
        rounds,
        module_generators: gens,
    })
}

fn fresh_names_plain(model: &AffineRingModel, count: usize) -> Vec<String> {
    let taken: BTreeSet<&String> = model.ring().ring().vars().iter().collect();
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < count {
        let name = format!("v{i}");
        if !taken.contains(&name) {
            out.push(name);
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug)]
pub struct BlowUpStep {
    pub source: AffineRingModel,
    pub center: Ideal,
    pub s: usize,
    pub reduction: MultiPoly,
    pub target: AffineRingModel,
    pub lifted: Coaction,
    pub inclusion: RingMap,
    pub new_variables: Vec<(String, Fraction)>,
}

/// `F_p`-basis of the invariants in `I^s` spanned by products of invariant-ring
/// generators of degree at most `bound`.
fn invariant_candidates(a: &Coaction, is: &Ideal, bound: u32) -> Result<Vec<MultiPoly>> {
    let r = a.ring();
    let inv = crate::quotient::invariant_ring(a)?;
    let g = &inv.generators;
    let mut prods: Vec<MultiPoly> = vec![MultiPoly::one(r.ring())];
    let mut frontier = prods.clone();
    loop {
        let mut next = Vec::new();
        for f in &frontier {
            for h in g {
                let fh = r.reduce(&f.mul(h));
                if fh.total_degree().unwrap_or(0) <= bound && !prods.contains(&fh) && !next.contains(&fh) {
                    next.push(fh);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        prods.extend(next.iter().cloned());
        frontier = next;
    }
    let alg = FiniteAlgebra::new(is).ok_or(Error::NotZeroDimensional)?;
    let k = *r.ring().field();
    let mut m = FpMatrix::zeros(alg.dim(), prods.len());
    for (j, f) in prods.iter().enumerate() {
        for (i, c) in alg.coords(f).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let mut out: Vec<MultiPoly> = m
        .kernel(&k)
        .into_iter()
        .map(|v| {
            let mut f = MultiPoly::zero(r.ring());
            for (c, p) in v.iter().zip(&prods) {
                if *c != 0 {
                    f = f.add(&p.scale(*c));
                }
            }
            r.reduce(&f)
        })
        .filter(|f| !f.is_zero())
        .collect();
    out.sort_by(|f, g| f.total_degree().cmp(&g.total_degree()).then_with(|| f.to_string().cmp(&g.to_string())));
    Ok(out)
}

fn reduces(a: &MultiPoly, is: &Ideal, r: &QuotientRing) -> bool {
    let target = is.mul(&Ideal::new(r.ring(), vec![a.clone()])).add(r.defining_ideal());
    let i2s = is.mul(is);
    i2s.gens().iter().all(|g| target.contains(g))
}

/// Blows up the G-stable ideal `I`: finds `s ≤ S_MAX` and an invariant `a ∈ I^s` with
/// `I^{2s} ⊆ a·I^s`, presents `R[I^s/a]`, and lifts the coaction.
pub fn blow_up_orbit(model: &AffineRingModel, i: &Ideal, a: &Coaction) -> Result<BlowUpStep> {
    let r = model.ring();
    let i = i.add(r.defining_ideal()).minimalized();
    if !a.is_stable(&i) {
        return Err(Error::NotGStable(i.to_string()));
    }
    let mut tried: Vec<String> = Vec::new();
    let mut found = None;
    'search: for s in 1..=S_MAX {
        let is = i.pow(s).add(r.defining_ideal()).minimalized();
        let mut cands: Vec<MultiPoly> = Vec::new();
        for g in i.gens() {
            let g = r.reduce(g);
            if g.is_zero() {
                continue;
            }
            let n = a.norm_invariant(&g)?;
            if !n.is_zero() && is.contains(&n) && !cands.contains(&n) {
                cands.push(n);
            }
        }
        let bound = is.gens().iter().filter_map(|g| g.total_degree()).max().unwrap_or(1) + 2;
        for c in invariant_candidates(a, &is, bound)? {
            if !cands.contains(&c) {
                cands.push(c);
            }
        }
        for c in cands {
            if !a.is_invariant(&c) {
                continue;
            }
            tried.push(format!("s={s}: {c}"));
            if reduces(&c, &is, r) {
                found = Some((s, c, is));
                break 'search;
            }
        }
    }
    let (s, red, is) = found.ok_or(Error::NoInvariantReduction { s_max: S_MAX, tried })?;

    let principal = r.defining_ideal().add_gens(&[red.clone()]);
    let all: Vec<MultiPoly> = is.gens().iter().map(|g| r.reduce(g)).filter(|g| !g.is_zero()).collect();
    let kept: Vec<MultiPoly> = all.iter().filter(|g| !principal.contains(g)).cloned().collect();
    let names = fresh_names(model, a, kept.len());
    let target = if kept.is_empty() {
        model.clone()
    } else {
        adjoin_fractions(model, &red, &kept, names.clone())?
    };
    let n_old = r.nvars();
    if !is_finite_over(target.ring(), n_old) {
        return Err(Error::Internal("blow-up is not finite".into()));
    }
    let tr = target.ring();
    // g/a for every generator of I^s, as an element of the target ring
    let old_map: Vec<usize> = (0..n_old).collect();
    let quotients: Vec<MultiPoly> = all
        .iter()
        .map(|g| match kept.iter().position(|k| k == g) {
            Some(j) => MultiPoly::var(tr.ring(), n_old + j),
            None => {
                let c = r.defining_ideal().lift(g, &[red.clone()]).expect("divisible by a");
                c[0].rename_into(tr.ring(), &old_map)
            }
        })
        .collect();
    let lifted = lift_coaction(a, &target, |h| {
        let c = r.defining_ideal().lift(h, &all)?;
        let mut acc = MultiPoly::zero(tr.ring());
        for (ck, qk) in c.iter().zip(&quotients) {
            acc = acc.add(&ck.rename_into(tr.ring(), &old_map).mul(qk));
        }
        Some(tr.reduce(&acc))
    }, &kept)?;
    let inclusion = RingMap::new(
        r.clone(),
        tr.clone(),
        (0..n_old).map(|j| MultiPoly::var(tr.ring(), j)).collect(),
    )?;
    let new_variables = names
        .into_iter()
        .zip(target.extras()[model.extras().len()..].iter().cloned())
        .collect();
    Ok(BlowUpStep {
        source: model.clone(),
        center: i,
        s,
        reduction: red,
        target,
        lifted,
        inclusion,
        new_variables,
    })
}

/// Extends `a` to `target`, whose extra variables are `h_j/a` for the given numerators
/// `hs` over an invariant `a`; `over_a(h)` returns `h/a` in the target for `h ∈ I^s`.
fn lift_coaction(
    a: &Coaction,
    target: &AffineRingModel,
    over_a: impl Fn(&MultiPoly) -> Option<MultiPoly>,
    hs: &[MultiPoly],
) -> Result<Coaction> {
    let r = a.ring();
    let rank = a.group().rank();
    let n_old = r.nvars();
    let tr = target.ring();
    if hs.is_empty() {
        return Ok(a.clone());
    }
    let tensor = crate::coaction::tensor_ring(a.group(), tr);
    let big = tensor.ring();
    let old_map: Vec<usize> = (0..rank + n_old).collect();
    let mut images: Vec<MultiPoly> = a.images().iter().map(|g| g.rename_into(big, &old_map)).collect();
    let into_t: Vec<usize> = (rank..rank + tr.nvars()).collect();
    for h in hs {
        let mut img = MultiPoly::zero(big);
        for (beta, c) in a.coefficients(&a.apply(h)) {
            if c.is_zero() {
                continue;
            }
            let q = over_a(&c).ok_or_else(|| Error::NotGStable(format!("coefficient {c} of a*({h})")))?;
            let mut e = beta.clone();
            e.extend(std::iter::repeat(0).take(tr.nvars()));
            img = img.add(&MultiPoly::monomial(big, e, 1).mul(&q.rename_into(big, &into_t)));
        }
        images.push(img);
    }
    Coaction::new(a.group().clone(), tr.clone(), images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Blowup,
    Integral,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Blowup => "blowup",
            Method::Integral => "integral",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GNormalizationReport {
    pub method: Method,
    pub steps: Vec<BlowUpStep>,
    pub model: AffineRingModel,
    pub action: Coaction,
    pub normalization: Normalization,
}

/// G-normalization of an affine curve chart with planar base `model`.
pub fn g_normalize(model: &AffineRingModel, a: &Coaction, method: Method, max_steps: usize) -> Result<GNormalizationReport> {
    let normal = normalize(model)?;
    match method {
        Method::Blowup => {
            let mut cur = model.clone();
            let mut act = a.clone();
            let mut steps = Vec::new();
            let mut delta = delta_length(&normal.model, &cur)?;
            loop {
                let v = is_g_normal(&act)?;
                let Some(w) = v.witnesses.first() else { break };
                if steps.len() >= max_steps {
                    return Err(Error::StepLimitExceeded(max_steps));
                }
                let step = blow_up_orbit(&cur, &w.orbit, &act)?;
                let next = delta_length(&normal.model, &step.target)?;
                if next >= delta {
                    return Err(Error::Internal(format!("blow-up did not shrink the delta length {delta}")));
                }
                delta = next;
                cur = step.target.clone();
                act = step.lifted.clone();
                steps.push(step);
            }
            Ok(GNormalizationReport {
                method,
                steps,
                model: cur,
                action: act,
                normalization: normal,
            })
        }
        Method::Integral => {
            let (m, act) = g_integral_closure(model, a, &normal)?;
            Ok(GNormalizationReport {
                method,
                steps: Vec::new(),
                model: m,
                action: act,
                normalization: normal,
            })
        }
    }
}

/// `a*(n)·a*(d)^{q-1}` as `T`-coefficients in `R`, where `q = p^h`; over `1 ⊗ d^q` this
/// is `a*(n/d)`, since `a*(d)^q = 1 ⊗ d^q`.
fn coaction_numerators(a: &Coaction, n: &MultiPoly, d: &MultiPoly) -> Vec<MultiPoly> {
    let q = (a.group().field().p() as u64).pow(a.group().height());
    let prod = a.tensor().reduce(&a.apply(n).mul(&a.apply(d).pow(q - 1)));
    a.coefficients(&prod).into_values().collect()
}

fn frobenius_q(a: &Coaction) -> u64 {
    (a.group().field().p() as u64).pow(a.group().height())
}

/// Whether `f = num/den` over `R` is G-integral: every `O(G)`-coefficient of `a*(f)`
/// is integral over `R`.
pub fn is_g_integral(f: &Fraction, a: &Coaction) -> bool {
    let r = a.ring();
    let dq = r.reduce(&f.den.pow(frobenius_q(a)));
    coaction_numerators(a, &f.num, &f.den)
        .iter()
        .all(|c| is_integral(r, &Fraction::new(c.clone(), dq.clone())))
}

/// Whether `num/den` is integral over the domain `R`.
pub fn is_integral(r: &QuotientRing, f: &Fraction) -> bool {
    let model = AffineRingModel::planar(r.clone());
    if r.defining_ideal().add_gens(&[f.den.clone()]).contains(&f.num) {
        return true;
    }
    match adjoin_fractions(&model, &f.den, &[f.num.clone()], vec!["_w".into()]) {
        Ok(m) => is_finite_over(m.ring(), r.nvars()),
        Err(_) => false,
    }
}

/// The ring of G-integral elements inside the normalization, with the restricted
/// coaction.
pub fn g_integral_closure(
    model: &AffineRingModel,
    a: &Coaction,
    normal: &Normalization,
) -> Result<(AffineRingModel, Coaction)> {
    let base = model.base();
    let r = model.ring();
    if normal.model.extras().is_empty() {
        return Ok((model.clone(), a.clone()));
    }
    let k = *r.ring().field();
    let q = frobenius_q(a);
    let gens = &normal.module_generators;
    let d = conductor_element(gens, base);
    // D·b_i and D^q·b_i as elements of the base
    let db: Vec<MultiPoly> = gens
        .iter()
        .map(|g| {
            let c = base.defining_ideal().lift(&g.num.mul(&d), &[g.den.clone()]).expect("conductor");
            base.reduce(&c[0])
        })
        .collect();
    let frak_b = Ideal::new(base.ring(), db.clone()).add(base.defining_ideal());
    let dq1 = d.pow(q - 1);
    let frak_a = Ideal::new(base.ring(), db.iter().map(|x| base.reduce(&x.mul(&dq1))).collect())
        .add(base.defining_ideal());
    let mod_d = FiniteAlgebra::new(&base.defining_ideal().add_gens(&[d.clone()])).ok_or(Error::NotZeroDimensional)?;
    let mod_a = FiniteAlgebra::new(&frak_a).ok_or(Error::NotZeroDimensional)?;
    // F_p-basis of b/(D)
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in frak_b.gens() {
        for e in &mod_d.basis {
            rows.push(mod_d.coords(&g.mul_monomial(e, 1)));
        }
    }
    let mut m = FpMatrix::from_rows(&rows, mod_d.dim());
    let pivots = m.rref(&k);
    let span: Vec<MultiPoly> = (0..pivots.len())
        .map(|i| mod_d.element(&(0..mod_d.dim()).map(|j| m.get(i, j)).collect::<Vec<_>>()))
        .collect();
    // the G-integrality conditions, linear on the span
    let blocks: Vec<Vec<Vec<u32>>> = span
        .iter()
        .map(|n| coaction_numerators(a, n, &d).iter().map(|c| mod_a.coords(c)).collect())
        .collect();
    let nblocks = blocks.iter().map(|b| b.len()).max().unwrap_or(0);
    let height = nblocks * mod_a.dim();
    let mut cond = FpMatrix::zeros(height.max(1), span.len());
    for (j, b) in blocks.iter().enumerate() {
        for (bi, v) in b.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                cond.set(bi * mod_a.dim() + i, j, x);
            }
        }
    }
    let mut numerators: Vec<MultiPoly> = cond
        .kernel(&k)
        .into_iter()
        .map(|v| {
            let mut f = MultiPoly::zero(base.ring());
            for (c, n) in v.iter().zip(&span) {
                if *c != 0 {
                    f = f.add(&n.scale(*c));
                }
            }
            base.reduce(&f)
        })
        .filter(|f| !base.defining_ideal().add_gens(&[d.clone()]).contains(f))
        .collect();
    numerators.sort_by(|f, g| f.total_degree().cmp(&g.total_degree()).then_with(|| f.to_string().cmp(&g.to_string())));
    if numerators.is_empty() {
        return Ok((model.clone(), a.clone()));
    }
    let names = fresh_names(model, a, numerators.len());
    let target = adjoin_fractions(model, &d, &numerators, names)?;
    // every module generator of the result must itself be G-integral
    for g in module_generators(&target) {
        let c = base.defining_ideal().lift(&g.num.mul(&d), &[g.den.clone()]);
        let n = c.map(|c| base.reduce(&c[0])).ok_or_else(|| Error::Internal("not inside the normalization".into()))?;
        if !coaction_numerators(a, &n, &d).iter().all(|c| frak_a.contains(c)) {
            return Err(Error::Internal(format!("{g} is not G-integral")));
        }
    }
    let act = restrict_coaction(a, &target, &d, &numerators)?;
    Ok((target, act))
}

// Coaction on `R[n_j/D]` from `a*(n_j/D) = a*(n_j)·a*(D)^{q-1} / D^q`.
fn restrict_coaction(a: &Coaction, target: &AffineRingModel, d: &MultiPoly, ns: &[MultiPoly]) -> Result<Coaction> {
    let base = target.base();
    let rank = a.group().rank();
    let tr = target.ring();
    let tensor = crate::coaction::tensor_ring(a.group(), tr);
    let big = tensor.ring();
    let n_old = a.ring().nvars();
    let old_map: Vec<usize> = (0..rank + n_old).collect();
    let into_t: Vec<usize> = (rank..rank + tr.nvars()).collect();
    let q = frobenius_q(a);
    let dq = base.reduce(&d.pow(q));
    let mut images: Vec<MultiPoly> = a.images().iter().map(|g| g.rename_into(big, &old_map)).collect();
    for n in ns {
        let prod = a.tensor().reduce(&a.apply(n).mul(&a.apply(d).pow(q - 1)));
        let mut img = MultiPoly::zero(big);
        for (beta, c) in a.coefficients(&prod) {
            if c.is_zero() {
                continue;
            }
            let e = target
                .element_of(&Fraction::new(c.clone(), dq.clone()))
                .ok_or_else(|| Error::NotGStable(format!("{c} / {dq}")))?;
            let mut ex = beta.clone();
            ex.extend(std::iter::repeat(0).take(tr.nvars()));
            img = img.add(&MultiPoly::monomial(big, ex, 1).mul(&e.rename_into(big, &into_t)));
        }
        images.push(img);
    }
    Coaction::new(a.group().clone(), tr.clone(), images)
}

/// The ideal `(D(x_1), ..., D(x_n))` and whether it is invertible at every singular
/// point.
#[derive(Clone, Debug)]
pub struct TangentIdeal {
    pub ideal: Ideal,
    pub invertible: bool,
    pub counts: Vec<(PointData, u64)>,
}

pub fn tangent_ideal(d: &Derivation) -> Result<TangentIdeal> {
    if d.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    let r = d.ring();
    let ideal = r.ideal(d.images().to_vec()).add(r.defining_ideal()).minimalized();
    let mut counts = Vec::new();
    for x in singular_points_of(r) {
        let c = if x.ideal.contains_ideal(&ideal) {
            minimal_generators_at(&ideal, &x, r)?
        } else {
            1
        };
        counts.push((x, c));
    }
    Ok(TangentIdeal {
        invertible: counts.iter().all(|(_, c)| *c == 1),
        ideal,
        counts,
    })
}

/// Certificate `u_den·z^{p^n} = u_num·w` at a fixed point, with `z` a uniformizer, `w`
/// an invariant of order `p^n`, and `u = u_num/u_den` a local unit.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub z: MultiPoly,
    pub w: MultiPoly,
    pub u_num: MultiPoly,
    pub u_den: MultiPoly,
    pub exponent: u64,
}

pub fn local_model_at(a: &Coaction, x: &PointData) -> Result<LocalModel> {
    let r = a.ring();
    if x.degree != 1 {
        return Err(Error::HypothesisFailure(format!(
            "{} has residue degree {}; only rational points are supported",
            x.label(),
            x.degree
        )));
    }
    if !x.ideal.contains_ideal(&a.fixed_subscheme()) {
        return Err(Error::HypothesisFailure(format!("{} is not fixed", x.label())));
    }
    if r.defining_ideal().contains_ideal(&a.non_free_locus()) {
        return Err(Error::HypothesisFailure("the action is not generically free".into()));
    }
    let orbit = orbit_ideal(a, x)?;
    if minimal_generators_at(&orbit, x, r)? != 1 {
        return Err(Error::HypothesisFailure(format!("not G-normal at {}", x.label())));
    }
    let order = a.group().order();
    let m = &x.ideal;
    let m2 = m.mul(m).add(r.defining_ideal());
    let z = m
        .gens()
        .iter()
        .map(|g| r.reduce(g))
        .find(|g| !m2.contains(g))
        .ok_or_else(|| Error::HypothesisFailure(format!("{} is singular", x.label())))?;
    let w = a.norm_invariant(&z)?;
    let ring_ideal = |gens: Vec<MultiPoly>| Ideal::new(r.ring(), gens).add(r.defining_ideal());
    if local_length(r, &ring_ideal(vec![w.clone()]), x) != Some(order) {
        return Err(Error::Internal(format!("norm of {z} does not have order {order}")));
    }
    let zq = r.reduce(&z.pow(order));
    let wi = ring_ideal(vec![w.clone()]);
    let colon = wi.quotient_by(&zq);
    let u_den = colon
        .gens()
        .iter()
        .map(|g| r.reduce(g))
        .find(|g| !m.contains(g))
        .ok_or_else(|| Error::Internal("z^q is not a local multiple of w".into()))?;
    let c = r
        .defining_ideal()
        .lift(&u_den.mul(&zq), &[w.clone()])
        .ok_or_else(|| Error::Internal("certificate lift failed".into()))?;
    let u_num = r.reduce(&c[0]);
    if m.contains(&u_num) || !r.is_zero(&u_den.mul(&zq).sub(&u_num.mul(&w))) || !a.is_invariant(&w) {
        return Err(Error::Internal("local model certificate failed".into()));
    }
    Ok(LocalModel {
        z,
        w,
        u_num,
        u_den,
        exponent: order,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::PrimeField;
    use crate::group::{Factor, FiniteGroupScheme};

    fn curve(p: u64, f: &str) -> QuotientRing {
        let r = PolyRing::new(PrimeField::new(p).unwrap(), &["x", "y"]);
        QuotientRing::new(Ideal::parse(&r, &[f]).unwrap()).unwrap()
    }

    fn g(p: u64, f: &[Factor]) -> Arc<FiniteGroupScheme> {
        Arc::new(FiniteGroupScheme::new(p, f).unwrap())
    }

    #[test]
    fn cusp_verdicts() {
        let r = curve(2, "y^2 + x^3");
        let a = Coaction::parse(g(2, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
        let v = is_g_normal(&a).unwrap();
        assert!(v.is_g_normal && v.witnesses.is_empty() && v.fast_path_used);
        let m = Coaction::parse(g(2, &[Factor::mu(1)]), r.clone(), &[("y", "T*y")]).unwrap();
        let v = is_g_normal(&m).unwrap();
        assert!(!v.is_g_normal);
        assert_eq!(v.witnesses.len(), 1);
        assert_eq!(v.witnesses[0].count, 2);
        assert!(v.witnesses[0].orbit.same_as(&r.ideal(vec![r.var(0), r.var(1)]).add(r.defining_ideal())));
        let smooth = curve(3, "y^2 - x");
        let t = Coaction::trivial(g(3, &[Factor::alpha(1)]), smooth);
        assert!(is_g_normal(&t).unwrap().is_g_normal);
    }

    #[test]
    fn normalization_examples() {
        let cusp = AffineRingModel::planar(curve(2, "y^2 + x^3"));
        let n = normalize(&cusp).unwrap();
        assert_eq!(n.model.extras().len(), 1);
        let t = Fraction::new(cusp.base().var(1), cusp.base().var(0));
        assert!(n.model.contains_fraction(&t));
        assert!(singular_points_of(n.model.ring()).is_empty());
        assert_eq!(delta_length(&n.model, &cusp).unwrap(), 1);
        let node = AffineRingModel::planar(curve(3, "y^2 - x^3 - x^2"));
        let n = normalize(&node).unwrap();
        assert!(n.model.contains_fraction(&Fraction::new(node.base().var(1), node.base().var(0))));
        assert!(singular_points_of(n.model.ring()).is_empty());
        let smooth = AffineRingModel::planar(curve(3, "y^2 - x"));
        assert_eq!(normalize(&smooth).unwrap().rounds, 0);
    }

    #[test]
    fn blow_up_of_the_mu2_cusp() {
        let r = curve(2, "y^2 + x^3");
        let model = AffineRingModel::planar(r.clone());
        let m = Coaction::parse(g(2, &[Factor::mu(1)]), r.clone(), &[("y", "T*y")]).unwrap();
        let i = r.ideal(vec![r.var(0), r.var(1)]);
        let step = blow_up_orbit(&model, &i, &m).unwrap();
        assert_eq!(step.s, 1);
        assert_eq!(step.reduction, r.var(0));
        assert!(singular_points_of(step.target.ring()).is_empty());
        // a principal invariant ideal gives the identity step
        let id = blow_up_orbit(&model, &r.ideal(vec![r.var(0)]), &m).unwrap();
        assert_eq!(id.target.ring().nvars(), 2);
        // (y) is not stable under the translation
        let a = Coaction::parse(g(2, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
        assert!(matches!(
            blow_up_orbit(&model, &r.ideal(vec![r.var(1)]), &a),
            Err(Error::NotGStable(_))
        ));
    }

    #[test]
    fn both_methods_agree_on_the_mu2_cusp() {
        let r = curve(2, "y^2 + x^3");
        let model = AffineRingModel::planar(r.clone());
        let m = Coaction::parse(g(2, &[Factor::mu(1)]), r.clone(), &[("y", "T*y")]).unwrap();
        let b = g_normalize(&model, &m, Method::Blowup, 16).unwrap();
        let i = g_normalize(&model, &m, Method::Integral, 16).unwrap();
        assert_eq!(b.steps.len(), 1);
        assert!(b.model.same_subring(&i.model));
        assert!(is_g_normal(&b.action).unwrap().is_g_normal);
        assert!(is_g_normal(&i.action).unwrap().is_g_normal);
        let again = g_normalize(&b.model, &b.action, Method::Blowup, 16).unwrap();
        assert!(again.steps.is_empty());
    }

    #[test]
    fn alpha_cusp_is_its_own_g_normalization() {
        let r = curve(2, "y^2 + x^3");
        let model = AffineRingModel::planar(r.clone());
        let a = Coaction::parse(g(2, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
        let b = g_normalize(&model, &a, Method::Blowup, 16).unwrap();
        let i = g_normalize(&model, &a, Method::Integral, 16).unwrap();
        assert!(b.steps.is_empty());
        assert!(i.model.extras().is_empty());
    }

    #[test]
    fn g_integrality() {
        let r = curve(2, "y^2 + x^3");
        let t = Fraction::new(r.var(1), r.var(0));
        let a = Coaction::parse(g(2, &[Factor::alpha(1)]), r.clone(), &[("y", "y + T")]).unwrap();
        assert!(!is_g_integral(&t, &a));
        let triv = Coaction::trivial(Arc::new(FiniteGroupScheme::trivial(PrimeField::new(2).unwrap())), r.clone());
        assert!(is_g_integral(&t, &triv));
        assert!(is_g_integral(&Fraction::from_poly(r.var(1)), &a));
    }

    #[test]
    fn tangent_ideals() {
        let r = curve(2, "y^2 + x^3");
        let d = Derivation::parse(r.clone(), &[("y", "1")]).unwrap();
        let t = tangent_ideal(&d).unwrap();
        assert!(t.ideal.is_unit() && t.invertible);
        let e = Derivation::parse(r.clone(), &[("y", "y")]).unwrap();
        let t = tangent_ideal(&e).unwrap();
        assert_eq!(t.counts.len(), 1);
        assert!(t.invertible);
        assert_eq!(tangent_ideal(&Derivation::parse(r, &[]).unwrap()).unwrap_err(), Error::ZeroDerivation);
    }

    #[test]
    fn local_models() {
        let line = curve(2, "x");
        let m = Coaction::parse(g(2, &[Factor::mu(1)]), line.clone(), &[("y", "T*y")]).unwrap();
        let o = PointData::rational(line.ring(), &[0, 0]);
        let lm = local_model_at(&m, &o).unwrap();
        assert_eq!(lm.z, line.var(1));
        assert_eq!(lm.w, line.var(1).pow(2));
        assert!(lm.u_num.is_constant() && lm.u_den.is_constant());
        let triv = Coaction::trivial(Arc::new(FiniteGroupScheme::trivial(PrimeField::new(2).unwrap())), line.clone());
        let lm = local_model_at(&triv, &o).unwrap();
        assert_eq!(lm.z, lm.w);
        assert_eq!(lm.exponent, 1);
    }

    #[test]
    fn example_five_one() {
        use crate::curve::{ChartActions, CurveKind};
        let c = CurveModel::new(PrimeField::new(2).unwrap(), CurveKind::Projective, "z^4 + x^3*y").unwrap();
        let a4 = g(2, &[Factor::alpha(2)]);
        let chart = |n: &str| c.chart(n).unwrap().ring.clone();
        let u = "(1 + T*(x + y) + T^2*(x + y)^2 + T^3*(x + y)^3)";
        let acts = ChartActions::new(
            &c,
            vec![
                ("z".into(), Coaction::parse(a4.clone(), chart("z"), &[("x", &format!("x*{u}")), ("y", &format!("y*{u}"))]).unwrap()),
                ("y".into(), Coaction::parse(a4.clone(), chart("y"), &[("z", "z + T*(x + 1)")]).unwrap()),
                ("x".into(), Coaction::parse(a4.clone(), chart("x"), &[("z", "z + T*(1 + y)")]).unwrap()),
            ],
        )
        .unwrap();
        assert!(is_g_normal_projective(&c, &acts).unwrap().is_g_normal);
        let ay = acts.get("y").unwrap();
        let fixed = PointData::rational(chart("y").ring(), &[1, 1]);
        let lm = local_model_at(ay, &fixed).unwrap();
        assert_eq!(lm.exponent, 4);
        let r = chart("y");
        assert!(r.is_zero(&lm.u_den.mul(&lm.z.pow(4)).sub(&lm.u_num.mul(&lm.w))));

        let m4 = g(2, &[Factor::mu(2)]);
        let acts = ChartActions::new(
            &c,
            vec![
                ("z".into(), Coaction::parse(m4.clone(), chart("z"), &[("x", "T^3*x"), ("y", "T^3*y")]).unwrap()),
                ("y".into(), Coaction::parse(m4.clone(), chart("y"), &[("z", "T*z")]).unwrap()),
                ("x".into(), Coaction::parse(m4.clone(), chart("x"), &[("z", "T*z")]).unwrap()),
            ],
        )
        .unwrap();
        let v = is_g_normal_projective(&c, &acts).unwrap();
        assert!(!v.is_g_normal);
        assert_eq!(v.witnesses[0].chart, "y");
    }
}
