//! Plane curves, their charts, singular points, and orbit ideals.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::{Ideal, QuotientRing, RingMap};
use crate::order::MonomialOrder;
use crate::points::{closed_points, PointData};
use crate::poly::{Exponents, MultiPoly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Affine,
    Projective,
}

/// An affine chart of a curve. For projective curves `dehom` is the homogeneous
/// coordinate set to 1 and the chart is named after it.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub dehom: Option<usize>,
    pub ring: QuotientRing,
}

#[derive(Clone, Debug)]
pub struct CurveModel {
    kind: CurveKind,
    poly: MultiPoly,
    charts: Vec<Chart>,
}

/// Name of the single chart of an affine curve.
pub const AFFINE_CHART: &str = "affine";

impl CurveModel {
    /// Affine curves use variables `x, y`; projective ones `x, y, z`.
    pub fn new(field: PrimeField, kind: CurveKind, poly: &str) -> Result<Self> {
        let vars: &[&str] = match kind {
            CurveKind::Affine => &["x", "y"],
            CurveKind::Projective => &["x", "y", "z"],
        };
        let ring = PolyRing::new(field, vars);
        let f = MultiPoly::parse(&ring, poly)?;
        Self::from_poly(kind, f)
    }

    pub fn from_poly(kind: CurveKind, f: MultiPoly) -> Result<Self> {
        if f.is_zero() || f.is_constant() {
            return Err(Error::UnitQuotient);
        }
        let field = *f.field();
        let hom_ring = PolyRing::new(field, &["x", "y", "z"]);
        let hom = match kind {
            CurveKind::Projective => {
                if !f.is_homogeneous() {
                    return Err(Error::NotHomogeneous);
                }
                f.clone()
            }
            CurveKind::Affine => homogenize(&f, &hom_ring),
        };
        check_absolutely_irreducible(&hom, kind)?;
        let charts = match kind {
            CurveKind::Affine => vec![Chart {
                name: AFFINE_CHART.into(),
                dehom: None,
                ring: QuotientRing::new(Ideal::new(f.ring(), vec![f.clone()]))?,
            }],
            CurveKind::Projective => [2usize, 1, 0]
                .iter()
                .map(|&d| {
                    let (r, g) = dehomogenize(&f, d);
                    Ok(Chart {
                        name: f.ring().vars()[d].clone(),
                        dehom: Some(d),
                        ring: QuotientRing::new(Ideal::new(&r, vec![g]))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(CurveModel {
            kind,
            poly: f,
            charts,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn field(&self) -> &PrimeField {
        self.poly.field()
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }

    /// Singular points as `(chart name, point)`; each point of a projective curve is
    /// reported once, in the first chart (order `z, y, x`) that contains it.
    pub fn singular_points(&self) -> Vec<(String, PointData)> {
        let mut out = Vec::new();
        for chart in &self.charts {
            for pt in chart_singular_points(&chart.ring) {
                if self.first_chart_of(chart, &pt) {
                    out.push((chart.name.clone(), pt));
                }
            }
        }
        out
    }

    // Whether no earlier chart contains `pt`.
    fn first_chart_of(&self, chart: &Chart, pt: &PointData) -> bool {
        let Some(d) = chart.dehom else { return true };
        let r = chart.ring.ring();
        for earlier in &self.charts {
            if earlier.name == chart.name {
                break;
            }
            let e = earlier.dehom.unwrap();
            let name = &self.poly.ring().vars()[e];
            let i = r.var_index(name).expect("other coordinate in chart");
            let _ = d;
            if !pt.ideal.contains(&MultiPoly::var(r, i)) {
                return false;
            }
        }
        true
    }

    /// Homogeneous coordinates of a rational point of a chart, scaled so that the
    /// first nonzero coordinate is 1.
    pub fn homogeneous_coordinates(&self, chart: &Chart, pt: &PointData) -> Option<Vec<u32>> {
        let c = pt.coordinates()?;
        let k = self.field();
        let Some(d) = chart.dehom else { return Some(c) };
        let mut full = Vec::with_capacity(3);
        let mut it = c.into_iter();
        for i in 0..3 {
            full.push(if i == d { 1 } else { it.next().unwrap() });
        }
        let lead = *full.iter().find(|&&v| v != 0)?;
        let inv = k.inv(lead);
        Some(full.iter().map(|&v| k.mul(v, inv)).collect())
    }
}

/// Closed points of `V(f, ∂f/∂x, ∂f/∂y)` for a planar chart ring.
pub fn chart_singular_points(r: &QuotientRing) -> Vec<PointData> {
    let rels = r.relations();
    let f = &rels[0];
    let mut gens = vec![f.clone()];
    for i in 0..r.nvars() {
        gens.push(f.derivative(i));
    }
    let sing = Ideal::new(r.ring(), gens);
    if sing.is_unit() {
        return Vec::new();
    }
    closed_points(&sing).expect("an integral curve has finitely many singular points")
}

fn homogenize(f: &MultiPoly, hom: &Arc<PolyRing>) -> MultiPoly {
    let n = f.total_degree().unwrap_or(0);
    MultiPoly::from_terms(
        hom,
        f.terms().iter().map(|(e, &c)| {
            let d: u32 = e.iter().sum();
            (vec![e[0], e[1], n - d], c)
        }),
    )
}

fn dehomogenize(f: &MultiPoly, d: usize) -> (Arc<PolyRing>, MultiPoly) {
    let names: Vec<String> = (0..3)
        .filter(|&i| i != d)
        .map(|i| f.ring().vars()[i].clone())
        .collect();
    let r = PolyRing::from_names(*f.field(), names);
    let g = MultiPoly::from_terms(
        &r,
        f.terms().iter().map(|(e, &c)| {
            let e2: Exponents = (0..3).filter(|&i| i != d).map(|i| e[i]).collect();
            (e2, c)
        }),
    );
    (r, g)
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            let mut e = vec![a, b];
            if n == 3 {
                e.push(d - a - b);
            } else if a + b != d {
                continue;
            }
            out.push(e);
        }
    }
    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
    out
}

/// Absolute irreducibility of a homogeneous `F` in three variables: for each degree
/// `k ≤ n/2` and each degree-`k` monomial `μ` dividing the leading monomial of `F`,
/// the monic candidates `G = μ + Σ c_ν ν` (`ν < μ`) dividing `F` form a zero-dimensional
/// variety in the `c`; `F` is absolutely irreducible iff all these varieties are empty.
fn check_absolutely_irreducible(f: &MultiPoly, kind: CurveKind) -> Result<()> {
    let n = f.total_degree().unwrap();
    let order = MonomialOrder::DegRevLex;
    let (lm, _) = f.leading(order).unwrap();
    let f = f.make_monic();
    let mut fallback: Option<Error> = None;
    for k in 1..=n / 2 {
        let monos = monomials_of_degree(3, k);
        for (mi, mu) in monos.iter().enumerate() {
            if !mu.iter().zip(&lm).all(|(a, b)| a <= b) {
                continue;
            }
            let lower: Vec<Exponents> = monos[mi + 1..].to_vec();
            let names: Vec<String> = (0..lower.len()).map(|i| format!("c{i}")).collect();
            let cring = PolyRing::from_names(*f.field(), names);
            let eqs = divisibility_conditions(&f, mu, &lower, &cring);
            let ideal = Ideal::new(&cring, eqs);
            if ideal.is_unit() {
                continue;
            }
            let pts = closed_points(&ideal).unwrap_or_default();
            if let Some(rational) = pts.iter().find(|p| p.degree == 1) {
                let c = rational.coordinates().unwrap();
                let mut g = MultiPoly::monomial(f.ring(), mu.clone(), 1);
                for (nu, ci) in lower.iter().zip(c) {
                    g.add_term(nu.clone(), ci);
                }
                let witness = match kind {
                    CurveKind::Projective => g,
                    CurveKind::Affine => dehomogenize(&g, 2).1,
                };
                return Err(Error::Reducible(witness.to_string()));
            }
            if fallback.is_none() {
                let (degree, witness) = match pts.first() {
                    Some(p) => (p.degree as usize, p.ideal.to_string()),
                    None => (0, ideal.to_string()),
                };
                fallback = Some(Error::NotAbsolutelyIrreducible { degree, witness });
            }
        }
    }
    match fallback {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

// Coefficients of the remainder of F modulo G = μ + Σ c_ν ν, as polynomials in the c.
fn divisibility_conditions(
    f: &MultiPoly,
    mu: &Exponents,
    lower: &[Exponents],
    cring: &Arc<PolyRing>,
) -> Vec<MultiPoly> {
    let order = MonomialOrder::DegRevLex;
    let mut rem: BTreeMap<Exponents, MultiPoly> = f
        .terms()
        .iter()
        .map(|(e, &c)| (e.clone(), MultiPoly::constant(cring, c as i64)))
        .collect();
    loop {
        let next = rem
            .iter()
            .filter(|(e, c)| !c.is_zero() && e.iter().zip(mu).all(|(a, b)| a >= b))
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()));
        let Some((m, coeff)) = next else { break };
        let q: Exponents = m.iter().zip(mu).map(|(a, b)| a - b).collect();
        rem.remove(&m);
        for (i, nu) in lower.iter().enumerate() {
            let e: Exponents = q.iter().zip(nu).map(|(a, b)| a + b).collect();
            let term = coeff.mul(&MultiPoly::var(cring, i));
            let slot = rem.entry(e).or_insert_with(|| MultiPoly::zero(cring));
            *slot = slot.sub(&term);
        }
    }
    rem.into_values().filter(|c| !c.is_zero()).collect()
}

/// Ideal of the orbit `G·x`: the kernel of `R → O(G) ⊗ R/m_x`, verified to be G-stable
/// and contained in `m_x`.
pub fn orbit_ideal(a: &Coaction, x: &PointData) -> Result<Ideal> {
    let tr = a.tensor();
    let r = a.group().rank();
    let xmap: Vec<usize> = (r..r + a.ring().nvars()).collect();
    let mut gens = tr.relations();
    gens.extend(x.ideal.gens().iter().map(|g| g.rename_into(tr.ring(), &xmap)));
    let target = QuotientRing::new(Ideal::new(tr.ring(), gens))?;
    let phi = RingMap::new(a.ring().clone(), target, a.images().to_vec())?;
    let ker = phi.kernel();
    if !a.is_stable(&ker) {
        return Err(Error::Internal(format!("orbit ideal {ker} is not G-stable")));
    }
    if !x.ideal.contains_ideal(&ker) {
        return Err(Error::Internal(format!("orbit ideal {ker} is not inside the point")));
    }
    Ok(ker)
}

/// One coaction per chart of a projective curve, checked to agree on overlaps.
#[derive(Clone, Debug)]
pub struct ChartActions {
    pub actions: Vec<(String, Coaction)>,
}

impl ChartActions {
    pub fn get(&self, chart: &str) -> Option<&Coaction> {
        self.actions.iter().find(|(c, _)| c == chart).map(|(_, a)| a)
    }

    /// Verifies that for every pair of charts `c_1, c_2`, each coordinate `X_k/X_j` of
    /// `c_2` has image `a*(u_k)/a*(u_j)` computed in `c_1`, after clearing denominators.
    pub fn new(curve: &CurveModel, actions: Vec<(String, Coaction)>) -> Result<Self> {
        for (i, (n1, a1)) in actions.iter().enumerate() {
            for (n2, a2) in actions.iter().skip(i + 1) {
                let c1 = curve.chart(n1).ok_or_else(|| unknown_chart(n1))?;
                let c2 = curve.chart(n2).ok_or_else(|| unknown_chart(n2))?;
                if c1.dehom.is_none() || c2.dehom.is_none() {
                    return Err(Error::RingMismatch("overlaps need a projective curve".into()));
                }
                check_overlap(curve, c1, a1, c2, a2)?;
            }
        }
        Ok(ChartActions { actions })
    }
}

fn unknown_chart(n: &str) -> Error {
    Error::Parse {
        pos: 0,
        msg: format!("unknown chart {n}"),
    }
}

fn check_overlap(curve: &CurveModel, c1: &Chart, a1: &Coaction, c2: &Chart, a2: &Coaction) -> Result<()> {
    let hom = curve.poly().ring();
    let d1 = c1.dehom.unwrap();
    let j = c2.dehom.unwrap();
    let tr = a1.tensor();
    let rank = a1.group().rank();
    // homogeneous coordinate i as an element of chart 1 (1 for i = d1)
    let u = |i: usize| -> MultiPoly {
        if i == d1 {
            MultiPoly::one(c1.ring.ring())
        } else {
            MultiPoly::var_named(c1.ring.ring(), &hom.vars()[i])
        }
    };
    let a_u = |i: usize| a1.apply(&u(i));
    let uj = u(j);
    let auj = a_u(j);
    for (k2, name) in c2.ring.ring().vars().iter().enumerate() {
        let k = hom.var_index(name).unwrap();
        let img = &a2.images()[k2];
        let n = img
            .terms()
            .keys()
            .map(|e| e[rank..].iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        // u_j^n · img(T, u/u_j), a polynomial in T and the chart-1 coordinates
        let mut cleared = MultiPoly::zero(tr.ring());
        for (e, &c) in img.terms() {
            let mut term = MultiPoly::monomial(
                tr.ring(),
                e[..rank].iter().copied().chain(std::iter::repeat(0).take(c1.ring.nvars())).collect(),
                c,
            );
            let mut deg = 0;
            for (v, &p) in e[rank..].iter().enumerate() {
                let hv = hom.var_index(&c2.ring.ring().vars()[v]).unwrap();
                term = term.mul(&a1.lift(&u(hv)).pow(p as u64));
                deg += p;
            }
            term = term.mul(&a1.lift(&uj).pow((n - deg) as u64));
            cleared = cleared.add(&term);
        }
        let lhs = tr.reduce(&cleared.mul(&auj));
        let rhs = tr.reduce(&a1.lift(&uj.pow(n as u64)).mul(&a_u(k)));
        if !tr.is_zero(&lhs.sub(&rhs)) {
            return Err(Error::RelationNotPreserved(format!(
                "charts {} and {} disagree on {}",
                c1.name, c2.name, name
            )));
        }
    }
    Ok(())
}
