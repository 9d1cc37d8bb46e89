//! Closed points of zero-dimensional schemes and local invariants at a point.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Dim, Ideal, QuotientRing};
use crate::linalg::FpMatrix;
use crate::poly::{Exponents, MultiPoly};

/// A closed point: a maximal ideal of the ambient ring and its residue degree over `F_p`.
#[derive(Clone, Debug)]
pub struct PointData {
    pub ideal: Ideal,
    pub degree: u32,
}

impl PointData {
    /// Coordinates of an `F_p`-rational point.
    pub fn coordinates(&self) -> Option<Vec<u32>> {
        if self.degree != 1 {
            return None;
        }
        let r = self.ideal.ring();
        (0..r.nvars())
            .map(|i| {
                let nf = self.ideal.normal_form(&MultiPoly::var(r, i));
                nf.is_constant().then(|| nf.constant_term())
            })
            .collect()
    }

    /// Short label: `x=0,y=1` for rational points, otherwise the ideal.
    pub fn label(&self) -> String {
        match self.coordinates() {
            Some(c) => self
                .ideal
                .ring()
                .vars()
                .iter()
                .zip(c)
                .map(|(v, a)| format!("{v}={a}"))
                .collect::<Vec<_>>()
                .join(","),
            None => self.ideal.to_string(),
        }
    }

    /// The rational point with the given coordinates.
    pub fn rational(ring: &std::sync::Arc<crate::poly::PolyRing>, coords: &[u32]) -> PointData {
        let gens = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| MultiPoly::var(ring, i).sub(&MultiPoly::constant(ring, c as i64)))
            .collect();
        PointData {
            ideal: Ideal::new(ring, gens).minimalized(),
            degree: 1,
        }
    }

    pub fn same_point(&self, o: &PointData) -> bool {
        self.ideal.same_as(&o.ideal)
    }
}

impl fmt::Display for PointData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.label(), self.degree)
    }
}

/// Linear-algebra view of a finite-dimensional quotient `F_p[x]/I`.
pub(crate) struct FiniteAlgebra {
    pub ideal: Ideal,
    pub basis: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl FiniteAlgebra {
    pub fn new(ideal: &Ideal) -> Option<Self> {
        let basis = ideal.standard_monomials()?;
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Some(FiniteAlgebra {
            ideal: ideal.clone(),
            basis,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, f: &MultiPoly) -> Vec<u32> {
        let nf = self.ideal.normal_form(f);
        let mut v = vec![0u32; self.dim()];
        for (e, &c) in nf.terms() {
            v[self.index[e]] = c;
        }
        v
    }

    pub fn element(&self, v: &[u32]) -> MultiPoly {
        MultiPoly::from_terms(
            self.ideal.ring(),
            self.basis.iter().cloned().zip(v.iter().copied()),
        )
    }

    /// Minimal polynomial of `f` as coefficients `c_0..c_d` (monic, `c_d = 1`).
    pub fn min_poly(&self, f: &MultiPoly) -> Vec<u32> {
        let k = *self.ideal.ring().field();
        let mut powers: Vec<Vec<u32>> = Vec::new();
        let mut cur = MultiPoly::one(self.ideal.ring());
        loop {
            let v = self.coords(&cur);
            // Columns are the powers found so far; look for a dependency.
            let cols = powers.len();
            let mut m = FpMatrix::zeros(self.dim(), cols);
            for (j, p) in powers.iter().enumerate() {
                for (i, &x) in p.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            if let Some(sol) = m.solve(&k, &v) {
                let mut c: Vec<u32> = sol.iter().map(|&x| k.neg(x)).collect();
                c.push(1);
                return c;
            }
            powers.push(v);
            cur = self.ideal.normal_form(&cur.mul(f));
        }
    }
}

/// Maximal ideals containing the zero-dimensional ideal `I`, sorted by their reduced bases.
pub fn closed_points(i: &Ideal) -> Result<Vec<PointData>> {
    if i.vector_space_dim() == Dim::Infinite {
        return Err(Error::NotZeroDimensional);
    }
    if i.is_unit() {
        return Ok(Vec::new());
    }
    let rad = radical_zero_dim(i);
    let mut out = Vec::new();
    split_points(&rad, &mut out);
    out.sort_by_key(|p| point_key(p));
    Ok(out)
}

fn point_key(p: &PointData) -> (u32, Vec<String>) {
    (
        p.degree,
        p.ideal.basis().polys.iter().map(|g| g.to_string()).collect(),
    )
}

/// Radical of a zero-dimensional ideal: adjoin the squarefree part of each variable's
/// minimal polynomial (sufficient over a perfect field).
pub fn radical_zero_dim(i: &Ideal) -> Ideal {
    let alg = FiniteAlgebra::new(i).expect("zero-dimensional");
    let r = i.ring();
    let k = *r.field();
    let mut extra = Vec::new();
    for v in 0..r.nvars() {
        let x = MultiPoly::var(r, v);
        let mp = crate::field::UniPoly::from_coeffs(alg.min_poly(&x));
        let sq = mp.squarefree_part(&k);
        let mut poly = MultiPoly::zero(r);
        for (d, &c) in sq.coeffs.iter().enumerate() {
            poly = poly.add(&x.pow(d as u64).scale(c));
        }
        extra.push(poly);
    }
    i.add_gens(&extra).minimalized()
}

// Splits a radical zero-dimensional ideal with the Berlekamp subalgebra of F_p-valued
// idempotent-generated elements: ker(Frobenius − id) has dimension = number of points.
fn split_points(rad: &Ideal, out: &mut Vec<PointData>) {
    let alg = FiniteAlgebra::new(rad).expect("zero-dimensional");
    let n = alg.dim();
    if n == 0 {
        return;
    }
    let r = rad.ring();
    let k = *r.field();
    let p = k.p() as u64;
    let mut m = FpMatrix::zeros(n, n);
    for (j, e) in alg.basis.iter().enumerate() {
        let b = MultiPoly::monomial(r, e.clone(), 1);
        let img = alg.coords(&b.pow(p));
        for (i, &x) in img.iter().enumerate() {
            let v = if i == j { k.sub(x, 1) } else { x };
            m.set(i, j, v);
        }
    }
    let ker = m.kernel(&k);
    if ker.len() <= 1 {
        out.push(PointData {
            ideal: rad.clone(),
            degree: n as u32,
        });
        return;
    }
    let zero = vec![0u32; r.nvars()];
    let e = ker
        .iter()
        .map(|v| alg.element(v))
        .find(|f| f.terms().keys().any(|x| *x != zero))
        .expect("non-constant element in a split algebra");
    for c in k.elements() {
        let part = rad
            .add_gens(&[e.sub(&MultiPoly::constant(r, c as i64))])
            .minimalized();
        if !part.is_unit() {
            split_points(&part, out);
        }
    }
}

/// Closed points of `V(I)` whose residue degree divides `d`.
pub fn points_of_degree_dividing(i: &Ideal, d: u32) -> Result<Vec<PointData>> {
    let r = i.ring();
    let q = (r.field().p() as u64).pow(d);
    let extra: Vec<MultiPoly> = (0..r.nvars())
        .map(|v| {
            let x = MultiPoly::var(r, v);
            x.pow(q).sub(&x)
        })
        .collect();
    closed_points(&i.add_gens(&extra))
}

/// `F_p`-dimension of `R/(I + m^N)`.
fn colength(r: &QuotientRing, i: &Ideal, mpow: &Ideal) -> u64 {
    r.defining_ideal()
        .add(i)
        .add(mpow)
        .vector_space_dim()
        .finite()
        .expect("m-primary")
}

/// `m^N`, minimalized after every multiplication.
pub(crate) fn ideal_power(m: &Ideal, n: usize) -> Ideal {
    let mut acc = Ideal::unit(m.ring());
    for _ in 0..n {
        acc = acc.mul(m).minimalized();
    }
    acc
}

/// Length of `(R/I)` localized at `m`, when `R/I` is finite-dimensional.
pub fn local_length(r: &QuotientRing, i: &Ideal, m: &PointData) -> Option<u64> {
    let total = r.defining_ideal().add(i).vector_space_dim().finite()?;
    let mp = ideal_power(&m.ideal, total.max(1) as usize);
    Some(colength(r, i, &mp) / m.degree as u64)
}

/// Minimal number of generators of `I` localized at `m`.
pub fn minimal_generators_at(i: &Ideal, m: &PointData, r: &QuotientRing) -> Result<u64> {
    if !m.ideal.contains_ideal(i) {
        return Err(Error::PointNotOnSupport(m.label()));
    }
    let ii = i.add(r.defining_ideal()).minimalized();
    let mi = m.ideal.mul(&ii).add(r.defining_ideal());
    let count = |n: usize| -> u64 {
        let mp = ideal_power(&m.ideal, n);
        let big = colength(r, &mi, &mp);
        let small = colength(r, &ii, &mp);
        (big - small) / m.degree as u64
    };
    let mut n = match local_length(r, &ii, m) {
        Some(l) => (2 * l).max(2) as usize,
        None => 2,
    };
    let mut prev = count(n);
    loop {
        n *= 2;
        let cur = count(n);
        if cur == prev {
            return Ok(cur);
        }
        prev = cur;
    }
}
