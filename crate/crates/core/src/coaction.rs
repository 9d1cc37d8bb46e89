//! Coactions `a*: R → O(G) ⊗ R` and the pointwise action calculus.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroupScheme;
use crate::ideal::{Ideal, QuotientRing};
use crate::matrix::{det, fitting_ideal};
use crate::points::PointData;
use crate::poly::{Exponents, MultiPoly, PolyRing};

/// A verified coaction. Images live in `O(G) ⊗ R`, presented as `F_p[T, x]` modulo the
/// group relations and the relations of `R`; the `T` variables come first.
#[derive(Clone, Debug)]
pub struct Coaction {
    group: Arc<FiniteGroupScheme>,
    ring: QuotientRing,
    combined: QuotientRing,
    images: Vec<MultiPoly>,
}

/// `O(G) ⊗ R` as a quotient of `F_p[T, x]`.
pub fn tensor_ring(group: &FiniteGroupScheme, ring: &QuotientRing) -> QuotientRing {
    let r = group.rank();
    let mut names = group.t_names();
    for v in ring.ring().vars() {
        assert!(!names.contains(v), "ring variable {v} clashes with a group coordinate");
        names.push(v.clone());
    }
    let big = PolyRing::from_names(*ring.ring().field(), names);
    let tmap: Vec<usize> = (0..r).collect();
    let xmap: Vec<usize> = (r..r + ring.nvars()).collect();
    let mut gens: Vec<MultiPoly> = group
        .relations()
        .iter()
        .map(|f| f.rename_into(&big, &tmap))
        .collect();
    gens.extend(ring.relations().iter().map(|f| f.rename_into(&big, &xmap)));
    QuotientRing::new(Ideal::new(&big, gens)).expect("tensor product of nonzero algebras")
}

impl Coaction {
    /// Verifies and builds a coaction from images in `tensor_ring(group, ring)`.
    pub fn new(group: Arc<FiniteGroupScheme>, ring: QuotientRing, images: Vec<MultiPoly>) -> Result<Self> {
        let combined = tensor_ring(&group, &ring);
        Self::with_tensor_ring(group, ring, combined, images)
    }

    pub(crate) fn with_tensor_ring(
        group: Arc<FiniteGroupScheme>,
        ring: QuotientRing,
        combined: QuotientRing,
        images: Vec<MultiPoly>,
    ) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                ring.nvars()
            )));
        }
        let q = group.exponents();
        for (j, img) in images.iter().enumerate() {
            for e in img.terms().keys() {
                if e.iter().zip(&q).any(|(&a, &b)| a as u64 >= b) {
                    return Err(Error::IllegalTDegree(ring.ring().vars()[j].clone()));
                }
            }
        }
        let images = images.iter().map(|g| combined.reduce(g)).collect();
        let a = Coaction {
            group,
            ring,
            combined,
            images,
        };
        a.verify()?;
        Ok(a)
    }

    /// Parses images given as `(variable, polynomial)` pairs in the variables of `R` and
    /// the group coordinates. Unlisted variables are fixed.
    pub fn parse(group: Arc<FiniteGroupScheme>, ring: QuotientRing, images: &[(&str, &str)]) -> Result<Self> {
        let combined = tensor_ring(&group, &ring);
        let r = group.rank();
        let mut imgs: Vec<MultiPoly> = (0..ring.nvars())
            .map(|j| MultiPoly::var(combined.ring(), r + j))
            .collect();
        for (v, s) in images {
            let j = ring.ring().var_index(v).ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("action given for unknown variable {v}"),
            })?;
            imgs[j] = MultiPoly::parse(combined.ring(), s)?;
        }
        Self::with_tensor_ring(group, ring, combined, imgs)
    }

    /// The trivial coaction `x ↦ 1 ⊗ x`.
    pub fn trivial(group: Arc<FiniteGroupScheme>, ring: QuotientRing) -> Self {
        let combined = tensor_ring(&group, &ring);
        let r = group.rank();
        let images = (0..ring.nvars())
            .map(|j| MultiPoly::var(combined.ring(), r + j))
            .collect();
        Coaction {
            group,
            ring,
            combined,
            images,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroupScheme> {
        &self.group
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn tensor(&self) -> &QuotientRing {
        &self.combined
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    fn rank(&self) -> usize {
        self.group.rank()
    }

    /// `1 ⊗ f` for `f ∈ R`.
    pub fn lift(&self, f: &MultiPoly) -> MultiPoly {
        let r = self.rank();
        let map: Vec<usize> = (r..r + self.ring.nvars()).collect();
        self.combined.reduce(&f.rename_into(self.combined.ring(), &map))
    }

    /// `a*(f)` for `f ∈ R`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let c = &self.combined;
        f.substitute_with(c.ring(), &self.images, &|p| c.reduce(&p))
    }

    /// `T`-monomial coefficients of an element of `O(G) ⊗ R`, as elements of `R`.
    pub fn coefficients(&self, f: &MultiPoly) -> BTreeMap<Exponents, MultiPoly> {
        let r = self.rank();
        let f = self.combined.reduce(f);
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, &c) in f.terms() {
            let (t, x) = e.split_at(r);
            out.entry(t.to_vec())
                .or_insert_with(|| MultiPoly::zero(self.ring.ring()))
                .add_term(x.to_vec(), c);
        }
        out
    }

    /// Reassembles `Σ T^α ⊗ c_α`.
    pub fn from_coefficients(&self, coeffs: &BTreeMap<Exponents, MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero(self.combined.ring());
        for (t, c) in coeffs {
            let mut tm = t.clone();
            tm.extend(std::iter::repeat(0).take(self.ring.nvars()));
            let mono = MultiPoly::monomial(self.combined.ring(), tm, 1);
            out = out.add(&mono.mul(&self.lift(c)));
        }
        self.combined.reduce(&out)
    }

    pub fn is_invariant(&self, f: &MultiPoly) -> bool {
        self.combined.is_zero(&self.apply(f).sub(&self.lift(f)))
    }

    /// `a*(f) - 1 ⊗ f`.
    pub fn difference(&self, f: &MultiPoly) -> MultiPoly {
        self.combined.reduce(&self.apply(f).sub(&self.lift(f)))
    }

    fn var_name(&self, j: usize) -> String {
        self.ring.ring().vars()[j].clone()
    }

    fn verify(&self) -> Result<()> {
        for f in self.ring.relations() {
            if !self.combined.is_zero(&self.apply(&f)) {
                return Err(Error::RelationNotPreserved(f.to_string()));
            }
        }
        let triple = TripleRing::new(self);
        for (j, img) in self.images.iter().enumerate() {
            if !triple.coassociative(self, img) {
                return Err(Error::CoassociativityViolation(self.var_name(j)));
            }
        }
        for (j, img) in self.images.iter().enumerate() {
            let eps: Vec<MultiPoly> = (0..self.rank())
                .map(|i| MultiPoly::constant(self.ring.ring(), self.group.counit(i) as i64))
                .chain((0..self.ring.nvars()).map(|k| self.ring.var(k)))
                .collect();
            let back = img.substitute(self.ring.ring(), &eps);
            if !self.ring.is_zero(&back.sub(&self.ring.var(j))) {
                return Err(Error::CounitViolation(self.var_name(j)));
            }
        }
        // Twisting by the antipode inverts (pr_1, a) on G × X.
        let r = self.rank();
        let cr = self.combined.ring();
        let s_images: Vec<MultiPoly> = (0..r)
            .map(|i| self.group.antipode(i, &MultiPoly::var(cr, i)))
            .chain((0..self.ring.nvars()).map(|k| MultiPoly::var(cr, r + k)))
            .collect();
        let a_images: Vec<MultiPoly> = (0..r)
            .map(|i| MultiPoly::var(cr, i))
            .chain(self.images.iter().cloned())
            .collect();
        let c = &self.combined;
        for (j, img) in self.images.iter().enumerate() {
            let inv = img.substitute_with(cr, &s_images, &|p| c.reduce(&p));
            let round = inv.substitute_with(cr, &a_images, &|p| c.reduce(&p));
            if !c.is_zero(&round.sub(&MultiPoly::var(cr, r + j))) {
                return Err(Error::AntipodeViolation(self.var_name(j)));
            }
        }
        Ok(())
    }

    /// `(Δ ⊗ id)(a*(f)) = (id ⊗ a*)(a*(f))` for an arbitrary element `f ∈ R`.
    pub fn coassociative_on(&self, f: &MultiPoly) -> bool {
        TripleRing::new(self).coassociative(self, &self.apply(f))
    }

    /// Counit law for an arbitrary element.
    pub fn counit_on(&self, f: &MultiPoly) -> bool {
        let img = self.apply(f);
        let eps: Vec<MultiPoly> = (0..self.rank())
            .map(|i| MultiPoly::constant(self.ring.ring(), self.group.counit(i) as i64))
            .chain((0..self.ring.nvars()).map(|k| self.ring.var(k)))
            .collect();
        self.ring.is_zero(&img.substitute(self.ring.ring(), &eps).sub(f))
    }

    /// Same action on an isomorphic presentation: `images` are given in the new tensor ring.
    pub fn transport(&self, ring: QuotientRing, images: Vec<MultiPoly>) -> Result<Coaction> {
        Coaction::new(self.group.clone(), ring, images)
    }

    /// Image strings `x -> ...` for reports.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(j, g)| (self.var_name(j), g.to_string()))
            .collect()
    }

    /// Whether the ideal `I ⊆ R` (given in the ambient ring) is G-stable, i.e.
    /// `a*(I) ⊆ O(G) ⊗ I`.
    pub fn is_stable(&self, i: &Ideal) -> bool {
        let full = i.add(self.ring.defining_ideal());
        full.gens().iter().all(|g| {
            self.coefficients(&self.apply(g))
                .values()
                .all(|c| full.contains(c))
        })
    }

    /// Ideal of the fixed subscheme: all non-constant `T`-coefficients of
    /// `a*(x_j) - 1 ⊗ x_j`.
    pub fn fixed_subscheme(&self) -> Ideal {
        let zero = vec![0u32; self.rank()];
        let mut gens = Vec::new();
        for j in 0..self.ring.nvars() {
            let d = self.difference(&self.ring.var(j));
            for (t, c) in self.coefficients(&d) {
                if t != zero && !c.is_zero() {
                    gens.push(c);
                }
            }
        }
        self.ring.ideal(gens)
    }

    /// Stabilizer at a closed point: its ideal in `O(G) ⊗ κ(x)` (as an ideal of
    /// `F_p[T, x]` containing the group relations and the point) and its order.
    pub fn stabilizer_at(&self, x: &PointData) -> (Ideal, u64) {
        let r = self.rank();
        let cr = self.combined.ring();
        let xmap: Vec<usize> = (r..r + self.ring.nvars()).collect();
        let mut gens = self.combined.relations();
        gens.extend(x.ideal.gens().iter().map(|g| g.rename_into(cr, &xmap)));
        for g in x.ideal.gens() {
            gens.push(self.difference(g));
        }
        let stab = Ideal::new(cr, gens).minimalized();
        let dim = stab.vector_space_dim().finite().expect("finite over a point");
        (stab, dim / x.degree as u64)
    }

    /// Presentation of `(O(G) ⊗ R) / I_Stab` as an `R`-module on the basis `T^β`.
    fn stabilizer_module(&self) -> Vec<Vec<MultiPoly>> {
        let basis = self.group.basis();
        let index: BTreeMap<Exponents, usize> =
            basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let cr = self.combined.ring();
        let mut rows = Vec::new();
        for j in 0..self.ring.nvars() {
            let d = self.difference(&self.ring.var(j));
            for b in &basis {
                let mut e = b.clone();
                e.extend(std::iter::repeat(0).take(self.ring.nvars()));
                let prod = MultiPoly::monomial(cr, e, 1).mul(&d);
                let mut row = vec![MultiPoly::zero(self.ring.ring()); basis.len()];
                for (t, c) in self.coefficients(&prod) {
                    row[index[&t]] = c;
                }
                rows.push(row);
            }
        }
        rows
    }

    /// Ideal of the non-free locus: `Fitt_1` of `(O(G) ⊗ R) / I_Stab`.
    pub fn non_free_locus(&self) -> Ideal {
        let cols = self.group.basis().len();
        fitting_ideal(&self.stabilizer_module(), cols, 1, &self.ring)
    }

    /// Matrix of multiplication by `g ∈ O(G) ⊗ R` on the free `R`-module `O(G) ⊗ R`.
    pub fn multiplication_matrix(&self, g: &MultiPoly) -> Vec<Vec<MultiPoly>> {
        let basis = self.group.basis();
        let index: BTreeMap<Exponents, usize> =
            basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = basis.len();
        let cr = self.combined.ring();
        let mut m = vec![vec![MultiPoly::zero(self.ring.ring()); n]; n];
        for (col, b) in basis.iter().enumerate() {
            let mut e = b.clone();
            e.extend(std::iter::repeat(0).take(self.ring.nvars()));
            let prod = MultiPoly::monomial(cr, e, 1).mul(g);
            for (t, c) in self.coefficients(&prod) {
                m[index[&t]][col] = c;
            }
        }
        m
    }

    /// `N(r) = det(multiplication by a*(r))`, reduced in `R`; verified invariant.
    pub fn norm_invariant(&self, r: &MultiPoly) -> Result<MultiPoly> {
        let m = self.multiplication_matrix(&self.apply(r));
        let n = self.ring.reduce(&det(&m));
        if !self.is_invariant(&n) {
            return Err(Error::Internal(format!("norm of {r} is not invariant")));
        }
        Ok(n)
    }
}

/// `O(G) ⊗ O(G) ⊗ R` for the coassociativity check.
struct TripleRing {
    ring: QuotientRing,
    delta: Vec<MultiPoly>,
    second: Vec<MultiPoly>,
}

impl TripleRing {
    fn new(a: &Coaction) -> Self {
        let r = a.rank();
        let n = a.ring.nvars();
        let mut names: Vec<String> = (0..r).map(|i| format!("_a{i}")).collect();
        names.extend((0..r).map(|i| format!("_b{i}")));
        names.extend(a.ring.ring().vars().iter().cloned());
        let big = PolyRing::from_names(*a.ring.ring().field(), names);
        let amap: Vec<usize> = (0..r).collect();
        let bmap: Vec<usize> = (r..2 * r).collect();
        let xmap: Vec<usize> = (2 * r..2 * r + n).collect();
        let mut gens = Vec::new();
        for f in a.group.relations() {
            gens.push(f.rename_into(&big, &amap));
            gens.push(f.rename_into(&big, &bmap));
        }
        gens.extend(a.ring.relations().iter().map(|f| f.rename_into(&big, &xmap)));
        let ring = QuotientRing::new(Ideal::new(&big, gens)).expect("nonzero");
        let v = |i: usize| MultiPoly::var(&big, i);
        // (Δ ⊗ id): T_i ↦ Δ(T_i), x ↦ x
        let delta: Vec<MultiPoly> = (0..r)
            .map(|i| a.group.comultiply(i, &v(i), &v(r + i)))
            .chain((0..n).map(|k| v(2 * r + k)))
            .collect();
        // (id ⊗ a*): T ↦ first copy, x ↦ a*(x) in the second copy
        let bx: Vec<usize> = (r..2 * r).chain(2 * r..2 * r + n).collect();
        let second: Vec<MultiPoly> = (0..r)
            .map(v)
            .chain(a.images.iter().map(|g| g.rename_into(&big, &bx)))
            .collect();
        TripleRing {
            ring,
            delta,
            second,
        }
    }

    fn coassociative(&self, _a: &Coaction, img: &MultiPoly) -> bool {
        let q = &self.ring;
        let lhs = img.substitute_with(q.ring(), &self.delta, &|p| q.reduce(&p));
        let rhs = img.substitute_with(q.ring(), &self.second, &|p| q.reduce(&p));
        q.is_zero(&lhs.sub(&rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::group::Factor;

    fn plane(p: u64) -> QuotientRing {
        QuotientRing::polynomial(&PolyRing::new(PrimeField::new(p).unwrap(), &["x", "y"]))
    }

    fn group(p: u64, f: &[Factor]) -> Arc<FiniteGroupScheme> {
        Arc::new(FiniteGroupScheme::new(p, f).unwrap())
    }

    fn cusp() -> QuotientRing {
        let r = PolyRing::new(PrimeField::new(2).unwrap(), &["x", "y"]);
        QuotientRing::new(Ideal::parse(&r, &["y^2 + x^3"]).unwrap()).unwrap()
    }

    #[test]
    fn coaction_examples() {
        for p in [2, 3, 5] {
            let a = group(p, &[Factor::alpha(1)]);
            assert!(Coaction::parse(a, plane(p), &[("y", "y + T*x")]).is_ok());
            let aa = group(p, &[Factor::alpha(1), Factor::alpha(1)]);
            assert!(Coaction::parse(aa, plane(p), &[("y", "y + T1 + T2*x")]).is_ok());
        }
        let line = QuotientRing::polynomial(&PolyRing::new(PrimeField::new(3).unwrap(), &["y"]));
        let mu = group(3, &[Factor::mu(1)]);
        assert!(Coaction::parse(mu.clone(), line.clone(), &[("y", "T*y")]).is_ok());
        assert_eq!(
            Coaction::parse(mu, line, &[("y", "T*y + T")]).unwrap_err(),
            Error::CoassociativityViolation("y".into())
        );
    }

    #[test]
    fn rejects_bad_coactions() {
        let a = group(2, &[Factor::alpha(1)]);
        assert_eq!(
            Coaction::parse(a.clone(), plane(2), &[("y", "y + T^2")]).unwrap_err(),
            Error::IllegalTDegree("y".into())
        );
        assert_eq!(
            Coaction::parse(a.clone(), plane(2), &[("y", "x")]).unwrap_err(),
            Error::CounitViolation("y".into())
        );
        // x ↦ x + T sends y^2 + x^3 to x^2·T, nonzero in O(G) ⊗ R
        assert!(matches!(
            Coaction::parse(a, cusp(), &[("x", "x + T")]).unwrap_err(),
            Error::RelationNotPreserved(_)
        ));
    }

    #[test]
    fn fixed_subscheme_examples() {
        let a = group(3, &[Factor::alpha(1)]);
        let act = Coaction::parse(a.clone(), plane(3), &[("y", "y + T*x")]).unwrap();
        let x = act.ring().parse("x").unwrap();
        assert!(act.fixed_subscheme().same_as(&Ideal::new(act.ring().ring(), vec![x])));
        let triv = Coaction::trivial(a, plane(3));
        assert!(triv.fixed_subscheme().is_zero() || triv.fixed_subscheme().gens().iter().all(|g| g.is_zero()));
        let a2 = group(2, &[Factor::alpha(1)]);
        let tr = Coaction::parse(a2, cusp(), &[("y", "y + T")]).unwrap();
        assert!(tr.fixed_subscheme().is_unit());
    }

    #[test]
    fn stabilizers() {
        let aa = group(3, &[Factor::alpha(1), Factor::alpha(1)]);
        let act = Coaction::parse(aa, plane(3), &[("y", "y + T1 + T2*x")]).unwrap();
        for (x0, y0) in [(0, 0), (1, 2), (2, 1)] {
            let pt = PointData::rational(act.ring().ring(), &[x0, y0]);
            let (_, order) = act.stabilizer_at(&pt);
            assert_eq!(order, 3);
        }
        assert!(act.non_free_locus().gens().iter().all(|g| g.is_zero()));

        let a2 = group(2, &[Factor::alpha(1)]);
        let tr = Coaction::parse(a2.clone(), cusp(), &[("y", "y + T")]).unwrap();
        let pt = PointData::rational(tr.ring().ring(), &[1, 1]);
        assert_eq!(tr.stabilizer_at(&pt).1, 1);
        assert!(tr.non_free_locus().is_unit());

        let sh = Coaction::parse(a2, plane(2), &[("y", "y + T*x")]).unwrap();
        let x = sh.ring().parse("x").unwrap();
        assert!(sh.non_free_locus().same_as(&Ideal::new(sh.ring().ring(), vec![x])));

        let line = QuotientRing::polynomial(&PolyRing::new(PrimeField::new(5).unwrap(), &["y"]));
        let mu = group(5, &[Factor::mu(1)]);
        let sc = Coaction::parse(mu, line, &[("y", "T*y")]).unwrap();
        let o = PointData::rational(sc.ring().ring(), &[0]);
        assert_eq!(sc.stabilizer_at(&o).1, 5);
        let one = PointData::rational(sc.ring().ring(), &[1]);
        assert_eq!(sc.stabilizer_at(&one).1, 1);
    }

    #[test]
    fn norms() {
        for p in [2, 3, 5] {
            let line = QuotientRing::polynomial(&PolyRing::new(PrimeField::new(p).unwrap(), &["y"]));
            let y = line.var(0);
            let a = group(p, &[Factor::alpha(1)]);
            let tr = Coaction::parse(a, line.clone(), &[("y", "y + T")]).unwrap();
            assert_eq!(tr.norm_invariant(&y).unwrap(), y.pow(p));
            let mu = group(p, &[Factor::mu(1)]);
            let sc = Coaction::parse(mu, line.clone(), &[("y", "T*y")]).unwrap();
            assert_eq!(sc.norm_invariant(&y).unwrap(), y.pow(p));
            assert_eq!(sc.norm_invariant(&line.parse("1").unwrap()).unwrap(), line.parse("1").unwrap());
        }
    }
}
