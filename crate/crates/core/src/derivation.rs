//! Derivations of `R`, their `p`-th powers, and the coactions of `α_p` and `μ_p` they generate.

use std::sync::Arc;

use crate::coaction::{tensor_ring, Coaction};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::{Factor, FiniteGroupScheme};
use crate::ideal::QuotientRing;
use crate::linalg::FpMatrix;
use crate::poly::{MultiPoly, PolyRing};

/// `D` determined by `D(x_j)`; it must descend to `R`.
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: QuotientRing,
    images: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(ring: QuotientRing, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                ring.nvars()
            )));
        }
        let images: Vec<MultiPoly> = images.iter().map(|g| ring.reduce(g)).collect();
        let d = Derivation { ring, images };
        for f in d.ring.relations() {
            if !d.ring.is_zero(&d.apply(&f)) {
                return Err(Error::InvalidDerivation(f.to_string()));
            }
        }
        Ok(d)
    }

    /// Images given as `(variable, polynomial)`; unlisted variables map to 0.
    pub fn parse(ring: QuotientRing, images: &[(&str, &str)]) -> Result<Self> {
        let mut imgs = vec![MultiPoly::zero(ring.ring()); ring.nvars()];
        for (v, s) in images {
            let j = ring.ring().var_index(v).ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("derivation given for unknown variable {v}"),
            })?;
            imgs[j] = ring.parse(s)?;
        }
        Derivation::new(ring, imgs)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|g| g.is_zero())
    }

    /// `D(f) = Σ ∂f/∂x_j · D(x_j)`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring.ring());
        for (j, dj) in self.images.iter().enumerate() {
            if !dj.is_zero() {
                out = out.add(&f.derivative(j).mul(dj));
            }
        }
        self.ring.reduce(&out)
    }

    pub fn apply_n(&self, f: &MultiPoly, n: u64) -> MultiPoly {
        let mut cur = self.ring.reduce(f);
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }

    /// `D^p`, a derivation again in characteristic `p`.
    pub fn p_power(&self) -> Derivation {
        let p = self.ring.ring().field().p() as u64;
        let images = (0..self.ring.nvars())
            .map(|j| self.apply_n(&self.ring.var(j), p))
            .collect();
        Derivation {
            ring: self.ring.clone(),
            images,
        }
    }

    pub fn same_as(&self, o: &Derivation) -> bool {
        self.images
            .iter()
            .zip(&o.images)
            .all(|(a, b)| self.ring.is_zero(&a.sub(b)))
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        self.ring
            .ring()
            .vars()
            .iter()
            .cloned()
            .zip(self.images.iter().map(|g| g.to_string()))
            .collect()
    }
}

/// The `p`-th power of `D`.
pub fn derivation_p_power(d: &Derivation) -> Derivation {
    d.p_power()
}

/// The `α_p` coaction `exp(T·D)` when `D^p = 0`, or the `μ_p` coaction of the eigenspace
/// decomposition when `D^p = D`.
pub fn coaction_from_derivation(d: &Derivation) -> Result<Coaction> {
    let ring = d.ring().clone();
    let k = *ring.ring().field();
    let p = k.p() as u64;
    let dp = d.p_power();
    if dp.is_zero() {
        let g = Arc::new(FiniteGroupScheme::over(k, &[Factor::alpha(1)])?);
        let tr = tensor_ring(&g, &ring);
        let t = MultiPoly::var(tr.ring(), 0);
        let xmap: Vec<usize> = (1..=ring.nvars()).collect();
        let mut images = Vec::new();
        for j in 0..ring.nvars() {
            // Σ_{i<p} T^i ⊗ D^i(x_j) / i!
            let mut img = MultiPoly::zero(tr.ring());
            let mut cur = ring.var(j);
            let mut fact = 1u32;
            for i in 0..p {
                if i > 0 {
                    cur = d.apply(&cur);
                    fact = k.mul(fact, (i % p) as u32);
                }
                let coeff = cur.rename_into(tr.ring(), &xmap).scale(k.inv(fact));
                img = img.add(&t.pow(i).mul(&coeff));
            }
            images.push(img);
        }
        return Coaction::new(g, ring, images);
    }
    if dp.same_as(d) {
        let g = Arc::new(FiniteGroupScheme::over(k, &[Factor::mu(1)])?);
        let tr = tensor_ring(&g, &ring);
        let t = MultiPoly::var(tr.ring(), 0);
        let xmap: Vec<usize> = (1..=ring.nvars()).collect();
        let mut images = Vec::new();
        for j in 0..ring.nvars() {
            let x = ring.var(j);
            let mut img = MultiPoly::zero(tr.ring());
            for gamma in 0..p as u32 {
                // projection 1 - (D - γ)^{p-1} onto the γ-eigenspace
                let mut cur = x.clone();
                for _ in 0..p - 1 {
                    cur = d.apply(&cur).sub(&cur.scale(gamma));
                }
                let part = ring.reduce(&x.sub(&cur));
                img = img.add(&t.pow(gamma as u64).mul(&part.rename_into(tr.ring(), &xmap)));
            }
            images.push(img);
        }
        return Coaction::new(g, ring, images);
    }
    let desc = dp
        .describe()
        .iter()
        .map(|(v, g)| format!("{v} -> {g}"))
        .collect::<Vec<_>>()
        .join(", ");
    Err(Error::NotRestricted(desc))
}

/// Standard actions on `F_p[x_1..x_n]`.
#[derive(Clone, Debug)]
pub enum StandardAction {
    /// `μ_p^n`, `x_i ↦ T_i ⊗ x_i`.
    MuStandard,
    /// `α_p^m` from the commuting derivations `f_k ∂/∂x_1`, `f_k ∈ F_p[x^p]`.
    AlphaFamily(Vec<String>),
}

/// Variable names used by the standard actions: `x, y, z`, or `x1..xn` beyond three.
pub fn standard_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub fn standard_actions(field: PrimeField, n: usize, which: &StandardAction) -> Result<Coaction> {
    let names = standard_names(n);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = QuotientRing::polynomial(&PolyRing::new(field, &refs));
    let p = field.p();
    match which {
        StandardAction::MuStandard => {
            let g = Arc::new(FiniteGroupScheme::over(field, &vec![Factor::mu(1); n])?);
            let tr = tensor_ring(&g, &ring);
            let images = (0..n)
                .map(|i| MultiPoly::var(tr.ring(), i).mul(&MultiPoly::var(tr.ring(), n + i)))
                .collect();
            Coaction::new(g, ring, images)
        }
        StandardAction::AlphaFamily(fs) => {
            let fs: Vec<MultiPoly> = fs.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
            for f in &fs {
                if f.terms().keys().any(|e| e.iter().any(|&a| a % p != 0)) {
                    return Err(Error::NotInPthPowers(f.to_string()));
                }
            }
            let support: Vec<Vec<u32>> = crate::ideal::exponent_support(&fs).into_iter().collect();
            let mut m = FpMatrix::zeros(support.len(), fs.len());
            for (c, f) in fs.iter().enumerate() {
                for (r, e) in support.iter().enumerate() {
                    m.set(r, c, f.coeff(e));
                }
            }
            if fs.is_empty() || m.rank(&field) < fs.len() {
                return Err(Error::DependentCoefficients);
            }
            let mm = fs.len();
            let g = Arc::new(FiniteGroupScheme::over(field, &vec![Factor::alpha(1); mm])?);
            let tr = tensor_ring(&g, &ring);
            let xmap: Vec<usize> = (mm..mm + n).collect();
            let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(tr.ring(), mm + i)).collect();
            for (kk, f) in fs.iter().enumerate() {
                let term = MultiPoly::var(tr.ring(), kk).mul(&f.rename_into(tr.ring(), &xmap));
                images[0] = images[0].add(&term);
            }
            Coaction::new(g, ring, images)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Ideal;

    fn plane(p: u64) -> QuotientRing {
        QuotientRing::polynomial(&PolyRing::new(PrimeField::new(p).unwrap(), &["x", "y"]))
    }

    #[test]
    fn p_powers() {
        for p in [2, 3, 5] {
            let r = plane(p);
            let d = Derivation::parse(r.clone(), &[("y", "1")]).unwrap();
            assert!(d.p_power().is_zero());
            let e = Derivation::parse(r.clone(), &[("y", "y")]).unwrap();
            assert!(e.p_power().same_as(&e));
        }
        let d = Derivation::parse(plane(2), &[("y", "y^2")]).unwrap();
        assert!(d.p_power().is_zero());
    }

    #[test]
    fn derivation_must_descend() {
        let r = plane(2).ring().clone();
        let cusp = QuotientRing::new(Ideal::parse(&r, &["y^2 + x^3"]).unwrap()).unwrap();
        assert!(Derivation::parse(cusp.clone(), &[("y", "1")]).is_ok());
        // D(y^2 + x^3) = x^2 for ∂/∂x, nonzero on the cusp
        assert!(matches!(
            Derivation::parse(cusp, &[("x", "1")]),
            Err(Error::InvalidDerivation(_))
        ));
    }

    #[test]
    fn coactions_from_derivations() {
        for p in [2, 3, 5] {
            let r = plane(p);
            let d = Derivation::parse(r.clone(), &[("y", "1")]).unwrap();
            let a = coaction_from_derivation(&d).unwrap();
            assert_eq!(a.images()[1], a.tensor().parse("y + T").unwrap());
            let s = Derivation::parse(r.clone(), &[("y", "y")]).unwrap();
            let a = coaction_from_derivation(&s).unwrap();
            assert_eq!(a.images()[1], a.tensor().parse("T*y").unwrap());
            let sh = Derivation::parse(r.clone(), &[("y", "x")]).unwrap();
            let a = coaction_from_derivation(&sh).unwrap();
            assert_eq!(a.images()[0], a.tensor().parse("x").unwrap());
            assert_eq!(a.images()[1], a.tensor().parse("T*x + y").unwrap());
        }
        let r = plane(3);
        let bad = Derivation::parse(r, &[("y", "x*y + 1")]).unwrap();
        assert!(matches!(coaction_from_derivation(&bad), Err(Error::NotRestricted(_))));
    }

    #[test]
    fn standard() {
        let k = PrimeField::new(2).unwrap();
        let a = standard_actions(k, 2, &StandardAction::MuStandard).unwrap();
        assert_eq!(a.images()[0], a.tensor().parse("T1*x").unwrap());
        assert_eq!(a.images()[1], a.tensor().parse("T2*y").unwrap());
        let fam = StandardAction::AlphaFamily(vec!["1".into(), "x^2".into()]);
        let a = standard_actions(k, 1, &fam).unwrap();
        assert_eq!(a.images()[0], a.tensor().parse("T2*x^2 + x + T1").unwrap());
        let bad = StandardAction::AlphaFamily(vec!["1".into(), "x".into()]);
        assert!(matches!(standard_actions(k, 1, &bad), Err(Error::NotInPthPowers(_))));
        let dep = StandardAction::AlphaFamily(vec!["x^2".into(), "x^2".into()]);
        assert_eq!(standard_actions(k, 1, &dep).unwrap_err(), Error::DependentCoefficients);
    }
}
