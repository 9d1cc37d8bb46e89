//! Fractions over a planar domain and affine models embedded in its fraction field.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{Ideal, QuotientRing};
use crate::poly::MultiPoly;

/// `num / den` with both in a fixed base domain `R_0`; `den` is nonzero in `R_0`.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Fraction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        Fraction { num, den }
    }

    pub fn from_poly(f: MultiPoly) -> Self {
        let one = MultiPoly::one(f.ring());
        Fraction { num: f, den: one }
    }

    pub fn add(&self, o: &Fraction, base: &QuotientRing) -> Fraction {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Fraction::new(base.reduce(&num), base.reduce(&self.den.mul(&o.den)))
    }

    pub fn mul(&self, o: &Fraction, base: &QuotientRing) -> Fraction {
        Fraction::new(
            base.reduce(&self.num.mul(&o.num)),
            base.reduce(&self.den.mul(&o.den)),
        )
    }

    pub fn equals(&self, o: &Fraction, base: &QuotientRing) -> bool {
        base.is_zero(&self.num.mul(&o.den).sub(&o.num.mul(&self.den)))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term() == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// An affine domain `R = F_p[x, u]/J` containing a planar base `R_0 = F_p[x]/J_0`, with
/// each extra variable `u_j` recorded as a fraction over `R_0`.
#[derive(Clone, Debug)]
pub struct AffineRingModel {
    ring: QuotientRing,
    base: QuotientRing,
    extras: Vec<Fraction>,
}

impl AffineRingModel {
    /// The planar model itself.
    pub fn planar(base: QuotientRing) -> Self {
        AffineRingModel {
            ring: base.clone(),
            base,
            extras: Vec::new(),
        }
    }

    /// A model whose first variables are the base variables. Checks that `J` restricts
    /// to `J_0` on the base, that it has Krull dimension 1, and that every extra
    /// fraction satisfies the relations of `J`.
    pub fn new(ring: QuotientRing, base: QuotientRing, extras: Vec<Fraction>) -> Result<Self> {
        let k = base.nvars();
        if ring.nvars() != k + extras.len() || ring.ring().vars()[..k] != base.ring().vars()[..] {
            return Err(Error::RingMismatch(
                "model variables must extend the base variables".into(),
            ));
        }
        let dim = ring.krull_dim();
        if dim != 1 {
            return Err(Error::NotACurve(dim));
        }
        let m = AffineRingModel { ring, base, extras };
        for f in m.ring.relations() {
            let fr = m.to_fraction(&f);
            if !m.base.is_zero(&fr.num) {
                return Err(Error::Internal(format!(
                    "relation {f} does not vanish in the function field"
                )));
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn base(&self) -> &QuotientRing {
        &self.base
    }

    pub fn extras(&self) -> &[Fraction] {
        &self.extras
    }

    /// Names of the variables beyond the base.
    pub fn extra_names(&self) -> Vec<String> {
        self.ring.ring().vars()[self.base.nvars()..].to_vec()
    }

    /// Every variable of the model as a fraction over the base.
    pub fn generators(&self) -> Vec<Fraction> {
        let k = self.base.nvars();
        let mut out: Vec<Fraction> = (0..k)
            .map(|i| Fraction::from_poly(self.base.var(i)))
            .collect();
        out.extend(self.extras.iter().cloned());
        out
    }

    /// The image of `f ∈ R` in the fraction field, as a fraction over the base.
    pub fn to_fraction(&self, f: &MultiPoly) -> Fraction {
        let gens = self.generators();
        let base = &self.base;
        let mut acc = Fraction::from_poly(MultiPoly::zero(base.ring()));
        for (e, &c) in f.terms() {
            let mut term = Fraction::from_poly(MultiPoly::constant(base.ring(), c as i64));
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    term = term.mul(&gens[i], base);
                }
            }
            acc = acc.add(&term, base);
        }
        acc
    }

    /// Whether the fraction `q` lies in this subring of the fraction field.
    pub fn contains_fraction(&self, q: &Fraction) -> bool {
        let k = self.base.nvars();
        let map: Vec<usize> = (0..k).collect();
        let r = self.ring.ring();
        let num = q.num.rename_into(r, &map);
        let den = q.den.rename_into(r, &map);
        self.ring.defining_ideal().add_gens(&[den]).contains(&num)
    }

    /// An element of this ring representing `q`, if `q` lies in it.
    pub fn element_of(&self, q: &Fraction) -> Option<MultiPoly> {
        let k = self.base.nvars();
        let map: Vec<usize> = (0..k).collect();
        let r = self.ring.ring();
        let num = q.num.rename_into(r, &map);
        let den = q.den.rename_into(r, &map);
        let c = self.ring.defining_ideal().lift(&num, &[den])?;
        Some(self.ring.reduce(&c[0]))
    }

    /// Both models define the same subring of the fraction field.
    pub fn same_subring(&self, o: &AffineRingModel) -> bool {
        self.generators().iter().all(|g| o.contains_fraction(g))
            && o.generators().iter().all(|g| self.contains_fraction(g))
    }

    pub fn contains_model(&self, o: &AffineRingModel) -> bool {
        o.generators().iter().all(|g| self.contains_fraction(g))
    }
}

/// The ideal `J_0 + (den)` used for membership tests, exposed for diagnostics.
pub fn denominator_ideal(model: &AffineRingModel, den: &MultiPoly) -> Ideal {
    let k = model.base().nvars();
    let map: Vec<usize> = (0..k).collect();
    model
        .ring()
        .defining_ideal()
        .add_gens(&[den.rename_into(model.ring().ring(), &map)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    #[test]
    fn cusp_normalization_as_model() {
        let k = PrimeField::new(2).unwrap();
        let r0 = PolyRing::new(k, &["x", "y"]);
        let base = QuotientRing::new(Ideal::parse(&r0, &["y^2 + x^3"]).unwrap()).unwrap();
        let r1 = PolyRing::new(k, &["x", "y", "t"]);
        // t = y/x with t^2 = x, y = x t
        let j = Ideal::parse(&r1, &["t^2 + x", "x*t + y", "y*t + x^2"]).unwrap();
        let ring = QuotientRing::new(j).unwrap();
        let t = Fraction::new(base.var(1), base.var(0));
        let m = AffineRingModel::new(ring, base.clone(), vec![t.clone()]).unwrap();
        assert!(m.contains_fraction(&t));
        assert!(!m.contains_fraction(&Fraction::new(base.var(0), base.var(1).mul(&base.var(0)))));
        let planar = AffineRingModel::planar(base);
        assert!(m.contains_model(&planar));
        assert!(!planar.contains_model(&m));
        assert!(m.same_subring(&m.clone()));
    }
}
