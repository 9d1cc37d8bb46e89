//! Infinitesimal group schemes `∏ α_{p^m} × ∏ μ_{p^m}` through their Hopf algebras.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::{Ideal, QuotientRing};
use crate::poly::{Exponents, MultiPoly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Alpha,
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: FactorKind,
    pub m: u32,
}

impl Factor {
    pub fn alpha(m: u32) -> Self {
        Factor {
            kind: FactorKind::Alpha,
            m,
        }
    }

    pub fn mu(m: u32) -> Self {
        Factor {
            kind: FactorKind::Mu,
            m,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Alpha => write!(f, "alpha({})", self.m),
            FactorKind::Mu => write!(f, "mu({})", self.m),
        }
    }
}

/// `O(G) = F_p[T_1..T_r]/(relations)` with its Hopf structure.
#[derive(Clone, Debug)]
pub struct FiniteGroupScheme {
    field: PrimeField,
    factors: Vec<Factor>,
    algebra: QuotientRing,
}

/// Variable names for the coordinates of `O(G)`: `T` for one factor, else `T1..Tr`.
pub fn t_names(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["T".to_string()]
    } else {
        (1..=r).map(|i| format!("T{i}")).collect()
    }
}

impl FiniteGroupScheme {
    pub fn new(p: u64, factors: &[Factor]) -> Result<Self> {
        Self::over(PrimeField::new(p)?, factors)
    }

    pub fn over(field: PrimeField, factors: &[Factor]) -> Result<Self> {
        if factors.iter().any(|f| f.m == 0) {
            return Err(Error::InvalidExponent);
        }
        let names = t_names(factors.len());
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ring = PolyRing::new(field, &refs);
        let rels: Vec<MultiPoly> = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let q = (field.p() as u64).pow(f.m);
                let t = MultiPoly::var(&ring, i).pow(q);
                match f.kind {
                    FactorKind::Alpha => t,
                    FactorKind::Mu => t.sub(&MultiPoly::one(&ring)),
                }
            })
            .collect();
        let algebra = QuotientRing::new(Ideal::new(&ring, rels))?;
        let g = FiniteGroupScheme {
            field,
            factors: factors.to_vec(),
            algebra,
        };
        g.verify_hopf()?;
        Ok(g)
    }

    pub fn trivial(field: PrimeField) -> Self {
        Self::over(field, &[]).expect("trivial group")
    }

    /// Parses `alpha(1) x mu(2)`, optionally prefixed by `p=2;` and `G =`.
    /// `trivial` (or an empty list) is the trivial group.
    pub fn parse(s: &str, p: Option<u64>) -> Result<Self> {
        let (p_txt, factors) = parse_descriptor(s)?;
        let p = match (p_txt, p) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("descriptor says p={a} but the problem says p={b}"),
                })
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "characteristic not given".into(),
                })
            }
        };
        Self::new(p, &factors)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `p^{m_i}` for each factor.
    pub fn exponents(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| (self.field.p() as u64).pow(f.m))
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.exponents().iter().product()
    }

    /// Height: the largest `m_i` (zero for the trivial group).
    pub fn height(&self) -> u32 {
        self.factors.iter().map(|f| f.m).max().unwrap_or(0)
    }

    pub fn algebra(&self) -> &QuotientRing {
        &self.algebra
    }

    pub fn t_names(&self) -> Vec<String> {
        self.algebra.ring().vars().to_vec()
    }

    pub fn relations(&self) -> Vec<MultiPoly> {
        self.algebra.relations()
    }

    /// Monomial basis `T^α`, `α_i < p^{m_i}`, in lexicographic order of exponents.
    pub fn basis(&self) -> Vec<Exponents> {
        let q = self.exponents();
        let mut out = vec![vec![]];
        for &qi in &q {
            let mut next = Vec::new();
            for e in &out {
                for a in 0..qi as u32 {
                    let mut e2: Exponents = e.clone();
                    e2.push(a);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    pub fn counit(&self, i: usize) -> u32 {
        match self.factors[i].kind {
            FactorKind::Alpha => 0,
            FactorKind::Mu => 1,
        }
    }

    /// `Δ(T_i)` with the two tensor factors given by variables `left[i]`, `right[i]`.
    pub fn comultiply(&self, i: usize, left: &MultiPoly, right: &MultiPoly) -> MultiPoly {
        match self.factors[i].kind {
            FactorKind::Alpha => left.add(right),
            FactorKind::Mu => left.mul(right),
        }
    }

    /// `S(T_i)` in terms of the variable `t`.
    pub fn antipode(&self, i: usize, t: &MultiPoly) -> MultiPoly {
        match self.factors[i].kind {
            FactorKind::Alpha => t.neg(),
            FactorKind::Mu => t.pow(self.exponents()[i] - 1),
        }
    }

    /// Checks coassociativity, the counit laws, the antipode law, and that `Δ`
    /// respects the relations, all as exact identities.
    pub fn verify_hopf(&self) -> Result<()> {
        let r = self.rank();
        if r == 0 {
            return Ok(());
        }
        let mut names = Vec::new();
        for c in ["a", "b", "c"] {
            names.extend((0..r).map(|i| format!("_{c}{i}")));
        }
        let ring = PolyRing::from_names(self.field, names);
        let v = |copy: usize, i: usize| MultiPoly::var(&ring, copy * r + i);
        let rels = |copy: usize| -> Vec<MultiPoly> {
            let map: Vec<usize> = (0..r).map(|i| copy * r + i).collect();
            self.relations()
                .iter()
                .map(|f| f.rename_into(&ring, &map))
                .collect()
        };
        let mut all = Vec::new();
        for c in 0..3 {
            all.extend(rels(c));
        }
        let triple = Ideal::new(&ring, all);
        let pair = Ideal::new(&ring, [rels(0), rels(1)].concat());
        let single = Ideal::new(&ring, rels(0));
        for i in 0..r {
            let name = &self.t_names()[i];
            // (Δ ⊗ id)Δ vs (id ⊗ Δ)Δ
            let lhs = self.comultiply(i, &self.comultiply(i, &v(0, i), &v(1, i)), &v(2, i));
            let rhs = self.comultiply(i, &v(0, i), &self.comultiply(i, &v(1, i), &v(2, i)));
            if !triple.contains(&lhs.sub(&rhs)) {
                return Err(Error::HopfViolation(format!("coassociativity on {name}")));
            }
            let eps = MultiPoly::constant(&ring, self.counit(i) as i64);
            for (a, b) in [(eps.clone(), v(0, i)), (v(0, i), eps.clone())] {
                if !single.contains(&self.comultiply(i, &a, &b).sub(&v(0, i))) {
                    return Err(Error::HopfViolation(format!("counit on {name}")));
                }
            }
            let s = self.comultiply(i, &self.antipode(i, &v(0, i)), &v(0, i));
            if !single.contains(&s.sub(&eps)) {
                return Err(Error::HopfViolation(format!("antipode on {name}")));
            }
            let rel = &self.relations()[i];
            let mut imgs: Vec<MultiPoly> = (0..r).map(|j| v(0, j)).collect();
            imgs[i] = self.comultiply(i, &v(0, i), &v(1, i));
            if !pair.contains(&rel.substitute(&ring, &imgs)) {
                return Err(Error::HopfViolation(format!("comultiplication on relation of {name}")));
            }
        }
        Ok(())
    }

    /// Descriptor `alpha(1) x mu(2)`, or `trivial`.
    pub fn descriptor(&self) -> String {
        if self.factors.is_empty() {
            return "trivial".into();
        }
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

impl fmt::Display for FiniteGroupScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}; G = {}", self.field.p(), self.descriptor())
    }
}

fn parse_descriptor(s: &str) -> Result<(Option<u64>, Vec<Factor>)> {
    let err = |msg: String| Error::Parse { pos: 0, msg };
    let mut p = None;
    let mut body = s.trim();
    if let Some((head, rest)) = body.split_once(';') {
        let head = head.trim();
        let v = head
            .strip_prefix("p")
            .and_then(|h| h.trim().strip_prefix('='))
            .ok_or_else(|| err(format!("expected p=<prime>, found {head:?}")))?;
        p = Some(
            v.trim()
                .parse::<u64>()
                .map_err(|_| err(format!("bad characteristic {v:?}")))?,
        );
        body = rest.trim();
    }
    if let Some(rest) = body.strip_prefix('G') {
        body = rest
            .trim()
            .strip_prefix('=')
            .ok_or_else(|| err("expected '=' after G".into()))?
            .trim();
    }
    if body.is_empty() || body == "trivial" || body == "1" {
        return Ok((p, Vec::new()));
    }
    let mut factors = Vec::new();
    for part in body.split(|c| c == 'x' || c == '×') {
        let part = part.trim();
        let (kind, rest) = if let Some(r) = part.strip_prefix("alpha") {
            (FactorKind::Alpha, r)
        } else if let Some(r) = part.strip_prefix("mu") {
            (FactorKind::Mu, r)
        } else {
            return Err(err(format!("unknown group factor {part:?}")));
        };
        let m = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().parse::<u32>().ok())
            .ok_or_else(|| err(format!("expected {part:?} to look like alpha(m) or mu(m)")))?;
        factors.push(Factor { kind, m });
    }
    Ok((p, factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_examples() {
        let a2 = FiniteGroupScheme::new(2, &[Factor::alpha(1)]).unwrap();
        assert_eq!(a2.order(), 2);
        assert_eq!(a2.algebra().vector_space_dim().finite(), Some(2));
        let mu4 = FiniteGroupScheme::new(2, &[Factor::mu(2)]).unwrap();
        assert_eq!(mu4.order(), 4);
        // T^4 - 1 = (T - 1)^4 over F_2: the algebra is local
        let t = mu4.algebra().var(0);
        let u = t.sub(&MultiPoly::one(mu4.algebra().ring()));
        assert!(mu4.algebra().is_zero(&u.pow(4)));
        assert!(!mu4.algebra().is_zero(&u.pow(3)));
        let g = FiniteGroupScheme::new(3, &[Factor::alpha(1), Factor::alpha(1)]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.basis().len(), 9);
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(
            FiniteGroupScheme::new(4, &[Factor::alpha(1)]).unwrap_err(),
            Error::InvalidPrime(4)
        );
        assert_eq!(
            FiniteGroupScheme::new(2, &[Factor::mu(0)]).unwrap_err(),
            Error::InvalidExponent
        );
    }

    #[test]
    fn descriptors() {
        let g = FiniteGroupScheme::parse("p=2; G = alpha(1) x mu(2)", None).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.to_string(), "p=2; G = alpha(1) x mu(2)");
        let h = FiniteGroupScheme::parse("mu(1)", Some(3)).unwrap();
        assert_eq!(h.t_names(), vec!["T"]);
        assert!(FiniteGroupScheme::parse("trivial", Some(5)).unwrap().is_trivial());
        assert!(FiniteGroupScheme::parse("beta(1)", Some(5)).is_err());
        assert!(FiniteGroupScheme::parse("p=3; alpha(1)", Some(2)).is_err());
    }
}
