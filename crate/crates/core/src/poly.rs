//! Sparse multivariate polynomials over `F_p`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Exponent vector, one entry per ring variable.
pub type Exponents = Vec<u32>;

/// A polynomial ring `F_p[x_1, ..., x_n]` with named variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: &[&str]) -> Arc<Self> {
        Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn from_names(field: PrimeField, vars: Vec<String>) -> Arc<Self> {
        Arc::new(PolyRing { field, vars })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring whose variables are `first` followed by this ring's variables.
    pub fn prepend(&self, first: &[String]) -> Arc<Self> {
        let mut vars = first.to_vec();
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            field: self.field,
            vars,
        })
    }

    pub fn append(&self, last: &[String]) -> Arc<Self> {
        let mut vars = self.vars.clone();
        vars.extend(last.iter().cloned());
        Arc::new(PolyRing {
            field: self.field,
            vars,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A polynomial; terms are keyed by exponent vector and never store zero.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponents, u32>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field().reduce_i64(c);
        let mut p = Self::zero(ring);
        if c != 0 {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, 1)
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable {name} in ring"));
        Self::var(ring, i)
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Exponents, c: u32) -> Self {
        debug_assert_eq!(exps.len(), ring.nvars());
        let mut p = Self::zero(ring);
        let c = c % ring.field().p();
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Exponents, u32)>) -> Self {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &PrimeField {
        self.ring.field()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, u32> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, u32> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> u32 {
        let z = vec![0; self.ring.nvars()];
        *self.terms.get(&z).unwrap_or(&0)
    }

    pub fn coeff(&self, e: &[u32]) -> u32 {
        *self.terms.get(e).unwrap_or(&0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: u32) {
        let k = *self.ring.field();
        let c = c % k.p();
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = k.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            same_ring(&self.ring, &o.ring),
            "polynomials from different rings: {:?} vs {:?}",
            self.ring.vars(),
            o.ring.vars()
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_ring(o);
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let k = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), k.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let k = *self.field();
        let c = c % k.p();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, &a)| (e.clone(), k.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ring(o);
        let k = *self.field();
        let mut acc: BTreeMap<Exponents, u32> = BTreeMap::new();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = k.mul(c1, c2);
                let slot = acc.entry(e).or_insert(0);
                *slot = k.add(*slot, c);
            }
        }
        acc.retain(|_, c| *c != 0);
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc,
        }
    }

    pub fn mul_monomial(&self, m: &[u32], c: u32) -> Self {
        let k = *self.field();
        let c = c % k.p();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), k.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let k = *self.field();
        let mut r = Self::zero(&self.ring);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let f = (e[i] as u64 % k.p() as u64) as u32;
            if f == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            r.add_term(e2, k.mul(c, f));
        }
        r
    }

    /// Substitutes `images[i]` for variable `i`; the images may live in another ring.
    /// `reduce` is applied to intermediate products to keep them small.
    pub fn substitute_with(
        &self,
        target: &Arc<PolyRing>,
        images: &[MultiPoly],
        reduce: &dyn Fn(MultiPoly) -> MultiPoly,
    ) -> MultiPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|g| vec![MultiPoly::one(target), g.clone()])
            .collect();
        let mut result = MultiPoly::zero(target);
        for (e, &c) in &self.terms {
            let mut term = MultiPoly::constant(target, c as i64);
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[i].len() <= d as usize {
                    let next = reduce(powers[i].last().unwrap().mul(&images[i]));
                    powers[i].push(next);
                }
                term = reduce(term.mul(&powers[i][d as usize]));
            }
            result = result.add(&term);
        }
        reduce(result)
    }

    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[MultiPoly]) -> MultiPoly {
        self.substitute_with(target, images, &|p| p)
    }

    /// Reinterprets the polynomial in `target`, mapping variable `i` to `target` variable `map[i]`.
    pub fn rename_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> MultiPoly {
        let n = target.nvars();
        let mut r = MultiPoly::zero(target);
        for (e, &c) in &self.terms {
            let mut e2 = vec![0u32; n];
            for (i, &d) in e.iter().enumerate() {
                e2[map[i]] += d;
            }
            r.add_term(e2, c);
        }
        r
    }

    /// Embeds into a ring whose variables contain all of this ring's names.
    pub fn embed(&self, target: &Arc<PolyRing>) -> MultiPoly {
        if same_ring(&self.ring, target) {
            return self.clone();
        }
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .unwrap_or_else(|| panic!("variable {v} missing from target ring"))
            })
            .collect();
        self.rename_into(target, &map)
    }

    /// Evaluates at a point of `F_p^n`.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let k = *self.field();
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let v = e
                .iter()
                .zip(point)
                .fold(c, |m, (&d, &x)| k.mul(m, k.pow(x, d as u64)));
            k.add(acc, v)
        })
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// Scales so the leading coefficient under degrevlex is one.
    pub fn make_monic(&self) -> Self {
        match self.sorted_terms().first() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field().inv(*c)),
        }
    }

    /// Terms sorted by degrevlex, largest first; this is the display order.
    pub fn sorted_terms(&self) -> Vec<(Exponents, u32)> {
        let mut t: Vec<(Exponents, u32)> = self.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        t.sort_by(|a, b| crate::order::MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        t
    }

    /// Leading term for `order`.
    pub fn leading(&self, order: crate::order::MonomialOrder) -> Option<(Exponents, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(e, &c)| (e.clone(), c))
    }

    /// Exact quotient `self / g` if `g` divides `self` in the polynomial ring.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        self.check_ring(g);
        let (glm, glc) = g.sorted_terms().into_iter().next()?;
        let k = *self.field();
        let inv = k.inv(glc);
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.ring);
        while let Some((lm, lc)) = rem.sorted_terms().into_iter().next() {
            if !lm.iter().zip(&glm).all(|(a, b)| a >= b) {
                return None;
            }
            let shift: Exponents = lm.iter().zip(&glm).map(|(a, b)| a - b).collect();
            let c = k.mul(lc, inv);
            q.add_term(shift.clone(), c);
            rem = rem.sub(&g.mul_monomial(&shift, c));
        }
        Some(q)
    }

    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Self> {
        Parser::new(ring, s).parse()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if c != 1 || is_const {
                factors.push(c.to_string());
            }
            for (i, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], d)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Recursive-descent parser for `3*x^2*y + y - 1`-style input.
/// Parentheses and unary minus are accepted as well.
struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<PolyRing>, s: &'a str) -> Self {
        Parser {
            ring,
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<u64>().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let p = self.ring.field().p() as u64;
                Ok(MultiPoly::constant(self.ring, (n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(MultiPoly::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}
