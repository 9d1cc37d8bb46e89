//! Prime fields `F_p` and dense univariate polynomials over them.

use std::fmt;

use crate::error::Error;

/// The prime field `F_p`. Elements are plain `u32` values in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Largest supported characteristic; products of two elements must fit in a `u64`.
    pub const MAX_P: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self, Error> {
        if p > Self::MAX_P || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

/// Dense univariate polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn monomial(c: u32, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval(&self, k: &PrimeField, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }

    pub fn add(&self, k: &PrimeField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                k.add(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Self::from_coeffs(v)
    }

    pub fn sub(&self, k: &PrimeField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                k.sub(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Self::from_coeffs(v)
    }

    pub fn mul(&self, k: &PrimeField, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = k.add(v[i + j], k.mul(a, b));
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, k: &PrimeField, c: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn monic(&self, k: &PrimeField) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(k, k.inv(self.lead()))
    }

    /// Euclidean division, returns `(quotient, remainder)`.
    pub fn div_rem(&self, k: &PrimeField, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = k.inv(d.lead());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = k.sub(r[i - dd + j], k.mul(c, dc));
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, k: &PrimeField, d: &Self) -> Self {
        self.div_rem(k, d).1
    }

    pub fn gcd(&self, k: &PrimeField, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &PrimeField) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(c, (i as u64 % k.p() as u64) as u32))
            .collect();
        Self::from_coeffs(v)
    }

    pub fn pow_mod(&self, k: &PrimeField, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(k, m);
        let mut r = UniPoly::from_coeffs(vec![1]).rem(k, m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(k, &base).rem(k, m);
            }
            base = base.mul(k, &base).rem(k, m);
            e >>= 1;
        }
        r
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self, k: &PrimeField) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return UniPoly::from_coeffs(vec![1]);
        }
        let f = self.monic(k);
        let df = f.derivative(k);
        if df.is_zero() {
            // f = g(x^p) = h(x)^p over a prime field.
            let p = k.p() as usize;
            let h = UniPoly::from_coeffs(f.coeffs.iter().step_by(p).copied().collect());
            return h.squarefree_part(k);
        }
        let g = f.gcd(k, &df);
        let (mut core, _) = f.div_rem(k, &g);
        // Factors of multiplicity divisible by p survive in g with zero derivative.
        let rest = g.squarefree_part(k);
        let extra = rest.div_rem(k, &rest.gcd(k, &core)).0;
        core = core.mul(k, &extra);
        core.monic(k)
    }

    /// Roots in `F_p`, ascending.
    pub fn roots(&self, k: &PrimeField) -> Vec<u32> {
        if self.is_zero() {
            return k.elements().collect();
        }
        if (k.p() as u64) <= 1 << 16 {
            return k.elements().filter(|&a| self.eval(k, a) == 0).collect();
        }
        // Split off the rational part gcd(f, x^p - x) and find roots by equal-degree splitting.
        let x = UniPoly::from_coeffs(vec![0, 1]);
        let xp = x.pow_mod(k, k.p() as u64, self).sub(k, &x);
        let g = self.gcd(k, &xp);
        let mut out = Vec::new();
        split_linear(k, &g, 1, &mut out);
        out.sort_unstable();
        out
    }

    /// Monic irreducible factorization with multiplicities.
    pub fn factor(&self, k: &PrimeField) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut rest = self.monic(k);
        let sqf = rest.squarefree_part(k);
        for fac in distinct_degree_split(k, &sqf) {
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(k, &fac);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((fac, mult));
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        out
    }
}

fn split_linear(k: &PrimeField, f: &UniPoly, shift: u32, out: &mut Vec<u32>) {
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = f.monic(k);
            out.push(k.neg(m.coeffs[0]));
        }
        Some(_) => {
            // (x + shift)^((p-1)/2) - 1 separates roots for odd p.
            let mut s = shift;
            loop {
                let t = UniPoly::from_coeffs(vec![s % k.p(), 1]);
                let h = t
                    .pow_mod(k, (k.p() as u64 - 1) / 2, f)
                    .sub(k, &UniPoly::from_coeffs(vec![1]));
                let g = f.gcd(k, &h);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < f.degree().unwrap() {
                    let (q, _) = f.div_rem(k, &g);
                    split_linear(k, &g, s + 1, out);
                    split_linear(k, &q, s + 1, out);
                    return;
                }
                s += 1;
            }
        }
    }
}

/// Splits a monic squarefree polynomial into its irreducible factors using
/// distinct-degree factorization followed by Berlekamp-style splitting over `F_p`.
fn distinct_degree_split(k: &PrimeField, f: &UniPoly) -> Vec<UniPoly> {
    let mut result = Vec::new();
    let x = UniPoly::from_coeffs(vec![0, 1]);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            result.push(rest.monic(k));
            break;
        }
        h = h.pow_mod(k, k.p() as u64, &rest);
        let g = rest.gcd(k, &h.sub(k, &x));
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(k, &g, d, &mut result);
            rest = rest.div_rem(k, &g).0;
            h = h.rem(k, &rest);
        }
    }
    result
}

fn equal_degree_split(k: &PrimeField, f: &UniPoly, d: usize, out: &mut Vec<UniPoly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.monic(k));
        return;
    }
    // Berlekamp subalgebra: kernel of Frobenius - identity on F_p[x]/(f).
    let p = k.p() as u64;
    let x = UniPoly::from_coeffs(vec![0, 1]);
    let xp = x.pow_mod(k, p, f);
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut cur = UniPoly::from_coeffs(vec![1]);
    for i in 0..n {
        let mut row = vec![0u32; n];
        for (j, &c) in cur.coeffs.iter().enumerate() {
            row[j] = c;
        }
        row[i] = k.sub(row[i], 1);
        rows.push(row);
        cur = cur.mul(k, &xp).rem(k, f);
    }
    // rows[i] = coordinates of x^{ip} - x^i; kernel of the transpose map.
    let mut m = crate::linalg::FpMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            m.set(j, i, c);
        }
    }
    let kernel = m.kernel(k);
    let splitter = kernel
        .iter()
        .map(|v| UniPoly::from_coeffs(v.clone()))
        .find(|v| v.degree().unwrap_or(0) > 0)
        .expect("reducible squarefree polynomial has a nontrivial Berlekamp element");
    for c in k.elements() {
        let g = f.gcd(k, &splitter.sub(k, &UniPoly::from_coeffs(vec![c])));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let q = f.div_rem(k, &g).0;
            equal_degree_split(k, &g, d, out);
            equal_degree_split(k, &q, d, out);
            return;
        }
    }
    unreachable!("Berlekamp element failed to split");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(k.mul(a, k.inv(a)), 1);
        }
    }

    #[test]
    fn squarefree_in_char_two() {
        let k = PrimeField::new(2).unwrap();
        // (x^2 + x + 1)^2 * x^3 = x^3 (x^4 + x^2 + 1)
        let f = UniPoly::from_coeffs(vec![0, 0, 0, 1, 0, 1, 0, 1]);
        let s = f.squarefree_part(&k);
        assert_eq!(s, UniPoly::from_coeffs(vec![0, 1, 1, 1]));
    }

    #[test]
    fn factor_matches_brute_force() {
        let k = PrimeField::new(3).unwrap();
        // x^4 + 1 over F_3 = (x^2 + x + 2)(x^2 + 2x + 2)
        let f = UniPoly::from_coeffs(vec![1, 0, 0, 0, 1]);
        let fac = f.factor(&k);
        assert_eq!(fac.len(), 2);
        let prod = fac
            .iter()
            .fold(UniPoly::from_coeffs(vec![1]), |acc, (g, e)| {
                (0..*e).fold(acc, |a, _| a.mul(&k, g))
            });
        assert_eq!(prod, f);
        for (g, _) in &fac {
            assert_eq!(g.degree(), Some(2));
            assert!(g.roots(&k).is_empty());
        }
    }

    #[test]
    fn x2_x_1_irreducible_over_f2() {
        let k = PrimeField::new(2).unwrap();
        let f = UniPoly::from_coeffs(vec![1, 1, 1]);
        assert!(k.elements().all(|a| f.eval(&k, a) != 0));
        assert_eq!(f.factor(&k), vec![(f.clone(), 1)]);
    }
}
