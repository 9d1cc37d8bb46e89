//! Polynomial matrices: determinants and Fitting ideals.

use crate::ideal::{Ideal, QuotientRing};
use crate::poly::MultiPoly;

/// Determinant of a square matrix over the polynomial ring, by fraction-free elimination.
pub fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix");
    let ring = m[0][0].ring().clone();
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(&ring);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(&ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `i`-th Fitting ideal of the module `R^c / (rows of m)`, where every row of `m` has
/// length `c`. The result contains the defining ideal of `R`.
pub fn fitting_ideal(m: &[Vec<MultiPoly>], cols: usize, i: usize, r: &QuotientRing) -> Ideal {
    let k = *r.ring().field();
    let mut rows: Vec<Vec<MultiPoly>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), cols);
            row.iter().map(|e| r.reduce(e)).collect()
        })
        .filter(|row: &Vec<MultiPoly>| row.iter().any(|e| !e.is_zero()))
        .collect();
    let mut c = cols;
    // A unit pivot removes one generator and one relation without changing Fitting ideals.
    while let Some((pr, pc)) = rows.iter().enumerate().find_map(|(a, row)| {
        row.iter()
            .position(|e| e.is_constant() && !e.is_zero())
            .map(|b| (a, b))
    }) {
        let pivot = rows.remove(pr);
        let inv = k.inv(pivot[pc].constant_term());
        rows = rows
            .into_iter()
            .map(|row| {
                let f = row[pc].scale(inv);
                row.iter()
                    .zip(&pivot)
                    .enumerate()
                    .filter(|(j, _)| *j != pc)
                    .map(|(_, (e, p))| r.reduce(&e.sub(&f.mul(p))))
                    .collect::<Vec<_>>()
            })
            .filter(|row: &Vec<MultiPoly>| row.iter().any(|e| !e.is_zero()))
            .collect();
        c -= 1;
    }
    let base = r.defining_ideal().clone();
    if i >= c {
        return Ideal::unit(r.ring());
    }
    let size = c - i;
    if size > rows.len() {
        return base.minimalized();
    }
    let mut gens = Vec::new();
    for rs in subsets(rows.len(), size) {
        for cs in subsets(c, size) {
            let sub: Vec<Vec<MultiPoly>> = rs
                .iter()
                .map(|&a| cs.iter().map(|&b| rows[a][b].clone()).collect())
                .collect();
            let d = r.reduce(&det(&sub));
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    base.add_gens(&gens).minimalized()
}
