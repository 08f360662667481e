//! Gaussian elimination over a finite field. Matrices are row-major `Vec<Vec<Elem>>`.

use crate::field::{Elem, Field};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, m: &mut [Vec<Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &[Vec<Elem>]) -> usize {
    let mut m = m.to_vec();
    rref(f, &mut m).len()
}

/// A basis of `{x : m x = 0}`, one vector per free column in increasing order.
pub fn nullspace(f: &Field, m: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let mut m = m.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; cols];
        v[free] = Elem::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[r][free]);
        }
        out.push(v);
    }
    out
}

/// Coordinates `x` with `sum_j x_j vectors[j] = target`, if any.
pub fn solve(f: &Field, vectors: &[Vec<Elem>], target: &[Elem]) -> Option<Vec<Elem>> {
    let n = vectors.len();
    let mut m: Vec<Vec<Elem>> = (0..target.len())
        .map(|i| vectors.iter().map(|v| v[i]).chain(std::iter::once(target[i])).collect())
        .collect();
    let pivots = rref(f, &mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Elem::ZERO; n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][n];
    }
    Some(x)
}
