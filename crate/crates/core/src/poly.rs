//! Dense univariate polynomials as coefficient vectors, constant term first.
//! Normalized vectors carry no trailing zeros; the zero polynomial is empty.

use crate::field::{Elem, Field};

pub(crate) fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Degree, with `-1` for the zero polynomial.
pub(crate) fn degree(a: &[Elem]) -> isize {
    a.iter().rposition(|c| !c.is_zero()).map_or(-1, |d| d as isize)
}

pub(crate) fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let get = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or(Elem::ZERO);
    trim((0..n).map(|i| f.add(get(a, i), get(b, i))).collect())
}

pub(crate) fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let get = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or(Elem::ZERO);
    trim((0..n).map(|i| f.sub(get(a, i), get(b, i))).collect())
}

pub(crate) fn scale(f: &Field, a: &[Elem], c: Elem) -> Vec<Elem> {
    trim(a.iter().map(|&x| f.mul(c, x)).collect())
}

pub(crate) fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero divisor");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Elem::ZERO; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub(crate) fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    match a.last() {
        None => a,
        Some(&lead) => scale(f, &a, f.inv(lead).expect("nonzero")),
    }
}
