//! Non-commutative series over a finite alphabet, truncated by total degree.
//!
//! Coefficients are stored densely, one per word of length at most `degree`, ordered
//! by length and then lexicographically. Letters are `0..letters`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;
use crate::series::Series;

pub type Word = Vec<usize>;

/// Words of length at most this many letters are enumerable at all.
const MAX_WORDS: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcSeries {
    field: Field,
    letters: usize,
    degree: usize,
    coeffs: Vec<Elem>,
}

/// Number of words of length `< n` over `k` letters, if representable.
fn offset(k: usize, n: usize) -> Option<usize> {
    if k == 1 {
        return Some(n);
    }
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..n {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(k)?;
    }
    Some(total)
}

impl NcSeries {
    pub fn zero(field: &Field, letters: usize, degree: usize) -> Result<NcSeries> {
        if letters == 0 {
            return Err(Error::OutOfRange("alphabet must have at least one letter".into()));
        }
        let n = offset(letters, degree + 1)
            .filter(|&n| n <= MAX_WORDS)
            .ok_or_else(|| Error::DegreeBudget(format!("{letters} letters to degree {degree} is too many words")))?;
        Ok(NcSeries { field: field.clone(), letters, degree, coeffs: vec![Elem::ZERO; n] })
    }

    pub fn one(field: &Field, letters: usize, degree: usize) -> Result<NcSeries> {
        let mut s = NcSeries::zero(field, letters, degree)?;
        s.coeffs[0] = Elem::ONE;
        Ok(s)
    }

    /// Sum of `c * w`; words longer than `degree` are an error.
    pub fn from_terms(field: &Field, letters: usize, degree: usize, terms: &[(Word, Elem)]) -> Result<NcSeries> {
        let mut s = NcSeries::zero(field, letters, degree)?;
        for (w, c) in terms {
            let i = s.index(w)?;
            s.coeffs[i] = field.add(s.coeffs[i], *c);
        }
        Ok(s)
    }

    pub fn from_fn(field: &Field, letters: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Elem) -> Result<NcSeries> {
        let mut s = NcSeries::zero(field, letters, degree)?;
        for i in 0..s.coeffs.len() {
            let w = s.word(i);
            s.coeffs[i] = f(&w);
        }
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn raw_coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Number of words of length at most `degree`.
    pub fn word_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Position of `w` in the dense coefficient vector.
    pub fn index(&self, w: &[usize]) -> Result<usize> {
        if w.len() > self.degree {
            return Err(Error::DegreeBudget(format!("word of length {} exceeds degree {}", w.len(), self.degree)));
        }
        let mut i = 0usize;
        for &x in w {
            if x >= self.letters {
                return Err(Error::OutOfRange(format!("letter {} not in alphabet of {}", x + 1, self.letters)));
            }
            i = i * self.letters + x;
        }
        Ok(offset(self.letters, w.len()).expect("bounded") + i)
    }

    /// The word at dense position `i`.
    pub fn word(&self, i: usize) -> Word {
        let k = self.letters;
        let mut len = 0;
        while offset(k, len + 1).expect("bounded") <= i {
            len += 1;
        }
        let mut r = i - offset(k, len).expect("bounded");
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = r % k;
            r /= k;
        }
        w
    }

    pub fn coeff(&self, w: &[usize]) -> Result<Elem> {
        Ok(self.coeffs[self.index(w)?])
    }

    pub fn constant_term(&self) -> Elem {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> Vec<(Word, Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (self.word(i), c))
            .collect()
    }

    pub fn truncate(&self, degree: usize) -> Result<NcSeries> {
        if degree > self.degree {
            return Err(Error::DegreeBudget(format!("cannot raise degree {} to {degree}", self.degree)));
        }
        let n = offset(self.letters, degree + 1).expect("bounded");
        Ok(NcSeries { coeffs: self.coeffs[..n].to_vec(), degree, ..self.clone() })
    }

    fn check_compatible(&self, other: &NcSeries) -> Result<()> {
        self.field.check_same(&other.field)?;
        if self.letters != other.letters {
            return Err(Error::AlphabetMismatch(self.letters, other.letters));
        }
        Ok(())
    }

    fn zip_with(&self, other: &NcSeries, g: impl Fn(&Field, Elem, Elem) -> Elem) -> Result<NcSeries> {
        self.check_compatible(other)?;
        let degree = self.degree.min(other.degree);
        let mut out = self.truncate(degree)?;
        for (x, &y) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *x = g(&self.field, *x, y);
        }
        Ok(out)
    }

    pub fn add(&self, other: &NcSeries) -> Result<NcSeries> {
        self.zip_with(other, Field::add)
    }

    pub fn sub(&self, other: &NcSeries) -> Result<NcSeries> {
        self.zip_with(other, Field::sub)
    }

    pub fn scale(&self, c: Elem) -> NcSeries {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = self.field.mul(c, *x);
        }
        out
    }

    /// Replaces every letter by `X`: coefficient `n` is the sum over words of length `n`.
    pub fn collapse(&self) -> Series {
        let f = &self.field;
        let mut c = vec![Elem::ZERO; self.degree + 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            let n = self.word_len(i);
            c[n] = f.add(c[n], x);
        }
        Series::new(f, c).expect("positive order")
    }

    /// The one-letter series with the coefficients of `s`.
    pub fn from_series(s: &Series) -> NcSeries {
        NcSeries { field: s.field().clone(), letters: 1, degree: s.order() - 1, coeffs: s.coeffs().to_vec() }
    }

    fn word_len(&self, i: usize) -> usize {
        let mut len = 0;
        while offset(self.letters, len + 1).expect("bounded") <= i {
            len += 1;
        }
        len
    }

    /// Index of the word with its last letter removed, for a nonempty word at `i`.
    fn prefix_index(&self, i: usize, len: usize) -> usize {
        let k = self.letters;
        offset(k, len - 1).expect("bounded") + (i - offset(k, len).expect("bounded")) / k
    }
}

/// Shuffle product by the recursion `(rho(T1)A sh rho(T2)B, w x) =
/// (rho(x T1)A sh rho(T2)B, w) + (rho(T1)A sh rho(x T2)B, w)`.
pub fn nc_shuffle(a: &NcSeries, b: &NcSeries) -> Result<NcSeries> {
    a.check_compatible(b)?;
    let degree = a.degree.min(b.degree);
    let mut out = NcSeries::zero(&a.field, a.letters, degree)?;
    let mut memo: HashMap<(usize, Word, Word), Elem> = HashMap::new();
    for i in 0..out.coeffs.len() {
        let w = out.word(i);
        out.coeffs[i] = shuffle_rec(a, b, &w, &mut Vec::new(), &mut Vec::new(), &mut memo);
    }
    Ok(out)
}

/// `(rho(t1)A sh rho(t2)B, w)`, with `t1`, `t2` stored reversed so prepending is a push.
fn shuffle_rec(
    a: &NcSeries,
    b: &NcSeries,
    w: &[usize],
    t1: &mut Vec<usize>,
    t2: &mut Vec<usize>,
    memo: &mut HashMap<(usize, Word, Word), Elem>,
) -> Elem {
    let f = &a.field;
    let Some((&x, rest)) = w.split_last() else {
        let ca = a.coeffs[index_rev(a, t1)];
        let cb = b.coeffs[index_rev(b, t2)];
        return f.mul(ca, cb);
    };
    let key = (index_fwd(a.letters, w), t1.clone(), t2.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    t1.push(x);
    let left = shuffle_rec(a, b, rest, t1, t2, memo);
    t1.pop();
    t2.push(x);
    let right = shuffle_rec(a, b, rest, t1, t2, memo);
    t2.pop();
    let v = f.add(left, right);
    memo.insert(key, v);
    v
}

fn index_fwd(k: usize, w: &[usize]) -> usize {
    let mut i = 0usize;
    for &x in w {
        i = i * k + x;
    }
    offset(k, w.len()).expect("bounded") + i
}

fn index_rev(s: &NcSeries, rev: &[usize]) -> usize {
    let mut i = 0usize;
    for &x in rev.iter().rev() {
        i = i * s.letters + x;
    }
    offset(s.letters, rev.len()).expect("bounded") + i
}

/// `rho(T)A = sum_X (A, X T) X`; the degree drops by `|T|`.
pub fn rho(t: &[usize], a: &NcSeries) -> Result<NcSeries> {
    if t.len() > a.degree {
        return Err(Error::DegreeBudget(format!("quotient word of length {} exceeds degree {}", t.len(), a.degree)));
    }
    if let Some(&x) = t.iter().find(|&&x| x >= a.letters) {
        return Err(Error::OutOfRange(format!("letter {} not in alphabet of {}", x + 1, a.letters)));
    }
    let mut out = NcSeries::zero(&a.field, a.letters, a.degree - t.len())?;
    let mut w = Vec::new();
    for i in 0..out.coeffs.len() {
        w.clear();
        w.extend(out.word(i));
        w.extend_from_slice(t);
        out.coeffs[i] = a.coeffs[a.index(&w)?];
    }
    Ok(out)
}

/// Rank of the truncated matrix with rows `rho(T)A`, `|T| <= l`, on words of length
/// at most `column_length = degree - l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankEstimate {
    pub rank: usize,
    pub l: usize,
    pub column_length: usize,
}

pub fn nc_closure_rank(a: &NcSeries, l: usize) -> Result<RankEstimate> {
    if 2 * l > a.degree {
        return Err(Error::DegreeBudget(format!("need 2L <= degree, have L = {l}, degree {}", a.degree)));
    }
    let column_length = a.degree - l;
    let cols = offset(a.letters, column_length + 1).expect("bounded");
    let probe = NcSeries::zero(&a.field, a.letters, l)?;
    let rows: Vec<Vec<Elem>> = (0..probe.coeffs.len())
        .map(|i| rho(&probe.word(i), a).map(|r| r.coeffs[..cols].to_vec()))
        .collect::<Result<_>>()?;
    Ok(RankEstimate { rank: linalg::rank(&a.field, &rows), l, column_length })
}

/// `(A, w) = u M_w v` with `M_{x1..xn} = M_{x1} ... M_{xn}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRep {
    pub field: Field,
    pub u: Vec<Elem>,
    pub matrices: Vec<Vec<Vec<Elem>>>,
    pub v: Vec<Elem>,
}

impl LinRep {
    pub fn new(field: &Field, u: Vec<Elem>, matrices: Vec<Vec<Vec<Elem>>>, v: Vec<Elem>) -> Result<LinRep> {
        let r = u.len();
        if v.len() != r || matrices.is_empty() || matrices.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::OutOfRange("linear representation dimensions disagree".into()));
        }
        Ok(LinRep { field: field.clone(), u, matrices, v })
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn letters(&self) -> usize {
        self.matrices.len()
    }
}

pub fn linrep_expand(rep: &LinRep, degree: usize) -> Result<NcSeries> {
    let f = &rep.field;
    let r = rep.dim();
    let mut out = NcSeries::zero(f, rep.letters(), degree)?;
    // row vectors u M_w, indexed like the coefficients
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(out.coeffs.len());
    let dot = |a: &[Elem], b: &[Elem]| a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    for i in 0..out.coeffs.len() {
        let row = if i == 0 {
            rep.u.clone()
        } else {
            let len = out.word_len(i);
            let x = (i - offset(rep.letters(), len).expect("bounded")) % rep.letters();
            let prev = &rows[out.prefix_index(i, len)];
            let m = &rep.matrices[x];
            (0..r).map(|c| (0..r).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(prev[j], m[j][c])))).collect()
        };
        out.coeffs[i] = dot(&row, &rep.v);
        rows.push(row);
    }
    Ok(out)
}

/// `exp_!` on series with constant term 0, by `(E, w x) = (E sh rho(x)A, w)`.
pub fn nc_exp_shriek(a: &NcSeries) -> Result<NcSeries> {
    if !a.constant_term().is_zero() {
        return Err(Error::NotInMaximalIdeal);
    }
    let mut e = NcSeries::one(&a.field, a.letters, a.degree)?;
    let quotients: Vec<NcSeries> = (0..a.letters).map(|x| rho(&[x], a)).collect::<Result<_>>()?;
    for n in 0..a.degree {
        let known = e.truncate(n)?;
        for (x, q) in quotients.iter().enumerate() {
            let s = nc_shuffle(&known, &q.truncate(n)?)?;
            let start = offset(a.letters, n).expect("bounded");
            for i in start..s.coeffs.len() {
                let mut w = s.word(i);
                w.push(x);
                let j = e.index(&w)?;
                e.coeffs[j] = s.coeffs[i];
            }
        }
    }
    Ok(e)
}

/// `log_!` on `1 + m`: `log_!(B) = sum_x (B^{sh(p-1)} sh rho(x)B) x`.
pub fn nc_log_shriek(b: &NcSeries) -> Result<NcSeries> {
    if b.constant_term() != Elem::ONE {
        return Err(Error::NotInOnePlusM);
    }
    let mut out = NcSeries::zero(&b.field, b.letters, b.degree)?;
    if b.degree == 0 {
        return Ok(out);
    }
    let p = b.field.characteristic() as u64;
    let power = nc_shuffle_pow(&b.truncate(b.degree - 1)?, p - 1)?;
    for x in 0..b.letters {
        let s = nc_shuffle(&power, &rho(&[x], b)?)?;
        for i in 0..s.coeffs.len() {
            let mut w = s.word(i);
            w.push(x);
            let j = out.index(&w)?;
            out.coeffs[j] = s.coeffs[i];
        }
    }
    Ok(out)
}

pub fn nc_shuffle_pow(a: &NcSeries, mut n: u64) -> Result<NcSeries> {
    let mut acc = NcSeries::one(&a.field, a.letters, a.degree)?;
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = nc_shuffle(&acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = nc_shuffle(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Shuffle inverse `c^{-1} (A/c)^{sh(p-1)}`.
pub fn nc_shuffle_inv(a: &NcSeries) -> Result<NcSeries> {
    let c = a.constant_term();
    if c.is_zero() {
        return Err(Error::NotShuffleUnit);
    }
    let c_inv = a.field.inv(c)?;
    let p = a.field.characteristic() as u64;
    Ok(nc_shuffle_pow(&a.scale(c_inv), p - 1)?.scale(c_inv))
}
