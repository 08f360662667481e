//! Truncated power series over `F_{p^e}` and the shuffle-algebra operations on them.
//!
//! A [`Series`] of order `N` is known modulo `X^N`. Every operation records the exact
//! order up to which its result is determined; nothing is padded with zeros.

use num_bigint::BigInt;

use crate::combinat::binomial_rows;
use crate::error::{Error, Result};
use crate::field::{exact_div_p, Elem, Field, LiftElement, LiftModP2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Series {
    /// A series of order `coeffs.len()`, which must be positive.
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Result<Series> {
        if coeffs.is_empty() {
            return Err(Error::OrderExhausted("a series needs order >= 1".into()));
        }
        Ok(Series { field: field.clone(), coeffs })
    }

    /// From prime-field integers, reduced modulo `p`.
    pub fn from_ints(field: &Field, values: &[i64]) -> Result<Series> {
        Series::new(field, values.iter().map(|&v| field.from_int(v)).collect())
    }

    /// The polynomial `coeffs` viewed as a series known to `order`.
    pub fn from_poly(field: &Field, coeffs: &[Elem], order: usize) -> Result<Series> {
        let mut c: Vec<Elem> = coeffs.iter().copied().take(order).collect();
        c.resize(order, Elem::ZERO);
        Series::new(field, c)
    }

    pub fn from_fn(field: &Field, order: usize, f: impl FnMut(usize) -> Elem) -> Result<Series> {
        Series::new(field, (0..order).map(f).collect())
    }

    pub fn zero(field: &Field, order: usize) -> Result<Series> {
        Series::from_poly(field, &[], order)
    }

    pub fn one(field: &Field, order: usize) -> Result<Series> {
        Series::from_poly(field, &[Elem::ONE], order)
    }

    /// The monomial `X` known to `order`.
    pub fn x(field: &Field, order: usize) -> Result<Series> {
        Series::from_poly(field, &[Elem::ZERO, Elem::ONE], order)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Elem {
        self.coeffs[n]
    }

    pub fn constant_term(&self) -> Elem {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Member of the maximal ideal `m = X K[[X]]`.
    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Member of the affine set `1 + m`.
    pub fn in_one_plus_m(&self) -> bool {
        self.coeffs[0] == Elem::ONE
    }

    pub fn truncate(&self, order: usize) -> Result<Series> {
        if order == 0 || order > self.order() {
            return Err(Error::OrderExhausted(format!(
                "cannot truncate order {} to {order}",
                self.order()
            )));
        }
        Series::new(&self.field, self.coeffs[..order].to_vec())
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Field, Elem, Elem) -> Elem) -> Result<Series> {
        self.field.check_same(&other.field)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n).map(|i| f(&self.field, self.coeffs[i], other.coeffs[i])).collect();
        Series::new(&self.field, coeffs)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, Field::add)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, Field::sub)
    }

    pub fn neg(&self) -> Series {
        self.map(|f, c| f.neg(c))
    }

    pub fn scale(&self, c: Elem) -> Series {
        self.map(|f, x| f.mul(c, x))
    }

    fn map(&self, g: impl Fn(&Field, Elem) -> Elem) -> Series {
        Series {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| g(&self.field, c)).collect(),
        }
    }

    /// Order of `1 + self` with the constant term replaced.
    pub fn with_constant(&self, c: Elem) -> Series {
        let mut out = self.clone();
        out.coeffs[0] = c;
        out
    }

    /// Ordinary (Cauchy) product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.field.check_same(&other.field)?;
        let n = self.order().min(other.order());
        let f = &self.field;
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Series::new(f, out)
    }

    /// Shuffle product: `gamma_n = sum_k C(n,k) alpha_k beta_{n-k}`.
    pub fn shuffle(&self, other: &Series) -> Result<Series> {
        self.field.check_same(&other.field)?;
        let n = self.order().min(other.order());
        Series::new(&self.field, shuffle_coeffs(&self.field, &self.coeffs[..n], &other.coeffs[..n]))
    }

    /// Shift `tau(sum a_n X^n) = sum a_{n+1} X^n`; the order drops by one.
    pub fn tau(&self) -> Result<Series> {
        if self.order() < 2 {
            return Err(Error::OrderExhausted("tau of an order-1 series".into()));
        }
        Series::new(&self.field, self.coeffs[1..].to_vec())
    }

    /// `C_{k,f} = sum_n gamma_{k + n p^f} X^n`.
    pub fn section(&self, k: usize, f: u32) -> Result<Series> {
        let p = self.field.characteristic() as usize;
        let stride = p.checked_pow(f);
        if let Some(s) = stride {
            if k >= s {
                return Err(Error::OutOfRange(format!("section index {k} >= p^{f} = {s}")));
            }
        }
        if k >= self.order() {
            return Err(Error::OrderExhausted(format!(
                "section index {k} needs order > {k}, have {}",
                self.order()
            )));
        }
        let stride = stride.unwrap_or(usize::MAX);
        let order = (self.order() - k - 1) / stride + 1;
        let coeffs = (0..order).map(|n| self.coeffs[k + n * stride]).collect();
        Series::new(&self.field, coeffs)
    }

    /// Frobenius substitution `X -> X^p` on the exponents; order becomes `p(N-1)+1`.
    pub fn frobenius_subst(&self) -> Series {
        let p = self.field.characteristic() as usize;
        let order = p * (self.order() - 1) + 1;
        let mut coeffs = vec![Elem::ZERO; order];
        for (n, &c) in self.coeffs.iter().enumerate() {
            coeffs[n * p] = c;
        }
        Series { field: self.field.clone(), coeffs }
    }

    /// `n`-fold shuffle power by binary exponentiation.
    pub fn shuffle_pow(&self, mut n: u64) -> Series {
        let mut acc = Series::one(&self.field, self.order()).expect("positive order");
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.shuffle(&base).expect("same field");
            }
            n >>= 1;
            if n > 0 {
                base = base.shuffle(&base).expect("same field");
            }
        }
        acc
    }

    /// Inverse in the shuffle group: `c^{-1} (1+A')^{sh (p-1)}` for `self = c(1+A')`.
    pub fn shuffle_inv(&self) -> Result<Series> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotShuffleUnit);
        }
        let c_inv = self.field.inv(c)?;
        let unit = self.scale(c_inv);
        let p = self.field.characteristic() as u64;
        Ok(unit.shuffle_pow(p - 1).scale(c_inv))
    }

    /// `exp_!` on `m`, from `beta_0 = 1`, `beta_{n+1} = sum_k C(n,k) beta_k alpha_{n+1-k}`.
    pub fn exp_shriek(&self) -> Result<Series> {
        if !self.in_maximal_ideal() {
            return Err(Error::NotInMaximalIdeal);
        }
        let f = &self.field;
        let order = self.order();
        let rows = binomial_rows(f.characteristic(), order);
        let mut buf = Vec::new();
        let mut beta = vec![Elem::ZERO; order];
        beta[0] = Elem::ONE;
        let alpha = &self.coeffs;
        for n in 0..order - 1 {
            let row = rows.row(n, &mut buf);
            beta[n + 1] = if f.is_prime_field() {
                let p = f.characteristic() as u64;
                let mut acc = 0u64;
                for &(k, c) in row {
                    let k = k as usize;
                    acc += (c as u64 * beta[k].0 as u64) % p * alpha[n + 1 - k].0 as u64;
                }
                Elem((acc % p) as u32)
            } else {
                let mut acc = Elem::ZERO;
                for &(k, c) in row {
                    let k = k as usize;
                    let t = f.mul(beta[k], alpha[n + 1 - k]);
                    acc = f.add(acc, f.mul(Elem(c), t));
                }
                acc
            };
        }
        Series::new(f, beta)
    }

    /// `log_!` on `1+m`: `tau(log_!(B)) = B^{sh(p-1)} sh tau(B)` with constant term 0.
    pub fn log_shriek(&self) -> Result<Series> {
        if !self.in_one_plus_m() {
            return Err(Error::NotInOnePlusM);
        }
        let f = &self.field;
        let order = self.order();
        let mut out = vec![Elem::ZERO; order];
        if order > 1 {
            let p = f.characteristic() as u64;
            let tail = self.tau()?;
            let d = self.truncate(order - 1)?.shuffle_pow(p - 1).shuffle(&tail)?;
            out[1..].copy_from_slice(d.coeffs());
        }
        Series::new(f, out)
    }

    /// The `p`-homogeneous form with `A^{sh p} = alpha_0^p + p mu_p(A)` over the integers,
    /// evaluated on integer lifts of the coefficients.
    pub fn mu_p(&self) -> Result<Series> {
        let f = &self.field;
        let ring = LiftModP2::new(f);
        let e = ring.e;
        let order = self.order();
        let lifted: Vec<u64> = self.coeffs.iter().flat_map(|&c| ring.lift(f, c)).collect();
        let p = f.characteristic() as u64;
        let mut power = lift_shuffle_pow(&ring, &lifted, order, p);

        // subtract alpha_0^p from the constant term
        let a0 = &lifted[..e];
        let mut a0_pow = vec![0u64; e];
        a0_pow[0] = 1;
        for _ in 0..p {
            a0_pow = ring.mul(&a0_pow, a0);
        }
        for i in 0..e {
            power[i] = (power[i] + ring.m - a0_pow[i]) % ring.m;
        }

        let mut out = Vec::with_capacity(order);
        for n in 0..order {
            let coords = power[n * e..(n + 1) * e].iter().map(|&c| BigInt::from(c)).collect();
            let q = exact_div_p(&LiftElement::new(coords), f)?;
            out.push(f.reduce(&q));
        }
        Series::new(f, out)
    }
}

pub(crate) fn shuffle_coeffs(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n_max = a.len().min(b.len());
    let rows = binomial_rows(f.characteristic(), n_max);
    let mut buf = Vec::new();
    let mut out = vec![Elem::ZERO; n_max];
    if f.is_prime_field() {
        let p = f.characteristic() as u64;
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for &(k, c) in rows.row(n, &mut buf) {
                let k = k as usize;
                acc += (c as u64 * a[k].0 as u64) % p * b[n - k].0 as u64;
            }
            *slot = Elem((acc % p) as u32);
        }
    } else {
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc = Elem::ZERO;
            for &(k, c) in rows.row(n, &mut buf) {
                let k = k as usize;
                let t = f.mul(a[k], b[n - k]);
                if !t.is_zero() {
                    acc = f.add(acc, f.mul(Elem(c), t));
                }
            }
            *slot = acc;
        }
    }
    out
}

/// Shuffle product in the lift ring modulo `p^2` with exact binomials reduced mod `p^2`.
fn lift_shuffle(ring: &LiftModP2, a: &[u64], b: &[u64], order: usize) -> Vec<u64> {
    let e = ring.e;
    let m = ring.m;
    let mut out = vec![0u64; order * e];
    let mut row: Vec<u64> = Vec::with_capacity(order);
    let mut scratch = Vec::new();
    for n in 0..order {
        // Pascal's rule, row n from row n-1
        row.push(1);
        for k in (1..n).rev() {
            row[k] = (row[k] + row[k - 1]) % m;
        }
        let acc = &mut out[n * e..(n + 1) * e];
        for (k, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let x = &a[k * e..(k + 1) * e];
            let y = &b[(n - k) * e..(n - k + 1) * e];
            ring.mul_acc(acc, c, x, y, &mut scratch);
        }
    }
    out
}

fn lift_shuffle_pow(ring: &LiftModP2, a: &[u64], order: usize, mut n: u64) -> Vec<u64> {
    let e = ring.e;
    let mut acc = vec![0u64; order * e];
    acc[0] = 1;
    let mut base = a.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            acc = lift_shuffle(ring, &acc, &base, order);
        }
        n >>= 1;
        if n > 0 {
            base = lift_shuffle(ring, &base, &base, order);
        }
    }
    acc
}
