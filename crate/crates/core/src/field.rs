//! Finite fields `F_{p^e}` and the integer lift ring used for exact division by `p`.
//!
//! Elements are packed as `u32` values `c0 + c1*p + ... + c_{e-1}*p^{e-1}` where
//! `c_i` are the coordinates in the power basis `1, t, ..., t^{e-1}` of
//! `F_p[t]/(modulus)`. Prime-field elements are therefore the packed values `0..p`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;
/// Largest supported cardinality (inclusive).
pub const MAX_CARDINALITY: u64 = 1 << 20;

/// A packed field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Field description together with precomputed arithmetic tables.
pub struct FieldCtx {
    p: u32,
    e: usize,
    modulus: Vec<u32>,
    q: u32,
    // discrete log tables, only for e > 1
    log: Vec<u32>,
    antilog: Vec<u32>,
    // full addition table for small extension fields
    add_table: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Cheaply clonable handle on a [`FieldCtx`].
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over F_p on coefficient vectors (constant term first).

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

/// Remainder of `a` modulo `b` over F_p; `b` must be nonzero and trimmed.
fn fp_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv) % p64;
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c * bi as u64) % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        fp_trim(&mut r);
    }
    r
}

/// Exhaustive irreducibility test by trial division with every monic polynomial
/// of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if fp_poly_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::with_modulus(p, vec![0, 1])
    }

    /// `F_{p^e}` with the lexicographically smallest monic irreducible modulus
    /// (coefficient list compared constant term first).
    pub fn extension(p: u32, e: usize) -> Result<Field> {
        if e == 1 {
            return Field::prime(p);
        }
        check_range(p, e)?;
        let count = (p as u64).pow(e as u32);
        for idx in 0..count {
            // enumerate (c0, c1, ..., c_{e-1}) lexicographically with c0 most significant
            let mut coeffs = vec![0u32; e + 1];
            let mut x = idx;
            for i in (0..e).rev() {
                coeffs[i] = (x % p as u64) as u32;
                x /= p as u64;
            }
            coeffs[e] = 1;
            if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
                return Field::with_modulus(p, coeffs);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {e} over F_{p}")))
    }

    /// `F_p[t]/(modulus)`; `modulus` lists coefficients constant term first and must be
    /// monic and irreducible.
    pub fn with_modulus(p: u32, mut modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() == 2 {
            // every linear modulus gives the same arithmetic on F_p
            modulus = vec![0, 1];
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let e = modulus.len() - 1;
        check_range(p, e)?;
        if modulus[e] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must lie in [0, {p})")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let q = (p as u64).pow(e as u32) as u32;
        let mut ctx = FieldCtx {
            p,
            e,
            modulus,
            q,
            log: Vec::new(),
            antilog: Vec::new(),
            add_table: Vec::new(),
        };
        if e > 1 {
            ctx.build_tables();
        }
        Ok(Field(Arc::new(ctx)))
    }

    /// Parses `"p"`, `"p^e"` or `"p^e:c0,c1,...,1"`.
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        let bad = || Error::InvalidField(format!("cannot parse field spec {spec:?}"));
        let (head, modulus) = match spec.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (spec, None),
        };
        let (p, e) = match head.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                e.trim().parse::<usize>().map_err(|_| bad())?,
            ),
            None => (head.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        if e == 0 {
            return Err(bad());
        }
        match modulus {
            None => Field::extension(p, e),
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != e + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus of degree {e} needs {} coefficients",
                        e + 1
                    )));
                }
                Field::with_modulus(p, coeffs)
            }
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.0
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.e
    }

    pub fn cardinality(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Canonical spec string, parseable by [`Field::parse`].
    pub fn spec(&self) -> String {
        if self.0.e == 1 {
            self.0.p.to_string()
        } else {
            let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("{}^{}:{}", self.0.p, self.0.e, m.join(","))
        }
    }

    pub fn check_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.spec(), other.spec()))
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_u64(&self, n: u64) -> Elem {
        Elem((n % self.0.p as u64) as u32)
    }

    /// The class of `t` in `F_p[t]/(modulus)`; zero in a prime field.
    pub fn generator(&self) -> Elem {
        if self.0.e == 1 {
            Elem(0)
        } else {
            Elem(self.0.p)
        }
    }

    pub fn from_packed(&self, v: u32) -> Result<Elem> {
        if v < self.0.q {
            Ok(Elem(v))
        } else {
            Err(Error::OutOfRange(format!("packed element {v} >= q = {}", self.0.q)))
        }
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() > self.0.e {
            return Err(Error::OutOfRange(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.0.e
            )));
        }
        let mut v = 0u32;
        for &c in coords.iter().rev() {
            if c >= self.0.p {
                return Err(Error::OutOfRange(format!("coordinate {c} >= p = {}", self.0.p)));
            }
            v = v * self.0.p + c;
        }
        Ok(Elem(v))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.0.coords(a.0)
    }

    /// If `a` lies in the prime subfield, its residue in `[0, p)`.
    pub fn prime_value(&self, a: Elem) -> Option<u32> {
        (a.0 < self.0.p).then_some(a.0)
    }

    /// Iterates over all `q` elements.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let c = &self.0;
        if c.e == 1 {
            let s = a.0 + b.0;
            Elem(if s >= c.p { s - c.p } else { s })
        } else if c.p == 2 {
            Elem(a.0 ^ b.0)
        } else if !c.add_table.is_empty() {
            Elem(c.add_table[(a.0 * c.q + b.0) as usize])
        } else {
            Elem(c.add_digits(a.0, b.0, false))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let c = &self.0;
        if c.e == 1 {
            Elem(if a.0 == 0 { 0 } else { c.p - a.0 })
        } else if c.p == 2 {
            a
        } else {
            Elem(c.add_digits(0, a.0, true))
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = &self.0;
        if c.e == 1 {
            Elem(((a.0 as u64 * b.0 as u64) % c.p as u64) as u32)
        } else if a.0 == 0 || b.0 == 0 {
            Elem(0)
        } else {
            let s = c.log[a.0 as usize] + c.log[b.0 as usize];
            let n = c.q - 1;
            Elem(c.antilog[(if s >= n { s - n } else { s }) as usize])
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let c = &self.0;
        if c.e == 1 {
            Ok(Elem(fp_inv(a.0, c.p)))
        } else {
            let n = c.q - 1;
            Ok(Elem(c.antilog[((n - c.log[a.0 as usize]) % n) as usize]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Lift to the integer coordinate ring `Z[t]/(modulus lifted to Z)`.
    pub fn lift(&self, a: Elem) -> LiftElement {
        LiftElement {
            coords: self.coords(a).into_iter().map(BigInt::from).collect(),
        }
    }

    /// Reduction of a lift element onto the field.
    pub fn reduce(&self, x: &LiftElement) -> Elem {
        let x = self.lift_normalize(x.coords.clone());
        let p = BigInt::from(self.0.p);
        let coords: Vec<u32> = x
            .iter()
            .map(|c| c.mod_floor(&p).to_u32().expect("residue fits in u32"))
            .collect();
        self.from_coords(&coords).expect("reduced coordinates are in range")
    }

    pub fn lift_add(&self, a: &LiftElement, b: &LiftElement) -> LiftElement {
        let n = a.coords.len().max(b.coords.len());
        let coords = (0..n)
            .map(|i| {
                a.coords.get(i).cloned().unwrap_or_default()
                    + b.coords.get(i).cloned().unwrap_or_default()
            })
            .collect();
        LiftElement { coords: self.lift_normalize(coords) }
    }

    /// Product in the lift ring: integer polynomial product reduced modulo the monic
    /// integer lift of the modulus.
    pub fn lift_mul(&self, a: &LiftElement, b: &LiftElement) -> LiftElement {
        if a.coords.is_empty() || b.coords.is_empty() {
            return LiftElement { coords: vec![BigInt::zero(); self.0.e] };
        }
        let mut prod = vec![BigInt::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        LiftElement { coords: self.lift_normalize(prod) }
    }

    fn lift_normalize(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let e = self.0.e;
        let m = &self.0.modulus;
        while v.len() > e {
            let top = v.pop().expect("nonempty");
            let shift = v.len() - e;
            if !top.is_zero() {
                for i in 0..e {
                    v[shift + i] -= &top * m[i];
                }
            }
        }
        v.resize(e, BigInt::zero());
        v
    }
}

fn check_range(p: u32, e: usize) -> Result<()> {
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::InvalidField(format!("characteristic {p} outside supported range p < 2^16")));
    }
    let q = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if q > MAX_CARDINALITY as u128 {
        return Err(Error::InvalidField(format!("cardinality {p}^{e} exceeds 2^20")));
    }
    Ok(())
}

impl FieldCtx {
    fn coords(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn pack(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_digits(&self, mut a: u32, mut b: u32, negate_b: bool) -> u32 {
        let p = self.p;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let (da, db) = (a % p, b % p);
            let db = if negate_b && db != 0 { p - db } else { db };
            let s = da + db;
            out += (if s >= p { s - p } else { s }) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    /// Schoolbook multiplication in coordinates; used to build the log tables.
    pub(crate) fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let ca = self.coords(a);
        let cb = self.coords(b);
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.e - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = fp_poly_rem(&prod, &self.modulus, self.p);
        let mut r = r;
        r.resize(self.e, 0);
        self.pack(&r)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let n = (q - 1) as u64;
        let factors = prime_factors(n);
        let slow_pow = |ctx: &FieldCtx, a: u32, mut k: u64| {
            let mut base = a;
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = ctx.slow_mul(acc, base);
                }
                base = ctx.slow_mul(base, base);
                k >>= 1;
            }
            acc
        };
        let g = (2..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(self, g, n / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut antilog = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in antilog.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        self.antilog = antilog;
        self.log = log;
        if q <= 256 && self.p != 2 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.add_digits(a, b, false);
                }
            }
            self.add_table = table;
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// An element bundled with its field, for checked standalone arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> FieldElement {
        FieldElement { field: field.clone(), value }
    }

    pub fn from_coords(field: &Field, coords: &[u32]) -> Result<FieldElement> {
        Ok(FieldElement::new(field, field.from_coords(coords)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    fn binary(&self, other: &FieldElement, op: impl Fn(&Field, Elem, Elem) -> Elem) -> Result<FieldElement> {
        self.field.check_same(&other.field)?;
        Ok(FieldElement::new(&self.field, op(&self.field, self.value, other.value)))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, Field::add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, Field::sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.binary(other, Field::mul)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement::new(&self.field, self.field.inv(self.value)?))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        FieldElement::new(&self.field, self.field.pow(self.value, n))
    }
}

/// Element of the integer lift ring `Z[t]/(M~(t))`, `M~` the monic integer lift of the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftElement {
    pub coords: Vec<BigInt>,
}

impl LiftElement {
    pub fn new(coords: Vec<BigInt>) -> LiftElement {
        LiftElement { coords }
    }
}

/// Coordinate-wise exact division by `p`.
pub fn exact_div_p(x: &LiftElement, field: &Field) -> Result<LiftElement> {
    let p = BigInt::from(field.characteristic());
    let coords = x
        .coords
        .iter()
        .map(|c| {
            let (quot, rem) = c.div_rem(&p);
            if rem.is_zero() {
                Ok(quot)
            } else {
                Err(Error::InexactDivision(c.to_string(), field.characteristic()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftElement { coords })
}

/// The lift ring evaluated modulo `p^2`, with flat `e`-coordinate storage.
///
/// Only residues modulo `p^2` matter for the final exact division by `p`.
pub(crate) struct LiftModP2 {
    pub(crate) m: u64,
    pub(crate) e: usize,
    modulus: Vec<u64>,
}

impl LiftModP2 {
    pub(crate) fn new(field: &Field) -> LiftModP2 {
        let p = field.characteristic() as u64;
        LiftModP2 {
            m: p * p,
            e: field.degree(),
            modulus: field.modulus().iter().map(|&c| c as u64).collect(),
        }
    }

    pub(crate) fn lift(&self, field: &Field, a: Elem) -> Vec<u64> {
        field.coords(a).into_iter().map(u64::from).collect()
    }

    /// `acc += c * a * b` in the ring, `c` a scalar residue mod `p^2`.
    pub(crate) fn mul_acc(&self, acc: &mut [u64], c: u64, a: &[u64], b: &[u64], scratch: &mut Vec<u64>) {
        let m = self.m;
        let e = self.e;
        if e == 1 {
            acc[0] = (acc[0] + c * ((a[0] * b[0]) % m)) % m;
            return;
        }
        scratch.clear();
        scratch.resize(2 * e - 1, 0);
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                scratch[i + j] = (scratch[i + j] + a[i] * b[j]) % m;
            }
        }
        for top in (e..2 * e - 1).rev() {
            let t = scratch[top];
            if t == 0 {
                continue;
            }
            let shift = top - e;
            for i in 0..e {
                scratch[shift + i] = (scratch[shift + i] + m - (t * self.modulus[i]) % m) % m;
            }
        }
        for i in 0..e {
            acc[i] = (acc[i] + c * scratch[i]) % m;
        }
    }

    pub(crate) fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.e];
        let mut scratch = Vec::new();
        self.mul_acc(&mut out, 1, a, b, &mut scratch);
        out
    }
}
