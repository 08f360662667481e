//! Rational power series `f/g` with `g(0) = 1`, Padé recognition, and the rational
//! forms of `exp_!` and `log_!`.

use num_traits::ToPrimitive;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly;
use crate::series::Series;

/// Default largest Padé budget tried by [`exp_rational`].
pub const DEFAULT_CAP: usize = 1 << 12;

/// Largest recognition budget [`log_rational`] will attempt.
const LOG_BUDGET_LIMIT: usize = 1 << 14;

/// Extra coefficients beyond the `2b` a Padé approximant needs, used for verification.
const VERIFY_SLACK: usize = 8;

/// A reduced fraction `num/den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    field: Field,
    num: Vec<Elem>,
    den: Vec<Elem>,
}

impl RationalFunction {
    /// Reduces `num/den` and normalizes the denominator's constant term to 1.
    pub fn new(field: &Field, num: Vec<Elem>, den: Vec<Elem>) -> Result<RationalFunction> {
        let num = poly::trim(num);
        let den = poly::trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if num.is_empty() {
            (Vec::new(), vec![Elem::ONE])
        } else {
            let g = poly::gcd(field, &num, &den);
            (poly::divrem(field, &num, &g).0, poly::divrem(field, &den, &g).0)
        };
        if den[0].is_zero() {
            return Err(Error::NotPowerSeries);
        }
        let c = field.inv(den[0])?;
        Ok(RationalFunction {
            field: field.clone(),
            num: poly::scale(field, &num, c),
            den: poly::scale(field, &den, c),
        })
    }

    pub fn from_ints(field: &Field, num: &[i64], den: &[i64]) -> Result<RationalFunction> {
        let conv = |v: &[i64]| v.iter().map(|&c| field.from_int(c)).collect();
        RationalFunction::new(field, conv(num), conv(den))
    }

    pub fn polynomial(field: &Field, coeffs: Vec<Elem>) -> RationalFunction {
        RationalFunction::new(field, coeffs, vec![Elem::ONE]).expect("unit denominator")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num(&self) -> &[Elem] {
        &self.num
    }

    pub fn den(&self) -> &[Elem] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn constant_term(&self) -> Elem {
        self.num.first().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.field.check_same(&other.field)?;
        let f = &self.field;
        let num = poly::add(f, &poly::mul(f, &self.num, &other.den), &poly::mul(f, &other.num, &self.den));
        RationalFunction::new(f, num, poly::mul(f, &self.den, &other.den))
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.field.check_same(&other.field)?;
        let f = &self.field;
        RationalFunction::new(f, poly::mul(f, &self.num, &other.num), poly::mul(f, &self.den, &other.den))
    }

    pub fn neg(&self) -> RationalFunction {
        let f = &self.field;
        RationalFunction { field: f.clone(), num: poly::scale(f, &self.num, f.neg(Elem::ONE)), den: self.den.clone() }
    }

    /// `self / other`; `other` must have a nonzero constant term.
    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.field.check_same(&other.field)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        RationalFunction::new(f, poly::mul(f, &self.num, &other.den), poly::mul(f, &self.den, &other.num))
    }

    pub fn pow(&self, n: u32) -> RationalFunction {
        let f = &self.field;
        let mut acc = RationalFunction::polynomial(f, vec![Elem::ONE]);
        for _ in 0..n {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }
}

/// Power-series expansion of `f/g` to order `n`.
pub fn rat_expand(r: &RationalFunction, n: usize) -> Result<Series> {
    let f = &r.field;
    let mut c = vec![Elem::ZERO; n];
    for i in 0..n {
        let mut acc = r.num.get(i).copied().unwrap_or(Elem::ZERO);
        for (k, &g) in r.den.iter().enumerate().skip(1).take(i) {
            acc = f.sub(acc, f.mul(g, c[i - k]));
        }
        c[i] = acc;
    }
    Series::new(f, c)
}

/// `max(1 + deg f, deg g)`.
pub fn rat_norm(r: &RationalFunction) -> usize {
    let d = (1 + poly::degree(&r.num)).max(poly::degree(&r.den));
    d as usize
}

/// The reduced `f/g` with `deg f < budget`, `deg g <= budget` matching every known
/// coefficient of `a`, or `None`.
pub fn rat_recognize(a: &Series, budget: usize) -> Result<Option<RationalFunction>> {
    let required = 2 * budget;
    if a.order() < required.max(1) {
        return Err(Error::InsufficientOrder { required, available: a.order() });
    }
    let f = a.field();
    let b = budget as isize;
    let mut r_prev = vec![Elem::ZERO; required + 1];
    r_prev[required] = Elem::ONE;
    let mut r = poly::trim(a.coeffs()[..required].to_vec());
    let mut t_prev: Vec<Elem> = Vec::new();
    let mut t = vec![Elem::ONE];
    while poly::degree(&r) >= b {
        let (q, rem) = poly::divrem(f, &r_prev, &r);
        let t_next = poly::sub(f, &t_prev, &poly::mul(f, &q, &t));
        r_prev = std::mem::replace(&mut r, rem);
        t_prev = std::mem::replace(&mut t, t_next);
    }
    if t.first().is_none_or(|c| c.is_zero()) {
        return Ok(None);
    }
    let cand = RationalFunction::new(f, r, t)?;
    if poly::degree(&cand.num) >= b || poly::degree(&cand.den) > b {
        return Ok(None);
    }
    if rat_expand(&cand, a.order())? != *a {
        return Ok(None);
    }
    Ok(Some(cand))
}

/// `p^(q^n)`, saturating at `usize::MAX`.
pub fn exp_norm_bound(p: u64, q: u64, n: usize) -> usize {
    let exp = match u32::try_from(n).ok().and_then(|n| q.checked_pow(n)).and_then(|e| u32::try_from(e).ok()) {
        Some(e) => e,
        None => return usize::MAX,
    };
    p.checked_pow(exp).and_then(|v| usize::try_from(v).ok()).unwrap_or(usize::MAX)
}

/// `1 + C(p + n - 1, p)`, saturating.
pub fn log_norm_bound(p: u64, n: usize) -> usize {
    binomial(p + n as u64 - 1, p).to_usize().and_then(|c| c.checked_add(1)).unwrap_or(usize::MAX)
}

/// `1 + n^p`, saturating.
pub fn log_norm_bound_crude(p: u64, n: usize) -> usize {
    u32::try_from(p)
        .ok()
        .and_then(|p| n.checked_pow(p))
        .and_then(|v| v.checked_add(1))
        .unwrap_or(usize::MAX)
}

/// Budgets `2, 4, 8, ...` below `limit`, then `limit`.
fn budget_schedule(limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut b = 2usize;
    while b < limit {
        out.push(b);
        b = b.saturating_mul(2);
    }
    out.push(limit);
    out
}

/// `exp_!(r)` as a rational function, found by guessing at growing Padé budgets and
/// checking each guess with [`log_rational`].
pub fn exp_rational(r: &RationalFunction, cap: usize) -> Result<RationalFunction> {
    if !r.constant_term().is_zero() {
        return Err(Error::NotInMaximalIdeal);
    }
    let f = &r.field;
    let limit = cap.min(exp_norm_bound(f.characteristic() as u64, f.cardinality() as u64, rat_norm(r)));
    if limit == 0 {
        return Err(Error::BudgetExhausted(0));
    }
    for b in budget_schedule(limit) {
        let n = 2 * b + VERIFY_SLACK;
        let image = rat_expand(r, n)?.exp_shriek()?;
        let Some(cand) = rat_recognize(&image, b)? else { continue };
        if cand.constant_term() != Elem::ONE {
            continue;
        }
        if log_rational(&cand)? == *r {
            return Ok(cand);
        }
    }
    Err(Error::BudgetExhausted(limit))
}

/// `log_!(r)` for `r` in `1 + m`, recognized within the proven norm bound.
pub fn log_rational(r: &RationalFunction) -> Result<RationalFunction> {
    if r.constant_term() != Elem::ONE {
        return Err(Error::NotInOnePlusM);
    }
    let f = &r.field;
    let budget = log_norm_bound(f.characteristic() as u64, rat_norm(r));
    if budget > LOG_BUDGET_LIMIT {
        return Err(Error::DegreeBudget(format!(
            "log_! norm bound {budget} exceeds the supported budget {LOG_BUDGET_LIMIT}"
        )));
    }
    let n = 2 * budget + VERIFY_SLACK;
    let image = rat_expand(r, n)?.log_shriek()?;
    rat_recognize(&image, budget)?
        .ok_or_else(|| Error::Internal(format!("log_! image not recognized within proven budget {budget}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn rf(f: &Field, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_ints(f, num, den).unwrap()
    }

    fn values(s: &Series) -> Vec<u32> {
        s.coeffs().iter().map(|c| c.packed()).collect()
    }

    #[test]
    fn normalization() {
        let f = fp(5);
        let r = rf(&f, &[2, 2], &[2, 4, 2]);
        assert_eq!(r, rf(&f, &[1], &[1, 1]));
        assert_eq!(rf(&f, &[0, 1], &[0, 1]), rf(&f, &[1], &[1]));
        assert_eq!(RationalFunction::from_ints(&f, &[1], &[0, 1]), Err(Error::NotPowerSeries));
        assert_eq!(RationalFunction::from_ints(&f, &[1], &[0]), Err(Error::DivisionByZero));
        assert_eq!(rf(&f, &[0], &[3, 1]).den(), &[Elem::ONE]);
    }

    #[test]
    fn expand_examples() {
        assert_eq!(values(&rat_expand(&rf(&fp(2), &[1], &[1, -1]), 6).unwrap()), [1; 6]);
        let bell3 = rf(&fp(3), &[1, 1, 1], &[1, 0, -1, -1]);
        assert_eq!(values(&rat_expand(&bell3, 10).unwrap()), [1, 1, 2, 2, 0, 1, 2, 1, 0, 0]);
        assert_eq!(values(&rat_expand(&rf(&fp(2), &[0, 1], &[1, 1]), 5).unwrap()), [0, 1, 1, 1, 1]);
    }

    #[test]
    fn norms() {
        let f = fp(5);
        assert_eq!(rat_norm(&rf(&f, &[1], &[1, 1, 1])), 2);
        assert_eq!(rat_norm(&rf(&f, &[0, 1], &[1, -1])), 2);
        assert_eq!(rat_norm(&rf(&f, &[1, 1, 2, 0, -1], &[1, 0, 0, 0, -1, -1])), 5);
        assert_eq!(rat_norm(&rf(&f, &[0], &[1])), 0);
    }

    #[test]
    fn recognize_examples() {
        let f2 = fp(2);
        let s = Series::from_ints(&f2, &[1, 1, 0, 1, 1, 0, 1, 1]).unwrap();
        assert_eq!(rat_recognize(&s, 2).unwrap(), Some(rf(&f2, &[1], &[1, 1, 1])));
        let ones = Series::from_ints(&f2, &[1; 12]).unwrap();
        assert_eq!(rat_recognize(&ones, 1).unwrap(), Some(rf(&f2, &[1], &[1, -1])));
        let f5 = fp(5);
        let g = Series::from_ints(&f5, &[1, 2, 4, 3, 1, 2, 4, 3]).unwrap();
        assert_eq!(rat_recognize(&g, 1).unwrap(), Some(rf(&f5, &[1], &[1, -2])));
        assert_eq!(
            rat_recognize(&g, 5),
            Err(Error::InsufficientOrder { required: 10, available: 8 })
        );
        // not rational within budget 1: the data fails verification
        let s = Series::from_ints(&f5, &[1, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(rat_recognize(&s, 1).unwrap(), None);
        assert_eq!(rat_recognize(&Series::zero(&f5, 4).unwrap(), 2).unwrap(), Some(rf(&f5, &[0], &[1])));
    }

    #[test]
    fn exp_examples() {
        let f3 = fp(3);
        assert_eq!(exp_rational(&rf(&f3, &[0], &[1]), DEFAULT_CAP).unwrap(), rf(&f3, &[1], &[1]));
        assert_eq!(exp_rational(&rf(&f3, &[0, 1], &[1]), DEFAULT_CAP).unwrap(), rf(&f3, &[1], &[1, -1]));
        let f2 = fp(2);
        assert_eq!(exp_rational(&rf(&f2, &[0, 1], &[1, -1]), DEFAULT_CAP).unwrap(), rf(&f2, &[1], &[1, 1, 1]));
        assert_eq!(exp_rational(&rf(&f2, &[1], &[1]), DEFAULT_CAP), Err(Error::NotInMaximalIdeal));
    }

    #[test]
    fn log_examples() {
        let f2 = fp(2);
        assert_eq!(log_rational(&rf(&f2, &[1], &[1])).unwrap(), rf(&f2, &[0], &[1]));
        assert_eq!(log_rational(&rf(&f2, &[1], &[1, 1, 1])).unwrap(), rf(&f2, &[0, 1], &[1, 1]));
        let f3 = fp(3);
        assert_eq!(log_rational(&rf(&f3, &[1], &[1, -1])).unwrap(), rf(&f3, &[0, 1], &[1]));
        assert_eq!(log_rational(&rf(&f3, &[1, -1], &[1])).unwrap(), rf(&f3, &[0, 2, 2, 1], &[1]));
        assert_eq!(log_rational(&rf(&f3, &[0, 1], &[1])), Err(Error::NotInOnePlusM));
    }

    #[test]
    fn bounds() {
        assert_eq!(exp_norm_bound(2, 2, 2), 16);
        assert_eq!(exp_norm_bound(5, 5, 2), 298_023_223_876_953_125);
        assert_eq!(exp_norm_bound(5, 5, 3), usize::MAX);
        assert_eq!(log_norm_bound(5, 5), 127);
        assert_eq!(log_norm_bound_crude(5, 5), 3126);
        assert_eq!(budget_schedule(16), [2, 4, 8, 16]);
        assert_eq!(budget_schedule(12), [2, 4, 8, 12]);
        assert_eq!(budget_schedule(1), [1]);
    }
}
