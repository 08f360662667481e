#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shuffle_core::noncomm::NcSeries;
use shuffle_core::{Elem, Field, RationalFunction, Series};

pub fn field(spec: &str) -> Field {
    Field::parse(spec).unwrap()
}

pub fn rand_elem(rng: &mut ChaCha8Rng, f: &Field) -> Elem {
    f.from_packed(rng.gen_range(0..f.cardinality())).unwrap()
}

pub fn rand_nonzero(rng: &mut ChaCha8Rng, f: &Field) -> Elem {
    f.from_packed(rng.gen_range(1..f.cardinality())).unwrap()
}

pub fn rand_series(rng: &mut ChaCha8Rng, f: &Field, order: usize) -> Series {
    Series::from_fn(f, order, |_| rand_elem(rng, f)).unwrap()
}

/// Random element of the maximal ideal.
pub fn rand_m(rng: &mut ChaCha8Rng, f: &Field, order: usize) -> Series {
    rand_series(rng, f, order).with_constant(Elem::ZERO)
}

/// Random element of `1 + m`.
pub fn rand_one_plus_m(rng: &mut ChaCha8Rng, f: &Field, order: usize) -> Series {
    rand_series(rng, f, order).with_constant(Elem::ONE)
}

/// Random reduced fraction with `deg num <= dn`, `deg den <= dd`, `den(0) = 1`.
pub fn rand_rational(rng: &mut ChaCha8Rng, f: &Field, dn: usize, dd: usize) -> RationalFunction {
    let num = (0..=dn).map(|_| rand_elem(rng, f)).collect();
    let mut den: Vec<Elem> = (0..=dd).map(|_| rand_elem(rng, f)).collect();
    den[0] = Elem::ONE;
    RationalFunction::new(f, num, den).unwrap()
}

pub fn rand_nc(rng: &mut ChaCha8Rng, f: &Field, letters: usize, degree: usize) -> NcSeries {
    NcSeries::from_fn(f, letters, degree, |_| rand_elem(rng, f)).unwrap()
}

pub fn thue_morse(n: usize) -> Series {
    let f = field("2");
    Series::from_fn(&f, n, |i| f.from_int((i.count_ones() % 2) as i64)).unwrap()
}

pub fn ones(f: &Field, n: usize) -> Series {
    Series::from_fn(f, n, |_| Elem::ONE).unwrap()
}

pub fn ints(f: &Field, v: &[i64]) -> Series {
    Series::from_ints(f, v).unwrap()
}
