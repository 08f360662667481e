//! Integer combinatorics: Lucas binomials modulo `p` and divided-power counts.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

/// Binomial coefficients `C(a, b) mod p` for single base-`p` digits `a, b < p`.
#[derive(Debug)]
struct DigitBinomials {
    p: u32,
    fact: Vec<u32>,
    inv_fact: Vec<u32>,
}

impl DigitBinomials {
    fn new(p: u32) -> DigitBinomials {
        let p64 = p as u64;
        let mut fact = vec![1u32; p as usize];
        for i in 1..p as usize {
            fact[i] = ((fact[i - 1] as u64 * i as u64) % p64) as u32;
        }
        let mut inv_fact = vec![1u32; p as usize];
        let last = p as usize - 1;
        inv_fact[last] = pow_mod(fact[last] as u64, p64 - 2, p64) as u32;
        for i in (1..=last).rev() {
            inv_fact[i - 1] = ((inv_fact[i] as u64 * i as u64) % p64) as u32;
        }
        DigitBinomials { p, fact, inv_fact }
    }

    #[inline]
    fn get(&self, a: u32, b: u32) -> u32 {
        if b > a {
            return 0;
        }
        let p = self.p as u64;
        let x = self.fact[a as usize] as u64 * self.inv_fact[b as usize] as u64 % p;
        (x * self.inv_fact[(a - b) as usize] as u64 % p) as u32
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn digits(mut n: u64, p: u64) -> Vec<u32> {
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % p) as u32);
        n /= p;
    }
    out
}

/// `C(n, k) mod p` by Lucas's digit product.
pub fn binom_mod_p(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    if p == 2 {
        return u32::from(k & !n == 0);
    }
    let table = DigitBinomials::new(p);
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (a, b) = ((n % p as u64) as u32, (k % p as u64) as u32);
        acc = acc * table.get(a, b) as u64 % p as u64;
        if acc == 0 {
            return 0;
        }
        n /= p as u64;
        k /= p as u64;
    }
    acc as u32
}

/// Above this many entries rows are generated on demand instead of cached.
const CACHE_LIMIT: usize = 1 << 23;

/// Sparse rows of Pascal's triangle modulo `p`: row `n` lists every `(k, C(n,k) mod p)`
/// with a nonzero value, `k` increasing. By Lucas's identity these are exactly the `k`
/// whose base-`p` digits are bounded by those of `n`.
#[derive(Debug)]
pub(crate) struct BinomialRows {
    digit: DigitBinomials,
    rows: usize,
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl BinomialRows {
    fn build(p: u32, rows: usize) -> BinomialRows {
        let digit = DigitBinomials::new(p);
        let total: usize = (0..rows as u64)
            .map(|n| digits(n, p as u64).iter().map(|&d| d as usize + 1).product::<usize>())
            .sum();
        let mut out = BinomialRows { digit, rows, offsets: Vec::new(), entries: Vec::new() };
        if total <= CACHE_LIMIT {
            out.offsets.reserve(rows + 1);
            out.entries.reserve(total);
            out.offsets.push(0);
            let mut buf = Vec::new();
            for n in 0..rows {
                out.generate(n, &mut buf);
                out.entries.extend_from_slice(&buf);
                out.offsets.push(out.entries.len());
            }
        }
        out
    }

    fn generate(&self, n: usize, buf: &mut Vec<(u32, u32)>) {
        buf.clear();
        let p = self.digit.p;
        let d = digits(n as u64, p as u64);
        if d.is_empty() {
            buf.push((0, 1));
            return;
        }
        let m = d.len();
        let mut place = vec![1u64; m];
        for i in 1..m {
            place[i] = place[i - 1] * p as u64;
        }
        // odometer over digit vectors kd with kd[i] <= d[i]; suffix[i] = prod_{j>=i} C(d_j, kd_j)
        let mut kd = vec![0u32; m];
        let mut suffix = vec![1u64; m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1] * self.digit.get(d[i], 0) as u64 % p as u64;
        }
        let mut k = 0u64;
        loop {
            if suffix[0] != 0 {
                buf.push((k as u32, suffix[0] as u32));
            }
            let mut i = 0;
            loop {
                if i == m {
                    return;
                }
                if kd[i] < d[i] {
                    kd[i] += 1;
                    k += place[i];
                    break;
                }
                k -= kd[i] as u64 * place[i];
                kd[i] = 0;
                i += 1;
            }
            for j in (0..=i).rev() {
                suffix[j] = suffix[j + 1] * self.digit.get(d[j], kd[j]) as u64 % p as u64;
            }
        }
    }

    /// Row `n < rows`, borrowed from the cache or generated into `buf`.
    #[inline]
    pub(crate) fn row<'a>(&'a self, n: usize, buf: &'a mut Vec<(u32, u32)>) -> &'a [(u32, u32)] {
        debug_assert!(n < self.rows);
        if self.offsets.is_empty() {
            self.generate(n, buf);
            buf
        } else {
            &self.entries[self.offsets[n]..self.offsets[n + 1]]
        }
    }
}

/// Shared read-only rows for `n < rows`, grown on demand.
pub(crate) fn binomial_rows(p: u32, rows: usize) -> Arc<BinomialRows> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<BinomialRows>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("binomial cache poisoned");
    if let Some(t) = guard.get(&p) {
        if t.rows >= rows {
            return Arc::clone(t);
        }
    }
    let rows = rows.max(guard.get(&p).map_or(0, |t| t.rows * 2)).max(1);
    let t = Arc::new(BinomialRows::build(p, rows));
    guard.insert(p, Arc::clone(&t));
    t
}

/// Number of partitions of a `jk`-set into `k` blocks of size `j`, i.e.
/// `(jk)! / ((j!)^k k!)`, via `prod_{n=1..k} C(nj-1, j-1)`.
pub fn divided_power_count(j: u64, k: u64) -> BigUint {
    assert!(j >= 1, "block size must be positive");
    let mut acc = BigUint::one();
    for n in 1..=k {
        acc *= binomial(n * j - 1, j - 1);
    }
    acc
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
