//! p-kernels of truncated series, kernel automata, algebraic relations, and the
//! kernel-dimension bounds for `exp_!` and `log_!`.

use std::collections::{HashMap, VecDeque};

use num_traits::ToPrimitive;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;
use crate::series::Series;

/// Fewest coefficients on which a linear dependence is trusted.
pub const DEFAULT_FLOOR: usize = 8;

/// Default bound on the kernel dimension.
pub const DEFAULT_MAX_DIM: usize = 64;

/// Largest automaton [`dfao_from_kernel`] will build.
pub const MAX_DFAO_STATES: usize = 1 << 16;

/// A basis of the span of a series and its iterated sections, computed from a
/// finite prefix.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub generator: Series,
    /// Basis elements in creation order; element 0 is the generator.
    pub elements: Vec<Series>,
    /// `sections[j][d]`: coordinates of `elements[j].section(d, 1)` in the basis.
    pub sections: Vec<Vec<Vec<Elem>>>,
    /// Number of coefficients on which every dependence was checked.
    pub verified_order: usize,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }
}

/// Closure of `{c}` under the sections `C -> C_{d,1}`, breadth first.
pub fn kernel_closure(c: &Series, max_dim: usize) -> Result<KernelBasis> {
    kernel_closure_with_floor(c, max_dim, DEFAULT_FLOOR)
}

pub fn kernel_closure_with_floor(c: &Series, max_dim: usize, floor: usize) -> Result<KernelBasis> {
    if c.is_zero() {
        return Err(Error::ZeroSeries("the kernel of the zero series is trivial"));
    }
    let f = c.field();
    let p = f.characteristic() as usize;
    let mut elements = vec![c.clone()];
    let mut sections: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
    let mut min_order = c.order();
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        for d in 0..p {
            let s = elements[j].section(d, 1).map_err(|_| exhausted(floor, 0))?;
            let m = min_order.min(s.order());
            if m < floor {
                return Err(exhausted(floor, m));
            }
            let basis: Vec<Vec<Elem>> = elements.iter().map(|e| e.coeffs()[..m].to_vec()).collect();
            let coords = match linalg::solve(f, &basis, &s.coeffs()[..m]) {
                Some(x) => x,
                None => {
                    if elements.len() == max_dim {
                        return Err(Error::KernelDimensionExceeded(max_dim));
                    }
                    min_order = m;
                    elements.push(s);
                    sections.push(Vec::new());
                    queue.push_back(elements.len() - 1);
                    let mut unit = vec![Elem::ZERO; elements.len()];
                    unit[elements.len() - 1] = Elem::ONE;
                    unit
                }
            };
            sections[j].push(coords);
        }
    }
    let dim = elements.len();
    for row in sections.iter_mut().flatten() {
        row.resize(dim, Elem::ZERO);
    }
    Ok(KernelBasis { generator: c.clone(), elements, sections, verified_order: min_order })
}

fn exhausted(floor: usize, m: usize) -> Error {
    Error::OrderExhausted(format!("kernel comparison order {m} fell below the floor {floor}"))
}

/// Automaton with output reading base-`p` digits least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    pub field: Field,
    /// `delta[state][digit]`.
    pub delta: Vec<Vec<usize>>,
    pub output: Vec<Elem>,
}

impl Dfao {
    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn base(&self) -> u32 {
        self.field.characteristic()
    }

    /// Output after reading the digits of `n`; the initial state is 0.
    pub fn run(&self, mut n: u64) -> Elem {
        let p = self.base() as u64;
        let mut state = 0;
        while n > 0 {
            state = self.delta[state][(n % p) as usize];
            n /= p;
        }
        self.output[state]
    }
}

/// States are the coordinate vectors reachable from the generator under the section
/// maps; the output of a state is the constant term of the series it represents.
pub fn dfao_from_kernel(k: &KernelBasis) -> Result<Dfao> {
    let f = k.field();
    let p = f.characteristic() as usize;
    let dim = k.dim();
    let constants: Vec<Elem> = k.elements.iter().map(|e| e.constant_term()).collect();
    let mut start = vec![Elem::ZERO; dim];
    start[0] = Elem::ONE;
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let v = states[i].clone();
        let mut row = Vec::with_capacity(p);
        for d in 0..p {
            let mut w = vec![Elem::ZERO; dim];
            for (j, &vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (wi, &c) in w.iter_mut().zip(&k.sections[j][d]) {
                    *wi = f.add(*wi, f.mul(vj, c));
                }
            }
            let next = match index.get(&w) {
                Some(&s) => s,
                None => {
                    if states.len() == MAX_DFAO_STATES {
                        return Err(Error::OutOfRange(format!("automaton exceeds {MAX_DFAO_STATES} states")));
                    }
                    index.insert(w.clone(), states.len());
                    states.push(w);
                    states.len() - 1
                }
            };
            row.push(next);
        }
        delta.push(row);
        i += 1;
    }
    let output = states
        .iter()
        .map(|v| v.iter().zip(&constants).fold(Elem::ZERO, |acc, (&a, &c)| f.add(acc, f.mul(a, c))))
        .collect();
    Ok(Dfao { field: f.clone(), delta, output })
}

pub fn series_from_dfao(d: &Dfao, n: usize) -> Result<Series> {
    Series::from_fn(&d.field, n, |i| d.run(i as u64))
}

/// `sum_{i,j} coeffs[j][i] X^i Y^j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicRelation {
    pub field: Field,
    pub deg_x: usize,
    pub deg_y: usize,
    pub coeffs: Vec<Vec<Elem>>,
    pub verified_order: usize,
}

impl AlgebraicRelation {
    /// `P(X, a(X))` to the order of `a`.
    pub fn evaluate(&self, a: &Series) -> Result<Series> {
        let n = a.order();
        let f = a.field();
        let mut acc = Series::zero(f, n)?;
        let mut power = Series::one(f, n)?;
        for (j, row) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = power.mul(a)?;
            }
            let poly = Series::from_poly(f, row, n)?;
            acc = acc.add(&poly.mul(&power)?)?;
        }
        Ok(acc)
    }
}

/// Smallest relation `P(X, A) = 0` with `deg_Y P <= dy`, `deg_X P <= dx`, scanning
/// `deg_Y` first, then `deg_X`.
pub fn alg_guess_minpoly(a: &Series, dx: usize, dy: usize) -> Result<Option<AlgebraicRelation>> {
    let required = (dx + 1) * (dy + 1) + 16;
    if a.order() < required {
        return Err(Error::InsufficientOrder { required, available: a.order() });
    }
    let f = a.field();
    let n = a.order();
    let mut powers = vec![Series::one(f, n)?];
    for j in 1..=dy {
        powers.push(powers[j - 1].mul(a)?);
    }
    for ddy in 1..=dy {
        for ddx in 0..=dx {
            let cols = (ddx + 1) * (ddy + 1);
            // unknown (i, j) at column j * (ddx + 1) + i; equation per coefficient of X^m
            let matrix: Vec<Vec<Elem>> = (0..n)
                .map(|m| {
                    let mut row = Vec::with_capacity(cols);
                    for pj in powers.iter().take(ddy + 1) {
                        for i in 0..=ddx {
                            row.push(if i <= m { pj.coeff(m - i) } else { Elem::ZERO });
                        }
                    }
                    row
                })
                .collect();
            let Some(v) = linalg::nullspace(f, &matrix, cols).into_iter().next() else { continue };
            let mut coeffs: Vec<Vec<Elem>> = v.chunks(ddx + 1).map(<[Elem]>::to_vec).collect();
            let lead = coeffs
                .iter()
                .rev()
                .flat_map(|row| row.iter())
                .copied()
                .find(|c| !c.is_zero())
                .expect("nonzero nullspace vector");
            let inv = f.inv(lead)?;
            for c in coeffs.iter_mut().flatten() {
                *c = f.mul(*c, inv);
            }
            let rel = AlgebraicRelation { field: f.clone(), deg_x: ddx, deg_y: ddy, coeffs, verified_order: n };
            if !rel.evaluate(a)?.is_zero() {
                return Err(Error::Internal("relation from nullspace fails substitution".into()));
            }
            return Ok(Some(rel));
        }
    }
    Ok(None)
}

/// Kernel of an `exp_!`/`log_!` image together with the dimension bound it satisfies.
#[derive(Clone, Debug)]
pub struct ImageKernel {
    pub source: KernelBasis,
    pub image: KernelBasis,
    pub bound: usize,
    /// A sharper bound that is reported but not enforced.
    pub finer_bound: Option<usize>,
}

/// `kappa(exp_!(A)) <= q^(kappa(A)-1) p^(q^kappa(A))`.
pub fn exp_kernel_bound(p: u64, q: u64, kappa: usize) -> usize {
    let k = kappa as u32;
    let head = q.checked_pow(k.saturating_sub(1));
    let tail = q.checked_pow(k).and_then(|e| u32::try_from(e).ok()).and_then(|e| p.checked_pow(e));
    head.zip(tail)
        .and_then(|(a, b)| a.checked_mul(b))
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX)
}

/// `kappa(log_!(B)) <= 1 + 4 kappa(B)^p`.
pub fn log_kernel_bound(p: u64, kappa: usize) -> usize {
    u32::try_from(p)
        .ok()
        .and_then(|p| kappa.checked_pow(p))
        .and_then(|v| v.checked_mul(4))
        .and_then(|v| v.checked_add(1))
        .unwrap_or(usize::MAX)
}

/// `1 + 4 kappa(A) C(p + kappa(1+A) - 2, p - 1)`.
pub fn log_kernel_bound_finer(p: u64, kappa_a: usize, kappa_b: usize) -> usize {
    let c = binomial(p + kappa_b as u64 - 2, p - 1);
    (c * 4u32 * kappa_a as u64 + 1u32).to_usize().unwrap_or(usize::MAX)
}

pub fn exp_algebraic(a: &Series, max_dim: usize) -> Result<ImageKernel> {
    if !a.in_maximal_ideal() {
        return Err(Error::NotInMaximalIdeal);
    }
    let source = kernel_closure(a, max_dim)?;
    let image = kernel_closure(&a.exp_shriek()?, max_dim)?;
    let f = a.field();
    let bound = exp_kernel_bound(f.characteristic() as u64, f.cardinality() as u64, source.dim());
    if image.dim() > bound {
        return Err(Error::BoundViolated(format!("kappa(exp_!(A)) = {} > {bound}", image.dim())));
    }
    Ok(ImageKernel { source, image, bound, finer_bound: None })
}

pub fn log_algebraic(b: &Series, max_dim: usize) -> Result<ImageKernel> {
    if !b.in_one_plus_m() {
        return Err(Error::NotInOnePlusM);
    }
    let source = kernel_closure(b, max_dim)?;
    let image = kernel_closure(&b.log_shriek()?, max_dim)?;
    let p = b.field().characteristic() as u64;
    let bound = log_kernel_bound(p, source.dim());
    if image.dim() > bound {
        return Err(Error::BoundViolated(format!("kappa(log_!(B)) = {} > {bound}", image.dim())));
    }
    let tail = b.with_constant(Elem::ZERO);
    let finer_bound = kernel_closure(&tail, max_dim)
        .ok()
        .map(|k| log_kernel_bound_finer(p, k.dim(), source.dim()));
    Ok(ImageKernel { source, image, bound, finer_bound })
}
