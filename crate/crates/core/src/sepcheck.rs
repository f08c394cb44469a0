//! The separating-indeterminate checkers.
//!
//! Both checkers repeatedly interreduce the generators against the remaining
//! tuple, pick up every `z` that shows up as a generator by itself, give those
//! the current weight `d`, and throw away every monomial that no longer
//! involves a remaining `z`. The optimized checker first enlarges the working
//! set by the low-degree part of the span of `x_i * g_j`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::field::Field;
use crate::poly::{linear_part, restrict_to_multiples, IndexTuple, PolySystem, Polynomial};
use crate::reduce::{self, extension_with_coefficients, linear_interreduce, ExtensionMethod};

/// Non-negative weights, one per indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigUint>);

impl WeightVector {
    pub fn zeros(n: usize) -> Self {
        WeightVector(vec![BigUint::zero(); n])
    }

    pub fn from_u64s(w: &[u64]) -> Self {
        WeightVector(w.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn new(w: Vec<BigUint>) -> Self {
        WeightVector(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> &BigUint {
        &self.0[k]
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigUint> {
        self.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// One weight assignment: `x_index` got `weight` in loop pass `iteration`
/// (counting from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub index: usize,
    pub weight: BigUint,
    pub iteration: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Fail,
    Success { weights: WeightVector, trace: Vec<Assignment> },
}

impl CheckOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, CheckOutcome::Success { .. })
    }

    pub fn weights(&self) -> Option<&WeightVector> {
        match self {
            CheckOutcome::Success { weights, .. } => Some(weights),
            CheckOutcome::Fail => None,
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Fail => f.write_str("FAIL"),
            CheckOutcome::Success { weights, .. } => write!(f, "W = {weights}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CheckMode {
    #[default]
    Plain,
    Optimized,
}

/// The plain checker.
pub fn check_separating<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<CheckOutcome, Error> {
    check(sys, z, CheckMode::Plain)
}

/// The optimized checker with the default extension method.
pub fn check_separating_optimized<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<CheckOutcome, Error> {
    check(sys, z, CheckMode::Optimized)
}

pub fn check<F: Field>(sys: &PolySystem<F>, z: &IndexTuple, mode: CheckMode) -> Result<CheckOutcome, Error> {
    check_with(sys, z, mode, ExtensionMethod::default())
}

pub fn check_with<F: Field>(
    sys: &PolySystem<F>,
    z: &IndexTuple,
    mode: CheckMode,
    method: ExtensionMethod,
) -> Result<CheckOutcome, Error> {
    validate_tuple(z, sys.nvars())?;
    Ok(run(sys.generators(), sys.nvars(), z, mode, method, false)?.outcome)
}

pub(crate) fn validate_tuple(z: &IndexTuple, nvars: usize) -> Result<(), Error> {
    match z.iter().find(|&k| k >= nvars) {
        Some(index) => Err(Error::IndexOutOfRange { index, nvars }),
        None => Ok(()),
    }
}

pub(crate) struct EngineOutput<F: Field> {
    pub outcome: CheckOutcome,
    /// With tracking: `(k, G)` where `G` is the companion of the working
    /// polynomial that was exactly `x_k` when `x_k` got its weight.
    pub found: Vec<(usize, Polynomial<F>)>,
}

/// The checker loop. With `track`, every working polynomial carries a
/// companion built from the original generators by the same linear
/// operations, but never truncated. A product `x_i g_j` added in optimized
/// mode gets the companion `x_i c_j`.
pub(crate) fn run<F: Field>(
    gens: &[Polynomial<F>],
    nvars: usize,
    z: &IndexTuple,
    mode: CheckMode,
    method: ExtensionMethod,
    track: bool,
) -> Result<EngineOutput<F>, Error> {
    let gens: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let delta = gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let mut weights = vec![BigUint::zero(); nvars];
    let mut trace = Vec::new();
    let mut found = Vec::new();
    let fail = || EngineOutput {
        outcome: CheckOutcome::Fail,
        found: Vec::new(),
    };

    let mut zs = z.clone();
    let mut work: Vec<Polynomial<F>> = gens.iter().map(|g| restrict_to_multiples(g, &zs)).collect();
    // With `track`, every working polynomial has a companion in the ideal,
    // differing from it by the deleted terms.
    let mut comp: Vec<Polynomial<F>> = if track { gens.clone() } else { Vec::new() };
    drop_zeros(&mut work, &mut comp, track);

    if !zs.is_empty() && linear_rank(&work) < zs.len() {
        return Ok(fail());
    }

    let step = BigUint::from(match mode {
        CheckMode::Plain => delta,
        CheckMode::Optimized => 2 * delta,
    });
    let mut d = BigUint::one();
    let mut iteration = 0;
    while !zs.is_empty() {
        iteration += 1;

        if mode == CheckMode::Optimized {
            // multipliers range over X \ Z for the input tuple, not the shrinking one
            let ext = extension_with_coefficients(&work, z, delta, method, track);
            for (row, q) in ext.basis.into_iter().enumerate() {
                if track {
                    let c = ext.coefficients[row].iter().fold(Polynomial::zero(nvars), |acc, (l, c)| {
                        let (i, j) = ext.products[*l];
                        acc.add_scaled(&comp[j].mul_var(i), c)
                    });
                    comp.push(c);
                }
                work.push(q);
            }
        }

        let ir = linear_interreduce(&work, &zs)?;
        if track {
            comp = ir
                .transform
                .iter()
                .map(|row| Polynomial::combination(nvars, row.iter().zip(&comp)))
                .collect();
        }

        let mut hits: Vec<(usize, usize)> = ir
            .heads
            .iter()
            .zip(zs.iter())
            .enumerate()
            .filter(|(_, (h, k))| h.is_variable(*k))
            .map(|(pos, (_, k))| (k, pos))
            .collect();
        if hits.is_empty() {
            return Ok(fail());
        }
        hits.sort_unstable();
        for &(k, pos) in &hits {
            weights[k] = d.clone();
            trace.push(Assignment {
                index: k,
                weight: d.clone(),
                iteration,
            });
            if track {
                found.push((k, comp[pos].clone()));
            }
            zs.remove(k);
        }

        work = ir.into_polynomials().iter().map(|g| restrict_to_multiples(g, &zs)).collect();
        drop_zeros(&mut work, &mut comp, track);
        d = &step * &d + 1u32;
    }

    Ok(EngineOutput {
        outcome: CheckOutcome::Success {
            weights: WeightVector(weights),
            trace,
        },
        found,
    })
}

fn drop_zeros<F: Field>(work: &mut Vec<Polynomial<F>>, comp: &mut Vec<Polynomial<F>>, track: bool) {
    if track {
        let mut keep = work.iter().map(|g| !g.is_zero());
        comp.retain(|_| keep.next().unwrap_or(false));
    }
    work.retain(|g| !g.is_zero());
}

fn linear_rank<F: Field>(polys: &[Polynomial<F>]) -> usize {
    let lin: Vec<Polynomial<F>> = polys.iter().map(linear_part).collect();
    let columns = reduce::combined_support(&lin);
    F::rref_with(&reduce::coefficient_matrix(&lin, &columns), false).rank()
}

/// Every nonempty subset of `pool` with at most `max_size` elements, ordered
/// by size and then lexicographically by position in `pool`.
pub fn subsets(pool: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=max_size.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| pool[i]).collect());
            // advance to the next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == pool.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// Run `check` on every subset of `pool` up to `max_size`, on `jobs` threads
/// (`None` for rayon's default). The result order does not depend on `jobs`.
pub fn scan_with<C>(
    pool: &[usize],
    nvars: usize,
    max_size: usize,
    jobs: Option<usize>,
    check: C,
) -> Result<Vec<(IndexTuple, CheckOutcome)>, Error>
where
    C: Fn(&IndexTuple) -> Result<CheckOutcome, Error> + Sync,
{
    let tuples = subsets(pool, max_size)
        .into_iter()
        .map(|s| IndexTuple::new(s, nvars))
        .collect::<Result<Vec<_>, _>>()?;
    let work = || {
        tuples
            .par_iter()
            .map(|z| check(z).map(|o| (z.clone(), o)))
            .collect::<Result<Vec<_>, _>>()
    };
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

/// [`check`] on every subset of `pool` with at most `max_size` elements.
pub fn scan_subsets<F: Field>(
    sys: &PolySystem<F>,
    pool: &[usize],
    max_size: usize,
    mode: CheckMode,
    jobs: Option<usize>,
) -> Result<Vec<(IndexTuple, CheckOutcome)>, Error> {
    scan_with(pool, sys.nvars(), max_size, jobs, |z| check(sys, z, mode))
}
