//! Boolean polynomials: square-free representatives over F2 modulo the field
//! ideal, the checkers and extraction carried over to them, and the
//! vanishing ideal of a point set used for the AES S-box.

use std::fmt;

use crate::error::Error;
use crate::field::{Field, FieldKind, Gf2};
use crate::poly::{IndexTuple, PolySystem, Polynomial, Ring, Term, TermOrdering};
use crate::reduce::{coefficient_matrix, combined_support, kernel_basis, row_polynomial, Matrix};
use crate::sepcheck::{self, CheckMode, CheckOutcome};
use crate::sepextract::{self, CoherentTuple, SeparatingTuple};
use crate::ExtensionMethod;

/// The square-free representative: every exponent above 1 becomes 1 and
/// colliding terms cancel in pairs.
pub fn squarefree_normalize(f: &Polynomial<Gf2>) -> Polynomial<Gf2> {
    f.square_free_reduction()
}

/// `x_k^2 + x_k` for every `k`.
pub fn field_ideal(nvars: usize) -> Vec<Polynomial<Gf2>> {
    (0..nvars)
        .map(|k| {
            let x = Polynomial::variable(nvars, k);
            &x.pow(2) + &x
        })
        .collect()
}

/// Division remainder of `f` by `gs` followed by the field ideal generators,
/// under `ord`. The result is square-free and no term of it is divisible by a
/// leading term of a nonzero `g`.
pub fn bool_normal_remainder(f: &Polynomial<Gf2>, gs: &[Polynomial<Gf2>], ord: &TermOrdering) -> Polynomial<Gf2> {
    let n = f.nvars();
    let mut divisors: Vec<Polynomial<Gf2>> = gs.iter().map(squarefree_normalize).filter(|g| !g.is_zero()).collect();
    divisors.extend(field_ideal(n));
    let leads: Vec<Term> = divisors.iter().map(|g| g.leading_term(ord).expect("nonzero").clone()).collect();
    squarefree_normalize(&remainder(&squarefree_normalize(f), &divisors, &leads, ord))
}

/// Plain multivariate division with the first applicable divisor.
pub(crate) fn remainder<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    leads: &[Term],
    ord: &TermOrdering,
) -> Polynomial<F> {
    remainder_bounded(f, divisors, leads, ord, usize::MAX).expect("unbounded")
}

/// [`remainder`] giving up (`None`) after `max_steps` reduction steps.
pub(crate) fn remainder_bounded<F: Field>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
    leads: &[Term],
    ord: &TermOrdering,
    max_steps: usize,
) -> Option<Polynomial<F>> {
    let n = f.nvars();
    let mut p = f.clone();
    let mut rest = Vec::new();
    let mut steps = 0usize;
    while let Some((t, c)) = p.leading(ord).map(|(t, c)| (t.clone(), c.clone())) {
        match leads.iter().position(|l| l.divides(&t)) {
            Some(i) => {
                steps += 1;
                if steps > max_steps {
                    return None;
                }
                let g = &divisors[i];
                let q = leads[i].quotient_of(&t).expect("divides");
                let lc = g.coefficient(&leads[i]);
                p = p.add_scaled(&g.mul_term(&q, &F::one()), &c.times(&lc.inverse().expect("nonzero leading coefficient")).negated());
            }
            None => {
                p = p.filter_terms(|s| s != &t);
                rest.push((t, c));
            }
        }
    }
    Some(Polynomial::from_terms(n, rest))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BoolMode {
    /// The plain checker on the representatives.
    #[default]
    Plain,
    /// The optimized checker on the representatives.
    Optimized,
    /// The optimized checker on the representatives together with
    /// `x_k^2 + x_k` for every `k`.
    OptimizedWithFieldIdeal,
}

fn require_boolean(sys: &PolySystem<Gf2>) -> Result<(), Error> {
    if sys.ring().is_boolean() {
        Ok(())
    } else {
        Err(Error::NonBoolean)
    }
}

/// The system the checker actually sees in `mode`, in the ring without the
/// boolean flag.
fn working_system(sys: &PolySystem<Gf2>, mode: BoolMode) -> Result<PolySystem<Gf2>, Error> {
    let mut gens: Vec<Polynomial<Gf2>> = sys.generators().iter().map(squarefree_normalize).collect();
    if mode == BoolMode::OptimizedWithFieldIdeal {
        gens.extend(field_ideal(sys.nvars()));
    }
    PolySystem::new(sys.ring().ambient(), gens)
}

fn check_mode(mode: BoolMode) -> CheckMode {
    match mode {
        BoolMode::Plain => CheckMode::Plain,
        _ => CheckMode::Optimized,
    }
}

pub fn bool_check_separating(sys: &PolySystem<Gf2>, z: &IndexTuple, mode: BoolMode) -> Result<CheckOutcome, Error> {
    require_boolean(sys)?;
    sepcheck::check(&working_system(sys, mode)?, z, check_mode(mode))
}

/// Extract a separating tuple of Boolean polynomials for `z`.
///
/// The plain mode row reduces the representatives under the ordering built
/// from the plain checker's weights. The optimized modes track companions
/// through the optimized checker. Either way the result is mapped back to
/// square-free representatives, which keeps every leading term.
pub fn bool_find_separating_tuple(
    sys: &PolySystem<Gf2>,
    z: &IndexTuple,
    mode: BoolMode,
) -> Result<SeparatingTuple<Gf2>, Error> {
    require_boolean(sys)?;
    let work = working_system(sys, mode)?;
    let mut sep = match mode {
        BoolMode::Plain => {
            let outcome = sepcheck::check(&work, z, CheckMode::Plain)?;
            let w = outcome.weights().ok_or(Error::NotASuccess)?;
            sepextract::find_separating_tuple(&work, z, &sepextract::compatible_ordering(w, z))?
        }
        _ => sepextract::tracked_with(&work, z, CheckMode::Optimized, ExtensionMethod::default())?,
    };
    sep.ring = sys.ring().clone();
    for (_, f) in &mut sep.entries {
        *f = squarefree_normalize(f);
    }
    Ok(sep)
}

/// Append `z_i * g_j`, reduced square-free, for every generator `g_j` without
/// constant term and every `z_i` that occurs as a term of `g_j`.
pub fn augment_with_indeterminate_products(sys: &PolySystem<Gf2>, z: &IndexTuple) -> Result<PolySystem<Gf2>, Error> {
    require_boolean(sys)?;
    let n = sys.nvars();
    let mut gens = sys.generators().to_vec();
    for g in sys.generators() {
        if !g.constant_term().is_zero() {
            continue;
        }
        for k in z.iter() {
            if !g.coefficient(&Term::variable(n, k)).is_zero() {
                gens.push(squarefree_normalize(&g.mul_var(k)));
            }
        }
    }
    PolySystem::new(sys.ring().clone(), gens)
}

/// Write `f_i = z_i + h_i` and replace each `h_i` by its normal remainder
/// against `(f_1, ..., f_s)` and the field ideal. Entries keep their order.
pub fn bool_coherent_tuple(sep: &SeparatingTuple<Gf2>) -> CoherentTuple<Gf2> {
    let n = sep.ring.nvars();
    let fs: Vec<Polynomial<Gf2>> = sep.polynomials().cloned().collect();
    let entries = sep
        .entries
        .iter()
        .map(|(k, f)| {
            let h = f + &Polynomial::variable(n, *k);
            (*k, bool_normal_remainder(&h, &fs, &sep.ordering))
        })
        .collect();
    CoherentTuple {
        ring: sep.ring.clone(),
        entries,
        ordering: sep.ordering.clone(),
    }
}

/// Subset scan for Boolean systems, ordered like [`sepcheck::subsets`].
pub fn bool_scan(
    sys: &PolySystem<Gf2>,
    pool: &[usize],
    max_size: usize,
    mode: BoolMode,
    jobs: Option<usize>,
) -> Result<Vec<(IndexTuple, CheckOutcome)>, Error> {
    require_boolean(sys)?;
    let work = working_system(sys, mode)?;
    let cm = check_mode(mode);
    sepcheck::scan_with(pool, sys.nvars(), max_size, jobs, |z| sepcheck::check(&work, z, cm))
}

/// Distinct points of `F2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    width: usize,
    points: Vec<Vec<bool>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<bool>>) -> Result<Self, Error> {
        let width = points.first().map_or(0, Vec::len);
        if let Some(p) = points.iter().find(|p| p.len() != width) {
            return Err(Error::InvalidPoints(format!("expected {width} coordinates, found {}", p.len())));
        }
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPoints("repeated point".into()));
        }
        Ok(PointSet { width, points })
    }

    /// One bit string per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::InvalidPoints(format!("line {}: unexpected {c:?}", i + 1))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            points.push(p);
        }
        Self::new(points)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<bool>] {
        &self.points
    }

    pub fn to_file_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.points {
            for &b in p {
                f.write_str(if b { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Square-free terms in `nvars` variables of degree at most `dmax`.
pub fn squarefree_terms(nvars: usize, dmax: usize) -> Vec<Term> {
    let mut out = vec![Term::one(nvars)];
    let mut frontier: Vec<(Term, usize)> = vec![(Term::one(nvars), 0)];
    for _ in 0..dmax.min(nvars) {
        let mut next = Vec::new();
        for (t, start) in &frontier {
            for k in *start..nvars {
                next.push((t.mul_var(k), k + 1));
            }
        }
        out.extend(next.iter().map(|(t, _)| t.clone()));
        frontier = next;
    }
    out
}

/// A basis of the Boolean polynomials of degree at most `dmax` vanishing on
/// every point, reduced so that leading terms under DegRevLex are distinct.
pub fn vanishing_ideal_degree_bounded(pts: &PointSet, dmax: usize) -> Vec<Polynomial<Gf2>> {
    let n = pts.width();
    let terms = squarefree_terms(n, dmax);
    let eval: Vec<Vec<Gf2>> = pts
        .points()
        .iter()
        .map(|p| {
            terms
                .iter()
                .map(|t| Gf2(t.exponents().iter().zip(p).all(|(&e, &b)| e == 0 || b)))
                .collect()
        })
        .collect();
    let kernel = kernel_basis(&Matrix::from_rows(eval, terms.len()));
    let raw: Vec<Polynomial<Gf2>> = kernel
        .iter()
        .map(|v| Polynomial::from_terms(n, terms.iter().cloned().zip(v.iter().cloned())))
        .collect();
    let mut columns = combined_support(&raw);
    TermOrdering::DegRevLex.sort_desc(&mut columns);
    Gf2::rref_with(&coefficient_matrix(&raw, &columns), false)
        .rows()
        .iter()
        .map(|r| row_polynomial(n, r, &columns))
        .collect()
}

/// The AES S-box, read from the shipped table.
pub fn aes_sbox() -> [u8; 256] {
    let mut s = [0u8; 256];
    let values = include_str!("../data/aes_sbox.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|h| u8::from_str_radix(h, 16).expect("hex byte"));
    let mut count = 0;
    for (slot, v) in s.iter_mut().zip(values) {
        *slot = v;
        count += 1;
    }
    assert_eq!(count, 256, "S-box table is incomplete");
    s
}

fn bits(b: u8) -> impl Iterator<Item = bool> {
    (0..8).rev().map(move |i| (b >> i) & 1 == 1)
}

/// The 256 points `(a, s(a))` of `F2^16`, bits most significant first.
pub fn sbox_points() -> PointSet {
    let s = aes_sbox();
    let points = (0..=255u8).map(|a| bits(a).chain(bits(s[a as usize])).collect()).collect();
    PointSet::new(points).expect("a graph has distinct points")
}

/// The Boolean ring `x1..x8, y1..y8` of inputs and outputs.
pub fn sbox_ring() -> Ring {
    let names = (1..=8).map(|i| format!("x{i}")).chain((1..=8).map(|i| format!("y{i}"))).collect();
    Ring::with_names(names, FieldKind::Gf2, true).expect("distinct names")
}

/// The degree 2 vanishing ideal of the S-box graph as a system in
/// [`sbox_ring`].
pub fn sbox_system() -> PolySystem<Gf2> {
    PolySystem::new(sbox_ring(), vanishing_ideal_degree_bounded(&sbox_points(), 2)).expect("matching ring")
}
