//! Shared generators and oracles for the integration tests. Nothing here calls
//! into the linear algebra of the library, so it can be used to judge it.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsep::{Field, Gf2, IndexTuple, PolySystem, Polynomial, Rational, Ring, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    let p = fixture_path(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

/// Random nonzero coefficients.
pub trait Sample: Field {
    fn sample(rng: &mut ChaCha8Rng) -> Self;
}

impl Sample for Gf2 {
    fn sample(_: &mut ChaCha8Rng) -> Self {
        Gf2(true)
    }
}

impl Sample for Rational {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        let mut n = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            n = -n;
        }
        let d = if rng.gen_bool(0.2) { 2 } else { 1 };
        Rational::new(n, d)
    }
}

pub fn random_term(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Term {
    let d = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Term::from_exponents(e)
}

pub fn poly_from<F: Sample>(rng: &mut ChaCha8Rng, n: usize, terms: impl IntoIterator<Item = Term>) -> Polynomial<F> {
    let mut p = Polynomial::zero(n);
    for t in terms {
        p = p.add_scaled(&Polynomial::monomial(t, F::one()), &F::sample(rng));
    }
    p
}

pub fn random_poly<F: Sample>(rng: &mut ChaCha8Rng, n: usize, nterms: usize, max_degree: u32) -> Polynomial<F> {
    let terms: Vec<Term> = (0..nterms).map(|_| random_term(rng, n, max_degree)).collect();
    poly_from(rng, n, terms)
}

pub fn random_tuple(rng: &mut ChaCha8Rng, n: usize, s: usize) -> IndexTuple {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(s);
    IndexTuple::new(all, n).unwrap()
}

/// Replace `gs` by random invertible recombinations of itself.
pub fn mix<F: Sample>(rng: &mut ChaCha8Rng, gs: &mut [Polynomial<F>], steps: usize) {
    if gs.len() < 2 {
        return;
    }
    for _ in 0..steps {
        let a = rng.gen_range(0..gs.len());
        let mut b = rng.gen_range(0..gs.len() - 1);
        if b >= a {
            b += 1;
        }
        let c = F::sample(rng);
        gs[a] = gs[a].add_scaled(&gs[b], &c);
    }
}

pub fn ring_for<F: Field>(n: usize) -> Ring {
    Ring::new(n, F::KIND)
}

pub fn system<F: Field>(gs: Vec<Polynomial<F>>) -> PolySystem<F> {
    let n = gs[0].nvars();
    PolySystem::new(ring_for::<F>(n), gs).unwrap()
}

/// Dimension of the K-span of `ps`, by a plain elimination on coefficient maps.
pub fn rank<F: Field>(ps: &[Polynomial<F>]) -> usize {
    let mut basis: Vec<(Term, HashMap<Term, F>)> = Vec::new();
    for p in ps {
        let mut row: HashMap<Term, F> = p.terms().iter().cloned().collect();
        for (pivot, b) in &basis {
            let Some(c) = row.get(pivot).cloned() else { continue };
            for (t, v) in b {
                let e = row.entry(t.clone()).or_insert_with(F::zero);
                *e = e.minus(&c.times(v));
                if e.is_zero() {
                    row.remove(t);
                }
            }
        }
        let Some(pivot) = row.keys().max().cloned() else { continue };
        let inv = row[&pivot].inverse().unwrap();
        for v in row.values_mut() {
            *v = v.times(&inv);
        }
        // keep earlier rows free of the new pivot
        for (_, b) in basis.iter_mut() {
            if let Some(c) = b.get(&pivot).cloned() {
                for (t, v) in &row {
                    let e = b.entry(t.clone()).or_insert_with(F::zero);
                    *e = e.minus(&c.times(v));
                    if e.is_zero() {
                        b.remove(t);
                    }
                }
            }
        }
        basis.push((pivot, row));
    }
    basis.len()
}

pub fn spans_contain<F: Field>(basis: &[Polynomial<F>], p: &Polynomial<F>) -> bool {
    let mut all = basis.to_vec();
    all.push(p.clone());
    rank(&all) == rank(basis)
}

pub fn same_span<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> bool {
    let ra = rank(a);
    ra == rank(b) && ra == rank(&[a, b].concat())
}

/// Generators in which every term is divisible by some `z_i` and whose
/// linear parts span a space of dimension `#z`.
pub fn interreduction_input<F: Sample>(rng: &mut ChaCha8Rng) -> (Vec<Polynomial<F>>, IndexTuple) {
    let n = rng.gen_range(2..=6);
    let s = rng.gen_range(1..=n.min(3));
    let z = random_tuple(rng, n, s);
    let multiple = |rng: &mut ChaCha8Rng| {
        let k = z.indices()[rng.gen_range(0..s)];
        random_term(rng, n, 2).mul_var(k)
    };
    let high = |rng: &mut ChaCha8Rng| loop {
        let t = multiple(rng);
        if t.degree() >= 2 {
            return t;
        }
    };
    let mut gs = Vec::new();
    for k in z.iter() {
        let extra = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=3) };
        let terms: Vec<Term> = std::iter::once(Term::variable(n, k)).chain((0..extra).map(|_| high(rng))).collect();
        gs.push(poly_from::<F>(rng, n, terms));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let terms: Vec<Term> = (0..rng.gen_range(1..=3)).map(|_| high(rng)).collect();
        gs.push(poly_from::<F>(rng, n, terms));
    }
    let steps = rng.gen_range(0..=6);
    mix(rng, &mut gs, steps);
    gs.retain(|g| !g.is_zero());
    gs.shuffle(rng);
    (gs, z)
}

/// A system built around a hidden weight vector: generator `i` is `z_i` plus
/// terms of smaller weight, so `Z` is separating unless the noise generators
/// spoil it.
pub fn hidden_weight_system<F: Sample>(
    rng: &mut ChaCha8Rng,
    max_vars: usize,
    noise: usize,
) -> (Vec<Polynomial<F>>, IndexTuple) {
    let n = rng.gen_range(2..=max_vars);
    let s = rng.gen_range(1..=n.min(3));
    let z = random_tuple(rng, n, s);
    let w: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let weight = |t: &Term| -> u32 { t.exponents().iter().zip(&w).map(|(e, w)| e * w).sum() };
    let mut gs = Vec::new();
    for k in z.iter() {
        let zt = Term::variable(n, k);
        let mut terms = vec![zt.clone()];
        for _ in 0..rng.gen_range(1..=4) {
            let t = random_term(rng, n, 2);
            if weight(&t) < weight(&zt) {
                terms.push(t);
            }
        }
        gs.push(poly_from::<F>(rng, n, terms));
    }
    for _ in 0..rng.gen_range(0..=noise) {
        let t = rng.gen_range(1..=3);
        gs.push(random_poly::<F>(rng, n, t, 2));
    }
    let steps = rng.gen_range(0..=4);
    mix(rng, &mut gs, steps);
    gs.retain(|g| !g.is_zero());
    if gs.is_empty() {
        gs.push(Polynomial::variable(n, z.indices()[0]));
    }
    (gs, z)
}

/// Random small systems over F2 with at most six indeterminates and four
/// generators; half of them are biased towards containing a separating tuple.
pub fn small_gf2_system(rng: &mut ChaCha8Rng) -> (Vec<Polynomial<Gf2>>, IndexTuple) {
    if rng.gen_bool(0.5) {
        loop {
            let (gs, z) = hidden_weight_system::<Gf2>(rng, 6, 1);
            if gs.len() <= 4 {
                return (gs, z);
            }
        }
    }
    let n = rng.gen_range(2..=6);
    let r = rng.gen_range(1..=4);
    let s = rng.gen_range(1..=r.min(3).min(n));
    let z = random_tuple(rng, n, s);
    let mut gs = Vec::new();
    for i in 0..r {
        let mut terms: Vec<Term> = (0..rng.gen_range(1..=4)).map(|_| random_term(rng, n, 2)).collect();
        if i < s && rng.gen_bool(0.8) {
            terms.push(Term::variable(n, z.indices()[i]));
        }
        let g = poly_from::<Gf2>(rng, n, terms);
        if !g.is_zero() {
            gs.push(g);
        }
    }
    if gs.is_empty() {
        gs.push(Polynomial::variable(n, z.indices()[0]));
    }
    (gs, z)
}

/// Whether the F2-span of `gs` contains a tuple with `LT(f_i) = z_i` under a
/// common term ordering. All `2^r` span elements are enumerated; for every
/// `z_i` the candidates are those containing `z_i`. An ordering exists iff
/// a weight vector makes `z_i` strictly heavier than every other support
/// term of one candidate per `i`. Indeterminates outside `Z` only occur on
/// the lighter side, so they get weight 0 and only the `Z` weights are
/// searched, over `1..=bound`.
pub fn span_oracle(gs: &[Polynomial<Gf2>], z: &IndexTuple, bound: u64) -> bool {
    let r = gs.len();
    assert!(r <= 16);
    let n = gs[0].nvars();
    let mut span = Vec::new();
    for mask in 1u32..(1 << r) {
        let mut f = Polynomial::<Gf2>::zero(n);
        for (i, g) in gs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                f = f.add_scaled(g, &Gf2(true));
            }
        }
        if !f.is_zero() {
            span.push(f);
        }
    }
    let zs = z.indices();
    // for each z_i: candidates as lists of Z-exponent vectors of the other terms
    let candidates: Vec<Vec<Vec<Vec<u32>>>> = zs
        .iter()
        .map(|&k| {
            let zt = Term::variable(n, k);
            span.iter()
                .filter(|f| f.support().any(|t| *t == zt))
                .map(|f| {
                    f.support()
                        .filter(|t| **t != zt)
                        .map(|t| zs.iter().map(|&j| t.exponent(j)).collect())
                        .collect()
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }
    let s = zs.len();
    let mut w = vec![1u64; s];
    loop {
        let ok = (0..s).all(|i| {
            candidates[i].iter().any(|others| {
                others
                    .iter()
                    .all(|e| e.iter().zip(&w).map(|(&a, &b)| u64::from(a) * b).sum::<u64>() < w[i])
            })
        });
        if ok {
            return true;
        }
        let mut i = 0;
        while i < s && w[i] == bound {
            w[i] = 1;
            i += 1;
        }
        if i == s {
            return false;
        }
        w[i] += 1;
    }
}

/// The commutator system of a list of square matrices whose entries are 0, 1
/// or an indeterminate: every nonzero entry of `AB - BA` for each pair.
pub fn commutator_system(text: &str) -> PolySystem<Rational> {
    let mut mats: Vec<Vec<Vec<String>>> = vec![Vec::new()];
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !mats.last().unwrap().is_empty() {
                mats.push(Vec::new());
            }
            continue;
        }
        mats.last_mut().unwrap().push(line.split_whitespace().map(str::to_string).collect());
    }
    mats.retain(|m| !m.is_empty());
    let n = mats
        .iter()
        .flatten()
        .flatten()
        .filter_map(|e| e.strip_prefix('x'))
        .map(|v| v.parse::<usize>().unwrap())
        .max()
        .unwrap();
    let entry = |e: &str| -> Polynomial<Rational> {
        match e {
            "0" => Polynomial::zero(n),
            "1" => Polynomial::one(n),
            v => Polynomial::variable(n, v[1..].parse::<usize>().unwrap() - 1),
        }
    };
    let mats: Vec<Vec<Vec<Polynomial<Rational>>>> =
        mats.iter().map(|m| m.iter().map(|r| r.iter().map(|e| entry(e)).collect()).collect()).collect();
    let mul = |a: &Vec<Vec<Polynomial<Rational>>>, b: &Vec<Vec<Polynomial<Rational>>>, i: usize, j: usize| {
        let mut acc = Polynomial::zero(n);
        for k in 0..a.len() {
            acc = &acc + &(&a[i][k] * &b[k][j]);
        }
        acc
    };
    let mut gens = Vec::new();
    for p in 0..mats.len() {
        for q in p + 1..mats.len() {
            let (a, b) = (&mats[p], &mats[q]);
            for i in 0..a.len() {
                for j in 0..a.len() {
                    let c = &mul(a, b, i, j) - &mul(b, a, i, j);
                    if !c.is_zero() {
                        gens.push(c);
                    }
                }
            }
        }
    }
    PolySystem::new(Ring::new(n, zsep::FieldKind::Rational), gens).unwrap()
}

/// Postconditions of linear interreduction: shape of heads and tails,
/// distinct leading terms, tails a basis of the degree >= 2 part of the span,
/// and `g'_i = z_i` exactly when `z_i` lies in the span.
pub fn interreduction_postconditions<F: Field>(gs: &[Polynomial<F>], z: &IndexTuple) -> Result<(), String> {
    use zsep::reduce::linear_interreduce;
    use zsep::TermOrdering;
    let n = gs[0].nvars();
    let ir = linear_interreduce(gs, z).map_err(|e| format!("interreduction refused valid input: {e}"))?;
    let outputs: Vec<Polynomial<F>> = ir.polynomials().cloned().collect();

    // (a) heads z_i - h_i with h_i of degree >= 2
    if ir.heads.len() != z.len() {
        return Err(format!("{} heads for {} indeterminates", ir.heads.len(), z.len()));
    }
    for (h, k) in ir.heads.iter().zip(z.iter()) {
        let zt = Term::variable(n, k);
        if h.coefficient(&zt) != F::one() {
            return Err(format!("head for x{} has coefficient {}", k + 1, h.coefficient(&zt)));
        }
        if h.support().any(|t| *t != zt && t.degree() < 2) {
            return Err(format!("head for x{} has a term of degree < 2 besides x{}", k + 1, k + 1));
        }
    }
    // (b) tails in P_{>=2} with distinct, decreasing lex leading terms, absent elsewhere
    let mut last: Option<Term> = None;
    for q in &ir.tails {
        if q.is_zero() || q.support().any(|t| t.degree() < 2) {
            return Err("tail not in P_{>=2}".into());
        }
        let lt = q.leading_term(&TermOrdering::Lex).unwrap().clone();
        if let Some(prev) = &last {
            if lt >= *prev {
                return Err("tail leading terms not strictly decreasing".into());
            }
        }
        let elsewhere = outputs.iter().filter(|p| p.coefficient(&lt) != F::zero()).count();
        if elsewhere != 1 {
            return Err("tail pivot appears in another output".into());
        }
        last = Some(lt);
    }
    // outputs are a basis of the span, and the transform is honest
    let r = rank(gs);
    if rank(&outputs) != outputs.len() || outputs.len() != r || !same_span(&outputs, gs) {
        return Err("outputs are not a basis of the span".into());
    }
    for (row, p) in ir.transform.iter().zip(&outputs) {
        let mut acc = Polynomial::zero(n);
        for (c, g) in row.iter().zip(gs) {
            acc = acc.add_scaled(g, c);
        }
        if &acc != p {
            return Err("transform row does not reproduce its output".into());
        }
    }
    // (c) tails span the degree >= 2 part: its dimension is rank - #z
    if ir.tails.len() != r - z.len() {
        return Err(format!("{} tails, expected {}", ir.tails.len(), r - z.len()));
    }
    // (d) exact indeterminates
    for (h, k) in ir.heads.iter().zip(z.iter()) {
        let x = Polynomial::variable(n, k);
        if spans_contain(gs, &x) != (*h == x) {
            return Err(format!("exact-indeterminate detection wrong for x{}", k + 1));
        }
    }
    Ok(())
}

/// What a soundness run found.
#[derive(Clone, Copy, Debug, Default)]
pub struct Soundness {
    pub successes: usize,
    pub oracle_checked: usize,
    pub oracle_overloaded: usize,
    pub unit_ideals: usize,
}

impl std::ops::AddAssign for Soundness {
    fn add_assign(&mut self, o: Self) {
        self.successes += o.successes;
        self.oracle_checked += o.oracle_checked;
        self.oracle_overloaded += o.oracle_overloaded;
        self.unit_ideals += o.unit_ideals;
    }
}

pub const SOUNDNESS_LIMITS: zsep::oracle::OracleLimits = zsep::oracle::OracleLimits {
    max_pairs: 3000,
    max_degree: 24,
    max_basis: 400,
    max_steps: 200_000,
};

fn judge<F: Field>(
    sys: &PolySystem<F>,
    z: &IndexTuple,
    sep: &zsep::SeparatingTuple<F>,
    label: &str,
    out: &mut Soundness,
) -> Result<(), String> {
    use zsep::oracle;
    out.successes += 1;
    let n = sys.nvars();
    if sep.entries.len() != z.len() {
        return Err(format!("{label}: {} entries for {} indeterminates", sep.entries.len(), z.len()));
    }
    for ((k, f), zk) in sep.entries.iter().zip(z.iter()) {
        if *k != zk || f.leading_term(&sep.ordering).and_then(Term::as_variable) != Some(zk) {
            return Err(format!("{label}: leading term of the x{} entry is not x{}", zk + 1, zk + 1));
        }
    }
    if n > 8 {
        return Ok(());
    }
    let ord = zsep::TermOrdering::elimination(z, n);
    match oracle::buchberger_with(sys, &ord, SOUNDNESS_LIMITS) {
        Err(_) => out.oracle_overloaded += 1,
        Ok(gb) => {
            out.oracle_checked += 1;
            if gb.is_unit() {
                out.unit_ideals += 1;
            } else if !z.iter().all(|k| gb.leading_terms().contains(&Term::variable(n, k))) {
                return Err(format!("{label}: checker succeeded but the oracle finds Z not separating"));
            }
            if let Some((k, _)) = sep.entries.iter().find(|(_, f)| !gb.contains(f)) {
                return Err(format!("{label}: the x{} entry is not in the ideal", k + 1));
            }
        }
    }
    Ok(())
}

/// Run both checkers on `(sys, z)`; whenever one succeeds, extract the tuple
/// and hold it against leading terms and (up to 8 indeterminates) the oracle.
pub fn soundness<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<Soundness, String> {
    use zsep::sepcheck::{self, CheckMode};
    use zsep::sepextract;
    let mut out = Soundness::default();
    let err = |e: zsep::Error| e.to_string();
    let plain = sepcheck::check(sys, z, CheckMode::Plain).map_err(err)?;
    if let Some(w) = plain.weights() {
        let sigma = sepextract::compatible_ordering(w, z);
        let sep = sepextract::find_separating_tuple(sys, z, &sigma).map_err(err)?;
        judge(sys, z, &sep, "plain", &mut out)?;
    }
    if sepcheck::check(sys, z, CheckMode::Optimized).map_err(err)?.is_success() {
        let sep = sepextract::find_separating_tuple_tracked(sys, z).map_err(err)?;
        judge(sys, z, &sep, "optimized", &mut out)?;
    } else if plain.is_success() {
        return Err("plain checker succeeded where the optimized one failed".into());
    }
    Ok(out)
}

/// [`soundness`] for a Boolean system, over the three Boolean modes.
pub fn bool_soundness(sys: &PolySystem<Gf2>, z: &IndexTuple) -> Result<Soundness, String> {
    use zsep::boolring::{self, BoolMode};
    let mut out = Soundness::default();
    let err = |e: zsep::Error| e.to_string();
    for mode in [BoolMode::Plain, BoolMode::Optimized, BoolMode::OptimizedWithFieldIdeal] {
        if boolring::bool_check_separating(sys, z, mode).map_err(err)?.is_success() {
            let sep = boolring::bool_find_separating_tuple(sys, z, mode).map_err(err)?;
            judge(sys, z, &sep, &format!("{mode:?}"), &mut out)?;
        }
    }
    Ok(out)
}

pub fn boolean_system(gs: Vec<Polynomial<Gf2>>) -> PolySystem<Gf2> {
    let n = gs[0].nvars();
    let gs = gs.iter().map(zsep::boolring::squarefree_normalize).filter(|g| !g.is_zero()).collect::<Vec<_>>();
    let gs = if gs.is_empty() { vec![Polynomial::variable(n, 0)] } else { gs };
    PolySystem::new(Ring::boolean(n), gs).unwrap()
}

/// Both extension methods on one random instance: spans must coincide, stay
/// within degree `delta` and lie in the span of the products.
pub fn extension_agreement<F: Sample>(rng: &mut ChaCha8Rng) -> Result<(), String> {
    use zsep::reduce::degree_bounded_extension;
    use zsep::ExtensionMethod;
    let n = rng.gen_range(2..=5);
    let r = rng.gen_range(1..=4);
    let gs: Vec<Polynomial<F>> = (0..r)
        .map(|_| {
            let t = rng.gen_range(1..=4);
            random_poly::<F>(rng, n, t, 3)
        })
        .filter(|g| !g.is_zero())
        .collect();
    if gs.is_empty() {
        return Ok(());
    }
    let s = rng.gen_range(0..n);
    let z = random_tuple(rng, n, s);
    let max = gs.iter().filter_map(Polynomial::degree).max().unwrap();
    let delta = rng.gen_range(1..=max + 1);
    let a = degree_bounded_extension(&gs, &z, delta, ExtensionMethod::EchelonScan);
    let b = degree_bounded_extension(&gs, &z, delta, ExtensionMethod::KernelOfHighTerms);
    if !same_span(&a, &b) {
        return Err(format!("spans differ: {} vs {} elements", a.len(), b.len()));
    }
    if rank(&a) != a.len() || rank(&b) != b.len() {
        return Err("a basis is linearly dependent".into());
    }
    let products: Vec<Polynomial<F>> =
        (0..n).filter(|&i| !z.contains(i)).flat_map(|i| gs.iter().map(move |g| g.mul_var(i))).collect();
    for p in a.iter().chain(&b) {
        if p.degree().unwrap_or(0) > delta || !spans_contain(&products, p) {
            return Err("basis element outside the degree-bounded span of the products".into());
        }
    }
    Ok(())
}
