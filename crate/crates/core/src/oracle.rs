//! A small Buchberger implementation used as ground truth in tests.
//!
//! Pairs are chosen by smallest lcm degree, first index on ties, and only the
//! coprime-leading-terms criterion is applied. Boolean systems get the field
//! ideal added.

use crate::boolring::{remainder, remainder_bounded};
use crate::error::Error;
use crate::field::Field;
use crate::poly::{IndexTuple, PolySystem, Polynomial, Term, TermOrdering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Number of S-polynomials reduced before giving up.
    pub max_pairs: usize,
    /// Largest degree allowed for a new basis element.
    pub max_degree: u32,
    /// Largest number of basis elements.
    pub max_basis: usize,
    /// Reduction steps allowed while reducing one polynomial.
    pub max_steps: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_pairs: 20_000,
            max_degree: 40,
            max_basis: 2_000,
            max_steps: 1_000_000,
        }
    }
}

/// A reduced Gröbner basis with monic elements sorted by leading term,
/// largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    ordering: TermOrdering,
    polys: Vec<Polynomial<F>>,
    leads: Vec<Term>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ordering(&self) -> &TermOrdering {
        &self.ordering
    }

    pub fn polynomials(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn leading_terms(&self) -> &[Term] {
        &self.leads
    }

    pub fn is_unit(&self) -> bool {
        self.leads.iter().any(Term::is_one)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        remainder(f, &self.polys, &self.leads, &self.ordering)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Polynomial<F> {
    gb.normal_form(f)
}

/// Reduced Gröbner basis of the system under `ord`, with default limits.
pub fn buchberger<F: Field>(sys: &PolySystem<F>, ord: &TermOrdering) -> Result<GroebnerBasis<F>, Error> {
    buchberger_with(sys, ord, OracleLimits::default())
}

pub fn buchberger_with<F: Field>(
    sys: &PolySystem<F>,
    ord: &TermOrdering,
    limits: OracleLimits,
) -> Result<GroebnerBasis<F>, Error> {
    let n = sys.nvars();
    let mut input: Vec<Polynomial<F>> = sys.generators().to_vec();
    if sys.ring().is_boolean() {
        for k in 0..n {
            let x = Polynomial::variable(n, k);
            input.push(&x.pow(2) - &x);
        }
    }
    groebner(n, input, ord, limits)
}

pub fn groebner<F: Field>(
    nvars: usize,
    input: Vec<Polynomial<F>>,
    ord: &TermOrdering,
    limits: OracleLimits,
) -> Result<GroebnerBasis<F>, Error> {
    let mut g: Vec<Polynomial<F>> = Vec::new();
    let mut leads: Vec<Term> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let add = |p: Polynomial<F>, g: &mut Vec<Polynomial<F>>, leads: &mut Vec<Term>, pairs: &mut Vec<(usize, usize)>| {
        let p = p.monic(ord);
        let lt = p.leading_term(ord).expect("nonzero").clone();
        let j = g.len();
        pairs.extend((0..j).map(|i| (i, j)));
        g.push(p);
        leads.push(lt);
    };

    let reduce = |p: &Polynomial<F>, g: &[Polynomial<F>], leads: &[Term]| {
        remainder_bounded(p, g, leads, ord, limits.max_steps)
            .ok_or_else(|| Error::OracleOverloaded(format!("a reduction took more than {} steps", limits.max_steps)))
    };

    for p in input {
        let r = reduce(&p, &g, &leads)?;
        if !r.is_zero() {
            add(r, &mut g, &mut leads, &mut pairs);
        }
    }

    let mut reduced = 0;
    while !pairs.is_empty() {
        if leads.iter().any(Term::is_one) {
            break;
        }
        let pos = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                leads[i].lcm(&leads[j]).degree()
            })
            .expect("nonempty");
        let (i, j) = pairs.remove(pos);
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        reduced += 1;
        if reduced > limits.max_pairs {
            return Err(Error::OracleOverloaded(format!("more than {} pairs", limits.max_pairs)));
        }
        let s = s_polynomial(&g[i], &leads[i], &g[j], &leads[j]);
        let r = reduce(&s, &g, &leads)?;
        if r.is_zero() {
            continue;
        }
        let deg = r.leading_term(ord).expect("nonzero").degree();
        if deg > limits.max_degree {
            return Err(Error::OracleOverloaded(format!("leading term of degree {deg}")));
        }
        if g.len() >= limits.max_basis {
            return Err(Error::OracleOverloaded(format!("more than {} basis elements", limits.max_basis)));
        }
        add(r, &mut g, &mut leads, &mut pairs);
    }

    Ok(interreduce(nvars, g, leads, ord))
}

fn s_polynomial<F: Field>(f: &Polynomial<F>, lf: &Term, g: &Polynomial<F>, lg: &Term) -> Polynomial<F> {
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l).expect("lcm"), &F::one());
    let b = g.mul_term(&lg.quotient_of(&l).expect("lcm"), &F::one());
    &a - &b
}

fn interreduce<F: Field>(nvars: usize, g: Vec<Polynomial<F>>, leads: Vec<Term>, ord: &TermOrdering) -> GroebnerBasis<F> {
    if leads.iter().any(Term::is_one) {
        return GroebnerBasis {
            ordering: ord.clone(),
            polys: vec![Polynomial::one(nvars)],
            leads: vec![Term::one(nvars)],
        };
    }
    // keep elements whose leading term is minimal
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        let redundant = (0..g.len()).any(|j| {
            j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min: Vec<Polynomial<F>> = keep.iter().map(|&i| g[i].clone()).collect();
    let min_leads: Vec<Term> = keep.iter().map(|&i| leads[i].clone()).collect();
    let mut out: Vec<(Term, Polynomial<F>)> = (0..min.len())
        .map(|i| {
            let others: Vec<Polynomial<F>> = min.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            let other_leads: Vec<Term> =
                min_leads.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t.clone()).collect();
            let lt = min_leads[i].clone();
            let tail = min[i].filter_terms(|t| t != &lt);
            let r = &Polynomial::monomial(lt.clone(), F::one()) + &remainder(&tail, &others, &other_leads, ord);
            (lt, r)
        })
        .collect();
    out.sort_by(|a, b| ord.compare(&b.0, &a.0));
    GroebnerBasis {
        ordering: ord.clone(),
        leads: out.iter().map(|(t, _)| t.clone()).collect(),
        polys: out.into_iter().map(|(_, p)| p).collect(),
    }
}

/// Whether every `z_i` is a leading term of the ideal under an elimination
/// ordering for `z`. The unit ideal counts as not separating.
pub fn oracle_is_separating<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<bool, Error> {
    let gb = buchberger(sys, &TermOrdering::elimination(z, sys.nvars()))?;
    if gb.is_unit() {
        return Ok(false);
    }
    let n = sys.nvars();
    Ok(z.iter().all(|k| gb.leading_terms().contains(&Term::variable(n, k))))
}

/// Reduced Gröbner basis of the elimination ideal `I ∩ K[X \ Z]`, with
/// polynomials still in the full ring.
pub fn elimination_ideal<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<Vec<Polynomial<F>>, Error> {
    let gb = buchberger(sys, &TermOrdering::elimination(z, sys.nvars()))?;
    Ok(gb
        .polynomials()
        .iter()
        .filter(|p| p.support().all(|t| z.iter().all(|k| t.exponent(k) == 0)))
        .cloned()
        .collect())
}
