use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Ring, Term, TermOrdering};
use crate::field::Field;

/// A sparse polynomial: lex-descending terms, nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(Term, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(Term::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Self::monomial(Term::variable(nvars, index), F::one())
    }

    pub fn monomial(term: Term, c: F) -> Self {
        let nvars = term.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(term, c)] }
    }

    /// Collect arbitrary `(term, coefficient)` pairs, merging equal terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Term, F)>) -> Self {
        let mut map: BTreeMap<Term, F> = BTreeMap::new();
        for (t, c) in terms {
            debug_assert_eq!(t.nvars(), nvars);
            match map.get_mut(&t) {
                Some(acc) => *acc = acc.plus(&c),
                None => {
                    map.insert(t, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with coefficients, lex-descending.
    pub fn terms(&self) -> &[(Term, F)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().map(|(t, _)| t)
    }

    pub fn coefficient(&self, t: &Term) -> F {
        match self.terms.binary_search_by(|(u, _)| t.cmp(u)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.degree()).max()
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Term::one(self.nvars))
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.iter().all(|(t, _)| t.is_square_free())
    }

    /// True iff `self == x_k` exactly.
    pub fn is_variable(&self, k: usize) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.as_variable() == Some(k)
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(&Term) -> bool) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(t, _)| keep(t)).cloned().collect(),
        }
    }

    pub fn leading(&self, ord: &TermOrdering) -> Option<(&Term, &F)> {
        let mut it = self.terms.iter();
        let mut best = it.next()?;
        for cand in it {
            if ord.compare(&cand.0, &best.0) == std::cmp::Ordering::Greater {
                best = cand;
            }
        }
        Some((&best.0, &best.1))
    }

    pub fn leading_term(&self, ord: &TermOrdering) -> Option<&Term> {
        self.leading(ord).map(|(t, _)| t)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a.times(c))).collect(),
        }
    }

    /// Divide by the coefficient of the `ord`-leading term.
    pub fn monic(&self, ord: &TermOrdering) -> Self {
        match self.leading(ord) {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn mul_term(&self, t: &Term, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // multiplication by a term preserves lex order
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, a)| (u.mul(t), a.times(c))).collect(),
        }
    }

    pub fn mul_var(&self, k: usize) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(u, a)| (u.mul_var(k), a.clone())).collect(),
        }
    }

    /// `self + c * other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), b[j].1.times(c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = a[i].1.plus(&b[j].1.times(c));
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(t, x)| (t.clone(), x.times(c))));
        Polynomial { nvars: self.nvars, terms: out }
    }

    /// Replace every positive exponent by 1 and merge the resulting terms.
    pub fn square_free_reduction(&self) -> Self {
        if self.is_square_free() {
            return self.clone();
        }
        Self::from_terms(self.nvars, self.terms.iter().map(|(t, c)| (t.square_free(), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Linear combination `sum c_i * p_i`.
    pub fn combination<'a>(nvars: usize, parts: impl IntoIterator<Item = (&'a F, &'a Self)>) -> Self {
        let mut map: HashMap<&Term, F> = HashMap::new();
        for (c, p) in parts {
            if c.is_zero() {
                continue;
            }
            for (t, a) in &p.terms {
                let v = a.times(c);
                map.entry(t)
                    .and_modify(|acc| *acc = acc.plus(&v))
                    .or_insert(v);
            }
        }
        let mut terms: Vec<(Term, F)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t.clone(), c))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (t, c) in &self.terms {
            let mut v = c.clone();
            for (k, &e) in t.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v.times(&point[k]);
                }
            }
            acc = acc.plus(&v);
        }
        acc
    }

    /// Replace each `x_k` having `images[k] = Some(p)` by `p`.
    pub fn substitute(&self, images: &[Option<Polynomial<F>>]) -> Self {
        debug_assert_eq!(images.len(), self.nvars);
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut acc = Self::zero(self.nvars);
        for (t, c) in &self.terms {
            let mut kept = vec![0; self.nvars];
            let mut value = Self::one(self.nvars);
            for (k, &e) in t.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[k] {
                    Some(img) => {
                        let p = powers.entry((k, e)).or_insert_with(|| img.pow(e));
                        value = &value * p;
                    }
                    None => kept[k] = e,
                }
            }
            let value = value.mul_term(&Term::from_exponents(kept), c);
            acc = &acc + &value;
        }
        acc
    }

    /// Rename variables into a smaller ring. Every variable not listed in
    /// `keep` must be absent.
    pub fn project(&self, keep: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.project(keep), c.clone())).collect();
        Polynomial {
            nvars: keep.len(),
            terms,
        }
    }

    /// Lift from a smaller ring; `map[i]` is the index of variable `i` here.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(t, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in t.exponents().iter().enumerate() {
                    e[map[i]] = x;
                }
                (Term::from_exponents(e), c.clone())
            }),
        )
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolynomialDisplay<'a, F> {
        PolynomialDisplay {
            poly: self,
            names: ring.names(),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a, F> {
        PolynomialDisplay { poly: self, names }
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.add_scaled(rhs, &F::one())
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.add_scaled(rhs, &F::one().negated())
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().negated())
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Term, F> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (t, a) in &self.terms {
            for (u, b) in &rhs.terms {
                let v = a.times(b);
                map.entry(t.mul(u))
                    .and_modify(|acc| *acc = acc.plus(&v))
                    .or_insert(v);
            }
        }
        let mut terms: Vec<(Term, F)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars: self.nvars, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Self) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Prints in the system-file grammar, so output can be parsed back.
pub struct PolynomialDisplay<'a, F: Field> {
    poly: &'a Polynomial<F>,
    names: &'a [String],
}

impl<F: Field> fmt::Display for PolynomialDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.negated() } else { c.clone() };
            match (i == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if t.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", t.display(self.names))?;
            } else {
                write!(f, "{mag}*{}", t.display(self.names))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
