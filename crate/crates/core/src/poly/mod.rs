//! Sparse multivariate polynomials over exact fields.
//!
//! A [`Polynomial`] is a strictly lex-descending list of `(Term, coefficient)`
//! pairs with no zero coefficients. Lex here means `x1 > x2 > ... > xn`, which
//! is exactly the derived `Ord` of [`Term`].

mod order;
mod parse;
mod polynomial;
mod term;

use std::fmt;

pub use order::{MatrixOrdering, TermOrdering, WeightedOrdering};
pub use parse::{parse_ordering_matrix, parse_polynomial, parse_system, AnySystem};
pub use polynomial::{Polynomial, PolynomialDisplay};
pub use term::Term;

use crate::error::Error;
use crate::field::{Field, FieldKind};

/// A polynomial ring: variable names, coefficient field, and whether the ring
/// is read modulo the field ideal (Boolean polynomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    field: FieldKind,
    boolean: bool,
}

impl Ring {
    /// Ring with default names `x1..xn`.
    pub fn new(n: usize, field: FieldKind) -> Self {
        Ring {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            field,
            boolean: false,
        }
    }

    pub fn boolean(n: usize) -> Self {
        Ring {
            boolean: true,
            ..Ring::new(n, FieldKind::Gf2)
        }
    }

    pub fn with_names(names: Vec<String>, field: FieldKind, boolean: bool) -> Result<Self, Error> {
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        if boolean && field != FieldKind::Gf2 {
            return Err(Error::BooleanRequiresF2);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateVariable(a.clone()));
            }
        }
        Ok(Ring { names, field, boolean })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same ring with the boolean flag cleared.
    pub fn ambient(&self) -> Ring {
        Ring {
            boolean: false,
            ..self.clone()
        }
    }

    /// The ring on the variables not in `removed`, plus the map from new to
    /// old variable indices.
    pub fn without(&self, removed: &IndexTuple) -> (Ring, Vec<usize>) {
        let kept: Vec<usize> = (0..self.nvars()).filter(|i| !removed.contains(*i)).collect();
        let ring = Ring {
            names: kept.iter().map(|&i| self.names[i].clone()).collect(),
            field: self.field,
            boolean: self.boolean,
        };
        (ring, kept)
    }

    /// Resolve a comma separated list of variable names.
    pub fn parse_tuple(&self, spec: &str) -> Result<IndexTuple, Error> {
        let mut indices = Vec::new();
        for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            indices.push(idx);
        }
        IndexTuple::new(indices, self.nvars())
    }
}

/// An ordered tuple of distinct indeterminates, stored as 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(indices: Vec<usize>, nvars: usize) -> Result<Self, Error> {
        for (i, &k) in indices.iter().enumerate() {
            if k >= nvars {
                return Err(Error::IndexOutOfRange { index: k, nvars });
            }
            if indices[..i].contains(&k) {
                return Err(Error::RepeatedIndex(k));
            }
        }
        Ok(IndexTuple(indices))
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    /// Build from 1-based variable numbers, as written `x4, x5, x7`.
    pub fn from_one_based(numbers: &[usize], nvars: usize) -> Result<Self, Error> {
        let indices = numbers
            .iter()
            .map(|&k| k.checked_sub(1).ok_or(Error::IndexOutOfRange { index: 0, nvars }))
            .collect::<Result<Vec<_>, _>>()?;
        IndexTuple::new(indices, nvars)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub(crate) fn remove(&mut self, index: usize) {
        self.0.retain(|&k| k != index);
    }

    /// Membership mask over `nvars` variables.
    pub fn mask(&self, nvars: usize) -> Vec<bool> {
        let mut m = vec![false; nvars];
        for &k in &self.0 {
            m[k] = true;
        }
        m
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> impl fmt::Display + 'a {
        TupleDisplay { tuple: self, ring }
    }
}

struct TupleDisplay<'a> {
    tuple: &'a IndexTuple,
    ring: &'a Ring,
}

impl fmt::Display for TupleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.tuple.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.ring.name(k))?;
        }
        f.write_str(")")
    }
}

/// A list of generators in a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem<F: Field> {
    ring: Ring,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> PolySystem<F> {
    pub fn new(ring: Ring, gens: Vec<Polynomial<F>>) -> Result<Self, Error> {
        if ring.field() != F::KIND {
            return Err(Error::FieldMismatch {
                ring: ring.field(),
                coefficients: F::KIND,
            });
        }
        for g in &gens {
            if g.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: g.nvars(),
                });
            }
            if ring.is_boolean() && !g.is_square_free() {
                return Err(Error::NotSquareFree);
            }
        }
        Ok(PolySystem { ring, gens })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Polynomial<F>> {
        self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Maximum degree of the nonzero generators (0 if there are none).
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Drop zero generators.
    pub fn normalized(mut self) -> Self {
        self.gens.retain(|g| !g.is_zero());
        self
    }

    pub fn tuple(&self, spec: &str) -> Result<IndexTuple, Error> {
        self.ring.parse_tuple(spec)
    }
}

/// The sum of all degree-1 monomials of `f`.
pub fn linear_part<F: Field>(f: &Polynomial<F>) -> Polynomial<F> {
    f.filter_terms(|t| t.degree() == 1)
}

/// Delete every monomial of `f` whose term is divisible by none of the
/// indeterminates in `z`.
pub fn restrict_to_multiples<F: Field>(f: &Polynomial<F>, z: &IndexTuple) -> Polynomial<F> {
    f.filter_terms(|t| z.iter().any(|k| t.exponent(k) > 0))
}

/// Leading term and coefficient under `ord`; `None` for the zero polynomial.
pub fn leading_term<F: Field>(ord: &TermOrdering, f: &Polynomial<F>) -> Option<(Term, F)> {
    f.leading(ord).map(|(t, c)| (t.clone(), c.clone()))
}
