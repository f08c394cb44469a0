//! Exact linear algebra over the coefficient field.
//!
//! Matrices are dense and row-major, except in the extension step, which
//! works on [`sparse`] rows. Polynomials enter and leave through
//! [`coefficient_matrix`] and [`row_polynomial`], with the column order chosen
//! by the caller.

mod extension;
pub mod gf2;
mod interreduce;
pub mod sparse;

use std::collections::{BTreeSet, HashMap};

pub use extension::{degree_bounded_extension, extension_with_coefficients, Extension, ExtensionMethod};
pub use interreduce::{linear_interreduce, InterreductionResult};

use crate::field::Field;
use crate::poly::{Polynomial, Term};

/// A dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: Vec<Vec<F>>,
    ncols: usize,
}

impl<F: Field> Matrix<F> {
    /// Panics if a row does not have `ncols` entries.
    pub fn from_rows(rows: Vec<Vec<F>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { rows, ncols }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            rows: vec![vec![F::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = F::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<F>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| combine_rows(other.ncols, r.iter().zip(&other.rows)))
            .collect();
        Matrix {
            rows,
            ncols: other.ncols,
        }
    }

    /// The product `v * self` for a row vector `v`.
    pub fn left_apply(&self, v: &[F]) -> Vec<F> {
        combine_rows(self.ncols, v.iter().zip(&self.rows))
    }
}

/// `sum c_i * row_i`, skipping zero coefficients.
pub(crate) fn combine_rows<'a, F: Field>(
    ncols: usize,
    parts: impl IntoIterator<Item = (&'a F, &'a Vec<F>)>,
) -> Vec<F> {
    let mut acc = vec![F::zero(); ncols];
    for (c, row) in parts {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(row) {
            if !x.is_zero() {
                *a = a.plus(&c.times(x));
            }
        }
    }
    acc
}

/// Reduced row echelon form `R = N * M` without zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<F> {
    rows: Vec<Vec<F>>,
    transform: Option<Vec<Vec<F>>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(rows: Vec<Vec<F>>, transform: Option<Vec<Vec<F>>>, pivots: Vec<usize>, ncols: usize) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        Echelon {
            rows,
            transform,
            pivots,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<F>> {
        self.rows
    }

    /// Rows of `N`, one per row of `R`. `None` when not tracked.
    pub fn transform(&self) -> Option<&[Vec<F>]> {
        self.transform.as_deref()
    }

    pub fn take_transform(&mut self) -> Option<Vec<Vec<F>>> {
        self.transform.take()
    }

    /// Pivot column of each row, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduced(&self) -> Matrix<F> {
        Matrix::from_rows(self.rows.clone(), self.ncols)
    }

    /// What is left of `v` after clearing every pivot column.
    pub fn residual(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (a, x) in v.iter_mut().zip(row).skip(p) {
                if !x.is_zero() {
                    *a = a.minus(&c.times(x));
                }
            }
        }
        v
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[F]) -> bool {
        self.residual(v).iter().all(Field::is_zero)
    }
}

/// Gauss-Jordan elimination. The pivot is the leftmost column with a nonzero
/// entry at or below the current rank, taken from the first such row.
pub fn rref_generic<F: Field>(m: &Matrix<F>, track: bool) -> Echelon<F> {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut rows = m.rows.clone();
    let mut trans = track.then(|| Matrix::<F>::identity(nrows).into_rows());
    let mut pivots = Vec::new();
    let mut rank = 0;

    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        if let Some(t) = trans.as_mut() {
            t.swap(rank, p);
        }
        let inv = rows[rank][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[rank][c..].iter_mut() {
                *x = x.times(&inv);
            }
            if let Some(t) = trans.as_mut() {
                for x in t[rank].iter_mut() {
                    *x = x.times(&inv);
                }
            }
        }
        let prow: Vec<(usize, F)> = (c..ncols)
            .filter(|&j| !rows[rank][j].is_zero())
            .map(|j| (j, rows[rank][j].clone()))
            .collect();
        let ptrans: Vec<(usize, F)> = trans
            .as_ref()
            .map(|t| {
                t[rank]
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .unwrap_or_default();
        for i in 0..nrows {
            if i == rank || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for (j, x) in &prow {
                rows[i][*j] = rows[i][*j].minus(&f.times(x));
            }
            if let Some(t) = trans.as_mut() {
                for (j, x) in &ptrans {
                    t[i][*j] = t[i][*j].minus(&f.times(x));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }

    rows.truncate(rank);
    if let Some(t) = trans.as_mut() {
        t.truncate(rank);
    }
    Echelon::new(rows, trans, pivots, ncols)
}

/// Reduced row echelon form through the field's preferred routine.
pub fn rref<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    F::rref(m)
}

/// A basis of the right kernel `{v : A v = 0}`, one vector per free column.
pub fn kernel_basis<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    let e = F::rref_with(a, false);
    let mut is_pivot = vec![false; a.ncols()];
    for &p in e.pivots() {
        is_pivot[p] = true;
    }
    (0..a.ncols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); a.ncols()];
            v[f] = F::one();
            for (row, &p) in e.rows().iter().zip(e.pivots()) {
                v[p] = row[f].negated();
            }
            v
        })
        .collect()
}

/// The union of the supports, lex-descending.
pub fn combined_support<'a, F: Field>(polys: impl IntoIterator<Item = &'a Polynomial<F>>) -> Vec<Term> {
    let set: BTreeSet<&Term> = polys.into_iter().flat_map(|p| p.support()).collect();
    set.into_iter().rev().cloned().collect()
}

/// Coefficient matrix with one row per polynomial and one column per entry of
/// `columns`. Every support term must appear in `columns`.
pub fn coefficient_matrix<F: Field>(polys: &[Polynomial<F>], columns: &[Term]) -> Matrix<F> {
    let index: HashMap<&Term, usize> = columns.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let rows = polys
        .iter()
        .map(|p| {
            let mut row = vec![F::zero(); columns.len()];
            for (t, c) in p.terms() {
                row[index[t]] = c.clone();
            }
            row
        })
        .collect();
    Matrix::from_rows(rows, columns.len())
}

pub fn row_polynomial<F: Field>(nvars: usize, row: &[F], columns: &[Term]) -> Polynomial<F> {
    Polynomial::from_terms(
        nvars,
        row.iter()
            .zip(columns)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, t)| (t.clone(), c.clone())),
    )
}

/// Whether two polynomial lists span the same space.
pub fn same_span<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> bool {
    let columns = combined_support(a.iter().chain(b));
    let ea = F::rref_with(&coefficient_matrix(a, &columns), false);
    let eb = F::rref_with(&coefficient_matrix(b, &columns), false);
    ea.rows() == eb.rows()
}

/// Whether `p` lies in the span of `basis`.
pub fn in_span<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> bool {
    let columns = combined_support(basis.iter().chain(std::iter::once(p)));
    let e = F::rref_with(&coefficient_matrix(basis, &columns), false);
    e.contains(coefficient_matrix(std::slice::from_ref(p), &columns).rows()[0].as_slice())
}
