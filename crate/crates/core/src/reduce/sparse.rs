//! Sparse rows for the large, thin matrices of the extension step.
//!
//! A row is a list of `(column, value)` pairs with strictly increasing
//! columns and no zero values.

use std::collections::HashMap;

use crate::field::Field;
use crate::poly::{Polynomial, Term};

pub type SparseRow<F> = Vec<(usize, F)>;

/// Reduced row echelon form of sparse rows, `R = N * M`, without zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseEchelon<F> {
    /// Rows of `R` sorted by pivot.
    pub rows: Vec<SparseRow<F>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Rows of `N` in input-row coordinates, when tracked.
    pub transform: Option<Vec<SparseRow<F>>>,
}

/// `a - f * b`.
pub fn sub_scaled<F: Field>(a: &[(usize, F)], f: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, f.times(&b[j].1).negated()));
            j += 1;
        } else {
            let v = a[i].1.minus(&f.times(&b[j].1));
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale<F: Field>(row: &mut SparseRow<F>, f: &F) {
    for (_, v) in row.iter_mut() {
        *v = v.times(f);
    }
}

/// Clear every entry of `row` that sits in a pivot column of `basis`, scanning
/// left to right. Each basis row must have its pivot first with value 1.
fn clear<F: Field>(
    row: &mut SparseRow<F>,
    mut trans: Option<&mut SparseRow<F>>,
    pivot_of: &HashMap<usize, usize>,
    basis: &[SparseRow<F>],
    basis_trans: Option<&[SparseRow<F>]>,
    from: usize,
) {
    let mut pos = row.partition_point(|e| e.0 < from);
    while pos < row.len() {
        let (c, v) = row[pos].clone();
        match pivot_of.get(&c) {
            Some(&k) => {
                *row = sub_scaled(row, &v, &basis[k]);
                if let (Some(t), Some(bt)) = (trans.as_deref_mut(), basis_trans) {
                    *t = sub_scaled(t, &v, &bt[k]);
                }
            }
            None => pos += 1,
        }
    }
}

/// Gauss-Jordan elimination on sparse rows.
pub fn sparse_rref<F: Field>(rows: Vec<SparseRow<F>>, track: bool) -> SparseEchelon<F> {
    let mut basis: Vec<SparseRow<F>> = Vec::new();
    let mut basis_trans: Vec<SparseRow<F>> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();

    // forward: each new row is reduced against the rows found so far
    for (i, mut row) in rows.into_iter().enumerate() {
        let mut t: SparseRow<F> = if track { vec![(i, F::one())] } else { Vec::new() };
        clear(&mut row, track.then_some(&mut t), &pivot_of, &basis, track.then_some(&basis_trans[..]), 0);
        let Some((c, lead)) = row.first().cloned() else {
            continue;
        };
        let inv = lead.inverse().expect("nonzero entry");
        scale(&mut row, &inv);
        if track {
            scale(&mut t, &inv);
        }
        pivot_of.insert(c, basis.len());
        basis.push(row);
        if track {
            basis_trans.push(t);
        }
    }

    // backward: clear above the pivots, last pivot first
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&k| basis[k].first().expect("nonzero").0);
    let mut done: HashMap<usize, usize> = HashMap::new();
    for &k in order.iter().rev() {
        let mut row = std::mem::take(&mut basis[k]);
        let mut t = if track { std::mem::take(&mut basis_trans[k]) } else { Vec::new() };
        let c = row[0].0;
        clear(&mut row, track.then_some(&mut t), &done, &basis, track.then_some(&basis_trans[..]), c + 1);
        basis[k] = row;
        if track {
            basis_trans[k] = t;
        }
        done.insert(c, k);
    }

    let pivots = order.iter().map(|&k| basis[k][0].0).collect();
    let mut slots: Vec<Option<SparseRow<F>>> = basis.into_iter().map(Some).collect();
    let rows = order.iter().map(|&k| slots[k].take().expect("once")).collect();
    let transform = track.then(|| {
        let mut slots: Vec<Option<SparseRow<F>>> = basis_trans.into_iter().map(Some).collect();
        order.iter().map(|&k| slots[k].take().expect("once")).collect()
    });
    SparseEchelon { rows, pivots, transform }
}

/// A basis of `{v : M v = 0}` for the matrix with rows `rows` and `ncols`
/// columns, one vector per free column.
pub fn sparse_kernel<F: Field>(rows: Vec<SparseRow<F>>, ncols: usize) -> Vec<SparseRow<F>> {
    let e = sparse_rref(rows, false);
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut entries: HashMap<usize, SparseRow<F>> = HashMap::new();
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (c, v) in &row[1..] {
            entries.entry(*c).or_default().push((p, v.negated()));
        }
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = entries.remove(&f).unwrap_or_default();
            v.push((f, F::one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

/// `sum c_k * rows[k]` over the entries `(k, c)` of `coefficients`.
pub fn combine<F: Field>(coefficients: &[(usize, F)], rows: &[SparseRow<F>]) -> SparseRow<F> {
    let mut acc: HashMap<usize, F> = HashMap::new();
    for (k, c) in coefficients {
        for (j, x) in &rows[*k] {
            let v = c.times(x);
            acc.entry(*j).and_modify(|a| *a = a.plus(&v)).or_insert(v);
        }
    }
    let mut out: SparseRow<F> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    out.sort_by_key(|e| e.0);
    out
}

pub fn sparse_rows<F: Field>(polys: &[Polynomial<F>], columns: &[Term]) -> Vec<SparseRow<F>> {
    let index: HashMap<&Term, usize> = columns.iter().enumerate().map(|(i, t)| (t, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row: SparseRow<F> = p.terms().iter().map(|(t, c)| (index[t], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}

pub fn sparse_row_polynomial<F: Field>(nvars: usize, row: &[(usize, F)], columns: &[Term]) -> Polynomial<F> {
    Polynomial::from_terms(nvars, row.iter().map(|(c, v)| (columns[*c].clone(), v.clone())))
}
