use std::collections::{BTreeSet, HashMap, HashSet};

use super::combined_support;
use super::sparse::{combine, sparse_kernel, sparse_row_polynomial, sparse_rows, sparse_rref, SparseRow};
use crate::field::Field;
use crate::poly::{IndexTuple, Polynomial, Term, TermOrdering};

/// How to compute a basis of `<H> ∩ P_{<=δ}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExtensionMethod {
    /// Row reduce `H` under DegRevLex and keep the rows whose leading term
    /// has degree at most δ.
    EchelonScan,
    /// Kernel of the coefficient matrix restricted to the terms of degree
    /// above δ.
    #[default]
    KernelOfHighTerms,
}

/// A basis of `<H> ∩ P_{<=δ}` together with its coordinates in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<F: Field> {
    /// `(i, j)` for every product `x_i * g_j` kept in `H`, duplicates removed.
    pub products: Vec<(usize, usize)>,
    pub basis: Vec<Polynomial<F>>,
    /// `coefficients[k]` lists `(l, c)` with `c` the coefficient of
    /// `products[l]` in `basis[k]`. Empty unless requested.
    pub coefficients: Vec<SparseRow<F>>,
}

/// A basis of the span of `{x_i g_j : x_i not in z}` intersected with the
/// polynomials of degree at most `delta`.
pub fn degree_bounded_extension<F: Field>(
    gs: &[Polynomial<F>],
    z: &IndexTuple,
    delta: u32,
    method: ExtensionMethod,
) -> Vec<Polynomial<F>> {
    extension_with_coefficients(gs, z, delta, method, false).basis
}

/// As [`degree_bounded_extension`], optionally keeping the coordinates of each
/// basis element with respect to the products.
pub fn extension_with_coefficients<F: Field>(
    gs: &[Polynomial<F>],
    z: &IndexTuple,
    delta: u32,
    method: ExtensionMethod,
    track: bool,
) -> Extension<F> {
    let Some(nvars) = gs.first().map(Polynomial::nvars) else {
        return Extension {
            products: Vec::new(),
            basis: Vec::new(),
            coefficients: Vec::new(),
        };
    };

    let mut seen = HashSet::new();
    let mut products = Vec::new();
    let mut h = Vec::new();
    for i in (0..nvars).filter(|&i| !z.contains(i)) {
        for (j, g) in gs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let p = g.mul_var(i);
            if seen.insert(p.clone()) {
                products.push((i, j));
                h.push(p);
            }
        }
    }

    let (basis, coefficients) = match method {
        ExtensionMethod::EchelonScan => echelon_scan(nvars, &h, delta, track),
        ExtensionMethod::KernelOfHighTerms => kernel_of_high_terms(nvars, &h, delta, track),
    };
    Extension {
        products,
        basis,
        coefficients,
    }
}

type Basis<F> = (Vec<Polynomial<F>>, Vec<SparseRow<F>>);

fn echelon_scan<F: Field>(nvars: usize, h: &[Polynomial<F>], delta: u32, track: bool) -> Basis<F> {
    let mut columns = combined_support(h);
    TermOrdering::DegRevLex.sort_desc(&mut columns);
    let e = sparse_rref(sparse_rows(h, &columns), track);
    let mut basis = Vec::new();
    let mut coefficients = Vec::new();
    for (k, (row, &p)) in e.rows.iter().zip(&e.pivots).enumerate() {
        if columns[p].degree() <= delta {
            basis.push(sparse_row_polynomial(nvars, row, &columns));
            if let Some(t) = &e.transform {
                coefficients.push(t[k].clone());
            }
        }
    }
    (basis, coefficients)
}

fn kernel_of_high_terms<F: Field>(nvars: usize, h: &[Polynomial<F>], delta: u32, track: bool) -> Basis<F> {
    let high: Vec<Term> = h
        .iter()
        .flat_map(|p| p.support())
        .filter(|t| t.degree() > delta)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .cloned()
        .collect();

    // columns of A are the products, rows the high terms
    let row_of: HashMap<&Term, usize> = high.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut a: Vec<SparseRow<F>> = vec![Vec::new(); high.len()];
    for (j, p) in h.iter().enumerate() {
        for (t, c) in p.terms() {
            if let Some(&k) = row_of.get(t) {
                a[k].push((j, c.clone()));
            }
        }
    }
    let kernel = sparse_kernel(a, h.len());

    let raw: Vec<Polynomial<F>> = kernel
        .iter()
        .map(|v| Polynomial::combination(nvars, v.iter().map(|(j, c)| (c, &h[*j]))))
        .collect();

    // The kernel vectors may give dependent (even zero) polynomials; keep a basis.
    let columns = combined_support(&raw);
    let e = sparse_rref(sparse_rows(&raw, &columns), track);
    let basis = e.rows.iter().map(|r| sparse_row_polynomial(nvars, r, &columns)).collect();
    let coefficients = match &e.transform {
        Some(t) => t.iter().map(|row| combine(row, &kernel)).collect(),
        None => Vec::new(),
    };
    (basis, coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::{parse_system, AnySystem};
    use crate::reduce::same_span;

    fn sys(text: &str) -> Vec<Polynomial<Rational>> {
        match parse_system(text).unwrap() {
            AnySystem::Rational(s) => s.into_generators(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn low_degree_input_keeps_all_products() {
        let g = sys("field Q\nvars x[1..3]\npoly x1 + x2\npoly x1*x3");
        let z = IndexTuple::new(vec![0], 3).unwrap();
        for m in [ExtensionMethod::EchelonScan, ExtensionMethod::KernelOfHighTerms] {
            let e = extension_with_coefficients(&g, &z, 5, m, true);
            assert_eq!(e.products.len(), 4);
            let h: Vec<_> = e.products.iter().map(|&(i, j)| g[j].mul_var(i)).collect();
            assert!(same_span(&e.basis, &h));
            for (b, c) in e.basis.iter().zip(&e.coefficients) {
                assert_eq!(b, &Polynomial::combination(3, c.iter().map(|(l, x)| (x, &h[*l]))));
            }
        }
    }

    #[test]
    fn cancels_high_terms() {
        // x2*(x1*x2 + x3) - x1*(x2^2 + x1) = x2*x3 - x1^2
        let g = sys("field Q\nvars x[1..3]\npoly x1*x2 + x3\npoly x2^2 + x1");
        let z = IndexTuple::new(vec![2], 3).unwrap();
        for m in [ExtensionMethod::EchelonScan, ExtensionMethod::KernelOfHighTerms] {
            let b = degree_bounded_extension(&g, &z, 2, m);
            assert_eq!(b.len(), 1);
            assert_eq!(b[0].to_string(), "x1^2 - x2*x3");
        }
    }
}
