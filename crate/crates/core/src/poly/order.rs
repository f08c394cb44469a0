use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::{IndexTuple, Term};
use crate::error::Error;
use crate::field::{Field, Rational};
use crate::reduce::Matrix;

/// A term ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrdering {
    /// Lexicographic with `x1 > x2 > ... > xn`.
    Lex,
    /// Degree first, ties broken reverse lexicographically.
    DegRevLex,
    /// Compare weights first, then defer to an inner ordering.
    Weighted(WeightedOrdering),
    /// Compare the images under an integer matrix row by row.
    Matrix(MatrixOrdering),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOrdering {
    weights: Vec<BigUint>,
    small: Option<Vec<u64>>,
    tiebreak: Box<TermOrdering>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixOrdering {
    rows: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i64>>>,
}

impl WeightedOrdering {
    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn tiebreak(&self) -> &TermOrdering {
        &self.tiebreak
    }

    pub fn weight_of(&self, t: &Term) -> BigUint {
        t.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, w)| w * e)
            .sum()
    }

    fn compare(&self, a: &Term, b: &Term) -> Ordering {
        let by_weight = match &self.small {
            Some(w) => match (dot_u64(w, a), dot_u64(w, b)) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => self.weight_of(a).cmp(&self.weight_of(b)),
            },
            None => self.weight_of(a).cmp(&self.weight_of(b)),
        };
        by_weight.then_with(|| self.tiebreak.compare(a, b))
    }
}

impl MatrixOrdering {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn compare(&self, a: &Term, b: &Term) -> Ordering {
        if let Some(rows) = &self.small {
            for row in rows {
                match (dot_i64(row, a), dot_i64(row, b)) {
                    (Some(x), Some(y)) => match x.cmp(&y) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    _ => return self.compare_big(a, b),
                }
            }
            return Ordering::Equal;
        }
        self.compare_big(a, b)
    }

    fn compare_big(&self, a: &Term, b: &Term) -> Ordering {
        for row in &self.rows {
            let x: BigInt = row.iter().zip(a.exponents()).map(|(r, &e)| r * e).sum();
            let y: BigInt = row.iter().zip(b.exponents()).map(|(r, &e)| r * e).sum();
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

fn dot_u64(w: &[u64], t: &Term) -> Option<u128> {
    let mut acc: u128 = 0;
    for (&wi, &e) in w.iter().zip(t.exponents()) {
        acc = acc.checked_add(wi as u128 * e as u128)?;
    }
    Some(acc)
}

fn dot_i64(w: &[i64], t: &Term) -> Option<i128> {
    let mut acc: i128 = 0;
    for (&wi, &e) in w.iter().zip(t.exponents()) {
        acc = acc.checked_add(wi as i128 * e as i128)?;
    }
    Some(acc)
}

impl TermOrdering {
    /// Weight comparison first, `tiebreak` on equal weight.
    pub fn weighted(weights: Vec<BigUint>, tiebreak: TermOrdering) -> Result<Self, Error> {
        if let Some(n) = tiebreak.nvars() {
            if n != weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: weights.len(),
                    found: n,
                });
            }
        }
        let small = weights.iter().map(ToPrimitive::to_u64).collect();
        Ok(TermOrdering::Weighted(WeightedOrdering {
            weights,
            small,
            tiebreak: Box::new(tiebreak),
        }))
    }

    /// A matrix ordering. The rows must have rank equal to the number of
    /// columns and the first nonzero entry of every column must be positive,
    /// so that the result is a total, multiplicative well-ordering.
    pub fn matrix(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let m = MatrixOrdering::unchecked(rows)?;
        let n = m.rows[0].len();
        for col in 0..n {
            match m.rows.iter().map(|r| &r[col]).find(|v| !v.is_zero()) {
                Some(v) if v.is_positive() => {}
                _ => return Err(Error::InvalidOrdering(format!("column {} has no positive leading entry", col + 1))),
            }
        }
        let q: Matrix<Rational> = Matrix::from_rows(
            m.rows
                .iter()
                .map(|r| r.iter().map(|v| Rational::from_fraction(v, &BigInt::from(1)).unwrap()).collect())
                .collect(),
            n,
        );
        let rank = Rational::rref(&q).rank();
        if rank != n {
            return Err(Error::InvalidOrdering(format!("matrix has rank {rank}, expected {n}")));
        }
        Ok(TermOrdering::Matrix(m))
    }

    pub fn matrix_i64(rows: &[Vec<i64>]) -> Result<Self, Error> {
        Self::matrix(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// Elimination ordering for `z`: the `z` exponents compared lexicographically
    /// in tuple order, then degree-reverse-lexicographic on the other variables.
    pub fn elimination(z: &IndexTuple, nvars: usize) -> Self {
        let mask = z.mask(nvars);
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for k in z.iter() {
            let mut r = vec![BigInt::zero(); nvars];
            r[k] = 1.into();
            rows.push(r);
        }
        rows.push((0..nvars).map(|k| BigInt::from(u8::from(!mask[k]))).collect());
        for k in (0..nvars).rev().filter(|&k| !mask[k]) {
            let mut r = vec![BigInt::zero(); nvars];
            r[k] = (-1).into();
            rows.push(r);
        }
        TermOrdering::Matrix(MatrixOrdering::unchecked(rows).expect("nonempty"))
    }

    /// Number of variables fixed by the ordering, if any.
    pub fn nvars(&self) -> Option<usize> {
        match self {
            TermOrdering::Lex | TermOrdering::DegRevLex => None,
            TermOrdering::Weighted(w) => Some(w.weights.len()),
            TermOrdering::Matrix(m) => Some(m.rows[0].len()),
        }
    }

    /// Compare two terms. Both must have the ordering's number of variables.
    pub fn compare(&self, a: &Term, b: &Term) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            TermOrdering::Lex => a.cmp(b),
            TermOrdering::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
            TermOrdering::Weighted(w) => w.compare(a, b),
            TermOrdering::Matrix(m) => m.compare(a, b),
        }
    }

    /// [`compare`](Self::compare) with dimension checks.
    pub fn try_compare(&self, a: &Term, b: &Term) -> Result<Ordering, Error> {
        let n = self.nvars().unwrap_or(a.nvars());
        for t in [a, b] {
            if t.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.nvars(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// Sort terms descending.
    pub fn sort_desc(&self, terms: &mut [Term]) {
        match self {
            TermOrdering::Lex => terms.sort_unstable_by(|a, b| b.cmp(a)),
            _ => terms.sort_unstable_by(|a, b| self.compare(b, a)),
        }
    }
}

impl MatrixOrdering {
    /// Rows of equal length, no rank check.
    pub fn unchecked(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let n = rows.first().map(Vec::len).ok_or_else(|| Error::InvalidOrdering("no rows".into()))?;
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOrdering("rows have unequal or zero length".into()));
        }
        let small = rows
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>())
            .collect();
        Ok(MatrixOrdering { rows, small })
    }
}
