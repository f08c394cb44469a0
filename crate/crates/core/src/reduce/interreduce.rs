use super::{coefficient_matrix, combined_support, row_polynomial};
use crate::error::Error;
use crate::field::Field;
use crate::poly::{IndexTuple, Polynomial, Term};

/// Output of [`linear_interreduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterreductionResult<F: Field> {
    /// `z_i - h_i` for each `z_i` of the tuple, in tuple order.
    pub heads: Vec<Polynomial<F>>,
    /// The remaining basis elements, all in `P_{>=2}`, with strictly
    /// lex-decreasing leading terms.
    pub tails: Vec<Polynomial<F>>,
    /// Row `k` holds the coefficients of the inputs in output `k`
    /// (heads first, then tails).
    pub transform: Vec<Vec<F>>,
}

impl<F: Field> InterreductionResult<F> {
    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.heads.iter().chain(&self.tails)
    }

    pub fn into_polynomials(self) -> Vec<Polynomial<F>> {
        let mut v = self.heads;
        v.extend(self.tails);
        v
    }

    pub fn len(&self) -> usize {
        self.heads.len() + self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Linear interreduction of `gs` with respect to `z`.
///
/// The columns are `z_1, ..., z_s` followed by the rest of the combined
/// support in lex-descending order. The hypotheses (every support term is
/// divisible by some `z_i`, and the linear parts span a space of dimension
/// `#z`) are checked; a violation is reported as an error.
pub fn linear_interreduce<F: Field>(gs: &[Polynomial<F>], z: &IndexTuple) -> Result<InterreductionResult<F>, Error> {
    let Some(nvars) = gs.first().map(Polynomial::nvars) else {
        if z.is_empty() {
            return Ok(InterreductionResult {
                heads: Vec::new(),
                tails: Vec::new(),
                transform: Vec::new(),
            });
        }
        return Err(Error::InterreductionHypothesis(
            "no polynomials but a nonempty tuple".into(),
        ));
    };

    let zs: Vec<Term> = z.iter().map(|k| Term::variable(nvars, k)).collect();
    let mut columns = zs.clone();
    for t in combined_support(gs) {
        if !z.iter().any(|k| t.exponent(k) > 0) {
            return Err(Error::InterreductionHypothesis(format!(
                "term {t:?} is not divisible by the tuple"
            )));
        }
        if !zs.contains(&t) {
            columns.push(t);
        }
    }

    let mut e = F::rref(&coefficient_matrix(gs, &columns));
    let s = z.len();
    if e.pivots().len() < s || e.pivots()[..s].iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::InterreductionHypothesis(format!(
            "linear parts do not span a space of dimension {s}"
        )));
    }
    let transform = e.take_transform().expect("tracked");
    let mut polys = e.rows().iter().map(|r| row_polynomial(nvars, r, &columns));
    let heads = polys.by_ref().take(s).collect();
    let tails = polys.collect();
    Ok(InterreductionResult { heads, tails, transform })
}
