//! From a successful check to explicit polynomials.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::field::Field;
use crate::poly::{IndexTuple, MatrixOrdering, PolySystem, Polynomial, Ring, Term, TermOrdering};
use crate::reduce::{coefficient_matrix, combined_support, row_polynomial, ExtensionMethod};
use crate::sepcheck::{self, CheckMode, CheckOutcome, WeightVector};

/// `f_i` with `LT(f_i) = z_i` under `ordering`, in tuple order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingTuple<F: Field> {
    pub ring: Ring,
    pub entries: Vec<(usize, Polynomial<F>)>,
    pub ordering: TermOrdering,
}

/// `z_i - h_i` with no `h_i` involving any `z_j`. `entries` holds `(k, h_k)`
/// sorted increasingly by the ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentTuple<F: Field> {
    pub ring: Ring,
    pub entries: Vec<(usize, Polynomial<F>)>,
    pub ordering: TermOrdering,
}

impl<F: Field> SeparatingTuple<F> {
    pub fn tuple(&self) -> IndexTuple {
        IndexTuple::new(self.entries.iter().map(|(k, _)| *k).collect(), self.ring.nvars()).expect("distinct")
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.entries.iter().map(|(_, f)| f)
    }

    pub fn get(&self, k: usize) -> Option<&Polynomial<F>> {
        self.entries.iter().find(|(i, _)| *i == k).map(|(_, f)| f)
    }
}

impl<F: Field> CoherentTuple<F> {
    pub fn tuple(&self) -> IndexTuple {
        IndexTuple::new(self.entries.iter().map(|(k, _)| *k).collect(), self.ring.nvars()).expect("distinct")
    }

    /// `h_k` for `z = x_k`.
    pub fn image(&self, k: usize) -> Option<&Polynomial<F>> {
        self.entries.iter().find(|(i, _)| *i == k).map(|(_, h)| h)
    }

    /// The polynomials `z_i - h_i`.
    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        let n = self.ring.nvars();
        self.entries
            .iter()
            .map(|(k, h)| &Polynomial::variable(n, *k) - h)
            .collect()
    }
}

impl<F: Field> fmt::Display for SeparatingTuple<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in &self.entries {
            writeln!(f, "{}: {}", self.ring.name(*k), p.display(&self.ring))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for CoherentTuple<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((k, _), p) in self.entries.iter().zip(self.polynomials()) {
            writeln!(f, "{}: {}", self.ring.name(*k), p.display(&self.ring))?;
        }
        Ok(())
    }
}

/// The ordering that compares `W`-weights first, then degree in the
/// indeterminates outside `Z` (and those of weight zero), then reverse
/// lexicographically with `x_n` smallest-first.
pub fn compatible_ordering(weights: &WeightVector, z: &IndexTuple) -> TermOrdering {
    let rows = compatible_rows(weights, z);
    let tiebreak = MatrixOrdering::unchecked(rows[1..].to_vec()).expect("nonempty");
    TermOrdering::weighted(weights.as_slice().to_vec(), TermOrdering::Matrix(tiebreak)).expect("same length")
}

/// The full matrix `[W; D; -e_n; ...; -e_1]` behind [`compatible_ordering`].
pub fn compatible_rows(weights: &WeightVector, z: &IndexTuple) -> Vec<Vec<BigInt>> {
    let n = weights.len();
    let mask = z.mask(n);
    let mut rows = Vec::with_capacity(n + 2);
    rows.push(weights.as_slice().iter().map(|w| BigInt::from(w.clone())).collect());
    rows.push(
        (0..n)
            .map(|k| {
                if !mask[k] || weights.get(k).is_zero() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect(),
    );
    for k in (0..n).rev() {
        let mut r = vec![BigInt::zero(); n];
        r[k] = -BigInt::one();
        rows.push(r);
    }
    rows
}

/// Row reduce the generators with columns sorted decreasingly by `ordering`
/// and pick, for each `z_i`, the row whose leading term is `z_i`.
pub fn find_separating_tuple<F: Field>(
    sys: &PolySystem<F>,
    z: &IndexTuple,
    ordering: &TermOrdering,
) -> Result<SeparatingTuple<F>, Error> {
    sepcheck::validate_tuple(z, sys.nvars())?;
    let n = sys.nvars();
    if let Some(m) = ordering.nvars() {
        if m != n {
            return Err(Error::DimensionMismatch { expected: n, found: m });
        }
    }
    let mut columns = combined_support(sys.generators());
    ordering.sort_desc(&mut columns);
    let e = F::rref_with(&coefficient_matrix(sys.generators(), &columns), false);
    let mut entries = Vec::with_capacity(z.len());
    for k in z.iter() {
        let target = Term::variable(n, k);
        let row = e
            .rows()
            .iter()
            .zip(e.pivots())
            .find(|(_, &p)| columns[p] == target)
            .map(|(r, _)| r)
            .ok_or_else(|| Error::NoRowWithLeadingTerm(sys.ring().name(k).to_string()))?;
        entries.push((k, row_polynomial(n, row, &columns)));
    }
    Ok(SeparatingTuple {
        ring: sys.ring().clone(),
        entries,
        ordering: ordering.clone(),
    })
}

/// Run the optimized check while replaying its linear operations on copies of
/// the original generators, and return the copies that correspond to the
/// moments each `z_i` was found.
pub fn find_separating_tuple_tracked<F: Field>(sys: &PolySystem<F>, z: &IndexTuple) -> Result<SeparatingTuple<F>, Error> {
    tracked_with(sys, z, CheckMode::Optimized, ExtensionMethod::default())
}

/// [`find_separating_tuple_tracked`] with an explicit mode and extension method.
pub fn tracked_with<F: Field>(
    sys: &PolySystem<F>,
    z: &IndexTuple,
    mode: CheckMode,
    method: ExtensionMethod,
) -> Result<SeparatingTuple<F>, Error> {
    sepcheck::validate_tuple(z, sys.nvars())?;
    let out = sepcheck::run(sys.generators(), sys.nvars(), z, mode, method, true)?;
    let CheckOutcome::Success { weights, .. } = out.outcome else {
        return Err(Error::OptimizedCheckFailed);
    };
    let mut found = out.found;
    let entries = z
        .iter()
        .map(|k| {
            let pos = found.iter().position(|(i, _)| *i == k).expect("every z is found");
            found.swap_remove(pos)
        })
        .collect();
    Ok(SeparatingTuple {
        ring: sys.ring().clone(),
        entries,
        ordering: compatible_ordering(&weights, z),
    })
}

/// Make a separating tuple coherent by substitution.
///
/// The entries are processed from the smallest `z` to the largest. Writing
/// `f_i = z_i - p_i`, the earlier `z_j` in `p_i` are replaced by their
/// already computed images. In a boolean ring every result is reduced to
/// its square-free representative.
pub fn coherent_tuple<F: Field>(sep: &SeparatingTuple<F>) -> CoherentTuple<F> {
    let n = sep.ring.nvars();
    let boolean = sep.ring.is_boolean();
    let mut order: Vec<&(usize, Polynomial<F>)> = sep.entries.iter().collect();
    order.sort_by(|a, b| {
        sep.ordering
            .compare(&Term::variable(n, a.0), &Term::variable(n, b.0))
            .then(Ordering::Equal)
    });
    let mut images: Vec<Option<Polynomial<F>>> = vec![None; n];
    let mut entries = Vec::with_capacity(order.len());
    for (k, f) in order {
        let p = &Polynomial::variable(n, *k) - f;
        let mut h = p.substitute(&images);
        if boolean {
            h = h.square_free_reduction();
        }
        images[*k] = Some(h.clone());
        entries.push((*k, h));
    }
    CoherentTuple {
        ring: sep.ring.clone(),
        entries,
        ordering: sep.ordering.clone(),
    }
}

/// A system on fewer indeterminates, with `map[i]` the index in the original
/// ring of its variable `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eliminated<F: Field> {
    pub system: PolySystem<F>,
    pub map: Vec<usize>,
}

/// Substitute `z_i -> h_i` into every generator and drop the `z` from the
/// ring. Zero results are kept so that output `j` comes from generator `j`.
pub fn eliminate<F: Field>(sys: &PolySystem<F>, coh: &CoherentTuple<F>) -> Result<Eliminated<F>, Error> {
    let n = sys.nvars();
    if coh.ring.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: coh.ring.nvars(),
        });
    }
    let mut images: Vec<Option<Polynomial<F>>> = vec![None; n];
    for (k, h) in &coh.entries {
        images[*k] = Some(h.clone());
    }
    let z = coh.tuple();
    let (ring, map) = sys.ring().without(&z);
    let gens = sys
        .generators()
        .iter()
        .map(|g| {
            let mut r = g.substitute(&images);
            if sys.ring().is_boolean() {
                r = r.square_free_reduction();
            }
            r.project(&map)
        })
        .collect();
    Ok(Eliminated {
        system: PolySystem::new(ring, gens)?,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::{parse_system, AnySystem};
    use proptest::prelude::*;

    fn rat(text: &str) -> PolySystem<Rational> {
        match parse_system(text).unwrap() {
            AnySystem::Rational(s) => s,
            _ => unreachable!(),
        }
    }

    #[test]
    fn linear_binomial() {
        let s = rat("field Q\nvars x1 x2\npoly x1 - x2");
        let z = s.tuple("x1").unwrap();
        let sep = find_separating_tuple(&s, &z, &TermOrdering::Lex).unwrap();
        assert_eq!(sep.entries[0].1.to_string(), "x1 - x2");
        let tr = find_separating_tuple_tracked(&s, &z).unwrap();
        assert_eq!(tr.entries[0].1.to_string(), "x1 - x2");
        let coh = coherent_tuple(&sep);
        assert_eq!(coh.entries[0].1.to_string(), "x2");
        let el = eliminate(&s, &coh).unwrap();
        assert_eq!(el.system.ring().names(), &["x2".to_string()]);
        assert_eq!(el.system.generators().len(), 1);
        assert!(el.system.generators()[0].is_zero());
        assert_eq!(el.map, vec![1]);
    }

    #[test]
    fn missing_row() {
        let s = rat("field Q\nvars x1 x2\npoly x1 - x2");
        let z = s.tuple("x2").unwrap();
        assert!(matches!(
            find_separating_tuple(&s, &z, &TermOrdering::Lex),
            Err(Error::NoRowWithLeadingTerm(v)) if v == "x2"
        ));
    }

    #[test]
    fn tracked_fails_cleanly() {
        let s = rat("field Q\nvars x1 x2\npoly x1*x2");
        let z = s.tuple("x1").unwrap();
        assert!(matches!(find_separating_tuple_tracked(&s, &z), Err(Error::OptimizedCheckFailed)));
    }

    #[test]
    fn chain_substitution() {
        let s = rat("field Q\nvars x1 x2 x3\npoly x1 - x2^2\npoly x2 - x3 - 1");
        let z = s.tuple("x1, x2").unwrap();
        let w = sepcheck::check_separating(&s, &z).unwrap();
        let ord = compatible_ordering(w.weights().unwrap(), &z);
        let sep = find_separating_tuple(&s, &z, &ord).unwrap();
        let coh = coherent_tuple(&sep);
        assert_eq!(coh.image(1).unwrap().to_string(), "x3 + 1");
        assert_eq!(coh.image(0).unwrap().to_string(), "x3^2 + 2*x3 + 1");
        let el = eliminate(&s, &coh).unwrap();
        assert!(el.system.generators().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn zero_weights_give_the_tiebreak() {
        let z = IndexTuple::new(vec![0], 3).unwrap();
        let o = compatible_ordering(&WeightVector::zeros(3), &z);
        let rows = compatible_rows(&WeightVector::zeros(3), &z);
        let m = TermOrdering::matrix(rows[1..].to_vec()).unwrap();
        let t = |e: &[u32]| Term::from_exponents(e.to_vec());
        for (a, b) in [(t(&[1, 0, 0]), t(&[0, 1, 0])), (t(&[0, 0, 2]), t(&[1, 1, 0]))] {
            assert_eq!(o.compare(&a, &b), m.compare(&a, &b));
        }
    }

    fn small_weights() -> impl Strategy<Value = (Vec<u64>, Vec<usize>)> {
        (prop::collection::vec(0u64..60, 5), prop::collection::vec(0usize..5, 0..4))
    }

    proptest! {
        #[test]
        fn compatible_ordering_matches_matrix(
            (w, zi) in small_weights(),
            a in prop::collection::vec(0u32..5, 5),
            b in prop::collection::vec(0u32..5, 5),
        ) {
            let mut zi = zi;
            zi.sort_unstable();
            zi.dedup();
            let z = IndexTuple::new(zi, 5).unwrap();
            let mut w = w;
            for k in 0..5 {
                if !z.contains(k) {
                    w[k] = 0;
                }
            }
            let wv = WeightVector::from_u64s(&w);
            let o = compatible_ordering(&wv, &z);
            let m = TermOrdering::matrix(compatible_rows(&wv, &z)).unwrap();
            let (a, b) = (Term::from_exponents(a), Term::from_exponents(b));
            prop_assert_eq!(o.compare(&a, &b), m.compare(&a, &b));
        }
    }
}
