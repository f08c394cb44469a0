//! Separating tuples of indeterminates without Gröbner bases.
//!
//! Given generators `g_1, ..., g_r` of an ideal `I` and a tuple `Z` of
//! indeterminates, the checkers in [`sepcheck`] decide by linear algebra
//! alone whether some term ordering makes every `z_i` the leading term of an
//! element of `I`. On success, [`sepextract`] produces those elements, turns
//! them into a coherent tuple `z_i - h_i` with `h_i` free of `Z`, and
//! eliminates `Z` by substitution. [`boolring`] carries all of this over to
//! Boolean polynomials, and [`oracle`] is a small Buchberger used to test it.
//!
//! ```
//! use zsep::{parse_system, check_separating, AnySystem, CheckOutcome};
//!
//! let AnySystem::Rational(sys) = parse_system("field Q\nvars x y z\npoly x - y*z\npoly y - z^2").unwrap() else {
//!     unreachable!()
//! };
//! let z = sys.tuple("x, y").unwrap();
//! match check_separating(&sys, &z).unwrap() {
//!     CheckOutcome::Success { weights, .. } => assert_eq!(weights.to_string(), "(3, 1, 0)"),
//!     CheckOutcome::Fail => unreachable!(),
//! }
//! ```

pub mod boolring;
pub mod error;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod reduce;
pub mod sepcheck;
pub mod sepextract;

pub use error::Error;
pub use field::{Field, FieldKind, Gf2, Rational};
pub use poly::{
    leading_term, linear_part, parse_ordering_matrix, parse_polynomial, parse_system, restrict_to_multiples, AnySystem, IndexTuple,
    PolySystem, Polynomial, Ring, Term, TermOrdering,
};
pub use reduce::ExtensionMethod;
pub use sepcheck::{check_separating, check_separating_optimized, scan_subsets, CheckMode, CheckOutcome, WeightVector};
pub use sepextract::{
    coherent_tuple, compatible_ordering, eliminate, find_separating_tuple, find_separating_tuple_tracked,
    CoherentTuple, Eliminated, SeparatingTuple,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/orderings.md")]
    struct Orderings;
    #[doc = include_str!("../../../book/src/checking.md")]
    struct Checking;
    #[doc = include_str!("../../../book/src/extraction.md")]
    struct Extraction;
    #[doc = include_str!("../../../book/src/boolean.md")]
    struct Boolean;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
