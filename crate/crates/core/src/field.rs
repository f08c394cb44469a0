//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision, always kept
//! in lowest terms with a positive denominator) and the two-element field.
//! Linear algebra is dispatched through [`Field::rref`] so that GF(2) can use
//! a bit-packed elimination while the rationals use the generic routine.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::reduce::{self, Echelon, Matrix};

/// Which field a ring is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Gf2,
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => f.write_str("Q"),
            FieldKind::Gf2 => f.write_str("F2"),
        }
    }
}

/// An exact field element.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of a rational number `num/den`; `None` if `den` maps to zero.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_fraction(&BigInt::from(v), &BigInt::one()).expect("denominator is one")
    }

    /// True when printing this coefficient needs an explicit sign.
    fn is_negative(&self) -> bool {
        false
    }

    /// Reduced row echelon form with transform.
    fn rref(m: &Matrix<Self>) -> Echelon<Self> {
        Self::rref_with(m, true)
    }

    /// Reduced row echelon form; the transform is only computed when `track`
    /// is set. Fields may override this with a specialized elimination.
    fn rref_with(m: &Matrix<Self>, track: bool) -> Echelon<Self> {
        reduce::rref_generic(m, track)
    }
}

/// Rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    const KIND: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn negated(&self) -> Self {
        Rational(-&self.0)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(pub bool);

impl Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Field for Gf2 {
    const KIND: FieldKind = FieldKind::Gf2;

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_one(&self) -> bool {
        self.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        Gf2(self.0 ^ rhs.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Gf2(self.0 ^ rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Gf2(self.0 & rhs.0)
    }
    fn negated(&self) -> Self {
        *self
    }
    fn inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let two = BigInt::from(2);
        if (den % &two).is_zero() {
            return None;
        }
        Some(Gf2(!(num % &two).is_zero()))
    }
    fn rref_with(m: &Matrix<Self>, track: bool) -> Echelon<Self> {
        reduce::gf2::rref_packed(m, track)
    }
}
