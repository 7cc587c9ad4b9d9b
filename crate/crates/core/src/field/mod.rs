//! Exact arithmetic: rationals, sparse multivariate polynomials and rational
//! functions whose denominators are products of linear forms.
//!
//! Everything here is generic over a coefficient field [`Coeff`]. The crate
//! root fixes the coefficient type to arbitrary-precision rationals through
//! the [`crate::Rational`], [`crate::Poly`] and [`crate::Scalar`] aliases.

mod poly;
mod ratfunc;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use num_traits::{Num, Signed};

pub use poly::{MPoly, Monomial};
pub use ratfunc::RatFunc;
pub use rational::{format_rational, parse_rational};

/// An exact coefficient field.
///
/// `Ratio<i64>` and `BigRational` both qualify. Floating point types do not:
/// they are not `Ord + Hash + Eq`, which is what canonical forms need.
pub trait Coeff:
    Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
}

impl<T> Coeff for T where
    T: Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
}

/// A polynomial indeterminate, named after the symbol class it stands for.
///
/// Indeterminates are ordered by name; that order fixes the monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Debug for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Failures of field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("ZeroDivision: division by the zero scalar")]
    ZeroDivision,
    #[error("denominator {0} is not a product of linear forms")]
    NonLinearDenominator(String),
}
