//! Exact linear algebra over the rationals.
//!
//! Everything here is exact: entries are arbitrary-precision rationals, and
//! every subspace is stored in reduced row echelon form so equality of
//! subspaces is equality of bases.

mod echelon;
mod matrix;
mod sparse;
mod subspace;

pub use echelon::EchelonBuilder;
pub use matrix::{kernel_basis, rref, Matrix, Rref};
pub(crate) use matrix::kernel_of_rows;
pub use sparse::SparseVector;
pub use subspace::{contains, intersect, subspace_eq, sum, Subspace};

/// Normalized fraction of arbitrary-precision integers with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num/den`. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
