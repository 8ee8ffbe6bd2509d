//! Twist-deformed Minkowski and Rindler space-times.
//!
//! The crate has two halves. The exact half ([`symbolic`], [`twist`],
//! [`star`], [`verify`]) works with canonical Laurent-exponential
//! expressions whose coefficients are Gaussian rationals graded by formal
//! deformation symbols; every equality it reports is syntactic equality of
//! canonical forms. The numeric half ([`spectra`]) evaluates the thermal
//! spectrum seen by a uniformly accelerated detector and its first-order
//! twist corrections, with a contour-rotated quadrature oracle next to every
//! closed form.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod spectra;
pub mod star;
pub mod symbolic;
pub mod twist;
pub mod verify;

pub use error::{Error, SpectraError, SymbolicError, TwistError, VerifyError};
pub use symbolic::{
    BiOp, Chart, DeformSymbol, DeformValues, DiffOp, Expr, GradedCoeff, Monomial, Multidegree, Scalar, TensorOp, TriOp,
};
pub use twist::{TwistCase, TwistKind};
