//! Canonical-form expression arithmetic and the (bi)differential operator
//! calculus the rest of the crate is built on.
//!
//! Everything here is exact. Expressions live in the span of
//! `z^p · a^q · e^{m a z0}` with Gaussian-rational coefficients graded by
//! deformation symbols; hyperbolic functions are just two-term sums in the
//! exponential basis, so identities such as `cosh² - sinh² = 1` hold by
//! canonicalisation alone.

mod diffop;
mod expr;
mod graded;
mod render;
mod scalar;
mod tensor;

pub use diffop::{DiffOp, MultiIndex};
pub use expr::{Assignment, Chart, Expr, Monomial};
pub use graded::{DeformSymbol, DeformValues, GradedCoeff, Multidegree, SYMBOL_COUNT};
pub use render::{render_rational, render_scalar};
pub use scalar::{imag, int, rational, real, to_complex64, Rational, Scalar};
pub use tensor::{BiOp, SlotTerm, TensorOp, TensorValue, TriOp};
