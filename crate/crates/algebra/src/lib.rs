//! Exact algebra over the Gaussian rationals: polynomials, rational functions and
//! weighted truncated power series in variables closed under conjugation.

pub mod error;
pub mod expr;
pub mod fraction;
pub mod function;
pub mod gcd;
pub mod linalg;
mod modular;
pub mod poly;
pub mod ratfn;
pub mod scalar;
pub mod series;
pub mod vars;

pub use error::{AlgebraError, Result};
pub use expr::Expr;
pub use fraction::Fraction;
pub use function::Function;
pub use poly::{Monomial, Poly};
pub use ratfn::RationalFn;
pub use scalar::GaussianRational;
pub use series::TruncSeries;
pub use vars::{Var, VarKind, VariableSpace};
