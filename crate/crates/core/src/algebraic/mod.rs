//! The algebraic numbers behind the sequences: `alpha_k`, the positive zero
//! of `P_k = X^k + X - 1`, its inverse `beta_k`, and all complex zeros of
//! `Q_k = X^k - X^{k-1} - 1`.

mod ball;
pub mod exact;
mod interval;
mod roots;

pub use ball::{CRat, ComplexBall};
pub use exact::IntPoly;
pub use interval::{alpha_interval, beta_interval, square_nonneg, DyadicBracket, RationalInterval};
pub use roots::{
    a_closed_form, a_closed_form_series, aberth, coefficient_polynomial, leading_coefficient,
    reciprocal_by_formula, residue_bound, root_set, shifted_polynomial,
    shifted_reciprocal_polynomial, CoefficientPolynomial, RootSet, DEFAULT_PRECISION,
};
