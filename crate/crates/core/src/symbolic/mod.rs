//! Exact values in the ring of ζ-symbols: π-power closed forms, reduction
//! formulas and generating-function coefficients.

pub mod poly;
pub mod reductions;

pub use poly::{BivariateSeries, ExactPiMultiple, Monomial, ZetaArg, ZetaPolynomial};
pub use reductions::{
    closed_form, drin_coefficient, drin_series, euler_reduction, evaluate_polynomial_bits,
    evaluate_pi_multiple_bits, evaluate_symbolic, markett_reduction, period1_even_rational,
    period1_newton, period1_reduce, zeta_even_exact, ClosedFormName, Symbolic,
};
