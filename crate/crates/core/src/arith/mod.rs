//! Rational numbers, polynomials and the discrete calculus on functions of
//! one natural number.

mod numbers;
mod poly;

pub use numbers::{
    bernoulli, bernoulli_poly, binomial, binomial_i64, factorial, sinh_coefficient, stirling2,
    zeta_at_one_minus,
};
pub use poly::{disc_convolution, disc_derivative, faulhaber, faulhaber_value, BinomPoly, Poly};
