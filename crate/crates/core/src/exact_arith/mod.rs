//! Exact arithmetic over the rationals and cyclotomic fields.
//!
//! Elements of Q(zeta_N) are stored modulo the N-th cyclotomic polynomial, so
//! every element has exactly one representation and equality is plain
//! coefficient comparison.

mod approx;
mod cyclotomic;
mod poly;
mod rational;
mod special;

pub use approx::{cyc_to_float, real_sign, ComplexInterval, RealInterval};
pub use cyclotomic::{
    embed_common, euler_phi, CycEntry, CyclotomicField, CyclotomicNumber,
};
pub use poly::cyclotomic_polynomial;
pub use rational::{format_rational, parse_rational, Rational};
pub use special::{cos_pi_rational, root_of_unity, sin_pi_rational, sqrt_rational};
