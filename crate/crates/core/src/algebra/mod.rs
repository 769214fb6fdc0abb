//! Exact arithmetic: Laurent polynomials, rational functions, resultants,
//! power series, and evaluation at roots of unity.

pub mod cyclotomic;
pub mod laurent;
pub mod poly;
pub mod ratfun;
pub mod ring;
pub mod roots;
pub mod series;

pub use cyclotomic::{cyclotomic_norm, denominator_to_tp, eval_unit, regular_at_p, root_power_sum};
pub use laurent::LaurentPoly;
pub use ratfun::RatFun;
pub use ring::{ExactRing, Rational};
pub use roots::{mahler_measure, DEFAULT_TOL};
pub use series::{wheels_coefficients, PowerSeries};
