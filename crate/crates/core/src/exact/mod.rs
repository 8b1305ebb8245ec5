//! Exact rationals and outward-rounded interval arithmetic.

mod dyadic;
mod enclosure;
mod rational;
mod trig;

pub(crate) use dyadic::{Dir, Dyadic};

pub use enclosure::{ArithKind, Enclosure, Precision, Verdict};
pub use rational::{Rational, Rounding};
pub use trig::{
    arcsin, arctan, cos, enc_trig, one_minus_cos, pi_reference, sin, tan, theta_minus_sin, TrigFn, GUARD_BITS,
};
