//! Arithmetic shared by the exact and floating-point evaluators.

use std::fmt::Debug;

use num_traits::{Signed, Zero};

use crate::rational::{to_f64, Rational};

/// Relative tolerance of float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

pub trait Scalar: Clone + PartialOrd + Debug {
    fn nil() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn magnitude(&self) -> Self;
    /// Equality up to the mode's tolerance.
    fn same(&self, o: &Self) -> bool;
}

impl Scalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }
    fn same(&self, o: &Self) -> bool {
        self == o
    }
}

impl Scalar for f64 {
    fn nil() -> Self {
        0.0
    }
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }
    fn same(&self, o: &Self) -> bool {
        (self - o).abs() <= FLOAT_TOLERANCE * self.abs().max(o.abs()).max(1.0)
    }
}
