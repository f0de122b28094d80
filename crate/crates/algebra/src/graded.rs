//! Graded vector spaces over Q with parities driving Koszul signs.

use num::BigRational;
use thiserror::Error;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(num::BigInt::from(n))
}

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("structure is not involutive: {0}")]
    NotInvolutive(String),
    #[error("structure is not A-infinity: {0}")]
    NotAInfinity(String),
    #[error("structure is not cyclic: {0}")]
    NotCyclic(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("bilinear form degree must be odd")]
    EvenFormDegree,
    #[error("element has the wrong degree: {0}")]
    WrongDegree(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("curvature axiom d²η = [η, Ω] fails on basis element {0}")]
    CurvatureAxiomFailure(usize),
    #[error("bracket or differential lowers the filtration weight at {0}")]
    FiltrationLeak(String),
    #[error("element is not Maurer-Cartan at level {0}")]
    NotMCAtLevel(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// How degrees are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// integral cohomological degrees
    Integer,
    /// degrees modulo 2 only
    Super,
}

/// A finite basis with degrees; parity of a degree drives all signs.
#[derive(Debug, Clone)]
pub struct GradedSpace {
    pub degrees: Vec<i64>,
    pub grading: Grading,
}

impl GradedSpace {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        (self.degrees[i].rem_euclid(2)) as u8
    }

    pub fn degree(&self, i: usize) -> i64 {
        match self.grading {
            Grading::Integer => self.degrees[i],
            Grading::Super => self.degrees[i].rem_euclid(2),
        }
    }
}

/// Parity of a sum of parities.
pub fn parity_sum(ps: impl IntoIterator<Item = u8>) -> u8 {
    ps.into_iter().fold(0, |a, b| a ^ (b & 1))
}
