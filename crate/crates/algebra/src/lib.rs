//! Involutive (A∞-)algebras and their cohomology theories, curved Lie
//! algebras with Maurer–Cartan obstruction towers, and the quantum master
//! equation instance attached to a cyclic algebra.
//!
//! Everything is exact over the rationals; gradings are either integral and
//! cohomological or plain parities ("super"), and every Koszul sign is
//! driven by parity alone.

pub mod ainf;
pub mod curved;
pub mod graded;
pub mod hochschild;
pub mod json;
pub mod qme;
pub mod words;

pub use ainf::{check_structure, InvolutiveAlgebraData, StructureReport};
pub use curved::{CurvedLieData, MCElement, ObstructionReport};
pub use graded::AlgebraError;
