//! Exact combinatorics of ribbon, Möbius and dianalytic graphs.
//!
//! The central object is a half-edge graph with a cyclic order of the half
//! edges at every vertex and a two-colouring of the half edges.  Depending on
//! the [`graph::GraphKind`] the colouring is structural (Möbius graphs),
//! forced to zero (ribbon graphs) or ignored by isomorphism (dianalytic
//! graphs).  On top of this the crate builds
//!
//! * canonical forms, isomorphism testing and automorphism groups,
//! * surface classification by boundary-walk tracing,
//! * enumeration of stable reduced graphs by topological type,
//! * oriented graph chain complexes and cobar tree complexes with exact
//!   rational homology,
//! * operadic gluing, self-gluing and topological normal forms.
//!
//! All arithmetic is exact; floating point does not appear anywhere.

pub mod canonical;
pub mod complex;
pub mod enumerate;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod operad;
pub mod orient;
pub mod surface;
pub mod trees;

pub use canonical::{are_isomorphic, automorphism_group, canonicalize, Automorphism, CanonicalForm};
pub use graph::{GraphError, GraphKind, GraphTopology, MobiusGraph};
pub use surface::{topological_type, TopologicalType};
