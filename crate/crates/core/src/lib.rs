//! Rigid regular graphs and monoid representations.
//!
//! The crate builds gadget digraphs, šíp and Cartesian products, tiling
//! factors, recursive indicators and degree-homogenized Cayley systems, and
//! checks their properties with an exact homomorphism engine.

#![allow(clippy::needless_range_loop)]

pub mod bitset;
pub mod codec;
pub mod graph;
pub mod homogenize;
pub mod homsearch;
pub mod indicators;
pub mod metrics;
pub mod monoid;
pub mod pipeline;
pub mod products;
pub mod sausage;
pub mod tiling;

pub use bitset::Bitset;
pub use codec::{emit_d6, emit_g6, emit_system, parse_d6, parse_g6, parse_system, ParseError};
pub use graph::{Carrier, Digraph, Graph, GraphError, Indicator, RelSystem};
pub use homogenize::{homogenize, homogenize_trace, HomogenizeError, Stage, StagedSystem};
pub use homsearch::{
    count_homs, enumerate_homs, find_hom, is_asymmetric, is_core, is_rigid, mutually_rigid, solve,
    EndMonoid, HomOutcome, HomProblem, HomStructure, Mode, Pruning, SearchConfig, Verdict,
};
pub use monoid::{cayley_col, class_structure, ClassStructure, Monoid, MonoidError};
pub use products::{
    cartesian, cartesian_variant, sip, sip_vec, GadgetCopy, ProductError, SipProduct,
};
pub use sausage::{
    build_sausage, family_f1, family_f2, hom_count_formula, FMap, Sausage, SausageError, Sign,
};
