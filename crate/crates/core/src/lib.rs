//! Exact combinatorial tools for multiqubit unextendible product bases,
//! written as symbolic orthogonal matrices.
//!
//! - [`matrix`]: vector variables, matrices and the text format
//! - [`stats`]: multiplicities, `sigma`, `p_j` and the pair-counting bound
//! - [`extension`]: exact unextendibility decision with witnesses
//! - [`audit`]: forbidden substructures of `11 x 7` matrices
//! - [`catalog`]: built-in constructions and size tables
//! - [`graph`], [`canon`]: orthogonality graphs, isomorphism and embeddings
//! - [`locc`]: local reducibility across bipartitions
//! - [`orbit`]: column orbits under local unitaries

pub mod audit;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod extension;
pub mod graph;
pub mod locc;
pub mod matrix;
pub mod orbit;
pub mod stats;

pub use error::{Error, Result};
pub use matrix::{parse_uom, serialize_uom, FamilyId, Matrix, Uom, VectorVar};
