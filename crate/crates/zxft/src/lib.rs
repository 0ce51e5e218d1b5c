//! ZX instrument networks and their Pauli webs.
//!
//! This crate represents ZX diagrams extended with classical outcome ports
//! (instrument networks), rewrites them to canonical form, extracts their
//! Pauli webs (stabilizers, checks, logical correlators) by GF(2) linear
//! algebra, and builds the four surface-code fault-tolerance flavors
//! (CBQC, MBQC, FBQC, FloBQC) as such networks.
//!
//! Everything is verified against two oracles: exact dense tensor
//! contraction for small diagrams, and a stabilizer tableau simulation of
//! each lattice's circuit reading for larger ones. All comparisons are up
//! to a global scalar; no scalar factors are tracked.

pub mod builders;
pub mod diagram;
pub mod export;
pub mod faults;
pub mod fingerprint;
pub mod gf2;
pub mod oracle;
pub mod rewrite;
pub mod translate;
pub mod web;

mod error;

pub use diagram::{
    Diagram, Edge, EdgeId, EdgeKind, Node, NodeId, OutcomeExpr, Phase, Port, PortDir, Spider,
    SpiderKind, VarId,
};
pub use error::{Error, Result};
pub use fingerprint::fingerprint;
pub use web::{Check, OuterSignature, PauliLetter, PauliWeb, WebBasis};
