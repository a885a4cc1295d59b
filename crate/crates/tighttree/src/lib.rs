//! Tight 3-uniform hypergraph trees and their extremal machinery: shadows,
//! links and exact default weights; trunk recognition and certification;
//! discharging-based special-pair certificates; a constructive embedding
//! pipeline for trunk-2 tight 3-trees into dense hosts; and exact
//! desk-scale Turán searches with partial-Steiner lower-bound
//! constructions.
//!
//! Everything weight- or charge-valued uses exact rational arithmetic; the
//! certificates here hinge on strict inequalities and are never allowed to
//! drift through floating point.

pub mod embed;
pub mod hypergraph;
pub mod io;
pub mod rational;
pub mod sampling;
pub mod trees;
pub mod turan;

pub use hypergraph::{Hypergraph, HypergraphError, PeelOutcome, VertexSet, WeightIdentity};
pub use rational::Rational;
