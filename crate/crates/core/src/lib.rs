//! Group irregularity strength of graphs over finite Abelian groups.
//!
//! A labelling of the edges of a graph by elements of an Abelian group is
//! irregular when the weighted degrees (sums of incident labels) are pairwise
//! distinct. This crate computes the smallest group order that always admits
//! such a labelling, builds certified labellings, and provides the supporting
//! group, tree and path-pairing machinery.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod arith;
pub mod families;
pub mod graph;
pub mod group;
pub mod labeller;
pub mod path_collection;
pub mod verifier;

pub use arith::factorize;
pub use graph::{spanning_tree_prefer_nonstar, GraphError, Labelling, RootedTree, SimpleGraph};
pub use group::{AbelianGroup, ElementClassification, GroupElement, GroupError, InvolutionSubsetError};
pub use labeller::{
    group_irregularity_strength, is_exceptional_group, label_graph, predict, CertifiedLabelling,
    Construction, LabelError, Obstruction, Prediction, StrengthCase, StrengthResult,
};
pub use path_collection::{shortest_path_collection, PathCollection, SpcError};
pub use verifier::{
    brute_force_exists, certify_or_refute, enumerate_abelian_groups, weighted_degrees, Certificate,
    CertifyError, DegreeReport, OracleError, OracleReport, OracleVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subset(#[from] InvolutionSubsetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    PathCollection(#[from] SpcError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}
