//! A weighted generalization of the Kendall tau distance on permutations,
//! computed in exact rational arithmetic.
//!
//! The crate provides:
//!
//! * [`perm`] — permutations of `{1, ..., n}`, ordinal inverses, adjacent
//!   transpositions, and discordance/inversion sets;
//! * [`metric`] — weight matrices and the normalized weighted distance, a
//!   pseudometric that is a metric exactly when all weights are positive;
//! * [`graph`] — the labeled edge-graph of the permutohedron, shortest-path
//!   enumeration, and the two equivalent betweenness tests;
//! * [`quadruples`] — detection and construction of pseudolinear quadruples,
//!   symmetrically labeled cycles, and the generic-weight diametrical
//!   criterion;
//! * [`conjecture`] — a verifier for the structural conditions
//!   characterizing these spaces, with an explicit isometry construction for
//!   order 3;
//! * [`rational`] and [`sampling`] — exact-value parsing/rendering and seeded
//!   random inputs for the verification suites.
//!
//! Every value that matters is an exact `BigRational`; floating point is used
//! nowhere in the computation path.

pub mod conjecture;
pub mod graph;
pub mod metric;
pub mod perm;
pub mod quadruples;
pub mod rational;
pub mod sampling;

pub use conjecture::{
    check_conditions, embed_sn, isometry_search_n3, ConditionReport, ConjectureError, IsometryN3,
    MetricTable,
};
pub use graph::{
    adjacent_labels, composition_preserves_edges, count_shortest_paths, graph_distance,
    lies_between_dsc, lies_between_metric, shortest_paths, Cycle, GraphError, LabeledGraph, Path,
};
pub use metric::{
    discordant_weight, distance, kendall_correlation, normalized_kendall, MetricError,
    WeightMatrix,
};
pub use perm::{
    discordance_count, discordance_indicator, discordance_set, IndexPair, PairSet, PermError,
    Permutation,
};
pub use quadruples::{
    antipodal_quadruple, generic_diametrical_criterion, is_pseudolinear, is_symmetric_labeling,
    label_multiplicities, quadruples_from_cycle, QuadError, QuadrupleCertificate,
};
pub use rational::Ratio;
