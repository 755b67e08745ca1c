//! Spanning trees, break divisors and the bijections between them.
//!
//! The crate covers chip-firing on finite multigraphs (q-reduced divisors,
//! Picard group structure, break divisors), orientation machinery built on
//! max-flow, cycle orientation maps with an exact LP geometricity test, edge
//! ordering maps and their inverse, the Bernardi process on ribbon graphs,
//! torsor comparisons and a uniform spanning-tree sampler.
//!
//! Geometry and linear programming are generic over [`Scalar`]; the exact
//! instantiation [`Rational`] is what the rest of the crate uses.

// Row reduction reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod cycle_map;
pub mod divisor;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod jacobian;
pub mod orientation;
pub mod ribbon;
pub mod sampler;
pub mod scalar;
pub mod simplex;
pub mod snf;
pub mod torsor;
pub mod verify;

pub use cycle_map::{
    config_from_vector, config_from_weights, cycle_orientation_map, edge_ordering_config,
    edge_ordering_map, eom_inverse, eom_inverse_counted, faithful_orientation, is_geometric,
    Configuration, EdgeOrdering, EdgeOrderingDocument, GeometricCertificate,
};
pub use divisor::{
    apply_principal, count_break_configurations, enumerate_break_divisors, is_break_divisor,
    linearly_equivalent, pic_group_structure, q_reduce, Divisor, PicGroupStructure,
};
pub use error::{Error, Result};
pub use graph::{
    enumerate_cycles, enumerate_spanning_trees, fundamental_cycle, Cycle, CycleCatalog, Edge,
    GraphDocument, Laplacian, Multigraph, SpanningTree, TreePaths,
};
pub use jacobian::{
    abel_jacobi, cell, cycle_basis, designated_basis, f_vector, is_generic, shift_bijection, Cell,
    CycleBasis, MetricPoint, TorusPoint,
};
pub use orientation::{
    break_representative, complete_orientation, cycle_reversal_classes, divisor_to_orientation,
    orientation_with_indegrees, reverse_cocycle, reverse_cycle, IndegreeSolution, Orientation,
    PartialOrientation,
};
pub use ribbon::{
    algorithm3_ordering, bernardi_divisor, bernardi_partial_orientation, bernardi_tour,
    face_for_start, induced_configuration, inside_faces, planar_dual, trace_faces,
    InducedConfiguration, PlaneEmbedding, RibbonDocument, RibbonGraph,
};
pub use sampler::{
    chi_square_uniform, minimal_bits, sample_spanning_trees, Sample, Sampler, SamplerConfig,
};
pub use scalar::Scalar;
pub use torsor::{
    bernardi_face_path_delta, duality_diagram_check, eom_flip_delta, torsor_act,
    torsors_isomorphic, DualConvention, TreeBijection,
};

/// Exact rationals over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;
