//! Exact computations around equivariant chromatic lower bounds.
//!
//! The pipeline builds a Hom poset `Hom_p(T, H)` with a free group action,
//! its compatibility graph `C_P`, the homology of its order complex, and
//! then certifies `conn_H + 1 + |G| <= chi(C_P) <= chi(H)` with explicit
//! witnesses: an optimal coloring, the induced equivariant simplicial map,
//! and Betti numbers over two prime fields.

pub mod bitset;
pub mod caps;
pub mod coloring;
pub mod compat;
pub mod error;
pub mod format;
pub mod graph;
pub mod group;
pub mod hom;
pub mod poset;
mod sat;
pub mod theorem;
pub mod topology;

pub use caps::Caps;
pub use coloring::{chromatic_number, Coloring};
pub use compat::{build_compat_graph, check_loops};
pub use error::{Error, Result};
pub use graph::{complete_graph, cycle_graph, kneser_graph, named_graph, petersen_graph, Graph, VertexMap};
pub use group::{cyclic_group, FiniteGroup};
pub use hom::{attach_cyclic_action, attach_reflection_action, build_hom_poset, projection_hom, ActedHomPoset, HomPoset};
pub use poset::{make_gposet, GPoset, Poset};
pub use theorem::{
    bound_certificate, construct_lambda, hom_bound_certificate, test_graph_check, verify_lambda, BoundCertificate,
    PipelineOptions, TestGraphReport,
};
pub use topology::{
    build_eng, homological_connectivity, homology_ranks, index_interval, order_complex, BettiVector, Connectivity,
    IndexInterval, SimplicialComplex,
};
