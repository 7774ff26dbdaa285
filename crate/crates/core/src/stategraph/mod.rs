//! The state graph `Pⁿ` and the classical graphs `H₃ⁿ`, `H₄ⁿ`, with the
//! structural checks and certificates built on them.

pub mod coloring;
pub mod counts;
pub mod export;
pub mod graph;
pub mod hamilton;
pub mod metrics;
pub mod structure;

pub use coloring::{edge_coloring, exact_chromatic_index, vertex_coloring, PegPairClasses, VertexColoring};
pub use counts::{average_degree, average_degree_formula, edge_count_closed, edge_count_recurrence};
pub use export::{export, ExportFormat, GraphMetrics};
pub use graph::{build_classical_graph, build_parity_graph, build_parity_graph_capped, Flavor, StateGraph};
pub use hamilton::{hamiltonian_cycle, hamiltonian_path_perfect, hamiltonian_path_separated, HamiltonianCertificate};
pub use metrics::{clique_number, connectivity, degree_profile, diameter, Connectivity, Diameter, DiameterMode};
pub use structure::{automorphism_check, nonplanarity_witness, removal_disconnection, sub_hanoi_embedding};
