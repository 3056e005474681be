//! Weak k-metric dimension of the direct product `K_n x K_n`.
//!
//! * [`graph`]: the product graph and general BFS distance oracles
//! * [`delta`]: `Δ_S` by distance summation and by layer counts, `κ`
//! * [`constructions`]: explicit weak k-resolving sets
//! * [`regime`]: closed-form values per `(n, k)` cell
//! * [`solver`]: exact cardinality-ascending search with certificates
//! * [`io`]: CSV and JSON formats

pub mod constructions;
pub mod delta;
pub mod error;
pub mod graph;
pub mod io;
pub mod par;
pub mod regime;
pub mod solver;
pub mod vertex_set;

pub use constructions::{construct, diagonal_band, Construction, ConstructionTag};
pub use delta::{
    compute_kappa, delta_set_fast, delta_set_raw, delta_single, is_weak_k_resolving, min_delta,
    product_kappa, DeltaWitness,
};
pub use error::{Error, Result};
pub use graph::{load_general_graph, make_product, DistanceOracle, GeneralGraph, ProductGraph, Vertex};
pub use regime::{classify, Regime, Status};
pub use solver::{solve_wdim, SearchMode, Solvable, SolveOptions, SolveReport};
pub use vertex_set::VertexSet;
