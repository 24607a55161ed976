//! Kneser graphs, their neighborhood geometries, and the rank-`r` incidence
//! geometries obtained by taking `r` typed copies of the `k`-subsets of a
//! ground set, with two elements incident exactly when they have different
//! types and are disjoint.
//!
//! Every structural property of these geometries (odd girth, gonality,
//! diameters, orders, Buekenhout diagram, flag-transitivity, residual
//! connectedness, the rank-two intersection property, and the locally-X
//! property of the incidence graph) can be certified by exact computation.
//!
//! Ground sets are 0-indexed: `Ω = {0, …, m-1}`.

pub mod error;
pub mod gamma;
pub mod graph;
pub mod group;
pub mod incidence;
pub mod iso;
pub mod kneser;
pub mod locally_x;
pub mod subsets;

pub use error::{Error, Result};
pub use gamma::{GammaGeometry, GammaParams};
pub use graph::{Graph, Length, VertexSet};
pub use incidence::{BuekenhoutDiagram, Flag, IncidenceSystem, Rank2Class, RankTwoSummary};
pub use iso::{CanonicalForm, Coloring};
pub use kneser::KneserParams;
pub use subsets::{GroundSet, KSubset};
