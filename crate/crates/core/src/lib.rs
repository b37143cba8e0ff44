//! Fusion rules, modular data and quantum-double graphs for the WZW models
//! SU(2)_k and SU(3)_k.

pub mod alcove;
pub mod doublegraph;
pub mod error;
pub mod fusion;
pub mod modular;
pub mod orbifold;
mod wzw;

pub use alcove::{Field, FieldTable, Model};
pub use doublegraph::{BipartiteGraph, GraphKind};
pub use error::{Error, Result};
pub use fusion::{build_ring, FusionRing, RingElement};
pub use modular::{ModularData, DEFAULT_TOLERANCE};
pub use wzw::Wzw;
