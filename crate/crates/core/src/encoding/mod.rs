//! Encodings of structured maps as instances of range avoidance.

mod perfect;
mod rigid;
mod sparse;

pub use perfect::{encode_degree_d, EncodedCircuit, EncodingLayout};
pub use rigid::{build_rigid_instance, RigidInstance};
pub use sparse::{build_sparse_encoder, vertex_count, HypergraphEncoder};
