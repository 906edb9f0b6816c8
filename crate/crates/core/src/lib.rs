//! Combinatorics and exact linear algebra of the cyclic-quiver Grassmannians
//! `X(k,n,ω)`.

pub mod affine_flag;
pub mod cli;
pub mod error;
pub mod flatness;
pub mod geometry;
pub mod gkm;
pub mod juggling;
pub mod matrix;
pub mod moment_graph;
pub mod order;
pub mod params;
pub mod perm;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use juggling::{JugglingPattern, LengthTuple};
pub use moment_graph::{Character, MomentGraph};
pub use params::{Guard, KSubset, Params};
pub use perm::{AffinePermutation, BoundedAffinePermutation};
