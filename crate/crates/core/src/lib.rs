//! Exact McKay quivers, Euclidean Auslander-Reiten components and tube ranks
//! for amalgamated polyhedral group schemes in odd characteristic.

pub mod arcomp;
pub mod chartab;
pub mod cyclo;
pub mod dixon;
pub mod error;
pub mod fusion;
pub mod graph;
pub mod groups;
pub mod quiver;
pub mod ramify;

pub use error::{Error, Result};
