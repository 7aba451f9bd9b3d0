//! Biconnected outerplanar graphs, their facing structures, and the
//! Ehrenfeucht game depth of distinguishing them.

pub mod bop;
pub mod efgame;
pub mod error;
pub mod facing;
pub mod graph;
pub mod params;
pub mod pseudo;
pub mod toolkit;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{edge, Cycle, Edge, ExtNat, Graph};
