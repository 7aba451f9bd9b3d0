//! Counting, enumeration and sampling of dissections, the random-dissection
//! experiment, and small-graph corpora for exhaustive checks.

pub mod corpus;
mod count;
mod enumerate;
pub mod experiment;
mod sample;

pub use count::{count_dissections, DissectionCounts};
pub use enumerate::enumerate_dissections;
pub use experiment::{run_experiment, ExperimentConfig, SampleRecord};
pub use sample::{sample_dissection, sample_rng, Sampler};
