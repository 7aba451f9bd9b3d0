//! Ehrenfeucht games on colored structures with two symmetric relations.

mod bounds;
mod solver;
mod strategy;
mod structure;

pub use bounds::{evaluate_bound, Bound, BoundFormula, ALL_FORMULAS};
pub use solver::{
    depth_csv_row, ef_depth, ef_depth_rooted, is_partial_iso, max_depth_over_family, spoiler_wins,
    FamilyDepth, Solver, DEFAULT_MEMO_CAP, DEPTH_CSV_HEADER,
};
pub use strategy::{
    halving_budget, halving_strategy, verify_strategy, HalvingStrategy, Side, SpoilerMove,
    SpoilerStrategy, Verification,
};
pub use structure::{AsStructure, RelStructure};

/// Selected pairs `(x, y)` with `x` in the left structure and `y` in the right.
pub type GameConfig = Vec<(usize, usize)>;
