pub mod algebra;
pub mod classifier;
pub mod invariants;
pub mod localization;
