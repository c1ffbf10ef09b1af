//! Instance generators.

pub mod paper;
pub mod random;

pub use paper::{build_paper_instance, default_far_point, ConstructionName, PaperConstruction};
pub use random::{
    metric_closure, random_line_instance, random_metric_instance, FamilyKind, RandomFamily, LINE_GRID,
};
