//! Seed patterns, pattern families and seed search.

pub mod catalog;
pub mod family;
pub mod generate;
pub mod infer;
pub mod io;
pub mod search;
pub mod shipped;
pub mod snapshot;

pub use catalog::{BehaviorCatalog, CatalogClass, CatalogEntry};
pub use family::{construct_family, FamilyError, Placement, WidgetSet, WidgetSetJson};
pub use generate::{generate, Generator, GeneratorError};
pub use infer::{infer_widgets, is_arithmetic_family, split_candidates};
pub use io::{load_pattern, parse_checked, save_pattern, SeedError};
pub use search::{search, SeedSearchSpec};
pub use snapshot::{aligned_snapshot, restricted_pattern, PhaseKey};
