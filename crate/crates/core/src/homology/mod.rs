//! Free resolutions, Betti tables, Koszul homology and related invariants.

pub mod ce;
pub mod defect;
pub mod graded;
pub mod koszul;
pub mod module;
pub mod reduce;
pub mod resolution;

pub use ce::{ce_cohomology, ce_module, ce_top_degree, koszul_homology_module};
pub use defect::{syzygetic_defect, syzygy_part};
pub use graded::GradedQuotient;
pub use koszul::{koszul_homology, koszul_homology_with_degrees, koszul_top_degree, koszul_tor, koszul_tor_auto, GradedDims};
pub use module::{preimage, PresentedModule};
pub use reduce::{artinian_reduction, betti_table, betti_window, Reduction};
pub use resolution::{is_gorenstein, minimal_free_resolution, numerator_map, prune_generators, BettiTable, GorensteinReport, Resolution};
