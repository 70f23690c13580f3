//! End-to-end constructions, exhaustive small-graph searches and report suites.

pub mod canon;
pub mod census;
pub mod generate;
pub mod report;
pub mod represent;
pub mod search;
pub mod suites;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use census::{census_suite, listed_codes, CensusOptions};
pub use generate::{generate_regular, GenSpec, Generated};
pub use report::{SuiteItem, SuiteReport};
pub use represent::{
    represent, EndCertificate, RepresentError, RepresentOptions, RepresentationResult,
};
pub use search::{
    order_table_rows, search, search_mu, search_nu, Predicate, SearchReport, SearchSpec,
    TABLE_CELLS,
};
pub use suites::{
    gadget_suite, hom_formula_suite, homogenize_suite, indicator_suite, tiling_suite,
    transport_suite,
};
