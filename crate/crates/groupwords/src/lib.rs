//! Exact word-satisfaction statistics on finite groups.
//!
//! The crate works with concrete finite groups (full multiplication tables)
//! and words over two generators, and provides:
//!
//! - [`group`]: groups from tables, permutation closures, and direct
//!   products, with full axiom validation.
//! - [`word`]: a parser for words over `x`, `y` (inverses, powers,
//!   left-normed commutator brackets), free reduction, evaluation, and
//!   exhaustive identity checks.
//! - [`graph`]: the directed satisfaction graph of a word on a group, with
//!   bit-matrix adjacency and exact rational satisfaction probabilities.
//! - [`property`]: the w_{m,n}-property decided by searching the graph for
//!   a complete bipartite directed configuration, a brute-force oracle, and
//!   property frontiers.
//! - [`bounds`]: exact big-integer checks of the directed
//!   Kővári–Sós–Turán-style arc bound, the gap-constant order bound
//!   `(2/(1-gamma))^m (n-1)`, and the implication chain between them.
//! - [`catalog`] / [`sweep`] / [`report`]: built-in group families, whole
//!   catalog sweeps of the identity-or-bounded dichotomy, and CSV/JSON
//!   reports.
//!
//! Every comparison that decides a verdict is carried out in exact integer
//! or rational arithmetic; floating point appears only in test
//! cross-checks.
//!
//! The `examples/` directory walks through each capability; start with
//! `cargo run --example build_groups`. A small CLI (`groupwords`) fronts
//! the same operations.

pub mod bits;
pub mod bounds;
pub mod catalog;
pub mod graph;
pub mod group;
pub mod property;
pub mod report;
pub mod sweep;
pub mod word;

mod util;

pub use bounds::{
    derivation_chain_holds, kst_bound_holds, order_bound, order_bound_holds, BoundReport,
    BoundsError, GammaSource, GapConstant,
};
pub use catalog::{
    builtin, default_catalog, load_group, save_cayley_file, CatalogEntry, CatalogError, Family,
};
pub use graph::WordGraph;
pub use group::{ElementIndex, Group, GroupError, DEFAULT_ORDER_CAP};
pub use num_rational::BigRational;
pub use property::{
    dichotomy_rows, has_wmn_property, naive_oracle, property_frontier, verify_dichotomy,
    DichotomyBranch, OverlapPolicy, PropertyError, PropertyQuery, PropertyResult, SweepRow,
};
pub use report::{csv_string, json_string, write_report, ReportFormat, SweepMetadata, SweepReport};
pub use sweep::{empirical_gap, run_sweep, GammaSpec, SweepConfig, SweepError};
pub use word::{Generator, Letter, Word, WordError};
