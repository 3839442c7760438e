//! File formats, rendering and the command line for `collapsar-core`.
//!
//! - [`document`]: versioned JSON documents for categories, complexes and Δ-maps.
//! - [`render`]: Graphviz DOT export.
//! - [`budget`]: wall-clock oracle budgets.
//! - [`cli`]: the `collapsar` command.

pub mod budget;
pub mod cli;
pub mod document;
pub mod render;
