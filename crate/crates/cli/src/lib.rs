//! IO companion for the `ahg-core` classification toolkit: JSON file
//! formats, the embedded reference tables with their recompute-and-diff
//! checker, and a parallel search driver.

pub mod driver;
pub mod fixtures;
pub mod json;

pub use driver::{census_cached, parallel_search};
pub use fixtures::{check_table, table_expectations};
