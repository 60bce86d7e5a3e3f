//! Readers and writers for instance files, pattern grids and result tables.

mod dimacs;
mod knapsack;
mod patterns;
mod results;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use knapsack::{parse_knapsack, write_knapsack};
pub use patterns::{parse_patterns, write_patterns};
pub use results::{read_csv, write_csv, ResultRow};
