//! Polynomial-time special cases.

mod closed;
mod sp_dp;

pub use closed::{solve_complete_unit, solve_diameter2};
pub use sp_dp::{max_length_table, min_cost_table, sp_max_length, sp_min_cost, SpMinCost};
