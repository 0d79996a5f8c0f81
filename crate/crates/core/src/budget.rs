//! Work limits for the paths whose cost grows with `n` rather than with the
//! bit-length of `n`.
//!
//! Each limit can be overridden through an environment variable:
//!
//! | variable             | default | limits                                  |
//! |----------------------|---------|-----------------------------------------|
//! | `UWCA_NAIVE_BUDGET`  | 2^24    | terms summed by the naive weight sum    |
//! | `UWCA_SIM_BUDGET`    | 1024    | generations simulated on the grid       |
//! | `UWCA_SCAN_BUDGET`   | 24      | largest block exponent of a ratio scan  |

use std::env;

pub const NAIVE_BUDGET_VAR: &str = "UWCA_NAIVE_BUDGET";
pub const SIM_BUDGET_VAR: &str = "UWCA_SIM_BUDGET";
pub const SCAN_BUDGET_VAR: &str = "UWCA_SCAN_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub naive_terms: u64,
    pub generations: u64,
    pub scan_k: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            naive_terms: 1 << 24,
            generations: 1024,
            scan_k: 24,
        }
    }
}

impl Budgets {
    /// Defaults with any valid environment overrides applied. Unparsable
    /// values are ignored.
    pub fn from_env() -> Self {
        let mut budgets = Budgets::default();
        if let Some(v) = read_var(NAIVE_BUDGET_VAR) {
            budgets.naive_terms = v;
        }
        if let Some(v) = read_var(SIM_BUDGET_VAR) {
            budgets.generations = v;
        }
        if let Some(v) = read_var(SCAN_BUDGET_VAR) {
            budgets.scan_k = v;
        }
        budgets
    }
}

fn read_var<T: std::str::FromStr>(name: &str) -> Option<T> {
    env::var(name).ok()?.trim().parse().ok()
}
