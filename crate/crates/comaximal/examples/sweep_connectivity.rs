//! Tabulate formula vs oracle connectivity across all squarefree
//! composites up to a bound, as CSV on stdout.
//!
//! Usage: `cargo run --release --example sweep_connectivity -- 150`

use comaximal::cli::{cmd_sweep, resolve_caps};
use comaximal::report::sweep_csv;

fn main() {
    let max: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(100);
    let rows = cmd_sweep(max, resolve_caps(None));
    print!("{}", sweep_csv(&rows));
}
