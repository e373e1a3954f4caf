//! Delete kappa - 1 random vertices repeatedly and watch the graph
//! stay connected; the final control row deletes an exact minimum
//! cut and disconnects it.
//!
//! Usage: `cargo run --release --example deletion_robustness -- 210 100 7`

use comaximal::cli::{cmd_robustness, resolve_caps};
use comaximal::report::robustness_csv;

fn main() {
    let mut args = std::env::args().skip(1).flat_map(|a| a.parse::<u64>().ok());
    let n = args.next().unwrap_or(210);
    let trials = args.next().unwrap_or(100) as usize;
    let seed = args.next().unwrap_or(1);
    let rows = cmd_robustness(n, trials, seed, resolve_caps(None)).expect("trials run");
    print!("{}", robustness_csv(&rows));
}
