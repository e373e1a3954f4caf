//! Classify the distance between two non-unit residues by zero-set
//! overlap, and confirm with breadth-first search.
//!
//! Usage: `cargo run --example distance_trichotomy -- 210 6 35`

use comaximal::cli::{cmd_distance, resolve_caps};

fn main() {
    let mut args = std::env::args().skip(1).flat_map(|a| a.parse::<u64>().ok());
    let (n, x, y) = (
        args.next().unwrap_or(210),
        args.next().unwrap_or(6),
        args.next().unwrap_or(35),
    );
    match cmd_distance(n, x, y, resolve_caps(None)) {
        Ok(report) => print!("{}", report.render_text()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
