//! Cross-check every closed form against brute-force graph oracles
//! for one modulus and print the check list.
//!
//! Usage: `cargo run --release --example verify_against_oracles -- 210`

use comaximal::cli::{cmd_verify, resolve_caps};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(210);
    let report = cmd_verify(n, resolve_caps(None), false, 0, 1).expect("verification runs");
    print!("{}", report.render_text());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
