//! Print the full closed-form report for one modulus.
//!
//! Usage: `cargo run --example analyze_modulus -- 210`

use comaximal::cli::analysis_report;
use comaximal::factor_squarefree;

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(210);
    let modulus = factor_squarefree(n).expect("squarefree composite");
    let report = analysis_report(&modulus);
    print!("{}", report.render_text());
}
