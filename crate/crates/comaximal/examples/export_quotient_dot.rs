//! Emit the layer quotient of G2 as Graphviz DOT.
//!
//! Usage: `cargo run --example export_quotient_dot -- 210 | dot -Tsvg > q.svg`

use comaximal::cli::{cmd_export, resolve_caps};
use comaximal::report::{ExportFormat, ExportLevel};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(30);
    let dot = cmd_export(n, ExportFormat::Dot, ExportLevel::Quotient, resolve_caps(None))
        .expect("squarefree composite");
    print!("{dot}");
}
