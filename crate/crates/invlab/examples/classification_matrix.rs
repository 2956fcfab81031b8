//! Classifies every energy model in the catalog against the SO(3)-invariance
//! notions (objectivity, isotropy, their local strengthenings, and
//! form-invariance under the ♯-transformation), then checks the verdicts
//! against the analytically expected ones.
//!
//! ```bash
//! cargo run --example classification_matrix
//! ```

use invlab::probe::{matrix_mismatches, run_classification_matrix, ProbeConfig};

fn main() {
    let cfg = ProbeConfig {
        seed: 7,
        ..ProbeConfig::default()
    };
    let report = run_classification_matrix(&cfg).expect("matrix");
    print!("{}", report.to_markdown());

    let mismatches = matrix_mismatches(&report);
    if mismatches.is_empty() {
        println!("\nall expected classifications reproduced");
    } else {
        for m in mismatches {
            println!("mismatch: {m}");
        }
        std::process::exit(1);
    }
}
