//! Form-invariance of the balance equations: manufacture the body force as
//! f = −Div(total stress) so the residual vanishes identically, transform
//! the whole system by the ♯-transformation, and check that the transformed
//! residual still vanishes at mapped points.
//!
//! ```bash
//! cargo run --example balance_invariance
//! ```

use invlab::probe::{probe_balance, ProbeConfig, BALANCE_MODELS};

fn main() {
    let cfg = ProbeConfig {
        trials: 15,
        corpus_size: 5,
        points_per_field: 8,
        ..ProbeConfig::default()
    };
    println!("manufactured-force balance residuals after the ♯-transformation:\n");
    for model in BALANCE_MODELS {
        let report = probe_balance(model, &cfg).expect("balance probe");
        println!(
            "  {}  {:<32} max residual {:.3e}",
            report.verdict, model, report.max_violation
        );
    }
}
