//! Verifies the differential identities that tie the curvature measure to
//! its equivalent representations, on a random polynomial corpus.
//!
//! ```bash
//! cargo run --example identity_suite
//! ```

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invlab::field::{random_point, random_poly_vec};
use invlab::ops::identity_suite;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let corpus: Vec<_> = (0..100)
        .map(|_| random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field())
        .collect();
    let points: Vec<_> = (0..10).map(|_| random_point(&mut rng)).collect();

    let report = identity_suite(&corpus, &points);
    println!(
        "identity suite over {} fields x {} points",
        report.fields, report.points
    );
    for entry in &report.entries {
        println!("  {:<28} max residual {:.3e}", entry.name, entry.max_residual);
    }
    println!(
        "overall: {} (max {:.3e})",
        if report.passes(1e-9) { "pass" } else { "FAIL" },
        report.max_residual()
    );
}
