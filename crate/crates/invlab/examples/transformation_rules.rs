//! Runs the whole transformation-rule catalog: for each rule, both sides are
//! built as exact expression fields (operator applied to the ♯-field versus
//! the ♯-transform of the operator result) and compared at mapped points.
//!
//! ```bash
//! cargo run --example transformation_rules
//! ```

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invlab::field::{random_point, random_poly_mat3, random_poly_vec, random_rational_rotation};
use invlab::transform::{verify_rule, ArgKind, FieldArg, ALL_RULES};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    println!("rule catalog: 5 fields x 4 rotations x 5 points per rule\n");
    for rule in ALL_RULES {
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let arg = match rule.argument() {
                ArgKind::Scalar => FieldArg::Scalar(
                    random_poly_vec(&mut rng, 3, (-2.0, 2.0))
                        .to_vec_field()
                        .component(0)
                        .clone(),
                ),
                ArgKind::Vector => {
                    FieldArg::Vector(random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field())
                }
                ArgKind::Matrix => FieldArg::Matrix(random_poly_mat3(&mut rng, 3, (-2.0, 2.0))),
            };
            for _ in 0..4 {
                let (q, _) = random_rational_rotation(&mut rng);
                let points: Vec<_> = (0..5).map(|_| random_point(&mut rng)).collect();
                worst = worst.max(verify_rule(rule, &arg, &q, &points).unwrap());
            }
        }
        println!(
            "  {}  {:<22} max residual {:.3e}",
            if worst <= 1e-9 { "pass" } else { "FAIL" },
            rule.name(),
            worst
        );
    }
}
