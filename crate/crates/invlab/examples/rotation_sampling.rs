//! Exactly orthogonal rotations from integer quaternions, and the
//! Levi-Civita contraction identities they satisfy.
//!
//! ```bash
//! cargo run --example rotation_sampling
//! ```

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invlab::field::random_rational_rotation;
use invlab::tensor::{levi_civita_identity_check, Mat3, Rotation};

fn main() {
    // quaternion entries are integers, so Q has exact rational entries and
    // the orthogonality residual sits at machine epsilon
    let q = Rotation::from_integer_quaternion([2, 1, 0, 0]).unwrap();
    println!("Q from quaternion (2,1,0,0):");
    for row in q.matrix().0 {
        println!("  [{:>8.4} {:>8.4} {:>8.4}]", row[0], row[1], row[2]);
    }
    let ortho = q
        .matrix()
        .transpose()
        .matmul(q.matrix())
        .sub(&Mat3::identity())
        .max_abs();
    println!("|QᵀQ − id| = {ortho:.3e}, det = {}\n", q.matrix().det());

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (q, _) = random_rational_rotation(&mut rng);
        worst = worst.max(levi_civita_identity_check(q.matrix()).max());
    }
    println!("Levi-Civita identity residual over 100 rotations: {worst:.3e}");

    // the identities have power: a non-orthogonal matrix fails loudly
    let mutated = levi_civita_identity_check(&Mat3::identity().scale(2.0));
    println!(
        "same residual for 2·id (not a rotation): {:.3e}",
        mutated.max()
    );
}
