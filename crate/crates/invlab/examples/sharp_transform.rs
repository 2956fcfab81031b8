//! The ♯-transformation: simultaneous rotation of spatial and referential
//! coordinates by the same rigid rotation, `u♯(ξ) = Q u(Qᵀξ)` with ξ = Q x.
//!
//! Demonstrates the defining mapped-point property, the conjugation rule for
//! the displacement gradient, and that applying Qᵀ after Q is the identity.
//!
//! ```bash
//! cargo run --example sharp_transform
//! ```

use invlab::expr::ScalarExpr;
use invlab::field::VecField;
use invlab::ops::grad_vec;
use invlab::tensor::{Rotation, Vec3};
use invlab::transform::sharp_vec;

fn main() {
    // u = (x2^2, 0, 0) and Q = 90° about e3 (from integer quaternion (1,0,0,1))
    let u = VecField([
        ScalarExpr::coord(1).powi(2),
        ScalarExpr::zero(),
        ScalarExpr::zero(),
    ]);
    let q = Rotation::from_integer_quaternion([1, 0, 0, 1]).unwrap();
    let u_sharp = sharp_vec(&u, &q);

    let x = [0.8, -0.3, 0.5];
    let xi = q.apply(&Vec3(x));
    println!("x        = {:?}", x);
    println!("ξ = Q x  = {:?}", xi.0);
    println!("u(x)     = {:?}", u.eval(&x).0);
    println!("u♯(ξ)    = {:?}", u_sharp.eval(&xi.0).0);
    println!("Q u(x)   = {:?}   (defining property u♯(Qx) = Q u(x))", q.apply(&u.eval(&x)).0);

    // gradient conjugation: Grad_ξ u♯ (ξ) = Q (Grad u)(x) Qᵀ
    let lhs = grad_vec(&u_sharp).eval(&xi.0);
    let rhs = q
        .matrix()
        .matmul(&grad_vec(&u).eval(&x))
        .matmul(&q.matrix().transpose());
    println!(
        "gradient conjugation residual = {:.3e}",
        lhs.sub(&rhs).max_abs()
    );

    // round trip through Qᵀ
    let back = sharp_vec(&u_sharp, &q.transpose());
    println!(
        "involution residual           = {:.3e}",
        back.eval(&x).sub(&u.eval(&x)).max_abs()
    );
}
