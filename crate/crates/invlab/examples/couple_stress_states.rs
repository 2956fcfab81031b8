//! Stress states of the couple-stress model family for a sample displacement
//! field: the skew nonlocal stress, trace-free couple stress, the symmetric
//! total stress of the modified variant, and the cross-variant identity
//! Div(σ̃ − σ̂) = 0.
//!
//! ```bash
//! cargo run --example couple_stress_states
//! ```

use invlab::expr::ScalarExpr;
use invlab::field::VecField;
use invlab::model::{
    div_total_stress_difference, stress_state, CoupleStress, ModelId, ModelParams,
};

fn print_mat(name: &str, m: &invlab::tensor::Mat3) {
    println!("  {name} =");
    for row in m.0 {
        println!("      [{:>8.4} {:>8.4} {:>8.4}]", row[0], row[1], row[2]);
    }
}

fn main() {
    // u = (x2^3, 0, 0): curvature k̃ has the single entry k̃_32 = −3 x2
    let u = VecField([
        ScalarExpr::coord(1).powi(3),
        ScalarExpr::zero(),
        ScalarExpr::zero(),
    ]);
    let params = ModelParams::default();
    let p = [0.3, 1.0, -0.4];

    println!("u = (x2^3, 0, 0) at p = {p:?}, unit moduli\n");

    for model in [
        ModelId::CoupleStress,
        ModelId::CoupleStressConformal,
        ModelId::CoupleStressSkew,
        ModelId::CoupleStressSymmetricTotal,
    ] {
        let st = stress_state(model, &u, &params, &p).expect("stress state");
        println!("{model}:");
        print_mat("tau", &st.tau);
        if let CoupleStress::Second(m) = &st.couple {
            print_mat("m", m);
            println!("  tr m = {:.3e}", m.trace());
        }
        println!(
            "  total stress symmetric: {}\n",
            if st.total.is_sym() { "yes" } else { "no" }
        );
    }

    let d = div_total_stress_difference(&u, &params).expect("difference field");
    println!(
        "Div(σ̃ − σ̂) at p = {:?}  (identically zero across variants)",
        d.eval(&p).0
    );
}
