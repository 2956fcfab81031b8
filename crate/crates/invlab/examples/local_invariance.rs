//! Local versus global SO(3)-invariance: probing with spatially varying
//! rotation fields separates energies that look identical to global probes.
//!
//! `connection-curv` (Σ‖Fᵀ∂ᵢF‖²) is objective but picks up the so(3)
//! connection term Qᵀ∂ᵢQ under a left rotation field; its symmetrized
//! variant kills that term. `full-second-gradient` (‖GRAD Grad φ‖²) is
//! isotropic but not right-local invariant; the invariant-gradient energy
//! survives even the rotation-gradient term.
//!
//! ```bash
//! cargo run --example local_invariance
//! ```

use invlab::model::{EnergyModel, ModelId, ModelParams};
use invlab::probe::{probe, InvarianceKind, ProbeConfig, RotationSource};

fn main() {
    let pairs = [
        (ModelId::ConnectionCurv, InvarianceKind::LeftGlobal),
        (ModelId::ConnectionCurv, InvarianceKind::LeftLocal),
        (ModelId::SymConnectionCurv, InvarianceKind::LeftLocal),
        (ModelId::FullSecondGradient, InvarianceKind::RightGlobal),
        (ModelId::FullSecondGradient, InvarianceKind::RightLocal),
        (ModelId::GradInvariants, InvarianceKind::RightLocal),
        (ModelId::Invariants, InvarianceKind::RightLocal),
    ];
    for (model, kind) in pairs {
        let cfg = ProbeConfig {
            rotation_source: if kind.is_local() {
                RotationSource::AxisAngleField
            } else {
                RotationSource::RationalQuaternion
            },
            ..ProbeConfig::default()
        };
        let report = probe(&EnergyModel::new(model, ModelParams::default()), kind, &cfg)
            .expect("probe");
        println!(
            "  {:<9} {:<22} x {:<12} max violation {:.3e}",
            report.verdict,
            model.name(),
            kind.name(),
            report.max_violation
        );
    }
}
