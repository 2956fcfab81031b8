//! Invariance probes: sample fields, rotations and points, transform energy
//! arguments pointwise, and classify each model against the SO(3)-invariance
//! notions. A probe cannot prove an invariance, it can only fail to refute
//! it; "no violation over the corpus" is reported as HOLDS.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Point;
use crate::field::{
    poly_to_expr, random_point, random_poly_vec, random_rational_rotation, random_rotation_field,
    PolyTerm, PolyVecField, RotationField, VecField,
};
use crate::model::{
    balance_residual, total_stress_field, DisplacementJet, EnergyModel, Kinematics, ModelId,
    ModelParams, ALL_MODELS,
};
use crate::ops::{div_ten2, grad_ten2};
use crate::tensor::{rayleigh_ten3, Mat3, Rotation, Ten3, Vec3};
use crate::transform::sharp_vec;

// ---------------------------------------------------------------------------
// Kinds, configuration, reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvarianceKind {
    /// Objectivity: `W(Q̄ F) = W(F)` for constant rotations.
    LeftGlobal,
    /// Isotropy: `W(F Q̄) = W(F)` for constant rotations.
    RightGlobal,
    /// Left composition with a rotation field `Q(x)`.
    LeftLocal,
    /// Right composition with a rotation field, arguments transformed
    /// pointwise including the rotation-gradient term.
    RightLocal,
    /// Form-invariance under simultaneous rotation of spatial and
    /// referential coordinates.
    SharpFormInvariance,
    /// Form-invariance of the balance equations.
    BalanceFormInvariance,
}

pub const PROBE_KINDS: [InvarianceKind; 5] = [
    InvarianceKind::LeftGlobal,
    InvarianceKind::RightGlobal,
    InvarianceKind::LeftLocal,
    InvarianceKind::RightLocal,
    InvarianceKind::SharpFormInvariance,
];

impl InvarianceKind {
    pub fn name(&self) -> &'static str {
        match self {
            InvarianceKind::LeftGlobal => "left-global",
            InvarianceKind::RightGlobal => "right-global",
            InvarianceKind::LeftLocal => "left-local",
            InvarianceKind::RightLocal => "right-local",
            InvarianceKind::SharpFormInvariance => "sharp",
            InvarianceKind::BalanceFormInvariance => "balance",
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, InvarianceKind::LeftLocal | InvarianceKind::RightLocal)
    }
}

impl fmt::Display for InvarianceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for InvarianceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<InvarianceKind> {
        PROBE_KINDS
            .iter()
            .copied()
            .chain([InvarianceKind::BalanceFormInvariance])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown invariance kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RotationSource {
    RationalQuaternion,
    AxisAngleField,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub trials: usize,
    pub seed: u64,
    pub field_degree: u32,
    pub corpus_size: usize,
    pub points_per_field: usize,
    pub tolerance: f64,
    pub rotation_source: RotationSource,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            trials: 20,
            seed: 42,
            field_degree: 3,
            corpus_size: 20,
            points_per_field: 10,
            tolerance: 1e-9,
            rotation_source: RotationSource::RationalQuaternion,
        }
    }
}

impl ProbeConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if self.tolerance <= 0.0 {
            return Err(Error::Usage("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "VIOLATED")]
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
        })
    }
}

/// Rotation payload of a witness: either an integer quaternion or a
/// structurally serialized axis-angle rotation field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessRotation {
    Quaternion { quaternion: [i64; 4] },
    AxisAngle { axis: [f64; 3], angle_poly: Vec<PolyTerm> },
}

impl WitnessRotation {
    pub fn to_rotation_field(&self) -> RotationField {
        match self {
            WitnessRotation::Quaternion { quaternion } => RotationField::Constant(
                Rotation::from_integer_quaternion(*quaternion).expect("witness quaternion"),
            ),
            WitnessRotation::AxisAngle { axis, angle_poly } => {
                RotationField::axis_angle(Vec3(*axis), poly_to_expr(angle_poly))
            }
        }
    }
}

/// Everything needed to replay a violation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub field: PolyVecField,
    pub rotation: WitnessRotation,
    pub point: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub schema_version: u32,
    pub model: String,
    pub kind: String,
    pub verdict: Verdict,
    pub max_violation: f64,
    pub tolerance: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

// ---------------------------------------------------------------------------
// Pointwise jet transformations
// ---------------------------------------------------------------------------

fn left_rotate_h(q: &Mat3, h: &Ten3) -> Ten3 {
    Ten3::from_fn(|i, j, k| (0..3).map(|a| q.0[i][a] * h.get(a, j, k)).sum())
}

fn rotate_legs23(h: &Ten3, q: &Mat3) -> Ten3 {
    Ten3::from_fn(|i, k, n| {
        let mut s = 0.0;
        for j in 0..3 {
            for a in 0..3 {
                s += h.get(i, j, a) * q.0[j][k] * q.0[a][n];
            }
        }
        s
    })
}

/// Transform a jet per invariance kind. `dq.get(i, a, k)` is `∂_k Q_ia`;
/// required for the local kinds and ignored otherwise.
pub fn transform_jet(
    kind: InvarianceKind,
    jet: &DisplacementJet,
    q: &Mat3,
    dq: &Ten3,
) -> DisplacementJet {
    match kind {
        InvarianceKind::LeftGlobal => DisplacementJet {
            g: q.matmul(&jet.g),
            h: left_rotate_h(q, &jet.h),
        },
        InvarianceKind::RightGlobal => DisplacementJet {
            g: jet.g.matmul(q),
            h: rotate_legs23(&jet.h, q),
        },
        InvarianceKind::LeftLocal => DisplacementJet {
            g: q.matmul(&jet.g),
            h: Ten3::from_fn(|i, j, k| {
                (0..3)
                    .map(|a| dq.get(i, a, k) * jet.g.0[a][j] + q.0[i][a] * jet.h.get(a, j, k))
                    .sum()
            }),
        },
        InvarianceKind::RightLocal => {
            let gq = jet.g.matmul(q);
            // H − (F·Q)·GRAD(Qᵀ), with GRAD(Qᵀ)_mja = ∂_a Q_jm
            let inner = Ten3::from_fn(|i, j, a| {
                jet.h.get(i, j, a)
                    - (0..3).map(|m| gq.0[i][m] * dq.get(j, m, a)).sum::<f64>()
            });
            DisplacementJet {
                g: gq,
                h: rotate_legs23(&inner, q),
            }
        }
        InvarianceKind::SharpFormInvariance => {
            let rot = Rotation::new(*q).expect("sharp probe rotation");
            DisplacementJet {
                g: q.matmul(&jet.g).matmul(&q.transpose()),
                h: rayleigh_ten3(&rot, &jet.h),
            }
        }
        InvarianceKind::BalanceFormInvariance => {
            unreachable!("balance probes do not transform jets")
        }
    }
}

// ---------------------------------------------------------------------------
// The probe engine
// ---------------------------------------------------------------------------

fn applicability(model: &EnergyModel, kind: InvarianceKind) -> Result<()> {
    if model.kinematics() == Kinematics::Linear && kind != InvarianceKind::SharpFormInvariance {
        return Err(Error::InapplicableKind {
            kind: kind.name().into(),
            model: model.id.name().into(),
            constraint: "left/right SO(3) composition acts on the deformation gradient; a \
                         linear-kinematics density is probed through the sharp transformation \
                         instead"
                .into(),
        });
    }
    Ok(())
}

fn check_rotation_source(kind: InvarianceKind, source: RotationSource) -> Result<()> {
    match (kind.is_local(), source) {
        (true, RotationSource::RationalQuaternion) => Err(Error::Usage(format!(
            "kind `{kind}` needs rotation_source = axis-angle-field: local invariance is probed \
             with spatially varying rotation fields"
        ))),
        (false, RotationSource::AxisAngleField) => Err(Error::Usage(format!(
            "kind `{kind}` needs rotation_source = rational-quaternion: global invariance is \
             defined for constant rotations"
        ))),
        _ => Ok(()),
    }
}

struct SampledRotation {
    field: RotationField,
    witness: WitnessRotation,
}

fn sample_rotation(kind: InvarianceKind, rng: &mut ChaCha8Rng) -> SampledRotation {
    if kind.is_local() {
        let (field, axis, angle) = random_rotation_field(rng);
        SampledRotation {
            field,
            witness: WitnessRotation::AxisAngle {
                axis: axis.0,
                angle_poly: angle,
            },
        }
    } else {
        let (q, quat) = random_rational_rotation(rng);
        SampledRotation {
            field: RotationField::Constant(q),
            witness: WitnessRotation::Quaternion { quaternion: quat },
        }
    }
}

fn jet_for(model: &EnergyModel, u: &VecField, p: &Point) -> DisplacementJet {
    match model.kinematics() {
        Kinematics::Linear => DisplacementJet::of_displacement(u, p),
        Kinematics::Nonlinear => DisplacementJet::of_deformation(u, p),
    }
}

/// Normalized violation of one transformed evaluation.
fn violation(model: &EnergyModel, kind: InvarianceKind, jet: &DisplacementJet, q: &Mat3, dq: &Ten3) -> f64 {
    let original = model.density(jet);
    let transformed = model.density(&transform_jet(kind, jet, q, dq));
    (transformed - original).abs() / (1.0 + original.abs())
}

fn probe_impl(
    model: &EnergyModel,
    kind: InvarianceKind,
    cfg: &ProbeConfig,
    corpus: &[PolyVecField],
    rotation_override: Option<&RotationField>,
) -> Result<ProbeReport> {
    cfg.validate()?;
    applicability(model, kind)?;
    if corpus.is_empty() {
        return Err(Error::Usage("probe corpus must not be empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut max_violation = 0.0f64;
    let mut witness: Option<Witness> = None;

    for trial in 0..cfg.trials {
        let poly = &corpus[trial % corpus.len()];
        let u = poly.to_vec_field();
        let sampled = match rotation_override {
            Some(field) => SampledRotation {
                field: field.clone(),
                witness: WitnessRotation::Quaternion {
                    quaternion: [1, 0, 0, 0],
                },
            },
            None => sample_rotation(kind, &mut rng),
        };
        let qf = sampled.field.matrix_field();
        let dqf = grad_ten2(&qf);
        for _ in 0..cfg.points_per_field {
            let p = random_point(&mut rng);
            let jet = jet_for(model, &u, &p);
            let q = qf.eval(&p);
            let dq = dqf.eval(&p);
            let v = violation(model, kind, &jet, &q, &dq);
            if v > max_violation {
                max_violation = v;
                witness = Some(Witness {
                    field: poly.clone(),
                    rotation: sampled.witness.clone(),
                    point: p,
                });
            }
        }
    }

    let verdict = if max_violation > cfg.tolerance {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    Ok(ProbeReport {
        schema_version: 1,
        model: model.id.name().into(),
        kind: kind.name().into(),
        verdict,
        max_violation,
        tolerance: cfg.tolerance,
        trials: cfg.trials,
        seed: cfg.seed,
        witness: match verdict {
            Verdict::Violated => witness,
            Verdict::Holds => None,
        },
    })
}

/// Probe one model against one invariance kind. The rotation source must
/// match the kind: constant rational rotations for the global kinds and the
/// sharp transformation, axis-angle rotation fields for the local kinds.
pub fn probe(model: &EnergyModel, kind: InvarianceKind, cfg: &ProbeConfig) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x9E37_79B9));
    let corpus: Vec<PolyVecField> = (0..cfg.corpus_size.max(1))
        .map(|_| random_poly_vec(&mut rng, cfg.field_degree, (-2.0, 2.0)))
        .collect();
    probe_with_corpus(model, kind, cfg, &corpus)
}

/// Probe against a fixed corpus, e.g. a single field loaded from a file.
pub fn probe_with_corpus(
    model: &EnergyModel,
    kind: InvarianceKind,
    cfg: &ProbeConfig,
    corpus: &[PolyVecField],
) -> Result<ProbeReport> {
    if kind == InvarianceKind::BalanceFormInvariance {
        return Err(Error::Usage(
            "balance form-invariance is probed through `probe_balance`".into(),
        ));
    }
    check_rotation_source(kind, cfg.rotation_source)?;
    probe_impl(model, kind, cfg, corpus, None)
}

/// Re-evaluate a recorded witness; returns the normalized violation.
pub fn replay_witness(
    model: &EnergyModel,
    kind: InvarianceKind,
    witness: &Witness,
) -> Result<f64> {
    applicability(model, kind)?;
    let u = witness.field.to_vec_field();
    let qf = witness.rotation.to_rotation_field().matrix_field();
    let jet = jet_for(model, &u, &witness.point);
    let q = qf.eval(&witness.point);
    let dq = grad_ten2(&qf).eval(&witness.point);
    Ok(violation(model, kind, &jet, &q, &dq))
}

// ---------------------------------------------------------------------------
// Balance probes
// ---------------------------------------------------------------------------

pub const BALANCE_MODELS: [ModelId; 4] = [
    ModelId::Classical,
    ModelId::CoupleStress,
    ModelId::CoupleStressSymmetricTotal,
    ModelId::StrainGradient,
];

/// Form-invariance of a balance equation: manufacture `f = −Div(total)` so
/// the original residual vanishes identically, transform the whole system,
/// and check that the transformed residual vanishes at mapped points.
pub fn probe_balance(model: ModelId, cfg: &ProbeConfig) -> Result<ProbeReport> {
    cfg.validate()?;
    if !BALANCE_MODELS.contains(&model) {
        return Err(Error::Usage(format!(
            "model `{model}` is not in the balance catalog; choose one of {}",
            BALANCE_MODELS.map(|m| m.name()).join(", ")
        )));
    }
    let params = ModelParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let corpus: Vec<PolyVecField> = (0..cfg.corpus_size.max(1))
        .map(|_| random_poly_vec(&mut rng, cfg.field_degree, (-2.0, 2.0)))
        .collect();

    let mut max_violation = 0.0f64;
    let mut witness: Option<Witness> = None;

    for trial in 0..cfg.trials {
        let poly = &corpus[trial % corpus.len()];
        let u = poly.to_vec_field();
        let (q, quat) = random_rational_rotation(&mut rng);

        let f = div_ten2(&total_stress_field(model, &u, &params)?).scale(-1.0);
        let u_sharp = sharp_vec(&u, &q);
        let f_sharp = sharp_vec(&f, &q);
        let residual = balance_residual(model, &u_sharp, &f_sharp, &params)?;

        for _ in 0..cfg.points_per_field {
            let x = random_point(&mut rng);
            let xi = q.apply(&Vec3(x));
            let r = residual.linear.eval(&xi.0).max_abs();
            if r > max_violation {
                max_violation = r;
                witness = Some(Witness {
                    field: poly.clone(),
                    rotation: WitnessRotation::Quaternion { quaternion: quat },
                    point: x,
                });
            }
        }
    }

    let verdict = if max_violation > cfg.tolerance {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    Ok(ProbeReport {
        schema_version: 1,
        model: model.name().into(),
        kind: InvarianceKind::BalanceFormInvariance.name().into(),
        verdict,
        max_violation,
        tolerance: cfg.tolerance,
        trials: cfg.trials,
        seed: cfg.seed,
        witness: match verdict {
            Verdict::Violated => witness,
            Verdict::Holds => None,
        },
    })
}

// ---------------------------------------------------------------------------
// Classification matrix
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixCell {
    pub kind: String,
    /// "HOLDS", "VIOLATED" or "n/a".
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRow {
    pub model: String,
    pub cells: Vec<MatrixCell>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixReport {
    pub schema_version: u32,
    pub seed: u64,
    pub tolerance: f64,
    pub trials: usize,
    pub rows: Vec<MatrixRow>,
}

/// Run every applicable (model, kind) probe and tabulate the verdicts.
pub fn run_classification_matrix(cfg: &ProbeConfig) -> Result<MatrixReport> {
    let mut rows = Vec::new();
    for (mi, model_id) in ALL_MODELS.iter().enumerate() {
        let model = EnergyModel::new(*model_id, ModelParams::default());
        let mut cells = Vec::new();
        for (ki, kind) in PROBE_KINDS.iter().enumerate() {
            if applicability(&model, *kind).is_err() {
                cells.push(MatrixCell {
                    kind: kind.name().into(),
                    verdict: "n/a".into(),
                    max_violation: None,
                    witness: None,
                });
                continue;
            }
            let cell_cfg = ProbeConfig {
                // decorrelate the per-cell streams deterministically
                seed: cfg
                    .seed
                    .wrapping_mul(1_000_003)
                    .wrapping_add((mi * PROBE_KINDS.len() + ki) as u64),
                rotation_source: if kind.is_local() {
                    RotationSource::AxisAngleField
                } else {
                    RotationSource::RationalQuaternion
                },
                ..*cfg
            };
            let report = probe(&model, *kind, &cell_cfg)?;
            cells.push(MatrixCell {
                kind: kind.name().into(),
                verdict: report.verdict.to_string(),
                max_violation: Some(report.max_violation),
                witness: report.witness,
            });
        }
        rows.push(MatrixRow {
            model: model_id.name().into(),
            cells,
        });
    }
    Ok(MatrixReport {
        schema_version: 1,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        trials: cfg.trials,
        rows,
    })
}

impl MatrixReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| model |");
        for kind in PROBE_KINDS {
            out.push_str(&format!(" {kind} |"));
        }
        out.push_str("\n|---|");
        for _ in PROBE_KINDS {
            out.push_str("---|");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("| {} |", row.model));
            for cell in &row.cells {
                out.push_str(&format!(" {} |", cell.verdict));
            }
            out.push('\n');
        }
        out
    }

    pub fn cell(&self, model: ModelId, kind: InvarianceKind) -> Option<&MatrixCell> {
        self.rows
            .iter()
            .find(|r| r.model == model.name())
            .and_then(|r| r.cells.iter().find(|c| c.kind == kind.name()))
    }
}

/// The analytically expected verdicts.
pub fn expected_matrix() -> Vec<(ModelId, InvarianceKind, Verdict)> {
    use InvarianceKind::*;
    use ModelId::*;
    use Verdict::*;
    vec![
        (FMinusId, LeftGlobal, Violated),
        (FMinusId, RightGlobal, Violated),
        (FMinusId, SharpFormInvariance, Holds),
        (SymFMinusId, LeftGlobal, Violated),
        (SymFMinusId, SharpFormInvariance, Holds),
        (Invariants, LeftGlobal, Holds),
        (Invariants, RightGlobal, Holds),
        (Invariants, LeftLocal, Holds),
        (Invariants, RightLocal, Holds),
        (ConnectionCurv, LeftGlobal, Holds),
        (ConnectionCurv, LeftLocal, Violated),
        (ConnectionCurv, RightGlobal, Holds),
        (ConnectionCurv, RightLocal, Violated),
        (SymConnectionCurv, LeftLocal, Holds),
        (FullSecondGradient, RightGlobal, Holds),
        (FullSecondGradient, RightLocal, Violated),
        (GradInvariants, RightLocal, Holds),
        (Classical, SharpFormInvariance, Holds),
        (CoupleStress, SharpFormInvariance, Holds),
        (CoupleStressConformal, SharpFormInvariance, Holds),
        (CoupleStressSkew, SharpFormInvariance, Holds),
        (CoupleStressSymmetricTotal, SharpFormInvariance, Holds),
    ]
}

/// Compare a matrix against the expected verdicts; returns one message per
/// mismatch (empty means full agreement).
pub fn matrix_mismatches(report: &MatrixReport) -> Vec<String> {
    let mut out = Vec::new();
    for (model, kind, expected) in expected_matrix() {
        match report.cell(model, kind) {
            Some(cell) if cell.verdict == expected.to_string() => {}
            Some(cell) => out.push(format!(
                "{model} × {kind}: expected {expected}, got {}",
                cell.verdict
            )),
            None => out.push(format!("{model} × {kind}: cell missing")),
        }
    }
    out
}
