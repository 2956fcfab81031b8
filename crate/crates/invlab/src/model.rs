//! Energy densities, stress and couple-stress constitutive maps, and balance
//! residual fields for the model families under study.
//!
//! Curvature moduli are named `a_devsym`, `a_skew`, `a_tr` for the weights of
//! the trace-free symmetric, skew and spherical parts of the curvature tensor
//! respectively; the couple stress is `m = 2 μ L_c² (a_devsym dev sym k̃ +
//! a_skew skew k̃)` and the spherical weight never contributes because
//! `tr k̃ = 0` identically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Point;
use crate::field::{anti_field, axl_skew_field, Mat3Field, VecField};
use crate::ops::{curl_ten2, curvature, div_ten2, div_ten3, grad_ten2, grad_vec};
use crate::tensor::{eps, Mat3, Ten3, Vec3};

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Classical isotropic moduli.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LameParams {
    pub mu: f64,
    pub lambda: f64,
}

impl LameParams {
    pub fn new(mu: f64, lambda: f64) -> Result<LameParams> {
        if mu <= 0.0 {
            return Err(Error::Usage(format!("shear modulus must be positive, got {mu}")));
        }
        Ok(LameParams { mu, lambda })
    }

    /// Bulk modulus `κ = λ + 2μ/3`.
    pub fn kappa(&self) -> f64 {
        self.lambda + 2.0 * self.mu / 3.0
    }
}

/// Curvature moduli of the couple-stress family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureParams {
    pub lc: f64,
    pub a_devsym: f64,
    pub a_skew: f64,
    pub a_tr: f64,
}

impl CurvatureParams {
    pub fn new(lc: f64, a_devsym: f64, a_skew: f64, a_tr: f64) -> Result<CurvatureParams> {
        if lc <= 0.0 {
            return Err(Error::Usage(format!(
                "characteristic length must be positive, got {lc}"
            )));
        }
        Ok(CurvatureParams {
            lc,
            a_devsym,
            a_skew,
            a_tr,
        })
    }
}

fn default_one() -> f64 {
    1.0
}

fn default_coeffs() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

/// Flat parameter bag matching the JSON config
/// `{mu, lambda, Lc, a_devsym, a_skew, a_tr, psi_coeffs[3]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    #[serde(default = "default_one")]
    pub mu: f64,
    #[serde(default = "default_one")]
    pub lambda: f64,
    #[serde(rename = "Lc", default = "default_one")]
    pub lc: f64,
    #[serde(default = "default_one")]
    pub a_devsym: f64,
    #[serde(default = "default_one")]
    pub a_skew: f64,
    #[serde(default = "default_one")]
    pub a_tr: f64,
    #[serde(default = "default_coeffs")]
    pub psi_coeffs: [f64; 3],
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            mu: 1.0,
            lambda: 1.0,
            lc: 1.0,
            a_devsym: 1.0,
            a_skew: 1.0,
            a_tr: 1.0,
            psi_coeffs: [1.0, 1.0, 1.0],
        }
    }
}

impl ModelParams {
    pub fn lame(&self) -> Result<LameParams> {
        LameParams::new(self.mu, self.lambda)
    }

    pub fn curvature(&self) -> Result<CurvatureParams> {
        CurvatureParams::new(self.lc, self.a_devsym, self.a_skew, self.a_tr)
    }
}

// ---------------------------------------------------------------------------
// Jets
// ---------------------------------------------------------------------------

/// First and second gradient of a displacement or deformation at a point;
/// the argument of every energy density.
#[derive(Debug, Clone, Copy)]
pub struct DisplacementJet {
    /// First gradient: `Grad u` or `F = Grad φ`.
    pub g: Mat3,
    /// Second gradient `u_i,jk`, symmetric in the last two indices when
    /// sourced from a field.
    pub h: Ten3,
}

impl DisplacementJet {
    /// Jet of the displacement field u at p.
    pub fn of_displacement(u: &VecField, p: &Point) -> DisplacementJet {
        let g = grad_vec(u);
        DisplacementJet {
            g: g.eval(p),
            h: grad_ten2(&g).eval(p),
        }
    }

    /// Jet of the deformation φ = x + u at p.
    pub fn of_deformation(u: &VecField, p: &Point) -> DisplacementJet {
        let jet = DisplacementJet::of_displacement(u, p);
        DisplacementJet {
            g: jet.g.add(&Mat3::identity()),
            h: jet.h,
        }
    }
}

/// Curvature tensor from a second gradient: `k̃_ij = −½ H_abj eps_abi`.
pub fn curvature_from_jet(h: &Ten3) -> Mat3 {
    Mat3::from_fn(|i, j| {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                s += h.get(a, b, j) * eps(a, b, i);
            }
        }
        -0.5 * s
    })
}

// ---------------------------------------------------------------------------
// Pointwise constitutive maps
// ---------------------------------------------------------------------------

/// Symmetric linear strain `ε = sym G`.
pub fn strain(g: &Mat3) -> Mat3 {
    g.sym()
}

/// Isotropic Cauchy stress `σ = 2με + λ tr(ε) id`.
pub fn cauchy_stress(epsilon: &Mat3, p: &LameParams) -> Mat3 {
    let mut s = epsilon.scale(2.0 * p.mu);
    let t = p.lambda * epsilon.trace();
    for i in 0..3 {
        s.0[i][i] += t;
    }
    s
}

/// Linear elastic energy `μ‖ε‖² + (λ/2)(tr ε)²`.
pub fn w_lin(epsilon: &Mat3, p: &LameParams) -> f64 {
    p.mu * epsilon.norm_sq() + 0.5 * p.lambda * epsilon.trace().powi(2)
}

/// Equivalent deviatoric form `μ‖dev ε‖² + (κ/2)(tr ε)²`.
pub fn w_lin_dev_form(epsilon: &Mat3, p: &LameParams) -> f64 {
    p.mu * epsilon.dev().norm_sq() + 0.5 * p.kappa() * epsilon.trace().powi(2)
}

/// Curvature energy
/// `μ L_c² (a_devsym ‖dev sym k‖² + a_tr (tr k)² + a_skew ‖skew k‖²)`.
pub fn w_curv_couple_stress(k: &Mat3, cp: &CurvatureParams, mu: f64) -> f64 {
    mu * cp.lc.powi(2)
        * (cp.a_devsym * k.dev_sym().norm_sq()
            + cp.a_tr * k.trace().powi(2)
            + cp.a_skew * k.skew().norm_sq())
}

/// Couple stress `m = 2 μ L_c² (a_devsym dev sym k + a_skew skew k)`;
/// trace free by construction.
pub fn couple_stress_m(k: &Mat3, cp: &CurvatureParams, mu: f64) -> Mat3 {
    k.dev_sym()
        .scale(cp.a_devsym)
        .add(&k.skew().scale(cp.a_skew))
        .scale(2.0 * mu * cp.lc.powi(2))
}

/// Hyperstress of the general strain gradient model with the sixth-order map
/// restricted to the identity.
pub fn strain_gradient_hyperstress(h: &Ten3) -> Ten3 {
    *h
}

/// Principal invariants of C: `(tr C, tr adj C, det C)`. The second
/// invariant uses the adjugate directly, which stays polynomial.
pub fn principal_invariants(c: &Mat3) -> [f64; 3] {
    [c.trace(), c.adjugate().trace(), c.det()]
}

/// Derivatives of the principal invariants with respect to a symmetric C:
/// `DI₁ = id`, `DI₂ = tr(C) id − C`, `DI₃ = adj C`.
fn invariant_derivatives(c: &Mat3) -> [Mat3; 3] {
    let mut d2 = c.scale(-1.0);
    let t = c.trace();
    for i in 0..3 {
        d2.0[i][i] += t;
    }
    [Mat3::identity(), d2, c.adjugate()]
}

/// `grad I_k(C)` assembled from a deformation jet:
/// `(grad I_k)_b = ⟨DI_k(C), ∂_b C⟩` with `∂_b C = (∂_b F)ᵀ F + Fᵀ ∂_b F`.
fn invariant_gradients(jet: &DisplacementJet) -> [Vec3; 3] {
    let c = jet.g.transpose().matmul(&jet.g);
    let di = invariant_derivatives(&c);
    let mut out = [Vec3::ZERO; 3];
    for b in 0..3 {
        let df = jet.h.slice_k(b);
        let dc = df.transpose().matmul(&jet.g).add(&jet.g.transpose().matmul(&df));
        for k in 0..3 {
            out[k].0[b] = di[k].inner(&dc);
        }
    }
    out
}

/// Connection-style curvature `Σ_i ‖Fᵀ ∂_i F‖²`, optionally of the symmetric
/// part only.
fn connection_curvature(jet: &DisplacementJet, sym_only: bool) -> f64 {
    let mut total = 0.0;
    for i in 0..3 {
        let t = jet.g.transpose().matmul(&jet.h.slice_k(i));
        let t = if sym_only { t.sym() } else { t };
        total += t.norm_sq();
    }
    total
}

// ---------------------------------------------------------------------------
// Model catalog
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kinematics {
    /// Densities of the displacement jet (Grad u, D²u).
    Linear,
    /// Densities of the deformation jet (F, GRAD F) with φ = x + u.
    Nonlinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelId {
    Classical,
    CoupleStress,
    CoupleStressConformal,
    CoupleStressSkew,
    CoupleStressSymmetricTotal,
    StrainGradient,
    FMinusId,
    SymFMinusId,
    Invariants,
    ConnectionCurv,
    SymConnectionCurv,
    FullSecondGradient,
    GradInvariants,
    FingerCurv,
}

pub const ALL_MODELS: [ModelId; 14] = [
    ModelId::FMinusId,
    ModelId::SymFMinusId,
    ModelId::Invariants,
    ModelId::ConnectionCurv,
    ModelId::SymConnectionCurv,
    ModelId::FullSecondGradient,
    ModelId::GradInvariants,
    ModelId::FingerCurv,
    ModelId::Classical,
    ModelId::CoupleStress,
    ModelId::CoupleStressConformal,
    ModelId::CoupleStressSkew,
    ModelId::CoupleStressSymmetricTotal,
    ModelId::StrainGradient,
];

impl ModelId {
    pub fn name(&self) -> &'static str {
        match self {
            ModelId::Classical => "classical",
            ModelId::CoupleStress => "couple-stress",
            ModelId::CoupleStressConformal => "couple-stress-conformal",
            ModelId::CoupleStressSkew => "couple-stress-skew",
            ModelId::CoupleStressSymmetricTotal => "couple-stress-symmetric-total",
            ModelId::StrainGradient => "strain-gradient",
            ModelId::FMinusId => "F-minus-id",
            ModelId::SymFMinusId => "sym-F-minus-id",
            ModelId::Invariants => "invariants",
            ModelId::ConnectionCurv => "connection-curv",
            ModelId::SymConnectionCurv => "sym-connection-curv",
            ModelId::FullSecondGradient => "full-second-gradient",
            ModelId::GradInvariants => "grad-invariants",
            ModelId::FingerCurv => "finger-curv",
        }
    }

    pub fn kinematics(&self) -> Kinematics {
        match self {
            ModelId::Classical
            | ModelId::CoupleStress
            | ModelId::CoupleStressConformal
            | ModelId::CoupleStressSkew
            | ModelId::CoupleStressSymmetricTotal
            | ModelId::StrainGradient => Kinematics::Linear,
            _ => Kinematics::Nonlinear,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<ModelId> {
        ALL_MODELS
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

/// A named pointwise energy density.
#[derive(Debug, Clone, Copy)]
pub struct EnergyModel {
    pub id: ModelId,
    pub params: ModelParams,
}

impl EnergyModel {
    /// Look up a model by its catalog name. The conformal and skew couple
    /// stress variants force `a_skew = 0` and `a_devsym = 0` respectively.
    pub fn by_name(name: &str, params: ModelParams) -> Result<EnergyModel> {
        Ok(EnergyModel::new(name.parse()?, params))
    }

    pub fn new(id: ModelId, mut params: ModelParams) -> EnergyModel {
        match id {
            ModelId::CoupleStressConformal => params.a_skew = 0.0,
            ModelId::CoupleStressSkew => params.a_devsym = 0.0,
            _ => {}
        }
        EnergyModel { id, params }
    }

    pub fn kinematics(&self) -> Kinematics {
        self.id.kinematics()
    }

    /// Pointwise density. Linear models read the jet as (Grad u, D²u),
    /// nonlinear models as (F, GRAD F).
    pub fn density(&self, jet: &DisplacementJet) -> f64 {
        let p = &self.params;
        let lame = LameParams {
            mu: p.mu,
            lambda: p.lambda,
        };
        let curv = CurvatureParams {
            lc: p.lc,
            a_devsym: p.a_devsym,
            a_skew: p.a_skew,
            a_tr: p.a_tr,
        };
        match self.id {
            ModelId::Classical => w_lin(&strain(&jet.g), &lame),
            ModelId::CoupleStress | ModelId::CoupleStressConformal | ModelId::CoupleStressSkew => {
                w_lin(&strain(&jet.g), &lame)
                    + w_curv_couple_stress(&curvature_from_jet(&jet.h), &curv, p.mu)
            }
            ModelId::CoupleStressSymmetricTotal => {
                // same energy written in Curl(sym Grad u) = k̃ᵀ
                let kt = curvature_from_jet(&jet.h).transpose();
                w_lin(&strain(&jet.g), &lame)
                    + p.mu
                        * p.lc.powi(2)
                        * (p.a_devsym * kt.dev_sym().norm_sq() + p.a_skew * kt.skew().norm_sq())
            }
            ModelId::StrainGradient => {
                w_lin(&strain(&jet.g), &lame)
                    + 0.5 * strain_gradient_hyperstress(&jet.h).inner(&jet.h)
            }
            ModelId::FMinusId => jet.g.sub(&Mat3::identity()).norm_sq(),
            ModelId::SymFMinusId => jet.g.sub(&Mat3::identity()).sym().norm_sq(),
            ModelId::Invariants => {
                let c = jet.g.transpose().matmul(&jet.g);
                principal_invariants(&c)
                    .iter()
                    .zip(p.psi_coeffs.iter())
                    .map(|(i, c)| c * i)
                    .sum()
            }
            ModelId::ConnectionCurv => connection_curvature(jet, false),
            ModelId::SymConnectionCurv => connection_curvature(jet, true),
            ModelId::FullSecondGradient => jet.h.norm_sq(),
            ModelId::GradInvariants => {
                let c = jet.g.transpose().matmul(&jet.g);
                let base: f64 = principal_invariants(&c)
                    .iter()
                    .zip(p.psi_coeffs.iter())
                    .map(|(i, c)| c * i)
                    .sum();
                base + invariant_gradients(jet)
                    .iter()
                    .map(|g| g.norm_sq())
                    .sum::<f64>()
            }
            ModelId::FingerCurv => {
                // symmetric functions of the Finger-type tensor
                // B̃ = (grad Î)(grad Î)ᵀ: tr(B̃) + tr(B̃²)
                let g = invariant_gradients(jet);
                let b = Mat3::from_fn(|i, j| g[i].dot(&g[j]));
                b.trace() + b.matmul(&b).trace()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Stress fields and balance residuals
// ---------------------------------------------------------------------------

/// Cauchy stress as an expression field.
pub fn sigma_field(u: &VecField, lame: &LameParams) -> Mat3Field {
    let eps_f = grad_vec(u).sym();
    let tr = eps_f.trace().scale(lame.lambda);
    let mut out = eps_f.scale(2.0 * lame.mu);
    for i in 0..3 {
        out.0[i][i] = out.0[i][i].clone() + tr.clone();
    }
    out
}

/// Couple stress field of the indeterminate family,
/// `m = 2 μ L_c² (a_devsym dev sym k̃ + a_skew skew k̃)`.
pub fn couple_stress_field(u: &VecField, cp: &CurvatureParams, mu: f64) -> Mat3Field {
    let k = curvature(u);
    k.dev_sym()
        .scale(cp.a_devsym)
        .add(&k.skew().scale(cp.a_skew))
        .scale(2.0 * mu * cp.lc.powi(2))
}

/// Couple stress field of the symmetric-total-stress variant, written in
/// `Curl(sym Grad u)`.
pub fn couple_stress_field_symmetric_variant(
    u: &VecField,
    cp: &CurvatureParams,
    mu: f64,
) -> Mat3Field {
    let c = curl_ten2(&grad_vec(u).sym());
    c.dev_sym()
        .scale(cp.a_devsym)
        .add(&c.skew().scale(cp.a_skew))
        .scale(2.0 * mu * cp.lc.powi(2))
}

/// Nonlocal force stress `τ̃ = −½ anti(Div m)`; skew by construction.
pub fn nonlocal_stress(m: &Mat3Field) -> Mat3Field {
    anti_field(&div_ten2(m)).scale(-0.5)
}

/// Total force stress field of a balance-carrying model.
pub fn total_stress_field(model: ModelId, u: &VecField, params: &ModelParams) -> Result<Mat3Field> {
    let lame = params.lame()?;
    let sigma = sigma_field(u, &lame);
    match model {
        ModelId::Classical => Ok(sigma),
        ModelId::CoupleStress => {
            let m = couple_stress_field(u, &params.curvature()?, params.mu);
            Ok(sigma.add(&nonlocal_stress(&m)))
        }
        ModelId::CoupleStressSymmetricTotal => {
            let m = couple_stress_field_symmetric_variant(u, &params.curvature()?, params.mu);
            Ok(sigma.add(&curl_ten2(&m).sym()))
        }
        ModelId::StrainGradient => {
            let hyper = grad_ten2(&grad_vec(u));
            Ok(sigma.add(&div_ten3(&hyper)))
        }
        other => Err(Error::Usage(format!(
            "model `{other}` carries no balance equation in this catalog"
        ))),
    }
}

/// Balance residual fields: `Div(total) + f`, plus the angular balance
/// `Div m + 2 axl(skew σ̃)` for the indeterminate couple stress model.
#[derive(Clone, Debug)]
pub struct BalanceResidual {
    pub linear: VecField,
    pub angular: Option<VecField>,
}

pub fn balance_residual(
    model: ModelId,
    u: &VecField,
    f: &VecField,
    params: &ModelParams,
) -> Result<BalanceResidual> {
    let total = total_stress_field(model, u, params)?;
    let linear = div_ten2(&total).add(f);
    let angular = match model {
        ModelId::CoupleStress => {
            let m = couple_stress_field(u, &params.curvature()?, params.mu);
            Some(div_ten2(&m).add(&axl_skew_field(&total).scale(2.0)))
        }
        _ => None,
    };
    Ok(BalanceResidual { linear, angular })
}

/// `Div(σ̃ − σ̂)` between the indeterminate model and the symmetric-total
/// variant at equal moduli; vanishes identically.
pub fn div_total_stress_difference(u: &VecField, params: &ModelParams) -> Result<VecField> {
    let indeterminate = total_stress_field(ModelId::CoupleStress, u, params)?;
    let symmetric = total_stress_field(ModelId::CoupleStressSymmetricTotal, u, params)?;
    Ok(div_ten2(&indeterminate.sub(&symmetric)))
}

/// Pointwise stress snapshot of a balance-carrying model.
#[derive(Debug, Clone)]
pub struct StressState {
    pub sigma: Mat3,
    pub tau: Mat3,
    pub couple: CoupleStress,
    pub total: Mat3,
}

#[derive(Debug, Clone)]
pub enum CoupleStress {
    None,
    Second(Mat3),
    Third(Ten3),
}

pub fn stress_state(
    model: ModelId,
    u: &VecField,
    params: &ModelParams,
    p: &Point,
) -> Result<StressState> {
    let lame = params.lame()?;
    let sigma = sigma_field(u, &lame).eval(p);
    let (tau, couple) = match model {
        ModelId::Classical => (Mat3::ZERO, CoupleStress::None),
        ModelId::CoupleStress | ModelId::CoupleStressConformal | ModelId::CoupleStressSkew => {
            let mut params = *params;
            match model {
                ModelId::CoupleStressConformal => params.a_skew = 0.0,
                ModelId::CoupleStressSkew => params.a_devsym = 0.0,
                _ => {}
            }
            let m = couple_stress_field(u, &params.curvature()?, params.mu);
            (nonlocal_stress(&m).eval(p), CoupleStress::Second(m.eval(p)))
        }
        ModelId::CoupleStressSymmetricTotal => {
            let m = couple_stress_field_symmetric_variant(u, &params.curvature()?, params.mu);
            (curl_ten2(&m).sym().eval(p), CoupleStress::Second(m.eval(p)))
        }
        ModelId::StrainGradient => {
            let hyper = grad_ten2(&grad_vec(u));
            (
                div_ten3(&hyper).eval(p),
                CoupleStress::Third(hyper.eval(p)),
            )
        }
        other => {
            return Err(Error::Usage(format!(
                "model `{other}` has no stress state"
            )))
        }
    };
    Ok(StressState {
        sigma,
        tau,
        couple,
        total: sigma.add(&tau),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ScalarExpr;
    use crate::field::{random_point, random_poly_vec, random_rational_rotation};
    use crate::tensor::{anti, rayleigh_mat};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_params() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn strain_and_stress_examples() {
        assert_eq!(strain(&Mat3::identity()), Mat3::identity());
        let skew = anti(&Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(strain(&skew), Mat3::ZERO);

        // u = (x1 x2, x3^2, x1) at (1,2,3)
        let u = VecField([
            ScalarExpr::coord(0) * ScalarExpr::coord(1),
            ScalarExpr::coord(2).powi(2),
            ScalarExpr::coord(0),
        ]);
        let g = grad_vec(&u).eval(&[1.0, 2.0, 3.0]);
        let expected = Mat3([[2.0, 1.0, 0.0], [0.0, 0.0, 6.0], [1.0, 0.0, 0.0]]).sym();
        assert!(strain(&g).sub(&expected).max_abs() <= 1e-14);

        // ε = diag(1,0,0), μ = λ = 1 → σ = diag(3,1,1)
        let mut e = Mat3::ZERO;
        e.0[0][0] = 1.0;
        let lame = LameParams::new(1.0, 1.0).unwrap();
        let s = cauchy_stress(&e, &lame);
        let mut expected = Mat3::identity();
        expected.0[0][0] = 3.0;
        assert!(s.sub(&expected).max_abs() <= 1e-15);
        assert_eq!(cauchy_stress(&Mat3::ZERO, &lame), Mat3::ZERO);
    }

    #[test]
    fn cauchy_stress_is_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let lame = LameParams::new(1.3, 0.7).unwrap();
        for _ in 0..10 {
            let (q, _) = random_rational_rotation(&mut rng);
            let e = Mat3::from_fn(|i, j| ((i * 3 + j) as f64 * 0.31).sin()).sym();
            let lhs = rayleigh_mat(&q, &cauchy_stress(&e, &lame));
            let rhs = cauchy_stress(&rayleigh_mat(&q, &e), &lame);
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn w_lin_examples_and_forms_agree() {
        let lame = LameParams::new(1.0, 1.0).unwrap();
        assert!((w_lin(&Mat3::identity(), &lame) - 7.5).abs() <= 1e-15);
        assert_eq!(w_lin(&Mat3::ZERO, &lame), 0.0);

        let lame = LameParams::new(0.8, 1.9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let e = Mat3::from_fn(|_, _| rand::Rng::gen_range(&mut rng, -2.0..2.0)).sym();
            let a = w_lin(&e, &lame);
            let b = w_lin_dev_form(&e, &lame);
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            // energy consistency: w = ½⟨σ(ε), ε⟩
            let c = 0.5 * cauchy_stress(&e, &lame).inner(&e);
            assert!((a - c).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn curvature_energy_and_couple_stress_hand_values() {
        // k with only k_32 = −3: ‖dev sym‖² = 4.5, ‖skew‖² = 4.5, tr = 0
        let mut k = Mat3::ZERO;
        k.0[2][1] = -3.0;
        let cp = CurvatureParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((w_curv_couple_stress(&k, &cp, 1.0) - 9.0).abs() <= 1e-14);
        assert_eq!(w_curv_couple_stress(&Mat3::ZERO, &cp, 1.0), 0.0);

        // m = 2k for unit moduli and trace-free k
        let m = couple_stress_m(&k, &cp, 1.0);
        assert!(m.sub(&k.scale(2.0)).max_abs() <= 1e-14);
        assert!((m.0[2][1] + 6.0).abs() <= 1e-14);

        // conformal: skew weight zero makes m symmetric (and trace free)
        let cp_conformal = CurvatureParams::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let m = couple_stress_m(&k, &cp_conformal, 1.0);
        assert!(m.is_sym() && m.is_tracefree());

        // skew variant: dev-sym weight zero makes m skew
        let cp_skew = CurvatureParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(couple_stress_m(&k, &cp_skew, 1.0).is_skew());
    }

    #[test]
    fn couple_stress_map_is_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let cp = CurvatureParams::new(0.7, 1.1, 0.4, 0.9).unwrap();
        for _ in 0..10 {
            let (q, _) = random_rational_rotation(&mut rng);
            let k = Mat3::from_fn(|_, _| rand::Rng::gen_range(&mut rng, -2.0..2.0));
            let lhs = rayleigh_mat(&q, &couple_stress_m(&k, &cp, 1.4));
            let rhs = couple_stress_m(&rayleigh_mat(&q, &k), &cp, 1.4);
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn trace_term_never_contributes_for_real_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..5 {
            let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
            let p = random_point(&mut rng);
            let k = curvature(&u).eval(&p);
            let with = w_curv_couple_stress(&k, &CurvatureParams::new(1.0, 1.0, 1.0, 5.0).unwrap(), 1.0);
            let without =
                w_curv_couple_stress(&k, &CurvatureParams::new(1.0, 1.0, 1.0, 0.0).unwrap(), 1.0);
            assert!((with - without).abs() <= 1e-12 * (1.0 + with.abs()));
        }
    }

    #[test]
    fn nonlocal_stress_hand_value() {
        // u = (x2³, 0, 0), unit moduli: Div m = −6 e3 and
        // τ̃ = [[0,−3,0],[3,0,0],[0,0,0]]
        let u = VecField([
            ScalarExpr::coord(1).powi(3),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        let cp = CurvatureParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let m = couple_stress_field(&u, &cp, 1.0);
        let p = [0.3, 1.0, -0.4];
        let div_m = div_ten2(&m).eval(&p);
        assert!(div_m.sub(&Vec3::new(0.0, 0.0, -6.0)).max_abs() <= 1e-13);

        let tau = nonlocal_stress(&m).eval(&p);
        let expected = Mat3([[0.0, -3.0, 0.0], [3.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(tau.sub(&expected).max_abs() <= 1e-13);

        // constant m has no nonlocal stress
        let tau = nonlocal_stress(&Mat3Field::identity());
        assert_eq!(tau.eval(&p), Mat3::ZERO);

        // finite-difference oracle for Div m
        let h = 1e-5;
        for i in 0..3 {
            let mut fd = 0.0;
            for j in 0..3 {
                let mut hi = p;
                let mut lo = p;
                hi[j] += h;
                lo[j] -= h;
                fd += (m.0[i][j].eval(&hi) - m.0[i][j].eval(&lo)) / (2.0 * h);
            }
            assert!((div_m.0[i] - fd).abs() <= 1e-6 * (1.0 + div_m.0[i].abs()));
        }
    }

    #[test]
    fn constitutive_structure_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let params = unit_params();
        for _ in 0..5 {
            let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
            let p = random_point(&mut rng);

            let st = stress_state(ModelId::CoupleStress, &u, &params, &p).unwrap();
            assert!(st.tau.sym().max_abs() <= 1e-13, "tau not skew");
            if let CoupleStress::Second(m) = st.couple {
                assert!(m.trace().abs() <= 1e-13, "m not trace free");
            }

            let st = stress_state(ModelId::CoupleStressSymmetricTotal, &u, &params, &p).unwrap();
            assert!(st.total.skew().max_abs() <= 1e-12, "total not symmetric");
            if let CoupleStress::Second(m) = st.couple {
                assert!(m.trace().abs() <= 1e-13);
            }

            let st = stress_state(ModelId::CoupleStressConformal, &u, &params, &p).unwrap();
            if let CoupleStress::Second(m) = st.couple {
                assert!(m.skew().max_abs() <= 1e-13, "conformal m not symmetric");
            }

            let st = stress_state(ModelId::CoupleStressSkew, &u, &params, &p).unwrap();
            if let CoupleStress::Second(m) = st.couple {
                assert!(m.sym().max_abs() <= 1e-13, "skew-variant m not skew");
            }
        }
    }

    #[test]
    fn divergence_equivalence_across_variants() {
        // degree 4 so the nonlocal stresses have nonzero divergence and the
        // cancellation is contentful; unequal moduli stress the bookkeeping
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let params = ModelParams {
            a_devsym: 1.3,
            a_skew: 0.6,
            ..unit_params()
        };
        for degree in [3, 4] {
            for _ in 0..5 {
                let u = random_poly_vec(&mut rng, degree, (-2.0, 2.0)).to_vec_field();
                let d = div_total_stress_difference(&u, &params).unwrap();
                let p = random_point(&mut rng);
                assert!(d.eval(&p).max_abs() <= 1e-10, "Div(σ̃ − σ̂) = {:?}", d.eval(&p));
            }
        }
    }

    #[test]
    fn balance_residuals() {
        let params = unit_params();
        // homogeneous strain: all stresses constant, residual vanishes with f = 0
        let linear_u = VecField([
            ScalarExpr::coord(0).scale(0.5) + ScalarExpr::coord(1),
            ScalarExpr::coord(2).scale(-0.25),
            ScalarExpr::coord(0).scale(2.0),
        ]);
        let zero_f = VecField::zero();
        for model in [
            ModelId::Classical,
            ModelId::CoupleStress,
            ModelId::CoupleStressSymmetricTotal,
            ModelId::StrainGradient,
        ] {
            let r = balance_residual(model, &linear_u, &zero_f, &params).unwrap();
            assert!(r.linear.eval(&[0.2, 0.4, 0.6]).max_abs() <= 1e-13);
        }

        // classical model with hand-computed f: u = (x1², 0, 0), μ = 1, λ = 0
        // gives σ = 2 sym Grad u, Div σ = (4, 0, 0), so f = −(4,0,0)
        let u = VecField([
            ScalarExpr::coord(0).powi(2),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        let params_l0 = ModelParams {
            lambda: 0.0,
            ..unit_params()
        };
        let f = VecField([
            ScalarExpr::constant(-4.0),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        let r = balance_residual(ModelId::Classical, &u, &f, &params_l0).unwrap();
        assert!(r.linear.eval(&[0.3, -0.6, 0.1]).max_abs() <= 1e-13);

        // the angular balance of the indeterminate model vanishes identically
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let r = balance_residual(ModelId::CoupleStress, &u, &zero_f, &params).unwrap();
        let ang = r.angular.unwrap();
        for _ in 0..5 {
            let p = random_point(&mut rng);
            assert!(ang.eval(&p).max_abs() <= 1e-11);
        }

        assert!(balance_residual(ModelId::FMinusId, &u, &zero_f, &params).is_err());
    }

    #[test]
    fn nonlinear_catalog_hand_values() {
        let params = unit_params();
        let id_jet = DisplacementJet {
            g: Mat3::identity(),
            h: Ten3::ZERO,
        };
        assert_eq!(
            EnergyModel::new(ModelId::FMinusId, params).density(&id_jet),
            0.0
        );
        let c = Mat3::identity();
        assert_eq!(principal_invariants(&c), [3.0, 3.0, 1.0]);

        // F = diag(2,1,1): C = diag(4,1,1), I1 = 6, I2 = adj trace = 9, I3 = 4
        let mut f = Mat3::identity();
        f.0[0][0] = 2.0;
        let c = f.transpose().matmul(&f);
        let inv = principal_invariants(&c);
        assert_eq!(inv[0], 6.0);
        assert_eq!(inv[1], 9.0);
        assert_eq!(inv[2], 4.0);
    }

    #[test]
    fn connection_curvature_splits_by_cartan_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let params = unit_params();
        for _ in 0..5 {
            let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
            let p = random_point(&mut rng);
            let jet = DisplacementJet::of_deformation(&u, &p);
            let full = EnergyModel::new(ModelId::ConnectionCurv, params).density(&jet);
            let sym = EnergyModel::new(ModelId::SymConnectionCurv, params).density(&jet);
            let skew: f64 = (0..3)
                .map(|i| jet.g.transpose().matmul(&jet.h.slice_k(i)).skew().norm_sq())
                .sum();
            assert!((full - sym - skew).abs() <= 1e-10 * (1.0 + full.abs()));
        }
    }

    #[test]
    fn sym_connection_curvature_is_quarter_norm_grad_c() {
        // Σ‖sym(Fᵀ ∂_i F)‖² = ¼ ‖GRAD(FᵀF)‖² on deformation jets
        let mut rng = ChaCha8Rng::seed_from_u64(111);
        let params = unit_params();
        for _ in 0..5 {
            let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
            let f = grad_vec(&u).add(&Mat3Field::identity());
            let c = f.transpose().matmul(&f);
            let quarter = grad_ten2(&c).norm_sq_expr().scale(0.25);
            let p = random_point(&mut rng);
            let jet = DisplacementJet::of_deformation(&u, &p);
            let lhs = EnergyModel::new(ModelId::SymConnectionCurv, params).density(&jet);
            let rhs = quarter.eval(&p);
            assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn strain_gradient_hyperstress_is_identity_map() {
        assert_eq!(strain_gradient_hyperstress(&Ten3::ZERO), Ten3::ZERO);
        let t = Ten3::from_fn(|i, j, k| (i + 2 * j + 4 * k) as f64);
        assert_eq!(strain_gradient_hyperstress(&t), t);
    }

    #[test]
    fn params_parse_from_flat_json() {
        let p: ModelParams =
            serde_json::from_str(r#"{"mu": 2.0, "Lc": 0.5, "psi_coeffs": [1.0, 0.0, 2.0]}"#)
                .unwrap();
        assert_eq!(p.mu, 2.0);
        assert_eq!(p.lc, 0.5);
        assert_eq!(p.lambda, 1.0);
        assert_eq!(p.psi_coeffs, [1.0, 0.0, 2.0]);
        assert!(LameParams::new(-1.0, 0.0).is_err());
        assert!(CurvatureParams::new(0.0, 1.0, 1.0, 1.0).is_err());
    }
}
