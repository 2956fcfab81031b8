//! The ♯- and ♭-transformations and executable verifiers for the catalog of
//! transformation rules under simultaneous rotation of spatial and
//! referential coordinates.
//!
//! Every rule verifier compares at mapped point pairs: the transformed side
//! is a field of ξ = Q·x, the original side is transformed after applying
//! the operator, and both are evaluated at the same ξ. Non-constant rotation
//! fields are rejected here: a coordinate map whose gradient is a rotation
//! everywhere is affine, so the catalog only makes sense for rigid rotations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{Point, ScalarExpr};
use crate::field::{anti_field, axl_skew_field, Mat3Field, RotationField, Ten3Field, VecField};
use crate::ops::{
    curl_ten2, curl_vec, curvature, div_ten2, div_ten3, div_vec, grad_scalar, grad_ten2, grad_vec,
    inc, laplace_scalar,
};
use crate::tensor::{Rotation, Vec3};

// ---------------------------------------------------------------------------
// Sharp and flat transformations
// ---------------------------------------------------------------------------

/// `h♯(ξ) = h(Qᵀξ)`.
pub fn sharp_scalar(h: &ScalarExpr, q: &Rotation) -> ScalarExpr {
    let repl: [ScalarExpr; 3] = std::array::from_fn(|i| {
        ScalarExpr::sum(
            (0..3)
                .map(|j| ScalarExpr::coord(j).scale(q.matrix().0[j][i]))
                .collect(),
        )
    });
    h.substitute(&repl)
}

/// `u♯(ξ) = Q u(Qᵀξ)`.
pub fn sharp_vec(u: &VecField, q: &Rotation) -> VecField {
    u.compose_linear(q.matrix()).left_mul(q.matrix())
}

/// `σ♯(ξ) = Q σ(Qᵀξ) Qᵀ`.
pub fn sharp_mat(s: &Mat3Field, q: &Rotation) -> Mat3Field {
    s.compose_linear(q.matrix())
        .left_mul(q.matrix())
        .right_mul(&q.matrix().transpose())
}

/// Rank-3 ♯-transformation in index form:
/// `m♯_ijk(ξ) = Q_ia Q_jb Q_kc m_abc(Qᵀξ)`.
pub fn sharp_ten3(m: &Ten3Field, q: &Rotation) -> Ten3Field {
    let composed = m.compose_linear(q.matrix());
    let qm = q.matrix();
    Ten3Field::from_fn(|i, j, k| {
        let mut terms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let w = qm.0[i][a] * qm.0[j][b] * qm.0[k][c];
                    if w != 0.0 {
                        terms.push(composed.get(a, b, c).scale(w));
                    }
                }
            }
        }
        ScalarExpr::sum(terms)
    })
}

/// Referential-only rotation `φ♭(ξ) = φ(Qᵀξ)`, the isotropy transformation
/// of the nonlinear setting.
pub fn flat_vec(phi: &VecField, q: &Rotation) -> VecField {
    phi.compose_linear(q.matrix())
}

// ---------------------------------------------------------------------------
// Rule catalog
// ---------------------------------------------------------------------------

/// Stable identifiers for the transformation-rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    DivInvariance,
    DivGrad,
    SymGrad,
    SkewGrad,
    DevSymGrad,
    DivSymGrad,
    DivSkewGrad,
    Axl,
    Anti,
    Curl,
    GradCurl,
    Curvature,
    DivSigma,
    GradSigma,
    DivGradSigma,
    GradDivSigma,
    CurlP,
    CurlCurl,
    GradGradU,
    DivGradGradU,
    DivDivGradGradU,
    Inc,
    Dislocation,
    Laplace,
}

pub const ALL_RULES: [RuleId; 24] = [
    RuleId::DivInvariance,
    RuleId::DivGrad,
    RuleId::SymGrad,
    RuleId::SkewGrad,
    RuleId::DevSymGrad,
    RuleId::DivSymGrad,
    RuleId::DivSkewGrad,
    RuleId::Axl,
    RuleId::Anti,
    RuleId::Curl,
    RuleId::GradCurl,
    RuleId::Curvature,
    RuleId::DivSigma,
    RuleId::GradSigma,
    RuleId::DivGradSigma,
    RuleId::GradDivSigma,
    RuleId::CurlP,
    RuleId::CurlCurl,
    RuleId::GradGradU,
    RuleId::DivGradGradU,
    RuleId::DivDivGradGradU,
    RuleId::Inc,
    RuleId::Dislocation,
    RuleId::Laplace,
];

impl RuleId {
    pub fn name(&self) -> &'static str {
        match self {
            RuleId::DivInvariance => "div-invariance",
            RuleId::DivGrad => "div-grad",
            RuleId::SymGrad => "sym-grad",
            RuleId::SkewGrad => "skew-grad",
            RuleId::DevSymGrad => "dev-sym-grad",
            RuleId::DivSymGrad => "div-sym-grad",
            RuleId::DivSkewGrad => "div-skew-grad",
            RuleId::Axl => "axl",
            RuleId::Anti => "anti",
            RuleId::Curl => "curl",
            RuleId::GradCurl => "grad-curl",
            RuleId::Curvature => "curvature",
            RuleId::DivSigma => "div-sigma",
            RuleId::GradSigma => "grad-sigma",
            RuleId::DivGradSigma => "div-grad-sigma",
            RuleId::GradDivSigma => "grad-div-sigma",
            RuleId::CurlP => "curl-p",
            RuleId::CurlCurl => "curl-curl",
            RuleId::GradGradU => "grad-grad-u",
            RuleId::DivGradGradU => "div-grad-grad-u",
            RuleId::DivDivGradGradU => "div-div-grad-grad-u",
            RuleId::Inc => "inc",
            RuleId::Dislocation => "dislocation",
            RuleId::Laplace => "laplace",
        }
    }

    /// Rank of field argument the rule expects.
    pub fn argument(&self) -> ArgKind {
        match self {
            RuleId::Laplace => ArgKind::Scalar,
            RuleId::DivSigma
            | RuleId::GradSigma
            | RuleId::DivGradSigma
            | RuleId::GradDivSigma
            | RuleId::CurlP
            | RuleId::CurlCurl
            | RuleId::Inc => ArgKind::Matrix,
            _ => ArgKind::Vector,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<RuleId> {
        ALL_RULES
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    Scalar,
    Vector,
    Matrix,
}

/// A field argument for a rule verifier.
#[derive(Clone, Debug)]
pub enum FieldArg {
    Scalar(ScalarExpr),
    Vector(VecField),
    Matrix(Mat3Field),
}

impl FieldArg {
    fn kind(&self) -> ArgKind {
        match self {
            FieldArg::Scalar(_) => ArgKind::Scalar,
            FieldArg::Vector(_) => ArgKind::Vector,
            FieldArg::Matrix(_) => ArgKind::Matrix,
        }
    }
}

enum BothSides {
    Scalar(ScalarExpr, ScalarExpr),
    Vector(VecField, VecField),
    Matrix(Mat3Field, Mat3Field),
    Ten3(Ten3Field, Ten3Field),
}

impl BothSides {
    fn max_abs_difference(&self, p: &Point) -> f64 {
        match self {
            BothSides::Scalar(l, r) => (l.eval(p) - r.eval(p)).abs(),
            BothSides::Vector(l, r) => l.eval(p).sub(&r.eval(p)).max_abs(),
            BothSides::Matrix(l, r) => l.eval(p).sub(&r.eval(p)).max_abs(),
            BothSides::Ten3(l, r) => l.eval(p).sub(&r.eval(p)).max_abs(),
        }
    }
}

fn build_rule(rule: RuleId, arg: &FieldArg, q: &Rotation) -> Result<BothSides> {
    if arg.kind() != rule.argument() {
        return Err(Error::Usage(format!(
            "rule `{rule}` expects a {:?} field argument",
            rule.argument()
        )));
    }
    Ok(match (rule, arg) {
        (RuleId::Laplace, FieldArg::Scalar(h)) => BothSides::Scalar(
            laplace_scalar(&sharp_scalar(h, q)),
            sharp_scalar(&laplace_scalar(h), q),
        ),
        (rule, FieldArg::Vector(u)) => {
            let us = sharp_vec(u, q);
            match rule {
                RuleId::DivInvariance => {
                    BothSides::Scalar(div_vec(&us), sharp_scalar(&div_vec(u), q))
                }
                RuleId::DivGrad => BothSides::Vector(
                    div_ten2(&grad_vec(&us)),
                    sharp_vec(&div_ten2(&grad_vec(u)), q),
                ),
                RuleId::SymGrad => {
                    BothSides::Matrix(grad_vec(&us).sym(), sharp_mat(&grad_vec(u).sym(), q))
                }
                RuleId::SkewGrad => {
                    BothSides::Matrix(grad_vec(&us).skew(), sharp_mat(&grad_vec(u).skew(), q))
                }
                RuleId::DevSymGrad => BothSides::Matrix(
                    grad_vec(&us).dev_sym(),
                    sharp_mat(&grad_vec(u).dev_sym(), q),
                ),
                RuleId::DivSymGrad => BothSides::Vector(
                    div_ten2(&grad_vec(&us).sym()),
                    sharp_vec(&div_ten2(&grad_vec(u).sym()), q),
                ),
                RuleId::DivSkewGrad => BothSides::Vector(
                    div_ten2(&grad_vec(&us).skew()),
                    sharp_vec(&div_ten2(&grad_vec(u).skew()), q),
                ),
                RuleId::Axl => BothSides::Vector(
                    axl_skew_field(&grad_vec(&us)),
                    sharp_vec(&axl_skew_field(&grad_vec(u)), q),
                ),
                RuleId::Anti => {
                    let a = curl_vec(u);
                    BothSides::Matrix(
                        anti_field(&sharp_vec(&a, q)),
                        sharp_mat(&anti_field(&a), q),
                    )
                }
                RuleId::Curl => BothSides::Vector(curl_vec(&us), sharp_vec(&curl_vec(u), q)),
                RuleId::GradCurl => BothSides::Matrix(
                    grad_vec(&curl_vec(&us)),
                    sharp_mat(&grad_vec(&curl_vec(u)), q),
                ),
                RuleId::Curvature => {
                    BothSides::Matrix(curvature(&us), sharp_mat(&curvature(u), q))
                }
                RuleId::GradGradU => BothSides::Ten3(
                    grad_ten2(&grad_vec(&us)),
                    sharp_ten3(&grad_ten2(&grad_vec(u)), q),
                ),
                RuleId::DivGradGradU => BothSides::Matrix(
                    div_ten3(&grad_ten2(&grad_vec(&us))),
                    sharp_mat(&div_ten3(&grad_ten2(&grad_vec(u))), q),
                ),
                RuleId::DivDivGradGradU => BothSides::Vector(
                    div_ten2(&div_ten3(&grad_ten2(&grad_vec(&us)))),
                    sharp_vec(&div_ten2(&div_ten3(&grad_ten2(&grad_vec(u)))), q),
                ),
                RuleId::Dislocation => {
                    let p = grad_vec(u).skew();
                    BothSides::Matrix(
                        curl_ten2(&grad_vec(&us).skew()),
                        sharp_mat(&curl_ten2(&p), q),
                    )
                }
                _ => unreachable!("argument kinds already checked"),
            }
        }
        (rule, FieldArg::Matrix(s)) => {
            let ss = sharp_mat(s, q);
            match rule {
                RuleId::DivSigma => {
                    BothSides::Vector(div_ten2(&ss), sharp_vec(&div_ten2(s), q))
                }
                RuleId::GradSigma => {
                    BothSides::Ten3(grad_ten2(&ss), sharp_ten3(&grad_ten2(s), q))
                }
                RuleId::DivGradSigma => BothSides::Matrix(
                    div_ten3(&grad_ten2(&ss)),
                    sharp_mat(&div_ten3(&grad_ten2(s)), q),
                ),
                RuleId::GradDivSigma => BothSides::Matrix(
                    grad_vec(&div_ten2(&ss)),
                    sharp_mat(&grad_vec(&div_ten2(s)), q),
                ),
                RuleId::CurlP => BothSides::Matrix(curl_ten2(&ss), sharp_mat(&curl_ten2(s), q)),
                RuleId::CurlCurl => BothSides::Matrix(
                    curl_ten2(&curl_ten2(&ss)),
                    sharp_mat(&curl_ten2(&curl_ten2(s)), q),
                ),
                RuleId::Inc => {
                    BothSides::Matrix(inc(&ss.sym()), sharp_mat(&inc(&s.sym()), q))
                }
                _ => unreachable!("argument kinds already checked"),
            }
        }
        _ => unreachable!("argument kinds already checked"),
    })
}

/// Verify a catalog rule for one field and one rigid rotation: both sides are
/// built as exact expression fields of ξ and compared at ξ = Q·x for each
/// base point x. Returns the max componentwise absolute difference.
pub fn verify_rule(rule: RuleId, arg: &FieldArg, q: &Rotation, points: &[Point]) -> Result<f64> {
    let sides = build_rule(rule, arg, q)?;
    let mut worst = 0.0f64;
    for x in points {
        let xi = q.apply(&Vec3(*x));
        worst = worst.max(sides.max_abs_difference(&xi.0));
    }
    Ok(worst)
}

/// Entry point that also accepts rotation fields; non-constant fields are
/// rejected because no coordinate change realizes them.
pub fn verify_rule_field(
    rule: RuleId,
    arg: &FieldArg,
    qf: &RotationField,
    points: &[Point],
) -> Result<f64> {
    match qf {
        RotationField::Constant(q) => verify_rule(rule, arg, q, points),
        RotationField::AxisAngle { .. } => Err(Error::Usage(
            "transformation rules presuppose a constant rotation: a coordinate map whose \
             gradient lies in SO(3) everywhere is an affine rigid motion (compatibility of \
             rotations), so non-constant rotation fields cannot arise here"
                .into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Quadratic norm invariances
// ---------------------------------------------------------------------------

pub const NORM_INVARIANCE_NAMES: [&str; 5] = [
    "norm-grad-grad-u",
    "norm-grad-sym-grad-u",
    "norm-grad-tr-id",
    "norm-grad-dev-sym-grad-u",
    "norm-curl-cauchy-green",
];

/// Checks the quadratic-norm form-invariances under the ♯-transformation at
/// mapped point pairs; returns (name, max normalized residual) per norm.
pub fn norm_invariance_suite(
    u: &VecField,
    q: &Rotation,
    points: &[Point],
) -> Vec<(&'static str, f64)> {
    let us = sharp_vec(u, q);

    let lhs_rhs: Vec<(ScalarExpr, ScalarExpr)> = {
        let grad_grad = |w: &VecField| grad_ten2(&grad_vec(w)).norm_sq_expr();
        let grad_sym = |w: &VecField| grad_ten2(&grad_vec(w).sym()).norm_sq_expr();
        // ‖Grad(tr(sym Grad u)·id)‖² = 3 ‖grad tr Grad u‖²
        let grad_tr = |w: &VecField| {
            grad_scalar(&grad_vec(w).trace())
                .norm_sq_expr()
                .scale(3.0)
        };
        let grad_dev = |w: &VecField| grad_ten2(&grad_vec(w).dev_sym()).norm_sq_expr();
        let curl_c = |w: &VecField| {
            // C = FᵀF with F = Grad(x + w)
            let f = grad_vec(w).add(&Mat3Field::identity());
            curl_ten2(&f.transpose().matmul(&f)).norm_sq_expr()
        };
        vec![
            (grad_grad(&us), grad_grad(u)),
            (grad_sym(&us), grad_sym(u)),
            (grad_tr(&us), grad_tr(u)),
            (grad_dev(&us), grad_dev(u)),
            (curl_c(&us), curl_c(u)),
        ]
    };

    NORM_INVARIANCE_NAMES
        .iter()
        .zip(lhs_rhs)
        .map(|(name, (lhs, rhs))| {
            let mut worst = 0.0f64;
            for x in points {
                let xi = q.apply(&Vec3(*x));
                let l = lhs.eval(&xi.0);
                let r = rhs.eval(x);
                worst = worst.max((l - r).abs() / (1.0 + r.abs()));
            }
            (*name, worst)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Local compositions for the invariance probes
// ---------------------------------------------------------------------------

/// Pointwise left composition `x ↦ Q(x) F(x)` as an exact expression field.
pub fn left_local_compose(qf: &RotationField, f: &Mat3Field) -> Mat3Field {
    qf.matrix_field().matmul(f)
}

/// Contraction `(M · G)_ijk = M_ia G_ajk` of a matrix field into the first
/// leg of a third-order field.
fn mat_dot_ten3(m: &Mat3Field, g: &Ten3Field) -> Ten3Field {
    Ten3Field::from_fn(|i, j, k| {
        ScalarExpr::sum(
            (0..3)
                .map(|a| m.0[i][a].clone() * g.get(a, j, k).clone())
                .collect(),
        )
    })
}

/// Right-rotation of the two derivative legs: `T'_ikn = T_ija Q_jk Q_an`.
fn ten3_rotate_legs23(t: &Ten3Field, q: &Mat3Field) -> Ten3Field {
    Ten3Field::from_fn(|i, k, n| {
        let mut terms = Vec::new();
        for j in 0..3 {
            for a in 0..3 {
                terms.push(t.get(i, j, a).clone() * q.0[j][k].clone() * q.0[a][n].clone());
            }
        }
        ScalarExpr::sum(terms)
    })
}

/// Pointwise right-local transformation of second-gradient energy arguments:
///
/// `F' = F·Q`,
/// `H' = (H − F·Q·GRAD(Qᵀ))·Q·Q`,
///
/// with the derivative of the rotation field taken symbolically. For a
/// constant rotation field the gradient term vanishes and this reduces to
/// the right-global argument transformation.
pub fn right_local_args(
    f: &Mat3Field,
    h: &Ten3Field,
    qf: &RotationField,
) -> (Mat3Field, Ten3Field) {
    let qm = qf.matrix_field();
    let f_q = f.matmul(&qm);
    let grad_qt = grad_ten2(&qm.transpose());
    let inner = h.sub(&mat_dot_ten3(&f_q, &grad_qt));
    (f_q, ten3_rotate_legs23(&inner, &qm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{random_point, random_poly_mat3, random_poly_vec, random_rational_rotation};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sharp_examples() {
        // sharp((x2², 0, 0), 90° about e3) = (0, ξ1², 0)
        let u = VecField([
            ScalarExpr::coord(1).powi(2),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        let q = Rotation::from_integer_quaternion([1, 0, 0, 1]).unwrap();
        let us = sharp_vec(&u, &q);
        let p = [0.8, -0.3, 0.6];
        let got = us.eval(&p);
        assert!(got.sub(&Vec3::new(0.0, p[0] * p[0], 0.0)).max_abs() <= 1e-14);

        // identity rotation is the identity transformation
        let hs = sharp_scalar(u.component(0), &Rotation::identity());
        assert_eq!(hs.eval(&p), u.component(0).eval(&p));
    }

    #[test]
    fn sharp_defining_property_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let (q, _) = random_rational_rotation(&mut rng);
        let us = sharp_vec(&u, &q);
        for _ in 0..5 {
            let x = random_point(&mut rng);
            // eval(u♯, Q x) = Q eval(u, x)
            let xi = q.apply(&Vec3(x));
            let lhs = us.eval(&xi.0);
            let rhs = q.apply(&u.eval(&x));
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12);

            // sharp(sharp(u, Q), Qᵀ) = u
            let back = sharp_vec(&us, &q.transpose());
            assert!(back.eval(&x).sub(&u.eval(&x)).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn flat_gradient_rule() {
        // Grad φ♭ = (Grad φ)(Qᵀξ) Qᵀ
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let phi = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let (q, _) = random_rational_rotation(&mut rng);
        let flat = flat_vec(&phi, &q);
        let g = grad_vec(&phi);
        let gf = grad_vec(&flat);
        for _ in 0..5 {
            let xi = random_point(&mut rng);
            let x = q.transpose().apply(&Vec3(xi));
            let rhs = g.eval(&x.0).matmul(&q.matrix().transpose());
            assert!(gf.eval(&xi).sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn grad_of_sharp_is_conjugated_gradient() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let (q, _) = random_rational_rotation(&mut rng);
        let gs = grad_vec(&sharp_vec(&u, &q));
        let g = grad_vec(&u);
        for _ in 0..5 {
            let x = random_point(&mut rng);
            let xi = q.apply(&Vec3(x));
            let rhs = q
                .matrix()
                .matmul(&g.eval(&x))
                .matmul(&q.matrix().transpose());
            assert!(gs.eval(&xi.0).sub(&rhs).max_abs() <= 1e-12);
        }
    }

    fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
        (0..n).map(|_| random_point(rng)).collect()
    }

    #[test]
    fn rule_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        // grad-curl with the spec's field and Q from quaternion (1,1,0,0)
        let u = VecField([
            ScalarExpr::coord(0) * ScalarExpr::coord(1),
            ScalarExpr::coord(2).powi(2),
            ScalarExpr::coord(0),
        ]);
        let q = Rotation::from_integer_quaternion([1, 1, 0, 0]).unwrap();
        let pts = sample_points(&mut rng, 10);
        let r = verify_rule(RuleId::GradCurl, &FieldArg::Vector(u.clone()), &q, &pts).unwrap();
        assert!(r <= 1e-12, "residual {r:.3e}");

        // div-sigma with σ = sym Grad u
        let sigma = grad_vec(&u).sym();
        let r = verify_rule(RuleId::DivSigma, &FieldArg::Matrix(sigma), &q, &pts).unwrap();
        assert!(r <= 1e-12);

        // curvature with Q = id is exactly zero
        let r = verify_rule(
            RuleId::Curvature,
            &FieldArg::Vector(u),
            &Rotation::identity(),
            &pts,
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn whole_catalog_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let pts = sample_points(&mut rng, 5);
        for rule in ALL_RULES {
            for _ in 0..2 {
                let (q, _) = random_rational_rotation(&mut rng);
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
                let r = verify_rule(rule, &arg, &q, &pts).unwrap();
                assert!(r <= 1e-9, "rule {rule} residual {r:.3e}");
            }
        }
    }

    #[test]
    fn rule_argument_mismatch_is_usage_error() {
        let u = VecField::coordinates();
        let q = Rotation::identity();
        let err = verify_rule(RuleId::DivSigma, &FieldArg::Vector(u), &q, &[[0.0; 3]]);
        assert!(err.is_err());
        assert!("nope".parse::<RuleId>().is_err());
    }

    #[test]
    fn rules_reject_non_constant_rotation_fields() {
        let qf = RotationField::axis_angle(Vec3::new(0.0, 0.0, 1.0), ScalarExpr::coord(0));
        let u = VecField::coordinates();
        let err = verify_rule_field(RuleId::Curl, &FieldArg::Vector(u.clone()), &qf, &[[0.0; 3]]);
        match err {
            Err(Error::Usage(msg)) => assert!(msg.contains("compatibility of rotations")),
            other => panic!("expected usage error, got {other:?}"),
        }
        // constant fields delegate to the plain verifier
        let qf = RotationField::Constant(Rotation::identity());
        verify_rule_field(RuleId::Curl, &FieldArg::Vector(u), &qf, &[[0.1, 0.2, 0.3]]).unwrap();
    }

    #[test]
    fn norm_invariances_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let (q, _) = random_rational_rotation(&mut rng);
        let pts = sample_points(&mut rng, 5);
        for (name, r) in norm_invariance_suite(&u, &q, &pts) {
            assert!(r <= 1e-9, "{name}: {r:.3e}");
        }
    }

    #[test]
    fn left_local_compose_gives_so3_connection() {
        // Qf about e3 with angle x1 and F = id: Fᵀ∂₁(Qf F) = Qᵀ∂₁Q ∈ so(3)
        let qf = RotationField::axis_angle(Vec3::new(0.0, 0.0, 1.0), ScalarExpr::coord(0));
        let f = Mat3Field::identity();
        let composed = left_local_compose(&qf, &f);
        let h = grad_ten2(&composed);
        let p = [0.37, -0.8, 0.12];
        let fc = composed.eval(&p);
        let d1 = h.eval(&p).slice_k(0);
        let m = fc.transpose().matmul(&d1);
        assert!(m.add(&m.transpose()).max_abs() <= 1e-12, "not skew");

        let qm = qf.matrix_field();
        let dq = grad_ten2(&qm).eval(&p).slice_k(0);
        let expected = qm.eval(&p).transpose().matmul(&dq);
        assert!(m.sub(&expected).max_abs() <= 1e-12);

        // identity rotation field leaves the argument alone
        let idf = RotationField::Constant(Rotation::identity());
        let same = left_local_compose(&idf, &f);
        assert!(same.eval(&p).sub(&f.eval(&p)).max_abs() <= 1e-15);
    }

    #[test]
    fn right_local_args_reduce_to_global_for_constant_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let u = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        let f = grad_vec(&u).add(&Mat3Field::identity());
        let h = grad_ten2(&f);
        let (q, _) = random_rational_rotation(&mut rng);
        let qf = RotationField::Constant(q);
        let (f2, h2) = right_local_args(&f, &h, &qf);
        let p = random_point(&mut rng);

        let fq = f.eval(&p).matmul(q.matrix());
        assert!(f2.eval(&p).sub(&fq).max_abs() <= 1e-12);

        // no gradient term: H' = H·Q·Q
        let hv = h.eval(&p);
        let qm = q.matrix();
        let expected = crate::tensor::Ten3::from_fn(|i, k, n| {
            let mut s = 0.0;
            for j in 0..3 {
                for a in 0..3 {
                    s += hv.get(i, j, a) * qm.0[j][k] * qm.0[a][n];
                }
            }
            s
        });
        assert!(h2.eval(&p).sub(&expected).max_abs() <= 1e-12);
    }
}
