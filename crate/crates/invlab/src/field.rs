//! Vector-, matrix- and third-order-valued field expressions, rotation
//! fields, and the random polynomial corpus used by suites and probes.

use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expr::{Point, ScalarExpr};
use crate::tensor::{anti, eps, Mat3, Rotation, Ten3, Vec3};

// ---------------------------------------------------------------------------
// Field types
// ---------------------------------------------------------------------------

/// Vector field with closed-form components.
#[derive(Clone, Debug)]
pub struct VecField(pub [ScalarExpr; 3]);

impl VecField {
    pub fn zero() -> VecField {
        VecField([ScalarExpr::zero(), ScalarExpr::zero(), ScalarExpr::zero()])
    }

    pub fn from_fn(mut f: impl FnMut(usize) -> ScalarExpr) -> VecField {
        VecField([f(0), f(1), f(2)])
    }

    /// The identity map x ↦ x, used to build deformations φ = x + u.
    pub fn coordinates() -> VecField {
        VecField::from_fn(ScalarExpr::coord)
    }

    pub fn component(&self, i: usize) -> &ScalarExpr {
        &self.0[i]
    }

    pub fn eval(&self, p: &Point) -> Vec3 {
        Vec3([self.0[0].eval(p), self.0[1].eval(p), self.0[2].eval(p)])
    }

    pub fn add(&self, other: &VecField) -> VecField {
        VecField::from_fn(|i| self.0[i].clone() + other.0[i].clone())
    }

    pub fn sub(&self, other: &VecField) -> VecField {
        VecField::from_fn(|i| self.0[i].clone() - other.0[i].clone())
    }

    pub fn scale(&self, s: f64) -> VecField {
        VecField::from_fn(|i| self.0[i].scale(s))
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul(&self, m: &Mat3) -> VecField {
        VecField::from_fn(|i| {
            ScalarExpr::sum((0..3).map(|a| self.0[a].scale(m.0[i][a])).collect())
        })
    }

    /// Substitute x ↦ Aᵀξ, i.e. return the field ξ ↦ field(Aᵀξ).
    pub fn compose_linear(&self, a: &Mat3) -> VecField {
        let repl = linear_substitution(a);
        VecField::from_fn(|i| self.0[i].substitute(&repl))
    }

    pub fn norm_sq_expr(&self) -> ScalarExpr {
        ScalarExpr::sum(self.0.iter().map(|c| c.powi(2)).collect())
    }
}

/// Second-order tensor field.
#[derive(Clone, Debug)]
pub struct Mat3Field(pub [[ScalarExpr; 3]; 3]);

impl Mat3Field {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> ScalarExpr) -> Mat3Field {
        Mat3Field(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Mat3Field {
        Mat3Field::from_fn(|_, _| ScalarExpr::zero())
    }

    pub fn identity() -> Mat3Field {
        Mat3Field::from_fn(|i, j| {
            if i == j {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        })
    }

    pub fn constant(m: &Mat3) -> Mat3Field {
        Mat3Field::from_fn(|i, j| ScalarExpr::constant(m.0[i][j]))
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.0[i][j]
    }

    pub fn eval(&self, p: &Point) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j].eval(p))
    }

    pub fn transpose(&self) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn sym(&self) -> Mat3Field {
        Mat3Field::from_fn(|i, j| (self.0[i][j].clone() + self.0[j][i].clone()).scale(0.5))
    }

    pub fn skew(&self) -> Mat3Field {
        Mat3Field::from_fn(|i, j| (self.0[i][j].clone() - self.0[j][i].clone()).scale(0.5))
    }

    pub fn trace(&self) -> ScalarExpr {
        ScalarExpr::sum(vec![
            self.0[0][0].clone(),
            self.0[1][1].clone(),
            self.0[2][2].clone(),
        ])
    }

    pub fn dev(&self) -> Mat3Field {
        let t = self.trace().scale(1.0 / 3.0);
        Mat3Field::from_fn(|i, j| {
            if i == j {
                self.0[i][j].clone() - t.clone()
            } else {
                self.0[i][j].clone()
            }
        })
    }

    pub fn dev_sym(&self) -> Mat3Field {
        self.sym().dev()
    }

    pub fn add(&self, other: &Mat3Field) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.0[i][j].clone() + other.0[i][j].clone())
    }

    pub fn sub(&self, other: &Mat3Field) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.0[i][j].clone() - other.0[i][j].clone())
    }

    pub fn scale(&self, s: f64) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.0[i][j].scale(s))
    }

    pub fn scale_expr(&self, s: &ScalarExpr) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.0[i][j].clone() * s.clone())
    }

    /// Pointwise matrix product of two fields.
    pub fn matmul(&self, other: &Mat3Field) -> Mat3Field {
        Mat3Field::from_fn(|i, j| {
            ScalarExpr::sum(
                (0..3)
                    .map(|a| self.0[i][a].clone() * other.0[a][j].clone())
                    .collect(),
            )
        })
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul(&self, m: &Mat3) -> Mat3Field {
        Mat3Field::from_fn(|i, j| {
            ScalarExpr::sum((0..3).map(|a| self.0[a][j].scale(m.0[i][a])).collect())
        })
    }

    /// Right multiplication by a constant matrix.
    pub fn right_mul(&self, m: &Mat3) -> Mat3Field {
        Mat3Field::from_fn(|i, j| {
            ScalarExpr::sum((0..3).map(|a| self.0[i][a].scale(m.0[a][j])).collect())
        })
    }

    pub fn compose_linear(&self, a: &Mat3) -> Mat3Field {
        let repl = linear_substitution(a);
        Mat3Field::from_fn(|i, j| self.0[i][j].substitute(&repl))
    }

    pub fn norm_sq_expr(&self) -> ScalarExpr {
        ScalarExpr::sum(
            self.0
                .iter()
                .flatten()
                .map(|c| c.powi(2))
                .collect(),
        )
    }
}

/// Third-order tensor field, component (i,j,k) at `9i + 3j + k`.
#[derive(Clone, Debug)]
pub struct Ten3Field(pub Vec<ScalarExpr>);

impl Ten3Field {
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> ScalarExpr) -> Ten3Field {
        let mut v = Vec::with_capacity(27);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    v.push(f(i, j, k));
                }
            }
        }
        Ten3Field(v)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &ScalarExpr {
        &self.0[9 * i + 3 * j + k]
    }

    pub fn eval(&self, p: &Point) -> Ten3 {
        Ten3::from_fn(|i, j, k| self.get(i, j, k).eval(p))
    }

    pub fn sub(&self, other: &Ten3Field) -> Ten3Field {
        Ten3Field::from_fn(|i, j, k| self.get(i, j, k).clone() - other.get(i, j, k).clone())
    }

    pub fn compose_linear(&self, a: &Mat3) -> Ten3Field {
        let repl = linear_substitution(a);
        Ten3Field::from_fn(|i, j, k| self.get(i, j, k).substitute(&repl))
    }

    pub fn norm_sq_expr(&self) -> ScalarExpr {
        ScalarExpr::sum(self.0.iter().map(|c| c.powi(2)).collect())
    }
}

/// Substitution list for x ↦ Aᵀξ: coordinate x_i becomes Σ_j A_ji ξ_j.
fn linear_substitution(a: &Mat3) -> [ScalarExpr; 3] {
    std::array::from_fn(|i| {
        ScalarExpr::sum((0..3).map(|j| ScalarExpr::coord(j).scale(a.0[j][i])).collect())
    })
}

/// Pointwise `anti` of a vector field.
pub fn anti_field(v: &VecField) -> Mat3Field {
    Mat3Field::from_fn(|i, j| {
        ScalarExpr::sum((0..3).map(|k| v.0[k].scale(-eps(i, j, k))).collect())
    })
}

/// Pointwise `axl(skew(·))` of a matrix field: components −½ X_ab eps_abk.
pub fn axl_skew_field(x: &Mat3Field) -> VecField {
    VecField::from_fn(|k| {
        let mut terms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let e = eps(a, b, k);
                if e != 0.0 {
                    terms.push(x.0[a][b].scale(-0.5 * e));
                }
            }
        }
        ScalarExpr::sum(terms)
    })
}

// ---------------------------------------------------------------------------
// Rotation fields
// ---------------------------------------------------------------------------

/// A field of proper rotations: either a constant rotation or a fixed-axis
/// Rodrigues rotation with a position-dependent angle.
#[derive(Clone, Debug)]
pub enum RotationField {
    Constant(Rotation),
    AxisAngle { axis: Vec3, angle: ScalarExpr },
}

impl RotationField {
    /// Fixed-axis rotation field; the axis is normalized here.
    pub fn axis_angle(axis: Vec3, angle: ScalarExpr) -> RotationField {
        let n = axis.norm();
        assert!(n > 0.0, "rotation axis must be nonzero");
        RotationField::AxisAngle {
            axis: axis.scale(1.0 / n),
            angle,
        }
    }

    /// Entries as scalar expressions via Rodrigues:
    /// `Q = id + sin(θ) K + (1 − cos(θ)) K²` with `K = anti(axis)`.
    pub fn matrix_field(&self) -> Mat3Field {
        match self {
            RotationField::Constant(q) => Mat3Field::constant(q.matrix()),
            RotationField::AxisAngle { axis, angle } => {
                let k = anti(axis);
                let k2 = k.matmul(&k);
                let s = angle.sin();
                let c1 = ScalarExpr::one() - angle.cos();
                Mat3Field::from_fn(|i, j| {
                    let id = if i == j {
                        ScalarExpr::one()
                    } else {
                        ScalarExpr::zero()
                    };
                    id + s.clone().scale(k.0[i][j]) + c1.clone().scale(k2.0[i][j])
                })
            }
        }
    }

    /// Evaluate to a validated rotation.
    pub fn eval_rotation(&self, p: &Point) -> Result<Rotation> {
        match self {
            RotationField::Constant(q) => Ok(*q),
            RotationField::AxisAngle { .. } => Rotation::new(self.matrix_field().eval(p)),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, RotationField::Constant(_))
    }
}

// ---------------------------------------------------------------------------
// Polynomial fields: serializable form and random generation
// ---------------------------------------------------------------------------

/// One monomial `coeff · x1^e1 x2^e2 x3^e3`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyTerm {
    pub coeff: f64,
    pub exponents: [u32; 3],
}

pub fn poly_to_expr(terms: &[PolyTerm]) -> ScalarExpr {
    ScalarExpr::sum(
        terms
            .iter()
            .map(|t| {
                let mut fs = vec![ScalarExpr::constant(t.coeff)];
                for (axis, &e) in t.exponents.iter().enumerate() {
                    if e > 0 {
                        fs.push(ScalarExpr::coord(axis).powi(e));
                    }
                }
                ScalarExpr::product(fs)
            })
            .collect(),
    )
}

/// Serializable polynomial vector field: the wire format behind
/// `--field-file` and probe witnesses.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyVecField {
    pub components: [Vec<PolyTerm>; 3],
}

impl PolyVecField {
    pub fn to_vec_field(&self) -> VecField {
        VecField(std::array::from_fn(|i| poly_to_expr(&self.components[i])))
    }

    pub fn from_json_file(path: &Path) -> Result<PolyVecField> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn monomial_exponents(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=degree {
        for b in 0..=(degree - a) {
            for c in 0..=(degree - a - b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn random_poly_scalar(rng: &mut ChaCha8Rng, degree: u32, coeff_range: (f64, f64)) -> Vec<PolyTerm> {
    monomial_exponents(degree)
        .into_iter()
        .map(|exponents| PolyTerm {
            coeff: rng.gen_range(coeff_range.0..coeff_range.1),
            exponents,
        })
        .collect()
}

pub fn random_poly_vec(rng: &mut ChaCha8Rng, degree: u32, coeff_range: (f64, f64)) -> PolyVecField {
    PolyVecField {
        components: std::array::from_fn(|_| random_poly_scalar(rng, degree, coeff_range)),
    }
}

/// Dense random polynomial vector field, reproducible by seed.
pub fn random_polynomial_field(degree: u32, coeff_range: (f64, f64), seed: u64) -> PolyVecField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly_vec(&mut rng, degree, coeff_range)
}

/// Random matrix field with nine independent polynomial entries; the generic
/// second-order argument for transformation-rule checks.
pub fn random_poly_mat3(rng: &mut ChaCha8Rng, degree: u32, coeff_range: (f64, f64)) -> Mat3Field {
    let entries: [[ScalarExpr; 3]; 3] = std::array::from_fn(|_| {
        std::array::from_fn(|_| poly_to_expr(&random_poly_scalar(rng, degree, coeff_range)))
    });
    Mat3Field(entries)
}

pub fn random_point(rng: &mut ChaCha8Rng) -> Point {
    [
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ]
}

/// Random rational rotation from an integer quaternion with components in
/// {−5,…,5}, never the zero quaternion.
pub fn random_rational_rotation(rng: &mut ChaCha8Rng) -> (Rotation, [i64; 4]) {
    loop {
        let q: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-5i64..=5));
        if q != [0, 0, 0, 0] {
            return (Rotation::from_integer_quaternion(q).unwrap(), q);
        }
    }
}

/// Random fixed-axis rotation field with a non-constant polynomial angle of
/// degree ≤ 2, so its spatial derivative has real probe power.
pub fn random_rotation_field(rng: &mut ChaCha8Rng) -> (RotationField, Vec3, Vec<PolyTerm>) {
    let axis = loop {
        let v = Vec3([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]);
        if v.norm() > 0.3 {
            break v.scale(1.0 / v.norm());
        }
    };
    let angle = loop {
        let terms = random_poly_scalar(rng, 2, (-2.0, 2.0));
        let nonconst = terms
            .iter()
            .filter(|t| t.exponents != [0, 0, 0])
            .fold(0.0f64, |m, t| m.max(t.coeff.abs()));
        if nonconst > 0.25 {
            break terms;
        }
    };
    (
        RotationField::axis_angle(axis, poly_to_expr(&angle)),
        axis,
        angle,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Mat3;

    #[test]
    fn eval_examples() {
        // u = (x2^2, 0, 0) at (1,2,3) -> (4,0,0)
        let u = VecField([
            ScalarExpr::coord(1).powi(2),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        assert_eq!(u.eval(&[1.0, 2.0, 3.0]), Vec3::new(4.0, 0.0, 0.0));

        let idf = Mat3Field::identity();
        assert_eq!(idf.eval(&[0.3, -0.7, 0.9]), Mat3::identity());
    }

    #[test]
    fn rotation_field_at_point_is_rodrigues() {
        // axis e3, angle x1, evaluated at x1 = pi/2: 90° rotation about e3
        let rf = RotationField::axis_angle(Vec3::new(0.0, 0.0, 1.0), ScalarExpr::coord(0));
        let q = rf
            .eval_rotation(&[std::f64::consts::FRAC_PI_2, 0.0, 0.0])
            .unwrap();
        let expected = Mat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(q.matrix().sub(&expected).max_abs() <= 1e-15);
    }

    #[test]
    fn rotation_field_stays_in_so3() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (rf, _, _) = random_rotation_field(&mut rng);
            let p = random_point(&mut rng);
            // eval_rotation validates QᵀQ = id and det = +1 within 1e-12
            rf.eval_rotation(&p).unwrap();
        }
    }

    #[test]
    fn compose_linear_examples() {
        let u = VecField([
            ScalarExpr::coord(1).powi(2),
            ScalarExpr::zero(),
            ScalarExpr::zero(),
        ]);
        // Q = 90° about e3; Qᵀξ = (ξ2, −ξ1, ξ3) so u(Qᵀξ) = (ξ1², 0, 0)
        let q = Rotation::from_integer_quaternion([1, 0, 0, 1]).unwrap();
        let composed = u.compose_linear(q.matrix());
        for p in [[0.5, -0.25, 0.75], [1.0, 2.0, 3.0]] {
            let expect = Vec3::new(p[0] * p[0], 0.0, 0.0);
            assert!(composed.eval(&p).sub(&expect).max_abs() <= 1e-14);
        }

        // identity leaves the field alone
        let same = u.compose_linear(&Mat3::identity());
        let p = [0.2, 0.4, 0.6];
        assert_eq!(same.eval(&p), u.eval(&p));

        // defining property: eval(f, Qᵀξ) = eval(compose_linear(f, Q), ξ)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_poly_vec(&mut rng, 3, (-2.0, 2.0)).to_vec_field();
        for _ in 0..5 {
            let xi = random_point(&mut rng);
            let x = q.transpose().apply(&Vec3(xi));
            let lhs = f.eval(&x.0);
            let rhs = f.compose_linear(q.matrix()).eval(&xi);
            assert!(lhs.sub(&rhs).max_abs() <= 1e-13);
        }
    }

    #[test]
    fn random_fields_are_reproducible() {
        let a = random_polynomial_field(3, (-2.0, 2.0), 42);
        let b = random_polynomial_field(3, (-2.0, 2.0), 42);
        assert_eq!(a, b);
        let c = random_polynomial_field(0, (-2.0, 2.0), 7);
        assert_eq!(c.components[0].len(), 1); // degree 0: a single constant term
    }

    #[test]
    fn poly_field_round_trips_through_json() {
        let f = random_polynomial_field(2, (-2.0, 2.0), 9);
        let text = serde_json::to_string(&f).unwrap();
        let back: PolyVecField = serde_json::from_str(&text).unwrap();
        assert_eq!(f, back);
    }
}
