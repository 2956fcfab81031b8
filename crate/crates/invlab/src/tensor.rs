//! Pointwise linear algebra on rank-1/2/3 tensors over ℝ³.
//!
//! Sign and layout conventions used throughout the crate:
//!
//! * permutation symbol `eps(i,j,k)`: +1 for even permutations of (0,1,2),
//!   −1 for odd ones, 0 otherwise;
//! * `axl(A) = −½ A_ij eps_ijk e_k` and `anti(a) = −eps_ijk a_k e_i ⊗ e_j`,
//!   so that `anti(a) v = a × v`;
//! * the Rayleigh product rotates every tensor leg: rank 2 `Q T Qᵀ`,
//!   rank 3 `Q_ia Q_jb Q_kc T_abc`.

use crate::error::{Error, Result};
use crate::tol;

/// Permutation symbol on 0-based indices.
pub fn eps(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let a = &self.0;
        let b = &other.0;
        Vec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn sub(&self, other: &Vec3) -> Vec3 {
        self.add(&other.scale(-1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

// ---------------------------------------------------------------------------
// Mat3
// ---------------------------------------------------------------------------

/// Dense 3×3 tensor, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    pub fn identity() -> Mat3 {
        let mut m = Mat3::ZERO;
        for i in 0..3 {
            m.0[i][i] = 1.0;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Mat3 {
        let mut m = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Outer product `a ⊗ b`.
    pub fn outer(a: &Vec3, b: &Vec3) -> Mat3 {
        Mat3::from_fn(|i, j| a.0[i] * b.0[j])
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn sym(&self) -> Mat3 {
        Mat3::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]))
    }

    pub fn skew(&self) -> Mat3 {
        Mat3::from_fn(|i, j| 0.5 * (self.0[i][j] - self.0[j][i]))
    }

    /// Deviatoric part `X − tr(X)/3 · id`.
    pub fn dev(&self) -> Mat3 {
        let t = self.trace() / 3.0;
        Mat3::from_fn(|i, j| self.0[i][j] - if i == j { t } else { 0.0 })
    }

    pub fn dev_sym(&self) -> Mat3 {
        self.sym().dev()
    }

    pub fn add(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + other.0[i][j])
    }

    pub fn sub(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - other.0[i][j])
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn matmul(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|a| self.0[i][a] * other.0[a][j]).sum())
    }

    pub fn matvec(&self, v: &Vec3) -> Vec3 {
        Vec3([
            self.0[0][0] * v.0[0] + self.0[0][1] * v.0[1] + self.0[0][2] * v.0[2],
            self.0[1][0] * v.0[0] + self.0[1][1] * v.0[1] + self.0[1][2] * v.0[2],
            self.0[2][0] * v.0[0] + self.0[2][1] * v.0[1] + self.0[2][2] * v.0[2],
        ])
    }

    /// Frobenius inner product `⟨X, Y⟩ = X_ij Y_ij`.
    pub fn inner(&self, other: &Mat3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * other.0[i][j];
            }
        }
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Adjugate via the cofactor formula; polynomial in the entries, no
    /// inversion involved.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let cof = |i: usize, j: usize| -> f64 {
            let r = [(i + 1) % 3, (i + 2) % 3];
            let c = [(j + 1) % 3, (j + 2) % 3];
            m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        };
        // adj(M)_ij = cofactor_ji
        Mat3::from_fn(|i, j| cof(j, i))
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_sym(&self) -> bool {
        self.skew().max_abs() <= tol::PREDICATE
    }

    pub fn is_skew(&self) -> bool {
        self.sym().max_abs() <= tol::PREDICATE
    }

    pub fn is_tracefree(&self) -> bool {
        self.trace().abs() <= tol::PREDICATE
    }
}

// ---------------------------------------------------------------------------
// Ten3
// ---------------------------------------------------------------------------

/// Dense 3×3×3 tensor, row-major storage: component (i,j,k) at `9i + 3j + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ten3(pub [f64; 27]);

impl Ten3 {
    pub const ZERO: Ten3 = Ten3([0.0; 27]);

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize) -> f64) -> Ten3 {
        let mut t = Ten3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.0[9 * i + 3 * j + k] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0[9 * i + 3 * j + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.0[9 * i + 3 * j + k] = v;
    }

    pub fn inner(&self, other: &Ten3) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn sub(&self, other: &Ten3) -> Ten3 {
        Ten3::from_fn(|i, j, k| self.get(i, j, k) - other.get(i, j, k))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Slice (·,·,k) as a matrix, e.g. `∂_k F` out of a second gradient.
    pub fn slice_k(&self, k: usize) -> Mat3 {
        Mat3::from_fn(|i, j| self.get(i, j, k))
    }
}

/// The Levi-Civita tensor `eps_ijk e_i ⊗ e_j ⊗ e_k`.
pub fn levi_civita() -> Ten3 {
    Ten3::from_fn(eps)
}

// ---------------------------------------------------------------------------
// axl / anti / Cartan split
// ---------------------------------------------------------------------------

/// `anti(a)_ij = −eps_ijk a_k`, the skew tensor with `anti(a) v = a × v`.
pub fn anti(a: &Vec3) -> Mat3 {
    Mat3::from_fn(|i, j| -(0..3).map(|k| eps(i, j, k) * a.0[k]).sum::<f64>())
}

/// Axial vector of a skew tensor. Errors when the input is not skew within
/// the predicate tolerance.
pub fn axl(a: &Mat3) -> Result<Vec3> {
    if !a.is_skew() {
        return Err(Error::Precondition(format!(
            "axl needs a skew argument, |sym| = {:.3e}",
            a.sym().max_abs()
        )));
    }
    Ok(axl_skew(a))
}

/// `axl(skew(X))` for arbitrary X: components `−½ X_ab eps_abk`.
pub fn axl_skew(x: &Mat3) -> Vec3 {
    let mut v = [0.0; 3];
    for (k, out) in v.iter_mut().enumerate() {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                s += x.0[a][b] * eps(a, b, k);
            }
        }
        *out = -0.5 * s;
    }
    Vec3(v)
}

/// Orthogonal Cartan split of a second order tensor: trace-free symmetric
/// part, skew part, and spherical coefficient.
#[derive(Debug, Clone, Copy)]
pub struct CartanParts {
    pub devsym: Mat3,
    pub skew: Mat3,
    pub spherical: f64,
}

impl CartanParts {
    pub fn reconstruct(&self) -> Mat3 {
        let mut m = self.devsym.add(&self.skew);
        for i in 0..3 {
            m.0[i][i] += self.spherical;
        }
        m
    }
}

pub fn cartan_decompose(x: &Mat3) -> CartanParts {
    CartanParts {
        devsym: x.dev_sym(),
        skew: x.skew(),
        spherical: x.trace() / 3.0,
    }
}

// ---------------------------------------------------------------------------
// Rotations
// ---------------------------------------------------------------------------

/// A proper rotation: `QᵀQ = id` and `det Q = +1`, both within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    matrix: Mat3,
}

impl Rotation {
    pub fn new(matrix: Mat3) -> Result<Rotation> {
        let ortho = matrix
            .transpose()
            .matmul(&matrix)
            .sub(&Mat3::identity())
            .max_abs();
        if ortho > tol::ALGEBRAIC {
            return Err(Error::NotARotation(format!(
                "|QᵀQ − id| = {ortho:.3e}"
            )));
        }
        let det = matrix.det();
        if (det - 1.0).abs() > tol::ALGEBRAIC {
            return Err(Error::NotARotation(format!("det Q = {det}")));
        }
        Ok(Rotation { matrix })
    }

    pub fn identity() -> Rotation {
        Rotation {
            matrix: Mat3::identity(),
        }
    }

    /// Rotation from an integer quaternion, normalized by `‖q‖²`. Entries are
    /// exact rationals so the orthogonality residual stays at machine epsilon.
    pub fn from_integer_quaternion(q: [i64; 4]) -> Result<Rotation> {
        if q == [0, 0, 0, 0] {
            return Err(Error::Usage("zero quaternion".into()));
        }
        let [w, x, y, z] = [q[0] as f64, q[1] as f64, q[2] as f64, q[3] as f64];
        let n = w * w + x * x + y * y + z * z;
        let m = Mat3([
            [
                (w * w + x * x - y * y - z * z) / n,
                2.0 * (x * y - w * z) / n,
                2.0 * (x * z + w * y) / n,
            ],
            [
                2.0 * (x * y + w * z) / n,
                (w * w - x * x + y * y - z * z) / n,
                2.0 * (y * z - w * x) / n,
            ],
            [
                2.0 * (x * z - w * y) / n,
                2.0 * (y * z + w * x) / n,
                (w * w - x * x - y * y + z * z) / n,
            ],
        ]);
        Rotation::new(m)
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn transpose(&self) -> Rotation {
        Rotation {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.matrix.matvec(v)
    }
}

/// Rayleigh product on rank 2: `Q * T = Q T Qᵀ`.
pub fn rayleigh_mat(q: &Rotation, t: &Mat3) -> Mat3 {
    q.matrix().matmul(t).matmul(&q.matrix().transpose())
}

/// Rayleigh product on rank 3: `(Q * T)_ijk = Q_ia Q_jb Q_kc T_abc`.
pub fn rayleigh_ten3(q: &Rotation, t: &Ten3) -> Ten3 {
    let qm = &q.matrix().0;
    Ten3::from_fn(|i, j, k| {
        let mut s = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    s += qm[i][a] * qm[j][b] * qm[k][c] * t.get(a, b, c);
                }
            }
        }
        s
    })
}

/// Residuals of the three Levi-Civita contraction identities for a given
/// matrix. For any proper rotation all three vanish to machine precision;
/// for a non-rotation they are O(1), which is what makes the check useful.
#[derive(Debug, Clone, Copy)]
pub struct LeviCivitaResiduals {
    /// `eps_ijk − Q_ia Q_jb Q_kc eps_abc`
    pub cubic: f64,
    /// `eps_ijk − Q_ai Q_bj Q_ck eps_abc`
    pub cubic_transposed: f64,
    /// `Q_mi eps_ibc − Q_jb Q_kc eps_jkm`
    pub linear_vs_quadratic: f64,
}

impl LeviCivitaResiduals {
    pub fn max(&self) -> f64 {
        self.cubic.max(self.cubic_transposed).max(self.linear_vs_quadratic)
    }
}

pub fn levi_civita_identity_check(q: &Mat3) -> LeviCivitaResiduals {
    let mut cubic = 0.0f64;
    let mut cubic_t = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut s = 0.0;
                let mut st = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            let e = eps(a, b, c);
                            s += q.0[i][a] * q.0[j][b] * q.0[k][c] * e;
                            st += q.0[a][i] * q.0[b][j] * q.0[c][k] * e;
                        }
                    }
                }
                cubic = cubic.max((eps(i, j, k) - s).abs());
                cubic_t = cubic_t.max((eps(i, j, k) - st).abs());
            }
        }
    }
    let mut lin_quad = 0.0f64;
    for m in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let lhs: f64 = (0..3).map(|i| q.0[m][i] * eps(i, b, c)).sum();
                let mut rhs = 0.0;
                for j in 0..3 {
                    for k in 0..3 {
                        rhs += q.0[j][b] * q.0[k][c] * eps(j, k, m);
                    }
                }
                lin_quad = lin_quad.max((lhs - rhs).abs());
            }
        }
    }
    LeviCivitaResiduals {
        cubic,
        cubic_transposed: cubic_t,
        linear_vs_quadratic: lin_quad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn inner_products() {
        assert_eq!(Mat3::identity().inner(&Mat3::identity()), 3.0);
        // brute-force oracle: sum of squared permutation symbols
        let mut brute = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    brute += eps(i, j, k) * eps(i, j, k);
                }
            }
        }
        assert_eq!(brute, 6.0);
        assert_eq!(levi_civita().inner(&levi_civita()), brute);
    }

    #[test]
    fn inner_equals_trace_form() {
        let mut rng = 1234567u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for _ in 0..10 {
            let x = Mat3::from_fn(|_, _| next());
            let y = Mat3::from_fn(|_, _| next());
            let tr = x.matmul(&y.transpose()).trace();
            assert!(approx(x.inner(&y), tr, 1e-12));
        }
    }

    #[test]
    fn cartan_examples() {
        let parts = cartan_decompose(&Mat3::identity());
        assert!(parts.devsym.max_abs() <= 1e-15);
        assert!(parts.skew.max_abs() <= 1e-15);
        assert!(approx(parts.spherical, 1.0, 1e-15));

        let a = anti(&Vec3::new(0.0, 0.0, 1.0));
        let parts = cartan_decompose(&a);
        assert!(parts.devsym.max_abs() <= 1e-15);
        assert!(parts.skew.sub(&a).max_abs() <= 1e-15);
        assert!(approx(parts.spherical, 0.0, 1e-15));

        // X = e1 ⊗ e2: hand evaluation of sym/skew/tr
        let x = Mat3::outer(&Vec3::new(1.0, 0.0, 0.0), &Vec3::new(0.0, 1.0, 0.0));
        let parts = cartan_decompose(&x);
        let mut devsym = Mat3::ZERO;
        devsym.0[0][1] = 0.5;
        devsym.0[1][0] = 0.5;
        let mut skew = Mat3::ZERO;
        skew.0[0][1] = 0.5;
        skew.0[1][0] = -0.5;
        assert!(parts.devsym.sub(&devsym).max_abs() <= 1e-15);
        assert!(parts.skew.sub(&skew).max_abs() <= 1e-15);
        assert_eq!(parts.spherical, 0.0);
    }

    #[test]
    fn anti_matches_paper_layout() {
        let a = Vec3::new(1.0, 2.0, 3.0);
        let m = anti(&a);
        let expected = Mat3([[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]]);
        assert!(m.sub(&expected).max_abs() <= 1e-15);
        assert_eq!(axl(&m).unwrap(), a);
    }

    #[test]
    fn axl_rejects_non_skew() {
        assert!(axl(&Mat3::identity()).is_err());
    }

    #[test]
    fn axl_skew_examples() {
        // symmetric input maps to zero
        let s = Mat3::from_fn(|i, j| (i + j) as f64);
        assert!(axl_skew(&s).max_abs() <= 1e-15);
        // e1 ⊗ e2: −½ X_ab eps_abk by hand gives (0, 0, −½)
        let x = Mat3::outer(&Vec3::new(1.0, 0.0, 0.0), &Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(axl_skew(&x), Vec3::new(0.0, 0.0, -0.5));
    }

    #[test]
    fn quaternion_rotations() {
        let id = Rotation::from_integer_quaternion([1, 0, 0, 0]).unwrap();
        assert!(id.matrix().sub(&Mat3::identity()).max_abs() <= 1e-15);

        // (1,1,0,0): 90° about e1, by the quaternion formula by hand
        let r = Rotation::from_integer_quaternion([1, 1, 0, 0]).unwrap();
        let expected = Mat3([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]);
        assert!(r.matrix().sub(&expected).max_abs() <= 1e-15);

        // projective property
        let a = Rotation::from_integer_quaternion([2, 1, 0, 0]).unwrap();
        let b = Rotation::from_integer_quaternion([-2, -1, 0, 0]).unwrap();
        assert!(a.matrix().sub(b.matrix()).max_abs() <= 1e-15);

        assert!(Rotation::from_integer_quaternion([0, 0, 0, 0]).is_err());
    }

    #[test]
    fn levi_civita_identities() {
        let id = Mat3::identity();
        assert_eq!(levi_civita_identity_check(&id).max(), 0.0);

        let q = Rotation::from_integer_quaternion([1, 2, 2, 0]).unwrap();
        assert!(levi_civita_identity_check(q.matrix()).max() <= 1e-12);

        // mutation check: 2·id is not a rotation; the cubic identity residual
        // is |1 − 8| = 7 on permutation entries
        let res = levi_civita_identity_check(&Mat3::identity().scale(2.0));
        assert!(approx(res.cubic, 7.0, 1e-12));
        assert!(res.max() > 0.1);
    }

    #[test]
    fn rayleigh_examples() {
        let q = Rotation::from_integer_quaternion([3, 1, -2, 5]).unwrap();
        assert!(rayleigh_mat(&q, &Mat3::identity())
            .sub(&Mat3::identity())
            .max_abs()
            <= 1e-15);

        // the Levi-Civita tensor is isotropic of order 3
        assert!(rayleigh_ten3(&q, &levi_civita())
            .sub(&levi_civita())
            .max_abs()
            <= 1e-12);

        // Q = 90° about e3 maps e1⊗e2⊗e3 to d1⊗d2⊗e3 with d1 = e2, d2 = −e1
        let q = Rotation::from_integer_quaternion([1, 0, 0, 1]).unwrap();
        let t = Ten3::from_fn(|i, j, k| {
            if (i, j, k) == (0, 1, 2) {
                1.0
            } else {
                0.0
            }
        });
        let rotated = rayleigh_ten3(&q, &t);
        let expected = Ten3::from_fn(|i, j, k| {
            // e2 ⊗ (−e1) ⊗ e3
            if (i, j, k) == (1, 0, 2) {
                -1.0
            } else {
                0.0
            }
        });
        assert!(rotated.sub(&expected).max_abs() <= 1e-12);
    }

    fn arb_quat() -> impl Strategy<Value = [i64; 4]> {
        prop::array::uniform4(-5i64..=5)
            .prop_filter("nonzero", |q| *q != [0, 0, 0, 0])
    }

    fn arb_mat() -> impl Strategy<Value = Mat3> {
        prop::array::uniform32(-2.0f64..2.0).prop_map(|v| Mat3::from_fn(|i, j| v[3 * i + j]))
    }

    proptest! {
        #[test]
        fn cartan_parts_orthogonal_and_reconstruct(m in arb_mat()) {
            let p = cartan_decompose(&m);
            prop_assert!(p.reconstruct().sub(&m).max_abs() <= 1e-14 * (1.0 + m.max_abs()));
            prop_assert!(p.devsym.trace().abs() <= 1e-14);
            prop_assert!(p.skew.add(&p.skew.transpose()).max_abs() <= 1e-15);
            let sph = Mat3::identity().scale(p.spherical);
            prop_assert!(p.devsym.inner(&p.skew).abs() <= 1e-13);
            prop_assert!(p.devsym.inner(&sph).abs() <= 1e-13);
            prop_assert!(p.skew.inner(&sph).abs() <= 1e-13);
        }

        #[test]
        fn anti_acts_as_cross_product(a in prop::array::uniform3(-2.0f64..2.0),
                                      v in prop::array::uniform3(-2.0f64..2.0)) {
            let a = Vec3(a);
            let v = Vec3(v);
            let lhs = anti(&a).matvec(&v);
            let rhs = a.cross(&v);
            prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-14);
        }

        #[test]
        fn anti_axl_round_trip(m in arb_mat()) {
            let a = m.skew();
            let back = anti(&axl(&a).unwrap());
            prop_assert!(back.sub(&a).max_abs() <= 1e-14);
        }

        #[test]
        fn rational_rotations_satisfy_levi_civita(q in arb_quat()) {
            let r = Rotation::from_integer_quaternion(q).unwrap();
            prop_assert!(levi_civita_identity_check(r.matrix()).max() <= 1e-12);
        }

        #[test]
        fn rayleigh_round_trip(q in arb_quat(), m in arb_mat()) {
            let r = Rotation::from_integer_quaternion(q).unwrap();
            let back = rayleigh_mat(&r.transpose(), &rayleigh_mat(&r, &m));
            prop_assert!(back.sub(&m).max_abs() <= 1e-12);

            let t = Ten3::from_fn(|i, j, k| m.0[i][j] * (k as f64 - 1.0));
            let back = rayleigh_ten3(&r.transpose(), &rayleigh_ten3(&r, &t));
            prop_assert!(back.sub(&t).max_abs() <= 1e-12);
        }
    }
}
