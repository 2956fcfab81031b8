//! Differential operators on field expressions, plus the identity suite.
//!
//! Sign and layout conventions (fixed here, mutation-tested in the suite):
//!
//! * `grad φ = φ,_i e_i`, `Grad u = u_i,_j e_i ⊗ e_j`, `GRAD X = X_ij,_k`;
//! * `div v = v_i,_i`, `Div Y = Y_ij,_j e_i`, `DIV m = m_ijk,_k e_i ⊗ e_j`;
//! * `curl v = −v_a,_b eps_abi e_i`;
//! * `Curl X = −X_ia,_b eps_abj e_i ⊗ e_j`, the row-wise curl.
//!
//! Operators return new expression fields; sampling happens only in suites
//! and probes, so arbitrarily deep compositions stay exact.

use crate::expr::{Point, ScalarExpr};
use crate::field::{axl_skew_field, Mat3Field, Ten3Field, VecField};
use crate::tensor::eps;

pub fn grad_scalar(phi: &ScalarExpr) -> VecField {
    VecField::from_fn(|i| phi.diff(i))
}

pub fn grad_vec(u: &VecField) -> Mat3Field {
    Mat3Field::from_fn(|i, j| u.0[i].diff(j))
}

pub fn grad_ten2(x: &Mat3Field) -> Ten3Field {
    Ten3Field::from_fn(|i, j, k| x.0[i][j].diff(k))
}

pub fn div_vec(v: &VecField) -> ScalarExpr {
    ScalarExpr::sum((0..3).map(|i| v.0[i].diff(i)).collect())
}

pub fn div_ten2(y: &Mat3Field) -> VecField {
    VecField::from_fn(|i| ScalarExpr::sum((0..3).map(|j| y.0[i][j].diff(j)).collect()))
}

pub fn div_ten3(m: &Ten3Field) -> Mat3Field {
    Mat3Field::from_fn(|i, j| ScalarExpr::sum((0..3).map(|k| m.get(i, j, k).diff(k)).collect()))
}

pub fn curl_vec(v: &VecField) -> VecField {
    VecField::from_fn(|i| {
        let mut terms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let e = eps(a, b, i);
                if e != 0.0 {
                    terms.push(v.0[a].diff(b).scale(-e));
                }
            }
        }
        ScalarExpr::sum(terms)
    })
}

pub fn curl_ten2(x: &Mat3Field) -> Mat3Field {
    Mat3Field::from_fn(|i, j| {
        let mut terms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let e = eps(a, b, j);
                if e != 0.0 {
                    terms.push(x.0[i][a].diff(b).scale(-e));
                }
            }
        }
        ScalarExpr::sum(terms)
    })
}

pub fn laplace_scalar(phi: &ScalarExpr) -> ScalarExpr {
    div_vec(&grad_scalar(phi))
}

/// Curvature of the continuum rotation: `k̃ = ½ Grad(curl u)`.
///
/// Equals `Grad(axl skew Grad u)` and `(Curl sym Grad u)ᵀ`, and is trace free.
pub fn curvature(u: &VecField) -> Mat3Field {
    grad_vec(&curl_vec(u)).scale(0.5)
}

/// Incompatibility operator `inc(S) = Curl((Curl S)ᵀ)`; meant for symmetric
/// S and vanishes on compatible strains `S = sym Grad u`.
pub fn inc(s: &Mat3Field) -> Mat3Field {
    curl_ten2(&curl_ten2(s).transpose())
}

/// Dislocation density `Curl P`.
pub fn dislocation_density(p: &Mat3Field) -> Mat3Field {
    curl_ten2(p)
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

/// Normalized deviation of two values: |a − b| / (1 + |b|).
fn normalized(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn mat_residual(lhs: &Mat3Field, rhs: &Mat3Field, p: &Point) -> f64 {
    let l = lhs.eval(p);
    let r = rhs.eval(p);
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max(normalized(l.0[i][j], r.0[i][j]));
        }
    }
    worst
}

fn mat_zero_residual(lhs: &Mat3Field, p: &Point) -> f64 {
    lhs.eval(p).max_abs()
}

pub const IDENTITY_NAMES: [&str; 9] = [
    "curl-grad-scalar-zero",
    "curl-grad-vector-zero",
    "curl-skew-grad",
    "curvature-representations",
    "trace-curvature-zero",
    "cartan-curl-split",
    "div-curl-zero",
    "energy-triple-equality",
    "div3-grad-chain",
];

#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct IdentitySuiteReport {
    pub entries: Vec<IdentityResidual>,
    pub fields: usize,
    pub points: usize,
}

impl IdentitySuiteReport {
    pub fn max_residual(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0f64, |m, e| m.max(e.max_residual))
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_residual() <= tolerance
    }
}

/// A generic non-symmetric matrix field built from the components of `u`,
/// used where an arbitrary second-order argument is needed.
fn cyclic_matrix(u: &VecField) -> Mat3Field {
    Mat3Field::from_fn(|i, j| u.0[(i + j) % 3].clone())
}

/// Evaluates every first-section identity over the corpus at the given
/// points and reports the worst normalized residual per identity.
pub fn identity_suite(corpus: &[VecField], points: &[Point]) -> IdentitySuiteReport {
    let mut worst = [0.0f64; 9];
    for u in corpus {
        let phi = u.component(0).clone();
        let grad_u = grad_vec(u);
        let k = curvature(u);
        let k_v2 = grad_vec(&axl_skew_field(&grad_u));
        let k_v3 = curl_ten2(&grad_u.sym()).transpose();
        let curl_grad_phi = curl_vec(&grad_scalar(&phi));
        let curl_grad_u = curl_ten2(&grad_u);
        let curl_skew = curl_ten2(&grad_u.skew());
        let curl_skew_rhs = k_v2.transpose().scale(-1.0);
        let split = curl_ten2(&grad_u.sym()).add(&curl_ten2(&grad_u.skew()));
        let tr_k = k.trace();
        let x = cyclic_matrix(u);
        let div_curl_x = div_ten2(&curl_ten2(&x));
        let e1 = grad_vec(&curl_vec(u)).norm_sq_expr().scale(0.25);
        let e2 = k_v2.norm_sq_expr();
        let e3 = curl_ten2(&grad_u.sym()).norm_sq_expr();
        let chain_lhs = div_ten3(&grad_ten2(&grad_u));
        let chain_rhs = grad_vec(&div_ten2(&grad_u));

        for p in points {
            worst[0] = worst[0].max(curl_grad_phi.eval(p).max_abs());
            worst[1] = worst[1].max(mat_zero_residual(&curl_grad_u, p));
            worst[2] = worst[2].max(mat_residual(&curl_skew, &curl_skew_rhs, p));
            worst[3] = worst[3]
                .max(mat_residual(&k, &k_v2, p))
                .max(mat_residual(&k, &k_v3, p));
            worst[4] = worst[4].max(tr_k.eval(p).abs());
            worst[5] = worst[5].max(mat_zero_residual(&split, p));
            worst[6] = worst[6].max(div_curl_x.eval(p).max_abs());
            let (a, b, c) = (e1.eval(p), e2.eval(p), e3.eval(p));
            worst[7] = worst[7].max(normalized(a, b)).max(normalized(a, c));
            worst[8] = worst[8].max(mat_residual(&chain_lhs, &chain_rhs, p));
        }
    }
    IdentitySuiteReport {
        entries: IDENTITY_NAMES
            .iter()
            .zip(worst.iter())
            .map(|(name, r)| IdentityResidual {
                name,
                max_residual: *r,
            })
            .collect(),
        fields: corpus.len(),
        points: points.len(),
    }
}
