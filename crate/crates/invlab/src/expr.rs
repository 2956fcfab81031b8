//! Closed-form scalar expressions over ℝ³ with exact differentiation.
//!
//! The node set is deliberately small: constants, coordinates, sums,
//! products, integer powers, sine and cosine. Differentiation is closed over
//! this set and evaluation is finite at every finite point (no division, no
//! logs). Trig nodes exist solely so that non-constant rotation fields can be
//! represented exactly; everything else in the crate is polynomial.
//!
//! Simplification is limited to constant folding and zero/one elimination.

use std::fmt;
use std::sync::Arc;

/// Evaluation point in ℝ³.
pub type Point = [f64; 3];

#[derive(Debug)]
enum Node {
    Const(f64),
    /// Coordinate x_i, 0-based axis.
    Coord(usize),
    Sum(Vec<ScalarExpr>),
    Product(Vec<ScalarExpr>),
    Pow(ScalarExpr, u32),
    Sin(ScalarExpr),
    Cos(ScalarExpr),
}

/// Immutable scalar field expression; clones are cheap (shared DAG).
#[derive(Clone, Debug)]
pub struct ScalarExpr(Arc<Node>);

impl ScalarExpr {
    pub fn constant(c: f64) -> ScalarExpr {
        ScalarExpr(Arc::new(Node::Const(c)))
    }

    pub fn zero() -> ScalarExpr {
        ScalarExpr::constant(0.0)
    }

    pub fn one() -> ScalarExpr {
        ScalarExpr::constant(1.0)
    }

    /// Coordinate x_i for axis in 0..3.
    pub fn coord(axis: usize) -> ScalarExpr {
        assert!(axis < 3, "axis out of range");
        ScalarExpr(Arc::new(Node::Coord(axis)))
    }

    pub fn as_const(&self) -> Option<f64> {
        match &*self.0 {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_const(&self, v: f64) -> bool {
        self.as_const() == Some(v)
    }

    pub fn sum(terms: Vec<ScalarExpr>) -> ScalarExpr {
        let mut acc = 0.0;
        let mut rest: Vec<ScalarExpr> = Vec::new();
        for t in terms {
            match &*t.0 {
                Node::Const(c) => acc += c,
                Node::Sum(inner) => {
                    for s in inner {
                        match s.as_const() {
                            Some(c) => acc += c,
                            None => rest.push(s.clone()),
                        }
                    }
                }
                _ => rest.push(t),
            }
        }
        if acc != 0.0 {
            rest.push(ScalarExpr::constant(acc));
        }
        match rest.len() {
            0 => ScalarExpr::zero(),
            1 => rest.pop().unwrap(),
            _ => ScalarExpr(Arc::new(Node::Sum(rest))),
        }
    }

    pub fn product(factors: Vec<ScalarExpr>) -> ScalarExpr {
        let mut acc = 1.0;
        let mut rest: Vec<ScalarExpr> = Vec::new();
        for f in factors {
            match &*f.0 {
                Node::Const(c) => acc *= c,
                Node::Product(inner) => {
                    for g in inner {
                        match g.as_const() {
                            Some(c) => acc *= c,
                            None => rest.push(g.clone()),
                        }
                    }
                }
                _ => rest.push(f),
            }
        }
        if acc == 0.0 {
            return ScalarExpr::zero();
        }
        if acc != 1.0 {
            rest.insert(0, ScalarExpr::constant(acc));
        }
        match rest.len() {
            0 => ScalarExpr::one(),
            1 => rest.pop().unwrap(),
            _ => ScalarExpr(Arc::new(Node::Product(rest))),
        }
    }

    pub fn powi(&self, n: u32) -> ScalarExpr {
        match n {
            0 => ScalarExpr::one(),
            1 => self.clone(),
            _ => match self.as_const() {
                Some(c) => ScalarExpr::constant(c.powi(n as i32)),
                None => ScalarExpr(Arc::new(Node::Pow(self.clone(), n))),
            },
        }
    }

    pub fn sin(&self) -> ScalarExpr {
        match self.as_const() {
            Some(c) => ScalarExpr::constant(c.sin()),
            None => ScalarExpr(Arc::new(Node::Sin(self.clone()))),
        }
    }

    pub fn cos(&self) -> ScalarExpr {
        match self.as_const() {
            Some(c) => ScalarExpr::constant(c.cos()),
            None => ScalarExpr(Arc::new(Node::Cos(self.clone()))),
        }
    }

    pub fn scale(&self, s: f64) -> ScalarExpr {
        ScalarExpr::product(vec![ScalarExpr::constant(s), self.clone()])
    }

    pub fn neg(&self) -> ScalarExpr {
        self.scale(-1.0)
    }

    /// Exact partial derivative with respect to coordinate `axis` (0-based).
    pub fn diff(&self, axis: usize) -> ScalarExpr {
        assert!(axis < 3, "axis out of range");
        match &*self.0 {
            Node::Const(_) => ScalarExpr::zero(),
            Node::Coord(i) => {
                if *i == axis {
                    ScalarExpr::one()
                } else {
                    ScalarExpr::zero()
                }
            }
            Node::Sum(terms) => ScalarExpr::sum(terms.iter().map(|t| t.diff(axis)).collect()),
            Node::Product(factors) => {
                let mut terms = Vec::with_capacity(factors.len());
                for k in 0..factors.len() {
                    let dk = factors[k].diff(axis);
                    if dk.is_const(0.0) {
                        continue;
                    }
                    let mut fs: Vec<ScalarExpr> = factors.clone();
                    fs[k] = dk;
                    terms.push(ScalarExpr::product(fs));
                }
                ScalarExpr::sum(terms)
            }
            Node::Pow(base, n) => {
                let db = base.diff(axis);
                if db.is_const(0.0) {
                    return ScalarExpr::zero();
                }
                ScalarExpr::product(vec![
                    ScalarExpr::constant(*n as f64),
                    base.powi(n - 1),
                    db,
                ])
            }
            Node::Sin(a) => ScalarExpr::product(vec![a.cos(), a.diff(axis)]),
            Node::Cos(a) => ScalarExpr::product(vec![a.sin().neg(), a.diff(axis)]),
        }
    }

    /// Pointwise evaluation.
    pub fn eval(&self, p: &Point) -> f64 {
        match &*self.0 {
            Node::Const(c) => *c,
            Node::Coord(i) => p[*i],
            Node::Sum(terms) => terms.iter().map(|t| t.eval(p)).sum(),
            Node::Product(factors) => factors.iter().map(|f| f.eval(p)).product(),
            Node::Pow(base, n) => base.eval(p).powi(*n as i32),
            Node::Sin(a) => a.eval(p).sin(),
            Node::Cos(a) => a.eval(p).cos(),
        }
    }

    /// Replace each coordinate x_i by `repl[i]`. Exact, no sampling.
    pub fn substitute(&self, repl: &[ScalarExpr; 3]) -> ScalarExpr {
        match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Coord(i) => repl[*i].clone(),
            Node::Sum(terms) => {
                ScalarExpr::sum(terms.iter().map(|t| t.substitute(repl)).collect())
            }
            Node::Product(factors) => {
                ScalarExpr::product(factors.iter().map(|f| f.substitute(repl)).collect())
            }
            Node::Pow(base, n) => base.substitute(repl).powi(*n),
            Node::Sin(a) => a.substitute(repl).sin(),
            Node::Cos(a) => a.substitute(repl).cos(),
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(c) => write!(f, "{c}"),
            Node::Coord(i) => write!(f, "x{}", i + 1),
            Node::Sum(terms) => {
                write!(f, "(")?;
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Node::Product(factors) => {
                write!(f, "(")?;
                for (k, t) in factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Node::Pow(b, n) => write!(f, "{b}^{n}"),
            Node::Sin(a) => write!(f, "sin({a})"),
            Node::Cos(a) => write!(f, "cos({a})"),
        }
    }
}

impl std::ops::Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::sum(vec![self, rhs])
    }
}

impl std::ops::Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::sum(vec![self, rhs.neg()])
    }
}

impl std::ops::Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::product(vec![self, rhs])
    }
}

#[cfg(test)]
pub(crate) fn central_difference(e: &ScalarExpr, p: &Point, axis: usize, h: f64) -> f64 {
    let mut hi = *p;
    let mut lo = *p;
    hi[axis] += h;
    lo[axis] -= h;
    (e.eval(&hi) - e.eval(&lo)) / (2.0 * h)
}
