//! Open subsets of ℝⁿ with stratified boundaries.
//!
//! Every stratum carries its own interior side, so the interior predicate of a
//! domain is the conjunction of the strata's sign conditions. Orthant faces are
//! modelled as full coordinate hyperplanes.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::numerics::scalar::{fmt_rational, int, rat, Rational, Scalar};
use crate::numerics::{LinPoly, Matrix, Poly};

/// Half-width of the box used for boundary sampling and the grid oracle.
pub const DEFAULT_BOX: f64 = 3.0;

#[derive(Clone, Debug, PartialEq)]
pub enum Stratum {
    /// A removed point; the interior is its complement.
    Point(Vec<Rational>),
    /// `ℓ·x = c`; the interior side is `ℓ·x > c`.
    Hyperplane { normal: Vec<Rational>, offset: Rational },
    /// `x₁ = yᵀQy + l·y + c` with `y = (x₂, …, xₙ)`; the interior side is
    /// `x₁ > q(y)`.
    QuadricGraph {
        quad: Matrix<Rational>,
        linear: Vec<Rational>,
        constant: Rational,
    },
}

fn dot_f64(a: &[Rational], x: &[f64]) -> (f64, f64) {
    a.iter().zip(x).fold((0.0, 0.0), |(s, m), (a, x)| {
        let t = a.to_f64() * x;
        (s + t, m + t.abs())
    })
}

impl Stratum {
    pub fn dim(&self) -> usize {
        match self {
            Stratum::Point(p) => p.len(),
            Stratum::Hyperplane { normal, .. } => normal.len(),
            Stratum::QuadricGraph { linear, .. } => linear.len() + 1,
        }
    }

    /// Defining value and the sum of magnitudes of its terms.
    fn defining(&self, x: &[f64]) -> (f64, f64) {
        match self {
            Stratum::Point(p) => {
                let d = p.iter().zip(x).map(|(p, x)| (x - p.to_f64()).abs()).fold(0.0, f64::max);
                let m = p.iter().zip(x).map(|(p, x)| p.magnitude() + x.abs()).sum();
                (d, m)
            }
            Stratum::Hyperplane { normal, offset } => {
                let (s, m) = dot_f64(normal, x);
                (s - offset.to_f64(), m + offset.magnitude())
            }
            Stratum::QuadricGraph { quad, linear, constant } => {
                let y = &x[1..];
                let mut q = 0.0;
                let mut m = x[0].abs() + constant.magnitude();
                for i in 0..y.len() {
                    for j in 0..y.len() {
                        let t = quad[(i, j)].to_f64() * y[i] * y[j];
                        q += t;
                        m += t.abs();
                    }
                }
                let (l, lm) = dot_f64(linear, y);
                (x[0] - q - l - constant.to_f64(), m + lm)
            }
        }
    }

    /// Scale-relative distance from `x` to the stratum's defining equations.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let (v, m) = self.defining(x);
        v.abs() / m.max(1.0)
    }

    /// Strict interior-side predicate.
    pub fn interior_side(&self, x: &[f64]) -> bool {
        self.defining(x).0 > 0.0
    }

    /// A point of the stratum, with free coordinates drawn from `[−r, r]`.
    pub fn sample(&self, rng: &mut impl Rng, r: f64) -> Vec<f64> {
        match self {
            Stratum::Point(p) => p.iter().map(Scalar::to_f64).collect(),
            Stratum::Hyperplane { normal, offset } => {
                let n = normal.len();
                let pivot = pivot_of(normal);
                let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
                let rest: f64 = (0..n).filter(|&j| j != pivot).map(|j| normal[j].to_f64() * x[j]).sum();
                x[pivot] = (offset.to_f64() - rest) / normal[pivot].to_f64();
                x
            }
            Stratum::QuadricGraph { .. } => {
                let mut x: Vec<f64> = (0..self.dim()).map(|_| rng.gen_range(-r..=r)).collect();
                x[0] = 0.0;
                let (v, _) = self.defining(&x);
                x[0] = -v;
                x
            }
        }
    }

    /// Exact coordinates of the stratum as polynomials in its parameters.
    fn parametrization(&self) -> Vec<Poly> {
        match self {
            Stratum::Point(p) => p.iter().map(|c| Poly::constant(0, c.clone())).collect(),
            Stratum::Hyperplane { normal, offset } => {
                let n = normal.len();
                let pivot = pivot_of(normal);
                let vars = n - 1;
                let param = |j: usize| if j < pivot { j } else { j - 1 };
                let mut solved = Poly::constant(vars, offset / &normal[pivot]);
                for j in (0..n).filter(|&j| j != pivot) {
                    let coef = -(&normal[j] / &normal[pivot]);
                    solved = solved.add(&Poly::var(vars, param(j)).scale(&coef));
                }
                (0..n)
                    .map(|j| {
                        if j == pivot {
                            solved.clone()
                        } else {
                            Poly::var(vars, param(j))
                        }
                    })
                    .collect()
            }
            Stratum::QuadricGraph { .. } => {
                let vars = self.dim() - 1;
                let mut coords = vec![self.graph_poly()];
                coords.extend((0..vars).map(|j| Poly::var(vars, j)));
                coords
            }
        }
    }

    /// `q(y)` as an exact polynomial.
    fn graph_poly(&self) -> Poly {
        let Stratum::QuadricGraph { quad, linear, constant } = self else {
            unreachable!("graph_poly on a non-quadric stratum");
        };
        let vars = linear.len();
        let mut q = Poly::constant(vars, constant.clone());
        for (j, l) in linear.iter().enumerate() {
            q = q.add(&Poly::var(vars, j).scale(l));
        }
        for i in 0..vars {
            for j in 0..vars {
                q = q.add(&Poly::var(vars, i).mul(&Poly::var(vars, j)).scale(&quad[(i, j)]));
            }
        }
        q
    }

    /// Normal covector along the parametrization; `None` for points.
    fn normal_polys(&self) -> Option<Vec<Poly>> {
        match self {
            Stratum::Point(_) => None,
            Stratum::Hyperplane { normal, .. } => {
                let vars = normal.len() - 1;
                Some(normal.iter().map(|c| Poly::constant(vars, c.clone())).collect())
            }
            Stratum::QuadricGraph { .. } => {
                let vars = self.dim() - 1;
                let q = self.graph_poly();
                let mut g = vec![Poly::constant(vars, Rational::one())];
                g.extend((0..vars).map(|j| q.derivative(j).scale(&int(-1))));
                Some(g)
            }
        }
    }

    /// Identities in the unknowns `(M row-major, b)` expressing that the field
    /// `x ↦ Mx + b` is tangent to the stratum.
    pub fn tangency_identities(&self) -> Vec<LinPoly> {
        let n = self.dim();
        let unknowns = n * n + n;
        let x = self.parametrization();
        let vars = x[0].vars();
        let component = |r: usize| {
            let mut f = LinPoly::unknown_times(unknowns, n * n + r, &Poly::constant(vars, Rational::one()));
            for (c, xc) in x.iter().enumerate() {
                f = f.add(&LinPoly::unknown_times(unknowns, r * n + c, xc));
            }
            f
        };
        match self.normal_polys() {
            None => (0..n).map(component).collect(),
            Some(g) => {
                let mut f = LinPoly::zero(vars, unknowns);
                for (r, gr) in g.iter().enumerate() {
                    f = f.add(&component(r).mul_poly(gr));
                }
                vec![f]
            }
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let v = |xs: &[Rational]| xs.iter().map(fmt_rational).collect::<Vec<_>>();
        match self {
            Stratum::Point(p) => serde_json::json!({ "point": v(p) }),
            Stratum::Hyperplane { normal, offset } => serde_json::json!({
                "hyperplane": { "normal": v(normal), "offset": fmt_rational(offset) }
            }),
            Stratum::QuadricGraph { quad, linear, constant } => serde_json::json!({
                "quadric-graph": {
                    "quad": quad.to_rows().iter().map(|r| v(r)).collect::<Vec<_>>(),
                    "linear": v(linear),
                    "constant": fmt_rational(constant),
                }
            }),
        }
    }
}

fn pivot_of(normal: &[Rational]) -> usize {
    normal
        .iter()
        .position(|c| !c.is_zero())
        .expect("hyperplane normal is nonzero")
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    name: String,
    dim: usize,
    strata: Vec<Stratum>,
    witness: Vec<Rational>,
    symmetries: Vec<AffineMap<Rational>>,
    expected_dim: Option<usize>,
    note: String,
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[i] = Rational::one();
    e
}

/// Spec catalog names accepted by [`DomainSpec::from_name`], for listing.
pub const DOMAIN_NAMES: [&str; 8] = [
    "punctured:1",
    "punctured:2",
    "punctured:3",
    "orthant:1",
    "orthant:2",
    "parabola",
    "punctured-plane",
    "whole",
];

impl DomainSpec {
    pub fn new(name: impl Into<String>, dim: usize, strata: Vec<Stratum>, witness: Vec<Rational>) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            dim,
            strata,
            witness,
            symmetries: Vec::new(),
            expected_dim: None,
            note: String::new(),
        };
        if spec.witness.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: spec.witness.len(),
            });
        }
        if let Some(s) = spec.strata.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        if !spec.contains(&spec.witness_f64()) {
            return Err(Error::InvalidParameter(format!(
                "witness of `{}` is not interior",
                spec.name
            )));
        }
        Ok(spec)
    }

    fn with_symmetries(mut self, symmetries: Vec<AffineMap<Rational>>) -> Self {
        self.symmetries = symmetries;
        self
    }

    fn with_expected_dim(mut self, d: usize) -> Self {
        self.expected_dim = Some(d);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn whole(n: usize) -> Self {
        Self::new(format!("whole:{n}"), n, vec![], vec![Rational::zero(); n])
            .expect("origin is interior to the whole space")
            .with_expected_dim(n * n + n)
    }

    /// `{x | ℓ·x > c}`.
    pub fn half_space(name: impl Into<String>, normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        let n = normal.len();
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter("half-space normal must be nonzero".into()));
        }
        let norm2: Rational = normal.iter().map(|c| c * c).sum();
        let witness: Vec<Rational> = normal.iter().map(|c| c * (&offset + int(1)) / &norm2).collect();
        Self::new(name, n, vec![Stratum::Hyperplane { normal, offset }], witness)
            .map(|s| s.with_expected_dim(1 + (n - 1) + (n - 1) * n))
    }

    /// `ℝⁿ` minus the first `k` points of the frame `0, e₁, …, eₙ`.
    pub fn punctured(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 || k > n + 1 {
            return Err(Error::InvalidParameter(format!(
                "punctured:{k} needs 1 <= k <= n+1 with n = {n}"
            )));
        }
        let mut points = vec![vec![Rational::zero(); n]];
        points.extend((0..n).map(|i| unit(n, i)));
        let strata = points.into_iter().take(k).map(Stratum::Point).collect();
        let witness = vec![rat(1, 3); n];
        Ok(Self::new(format!("punctured:{k}"), n, strata, witness)?.with_expected_dim(n * (n + 1 - k)))
    }

    /// `{x₁ > 0, …, xᵢ > 0}`.
    pub fn orthant(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::InvalidParameter(format!(
                "orthant:{i} needs i <= n with n = {n}"
            )));
        }
        let strata = (0..i)
            .map(|k| Stratum::Hyperplane {
                normal: unit(n, k),
                offset: Rational::zero(),
            })
            .collect();
        let mut symmetries = Vec::new();
        if i >= 2 {
            let swap = Matrix::from_fn(n, n, |r, c| {
                let (r2, c2) = (if r < 2 { 1 - r } else { r }, c);
                if r2 == c2 {
                    int(1)
                } else {
                    int(0)
                }
            });
            symmetries.push(AffineMap::linear_map(swap)?);
        }
        if i < n {
            let mut d = vec![int(1); n];
            d[n - 1] = int(-1);
            symmetries.push(AffineMap::linear_map(Matrix::diagonal(&d))?);
        }
        Ok(Self::new(format!("orthant:{i}"), n, strata, vec![int(1); n])?
            .with_symmetries(symmetries)
            .with_expected_dim(i + i * (n - i) + (n - i) * (n - i + 1)))
    }

    /// `{x₁ > yᵀQy + l·y + c}`.
    pub fn quadric_interior(
        name: impl Into<String>,
        quad: Matrix<Rational>,
        linear: Vec<Rational>,
        constant: Rational,
    ) -> Result<Self> {
        let n = linear.len() + 1;
        if quad.rows() != n - 1 || quad.cols() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: quad.rows(),
            });
        }
        let mut witness = vec![Rational::zero(); n];
        witness[0] = &constant + int(1);
        Self::new(name, n, vec![Stratum::QuadricGraph { quad, linear, constant }], witness)
    }

    /// Interior of the parabola `x₁ = (x₂² − 1)/2`.
    pub fn parabola() -> Self {
        Self::quadric_interior("parabola", Matrix::diagonal(&[rat(1, 2)]), vec![int(0)], rat(-1, 2))
            .expect("parabola data is consistent")
            .with_symmetries(vec![
                AffineMap::linear_map(Matrix::diagonal(&[int(1), int(-1)])).expect("reflection is invertible")
            ])
            .with_expected_dim(2)
    }

    pub fn punctured_plane() -> Self {
        let mut s = Self::punctured(2, 1).expect("punctured plane is valid");
        s.name = "punctured-plane".into();
        s.with_note(
            "the developing map onto the punctured plane is not injective, so the \
             correspondence between its stabilizer and the affine group of the \
             connection does not follow from the stabilizer criterion; only the \
             point-stabilizer algebra is computed",
        )
    }

    /// Catalog lookup: `punctured:<k>`, `orthant:<i>`, `whole`, `parabola`,
    /// `punctured-plane`. `n` defaults to 2.
    pub fn from_name(name: &str, n: Option<usize>) -> Result<Self> {
        let plane_only = |s: Self| match n {
            Some(m) if m != 2 => Err(Error::InvalidParameter(format!("`{name}` lives in the plane"))),
            _ => Ok(s),
        };
        let n_or_2 = n.unwrap_or(2);
        let index = |prefix: &str| -> Result<usize> {
            name[prefix.len()..]
                .parse()
                .map_err(|_| Error::UnknownName(name.into()))
        };
        match name {
            "parabola" => plane_only(Self::parabola()),
            "punctured-plane" => plane_only(Self::punctured_plane()),
            "whole" => Ok(Self::whole(n_or_2)),
            s if s.starts_with("punctured:") => Self::punctured(n_or_2, index("punctured:")?),
            s if s.starts_with("orthant:") => Self::orthant(n_or_2, index("orthant:")?),
            _ => Err(Error::UnknownName(name.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn witness_f64(&self) -> Vec<f64> {
        self.witness.iter().map(Scalar::to_f64).collect()
    }

    /// Known discrete symmetries, used to build non-identity-component samples.
    pub fn symmetries(&self) -> &[AffineMap<Rational>] {
        &self.symmetries
    }

    /// Closed-form dimension of the stabilizer algebra, when known.
    pub fn expected_dim(&self) -> Option<usize> {
        self.expected_dim
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn has_point_strata(&self) -> bool {
        self.strata.iter().any(|s| matches!(s, Stratum::Point(_)))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim && x.iter().all(|v| v.is_finite()) && self.strata.iter().all(|s| s.interior_side(x))
    }

    /// Membership in the closure up to a scale-relative tolerance. Removed
    /// points do not change the closure.
    pub fn closure_contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim
            && x.iter().all(|v| v.is_finite())
            && self.strata.iter().all(|s| match s {
                Stratum::Point(_) => true,
                _ => {
                    let (v, m) = s.defining(x);
                    v >= -tol * m.max(1.0)
                }
            })
    }

    /// Smallest stratum residual, or infinity when there is no boundary.
    pub fn boundary_residual(&self, x: &[f64]) -> f64 {
        self.strata.iter().map(|s| s.residual(x)).fold(f64::INFINITY, f64::min)
    }
}

impl Serialize for DomainSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "name": self.name,
            "dim": self.dim,
            "strata": self.strata.iter().map(Stratum::to_json).collect::<Vec<_>>(),
            "witness": self.witness.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
        .serialize(s)
    }
}
