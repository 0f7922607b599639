//! Infinitesimal affine transformations of a flat connection.
//!
//! A vector field `X` is infinitesimally affine when its second covariant
//! derivative vanishes: `∇_{∇_Y Z} X = ∇_Y ∇_Z X`. In coordinates, with
//! `(∇ⱼX)ᵏ = ∂ⱼXᵏ + Γᵏⱼₘ Xᵐ`, this reads
//! `∂ᵢ(∇ⱼX)ᵏ + Γᵏᵢₘ (∇ⱼX)ᵐ − Γˡᵢⱼ (∇ₗX)ᵏ = 0` for all `i, j, k`.

use num_traits::{One, Zero};

use super::algebra::AffineField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::devmap::{Connection, DevelopingMap, GroupChart, LeftInvariantConnection};
use crate::error::{Error, Result};
use crate::lsa::Lsa;
use crate::numerics::scalar::Rational;
use crate::numerics::{fd_first, fd_second, match_coefficients, LinPoly, Poly, PolySystem, RationalMatrix};
use crate::report::VerificationReport;

/// Largest polynomial degree accepted by [`solve_infinitesimal`].
pub const MAX_FIELD_DEGREE: u32 = 3;

/// Constant rational Christoffel symbols, `get(k, i, j) = Γᵏᵢⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalChristoffel {
    dim: usize,
    g: Vec<Rational>,
}

impl RationalChristoffel {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            g: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// `Γᵏᵢⱼ = c[i][j][k]`.
    pub fn from_lsa(a: &Lsa) -> Self {
        let n = a.dim();
        let mut g = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    g.g[(k * n + i) * n + j] = a.constant(i, j, k).clone();
                }
            }
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.g[(k * self.dim + i) * self.dim + j]
    }
}

/// A polynomial vector field, one polynomial per component.
pub type PolyField = Vec<Poly>;

fn monomials(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                let used: u32 = m.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
    }
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    out
}

/// The linear system on the coefficients of `X` with degree ≤ `max_degree`.
pub struct InfinitesimalSystem {
    pub monomials: Vec<Vec<u32>>,
    pub constraints: RationalMatrix,
}

impl InfinitesimalSystem {
    pub fn new(gamma: &RationalChristoffel, max_degree: u32) -> Result<Self> {
        if max_degree > MAX_FIELD_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "field degree {max_degree} exceeds {MAX_FIELD_DEGREE}"
            )));
        }
        let n = gamma.dim();
        let monos = monomials(n, max_degree);
        let per = monos.len();
        let unknowns = n * per;
        let x: Vec<LinPoly> = (0..n)
            .map(|k| {
                monos
                    .iter()
                    .enumerate()
                    .fold(LinPoly::zero(n, unknowns), |acc, (m, mono)| {
                        acc.add(&LinPoly::unknown_times(
                            unknowns,
                            k * per + m,
                            &Poly::monomial(mono.clone(), Rational::one()),
                        ))
                    })
            })
            .collect();
        let scaled = |p: &LinPoly, c: &Rational| p.scale(c);
        // (∇ⱼX)ᵏ
        let cov: Vec<Vec<LinPoly>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| (0..n).fold(x[k].derivative(j), |acc, m| acc.add(&scaled(&x[m], gamma.get(k, j, m)))))
                    .collect()
            })
            .collect();
        let mut system = PolySystem::new(unknowns, max_degree);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut e = cov[j][k].derivative(i);
                    for m in 0..n {
                        e = e.add(&scaled(&cov[j][m], gamma.get(k, i, m)));
                    }
                    for l in 0..n {
                        e = e.add(&scaled(&cov[l][k], &-gamma.get(l, i, j).clone()));
                    }
                    system.push(e);
                }
            }
        }
        Ok(Self {
            monomials: monos,
            constraints: match_coefficients(&system)?,
        })
    }

    fn dim(&self) -> usize {
        self.constraints.cols() / self.monomials.len()
    }

    fn field(&self, v: &[Rational]) -> PolyField {
        let n = self.dim();
        let per = self.monomials.len();
        (0..n)
            .map(|k| {
                self.monomials.iter().enumerate().fold(Poly::zero(n), |acc, (m, mono)| {
                    acc.add(&Poly::monomial(mono.clone(), v[k * per + m].clone()))
                })
            })
            .collect()
    }

    /// Exact nullspace as polynomial fields.
    pub fn basis(&self) -> Vec<PolyField> {
        self.constraints
            .exact_nullspace()
            .iter()
            .map(|v| self.field(v))
            .collect()
    }

    /// Coefficient vector of the constant field `e_q`.
    fn constant_field(&self, q: usize) -> Vec<Rational> {
        let per = self.monomials.len();
        let mut v = vec![Rational::zero(); self.constraints.cols()];
        // the zero monomial sorts first
        v[q * per] = Rational::one();
        v
    }

    /// Largest violation of the constant coordinate fields, `None` when all
    /// solve the system exactly.
    pub fn constant_field_violation(&self) -> Option<f64> {
        (0..self.dim())
            .flat_map(|q| {
                self.constraints
                    .mul_vec(&self.constant_field(q))
                    .expect("width matches")
            })
            .filter(|v| !v.is_zero())
            .map(|v| crate::numerics::Scalar::magnitude(&v))
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
    }
}

/// Exact basis of the polynomial infinitesimal affine fields of degree at
/// most `max_degree` for constant symbols.
pub fn solve_infinitesimal(gamma: &RationalChristoffel, max_degree: u32) -> Result<Vec<PolyField>> {
    Ok(InfinitesimalSystem::new(gamma, max_degree)?.basis())
}

/// Constant coordinate fields solve the system of `lsa`'s constant symbols.
pub fn check_constant_fields(lsa: &Lsa, max_degree: u32) -> Result<VerificationReport> {
    let sys = InfinitesimalSystem::new(&RationalChristoffel::from_lsa(lsa), max_degree)?;
    Ok(VerificationReport::exact(
        format!("infinitesimal:{}:constant-fields", lsa.label()),
        sys.constant_field_violation(),
    )
    .with_samples(lsa.dim() as u64)
    .with_note(format!(
        "solution space dimension {} at degree <= {max_degree}",
        sys.basis().len()
    )))
}

/// Finite-difference residual of the defining equation for `field` at
/// `point`, including derivatives of non-constant symbols.
pub fn eq1_residual<C: Connection + ?Sized>(
    conn: &C,
    field: impl Fn(&[f64]) -> Vec<f64>,
    point: &[f64],
    h: f64,
) -> Result<f64> {
    Ok(eq1_terms(conn, field, point, h)?.0)
}

/// Largest residual and largest sum of absolute terms over all components.
fn eq1_terms<C: Connection + ?Sized>(
    conn: &C,
    field: impl Fn(&[f64]) -> Vec<f64>,
    point: &[f64],
    h: f64,
) -> Result<(f64, f64)> {
    let n = conn.dim();
    let x = field(point);
    let gamma = conn.christoffel_at(point);
    let first: Vec<Vec<f64>> = (0..n).map(|i| fd_first(&field, point, i, h)).collect::<Result<_>>()?;
    let dgamma: Vec<Vec<f64>> = (0..n)
        .map(|i| fd_first(|p: &[f64]| conn.christoffel_at(p).as_slice().to_vec(), point, i, h))
        .collect::<Result<_>>()?;
    let g = |k: usize, i: usize, j: usize| gamma.get(k, i, j);
    let dg = |d: usize, k: usize, i: usize, j: usize| dgamma[d][(k * n + i) * n + j];
    // (∇ⱼX)ᵏ
    let cov = |j: usize, k: usize| first[j][k] + (0..n).map(|m| g(k, j, m) * x[m]).sum::<f64>();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let second = fd_second(&field, point, i, j, h)?;
            for k in 0..n {
                // ∂ᵢ(∇ⱼX)ᵏ, then the two connection terms
                let mut terms = vec![second[k]];
                for m in 0..n {
                    terms.push(dg(i, k, j, m) * x[m]);
                    terms.push(g(k, j, m) * first[i][m]);
                    terms.push(g(k, i, m) * cov(j, m));
                    terms.push(-g(m, i, j) * cov(m, k));
                }
                worst = worst.max(terms.iter().sum::<f64>().abs());
                scale = scale.max(terms.iter().map(|t| t.abs()).sum());
            }
        }
    }
    Ok((worst, scale))
}

/// A vector field given by a plain function of the point.
pub type PointField = fn(&[f64]) -> Vec<f64>;

/// Generators of left translations in `chart` coordinates. They are
/// infinitesimally affine for every left-invariant connection.
pub fn left_translation_fields(chart: GroupChart) -> Vec<PointField> {
    match chart {
        GroupChart::Additive { dim: 2 } => vec![|_| vec![1.0, 0.0], |_| vec![0.0, 1.0]],
        GroupChart::Additive { .. } => vec![],
        GroupChart::AffineLine => vec![|p| vec![p[0], p[1]], |_| vec![0.0, 1.0]],
    }
}

/// Points sampled per field by [`check_left_translation_fields`].
pub const LEFT_TRANSLATION_POINTS: usize = 10;

/// Finite-difference residual of the defining equation for the left
/// translation generators of the left-invariant connection of `lsa`,
/// relative to `max(1, Σ|terms|)`.
pub fn check_left_translation_fields(
    lsa: &Lsa,
    chart: GroupChart,
    h: f64,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let conn = LeftInvariantConnection::new(lsa, chart);
    let fields = left_translation_fields(chart);
    if fields.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no translation generators on {}",
            chart.name()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..LEFT_TRANSLATION_POINTS {
        let p = chart.sample(&mut rng);
        for f in &fields {
            let (r, m) = eq1_terms(&conn, f, &p, h)?;
            worst = worst.max(r / m.max(1.0));
        }
    }
    Ok(
        VerificationReport::measured(format!("infinitesimal:{}:left-translations", lsa.label()), worst, tol)
            .with_samples((LEFT_TRANSLATION_POINTS * fields.len()) as u64)
            .with_seed(seed)
            .with_note(format!("h = {h:e}")),
    )
}

/// `X(p) = dD(p)⁻¹ W(D(p))`, the pullback of an affine field through `D`.
pub fn pullback_field<'a>(d: &'a DevelopingMap, w: &'a AffineField<f64>) -> impl Fn(&[f64]) -> Vec<f64> + 'a {
    move |p: &[f64]| {
        let target = w.eval(&d.eval(p));
        d.jacobian(p)
            .solve(&target)
            .unwrap_or_else(|_| vec![f64::NAN; target.len()])
    }
}
