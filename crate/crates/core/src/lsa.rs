//! Left-symmetric algebras given by structure constants.
//!
//! A bilinear product `eᵢ·eⱼ = Σₖ c[i][j][k] eₖ` on ℝⁿ defines a left-invariant
//! connection on a Lie group with Lie algebra ℝⁿ. The connection is torsion
//! free when the commutator of the product is the Lie bracket, and flat affine
//! when the product is left symmetric. All checks here run in exact rational
//! arithmetic.

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::devmap::catalog as devcat;
use crate::error::{Error, Result};
use crate::numerics::scalar::{fmt_rational, int, Rational, Scalar};
use crate::numerics::Matrix;
use crate::report::VerificationReport;

/// Catalog names in listing order.
pub const LSA_NAMES: [&str; 12] = ["P1", "P2", "P3", "P4", "P5", "P6", "F1", "F2", "E1", "E2", "E3", "E4"];

#[derive(Clone, Debug, PartialEq)]
pub struct Lsa {
    dim: usize,
    c: Vec<Rational>,
    name: String,
    alpha: Option<Rational>,
}

fn idx(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Largest violation magnitude, `None` when every entry is exactly zero.
fn max_violation<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<f64> {
    values
        .into_iter()
        .filter(|v| !v.is_zero())
        .map(Scalar::magnitude)
        .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[i] = Rational::one();
    e
}

impl Lsa {
    pub fn new(dim: usize, c: Vec<Rational>, name: impl Into<String>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        Ok(Self {
            dim,
            c,
            name: name.into(),
            alpha: None,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
            name: "zero".into(),
            alpha: None,
        }
    }

    /// Builds a product from `(i, j, k, value)` entries meaning `eᵢ·eⱼ ∋ value·eₖ`.
    pub fn from_table(dim: usize, name: &str, entries: &[(usize, usize, usize, Rational)]) -> Self {
        let mut a = Self::zero(dim);
        a.name = name.into();
        for (i, j, k, v) in entries {
            a.c[idx(dim, *i, *j, *k)] += v;
        }
        a
    }

    pub fn with_alpha(mut self, alpha: Rational) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> Option<&Rational> {
        self.alpha.as_ref()
    }

    /// Name with the parameter appended, e.g. `F2(-1)`.
    pub fn label(&self) -> String {
        match &self.alpha {
            Some(a) => format!("{}({})", self.name, fmt_rational(a)),
            None => self.name.clone(),
        }
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[idx(self.dim, i, j, k)]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.c
    }

    pub fn constants_f64(&self) -> Vec<f64> {
        self.c.iter().map(Scalar::to_f64).collect()
    }

    /// `x·y` for coordinate vectors.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[idx(n, i, j, k)];
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[idx(self.dim, i, j, 0)..idx(self.dim, i, j, 0) + self.dim].to_vec()
    }

    /// `(x·y)·z − x·(y·z)`.
    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        sub(
            &self.product(&self.product(x, y), z),
            &self.product(x, &self.product(y, z)),
        )
    }

    fn basis_triples(&self) -> impl Iterator<Item = (Vec<Rational>, Vec<Rational>, Vec<Rational>)> + '_ {
        let n = self.dim;
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (unit(n, i), unit(n, j), unit(n, k)))))
    }
}

impl Serialize for Lsa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let c: Vec<Vec<Vec<String>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| fmt_rational(self.constant(i, j, k))).collect())
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("Lsa", 4)?;
        st.serialize_field("dim", &n)?;
        st.serialize_field("c", &c)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("alpha", &self.alpha.as_ref().map(fmt_rational))?;
        st.end()
    }
}

/// `[eᵢ, eⱼ] = Σₖ b[i][j][k] eₖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBracket {
    dim: usize,
    b: Vec<Rational>,
}

impl LieBracket {
    pub fn new(dim: usize, b: Vec<Rational>) -> Result<Self> {
        if b.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: b.len(),
            });
        }
        Ok(Self { dim, b })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            b: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// The two-dimensional non-abelian bracket `[e₁, e₂] = e₂`.
    pub fn affine_line() -> Self {
        let mut b = Self::abelian(2);
        b.b[idx(2, 0, 1, 1)] = int(1);
        b.b[idx(2, 1, 0, 1)] = int(-1);
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Rational] {
        &self.b
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let xy = &x[i] * &y[j];
                if xy.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &xy * &self.b[idx(n, i, j, k)];
                }
            }
        }
        out
    }

    /// Largest `|b[i][j][k] + b[j][i][k]|`.
    pub fn antisymmetry_residual(&self) -> Option<f64> {
        let n = self.dim;
        let sums: Vec<Rational> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .map(|(i, j, k)| &self.b[idx(n, i, j, k)] + &self.b[idx(n, j, i, k)])
            .collect();
        max_violation(&sums)
    }

    /// Largest Jacobi violation over basis triples.
    pub fn jacobi_residual(&self) -> Option<f64> {
        let n = self.dim;
        let mut all = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (unit(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    all.extend(a.iter().zip(&b).zip(&c).map(|((a, b), c)| a + b + c));
                }
            }
        }
        max_violation(&all)
    }
}

/// Differential of an affine action: basis element `Xᵢ ↦ (Aᵢ, vᵢ)`, the
/// affine vector field `x ↦ Aᵢx + vᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinitesimalAffineRep {
    ambient: usize,
    generators: Vec<(Matrix<Rational>, Vec<Rational>)>,
}

impl InfinitesimalAffineRep {
    pub fn new(ambient: usize, generators: Vec<(Matrix<Rational>, Vec<Rational>)>) -> Result<Self> {
        for (a, v) in &generators {
            if a.rows() != ambient || a.cols() != ambient || v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len().max(a.rows()),
                });
            }
        }
        Ok(Self { ambient, generators })
    }

    pub fn algebra_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[(Matrix<Rational>, Vec<Rational>)] {
        &self.generators
    }

    /// Orbit velocities `wᵢ = Aᵢ·base + vᵢ`.
    pub fn velocities(&self, base: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.generators
            .iter()
            .map(|(a, v)| Ok(a.mul_vec(base)?.into_iter().zip(v).map(|(x, y)| x + y).collect()))
            .collect()
    }
}

pub fn bracket_of(a: &Lsa) -> LieBracket {
    let n = a.dim;
    let mut b = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b[idx(n, i, j, k)] = a.constant(i, j, k) - a.constant(j, i, k);
            }
        }
    }
    LieBracket { dim: n, b }
}

pub fn is_torsion_free_compatible(a: &Lsa, g: &LieBracket) -> Result<VerificationReport> {
    if a.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: g.dim,
        });
    }
    let own = bracket_of(a);
    let diff = sub(&own.b, &g.b);
    Ok(
        VerificationReport::exact(format!("lsa:{}:torsion-free", a.label()), max_violation(&diff))
            .with_samples((a.dim * a.dim * a.dim) as u64),
    )
}

/// Symmetry of the associator in its first two arguments.
pub fn is_left_symmetric(a: &Lsa) -> VerificationReport {
    let mut all = Vec::new();
    for (x, y, z) in a.basis_triples() {
        all.extend(sub(&a.associator(&x, &y, &z), &a.associator(&y, &x, &z)));
    }
    VerificationReport::exact(format!("lsa:{}:left-symmetric", a.label()), max_violation(&all))
        .with_samples((a.dim * a.dim * a.dim) as u64)
}

/// `[X,Y]·Z = X·(Y·Z) − Y·(X·Z)` with the commutator bracket.
pub fn is_flat_compatible(a: &Lsa) -> VerificationReport {
    let g = bracket_of(a);
    let mut all = Vec::new();
    for (x, y, z) in a.basis_triples() {
        let lhs = a.product(&g.bracket(&x, &y), &z);
        let rhs = sub(&a.product(&x, &a.product(&y, &z)), &a.product(&y, &a.product(&x, &z)));
        all.extend(sub(&lhs, &rhs));
    }
    VerificationReport::exact(format!("lsa:{}:flat", a.label()), max_violation(&all))
        .with_samples((a.dim * a.dim * a.dim) as u64)
}

pub fn is_associative(a: &Lsa) -> VerificationReport {
    let mut all = Vec::new();
    for (x, y, z) in a.basis_triples() {
        all.extend(a.associator(&x, &y, &z));
    }
    VerificationReport::exact(format!("lsa:{}:associative", a.label()), max_violation(&all))
        .with_samples((a.dim * a.dim * a.dim) as u64)
}

/// Product read off an étale affine action at `base`: `Xᵢ·Xⱼ = Aᵢ·wⱼ` in the
/// basis of orbit velocities `wⱼ = Aⱼ·base + vⱼ`.
pub fn lsa_from_etale(rep: &InfinitesimalAffineRep, base: &[Rational]) -> Result<Lsa> {
    let n = rep.ambient;
    if base.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: base.len(),
        });
    }
    if rep.algebra_dim() != n {
        return Err(Error::NotEtale);
    }
    let w = rep.velocities(base)?;
    let w_mat = Matrix::from_fn(n, n, |r, c| w[c][r].clone());
    let w_inv = w_mat.inverse().map_err(|_| Error::NotEtale)?;
    let mut c = vec![Rational::zero(); n * n * n];
    for (i, (a_i, _)) in rep.generators.iter().enumerate() {
        for (j, w_j) in w.iter().enumerate() {
            let coords = w_inv.mul_vec(&a_i.mul_vec(w_j)?)?;
            for (k, v) in coords.into_iter().enumerate() {
                c[idx(n, i, j, k)] = v;
            }
        }
    }
    Lsa::new(n, c, "etale")
}

/// `Xᵢ ↦ (λ_{eᵢ}, eᵢ)` with `λ` the left multiplication.
pub fn infinitesimal_rep_from_lsa(a: &Lsa) -> InfinitesimalAffineRep {
    let n = a.dim;
    let generators = (0..n)
        .map(|i| {
            let left = Matrix::from_fn(n, n, |k, j| a.constant(i, j, k).clone());
            (left, unit(n, i))
        })
        .collect();
    InfinitesimalAffineRep { ambient: n, generators }
}

/// Catalog entries. `F1`/`F2` need `alpha`; `F2` rejects `alpha = 0`. The
/// planar entries `P1…P6` are computed from the differentials of the planar
/// étale representations at `D(identity)`.
pub fn catalog_lsa(name: &str, alpha: Option<&Rational>) -> Result<Lsa> {
    let need_alpha = || {
        alpha
            .cloned()
            .ok_or_else(|| Error::InvalidParameter(format!("{name} needs a parameter alpha")))
    };
    let e = |i, j, k, v: i64| (i, j, k, int(v));
    let lsa = match name {
        "F1" => {
            let a = need_alpha()?;
            Lsa::from_table(2, "F1", &[(0, 0, 0, a.clone()), e(0, 1, 1, 1)]).with_alpha(a)
        }
        "F2" => {
            let a = need_alpha()?;
            if a.is_zero() {
                return Err(Error::InvalidParameter("F2 requires alpha != 0".into()));
            }
            Lsa::from_table(
                2,
                "F2",
                &[(0, 0, 0, a.clone()), (0, 1, 1, &a + int(1)), (1, 0, 1, a.clone())],
            )
            .with_alpha(a)
        }
        "E1" => Lsa::from_table(2, "E1", &[e(0, 0, 0, 1), e(0, 0, 1, 1), e(0, 1, 1, 1)]),
        "E2" => Lsa::from_table(2, "E2", &[e(0, 0, 0, -1), e(0, 0, 1, 1), e(1, 0, 1, -1)]),
        "E3" => Lsa::from_table(2, "E3", &[e(0, 0, 0, 2), e(0, 1, 1, 1), e(1, 1, 0, 1)]),
        "E4" => Lsa::from_table(2, "E4", &[e(0, 0, 0, 2), e(0, 1, 1, 1), e(1, 1, 0, -1)]),
        p if p.starts_with('P') => {
            let rep = devcat::planar_rep_for_lsa(p)?;
            lsa_from_etale(rep.differential(), &rep.exact_base())?.with_name(p)
        }
        other => return Err(Error::UnknownName(other.into())),
    };
    Ok(lsa)
}

/// Bracket the catalog entry is meant to be compatible with.
pub fn catalog_bracket(name: &str) -> Result<LieBracket> {
    match name {
        "F1" | "F2" | "E1" | "E2" | "E3" | "E4" => Ok(LieBracket::affine_line()),
        "P1" | "P2" | "P3" | "P4" | "P5" | "P6" => Ok(LieBracket::abelian(2)),
        other => Err(Error::UnknownName(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::rat;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit(n, i)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_of(&Lsa::zero(2)), LieBracket::abelian(2));
        let f1 = catalog_lsa("F1", Some(&rat(3, 2))).unwrap();
        assert_eq!(bracket_of(&f1), LieBracket::affine_line());
        assert_eq!(bracket_of(&catalog_lsa("E3", None).unwrap()), LieBracket::affine_line());
    }

    #[test]
    fn torsion_free_examples() {
        let g = LieBracket::affine_line();
        let f2 = catalog_lsa("F2", Some(&int(2))).unwrap();
        assert!(is_torsion_free_compatible(&f2, &g).unwrap().passed());
        assert!(is_torsion_free_compatible(&Lsa::zero(2), &g).unwrap().failed());
        assert!(is_torsion_free_compatible(&catalog_lsa("E2", None).unwrap(), &g)
            .unwrap()
            .passed());
        assert!(is_torsion_free_compatible(&Lsa::zero(3), &g).is_err());
    }

    #[test]
    fn e3_associator_values() {
        let e3 = catalog_lsa("E3", None).unwrap();
        let a12 = e3.associator(&e(2, 0), &e(2, 1), &e(2, 1));
        let a21 = e3.associator(&e(2, 1), &e(2, 0), &e(2, 1));
        assert_eq!(a12, vec![int(-1), int(0)]);
        assert_eq!(a21, vec![int(-1), int(0)]);
        assert!(is_left_symmetric(&e3).passed());
        // (e₂·e₂)·e₁ = 2e₁ but e₂·(e₂·e₁) = 0
        assert_eq!(
            e3.product(&e3.product(&e(2, 1), &e(2, 1)), &e(2, 0)),
            vec![int(2), int(0)]
        );
        assert!(is_associative(&e3).failed());
    }

    #[test]
    fn non_left_symmetric_product_fails() {
        // e₂·e₂ = e₁, e₁·e₂ = e₂ and e₂·e₁ = e₂ so that the bracket vanishes
        let a = Lsa::from_table(2, "bad", &[(1, 1, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1))]);
        let brute: Vec<_> = (0..2)
            .flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| {
                a.associator(&e(2, i), &e(2, j), &e(2, k)) != a.associator(&e(2, j), &e(2, i), &e(2, k))
            })
            .collect();
        assert!(!brute.is_empty());
        assert!(is_left_symmetric(&a).failed());
        assert_eq!(bracket_of(&a), LieBracket::abelian(2));
    }

    #[test]
    fn zero_product_passes_everything() {
        let z = Lsa::zero(2);
        assert!(is_left_symmetric(&z).passed());
        assert!(is_flat_compatible(&z).passed());
        assert!(is_associative(&z).passed());
    }

    #[test]
    fn perturbed_f1_is_not_flat() {
        let f1 = catalog_lsa("F1", Some(&int(1))).unwrap();
        let mut c = f1.constants().to_vec();
        c[idx(2, 1, 1, 0)] += rat(1, 3);
        let bad = Lsa::new(2, c, "F1-perturbed").unwrap();
        assert!(is_flat_compatible(&bad).failed());
        assert!(is_left_symmetric(&bad).failed());
    }

    #[test]
    fn matrix_algebra_is_associative() {
        // 2×2 matrices [[a, b], [0, 0]] under the matrix product: E11·E11 = E11,
        // E11·E12 = E12, everything else zero.
        let a = Lsa::from_table(2, "block", &[(0, 0, 0, int(1)), (0, 1, 1, int(1))]);
        assert!(is_associative(&a).passed());
        assert!(is_left_symmetric(&a).passed());
    }

    #[test]
    fn catalog_tables() {
        let e1 = catalog_lsa("E1", None).unwrap();
        assert_eq!(e1.basis_product(0, 0), vec![int(1), int(1)]);
        assert_eq!(e1.basis_product(0, 1), vec![int(0), int(1)]);
        assert_eq!(e1.basis_product(1, 0), vec![int(0), int(0)]);
        let f2 = catalog_lsa("F2", Some(&int(-1))).unwrap();
        assert_eq!(f2.basis_product(0, 0), vec![int(-1), int(0)]);
        assert_eq!(f2.basis_product(0, 1), vec![int(0), int(0)]);
        assert_eq!(f2.basis_product(1, 0), vec![int(0), int(-1)]);
        assert!(matches!(
            catalog_lsa("F2", Some(&int(0))),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(catalog_lsa("F1", None), Err(Error::InvalidParameter(_))));
        assert!(matches!(catalog_lsa("Q9", None), Err(Error::UnknownName(_))));
    }

    #[test]
    fn koszul_examples() {
        let z2 = || Matrix::<Rational>::zeros(2, 2);
        // ρ₅ at (1,1)
        let rep5 = InfinitesimalAffineRep::new(
            2,
            vec![
                (Matrix::diagonal(&[int(1), int(0)]), vec![int(0), int(0)]),
                (Matrix::diagonal(&[int(0), int(1)]), vec![int(0), int(0)]),
            ],
        )
        .unwrap();
        let p5 = lsa_from_etale(&rep5, &[int(1), int(1)]).unwrap();
        assert_eq!(p5.basis_product(0, 0), vec![int(1), int(0)]);
        assert_eq!(p5.basis_product(1, 1), vec![int(0), int(1)]);
        assert_eq!(p5.basis_product(0, 1), vec![int(0), int(0)]);
        assert_eq!(p5.basis_product(1, 0), vec![int(0), int(0)]);
        // ρ₃ at (0,1)
        let rep3 = InfinitesimalAffineRep::new(
            2,
            vec![
                (z2(), vec![int(1), int(0)]),
                (Matrix::diagonal(&[int(0), int(1)]), vec![int(0), int(0)]),
            ],
        )
        .unwrap();
        let p3 = lsa_from_etale(&rep3, &[int(0), int(1)]).unwrap();
        assert_eq!(p3, Lsa::from_table(2, "etale", &[(1, 1, 1, int(1))]));
        // ρ₁: translations only
        let rep1 =
            InfinitesimalAffineRep::new(2, vec![(z2(), vec![int(1), int(0)]), (z2(), vec![int(0), int(1)])]).unwrap();
        assert_eq!(
            lsa_from_etale(&rep1, &[int(0), int(0)]).unwrap().constants(),
            Lsa::zero(2).constants()
        );
        // ρ₅ at the origin has zero velocities
        assert!(matches!(lsa_from_etale(&rep5, &[int(0), int(0)]), Err(Error::NotEtale)));
    }

    #[test]
    fn rep_from_lsa_examples() {
        let z = infinitesimal_rep_from_lsa(&Lsa::zero(2));
        assert!(z.generators().iter().all(|(a, _)| a.is_zero()));
        assert_eq!(z.generators()[1].1, vec![int(0), int(1)]);
        let f10 = catalog_lsa("F1", Some(&int(0))).unwrap();
        let r = infinitesimal_rep_from_lsa(&f10);
        assert_eq!(r.generators()[0].0, Matrix::diagonal(&[int(0), int(1)]));
        assert!(r.generators()[1].0.is_zero());
        let e4 = catalog_lsa("E4", None).unwrap();
        let back = lsa_from_etale(&infinitesimal_rep_from_lsa(&e4), &[int(0), int(0)]).unwrap();
        assert_eq!(back.constants(), e4.constants());
    }

    #[test]
    fn json_shape() {
        let f = catalog_lsa("F2", Some(&rat(-1, 2))).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["alpha"], "-1/2");
        assert_eq!(v["c"][0][1][1], "1/2");
        assert_eq!(v["name"], "F2");
    }
}
