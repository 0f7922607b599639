//! Exact stabilizer Lie algebras by tangency constraints.

use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::domain::DomainSpec;
use crate::affine::AffineMap;
use crate::error::Result;
use crate::numerics::scalar::{fmt_rational, Rational, Scalar};
use crate::numerics::{mat_exp, match_coefficients, Matrix, PolySystem, RationalMatrix};
use crate::report::VerificationReport;

/// Highest degree reached by tangency identities (quadric strata give 3).
pub const TANGENCY_DEGREE: u32 = 3;

/// The affine vector field `x ↦ Mx + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineField<T = Rational> {
    pub m: Matrix<T>,
    pub b: Vec<T>,
}

impl<T: Scalar> AffineField<T> {
    pub fn new(m: Matrix<T>, b: Vec<T>) -> Self {
        assert!(m.is_square() && m.rows() == b.len(), "field shape mismatch");
        Self { m, b }
    }

    /// Reads `(M row-major, b)` from a coordinate vector of length `n² + n`.
    pub fn from_coordinates(n: usize, v: &[T]) -> Self {
        Self {
            m: Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()),
            b: v[n * n..].to_vec(),
        }
    }

    pub fn coordinates(&self) -> Vec<T> {
        let mut v = self.m.as_slice().to_vec();
        v.extend(self.b.iter().cloned());
        v
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// `[[M, b], [0, 0]]`.
    pub fn embedded(&self) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n + 1, n + 1, |r, c| match (r < n, c < n) {
            (true, true) => self.m[(r, c)].clone(),
            (true, false) => self.b[r].clone(),
            _ => T::zero(),
        })
    }

    fn from_embedded(m: &Matrix<T>) -> Self {
        let n = m.rows() - 1;
        Self {
            m: Matrix::from_fn(n, n, |r, c| m[(r, c)].clone()),
            b: (0..n).map(|r| m[(r, n)].clone()).collect(),
        }
    }

    pub fn eval(&self, x: &[T]) -> Vec<T> {
        self.m
            .mul_vec(x)
            .expect("field and point dimensions agree")
            .into_iter()
            .zip(&self.b)
            .map(|(a, b)| a + b.clone())
            .collect()
    }

    /// Product in the associative algebra of embedded matrices.
    pub fn matrix_product(&self, other: &Self) -> Self {
        Self::from_embedded(&self.embedded().mul(&other.embedded()).expect("same dimension"))
    }

    /// Commutator of embedded matrices.
    pub fn commutator(&self, other: &Self) -> Self {
        let a = self.embedded();
        let b = other.embedded();
        let ab = a.mul(&b).expect("same dimension");
        let ba = b.mul(&a).expect("same dimension");
        Self::from_embedded(&ab.sub(&ba).expect("same dimension"))
    }

    pub fn to_f64(&self) -> AffineField<f64> {
        AffineField {
            m: self.m.to_f64(),
            b: self.b.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<T: Scalar> Serialize for AffineField<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_json).collect())
            .collect();
        let mut st = s.serialize_struct("AffineField", 2)?;
        st.serialize_field("linear", &rows)?;
        st.serialize_field("translation", &self.b.iter().map(Scalar::to_json).collect::<Vec<_>>())?;
        st.end()
    }
}

/// Time-`t` flow of `x ↦ Mx + b`: the exponential of `t·[[M, b], [0, 0]]`.
pub fn flow_of(field: &AffineField<f64>, t: f64) -> AffineMap<f64> {
    AffineMap::from_augmented(&mat_exp(&field.embedded(), t)).expect("matrix exponentials are invertible")
}

#[derive(Clone, Debug)]
pub struct StabilizerAlgebra {
    domain: DomainSpec,
    constraints: RationalMatrix,
    basis: Vec<AffineField>,
}

impl StabilizerAlgebra {
    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn basis(&self) -> &[AffineField] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rows are the linear constraints on `(M row-major, b)`.
    pub fn constraints(&self) -> &RationalMatrix {
        &self.constraints
    }

    fn basis_matrix(&self) -> RationalMatrix {
        let n = self.domain.dim();
        let cols = n * n + n;
        Matrix::from_fn(self.basis.len(), cols, |r, c| self.basis[r].coordinates()[c].clone())
    }

    /// Whether `field` lies in the span of the basis (exact rank test).
    pub fn contains(&self, field: &AffineField) -> bool {
        let base = self.basis_matrix();
        let mut rows = base.to_rows();
        rows.push(field.coordinates());
        let extended = Matrix::from_rows(rows).expect("rows share a length");
        extended.rank() == base.rank()
    }
}

impl Serialize for StabilizerAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StabilizerAlgebra", 3)?;
        st.serialize_field("domain", self.domain.name())?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

/// Exact nullspace of the tangency constraints of all strata.
pub fn stabilizer_algebra(spec: &DomainSpec) -> Result<StabilizerAlgebra> {
    let n = spec.dim();
    let mut system = PolySystem::new(n * n + n, TANGENCY_DEGREE);
    for stratum in spec.strata() {
        for identity in stratum.tangency_identities() {
            system.push(identity);
        }
    }
    let constraints = match_coefficients(&system)?;
    let basis = constraints
        .exact_nullspace()
        .iter()
        .map(|v| AffineField::from_coordinates(n, v))
        .collect();
    Ok(StabilizerAlgebra {
        domain: spec.clone(),
        constraints,
        basis,
    })
}

/// `(name, computed dimension, closed-form dimension)` per spec.
pub fn algebra_dimension_table(specs: &[DomainSpec]) -> Result<Vec<(String, usize, Option<usize>)>> {
    specs
        .iter()
        .map(|s| Ok((s.name().to_string(), stabilizer_algebra(s)?.dim(), s.expected_dim())))
        .collect()
}

fn label(alg: &StabilizerAlgebra) -> String {
    format!("stabilizer:{}:n{}", alg.domain.name(), alg.domain.dim())
}

/// Computed dimension against the closed form.
pub fn check_dimension(alg: &StabilizerAlgebra) -> VerificationReport {
    let name = format!("{}:dimension", label(alg));
    match alg.domain.expected_dim() {
        Some(want) => {
            let got = alg.dim();
            VerificationReport::exact(name, (got != want).then(|| got.abs_diff(want) as f64))
                .with_note(format!("dim = {got}, closed form = {want}"))
        }
        None => VerificationReport::not_applicable(name, format!("dim = {}, no closed form", alg.dim())),
    }
}

/// Every basis field satisfies every constraint exactly.
pub fn check_tangency(alg: &StabilizerAlgebra) -> VerificationReport {
    let mut worst: Option<f64> = None;
    for f in &alg.basis {
        let image = alg
            .constraints
            .mul_vec(&f.coordinates())
            .expect("constraint width is n²+n");
        for v in image.iter().filter(|v| !v.is_zero()) {
            worst = Some(worst.map_or(v.magnitude(), |w| w.max(v.magnitude())));
        }
    }
    VerificationReport::exact(format!("{}:tangency", label(alg)), worst).with_samples(alg.dim() as u64)
}

fn closure(
    alg: &StabilizerAlgebra,
    check: &str,
    op: impl Fn(&AffineField, &AffineField) -> AffineField,
) -> VerificationReport {
    let mut failures = 0u64;
    let mut first = None;
    for (i, x) in alg.basis.iter().enumerate() {
        for (j, y) in alg.basis.iter().enumerate() {
            if !alg.contains(&op(x, y)) {
                failures += 1;
                first.get_or_insert((i, j));
            }
        }
    }
    let pairs = (alg.dim() * alg.dim()) as u64;
    let mut report = VerificationReport::exact(
        format!("{}:{check}", label(alg)),
        (failures > 0).then_some(failures as f64),
    )
    .with_samples(pairs);
    if let Some((i, j)) = first {
        report = report.with_note(format!(
            "{failures} of {pairs} basis products leave the span, first X{}·X{}",
            i + 1,
            j + 1
        ));
    }
    report
}

/// Closure of the span under the product of embedded matrices `[[M,b],[0,0]]`.
pub fn is_closed_under_matrix_product(alg: &StabilizerAlgebra) -> VerificationReport {
    closure(alg, "matrix-product-closure", |x, y| x.matrix_product(y))
}

/// Closure of the span under the commutator.
pub fn is_lie_subalgebra(alg: &StabilizerAlgebra) -> VerificationReport {
    closure(alg, "lie-closure", |x, y| x.commutator(y))
}

/// Rational constraints rendered for JSON output.
pub fn constraint_rows(alg: &StabilizerAlgebra) -> Vec<Vec<String>> {
    let reduced = alg.constraints.echelon();
    reduced
        .reduced
        .to_rows()
        .into_iter()
        .take(reduced.pivots.len())
        .map(|r| r.iter().map(fmt_rational).collect())
        .collect()
}
