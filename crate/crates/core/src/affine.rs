//! Classical affine transformations `x ↦ A·x + v` of ℝⁿ and affine frames.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::numerics::scalar::{parse_rational, Rational, Scalar};
use crate::numerics::Matrix;

/// Relative determinant threshold for floating linear parts.
pub const SINGULARITY_RTOL: f64 = 1e-12;

/// Invertible affine map of ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<T = f64> {
    linear: Matrix<T>,
    translation: Vec<T>,
}

/// Result of fitting an affine map to frame images. `singular` is set when the
/// images do not themselves form a frame.
#[derive(Clone, Debug)]
pub struct FrameFit<T> {
    pub map: AffineMap<T>,
    pub singular: bool,
}

fn is_singular_matrix<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    let det = a.determinant()?;
    if T::EXACT {
        return Ok(det.is_zero());
    }
    let scale = a.max_abs();
    Ok(det.magnitude() <= SINGULARITY_RTOL * scale.powi(a.rows() as i32))
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(linear: Matrix<T>, translation: Vec<T>) -> Result<Self> {
        let map = Self::from_parts(linear, translation)?;
        if map.is_singular() {
            return Err(Error::Singular);
        }
        Ok(map)
    }

    /// Shape-checked constructor that tolerates a singular linear part.
    pub fn from_parts(linear: Matrix<T>, translation: Vec<T>) -> Result<Self> {
        if !linear.is_square() || linear.rows() == 0 {
            return Err(Error::Shape("linear part must be a non-empty square matrix".into()));
        }
        if translation.len() != linear.rows() {
            return Err(Error::DimensionMismatch {
                expected: linear.rows(),
                found: translation.len(),
            });
        }
        Ok(Self { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: Matrix::identity(n),
            translation: vec![T::zero(); n],
        }
    }

    pub fn translation_by(v: Vec<T>) -> Self {
        Self {
            linear: Matrix::identity(v.len()),
            translation: v,
        }
    }

    pub fn linear_map(a: Matrix<T>) -> Result<Self> {
        let n = a.rows();
        Self::new(a, vec![T::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &Matrix<T> {
        &self.linear
    }

    pub fn translation(&self) -> &[T] {
        &self.translation
    }

    pub fn is_singular(&self) -> bool {
        is_singular_matrix(&self.linear).unwrap_or(true)
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let ax = self.linear.mul_vec(x)?;
        Ok(ax
            .into_iter()
            .zip(&self.translation)
            .map(|(a, v)| a + v.clone())
            .collect())
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let linear = self.linear.mul(&other.linear)?;
        let translation = self.apply(&other.translation)?;
        Ok(Self { linear, translation })
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let inv = self.linear.inverse()?;
        let t = inv.mul_vec(&self.translation)?;
        Ok(Self {
            linear: inv,
            translation: t.into_iter().map(|v| -v).collect(),
        })
    }

    /// Sign of `det A`.
    pub fn orientation_sign(&self) -> Result<i8> {
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let det = self.linear.determinant()?;
        Ok(if det.to_f64() > 0.0 { 1 } else { -1 })
    }

    /// `(n+1)×(n+1)` matrix `[[A, v], [0, 1]]`.
    pub fn augmented(&self) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n + 1, n + 1, |r, c| match (r < n, c < n) {
            (true, true) => self.linear[(r, c)].clone(),
            (true, false) => self.translation[r].clone(),
            (false, false) => T::one(),
            (false, true) => T::zero(),
        })
    }

    /// Reads back the top block rows of an augmented matrix.
    pub fn from_augmented(m: &Matrix<T>) -> Result<Self> {
        if !m.is_square() || m.rows() < 2 {
            return Err(Error::Shape("augmented matrix must be square".into()));
        }
        let n = m.rows() - 1;
        let linear = Matrix::from_fn(n, n, |r, c| m[(r, c)].clone());
        let translation = (0..n).map(|r| m[(r, n)].clone()).collect();
        Self::new(linear, translation)
    }

    pub fn to_f64(&self) -> AffineMap<f64> {
        AffineMap {
            linear: self.linear.to_f64(),
            translation: self.translation.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Unique affine map with `T(frame[i]) = images[i]`.
    ///
    /// Solves the `(n²+n)`-unknown system row-major in `A` followed by `v`.
    pub fn from_frame_images(frame: &AffineFrame<T>, images: &[Vec<T>]) -> Result<FrameFit<T>> {
        let n = frame.dim();
        if images.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|q| q.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let unknowns = n * n + n;
        let mut system = Matrix::zeros(unknowns, unknowns);
        let mut rhs = Vec::with_capacity(unknowns);
        for (i, p) in frame.points().iter().enumerate() {
            for r in 0..n {
                let eq = i * n + r;
                for (c, pc) in p.iter().enumerate() {
                    system[(eq, r * n + c)] = pc.clone();
                }
                system[(eq, n * n + r)] = T::one();
                rhs.push(images[i][r].clone());
            }
        }
        let sol = system.solve(&rhs).map_err(|_| Error::InvalidFrame)?;
        let linear = Matrix::from_fn(n, n, |r, c| sol[r * n + c].clone());
        let translation = sol[n * n..].to_vec();
        let map = Self::from_parts(linear, translation)?;
        let singular = map.is_singular();
        Ok(FrameFit { map, singular })
    }
}

impl AffineMap<f64> {
    /// Largest entrywise difference between augmented matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.augmented()
            .sub(&other.augmented())
            .map(|m| m.max_abs())
            .unwrap_or(f64::INFINITY)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let num = |v: &serde_json::Value| -> Result<f64> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_f64()
                    .ok_or_else(|| Error::InvalidParameter(format!("bad number {n}"))),
                serde_json::Value::String(s) => parse_rational(s)
                    .map(|r| r.to_f64())
                    .or_else(|| s.parse().ok())
                    .ok_or_else(|| Error::InvalidParameter(format!("bad number {s}"))),
                other => Err(Error::InvalidParameter(format!("bad number {other}"))),
            }
        };
        let linear = value["linear"]
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("missing `linear`".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::InvalidParameter("row is not an array".into()))?
                    .iter()
                    .map(num)
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let translation = value["translation"]
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("missing `translation`".into()))?
            .iter()
            .map(num)
            .collect::<Result<Vec<f64>>>()?;
        let map = Self::new(Matrix::from_rows(linear)?, translation)?;
        if let Some(d) = value.get("dim").and_then(|d| d.as_u64()) {
            if d as usize != map.dim() {
                return Err(Error::DimensionMismatch {
                    expected: d as usize,
                    found: map.dim(),
                });
            }
        }
        Ok(map)
    }
}

impl AffineMap<Rational> {
    pub fn from_i64(linear: &[&[i64]], translation: &[i64]) -> Result<Self> {
        let rows = linear
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect();
        Self::new(
            Matrix::from_rows(rows)?,
            translation.iter().map(|&v| Rational::from_i64(v)).collect(),
        )
    }
}

impl<T: Scalar> Serialize for AffineMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let linear: Vec<Vec<serde_json::Value>> = self
            .linear
            .to_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_json).collect())
            .collect();
        let translation: Vec<serde_json::Value> = self.translation.iter().map(Scalar::to_json).collect();
        let mut st = s.serialize_struct("AffineMap", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("linear", &linear)?;
        st.serialize_field("translation", &translation)?;
        st.end()
    }
}

/// `n+1` points whose difference vectors from the first form a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFrame<T = f64> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> AffineFrame<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let n = points.len().checked_sub(1).ok_or(Error::InvalidFrame)?;
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidFrame);
        }
        let frame = Self { points };
        if is_singular_matrix(&frame.basis_matrix())? {
            return Err(Error::InvalidFrame);
        }
        Ok(frame)
    }

    /// `0, e₁, …, eₙ`.
    pub fn standard(n: usize) -> Self {
        let mut points = vec![vec![T::zero(); n]];
        for i in 0..n {
            let mut e = vec![T::zero(); n];
            e[i] = T::one();
            points.push(e);
        }
        Self { points }
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// Vectors `v_k = p_k - p_0`, `k = 1..n`.
    pub fn vectors(&self) -> Vec<Vec<T>> {
        let p0 = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| a.clone() - b.clone()).collect())
            .collect()
    }

    /// Matrix with the frame vectors as columns.
    fn basis_matrix(&self) -> Matrix<T> {
        let v = self.vectors();
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| v[c][r].clone())
    }

    pub fn images(&self, t: &AffineMap<T>) -> Result<Vec<Vec<T>>> {
        self.points.iter().map(|p| t.apply(p)).collect()
    }
}
