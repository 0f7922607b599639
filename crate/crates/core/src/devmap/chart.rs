//! Global coordinate charts of the catalog Lie groups.

use rand::Rng;

use crate::numerics::Matrix;

/// Sampling box half-width for additive charts.
pub const ADDITIVE_SAMPLE_RADIUS: f64 = 2.0;
/// Sampling range of the first coordinate of the affine-line chart.
pub const AFFINE_LINE_SAMPLE_X: (f64, f64) = (0.1, 4.0);

/// The group ℝⁿ under addition, or `Aff(ℝ)₀ ≅ ℝ^{>0} × ℝ` with
/// `(a, b)(c, d) = (ac, ad + b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupChart {
    Additive { dim: usize },
    AffineLine,
}

impl GroupChart {
    pub fn plane() -> Self {
        GroupChart::Additive { dim: 2 }
    }

    pub fn name(&self) -> String {
        match self {
            GroupChart::Additive { dim } => format!("R^{dim}"),
            GroupChart::AffineLine => "Aff(R)_0".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupChart::Additive { dim } => *dim,
            GroupChart::AffineLine => 2,
        }
    }

    pub fn identity(&self) -> Vec<f64> {
        match self {
            GroupChart::Additive { dim } => vec![0.0; *dim],
            GroupChart::AffineLine => vec![1.0, 0.0],
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim()
            && p.iter().all(|v| v.is_finite())
            && match self {
                GroupChart::Additive { .. } => true,
                GroupChart::AffineLine => p[0] > 0.0,
            }
    }

    /// Distance to the edge of the chart domain (infinite for ℝⁿ).
    pub fn boundary_distance(&self, p: &[f64]) -> f64 {
        match self {
            GroupChart::Additive { .. } => f64::INFINITY,
            GroupChart::AffineLine => p[0],
        }
    }

    pub fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        match self {
            GroupChart::Additive { .. } => g.iter().zip(h).map(|(a, b)| a + b).collect(),
            GroupChart::AffineLine => vec![g[0] * h[0], g[0] * h[1] + g[1]],
        }
    }

    pub fn inverse(&self, g: &[f64]) -> Vec<f64> {
        match self {
            GroupChart::Additive { .. } => g.iter().map(|v| -v).collect(),
            GroupChart::AffineLine => vec![1.0 / g[0], -g[1] / g[0]],
        }
    }

    /// Deterministic draw from the chart's sampling region.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        match self {
            GroupChart::Additive { dim } => (0..*dim)
                .map(|_| rng.gen_range(-ADDITIVE_SAMPLE_RADIUS..=ADDITIVE_SAMPLE_RADIUS))
                .collect(),
            GroupChart::AffineLine => {
                let (lo, hi) = AFFINE_LINE_SAMPLE_X;
                // (lo, hi]
                let x = hi - rng.gen_range(0.0..(hi - lo));
                vec![x, rng.gen_range(-2.0..=2.0)]
            }
        }
    }

    /// Columns are the left-invariant fields `dL_p(eᵢ)` at `p`.
    pub fn left_frame(&self, p: &[f64]) -> Matrix<f64> {
        match self {
            GroupChart::Additive { dim } => Matrix::identity(*dim),
            // L_(a,b)(x, y) = (ax, ay + b) has Jacobian a·I.
            GroupChart::AffineLine => Matrix::diagonal(&[p[0], p[0]]),
        }
    }

    /// `∂ᵢ` of the inverse of [`left_frame`](Self::left_frame).
    pub fn left_frame_inverse_derivative(&self, p: &[f64], i: usize) -> Matrix<f64> {
        match self {
            GroupChart::Additive { dim } => Matrix::zeros(*dim, *dim),
            GroupChart::AffineLine => {
                if i == 0 {
                    let d = -1.0 / (p[0] * p[0]);
                    Matrix::diagonal(&[d, d])
                } else {
                    Matrix::zeros(2, 2)
                }
            }
        }
    }
}
