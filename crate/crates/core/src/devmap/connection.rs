//! Christoffel symbols of left-invariant connections in chart coordinates.

use super::chart::GroupChart;
use crate::lsa::Lsa;

/// `Γ[k][i][j]`, meaning `∇_{∂ᵢ}∂ⱼ = Σₖ Γᵏᵢⱼ ∂ₖ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Christoffel {
    dim: usize,
    g: Vec<f64>,
}

impl Christoffel {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            g: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.g[(k * self.dim + i) * self.dim + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.g[(k * self.dim + i) * self.dim + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.g
    }

    /// Geodesic acceleration `−Γᵏᵢⱼ vⁱ vʲ`.
    pub fn acceleration(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        (0..n)
            .map(|k| {
                let mut s = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        s += self.get(k, i, j) * v[i] * v[j];
                    }
                }
                -s
            })
            .collect()
    }
}

/// A connection on an open chart domain.
pub trait Connection {
    fn dim(&self) -> usize;

    fn christoffel_at(&self, x: &[f64]) -> Christoffel;

    fn contains(&self, _x: &[f64]) -> bool {
        true
    }

    fn boundary_distance(&self, _x: &[f64]) -> f64 {
        f64::INFINITY
    }
}

impl Connection for Christoffel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn christoffel_at(&self, _x: &[f64]) -> Christoffel {
        self.clone()
    }
}

/// Constant symbols `Γᵏᵢⱼ = c[i][j][k]`, valid when the left-invariant frame is
/// the coordinate frame.
pub fn christoffels_from_lsa(a: &Lsa) -> Christoffel {
    let n = a.dim();
    let mut g = Christoffel::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                g.set(k, i, j, crate::numerics::Scalar::to_f64(a.constant(i, j, k)));
            }
        }
    }
    g
}

/// The left-invariant connection `∇_{X⁺}Y⁺ = (X·Y)⁺` of an LSA on a group chart.
#[derive(Clone, Debug)]
pub struct LeftInvariantConnection {
    chart: GroupChart,
    c: Vec<f64>,
}

impl LeftInvariantConnection {
    pub fn new(a: &Lsa, chart: GroupChart) -> Self {
        assert_eq!(a.dim(), chart.dim(), "LSA and chart dimensions differ");
        Self {
            chart,
            c: a.constants_f64(),
        }
    }

    pub fn chart(&self) -> GroupChart {
        self.chart
    }
}

impl Connection for LeftInvariantConnection {
    fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// With `F` the left-invariant frame and `G = F⁻¹`:
    /// `Γᵏᵢⱼ = Fᵏₐ ∂ᵢGᵃⱼ + Fᵏ_d c[b][a][d] Gᵇᵢ Gᵃⱼ`.
    fn christoffel_at(&self, x: &[f64]) -> Christoffel {
        let n = self.dim();
        let f = self.chart.left_frame(x);
        let g = f.inverse().expect("left-invariant frame is invertible on the chart");
        let dg: Vec<_> = (0..n).map(|i| self.chart.left_frame_inverse_derivative(x, i)).collect();
        let c = |i: usize, j: usize, k: usize| self.c[(i * n + j) * n + k];
        let mut out = Christoffel::zero(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for a in 0..n {
                        s += f[(k, a)] * dg[i][(a, j)];
                        for b in 0..n {
                            let gg = g[(b, i)] * g[(a, j)];
                            if gg == 0.0 {
                                continue;
                            }
                            for d in 0..n {
                                s += f[(k, d)] * c(b, a, d) * gg;
                            }
                        }
                    }
                    out.set(k, i, j, s);
                }
            }
        }
        out
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.chart.contains(x)
    }

    fn boundary_distance(&self, x: &[f64]) -> f64 {
        self.chart.boundary_distance(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsa::catalog_lsa;
    use crate::numerics::scalar::int;

    #[test]
    fn zero_lsa_gives_zero_symbols() {
        let g = christoffels_from_lsa(&Lsa::zero(2));
        assert!(g.as_slice().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn planar_symbols() {
        let p5 = christoffels_from_lsa(&catalog_lsa("P5", None).unwrap());
        let nonzero: Vec<_> = (0..2)
            .flat_map(|k| (0..2).flat_map(move |i| (0..2).map(move |j| (k, i, j))))
            .filter(|&(k, i, j)| p5.get(k, i, j) != 0.0)
            .collect();
        assert_eq!(nonzero, vec![(0, 0, 0), (1, 1, 1)]);
        assert_eq!(p5.get(0, 0, 0), 1.0);
        let p3 = christoffels_from_lsa(&catalog_lsa("P3", None).unwrap());
        assert_eq!(p3.get(1, 1, 1), 1.0);
        assert_eq!(p3.as_slice().iter().filter(|v| **v != 0.0).count(), 1);
    }

    #[test]
    fn affine_line_symbols_closed_form() {
        // Γᵏᵢⱼ = (c[i][j][k] − δᵢ₀δⱼₖ)/x on Aff(ℝ)₀.
        let e3 = catalog_lsa("E3", None).unwrap();
        let conn = LeftInvariantConnection::new(&e3, GroupChart::AffineLine);
        let x = [1.6, 0.3];
        let g = conn.christoffel_at(&x);
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let delta = if i == 0 && j == k { 1.0 } else { 0.0 };
                    let want = (crate::numerics::Scalar::to_f64(e3.constant(i, j, k)) - delta) / x[0];
                    assert!((g.get(k, i, j) - want).abs() < 1e-14);
                }
            }
        }
        let f1 = catalog_lsa("F1", Some(&int(2))).unwrap();
        let g = LeftInvariantConnection::new(&f1, GroupChart::AffineLine).christoffel_at(&[2.0, 0.0]);
        assert!((g.get(0, 0, 0) - 0.5).abs() < 1e-15);
    }
}
