//! Central finite differences for vector-valued maps.
//!
//! Steps are snapped to the nearest power of two so that `x ± h` is exact for
//! moderately sized dyadic `x`.

use crate::error::{Error, Result};

pub fn snap_step(h: f64) -> f64 {
    assert!(h > 0.0 && h.is_finite(), "finite difference step must be positive");
    2f64.powi(h.log2().round() as i32)
}

fn eval(f: &impl Fn(&[f64]) -> Vec<f64>, x: &[f64]) -> Result<Vec<f64>> {
    let v = f(x);
    if v.iter().all(|c| c.is_finite()) {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("non-finite value at {x:?}")))
    }
}

fn shifted(x: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

/// Central first partial `∂f/∂x_i`.
pub fn fd_first(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], i: usize, h: f64) -> Result<Vec<f64>> {
    let h = snap_step(h);
    let plus = eval(&f, &shifted(x, &[(i, h)]))?;
    let minus = eval(&f, &shifted(x, &[(i, -h)]))?;
    Ok(plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect())
}

/// Central second partial `∂²f/∂x_i∂x_j`, O(h²) accurate.
pub fn fd_second(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], i: usize, j: usize, h: f64) -> Result<Vec<f64>> {
    let h = snap_step(h);
    if i == j {
        let plus = eval(&f, &shifted(x, &[(i, h)]))?;
        let mid = eval(&f, x)?;
        let minus = eval(&f, &shifted(x, &[(i, -h)]))?;
        return Ok((0..mid.len())
            .map(|k| (plus[k] - 2.0 * mid[k] + minus[k]) / (h * h))
            .collect());
    }
    let pp = eval(&f, &shifted(x, &[(i, h), (j, h)]))?;
    let pm = eval(&f, &shifted(x, &[(i, h), (j, -h)]))?;
    let mp = eval(&f, &shifted(x, &[(i, -h), (j, h)]))?;
    let mm = eval(&f, &shifted(x, &[(i, -h), (j, -h)]))?;
    Ok((0..pp.len())
        .map(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h))
        .collect())
}

/// Jacobian `J[k][i] = ∂f_k/∂x_i` by central differences.
pub fn fd_jacobian(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> Result<Vec<Vec<f64>>> {
    let cols: Vec<Vec<f64>> = (0..x.len()).map(|i| fd_first(&f, x, i, h)).collect::<Result<_>>()?;
    let m = cols.first().map_or(0, Vec::len);
    Ok((0..m).map(|k| cols.iter().map(|c| c[k]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_map_has_zero_second_derivative() {
        let f = |x: &[f64]| vec![3.0 * x[0] - 2.0 * x[1] + 1.0];
        for (i, j) in [(0, 0), (0, 1), (1, 1)] {
            let d = fd_second(f, &[0.3, -0.7], i, j, 1e-4).unwrap();
            assert!(d[0].abs() < 1e-10, "{d:?}");
        }
    }

    #[test]
    fn square_at_one() {
        let d = fd_second(|x: &[f64]| vec![x[0] * x[0]], &[1.0], 0, 0, 1e-4).unwrap();
        assert!((d[0] - 2.0).abs() < 1e-6);
    }

    #[test]
    fn d2_second_partial_in_y() {
        // x + y²/2 has ∂²/∂y² = (1, 0)
        let d2 = |p: &[f64]| vec![p[0] + p[1] * p[1] / 2.0, p[1]];
        let d = fd_second(d2, &[0.0, 1.0], 1, 1, 1e-4).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-6 && d[1].abs() < 1e-6);
    }

    #[test]
    fn evaluation_failure_propagates() {
        let f = |x: &[f64]| vec![x[0].ln()];
        assert!(matches!(fd_second(f, &[0.0], 0, 0, 1e-3), Err(Error::Evaluation(_))));
    }

    #[test]
    fn jacobian_of_exponential_pair() {
        let f = |x: &[f64]| vec![x[0].exp(), x[1].exp()];
        let j = fd_jacobian(f, &[0.0, 1.0], 1e-5).unwrap();
        assert!((j[0][0] - 1.0).abs() < 1e-8);
        assert!((j[1][1] - 1f64.exp()).abs() < 1e-8);
        assert!(j[0][1].abs() < 1e-12 && j[1][0].abs() < 1e-12);
    }
}
