//! Matrix exponential by scaling and squaring with a truncated Taylor series.

use super::matrix::Matrix;

const SCALED_NORM: f64 = 0.5;
const SERIES_RTOL: f64 = 1e-18;
const MAX_TERMS: usize = 60;

/// `exp(t·M)`.
pub fn mat_exp(m: &Matrix<f64>, t: f64) -> Matrix<f64> {
    assert!(m.is_square(), "matrix exponential needs a square matrix");
    let n = m.rows();
    let a = m.scale(&t);
    let norm = a.norm_inf();
    let mut squarings = 0;
    if norm > SCALED_NORM {
        squarings = (norm / SCALED_NORM).log2().ceil() as u32;
    }
    let a = a.scale(&0.5f64.powi(squarings as i32));

    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = term.mul(&a).expect("square").scale(&(1.0 / k as f64));
        result = result.add(&term).expect("same shape");
        if term.norm_inf() < SERIES_RTOL * result.norm_inf() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.mul(&result).expect("square");
    }
    result
}
