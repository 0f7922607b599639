//! Classical fourth-order Runge-Kutta stepping.

use crate::error::{Error, Result};

/// Sampled solution of an initial value problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Path {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("a path has at least its initial state")
    }
}

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect()
}

/// One RK4 step of size `dt` from `(t, x)`.
pub fn rk4_step(f: &impl Fn(f64, &[f64]) -> Vec<f64>, t: f64, x: &[f64], dt: f64) -> Vec<f64> {
    let k1 = f(t, x);
    let k2 = f(t + dt / 2.0, &axpy(x, dt / 2.0, &k1));
    let k3 = f(t + dt / 2.0, &axpy(x, dt / 2.0, &k2));
    let k4 = f(t + dt, &axpy(x, dt, &k3));
    x.iter()
        .enumerate()
        .map(|(i, xi)| xi + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Fixed-step integration of `ẋ = f(t, x)` from `t = 0` to `t_end`.
///
/// `inside` is consulted after every step; the first state it rejects (or any
/// non-finite state) aborts with [`Error::LeftDomain`].
pub fn rk4(
    f: impl Fn(f64, &[f64]) -> Vec<f64>,
    x0: &[f64],
    t_end: f64,
    steps: usize,
    inside: impl Fn(&[f64]) -> bool,
) -> Result<Path> {
    if steps < 2 {
        return Err(Error::TooFewSteps(steps));
    }
    let dt = t_end / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(x0.to_vec());
    let mut x = x0.to_vec();
    for s in 0..steps {
        let t = s as f64 * dt;
        x = rk4_step(&f, t, &x, dt);
        let t_next = (s + 1) as f64 * dt;
        if !x.iter().all(|v| v.is_finite()) || !inside(&x) {
            return Err(Error::LeftDomain { time: t_next });
        }
        times.push(t_next);
        states.push(x.clone());
    }
    Ok(Path { times, states })
}
