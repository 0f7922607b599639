//! Geodesics `ẍᵏ + Γᵏᵢⱼ ẋⁱ ẋʲ = 0` and the exponential map.
//!
//! Each output interval is covered by RK4 substeps whose size is halved until
//! a full step and two half steps agree. A solution that escapes to infinity
//! in finite time therefore shows up as a collapsing substep or an exploding
//! state rather than as a silently wrong number.

use super::connection::Connection;
use crate::error::{Error, Result};
use crate::numerics::rk4_step;

/// Relative agreement required between one full step and two half steps.
pub const LOCAL_RTOL: f64 = 1e-12;
/// States beyond this norm count as having left every chart.
pub const BLOW_UP_NORM: f64 = 1e8;
/// Smallest substep relative to the output interval.
const MIN_SUBSTEP_FRACTION: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
}

impl GeodesicPath {
    pub fn end(&self) -> &[f64] {
        self.positions.last().expect("a path has at least its initial point")
    }
}

fn vector_field<'a, C: Connection + ?Sized>(conn: &'a C) -> impl Fn(f64, &[f64]) -> Vec<f64> + 'a {
    let n = conn.dim();
    move |_, s: &[f64]| {
        let (x, v) = s.split_at(n);
        let mut out = v.to_vec();
        out.extend(conn.christoffel_at(x).acceleration(v));
        out
    }
}

fn admissible<C: Connection + ?Sized>(conn: &C, s: &[f64]) -> bool {
    let n = conn.dim();
    s.iter().all(|v| v.is_finite())
        && s.iter().map(|v| v * v).sum::<f64>().sqrt() < BLOW_UP_NORM
        && conn.contains(&s[..n])
}

/// Advances `s` from `t` by `dt`, subdividing adaptively.
fn advance<C: Connection + ?Sized>(conn: &C, t: f64, s: &[f64], dt: f64) -> Result<Vec<f64>> {
    let f = vector_field(conn);
    let min_h = dt.abs() * MIN_SUBSTEP_FRACTION;
    let mut state = s.to_vec();
    let mut elapsed = 0.0;
    let mut h = dt;
    while (dt - elapsed).abs() > dt.abs() * 1e-15 {
        if (elapsed + h - dt) * dt.signum() > 0.0 {
            h = dt - elapsed;
        }
        let full = rk4_step(&f, t + elapsed, &state, h);
        let half = rk4_step(&f, t + elapsed, &state, h / 2.0);
        let ok_half = admissible(conn, &half);
        let two = if ok_half {
            rk4_step(&f, t + elapsed + h / 2.0, &half, h / 2.0)
        } else {
            half.clone()
        };
        let ok = ok_half && admissible(conn, &full) && admissible(conn, &two);
        let err = if ok {
            full.iter().zip(&two).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        let scale = 1.0 + two.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if err <= LOCAL_RTOL * scale {
            state = two;
            elapsed += h;
            if err < LOCAL_RTOL * scale / 64.0 {
                h = (2.0 * h).clamp(-dt.abs(), dt.abs());
            }
        } else {
            h /= 2.0;
            if h.abs() < min_h {
                return Err(Error::LeftDomain { time: t + elapsed });
            }
        }
    }
    Ok(state)
}

/// Samples the geodesic through `x0` with velocity `u0` at `steps + 1` evenly
/// spaced times in `[0, t_end]`.
pub fn geodesic<C: Connection + ?Sized>(
    conn: &C,
    x0: &[f64],
    u0: &[f64],
    t_end: f64,
    steps: usize,
) -> Result<GeodesicPath> {
    let n = conn.dim();
    if x0.len() != n || u0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if x0.len() != n { x0.len() } else { u0.len() },
        });
    }
    if steps < 2 {
        return Err(Error::TooFewSteps(steps));
    }
    let mut s: Vec<f64> = x0.iter().chain(u0).copied().collect();
    if !admissible(conn, &s) {
        return Err(Error::LeftDomain { time: 0.0 });
    }
    let dt = t_end / steps as f64;
    let mut path = GeodesicPath {
        times: vec![0.0],
        positions: vec![x0.to_vec()],
        velocities: vec![u0.to_vec()],
    };
    for k in 0..steps {
        let t = k as f64 * dt;
        s = advance(conn, t, &s, dt)?;
        path.times.push((k + 1) as f64 * dt);
        path.positions.push(s[..n].to_vec());
        path.velocities.push(s[n..].to_vec());
    }
    Ok(path)
}

/// Output steps used by [`exp_map`].
pub const EXP_MAP_STEPS: usize = 200;

/// `γ(1)` for the geodesic with `γ(0) = p`, `γ̇(0) = X`.
pub fn exp_map<C: Connection + ?Sized>(conn: &C, p: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    Ok(geodesic(conn, p, x, 1.0, EXP_MAP_STEPS)?.end().to_vec())
}
