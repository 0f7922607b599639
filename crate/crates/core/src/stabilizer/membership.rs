//! Sampled membership tests for the stabilizer group of an open set.
//!
//! The boundary criterion needs `T(∂𝒪) = ∂𝒪`; together with one interior
//! witness mapped inside it characterizes `T(𝒪) = 𝒪`. The grid oracle tests
//! the latter on a bounded grid through the defining inequalities alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::{flow_of, AffineField};
use super::domain::{DomainSpec, DEFAULT_BOX};
use crate::affine::AffineMap;
use crate::report::VerificationReport;

/// Default membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Boundary points drawn per non-point stratum.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 64;
/// Grid points per axis of the oracle box.
pub const DEFAULT_GRID: usize = 49;

/// Largest distance from `T(x)` (and `T⁻¹(x)`) to the nearest stratum over
/// sampled boundary points `x`.
fn boundary_residual(t: &AffineMap<f64>, spec: &DomainSpec, samples: usize, seed: u64) -> (f64, usize) {
    if spec.strata().is_empty() {
        return (0.0, 0);
    }
    let inv = match t.invert() {
        Ok(inv) => inv,
        Err(_) => return (f64::INFINITY, 0),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for stratum in spec.strata() {
        let draws = if matches!(stratum, super::domain::Stratum::Point(_)) {
            1
        } else {
            samples
        };
        for _ in 0..draws {
            let x = stratum.sample(&mut rng, DEFAULT_BOX);
            for map in [t, &inv] {
                let y = map.apply(&x).expect("dimensions agree");
                let r = spec.boundary_residual(&y);
                worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
            }
            count += 1;
        }
    }
    (worst, count)
}

fn check_dims(t: &AffineMap<f64>, spec: &DomainSpec, check: &str) -> Option<VerificationReport> {
    (t.dim() != spec.dim()).then(|| {
        VerificationReport::verdict(check, false, 1).with_note(format!(
            "map dimension {} differs from domain dimension {}",
            t.dim(),
            spec.dim()
        ))
    })
}

pub fn preserves_boundary(
    t: &AffineMap<f64>,
    spec: &DomainSpec,
    samples: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let check = format!("preserves-boundary:{}", spec.name());
    if let Some(r) = check_dims(t, spec, &check) {
        return r;
    }
    let (residual, count) = boundary_residual(t, spec, samples, seed);
    VerificationReport::measured(check, residual, tol)
        .with_samples(count as u64)
        .with_seed(seed)
}

/// Boundary preservation for `T` and `T⁻¹` plus the interior witness.
pub fn preserves_open_set(
    t: &AffineMap<f64>,
    spec: &DomainSpec,
    samples: usize,
    tol: f64,
    seed: u64,
) -> VerificationReport {
    let check = format!("preserves-open-set:{}", spec.name());
    if let Some(r) = check_dims(t, spec, &check) {
        return r;
    }
    let boundary = preserves_boundary(t, spec, samples, tol, seed);
    let image = t.apply(&spec.witness_f64()).expect("dimensions agree");
    let inside = spec.contains(&image);
    let mut report = VerificationReport::measured(check, boundary.residual.value(), tol)
        .with_samples(boundary.samples)
        .with_seed(seed);
    if !inside {
        report.status = crate::report::Status::Fail;
        report = report.with_note(format!("witness maps to {image:?}, outside"));
    }
    report
}

/// Grid points of `[−box, box]ⁿ` in the closure of `spec`. Odd resolutions
/// put the coordinate hyperplanes on the grid.
fn grid_points(spec: &DomainSpec, resolution: usize) -> Vec<Vec<f64>> {
    let n = spec.dim();
    let steps = resolution.max(2);
    let coord = |k: usize| -DEFAULT_BOX + 2.0 * DEFAULT_BOX * k as f64 / (steps - 1) as f64;
    let total = steps.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let k = idx % steps;
                    idx /= steps;
                    coord(k)
                })
                .collect::<Vec<f64>>()
        })
        .filter(|x| spec.closure_contains(x, 0.0))
        .collect()
}

/// Brute-force check that `T` and `T⁻¹` map every grid point of the closure
/// into the closure, up to [`MEMBERSHIP_TOL`]. For interiors of closed sets
/// this is `T(𝒪) = 𝒪` on the grid; boundary grid points make small
/// translations visible. Not applicable to domains with removed points,
/// which a grid cannot resolve.
pub fn oracle_preserves(t: &AffineMap<f64>, spec: &DomainSpec, resolution: usize) -> VerificationReport {
    let check = format!("oracle-preserves:{}", spec.name());
    if spec.has_point_strata() {
        return VerificationReport::not_applicable(check, "removed points are invisible to a grid");
    }
    if let Some(r) = check_dims(t, spec, &check) {
        return r;
    }
    let Ok(inv) = t.invert() else {
        return VerificationReport::verdict(check, false, 1).with_note("singular map");
    };
    let points = grid_points(spec, resolution);
    let escapes = points
        .iter()
        .filter(|x| {
            [t, &inv]
                .iter()
                .any(|m| !spec.closure_contains(&m.apply(x).expect("dimensions agree"), MEMBERSHIP_TOL))
        })
        .count() as u64;
    VerificationReport::verdict(check, escapes == 0, escapes).with_samples(points.len() as u64)
}

/// Default time grid of [`is_complete_on`].
pub const COMPLETENESS_RANGE: (f64, f64) = (-10.0, 10.0);
pub const COMPLETENESS_SAMPLES: usize = 41;

/// The flow of `field` preserves `spec` at every sampled time.
pub fn is_complete_on(
    field: &AffineField<f64>,
    spec: &DomainSpec,
    t_range: (f64, f64),
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let check = format!("complete-on:{}", spec.name());
    let count = samples.max(2);
    let mut worst: f64 = 0.0;
    let mut failed_at = None;
    for k in 0..count {
        let t = t_range.0 + (t_range.1 - t_range.0) * k as f64 / (count - 1) as f64;
        let r = preserves_open_set(&flow_of(field, t), spec, DEFAULT_BOUNDARY_SAMPLES, MEMBERSHIP_TOL, seed);
        worst = worst.max(r.residual.value());
        if r.failed() && failed_at.is_none() {
            failed_at = Some(t);
        }
    }
    let mut report = VerificationReport::verdict(check, failed_at.is_none(), u64::from(failed_at.is_some()))
        .with_samples(count as u64)
        .with_seed(seed);
    report.tolerance = MEMBERSHIP_TOL;
    if let Some(t) = failed_at {
        report = report.with_note(format!("flow leaves the domain at t = {t}"));
    } else {
        report.residual = crate::report::Residual::Value(worst);
    }
    report
}
