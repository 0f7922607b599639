//! Sampled checks of developing maps, representations and connections.
//!
//! Every sampled check draws from a ChaCha stream seeded by the caller and
//! records the seed in its report. Residuals of vector identities are measured
//! relative to `max(1, |value|)` so that exponential maps are judged at a
//! uniform number of significant digits.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::{DevelopingMap, EtaleRep};
use super::connection::Connection;
use super::geodesic::geodesic;
use crate::affine::{AffineFrame, AffineMap};
use crate::error::{Error, Result};
use crate::lsa::{lsa_from_etale, Lsa};
use crate::numerics::scalar::Scalar;
use crate::numerics::{fd_first, fd_second, Matrix};
use crate::report::VerificationReport;

/// Extra points at which an induced representation is checked.
pub const INDUCED_REP_SAMPLES: usize = 50;
/// Offset of the chart frame used to fit induced representations.
const FRAME_STEP: f64 = 0.5;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).map(|v| v.abs()).fold(1.0, f64::max);
    let d = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    if d.is_nan() {
        f64::INFINITY
    } else {
        d / scale
    }
}

fn rel_map_distance(a: &AffineMap<f64>, b: &AffineMap<f64>) -> f64 {
    let scale = a.augmented().max_abs().max(b.augmented().max_abs()).max(1.0);
    a.distance(b) / scale
}

/// The affine map `T` with `D(g·h) = T(D(h))`, plus its residual at extra
/// sample points.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub map: AffineMap<f64>,
    pub residual: f64,
    pub samples: usize,
}

pub fn induced_rep(d: &DevelopingMap, g: &[f64], seed: u64) -> Result<InducedRep> {
    let chart = d.chart();
    if !chart.contains(g) {
        return Err(Error::InvalidParameter(format!(
            "{g:?} is outside the chart {}",
            chart.name()
        )));
    }
    let e = chart.identity();
    let mut hs = vec![e.clone()];
    for i in 0..chart.dim() {
        let mut h = e.clone();
        h[i] += FRAME_STEP;
        hs.push(h);
    }
    let frame = AffineFrame::new(hs.iter().map(|h| d.eval(h)).collect())?;
    let images: Vec<Vec<f64>> = hs.iter().map(|h| d.eval(&chart.multiply(g, h))).collect();
    let fit = AffineMap::from_frame_images(&frame, &images)?;
    if fit.singular {
        return Err(Error::InvalidFrame);
    }
    let mut r = rng(seed);
    let mut residual: f64 = 0.0;
    for _ in 0..INDUCED_REP_SAMPLES {
        let h = chart.sample(&mut r);
        let lhs = d.eval(&chart.multiply(g, &h));
        let rhs = fit.map.apply(&d.eval(&h))?;
        residual = residual.max(rel_diff(&lhs, &rhs));
    }
    Ok(InducedRep {
        map: fit.map,
        residual,
        samples: INDUCED_REP_SAMPLES,
    })
}

/// `max ‖D(g·h) − ρ(g)(D(h))‖` over sampled pairs.
pub fn verify_equivariance(
    d: &DevelopingMap,
    rho: &EtaleRep,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let chart = d.chart();
    if chart != rho.chart() {
        return Err(Error::InvalidParameter(format!(
            "{} and {} act on different groups",
            d.name(),
            rho.name()
        )));
    }
    let mut r = rng(seed);
    let mut residual: f64 = 0.0;
    let mut skipped = 0;
    for _ in 0..samples {
        let (g, h) = (chart.sample(&mut r), chart.sample(&mut r));
        let gh = chart.multiply(&g, &h);
        if !chart.contains(&gh) {
            skipped += 1;
            continue;
        }
        let lhs = d.eval(&gh);
        let rhs = rho.eval(&g).apply(&d.eval(&h))?;
        residual = residual.max(rel_diff(&lhs, &rhs));
    }
    let mut report = VerificationReport::measured(format!("equivariance:{}/{}", d.name(), rho.name()), residual, tol)
        .with_samples((samples - skipped) as u64)
        .with_seed(seed);
    if skipped > 0 {
        report = report.with_note(format!("{skipped} samples left the chart and were skipped"));
    }
    if !rho.is_printed() {
        report = report.with_note("corrected variant");
    }
    Ok(report)
}

/// `max ‖ρ(g·h) − ρ(g)∘ρ(h)‖` over sampled pairs.
pub fn check_homomorphism(rho: &EtaleRep, samples: usize, tol: f64, seed: u64) -> Result<VerificationReport> {
    let chart = rho.chart();
    let mut r = rng(seed);
    let mut residual: f64 = 0.0;
    for _ in 0..samples {
        let (g, h) = (chart.sample(&mut r), chart.sample(&mut r));
        let lhs = rho.eval(&chart.multiply(&g, &h));
        let rhs = rho.eval(&g).compose(&rho.eval(&h))?;
        residual = residual.max(rel_map_distance(&lhs, &rhs));
    }
    Ok(
        VerificationReport::measured(format!("homomorphism:{}", rho.name()), residual, tol)
            .with_samples(samples as u64)
            .with_seed(seed),
    )
}

/// Finite-difference derivative of `ρ` at the identity against its stored
/// exact differential.
pub fn check_differential(rho: &EtaleRep, h: f64, tol: f64) -> Result<VerificationReport> {
    let chart = rho.chart();
    let e = chart.identity();
    let flat = |g: &[f64]| -> Vec<f64> {
        let m = rho.eval(g);
        let mut v = m.linear().as_slice().to_vec();
        v.extend_from_slice(m.translation());
        v
    };
    let mut residual: f64 = 0.0;
    for (i, (a, v)) in rho.differential().generators().iter().enumerate() {
        let fd = fd_first(flat, &e, i, h)?;
        let exact: Vec<f64> = a.as_slice().iter().chain(v).map(Scalar::to_f64).collect();
        residual = residual.max(rel_diff(&fd, &exact));
    }
    Ok(
        VerificationReport::measured(format!("differential:{}", rho.name()), residual, tol)
            .with_samples(chart.dim() as u64),
    )
}

/// Exact comparison of the product read off `ρ` at its base point with `lsa`.
pub fn check_koszul(rho: &EtaleRep, lsa: &Lsa) -> Result<VerificationReport> {
    let derived = lsa_from_etale(rho.differential(), &rho.exact_base())?;
    let worst = derived
        .constants()
        .iter()
        .zip(lsa.constants())
        .map(|(a, b)| a - b)
        .filter(|d| !num_traits::Zero::is_zero(d))
        .map(|d| d.magnitude())
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    Ok(
        VerificationReport::exact(format!("koszul:{}/{}", rho.name(), lsa.label()), worst)
            .with_samples(derived.constants().len() as u64),
    )
}

/// Jacobian determinant of `D` bounded away from zero at sampled points.
pub fn check_immersion(d: &DevelopingMap, samples: usize, seed: u64) -> VerificationReport {
    let chart = d.chart();
    let mut r = rng(seed);
    let mut violations = 0u64;
    for _ in 0..samples {
        let p = chart.sample(&mut r);
        let j = d.jacobian(&p);
        let det = j.determinant().unwrap_or(0.0);
        let scale = j.max_abs().powi(2);
        if !(det.abs() > 1e-12 * scale) {
            violations += 1;
        }
    }
    VerificationReport::verdict(format!("immersion:{}", d.name()), violations == 0, violations)
        .with_samples(samples as u64)
        .with_seed(seed)
}

/// Sampled images of `D` satisfy the claimed image's interior predicate.
pub fn check_image(d: &DevelopingMap, samples: usize, seed: u64) -> VerificationReport {
    let chart = d.chart();
    let image = d.claimed_image();
    let mut r = rng(seed);
    let violations = (0..samples)
        .filter(|_| !image.contains(&d.eval(&chart.sample(&mut r))))
        .count() as u64;
    VerificationReport::verdict(format!("image:{}", d.name()), violations == 0, violations)
        .with_samples(samples as u64)
        .with_seed(seed)
        .with_note(format!("claimed image {}", image.name()))
        .with_note(d.image_note())
}

/// Residual of `∂ᵢ∂ⱼDᵏ − Σₗ Γˡᵢⱼ ∂ₗDᵏ` at `point`, relative to the size of the
/// terms.
pub fn check_affine_immersion<C: Connection + ?Sized>(
    d: &DevelopingMap,
    conn: &C,
    point: &[f64],
    h: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let n = d.chart().dim();
    let margin = d.chart().boundary_distance(point).min(conn.boundary_distance(point));
    if !(margin >= 2.0 * h) {
        return Err(Error::NearBoundary { margin });
    }
    let f = |x: &[f64]| d.eval(x);
    let gamma = conn.christoffel_at(point);
    let first: Vec<Vec<f64>> = (0..n).map(|l| fd_first(f, point, l, h)).collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..n {
        for j in i..n {
            let second = fd_second(f, point, i, j, h)?;
            for k in 0..second.len() {
                let mut v = second[k];
                let mut m = second[k].abs();
                for (l, dl) in first.iter().enumerate() {
                    let t = gamma.get(l, i, j) * dl[k];
                    v -= t;
                    m += t.abs();
                }
                residual = residual.max(v.abs());
                scale = scale.max(m);
            }
        }
    }
    Ok(
        VerificationReport::measured(format!("affine-immersion:{}", d.name()), residual / scale, tol)
            .with_note(format!("at {point:?}, h = {h:e}")),
    )
}

/// Affine-immersion check at `samples` seeded chart points.
pub fn check_affine_immersion_sampled<C: Connection + ?Sized>(
    d: &DevelopingMap,
    conn: &C,
    samples: usize,
    h: f64,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = d.chart().sample(&mut r);
        let rep = check_affine_immersion(d, conn, &p, h, tol)?;
        worst = worst.max(rep.residual.value());
    }
    Ok(
        VerificationReport::measured(format!("affine-immersion:{}", d.name()), worst, tol)
            .with_samples(samples as u64)
            .with_seed(seed)
            .with_note(format!("h = {h:e}")),
    )
}

/// Output grid of [`check_develops_to_line`].
pub const DEVELOP_STEPS: usize = 20;

/// Discrete acceleration of `t ↦ D(γ(t))` on a uniform grid, relative to
/// `max(1, |D(γ)|)`; zero for an affinely parametrized straight line.
pub fn check_develops_to_line<C: Connection + ?Sized>(
    d: &DevelopingMap,
    conn: &C,
    x0: &[f64],
    u0: &[f64],
    t_end: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let path = geodesic(conn, x0, u0, t_end, DEVELOP_STEPS)?;
    let dt = t_end / DEVELOP_STEPS as f64;
    let image: Vec<Vec<f64>> = path.positions.iter().map(|x| d.eval(x)).collect();
    let scale = image.iter().flatten().map(|v| v.abs()).fold(1.0, f64::max);
    let mut residual: f64 = 0.0;
    for w in image.windows(3) {
        for k in 0..w[0].len() {
            let acc = (w[2][k] - 2.0 * w[1][k] + w[0][k]) / (dt * dt);
            residual = residual.max(acc.abs());
        }
    }
    Ok(
        VerificationReport::measured(format!("develops-to-line:{}", d.name()), residual / scale, tol)
            .with_samples(DEVELOP_STEPS as u64 + 1),
    )
}

/// Time horizon for sampled geodesic checks.
pub const DEVELOP_T_END: f64 = 0.5;
/// Initial speeds are halved at most this many times to keep the geodesic
/// inside the chart up to [`DEVELOP_T_END`].
const MAX_SHRINK: usize = 8;

/// [`check_develops_to_line`] at `count` seeded initial conditions; the
/// velocity of each is shrunk until the geodesic survives to the horizon.
pub fn check_develops_to_line_sampled<C: Connection + ?Sized>(
    d: &DevelopingMap,
    conn: &C,
    count: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    use rand::Rng;
    let chart = d.chart();
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    let mut shrunk = 0;
    for _ in 0..count {
        let x0 = chart.sample(&mut r);
        let mut u0: Vec<f64> = (0..chart.dim()).map(|_| r.gen_range(-1.0..=1.0)).collect();
        let mut attempt = 0;
        let rep = loop {
            match check_develops_to_line(d, conn, &x0, &u0, DEVELOP_T_END, tol) {
                Err(Error::LeftDomain { .. }) if attempt < MAX_SHRINK => {
                    attempt += 1;
                    u0.iter_mut().for_each(|v| *v /= 2.0);
                }
                other => break other?,
            }
        };
        if attempt > 0 {
            shrunk += 1;
        }
        worst = worst.max(rep.residual.value());
    }
    let mut report = VerificationReport::measured(format!("develops-to-line:{}", d.name()), worst, tol)
        .with_samples(count as u64)
        .with_seed(seed);
    if shrunk > 0 {
        report = report.with_note(format!("{shrunk} initial velocities shrunk to stay in the chart"));
    }
    Ok(report)
}

/// Induced representations compose like the group: `T(g·h) = T(g)∘T(h)`.
pub fn check_induced_homomorphism(
    d: &DevelopingMap,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    let chart = d.chart();
    let mut r = rng(seed);
    let mut residual: f64 = 0.0;
    for k in 0..samples {
        let (g, h) = (chart.sample(&mut r), chart.sample(&mut r));
        let s = seed.wrapping_add(k as u64);
        let tg = induced_rep(d, &g, s)?;
        let th = induced_rep(d, &h, s)?;
        let tgh = induced_rep(d, &chart.multiply(&g, &h), s)?;
        residual = residual
            .max(rel_map_distance(&tgh.map, &tg.map.compose(&th.map)?))
            .max(tg.residual);
    }
    Ok(
        VerificationReport::measured(format!("induced-rep:{}:homomorphism", d.name()), residual, tol)
            .with_samples(samples as u64)
            .with_seed(seed),
    )
}

/// Largest distance between the induced representation of `D` and `ρ` on
/// sampled group elements.
pub fn induced_rep_distance(d: &DevelopingMap, rho: &EtaleRep, samples: usize, seed: u64) -> Result<f64> {
    let chart = d.chart();
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let g = chart.sample(&mut r);
        worst = worst.max(rel_map_distance(&induced_rep(d, &g, seed)?.map, &rho.eval(&g)));
    }
    Ok(worst)
}

/// Jacobian as a matrix, by central differences.
pub fn numeric_jacobian(d: &DevelopingMap, p: &[f64], h: f64) -> Result<Matrix<f64>> {
    let j = crate::numerics::fd_jacobian(|x| d.eval(x), p, h)?;
    Matrix::from_rows(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devmap::catalog::pairing;
    use crate::devmap::connection::{christoffels_from_lsa, Christoffel, LeftInvariantConnection};
    use crate::devmap::GroupChart;
    use crate::lsa::catalog_lsa;
    use crate::numerics::scalar::int;

    fn dm(name: &str) -> DevelopingMap {
        DevelopingMap::from_catalog(name, None).unwrap()
    }

    fn rep(name: &str) -> EtaleRep {
        EtaleRep::from_catalog(name, None).unwrap()
    }

    #[test]
    fn induced_rep_examples() {
        let t = induced_rep(&dm("D1"), &[0.7, -1.1], 1).unwrap();
        assert!(rel_map_distance(&t.map, &AffineMap::translation_by(vec![0.7, -1.1])) < 1e-14);
        let t = induced_rep(&dm("E3"), &[2.0, 1.0], 1).unwrap();
        let want = AffineMap::new(
            Matrix::from_rows(vec![vec![4.0, 2.0], vec![0.0, 2.0]]).unwrap(),
            vec![2.0, 1.0],
        )
        .unwrap();
        assert!(rel_map_distance(&t.map, &want) < 1e-12, "{:?}", t.map);
        assert!(t.residual < 1e-12);
        let e = induced_rep(&dm("D6"), &[0.0, 0.0], 1).unwrap();
        assert!(rel_map_distance(&e.map, &AffineMap::identity(2)) < 1e-14);
    }

    #[test]
    fn equivariance_examples() {
        assert_eq!(
            verify_equivariance(&dm("D1"), &rep("rho1"), 100, 0.0, 3)
                .unwrap()
                .residual
                .value(),
            0.0
        );
        assert!(verify_equivariance(&dm("D5"), &rep("rho5"), 1000, 1e-9, 3)
            .unwrap()
            .passed());
        let printed = verify_equivariance(&dm("D6"), &rep("rho6"), 1000, 1e-9, 3).unwrap();
        assert!(printed.residual.value() > 1e-2);
        assert!(verify_equivariance(&dm("D6"), &rep("rho6-corrected"), 1000, 1e-9, 3)
            .unwrap()
            .passed());
        assert!(verify_equivariance(&dm("D4"), &rep("rho4"), 200, 1e-9, 3)
            .unwrap()
            .failed());
        assert!(verify_equivariance(&dm("D4"), &rep("rho4-corrected"), 200, 1e-9, 3)
            .unwrap()
            .passed());
        assert!(verify_equivariance(&dm("D4-swapped"), &rep("rho4"), 200, 1e-9, 3)
            .unwrap()
            .passed());
        assert!(verify_equivariance(&dm("D1"), &rep("rho-E3"), 10, 1e-9, 3).is_err());
    }

    #[test]
    fn affine_immersion_examples() {
        let zero = Christoffel::zero(2);
        let r = check_affine_immersion(&dm("D1"), &zero, &[0.3, 0.2], 1e-4, 1e-12).unwrap();
        assert_eq!(r.residual.value(), 0.0);
        let p5 = christoffels_from_lsa(&catalog_lsa("P5", None).unwrap());
        assert!(check_affine_immersion(&dm("D5"), &p5, &[0.3, -0.7], 1e-4, 1e-6)
            .unwrap()
            .passed());
        let p2 = christoffels_from_lsa(&catalog_lsa("P2", None).unwrap());
        assert!(check_affine_immersion_sampled(&dm("D2"), &p2, 30, 1e-4, 1e-6, 9)
            .unwrap()
            .passed());
        // wrong connection
        assert!(check_affine_immersion(&dm("D5"), &zero, &[0.3, -0.7], 1e-4, 1e-6)
            .unwrap()
            .failed());
        let e1 = LeftInvariantConnection::new(&catalog_lsa("E1", None).unwrap(), GroupChart::AffineLine);
        assert!(matches!(
            check_affine_immersion(&dm("E1"), &e1, &[1e-4, 0.0], 1e-4, 1e-6),
            Err(Error::NearBoundary { .. })
        ));
    }

    #[test]
    fn develops_to_line_examples() {
        let zero = Christoffel::zero(2);
        assert!(
            check_develops_to_line(&dm("D1"), &zero, &[0.0, 0.0], &[1.0, 0.3], 1.0, 1e-12)
                .unwrap()
                .passed()
        );
        let p5 = christoffels_from_lsa(&catalog_lsa("P5", None).unwrap());
        let r = check_develops_to_line(&dm("D5"), &p5, &[0.0, 0.0], &[1.0, 2.0], DEVELOP_T_END, 1e-6).unwrap();
        assert!(r.passed(), "{r:?}");
        let e3 = LeftInvariantConnection::new(&catalog_lsa("E3", None).unwrap(), GroupChart::AffineLine);
        assert!(check_develops_to_line_sampled(&dm("E3"), &e3, 10, 1e-5, 11)
            .unwrap()
            .passed());
        // a mismatched connection bends the developed curve
        let e4 = LeftInvariantConnection::new(&catalog_lsa("E4", None).unwrap(), GroupChart::AffineLine);
        assert!(check_develops_to_line_sampled(&dm("E3"), &e4, 10, 1e-5, 11)
            .unwrap()
            .failed());
    }

    #[test]
    fn every_catalog_rep_is_a_homomorphism_with_the_stored_differential() {
        for name in crate::devmap::catalog::REP_NAMES {
            let alpha = name.starts_with("rho-F").then(|| int(2));
            let r = EtaleRep::from_catalog(name, alpha.as_ref()).unwrap();
            assert!(check_homomorphism(&r, 200, 1e-9, 5).unwrap().passed(), "{name}");
            assert!(check_differential(&r, 1e-5, 1e-8).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn induced_rep_of_d4_is_the_corrected_variant() {
        let p = pairing("D4", None).unwrap();
        let printed = induced_rep_distance(&p.devmap, &p.reps[0], 20, 4).unwrap();
        let corrected = induced_rep_distance(&p.devmap, &p.reps[1], 20, 4).unwrap();
        assert!(printed > 1e-2 && corrected < 1e-10, "{printed} {corrected}");
        assert!(check_induced_homomorphism(&p.devmap, 20, 1e-8, 4).unwrap().passed());
    }
}
