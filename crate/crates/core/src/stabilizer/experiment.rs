//! Agreement between the boundary-plus-witness membership test and the grid
//! oracle over seeded random affine maps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{flow_of, stabilizer_algebra, AffineField};
use super::domain::DomainSpec;
use super::membership::{
    oracle_preserves, preserves_boundary, preserves_open_set, DEFAULT_BOUNDARY_SAMPLES, MEMBERSHIP_TOL,
};
use crate::affine::AffineMap;
use crate::error::Result;
use crate::numerics::Matrix;
use crate::report::VerificationReport;

/// Random maps drawn per domain.
pub const EXPERIMENT_TRIALS: usize = 200;

/// Grid points per axis used by the oracle in the experiment.
pub fn experiment_grid(n: usize) -> usize {
    if n <= 2 {
        49
    } else {
        25
    }
}

/// The domains of the experiment as `(name, n)`.
pub const EXPERIMENT_DOMAINS: [(&str, usize); 4] =
    [("orthant:1", 2), ("orthant:2", 2), ("parabola", 2), ("orthant:1", 3)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentOutcome {
    pub domain: String,
    pub dim: usize,
    pub trials: usize,
    pub oracle_passes: usize,
    pub agreements: usize,
    pub inclusion_violations: usize,
}

impl ExperimentOutcome {
    fn tag(&self) -> String {
        format!("{}:n{}", self.domain, self.dim)
    }

    pub fn reports(&self, seed: u64) -> Vec<VerificationReport> {
        let disagreements = (self.trials - self.agreements) as u64;
        vec![
            VerificationReport::verdict(
                format!("membership-equivalence:{}", self.tag()),
                disagreements == 0,
                disagreements,
            )
            .with_samples(self.trials as u64)
            .with_seed(seed)
            .with_note(format!(
                "{} of {} maps preserve the domain by the oracle",
                self.oracle_passes, self.trials
            )),
            VerificationReport::verdict(
                format!("membership-inclusion:{}", self.tag()),
                self.inclusion_violations == 0,
                self.inclusion_violations as u64,
            )
            .with_samples(self.oracle_passes as u64)
            .with_seed(seed),
        ]
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Matrix<f64> {
    Matrix::from_fn(n, n, |_, _| rng.gen_range(-r..=r))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

/// A perturbation whose largest entry has magnitude in `[0.2, 1]`.
fn perturbation(rng: &mut ChaCha8Rng, n: usize) -> (Matrix<f64>, Vec<f64>) {
    let size = rng.gen_range(0.2..=1.0);
    let mut m = random_matrix(rng, n, 1.0);
    let mut b = random_vector(rng, n, 1.0);
    let max = m.max_abs().max(b.iter().fold(0.0_f64, |a, v| a.max(v.abs())));
    m = m.scale(&(size / max));
    b.iter_mut().for_each(|v| *v *= size / max);
    (m, b)
}

/// One draw from the mixture: group elements, group elements composed with a
/// symmetry, with `−I`, perturbed group elements, and unstructured maps.
fn draw(rng: &mut ChaCha8Rng, spec: &DomainSpec, basis: &[AffineField<f64>]) -> AffineMap<f64> {
    let n = spec.dim();
    let element = |rng: &mut ChaCha8Rng| {
        let mut field = AffineField::new(Matrix::zeros(n, n), vec![0.0; n]);
        for f in basis {
            let c = rng.gen_range(-1.0..=1.0);
            field = AffineField::new(field.m.add(&f.m.scale(&c)).expect("same shape"), {
                field.b.iter().zip(&f.b).map(|(a, b)| a + c * b).collect()
            });
        }
        flow_of(&field, 1.0)
    };
    match rng.gen_range(0..5) {
        0 => element(rng),
        1 => {
            let g = element(rng);
            let syms = spec.symmetries();
            if syms.is_empty() {
                g
            } else {
                let s = syms[rng.gen_range(0..syms.len())].to_f64();
                s.compose(&g).expect("same dimension")
            }
        }
        2 => {
            let minus = AffineMap::linear_map(Matrix::identity(n).scale(&-1.0)).expect("invertible");
            minus.compose(&element(rng)).expect("same dimension")
        }
        3 => {
            let g = element(rng);
            let (dm, db) = perturbation(rng, n);
            let m = g.linear().add(&dm).expect("same shape");
            let b = g.translation().iter().zip(&db).map(|(a, d)| a + d).collect();
            AffineMap::from_parts(m, b).expect("shapes agree")
        }
        _ => AffineMap::from_parts(random_matrix(rng, n, 2.0), random_vector(rng, n, 2.0)).expect("shapes agree"),
    }
}

/// Runs the experiment on `spec` with `trials` maps.
pub fn membership_experiment(spec: &DomainSpec, trials: usize, seed: u64) -> Result<ExperimentOutcome> {
    let basis: Vec<AffineField<f64>> = stabilizer_algebra(spec)?
        .basis()
        .iter()
        .map(AffineField::to_f64)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = experiment_grid(spec.dim());
    let mut outcome = ExperimentOutcome {
        domain: spec.name().to_string(),
        dim: spec.dim(),
        trials,
        oracle_passes: 0,
        agreements: 0,
        inclusion_violations: 0,
    };
    for k in 0..trials {
        let t = draw(&mut rng, spec, &basis);
        let trial_seed = seed.wrapping_add(k as u64);
        let by_boundary = preserves_open_set(&t, spec, DEFAULT_BOUNDARY_SAMPLES, MEMBERSHIP_TOL, trial_seed).passed();
        let oracle = oracle_preserves(&t, spec, grid).passed();
        if oracle {
            outcome.oracle_passes += 1;
            if !preserves_boundary(&t, spec, DEFAULT_BOUNDARY_SAMPLES, MEMBERSHIP_TOL, trial_seed).passed() {
                outcome.inclusion_violations += 1;
            }
        }
        if by_boundary == oracle {
            outcome.agreements += 1;
        }
    }
    Ok(outcome)
}

/// The experiment over every domain of [`EXPERIMENT_DOMAINS`].
pub fn membership_experiment_all(trials: usize, seed: u64) -> Result<Vec<ExperimentOutcome>> {
    EXPERIMENT_DOMAINS
        .iter()
        .map(|(name, n)| membership_experiment(&DomainSpec::from_name(name, Some(*n))?, trials, seed))
        .collect()
}
