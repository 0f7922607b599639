//! Check suites run by `verify` and `report all`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::errata::ErrataRegistry;
use crate::devmap::catalog::{rep_lsa_name, DEVMAP_NAMES, REP_NAMES};
use crate::devmap::verify::{
    check_affine_immersion_sampled, check_develops_to_line_sampled, check_differential, check_homomorphism,
    check_image, check_immersion, check_induced_homomorphism, check_koszul,
};
use crate::devmap::{geodesic, pairing, verify_equivariance, EtaleRep, GroupChart, LeftInvariantConnection};
use crate::error::{Error, Result};
use crate::lsa::{
    catalog_bracket, catalog_lsa, is_flat_compatible, is_left_symmetric, is_torsion_free_compatible, LSA_NAMES,
};
use crate::numerics::scalar::{int, parse_rational, Rational};
use crate::numerics::Matrix;
use crate::report::{Status, VerificationReport};
use crate::stabilizer::algebra::{check_dimension, check_tangency};
use crate::stabilizer::domain::Stratum;
use crate::stabilizer::experiment::{membership_experiment_all, EXPERIMENT_TRIALS};
use crate::stabilizer::infinitesimal::{
    check_constant_fields, check_left_translation_fields, eq1_residual, pullback_field, solve_infinitesimal,
    RationalChristoffel,
};
use crate::stabilizer::membership::{
    is_complete_on, preserves_open_set, COMPLETENESS_RANGE, COMPLETENESS_SAMPLES, DEFAULT_BOUNDARY_SAMPLES,
};
use crate::stabilizer::{
    flow_of, is_closed_under_matrix_product, is_lie_subalgebra, stabilizer_algebra, AffineField, DomainSpec,
};

/// Parameters shared by every suite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Tolerance of closed-form floating checks.
    pub tol: f64,
    /// Tolerance of finite-difference and integration checks.
    pub fd_tol: f64,
    /// Samples of sampled closed-form checks.
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_FD_TOL: f64 = 1e-5;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            fd_tol: DEFAULT_FD_TOL,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Parameters at which the `F1` and `F2` families are checked when none is given.
pub const ALPHAS: [i64; 5] = [-2, -1, 1, 2, 3];
/// Finite-difference step of every stencil-based check.
pub const FD_STEP: f64 = 1e-4;
/// Chart points of the affine-immersion check.
pub const AFFINE_IMMERSION_POINTS: usize = 20;
/// Initial conditions of the geodesic development check.
pub const DEVELOP_POINTS: usize = 10;
/// Random affine fields pulled back through `D5`.
pub const PULLBACK_FIELDS: usize = 20;
/// Chart points per pulled-back field.
pub const PULLBACK_POINTS: usize = 10;
/// Times at which basis flows must preserve the domain.
pub const FLOW_TIMES: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
/// Closed-form geodesic comparison: steps and tolerance.
pub const CLOSED_FORM_STEPS: usize = 1000;
pub const CLOSED_FORM_TOL: f64 = 1e-8;

/// Whether the catalog entry takes the family parameter.
pub fn needs_alpha(name: &str) -> bool {
    matches!(name, "F1" | "F2" | "rho-F1" | "rho-F2")
}

/// Splits `F1:2` or `F1(2)` into a name and a parameter.
pub fn split_alpha(target: &str) -> Result<(String, Option<Rational>)> {
    let (name, param) = if let Some((n, p)) = target.split_once(':').filter(|(n, _)| needs_alpha(n)) {
        (n, Some(p))
    } else if let Some(open) = target.find('(').filter(|_| target.ends_with(')')) {
        (&target[..open], Some(&target[open + 1..target.len() - 1]))
    } else {
        (target, None)
    };
    let alpha = param
        .map(|p| parse_rational(p).ok_or_else(|| Error::InvalidParameter(format!("cannot parse parameter `{p}`"))))
        .transpose()?;
    Ok((name.to_string(), alpha))
}

/// The explicit parameter, or every entry of [`ALPHAS`] for the families.
fn alphas_for(name: &str, alpha: Option<&Rational>) -> Vec<Option<Rational>> {
    match (needs_alpha(name), alpha) {
        (_, Some(a)) => vec![Some(a.clone())],
        (true, None) => ALPHAS.iter().map(|&a| Some(int(a))).collect(),
        (false, None) => vec![None],
    }
}

/// Torsion-free, flatness and left-symmetry checks in exact arithmetic.
pub fn lsa_suite(name: &str, alpha: Option<&Rational>) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for a in alphas_for(name, alpha) {
        let lsa = catalog_lsa(name, a.as_ref())?;
        out.push(is_torsion_free_compatible(&lsa, &catalog_bracket(name)?)?);
        out.push(is_flat_compatible(&lsa));
        out.push(is_left_symmetric(&lsa));
    }
    Ok(out)
}

/// Equivariance with every paired representation, immersion, image, induced
/// representation, affine immersion and geodesic development.
pub fn devmap_suite(name: &str, alpha: Option<&Rational>, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    if !DEVMAP_NAMES.contains(&name) {
        return Err(Error::UnknownName(name.into()));
    }
    let mut out = Vec::new();
    for a in alphas_for(name, alpha) {
        let p = pairing(name, a.as_ref())?;
        let d = &p.devmap;
        for rho in &p.reps {
            out.push(verify_equivariance(d, rho, opts.samples, opts.tol, opts.seed)?);
        }
        out.push(check_immersion(d, opts.samples, opts.seed));
        out.push(check_image(d, opts.samples, opts.seed));
        out.push(check_induced_homomorphism(
            d,
            opts.samples.min(100),
            opts.tol,
            opts.seed,
        )?);
        let lsa = catalog_lsa(&p.lsa, a.as_ref())?;
        let conn = LeftInvariantConnection::new(&lsa, d.chart());
        out.push(check_affine_immersion_sampled(
            d,
            &conn,
            AFFINE_IMMERSION_POINTS,
            FD_STEP,
            opts.fd_tol,
            opts.seed,
        )?);
        out.push(check_develops_to_line_sampled(
            d,
            &conn,
            DEVELOP_POINTS,
            opts.fd_tol,
            opts.seed,
        )?);
    }
    Ok(out)
}

/// Homomorphism, differential and Koszul checks of a representation.
pub fn rep_suite(name: &str, alpha: Option<&Rational>, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let lsa_name = rep_lsa_name(name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let mut out = Vec::new();
    for a in alphas_for(name, alpha) {
        let rho = EtaleRep::from_catalog(name, a.as_ref())?;
        out.push(check_homomorphism(&rho, opts.samples, opts.tol, opts.seed)?);
        out.push(check_differential(&rho, FD_STEP, opts.fd_tol)?);
        out.push(check_koszul(&rho, &catalog_lsa(lsa_name, a.as_ref())?)?);
    }
    Ok(out)
}

/// Whether the stabilizer algebra of `spec` is expected to be associative.
/// Quadric strata are the negative control.
fn expects_matrix_closure(spec: &DomainSpec) -> bool {
    !spec.strata().iter().any(|s| matches!(s, Stratum::QuadricGraph { .. }))
}

/// Dimension, tangency, closure, flow membership and completeness of the
/// stabilizer algebra of a catalog domain.
pub fn stabilizer_suite(name: &str, n: Option<usize>, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let spec = DomainSpec::from_name(name, n)?;
    let alg = stabilizer_algebra(&spec)?;
    let tag = format!("stabilizer:{}:n{}", spec.name(), spec.dim());
    let basis_json = serde_json::to_string(alg.basis()).expect("fields serialize");
    let mut out = vec![
        check_dimension(&alg).with_note(format!("basis {basis_json}")),
        check_tangency(&alg),
    ];
    let closure = is_closed_under_matrix_product(&alg);
    if expects_matrix_closure(&spec) {
        out.push(closure);
    } else {
        let closed = closure.passed();
        let mut r =
            VerificationReport::verdict(format!("{tag}:matrix-product-non-closure"), !closed, u64::from(closed))
                .with_samples(closure.samples)
                .with_note("negative control: the algebra is not associative");
        if !closure.note.is_empty() {
            r = r.with_note(closure.note);
        }
        out.push(r);
    }
    out.push(is_lie_subalgebra(&alg));
    if !spec.note().is_empty() {
        let last = out.pop().expect("nonempty");
        out.push(last.with_note(spec.note()));
    }
    let fields: Vec<AffineField<f64>> = alg.basis().iter().map(AffineField::to_f64).collect();
    let mut worst: f64 = 0.0;
    let mut failures = 0u64;
    for f in &fields {
        for &t in &FLOW_TIMES {
            let r = preserves_open_set(&flow_of(f, t), &spec, DEFAULT_BOUNDARY_SAMPLES, opts.tol, opts.seed);
            worst = worst.max(r.residual.value());
            failures += u64::from(r.failed());
        }
    }
    let mut flow = VerificationReport::measured(format!("{tag}:flow-membership"), worst, opts.tol)
        .with_samples((fields.len() * FLOW_TIMES.len()) as u64)
        .with_seed(opts.seed);
    if failures > 0 {
        flow.status = Status::Fail;
        flow = flow.with_note(format!("{failures} flows leave the domain"));
    }
    out.push(flow);
    let incomplete = fields
        .iter()
        .filter(|f| is_complete_on(f, &spec, COMPLETENESS_RANGE, COMPLETENESS_SAMPLES, opts.seed).failed())
        .count() as u64;
    out.push(
        VerificationReport::verdict(format!("{tag}:complete"), incomplete == 0, incomplete)
            .with_samples(fields.len() as u64)
            .with_seed(opts.seed)
            .with_note(format!(
                "t in [{}, {}], {COMPLETENESS_SAMPLES} times",
                COMPLETENESS_RANGE.0, COMPLETENESS_RANGE.1
            )),
    );
    Ok(out)
}

/// Domains of the dimension table, as `(name, n)`.
pub const STABILIZER_TABLE: [(&str, usize); 9] = [
    ("punctured:1", 2),
    ("punctured:2", 2),
    ("punctured:3", 2),
    ("orthant:1", 2),
    ("orthant:2", 2),
    ("orthant:1", 3),
    ("orthant:2", 3),
    ("parabola", 2),
    ("punctured-plane", 2),
];

/// Geodesics of the `P5` connection against `xₖ(t) = xₖ(0) + ln(1 + uₖt)`.
pub fn geodesic_closed_form(opts: &SuiteOptions) -> Result<VerificationReport> {
    let lsa = catalog_lsa("P5", None)?;
    let conn = LeftInvariantConnection::new(&lsa, GroupChart::plane());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let t = 0.5;
    let mut worst: f64 = 0.0;
    for _ in 0..DEVELOP_POINTS {
        let x0: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let u0: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let path = geodesic(&conn, &x0, &u0, t, CLOSED_FORM_STEPS)?;
        for k in 0..2 {
            worst = worst.max((path.end()[k] - (x0[k] + (1.0 + u0[k] * t).ln())).abs());
        }
    }
    Ok(
        VerificationReport::measured("geodesic:P5:closed-form", worst, CLOSED_FORM_TOL)
            .with_samples(DEVELOP_POINTS as u64)
            .with_seed(opts.seed)
            .with_note(format!("t = {t}, {CLOSED_FORM_STEPS} steps")),
    )
}

/// `(label, lsa name, alpha)` for every catalog connection, with the families
/// expanded over [`ALPHAS`].
pub fn catalog_connections() -> Vec<(String, Option<Rational>)> {
    LSA_NAMES
        .iter()
        .flat_map(|name| alphas_for(name, None).into_iter().map(move |a| (name.to_string(), a)))
        .collect()
}

/// Exact solver dimensions, constant and left-translation fields, and
/// pullbacks of affine fields through `D5`.
pub fn infinitesimal_suite(opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (n, want) in [(2usize, 6usize), (3, 12)] {
        let got = solve_infinitesimal(&RationalChristoffel::zero(n), 2)?.len();
        out.push(
            VerificationReport::exact(
                format!("infinitesimal:flat:n{n}:dimension"),
                (got != want).then(|| got.abs_diff(want) as f64),
            )
            .with_note(format!("dim = {got} at degree <= 2, expected {want}")),
        );
    }
    for (name, alpha) in catalog_connections() {
        let lsa = catalog_lsa(&name, alpha.as_ref())?;
        let chart = pairing(&name, alpha.as_ref())?.devmap.chart();
        if chart == GroupChart::plane() {
            out.push(check_constant_fields(&lsa, 2)?);
        }
        out.push(check_left_translation_fields(
            &lsa,
            chart,
            FD_STEP,
            opts.fd_tol,
            opts.seed,
        )?);
    }
    out.push(pullback_check(opts)?);
    Ok(out)
}

/// Pullbacks of random affine fields through `D5` solve the defining
/// equation of the `P5` connection.
pub fn pullback_check(opts: &SuiteOptions) -> Result<VerificationReport> {
    let p5 = LeftInvariantConnection::new(&catalog_lsa("P5", None)?, GroupChart::plane());
    let d5 = pairing("D5", None)?.devmap;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..PULLBACK_FIELDS {
        let w = AffineField::new(
            Matrix::from_fn(2, 2, |_, _| rng.gen_range(-1.0..=1.0)),
            (0..2).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
        );
        let x = pullback_field(&d5, &w);
        for _ in 0..PULLBACK_POINTS {
            let p = d5.chart().sample(&mut rng);
            worst = worst.max(eq1_residual(&p5, &x, &p, FD_STEP)?);
        }
    }
    Ok(
        VerificationReport::measured("infinitesimal:P5:pullback-D5", worst, opts.fd_tol)
            .with_samples((PULLBACK_FIELDS * PULLBACK_POINTS) as u64)
            .with_seed(opts.seed)
            .with_note(format!("h = {FD_STEP:e}")),
    )
}

/// Membership test against the grid oracle on random maps.
pub fn experiment_suite(opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    Ok(membership_experiment_all(EXPERIMENT_TRIALS, opts.seed)?
        .iter()
        .flat_map(|o| o.reports(opts.seed))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass_count: usize,
    pub fail_count: usize,
    pub not_applicable_count: usize,
    pub known_errata_count: usize,
    pub unexpected_failures: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        let known = reports.iter().filter(|r| r.failed() && r.known_erratum).count();
        Self {
            total: reports.len(),
            pass_count: count(Status::Pass),
            fail_count: count(Status::Fail),
            not_applicable_count: count(Status::NotApplicable),
            known_errata_count: known,
            unexpected_failures: count(Status::Fail) - known,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub seed: u64,
    pub tolerance: f64,
    pub fd_tolerance: f64,
    pub samples: usize,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

/// Every suite over the whole catalog, annotated with the errata registry.
pub fn report_all(opts: &SuiteOptions, errata: &ErrataRegistry) -> Result<ReportDocument> {
    let mut reports = Vec::new();
    for name in LSA_NAMES {
        reports.extend(lsa_suite(name, None)?);
    }
    for name in DEVMAP_NAMES {
        reports.extend(devmap_suite(name, None, opts)?);
    }
    for name in REP_NAMES {
        reports.extend(rep_suite(name, None, opts)?);
    }
    for (name, n) in STABILIZER_TABLE {
        reports.extend(stabilizer_suite(name, Some(n), opts)?);
    }
    reports.extend(experiment_suite(opts)?);
    reports.push(geodesic_closed_form(opts)?);
    reports.extend(infinitesimal_suite(opts)?);
    errata.annotate(&mut reports);
    Ok(ReportDocument {
        seed: opts.seed,
        tolerance: opts.tol,
        fd_tolerance: opts.fd_tol,
        samples: opts.samples,
        summary: Summary::of(&reports),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_parsing() {
        assert_eq!(split_alpha("F1:2").unwrap(), ("F1".into(), Some(int(2))));
        assert_eq!(split_alpha("F2(-1/2)").unwrap().1, Some(crate::numerics::rat(-1, 2)));
        assert_eq!(split_alpha("orthant:1").unwrap(), ("orthant:1".into(), None));
        assert!(split_alpha("F1:x").is_err());
    }

    #[test]
    fn lsa_suite_is_exact() {
        let r = lsa_suite("E3", None).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r
            .iter()
            .all(|r| r.passed() && r.residual == crate::report::Residual::ExactZero));
        assert_eq!(lsa_suite("F1", None).unwrap().len(), 15);
        assert!(lsa_suite("Q7", None).is_err());
    }

    #[test]
    fn stabilizer_suite_examples() {
        let opts = SuiteOptions::default();
        let r = stabilizer_suite("orthant:1", Some(2), &opts).unwrap();
        assert!(r.iter().all(VerificationReport::passed), "{r:#?}");
        assert!(r[0].note.contains("dim = 4"));
        let p = stabilizer_suite("parabola", None, &opts).unwrap();
        assert!(p.iter().all(VerificationReport::passed), "{p:#?}");
        assert!(p.iter().any(|r| r.check.ends_with("matrix-product-non-closure")));
    }

    #[test]
    fn devmap_suite_flags_the_rotation_sign() {
        let opts = SuiteOptions {
            samples: 200,
            ..SuiteOptions::default()
        };
        let r = devmap_suite("D6", None, &opts).unwrap();
        let failed: Vec<_> = r.iter().filter(|r| r.failed()).map(|r| r.check.as_str()).collect();
        assert_eq!(failed, ["equivariance:D6/rho6"]);
    }
}
