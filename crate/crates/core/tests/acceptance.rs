//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::Command;
use std::time::Instant;

use flat_affine::cli::errata::ErrataRegistry;
use flat_affine::cli::suites::{
    catalog_connections, geodesic_closed_form, lsa_suite, pullback_check, SuiteOptions, ALPHAS, DEVELOP_POINTS,
};
use flat_affine::devmap::verify::check_develops_to_line_sampled;
use flat_affine::devmap::{geodesic, pairing, verify_equivariance, EtaleRep, GroupChart, LeftInvariantConnection};
use flat_affine::lsa::{catalog_lsa, LSA_NAMES};
use flat_affine::report::Residual;
use flat_affine::stabilizer::infinitesimal::{
    check_constant_fields, check_left_translation_fields, InfinitesimalSystem,
};
use flat_affine::stabilizer::{
    is_closed_under_matrix_product, membership_experiment_all, solve_infinitesimal, stabilizer_algebra, DomainSpec,
    RationalChristoffel,
};

const SEED: u64 = 42;
const EQUIVARIANCE_SAMPLES: usize = 1000;
const TOL: f64 = 1e-9;
const FD_TOL: f64 = 1e-5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lsa_axioms() -> Outcome {
    let mut count = 0;
    for name in LSA_NAMES {
        for r in lsa_suite(name, None).map_err(|e| e.to_string())? {
            ensure(
                r.passed() && r.residual == Residual::ExactZero,
                format!("{} residual {}", r.check, r.residual),
            )?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} exact checks over 12 entries, F1/F2 at alpha in {ALPHAS:?}"
    ))
}

fn equivariance() -> Outcome {
    let run = |d: &str, rho: &str| -> Result<f64, String> {
        let dev = pairing(d, None).map_err(|e| e.to_string())?.devmap;
        let rep = EtaleRep::from_catalog(rho, None).map_err(|e| e.to_string())?;
        let r = verify_equivariance(&dev, &rep, EQUIVARIANCE_SAMPLES, TOL, SEED).map_err(|e| e.to_string())?;
        Ok(r.residual.value())
    };
    let mut worst: f64 = 0.0;
    for (d, rho) in [
        ("D1", "rho1"),
        ("D2", "rho2"),
        ("D3", "rho3"),
        ("D5", "rho5"),
        ("D6", "rho6-corrected"),
    ] {
        let r = run(d, rho)?;
        ensure(r < TOL, format!("{d}/{rho} residual {r:e}"))?;
        worst = worst.max(r);
    }
    let printed = run("D6", "rho6")?;
    ensure(
        printed > 1e-2,
        format!("D6/rho6 residual {printed:e} should exceed 1e-2"),
    )?;
    let d4 = run("D4", "rho4")?;
    ensure(
        d4 > 1e-2,
        format!("D4/rho4 residual {d4:e} should show the coordinate-order discrepancy"),
    )?;
    ensure(
        run("D4", "rho4-corrected")? < TOL && run("D4-swapped", "rho4")? < TOL,
        "D4 variants",
    )?;
    let reg = ErrataRegistry::builtin();
    ensure(
        reg.lookup("equivariance:D4/rho4").is_some() && reg.lookup("equivariance:D6/rho6").is_some(),
        "errata registry",
    )?;
    Ok(format!(
        "worst passing residual {worst:.2e}; D6/rho6 {printed:.3}; D4/rho4 {d4:.3} (registered errata)"
    ))
}

fn dimension_table() -> Outcome {
    let table = [
        ("punctured:1", 2, 4),
        ("punctured:2", 2, 2),
        ("punctured:3", 2, 0),
        ("orthant:1", 2, 4),
        ("orthant:2", 2, 2),
        ("orthant:1", 3, 9),
        ("orthant:2", 3, 6),
        ("parabola", 2, 2),
        ("punctured-plane", 2, 4),
    ];
    for (name, n, want) in table {
        let spec = DomainSpec::from_name(name, Some(n)).map_err(|e| e.to_string())?;
        let got = stabilizer_algebra(&spec).map_err(|e| e.to_string())?.dim();
        ensure(got == want, format!("{name} n={n}: dim {got}, expected {want}"))?;
    }
    Ok(format!("{} domains exact", table.len()))
}

fn closure() -> Outcome {
    let closed = [
        ("punctured:1", 2),
        ("punctured:2", 2),
        ("punctured:3", 2),
        ("punctured:1", 3),
        ("orthant:1", 2),
        ("orthant:2", 2),
        ("orthant:1", 3),
        ("orthant:2", 3),
        ("orthant:3", 3),
        ("punctured-plane", 2),
    ];
    for (name, n) in closed {
        let alg = stabilizer_algebra(&DomainSpec::from_name(name, Some(n)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(
            is_closed_under_matrix_product(&alg).passed(),
            format!("{name} n={n} not closed"),
        )?;
    }
    let parabola = stabilizer_algebra(&DomainSpec::parabola()).map_err(|e| e.to_string())?;
    ensure(
        is_closed_under_matrix_product(&parabola).failed(),
        "parabola algebra should not be closed",
    )?;
    Ok(format!(
        "{} algebras closed; parabola not closed (negative control)",
        closed.len()
    ))
}

fn membership_equivalence() -> Outcome {
    let outcomes = membership_experiment_all(200, SEED).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for o in &outcomes {
        ensure(
            o.agreements == o.trials,
            format!("{}:n{} agreement {}/{}", o.domain, o.dim, o.agreements, o.trials),
        )?;
        ensure(
            o.inclusion_violations == 0,
            format!(
                "{}:n{} inclusion violations {}",
                o.domain, o.dim, o.inclusion_violations
            ),
        )?;
        parts.push(format!(
            "{}:n{} {}/{} ({} preserve)",
            o.domain, o.dim, o.agreements, o.trials, o.oracle_passes
        ));
    }
    Ok(format!("agreement {}; 0 inclusion violations", parts.join(", ")))
}

fn geodesic_development() -> Outcome {
    let mut worst: f64 = 0.0;
    let connections = catalog_connections();
    for (name, alpha) in &connections {
        let lsa = catalog_lsa(name, alpha.as_ref()).map_err(|e| e.to_string())?;
        let d = pairing(name, alpha.as_ref()).map_err(|e| e.to_string())?.devmap;
        let conn = LeftInvariantConnection::new(&lsa, d.chart());
        let r = check_develops_to_line_sampled(&d, &conn, DEVELOP_POINTS, FD_TOL, SEED).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{} residual {}", r.check, r.residual))?;
        worst = worst.max(r.residual.value());
    }
    let p5 = LeftInvariantConnection::new(
        &catalog_lsa("P5", None).map_err(|e| e.to_string())?,
        GroupChart::plane(),
    );
    let (x0, u) = (0.3, 0.8);
    let path = geodesic(&p5, &[x0, -0.2], &[u, 0.1], 0.5, 1000).map_err(|e| e.to_string())?;
    let err = (path.end()[0] - ((1.0 + u * 0.5f64).ln() + x0)).abs();
    ensure(err < 1e-8, format!("P5 closed form error {err:e}"))?;
    let sampled = geodesic_closed_form(&SuiteOptions::default()).map_err(|e| e.to_string())?;
    ensure(sampled.passed(), format!("P5 sampled closed form {}", sampled.residual))?;
    Ok(format!(
        "{} connections x {DEVELOP_POINTS} initial conditions, worst {worst:.2e}; P5 closed form error {err:.1e}",
        connections.len()
    ))
}

fn infinitesimal() -> Outcome {
    let d2 = solve_infinitesimal(&RationalChristoffel::zero(2), 2)
        .map_err(|e| e.to_string())?
        .len();
    let d3 = solve_infinitesimal(&RationalChristoffel::zero(3), 2)
        .map_err(|e| e.to_string())?
        .len();
    ensure(d2 == 6 && d3 == 12, format!("flat dimensions {d2}, {d3}"))?;
    let mut exact = 0;
    let mut sampled = 0;
    for (name, alpha) in catalog_connections() {
        let lsa = catalog_lsa(&name, alpha.as_ref()).map_err(|e| e.to_string())?;
        let chart = pairing(&name, alpha.as_ref())
            .map_err(|e| e.to_string())?
            .devmap
            .chart();
        if chart == GroupChart::plane() {
            let r = check_constant_fields(&lsa, 2).map_err(|e| e.to_string())?;
            ensure(r.passed(), format!("{} {}", r.check, r.residual))?;
            let sys = InfinitesimalSystem::new(&RationalChristoffel::from_lsa(&lsa), 2).map_err(|e| e.to_string())?;
            ensure(
                sys.constant_field_violation().is_none(),
                format!("{name} constant fields"),
            )?;
            exact += 1;
        }
        let r = check_left_translation_fields(&lsa, chart, 1e-4, FD_TOL, SEED).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{} {}", r.check, r.residual))?;
        sampled += 1;
    }
    let pull = pullback_check(&SuiteOptions::default()).map_err(|e| e.to_string())?;
    ensure(pull.passed(), format!("D5 pullback residual {}", pull.residual))?;
    Ok(format!(
        "flat dims 6 and 12; constant fields exact for {exact} planar connections; \
         translation generators of {sampled} connections; D5 pullback residual {:.1e}",
        pull.residual.value()
    ))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_flat-affine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn determinism() -> Outcome {
    let a = cli(&["report", "all", "--seed", "42"]);
    let b = cli(&["report", "all", "--seed", "42"]);
    ensure(
        !a.stdout.is_empty() && a.stdout == b.stdout,
        "report all output differs between runs",
    )?;
    ensure(
        a.status.code() == Some(1),
        format!("report all exit {:?} without --allow-errata", a.status.code()),
    )?;
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let s = &doc["summary"];
    ensure(
        s["pass_count"]
            .as_u64()
            .zip(s["total"].as_u64())
            .is_some_and(|(p, t)| p + 2 == t),
        format!("summary {s}"),
    )?;
    let allowed = cli(&["report", "all", "--seed", "42", "--allow-errata"]);
    ensure(
        allowed.status.code() == Some(0),
        "errata-only failures should exit 0 with --allow-errata",
    )?;
    let fabricated = cli(&["verify", "devmap", "D5", "--tol", "1e-30", "--allow-errata"]);
    ensure(
        fabricated.status.code() == Some(1),
        format!("fabricated failure exit {:?}", fabricated.status.code()),
    )?;
    let usage = cli(&["verify", "lsa", "Q9"]);
    ensure(
        usage.status.code() == Some(2) && !usage.stderr.is_empty(),
        "unknown target should be a usage error",
    )?;
    Ok(format!(
        "{} identical bytes; exit codes 1 / 0 with --allow-errata / 1 on fabricated failure / 2 on usage error",
        a.stdout.len()
    ))
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter
    // restricts the run to matching criteria.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Criterion; 8] = [
        ("1 lsa axioms", lsa_axioms),
        ("2 equivariance", equivariance),
        ("3 stabilizer dimensions", dimension_table),
        ("4 matrix-product closure", closure),
        ("5 membership equivalence", membership_equivalence),
        ("6 geodesic development", geodesic_development),
        ("7 infinitesimal affine fields", infinitesimal),
        ("8 determinism and exit codes", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{:.2?}]", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why}) [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {failed} failed, total {:.2?}", start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
