use proptest::prelude::*;

use flat_affine::affine::{AffineFrame, AffineMap};
use flat_affine::devmap::verify::check_homomorphism;
use flat_affine::devmap::{exp_map, geodesic, pairing, verify_equivariance, EtaleRep, LeftInvariantConnection};
use flat_affine::lsa::{
    bracket_of, catalog_lsa, infinitesimal_rep_from_lsa, is_flat_compatible, is_left_symmetric, lsa_from_etale,
    LSA_NAMES,
};
use flat_affine::numerics::{fd_second, mat_exp, rat, rk4, Matrix, Rational};
use flat_affine::stabilizer::algebra::check_tangency;
use flat_affine::stabilizer::membership::{oracle_preserves, preserves_boundary, preserves_open_set};
use flat_affine::stabilizer::{flow_of, is_lie_subalgebra, stabilizer_algebra, AffineField, DomainSpec};

fn invertible_map(n: usize) -> impl Strategy<Value = AffineMap<f64>> {
    (
        prop::collection::vec(-2.0..2.0f64, n * n),
        prop::collection::vec(-2.0..2.0f64, n),
    )
        .prop_filter_map("singular", move |(m, b)| {
            let a = Matrix::from_fn(n, n, |r, c| m[r * n + c]);
            (a.determinant().ok()?.abs() > 0.1)
                .then(|| AffineMap::new(a, b).ok())
                .flatten()
        })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

const SPECS: [(&str, usize); 10] = [
    ("punctured:1", 2),
    ("punctured:2", 3),
    ("orthant:1", 2),
    ("orthant:2", 2),
    ("orthant:1", 3),
    ("orthant:3", 3),
    ("parabola", 2),
    ("punctured-plane", 2),
    ("whole", 2),
    ("punctured:3", 3),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in invertible_map(2), b in invertible_map(2), c in invertible_map(2),
                                  x in prop::collection::vec(-3.0..3.0f64, 2)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(close(&left.apply(&x).unwrap(), &right.apply(&x).unwrap(), 1e-12));
    }

    #[test]
    fn inverse_undoes_the_map(t in invertible_map(3), x in prop::collection::vec(-3.0..3.0f64, 3)) {
        let back = t.invert().unwrap().apply(&t.apply(&x).unwrap()).unwrap();
        prop_assert!(close(&back, &x, 1e-9));
    }

    #[test]
    fn frame_images_determine_the_map(t in invertible_map(2)) {
        let frame = AffineFrame::standard(2);
        let images = frame.images(&t).unwrap();
        let fit = AffineMap::from_frame_images(&frame, &images).unwrap();
        prop_assert!(fit.map.distance(&t) < 1e-12);
    }

    #[test]
    fn nullspace_vectors_are_exact(entries in prop::collection::vec(-3i64..=3, 12)) {
        let a = Matrix::from_fn(3, 4, |r, c| rat(entries[r * 4 + c], 1));
        let basis = a.exact_nullspace();
        prop_assert_eq!(basis.len(), 4 - a.rank());
        for v in basis {
            prop_assert!(a.mul_vec(&v).unwrap().iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn exponential_is_a_one_parameter_group(m in prop::collection::vec(-2.5..2.5f64, 4), s in -10.0..10.0f64, t in -10.0..10.0f64) {
        let a = Matrix::from_fn(2, 2, |r, c| m[r * 2 + c]);
        let lhs = mat_exp(&a, s + t);
        let (es, et) = (mat_exp(&a, s), mat_exp(&a, t));
        let diff = lhs.sub(&es.mul(&et).unwrap()).unwrap().norm_inf();
        // Rounding in the product scales with the factors, which may cancel.
        let scale = es.norm_inf() * et.norm_inf();
        prop_assert!(diff <= 1e-11 * scale.max(1.0), "diff {diff:e} scale {scale:e}");
    }

    #[test]
    fn second_differences_are_exact_on_dyadic_quadratics(
        c in prop::collection::vec(-16i32..=16, 6),
        p in prop::collection::vec(-16i32..=16, 2),
        e in 10i32..=16,
    ) {
        let c: Vec<f64> = c.iter().map(|&v| v as f64 / 8.0).collect();
        let q = move |x: &[f64]| vec![c[0] * x[0] * x[0] + c[1] * x[0] * x[1] + c[2] * x[1] * x[1] + c[3] * x[0] + c[4] * x[1] + c[5]];
        let point: Vec<f64> = p.iter().map(|&v| v as f64 / 8.0).collect();
        let h = 2f64.powi(-e);
        let want = [[2.0 * c_at(&q, 0), c_at(&q, 1)], [c_at(&q, 1), 2.0 * c_at(&q, 2)]];
        for (i, row) in want.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                let got = fd_second(&q, &point, i, j, h).unwrap()[0];
                prop_assert!((got - w).abs() <= 1e-9, "{got} vs {w}");
            }
        }
    }

    #[test]
    fn family_entries_are_left_symmetric(alpha in rational()) {
        for name in ["F1", "F2"] {
            if name == "F2" && alpha == rat(0, 1) {
                continue;
            }
            let a = catalog_lsa(name, Some(&alpha)).unwrap();
            prop_assert!(is_left_symmetric(&a).passed());
            prop_assert!(is_flat_compatible(&a).passed());
            prop_assert_eq!(bracket_of(&a).jacobi_residual(), None);
        }
    }

    #[test]
    fn koszul_round_trip(index in 0usize..LSA_NAMES.len(), alpha in rational()) {
        let name = LSA_NAMES[index];
        prop_assume!(!(name == "F2" && alpha == rat(0, 1)));
        let a = catalog_lsa(name, Some(&alpha)).unwrap();
        let back = lsa_from_etale(&infinitesimal_rep_from_lsa(&a), &[rat(0, 1), rat(0, 1)]).unwrap();
        prop_assert_eq!(back.constants(), a.constants());
    }

    #[test]
    fn corrected_pairings_are_equivariant(seed in any::<u64>()) {
        for (d, rho) in [("D1", "rho1"), ("D2", "rho2"), ("D3", "rho3"), ("D4", "rho4-corrected"), ("D4-swapped", "rho4"),
                         ("D5", "rho5"), ("D6", "rho6-corrected")] {
            let dev = pairing(d, None).unwrap().devmap;
            let rep = EtaleRep::from_catalog(rho, None).unwrap();
            prop_assert!(verify_equivariance(&dev, &rep, 50, 1e-9, seed).unwrap().passed(), "{d}/{rho}");
            prop_assert!(check_homomorphism(&rep, 50, 1e-9, seed).unwrap().passed(), "{rho}");
        }
    }

    #[test]
    fn family_pairings_are_equivariant(alpha in rational(), seed in any::<u64>()) {
        prop_assume!(alpha != rat(0, 1));
        for name in ["F1", "F2"] {
            let p = pairing(name, Some(&alpha)).unwrap();
            let r = verify_equivariance(&p.devmap, &p.reps[0], 50, 1e-9, seed).unwrap();
            prop_assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn geodesics_retrace_under_reversal(x0 in prop::collection::vec(-1.0..1.0f64, 2), u0 in prop::collection::vec(-0.5..0.5f64, 2)) {
        let conn = LeftInvariantConnection::new(&catalog_lsa("P6", None).unwrap(), flat_affine::devmap::GroupChart::plane());
        let fwd = geodesic(&conn, &x0, &u0, 0.5, 50).unwrap();
        let back_v: Vec<f64> = fwd.velocities.last().unwrap().iter().map(|v| -v).collect();
        let back = geodesic(&conn, fwd.end(), &back_v, 0.5, 50).unwrap();
        prop_assert!(close(back.end(), &x0, 1e-9));
        prop_assert!(close(&exp_map(&conn, &x0, &u0.iter().map(|v| v * 0.5).collect::<Vec<_>>()).unwrap(), fwd.end(), 1e-9));
    }

    #[test]
    fn stabilizer_algebras_are_exact_lie_subalgebras(index in 0usize..SPECS.len()) {
        let (name, n) = SPECS[index];
        let alg = stabilizer_algebra(&DomainSpec::from_name(name, Some(n)).unwrap()).unwrap();
        prop_assert!(check_tangency(&alg).passed());
        prop_assert!(is_lie_subalgebra(&alg).passed());
    }

    #[test]
    fn flows_of_algebra_elements_preserve_the_domain(
        index in 0usize..SPECS.len(),
        coeffs in prop::collection::vec(-1.0..1.0f64, 12),
        t in prop::sample::select(vec![-2.0, -1.0, -0.5, 0.5, 1.0, 2.0]),
        seed in any::<u64>(),
    ) {
        let (name, n) = SPECS[index];
        let spec = DomainSpec::from_name(name, Some(n)).unwrap();
        let alg = stabilizer_algebra(&spec).unwrap();
        let mut m = Matrix::zeros(n, n);
        let mut b = vec![0.0; n];
        for (f, c) in alg.basis().iter().zip(&coeffs) {
            let f = f.to_f64();
            m = m.add(&f.m.scale(c)).unwrap();
            b.iter_mut().zip(&f.b).for_each(|(x, y)| *x += c * y);
        }
        let flow = flow_of(&AffineField::new(m, b), t);
        let r = preserves_open_set(&flow, &spec, 32, 1e-9, seed);
        prop_assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn oracle_preservers_preserve_the_boundary(t in invertible_map(2), index in 0usize..3, seed in any::<u64>()) {
        let spec = [DomainSpec::orthant(2, 1).unwrap(), DomainSpec::orthant(2, 2).unwrap(), DomainSpec::parabola()][index].clone();
        if oracle_preserves(&t, &spec, 25).passed() {
            prop_assert!(preserves_boundary(&t, &spec, 32, 1e-9, seed).passed());
        }
    }
}

fn c_at(q: &impl Fn(&[f64]) -> Vec<f64>, k: usize) -> f64 {
    // Coefficients recovered from exact dyadic evaluations.
    let f = |x: f64, y: f64| q(&[x, y])[0];
    match k {
        0 => (f(1.0, 0.0) + f(-1.0, 0.0) - 2.0 * f(0.0, 0.0)) / 2.0,
        1 => (f(1.0, 1.0) - f(1.0, -1.0) - f(-1.0, 1.0) + f(-1.0, -1.0)) / 4.0,
        _ => (f(0.0, 1.0) + f(0.0, -1.0) - 2.0 * f(0.0, 0.0)) / 2.0,
    }
}

#[test]
fn rk4_converges_at_fourth_order() {
    let err = |steps| {
        let path = rk4(|_, x: &[f64]| vec![x[0]], &[1.0], 1.0, steps, |_: &[f64]| true).unwrap();
        (path.states.last().unwrap()[0] - 1f64.exp()).abs()
    };
    let (e1, e2, e3) = (err(10), err(20), err(40));
    assert!(
        (e1 / e2).log2() >= 3.8 && (e2 / e3).log2() >= 3.8,
        "{e1:e} {e2:e} {e3:e}"
    );
}
