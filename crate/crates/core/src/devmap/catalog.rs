//! Closed-form developing maps and étale affine representations.
//!
//! The planar entries act on the additive group ℝ²; the `F` and `E` entries
//! live on the affine group of the line in the chart `(a, b)`, `a > 0`. Two
//! planar representations are stored twice: as printed in the source tables
//! and in a corrected form that actually intertwines with the developing map.

use num_traits::{One, Zero};

use super::chart::GroupChart;
use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::lsa::InfinitesimalAffineRep;
use crate::numerics::scalar::{fmt_rational, int, rat, Rational, Scalar};
use crate::numerics::Matrix;
use crate::stabilizer::domain::DomainSpec;

pub const DEVMAP_NAMES: [&str; 13] = [
    "D1",
    "D2",
    "D3",
    "D4",
    "D4-swapped",
    "D5",
    "D6",
    "F1",
    "F2",
    "E1",
    "E2",
    "E3",
    "E4",
];

pub const REP_NAMES: [&str; 14] = [
    "rho1",
    "rho2",
    "rho3",
    "rho4",
    "rho4-corrected",
    "rho5",
    "rho6",
    "rho6-corrected",
    "rho-F1",
    "rho-F2",
    "rho-E1",
    "rho-E2",
    "rho-E3",
    "rho-E4",
];

#[derive(Clone, Debug, PartialEq)]
enum MapFormula {
    D1,
    D2,
    D3,
    D4,
    D4Swapped,
    D5,
    D6,
    F1(f64),
    F2(f64),
    E1,
    E2,
    E3,
    E4,
}

#[derive(Clone, Debug)]
pub struct DevelopingMap {
    name: String,
    chart: GroupChart,
    formula: MapFormula,
    claimed_image: DomainSpec,
    image_note: String,
}

fn parameter_label(name: &str, alpha: Option<&Rational>) -> String {
    match alpha {
        Some(a) => format!("{name}({})", fmt_rational(a)),
        None => name.to_string(),
    }
}

fn need_alpha(name: &str, alpha: Option<&Rational>) -> Result<Rational> {
    alpha
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("{name} needs a parameter alpha")))
}

fn half_plane(name: &str, normal: [i64; 2]) -> DomainSpec {
    DomainSpec::half_space(name, vec![int(normal[0]), int(normal[1])], Rational::zero())
        .expect("coordinate half-planes are valid")
}

impl DevelopingMap {
    /// Catalog lookup. `F1` and `F2` need `alpha`, and `F2` rejects zero.
    pub fn from_catalog(name: &str, alpha: Option<&Rational>) -> Result<Self> {
        let plane = GroupChart::plane();
        let line = GroupChart::AffineLine;
        let whole = || DomainSpec::whole(2);
        let (chart, formula, image, note): (_, _, _, String) = match name {
            "D1" => (plane, MapFormula::D1, whole(), String::new()),
            "D2" => (plane, MapFormula::D2, whole(), String::new()),
            "D3" => (plane, MapFormula::D3, half_plane("upper-half-plane", [0, 1]), String::new()),
            "D4" => (
                plane,
                MapFormula::D4,
                half_plane("right-half-plane", [1, 0]),
                "the printed orbit description is the upper half-plane; (e^x, y e^x) covers the right half-plane".into(),
            ),
            "D4-swapped" => (
                plane,
                MapFormula::D4Swapped,
                half_plane("upper-half-plane", [0, 1]),
                "coordinate order of D4 exchanged; image is the upper half-plane".into(),
            ),
            "D5" => (plane, MapFormula::D5, DomainSpec::orthant(2, 2)?, String::new()),
            "D6" => (
                plane,
                MapFormula::D6,
                DomainSpec::punctured_plane(),
                "not injective: (x, y) and (x, y + 2π) share an image".into(),
            ),
            "F1" | "F2" => {
                let a = need_alpha(name, alpha)?;
                let af = a.to_f64();
                let sign = if a > Rational::zero() {
                    1
                } else if a < Rational::zero() {
                    -1
                } else {
                    0
                };
                if name == "F2" && sign == 0 {
                    return Err(Error::InvalidParameter("F2 requires alpha != 0".into()));
                }
                let formula = if name == "F1" { MapFormula::F1(af) } else { MapFormula::F2(af) };
                match sign {
                    0 => (line, formula, whole(), String::new()),
                    1 => (line, formula, half_plane("right-half-plane", [1, 0]), String::new()),
                    _ => (
                        line,
                        formula,
                        half_plane("left-half-plane", [-1, 0]),
                        "for negative alpha the first coordinate x^alpha/alpha is negative, so the image is the left half-plane rather than the stated right half-plane".into(),
                    ),
                }
            }
            "E1" => (line, MapFormula::E1, half_plane("right-half-plane", [1, 0]), String::new()),
            "E2" => (
                line,
                MapFormula::E2,
                half_plane("left-half-plane", [-1, 0]),
                "first coordinate -1/x is negative, so the image is the left half-plane rather than the stated right half-plane".into(),
            ),
            "E3" => (line, MapFormula::E3, DomainSpec::parabola(), String::new()),
            "E4" => (
                line,
                MapFormula::E4,
                DomainSpec::quadric_interior(
                    "x1 > -(x2^2+1)/2",
                    Matrix::diagonal(&[rat(-1, 2)]),
                    vec![int(0)],
                    rat(-1, 2),
                )?,
                "image is {x1 > -(x2^2+1)/2}, not the interior of the parabola x1 = (x2^2-1)/2".into(),
            ),
            other => return Err(Error::UnknownName(other.into())),
        };
        let name = if matches!(formula, MapFormula::F1(_) | MapFormula::F2(_)) {
            parameter_label(name, alpha)
        } else {
            name.to_string()
        };
        Ok(Self {
            name,
            chart,
            formula,
            claimed_image: image,
            image_note: note,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> GroupChart {
        self.chart
    }

    pub fn claimed_image(&self) -> &DomainSpec {
        &self.claimed_image
    }

    /// Discrepancy between the true image and its published description, if any.
    pub fn image_note(&self) -> &str {
        &self.image_note
    }

    pub fn eval(&self, p: &[f64]) -> Vec<f64> {
        let (x, y) = (p[0], p[1]);
        match self.formula {
            MapFormula::D1 => vec![x, y],
            MapFormula::D2 => vec![x + y * y / 2.0, y],
            MapFormula::D3 => vec![x, y.exp()],
            MapFormula::D4 => vec![x.exp(), y * x.exp()],
            MapFormula::D4Swapped => vec![y * x.exp(), x.exp()],
            MapFormula::D5 => vec![x.exp(), y.exp()],
            MapFormula::D6 => vec![x.exp() * y.cos(), x.exp() * y.sin()],
            MapFormula::F1(0.0) => vec![x.ln(), y],
            MapFormula::F1(a) => vec![x.powf(a) / a, y],
            MapFormula::F2(a) => vec![x.powf(a) / a, x.powf(a) * y],
            MapFormula::E1 => vec![x, 1.0 + x + y + x * x.ln()],
            MapFormula::E2 => vec![-1.0 / x, 1.0 / x + y / x + x.ln() - 1.0],
            MapFormula::E3 => vec![(x * x + y * y - 1.0) / 2.0, y],
            MapFormula::E4 => vec![(x * x - y * y - 1.0) / 2.0, y],
        }
    }

    /// Closed-form Jacobian `J[k][i] = ∂Dᵏ/∂xⁱ`.
    pub fn jacobian(&self, p: &[f64]) -> Matrix<f64> {
        let (x, y) = (p[0], p[1]);
        let rows = match self.formula {
            MapFormula::D1 => [[1.0, 0.0], [0.0, 1.0]],
            MapFormula::D2 => [[1.0, y], [0.0, 1.0]],
            MapFormula::D3 => [[1.0, 0.0], [0.0, y.exp()]],
            MapFormula::D4 => [[x.exp(), 0.0], [y * x.exp(), x.exp()]],
            MapFormula::D4Swapped => [[y * x.exp(), x.exp()], [x.exp(), 0.0]],
            MapFormula::D5 => [[x.exp(), 0.0], [0.0, y.exp()]],
            MapFormula::D6 => {
                let e = x.exp();
                [[e * y.cos(), -e * y.sin()], [e * y.sin(), e * y.cos()]]
            }
            MapFormula::F1(a) => [[x.powf(a - 1.0), 0.0], [0.0, 1.0]],
            MapFormula::F2(a) => [[x.powf(a - 1.0), 0.0], [a * x.powf(a - 1.0) * y, x.powf(a)]],
            MapFormula::E1 => [[1.0, 0.0], [2.0 + x.ln(), 1.0]],
            MapFormula::E2 => [[1.0 / (x * x), 0.0], [(x - 1.0 - y) / (x * x), 1.0 / x]],
            MapFormula::E3 => [[x, y], [0.0, 1.0]],
            MapFormula::E4 => [[x, -y], [0.0, 1.0]],
        };
        Matrix::from_fn(2, 2, |r, c| rows[r][c])
    }
}

#[derive(Clone, Debug, PartialEq)]
enum RepFormula {
    Rho1,
    Rho2,
    Rho3,
    Rho4,
    Rho4Corrected,
    Rho5,
    Rho6,
    Rho6Corrected,
    F1(f64),
    F2(f64),
    E1,
    E2,
    E3,
    E4,
}

/// An étale affine representation with its exact differential at the
/// identity and an exact base point of the open orbit.
#[derive(Clone, Debug)]
pub struct EtaleRep {
    name: String,
    chart: GroupChart,
    formula: RepFormula,
    differential: InfinitesimalAffineRep,
    base: Vec<Rational>,
    printed: bool,
}

fn gen(a: [[i64; 2]; 2], v: [i64; 2]) -> (Matrix<Rational>, Vec<Rational>) {
    (Matrix::from_fn(2, 2, |r, c| int(a[r][c])), vec![int(v[0]), int(v[1])])
}

fn rgen(a: [[Rational; 2]; 2], v: [Rational; 2]) -> (Matrix<Rational>, Vec<Rational>) {
    (Matrix::from_fn(2, 2, |r, c| a[r][c].clone()), v.to_vec())
}

impl EtaleRep {
    pub fn from_catalog(name: &str, alpha: Option<&Rational>) -> Result<Self> {
        let plane = GroupChart::plane();
        let line = GroupChart::AffineLine;
        let z = [[0, 0], [0, 0]];
        let i2 = [[1, 0], [0, 1]];
        let pt = |x: i64, y: i64| vec![int(x), int(y)];
        let (chart, formula, gens, base, printed) = match name {
            "rho1" => (
                plane,
                RepFormula::Rho1,
                vec![gen(z, [1, 0]), gen(z, [0, 1])],
                pt(0, 0),
                true,
            ),
            "rho2" => (
                plane,
                RepFormula::Rho2,
                vec![gen(z, [1, 0]), gen([[0, 1], [0, 0]], [0, 1])],
                pt(0, 0),
                true,
            ),
            "rho3" => (
                plane,
                RepFormula::Rho3,
                vec![gen(z, [1, 0]), gen([[0, 0], [0, 1]], [0, 0])],
                pt(0, 1),
                true,
            ),
            "rho4" => (
                plane,
                RepFormula::Rho4,
                vec![gen(i2, [0, 0]), gen([[0, 1], [0, 0]], [0, 0])],
                pt(0, 1),
                true,
            ),
            "rho4-corrected" => (
                plane,
                RepFormula::Rho4Corrected,
                vec![gen(i2, [0, 0]), gen([[0, 0], [1, 0]], [0, 0])],
                pt(1, 0),
                false,
            ),
            "rho5" => (
                plane,
                RepFormula::Rho5,
                vec![gen([[1, 0], [0, 0]], [0, 0]), gen([[0, 0], [0, 1]], [0, 0])],
                pt(1, 1),
                true,
            ),
            "rho6" => (
                plane,
                RepFormula::Rho6,
                vec![gen(i2, [0, 0]), gen([[0, 1], [-1, 0]], [0, 0])],
                pt(1, 0),
                true,
            ),
            "rho6-corrected" => (
                plane,
                RepFormula::Rho6Corrected,
                vec![gen(i2, [0, 0]), gen([[0, -1], [1, 0]], [0, 0])],
                pt(1, 0),
                false,
            ),
            "rho-F1" => {
                let a = need_alpha("F1", alpha)?;
                let shift = if a.is_zero() { int(1) } else { int(0) };
                let base = if a.is_zero() {
                    pt(0, 0)
                } else {
                    vec![Rational::one() / &a, int(0)]
                };
                let g1 = rgen([[a.clone(), int(0)], [int(0), int(1)]], [shift, int(0)]);
                (line, RepFormula::F1(a.to_f64()), vec![g1, gen(z, [0, 1])], base, true)
            }
            "rho-F2" => {
                let a = need_alpha("F2", alpha)?;
                if a.is_zero() {
                    return Err(Error::InvalidParameter("F2 requires alpha != 0".into()));
                }
                let g1 = rgen([[a.clone(), int(0)], [int(0), &a + int(1)]], [int(0), int(0)]);
                let g2 = rgen([[int(0), int(0)], [a.clone(), int(0)]], [int(0), int(0)]);
                let base = vec![Rational::one() / &a, int(0)];
                (line, RepFormula::F2(a.to_f64()), vec![g1, g2], base, true)
            }
            "rho-E1" => (
                line,
                RepFormula::E1,
                vec![gen([[1, 0], [1, 1]], [0, -1]), gen(z, [0, 1])],
                pt(1, 2),
                true,
            ),
            "rho-E2" => (
                line,
                RepFormula::E2,
                vec![gen([[-1, 0], [1, 0]], [0, 1]), gen([[0, 0], [-1, 0]], [0, 0])],
                pt(-1, 0),
                true,
            ),
            "rho-E3" => (
                line,
                RepFormula::E3,
                vec![gen([[2, 0], [0, 1]], [1, 0]), gen([[0, 1], [0, 0]], [0, 1])],
                pt(0, 0),
                true,
            ),
            "rho-E4" => (
                line,
                RepFormula::E4,
                vec![gen([[2, 0], [0, 1]], [1, 0]), gen([[0, -1], [0, 0]], [0, 1])],
                pt(0, 0),
                true,
            ),
            other => return Err(Error::UnknownName(other.into())),
        };
        let name = match formula {
            RepFormula::F1(_) | RepFormula::F2(_) => parameter_label(name, alpha),
            _ => name.to_string(),
        };
        Ok(Self {
            name,
            chart,
            formula,
            differential: InfinitesimalAffineRep::new(2, gens)?,
            base,
            printed,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> GroupChart {
        self.chart
    }

    /// False for the corrected variants that are not in the source tables.
    pub fn is_printed(&self) -> bool {
        self.printed
    }

    pub fn differential(&self) -> &InfinitesimalAffineRep {
        &self.differential
    }

    /// Base point of the open orbit, `D(identity)` for the paired map.
    pub fn exact_base(&self) -> Vec<Rational> {
        self.base.clone()
    }

    pub fn eval(&self, g: &[f64]) -> AffineMap<f64> {
        let (a, b) = (g[0], g[1]);
        let (lin, tr) = match self.formula {
            RepFormula::Rho1 => ([[1.0, 0.0], [0.0, 1.0]], [a, b]),
            RepFormula::Rho2 => ([[1.0, b], [0.0, 1.0]], [a + b * b / 2.0, b]),
            RepFormula::Rho3 => ([[1.0, 0.0], [0.0, b.exp()]], [a, 0.0]),
            RepFormula::Rho4 => {
                let e = a.exp();
                ([[e, b * e], [0.0, e]], [0.0, 0.0])
            }
            RepFormula::Rho4Corrected => {
                let e = a.exp();
                ([[e, 0.0], [b * e, e]], [0.0, 0.0])
            }
            RepFormula::Rho5 => ([[a.exp(), 0.0], [0.0, b.exp()]], [0.0, 0.0]),
            RepFormula::Rho6 => {
                let e = a.exp();
                ([[e * b.cos(), e * b.sin()], [-e * b.sin(), e * b.cos()]], [0.0, 0.0])
            }
            RepFormula::Rho6Corrected => {
                let e = a.exp();
                ([[e * b.cos(), -e * b.sin()], [e * b.sin(), e * b.cos()]], [0.0, 0.0])
            }
            RepFormula::F1(0.0) => ([[1.0, 0.0], [0.0, a]], [a.ln(), b]),
            RepFormula::F1(al) => ([[a.powf(al), 0.0], [0.0, a]], [0.0, b]),
            RepFormula::F2(al) => {
                let p = a.powf(al);
                ([[p, 0.0], [al * b * p, a * p]], [0.0, 0.0])
            }
            RepFormula::E1 => ([[a, 0.0], [a * a.ln(), a]], [0.0, 1.0 - a + b]),
            RepFormula::E2 => ([[1.0 / a, 0.0], [1.0 - (1.0 + b) / a, 1.0]], [0.0, a.ln()]),
            RepFormula::E3 => ([[a * a, a * b], [0.0, a]], [(a * a + b * b - 1.0) / 2.0, b]),
            RepFormula::E4 => ([[a * a, -a * b], [0.0, a]], [(a * a - b * b - 1.0) / 2.0, b]),
        };
        AffineMap::from_parts(Matrix::from_fn(2, 2, |r, c| lin[r][c]), tr.to_vec())
            .expect("2x2 linear part with a 2-vector translation")
    }
}

/// Developing map, representations (printed first) and LSA name of a
/// catalog connection. `name` is an LSA name (`P1`…`P6`, `F1`, `F2`,
/// `E1`…`E4`) or a developing-map name.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub lsa: String,
    pub devmap: DevelopingMap,
    pub reps: Vec<EtaleRep>,
}

pub fn pairing(name: &str, alpha: Option<&Rational>) -> Result<Pairing> {
    let (lsa, dev, reps): (&str, &str, &[&str]) = match name {
        "P1" | "D1" => ("P1", "D1", &["rho1"]),
        "P2" | "D2" => ("P2", "D2", &["rho2"]),
        "P3" | "D3" => ("P3", "D3", &["rho3"]),
        "P4" | "D4" => ("P4", "D4", &["rho4", "rho4-corrected"]),
        "D4-swapped" => ("P4", "D4-swapped", &["rho4"]),
        "P5" | "D5" => ("P5", "D5", &["rho5"]),
        "P6" | "D6" => ("P6", "D6", &["rho6", "rho6-corrected"]),
        "F1" => ("F1", "F1", &["rho-F1"]),
        "F2" => ("F2", "F2", &["rho-F2"]),
        "E1" => ("E1", "E1", &["rho-E1"]),
        "E2" => ("E2", "E2", &["rho-E2"]),
        "E3" => ("E3", "E3", &["rho-E3"]),
        "E4" => ("E4", "E4", &["rho-E4"]),
        other => return Err(Error::UnknownName(other.into())),
    };
    Ok(Pairing {
        lsa: lsa.into(),
        devmap: DevelopingMap::from_catalog(dev, alpha)?,
        reps: reps
            .iter()
            .map(|r| EtaleRep::from_catalog(r, alpha))
            .collect::<Result<_>>()?,
    })
}

/// Representation whose differential defines the planar LSA `P1`…`P6`.
pub fn planar_rep_for_lsa(name: &str) -> Result<EtaleRep> {
    let rep = match name {
        "P1" => "rho1",
        "P2" => "rho2",
        "P3" => "rho3",
        "P4" => "rho4-corrected",
        "P5" => "rho5",
        "P6" => "rho6-corrected",
        other => return Err(Error::UnknownName(other.into())),
    };
    EtaleRep::from_catalog(rep, None)
}

/// Representation that the given catalog entry names when it is a rep, LSA or
/// developing-map name; used by `verify rep`.
pub fn rep_lsa_name(rep: &str) -> Option<&'static str> {
    Some(match rep {
        "rho1" => "P1",
        "rho2" => "P2",
        "rho3" => "P3",
        "rho4" | "rho4-corrected" => "P4",
        "rho5" => "P5",
        "rho6" | "rho6-corrected" => "P6",
        "rho-F1" => "F1",
        "rho-F2" => "F2",
        "rho-E1" => "E1",
        "rho-E2" => "E2",
        "rho-E3" => "E3",
        "rho-E4" => "E4",
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fd_jacobian;

    fn alphas() -> Vec<Option<Rational>> {
        vec![Some(int(-2)), Some(rat(1, 2)), Some(int(3))]
    }

    #[test]
    fn closed_form_jacobians_match_finite_differences() {
        for name in DEVMAP_NAMES {
            let cases = if name.starts_with('F') { alphas() } else { vec![None] };
            for a in cases {
                let d = DevelopingMap::from_catalog(name, a.as_ref()).unwrap();
                let p = if d.chart() == GroupChart::AffineLine {
                    [1.3, -0.6]
                } else {
                    [0.4, -0.6]
                };
                let fd = fd_jacobian(|x| d.eval(x), &p, 1e-5).unwrap();
                let j = d.jacobian(&p);
                for k in 0..2 {
                    for i in 0..2 {
                        assert!((fd[k][i] - j[(k, i)]).abs() < 1e-7, "{} {k}{i}", d.name());
                    }
                }
            }
        }
    }

    #[test]
    fn base_is_image_of_identity() {
        for (dev, rep) in [
            ("D1", "rho1"),
            ("D2", "rho2"),
            ("D3", "rho3"),
            ("D4", "rho4-corrected"),
            ("D4-swapped", "rho4"),
            ("D5", "rho5"),
            ("D6", "rho6-corrected"),
            ("E1", "rho-E1"),
            ("E2", "rho-E2"),
            ("E3", "rho-E3"),
            ("E4", "rho-E4"),
        ] {
            let d = DevelopingMap::from_catalog(dev, None).unwrap();
            let r = EtaleRep::from_catalog(rep, None).unwrap();
            let want: Vec<f64> = r.exact_base().iter().map(Scalar::to_f64).collect();
            assert_eq!(d.eval(&d.chart().identity()), want, "{dev}");
        }
        for a in [int(0), int(2), rat(-1, 3)] {
            let d = DevelopingMap::from_catalog("F1", Some(&a)).unwrap();
            let r = EtaleRep::from_catalog("rho-F1", Some(&a)).unwrap();
            let want: Vec<f64> = r.exact_base().iter().map(Scalar::to_f64).collect();
            assert!((d.eval(&[1.0, 0.0])[0] - want[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_and_bad_parameters() {
        assert!(matches!(
            DevelopingMap::from_catalog("D7", None),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            DevelopingMap::from_catalog("F2", Some(&int(0))),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            EtaleRep::from_catalog("rho-F1", None),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(
            DevelopingMap::from_catalog("F2", Some(&int(-1))).unwrap().name(),
            "F2(-1)"
        );
    }
}
