//! Polynomial identities with unknown linear coefficients.
//!
//! A [`LinPoly`] is a polynomial in a few variables whose coefficients are
//! linear forms in a vector of unknowns. Requiring the polynomial to vanish
//! identically gives one linear constraint per monomial; [`match_coefficients`]
//! collects those constraints into a [`RationalMatrix`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::scalar::Rational;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

fn degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut m = vec![0; vars];
        m[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn monomial(exponents: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut d = m.clone();
            d[var] -= 1;
            out.add_term(d, c * Rational::from_integer(m[var].into()));
        }
        out
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = super::scalar::Scalar::to_f64(c);
                m.iter().zip(x).fold(c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }
}

/// Polynomial whose coefficients are linear forms in `unknowns` unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct LinPoly {
    vars: usize,
    unknowns: usize,
    terms: BTreeMap<Monomial, Vec<Rational>>,
}

impl LinPoly {
    pub fn zero(vars: usize, unknowns: usize) -> Self {
        Self {
            vars,
            unknowns,
            terms: BTreeMap::new(),
        }
    }

    /// `u_index * p`.
    pub fn unknown_times(unknowns: usize, index: usize, p: &Poly) -> Self {
        let mut out = Self::zero(p.vars, unknowns);
        for (m, c) in p.terms() {
            let mut coeffs = vec![Rational::zero(); unknowns];
            coeffs[index] = c.clone();
            out.terms.insert(m.clone(), coeffs);
        }
        out
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn add(&self, other: &LinPoly) -> LinPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out
                .terms
                .entry(m.clone())
                .or_insert_with(|| vec![Rational::zero(); self.unknowns]);
            for (a, b) in entry.iter_mut().zip(c) {
                *a += b;
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.iter().any(|v| !v.is_zero()));
    }

    pub fn scale(&self, s: &Rational) -> LinPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            for v in c.iter_mut() {
                *v *= s;
            }
        }
        out.prune();
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> LinPoly {
        let mut out = LinPoly::zero(self.vars, self.unknowns);
        for (ma, ca) in &self.terms {
            for (mb, cb) in p.terms() {
                let entry = out
                    .terms
                    .entry(mono_mul(ma, mb))
                    .or_insert_with(|| vec![Rational::zero(); self.unknowns]);
                for (a, b) in entry.iter_mut().zip(ca) {
                    *a += b * cb;
                }
            }
        }
        out.prune();
        out
    }

    pub fn derivative(&self, var: usize) -> LinPoly {
        let mut out = LinPoly::zero(self.vars, self.unknowns);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut d = m.clone();
            d[var] -= 1;
            let k = Rational::from_integer(m[var].into());
            out.terms.insert(d, c.iter().map(|v| v * &k).collect());
        }
        out.prune();
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(degree).max().unwrap_or(0)
    }

    /// Substitutes concrete values for the unknowns.
    pub fn substitute(&self, values: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            let v = c.iter().zip(values).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            out.add_term(m.clone(), v);
        }
        out
    }

    pub fn coefficient_rows(&self) -> impl Iterator<Item = (&Monomial, &Vec<Rational>)> {
        self.terms.iter()
    }
}

/// A batch of polynomial identities `p ≡ 0` sharing one vector of unknowns.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub unknowns: usize,
    pub max_degree: u32,
    pub identities: Vec<LinPoly>,
}

impl PolySystem {
    pub fn new(unknowns: usize, max_degree: u32) -> Self {
        Self {
            unknowns,
            max_degree,
            identities: Vec::new(),
        }
    }

    pub fn push(&mut self, identity: LinPoly) {
        self.identities.push(identity);
    }
}

/// One matrix row per monomial coefficient per identity.
pub fn match_coefficients(system: &PolySystem) -> Result<RationalMatrix> {
    let mut rows = Vec::new();
    for identity in &system.identities {
        if identity.unknowns() != system.unknowns {
            return Err(Error::DimensionMismatch {
                expected: system.unknowns,
                found: identity.unknowns(),
            });
        }
        let deg = identity.degree();
        if deg > system.max_degree {
            return Err(Error::DegreeOverflow {
                degree: deg,
                bound: system.max_degree,
            });
        }
        rows.extend(identity.coefficient_rows().map(|(_, c)| c.clone()));
    }
    if rows.is_empty() {
        return Ok(RationalMatrix::zeros(0, system.unknowns));
    }
    RationalMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{int, rat};

    #[test]
    fn scalar_identity_forces_zero() {
        // c·x ≡ 0
        let x = Poly::var(1, 0);
        let mut sys = PolySystem::new(1, 1);
        sys.push(LinPoly::unknown_times(1, 0, &x));
        let a = match_coefficients(&sys).unwrap();
        assert!(a.exact_nullspace().is_empty());
    }

    #[test]
    fn half_plane_tangency_gives_two_constraints() {
        // unknowns (m12, b1); identity m12·x2 + b1 ≡ 0
        let x2 = Poly::var(1, 0);
        let one = Poly::constant(1, int(1));
        let mut sys = PolySystem::new(2, 1);
        sys.push(LinPoly::unknown_times(2, 0, &x2).add(&LinPoly::unknown_times(2, 1, &one)));
        let a = match_coefficients(&sys).unwrap();
        assert_eq!(a.rows(), 2);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn degree_overflow_is_reported() {
        let x = Poly::var(1, 0);
        let mut sys = PolySystem::new(1, 1);
        sys.push(LinPoly::unknown_times(1, 0, &x.mul(&x)));
        assert!(matches!(
            match_coefficients(&sys),
            Err(Error::DegreeOverflow { degree: 2, bound: 1 })
        ));
    }

    #[test]
    fn derivative_and_substitution() {
        // p = 3x²y - y/2
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).mul(&y).scale(&int(3)).add(&y.scale(&rat(-1, 2)));
        let dx = p.derivative(0);
        assert_eq!(dx, x.mul(&y).scale(&int(6)));
        let lp = LinPoly::unknown_times(1, 0, &p);
        assert_eq!(lp.substitute(&[int(2)]), p.scale(&int(2)));
        assert!((p.eval_f64(&[1.0, 2.0]) - 5.0).abs() < 1e-15);
    }
}
