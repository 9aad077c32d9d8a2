//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::jet::{Jet1, Jet2};
use super::rational::{format_rational, serde_rational, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Polynomial in `u^1..u^n`. Exponent vectors are dense per term; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// One serialized term: `{"coeff": "p/q", "exps": [e1, .., en]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The coordinate function `u^{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn monomial(coeff: Rational, exps: Vec<u32>) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// Builds from serialized terms; all exponent vectors must have the same length.
    pub fn from_terms(nvars: usize, terms: &[PolyTerm]) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for t in terms {
            if t.exps.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, got: t.exps.len() });
            }
            p.add_term(t.exps.clone(), t.coeff.clone());
        }
        Ok(p)
    }

    pub fn to_terms(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(e, c)| PolyTerm { coeff: c.clone(), exps: e.clone() })
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    fn check_same_ring(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `u^{i+1}` (0-based `i`).
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "partial index {i} for {} variables",
                self.nvars
            )));
        }
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    /// All first partials.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i).expect("in range")).collect()
    }

    /// Exact substitution of a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.check_arity(point.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluation over any scalar type, e.g. jets of the coordinates.
    pub fn eval_scalar<S: Scalar>(&self, point: &[S]) -> Result<S> {
        self.check_arity(point.len())?;
        let mut acc = S::nil();
        for (e, c) in &self.terms {
            let mut term = S::constant(c.clone());
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term * x;
                }
            }
            acc = acc + &term;
        }
        Ok(acc)
    }

    /// First-order jet: value and the formal partials evaluated at `point`.
    pub fn jet1(&self, point: &[Rational]) -> Result<Jet1> {
        let value = self.eval(point)?;
        let partials = self
            .gradient()
            .iter()
            .map(|d| d.eval(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet1::new(value, partials))
    }

    /// Second-order jet from formal first and second partials.
    pub fn jet2(&self, point: &[Rational]) -> Result<Jet2> {
        let value = self.eval(point)?;
        let grad = self.gradient();
        let gradient = grad.iter().map(|d| d.eval(point)).collect::<Result<Vec<_>>>()?;
        let n = self.nvars;
        let mut hessian = Vec::with_capacity(n * n);
        for d in &grad {
            for j in 0..n {
                hessian.push(d.partial(j)?.eval(point)?);
            }
        }
        Ok(Jet2::new(value, gradient, hessian))
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got });
        }
        Ok(())
    }
}

/// Order 1 or 2 jet lift of a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum LiftedJet {
    First(Jet1),
    Second(Jet2),
}

/// Lifts `p` to a jet of the requested order (1 or 2) at `point`.
pub fn jet_lift(p: &Poly, point: &[Rational], order: u8) -> Result<LiftedJet> {
    match order {
        1 => Ok(LiftedJet::First(p.jet1(point)?)),
        2 => Ok(LiftedJet::Second(p.jet2(point)?)),
        other => Err(Error::IndexOutOfRange(format!("jet order {other} (expected 1 or 2)"))),
    }
}

/// Formal partial `∂p/∂u^{i+1}`.
pub fn poly_partial(p: &Poly, i: usize) -> Result<Poly> {
    p.partial(i)
}

impl<'a> Add<&'a Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_same_ring(rhs);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*u{}", i + 1)?,
                    _ => write!(f, "*u{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
