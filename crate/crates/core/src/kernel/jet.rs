//! Forward-mode jets over the rationals.
//!
//! A jet stores a value together with exact partial derivatives with respect to
//! every chart coordinate. Constants keep empty derivative vectors, which are
//! treated as all-zero and padded on demand, so lifting a constant costs nothing.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::Rational;
use super::scalar::Scalar;

fn zip_with(a: &[Rational], b: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
    let zero = Rational::zero();
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

/// First-order jet: value and full gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet1 {
    value: Rational,
    partials: Vec<Rational>,
}

impl Jet1 {
    pub fn new(value: Rational, partials: Vec<Rational>) -> Self {
        Jet1 { value, partials }
    }

    /// Partial derivative with respect to coordinate `i` (zero past the stored length).
    pub fn partial(&self, i: usize) -> Rational {
        self.partials.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Gradient padded to length `n`.
    pub fn gradient(&self, n: usize) -> Vec<Rational> {
        (0..n).map(|i| self.partial(i)).collect()
    }
}

impl Scalar for Jet1 {
    fn constant(value: Rational) -> Self {
        Jet1 { value, partials: Vec::new() }
    }

    fn coordinate(value: Rational, index: usize, n: usize) -> Self {
        let mut partials = vec![Rational::zero(); n];
        partials[index] = Rational::from_integer(1.into());
        Jet1 { value, partials }
    }

    fn value(&self) -> &Rational {
        &self.value
    }

    fn is_nil(&self) -> bool {
        self.value.is_zero() && self.partials.iter().all(Zero::is_zero)
    }

    fn recip(&self) -> Option<Self> {
        let inv = Scalar::recip(&self.value)?;
        let factor = -(&inv * &inv);
        Some(Jet1 {
            partials: self.partials.iter().map(|p| p * &factor).collect(),
            value: inv,
        })
    }

    fn scale(&self, factor: &Rational) -> Self {
        Jet1 {
            value: &self.value * factor,
            partials: self.partials.iter().map(|p| p * factor).collect(),
        }
    }
}

impl<'a> Add<&'a Jet1> for Jet1 {
    type Output = Jet1;
    fn add(self, rhs: &'a Jet1) -> Jet1 {
        Jet1 {
            value: self.value + &rhs.value,
            partials: zip_with(&self.partials, &rhs.partials, |a, b| a + b),
        }
    }
}

impl<'a> Sub<&'a Jet1> for Jet1 {
    type Output = Jet1;
    fn sub(self, rhs: &'a Jet1) -> Jet1 {
        Jet1 {
            value: self.value - &rhs.value,
            partials: zip_with(&self.partials, &rhs.partials, |a, b| a - b),
        }
    }
}

impl<'a> Mul<&'a Jet1> for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: &'a Jet1) -> Jet1 {
        let partials = zip_with(&self.partials, &rhs.partials, |da, db| {
            &self.value * db + &rhs.value * da
        });
        Jet1 { value: self.value * &rhs.value, partials }
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        Jet1 {
            value: -self.value,
            partials: self.partials.into_iter().map(|p| -p).collect(),
        }
    }
}

/// Second-order jet: value, gradient and symmetric Hessian (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    value: Rational,
    gradient: Vec<Rational>,
    hessian: Vec<Rational>,
    n: usize,
}

impl Jet2 {
    /// `hessian` is row-major `n x n`; it must be symmetric.
    pub fn new(value: Rational, gradient: Vec<Rational>, hessian: Vec<Rational>) -> Self {
        let n = gradient.len();
        assert_eq!(hessian.len(), n * n, "hessian must be n x n");
        Jet2 { value, gradient, hessian, n }
    }

    pub fn partial(&self, i: usize) -> Rational {
        self.gradient.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn second_partial(&self, i: usize, j: usize) -> Rational {
        if self.n == 0 {
            Rational::zero()
        } else {
            self.hessian[i * self.n + j].clone()
        }
    }

    /// The first-order jet of `∂_i` of this function.
    pub fn derivative(&self, i: usize) -> Jet1 {
        let partials = if self.n == 0 {
            Vec::new()
        } else {
            self.hessian[i * self.n..(i + 1) * self.n].to_vec()
        };
        Jet1::new(self.partial(i), partials)
    }

    /// Drops the second-order part.
    pub fn to_jet1(&self) -> Jet1 {
        Jet1::new(self.value.clone(), self.gradient.clone())
    }

    fn dim(&self, other: &Jet2) -> usize {
        self.n.max(other.n)
    }

    fn hess(&self, i: usize, j: usize) -> Rational {
        if self.n == 0 {
            Rational::zero()
        } else {
            self.hessian[i * self.n + j].clone()
        }
    }

    fn combine(&self, other: &Jet2, value: Rational, grad: impl Fn(&Rational, &Rational) -> Rational, hess: impl Fn(usize, usize) -> Rational) -> Jet2 {
        let n = self.dim(other);
        if n == 0 {
            return Jet2::constant(value);
        }
        let gradient = (0..n).map(|i| grad(&self.partial(i), &other.partial(i))).collect();
        let mut hessian = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                hessian.push(hess(i, j));
            }
        }
        Jet2 { value, gradient, hessian, n }
    }
}

impl Scalar for Jet2 {
    fn constant(value: Rational) -> Self {
        Jet2 { value, gradient: Vec::new(), hessian: Vec::new(), n: 0 }
    }

    fn coordinate(value: Rational, index: usize, n: usize) -> Self {
        let mut gradient = vec![Rational::zero(); n];
        gradient[index] = Rational::from_integer(1.into());
        Jet2 { value, gradient, hessian: vec![Rational::zero(); n * n], n }
    }

    fn value(&self) -> &Rational {
        &self.value
    }

    fn is_nil(&self) -> bool {
        self.value.is_zero()
            && self.gradient.iter().all(Zero::is_zero)
            && self.hessian.iter().all(Zero::is_zero)
    }

    fn recip(&self) -> Option<Self> {
        let inv = Scalar::recip(&self.value)?;
        if self.n == 0 {
            return Some(Jet2::constant(inv));
        }
        let inv2 = &inv * &inv;
        let inv3 = &inv2 * &inv;
        let two = Rational::from_integer(2.into());
        let n = self.n;
        let gradient = self.gradient.iter().map(|g| -(g * &inv2)).collect();
        let mut hessian = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let h = -(&self.hessian[i * n + j] * &inv2)
                    + &two * &self.gradient[i] * &self.gradient[j] * &inv3;
                hessian.push(h);
            }
        }
        Some(Jet2 { value: inv, gradient, hessian, n })
    }

    fn scale(&self, factor: &Rational) -> Self {
        Jet2 {
            value: &self.value * factor,
            gradient: self.gradient.iter().map(|g| g * factor).collect(),
            hessian: self.hessian.iter().map(|h| h * factor).collect(),
            n: self.n,
        }
    }
}

impl<'a> Add<&'a Jet2> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: &'a Jet2) -> Jet2 {
        let value = &self.value + &rhs.value;
        self.combine(rhs, value, |a, b| a + b, |i, j| self.hess(i, j) + rhs.hess(i, j))
    }
}

impl<'a> Sub<&'a Jet2> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: &'a Jet2) -> Jet2 {
        let value = &self.value - &rhs.value;
        self.combine(rhs, value, |a, b| a - b, |i, j| self.hess(i, j) - rhs.hess(i, j))
    }
}

impl<'a> Mul<&'a Jet2> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: &'a Jet2) -> Jet2 {
        let value = &self.value * &rhs.value;
        self.combine(
            rhs,
            value,
            |da, db| &self.value * db + &rhs.value * da,
            |i, j| {
                &self.value * rhs.hess(i, j)
                    + &rhs.value * self.hess(i, j)
                    + self.partial(i) * rhs.partial(j)
                    + rhs.partial(i) * self.partial(j)
            },
        )
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            gradient: self.gradient.into_iter().map(|g| -g).collect(),
            hessian: self.hessian.into_iter().map(|h| -h).collect(),
            n: self.n,
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self * &rhs
            }
        }
    };
}

owned_ops!(Jet1);
owned_ops!(Jet2);
