//! Polynomial one- and two-forms in coordinates.

use num_traits::Zero;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `ω = Σ ω_i du^i` with polynomial components.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm(pub Vec<Poly>);

/// Antisymmetric `n x n` matrix of polynomials, `Σ_{i<j} θ_ij du^i ∧ du^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    n: usize,
    entries: Vec<Poly>,
}

impl OneForm {
    pub fn zero(n: usize) -> Self {
        OneForm(vec![Poly::zero(n); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.0[i]
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Multiplies every component by the function `f`.
    pub fn mul_fn(&self, f: &Poly) -> OneForm {
        OneForm(self.0.iter().map(|w| f * w).collect())
    }
}

impl TwoForm {
    pub fn zero(n: usize) -> Self {
        TwoForm { n, entries: vec![Poly::zero(n); n * n] }
    }

    /// Builds from the upper triangle; `f(i, j)` is only called for `i < j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut t = TwoForm::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                t.entries[j * n + i] = -&v;
                t.entries[i * n + j] = v;
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm::from_upper(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    /// First nonzero component `(i, j)` with `i < j`.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).is_zero())
    }
}

/// Gradient `df` as a one-form.
pub fn grad(f: &Poly) -> OneForm {
    OneForm(f.gradient())
}

/// Coordinate exterior derivative: `(dω)_ij = ∂_i ω_j − ∂_j ω_i`.
pub fn exterior_d(omega: &OneForm) -> TwoForm {
    let n = omega.dim();
    TwoForm::from_upper(n, |i, j| {
        let a = omega.0[j].partial(i).expect("index within form dimension");
        let b = omega.0[i].partial(j).expect("index within form dimension");
        &a - &b
    })
}

/// Primitive of a closed polynomial one-form, normalized to vanish at the origin.
///
/// Uses the radial homotopy: every degree-`d` monomial of `Σ_i ω_i u^i` is divided by `d`.
pub fn integrate_radial(omega: &OneForm) -> Result<Poly> {
    let d = exterior_d(omega);
    if let Some((i, j)) = d.first_nonzero() {
        return Err(Error::NotClosed { i, j });
    }
    let n = omega.dim();
    let mut contracted = Poly::zero(n);
    for (i, w) in omega.0.iter().enumerate() {
        contracted = contracted + &(w * &Poly::var(n, i));
    }
    let mut out = Poly::zero(n);
    for (exps, coeff) in contracted.terms() {
        let degree: u32 = exps.iter().sum();
        debug_assert!(degree > 0 && !coeff.is_zero());
        let c = coeff / Rational::from_integer(degree.into());
        out = out + &Poly::monomial(c, exps.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn u(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn exact_form_is_closed() {
        let omega = OneForm(vec![u(1), u(0)]);
        assert!(exterior_d(&omega).is_zero());
    }

    #[test]
    fn non_closed_component() {
        let omega = OneForm(vec![u(1), Poly::zero(2)]);
        let d = exterior_d(&omega);
        assert_eq!(d.get(0, 1), &Poly::constant(2, int(-1)));
        assert_eq!(d.get(1, 0), &Poly::constant(2, int(1)));
    }

    #[test]
    fn zero_form() {
        assert!(exterior_d(&OneForm::zero(3)).is_zero());
        assert!(integrate_radial(&OneForm::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn kodama_konopelchenko_first_density() {
        // ω = (−u¹, −1) integrates to −(u¹)²/2 − u²
        let omega = OneForm(vec![-u(0), Poly::constant(2, int(-1))]);
        let a = integrate_radial(&omega).unwrap();
        let expected = (&u(0) * &u(0)).scale(&rat(-1, 2)) - u(1);
        assert_eq!(a, expected);
    }

    #[test]
    fn round_trip_exact_form() {
        let omega = OneForm(vec![u(1), u(0)]);
        assert_eq!(integrate_radial(&omega).unwrap(), &u(0) * &u(1));
    }

    #[test]
    fn rejects_non_closed() {
        let omega = OneForm(vec![u(1), Poly::zero(2)]);
        assert_eq!(integrate_radial(&omega), Err(Error::NotClosed { i: 0, j: 1 }));
    }
}
