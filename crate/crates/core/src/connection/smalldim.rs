//! Hard-coded closed forms for every non-semisimple configuration with `n <= 5`.
//!
//! Each table lists the nonzero `Γ^k_{ij}` (1-based, up to `i <-> j`) of one
//! configuration with blocks in non-increasing order, as closed rational
//! expressions in the coordinates. Weights are named by the flat index of their
//! block's first coordinate, so in `[2, 1]` the second weight is `e(3)`.
//! Other block orders are handled by relabelling; all-ones configurations use the
//! semisimple closed form.
//!
//! The printed source tables omit a handful of entries and carry one coefficient
//! slip; those are listed in [`ERRATA`] and applied on top of the literal
//! transcription. [`literal_smalldim_table`] returns the uncorrected version.

use std::collections::HashMap;

use num_traits::Zero;

use super::{check_arity, gamma_semisimple_oracle, ChristoffelTable};
use crate::error::{Error, Result};
use crate::jordan::{require_regular, BlockConfig, Tensor3};
use crate::kernel::Rational;

/// Configurations covered by a literal table.
pub const SMALLDIM_SHAPES: [&[usize]; 13] = [
    &[2],
    &[3],
    &[2, 1],
    &[4],
    &[3, 1],
    &[2, 2],
    &[2, 1, 1],
    &[5],
    &[4, 1],
    &[3, 2],
    &[3, 1, 1],
    &[2, 2, 1],
    &[2, 1, 1, 1],
];

/// A correction to a printed table: shape, 1-based `(k, i, j)` and what was wrong.
pub struct Erratum {
    pub shape: &'static [usize],
    pub slot: (usize, usize, usize),
    pub note: &'static str,
}

/// Entries where the printed tables disagree with the unit-flatness condition
/// `Σ_σ Γ^i_{1(σ) j} = 0`; the corrected values below are the ones that satisfy it.
pub const ERRATA: [Erratum; 5] = [
    Erratum { shape: &[3, 1], slot: (2, 2, 4), note: "missing entry e4/(u1-u4)" },
    Erratum { shape: &[2, 2], slot: (2, 2, 3), note: "missing entry 2e3/(u1-u3)" },
    Erratum { shape: &[2, 1, 1], slot: (4, 1, 1), note: "missing entry 2e1/(u1-u4)" },
    Erratum { shape: &[2, 1, 1], slot: (4, 3, 3), note: "missing entry e3/(u3-u4)" },
    Erratum { shape: &[2, 2, 1], slot: (5, 5, 5), note: "coefficient of e3/(u3-u5) is 2, printed as 1" },
];

struct Sheet<'a> {
    t: Tensor3<Rational>,
    u: &'a [Rational],
    weight_at: HashMap<usize, Rational>,
}

impl<'a> Sheet<'a> {
    fn new(config: &BlockConfig, u: &'a [Rational]) -> Self {
        let weight_at = (0..config.blocks())
            .map(|b| (config.offset(b) + 1, config.weight(b).clone()))
            .collect();
        Sheet { t: Tensor3::zeros(u.len()), u, weight_at }
    }

    fn u(&self, i: usize) -> Rational {
        self.u[i - 1].clone()
    }

    fn e(&self, i: usize) -> Rational {
        self.weight_at[&i].clone()
    }

    /// `u^a − u^b`
    fn d(&self, a: usize, b: usize) -> Rational {
        self.u(a) - self.u(b)
    }

    /// Sets `value` at every slot in `plus` and `−value` at every slot in `minus`.
    fn put(&mut self, value: Rational, plus: &[(usize, usize, usize)], minus: &[(usize, usize, usize)]) {
        for &(k, i, j) in plus {
            self.t.set(k - 1, i - 1, j - 1, value.clone());
        }
        for &(k, i, j) in minus {
            self.t.set(k - 1, i - 1, j - 1, -value.clone());
        }
    }

    fn get(&self, k: usize, i: usize, j: usize) -> Rational {
        self.t.get(k - 1, i - 1, j - 1).clone()
    }
}

fn pow(x: &Rational, e: i32) -> Rational {
    num_traits::pow::Pow::pow(x, e)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn fill(shape: &[usize], s: &mut Sheet) {
    match shape {
        [2] => {
            let v = -int(2) * s.e(1) / s.u(2);
            s.put(v, &[(2, 2, 2)], &[]);
        }
        [3] => {
            let e1 = s.e(1);
            s.put(-int(3) * &e1 / s.u(2), &[(2, 2, 2), (3, 2, 3)], &[]);
            s.put(int(3) * &e1 * s.u(3) / pow(&s.u(2), 2), &[(3, 2, 2)], &[]);
        }
        [2, 1] => {
            let (e1, e3, d13) = (s.e(1), s.e(3), s.d(1, 3));
            s.put(-int(2) * &e1 / s.u(2), &[(2, 2, 2)], &[]);
            s.put(&e3 / &d13, &[(1, 1, 3), (2, 2, 3)], &[(1, 1, 1), (1, 3, 3), (2, 1, 2)]);
            s.put(int(2) * &e1 / &d13, &[(3, 1, 1), (3, 3, 3)], &[(3, 1, 3)]);
            s.put(&e3 * s.u(2) / pow(&d13, 2), &[(2, 1, 1), (2, 3, 3)], &[(2, 1, 3)]);
        }
        [4] => {
            let e1 = s.e(1);
            let (u2, u3, u4) = (s.u(2), s.u(3), s.u(4));
            s.put(-int(4) * &e1 / &u2, &[(2, 2, 2), (3, 2, 3), (4, 3, 3), (4, 2, 4)], &[]);
            s.put(int(4) * &e1 * &u3 / pow(&u2, 2), &[(3, 2, 2), (4, 2, 3)], &[]);
            s.put(int(4) * &e1 * (&u2 * &u4 - pow(&u3, 2)) / pow(&u2, 3), &[(4, 2, 2)], &[]);
        }
        [3, 1] => {
            let (e1, e4, d14) = (s.e(1), s.e(4), s.d(1, 4));
            let (u2, u3) = (s.u(2), s.u(3));
            s.put(-int(3) * &e1 / &u2, &[(2, 2, 2), (3, 2, 3)], &[]);
            s.put(
                &e4 * &u3 / pow(&d14, 2) - &e4 * pow(&u2, 2) / pow(&d14, 3),
                &[(3, 1, 1), (3, 4, 4)],
                &[(3, 1, 4)],
            );
            s.put(int(3) * &e1 / &d14, &[(4, 1, 1), (4, 4, 4)], &[(4, 1, 4)]);
            s.put(&e4 * &u2 / pow(&d14, 2), &[(3, 1, 2), (2, 1, 1), (2, 4, 4)], &[(3, 2, 4), (2, 1, 4)]);
            s.put(
                &e4 / &d14,
                &[(3, 3, 4), (1, 1, 4)],
                &[(3, 1, 3), (2, 1, 2), (1, 1, 1), (1, 4, 4)],
            );
            s.put(int(3) * &e1 * &u3 / pow(&u2, 2) - &e4 / &d14, &[(3, 2, 2)], &[]);
        }
        [2, 2] => {
            let (e1, e3, d13) = (s.e(1), s.e(3), s.d(1, 3));
            s.put(-int(2) * &e1 / s.u(2), &[(2, 2, 2)], &[]);
            s.put(-int(2) * &e3 / s.u(4), &[(4, 4, 4)], &[]);
            s.put(int(2) * &e3 / &d13, &[(1, 1, 3)], &[(2, 1, 2), (1, 1, 1), (1, 3, 3)]);
            s.put(int(2) * &e1 / &d13, &[(3, 1, 1), (4, 3, 4), (3, 3, 3)], &[(3, 1, 3), (4, 1, 4)]);
            s.put(int(2) * &e3 * s.u(2) / pow(&d13, 2), &[(2, 1, 1), (2, 3, 3)], &[(2, 1, 3)]);
            s.put(int(2) * &e1 * s.u(4) / pow(&d13, 2), &[(4, 1, 1), (4, 3, 3)], &[(4, 1, 3)]);
        }
        [2, 1, 1] => {
            let (e1, e3, e4) = (s.e(1), s.e(3), s.e(4));
            let (d13, d14, d34) = (s.d(1, 3), s.d(1, 4), s.d(3, 4));
            let u2 = s.u(2);
            s.put(-int(2) * &e1 / &u2, &[(2, 2, 2)], &[]);
            s.put(&e3 / &d13, &[(1, 1, 3), (2, 2, 3)], &[(1, 3, 3)]);
            s.put(&e4 / &d14, &[(1, 1, 4), (2, 2, 4)], &[(1, 4, 4)]);
            s.put(&e4 / &d34, &[(3, 3, 4)], &[(3, 4, 4)]);
            s.put(-(&e3 / &d34), &[(4, 3, 4)], &[]);
            s.put(-int(2) * &e1 / &d13, &[(3, 1, 3)], &[(3, 1, 1)]);
            s.put(-int(2) * &e1 / &d14, &[(4, 1, 4)], &[]);
            s.put(&e3 * &u2 / pow(&d13, 2), &[(2, 3, 3)], &[(2, 1, 3)]);
            s.put(&e4 * &u2 / pow(&d14, 2), &[(2, 4, 4)], &[(2, 1, 4)]);
            s.put(s.get(1, 3, 3) + s.get(1, 4, 4), &[(1, 1, 1), (2, 1, 2)], &[]);
            s.put(s.get(2, 3, 3) + s.get(2, 4, 4), &[(2, 1, 1)], &[]);
            s.put(int(2) * &e1 / &d13 - &e4 / &d34, &[(3, 3, 3)], &[]);
            s.put(int(2) * &e1 / &d14 + &e3 / &d34, &[(4, 4, 4)], &[]);
        }
        [5] => {
            let e1 = s.e(1);
            let (u2, u3, u4, u5) = (s.u(2), s.u(3), s.u(4), s.u(5));
            s.put(
                -int(5) * &e1 / &u2,
                &[(2, 2, 2), (3, 2, 3), (4, 3, 3), (4, 2, 4), (5, 2, 5), (5, 3, 4)],
                &[],
            );
            s.put(int(5) * &e1 * &u3 / pow(&u2, 2), &[(3, 2, 2), (4, 2, 3), (5, 2, 4), (5, 3, 3)], &[]);
            s.put(int(5) * &e1 * (&u2 * &u4 - pow(&u3, 2)) / pow(&u2, 3), &[(4, 2, 2), (5, 2, 3)], &[]);
            s.put(
                int(5) * &e1 * (pow(&u2, 2) * &u5 - int(2) * &u2 * &u3 * &u4 + pow(&u3, 3)) / pow(&u2, 4),
                &[(5, 2, 2)],
                &[],
            );
        }
        [4, 1] => {
            let (e1, e5, d15) = (s.e(1), s.e(5), s.d(1, 5));
            let (u2, u3, u4) = (s.u(2), s.u(3), s.u(4));
            s.put(-int(4) * &e1 / &u2, &[(2, 2, 2), (3, 2, 3), (4, 2, 4), (4, 3, 3)], &[]);
            s.put(&e5 / &d15, &[(1, 1, 5), (2, 2, 5), (3, 3, 5), (4, 4, 5)], &[]);
            s.put(-(&e5 / &d15), &[(1, 5, 5), (2, 1, 2), (1, 1, 1), (3, 1, 3), (4, 1, 4)], &[]);
            s.put(int(4) * &e1 / &d15, &[(5, 1, 1), (5, 5, 5)], &[(5, 1, 5)]);
            s.put(
                &e5 * &u2 / pow(&d15, 2),
                &[(2, 1, 1), (2, 5, 5), (3, 1, 2), (4, 1, 3)],
                &[(2, 1, 5), (3, 2, 5), (4, 3, 5)],
            );
            s.put(
                &e5 * &u3 / pow(&d15, 2) - &e5 * pow(&u2, 2) / pow(&d15, 3),
                &[(3, 1, 1), (3, 5, 5), (4, 1, 2)],
                &[(3, 1, 5), (4, 2, 5)],
            );
            s.put(int(4) * &e1 * &u3 / pow(&u2, 2) - &e5 / &d15, &[(3, 2, 2), (4, 2, 3)], &[]);
            s.put(
                &e5 * pow(&u2, 3) / pow(&d15, 4) - int(2) * &e5 * &u2 * &u3 / pow(&d15, 3) + &e5 * &u4 / pow(&d15, 2),
                &[(4, 1, 1), (4, 5, 5)],
                &[(4, 1, 5)],
            );
            s.put(
                int(4) * &e1 * (&u2 * &u4 - pow(&u3, 2)) / pow(&u2, 3) + &e5 * &u2 / pow(&d15, 2),
                &[(4, 2, 2)],
                &[],
            );
        }
        [3, 2] => {
            let (e1, e4, d14) = (s.e(1), s.e(4), s.d(1, 4));
            let (u1, u2, u3, u4, u5) = (s.u(1), s.u(2), s.u(3), s.u(4), s.u(5));
            s.put(
                int(2) * &e4 / &d14,
                &[(1, 1, 4), (2, 2, 4), (3, 3, 4)],
                &[(1, 1, 1), (1, 4, 4), (2, 1, 2), (3, 1, 3)],
            );
            s.put(int(2) * &u2 * &e4 / pow(&d14, 2), &[(2, 1, 1), (2, 4, 4), (3, 1, 2)], &[(2, 1, 4), (3, 2, 4)]);
            s.put(-int(3) * &e1 / &u2, &[(2, 2, 2), (3, 2, 3)], &[]);
            s.put(-int(2) * &e4 / &u5, &[(5, 5, 5)], &[]);
            s.put(int(3) * &e1 * &u3 / pow(&u2, 2) - int(2) * &e4 / &d14, &[(3, 2, 2)], &[]);
            s.put(
                int(2) * &e4 * (&u1 * &u3 - pow(&u2, 2) - &u3 * &u4) / pow(&d14, 3),
                &[(3, 1, 1), (3, 4, 4)],
                &[(3, 1, 4)],
            );
            s.put(int(3) * &e1 / &d14, &[(4, 1, 1), (4, 4, 4), (5, 4, 5)], &[(4, 1, 4), (5, 1, 5)]);
            s.put(int(3) * &u5 * &e1 / pow(&d14, 2), &[(5, 1, 1), (5, 4, 4)], &[(5, 1, 4)]);
        }
        [3, 1, 1] => {
            let (e1, e4, e5) = (s.e(1), s.e(4), s.e(5));
            let (d14, d15, d45) = (s.d(1, 4), s.d(1, 5), s.d(4, 5));
            let (u1, u2, u3, u4, u5) = (s.u(1), s.u(2), s.u(3), s.u(4), s.u(5));
            s.put(-int(3) * &e1 / &u2, &[(3, 2, 3), (2, 2, 2)], &[]);
            s.put(&e4 / &d14, &[(1, 1, 4), (2, 2, 4), (3, 3, 4)], &[(1, 4, 4)]);
            s.put(&e5 / &d15, &[(1, 1, 5), (2, 2, 5), (3, 3, 5)], &[(1, 5, 5)]);
            s.put(&e5 / &d45, &[(4, 4, 5)], &[(4, 5, 5)]);
            s.put(&e4 / &d45, &[(5, 4, 4)], &[(5, 4, 5)]);
            s.put(int(3) * &e1 / &d14, &[(4, 1, 1)], &[(4, 1, 4)]);
            s.put(int(3) * &e1 / &d15, &[(5, 1, 1)], &[(5, 1, 5)]);
            s.put(&e4 * &u2 / pow(&d14, 2) + &e5 * &u2 / pow(&d15, 2), &[(2, 1, 1), (3, 1, 2)], &[]);
            s.put(&u2 * &e4 / pow(&d14, 2), &[(2, 4, 4)], &[(2, 1, 4), (3, 2, 4)]);
            s.put(&u2 * &e5 / pow(&d15, 2), &[(2, 5, 5)], &[(2, 1, 5), (3, 2, 5)]);
            s.put(-(&e4 / &d14) - &e5 / &d15, &[(1, 1, 1), (2, 1, 2), (3, 1, 3)], &[]);
            s.put(
                &e4 * (-pow(&u2, 2) + &d14 * &u3) / pow(&d14, 3) + &e5 * (-pow(&u2, 2) + &d15 * &u3) / pow(&d15, 3),
                &[(3, 1, 1)],
                &[],
            );
            s.put(&e4 * (&u1 * &u3 - pow(&u2, 2) - &u3 * &u4) / pow(&d14, 3), &[(3, 4, 4)], &[(3, 1, 4)]);
            s.put(&e5 * (&u1 * &u3 - pow(&u2, 2) - &u3 * &u5) / pow(&d15, 3), &[(3, 5, 5)], &[(3, 1, 5)]);
            s.put(int(3) * &e1 / &d14 - &e5 / &d45, &[(4, 4, 4)], &[]);
            s.put(int(3) * &e1 / &d15 + &e4 / &d45, &[(5, 5, 5)], &[]);
            s.put(int(3) * &u3 * &e1 / pow(&u2, 2) - &e4 / &d14 - &e5 / &d15, &[(3, 2, 2)], &[]);
        }
        [2, 2, 1] => {
            let (e1, e3, e5) = (s.e(1), s.e(3), s.e(5));
            let (d13, d15, d35) = (s.d(1, 3), s.d(1, 5), s.d(3, 5));
            let (u2, u4) = (s.u(2), s.u(4));
            s.put(-int(2) * &e3 / &d13 - &e5 / &d15, &[(1, 1, 1), (2, 1, 2)], &[]);
            s.put(int(2) * &e1 / &d13 - &e5 / &d35, &[(3, 3, 3), (4, 3, 4)], &[]);
            s.put(-int(2) * &e3 / &d13, &[(1, 3, 3)], &[(1, 1, 3)]);
            s.put(&e5 / &d15, &[(1, 1, 5), (2, 2, 5)], &[(1, 5, 5)]);
            s.put(int(2) * &u2 * &e3 / pow(&d13, 2) + &u2 * &e5 / pow(&d15, 2), &[(2, 1, 1)], &[]);
            s.put(int(2) * &u2 * &e3 / pow(&d13, 2), &[(2, 3, 3)], &[(2, 1, 3)]);
            s.put(&u2 * &e5 / pow(&d15, 2), &[(2, 5, 5)], &[(2, 1, 5)]);
            s.put(-int(2) * &e1 / &u2, &[(2, 2, 2)], &[]);
            s.put(-int(2) * &e3 / &u4, &[(4, 4, 4)], &[]);
            s.put(int(2) * &e3 / &d13, &[(2, 2, 3)], &[]);
            s.put(int(2) * &e1 / &d13, &[(3, 1, 1)], &[(3, 1, 3), (4, 1, 4)]);
            s.put(&e5 / &d35, &[(3, 3, 5), (4, 4, 5)], &[(3, 5, 5)]);
            s.put(int(2) * &e1 * &u4 / pow(&d13, 2), &[(4, 1, 1)], &[(4, 1, 3)]);
            s.put(int(2) * &u4 * &e1 / pow(&d13, 2) + &u4 * &e5 / pow(&d35, 2), &[(4, 3, 3)], &[]);
            s.put(&u4 * &e5 / pow(&d35, 2), &[(4, 5, 5)], &[(4, 3, 5)]);
            s.put(int(2) * &e1 / &d15, &[(5, 1, 1)], &[(5, 1, 5)]);
            s.put(int(2) * &e3 / &d35, &[(5, 3, 3)], &[(5, 3, 5)]);
            s.put(int(2) * &e1 / &d15 + &e3 / &d35, &[(5, 5, 5)], &[]);
        }
        [2, 1, 1, 1] => {
            let (e1, e3, e4, e5) = (s.e(1), s.e(3), s.e(4), s.e(5));
            let (d13, d14, d15) = (s.d(1, 3), s.d(1, 4), s.d(1, 5));
            let (d34, d35, d45) = (s.d(3, 4), s.d(3, 5), s.d(4, 5));
            let u2 = s.u(2);
            s.put(-(&e3 / &d13) - &e4 / &d14 - &e5 / &d15, &[(1, 1, 1), (2, 1, 2)], &[]);
            s.put(&e3 / &d13, &[(1, 1, 3)], &[(1, 3, 3)]);
            s.put(&e4 / &d14, &[(1, 1, 4)], &[]);
            s.put(&e5 / &d15, &[(1, 1, 5)], &[(1, 5, 5)]);
            s.put(-(&e4 / &d14), &[(1, 4, 4)], &[]);
            s.put(
                &e3 * &u2 / pow(&d13, 2) + &e4 * &u2 / pow(&d14, 2) + &e5 * &u2 / pow(&d15, 2),
                &[(2, 1, 1)],
                &[],
            );
            s.put(-(&u2 * &e3 / pow(&d13, 2)), &[(2, 1, 3)], &[]);
            s.put(-(&u2 * &e4 / pow(&d14, 2)), &[(2, 1, 4)], &[]);
            s.put(-(&u2 * &e5 / pow(&d15, 2)), &[(2, 1, 5)], &[]);
            s.put(-int(2) * &e1 / &u2, &[(2, 2, 2)], &[]);
            s.put(&e3 / &d13, &[(2, 2, 3)], &[]);
            s.put(&e4 / &d14, &[(2, 2, 4)], &[]);
            s.put(&e5 / &d15, &[(2, 2, 5)], &[]);
            s.put(&u2 * &e3 / pow(&d13, 2), &[(2, 3, 3)], &[]);
            s.put(&u2 * &e4 / pow(&d14, 2), &[(2, 4, 4)], &[]);
            s.put(&u2 * &e5 / pow(&d15, 2), &[(2, 5, 5)], &[]);
            s.put(int(2) * &e1 / &d13, &[(3, 1, 1)], &[(3, 1, 3)]);
            s.put(int(2) * &e1 / &d13 - &e4 / &d34 - &e5 / &d35, &[(3, 3, 3)], &[]);
            s.put(&e4 / &d34, &[(3, 3, 4)], &[(3, 4, 4)]);
            s.put(&e5 / &d35, &[(3, 3, 5)], &[(3, 5, 5)]);
            s.put(int(2) * &e1 / &d14, &[(4, 1, 1)], &[(4, 1, 4)]);
            s.put(&e3 / &d34, &[(4, 3, 3)], &[(4, 3, 4)]);
            s.put(int(2) * &e1 / &d14 + &e3 / &d34 - &e5 / &d45, &[(4, 4, 4)], &[]);
            s.put(&e5 / &d45, &[(4, 4, 5)], &[(4, 5, 5)]);
            s.put(int(2) * &e1 / &d15, &[(5, 1, 1)], &[(5, 1, 5)]);
            s.put(&e3 / &d35, &[(5, 3, 3)], &[(5, 3, 5)]);
            s.put(&e4 / &d45, &[(5, 4, 4)], &[(5, 4, 5)]);
            s.put(int(2) * &e1 / &d15 + &e3 / &d35 + &e4 / &d45, &[(5, 5, 5)], &[]);
        }
        _ => unreachable!("shape list and match arms agree"),
    }
}

fn apply_errata(shape: &[usize], s: &mut Sheet) {
    match shape {
        [3, 1] => {
            let v = s.e(4) / s.d(1, 4);
            s.put(v, &[(2, 2, 4)], &[]);
        }
        [2, 2] => {
            let v = int(2) * s.e(3) / s.d(1, 3);
            s.put(v, &[(2, 2, 3)], &[]);
        }
        [2, 1, 1] => {
            let v = int(2) * s.e(1) / s.d(1, 4);
            s.put(v, &[(4, 1, 1)], &[]);
            let v = s.e(3) / s.d(3, 4);
            s.put(v, &[(4, 3, 3)], &[]);
        }
        [2, 2, 1] => {
            let v = int(2) * s.e(1) / s.d(1, 5) + int(2) * s.e(3) / s.d(3, 5);
            s.put(v, &[(5, 5, 5)], &[]);
        }
        _ => {}
    }
}

fn shape_table(config: &BlockConfig, point: &[Rational], corrected: bool) -> Result<ChristoffelTable<Rational>> {
    let shape = config.sizes();
    if !SMALLDIM_SHAPES.contains(&shape) {
        return Err(Error::UnsupportedDimension(format!("no table for sizes {shape:?}")));
    }
    check_arity(config, point.len())?;
    require_regular(config, point)?;
    let mut sheet = Sheet::new(config, point);
    fill(shape, &mut sheet);
    if corrected {
        apply_errata(shape, &mut sheet);
    }
    Ok(ChristoffelTable::new(config.clone(), point.to_vec(), sheet.t))
}

/// The printed table for one of [`SMALLDIM_SHAPES`], without [`ERRATA`] applied.
pub fn literal_smalldim_table(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<Rational>> {
    shape_table(config, point, false)
}

/// Closed-form `Γ` for any configuration with `n <= 5`.
pub fn gamma_smalldim_oracle(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<Rational>> {
    let n = config.dim();
    if n > 5 {
        return Err(Error::UnsupportedDimension(format!("n = {n} exceeds 5")));
    }
    check_arity(config, point.len())?;
    if config.is_semisimple() {
        return gamma_semisimple_oracle(config, point);
    }
    // stable sort of blocks by decreasing size gives the tabulated order
    let mut perm: Vec<usize> = (0..config.blocks()).collect();
    perm.sort_by(|&a, &b| config.size(b).cmp(&config.size(a)));
    let sorted = config.permuted(&perm)?;
    // new flat index of every old flat index
    let mut to_new = vec![0; n];
    for (nb, &ob) in perm.iter().enumerate() {
        for j in 0..config.size(ob) {
            to_new[config.offset(ob) + j] = sorted.offset(nb) + j;
        }
    }
    let mut sorted_point = vec![Rational::zero(); n];
    for (old, &new) in to_new.iter().enumerate() {
        sorted_point[new] = point[old].clone();
    }
    let table = shape_table(&sorted, &sorted_point, true)?;
    let mut t = Tensor3::zeros(n);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = table.get(to_new[k], to_new[i], to_new[j]);
                if !v.is_zero() {
                    t.set(k, i, j, v.clone());
                }
            }
        }
    }
    Ok(ChristoffelTable::new(config.clone(), point.to_vec(), t))
}

/// Worst violation of `Σ_σ Γ^i_{1(σ) j} = 0` over all `(i, j)`, 0-based.
pub fn unit_flatness_defect(table: &ChristoffelTable<Rational>) -> Option<(usize, usize, Rational)> {
    let config = table.config();
    let n = table.dim();
    for i in 0..n {
        for j in 0..n {
            let s: Rational = (0..config.blocks()).map(|b| table.get(i, config.offset(b), j).clone()).sum();
            if !s.is_zero() {
                return Some((i, j, s));
            }
        }
    }
    None
}
