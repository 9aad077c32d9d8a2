//! The natural flat connection of a Lauricella structure.
//!
//! Everything here is generic over [`Scalar`]: run it on `Rational` coordinates to
//! get values, or on jet-lifted coordinates to get exact partials of every entry.
//!
//! Internally the recursions use 1-based inner indices (`t = 1` is the eigenvalue
//! coordinate of a block) because the seed families are indexed that way; the public
//! API stays 0-based.

mod oracles;
mod smalldim;

pub use oracles::{gamma_semisimple_oracle, gamma_single_block_oracle};
pub use smalldim::{
    gamma_smalldim_oracle, literal_smalldim_table, unit_flatness_defect, Erratum, ERRATA, SMALLDIM_SHAPES,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{require_regular, BlockConfig, Tensor3};
use crate::kernel::rational::{format_rational, parse_rational, Rational};
use crate::kernel::{lift_point, sum, Scalar};

/// Christoffel symbols `Γ^k_{ij}` at one point, symmetric in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelTable<S> {
    config: BlockConfig,
    point: Vec<Rational>,
    entries: Tensor3<S>,
}

/// One nonzero table entry in JSON form; indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub value: String,
}

impl<S: Scalar> ChristoffelTable<S> {
    pub fn new(config: BlockConfig, point: Vec<Rational>, entries: Tensor3<S>) -> Self {
        ChristoffelTable { config, point, entries }
    }

    pub fn config(&self) -> &BlockConfig {
        &self.config
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &S {
        self.entries.get(k, i, j)
    }

    /// Overwrites an entry (and its mirror). Used to build perturbed tables.
    pub fn set(&mut self, k: usize, i: usize, j: usize, value: S) {
        self.entries.set(k, i, j, value)
    }

    pub fn tensor(&self) -> &Tensor3<S> {
        &self.entries
    }

    /// Drops derivative data.
    pub fn values(&self) -> ChristoffelTable<Rational> {
        ChristoffelTable {
            config: self.config.clone(),
            point: self.point.clone(),
            entries: self.entries.values(),
        }
    }

    /// Nonzero entries with `i <= j`, 1-based, values in `"p/q"` form.
    pub fn to_entries(&self) -> Vec<TableEntry> {
        self.entries
            .nonzero()
            .filter(|(_, _, _, v)| !Scalar::is_nil(v.value()))
            .map(|(k, i, j, v)| TableEntry { k: k + 1, i: i + 1, j: j + 1, value: format_rational(v.value()) })
            .collect()
    }
}

impl ChristoffelTable<Rational> {
    /// Rebuilds a table from JSON entries.
    pub fn from_entries(config: BlockConfig, point: Vec<Rational>, entries: &[TableEntry]) -> Result<Self> {
        let n = config.dim();
        let mut t = Tensor3::zeros(n);
        for e in entries {
            if e.k == 0 || e.i == 0 || e.j == 0 || e.k > n || e.i > n || e.j > n {
                return Err(Error::IndexOutOfRange(format!("entry ({}, {}, {}) for n = {n}", e.k, e.i, e.j)));
            }
            t.set(e.k - 1, e.i - 1, e.j - 1, parse_rational(&e.value)?);
        }
        Ok(ChristoffelTable::new(config, point, t))
    }

    /// First entry where the two tables differ, as `(k, i, j, self − other)`.
    pub fn first_difference(&self, other: &ChristoffelTable<Rational>) -> Option<(usize, usize, usize, Rational)> {
        let n = self.dim();
        if other.dim() != n {
            return Some((n, n, n, Rational::from_integer(1.into())));
        }
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let d = self.get(k, i, j) - other.get(k, i, j);
                    if !Scalar::is_nil(&d) {
                        return Some((k, i, j, d));
                    }
                }
            }
        }
        None
    }
}

/// Lauricella connection at a fixed point with its seed families cached.
///
/// `g[α][β][t]` is `Γ^{t(α)}_{1(β)1(α)}` for `β ≠ α`, `f[α][s]` is `Γ^{s(α)}_{1(α)1(α)}`
/// and `h[α][t]` is the intra-block family with `Γ^{k(α)}_{i(α)j(α)} = h(k−i−j+4)` for
/// `i, j ≥ 2`. Index 0 of each vector is unused padding.
#[derive(Debug, Clone)]
pub struct LauricellaConnection<S> {
    config: BlockConfig,
    g: Vec<Vec<Vec<S>>>,
    f: Vec<Vec<S>>,
    h: Vec<Vec<S>>,
}

impl<S: Scalar> LauricellaConnection<S> {
    /// Builds the seed families. The coordinates must be regular.
    pub fn new(config: &BlockConfig, coords: &[S]) -> Result<Self> {
        let values: Vec<Rational> = coords.iter().map(|c| c.value().clone()).collect();
        require_regular(config, &values)?;
        let r = config.blocks();
        let u = |a: usize, s: usize| &coords[config.offset(a) + s - 1];

        let mut g = vec![Vec::new(); r];
        for a in 0..r {
            let m = config.size(a);
            g[a] = (0..r)
                .map(|b| {
                    if a == b {
                        return Vec::new();
                    }
                    let inv = (u(a, 1).clone() - u(b, 1)).recip().expect("distinct eigenvalues");
                    let mut seq = vec![S::nil(); m + 1];
                    seq[1] = inv.scale(&config.block_charge(b));
                    for t in 2..=m {
                        let acc = sum((2..=t).map(|s| seq[t - s + 1].clone() * u(a, s)));
                        seq[t] = -(inv.clone() * &acc);
                    }
                    seq
                })
                .collect();
        }

        let f: Vec<Vec<S>> = (0..r)
            .map(|a| {
                (0..=config.size(a))
                    .map(|s| {
                        if s == 0 {
                            S::nil()
                        } else {
                            -sum((0..r).filter(|&b| b != a).map(|b| g[a][b][s].clone()))
                        }
                    })
                    .collect()
            })
            .collect();

        let h = (0..r)
            .map(|a| {
                let m = config.size(a);
                let mut seq = vec![S::nil(); m + 1];
                if m >= 2 {
                    let inv2 = u(a, 2).recip().expect("regular block");
                    seq[2] = -inv2.scale(&config.block_charge(a));
                    for t in 3..=m {
                        let tail = sum((1..=t - 3).map(|l| (seq[l + 2].clone() - &f[a][l]) * u(a, t - l)));
                        seq[t] = f[a][t - 2].clone() - &(seq[2].clone() * u(a, t) * &inv2) - &(inv2.clone() * &tail);
                    }
                }
                seq
            })
            .collect();

        Ok(LauricellaConnection { config: config.clone(), g, f, h })
    }

    pub fn config(&self) -> &BlockConfig {
        &self.config
    }

    /// `g^{(α)}_β(t)`, zero outside `1..=m_α`. Blocks are 0-based, `t` is 1-based.
    pub fn seed(&self, a: usize, b: usize, t: i64) -> S {
        if a == b || t < 1 || t as usize > self.config.size(a) {
            return S::nil();
        }
        self.g[a][b][t as usize].clone()
    }

    /// `Γ^{s(α)}_{1(α)1(α)}`, zero outside `1..=m_α`.
    pub fn unit_seed(&self, a: usize, s: i64) -> S {
        if s < 1 || s as usize > self.config.size(a) {
            return S::nil();
        }
        self.f[a][s as usize].clone()
    }

    /// `Γ^{t(α)}_{2(α)2(α)}`, zero outside `2..=m_α`.
    pub fn inner_seed(&self, a: usize, t: i64) -> S {
        if t < 2 || t as usize > self.config.size(a) {
            return S::nil();
        }
        self.h[a][t as usize].clone()
    }

    /// `Γ^k_{ij}` for flat 0-based indices.
    pub fn entry(&self, k: usize, i: usize, j: usize) -> Result<S> {
        let (c, kk) = self.config.block_of(k)?;
        let (a, ii) = self.config.block_of(i)?;
        let (b, jj) = self.config.block_of(j)?;
        let (kk, ii, jj) = (kk as i64 + 1, ii as i64 + 1, jj as i64 + 1);
        Ok(if a == b && b == c {
            if ii == 1 {
                self.unit_seed(c, kk - jj + 1)
            } else if jj == 1 {
                self.unit_seed(c, kk - ii + 1)
            } else {
                self.inner_seed(c, kk - ii - jj + 4)
            }
        } else if a == c {
            if jj >= 2 {
                S::nil()
            } else {
                self.seed(c, b, kk - ii + 1)
            }
        } else if b == c {
            if ii >= 2 {
                S::nil()
            } else {
                self.seed(c, a, kk - jj + 1)
            }
        } else if a == b {
            if ii == 1 && jj == 1 {
                -self.seed(c, a, kk)
            } else {
                S::nil()
            }
        } else {
            S::nil()
        })
    }

    /// Every entry.
    pub fn table(&self, point: Vec<Rational>) -> ChristoffelTable<S> {
        let n = self.config.dim();
        let mut t = Tensor3::zeros(n);
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let v = self.entry(k, i, j).expect("indices in range");
                    if !v.is_nil() {
                        t.set(k, i, j, v);
                    }
                }
            }
        }
        ChristoffelTable::new(self.config.clone(), point, t)
    }
}

/// `g^{(α)}_β(t) = Γ^{t(α)}_{1(β)1(α)}` for 0-based blocks `α ≠ β` and 1-based `t`.
pub fn gamma_seed<S: Scalar>(config: &BlockConfig, coords: &[S], a: usize, b: usize, t: i64) -> Result<S> {
    check_arity(config, coords.len())?;
    if a >= config.blocks() || b >= config.blocks() || a == b {
        return Err(Error::IndexOutOfRange(format!("seed blocks ({a}, {b})")));
    }
    Ok(LauricellaConnection::new(config, coords)?.seed(a, b, t))
}

/// A single `Γ^k_{ij}` (flat 0-based indices).
pub fn gamma_entry<S: Scalar>(config: &BlockConfig, coords: &[S], k: usize, i: usize, j: usize) -> Result<S> {
    check_arity(config, coords.len())?;
    LauricellaConnection::new(config, coords)?.entry(k, i, j)
}

/// Full table over scalars of type `S` lifted from a rational point.
pub fn gamma_table<S: Scalar>(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<S>> {
    check_arity(config, point.len())?;
    let coords = lift_point::<S>(point);
    Ok(LauricellaConnection::new(config, &coords)?.table(point.to_vec()))
}

pub(crate) fn check_arity(config: &BlockConfig, got: usize) -> Result<()> {
    if got != config.dim() {
        return Err(Error::ArityMismatch { expected: config.dim(), got });
    }
    Ok(())
}
