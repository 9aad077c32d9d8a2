//! Jordan-block configurations and the canonical unit, Euler field and product.
//!
//! All indices in the Rust API are 0-based: block `α` runs over `0..r`, the inner
//! index of block `α` over `0..m_α`, and flat coordinate indices over `0..n`.
//! Inner index 0 of a block is the eigenvalue coordinate `u^{1(α)}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::rational::{serde_rational_vec, Rational};
use crate::kernel::{Poly, Scalar};

/// Block sizes `m_1..m_r` and weights `ε_1..ε_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct BlockConfig {
    sizes: Vec<usize>,
    weights: Vec<Rational>,
    offsets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    sizes: Vec<usize>,
    #[serde(with = "serde_rational_vec")]
    weights: Vec<Rational>,
}

impl TryFrom<RawConfig> for BlockConfig {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        BlockConfig::new(raw.sizes, raw.weights)
    }
}

impl From<BlockConfig> for RawConfig {
    fn from(c: BlockConfig) -> Self {
        RawConfig { sizes: c.sizes, weights: c.weights }
    }
}

impl BlockConfig {
    pub fn new(sizes: Vec<usize>, weights: Vec<Rational>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidConfig("at least one block is required".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidConfig("block sizes must be positive".into()));
        }
        if weights.len() != sizes.len() {
            return Err(Error::InvalidConfig(format!(
                "{} sizes but {} weights",
                sizes.len(),
                weights.len()
            )));
        }
        let offsets = sizes
            .iter()
            .scan(0, |acc, &m| {
                let start = *acc;
                *acc += m;
                Some(start)
            })
            .collect();
        Ok(BlockConfig { sizes, weights, offsets })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, block: usize) -> usize {
        self.sizes[block]
    }

    pub fn weight(&self, block: usize) -> &Rational {
        &self.weights[block]
    }

    /// `m_α ε_α`.
    pub fn block_charge(&self, block: usize) -> Rational {
        &self.weights[block] * Rational::from_integer(self.sizes[block].into())
    }

    /// `Σ_τ m_τ ε_τ`.
    pub fn total_charge(&self) -> Rational {
        (0..self.blocks()).map(|b| self.block_charge(b)).sum()
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn is_semisimple(&self) -> bool {
        self.sizes.iter().all(|&m| m == 1)
    }

    /// Flat index of inner coordinate `inner` of block `block`.
    pub fn flat_index(&self, block: usize, inner: usize) -> Result<usize> {
        if block >= self.blocks() || inner >= self.sizes[block] {
            return Err(Error::IndexOutOfRange(format!(
                "block {block}, inner index {inner} for sizes {:?}",
                self.sizes
            )));
        }
        Ok(self.offsets[block] + inner)
    }

    /// Inverse of [`Self::flat_index`].
    pub fn block_of(&self, flat: usize) -> Result<(usize, usize)> {
        if flat >= self.dim() {
            return Err(Error::IndexOutOfRange(format!("flat index {flat} for n = {}", self.dim())));
        }
        let block = self.offsets.partition_point(|&o| o <= flat) - 1;
        Ok((block, flat - self.offsets[block]))
    }

    /// Applies a block permutation: block `b` of the result is block `perm[b]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<BlockConfig> {
        BlockConfig::new(
            perm.iter().map(|&b| self.sizes[b]).collect(),
            perm.iter().map(|&b| self.weights[b].clone()).collect(),
        )
    }
}

/// A rational point `u^1..u^n` of the chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartPoint {
    #[serde(with = "serde_rational_vec")]
    pub coords: Vec<Rational>,
}

impl ChartPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        ChartPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled(&self, factor: &Rational) -> ChartPoint {
        ChartPoint::new(self.coords.iter().map(|c| c * factor).collect())
    }
}

/// Why a point fails regularity, if it does.
pub fn regularity_defect(config: &BlockConfig, point: &[Rational], dual: bool) -> Option<String> {
    if point.len() != config.dim() {
        return Some(format!("point has {} coordinates, expected {}", point.len(), config.dim()));
    }
    for a in 0..config.blocks() {
        let o = config.offset(a);
        if config.size(a) >= 2 && point[o + 1].is_zero() {
            return Some(format!("u^{} = 0 (second coordinate of block {})", o + 2, a + 1));
        }
        for b in a + 1..config.blocks() {
            if point[o] == point[config.offset(b)] {
                return Some(format!("blocks {} and {} share the eigenvalue coordinate", a + 1, b + 1));
            }
        }
        if dual && point[o].is_zero() {
            return Some(format!("u^{} = 0 (Euler field not invertible)", o + 1));
        }
    }
    None
}

/// Regular: `u^{2(α)} ≠ 0` for blocks of size ≥ 2 and pairwise distinct `u^{1(α)}`.
/// With `dual`, additionally `u^{1(α)} ≠ 0` for every block.
pub fn is_regular(config: &BlockConfig, point: &[Rational], dual: bool) -> bool {
    regularity_defect(config, point, dual).is_none()
}

pub(crate) fn require_regular(config: &BlockConfig, point: &[Rational]) -> Result<()> {
    match regularity_defect(config, point, false) {
        Some(why) => Err(Error::NonRegularPoint(why)),
        None => Ok(()),
    }
}

pub(crate) fn require_dual_regular(config: &BlockConfig, point: &[Rational]) -> Result<()> {
    require_regular(config, point)?;
    match regularity_defect(config, point, true) {
        Some(why) => Err(Error::NonInvertibleEuler(why)),
        None => Ok(()),
    }
}

/// Dense `(1,2)`-tensor, symmetric in its two lower indices. Zero entries stand
/// for absent ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![S::nil(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `T^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &S {
        &self.data[(k * self.n + i) * self.n + j]
    }

    /// Sets `T^k_{ij}` and `T^k_{ji}`.
    pub fn set(&mut self, k: usize, i: usize, j: usize, value: S) {
        let n = self.n;
        if i != j {
            self.data[(k * n + j) * n + i] = value.clone();
        }
        self.data[(k * n + i) * n + j] = value;
    }

    /// Nonzero entries `(k, i, j, value)` with `i <= j`, in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |k| (0..n).flat_map(move |i| (i..n).map(move |j| (k, i, j))))
            .map(move |(k, i, j)| (k, i, j, self.get(k, i, j)))
            .filter(|(_, _, _, v)| !v.is_nil())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor3<T> {
        Tensor3 { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Value part of every entry.
    pub fn values(&self) -> Tensor3<Rational> {
        self.map(|s| s.value().clone())
    }
}

/// The canonical unit `e`, Euler field `E` and structure constants `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalFields {
    /// `e^i = 1` iff `i` is the first coordinate of a block.
    pub unit: Vec<Rational>,
    /// `E^i = u^i`.
    pub euler: Vec<Poly>,
    /// `c^{k(γ)}_{i(α)j(β)} = δ^γ_α δ^γ_β δ^k_{i+j−1}`.
    pub product: Tensor3<Rational>,
}

pub fn canonical_fields(config: &BlockConfig) -> CanonicalFields {
    let n = config.dim();
    let mut unit = vec![Rational::zero(); n];
    for b in 0..config.blocks() {
        unit[config.offset(b)] = Rational::one();
    }
    let euler = (0..n).map(|i| Poly::var(n, i)).collect();
    CanonicalFields { unit, euler, product: structure_constants(config) }
}

pub fn structure_constants(config: &BlockConfig) -> Tensor3<Rational> {
    let mut c = Tensor3::zeros(config.dim());
    for b in 0..config.blocks() {
        let o = config.offset(b);
        let m = config.size(b);
        for i in 0..m {
            for j in i..m - i {
                if i + j < m {
                    c.set(o + i + j, o + i, o + j, Rational::one());
                }
            }
        }
    }
    c
}

/// `L = E∘`: block-diagonal, each block lower-triangular Toeplitz in `u^{1(α)}..u^{m_α(α)}`.
/// Entry `[i][j]` is `L^i_j`.
pub fn operator_l(config: &BlockConfig) -> Vec<Vec<Poly>> {
    let n = config.dim();
    let mut l = vec![vec![Poly::zero(n); n]; n];
    for b in 0..config.blocks() {
        let o = config.offset(b);
        for row in 0..config.size(b) {
            for col in 0..=row {
                l[o + row][o + col] = Poly::var(n, o + row - col);
            }
        }
    }
    l
}

/// `a_0 = Σ_α ε_α Tr(L_α) = Σ_α m_α ε_α u^{1(α)}`.
pub fn a0_poly(config: &BlockConfig) -> Poly {
    let n = config.dim();
    (0..config.blocks()).fold(Poly::zero(n), |acc, b| {
        acc + Poly::var(n, config.offset(b)).scale(&config.block_charge(b))
    })
}
