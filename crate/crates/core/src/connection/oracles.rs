//! Closed-form connections for the semisimple and single-block cases.
//!
//! These are written independently of the general recursion and serve as oracles.

use num_traits::Zero;

use super::{check_arity, ChristoffelTable};
use crate::error::{Error, Result};
use crate::jordan::{require_regular, BlockConfig, Tensor3};
use crate::kernel::Rational;

/// All blocks of size one: `Γ^i_{ij} = ε_j/(u^i − u^j)`, `Γ^i_{jj} = −Γ^i_{ij}`,
/// `Γ^i_{ii} = −Σ_{l≠i} Γ^i_{li}`, zero on distinct indices.
pub fn gamma_semisimple_oracle(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<Rational>> {
    if !config.is_semisimple() {
        return Err(Error::NotSemisimpleConfig);
    }
    check_arity(config, point.len())?;
    require_regular(config, point)?;
    let n = config.dim();
    let mut t = Tensor3::zeros(n);
    for i in 0..n {
        let mut diag = Rational::zero();
        for j in (0..n).filter(|&j| j != i) {
            let g = config.weight(j) / (&point[i] - &point[j]);
            t.set(i, i, j, g.clone());
            t.set(i, j, j, -g.clone());
            diag -= g;
        }
        t.set(i, i, i, diag);
    }
    Ok(ChristoffelTable::new(config.clone(), point.to_vec(), t))
}

/// A single Jordan block of size `m` with `ε = m ε_1`:
/// `Γ^2_{22} = −ε/u²`, `Γ^{N+1}_{22} = −(1/u²) Σ_{s=1}^{N−1} u^{2+s} Γ^{N+1−s}_{22}` and
/// `Γ^k_{ij} = Γ^{k+4−i−j}_{22}` for `i, j ≠ 1` (1-based), everything else zero.
pub fn gamma_single_block_oracle(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<Rational>> {
    if config.blocks() != 1 {
        return Err(Error::NotSingleBlock);
    }
    check_arity(config, point.len())?;
    require_regular(config, point)?;
    let m = config.size(0);
    let mut t = Tensor3::zeros(m);
    if m < 2 {
        return Ok(ChristoffelTable::new(config.clone(), point.to_vec(), t));
    }
    // 1-based coordinate access
    let u = |i: usize| &point[i - 1];
    // base[p] = Γ^p_{22}
    let mut base = vec![Rational::zero(); m + 1];
    base[2] = -config.block_charge(0) / u(2);
    for big_n in 2..m {
        let acc: Rational = (1..big_n).map(|s| u(2 + s) * &base[big_n + 1 - s]).sum();
        base[big_n + 1] = -acc / u(2);
    }
    for k in 1..=m {
        for i in 2..=m {
            for j in i..=m {
                if k + 4 >= i + j + 2 {
                    let p = k + 4 - i - j;
                    if p <= m {
                        t.set(k - 1, i - 1, j - 1, base[p].clone());
                    }
                }
            }
        }
    }
    Ok(ChristoffelTable::new(config.clone(), point.to_vec(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    #[test]
    fn semisimple_three() {
        let c = BlockConfig::new(vec![1, 1, 1], vec![rat(1, 2), rat(1, 3), rat(1, 5)]).unwrap();
        let p = [int(0), int(1), int(3)];
        let t = gamma_semisimple_oracle(&c, &p).unwrap();
        assert_eq!(t.get(0, 0, 0), &(-(rat(1, 3) / int(-1)) - rat(1, 5) / int(-3)));
        assert_eq!(t.get(0, 1, 2), &int(0));
        assert_eq!(t.get(0, 0, 1), &(rat(1, 3) / int(-1)));
    }

    #[test]
    fn single_block_four() {
        let e = rat(3, 7);
        let c = BlockConfig::new(vec![4], vec![e.clone()]).unwrap();
        let p = [int(1), int(2), int(-1), int(3)];
        let t = gamma_single_block_oracle(&c, &p).unwrap();
        // 4ε(u²u⁴ − (u³)²)/(u²)³
        let expected = int(4) * &e * (int(2) * int(3) - int(1)) / int(8);
        assert_eq!(t.get(3, 1, 1), &expected);
        for j in 0..4 {
            for k in 0..4 {
                assert!(t.get(k, 0, j).is_zero());
            }
        }
    }

    #[test]
    fn wrong_shapes_rejected() {
        let two = BlockConfig::new(vec![2, 1], vec![int(1), int(1)]).unwrap();
        assert_eq!(gamma_semisimple_oracle(&two, &[int(1), int(1), int(2)]), Err(Error::NotSemisimpleConfig));
        assert_eq!(gamma_single_block_oracle(&two, &[int(1), int(1), int(2)]), Err(Error::NotSingleBlock));
    }
}
