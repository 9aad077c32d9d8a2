//! Dual side of the structure: `E⁻¹`, the dual product and the dual connection.

use crate::connection::{check_arity, gamma_table, ChristoffelTable};
use crate::error::Result;
use crate::jordan::{require_dual_regular, BlockConfig, Tensor3};
use crate::kernel::{lift_point, sum, Rational, Scalar};

fn values<S: Scalar>(coords: &[S]) -> Vec<Rational> {
    coords.iter().map(|c| c.value().clone()).collect()
}

/// `E⁻¹`, the inverse of the Euler field for the product: blockwise
/// `x^1 = 1/u^1`, `x^{k+1} = −(1/u^1) Σ_{s=1}^{k} x^{k−s+1} u^{s+1}` (1-based inner indices).
pub fn euler_inverse<S: Scalar>(config: &BlockConfig, coords: &[S]) -> Result<Vec<S>> {
    check_arity(config, coords.len())?;
    require_dual_regular(config, &values(coords))?;
    let mut out = vec![S::nil(); config.dim()];
    for b in 0..config.blocks() {
        let o = config.offset(b);
        let inv = coords[o].recip().expect("dual-regular point");
        out[o] = inv.clone();
        for k in 1..config.size(b) {
            // 0-based: x[k] = −inv Σ_{s=1}^{k} x[k−s] u[s]
            let acc = sum((1..=k).map(|s| out[o + k - s].clone() * &coords[o + s]));
            out[o + k] = -(inv.clone() * &acc);
        }
    }
    Ok(out)
}

/// Dual structure constants `c*^{i(α)}_{j(α)k(α)} = (E⁻¹)^{(i−j−k+2)(α)}`, zero across blocks.
pub fn dual_product<S: Scalar>(config: &BlockConfig, coords: &[S]) -> Result<Tensor3<S>> {
    let inv = euler_inverse(config, coords)?;
    let mut c = Tensor3::zeros(config.dim());
    for b in 0..config.blocks() {
        let o = config.offset(b);
        let m = config.size(b);
        for i in 0..m {
            for j in 0..=i {
                for k in j..=i - j {
                    c.set(o + i, o + j, o + k, inv[o + i - j - k].clone());
                }
            }
        }
    }
    Ok(c)
}

/// `∇_l E^k = δ^k_l + Σ_m Γ^k_{lm} u^m`, indexed `[k][l]`.
pub fn nabla_euler<S: Scalar>(gamma: &ChristoffelTable<S>, coords: &[S]) -> Vec<Vec<S>> {
    let n = gamma.dim();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let s = sum((0..n).map(|m| gamma.get(k, l, m).clone() * &coords[m]));
                    if k == l {
                        s + &S::unit()
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect()
}

/// `Γ*` from the closed form: `Γ` minus an intra-block correction built from `E⁻¹`
/// and a cross-block correction on `Γ*^{1(α)}_{1(β)1(β)}`.
pub fn dual_gamma_closed<S: Scalar>(
    config: &BlockConfig,
    coords: &[S],
    gamma: &ChristoffelTable<S>,
) -> Result<ChristoffelTable<S>> {
    let inv = euler_inverse(config, coords)?;
    let total = config.total_charge();
    let one = Rational::from_integer(1.into());
    let mut out = gamma.clone();
    for a in 0..config.blocks() {
        let o = config.offset(a);
        let m = config.size(a);
        let first_factor = &one - (&total - config.block_charge(a));
        let rest_factor = &one - &total;
        // intra-block correction
        for k in 0..m {
            let factor = if k == 0 { &first_factor } else { &rest_factor };
            for i in 0..=k {
                for j in i..=k - i {
                    let corr = inv[o + k - i - j].scale(factor);
                    let v = out.get(o + k, o + i, o + j).clone() - &corr;
                    out.set(o + k, o + i, o + j, v);
                }
            }
        }
        // cross-block correction on Γ*^{1(α)}_{1(β)1(β)}
        for b in (0..config.blocks()).filter(|&b| b != a) {
            let ob = config.offset(b);
            let corr = coords[ob].recip().expect("dual-regular point").scale(&config.block_charge(b));
            let v = out.get(o, ob, ob).clone() - &corr;
            out.set(o, ob, ob, v);
        }
    }
    Ok(out)
}

/// `Γ*^k_{ij} = Γ^k_{ij} − Σ_l c*^l_{ji} ∇_l E^k`, assembled from the dual product and `∇E`.
pub fn dual_gamma_generic<S: Scalar>(
    config: &BlockConfig,
    coords: &[S],
    gamma: &ChristoffelTable<S>,
) -> Result<ChristoffelTable<S>> {
    let cstar = dual_product(config, coords)?;
    let ne = nabla_euler(gamma, coords);
    let n = config.dim();
    let mut out = gamma.clone();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let corr = sum((0..n).map(|l| cstar.get(l, j, i).clone() * &ne[k][l]));
                if !corr.is_nil() {
                    let v = out.get(k, i, j).clone() - &corr;
                    out.set(k, i, j, v);
                }
            }
        }
    }
    Ok(out)
}

/// The dual connection at a rational point over scalars `S`, via the closed form.
pub fn dual_table<S: Scalar>(config: &BlockConfig, point: &[Rational]) -> Result<ChristoffelTable<S>> {
    check_arity(config, point.len())?;
    require_dual_regular(config, point)?;
    let coords = lift_point::<S>(point);
    let gamma = gamma_table::<S>(config, point)?;
    dual_gamma_closed(config, &coords, &gamma)
}
