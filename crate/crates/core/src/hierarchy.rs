//! Frölicher–Nijenhuis machinery over polynomials: Nijenhuis torsion, `d_L`, and the
//! hierarchy of flows `V_{k+1} = V_k L − a_k I`.

use serde_json::{json, Value};

use crate::connection::gamma_table;
use crate::error::{Error, Result};
use crate::jordan::{a0_poly, operator_l, BlockConfig};
use crate::kernel::{exterior_d, grad, integrate_radial, OneForm, Poly, PolyTerm, Rational, TwoForm};
use crate::verifier::{d_nabla, Tally, VerificationReport};

/// Square matrix of polynomials; `m[row][col]` is `M^row_col`.
pub type PolyMatrix = Vec<Vec<Poly>>;

fn square_dim(l: &[Vec<Poly>]) -> Result<usize> {
    let n = l.len();
    if l.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch("operator must be a square matrix".into()));
    }
    if let Some(p) = l.iter().flatten().find(|p| p.nvars() != n) {
        return Err(Error::ArityMismatch { expected: n, got: p.nvars() });
    }
    Ok(n)
}

fn d(p: &Poly, i: usize) -> Poly {
    p.partial(i).expect("variable index in range")
}

/// `N^k_{ij} = L^s_i ∂_s L^k_j − L^s_j ∂_s L^k_i − L^k_s (∂_i L^s_j − ∂_j L^s_i)`;
/// entry `k` of the result is the two-form `N^k`.
pub fn nijenhuis_torsion(l: &[Vec<Poly>]) -> Result<Vec<TwoForm>> {
    let n = square_dim(l)?;
    Ok((0..n)
        .map(|k| {
            TwoForm::from_upper(n, |i, j| {
                let mut acc = Poly::zero(n);
                for s in 0..n {
                    acc = acc + &(&l[s][i] * &d(&l[k][j], s)) - &(&l[s][j] * &d(&l[k][i], s));
                    acc = acc - &(&l[k][s] * &(d(&l[s][j], i) - d(&l[s][i], j)));
                }
                acc
            })
        })
        .collect())
}

pub fn is_torsion_free(l: &[Vec<Poly>]) -> Result<bool> {
    Ok(nijenhuis_torsion(l)?.iter().all(TwoForm::is_zero))
}

/// `(d_L f)_i = L^j_i ∂_j f`.
pub fn d_l_function(f: &Poly, l: &[Vec<Poly>]) -> Result<OneForm> {
    let n = square_dim(l)?;
    if f.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, got: f.nvars() });
    }
    let df = f.gradient();
    Ok(OneForm(
        (0..n)
            .map(|i| (0..n).fold(Poly::zero(n), |acc, j| acc + &(&l[j][i] * &df[j])))
            .collect(),
    ))
}

/// `(d_L ω)_{ij} = L^s_i ∂_s ω_j − L^s_j ∂_s ω_i − ω_s (∂_i L^s_j − ∂_j L^s_i)`.
pub fn d_l_oneform(omega: &OneForm, l: &[Vec<Poly>]) -> Result<TwoForm> {
    let n = square_dim(l)?;
    if omega.dim() != n {
        return Err(Error::ArityMismatch { expected: n, got: omega.dim() });
    }
    let w = &omega.0;
    Ok(TwoForm::from_upper(n, |i, j| {
        let mut acc = Poly::zero(n);
        for s in 0..n {
            acc = acc + &(&l[s][i] * &d(&w[j], s)) - &(&l[s][j] * &d(&w[i], s));
            acc = acc - &(&w[s] * &(d(&l[s][j], i) - d(&l[s][i], j)));
        }
        acc
    }))
}

pub fn identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> PolyMatrix {
    let n = a.len();
    let nv = a.first().and_then(|r| r.first()).map_or(0, Poly::nvars);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Poly::zero(nv), |acc, s| acc + &(&a[i][s] * &b[s][j])))
                .collect()
        })
        .collect()
}

fn mat_sub(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> PolyMatrix {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect()).collect()
}

/// Steps `a_0..a_N` and `V_0..V_N` of the hierarchy generated by `L` and `a_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSequence {
    pub l: PolyMatrix,
    pub a: Vec<Poly>,
    pub v: Vec<PolyMatrix>,
}

fn poly_json(p: &Poly) -> Value {
    serde_json::to_value(p.to_terms()).expect("terms serialize")
}

fn matrix_json(m: &[Vec<Poly>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(poly_json).collect())).collect())
}

impl FlowSequence {
    pub fn steps(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn dim(&self) -> usize {
        self.l.len()
    }

    /// `{"nvars": n, "l": M, "steps": [{"k": k, "a": P, "v": M}, ..]}` where polynomials
    /// are lists of `{"coeff", "exps"}` terms.
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .a
            .iter()
            .zip(&self.v)
            .enumerate()
            .map(|(k, (a, v))| json!({ "k": k, "a": poly_json(a), "v": matrix_json(v) }))
            .collect();
        json!({ "nvars": self.dim(), "l": matrix_json(&self.l), "steps": steps })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("flow sequence: {what}"));
        let n = value["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
        let poly = |v: &Value| -> Result<Poly> {
            let terms: Vec<PolyTerm> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            Poly::from_terms(n, &terms)
        };
        let matrix = |v: &Value| -> Result<PolyMatrix> {
            v.as_array()
                .ok_or_else(|| bad("matrix must be an array"))?
                .iter()
                .map(|row| row.as_array().ok_or_else(|| bad("row must be an array"))?.iter().map(poly).collect())
                .collect()
        };
        let l = matrix(&value["l"])?;
        let mut a = Vec::new();
        let mut v = Vec::new();
        for step in value["steps"].as_array().ok_or_else(|| bad("missing steps"))? {
            a.push(poly(&step["a"])?);
            v.push(matrix(&step["v"])?);
        }
        Ok(FlowSequence { l, a, v })
    }
}

/// Runs `N` steps of `ω = d_L a_k − a_k da_0`, `a_{k+1} = ∫ω` (vanishing at the origin),
/// `V_{k+1} = V_k L − a_k I`, starting from `V_0 = I`.
pub fn hierarchy_generate(l: &[Vec<Poly>], a0: &Poly, steps: usize) -> Result<FlowSequence> {
    let n = square_dim(l)?;
    if a0.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, got: a0.nvars() });
    }
    if !is_torsion_free(l)? {
        return Err(Error::TorsionNotZero);
    }
    let dla0 = d_l_function(a0, l)?;
    if let Some((i, j)) = exterior_d(&dla0).first_nonzero() {
        return Err(Error::NotClosed { i, j });
    }
    let da0 = grad(a0);
    let id = identity(n);
    let mut a = vec![a0.clone()];
    let mut v = vec![id.clone()];
    for k in 0..steps {
        let ak = &a[k];
        let scaled: PolyMatrix = id.iter().map(|row| row.iter().map(|p| p * ak).collect()).collect();
        let next_v = mat_sub(&mat_mul(&v[k], l), &scaled);
        let omega = d_l_function(ak, l)?.sub(&da0.mul_fn(ak));
        let next_a = integrate_radial(&omega)?;
        v.push(next_v);
        a.push(next_a);
    }
    Ok(FlowSequence { l: l.to_vec(), a, v })
}

/// Checks that every flow of `seq` satisfies `d_∇ V_k = 0` for the connection of
/// `config` at `point`, that the flows commute, and that the recursion holds.
pub fn flows_are_symmetries(config: &BlockConfig, point: &[Rational], seq: &FlowSequence) -> Result<VerificationReport> {
    if seq.l != operator_l(config) {
        return Err(Error::ShapeMismatch("flow operator is not the canonical operator of the configuration".into()));
    }
    if seq.a.first() != Some(&a0_poly(config)) {
        return Err(Error::ShapeMismatch("flow potential is not the canonical potential of the configuration".into()));
    }
    let gamma = gamma_table::<Rational>(config, point)?;
    let n = config.dim();
    let mut sym = Tally::new("flow_symmetry");
    for (k, vk) in seq.v.iter().enumerate() {
        let lifted = vk.iter().map(|row| row.iter().map(|p| p.jet1(point)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        let dn = d_nabla(&lifted, &gamma)?;
        for i in 0..n {
            for j in 0..n {
                for kk in j + 1..n {
                    sym.record(&[k, i + 1, j + 1, kk + 1], &dn[i][j][kk]);
                }
            }
        }
    }
    let mut comm = Tally::new("flows_commute");
    for j in 0..seq.v.len() {
        for k in j + 1..seq.v.len() {
            let c = mat_sub(&mat_mul(&seq.v[j], &seq.v[k]), &mat_mul(&seq.v[k], &seq.v[j]));
            for (r, row) in c.iter().enumerate() {
                for (s, p) in row.iter().enumerate() {
                    comm.record_poly(&[j, k, r + 1, s + 1], p, point);
                }
            }
        }
    }
    let mut rec = Tally::new("flow_recursion");
    for k in 0..seq.v.len().saturating_sub(1) {
        let id = identity(n);
        let scaled: PolyMatrix = id.iter().map(|row| row.iter().map(|p| p * &seq.a[k]).collect()).collect();
        let expected = mat_sub(&mat_mul(&seq.v[k], &seq.l), &scaled);
        let diff = mat_sub(&seq.v[k + 1], &expected);
        for (r, row) in diff.iter().enumerate() {
            for (s, p) in row.iter().enumerate() {
                rec.record_poly(&[k + 1, r + 1, s + 1], p, point);
            }
        }
    }
    if let Some(v0) = seq.v.first() {
        for (r, row) in mat_sub(v0, &identity(n)).iter().enumerate() {
            for (s, p) in row.iter().enumerate() {
                rec.record_poly(&[0, r + 1, s + 1], p, point);
            }
        }
    }
    Ok(VerificationReport { checks: vec![sym.finish(), comm.finish(), rec.finish()], warnings: Vec::new() })
}

/// Operator and potential of the Kodama–Konopelchenko hierarchy in `n` components:
/// `L` is the upper shift (`L^r_{r+1} = 1`) and `a_0 = −u^1`.
pub fn kodama_konopelchenko(n: usize) -> Result<(PolyMatrix, Poly)> {
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one component".into()));
    }
    let mut l = vec![vec![Poly::zero(n); n]; n];
    for r in 0..n - 1 {
        l[r][r + 1] = Poly::one(n);
    }
    Ok((l, -Poly::var(n, 0)))
}

/// Operator and potential of the ε-system: `L = diag(u)` and `a_0 = Σ ε_k u^k`.
pub fn epsilon_system(weights: &[Rational]) -> Result<(PolyMatrix, Poly)> {
    let n = weights.len();
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one component".into()));
    }
    let mut l = vec![vec![Poly::zero(n); n]; n];
    let mut a0 = Poly::zero(n);
    for (i, w) in weights.iter().enumerate() {
        l[i][i] = Poly::var(n, i);
        a0 = a0 + &Poly::var(n, i).scale(w);
    }
    Ok((l, a0))
}

/// Diagonal entries of a matrix, e.g. the speeds of a diagonal flow.
pub fn diagonal(m: &[Vec<Poly>]) -> Vec<Poly> {
    m.iter().enumerate().map(|(i, row)| row[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};
    use proptest::prelude::*;

    fn u(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    /// `N(X_i, X_j)^k` from `[LX, LY] − L[LX, Y] − L[X, LY]` on coordinate fields.
    fn invariant_torsion(l: &[Vec<Poly>], i: usize, j: usize) -> Vec<Poly> {
        let n = l.len();
        let field = |c: usize| -> Vec<Poly> { (0..n).map(|k| l[k][c].clone()).collect() };
        let coord = |c: usize| -> Vec<Poly> {
            (0..n).map(|k| if k == c { Poly::one(n) } else { Poly::zero(n) }).collect()
        };
        let bracket = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
            (0..n)
                .map(|k| {
                    (0..n).fold(Poly::zero(n), |acc, s| acc + &(&a[s] * &d(&b[k], s)) - &(&b[s] * &d(&a[k], s)))
                })
                .collect()
        };
        let apply = |v: &[Poly]| -> Vec<Poly> {
            (0..n).map(|k| (0..n).fold(Poly::zero(n), |acc, s| acc + &(&l[k][s] * &v[s]))).collect()
        };
        let (lx, ly) = (field(i), field(j));
        let t1 = bracket(&lx, &ly);
        let t2 = apply(&bracket(&lx, &coord(j)));
        let t3 = apply(&bracket(&coord(i), &ly));
        (0..n).map(|k| &(&t1[k] - &t2[k]) - &t3[k]).collect()
    }

    #[test]
    fn torsion_examples() {
        let n = 3;
        let diag: PolyMatrix =
            (0..n).map(|i| (0..n).map(|j| if i == j { u(n, i) } else { Poly::zero(n) }).collect()).collect();
        assert!(is_torsion_free(&diag).unwrap());
        for sizes in [vec![3], vec![2, 1], vec![1, 2, 2], vec![4, 1]] {
            let c = BlockConfig::new(sizes.clone(), sizes.iter().map(|_| int(1)).collect()).unwrap();
            assert!(is_torsion_free(&operator_l(&c)).unwrap(), "{sizes:?}");
        }
        let swapped = vec![vec![u(2, 1), Poly::zero(2)], vec![Poly::zero(2), u(2, 0)]];
        let t = nijenhuis_torsion(&swapped).unwrap();
        assert!(t.iter().any(|f| !f.is_zero()));
        for k in 0..2 {
            assert_eq!(t[k].get(0, 1), &invariant_torsion(&swapped, 0, 1)[k]);
        }
    }

    #[test]
    fn torsion_matches_invariant_formula() {
        let n = 3;
        let mut l = vec![vec![Poly::zero(n); n]; n];
        l[0][1] = &u(n, 2) * &u(n, 0);
        l[1][0] = u(n, 1);
        l[2][2] = &u(n, 0) * &u(n, 0) + Poly::one(n);
        l[2][0] = u(n, 2);
        let t = nijenhuis_torsion(&l).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                let inv = invariant_torsion(&l, i, j);
                for k in 0..n {
                    assert_eq!(t[k].get(i, j), &inv[k]);
                    assert_eq!(t[k].get(j, i), &-inv[k].clone());
                }
            }
        }
    }

    #[test]
    fn d_l_examples() {
        let (l, a0) = kodama_konopelchenko(4).unwrap();
        let w = d_l_function(&a0, &l).unwrap();
        let expected: Vec<Poly> =
            (0..4).map(|i| if i == 1 { Poly::constant(4, int(-1)) } else { Poly::zero(4) }).collect();
        assert_eq!(w.0, expected);
        assert!(d_l_function(&Poly::constant(4, int(3)), &l).unwrap().is_zero());
    }

    #[test]
    fn kodama_konopelchenko_second_flow() {
        let n = 4;
        let (l, a0) = kodama_konopelchenko(n).unwrap();
        let seq = hierarchy_generate(&l, &a0, 2).unwrap();
        let a1 = -u(n, 1) - (&u(n, 0) * &u(n, 0)).scale(&rat(1, 2));
        assert_eq!(seq.a[1], a1);
        assert_eq!(seq.v[0], identity(n));
        let diag = u(n, 1) + (&u(n, 0) * &u(n, 0)).scale(&rat(1, 2));
        for r in 0..n {
            for c in 0..n {
                let expected = match c as i64 - r as i64 {
                    0 => diag.clone(),
                    1 => u(n, 0),
                    2 => Poly::one(n),
                    _ => Poly::zero(n),
                };
                assert_eq!(seq.v[2][r][c], expected, "entry {r},{c}");
            }
        }
    }

    #[test]
    fn epsilon_system_first_flow() {
        let w = [rat(1, 2), rat(-1, 3), int(2)];
        let (l, a0) = epsilon_system(&w).unwrap();
        let seq = hierarchy_generate(&l, &a0, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { u(3, i) - &a0 } else { Poly::zero(3) };
                assert_eq!(seq.v[1][i][j], expected);
            }
        }
    }

    #[test]
    fn generate_rejects_bad_input() {
        let swapped = vec![vec![u(2, 1), Poly::zero(2)], vec![Poly::zero(2), u(2, 0)]];
        assert_eq!(hierarchy_generate(&swapped, &u(2, 0), 1), Err(Error::TorsionNotZero));
        let (l, _) = epsilon_system(&[int(1), int(1)]).unwrap();
        let bad = &u(2, 0) * &u(2, 1);
        assert!(matches!(hierarchy_generate(&l, &bad, 1), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn lauricella_flows_are_symmetries() {
        let c = BlockConfig::new(vec![2, 1], vec![rat(1, 3), rat(-2, 5)]).unwrap();
        let seq = hierarchy_generate(&operator_l(&c), &a0_poly(&c), 3).unwrap();
        let r = flows_are_symmetries(&c, &[int(3), int(2), int(-1)], &seq).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let json = seq.to_json();
        assert_eq!(FlowSequence::from_json(&json).unwrap(), seq);
        let (kk, a) = kodama_konopelchenko(3).unwrap();
        let other = hierarchy_generate(&kk, &a, 1).unwrap();
        assert!(matches!(flows_are_symmetries(&c, &[int(3), int(2), int(-1)], &other), Err(Error::ShapeMismatch(_))));
    }

    fn poly_strategy(n: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((-5i64..=5, prop::collection::vec(0u32..3, n)), 0..5).prop_map(move |terms| {
            terms.into_iter().fold(Poly::zero(n), |acc, (c, e)| acc + &Poly::monomial(int(c), e))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn d_and_d_l_anticommute(f in poly_strategy(4), pick in 0usize..3) {
            let sizes = [vec![2, 2], vec![3, 1], vec![1, 1, 2]][pick].clone();
            let c = BlockConfig::new(sizes.clone(), sizes.iter().map(|_| int(1)).collect()).unwrap();
            let l = operator_l(&c);
            let lhs = exterior_d(&d_l_function(&f, &l).unwrap());
            let rhs = d_l_oneform(&grad(&f), &l).unwrap();
            prop_assert!(lhs.add(&rhs).is_zero());
            // d_L² = 0 for a torsion-free operator
            prop_assert!(d_l_oneform(&d_l_function(&f, &l).unwrap(), &l).unwrap().is_zero());
        }
    }
}
