//! Diagonal systems `u^i_t = v^i(u) u^i_x` with polynomial speeds, their Tsarev symbols
//! `Γ^i_{ij} = ∂_j v^i / (v^j − v^i)` and the integrability residuals built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Jet1, Jet2, Poly, PolyTerm, Rational, Scalar};
use crate::verifier::{Tally, VerificationReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct DiagonalSystem {
    speeds: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    speeds: Vec<Vec<PolyTerm>>,
}

impl TryFrom<RawSystem> for DiagonalSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        let n = raw.speeds.len();
        let speeds = raw.speeds.iter().map(|t| Poly::from_terms(n, t)).collect::<Result<Vec<_>>>()?;
        DiagonalSystem::new(speeds)
    }
}

impl From<DiagonalSystem> for RawSystem {
    fn from(sys: DiagonalSystem) -> Self {
        RawSystem { speeds: sys.speeds.iter().map(Poly::to_terms).collect() }
    }
}

impl DiagonalSystem {
    /// One speed per component, each a polynomial in as many variables as there are speeds.
    pub fn new(speeds: Vec<Poly>) -> Result<Self> {
        let n = speeds.len();
        if n == 0 {
            return Err(Error::InvalidConfig("a diagonal system needs at least one speed".into()));
        }
        if let Some(p) = speeds.iter().find(|p| p.nvars() != n) {
            return Err(Error::ArityMismatch { expected: n, got: p.nvars() });
        }
        Ok(DiagonalSystem { speeds })
    }

    pub fn speeds(&self) -> &[Poly] {
        &self.speeds
    }

    pub fn dim(&self) -> usize {
        self.speeds.len()
    }

    /// `v^i = u^i − Σ_k ε_k u^k`.
    pub fn epsilon(weights: &[Rational]) -> Result<Self> {
        let n = weights.len();
        let a0 = weights.iter().enumerate().fold(Poly::zero(n), |acc, (k, w)| acc + &Poly::var(n, k).scale(w));
        DiagonalSystem::new((0..n).map(|i| Poly::var(n, i) - &a0).collect())
    }
}

/// Speeds lifted to second-order jets, with distinctness checked.
struct Lifted {
    v: Vec<Jet2>,
    /// `sym[i][j] = Γ^i_{ij}` as a first-order jet; the diagonal is unused.
    sym: Vec<Vec<Jet1>>,
}

fn lift(sys: &DiagonalSystem, point: &[Rational]) -> Result<Lifted> {
    let n = sys.dim();
    if point.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: point.len() });
    }
    let v = sys.speeds.iter().map(|p| p.jet2(point)).collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in i + 1..n {
            if v[i].value() == v[j].value() {
                return Err(Error::CoincidingSpeeds { i, j });
            }
        }
    }
    let v1: Vec<Jet1> = v.iter().map(Jet2::to_jet1).collect();
    let sym = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return Jet1::nil();
                    }
                    let den = (v1[j].clone() - &v1[i]).recip().expect("distinct speeds");
                    v[i].derivative(j) * &den
                })
                .collect()
        })
        .collect();
    Ok(Lifted { v, sym })
}

/// `Γ^i_{ij} = ∂_j v^i / (v^j − v^i)` at `point` (0-based `i ≠ j`).
pub fn tsarev_symbol(sys: &DiagonalSystem, i: usize, j: usize, point: &[Rational]) -> Result<Rational> {
    let n = sys.dim();
    if i >= n || j >= n || i == j {
        return Err(Error::IndexOutOfRange(format!("symbol ({i},{j}) needs distinct indices below {n}")));
    }
    Ok(lift(sys, point)?.sym[i][j].value().clone())
}

fn distinct_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| (0..n).filter(move |&k| i != j && j != k && k != i).map(move |k| (i, j, k)))
    })
}

/// Semi-Hamiltonian, Darboux–Tsarev, symmetric-derivative and Tsarev-identity residuals.
pub fn residuals(sys: &DiagonalSystem, point: &[Rational]) -> Result<VerificationReport> {
    let n = sys.dim();
    let Lifted { v, sym } = lift(sys, point)?;
    let val = |i: usize| v[i].value();
    let g = |i: usize, j: usize| sym[i][j].value();

    // ∂_j(∂_k v^i / (v^k − v^i)) − ∂_k(∂_j v^i / (v^j − v^i)), each term by the quotient rule
    let quotient = |i: usize, k: usize, j: usize| -> Rational {
        // ∂_j (A / B) with A = ∂_k v^i, B = v^k − v^i
        let a = v[i].partial(k);
        let da = v[i].second_partial(k, j);
        let b = val(k) - val(i);
        let db = v[k].partial(j) - v[i].partial(j);
        (da * &b - a * db) / (&b * &b)
    };
    let mut semi = Tally::new("semi_hamiltonian");
    let mut shder = Tally::new("shder");
    let mut darboux = Tally::new("darboux_tsarev");
    let mut ident = Tally::new("tsarev_identity");
    for (i, j, k) in distinct_triples(n) {
        if j < k {
            semi.record(&[i + 1, j + 1, k + 1], &(quotient(i, k, j) - quotient(i, j, k)));
            shder.record(&[i + 1, j + 1, k + 1], &(sym[i][k].partial(j) - sym[i][j].partial(k)));
        }
        // ∂_i Γ^k_{kj} + Γ^k_{ki} Γ^k_{kj} − Γ^k_{kj} Γ^j_{ji} − Γ^k_{ik} Γ^i_{ij}, torsion-free so Γ^k_{ik} = Γ^k_{ki}
        let lhs = sym[k][j].partial(i) + g(k, i) * g(k, j) - g(k, j) * g(j, i) - g(k, i) * g(i, j);
        darboux.record(&[i + 1, j + 1, k + 1], &lhs);
        // (v^i − v^k)/(v^j − v^i) [∂_j Γ^k_{ki} − ∂_i Γ^k_{kj}]
        let rhs = (val(i) - val(k)) / (val(j) - val(i)) * (sym[k][i].partial(j) - sym[k][j].partial(i));
        ident.record(&[i + 1, j + 1, k + 1], &(lhs - rhs));
    }
    Ok(VerificationReport { checks: vec![semi.finish(), darboux.finish(), shder.finish(), ident.finish()], warnings: Vec::new() })
}

/// Residuals of a candidate symmetry `u_τ = w(u) u_x` and a candidate conserved density `h`:
/// `∂_j w^i − Γ^i_{ij}(w^j − w^i)` and `∂_i ∂_j h − Γ^i_{ij} ∂_i h − Γ^j_{ji} ∂_j h` for `i ≠ j`.
pub fn candidate_residuals(sys: &DiagonalSystem, w: &[Poly], h: &Poly, point: &[Rational]) -> Result<VerificationReport> {
    let n = sys.dim();
    if w.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: w.len() });
    }
    if let Some(p) = w.iter().chain(std::iter::once(h)).find(|p| p.nvars() != n) {
        return Err(Error::ArityMismatch { expected: n, got: p.nvars() });
    }
    let Lifted { sym, .. } = lift(sys, point)?;
    let g = |i: usize, j: usize| sym[i][j].value();
    let wj = w.iter().map(|p| p.jet1(point)).collect::<Result<Vec<_>>>()?;
    let hj = h.jet2(point)?;
    let mut symmetry = Tally::new("symmetry");
    let mut conservation = Tally::new("conservation");
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let r = wj[i].partial(j) - g(i, j) * (wj[j].value() - wj[i].value());
            symmetry.record(&[i + 1, j + 1], &r);
            if i < j {
                let r = hj.second_partial(i, j) - g(i, j) * hj.partial(i) - g(j, i) * hj.partial(j);
                conservation.record(&[i + 1, j + 1], &r);
            }
        }
    }
    Ok(VerificationReport { checks: vec![symmetry.finish(), conservation.finish()], warnings: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{diagonal, epsilon_system, hierarchy_generate};
    use crate::kernel::rational::{int, rat};

    fn u(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn epsilon_symbols() {
        let w = [rat(1, 2), rat(-1, 3), int(2)];
        let sys = DiagonalSystem::epsilon(&w).unwrap();
        let p = [int(3), int(-1), rat(1, 2)];
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                assert_eq!(tsarev_symbol(&sys, i, j, &p).unwrap(), &w[j] / (&p[i] - &p[j]));
            }
        }
        let r = residuals(&sys, &p).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.evaluated > 0));
    }

    #[test]
    fn independent_speed_has_zero_symbol() {
        let sys = DiagonalSystem::new(vec![u(2, 0), &u(2, 1) * &u(2, 1)]).unwrap();
        assert_eq!(tsarev_symbol(&sys, 0, 1, &[int(1), int(3)]).unwrap(), int(0));
    }

    #[test]
    fn coinciding_speeds_rejected() {
        let sys = DiagonalSystem::new(vec![u(2, 0), u(2, 1)]).unwrap();
        assert_eq!(tsarev_symbol(&sys, 0, 1, &[int(2), int(2)]), Err(Error::CoincidingSpeeds { i: 0, j: 1 }));
        assert!(matches!(residuals(&sys, &[int(2), int(2)]), Err(Error::CoincidingSpeeds { .. })));
    }

    #[test]
    fn non_rich_system_fails() {
        let n = 3;
        let sys = DiagonalSystem::new(vec![u(n, 1) + u(n, 2), &u(n, 0) * &u(n, 2), &u(n, 0) * &u(n, 1)]).unwrap();
        let r = residuals(&sys, &[int(1), int(2), int(4)]).unwrap();
        assert!(!r.check("semi_hamiltonian").unwrap().pass);
        assert!(r.check("tsarev_identity").unwrap().pass);
    }

    #[test]
    fn candidate_examples() {
        let w = [rat(1, 2), rat(-1, 3), int(2)];
        let sys = DiagonalSystem::epsilon(&w).unwrap();
        let p = [int(3), int(-1), rat(1, 2)];
        let c = Poly::constant(3, int(7));
        assert!(candidate_residuals(&sys, sys.speeds(), &c, &p).unwrap().all_pass());
        let (l, a0) = epsilon_system(&w).unwrap();
        let seq = hierarchy_generate(&l, &a0, 2).unwrap();
        let speeds = diagonal(&seq.v[2]);
        let r = candidate_residuals(&sys, &speeds, &c, &p).unwrap();
        assert!(r.check("symmetry").unwrap().pass, "{r:?}");
        let bad = [u(3, 1), u(3, 2), u(3, 0)];
        assert!(!candidate_residuals(&sys, &bad, &c, &p).unwrap().check("symmetry").unwrap().pass);
    }

    #[test]
    fn json_round_trip() {
        let sys = DiagonalSystem::epsilon(&[rat(1, 2), int(1)]).unwrap();
        let s = serde_json::to_string(&sys).unwrap();
        assert!(s.starts_with("{\"speeds\":["));
        assert_eq!(serde_json::from_str::<DiagonalSystem>(&s).unwrap(), sys);
        assert!(serde_json::from_str::<DiagonalSystem>(r#"{"speeds":[[{"coeff":"1","exps":[1]}],[]]}"#).is_err());
    }
}
