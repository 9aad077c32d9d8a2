//! Exact-zero checks of the bi-flat axioms and of the identities behind the recursion.
//!
//! Every check evaluates a residual over all relevant index tuples at one rational
//! point. A check passes iff every residual is exactly zero; otherwise the report keeps
//! the index tuple with the largest residual in absolute value.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::connection::{gamma_table, ChristoffelTable, LauricellaConnection};
use crate::dual::{dual_gamma_closed, dual_gamma_generic, dual_product, euler_inverse, nabla_euler};
use crate::error::{Error, Result};
use crate::hierarchy::d_l_function;
use crate::jordan::{a0_poly, canonical_fields, is_regular, operator_l, regularity_defect, BlockConfig, Tensor3};
use crate::kernel::rational::{abs_gt, serde_rational};
use crate::kernel::{exterior_d, lift_point, Jet1, Poly, Rational, Scalar};

/// Worst offending index tuple (1-based) and residual of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

impl Default for Witness {
    fn default() -> Self {
        Witness { indices: Vec::new(), value: Rational::zero() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    /// Number of residuals evaluated.
    #[serde(default)]
    pub evaluated: u64,
    pub witness: Witness,
}

impl CheckOutcome {
    fn absorb(&mut self, other: &CheckOutcome) {
        self.pass &= other.pass;
        self.evaluated += other.evaluated;
        if abs_gt(&other.witness.value, &self.witness.value) {
            self.witness = other.witness.clone();
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Folds `other` into `self`: checks with the same name are combined (pass is the
    /// conjunction, the larger witness wins, ties keep `self`); new names are appended.
    pub fn merge(&mut self, other: &VerificationReport) {
        for c in &other.checks {
            match self.checks.iter_mut().find(|s| s.name == c.name) {
                Some(s) => s.absorb(c),
                None => self.checks.push(c.clone()),
            }
        }
        self.warnings.extend(other.warnings.iter().cloned());
    }

    pub fn merged(mut self, other: &VerificationReport) -> Self {
        self.merge(other);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.merge(&VerificationReport { checks: vec![outcome], warnings: Vec::new() });
    }
}

/// Accumulates residuals for one named check.
#[derive(Debug, Clone)]
pub struct Tally {
    name: String,
    evaluated: u64,
    worst: Witness,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Tally { name: name.to_string(), evaluated: 0, worst: Witness::default() }
    }

    /// Records one residual; `indices` are reported as given.
    pub fn record(&mut self, indices: &[usize], value: &Rational) {
        self.evaluated += 1;
        if abs_gt(value, &self.worst.value) {
            self.worst = Witness { indices: indices.to_vec(), value: value.clone() };
        }
    }

    /// Records a polynomial residual. A nonzero polynomial that happens to vanish at
    /// `point` is reported through its first coefficient so it still fails.
    pub fn record_poly(&mut self, indices: &[usize], p: &Poly, point: &[Rational]) {
        let v = poly_residual(p, point);
        self.record(indices, &v);
    }

    pub fn finish(self) -> CheckOutcome {
        CheckOutcome { name: self.name, pass: self.worst.value.is_zero(), evaluated: self.evaluated, witness: self.worst }
    }
}

fn poly_residual(p: &Poly, point: &[Rational]) -> Rational {
    if p.is_zero() {
        return Rational::zero();
    }
    match p.eval(point) {
        Ok(v) if !v.is_zero() => v,
        _ => p.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one),
    }
}

fn report_of(tallies: Vec<Tally>) -> VerificationReport {
    VerificationReport { checks: tallies.into_iter().map(Tally::finish).collect(), warnings: Vec::new() }
}

/// `(d_∇T)^i_{jk} = ∂_j T^i_k − ∂_k T^i_j + Γ^i_{jl} T^l_k − Γ^i_{kl} T^l_j`, indexed `[i][j][k]`.
/// `t[i][k]` is `T^i_k`.
pub fn d_nabla<S: Scalar>(t: &[Vec<Jet1>], gamma: &ChristoffelTable<S>) -> Result<Vec<Vec<Vec<Rational>>>> {
    let n = gamma.dim();
    if t.len() != n || t.iter().any(|row| row.len() != n) {
        return Err(Error::ShapeMismatch(format!("tensor must be {n}x{n}")));
    }
    let g = |k: usize, i: usize, j: usize| gamma.get(k, i, j).value();
    let mut out = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                let mut v = t[i][k].partial(j) - t[i][j].partial(k);
                for l in 0..n {
                    v += g(i, j, l) * t[l][k].value() - g(i, k, l) * t[l][j].value();
                }
                out[i][k][j] = -v.clone();
                out[i][j][k] = v;
            }
        }
    }
    Ok(out)
}

/// `R^k_{ijl} = ∂_j Γ^k_{il} − ∂_i Γ^k_{jl} + Γ^k_{js} Γ^s_{il} − Γ^k_{is} Γ^s_{jl}`,
/// indexed `[k][i][j][l]`.
pub fn curvature(gamma: &ChristoffelTable<Jet1>) -> Vec<Vec<Vec<Vec<Rational>>>> {
    let n = gamma.dim();
    let v = gamma.values();
    let g = |k: usize, i: usize, j: usize| v.get(k, i, j);
    let mut out = vec![vec![vec![vec![Rational::zero(); n]; n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    let mut r = gamma.get(k, i, l).partial(j) - gamma.get(k, j, l).partial(i);
                    for s in 0..n {
                        r += g(k, j, s) * g(s, i, l) - g(k, i, s) * g(s, j, l);
                    }
                    out[k][j][i][l] = -r.clone();
                    out[k][i][j][l] = r;
                }
            }
        }
    }
    out
}

pub fn is_flat(gamma: &ChristoffelTable<Jet1>) -> bool {
    curvature(gamma).iter().flatten().flatten().flatten().all(Zero::is_zero)
}

fn kron(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Flat index of 1-based inner index `inner` of `block`, if in range.
fn slot(config: &BlockConfig, block: usize, inner: i64) -> Option<usize> {
    (inner >= 1 && inner as usize <= config.size(block)).then(|| config.offset(block) + inner as usize - 1)
}

/// `(block, 1-based inner)` for every flat index.
fn labels(config: &BlockConfig) -> Vec<(usize, i64)> {
    (0..config.dim())
        .map(|f| {
            let (b, i) = config.block_of(f).expect("index in range");
            (b, i as i64 + 1)
        })
        .collect()
}

fn check_arity(config: &BlockConfig, point: &[Rational]) -> Result<()> {
    if point.len() != config.dim() {
        return Err(Error::ArityMismatch { expected: config.dim(), got: point.len() });
    }
    Ok(())
}

/// Full axiom suite for the Lauricella connection of `config` at `point`.
pub fn axiom_suite(config: &BlockConfig, point: &[Rational]) -> Result<VerificationReport> {
    check_arity(config, point)?;
    let gamma = gamma_table::<Jet1>(config, point)?;
    let mut report = axiom_suite_with(config, point, &gamma, &a0_poly(config))?;

    // torsion straight from the case rules, which are not symmetric by construction
    let conn = LauricellaConnection::<Rational>::new(config, point)?;
    let n = config.dim();
    let mut t = Tally::new("torsion");
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let d = conn.entry(k, i, j)? - conn.entry(k, j, i)?;
                t.record(&[k + 1, i + 1, j + 1], &d);
            }
        }
    }
    report.merge(&report_of(vec![t]));
    Ok(report)
}

/// Axiom suite for an arbitrary connection table `gamma` (over jets) and potential `a0`.
///
/// Used directly for negative controls: perturbing `gamma` or `a0` must make some
/// check fail.
pub fn axiom_suite_with(
    config: &BlockConfig,
    point: &[Rational],
    gamma: &ChristoffelTable<Jet1>,
    a0: &Poly,
) -> Result<VerificationReport> {
    check_arity(config, point)?;
    if let Some(why) = regularity_defect(config, point, false) {
        return Err(Error::NonRegularPoint(why));
    }
    if gamma.dim() != config.dim() {
        return Err(Error::ShapeMismatch("connection table has the wrong dimension".into()));
    }
    let n = config.dim();
    let gv = gamma.values();
    let g = |k: usize, i: usize, j: usize| gv.get(k, i, j);
    let fields = canonical_fields(config);
    let c = &fields.product;
    let e = &fields.unit;
    let lab = labels(config);
    let mut tallies = Vec::new();

    // torsion as stored
    let mut t = Tally::new("torsion");
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                t.record(&[k + 1, i + 1, j + 1], &(g(k, i, j) - g(k, j, i)));
            }
        }
    }
    tallies.push(t);

    // ∇e = 0 with e constant
    let mut t = Tally::new("unit_flat");
    for k in 0..n {
        for i in 0..n {
            let v: Rational = (0..n).filter(|&s| !e[s].is_zero()).map(|s| g(k, i, s) * &e[s]).sum();
            t.record(&[k + 1, i + 1], &v);
        }
    }
    tallies.push(t);

    // ∇_i c^l_{jk} − ∇_j c^l_{ik}, with ∂c = 0
    let nabla_c = |i: usize, j: usize, k: usize, l: usize| -> Rational {
        let mut v = Rational::zero();
        for s in 0..n {
            if !c.get(s, j, k).is_zero() {
                v += g(l, i, s) * c.get(s, j, k);
            }
            if !c.get(l, s, k).is_zero() {
                v -= g(s, i, j) * c.get(l, s, k);
            }
            if !c.get(l, j, s).is_zero() {
                v -= g(s, i, k) * c.get(l, j, s);
            }
        }
        v
    };
    let mut t = Tally::new("compatibility");
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in 0..n {
                    t.record(&[i + 1, j + 1, k + 1, l + 1], &(nabla_c(i, j, k, l) - nabla_c(j, i, k, l)));
                }
            }
        }
    }
    tallies.push(t);

    // the same condition written out on blocks:
    // δ_{βγ}Γ^{l(ε)}_{i(α)(j+k−1)(β)} − δ^ε_β Γ^{(l−j+1)(β)}_{i(α)k(γ)}
    //   = δ_{αγ}Γ^{l(ε)}_{j(β)(i+k−1)(α)} − δ^ε_α Γ^{(l−i+1)(α)}_{j(β)k(γ)}
    let side = |i: usize, j: usize, k: usize, l: usize| -> Rational {
        let ((b, jj), (cc, kk), (eps, ll)) = (lab[j], lab[k], lab[l]);
        let mut v = Rational::zero();
        if b == cc {
            if let Some(s) = slot(config, b, jj + kk - 1) {
                v += g(l, i, s);
            }
        }
        if eps == b {
            if let Some(s) = slot(config, b, ll - jj + 1) {
                v -= g(s, i, k);
            }
        }
        v
    };
    let mut t = Tally::new("compatibility_blockwise");
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in 0..n {
                    t.record(&[i + 1, j + 1, k + 1, l + 1], &(side(i, j, k, l) - side(j, i, k, l)));
                }
            }
        }
    }
    tallies.push(t);

    // d_∇(L − a₀I) = 0 with the supplied potential
    let l_op = operator_l(config);
    let mut tm = Vec::with_capacity(n);
    for (i, row) in l_op.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (k, p) in row.iter().enumerate() {
            let entry = if i == k { p - a0 } else { p.clone() };
            out.push(entry.jet1(point)?);
        }
        tm.push(out);
    }
    let dn = d_nabla(&tm, gamma)?;
    let mut t = Tally::new("main_condition");
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                t.record(&[i + 1, j + 1, k + 1], &dn[i][j][k]);
            }
        }
    }
    tallies.push(t);

    // the main condition written out on blocks with the weights of `config`:
    // δ^α_β δ^i_j m_γε_γ δ^1_k − δ^α_γ δ^i_k m_βε_β δ^1_j
    //   + Σ_{l≥k} Γ^{i(α)}_{j(β)l(γ)} u^{(l−k+1)(γ)} − Σ_{l≥j} Γ^{i(α)}_{k(γ)l(β)} u^{(l−j+1)(β)}
    let mut t = Tally::new("main_condition_blockwise");
    for i in 0..n {
        let (a, ii) = lab[i];
        for j in 0..n {
            let (b, jj) = lab[j];
            for k in j + 1..n {
                let (cc, kk) = lab[k];
                let mut v = Rational::zero();
                if a == b && ii == jj && kk == 1 {
                    v += config.block_charge(cc);
                }
                if a == cc && ii == kk && jj == 1 {
                    v -= config.block_charge(b);
                }
                for ll in kk..=config.size(cc) as i64 {
                    let (s, us) = (slot(config, cc, ll).unwrap(), slot(config, cc, ll - kk + 1).unwrap());
                    v += g(i, j, s) * &point[us];
                }
                for ll in jj..=config.size(b) as i64 {
                    let (s, us) = (slot(config, b, ll).unwrap(), slot(config, b, ll - jj + 1).unwrap());
                    v -= g(i, k, s) * &point[us];
                }
                t.record(&[i + 1, j + 1, k + 1], &v);
            }
        }
    }
    tallies.push(t);

    // ∇E in closed form and the contracted sums Σ_k Γ^{i(α)}_{j(β)k} u^k
    let ne = nabla_euler(&gv, point);
    let total = config.total_charge();
    let mut closed = Tally::new("nabla_euler_closed_form");
    let mut sums = Tally::new("euler_sums");
    for i in 0..n {
        let (a, ii) = lab[i];
        for j in 0..n {
            let (b, jj) = lab[j];
            let same = kron(a, b);
            let expected_sum = if ii != jj {
                Rational::zero()
            } else if ii == 1 {
                if a == b {
                    -(&total - config.block_charge(a))
                } else {
                    config.block_charge(b)
                }
            } else {
                -(&same * &total)
            };
            let contracted: Rational = (0..n).map(|k| g(i, j, k) * &point[k]).sum();
            sums.record(&[i + 1, j + 1], &(&contracted - &expected_sum));
            // ∇_j E^i = δ^i_j + sum
            let expected_nabla = if ii == jj && a == b { &expected_sum + Rational::one() } else { expected_sum };
            closed.record(&[i + 1, j + 1], &(&ne[i][j] - &expected_nabla));
        }
    }
    tallies.push(closed);
    tallies.push(sums);

    // ∇∇E = 0: ∂_j (∇E)^k_l + Γ^k_{js} (∇E)^s_l − Γ^s_{jl} (∇E)^k_s
    let jet_coords = lift_point::<Jet1>(point);
    let ne_jet = nabla_euler(gamma, &jet_coords);
    let mut t = Tally::new("nabla_nabla_euler");
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut v = ne_jet[k][l].partial(j);
                for s in 0..n {
                    v += g(k, j, s) * ne_jet[s][l].value() - g(s, j, l) * ne_jet[k][s].value();
                }
                t.record(&[j + 1, k + 1, l + 1], &v);
            }
        }
    }
    tallies.push(t);

    // ∇ d a₀ = 0: ∂_i ∂_j a₀ − Γ^k_{ij} ∂_k a₀
    let a0_jet = a0.jet2(point)?;
    let mut t = Tally::new("a0_flat");
    for i in 0..n {
        for j in i..n {
            let mut v = a0_jet.second_partial(i, j);
            for k in 0..n {
                v -= g(k, i, j) * a0_jet.partial(k);
            }
            t.record(&[i + 1, j + 1], &v);
        }
    }
    tallies.push(t);

    let r = curvature(gamma);
    tallies.push(tally_curvature("curvature", &r));

    // algebra of the product
    tallies.push(tally_algebra("product_algebra", c, |v| v.clone()));

    // X∘e = X
    let mut t = Tally::new("unit_identity");
    for i in 0..n {
        for k in 0..n {
            let v: Rational = (0..n).map(|j| c.get(k, i, j) * &e[j]).sum::<Rational>() - kron(k, i);
            t.record(&[i + 1, k + 1], &v);
        }
    }
    tallies.push(t);

    // [e, E] = e and Lie_E c = c, from ∂_s E^k and ∂c = 0
    let de: Vec<Vec<Rational>> = fields
        .euler
        .iter()
        .map(|ek| ek.gradient().iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut t = Tally::new("unit_euler_bracket");
    for k in 0..n {
        let v: Rational = (0..n).map(|s| &e[s] * &de[k][s]).sum::<Rational>() - &e[k];
        t.record(&[k + 1], &v);
    }
    tallies.push(t);
    let mut t = Tally::new("euler_lie_product");
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut v = -c.get(k, i, j);
                for s in 0..n {
                    v -= c.get(s, i, j) * &de[k][s];
                    v += c.get(k, s, j) * &de[s][i];
                    v += c.get(k, i, s) * &de[s][j];
                }
                t.record(&[k + 1, i + 1, j + 1], &v);
            }
        }
    }
    tallies.push(t);

    let mut report = report_of(tallies);
    match regularity_defect(config, point, true) {
        Some(why) => report.warnings.push(format!("dual checks skipped: {why}")),
        None => report.merge(&dual_checks(config, point, gamma, &jet_coords, c)?),
    }
    Ok(report)
}

fn tally_curvature(name: &str, r: &[Vec<Vec<Vec<Rational>>>]) -> Tally {
    let n = r.len();
    let mut t = Tally::new(name);
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    t.record(&[k + 1, i + 1, j + 1, l + 1], &r[k][i][j][l]);
                }
            }
        }
    }
    t
}

/// Commutativity and associativity of structure constants `c`.
fn tally_algebra<S: Scalar>(name: &str, c: &Tensor3<S>, val: impl Fn(&S) -> Rational) -> Tally {
    let n = c.dim();
    let mut t = Tally::new(name);
    let cv: Vec<Vec<Vec<Rational>>> =
        (0..n).map(|k| (0..n).map(|i| (0..n).map(|j| val(c.get(k, i, j))).collect()).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                t.record(&[k + 1, i + 1, j + 1], &(&cv[k][i][j] - &cv[k][j][i]));
            }
        }
    }
    // (X_i ∘ X_j) ∘ X_k − X_i ∘ (X_j ∘ X_k)
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut v = Rational::zero();
                    for l in 0..n {
                        if !cv[l][i][j].is_zero() {
                            v += &cv[l][i][j] * &cv[m][l][k];
                        }
                        if !cv[l][j][k].is_zero() {
                            v -= &cv[l][j][k] * &cv[m][i][l];
                        }
                    }
                    t.record(&[m + 1, i + 1, j + 1, k + 1], &v);
                }
            }
        }
    }
    t
}

fn dual_checks(
    config: &BlockConfig,
    point: &[Rational],
    gamma: &ChristoffelTable<Jet1>,
    jet_coords: &[Jet1],
    c: &Tensor3<Rational>,
) -> Result<VerificationReport> {
    let n = config.dim();
    let star = dual_gamma_closed(config, jet_coords, gamma)?;
    let sv = star.values();
    let gs = |k: usize, i: usize, j: usize| sv.get(k, i, j);
    let gv = gamma.values();
    let g = |k: usize, i: usize, j: usize| gv.get(k, i, j);
    let generic = dual_gamma_generic(config, point, &gv)?;
    let cstar_jet = dual_product(config, jet_coords)?;
    let cstar = cstar_jet.values();
    let inv = euler_inverse(config, point)?;
    let mut tallies = Vec::new();

    let mut t = Tally::new("dual_routes");
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                t.record(&[k + 1, i + 1, j + 1], &(gs(k, i, j) - generic.get(k, i, j)));
            }
        }
    }
    tallies.push(t);

    // dual torsion from the unsymmetrised contraction Γ^k_{ij} − Σ_l c*^l_{ji} ∇_l E^k
    let ne = nabla_euler(&gv, point);
    let lab = labels(config);
    let cstar_formula = |l: usize, j: usize, i: usize| -> Rational {
        let ((a, ll), (b, jj), (cc, ii)) = (lab[l], lab[j], lab[i]);
        if a != b || b != cc || ll - jj - ii + 2 < 1 {
            return Rational::zero();
        }
        inv[config.offset(a) + (ll - jj - ii + 1) as usize].clone()
    };
    let raw = |k: usize, i: usize, j: usize| -> Rational {
        g(k, i, j) - (0..n).map(|l| cstar_formula(l, j, i) * &ne[k][l]).sum::<Rational>()
    };
    let mut t = Tally::new("dual_torsion");
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                t.record(&[k + 1, i + 1, j + 1], &(raw(k, i, j) - raw(k, j, i)));
            }
        }
    }
    tallies.push(t);

    tallies.push(tally_algebra("dual_product_algebra", &cstar, |v| v.clone()));

    // E⁻¹ ∘ E = e
    let fields = canonical_fields(config);
    let mut t = Tally::new("euler_inverse");
    for k in 0..n {
        let mut v = -fields.unit[k].clone();
        for i in 0..n {
            for j in 0..n {
                if !c.get(k, i, j).is_zero() {
                    v += c.get(k, i, j) * &inv[i] * &point[j];
                }
            }
        }
        t.record(&[k + 1], &v);
    }
    tallies.push(t);

    // X * E = X
    let mut t = Tally::new("dual_euler_unit");
    for i in 0..n {
        for k in 0..n {
            let v: Rational = (0..n).map(|j| cstar.get(k, i, j) * &point[j]).sum::<Rational>() - kron(k, i);
            t.record(&[i + 1, k + 1], &v);
        }
    }
    tallies.push(t);

    // ∇*E = 0
    let mut t = Tally::new("dual_nabla_euler");
    for i in 0..n {
        for j in 0..n {
            let v: Rational = (0..n).map(|k| gs(i, j, k) * &point[k]).sum::<Rational>() + kron(i, j);
            t.record(&[i + 1, j + 1], &v);
        }
    }
    tallies.push(t);

    tallies.push(tally_curvature("dual_curvature", &curvature(&star)));

    // ∇*_i c*^l_{jk} symmetric in (i, j)
    let nabla_cs = |i: usize, j: usize, k: usize, l: usize| -> Rational {
        let mut v = cstar_jet.get(l, j, k).partial(i);
        for s in 0..n {
            v += gs(l, i, s) * cstar.get(s, j, k);
            v -= gs(s, i, j) * cstar.get(l, s, k);
            v -= gs(s, i, k) * cstar.get(l, j, s);
        }
        v
    };
    let mut t = Tally::new("dual_compatibility");
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in 0..n {
                    t.record(&[i + 1, j + 1, k + 1, l + 1], &(nabla_cs(i, j, k, l) - nabla_cs(j, i, k, l)));
                }
            }
        }
    }
    tallies.push(t);

    // (d_∇ − d_∇*)(X∘) = 0 for each basis field X: only the connection terms survive
    let diff = |i: usize, j: usize, l: usize| g(i, j, l) - gs(i, j, l);
    let mut t = Tally::new("bi_flat_compatibility");
    for x in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let mut v = Rational::zero();
                    for l in 0..n {
                        if !c.get(l, x, k).is_zero() {
                            v += diff(i, j, l) * c.get(l, x, k);
                        }
                        if !c.get(l, x, j).is_zero() {
                            v -= diff(i, k, l) * c.get(l, x, j);
                        }
                    }
                    t.record(&[x + 1, i + 1, j + 1, k + 1], &v);
                }
            }
        }
    }
    tallies.push(t);

    Ok(report_of(tallies))
}

/// The identities used to build the connection, evaluated at `point`.
///
/// Each check only runs over the index ranges the configuration makes nonempty;
/// `evaluated` counts how many residuals were actually computed.
pub fn identity_suite(config: &BlockConfig, point: &[Rational]) -> Result<VerificationReport> {
    check_arity(config, point)?;
    let n = config.dim();
    let jets = lift_point::<Jet1>(point);
    let conn = LauricellaConnection::<Jet1>::new(config, &jets)?;
    let table = conn.table(point.to_vec());
    let lab = labels(config);
    let r = config.blocks();
    let mut tallies = Vec::new();

    // derivative shift: ∂_{l(δ)} Γ^{k(γ)}_{ij} = ∂_{(l−1)(δ)} Γ^{(k−1)(γ)}_{ij} for k ≥ 2, l ≥ 3
    let mut t = Tally::new("derivative_shift");
    for k in (0..n).filter(|&k| lab[k].1 >= 2) {
        for l in (0..n).filter(|&l| lab[l].1 >= 3) {
            for i in 0..n {
                for j in i..n {
                    let v = table.get(k, i, j).partial(l) - table.get(k - 1, i, j).partial(l - 1);
                    t.record(&[k + 1, i + 1, j + 1, l + 1], &v);
                }
            }
        }
    }
    // and for l = 2 on the second slot lying in another block:
    // ∂_{2(α)} Γ^{k(α)}_{i(α)1(β)} = ∂_{1(α)} Γ^{(k−1)(α)}_{i(α)1(β)}
    for a in 0..r {
        if config.size(a) < 2 {
            continue;
        }
        let o = config.offset(a);
        for b in (0..r).filter(|&b| b != a) {
            let j = config.offset(b);
            for kk in 1..config.size(a) {
                for ii in 0..config.size(a) {
                    let v = table.get(o + kk, o + ii, j).partial(o + 1) - table.get(o + kk - 1, o + ii, j).partial(o);
                    t.record(&[o + kk + 1, o + ii + 1, j + 1, o + 2], &v);
                }
            }
        }
    }
    tallies.push(t);

    let val = |x: Jet1| x.value().clone();
    let h = |a: usize, t: i64| val(conn.inner_seed(a, t));
    let f = |a: usize, s: i64| val(conn.unit_seed(a, s));
    let gs = |a: usize, b: usize, t: i64| val(conn.seed(a, b, t));

    // A^{l(α)} = Γ^2_{22}(u³u^l/u² − u^{l+1}) − Σ_{s=2}^{l−1} (h(s+2) − f(s)) u^{l−s+1}, 3 ≤ l ≤ m_α−1
    let mut t = Tally::new("lemma_inner_recursion");
    for a in 0..r {
        let m = config.size(a) as i64;
        let u = |s: i64| &point[slot(config, a, s).expect("inner index in range")];
        for l in 3..m {
            let mut v = h(a, 2) * (u(3) * u(l) / u(2) - u(l + 1));
            for s in 2..l {
                v -= (h(a, s + 2) - f(a, s)) * u(l - s + 1);
            }
            t.record(&[a + 1, l as usize], &v);
        }
    }
    tallies.push(t);

    // ∂_{1(σ)} (h(l+2) − f(l)) = 0 for σ ≠ α, 1 ≤ l ≤ m_α−2
    let mut t = Tally::new("lemma_unit_derivatives");
    for a in 0..r {
        let m = config.size(a) as i64;
        for l in 1..=m - 2 {
            let d = conn.inner_seed(a, l + 2) - &conn.unit_seed(a, l);
            for s in (0..r).filter(|&s| s != a) {
                t.record(&[a + 1, l as usize, s + 1], &d.partial(config.offset(s)));
            }
        }
    }
    tallies.push(t);

    // B^{s(α)}_{βε} for pairwise distinct α, β, ε and 1 ≤ s ≤ m_α−1
    let mut t = Tally::new("lemma_cross_seeds");
    for a in 0..r {
        let m = config.size(a) as i64;
        for b in (0..r).filter(|&b| b != a) {
            for e in (0..r).filter(|&e| e != a && e != b) {
                for s in 1..m {
                    let mut v = Rational::zero();
                    for tt in 1..=s + 1 {
                        v -= gs(a, e, s - tt + 2) * gs(a, b, tt);
                    }
                    v += gs(a, b, s + 1) * gs(b, e, 1) + gs(a, e, s + 1) * gs(e, b, 1);
                    t.record(&[a + 1, b + 1, e + 1, s as usize], &v);
                }
            }
        }
    }
    tallies.push(t);

    // C^{s(α)}_β for β ≠ α and 0 ≤ s ≤ m_α−2
    let mut t = Tally::new("lemma_mixed_seeds");
    for a in 0..r {
        let m = config.size(a) as i64;
        for b in (0..r).filter(|&b| b != a) {
            for s in 0..=m - 2 {
                let mut v = Rational::zero();
                for l in 2..=s + 1 {
                    v += (h(a, s - l + 4) - f(a, s - l + 2)) * gs(a, b, l);
                }
                v += h(a, 2) * gs(a, b, s + 2) + gs(a, b, s + 1) * gs(b, a, 1);
                t.record(&[a + 1, b + 1, s as usize], &v);
            }
        }
    }
    tallies.push(t);

    // d(d_L a₀) = 0
    let dla0 = d_l_function(&a0_poly(config), &operator_l(config))?;
    let dd = exterior_d(&dla0);
    let mut t = Tally::new("potential_closed");
    for i in 0..n {
        for j in i + 1..n {
            t.record_poly(&[i + 1, j + 1], dd.get(i, j), point);
        }
    }
    tallies.push(t);

    Ok(report_of(tallies))
}

/// Axiom and identity suites merged; the dual part is skipped with a warning off the
/// dual-regular locus.
pub fn full_suite(config: &BlockConfig, point: &[Rational]) -> Result<VerificationReport> {
    let mut report = axiom_suite(config, point)?;
    report.merge(&identity_suite(config, point)?);
    Ok(report)
}

/// True iff `point` is regular for `config` and the dual structure exists there.
pub fn dual_ready(config: &BlockConfig, point: &[Rational]) -> bool {
    is_regular(config, point, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    fn cfg(sizes: &[usize], weights: &[Rational]) -> BlockConfig {
        BlockConfig::new(sizes.to_vec(), weights.to_vec()).unwrap()
    }

    fn assert_all_pass(r: &VerificationReport) {
        for c in &r.checks {
            assert!(c.pass, "{} failed at {:?}: {}", c.name, c.witness.indices, c.witness.value);
        }
    }

    #[test]
    fn single_block_two_passes() {
        let c = cfg(&[2], &[rat(3, 7)]);
        let r = axiom_suite(&c, &[int(5), int(2)]).unwrap();
        assert_all_pass(&r);
        assert!(r.warnings.is_empty());
        assert!(r.check("dual_curvature").is_some());
    }

    #[test]
    fn three_two_passes_with_dual() {
        let c = cfg(&[3, 2], &[rat(1, 3), rat(1, 2)]);
        let p = [int(2), int(1), rat(1, 2), int(-1), int(3)];
        let r = full_suite(&c, &p).unwrap();
        assert_all_pass(&r);
        for name in ["curvature", "dual_curvature", "bi_flat_compatibility", "main_condition_blockwise", "lemma_mixed_seeds"] {
            assert!(r.check(name).unwrap().evaluated > 0, "{name} evaluated nothing");
        }
    }

    #[test]
    fn three_blocks_identities() {
        let c = cfg(&[4, 1], &[rat(2, 5), rat(-1, 3)]);
        let r = identity_suite(&c, &[int(3), int(2), int(-1), rat(1, 2), int(7)]).unwrap();
        assert_all_pass(&r);
        assert!(r.check("lemma_inner_recursion").unwrap().evaluated > 0);
        let c = cfg(&[2, 1, 1], &[rat(2, 5), rat(-1, 3), int(2)]);
        let r = identity_suite(&c, &[int(3), int(2), int(-1), rat(1, 2)]).unwrap();
        assert_all_pass(&r);
        assert!(r.check("lemma_cross_seeds").unwrap().evaluated > 0);
    }

    #[test]
    fn dual_skipped_off_dual_locus() {
        let c = cfg(&[1, 2], &[int(1), int(1)]);
        let r = axiom_suite(&c, &[int(0), int(1), int(1)]).unwrap();
        assert_all_pass(&r);
        assert_eq!(r.warnings.len(), 1);
        assert!(r.check("dual_curvature").is_none());
    }

    #[test]
    fn non_regular_rejected() {
        let c = cfg(&[2], &[int(1)]);
        assert!(matches!(axiom_suite(&c, &[int(5), int(0)]), Err(Error::NonRegularPoint(_))));
    }

    #[test]
    fn perturbed_entry_breaks_flatness() {
        let c = cfg(&[2], &[int(1)]);
        let p = [int(5), int(2)];
        let mut g = gamma_table::<Jet1>(&c, &p).unwrap();
        let v = g.get(1, 1, 1).clone() + Jet1::unit();
        g.set(1, 1, 1, v);
        let r = axiom_suite_with(&c, &p, &g, &a0_poly(&c)).unwrap();
        assert!(!r.check("curvature").unwrap().pass || !r.check("main_condition").unwrap().pass);
        assert!(!r.all_pass());
    }

    #[test]
    fn swapped_weights_break_main_condition() {
        let c = cfg(&[2, 1], &[rat(1, 3), rat(2, 5)]);
        let wrong = cfg(&[2, 1], &[rat(2, 5), rat(1, 3)]);
        let p = [int(3), int(2), int(-1)];
        let g = gamma_table::<Jet1>(&c, &p).unwrap();
        let r = axiom_suite_with(&c, &p, &g, &a0_poly(&wrong)).unwrap();
        let m = r.check("main_condition").unwrap();
        assert!(!m.pass);
        assert!(!m.witness.value.is_zero());
    }

    #[test]
    fn d_nabla_examples() {
        let c = cfg(&[3, 1], &[rat(1, 2), int(1)]);
        let p = [int(2), int(1), int(3), int(-2)];
        let g = gamma_table::<Rational>(&c, &p).unwrap();
        let n = 4;
        let id: Vec<Vec<Jet1>> =
            (0..n).map(|i| (0..n).map(|k| Jet1::constant(kron(i, k))).collect()).collect();
        assert!(d_nabla(&id, &g).unwrap().iter().flatten().flatten().all(Zero::is_zero));
        let zero = ChristoffelTable::new(c.clone(), p.to_vec(), Tensor3::<Rational>::zeros(n));
        let l: Vec<Vec<Jet1>> =
            operator_l(&c).iter().map(|row| row.iter().map(|q| q.jet1(&p).unwrap()).collect()).collect();
        assert!(d_nabla(&l, &zero).unwrap().iter().flatten().flatten().all(Zero::is_zero));
        assert!(matches!(d_nabla(&l[..2], &zero), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn merge_keeps_worst_witness() {
        let mut a = Tally::new("x");
        a.record(&[1], &int(2));
        let mut b = Tally::new("x");
        b.record(&[2], &int(-3));
        let mut y = Tally::new("y");
        y.record(&[1], &int(0));
        let ra = report_of(vec![a]);
        let rb = report_of(vec![b, y]);
        let m = ra.clone().merged(&rb);
        assert_eq!(m.check("x").unwrap().witness.indices, vec![2]);
        assert_eq!(m.check("x").unwrap().evaluated, 2);
        assert!(m.check("y").unwrap().pass);
        assert!(!m.all_pass());
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"value\":\"-3\""));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
