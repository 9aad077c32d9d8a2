//! Deterministic sweeps over every block configuration up to a dimension bound.
//!
//! Each configuration gets random rational weights and a batch of random points that
//! are regular and dual-regular. At every point the full axiom and identity suites run,
//! the table is compared with every closed-form oracle that applies, and relabelling
//! the blocks is checked to relabel the table. Jobs are independent and run on the
//! rayon pool; results are merged in job order, so the summary only depends on the seed.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connection::{
    gamma_semisimple_oracle, gamma_single_block_oracle, gamma_smalldim_oracle, gamma_table, ChristoffelTable,
};
use crate::error::{Error, Result};
use crate::jordan::{is_regular, BlockConfig};
use crate::kernel::rational::{serde_rational_vec, Rational};
use crate::verifier::{full_suite, Tally, VerificationReport, Witness};

/// Largest dimension bound a sweep accepts.
pub const MAX_SWEEP_DIM: usize = 8;

const POINT_NUM: i64 = 20;
const POINT_DEN: i64 = 5;
const WEIGHT_NUM: i64 = 10;
const WEIGHT_DEN: i64 = 5;
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub max_dim: usize,
    pub points: usize,
    pub seed: u64,
}

/// All ordered block-size lists summing to `d`, in lexicographic order.
pub fn compositions(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=d {
        for mut rest in compositions(d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn random_weights(rng: &mut impl Rng, blocks: usize) -> Vec<Rational> {
    (0..blocks).map(|_| random_rational(rng, WEIGHT_NUM, WEIGHT_DEN)).collect()
}

/// A random point, rejection-sampled until it is regular (and dual-regular if asked).
pub fn random_point(rng: &mut impl Rng, config: &BlockConfig, dual: bool) -> Result<Vec<Rational>> {
    for _ in 0..MAX_ATTEMPTS {
        let p: Vec<Rational> = (0..config.dim()).map(|_| random_rational(rng, POINT_NUM, POINT_DEN)).collect();
        if is_regular(config, &p, dual) {
            return Ok(p);
        }
    }
    Err(Error::NonRegularPoint(format!("no regular point found for sizes {:?}", config.sizes())))
}

/// The RNG used for configuration number `index` of a sweep with `seed`.
pub fn job_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Compares `table` with every closed-form oracle that covers its configuration.
pub fn oracle_report(config: &BlockConfig, point: &[Rational], table: &ChristoffelTable<Rational>) -> Result<VerificationReport> {
    let mut tallies = Vec::new();
    let mut compare = |name: &str, oracle: ChristoffelTable<Rational>| {
        let mut t = Tally::new(name);
        let n = table.dim();
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    t.record(&[k + 1, i + 1, j + 1], &(table.get(k, i, j) - oracle.get(k, i, j)));
                }
            }
        }
        tallies.push(t.finish());
    };
    if config.is_semisimple() {
        compare("semisimple_oracle", gamma_semisimple_oracle(config, point)?);
    }
    if config.blocks() == 1 {
        compare("single_block_oracle", gamma_single_block_oracle(config, point)?);
    }
    if config.dim() <= 5 {
        compare("smalldim_oracle", gamma_smalldim_oracle(config, point)?);
    }
    Ok(VerificationReport { checks: tallies, warnings: Vec::new() })
}

/// Reverses the block order and checks that the table is relabelled accordingly.
pub fn relabelling_report(config: &BlockConfig, point: &[Rational], table: &ChristoffelTable<Rational>) -> Result<VerificationReport> {
    let r = config.blocks();
    let perm: Vec<usize> = (0..r).rev().collect();
    let other = config.permuted(&perm)?;
    let n = config.dim();
    // sigma[f] = position of flat index f after relabelling
    let mut sigma = vec![0; n];
    for (new_block, &old_block) in perm.iter().enumerate() {
        for t in 0..config.size(old_block) {
            sigma[config.flat_index(old_block, t)?] = other.flat_index(new_block, t)?;
        }
    }
    let mut moved = vec![Rational::zero(); n];
    for f in 0..n {
        moved[sigma[f]] = point[f].clone();
    }
    let relabelled = gamma_table::<Rational>(&other, &moved)?;
    let mut t = Tally::new("relabelling");
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let d = table.get(k, i, j) - relabelled.get(sigma[k], sigma[i], sigma[j]);
                t.record(&[k + 1, i + 1, j + 1], &d);
            }
        }
    }
    Ok(VerificationReport { checks: vec![t.finish()], warnings: Vec::new() })
}

/// Every check run at one point: suites, oracles and relabelling.
pub fn point_report(config: &BlockConfig, point: &[Rational]) -> Result<VerificationReport> {
    let table = gamma_table::<Rational>(config, point)?;
    let mut report = full_suite(config, point)?;
    report.merge(&oracle_report(config, point, &table)?);
    report.merge(&relabelling_report(config, point, &table)?);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckTotals {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub evaluated: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub sizes: Vec<usize>,
    #[serde(with = "serde_rational_vec")]
    pub weights: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    pub check: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigResult {
    pub sizes: Vec<usize>,
    #[serde(with = "serde_rational_vec")]
    pub weights: Vec<Rational>,
    pub points: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub max_dim: usize,
    pub points_per_config: usize,
    pub configs: usize,
    pub points: usize,
    pub all_pass: bool,
    pub checks: Vec<CheckTotals>,
    pub configurations: Vec<ConfigResult>,
    pub failures: Vec<SweepFailure>,
}

struct JobResult {
    config: BlockConfig,
    reports: Vec<(Vec<Rational>, VerificationReport)>,
}

fn run_job(seed: u64, index: usize, sizes: &[usize], points: usize) -> Result<JobResult> {
    let mut rng = job_rng(seed, index);
    let weights = random_weights(&mut rng, sizes.len());
    let config = BlockConfig::new(sizes.to_vec(), weights)?;
    let mut reports = Vec::with_capacity(points);
    for _ in 0..points {
        let p = random_point(&mut rng, &config, true)?;
        let report = point_report(&config, &p)?;
        reports.push((p, report));
    }
    Ok(JobResult { config, reports })
}

/// Runs the sweep. Fails only on invalid options; check failures are reported in the summary.
pub fn sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    if opts.max_dim == 0 || opts.max_dim > MAX_SWEEP_DIM {
        return Err(Error::InvalidConfig(format!("dimension bound must be in 1..={MAX_SWEEP_DIM}")));
    }
    let shapes: Vec<Vec<usize>> = (1..=opts.max_dim).flat_map(compositions).collect();
    let results = shapes
        .par_iter()
        .enumerate()
        .map(|(i, sizes)| run_job(opts.seed, i, sizes, opts.points))
        .collect::<Result<Vec<_>>>()?;

    let mut totals: Vec<CheckTotals> = Vec::new();
    let mut failures = Vec::new();
    let mut configurations = Vec::new();
    let mut npoints = 0;
    for job in &results {
        let mut config_pass = true;
        for (p, report) in &job.reports {
            npoints += 1;
            for c in &report.checks {
                let entry = match totals.iter_mut().position(|t| t.name == c.name) {
                    Some(i) => &mut totals[i],
                    None => {
                        totals.push(CheckTotals { name: c.name.clone(), passed: 0, failed: 0, evaluated: 0 });
                        totals.last_mut().unwrap()
                    }
                };
                entry.evaluated += c.evaluated;
                if c.pass {
                    entry.passed += 1;
                } else {
                    entry.failed += 1;
                    config_pass = false;
                    failures.push(SweepFailure {
                        sizes: job.config.sizes().to_vec(),
                        weights: job.config.weights().to_vec(),
                        point: p.clone(),
                        check: c.name.clone(),
                        witness: c.witness.clone(),
                    });
                }
            }
        }
        configurations.push(ConfigResult {
            sizes: job.config.sizes().to_vec(),
            weights: job.config.weights().to_vec(),
            points: job.reports.len(),
            pass: config_pass,
        });
    }
    Ok(SweepSummary {
        seed: opts.seed,
        max_dim: opts.max_dim,
        points_per_config: opts.points,
        configs: results.len(),
        points: npoints,
        all_pass: failures.is_empty(),
        checks: totals,
        configurations,
        failures,
    })
}
