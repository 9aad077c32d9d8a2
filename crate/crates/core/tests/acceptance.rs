//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::ExitCode;
use std::time::Instant;

use lauricella::connection::{gamma_smalldim_oracle, SMALLDIM_SHAPES};
use lauricella::hierarchy::identity;
use lauricella::kernel::{integrate_radial, rat, int, OneForm};
use lauricella::sweep::{job_rng, random_point, random_weights};
use lauricella::{
    a0_poly, axiom_suite_with, compositions, epsilon_system, flows_are_symmetries, gamma_semisimple_oracle,
    gamma_single_block_oracle, gamma_table, hierarchy_generate, kodama_konopelchenko, operator_l, sweep,
    tsarev_residuals, BlockConfig, DiagonalSystem, Error, Jet1, Poly, Rational, Scalar, SweepOptions, SweepSummary,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_config(rng: &mut impl Rng, sizes: &[usize]) -> BlockConfig {
    BlockConfig::new(sizes.to_vec(), random_weights(rng, sizes.len())).unwrap()
}

fn table_reproduction() -> Outcome {
    let mut compared = 0;
    for (s, shape) in SMALLDIM_SHAPES.iter().enumerate() {
        let mut rng = job_rng(101, s);
        let config = random_config(&mut rng, shape);
        for _ in 0..5 {
            let p = random_point(&mut rng, &config, false).map_err(|e| e.to_string())?;
            let ours = gamma_table::<Rational>(&config, &p).map_err(|e| e.to_string())?;
            let oracle = gamma_smalldim_oracle(&config, &p).map_err(|e| e.to_string())?;
            if let Some((k, i, j, d)) = ours.first_difference(&oracle) {
                return Err(format!("sizes {shape:?}: entry ({}, {}, {}) differs by {d}", k + 1, i + 1, j + 1));
            }
            compared += 1;
        }
    }
    Ok(format!("{} shapes, {compared} tables equal to the closed forms", SMALLDIM_SHAPES.len()))
}

fn oracle_triangulation(summary: &SweepSummary) -> Outcome {
    for m in 1..=8 {
        let mut rng = job_rng(202, m);
        let config = random_config(&mut rng, &[m]);
        let p = random_point(&mut rng, &config, false).map_err(|e| e.to_string())?;
        let a = gamma_table::<Rational>(&config, &p).map_err(|e| e.to_string())?;
        let b = gamma_single_block_oracle(&config, &p).map_err(|e| e.to_string())?;
        ensure(a.first_difference(&b).is_none(), || format!("single block m = {m} disagrees"))?;
    }
    for n in 1..=6 {
        let mut rng = job_rng(303, n);
        let config = random_config(&mut rng, &vec![1; n]);
        let p = random_point(&mut rng, &config, false).map_err(|e| e.to_string())?;
        let a = gamma_table::<Rational>(&config, &p).map_err(|e| e.to_string())?;
        let b = gamma_semisimple_oracle(&config, &p).map_err(|e| e.to_string())?;
        ensure(a.first_difference(&b).is_none(), || format!("semisimple n = {n} disagrees"))?;
    }
    let routes = summary.checks.iter().find(|c| c.name == "dual_routes").ok_or("no dual_routes check")?;
    ensure(routes.failed == 0 && routes.passed == summary.points, || format!("dual routes: {routes:?}"))?;
    Ok(format!("single block m <= 8, semisimple n <= 6, dual routes at {} points", routes.passed))
}

const AXIOM_CHECKS: &[&str] = &[
    "torsion",
    "unit_flat",
    "compatibility",
    "compatibility_blockwise",
    "main_condition",
    "main_condition_blockwise",
    "curvature",
    "nabla_nabla_euler",
    "a0_flat",
    "euler_sums",
    "nabla_euler_closed_form",
    "dual_nabla_euler",
    "dual_curvature",
    "bi_flat_compatibility",
    "dual_euler_unit",
    "euler_lie_product",
    "unit_euler_bracket",
];

const IDENTITY_CHECKS: &[&str] = &[
    "derivative_shift",
    "lemma_inner_recursion",
    "lemma_unit_derivatives",
    "lemma_cross_seeds",
    "lemma_mixed_seeds",
    "potential_closed",
];

fn all_points_pass(summary: &SweepSummary, names: &[&str]) -> Result<u64, String> {
    let mut evaluated = 0;
    for name in names {
        let c = summary.checks.iter().find(|c| c.name == *name).ok_or_else(|| format!("check {name} missing"))?;
        ensure(c.failed == 0 && c.passed == summary.points, || format!("{name}: {} failed", c.failed))?;
        ensure(c.evaluated > 0, || format!("{name}: nothing evaluated"))?;
        evaluated += c.evaluated;
    }
    Ok(evaluated)
}

fn theorem_suite(summary: &SweepSummary) -> Outcome {
    ensure(summary.configs >= 31 && summary.points >= 93, || "sweep too small".into())?;
    ensure(summary.failures.is_empty(), || format!("{} failures, first {:?}", summary.failures.len(), summary.failures.first()))?;
    let evaluated = all_points_pass(summary, AXIOM_CHECKS)?;
    Ok(format!("{} configs, {} points, {evaluated} residuals all exactly zero", summary.configs, summary.points))
}

fn identity_suite(summary: &SweepSummary) -> Outcome {
    let evaluated = all_points_pass(summary, IDENTITY_CHECKS)?;
    Ok(format!("{} identities, {evaluated} residuals all exactly zero", IDENTITY_CHECKS.len()))
}

fn hierarchy_reproduction() -> Outcome {
    let n = 5;
    let u = |i: usize| Poly::var(n, i);
    let (l, a0) = kodama_konopelchenko(n).map_err(|e| e.to_string())?;
    let seq = hierarchy_generate(&l, &a0, 2).map_err(|e| e.to_string())?;
    let a1 = -u(1) - (&u(0) * &u(0)).scale(&rat(1, 2));
    ensure(seq.a[1] == a1, || format!("a_1 = {}", seq.a[1]))?;
    for r in 0..n {
        for c in 0..n {
            let expected = match c as i64 - r as i64 {
                0 => -a1.clone(),
                1 => u(0),
                2 => Poly::one(n),
                _ => Poly::zero(n),
            };
            ensure(seq.v[2][r][c] == expected, || format!("V_2[{r}][{c}] = {}", seq.v[2][r][c]))?;
        }
    }
    let w = [rat(1, 2), rat(-1, 3), int(2), rat(3, 4)];
    let (l, a0) = epsilon_system(&w).map_err(|e| e.to_string())?;
    let seq = hierarchy_generate(&l, &a0, 1).map_err(|e| e.to_string())?;
    ensure(seq.v[0] == identity(4), || "V_0 is not the identity".into())?;
    for i in 0..4 {
        for j in 0..4 {
            let expected = if i == j { Poly::var(4, i) - &a0 } else { Poly::zero(4) };
            ensure(seq.v[1][i][j] == expected, || format!("epsilon V_1[{i}][{j}]"))?;
        }
    }
    let mut configs = 0;
    for (idx, sizes) in (1..=5).flat_map(compositions).enumerate() {
        let mut rng = job_rng(404, idx);
        let config = random_config(&mut rng, &sizes);
        let seq = hierarchy_generate(&operator_l(&config), &a0_poly(&config), 4).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let p = random_point(&mut rng, &config, false).map_err(|e| e.to_string())?;
            let r = flows_are_symmetries(&config, &p, &seq).map_err(|e| e.to_string())?;
            ensure(r.all_pass(), || format!("sizes {sizes:?}: {:?}", r.failures().next()))?;
        }
        configs += 1;
    }
    Ok(format!("Kodama-Konopelchenko a_1 and V_2, epsilon V_1, flows k <= 4 on {configs} configs x 3 points"))
}

fn random_speed(rng: &mut impl Rng, n: usize) -> Poly {
    (0..rng.gen_range(1..=4)).fold(Poly::zero(n), |acc, _| {
        let exps = (0..n).map(|_| rng.gen_range(0..3)).collect();
        acc + &Poly::monomial(int(rng.gen_range(-4..=4)), exps)
    })
}

fn tsarev() -> Outcome {
    let mut systems = 0;
    let mut rng = job_rng(505, 0);
    while systems < 20 {
        let n = rng.gen_range(3..=4);
        let sys = DiagonalSystem::new((0..n).map(|_| random_speed(&mut rng, n)).collect()).unwrap();
        let p: Vec<Rational> = (0..n).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())).collect();
        match tsarev_residuals(&sys, &p) {
            Ok(r) => {
                let c = r.check("tsarev_identity").unwrap();
                ensure(c.pass && c.evaluated > 0, || format!("identity fails for {:?} at {p:?}", sys.speeds()))?;
                systems += 1;
            }
            Err(Error::CoincidingSpeeds { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
    let w = [rat(1, 2), rat(-1, 3), int(2), rat(2, 5)];
    let eps = DiagonalSystem::epsilon(&w).unwrap();
    let r = tsarev_residuals(&eps, &[int(3), int(-1), rat(1, 2), int(5)]).map_err(|e| e.to_string())?;
    for name in ["semi_hamiltonian", "darboux_tsarev"] {
        let c = r.check(name).unwrap();
        ensure(c.pass && c.evaluated > 0, || format!("epsilon system fails {name}"))?;
    }
    let n = 3;
    let u = |i: usize| Poly::var(n, i);
    let non_rich = DiagonalSystem::new(vec![u(1) + u(2), &u(0) * &u(2), &u(0) * &u(1)]).unwrap();
    let r = tsarev_residuals(&non_rich, &[int(1), int(2), int(4)]).map_err(|e| e.to_string())?;
    ensure(!r.check("semi_hamiltonian").unwrap().pass, || "non-rich control passed".into())?;
    Ok(format!("identity on {systems} random systems, epsilon system rich, control rejected"))
}

fn negative_controls() -> Outcome {
    let config = BlockConfig::new(vec![3, 2], vec![rat(1, 3), rat(1, 2)]).unwrap();
    let p = [int(2), int(1), rat(1, 2), int(-1), int(3)];
    let mut g = gamma_table::<Jet1>(&config, &p).map_err(|e| e.to_string())?;
    let bumped = g.get(1, 1, 1).clone() + Jet1::unit();
    g.set(1, 1, 1, bumped);
    let r = axiom_suite_with(&config, &p, &g, &a0_poly(&config)).map_err(|e| e.to_string())?;
    ensure(!r.check("curvature").unwrap().pass, || "perturbed entry kept R = 0".into())?;

    // every single-entry perturbation breaks flatness, compatibility or the main condition
    let small = BlockConfig::new(vec![2, 1], vec![rat(1, 3), rat(2, 5)]).unwrap();
    let q = [int(3), int(2), int(-1)];
    let base = gamma_table::<Jet1>(&small, &q).map_err(|e| e.to_string())?;
    let mut perturbed = 0;
    for k in 0..3 {
        for i in 0..3 {
            for j in i..3 {
                let mut g = base.clone();
                g.set(k, i, j, base.get(k, i, j).clone() + Jet1::unit());
                let r = axiom_suite_with(&small, &q, &g, &a0_poly(&small)).map_err(|e| e.to_string())?;
                let broken = ["curvature", "compatibility", "main_condition"].iter().any(|n| !r.check(n).unwrap().pass);
                ensure(broken, || format!("perturbing ({}, {}, {}) went unnoticed", k + 1, i + 1, j + 1))?;
                perturbed += 1;
            }
        }
    }

    let wrong = BlockConfig::new(vec![2, 1], vec![rat(2, 5), rat(1, 3)]).unwrap();
    let r = axiom_suite_with(&small, &q, &base, &a0_poly(&wrong)).map_err(|e| e.to_string())?;
    ensure(!r.check("main_condition").unwrap().pass, || "swapped weights kept the main condition".into())?;

    let open = OneForm(vec![Poly::var(2, 1), Poly::zero(2)]);
    ensure(matches!(integrate_radial(&open), Err(Error::NotClosed { .. })), || "non-closed form integrated".into())?;
    Ok(format!("curvature, {perturbed} single-entry perturbations, weight swap and NotClosed all detected"))
}

fn determinism(first: &SweepSummary, opts: &SweepOptions) -> Outcome {
    let second = sweep(opts).map_err(|e| e.to_string())?;
    let a = serde_json::to_string(first).unwrap();
    let b = serde_json::to_string(&second).unwrap();
    ensure(a == b, || "two sweeps with the same seed differ".into())?;
    Ok(format!("{} bytes identical across runs", a.len()))
}

fn main() -> ExitCode {
    let opts = SweepOptions { max_dim: 6, points: 3, seed: 2024 };
    let start = Instant::now();
    let summary = sweep(&opts);
    let sweep_time = start.elapsed();
    let summary = match summary {
        Ok(s) => s,
        Err(e) => {
            println!("FAIL sweep could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("sweep D = 6, P = 3 took {:.1} s", sweep_time.as_secs_f64());

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 table reproduction", Box::new(table_reproduction)),
        ("2 oracle triangulation", Box::new(|| oracle_triangulation(&summary))),
        ("3 axiom suite over the sweep", Box::new(|| theorem_suite(&summary))),
        ("4 identity suite over the sweep", Box::new(|| identity_suite(&summary))),
        ("5 hierarchy reproduction", Box::new(hierarchy_reproduction)),
        ("6 diagonal systems", Box::new(tsarev)),
        ("7 negative controls", Box::new(negative_controls)),
        ("8 determinism", Box::new(|| determinism(&summary, &opts))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1} s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({secs:.1} s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
