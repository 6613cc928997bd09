//! Acceptance checks on the emerging-countries dataset and random
//! instances. Prints one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

#![allow(clippy::needless_range_loop)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use utastar_cli::docs::{to_json, EnsembleDoc};
use utastar_cli::input::{load_ranking, load_tensor};
use utastar_cli::simulate::simulate;
use utastar_core::disagg::{
    build_program, fit, kendall_tau_strict, DisaggConfig, RankingChain, StepWeights, ValueModel, Variant,
};
use utastar_core::lp::{LinearProgram, LpStatus, Relation, Sense, VarId};
use utastar_core::postopt::{weighted_average, CriteriaOrder, MoProblem, SolutionEnsemble};
use utastar_core::timeseries::{
    extract_measures, CriterionSpec, Measure, MeasureTensor, ScalePolicy, TimeSeriesTensor,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

struct Dataset {
    tensor: TimeSeriesTensor,
    measures: MeasureTensor,
    ranking: RankingChain,
    config: DisaggConfig,
}

fn dataset() -> Dataset {
    let tensor = load_tensor(&data("emerging_countries.csv")).unwrap();
    let measures = extract_measures(&tensor, &[Measure::Mean, Measure::Slope], ScalePolicy::ObservedValues).unwrap();
    Dataset {
        tensor,
        measures,
        ranking: load_ranking(&data("ranking.txt")).unwrap(),
        config: DisaggConfig::default(),
    }
}

const DM_ORDER: [&str; 10] = ["MY", "RU", "TR", "BR", "CN", "IN", "ID", "MX", "PH", "ZA"];
const GLOBAL_VALUES: [f64; 10] = [1.80, 1.20, 1.15, 1.10, 0.90, 0.85, 0.80, 0.75, 0.70, 0.00];
const FITTED_VERTEX: [(usize, usize, usize, f64); 7] = [
    (1, 1, 3, 0.10), (1, 3, 7, 0.05), (1, 3, 8, 0.85),
    (2, 1, 2, 0.60), (2, 1, 7, 0.20), (2, 2, 2, 0.05), (2, 3, 4, 0.15),
];
const VERTEX_C1_C3_C2: [(usize, usize, usize, f64); 9] = [
    (1, 1, 1, 0.7), (1, 1, 3, 0.025), (1, 3, 7, 0.05), (1, 3, 8, 0.225),
    (2, 1, 1, 0.75), (2, 1, 3, 0.05), (2, 1, 6, 0.075), (2, 1, 7, 0.05), (2, 3, 4, 0.075),
];
/// Reported under `c1 > c2 > c3`: the vertex seen 338 times.
const VERTEX_338: [(usize, usize, usize, f64); 9] = [
    (1, 1, 1, 0.55), (1, 1, 2, 0.1), (1, 2, 7, 0.35), (2, 1, 1, 0.7), (2, 1, 3, 0.05),
    (2, 1, 6, 0.1), (2, 1, 7, 0.05), (2, 1, 9, 0.05), (2, 2, 4, 0.05),
];
/// ... and the one seen 662 times.
const VERTEX_662: [(usize, usize, usize, f64); 8] = [
    (1, 1, 1, 0.70), (1, 2, 6, 0.05), (1, 2, 7, 0.25), (2, 1, 1, 0.7), (2, 1, 3, 0.05),
    (2, 1, 6, 0.1), (2, 1, 9, 0.10), (2, 3, 4, 0.05),
];

fn sparse(measures: &MeasureTensor, entries: &[(usize, usize, usize, f64)]) -> StepWeights {
    let mut w = StepWeights::zeros(measures);
    for &(k, j, l, v) in entries {
        w.set(k - 1, j - 1, l - 1, v).unwrap();
    }
    w
}

fn oracle_mean(p: &[f64]) -> f64 {
    p.iter().sum::<f64>() / p.len() as f64
}

fn oracle_slope(p: &[f64]) -> f64 {
    let t_n = p.len() as f64;
    let (mut st, mut sp, mut stp, mut stt) = (0.0, 0.0, 0.0, 0.0);
    for (i, v) in p.iter().enumerate() {
        let t = (i + 1) as f64;
        st += t;
        sp += v;
        stp += t * v;
        stt += t * t;
    }
    (t_n * stp - st * sp) / (t_n * stt - st * st)
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(())
}

fn feasibility_reproduction() -> Check {
    let start = Instant::now();
    let d = dataset();
    let model = fit(&d.measures, &d.ranking, &d.config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(model.objective().abs() <= 1e-9, "z* = {}", model.objective());
    let ranked = model.rank_alternatives(&d.measures).unwrap();
    let order: Vec<&str> = ranked.values.iter().map(|(a, _)| a.as_str()).collect();
    let tau = kendall_tau_strict(&order, &DM_ORDER).unwrap().tau;
    ensure!(tau == 1.0, "kendall tau {tau}, model order {order:?}");
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("z* = {}, tau = 1, {elapsed:.2?}", model.objective()))
}

/// Global values straight from the raw series, with no library code involved.
fn standalone_globals(tensor: &TimeSeriesTensor) -> Vec<f64> {
    let m = tensor.alternatives().len();
    let value = |i: usize, j: usize, k: usize| {
        let s = tensor.series(i, j);
        if k == 0 { oracle_mean(s) } else { oracle_slope(s) }
    };
    (0..m)
        .map(|i| {
            let mut u = 0.0;
            for k in 0..2 {
                for j in 0..3 {
                    let mut grid: Vec<f64> = (0..m).map(|a| value(a, j, k)).collect();
                    grid.sort_by(f64::total_cmp);
                    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
                    let x = value(i, j, k);
                    let pos = grid.iter().position(|g| (g - x).abs() < 1e-9).unwrap();
                    u += FITTED_VERTEX
                        .iter()
                        .filter(|e| e.0 == k + 1 && e.1 == j + 1 && e.2 <= pos)
                        .map(|e| e.3)
                        .sum::<f64>();
                }
            }
            u
        })
        .collect()
}

fn reference_vertex() -> Check {
    let d = dataset();
    let standalone = standalone_globals(&d.tensor);
    for (id, expected) in DM_ORDER.iter().zip(GLOBAL_VALUES) {
        let i = d.tensor.alternatives().iter().position(|a| a == id).unwrap();
        ensure!((standalone[i] - expected).abs() < 1e-9, "standalone {id}: {}", standalone[i]);
    }
    let program = build_program(&d.measures, &d.ranking, &d.config).unwrap();
    let weights = sparse(&d.measures, &FITTED_VERTEX);
    let check = program.lp().check_feasible(&program.assignment_for(&weights).unwrap()).unwrap();
    ensure!(check.feasible, "infeasible, residual {}", check.max_residual);
    let model = ValueModel::from_weights(&d.measures, weights, d.config).unwrap();
    let mut worst: f64 = 0.0;
    for (id, expected) in DM_ORDER.iter().zip(GLOBAL_VALUES) {
        let got = model.global_value(&d.measures, id).unwrap();
        worst = worst.max((got - expected).abs());
    }
    ensure!(worst < 1e-9, "global values off by {worst}");
    Ok(format!("feasible (residual {:.1e}), ten values within {worst:.1e}", check.max_residual))
}

fn run_ordered(d: &Dataset, model: &ValueModel, order: &str, seed: u64) -> (Vec<utastar_core::postopt::IterationOutcome>, SolutionEnsemble) {
    let order = CriteriaOrder::parse(d.measures.criteria(), order).unwrap();
    let problem = MoProblem::new(&d.measures, &d.ranking, &d.config, model).unwrap();
    let outcomes: Vec<_> = (0..1000).map(|i| problem.run_iteration(seed, i, Some(&order)).unwrap()).collect();
    let ensemble = SolutionEnsemble::from_outcomes(seed, Some(order), outcomes.clone()).unwrap();
    (outcomes, ensemble)
}

fn same_totals(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-5)
}

fn ordered_convergence() -> Check {
    let start = Instant::now();
    let d = dataset();
    let model = fit(&d.measures, &d.ranking, &d.config).unwrap();

    let totals = sparse(&d.measures, &VERTEX_C1_C3_C2).criterion_totals();
    let (outcomes, ensemble) = run_ordered(&d, &model, "c1>c3>c2", 42);
    let mut worst: f64 = 0.0;
    for o in &outcomes {
        let expected: f64 = o.mu.as_slice().iter().zip(&totals).map(|(a, b)| a * b).sum();
        worst = worst.max((o.solution.objective - expected).abs());
    }
    ensure!(worst < 1e-6, "c1>c3>c2 objective differs by {worst}");
    let classes = ensemble.profile_classes(1e-6).len();
    ensure!(classes == 1, "c1>c3>c2 gave {classes} classes");
    let first = start.elapsed();

    let t338 = sparse(&d.measures, &VERTEX_338).criterion_totals();
    let t662 = sparse(&d.measures, &VERTEX_662).criterion_totals();
    let seeds = [1u64, 2, 3, 4, 5];
    let mut sum338 = 0usize;
    for &seed in &seeds {
        let (_, ensemble) = run_ordered(&d, &model, "c1>c2>c3", seed);
        let classes = ensemble.profile_classes(1e-6);
        ensure!(classes.len() == 2, "c1>c2>c3 seed {seed}: {} classes", classes.len());
        for (totals, count) in &classes {
            if same_totals(totals, &t338) {
                sum338 += count;
            } else {
                ensure!(same_totals(totals, &t662), "unexpected class {totals:?}");
            }
        }
    }
    let mean338 = sum338 as f64 / seeds.len() as f64;
    let per_run = start.elapsed().saturating_sub(first) / seeds.len() as u32;
    within(first.max(per_run), Duration::from_secs(30))?;
    ensure!(
        (mean338 - 338.0).abs() <= 60.0,
        "c1>c3>c2 converged (1 class, objective within {worst:.1e}); c1>c2>c3 has the two reported classes but counts {mean338:.1}/{:.1} vs 338/662 +/- 60",
        1000.0 - mean338
    );
    Ok(format!("1 class for c1>c3>c2; c1>c2>c3 counts {mean338:.1}/{:.1}", 1000.0 - mean338))
}

fn unordered_structure() -> Check {
    let d = dataset();
    let model = fit(&d.measures, &d.ranking, &d.config).unwrap();
    let problem = MoProblem::new(&d.measures, &d.ranking, &d.config, &model).unwrap();
    let ensemble = simulate(&d.measures, &d.ranking, &d.config, &model, 1000, 42, None, None).map_err(|e| e.to_string())?;
    let total: usize = ensemble.entries.iter().map(|e| e.count).sum();
    ensure!(total == 1000, "counts sum to {total}");
    for e in &ensemble.entries {
        let values = problem.assignment(&e.weights, &e.sigma_plus, &e.sigma_minus).unwrap();
        let check = problem.polyhedron().check_feasible(&values).unwrap();
        ensure!(check.feasible && check.max_residual <= 1e-8, "entry residual {}", check.max_residual);
    }
    let mut thirds = [0usize; 3];
    for e in &ensemble.entries {
        let totals = e.criterion_totals();
        for (j, &n) in e.leader_counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            thirds[j] += n;
            let top = (0..3).max_by(|&a, &b| totals[a].total_cmp(&totals[b])).unwrap();
            ensure!(top == j, "iterations led by c{} concentrate on c{}", j + 1, top + 1);
        }
    }
    ensure!(thirds.iter().all(|t| (*t as f64 - 333.0).abs() <= 60.0), "thirds {thirds:?}");
    let recomputed = ensemble.recompute_weighted_average().unwrap();
    let diff = recomputed.max_difference(&ensemble.weighted_average).unwrap();
    ensure!(diff <= 1e-9, "weighted average recomputation differs by {diff}");

    let column = [0.0, 0.0, 0.0, 0.0, 0.1, 0.55, 0.7, 0.7];
    let counts = [97, 167, 69, 156, 187, 53, 109, 162];
    let entries: Vec<StepWeights> = column.iter().map(|w| sparse(&d.measures, &[(1, 1, 1, *w)])).collect();
    let w111 = weighted_average(entries.iter().zip(counts)).unwrap().get(0, 0, 0);
    ensure!((w111 - 0.2376).abs() < 5e-5 && format!("{w111:.2}") == "0.24", "w111 WA {w111}");
    Ok(format!("{} entries, thirds {thirds:?}, reported WA {w111:.4}", ensemble.entries.len()))
}

fn measure_oracle() -> Check {
    let d = dataset();
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..3 {
            let s = d.tensor.series(i, j);
            worst = worst.max((d.measures.value(i, j, 0) - oracle_mean(s)).abs());
            worst = worst.max((d.measures.value(i, j, 1) - oracle_slope(s)).abs());
        }
    }
    ensure!(worst < 1e-6, "30 series differ by {worst}");
    let at = |id: &str| d.measures.alternative_index(id).unwrap();
    ensure!((d.measures.value(at("BR"), 0, 0) - 70.5).abs() < 1e-9, "BR c1 mean");
    ensure!((d.measures.value(at("BR"), 0, 1) - 1.8971).abs() < 1e-4, "BR c1 slope");
    ensure!((d.measures.value(at("ZA"), 0, 1) + 1.3143).abs() < 1e-4, "ZA c1 slope");
    Ok(format!("30 series within {worst:.1e}"))
}

// LP oracle: enumerate every basic point of small random programs.

struct RandomLp {
    lp: LinearProgram,
    rows: Vec<(Vec<f64>, Relation, f64)>,
    cost: Vec<f64>,
    maximize: bool,
}

fn random_lp(rng: &mut ChaCha8Rng) -> RandomLp {
    let n = rng.random_range(1..=6);
    let maximize = rng.random_bool(0.5);
    let sense = if maximize { Sense::Maximize } else { Sense::Minimize };
    let mut lp = LinearProgram::new(sense);
    let vars: Vec<VarId> = (0..n).map(|i| lp.add_variable(format!("x{i}"))).collect();
    let x0: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
    let mut rows = Vec::new();
    for _ in 0..rng.random_range(1..=6) {
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(-5i32..=5) as f64).collect();
        let at: f64 = a.iter().zip(&x0).map(|(p, q)| p * q).sum();
        let slack = rng.random_range(0.0..3.0);
        let (rel, rhs) = match rng.random_range(0..3) {
            0 => (Relation::Le, at + slack),
            1 => (Relation::Ge, at - slack),
            _ => (Relation::Eq, at),
        };
        let terms: Vec<_> = vars.iter().copied().zip(a.iter().copied()).collect();
        lp.add_constraint(&terms, rel, rhs).unwrap();
        rows.push((a, rel, rhs));
    }
    for (i, v) in vars.iter().enumerate() {
        let upper = x0[i] + rng.random_range(0.5..4.0);
        lp.set_upper_bound(*v, upper).unwrap();
        let mut a = vec![0.0; n];
        a[i] = 1.0;
        rows.push((a, Relation::Le, upper));
    }
    let cost: Vec<f64> = (0..n).map(|_| rng.random_range(-5i32..=5) as f64).collect();
    let terms: Vec<_> = vars.iter().copied().zip(cost.iter().copied()).collect();
    lp.set_objective(sense, &terms).unwrap();
    RandomLp { lp, rows, cost, maximize }
}

fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn enumerate_vertices(p: &RandomLp) -> Option<f64> {
    let n = p.cost.len();
    let mut planes: Vec<(Vec<f64>, f64)> = p.rows.iter().map(|(a, _, b)| (a.clone(), *b)).collect();
    for i in 0..n {
        let mut a = vec![0.0; n];
        a[i] = 1.0;
        planes.push((a, 0.0));
    }
    let feasible = |x: &[f64]| {
        x.iter().all(|v| *v >= -1e-7)
            && p.rows.iter().all(|(a, rel, b)| {
                let lhs: f64 = a.iter().zip(x).map(|(s, t)| s * t).sum();
                let tol = 1e-7 * (1.0 + b.abs());
                match rel {
                    Relation::Le => lhs <= b + tol,
                    Relation::Ge => lhs >= b - tol,
                    Relation::Eq => (lhs - b).abs() <= tol,
                }
            })
    };
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let a = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b = idx.iter().map(|&i| planes[i].1).collect();
        if let Some(x) = solve_square(a, b).filter(|x| feasible(x)) {
            let z: f64 = p.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
            if best.is_none_or(|cur| if p.maximize { z > cur } else { z < cur }) {
                best = Some(z);
            }
        }
        // next n-combination of planes
        let total = planes.len();
        let Some(pos) = (0..n).rev().find(|&i| idx[i] < total - n + i) else {
            return best;
        };
        idx[pos] += 1;
        for i in pos + 1..n {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

fn lp_oracle() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let p = random_lp(&mut rng);
        let expected = enumerate_vertices(&p).ok_or(format!("case {case} has no vertex"))?;
        let s = p.lp.solve();
        ensure!(s.status == LpStatus::Optimal, "case {case}: {:?}", s.status);
        ensure!((s.objective - expected).abs() <= 1e-8 * (1.0 + expected.abs()), "case {case}: {} vs {expected}", s.objective);
    }
    for _ in 0..20 {
        let n = rng.random_range(1..=6);
        let mut lp = LinearProgram::new(Sense::Minimize);
        let terms: Vec<_> = (0..n).map(|i| (lp.add_variable(format!("x{i}")), rng.random_range(1..=4) as f64)).collect();
        let low = rng.random_range(2.0..5.0);
        lp.add_constraint(&terms, Relation::Ge, low).unwrap();
        lp.add_constraint(&terms, Relation::Le, low - 0.5).unwrap();
        ensure!(lp.solve().status == LpStatus::Infeasible, "infeasible program misclassified");

        let mut lp = LinearProgram::new(Sense::Maximize);
        let vars: Vec<_> = (0..n + 1).map(|i| lp.add_variable(format!("x{i}"))).collect();
        let mut row = vec![(vars[0], -1.0)];
        row.extend(vars[1..].iter().map(|v| (*v, 1.0)));
        lp.add_constraint(&row, Relation::Le, 3.0).unwrap();
        lp.set_objective(Sense::Maximize, &[(vars[0], 1.0)]).unwrap();
        ensure!(lp.solve().status == LpStatus::Unbounded, "unbounded program misclassified");
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("200 programs match enumeration, 40 edge cases classified, {elapsed:.2?}"))
}

fn check_model(measures: &MeasureTensor, model: &ValueModel) -> Result<(), String> {
    for k in 0..measures.measures().len() {
        let total = model.weights().measure_total(k);
        ensure!((total - 1.0).abs() < 1e-9, "measure {k} sums to {total}");
        for j in 0..measures.criteria().len() {
            let f = model.marginal_function(k, j).unwrap();
            ensure!(f.values.windows(2).all(|p| p[1] >= p[0]), "u_{k}{j} decreases");
        }
    }
    ensure!(model.weights().flat().all(|w| w >= 0.0), "negative weight");
    Ok(())
}

fn pipeline_properties(measures: &MeasureTensor, ranking: &RankingChain, seed: u64, iterations: usize) -> Result<(), String> {
    let config = DisaggConfig::default();
    let model = fit(measures, ranking, &config).map_err(|e| e.to_string())?;
    check_model(measures, &model)?;
    ensure!(fit(measures, ranking, &config).unwrap() == model, "fit is not deterministic");
    let run = |threads| {
        let e = simulate(measures, ranking, &config, &model, iterations, seed, None, Some(threads)).unwrap();
        to_json(&EnsembleDoc::new(&model, &e))
    };
    let serial = run(1);
    ensure!(serial == run(4), "parallel ensemble differs from serial");
    ensure!(serial == run(1), "ensemble is not deterministic");
    Ok(())
}

fn property_suite() -> Check {
    let d = dataset();
    pipeline_properties(&d.measures, &d.ranking, 42, 100)?;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for case in 0..50 {
        let (m, n, t) = (rng.random_range(2..=8), rng.random_range(1..=4), rng.random_range(2..=12));
        let ids: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
        let criteria = (0..n).map(|j| CriterionSpec::maximize(format!("g{j}"))).collect();
        let series = (0..m)
            .map(|_| (0..n).map(|_| (0..t).map(|_| rng.random_range(0.0..100.0)).collect()).collect())
            .collect();
        let tensor = TimeSeriesTensor::new(ids.clone(), criteria, series).unwrap();
        let measures = extract_measures(&tensor, &[Measure::Mean, Measure::Slope], ScalePolicy::ObservedValues).unwrap();
        let mut order = ids;
        order.shuffle(&mut rng);
        let ranking = RankingChain::strict(order).unwrap();
        pipeline_properties(&measures, &ranking, case, 10).map_err(|e| format!("instance {case}: {e}"))?;
    }
    Ok("emerging dataset and 50 random instances".into())
}

fn degenerate_inputs() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 20 {
        let (m, n) = (rng.random_range(2..=8), rng.random_range(1..=4));
        let table: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| rng.random_range(0..6) as f64).collect()).collect();
        if (0..n).any(|j| table.iter().all(|r| r[j] == table[0][j])) {
            continue;
        }
        let ids: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
        let criteria: Vec<CriterionSpec> = (0..n).map(|j| CriterionSpec::maximize(format!("g{j}"))).collect();
        let series = table.iter().map(|r| r.iter().map(|v| vec![rng.random_range(0.0..10.0), *v]).collect()).collect();
        let tensor = TimeSeriesTensor::new(ids.clone(), criteria.clone(), series).unwrap();
        let dynamic = extract_measures(&tensor, &[Measure::Last], ScalePolicy::ObservedValues).unwrap();
        let fixed = MeasureTensor::from_performance_table(ids.clone(), criteria, &table, ScalePolicy::ObservedValues).unwrap();
        let mut order = ids;
        order.shuffle(&mut rng);
        let ranking = RankingChain::strict(order).unwrap();
        let t = DisaggConfig { variant: Variant::UtastarT, ..DisaggConfig::default() };
        let s = DisaggConfig { variant: Variant::Utastar, ..DisaggConfig::default() };
        let pt = build_program(&dynamic, &ranking, &t).unwrap();
        let ps = build_program(&fixed, &ranking, &s).unwrap();
        ensure!(pt.lp().anonymous_listing() == ps.lp().anonymous_listing(), "instance {done}: programs differ");
        let (zt, zs) = (fit(&dynamic, &ranking, &t).unwrap().objective(), fit(&fixed, &ranking, &s).unwrap().objective());
        ensure!(zt.to_bits() == zs.to_bits(), "instance {done}: z* {zt} vs {zs}");
        done += 1;
    }
    let measures = MeasureTensor::from_performance_table(
        vec!["a1".into(), "a2".into()],
        vec![CriterionSpec::maximize("g")],
        &[vec![1.0], vec![2.0]],
        ScalePolicy::ObservedValues,
    )
    .unwrap();
    let ranking: RankingChain = "a1 > a2".parse().unwrap();
    let z = fit(&measures, &ranking, &DisaggConfig::default()).unwrap().objective();
    ensure!((z - 1.05).abs() < 1e-12, "inconsistent pair gives z* = {z}");
    Ok("20 static instances identical to UTASTAR; inconsistent pair z* = 1.05".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 feasibility reproduction", feasibility_reproduction),
        ("2 reference vertex", reference_vertex),
        ("3 ordered simulation", ordered_convergence),
        ("4 unordered simulation", unordered_structure),
        ("5 descriptive measures", measure_oracle),
        ("6 LP solver oracle", lp_oracle),
        ("7 property suite", property_suite),
        ("8 degenerate inputs", degenerate_inputs),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
