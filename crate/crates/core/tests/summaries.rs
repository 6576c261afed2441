mod common;

use common::*;
use fuzzyq_core::summarizer::rate_grid;
use fuzzyq_core::{
    best_single, build_matrix, evaluate_merged, fuzzify, greedy_extract, merge_adjacent, q_rate,
    rate_search, AStrategy, BaseSet, BestSingle, EvaluationMatrix, FuzzificationMethod, FuzzySet,
    GreedyParams,
};
use rand::Rng;

const DETERMINISTIC: [FuzzificationMethod; 4] = [
    FuzzificationMethod::Md,
    FuzzificationMethod::I,
    FuzzificationMethod::A(AStrategy::Exact),
    FuzzificationMethod::A(AStrategy::CardinalityDp),
];

fn random_temperatures(rng: &mut rand::rngs::StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-10.0..40.0)).collect()
}

#[test]
fn fixtures_are_ruspini() {
    assert!(temperature().ruspini_check(1001, 1e-9).is_ruspini);
    assert!(five_quantifiers().ruspini_check(1001, 1e-9).is_ruspini);
}

#[test]
fn ruspini_rows_sum_to_one() {
    let mut rng = rng(12);
    for round in 0..12 {
        let method = DETERMINISTIC[round % 4];
        let n = if method == FuzzificationMethod::A(AStrategy::Exact) { 15 } else { 40 };
        let data = random_temperatures(&mut rng, n);
        let m = build_matrix(&data, &temperature(), &five_quantifiers(), method).unwrap();
        for s in m.row_sums() {
            assert!((s - 1.0).abs() <= 1e-6, "{method}: row sum {s}");
        }
    }
}

#[test]
fn april_shaped_fixture() {
    // 7 clearly low and 18 clearly warm temperatures.
    let mut data = vec![7.0; 7];
    data.extend([17.0; 18]);
    let m = build_matrix(&data, &temperature(), &five_quantifiers(), FuzzificationMethod::A(AStrategy::CardinalityDp)).unwrap();
    let low = m.row("low").unwrap();
    assert!((low[1] - 0.72).abs() < 1e-12 && (low[2] - 0.28).abs() < 1e-12);
    let summary = greedy_extract(&m, GreedyParams::default()).unwrap();
    let pairs: Vec<(String, &str)> = summary.iter().map(|s| (s.quantifier(), s.label.as_str())).collect();
    assert_eq!(pairs, vec![("many".to_string(), "warm"), ("a few".to_string(), "low")]);
}

#[test]
fn merged_sum_matches_direct_disjunction() {
    let mut rng = rng(77);
    let lv = temperature();
    let pp = five_quantifiers();
    for round in 0..20 {
        let method = DETERMINISTIC[round % 4];
        let n = if method == FuzzificationMethod::A(AStrategy::Exact) { 14 } else { 30 };
        let data = random_temperatures(&mut rng, n);
        let m = build_matrix(&data, &lv, &pp, method).unwrap();
        for (j, label) in lv.labels().iter().enumerate() {
            for cell in merge_adjacent(&m.cells()[j], 0.0) {
                let direct = evaluate_merged(&data, label, &pp, cell.start, cell.end, method).unwrap();
                assert!((direct - cell.degree).abs() <= 1e-9);
            }
            let start = rng.random_range(0..4);
            let direct = evaluate_merged(&data, label, &pp, start, start + 1, method).unwrap();
            let summed = (m.cells()[j][start] + m.cells()[j][start + 1]).min(1.0);
            assert!((direct - summed).abs() <= 1e-9);
        }
    }
}

/// Independent scan: its own grid construction and argmax.
fn brute_force_rate(x1: &FuzzySet, x2: &FuzzySet, delta: f64, step: f64, method: FuzzificationMethod) -> (f64, f64, f64) {
    let mut all = Vec::new();
    let mut k = 0usize;
    loop {
        let h = k as f64 * step;
        if h > 1.0 - delta + 1e-9 {
            break;
        }
        let r2 = (h + delta).min(1.0);
        all.push((h, r2, fuzzify(q_rate(h, r2).unwrap(), method).evaluate(&[x1, x2]).unwrap()));
        k += 1;
    }
    // Ties, up to rounding, go to the smallest h.
    let top = all.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);
    *all.iter().find(|c| c.2 >= top - 1e-9).unwrap()
}

#[test]
fn rate_search_matches_brute_force() {
    let mut rng = rng(64);
    for round in 0..30 {
        let method = DETERMINISTIC[round % 4];
        let n = rng.random_range(1..=10);
        let base = BaseSet::indexed(n);
        let sets = random_sets(&mut rng, &base, 2);
        let delta = [0.1, 0.2, 0.25, 0.5][rng.random_range(0..4)];
        let step = delta / rng.random_range(1..=4) as f64;
        let r = rate_search(&sets[0], &sets[1], delta, step, method).unwrap();
        let (r1, r2, degree) = brute_force_rate(&sets[0], &sets[1], delta, step, method);
        assert_eq!((r.r1, r.r2, r.degree), (r1, r2, degree));
    }
}

#[test]
fn rate_degree_grows_with_delta() {
    let mut rng = rng(65);
    for _ in 0..20 {
        let sets = random_sets(&mut rng, &BaseSet::indexed(8), 2);
        let mut last = 0.0;
        // Steps dividing every delta keep the grids nested.
        for delta in [0.1, 0.2, 0.3, 0.5, 1.0] {
            let r = rate_search(&sets[0], &sets[1], delta, 0.05, FuzzificationMethod::A(AStrategy::CardinalityDp)).unwrap();
            assert!(r.degree >= last - 1e-12);
            last = r.degree;
        }
    }
}

#[test]
fn rate_grid_examples() {
    let g = rate_grid(0.2, 0.025).unwrap();
    assert!((g[20].0 - 0.5).abs() < 1e-12 && (g[20].1 - 0.7).abs() < 1e-12);
    assert!((g.last().unwrap().1 - 1.0).abs() < 1e-12);
}

#[test]
fn best_single_argmax_invariant_under_rescaling() {
    let mut rng = rng(90);
    for _ in 0..50 {
        let cells: Vec<Vec<f64>> = (0..4).map(|_| (0..5).map(|_| rng.random::<f64>()).collect()).collect();
        let rows: Vec<String> = (0..4).map(|i| format!("l{i}")).collect();
        let cols: Vec<String> = (0..5).map(|i| format!("q{i}")).collect();
        let m = EvaluationMatrix::new(rows.clone(), cols.clone(), cells.clone()).unwrap();
        let scaled = EvaluationMatrix::new(
            rows,
            cols,
            cells.iter().map(|r| r.iter().map(|x| x * x * 0.5 + 0.1).collect()).collect(),
        )
        .unwrap();
        let pick = |m: &EvaluationMatrix| match best_single(m, 0.0, 0.0).unwrap() {
            BestSingle::Statement(s) => (s.label.clone(), s.quantifier()),
            BestSingle::NoneAdequate { top, .. } => (top.label, top.quantifier),
        };
        assert_eq!(pick(&m), pick(&scaled));
    }
}

#[test]
fn greedy_is_deterministic_and_respects_tau() {
    let mut rng = rng(91);
    for _ in 0..30 {
        let data = random_temperatures(&mut rng, 25);
        let m = build_matrix(&data, &temperature(), &five_quantifiers(), FuzzificationMethod::Md).unwrap();
        let tau = rng.random::<f64>();
        let params = GreedyParams { tau, merge: rng.random(), suppress_bottom: rng.random(), ..GreedyParams::default() };
        let a = greedy_extract(&m, params).unwrap();
        assert_eq!(a, greedy_extract(&m, params).unwrap());
        assert!(a.iter().all(|s| s.degree >= tau));
    }
}

#[test]
fn build_matrix_parallel_matches_sequential_cells() {
    let mut rng = rng(3);
    let data = random_temperatures(&mut rng, 60);
    let lv = temperature();
    let pp = five_quantifiers();
    let method = FuzzificationMethod::A(AStrategy::CardinalityDp);
    let m = build_matrix(&data, &lv, &pp, method).unwrap();
    for (j, label) in lv.labels().iter().enumerate() {
        for i in 0..pp.len() {
            let direct = evaluate_merged(&data, label, &pp, i, i, method).unwrap();
            assert_eq!(m.cells()[j][i], direct);
        }
    }
}
