use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use ecomu3_core::coinv::kunneth_decompose;
use ecomu3_core::exactla::{AbelianGroup, PoincareSeries};
use ecomu3_core::grpcoh::{catalog_module, symmetric_group, FreeResolution, SelectionOrder};
use ecomu3_core::specseq::*;
use proptest::prelude::*;

fn resolution() -> &'static FreeResolution {
    static RES: OnceLock<FreeResolution> = OnceLock::new();
    RES.get_or_init(|| FreeResolution::compute(Arc::new(symmetric_group(3)), 10, SelectionOrder::Forward).unwrap())
}

fn e2(name: &str, p: u64) -> BigradedPage {
    let cfg = FibrationConfig::bundled(name).unwrap();
    let reps = cfg.fiber_reps(&resolution().group).unwrap();
    serre_e2_over_bg(resolution(), &reps, p, Some(cfg.period), TRUNCATION).unwrap()
}

fn run(name: &str, p: u64) -> SerreResult {
    run_fibration(&FibrationConfig::bundled(name).unwrap(), p, resolution()).unwrap()
}

fn z() -> AbelianGroup {
    AbelianGroup::free(1)
}

fn zp(p: u64, k: usize) -> AbelianGroup {
    AbelianGroup::elementary(0, p, k)
}

fn series(terms: &[(usize, u64)]) -> PoincareSeries {
    PoincareSeries::from_terms(terms)
}

#[test]
fn flbar3_e2_at_three() {
    let page = e2("flbar3", 3);
    assert_eq!(page.period, Some(4));
    assert_eq!(page.entry(0, 0), z());
    for c in [4, 8, 12] {
        assert_eq!(page.entry(c, 0), zp(3, 1));
    }
    for q in [2, 4] {
        for c in [3, 7, 11] {
            assert_eq!(page.entry(c, q), zp(3, 1), "({c},{q})");
        }
        assert!(page.entry(1, q).is_trivial());
    }
    for c in [2, 6, 10] {
        assert_eq!(page.entry(c, 6), zp(3, 1));
    }
    assert!(page.entry(0, 6).is_trivial());
    assert!(page.is_periodic());
    page.check_elementary().unwrap();
}

#[test]
fn flbar3_e2_at_two() {
    let page = e2("flbar3", 2);
    assert_eq!(page.period, Some(2));
    for c in 1..=12 {
        let bottom = if c % 2 == 0 { zp(2, 1) } else { AbelianGroup::zero() };
        let top = if c % 2 == 1 { zp(2, 1) } else { AbelianGroup::zero() };
        assert_eq!(page.entry(c, 0), bottom);
        assert_eq!(page.entry(c, 6), top);
        assert!(page.entry(c, 2).is_trivial() && page.entry(c, 4).is_trivial());
    }
}

#[test]
fn fl3xfl3_e2_spot_checks() {
    let page = e2("fl3xfl3", 3);
    assert_eq!(page.entry(1, 10), zp(3, 2));
    assert_eq!(page.entry(0, 6), AbelianGroup::free(2));
    assert_eq!(page.entry(2, 6), zp(3, 4));
    assert_eq!(page.entry(0, 12), z());
    assert_eq!(page.entry(4, 12), zp(3, 1));
    let page2 = e2("fl3xfl3", 2);
    assert_eq!(page2.entry(1, 6), zp(2, 2));
    assert_eq!(page2.entry(0, 8), z());
    assert!(page2.entry(1, 8).is_trivial());
}

#[test]
fn fl3xfl3_rows_match_kunneth() {
    let cfg = FibrationConfig::bundled("fl3xfl3").unwrap();
    for d in (0..=12).step_by(2) {
        let k = kunneth_decompose(d).unwrap();
        let mut expected = k.summands.clone();
        expected.retain(|s| s != "zero");
        let mut row = cfg.rows.get(&(d as usize)).cloned().unwrap_or_default();
        row.sort();
        expected.sort();
        assert_eq!(row, expected, "degree {d}");
    }
}

#[test]
fn flbar3_forced_differentials() {
    for (p, page_index, arrows) in [
        (3u64, 5usize, vec![((2, 6), (7, 2)), ((3, 4), (8, 0)), ((6, 6), (11, 2)), ((7, 4), (12, 0))]),
        (2, 7, vec![((1, 6), (8, 0)), ((3, 6), (10, 0)), ((5, 6), (12, 0))]),
    ] {
        let r = run("flbar3", p);
        assert_eq!(r.solution.specs.len(), 1, "p={p}");
        let spec = &r.solution.specs[0];
        assert_eq!(spec.page, page_index);
        for (s, t) in arrows {
            assert!(spec.arrows.iter().any(|a| a.source == s && a.target == t && a.rank == 1), "p={p} {s:?}->{t:?}");
        }
    }
}

#[test]
fn flbar3_survivors() {
    let r = run("flbar3", 3);
    let einf = &r.solution.e_infinity;
    let cells: Vec<(usize, usize)> = einf.entries().map(|(k, _)| k).filter(|(c, q)| c + q <= 6).collect();
    assert_eq!(cells, vec![(0, 0), (3, 2), (4, 0)]);
    assert!(einf.vanishes_above(6));
}

#[test]
fn flbar3_totals() {
    let r = run("flbar3", 3);
    let expected = [z(), zp(3, 0), zp(3, 0), zp(3, 0), zp(3, 1), zp(3, 1), zp(3, 0)];
    assert_eq!(r.totals, expected);
    assert_eq!(r.series, series(&[(0, 1), (3, 1), (4, 2), (5, 1)]));
    // Not orientable mod 3: the top row is the sign module.
    assert!(!r.palindromic);

    let r = run("flbar3", 2);
    let expected = [z(), zp(2, 0), zp(2, 1), zp(2, 0), zp(2, 1), zp(2, 0), zp(2, 1)];
    assert_eq!(r.totals, expected);
    assert_eq!(r.series, series(&(0..=6).map(|d| (d, 1)).collect::<Vec<_>>()));
    assert!(r.palindromic);
}

#[test]
fn fl3xfl3_totals_at_three() {
    let r = run("fl3xfl3", 3);
    let t = |f, k| AbelianGroup::elementary(f, 3, k);
    let expected = [
        t(1, 0),
        t(0, 0),
        t(0, 0),
        t(0, 0),
        t(1, 1),
        t(0, 2),
        t(2, 1),
        t(0, 1),
        t(1, 2),
        t(0, 1),
        t(0, 0),
        t(0, 0),
        t(1, 0),
    ];
    assert_eq!(r.totals, expected);
    let s = series(&[(0, 1), (3, 1), (4, 4), (5, 3), (6, 4), (7, 3), (8, 4), (9, 1), (12, 1)]);
    assert_eq!(r.series, s);
    assert!(r.palindromic);
    assert_eq!(r.series.total(), 22);
}

#[test]
fn fl3xfl3_totals_at_two() {
    let r = run("fl3xfl3", 2);
    let t = |f, k| AbelianGroup::elementary(f, 2, k);
    let expected = [
        t(1, 0),
        t(0, 0),
        t(0, 1),
        t(0, 0),
        t(1, 1),
        t(0, 0),
        t(2, 1),
        t(0, 1),
        t(1, 0),
        t(0, 1),
        t(0, 0),
        t(0, 1),
        t(1, 0),
    ];
    assert_eq!(r.totals, expected);
    let s = series(&[
        (0, 1),
        (1, 1),
        (2, 1),
        (3, 1),
        (4, 2),
        (5, 1),
        (6, 4),
        (7, 1),
        (8, 2),
        (9, 1),
        (10, 1),
        (11, 1),
        (12, 1),
    ]);
    assert_eq!(r.series, s);
    assert!(r.palindromic);
}

#[test]
fn rational_ranks_match_euler_characteristic() {
    // Free parts survive untouched: ranks are those of the invariant rows.
    let r = run("fl3xfl3", 3);
    let free: usize = r.totals.iter().map(|g| g.free_rank).sum();
    assert_eq!(free, 6);
    let r = run("flbar3", 3);
    assert_eq!(r.totals.iter().map(|g| g.free_rank).sum::<usize>(), 1);
}

#[test]
fn larger_dimension_is_ambiguous() {
    let page = e2("flbar3", 3);
    let err = unique_forced_differentials(&page, 20, SolverOptions { duality: false }).unwrap_err();
    match err {
        SpecseqError::Ambiguous { top_dimension, count, solutions } => {
            assert_eq!(top_dimension, 20);
            assert!(count > 1);
            assert_eq!(solutions.len(), count);
        }
        other => panic!("expected ambiguity, got {other}"),
    }
}

#[test]
fn impossible_dimension_has_no_solution() {
    let page = e2("flbar3", 3);
    let err = unique_forced_differentials(&page, 1, SolverOptions { duality: false }).unwrap_err();
    assert!(matches!(err, SpecseqError::NoSolution { top_dimension: 1 }));
}

#[test]
fn page_of_only_the_origin_needs_nothing() {
    let mut page = BigradedPage::new(3, 2, 0, None, TRUNCATION);
    page.set(0, 0, z()).unwrap();
    let sol = unique_forced_differentials(&page, 0, SolverOptions::default()).unwrap();
    assert!(sol.specs.iter().all(|s| s.is_zero()));
    assert_eq!(sol.e_infinity.entry(0, 0), z());
}

#[test]
fn bad_bidegree_rejected() {
    let arrow = DifferentialArrow { source: (0, 4), target: (4, 0), rank: 1 };
    assert!(matches!(DifferentialSpec::new(3, vec![arrow]), Err(SpecseqError::BadBidegree { page: 3, .. })));
}

#[test]
fn rank_too_large_rejected() {
    let page = e2("flbar3", 3);
    let arrow = DifferentialArrow { source: (3, 4), target: (8, 0), rank: 2 };
    let spec = DifferentialSpec::new(5, vec![arrow]).unwrap();
    let mut e5 = page.clone();
    for r in 2..5 {
        e5 = turn_page(&e5, &DifferentialSpec::new(r, vec![]).unwrap()).unwrap();
    }
    assert!(matches!(turn_page(&e5, &spec), Err(SpecseqError::RankTooLarge { page: 5, rank: 2, .. })));
    let wrong = DifferentialSpec::new(3, vec![]).unwrap();
    assert!(matches!(turn_page(&page, &wrong), Err(SpecseqError::PageMismatch { expected: 2, got: 3 })));
}

#[test]
fn differentials_account_for_euler_change() {
    let limit = 10;
    for (name, p) in [("flbar3", 3), ("flbar3", 2), ("fl3xfl3", 3), ("fl3xfl3", 2)] {
        let r = run(name, p);
        let sign = |n: usize| if n % 2 == 0 { 1i64 } else { -1 };
        let mut expected = r.e2.torsion_euler_window(limit);
        for spec in &r.solution.specs {
            for a in &spec.arrows {
                let (s, t) = (a.source.0 + a.source.1, a.target.0 + a.target.1);
                assert_eq!(t, s + 1);
                if s <= limit && a.source.0 != 0 {
                    expected -= sign(s) * a.rank as i64;
                }
                if t <= limit {
                    expected -= sign(t) * a.rank as i64;
                }
            }
        }
        let einf = &r.solution.e_infinity;
        assert_eq!(einf.torsion_euler_window(limit), expected, "{name} p={p}");
        assert_eq!(einf.euler_window(limit), r.e2.euler_window(limit), "{name} p={p}");
    }
}

#[test]
fn extension_assembly_checks() {
    let page = e2("flbar3", 2);
    let mut solved = run("flbar3", 2).solution.e_infinity;
    solved.prime = 2;
    assert!(assemble_total(&page, 8, 6).is_err());
    assert!(assemble_total(&solved, 6, 6).is_ok());
    assert!(matches!(assemble_total(&solved, 6, TRUNCATION + 1), Err(SpecseqError::OutsidePage { .. })));
}

#[test]
fn page_serde_roundtrip() {
    let page = e2("fl3xfl3", 3);
    let text = serde_json::to_string(&page).unwrap();
    let back: BigradedPage = serde_json::from_str(&text).unwrap();
    assert_eq!(back, page);
    let r = run("flbar3", 3);
    let back: SerreResult = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn config_rejects_unknown_module() {
    let text = r#"{"name":"x","group":"S3","rows":{"0":["trivial"],"2":["nope"]},"top_dimension":2,"period":4,"default_prime":3}"#;
    assert!(FibrationConfig::parse(text).is_err());
    let extra = r#"{"name":"x","group":"S3","rows":{"0":["trivial"]},"top_dimension":0,"period":4,"default_prime":3,"bogus":1}"#;
    assert!(FibrationConfig::parse(extra).is_err());
    assert!(FibrationConfig::bundled("nothing").is_err());
}

#[test]
fn duality_filter_defaults() {
    let flbar = FibrationConfig::bundled("flbar3").unwrap();
    assert!(flbar.duality_for(2));
    assert!(!flbar.duality_for(3));
    let prod = FibrationConfig::bundled("fl3xfl3").unwrap();
    assert!(prod.duality_for(3));
}

#[test]
fn trivial_fibration_is_the_base() {
    let g = resolution().group.clone();
    let mut rows = BTreeMap::new();
    rows.insert(0usize, vec![catalog_module(&g, "trivial").unwrap()]);
    let page = serre_e2_over_bg(resolution(), &rows, 3, Some(4), TRUNCATION).unwrap();
    for c in 1..=8 {
        let expected = if c % 4 == 0 { zp(3, 1) } else { AbelianGroup::zero() };
        assert_eq!(page.entry(c, 0), expected);
    }
}

#[test]
fn whitney_examples() {
    let single = whitney_chern(&[vec![1, 0]]);
    assert_eq!(single.classes.len(), 1);
    assert_eq!(single.classes[0].to_string(), "β1");
    let zero = whitney_chern(&[vec![0, 0], vec![0, 0]]);
    assert!(zero.classes.iter().all(|c| c.is_zero()));
    let eta = whitney_chern(&u3t2_weights());
    let names: Vec<String> = eta.classes.iter().map(|c| c.to_string()).collect();
    assert_eq!(names, vec!["2β1 + β2", "β1^2 + 2β1β2", "β1^2β2"]);
}

#[test]
fn u3t2_at_two() {
    let u = u3t2_cohomology(2).unwrap();
    assert_eq!(u.presentation, "F2[z5, β]/(z5^2, β^2)");
    assert_eq!(u.series, series(&[(0, 1), (2, 1), (5, 1), (7, 1)]));
    let on_page: Vec<String> = u.transgressions.iter().map(|t| t.on_page.to_string()).collect();
    assert_eq!(on_page, vec!["β2", "β1^2", "0"]);
    assert_eq!(u.top_degree, 7);
    assert!(u.ring_checks.iter().all(|(_, ok)| *ok));
}

#[test]
fn u3t2_at_three() {
    let u = u3t2_cohomology(3).unwrap();
    assert_eq!(u.presentation, "F3[z3, β]/(z3^2, β^3)");
    assert_eq!(u.series, series(&[(0, 1), (2, 1), (3, 1), (4, 1), (5, 1), (7, 1)]));
    assert!(u.transgressions[1].vanishes);
    assert_eq!(u.transgressions[2].on_page.to_string(), "β1^3");
    assert_eq!(u.series.coefficient(4), 1);
    assert_eq!(u.series.coefficient(6), 0);
    assert_eq!(u.top_degree, 7);
    assert!(u.ring_checks.iter().all(|(_, ok)| *ok));
}

#[test]
fn u3t2_total_rank_is_four_or_six() {
    for p in [2u64, 3, 5, 7] {
        let u = u3t2_cohomology(p).unwrap();
        let expected = if p == 3 { 6 } else { 4 };
        assert_eq!(u.total_dimension, expected, "p={p}");
        assert_eq!(u.series.euler_characteristic(), 0);
    }
}

#[test]
fn koszul_homology_matches_presentation() {
    for p in [2u64, 3] {
        let u = u3t2_cohomology(p).unwrap();
        let dims: Vec<u64> = u.homology_dims.iter().map(|&d| d as u64).collect();
        assert_eq!(PoincareSeries::new(dims), u.series);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_differential_squares_to_zero(w in proptest::collection::vec((-3i64..4, -3i64..4), 1..4), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let weights: Vec<Vec<i64>> = w.iter().map(|&(a, b)| vec![a, b]).collect();
        let chern = whitney_chern(&weights);
        let model = KoszulModel::new(&chern, p, 9).unwrap();
        for n in 1..8 {
            let d1 = model.differential(n);
            let d0 = model.differential(n - 1);
            prop_assert!(d1.mul(&d0).is_zero());
        }
    }

    #[test]
    fn whitney_total_class_is_multiplicative(a in proptest::collection::vec((-3i64..4, -3i64..4), 1..3), b in proptest::collection::vec((-3i64..4, -3i64..4), 1..3)) {
        let wa: Vec<Vec<i64>> = a.iter().map(|&(x, y)| vec![x, y]).collect();
        let wb: Vec<Vec<i64>> = b.iter().map(|&(x, y)| vec![x, y]).collect();
        let both: Vec<Vec<i64>> = wa.iter().chain(&wb).cloned().collect();
        let lhs = whitney_chern(&both).total();
        let rhs = whitney_chern(&wa).total().mul(&whitney_chern(&wb).total());
        prop_assert_eq!(lhs, rhs);
    }
}
