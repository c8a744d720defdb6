use pcm_bounds::aggregation::{aggregate, sweep_pair, SimplexWeights};
use pcm_bounds::boundary::{
    check_lower, check_strong_upper, check_upper, lower_bound_refutation, search_violation, BoundaryProperty,
    SearchConfig, VerdictStatus,
};
use pcm_bounds::generate::{self, GeneratorConfig};
use pcm_bounds::indices::{self, IndexKind};
use pcm_bounds::io;
use pcm_bounds::{Execution, PairwiseComparisonMatrix, Permutation, PcmError};
use proptest::prelude::*;

fn pcm(n: usize, seed: u64) -> PairwiseComparisonMatrix {
    generate::random_pcm(n, 9.0, seed).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn assert_same_matrix(a: &PairwiseComparisonMatrix, b: &PairwiseComparisonMatrix, tol: f64) {
    assert_eq!(a.order(), b.order());
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        assert!(close(*x, *y, tol), "{x} vs {y}");
    }
}

fn permutation_from(n: usize, pick: usize) -> Permutation {
    let all = Permutation::all(n);
    all[pick % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_roundtrip(seed in any::<u64>(), n in 3usize..7, pick in any::<usize>()) {
        let a = pcm(n, seed);
        let p = permutation_from(n, pick);
        let back = a.permute(&p).unwrap().permute(&p.inverse()).unwrap();
        // entries moved below the diagonal are recomputed as reciprocals
        assert_same_matrix(&back, &a, 1e-15);
    }

    #[test]
    fn intensify_roundtrip(seed in any::<u64>(), n in 3usize..7, b in 0.25f64..4.0) {
        let a = pcm(n, seed);
        let back = a.intensify(b).unwrap().intensify(1.0 / b).unwrap();
        assert_same_matrix(&back, &a, 1e-12);
    }

    #[test]
    fn triads_unit_iff_consistent(seed in any::<u64>(), n in 3usize..7) {
        let mut rng = generate::trial_rng(seed, 0);
        let c = generate::random_consistent(n, 9.0, &mut rng);
        prop_assert!(c.triad_logs().iter().all(|l| l.abs() <= 1e-12));
        prop_assert!(c.is_consistent(1e-9));
        let a = pcm(n, seed);
        let has_bad_triad = a.triad_logs().iter().any(|l| l.abs() > 1e-9);
        prop_assert_eq!(has_bad_triad, !a.is_consistent(1e-9));
    }

    #[test]
    fn aggregate_of_identical_members(seed in any::<u64>(), n in 3usize..6, m in 1usize..5) {
        let a = pcm(n, seed);
        let mut rng = generate::trial_rng(seed, 1);
        let w = generate::random_simplex(m, &mut rng);
        let members = vec![a.clone(); m];
        assert_same_matrix(&aggregate(&members, &w).unwrap(), &a, 1e-12);
    }

    #[test]
    fn aggregate_is_reciprocal_and_keeps_consistency(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = generate::trial_rng(seed, 2);
        let (c1, c2) = (
            generate::random_consistent(n, 9.0, &mut rng),
            generate::random_consistent(n, 9.0, &mut rng),
        );
        let w = generate::random_simplex(2, &mut rng);
        let agg = aggregate(&[c1, c2], &w).unwrap();
        prop_assert!(agg.is_consistent(1e-9));
        let general = aggregate(&[pcm(n, seed), pcm(n, seed ^ 1)], &w).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert!((general.get(i, j) * general.get(j, i) - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn aggregation_associates(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = generate::trial_rng(seed, 3);
        let w = generate::random_simplex(3, &mut rng);
        let [l1, l2, l3] = [w.as_slice()[0], w.as_slice()[1], w.as_slice()[2]];
        prop_assume!(l1 + l2 > 1e-6);
        let ms = [pcm(n, seed), pcm(n, seed ^ 7), pcm(n, seed ^ 13)];
        let direct = aggregate(&ms, &w).unwrap();
        let inner = aggregate(&ms[..2], &SimplexWeights::new(vec![l1 / (l1 + l2), l2 / (l1 + l2)]).unwrap()).unwrap();
        let outer = aggregate(&[inner, ms[2].clone()], &SimplexWeights::new(vec![l1 + l2, l3]).unwrap()).unwrap();
        assert_same_matrix(&direct, &outer, 1e-10);
    }

    #[test]
    fn indices_are_permutation_invariant(seed in any::<u64>(), n in 3usize..6, pick in any::<usize>()) {
        let a = pcm(n, seed);
        let p = permutation_from(n, pick);
        let b = a.permute(&p).unwrap();
        for kind in IndexKind::ALL {
            let (x, y) = (indices::value(kind, &a).unwrap(), indices::value(kind, &b).unwrap());
            prop_assert!(close(x, y, 1e-9), "{} changed under permutation: {} vs {}", kind, x, y);
        }
    }

    #[test]
    fn index_ranges(seed in any::<u64>(), n in 3usize..7) {
        let a = pcm(n, seed);
        prop_assert!(indices::i_cd(&a).value >= 1.0);
        let k = indices::k_index(&a).value;
        prop_assert!((0.0..1.0).contains(&k));
        prop_assert!(indices::ci(&a).unwrap().value >= -1e-12);
        for kind in IndexKind::ALL {
            prop_assert!(indices::value(kind, &a).unwrap() >= kind.nu() - 1e-12);
        }
    }

    #[test]
    fn io_roundtrip_through_files(seed in any::<u64>(), n in 3usize..6) {
        let a = pcm(n, seed);
        prop_assert_eq!(&io::parse(&io::to_csv(&a), io::MatrixFormat::Csv).unwrap(), &a);
        prop_assert_eq!(&io::parse(&io::to_json(&a), io::MatrixFormat::Json).unwrap(), &a);
    }
}

#[test]
fn random_matrices_validate() {
    for distribution in [generate::Distribution::LogUniform, generate::Distribution::DiscreteScale] {
        let cfg = GeneratorConfig {
            distribution,
            ..Default::default()
        };
        for s in 0..10_000u64 {
            let n = 3 + (s % 5) as usize;
            let a = cfg.sample_pcm(n, &mut generate::trial_rng(11, s));
            let rows = a.rows();
            let again = PairwiseComparisonMatrix::validate(&rows).unwrap();
            assert_eq!(again, a);
            assert!(a.as_slice().iter().all(|&v| (1.0 / 9.0 - 1e-15..=9.0 + 1e-15).contains(&v)));
        }
    }
}

#[test]
fn lower_bound_fails_for_every_index() {
    let a = pcm(4, 5);
    for kind in IndexKind::ALL {
        let rec = lower_bound_refutation(kind, &a).unwrap();
        assert!(rec.lhs < rec.rhs, "{kind}");
        let again = rec.reverify().unwrap();
        assert!((again.margin - rec.margin).abs() <= 1e-12);
        let c = check_lower(kind, &rec.matrices, &rec.weights).unwrap();
        assert!(c.violated);
    }
    let consistent = PairwiseComparisonMatrix::all_ones(4).unwrap();
    assert!(matches!(lower_bound_refutation(IndexKind::Ci, &consistent), Err(PcmError::InputConsistent)));
}

#[test]
fn strong_upper_bound_implies_upper_bound() {
    for s in 0..2000u64 {
        let n = 3 + (s % 3) as usize;
        let pair = [pcm(n, 2 * s), pcm(n, 2 * s + 1)];
        let w = generate::random_simplex(2, &mut generate::trial_rng(77, s));
        for kind in IndexKind::ALL {
            let sub = check_strong_upper(kind, &pair, &w).unwrap();
            let ub = check_upper(kind, &pair, &w).unwrap();
            if !sub.violated {
                assert!(!ub.violated, "{kind}: S-UB holds but UB fails at trial {s}");
            }
        }
    }
}

#[test]
fn searches_find_upper_bound_violations() {
    let cfg = SearchConfig {
        inject_known: false,
        ..SearchConfig::with_trials(10_000, 3)
    };
    for kind in [IndexKind::Re, IndexKind::Hci, IndexKind::Gw, IndexKind::ni()] {
        let v = search_violation(kind, BoundaryProperty::UpperBounded, &cfg).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated, "{kind}");
        let rec = v.counterexample.unwrap();
        let again = rec.reverify().unwrap();
        assert!(again.violated);
        assert!((again.margin - rec.margin).abs() <= 1e-12);
    }
}

#[test]
fn searches_find_nothing_for_convex_indices() {
    let cfg = SearchConfig::with_trials(10_000, 8);
    for kind in [IndexKind::Ci, IndexKind::Gci] {
        for property in [BoundaryProperty::UpperBounded, BoundaryProperty::StronglyUpperBounded] {
            let v = search_violation(kind, property, &cfg).unwrap();
            assert_eq!(v.status, VerdictStatus::NoViolationFound, "{kind} {property:?}");
            assert!(v.counterexample.is_none());
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = SearchConfig {
        exec: Execution::Sequential,
        ..SearchConfig::with_trials(2000, 21)
    };
    let par = SearchConfig {
        exec: Execution::Parallel,
        ..seq.clone()
    };
    for kind in [IndexKind::Re, IndexKind::Hci, IndexKind::K, IndexKind::Ci] {
        for property in BoundaryProperty::ALL {
            assert_eq!(
                search_violation(kind, property, &seq).unwrap(),
                search_violation(kind, property, &par).unwrap(),
                "{kind} {property:?}"
            );
        }
    }
    let (a, b) = (pcm(5, 1), pcm(5, 2));
    for kind in IndexKind::ALL {
        assert_eq!(
            sweep_pair(&a, &b, kind, 50, Execution::Sequential).unwrap(),
            sweep_pair(&a, &b, kind, 50, Execution::Parallel).unwrap()
        );
    }
}

#[test]
fn counterexample_serializes() {
    let cfg = SearchConfig::with_trials(100, 0);
    let v = search_violation(IndexKind::K, BoundaryProperty::StronglyUpperBounded, &cfg).unwrap();
    let json = serde_json::to_string(&v).unwrap();
    let back: pcm_bounds::BoundaryVerdict = serde_json::from_str(&json).unwrap();
    assert_eq!(back, v);
}
