use spinvec::analysis::correlation_matrix;
use spinvec::coupling::coupled_state;
use spinvec::linalg::TOL;
use spinvec::sampler::{exact_moments, outcome_probabilities};
use spinvec::{estimate_moments, sample, stretched_state, two_spin_state, Axis, SpinSystem};

const N: usize = 200_000;
const SEED: u64 = 0x5eed_0001;

#[test]
fn batch_is_independent_of_thread_count() {
    let s = coupled_state(SpinSystem::new(5).unwrap(), 3, 1, None).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sample(s.system(), s.vector(), Axis::Y, N, SEED).unwrap())
    };
    let one = run(1);
    let many = run(4);
    assert_eq!(one, many);
    assert_eq!(estimate_moments(&one).unwrap(), estimate_moments(&many).unwrap());
}

#[test]
fn marginals_match_born_probabilities() {
    let system = SpinSystem::new(4).unwrap();
    let s = coupled_state(system, 2, 0, None).unwrap();
    for axis in Axis::ALL {
        let exact = exact_moments(system, s.vector(), axis, N).unwrap();
        let batch = sample(system, s.vector(), axis, N, SEED).unwrap();
        let est = estimate_moments(&batch).unwrap();
        for (e, x) in est.site_means.iter().zip(&exact.site_means) {
            assert!(e.within(x.value, 5.0, TOL), "{axis}: {} vs {}", e.value, x.value);
        }
    }
}

#[test]
fn exact_moments_agree_with_operator_correlations() {
    // the Born-distribution route and the operator route are independent
    let system = SpinSystem::new(4).unwrap();
    for tj in [4, 2, 0] {
        let s = coupled_state(system, tj, 0, None).unwrap();
        for axis in Axis::ALL {
            let exact = exact_moments(system, s.vector(), axis, N).unwrap();
            let ops = correlation_matrix(system, s.vector(), axis).unwrap();
            for p in &exact.pair_correlations {
                assert!((p.correlation.value - ops.matrix[p.i - 1][p.k - 1]).abs() <= TOL);
            }
            for (m, o) in exact.site_means.iter().zip(&ops.site_means) {
                assert!((m.value - o).abs() <= TOL);
            }
        }
    }
}

#[test]
fn sampled_correlations_track_exact_values() {
    let system = SpinSystem::new(2).unwrap();
    let triplet = two_spin_state(2, 0).unwrap();
    let est = estimate_moments(&sample(system, triplet.vector(), Axis::X, N, SEED).unwrap()).unwrap();
    assert_eq!(est.pair(1, 2).unwrap().value, 0.25);

    let s = stretched_state(SpinSystem::new(3).unwrap());
    let est = estimate_moments(&sample(s.system(), s.vector(), Axis::X, N, SEED).unwrap()).unwrap();
    let exact = exact_moments(s.system(), s.vector(), Axis::X, N).unwrap();
    assert!(est.total_variance.within(0.75, 5.0, TOL));
    for p in &est.pair_correlations {
        let sigma = exact.pair(p.i, p.k).unwrap().std_error;
        assert!(p.correlation.value.abs() <= 5.0 * sigma);
    }
    let probs = outcome_probabilities(s.system(), s.vector(), Axis::X).unwrap();
    assert!(probs.iter().all(|p| (p - 0.125).abs() <= TOL));
}
