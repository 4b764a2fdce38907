mod common;

use altergraph::experiments::{reproduce, ExperimentSpec, Figure};
use altergraph::gain::influence_ranks;
use altergraph::generators::rng_from_seed;
use altergraph::survey::{estimate_from_degrees, run_graph_trials, FractionPolicy};
use altergraph::{
    assortativity, avg_clustering, draw_respondents, exceedance_by_percentile, gain_summary,
    gen_holme_kim, gen_small_world, interview, load_edge_list, mean_gain_by_percentile, moments,
    node_gain, percentile_ranks, run_trials, sample_config, write_edge_list, Aggregator,
    DegreeSequence, Direction, Execution, Graph, Model, NodeId, TrialPlan,
};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;

use common::{graph, rel_close, Dense};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..40, any::<bool>()).prop_flat_map(|(n, directed)| {
        prop::collection::vec((0..n as NodeId, 0..n as NodeId), 1..150).prop_filter_map(
            "only self-loops",
            move |edges| Graph::from_edges(n, directed, edges).ok().filter(|g| g.edge_count() > 0),
        )
    })
}

fn arb_undirected() -> impl Strategy<Value = Graph> {
    arb_graph().prop_filter("undirected", |g| !g.is_directed())
}

fn permuted(g: &Graph, seed: u64) -> (Graph, Vec<NodeId>) {
    let mut perm: Vec<NodeId> = (0..g.node_count() as NodeId).collect();
    perm.shuffle(&mut rng_from_seed(seed));
    let edges = g.edges().map(|(u, v)| (perm[u as usize], perm[v as usize]));
    (Graph::from_edges(g.node_count(), g.is_directed(), edges).unwrap(), perm)
}

fn sorted(mut xs: Vec<usize>) -> Vec<usize> {
    xs.sort_unstable();
    xs
}

fn to_dense(g: &Graph) -> Dense {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u as usize][v as usize] = true;
        if !g.is_directed() {
            a[v as usize][u as usize] = true;
        }
    }
    Dense { directed: g.is_directed(), a }
}

proptest! {
    #[test]
    fn handshake(g in arb_graph()) {
        if g.is_directed() {
            let outs = g.degree_sequence(Direction::Out).unwrap();
            let ins = g.degree_sequence(Direction::In).unwrap();
            prop_assert_eq!(outs.total(), g.edge_count() as u64);
            prop_assert_eq!(ins.total(), g.edge_count() as u64);
        } else {
            let d = g.degree_sequence(Direction::Undirected).unwrap();
            prop_assert_eq!(d.total(), 2 * g.edge_count() as u64);
        }
    }

    #[test]
    fn reload_of_emitted_edge_list_is_identical(g in arb_graph()) {
        let mut text = Vec::new();
        write_edge_list(&g, &mut text).unwrap();
        let again = load_edge_list(text.as_slice(), g.is_directed()).unwrap();
        // Isolated nodes have no edge line; otherwise the round trip is exact.
        let isolated = (0..g.node_count() as NodeId).any(|x| {
            [Direction::Out, Direction::In].iter().all(|&d| g.neighbors(x, d).unwrap().is_empty())
        });
        if !isolated {
            prop_assert_eq!(&again, &g);
        }
        let mut text2 = Vec::new();
        write_edge_list(&again, &mut text2).unwrap();
        let third = load_edge_list(text2.as_slice(), g.is_directed()).unwrap();
        prop_assert_eq!(&again, &third);
        prop_assert_eq!(again.edge_count(), g.edge_count());
    }

    #[test]
    fn relabeling_preserves_counts_and_degrees(g in arb_graph(), seed in any::<u64>()) {
        let (h, _) = permuted(&g, seed);
        prop_assert_eq!(h.node_count(), g.node_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for mode in [Direction::Out, Direction::In] {
            let mode = if g.is_directed() { mode } else { Direction::Undirected };
            prop_assert_eq!(
                sorted(g.degree_sequence(mode).unwrap().values),
                sorted(h.degree_sequence(mode).unwrap().values)
            );
        }
    }

    #[test]
    fn moment_inequalities(degrees in prop::collection::vec(1usize..1000, 1..60)) {
        let constant = degrees.iter().all(|&k| k == degrees[0]);
        let m = moments(&DegreeSequence::new(Direction::Undirected, degrees)).unwrap();
        let harmonic = m.mu1 * m.muh;
        let spread = m.mu2 / m.mu1 - m.mu1;
        if constant {
            prop_assert!((harmonic - 1.0).abs() <= 1e-12);
            prop_assert_eq!(spread, 0.0);
            prop_assert_eq!(m.formula_gain(), 1.0);
        } else {
            prop_assert!(harmonic > 1.0);
            prop_assert!(spread > 0.0);
            prop_assert!(m.formula_gain() > 1.0);
        }
    }

    #[test]
    fn formula_gain_at_least_one_without_isolated_nodes(g in arb_graph()) {
        let seq = g.degree_sequence(g.influence_mode()).unwrap();
        prop_assume!(seq.values.iter().all(|&k| k > 0));
        let regular = seq.values.iter().all(|&k| k == seq.values[0]);
        let gain = moments(&seq).unwrap().formula_gain();
        prop_assert!(gain >= 1.0);
        prop_assert_eq!(gain == 1.0, regular);
    }

    #[test]
    fn percentile_ranks_monotone_and_label_free(g in arb_graph(), seed in any::<u64>()) {
        let mode = g.influence_mode();
        let seq = g.degree_sequence(mode).unwrap();
        let ranks = percentile_ranks(&seq).ranks;
        for i in 0..seq.len() {
            for j in 0..seq.len() {
                if seq.values[i] < seq.values[j] {
                    prop_assert!(ranks[i] < ranks[j]);
                }
            }
        }
        let (h, perm) = permuted(&g, seed);
        let moved = percentile_ranks(&h.degree_sequence(mode).unwrap()).ranks;
        for x in 0..g.node_count() {
            prop_assert_eq!(ranks[x], moved[perm[x] as usize]);
        }
    }

    #[test]
    fn node_gain_matches_dense_oracle(g in arb_graph()) {
        let dense = to_dense(&g);
        for x in 0..g.node_count() {
            for (agg, want) in [
                (Aggregator::Mean, dense.gain_mean(x)),
                (Aggregator::Median, dense.gain_median(x)),
            ] {
                let got = node_gain(&g, x as NodeId, agg).unwrap();
                match (got, want) {
                    (Some(a), Some(b)) => prop_assert!(rel_close(a, b, 1e-12), "{} vs {}", a, b),
                    (None, None) => {}
                    other => prop_assert!(false, "definedness differs: {:?}", other),
                }
            }
        }
    }

    #[test]
    fn clustering_and_assortativity_match_dense_oracle(g in arb_undirected()) {
        let dense = to_dense(&g);
        prop_assert!(rel_close(avg_clustering(&g).unwrap(), dense.avg_clustering(), 1e-12));
        match (assortativity(&g).unwrap(), dense.assortativity()) {
            (Some(a), Some(b)) => prop_assert!(rel_close(a, b, 1e-9), "{} vs {}", a, b),
            (None, None) => {}
            other => prop_assert!(false, "definedness differs: {:?}", other),
        }
    }

    #[test]
    fn aggregators_define_the_same_node_set(g in arb_graph()) {
        for x in 0..g.node_count() as NodeId {
            let mean = node_gain(&g, x, Aggregator::Mean).unwrap();
            let median = node_gain(&g, x, Aggregator::Median).unwrap();
            prop_assert_eq!(mean.is_some(), median.is_some());
        }
    }

    #[test]
    fn curves_ignore_node_labels(g in arb_graph(), seed in any::<u64>(), bins in 1usize..30) {
        let (h, _) = permuted(&g, seed);
        for agg in Aggregator::ALL {
            let (Ok(sg), Ok(sh)) = (gain_summary(&g, agg), gain_summary(&h, agg)) else {
                continue;
            };
            let (rg, rh) = (influence_ranks(&g).unwrap(), influence_ranks(&h).unwrap());
            let a = exceedance_by_percentile(&sg, &rg, bins).unwrap();
            let b = exceedance_by_percentile(&sh, &rh, bins).unwrap();
            prop_assert_eq!(a, b);
            let a = mean_gain_by_percentile(&sg, &rg, bins).unwrap();
            let b = mean_gain_by_percentile(&sh, &rh, bins).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (p, q) in a.iter().zip(&b) {
                prop_assert_eq!(p.count, q.count);
                match (p.value, q.value) {
                    (Some(x), Some(y)) => prop_assert!(rel_close(x, y, 1e-12)),
                    (x, y) => prop_assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn estimator_ignores_respondent_order(
        degrees in prop::collection::vec(0usize..500, 1..80),
        seed in any::<u64>(),
    ) {
        prop_assume!(degrees.iter().any(|&k| k > 0));
        let mut shuffled = degrees.clone();
        shuffled.shuffle(&mut rng_from_seed(seed));
        let a = estimate_from_degrees(degrees).unwrap();
        let b = estimate_from_degrees(shuffled).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.g_hat >= 1.0);
    }

    #[test]
    fn census_estimate_ignores_node_labels(g in arb_undirected(), seed in any::<u64>()) {
        let (h, _) = permuted(&g, seed);
        let census = |g: &Graph| {
            let mut rng = rng_from_seed(0);
            let all = draw_respondents(g, 1.0, &mut rng).unwrap();
            let survey = interview(g, &all, 1, &mut rng).unwrap();
            estimate_from_degrees(survey.reported_degrees).map(|e| e.g_hat).ok()
        };
        prop_assert_eq!(census(&g), census(&h));
    }

    #[test]
    fn nominations_are_distinct_alters(g in arb_graph(), per in 1usize..6, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let respondents = draw_respondents(&g, 0.5, &mut rng).unwrap_or_default();
        let survey = interview(&g, &respondents, per, &mut rng).unwrap();
        for (x, named) in survey.respondents.iter().zip(&survey.nominations) {
            let alters = g.neighbors(*x, g.alter_direction()).unwrap();
            prop_assert_eq!(named.len(), per.min(alters.len()));
            let mut unique = named.clone();
            unique.sort_unstable();
            unique.dedup();
            prop_assert_eq!(unique.len(), named.len());
            prop_assert!(named.iter().all(|a| alters.contains(a)));
        }
    }

    #[test]
    fn subsampled_respondents_are_distinct(
        ids in subsequence((0..200u32).collect::<Vec<_>>(), 1..200),
        seed in any::<u64>(),
    ) {
        let g = common::ring(200, 2);
        let mut rng = rng_from_seed(seed);
        let fraction = ids.len() as f64 / 200.0;
        let drawn = draw_respondents(&g, fraction, &mut rng).unwrap();
        prop_assert_eq!(drawn.len(), ids.len());
        prop_assert!(drawn.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn config_sampler_respects_degree_bounds() {
    let mut rng = rng_from_seed(11);
    for model in Model::ALL {
        for n in [5000, 9000] {
            for _ in 0..50 {
                let c = sample_config(model, n, &mut rng).unwrap();
                let mean = c.expected_mean_degree();
                match model {
                    Model::SmallWorld => assert!(mean <= 200.0 && (5..=10).contains(&c.b)),
                    Model::PrefAttachment => assert!((50..=75).contains(&c.m)),
                    Model::HolmeKim => {
                        assert!(mean < 150.0 && (50..=100).contains(&c.m));
                        assert!((0.0..=0.5).contains(&c.p_t));
                    }
                    Model::KlemmEguiluz => assert!((100.0..=200.0).contains(&mean)),
                }
            }
        }
    }
}

#[test]
fn hub_nominations_pass_chi_square() {
    let star = graph("0 1\n0 2\n0 3\n", false);
    let mut rng = rng_from_seed(99);
    let mut counts = [0usize; 3];
    let reps = 10_000;
    for _ in 0..reps {
        let survey = interview(&star, &[0], 1, &mut rng).unwrap();
        counts[survey.nominations[0][0] as usize - 1] += 1;
    }
    let expected = reps as f64 / 3.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // Two degrees of freedom, alpha = 0.001.
    assert!(chi2 < 13.816, "chi-square {chi2} for counts {counts:?}");
}

#[test]
fn hub_nomination_frequencies_over_seeds() {
    let star = graph("0 1\n0 2\n0 3\n", false);
    let mut counts = [0usize; 3];
    for seed in 0..3000 {
        let survey = interview(&star, &[0], 1, &mut rng_from_seed(seed)).unwrap();
        counts[survey.nominations[0][0] as usize - 1] += 1;
    }
    for c in counts {
        let share = c as f64 / 3000.0;
        assert!((share - 1.0 / 3.0).abs() <= 0.03, "leaf share {share}");
    }
}

#[test]
fn triad_formation_raises_clustering_on_paired_seeds() {
    for seed in 0..20 {
        let plain = avg_clustering(&gen_holme_kim(3000, 50, 0.0, seed).unwrap()).unwrap();
        let triads = avg_clustering(&gen_holme_kim(3000, 50, 0.5, seed).unwrap()).unwrap();
        assert!(triads > plain, "seed {seed}: {triads} <= {plain}");
    }
}

#[test]
fn trial_rows_do_not_depend_on_execution() {
    let mut plan = TrialPlan::new(Model::HolmeKim, vec![600, 800], 6, 5);
    plan.nominations = 3;
    let seq = run_trials(&plan, Execution::Sequential).unwrap();
    let par = run_trials(&plan, Execution::Parallel).unwrap();
    assert_eq!(seq, par);

    let g = gen_small_world(1000, 5, 0.01, 3).unwrap();
    let policy = FractionPolicy::Fixed { value: 0.15 };
    let seq = run_graph_trials(&g, 12, policy, 1, 8, Execution::Sequential).unwrap();
    let par = run_graph_trials(&g, 12, policy, 1, 8, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn reproduce_twice_gives_identical_bodies() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |dir: &str| {
        let mut spec = ExperimentSpec::new(Figure::Fig5, tmp.path().join(dir));
        spec.models = vec![Model::PrefAttachment, Model::KlemmEguiluz];
        spec.sizes = vec![500];
        spec.trials = 4;
        spec.seed = 21;
        reproduce(&spec, Execution::default()).unwrap();
        let mut files: Vec<_> = std::fs::read_dir(tmp.path().join(dir))
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|e| e == "csv"))
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| std::fs::read(p).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(run("a"), run("b"));
}
