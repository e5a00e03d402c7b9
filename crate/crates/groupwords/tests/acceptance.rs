//! Acceptance suite. Each test prints one PASS line with its headline
//! numbers; run with `cargo test --test acceptance -- --nocapture` to see
//! them. Every verdict is an exact integer or rational comparison.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use groupwords::{
    default_catalog, derivation_chain_holds, has_wmn_property, kst_bound_holds, naive_oracle,
    run_sweep, DichotomyBranch, GammaSpec, GapConstant, Group, OverlapPolicy, PropertyQuery,
    SweepConfig, Word, WordGraph,
};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn built_catalog(max_order: usize) -> Vec<Group> {
    default_catalog(max_order)
        .iter()
        .map(|e| e.build().unwrap())
        .collect()
}

fn assert_within(elapsed: Duration, limit: Duration, what: &str) {
    assert!(
        elapsed <= limit,
        "{what} took {elapsed:?}, over the {limit:?} budget"
    );
}

#[test]
fn acceptance_1_gustafson_commuting_probability_bound() {
    let start = Instant::now();
    let commutator = Word::commutator();
    let five_eighths = ratio(5, 8);
    let mut non_abelian = 0;
    let mut checked_extremes = 0;
    for group in built_catalog(64) {
        if group.is_abelian() {
            continue;
        }
        non_abelian += 1;
        let probability = WordGraph::build(&group, &commutator).satisfaction_probability();
        assert!(
            probability <= five_eighths,
            "{}: commuting probability {} exceeds 5/8",
            group.name(),
            probability
        );
        if group.name() == "Q8" || group.name() == "D4" {
            assert_eq!(probability, five_eighths, "{}", group.name());
            checked_extremes += 1;
        }
    }
    assert_eq!(checked_extremes, 2, "Q8 and D4 must both be in the catalog");
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 1");
    println!(
        "acceptance 1 (commuting probability <= 5/8, equality at Q8 and D4): PASS \
         ({non_abelian} non-abelian groups, {elapsed:?})"
    );
}

#[test]
fn acceptance_2_commutator_sweep_has_no_bound_violations() {
    let start = Instant::now();

    // The CLI invocation this criterion is phrased around.
    let output = Command::new(env!("CARGO_BIN_EXE_groupwords"))
        .args([
            "verify",
            "--named",
            "commutator",
            "--gamma",
            "5/8",
            "--max-order",
            "128",
            "--m-max",
            "3",
            "--n-max",
            "16",
        ])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "verify exited with {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("violations = 0"), "{stdout}");

    // The same sweep through the library, re-checking every bound row as
    // the integer inequality 3^m * |G| <= 16^m * (n-1).
    let report = run_sweep(&SweepConfig {
        word: Word::commutator(),
        gamma: GammaSpec::Fixed(GapConstant::gustafson()),
        max_order: 128,
        m_max: 3,
        n_max: 16,
    })
    .unwrap();
    assert_eq!(report.violation_count(), 0);
    let mut bound_rows = 0;
    for row in &report.rows {
        if let DichotomyBranch::Bound(bound) = &row.branch {
            let lhs = BigInt::from(3).pow(row.m as u32) * BigInt::from(row.order);
            let rhs = BigInt::from(16).pow(row.m as u32) * BigInt::from(row.n - 1);
            assert_eq!(bound.holds, lhs <= rhs, "{row:?}");
            assert!(bound.holds, "integer form violated: {row:?}");
            bound_rows += 1;
        }
    }
    assert!(bound_rows > 0, "the sweep never reached the bound branch");

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(120), "criterion 2");
    println!(
        "acceptance 2 (commutator sweep, gamma=5/8, order<=128, m<=3, n<=16): PASS \
         ({} rows, {bound_rows} bound checks, 0 violations, {elapsed:?})",
        report.rows.len()
    );
}

#[test]
fn acceptance_3_engel_sweep_with_empirical_gap() {
    let start = Instant::now();
    let engel2 = Word::named("engel2").unwrap();

    let report = run_sweep(&SweepConfig {
        word: engel2.clone(),
        gamma: GammaSpec::Empirical,
        max_order: 64,
        m_max: 3,
        n_max: 16,
    })
    .unwrap();
    assert_eq!(report.violation_count(), 0);
    assert_eq!(report.metadata.gamma_source, "empirical-catalog-supremum");
    let gamma: BigRational = report.metadata.gamma.parse().unwrap();
    assert!(gamma < BigRational::from_integer(1.into()));

    // Identity / non-identity fixtures for the word.
    let by_name: std::collections::HashMap<String, Group> = built_catalog(64)
        .into_iter()
        .map(|g| (g.name().to_string(), g))
        .collect();
    for name in ["D4", "Q8", "Heis3"] {
        assert!(
            engel2.is_identity_in(&by_name[name]),
            "expected an identity on {name}"
        );
    }
    for name in ["S3", "S4"] {
        assert!(
            !engel2.is_identity_in(&by_name[name]),
            "expected a non-identity on {name}"
        );
    }

    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 3");
    println!(
        "acceptance 3 (2-Engel sweep with empirical gamma = {}): PASS \
         ({} rows, 0 violations, {elapsed:?})",
        report.metadata.gamma,
        report.rows.len()
    );
}

#[test]
fn acceptance_4_arc_bound_on_random_digraphs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b73_7462);
    let mut configuration_free_cases = 0u32;
    let graphs = 220;
    for _ in 0..graphs {
        let t = rng.gen_range(1..=12usize);
        let density: f64 = rng.gen();
        let mut arcs = Vec::new();
        for a in 0..t {
            for b in 0..t {
                if a != b && rng.gen_bool(density) {
                    arcs.push((a, b));
                }
            }
        }
        let graph = WordGraph::from_arcs(t, &arcs, "random", "-");
        for r in 1..=3usize {
            for s in 1..=3usize {
                let query =
                    PropertyQuery::new(r, s, OverlapPolicy::RequireDisjoint).unwrap();
                let exhaustive = naive_oracle(&graph, &query).unwrap();
                if exhaustive.has_property {
                    configuration_free_cases += 1;
                    let report =
                        kst_bound_holds(t as u64, r as u64, s as u64, graph.arc_count())
                            .unwrap();
                    assert!(
                        report.holds,
                        "arc bound failed on a configuration-free digraph: t={t}, r={r}, \
                         s={s}, arcs={}",
                        graph.arc_count()
                    );
                }
            }
        }
    }
    assert!(configuration_free_cases > 100, "test was nearly vacuous");
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(30), "criterion 4");
    println!(
        "acceptance 4 (arc bound vs exhaustive search on {graphs} random digraphs): PASS \
         ({configuration_free_cases} configuration-free cases, 0 counterexamples, {elapsed:?})"
    );
}

#[test]
fn acceptance_5_oracle_equivalence() {
    let start = Instant::now();
    let words = [Word::commutator(), Word::named("engel2").unwrap()];
    let mut comparisons = 0u32;
    for group in built_catalog(16) {
        for word in &words {
            let graph = WordGraph::build(&group, word);
            for m in 1..=3 {
                for n in 1..=3 {
                    for policy in [OverlapPolicy::AllowOverlap, OverlapPolicy::RequireDisjoint] {
                        let query = PropertyQuery::new(m, n, policy).unwrap();
                        let fast = has_wmn_property(&graph, &query);
                        let slow = naive_oracle(&graph, &query).unwrap();
                        assert_eq!(
                            fast.has_property,
                            slow.has_property,
                            "{} {} m={m} n={n} {policy}",
                            group.name(),
                            word.source()
                        );
                        assert_eq!(fast.witness_m, slow.witness_m);
                        assert_eq!(fast.witness_n, slow.witness_n);
                        if let (Some(m_set), Some(n_set)) =
                            (&fast.witness_m, &fast.witness_n)
                        {
                            // Re-verify the witness by direct word evaluation.
                            for &x in m_set {
                                for &y in n_set {
                                    assert_ne!(
                                        word.evaluate(&group, x, y),
                                        group.identity(),
                                        "invalid witness pair ({x}, {y})"
                                    );
                                }
                            }
                            if policy == OverlapPolicy::RequireDisjoint {
                                assert!(n_set.iter().all(|v| !m_set.contains(v)));
                            }
                        }
                        comparisons += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 5");
    println!(
        "acceptance 5 (search vs brute-force oracle, order <= 16): PASS \
         ({comparisons} comparisons, {elapsed:?})"
    );
}

#[test]
fn acceptance_6_derivation_chain_property_test() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6368_6169);
    let mut hypotheses_held = 0u32;
    for case in 0..10_000u32 {
        let m = rng.gen_range(1..=20usize);
        let n = rng.gen_range(m..=20usize);
        let denominator = rng.gen_range(1..=64i64);
        let numerator = rng.gen_range(0..denominator);
        let gamma = ratio(numerator, denominator);

        // Half the cases aim below the bound so the hypotheses can hold.
        let t = if case % 2 == 0 {
            let bound = 2.0 / (1.0 - numerator as f64 / denominator as f64);
            let ceiling = (bound.powi(m as i32) * (n as f64 - 1.0)).min(1e6).max(1.0);
            rng.gen_range(1..=ceiling as u64)
        } else {
            rng.gen_range(1..=1_000_000u64)
        };
        let t_squared = t * t;
        let eta = if case % 4 < 2 {
            // Near the density threshold (1 - gamma) * t^2.
            let threshold = ((denominator - numerator) as u128 * u128::from(t_squared)
                / denominator as u128) as u64;
            threshold.saturating_add(rng.gen_range(0..=t)).min(t_squared)
        } else {
            rng.gen_range(0..=t_squared)
        };

        let density = BigRational::from_integer(eta.into())
            >= (BigRational::from_integer(1.into()) - &gamma)
                * BigRational::from_integer(t_squared.into());
        let arc_bound = kst_bound_holds(t, m as u64, n as u64, eta).unwrap().holds;
        let size = t >= n as u64 - 1;
        if density && arc_bound && size {
            hypotheses_held += 1;
        }

        let report = derivation_chain_holds(t, eta, &gamma, m, n).unwrap();
        assert!(
            report.holds,
            "chain violated at t={t}, eta={eta}, gamma={gamma}, m={m}, n={n}: {}",
            report.context
        );
    }
    assert!(hypotheses_held > 200, "too few non-vacuous cases: {hypotheses_held}");
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 6");
    println!(
        "acceptance 6 (derivation chain over 10000 random tuples): PASS \
         ({hypotheses_held} non-vacuous, 0 violations, {elapsed:?})"
    );
}

#[test]
fn acceptance_7_fixed_point_checks() {
    let start = Instant::now();
    let commutator = Word::commutator();

    let s3 = groupwords::builtin(&groupwords::Family::Symmetric(3)).unwrap();
    let s3_graph = WordGraph::build(&s3, &commutator);
    assert_eq!(s3_graph.satisfaction_probability(), ratio(1, 2));
    assert_eq!(
        groupwords::property_frontier(&s3_graph, 1, OverlapPolicy::AllowOverlap),
        4
    );

    let q8 = groupwords::builtin(&groupwords::Family::Quaternion8).unwrap();
    let q8_graph = WordGraph::build(&q8, &commutator);
    assert_eq!(q8_graph.satisfaction_probability(), ratio(5, 8));

    assert_eq!(Word::parse("[x,y,y]").unwrap().len(), 10);

    let elapsed = start.elapsed();
    println!(
        "acceptance 7 (fixed points: 1/2, 5/8, frontier 4, length 10): PASS ({elapsed:?})"
    );
}

#[test]
fn acceptance_8_scale_note() {
    // The underlying statements quantify over all finite groups and all
    // words; that is not reproducible by computation. The suite instead
    // verifies every instance the catalog can instantiate, with exact
    // arithmetic throughout, plus the independent oracle equivalences above.
    println!("acceptance 8 (scale note): PASS (verification is exact on the catalog instances)");
}
