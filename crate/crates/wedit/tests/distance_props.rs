//! Edit distance against the definition (min over the language), against the
//! eager full-product reference, and the forward/backward identities the
//! divide-and-conquer alignment depends on.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wedit::{
    edit_distance, level_distances, CostFunction, DisciplineChoice, EditLattice, Error,
    FlatGraph, Label, LatticeState, SweepDirection, TropicalWeight, WeightedAutomaton,
};
use wedit_oracle::{bellman_ford, dp_edit_distance, enumerate_language, full_lattice_reference, gen};

fn w(v: f64) -> TropicalWeight {
    TropicalWeight::new(v)
}

fn lev(alphabet: &[Label]) -> CostFunction {
    CostFunction::levenshtein(alphabet.iter().copied())
}

fn ab_or_ba() -> WeightedAutomaton {
    let mut a = WeightedAutomaton::new(4);
    a.add_arc(0, 1, 1, w(0.0));
    a.add_arc(1, 2, 2, w(0.0));
    a.add_arc(0, 3, 2, w(0.0));
    a.add_arc(3, 2, 1, w(0.0));
    a.set_initial(0, w(0.0));
    a.set_final(2, w(0.0));
    a
}

#[test]
fn hand_cases_follow_the_definition() {
    let costs = lev(&[1, 2]);
    let (d, _) = edit_distance(&[1, 1], &ab_or_ba(), &costs, DisciplineChoice::Auto).unwrap();
    assert_eq!(d, w(1.0));

    // A accepts just "b" with weight 0.5; d = 0.5 + dp("aba", "b") = 2.5.
    let mut b_half = WeightedAutomaton::new(2);
    b_half.add_arc(0, 1, 2, w(0.5));
    b_half.set_initial(0, w(0.0));
    b_half.set_final(1, w(0.0));
    b_half.widen_alphabet([1, 2]);
    let (d, _) = edit_distance(&[1, 2, 1], &b_half, &costs, DisciplineChoice::Auto).unwrap();
    assert_eq!(d, w(2.5));
}

#[test]
fn distance_is_the_min_of_weight_plus_string_distance_over_the_language() {
    let mut rng = ChaCha8Rng::seed_from_u64(58);
    let sigma = [1u32, 2, 3];
    for _ in 0..40 {
        let a = gen::acyclic_automaton(&mut rng, &sigma, 6, 4);
        let x = gen::random_string(&mut rng, &sigma, 6);
        let costs = lev(&sigma);
        let (got, _) = edit_distance(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        let mut want = TropicalWeight::INFINITY;
        for (y, &ay) in &enumerate_language(&a, 8).unwrap() {
            want = want.combine(ay.extend(dp_edit_distance(&x, y, &costs).distance));
        }
        assert_eq!(got, want);
    }
}

#[test]
fn disciplines_agree_with_the_full_product_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let sigma = [1u32, 2];
    let costs = lev(&sigma);
    for case in 0..40 {
        let cyclic = case % 2 == 1;
        let a = if cyclic {
            gen::cyclic_automaton(&mut rng, &sigma, 6, 12, 5)
        } else {
            gen::acyclic_automaton(&mut rng, &sigma, 6, 5)
        };
        let x = gen::random_string(&mut rng, &sigma, 5);
        let want = full_lattice_reference(&x, &a, &costs).unwrap();
        for choice in [
            DisciplineChoice::Auto,
            DisciplineChoice::ShortestFirst,
            DisciplineChoice::BackEdge,
        ] {
            let (got, _) = edit_distance(&x, &a, &costs, choice).unwrap();
            assert_eq!(got, want, "case {case} {choice:?}");
        }
        let topo = edit_distance(&x, &a, &costs, DisciplineChoice::Topological);
        if cyclic {
            assert!(matches!(topo, Err(Error::Cyclic)));
        } else {
            assert_eq!(topo.unwrap().0, want);
        }
    }
}

#[test]
fn forward_plus_backward_is_the_distance_at_every_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let sigma = [1u32, 2];
    let costs = lev(&sigma);
    for case in 0..25 {
        let a = if case % 2 == 0 {
            gen::acyclic_automaton(&mut rng, &sigma, 5, 3)
        } else {
            gen::cyclic_automaton(&mut rng, &sigma, 5, 10, 3)
        };
        let x = gen::random_string(&mut rng, &sigma, 5);
        let (d, _) = edit_distance(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        for i0 in 0..=x.len() {
            let fwd = level_distances(&x, &a, &costs, DisciplineChoice::Auto, i0, SweepDirection::Forward)
                .unwrap();
            let bwd = level_distances(&x, &a, &costs, DisciplineChoice::Auto, i0, SweepDirection::Backward)
                .unwrap();
            let mut best = TropicalWeight::INFINITY;
            for j in 0..a.num_states() {
                best = best.combine(fwd.values[j].extend(bwd.values[j]));
            }
            assert_eq!(best, d, "level {i0}");
        }
    }
}

#[test]
fn backward_values_are_suffix_distances_in_the_full_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let sigma = [1u32, 2];
    let costs = lev(&sigma);
    for _ in 0..20 {
        let a = gen::cyclic_automaton(&mut rng, &sigma, 4, 8, 3);
        let x = gen::random_string(&mut rng, &sigma, 4);
        let lattice = EditLattice::new(&x, &a, &costs).unwrap();
        let nq = a.num_states();

        // Reverse every lattice arc and run from the accepting states.
        let mut rev = FlatGraph::new(lattice.num_states());
        for level in 0..lattice.num_levels() {
            lattice
                .for_each_band_arc(level, |forward, arc| {
                    let src = lattice.state_id(LatticeState { level, a_state: arc.from });
                    let to_level = if forward { level + 1 } else { level };
                    let dst = lattice.state_id(LatticeState { level: to_level, a_state: arc.to });
                    rev.add_arc(dst, src, arc.weight);
                })
                .unwrap();
        }
        let sources: Vec<_> = a
            .finals()
            .iter()
            .map(|(&j, &rho)| (lattice.state_id(LatticeState { level: x.len(), a_state: j }), rho))
            .collect();
        let to_accept = bellman_ford(&rev, &sources);

        for level in 0..=x.len() {
            let bwd =
                level_distances(&x, &a, &costs, DisciplineChoice::Auto, level, SweepDirection::Backward)
                    .unwrap();
            for j in 0..nq {
                let id = lattice.state_id(LatticeState { level, a_state: j });
                assert_eq!(bwd.values[j], to_accept[id], "level {level} state {j}");
            }
        }
    }
}

#[test]
fn level_major_topological_order_is_topological_on_the_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let sigma = [1u32, 2];
    let costs = lev(&sigma);
    for _ in 0..20 {
        let a = gen::acyclic_automaton(&mut rng, &sigma, 6, 3);
        let x = gen::random_string(&mut rng, &sigma, 4);
        let order = a.topological_order().unwrap();
        let mut pos = vec![0usize; a.num_states()];
        for (i, &q) in order.iter().enumerate() {
            pos[q] = i;
        }
        let lattice = EditLattice::new(&x, &a, &costs).unwrap();
        for level in 0..lattice.num_levels() {
            lattice
                .for_each_band_arc(level, |forward, arc| {
                    let src_key = (level, pos[arc.from]);
                    let dst_key = (if forward { level + 1 } else { level }, pos[arc.to]);
                    assert!(src_key < dst_key, "arc not forward: {src_key:?} -> {dst_key:?}");
                })
                .unwrap();
        }
    }
}

#[test]
fn residency_respects_the_two_band_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let sigma = [1u32, 2];
    let costs = lev(&sigma);
    for case in 0..30 {
        let a = if case % 2 == 0 {
            gen::acyclic_automaton(&mut rng, &sigma, 7, 4)
        } else {
            gen::cyclic_automaton(&mut rng, &sigma, 6, 12, 4)
        };
        let x = gen::random_string(&mut rng, &sigma, 8);
        let (_, stats) = edit_distance(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        let nq = a.num_states();
        let ne = a.num_arcs();
        assert!(stats.peak_resident_states <= 2 * nq, "{stats:?}");
        assert!(stats.peak_resident_arcs <= 2 * (2 * ne + nq), "{stats:?}");
    }
}

#[test]
fn empty_language_gives_an_infinite_distance() {
    let mut a = WeightedAutomaton::new(2);
    a.add_arc(0, 1, 1, w(0.0));
    a.set_initial(0, w(0.0));
    // no final state at all
    let costs = lev(&[1]);
    let (d, _) = edit_distance(&[1, 1], &a, &costs, DisciplineChoice::Auto).unwrap();
    assert!(d.is_infinite());
}

#[test]
fn asking_for_a_level_past_the_string_is_an_error() {
    let a = ab_or_ba();
    let costs = lev(&[1, 2]);
    let got = level_distances(&[1], &a, &costs, DisciplineChoice::Auto, 2, SweepDirection::Forward);
    assert!(matches!(got, Err(Error::LevelOutOfRange { level: 2, max: 1 })));
}
