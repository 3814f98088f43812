//! Acceptance checks. Each test prints exactly one PASS/FAIL line (visible
//! under `--nocapture`) and then asserts, so the suite doubles as a report.
//!
//! Every comparison marked exact uses `==` on tropical weights; instance
//! weights are small integers, so float arithmetic introduces no error.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wedit::{
    edit_distance, level_distances, optimal_alignment_with_stats, CostFunction, DisciplineChoice,
    Label, SweepDirection, TropicalWeight, WeightedAutomaton,
};
use wedit_oracle::{dp_edit_distance, enumerate_language, full_lattice_reference, gen};

const SIGMA: [Label; 3] = [1, 2, 3];

fn lev() -> CostFunction {
    CostFunction::levenshtein(SIGMA)
}

fn report(number: u32, name: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance criterion {number:02} [{name}]: {verdict}");
    assert!(failures.is_empty(), "criterion {number} failed:\n{}", failures.join("\n"));
}

/// Criterion 1 instances: 200 string pairs, lengths up to 12 over 3 symbols.
fn string_pairs() -> Vec<(Vec<Label>, Vec<Label>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    (0..200)
        .map(|_| {
            (gen::random_string(&mut rng, &SIGMA, 12), gen::random_string(&mut rng, &SIGMA, 12))
        })
        .collect()
}

/// Criterion 2 instances: 100 acyclic automata (≤ 8 states, weights ≤ 5)
/// with strings up to length 8.
fn acyclic_instances() -> Vec<(Vec<Label>, WeightedAutomaton)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    (0..100)
        .map(|_| {
            let a = gen::acyclic_automaton(&mut rng, &SIGMA, 8, 5);
            let x = gen::random_string(&mut rng, &SIGMA, 8);
            (x, a)
        })
        .collect()
}

/// Criterion 3 instances: 100 cyclic automata (≤ 6 states, ≤ 12 arcs).
fn cyclic_instances() -> Vec<(Vec<Label>, WeightedAutomaton)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    (0..100)
        .map(|_| {
            let a = gen::cyclic_automaton(&mut rng, &SIGMA, 6, 12, 5);
            let x = gen::random_string(&mut rng, &SIGMA, 8);
            (x, a)
        })
        .collect()
}

#[test]
fn criterion_01_string_oracle_equality() {
    let costs = lev();
    let mut failures = Vec::new();
    let start = Instant::now();
    for (i, (x, y)) in string_pairs().iter().enumerate() {
        let a = {
            let mut a = WeightedAutomaton::from_string(y);
            a.widen_alphabet(SIGMA);
            a
        };
        let (got, _) = edit_distance(x, &a, &costs, DisciplineChoice::Auto).unwrap();
        let want = dp_edit_distance(x, y, &costs).distance;
        if got != want {
            failures.push(format!("pair {i}: got {got}, dp says {want}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 1.0 {
        failures.push(format!("took {elapsed:?}, budget is 1 s"));
    }
    report(1, "string-oracle equality", &failures);
}

#[test]
fn criterion_02_language_oracle_equality() {
    let costs = lev();
    let mut failures = Vec::new();
    for (i, (x, a)) in acyclic_instances().iter().enumerate() {
        let (got, _) = edit_distance(x, a, &costs, DisciplineChoice::Auto).unwrap();
        let mut want = TropicalWeight::INFINITY;
        for (y, &ay) in &enumerate_language(a, 10).unwrap() {
            want = want.combine(ay.extend(dp_edit_distance(x, y, &costs).distance));
        }
        if got != want {
            failures.push(format!("instance {i}: got {got}, language oracle says {want}"));
        }
    }
    report(2, "language-oracle equality", &failures);
}

#[test]
fn criterion_03_cyclic_correctness() {
    let costs = lev();
    let mut failures = Vec::new();
    for (i, (x, a)) in cyclic_instances().iter().enumerate() {
        let (got, _) = edit_distance(x, a, &costs, DisciplineChoice::ShortestFirst).unwrap();
        let want = full_lattice_reference(x, a, &costs).unwrap();
        if got != want {
            failures.push(format!("instance {i}: got {got}, full product says {want}"));
        }
    }
    report(3, "cyclic correctness", &failures);
}

#[test]
fn criterion_04_linear_space_bound() {
    let costs = lev();
    let mut failures = Vec::new();
    let mut check = |tag: &str, x: &[Label], a: &WeightedAutomaton, choice: DisciplineChoice| {
        let (_, stats) = edit_distance(x, a, &costs, choice).unwrap();
        let state_cap = 2 * a.num_states();
        let arc_cap = 2 * (2 * a.num_arcs() + a.num_states());
        if stats.peak_resident_states > state_cap {
            failures.push(format!(
                "{tag}: {} resident states, cap {state_cap}",
                stats.peak_resident_states
            ));
        }
        if stats.peak_resident_arcs > arc_cap {
            failures.push(format!(
                "{tag}: {} resident arcs, cap {arc_cap}",
                stats.peak_resident_arcs
            ));
        }
    };
    for (i, (x, y)) in string_pairs().iter().enumerate() {
        let mut a = WeightedAutomaton::from_string(y);
        a.widen_alphabet(SIGMA);
        check(&format!("suite 1 pair {i}"), x, &a, DisciplineChoice::Auto);
    }
    for (i, (x, a)) in acyclic_instances().iter().enumerate() {
        check(&format!("suite 2 instance {i}"), x, a, DisciplineChoice::Auto);
    }
    for (i, (x, a)) in cyclic_instances().iter().enumerate() {
        check(&format!("suite 3 instance {i}"), x, a, DisciplineChoice::ShortestFirst);
    }
    report(4, "linear-space bound", &failures);
}

#[test]
fn criterion_05_topological_single_dequeue() {
    let costs = lev();
    let mut failures = Vec::new();
    let mut check = |tag: &str, x: &[Label], a: &WeightedAutomaton| {
        let (_, stats) = edit_distance(x, a, &costs, DisciplineChoice::Topological).unwrap();
        if stats.max_dequeues() > 1 {
            failures.push(format!("{tag}: a state was dequeued {} times", stats.max_dequeues()));
        }
    };
    for (i, (x, y)) in string_pairs().iter().enumerate() {
        let mut a = WeightedAutomaton::from_string(y);
        a.widen_alphabet(SIGMA);
        check(&format!("suite 1 pair {i}"), x, &a);
    }
    for (i, (x, a)) in acyclic_instances().iter().enumerate() {
        check(&format!("suite 2 instance {i}"), x, a);
    }
    report(5, "topological single dequeue", &failures);
}

/// Loop-connectedness of `a` under its own back-edge marking: the maximum
/// number of marked arcs on any simple path, by exhaustive path search.
fn loop_connectedness(a: &WeightedAutomaton) -> usize {
    let marking = a.mark_back_edges();
    let n = a.num_states();
    let mut best = 0;
    fn dfs(
        a: &WeightedAutomaton,
        back: &std::collections::BTreeSet<usize>,
        q: usize,
        visited: &mut Vec<bool>,
        crossed: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(crossed);
        for &arc_id in a.arc_ids_from(q) {
            let arc = a.arcs()[arc_id as usize];
            let cost = usize::from(back.contains(&(arc_id as usize)));
            if arc.dst == q {
                // A self-loop is a one-arc simple path.
                *best = (*best).max(crossed + cost);
                continue;
            }
            if !visited[arc.dst] {
                visited[arc.dst] = true;
                dfs(a, back, arc.dst, visited, crossed + cost, best);
                visited[arc.dst] = false;
            }
        }
    }
    for start in 0..n {
        let mut visited = vec![false; n];
        visited[start] = true;
        dfs(a, &marking.back_edges, start, &mut visited, 0, &mut best);
    }
    best
}

#[test]
fn criterion_06_loop_connectedness_bound() {
    let mut failures = Vec::new();

    // k = 0: an acyclic three-state machine.
    let mut k0 = WeightedAutomaton::from_string(&[1, 2, 1]);
    k0.add_arc(0, 2, 2, TropicalWeight::new(1.0));
    k0.widen_alphabet(SIGMA);

    // k = 1: a single self-loop, and a two-state cycle.
    let mut k1a = WeightedAutomaton::new(1);
    k1a.add_arc(0, 0, 1, TropicalWeight::new(0.5));
    k1a.set_initial(0, TropicalWeight::new(0.0));
    k1a.set_final(0, TropicalWeight::new(0.0));
    k1a.widen_alphabet(SIGMA);
    let mut k1b = WeightedAutomaton::new(2);
    k1b.add_arc(0, 1, 1, TropicalWeight::new(0.0));
    k1b.add_arc(1, 0, 2, TropicalWeight::new(0.0));
    k1b.set_initial(0, TropicalWeight::new(0.0));
    k1b.set_final(0, TropicalWeight::new(0.0));
    k1b.widen_alphabet(SIGMA);

    // k = 2: a chain with two independent back arcs.
    let mut k2 = WeightedAutomaton::new(3);
    k2.add_arc(0, 1, 1, TropicalWeight::new(0.0));
    k2.add_arc(1, 2, 2, TropicalWeight::new(0.0));
    k2.add_arc(2, 1, 1, TropicalWeight::new(1.0));
    k2.add_arc(1, 0, 2, TropicalWeight::new(1.0));
    k2.set_initial(0, TropicalWeight::new(0.0));
    k2.set_final(2, TropicalWeight::new(0.0));
    k2.widen_alphabet(SIGMA);

    // Expensive deletions steer optimal paths through the within-level cycles.
    let costs = CostFunction::levenshtein_with_overrides(
        SIGMA,
        &[(1, 0, 3.0), (2, 0, 3.0), (3, 0, 3.0)],
    )
    .unwrap();

    let families: [(usize, &str, &WeightedAutomaton); 4] =
        [(0, "acyclic", &k0), (1, "self-loop", &k1a), (1, "two-cycle", &k1b), (2, "chain+2 back", &k2)];
    let strings: [&[Label]; 3] = [&[1, 2, 1], &[2, 1], &[1, 2, 1, 2]];

    for (k, tag, a) in families {
        let measured = loop_connectedness(a);
        if measured != k {
            failures.push(format!("{tag}: constructed k = {k} but measured {measured}"));
        }
        for x in strings {
            let (got, stats) = edit_distance(x, a, &costs, DisciplineChoice::BackEdge).unwrap();
            if stats.max_dequeues() as usize > k + 1 {
                failures.push(format!(
                    "{tag}, |x|={}: N(q) reached {}, bound {}",
                    x.len(),
                    stats.max_dequeues(),
                    k + 1
                ));
            }
            let want = full_lattice_reference(x, a, &costs).unwrap();
            if got != want {
                failures.push(format!("{tag}, |x|={}: got {got}, reference {want}", x.len()));
            }
        }
    }
    report(6, "loop-connectedness bound", &failures);
}

#[test]
fn criterion_07_midpoint_identity() {
    let costs = lev();
    let mut failures = Vec::new();
    let mut check = |tag: &str, x: &[Label], a: &WeightedAutomaton| {
        let (d, _) = edit_distance(x, a, &costs, DisciplineChoice::Auto).unwrap();
        let i0 = x.len() / 2;
        let fwd =
            level_distances(x, a, &costs, DisciplineChoice::Auto, i0, SweepDirection::Forward)
                .unwrap();
        let bwd =
            level_distances(x, a, &costs, DisciplineChoice::Auto, i0, SweepDirection::Backward)
                .unwrap();
        let mut best = TropicalWeight::INFINITY;
        for j in 0..a.num_states() {
            best = best.combine(fwd.values[j].extend(bwd.values[j]));
        }
        if best != d {
            failures.push(format!("{tag}: split gives {best}, distance is {d}"));
        }
    };
    for (i, (x, y)) in string_pairs().iter().enumerate() {
        let mut a = WeightedAutomaton::from_string(y);
        a.widen_alphabet(SIGMA);
        check(&format!("suite 1 pair {i}"), x, &a);
    }
    for (i, (x, a)) in acyclic_instances().iter().enumerate() {
        check(&format!("suite 2 instance {i}"), x, a);
    }
    for (i, (x, a)) in cyclic_instances().iter().enumerate() {
        check(&format!("suite 3 instance {i}"), x, a);
    }
    report(7, "midpoint identity", &failures);
}

#[test]
fn criterion_08_alignment_optimality() {
    let costs = lev();
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut failures = Vec::new();
    for i in 0..100 {
        let a = if i % 2 == 0 {
            gen::acyclic_automaton(&mut rng, &SIGMA, 8, 5)
        } else {
            gen::cyclic_automaton(&mut rng, &SIGMA, 6, 12, 5)
        };
        let x = gen::random_string(&mut rng, &SIGMA, 10);
        let (r, stats) =
            optimal_alignment_with_stats(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        let (d, _) = edit_distance(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        if r.total != d {
            failures.push(format!("instance {i}: total {} vs distance {d}", r.total));
        }
        let (px, py) = r.alignment.project();
        if px != x || py != r.output {
            failures.push(format!("instance {i}: projections do not match the strings"));
        }
        let decomposed =
            a.weight_of(&r.output).unwrap().extend(costs.alignment_cost(&r.alignment).unwrap());
        if decomposed != r.total {
            failures.push(format!("instance {i}: A(y)+c(w) = {decomposed} vs {}", r.total));
        }
        let bound = (x.len().max(1) as f64).log2().ceil() as usize + 1;
        if stats.depth > bound {
            failures.push(format!("instance {i}: depth {} over bound {bound}", stats.depth));
        }
    }
    report(8, "alignment optimality", &failures);
}

#[test]
fn criterion_09_scaling_sanity() {
    let costs = lev();
    // A deterministic 1000-state DAG with some skip arcs.
    let n = 1000;
    let mut a = WeightedAutomaton::new(n);
    for i in 0..n - 1 {
        a.add_arc(i, i + 1, SIGMA[i % 3], TropicalWeight::new((i % 3) as f64));
        if i % 5 == 0 && i + 2 < n {
            a.add_arc(i, i + 2, SIGMA[(i + 1) % 3], TropicalWeight::new(1.0));
        }
    }
    a.set_initial(0, TropicalWeight::new(0.0));
    a.set_final(n - 1, TropicalWeight::new(0.0));
    a.widen_alphabet(SIGMA);

    let mut failures = Vec::new();
    let total = Instant::now();
    let mut timings = Vec::new();
    for len in [250usize, 500, 1000] {
        let x: Vec<Label> = (0..len).map(|i| SIGMA[(i * 5 + 1) % 3]).collect();
        let start = Instant::now();
        let (d, _) = edit_distance(&x, &a, &costs, DisciplineChoice::Auto).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        timings.push((len, elapsed, d));
    }
    for pair in timings.windows(2) {
        let (l0, t0, _) = pair[0];
        let (l1, t1, _) = pair[1];
        let ratio = t1 / t0.max(1e-9);
        println!(
            "criterion 09 timing: |x| {l0} -> {l1}: {:.3}s -> {:.3}s, ratio {ratio:.2} (soft cap 3)",
            t0, t1
        );
    }
    let elapsed = total.elapsed();
    if elapsed.as_secs_f64() >= 10.0 {
        failures.push(format!("total {elapsed:?} exceeds the 10 s budget"));
    }
    for (len, _, d) in &timings {
        if d.is_infinite() {
            failures.push(format!("|x| = {len}: infinite distance on a live instance"));
        }
    }
    report(9, "scaling sanity", &failures);
}

#[test]
fn criterion_10_two_path_acceptor_via_eval() {
    let mut fixture = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    fixture.push("tests/data/fig1b.fsa");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_wedit"))
        .args(["eval", "--string", "aab", "--automaton", fixture.to_str().unwrap()])
        .output()
        .expect("binary runs");
    let mut failures = Vec::new();
    if out.status.code() != Some(0) {
        failures.push(format!("exit code {:?}", out.status.code()));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    if text != "1.7\n" {
        failures.push(format!("stdout {text:?}, expected \"1.7\\n\""));
    }
    report(10, "two-path acceptor via eval", &failures);
}
