//! Seeded random instances for the test suites. Weights are small integers so
//! every comparison in the checks is exact.

use rand::Rng;
use wedit::{Label, TropicalWeight, WeightedAutomaton};

fn int_weight(rng: &mut impl Rng, max: u32) -> TropicalWeight {
    TropicalWeight::new(rng.gen_range(0..=max) as f64)
}

fn pick(rng: &mut impl Rng, alphabet: &[Label]) -> Label {
    alphabet[rng.gen_range(0..alphabet.len())]
}

pub fn random_string(rng: &mut impl Rng, alphabet: &[Label], max_len: usize) -> Vec<Label> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| pick(rng, alphabet)).collect()
}

/// Random acyclic automaton with a guaranteed nonempty language: a forward
/// spine 0..n-1 plus extra forward arcs. Integer weights up to `max_weight`.
pub fn acyclic_automaton(
    rng: &mut impl Rng,
    alphabet: &[Label],
    max_states: usize,
    max_weight: u32,
) -> WeightedAutomaton {
    let n = rng.gen_range(2..=max_states.max(2));
    let mut a = WeightedAutomaton::new(n);
    a.widen_alphabet(alphabet.iter().copied());
    for i in 0..n - 1 {
        a.add_arc(i, i + 1, pick(rng, alphabet), int_weight(rng, max_weight));
    }
    let extras = rng.gen_range(0..=n);
    for _ in 0..extras {
        let src = rng.gen_range(0..n - 1);
        let dst = rng.gen_range(src + 1..n);
        a.add_arc(src, dst, pick(rng, alphabet), int_weight(rng, max_weight));
    }
    a.set_initial(0, int_weight(rng, max_weight));
    a.set_final(n - 1, int_weight(rng, max_weight));
    for q in 0..n - 1 {
        if rng.gen_bool(0.2) {
            a.set_final(q, int_weight(rng, max_weight));
        }
    }
    a
}

/// Random automaton containing at least one cycle, at most `max_arcs` arcs.
pub fn cyclic_automaton(
    rng: &mut impl Rng,
    alphabet: &[Label],
    max_states: usize,
    max_arcs: usize,
    max_weight: u32,
) -> WeightedAutomaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut a = WeightedAutomaton::new(n);
    a.widen_alphabet(alphabet.iter().copied());
    for i in 0..n - 1 {
        a.add_arc(i, i + 1, pick(rng, alphabet), int_weight(rng, max_weight));
    }
    let back_src = rng.gen_range(0..n);
    let back_dst = rng.gen_range(0..=back_src);
    a.add_arc(back_src, back_dst, pick(rng, alphabet), int_weight(rng, max_weight));
    while a.num_arcs() < max_arcs && rng.gen_bool(0.6) {
        let src = rng.gen_range(0..n);
        let dst = rng.gen_range(0..n);
        a.add_arc(src, dst, pick(rng, alphabet), int_weight(rng, max_weight));
    }
    a.set_initial(0, int_weight(rng, max_weight));
    a.set_final(rng.gen_range(0..n), int_weight(rng, max_weight));
    for q in 0..n {
        if rng.gen_bool(0.15) {
            a.set_final(q, int_weight(rng, max_weight));
        }
    }
    a
}
