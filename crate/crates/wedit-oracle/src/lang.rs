//! Brute-force language enumeration by breadth over string length. Weight of
//! a string is the min over all accepting paths spelling it, which is exactly
//! the evaluation semantics, computed here without any per-string DP sharing.

use std::collections::BTreeMap;

use wedit::{
    Error, Label, Result, StateId, TropicalWeight, WeightedAutomaton, WeightedTransducer, EPSILON,
};

const BUDGET: usize = 400_000;

/// Every string of length at most `max_len` with finite weight, mapped to that
/// weight. Fails with [`Error::Budget`] when the frontier explodes.
pub fn enumerate_language(
    a: &WeightedAutomaton,
    max_len: usize,
) -> Result<BTreeMap<Vec<Label>, TropicalWeight>> {
    let mut spent = 0usize;
    let mut out: BTreeMap<Vec<Label>, TropicalWeight> = BTreeMap::new();
    let mut frontier: BTreeMap<Vec<Label>, BTreeMap<StateId, TropicalWeight>> = BTreeMap::new();
    if !a.initial().is_empty() {
        frontier.insert(Vec::new(), a.initial().clone());
    }
    for len in 0..=max_len {
        for (s, states) in &frontier {
            for (&q, &w) in states {
                spent += 1;
                if spent > BUDGET {
                    return Err(Error::Budget);
                }
                let accepted = w.extend(a.final_weight(q));
                if accepted.is_finite() {
                    let slot = out.entry(s.clone()).or_insert(TropicalWeight::INFINITY);
                    *slot = slot.combine(accepted);
                }
            }
        }
        if len == max_len {
            break;
        }
        let mut next: BTreeMap<Vec<Label>, BTreeMap<StateId, TropicalWeight>> = BTreeMap::new();
        for (s, states) in &frontier {
            for (&q, &w) in states {
                for arc in a.arcs_from(q) {
                    spent += 1;
                    if spent > BUDGET {
                        return Err(Error::Budget);
                    }
                    let mut s2 = Vec::with_capacity(s.len() + 1);
                    s2.extend_from_slice(s);
                    s2.push(arc.label);
                    let slot = next
                        .entry(s2)
                        .or_default()
                        .entry(arc.dst)
                        .or_insert(TropicalWeight::INFINITY);
                    *slot = slot.combine(w.extend(arc.weight));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// An input string paired with an output string.
pub type PairKey = (Vec<Label>, Vec<Label>);

/// Every (input, output) pair reachable within `max_steps` transitions, with
/// its min accepting weight. Epsilon labels contribute nothing to the strings.
pub fn enumerate_transducer(
    t: &WeightedTransducer,
    max_steps: usize,
) -> Result<BTreeMap<PairKey, TropicalWeight>> {
    let mut spent = 0usize;
    let mut out: BTreeMap<PairKey, TropicalWeight> = BTreeMap::new();
    let mut frontier: BTreeMap<PairKey, BTreeMap<StateId, TropicalWeight>> = BTreeMap::new();
    if !t.initial().is_empty() {
        frontier.insert((Vec::new(), Vec::new()), t.initial().clone());
    }
    for step in 0..=max_steps {
        for (pair, states) in &frontier {
            for (&q, &w) in states {
                spent += 1;
                if spent > BUDGET {
                    return Err(Error::Budget);
                }
                let accepted = w.extend(t.final_weight(q));
                if accepted.is_finite() {
                    let slot = out.entry(pair.clone()).or_insert(TropicalWeight::INFINITY);
                    *slot = slot.combine(accepted);
                }
            }
        }
        if step == max_steps {
            break;
        }
        let mut next: BTreeMap<PairKey, BTreeMap<StateId, TropicalWeight>> = BTreeMap::new();
        for ((xs, ys), states) in &frontier {
            for (&q, &w) in states {
                for tr in t.transitions_from(q) {
                    spent += 1;
                    if spent > BUDGET {
                        return Err(Error::Budget);
                    }
                    let mut xs2 = xs.clone();
                    let mut ys2 = ys.clone();
                    if tr.ilabel != EPSILON {
                        xs2.push(tr.ilabel);
                    }
                    if tr.olabel != EPSILON {
                        ys2.push(tr.olabel);
                    }
                    let slot = next
                        .entry((xs2, ys2))
                        .or_default()
                        .entry(tr.dst)
                        .or_insert(TropicalWeight::INFINITY);
                    *slot = slot.combine(w.extend(tr.weight));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(out)
}
