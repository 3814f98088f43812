//! Eager reference implementations: Bellman-Ford relaxation, the fully
//! materialized product graph, and a naive epsilon-aware composition. None of
//! them share code with the banded machinery they are used to check.

use wedit::{
    CostFunction, Error, FlatGraph, Label, Result, StateId, TropicalWeight, WeightedAutomaton,
    WeightedTransducer, EPSILON,
};

/// Round-based relaxation until a fixpoint; correct on any nonnegative graph,
/// cyclic or not, at quadratic cost.
pub fn bellman_ford(graph: &FlatGraph, sources: &[(StateId, TropicalWeight)]) -> Vec<TropicalWeight> {
    let n = graph.num_states();
    let mut d = vec![TropicalWeight::INFINITY; n];
    for &(s, w) in sources {
        d[s] = d[s].combine(w);
    }
    for _ in 0..n {
        let mut changed = false;
        for q in 0..n {
            if !d[q].is_finite() {
                continue;
            }
            for &(to, w) in graph.arcs_from(q) {
                let via = d[q].extend(w);
                if via < d[to] {
                    d[to] = via;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d
}

const MAX_PRODUCT_STATES: usize = 2_000_000;

/// Edit distance through the whole product graph at once: build every level
/// eagerly from the defining arc rules, then run Bellman-Ford over it.
pub fn full_lattice_reference(
    x: &[Label],
    a: &WeightedAutomaton,
    costs: &CostFunction,
) -> Result<TropicalWeight> {
    if a.has_epsilon() {
        return Err(Error::EpsilonArc { context: "reference product" });
    }
    let nq = a.num_states();
    let levels = x.len() + 1;
    if levels.saturating_mul(nq) > MAX_PRODUCT_STATES {
        return Err(Error::Budget);
    }
    let mut g = FlatGraph::new(levels * nq);
    for i in 0..levels {
        for arc in a.arcs() {
            let w = costs.cost(EPSILON, arc.label)?.extend(arc.weight);
            g.add_arc(i * nq + arc.src, i * nq + arc.dst, w);
        }
        if i < x.len() {
            for arc in a.arcs() {
                let w = costs.cost(x[i], arc.label)?.extend(arc.weight);
                g.add_arc(i * nq + arc.src, (i + 1) * nq + arc.dst, w);
            }
            let del = costs.cost(x[i], EPSILON)?;
            for j in 0..nq {
                g.add_arc(i * nq + j, (i + 1) * nq + j, del);
            }
        }
    }
    let sources: Vec<(StateId, TropicalWeight)> =
        a.initial().iter().map(|(&q, &w)| (q, w)).collect();
    let d = bellman_ford(&g, &sources);
    let mut best = TropicalWeight::INFINITY;
    for (&q, &rho) in a.finals() {
        best = best.combine(d[x.len() * nq + q].extend(rho));
    }
    Ok(best)
}

/// Pair construction over the complete state product, with the permissive
/// epsilon rules: matching non-epsilon labels advance both sides, an epsilon
/// output advances the left side alone, an epsilon input the right side alone.
/// No filter states; min-idempotency keeps duplicated epsilon paths harmless.
pub fn compose_epsilon_full(
    t1: &WeightedTransducer,
    t2: &WeightedTransducer,
) -> WeightedTransducer {
    let n1 = t1.num_states();
    let n2 = t2.num_states();
    let id = |q1: StateId, q2: StateId| q1 * n2 + q2;
    let mut out = WeightedTransducer::new(n1 * n2);
    for q1 in 0..n1 {
        for q2 in 0..n2 {
            for e1 in t1.transitions_from(q1) {
                if e1.olabel == EPSILON {
                    out.add_transition(id(q1, q2), id(e1.dst, q2), e1.ilabel, EPSILON, e1.weight);
                } else {
                    for e2 in t2.transitions_from(q2) {
                        if e2.ilabel == e1.olabel {
                            out.add_transition(
                                id(q1, q2),
                                id(e1.dst, e2.dst),
                                e1.ilabel,
                                e2.olabel,
                                e1.weight.extend(e2.weight),
                            );
                        }
                    }
                }
            }
            for e2 in t2.transitions_from(q2) {
                if e2.ilabel == EPSILON {
                    out.add_transition(id(q1, q2), id(q1, e2.dst), EPSILON, e2.olabel, e2.weight);
                }
            }
        }
    }
    for (&q1, &w1) in t1.initial() {
        for (&q2, &w2) in t2.initial() {
            out.set_initial(id(q1, q2), w1.extend(w2));
        }
    }
    for (&q1, &w1) in t1.finals() {
        for (&q2, &w2) in t2.finals() {
            out.set_final(id(q1, q2), w1.extend(w2));
        }
    }
    out
}
