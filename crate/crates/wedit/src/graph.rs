//! Graph-shape utilities on automata: topological orders and back-edge
//! marking. Both ignore labels and weights entirely.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::automata::{StateId, WeightedAutomaton};
use crate::{Error, Result};

/// Result of a deterministic depth-first sweep over an automaton.
///
/// `back_edges` holds arc indices whose removal leaves the graph acyclic;
/// `dfs_order` is the reverse postorder of the sweep, which is a topological
/// order of the remaining graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackEdgeMarking {
    pub back_edges: BTreeSet<usize>,
    pub dfs_order: Vec<StateId>,
}

impl BackEdgeMarking {
    /// Position of each state in `dfs_order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.dfs_order.len()];
        for (i, &q) in self.dfs_order.iter().enumerate() {
            pos[q] = i;
        }
        pos
    }
}

impl WeightedAutomaton {
    /// Kahn's algorithm with an ascending-id tie break. Every arc goes forward
    /// in the returned order; cyclic machines are an error.
    pub fn topological_order(&self) -> Result<Vec<StateId>> {
        let n = self.num_states();
        let mut indegree = vec![0usize; n];
        for arc in self.arcs() {
            indegree[arc.dst] += 1;
        }
        let mut ready: BinaryHeap<Reverse<StateId>> = (0..n)
            .filter(|&q| indegree[q] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(q)) = ready.pop() {
            order.push(q);
            for arc in self.arcs_from(q) {
                indegree[arc.dst] -= 1;
                if indegree[arc.dst] == 0 {
                    ready.push(Reverse(arc.dst));
                }
            }
        }
        if order.len() < n {
            return Err(Error::Cyclic);
        }
        Ok(order)
    }

    /// Deterministic DFS classification of arcs: roots are the initial states
    /// in ascending id order, then all remaining states in ascending id order;
    /// children follow the stored arc order. An arc is a back edge iff its
    /// target is on the active DFS stack (self-loops included).
    pub fn mark_back_edges(&self) -> BackEdgeMarking {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let n = self.num_states();
        let mut color = vec![Color::White; n];
        let mut back_edges = BTreeSet::new();
        let mut postorder = Vec::with_capacity(n);

        let mut roots: Vec<StateId> = self.initial().keys().copied().collect();
        roots.extend(0..n);

        // Iterative DFS: each frame is (state, index into its arc list).
        let mut stack: Vec<(StateId, usize)> = Vec::new();
        for root in roots {
            if color[root] != Color::White {
                continue;
            }
            color[root] = Color::Gray;
            stack.push((root, 0));
            while let Some(top) = stack.last_mut() {
                let q = top.0;
                let arc_ids = self.arc_ids_from(q);
                if top.1 < arc_ids.len() {
                    let arc_id = arc_ids[top.1] as usize;
                    top.1 += 1;
                    let dst = self.arcs()[arc_id].dst;
                    match color[dst] {
                        Color::White => {
                            color[dst] = Color::Gray;
                            stack.push((dst, 0));
                        }
                        Color::Gray => {
                            back_edges.insert(arc_id);
                        }
                        Color::Black => {}
                    }
                } else {
                    color[q] = Color::Black;
                    postorder.push(q);
                    stack.pop();
                }
            }
        }
        postorder.reverse();
        BackEdgeMarking { back_edges, dfs_order: postorder }
    }
}
