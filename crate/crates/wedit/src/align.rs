//! Optimal alignment in linear space by divide and conquer.
//!
//! A forward band sweep of the left half and a backward band sweep of the
//! right half meet at the cut level; their pointwise sum is minimized by some
//! automaton state that an optimal alignment passes through. Pinning that
//! state (with zero entry and exit weight, so nothing is counted twice)
//! splits the problem into two independent halves. Segments of length at most
//! one are solved directly on a two-band lattice with backpointers.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::automata::{Label, StateId, WeightedAutomaton};
use crate::distance::{banded_sweep, level_distances, resolve_underlying, DisciplineChoice};
use crate::distance::SweepDirection;
use crate::edit::{Alignment, CostFunction, EditOp};
use crate::lattice::{EditLattice, LatticeState};
use crate::semiring::TropicalWeight;
use crate::shortest::QueueDiscipline;
use crate::{Error, Result};

/// An automaton state some optimal alignment visits after consuming
/// `level` symbols of the string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Midpoint {
    pub level: usize,
    pub a_state: StateId,
    pub distance: TropicalWeight,
}

/// Finds a midpoint at the middle level `|x| / 2` from one forward and one
/// backward band sweep. Ties prefer the smallest state id.
pub fn midpoint(
    x: &[Label],
    automaton: &WeightedAutomaton,
    costs: &CostFunction,
    discipline: DisciplineChoice,
) -> Result<Midpoint> {
    let i0 = x.len() / 2;
    let fw = level_distances(x, automaton, costs, discipline, i0, SweepDirection::Forward)?;
    let bw = level_distances(x, automaton, costs, discipline, i0, SweepDirection::Backward)?;
    match argmin_sum(&fw.values, &bw.values) {
        Some((j, d)) => Ok(Midpoint { level: i0, a_state: j, distance: d }),
        None => Err(Error::Unreachable),
    }
}

fn argmin_sum(
    fw: &[TropicalWeight],
    bw: &[TropicalWeight],
) -> Option<(StateId, TropicalWeight)> {
    let mut best: Option<(StateId, TropicalWeight)> = None;
    for (j, (&f, &b)) in fw.iter().zip(bw).enumerate() {
        let d = f.extend(b);
        if d.is_finite() && best.is_none_or(|(_, bd)| d < bd) {
            best = Some((j, d));
        }
    }
    best
}

/// An optimal alignment together with its cost and the accepted string it
/// spells on the automaton side.
#[derive(Clone, Debug)]
pub struct AlignmentResult {
    pub alignment: Alignment,
    pub total: TropicalWeight,
    pub output: Vec<Label>,
}

/// Resource counters for one alignment computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlignmentStats {
    /// Deepest recursion reached (1 for direct solves).
    pub depth: usize,
    pub peak_resident_states: usize,
    pub peak_resident_arcs: usize,
}

impl AlignmentStats {
    fn observe(&mut self, states: usize, arcs: usize) {
        self.peak_resident_states = self.peak_resident_states.max(states);
        self.peak_resident_arcs = self.peak_resident_arcs.max(arcs);
    }
}

pub fn optimal_alignment(
    x: &[Label],
    automaton: &WeightedAutomaton,
    costs: &CostFunction,
    discipline: DisciplineChoice,
) -> Result<AlignmentResult> {
    optimal_alignment_with_stats(x, automaton, costs, discipline).map(|(r, _)| r)
}

pub fn optimal_alignment_with_stats(
    x: &[Label],
    automaton: &WeightedAutomaton,
    costs: &CostFunction,
    discipline: DisciplineChoice,
) -> Result<(AlignmentResult, AlignmentStats)> {
    let mut aligner = Aligner::new(x, automaton, costs, discipline)?;
    let mut ops: Vec<EditOp> = Vec::new();
    let total = aligner.solve(0, x.len(), automaton.initial(), automaton.finals(), 1, &mut ops)?;
    if total.is_infinite() {
        return Err(Error::Unreachable);
    }
    let alignment = Alignment::from_ops(ops);
    let (_, output) = alignment.project();
    Ok((AlignmentResult { alignment, total, output }, aligner.stats))
}

struct Aligner<'a> {
    x: &'a [Label],
    a: &'a WeightedAutomaton,
    mirrored: WeightedAutomaton,
    costs: &'a CostFunction,
    fwd: QueueDiscipline,
    bwd: QueueDiscipline,
    stats: AlignmentStats,
}

impl<'a> Aligner<'a> {
    fn new(
        x: &'a [Label],
        a: &'a WeightedAutomaton,
        costs: &'a CostFunction,
        discipline: DisciplineChoice,
    ) -> Result<Self> {
        // Validate inputs once; segment lattices then cannot fail.
        EditLattice::new(x, a, costs)?;
        let mirrored = a.mirror();
        let fwd = resolve_underlying(a, discipline)?;
        let bwd = resolve_underlying(&mirrored, discipline)?;
        Ok(Aligner { x, a, mirrored, costs, fwd, bwd, stats: AlignmentStats::default() })
    }

    /// Aligns `x[lo..hi]` between the weighted state sets `entry` and `exit`,
    /// appending the chosen operations to `out`.
    fn solve(
        &mut self,
        lo: usize,
        hi: usize,
        entry: &BTreeMap<StateId, TropicalWeight>,
        exit: &BTreeMap<StateId, TropicalWeight>,
        depth: usize,
        out: &mut Vec<EditOp>,
    ) -> Result<TropicalWeight> {
        self.stats.depth = self.stats.depth.max(depth);
        if hi - lo <= 1 {
            return self.solve_base(lo, hi, entry, exit, out);
        }
        let mid = lo + (hi - lo) / 2;

        let fw_lattice = EditLattice::new(&self.x[lo..mid], self.a, self.costs)?;
        let (fw, fw_stats) = banded_sweep(&fw_lattice, Some(entry), &self.fwd, mid - lo)?;
        self.stats.observe(fw_stats.peak_resident_states, fw_stats.peak_resident_arcs);

        let rev: Vec<Label> = self.x[mid..hi].iter().rev().copied().collect();
        let bw_lattice = EditLattice::new(&rev, &self.mirrored, self.costs)?;
        let (bw, bw_stats) = banded_sweep(&bw_lattice, Some(exit), &self.bwd, hi - mid)?;
        self.stats.observe(bw_stats.peak_resident_states, bw_stats.peak_resident_arcs);

        let (j0, total) = argmin_sum(&fw, &bw).ok_or(Error::Unreachable)?;
        let cut = BTreeMap::from([(j0, TropicalWeight::one())]);
        self.solve(lo, mid, entry, &cut, depth + 1, out)?;
        self.solve(mid, hi, &cut, exit, depth + 1, out)?;
        Ok(total)
    }

    /// Direct solve on a fully materialized lattice of at most two levels.
    fn solve_base(
        &mut self,
        lo: usize,
        hi: usize,
        entry: &BTreeMap<StateId, TropicalWeight>,
        exit: &BTreeMap<StateId, TropicalWeight>,
        out: &mut Vec<EditOp>,
    ) -> Result<TropicalWeight> {
        let xs = &self.x[lo..hi];
        let lattice = EditLattice::new(xs, self.a, self.costs)?;
        let n = lattice.states_per_level();
        let states = lattice.num_states();

        let mut adj: Vec<Vec<(StateId, TropicalWeight, EditOp)>> = vec![Vec::new(); states];
        let mut num_arcs = 0usize;
        for level in 0..lattice.num_levels() {
            lattice.for_each_band_arc(level, |forward, arc| {
                let from = level * n + arc.from;
                let to_level = if forward { level + 1 } else { level };
                let to = to_level * n + arc.to;
                adj[from].push((to, arc.weight, arc.op));
                num_arcs += 1;
            })?;
        }
        // Backpointer ties resolve by relaxation order: substitutions first,
        // then deletions, then insertions.
        for arcs in &mut adj {
            arcs.sort_by_key(|&(_, _, op)| op_rank(op));
        }
        self.stats.observe(states, num_arcs);

        let mut dist = vec![TropicalWeight::INFINITY; states];
        let mut back: Vec<Option<(StateId, EditOp)>> = vec![None; states];
        let mut heap: BinaryHeap<Reverse<(TropicalWeight, StateId)>> = BinaryHeap::new();
        for (&j, &w) in entry {
            if w.is_finite() {
                let q = lattice.state_id(LatticeState { level: 0, a_state: j });
                dist[q] = w;
                heap.push(Reverse((w, q)));
            }
        }
        while let Some(Reverse((w, q))) = heap.pop() {
            if w != dist[q] {
                continue;
            }
            for &(to, aw, op) in &adj[q] {
                let nd = w.extend(aw);
                if nd < dist[to] {
                    dist[to] = nd;
                    back[to] = Some((q, op));
                    heap.push(Reverse((nd, to)));
                }
            }
        }

        let mut best: Option<(StateId, TropicalWeight)> = None;
        for (&j, &w) in exit {
            let q = lattice.state_id(LatticeState { level: xs.len(), a_state: j });
            let d = dist[q].extend(w);
            if d.is_finite() && best.is_none_or(|(_, bd)| d < bd) {
                best = Some((q, d));
            }
        }
        let Some((goal, total)) = best else {
            return Ok(TropicalWeight::INFINITY);
        };

        let mut rev_ops: Vec<EditOp> = Vec::new();
        let mut q = goal;
        while let Some((prev, op)) = back[q] {
            rev_ops.push(op);
            q = prev;
        }
        out.extend(rev_ops.into_iter().rev());
        Ok(total)
    }
}

fn op_rank(op: EditOp) -> u8 {
    if op.is_substitution() {
        0
    } else if op.is_deletion() {
        1
    } else {
        2
    }
}
