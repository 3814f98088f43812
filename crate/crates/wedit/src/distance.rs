//! Linear-space edit distance between a string and a weighted automaton.
//!
//! The edit lattice is swept level by level under a level-synchronized queue
//! discipline. Only two distance bands and two arc bands are ever resident:
//! entering level `l` materializes its arcs in place of band `l - 2`, and
//! rotates the distance window to `{l, l + 1}`, the only levels the remaining
//! relaxations can touch.

use std::collections::BTreeMap;

use crate::automata::{Label, StateId, WeightedAutomaton};
use crate::edit::CostFunction;
use crate::lattice::{EditLattice, LatticeState};
use crate::semiring::TropicalWeight;
use crate::shortest::{run_engine, DistanceStore, GraphView, QueueDiscipline, RunStats};
use crate::{Error, Result};

/// How to order states within a level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DisciplineChoice {
    /// Topological order when the automaton is acyclic, back-edge counting
    /// otherwise.
    #[default]
    Auto,
    /// Smallest tentative distance first.
    ShortestFirst,
    /// Topological order; fails on cyclic automata.
    Topological,
    /// Back-edge counting order.
    BackEdge,
}

pub(crate) fn resolve_underlying(
    a: &WeightedAutomaton,
    choice: DisciplineChoice,
) -> Result<QueueDiscipline> {
    match choice {
        DisciplineChoice::Auto => Ok(match a.topological_order() {
            Ok(order) => QueueDiscipline::Topological(order),
            Err(_) => QueueDiscipline::BackEdgeCount(a.mark_back_edges()),
        }),
        DisciplineChoice::ShortestFirst => Ok(QueueDiscipline::ShortestFirst),
        DisciplineChoice::Topological => Ok(QueueDiscipline::Topological(a.topological_order()?)),
        DisciplineChoice::BackEdge => Ok(QueueDiscipline::BackEdgeCount(a.mark_back_edges())),
    }
}

/// Distance storage for two adjacent lattice levels, keyed by parity.
struct BandedDistances {
    slots: [Vec<TropicalWeight>; 2],
    slot_level: [Option<usize>; 2],
    per_level: usize,
    max_level: usize,
}

impl BandedDistances {
    fn new(per_level: usize, max_level: usize) -> Self {
        BandedDistances {
            slots: [
                vec![TropicalWeight::INFINITY; per_level],
                vec![TropicalWeight::INFINITY; per_level],
            ],
            slot_level: [None, None],
            per_level,
            max_level,
        }
    }

    fn open(&mut self, level: usize) {
        let s = level % 2;
        if self.slot_level[s] != Some(level) {
            self.slots[s].fill(TropicalWeight::INFINITY);
            self.slot_level[s] = Some(level);
        }
    }

    fn band_values(&self, level: usize) -> Option<&[TropicalWeight]> {
        let s = level % 2;
        (self.slot_level[s] == Some(level)).then(|| self.slots[s].as_slice())
    }
}

impl DistanceStore for BandedDistances {
    fn get(&self, q: StateId) -> TropicalWeight {
        let (level, member) = (q / self.per_level, q % self.per_level);
        if self.slot_level[level % 2] == Some(level) {
            self.slots[level % 2][member]
        } else {
            TropicalWeight::INFINITY
        }
    }

    fn set(&mut self, q: StateId, w: TropicalWeight) {
        let (level, member) = (q / self.per_level, q % self.per_level);
        debug_assert_eq!(self.slot_level[level % 2], Some(level), "write outside the window");
        self.slots[level % 2][member] = w;
    }

    fn resident_states(&self) -> usize {
        self.slot_level.iter().filter(|l| l.is_some()).count() * self.per_level
    }

    fn rotate_to(&mut self, level: usize) {
        self.open(level);
        if level < self.max_level {
            self.open(level + 1);
        }
    }
}

/// Per-state adjacency of one materialized band.
struct BandSlot {
    level: Option<usize>,
    adj: Vec<Vec<(StateId, TropicalWeight)>>,
    arcs: usize,
}

impl BandSlot {
    fn new(per_level: usize) -> Self {
        BandSlot { level: None, adj: vec![Vec::new(); per_level], arcs: 0 }
    }
}

/// Lazy lattice view holding at most two arc bands, keyed by level parity.
struct BandedLatticeView<'l, 'a> {
    lattice: &'l EditLattice<'a>,
    slots: [BandSlot; 2],
}

impl<'l, 'a> BandedLatticeView<'l, 'a> {
    fn new(lattice: &'l EditLattice<'a>) -> Self {
        let n = lattice.states_per_level();
        BandedLatticeView { lattice, slots: [BandSlot::new(n), BandSlot::new(n)] }
    }
}

impl GraphView for BandedLatticeView<'_, '_> {
    fn state_bound(&self) -> usize {
        self.lattice.num_states()
    }

    fn member_bound(&self) -> usize {
        self.lattice.states_per_level()
    }

    fn level(&self, q: StateId) -> usize {
        q / self.lattice.states_per_level()
    }

    fn member(&self, q: StateId) -> StateId {
        q % self.lattice.states_per_level()
    }

    fn copy_arcs(&mut self, q: StateId, out: &mut Vec<(StateId, TropicalWeight)>) {
        let (level, member) = (self.level(q), self.member(q));
        let slot = &self.slots[level % 2];
        debug_assert_eq!(slot.level, Some(level), "band not resident");
        out.extend_from_slice(&slot.adj[member]);
    }

    fn enter_level(&mut self, level: usize) {
        let lattice = self.lattice;
        let slot = &mut self.slots[level % 2];
        for adj in &mut slot.adj {
            adj.clear();
        }
        slot.arcs = 0;
        slot.level = Some(level);
        lattice
            .for_each_band_arc(level, |forward, arc| {
                let to_level = if forward { level + 1 } else { level };
                let to = lattice.state_id(LatticeState { level: to_level, a_state: arc.to });
                slot.adj[arc.from].push((to, arc.weight));
                slot.arcs += 1;
            })
            .expect("engine levels stay within the lattice");
    }

    fn resident_arcs(&self) -> usize {
        self.slots.iter().filter(|s| s.level.is_some()).map(|s| s.arcs).sum()
    }
}

/// Sweeps the lattice up to `stop_level` and returns that level's distance
/// band. `initial_override`, when given, replaces the lattice's own entry
/// weights (absent states start unreachable).
pub(crate) fn banded_sweep(
    lattice: &EditLattice<'_>,
    initial_override: Option<&BTreeMap<StateId, TropicalWeight>>,
    underlying: &QueueDiscipline,
    stop_level: usize,
) -> Result<(Vec<TropicalWeight>, RunStats)> {
    let n = lattice.states_per_level();
    let entry_id = |j: StateId| lattice.state_id(LatticeState { level: 0, a_state: j });
    let mut sources: Vec<(StateId, TropicalWeight)> = Vec::new();
    match initial_override {
        Some(map) => {
            for (&j, &w) in map {
                debug_assert!(j < n);
                sources.push((entry_id(j), w));
            }
        }
        None => {
            for j in 0..n {
                let w = lattice.initial_weight(LatticeState { level: 0, a_state: j });
                if w.is_finite() {
                    sources.push((entry_id(j), w));
                }
            }
        }
    }

    let mut view = BandedLatticeView::new(lattice);
    let mut store = BandedDistances::new(n, lattice.num_levels().saturating_sub(1));
    let discipline = QueueDiscipline::level_meta(underlying.clone());
    let stats = run_engine(&mut view, &mut store, &sources, &discipline, Some(stop_level))?;
    let band = store
        .band_values(stop_level)
        .map(|s| s.to_vec())
        .unwrap_or_else(|| vec![TropicalWeight::INFINITY; n]);
    Ok((band, stats))
}

/// An edit-distance computation, bundling its inputs and discipline choice.
#[derive(Clone, Copy)]
pub struct EditDistanceQuery<'a> {
    pub x: &'a [Label],
    pub automaton: &'a WeightedAutomaton,
    pub costs: &'a CostFunction,
    pub discipline: DisciplineChoice,
}

impl<'a> EditDistanceQuery<'a> {
    pub fn new(x: &'a [Label], automaton: &'a WeightedAutomaton, costs: &'a CostFunction) -> Self {
        EditDistanceQuery { x, automaton, costs, discipline: DisciplineChoice::Auto }
    }

    pub fn discipline(mut self, discipline: DisciplineChoice) -> Self {
        self.discipline = discipline;
        self
    }

    /// Runs the sweep. An unreachable automaton yields an infinite distance,
    /// not an error.
    pub fn run(&self) -> Result<(TropicalWeight, RunStats)> {
        let lattice = EditLattice::new(self.x, self.automaton, self.costs)?;
        let underlying = resolve_underlying(self.automaton, self.discipline)?;
        let (band, stats) = banded_sweep(&lattice, None, &underlying, self.x.len())?;
        let mut best = TropicalWeight::INFINITY;
        for (j, &d) in band.iter().enumerate() {
            let exit = lattice.final_weight(LatticeState { level: self.x.len(), a_state: j });
            best = best.combine(d.extend(exit));
        }
        Ok((best, stats))
    }
}

/// Minimum over `y` of `d_edit(x, y) + A(y)`.
pub fn edit_distance(
    x: &[Label],
    automaton: &WeightedAutomaton,
    costs: &CostFunction,
    discipline: DisciplineChoice,
) -> Result<(TropicalWeight, RunStats)> {
    EditDistanceQuery::new(x, automaton, costs).discipline(discipline).run()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepDirection {
    /// Distances from the lattice entry to the states of the level.
    Forward,
    /// Distances from the states of the level to lattice acceptance.
    Backward,
}

/// One distance band of the lattice, indexed by automaton state.
#[derive(Clone, Debug)]
pub struct LevelDistances {
    pub level: usize,
    pub direction: SweepDirection,
    pub values: Vec<TropicalWeight>,
    pub stats: RunStats,
}

/// Computes one band of forward or backward distances in linear space.
///
/// The backward band at level `i` is the forward band at level `|x| - i` of
/// the reversed problem (mirrored automaton, reversed string), so both
/// directions share the same sweep.
pub fn level_distances(
    x: &[Label],
    automaton: &WeightedAutomaton,
    costs: &CostFunction,
    discipline: DisciplineChoice,
    level: usize,
    direction: SweepDirection,
) -> Result<LevelDistances> {
    if level > x.len() {
        return Err(Error::LevelOutOfRange { level, max: x.len() });
    }
    let (values, stats) = match direction {
        SweepDirection::Forward => {
            let lattice = EditLattice::new(x, automaton, costs)?;
            let underlying = resolve_underlying(automaton, discipline)?;
            banded_sweep(&lattice, None, &underlying, level)?
        }
        SweepDirection::Backward => {
            let rev: Vec<Label> = x.iter().rev().copied().collect();
            let mirrored = automaton.mirror();
            let lattice = EditLattice::new(&rev, &mirrored, costs)?;
            let underlying = resolve_underlying(&mirrored, discipline)?;
            banded_sweep(&lattice, None, &underlying, x.len() - level)?
        }
    };
    Ok(LevelDistances { level, direction, values, stats })
}
