//! Generic single-source shortest-distance over the tropical semiring,
//! parameterized by a queue discipline.
//!
//! The engine repeatedly extracts a state chosen by the discipline and relaxes
//! its outgoing arcs; a state whose tentative distance strictly improves is
//! (re-)enqueued, so correctness never depends on the discipline, only the
//! number of dequeues `N(q)` does. Arcs are pulled from a [`GraphView`], which
//! lets the edit-distance driver expand the lattice lazily and retire bands
//! the engine has moved past.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet, VecDeque};

use crate::automata::StateId;
use crate::graph::BackEdgeMarking;
use crate::semiring::TropicalWeight;
use crate::{Error, Result};

/// Queue discipline: the order in which queued states are extracted.
#[derive(Clone, Debug)]
pub enum QueueDiscipline {
    /// First in, first out.
    Fifo,
    /// Last in, first out.
    Lifo,
    /// Smallest tentative distance first (Dijkstra); ties by state id.
    ShortestFirst,
    /// Follow the given state order; an arc going backward in it is an error.
    Topological(Vec<StateId>),
    /// Strictly lower level first; equal levels defer to the underlying
    /// discipline, applied per level. Crossing into a new level retires the
    /// band two levels back.
    LevelMeta(Box<QueueDiscipline>),
    /// Order by (times enqueued, position in the back-edge-free topological
    /// order). Re-extractions happen only through arcs matching marked back
    /// edges, so `max N(q)` is bounded by the loop-connectedness plus one.
    BackEdgeCount(BackEdgeMarking),
}

impl QueueDiscipline {
    pub fn level_meta(underlying: QueueDiscipline) -> Self {
        QueueDiscipline::LevelMeta(Box::new(underlying))
    }
}

/// Counters collected during one engine run.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    /// `N(q)`: how many times each state was dequeued.
    pub dequeues_per_state: HashMap<StateId, u32>,
    /// Number of strict distance improvements.
    pub relaxations: u64,
    /// Peak number of distance slots resident at once.
    pub peak_resident_states: usize,
    /// Peak number of materialized arcs resident at once.
    pub peak_resident_arcs: usize,
}

impl RunStats {
    pub fn max_dequeues(&self) -> u32 {
        self.dequeues_per_state.values().copied().max().unwrap_or(0)
    }

    pub fn total_dequeues(&self) -> u64 {
        self.dequeues_per_state.values().map(|&c| c as u64).sum()
    }

    pub fn distinct_dequeued(&self) -> usize {
        self.dequeues_per_state.len()
    }

    /// Flat `key=value` report, one counter per line.
    pub fn report(&self) -> String {
        format!(
            "max_dequeues={}\nrelaxations={}\npeak_resident_states={}\npeak_resident_arcs={}",
            self.max_dequeues(),
            self.relaxations,
            self.peak_resident_states,
            self.peak_resident_arcs
        )
    }

    fn record_dequeue(&mut self, q: StateId) {
        *self.dequeues_per_state.entry(q).or_insert(0) += 1;
    }

    fn observe_residency(&mut self, states: usize, arcs: usize) {
        self.peak_resident_states = self.peak_resident_states.max(states);
        self.peak_resident_arcs = self.peak_resident_arcs.max(arcs);
    }
}

/// A weighted graph the engine can walk, possibly expanded lazily.
///
/// States live in a dense id space of size `state_bound`. Leveled views map
/// each state to a `(level, member)` pair; flat graphs leave everything on
/// level 0 with `member == id`.
pub trait GraphView {
    /// Size of the dense state id space.
    fn state_bound(&self) -> usize;

    /// Size of the per-level member id space (equals `state_bound` when flat).
    fn member_bound(&self) -> usize {
        self.state_bound()
    }

    fn level(&self, _q: StateId) -> usize {
        0
    }

    fn member(&self, q: StateId) -> StateId {
        q
    }

    /// Appends the outgoing arcs of `q` as `(target, weight)` pairs.
    fn copy_arcs(&mut self, q: StateId, out: &mut Vec<(StateId, TropicalWeight)>);

    /// Called once per level, when the first state of `level` is extracted.
    fn enter_level(&mut self, _level: usize) {}

    /// Arcs currently materialized, for residency accounting.
    fn resident_arcs(&self) -> usize;
}

/// Tentative-distance storage. Banded implementations may keep only a sliding
/// window of levels; `rotate_to(l)` must make levels `l` and `l + 1`
/// addressable and may discard everything below `l`.
pub(crate) trait DistanceStore {
    fn get(&self, q: StateId) -> TropicalWeight;
    fn set(&mut self, q: StateId, w: TropicalWeight);
    fn resident_states(&self) -> usize;
    fn rotate_to(&mut self, _level: usize) {}
}

pub(crate) struct DenseDistances(Vec<TropicalWeight>);

impl DenseDistances {
    pub(crate) fn new(n: usize) -> Self {
        DenseDistances(vec![TropicalWeight::INFINITY; n])
    }

    pub(crate) fn into_vec(self) -> Vec<TropicalWeight> {
        self.0
    }
}

impl DistanceStore for DenseDistances {
    fn get(&self, q: StateId) -> TropicalWeight {
        self.0[q]
    }

    fn set(&mut self, q: StateId, w: TropicalWeight) {
        self.0[q] = w;
    }

    fn resident_states(&self) -> usize {
        self.0.len()
    }
}

/// A fully materialized weighted graph.
#[derive(Clone, Debug, Default)]
pub struct FlatGraph {
    adj: Vec<Vec<(StateId, TropicalWeight)>>,
    num_arcs: usize,
}

impl FlatGraph {
    pub fn new(num_states: usize) -> Self {
        FlatGraph { adj: vec![Vec::new(); num_states], num_arcs: 0 }
    }

    pub fn add_arc(&mut self, src: StateId, dst: StateId, weight: TropicalWeight) {
        assert!(src < self.adj.len() && dst < self.adj.len());
        self.adj[src].push((dst, weight));
        self.num_arcs += 1;
    }

    pub fn num_states(&self) -> usize {
        self.adj.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn arcs_from(&self, q: StateId) -> &[(StateId, TropicalWeight)] {
        &self.adj[q]
    }
}

struct FlatView<'a>(&'a FlatGraph);

impl GraphView for FlatView<'_> {
    fn state_bound(&self) -> usize {
        self.0.num_states()
    }

    fn copy_arcs(&mut self, q: StateId, out: &mut Vec<(StateId, TropicalWeight)>) {
        out.extend_from_slice(self.0.arcs_from(q));
    }

    fn resident_arcs(&self) -> usize {
        self.0.num_arcs()
    }
}

/// Shortest distances from `sources` to every state of a materialized graph.
///
/// Returns the distance vector (+infinity for unreached states) and the run
/// counters. Source entries carry their own initial weights.
pub fn shortest_distance(
    graph: &FlatGraph,
    sources: &[(StateId, TropicalWeight)],
    discipline: &QueueDiscipline,
) -> Result<(Vec<TropicalWeight>, RunStats)> {
    shortest_distance_over(&mut FlatView(graph), sources, discipline)
}

/// [`shortest_distance`] over any graph view, with dense distance storage.
pub fn shortest_distance_over<V: GraphView>(
    view: &mut V,
    sources: &[(StateId, TropicalWeight)],
    discipline: &QueueDiscipline,
) -> Result<(Vec<TropicalWeight>, RunStats)> {
    let mut store = DenseDistances::new(view.state_bound());
    let stats = run_engine(view, &mut store, sources, discipline, None)?;
    Ok((store.into_vec(), stats))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum UnderlyingKind {
    Fifo,
    Lifo,
    ShortestFirst,
    Topological,
    BackEdge,
}

struct QueuePlan {
    meta: bool,
    kind: UnderlyingKind,
    pos: Vec<usize>,
}

impl QueuePlan {
    fn compile(discipline: &QueueDiscipline, member_bound: usize) -> Result<QueuePlan> {
        let (meta, inner) = match discipline {
            QueueDiscipline::LevelMeta(inner) => (true, inner.as_ref()),
            other => (false, other),
        };
        let (kind, pos) = match inner {
            QueueDiscipline::Fifo => (UnderlyingKind::Fifo, Vec::new()),
            QueueDiscipline::Lifo => (UnderlyingKind::Lifo, Vec::new()),
            QueueDiscipline::ShortestFirst => (UnderlyingKind::ShortestFirst, Vec::new()),
            QueueDiscipline::Topological(order) => {
                (UnderlyingKind::Topological, positions(order, member_bound)?)
            }
            QueueDiscipline::BackEdgeCount(marking) => {
                (UnderlyingKind::BackEdge, positions(&marking.dfs_order, member_bound)?)
            }
            QueueDiscipline::LevelMeta(_) => {
                return Err(Error::InvalidDiscipline { reason: "level_meta cannot be nested" });
            }
        };
        Ok(QueuePlan { meta, kind, pos })
    }
}

fn positions(order: &[StateId], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::InvalidDiscipline { reason: "order length differs from state count" });
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &q) in order.iter().enumerate() {
        if q >= n || pos[q] != usize::MAX {
            return Err(Error::InvalidDiscipline { reason: "order is not a permutation" });
        }
        pos[q] = i;
    }
    Ok(pos)
}

enum LevelQueue {
    Fifo(VecDeque<StateId>),
    Lifo(Vec<StateId>),
    /// Lazy-deletion heap; an entry is current iff the state is queued and the
    /// key equals its tentative distance.
    ShortestFirst(BinaryHeap<Reverse<(TropicalWeight, StateId)>>),
    /// Fixed per-state key: position in the supplied order.
    Static(BinaryHeap<Reverse<(usize, StateId)>>),
    /// Key = (enqueue count, position); counts survive extraction so that a
    /// re-enqueued state sorts behind first-time states.
    Counted { heap: BinaryHeap<Reverse<((u32, usize), StateId)>>, counts: HashMap<StateId, u32> },
}

impl LevelQueue {
    fn new(kind: UnderlyingKind) -> Self {
        match kind {
            UnderlyingKind::Fifo => LevelQueue::Fifo(VecDeque::new()),
            UnderlyingKind::Lifo => LevelQueue::Lifo(Vec::new()),
            UnderlyingKind::ShortestFirst => LevelQueue::ShortestFirst(BinaryHeap::new()),
            UnderlyingKind::Topological => LevelQueue::Static(BinaryHeap::new()),
            UnderlyingKind::BackEdge => {
                LevelQueue::Counted { heap: BinaryHeap::new(), counts: HashMap::new() }
            }
        }
    }

    fn push(&mut self, plan: &QueuePlan, q: StateId, member: StateId, d: TropicalWeight) {
        match self {
            LevelQueue::Fifo(dq) => dq.push_back(q),
            LevelQueue::Lifo(v) => v.push(q),
            LevelQueue::ShortestFirst(h) => h.push(Reverse((d, q))),
            LevelQueue::Static(h) => h.push(Reverse((plan.pos[member], q))),
            LevelQueue::Counted { heap, counts } => {
                let c = counts.entry(q).and_modify(|c| *c += 1).or_insert(1);
                heap.push(Reverse(((*c, plan.pos[member]), q)));
            }
        }
    }

    /// Records an improvement of a state that is already queued.
    fn improve(&mut self, q: StateId, d: TropicalWeight) {
        if let LevelQueue::ShortestFirst(h) = self {
            h.push(Reverse((d, q)));
        }
    }

    fn pop(
        &mut self,
        dist: &dyn Fn(StateId) -> TropicalWeight,
        in_queue: &HashSet<StateId>,
    ) -> Option<StateId> {
        match self {
            LevelQueue::Fifo(dq) => dq.pop_front(),
            LevelQueue::Lifo(v) => v.pop(),
            LevelQueue::ShortestFirst(h) => loop {
                let Reverse((w, q)) = h.pop()?;
                if in_queue.contains(&q) && dist(q) == w {
                    return Some(q);
                }
            },
            LevelQueue::Static(h) => h.pop().map(|Reverse((_, q))| q),
            LevelQueue::Counted { heap, .. } => heap.pop().map(|Reverse((_, q))| q),
        }
    }
}

struct QueueSet {
    single: Option<LevelQueue>,
    levels: BTreeMap<usize, LevelQueue>,
}

impl QueueSet {
    fn new(plan: &QueuePlan) -> Self {
        QueueSet {
            single: (!plan.meta).then(|| LevelQueue::new(plan.kind)),
            levels: BTreeMap::new(),
        }
    }

    fn queue_at(&mut self, plan: &QueuePlan, level: usize) -> &mut LevelQueue {
        match &mut self.single {
            Some(q) => q,
            None => self.levels.entry(level).or_insert_with(|| LevelQueue::new(plan.kind)),
        }
    }

    fn extract(
        &mut self,
        dist: &dyn Fn(StateId) -> TropicalWeight,
        in_queue: &HashSet<StateId>,
    ) -> Option<StateId> {
        match &mut self.single {
            Some(q) => q.pop(dist, in_queue),
            None => {
                for queue in self.levels.values_mut() {
                    if let Some(q) = queue.pop(dist, in_queue) {
                        return Some(q);
                    }
                }
                None
            }
        }
    }

    /// Level queues below `level` can no longer receive states; drop them
    /// (and their enqueue counts) to keep residency proportional to two bands.
    fn drop_levels_below(&mut self, level: usize) {
        self.levels.retain(|&l, _| l >= level);
    }
}

/// The generic engine. `stop_after_level` halts before processing the first
/// state beyond that level, leaving its distance band intact for harvesting.
pub(crate) fn run_engine<V: GraphView, S: DistanceStore>(
    view: &mut V,
    store: &mut S,
    sources: &[(StateId, TropicalWeight)],
    discipline: &QueueDiscipline,
    stop_after_level: Option<usize>,
) -> Result<RunStats> {
    let plan = QueuePlan::compile(discipline, view.member_bound())?;
    let mut queue = QueueSet::new(&plan);
    let mut in_queue: HashSet<StateId> = HashSet::new();
    let mut stats = RunStats::default();

    store.rotate_to(0);
    for &(s, w) in sources {
        if !(w < store.get(s)) {
            continue;
        }
        store.set(s, w);
        if in_queue.contains(&s) {
            queue.queue_at(&plan, view.level(s)).improve(s, w);
        } else {
            in_queue.insert(s);
            let (level, member) = (view.level(s), view.member(s));
            queue.queue_at(&plan, level).push(&plan, s, member, w);
        }
    }
    stats.observe_residency(store.resident_states(), view.resident_arcs());

    let mut entered: Option<usize> = None;
    let mut arc_buf: Vec<(StateId, TropicalWeight)> = Vec::new();

    while let Some(q) = {
        let dist = |s: StateId| store.get(s);
        queue.extract(&dist, &in_queue)
    } {
        in_queue.remove(&q);
        let lq = view.level(q);
        if let Some(stop) = stop_after_level {
            if lq > stop {
                break;
            }
        }
        if plan.meta && Some(lq) > entered {
            let next = entered.map_or(0, |e| e + 1);
            for l in next..=lq {
                view.enter_level(l);
                store.rotate_to(l);
                queue.drop_levels_below(l);
            }
            entered = Some(lq);
            stats.observe_residency(store.resident_states(), view.resident_arcs());
        }
        stats.record_dequeue(q);

        let dq = store.get(q);
        debug_assert!(!dq.is_infinite());
        arc_buf.clear();
        view.copy_arcs(q, &mut arc_buf);
        for &(to, w) in &arc_buf {
            if w.value() < 0.0 {
                return Err(Error::NegativeWeight { state: q, weight: w.value() });
            }
            if plan.kind == UnderlyingKind::Topological {
                let same_band = !plan.meta || view.level(to) == lq;
                if same_band && plan.pos[view.member(to)] <= plan.pos[view.member(q)] {
                    return Err(Error::TopologicalViolation { from: q, to });
                }
            }
            let nd = dq.extend(w);
            if nd < store.get(to) {
                store.set(to, nd);
                stats.relaxations += 1;
                if in_queue.contains(&to) {
                    queue.queue_at(&plan, view.level(to)).improve(to, nd);
                } else {
                    in_queue.insert(to);
                    let (level, member) = (view.level(to), view.member(to));
                    queue.queue_at(&plan, level).push(&plan, to, member, nd);
                }
            }
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: f64) -> TropicalWeight {
        TropicalWeight::new(v)
    }

    fn chain() -> FlatGraph {
        let mut g = FlatGraph::new(3);
        g.add_arc(0, 1, w(1.0));
        g.add_arc(1, 2, w(2.0));
        g
    }

    fn all_disciplines(n: usize) -> Vec<QueueDiscipline> {
        let order: Vec<StateId> = (0..n).collect();
        vec![
            QueueDiscipline::Fifo,
            QueueDiscipline::Lifo,
            QueueDiscipline::ShortestFirst,
            QueueDiscipline::Topological(order.clone()),
            QueueDiscipline::level_meta(QueueDiscipline::Fifo),
            QueueDiscipline::level_meta(QueueDiscipline::ShortestFirst),
            QueueDiscipline::level_meta(QueueDiscipline::Topological(order)),
        ]
    }

    #[test]
    fn chain_distances_under_every_discipline() {
        let g = chain();
        for d in all_disciplines(3) {
            let (dist, stats) =
                shortest_distance(&g, &[(0, TropicalWeight::one())], &d).unwrap();
            assert_eq!(dist, vec![w(0.0), w(1.0), w(3.0)], "{d:?}");
            assert_eq!(stats.total_dequeues(), 3);
            assert_eq!(stats.relaxations, 2);
        }
    }

    #[test]
    fn parallel_paths_keep_the_minimum() {
        // Two paths to state 3 with sums 1.7 and 1.9.
        let mut g = FlatGraph::new(6);
        g.add_arc(0, 1, w(0.1));
        g.add_arc(1, 2, w(0.2));
        g.add_arc(2, 3, w(1.4));
        g.add_arc(0, 4, w(0.2));
        g.add_arc(4, 5, w(0.4));
        g.add_arc(5, 3, w(1.3));
        let expected = w(0.1).extend(w(0.2)).extend(w(1.4));
        let (dist, _) =
            shortest_distance(&g, &[(0, TropicalWeight::one())], &QueueDiscipline::ShortestFirst)
                .unwrap();
        assert_eq!(dist[3], expected);
        assert_eq!(dist[3].to_string(), "1.7");
    }

    #[test]
    fn unreachable_states_stay_infinite() {
        let g = chain();
        let (dist, _) =
            shortest_distance(&g, &[(1, w(0.5))], &QueueDiscipline::Fifo).unwrap();
        assert!(dist[0].is_infinite());
        assert_eq!(dist[1], w(0.5));
        assert_eq!(dist[2], w(2.5));
    }

    #[test]
    fn cyclic_graph_converges_under_label_correcting_disciplines() {
        let mut g = FlatGraph::new(2);
        g.add_arc(0, 1, w(1.0));
        g.add_arc(1, 0, w(1.0));
        for d in [QueueDiscipline::Fifo, QueueDiscipline::Lifo, QueueDiscipline::ShortestFirst] {
            let (dist, _) = shortest_distance(&g, &[(0, TropicalWeight::one())], &d).unwrap();
            assert_eq!(dist, vec![w(0.0), w(1.0)]);
        }
    }

    #[test]
    fn negative_weight_is_an_error() {
        let mut g = FlatGraph::new(2);
        g.add_arc(0, 1, TropicalWeight::new(-1.0));
        let got =
            shortest_distance(&g, &[(0, TropicalWeight::one())], &QueueDiscipline::Fifo);
        assert!(matches!(got, Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn backward_arc_violates_topological_order() {
        let mut g = FlatGraph::new(2);
        g.add_arc(0, 1, w(1.0));
        g.add_arc(1, 0, w(1.0));
        let got = shortest_distance(
            &g,
            &[(0, TropicalWeight::one())],
            &QueueDiscipline::Topological(vec![0, 1]),
        );
        assert!(matches!(got, Err(Error::TopologicalViolation { from: 1, to: 0 })));
    }

    #[test]
    fn bogus_orders_are_rejected() {
        let g = chain();
        for order in [vec![0, 1], vec![0, 1, 1], vec![0, 1, 9]] {
            let got = shortest_distance(
                &g,
                &[(0, TropicalWeight::one())],
                &QueueDiscipline::Topological(order),
            );
            assert!(matches!(got, Err(Error::InvalidDiscipline { .. })));
        }
        let nested = QueueDiscipline::level_meta(QueueDiscipline::level_meta(QueueDiscipline::Fifo));
        assert!(matches!(
            shortest_distance(&g, &[(0, TropicalWeight::one())], &nested),
            Err(Error::InvalidDiscipline { .. })
        ));
    }

    #[test]
    fn shortest_first_dequeues_each_state_once() {
        let mut g = FlatGraph::new(4);
        g.add_arc(0, 1, w(5.0));
        g.add_arc(0, 2, w(1.0));
        g.add_arc(2, 1, w(1.0));
        g.add_arc(1, 3, w(1.0));
        g.add_arc(2, 3, w(10.0));
        let (dist, stats) =
            shortest_distance(&g, &[(0, TropicalWeight::one())], &QueueDiscipline::ShortestFirst)
                .unwrap();
        assert_eq!(dist, vec![w(0.0), w(2.0), w(1.0), w(3.0)]);
        assert_eq!(stats.max_dequeues(), 1);
        assert_eq!(stats.distinct_dequeued(), 4);
    }

    #[test]
    fn infinite_sources_are_ignored() {
        let g = chain();
        let (dist, stats) = shortest_distance(
            &g,
            &[(0, TropicalWeight::INFINITY), (2, TropicalWeight::INFINITY)],
            &QueueDiscipline::Fifo,
        )
        .unwrap();
        assert!(dist.iter().all(|d| d.is_infinite()));
        assert_eq!(stats.total_dequeues(), 0);
    }

    #[test]
    fn report_lists_the_four_counters() {
        let g = chain();
        let (_, stats) =
            shortest_distance(&g, &[(0, TropicalWeight::one())], &QueueDiscipline::Fifo).unwrap();
        let report = stats.report();
        for key in ["max_dequeues=", "relaxations=", "peak_resident_states=", "peak_resident_arcs="]
        {
            assert!(report.lines().any(|l| l.starts_with(key)), "{report}");
        }
    }
}
