//! Epsilon-free composition and the edit lattice.
//!
//! The edit lattice `U = X ∘ T_c ∘ A` for a string `x` and an automaton `A`
//! never needs to exist as a whole: its states are pairs `(i, j)` of a string
//! position and an `A`-state, and every arc stays on level `i` (insertions)
//! or steps to level `i + 1` (substitutions and deletions). [`EditLattice`]
//! generates one level band at a time as a pure function of `x`, `A` and the
//! costs.

use std::collections::{HashMap, VecDeque};

use crate::automata::{StateId, WeightedAutomaton, WeightedTransducer, EPSILON};
use crate::edit::{CostFunction, EditOp};
use crate::semiring::TropicalWeight;
use crate::{Error, Result};

/// Pairwise composition of epsilon-free transducers.
///
/// Matches `olabel` of the left machine against `ilabel` of the right; the
/// result keeps only pairs reachable from the initial pairs. Initial and
/// final weights are summed over the pair.
pub fn compose(t1: &WeightedTransducer, t2: &WeightedTransducer) -> Result<WeightedTransducer> {
    if t1.has_epsilon() || t2.has_epsilon() {
        return Err(Error::EpsilonArc { context: "composition" });
    }
    if t1.output_alphabet() != t2.input_alphabet() {
        return Err(Error::AlphabetMismatch);
    }

    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut queue: VecDeque<(StateId, StateId)> = VecDeque::new();
    let discover = |p: (StateId, StateId),
                        ids: &mut HashMap<(StateId, StateId), StateId>,
                        pairs: &mut Vec<(StateId, StateId)>,
                        queue: &mut VecDeque<(StateId, StateId)>|
     -> StateId {
        *ids.entry(p).or_insert_with(|| {
            pairs.push(p);
            queue.push_back(p);
            pairs.len() - 1
        })
    };

    for &q1 in t1.initial().keys() {
        for &q2 in t2.initial().keys() {
            discover((q1, q2), &mut ids, &mut pairs, &mut queue);
        }
    }

    let mut out = WeightedTransducer::new(0);
    while let Some((q1, q2)) = queue.pop_front() {
        let src = ids[&(q1, q2)];
        while out.num_states() <= src {
            out.add_state();
        }
        for e1 in t1.transitions_from(q1) {
            for e2 in t2.transitions_from(q2) {
                if e1.olabel != e2.ilabel {
                    continue;
                }
                let dst = discover((e1.dst, e2.dst), &mut ids, &mut pairs, &mut queue);
                while out.num_states() <= dst {
                    out.add_state();
                }
                out.add_transition(src, dst, e1.ilabel, e2.olabel, e1.weight.extend(e2.weight));
            }
        }
    }

    for (idx, &(q1, q2)) in pairs.iter().enumerate() {
        let iw = t1.initial_weight(q1).extend(t2.initial_weight(q2));
        if !iw.is_infinite() {
            out.set_initial(idx, iw);
        }
        let fw = t1.final_weight(q1).extend(t2.final_weight(q2));
        if !fw.is_infinite() {
            out.set_final(idx, fw);
        }
    }
    out.widen_input_alphabet(t1.input_alphabet().iter().copied());
    out.widen_output_alphabet(t2.output_alphabet().iter().copied());
    Ok(out)
}

/// A lattice state: string position `level` paired with an `A`-state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeState {
    pub level: usize,
    pub a_state: StateId,
}

/// A lattice arc between `A`-state slots; whether it stays on the level or
/// steps forward is recorded by which band list holds it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandArc {
    pub from: StateId,
    pub to: StateId,
    pub op: EditOp,
    pub weight: TropicalWeight,
}

/// All arcs leaving level `i`: `arcs_within` stay on level `i` (insertions),
/// `arcs_forward` step to level `i + 1` (substitutions, then deletions).
#[derive(Clone, Debug, PartialEq)]
pub struct LevelBand {
    pub level: usize,
    pub arcs_within: Vec<BandArc>,
    pub arcs_forward: Vec<BandArc>,
}

impl LevelBand {
    pub fn num_arcs(&self) -> usize {
        self.arcs_within.len() + self.arcs_forward.len()
    }
}

/// The implicit edit lattice `U = X ∘ T_c ∘ A`, addressed band by band.
///
/// State `(i, j)` has dense id `i * |A|_Q + j`. Construction validates that
/// `A` is epsilon-free and that the costs cover every symbol of `x` and every
/// arc label of `A`, so band generation itself cannot fail.
pub struct EditLattice<'a> {
    x: &'a [crate::automata::Label],
    a: &'a WeightedAutomaton,
    costs: &'a CostFunction,
}

impl<'a> EditLattice<'a> {
    pub fn new(
        x: &'a [crate::automata::Label],
        a: &'a WeightedAutomaton,
        costs: &'a CostFunction,
    ) -> Result<Self> {
        if a.has_epsilon() {
            return Err(Error::EpsilonArc { context: "edit lattice construction" });
        }
        for &sym in x {
            if sym == EPSILON || !costs.contains_symbol(sym) {
                return Err(Error::InvalidEditOp { input: sym, output: EPSILON });
            }
        }
        for arc in a.arcs() {
            if !costs.contains_symbol(arc.label) {
                return Err(Error::InvalidEditOp { input: EPSILON, output: arc.label });
            }
        }
        Ok(EditLattice { x, a, costs })
    }

    pub fn string(&self) -> &[crate::automata::Label] {
        self.x
    }

    pub fn automaton(&self) -> &WeightedAutomaton {
        self.a
    }

    /// Levels run `0..=|x|`.
    pub fn num_levels(&self) -> usize {
        self.x.len() + 1
    }

    pub fn states_per_level(&self) -> usize {
        self.a.num_states()
    }

    pub fn num_states(&self) -> usize {
        self.num_levels() * self.states_per_level()
    }

    pub fn state_id(&self, s: LatticeState) -> StateId {
        s.level * self.states_per_level() + s.a_state
    }

    pub fn state_at(&self, id: StateId) -> LatticeState {
        LatticeState { level: id / self.states_per_level(), a_state: id % self.states_per_level() }
    }

    /// `λ_U`: the initial weights of `A` on level 0, +infinity elsewhere.
    pub fn initial_weight(&self, s: LatticeState) -> TropicalWeight {
        if s.level == 0 {
            self.a.initial_weight(s.a_state)
        } else {
            TropicalWeight::INFINITY
        }
    }

    /// `ρ_U`: the final weights of `A` on level `|x|`, +infinity elsewhere.
    pub fn final_weight(&self, s: LatticeState) -> TropicalWeight {
        if s.level == self.x.len() {
            self.a.final_weight(s.a_state)
        } else {
            TropicalWeight::INFINITY
        }
    }

    /// Visits every arc leaving level `i` in generation order: insertions per
    /// `A`-arc, then (below the last level) substitutions per `A`-arc and one
    /// deletion per `A`-state.
    pub fn for_each_band_arc(
        &self,
        level: usize,
        mut f: impl FnMut(bool, BandArc),
    ) -> Result<()> {
        if level >= self.num_levels() {
            return Err(Error::LevelOutOfRange { level, max: self.x.len() });
        }
        for arc in self.a.arcs() {
            f(
                false,
                BandArc {
                    from: arc.src,
                    to: arc.dst,
                    op: EditOp::insertion(arc.label),
                    weight: self.costs.cost_unchecked(EPSILON, arc.label).extend(arc.weight),
                },
            );
        }
        if level < self.x.len() {
            let sym = self.x[level];
            for arc in self.a.arcs() {
                f(
                    true,
                    BandArc {
                        from: arc.src,
                        to: arc.dst,
                        op: EditOp::substitution(sym, arc.label),
                        weight: self.costs.cost_unchecked(sym, arc.label).extend(arc.weight),
                    },
                );
            }
            let del = self.costs.cost_unchecked(sym, EPSILON);
            for j in 0..self.a.num_states() {
                f(true, BandArc { from: j, to: j, op: EditOp::deletion(sym), weight: del });
            }
        }
        Ok(())
    }

    /// Materializes the band for `level`.
    pub fn band(&self, level: usize) -> Result<LevelBand> {
        let mut band =
            LevelBand { level, arcs_within: Vec::new(), arcs_forward: Vec::new() };
        self.for_each_band_arc(level, |forward, arc| {
            if forward {
                band.arcs_forward.push(arc);
            } else {
                band.arcs_within.push(arc);
            }
        })?;
        Ok(band)
    }
}
