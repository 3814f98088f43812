//! Weighted transducers and acceptors over the tropical semiring.
//!
//! States are dense `usize` ids. Labels are `u32` ids assigned by a symbol
//! table; label 0 is reserved for epsilon. Machines may carry multiple initial
//! states, each with an entry weight, mirroring the exit weights on finals.

use std::collections::{BTreeMap, BTreeSet};

use crate::semiring::TropicalWeight;
use crate::{Error, Result};

/// Symbol identifier. 0 is reserved for epsilon.
pub type Label = u32;

/// The epsilon label: consumes or emits nothing.
pub const EPSILON: Label = 0;

/// Dense state identifier.
pub type StateId = usize;

/// One weighted transducer transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub src: StateId,
    pub ilabel: Label,
    pub olabel: Label,
    pub weight: TropicalWeight,
    pub dst: StateId,
}

/// One weighted acceptor transition; input and output labels coincide and are
/// stored once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub src: StateId,
    pub label: Label,
    pub weight: TropicalWeight,
    pub dst: StateId,
}

/// A weighted finite-state transducer over the tropical semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTransducer {
    input_alphabet: BTreeSet<Label>,
    output_alphabet: BTreeSet<Label>,
    num_states: usize,
    initial: BTreeMap<StateId, TropicalWeight>,
    finals: BTreeMap<StateId, TropicalWeight>,
    transitions: Vec<Transition>,
    adj: Vec<Vec<u32>>,
}

impl WeightedTransducer {
    pub fn new(num_states: usize) -> Self {
        WeightedTransducer {
            input_alphabet: BTreeSet::new(),
            output_alphabet: BTreeSet::new(),
            num_states,
            initial: BTreeMap::new(),
            finals: BTreeMap::new(),
            transitions: Vec::new(),
            adj: vec![Vec::new(); num_states],
        }
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.adj.push(Vec::new());
        self.num_states - 1
    }

    /// Appends a transition. Non-epsilon labels extend the declared alphabets.
    pub fn add_transition(
        &mut self,
        src: StateId,
        dst: StateId,
        ilabel: Label,
        olabel: Label,
        weight: TropicalWeight,
    ) {
        assert!(src < self.num_states && dst < self.num_states);
        if ilabel != EPSILON {
            self.input_alphabet.insert(ilabel);
        }
        if olabel != EPSILON {
            self.output_alphabet.insert(olabel);
        }
        self.adj[src].push(self.transitions.len() as u32);
        self.transitions.push(Transition { src, ilabel, olabel, weight, dst });
    }

    /// Initial weights are min-combined if a state is declared twice.
    pub fn set_initial(&mut self, q: StateId, w: TropicalWeight) {
        assert!(q < self.num_states);
        let entry = self.initial.entry(q).or_insert(TropicalWeight::INFINITY);
        *entry = entry.combine(w);
    }

    pub fn set_final(&mut self, q: StateId, w: TropicalWeight) {
        assert!(q < self.num_states);
        let entry = self.finals.entry(q).or_insert(TropicalWeight::INFINITY);
        *entry = entry.combine(w);
    }

    pub fn widen_input_alphabet(&mut self, labels: impl IntoIterator<Item = Label>) {
        self.input_alphabet.extend(labels.into_iter().filter(|&l| l != EPSILON));
    }

    pub fn widen_output_alphabet(&mut self, labels: impl IntoIterator<Item = Label>) {
        self.output_alphabet.extend(labels.into_iter().filter(|&l| l != EPSILON));
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    /// `|T| = |T|_Q + |T|_E`.
    pub fn size(&self) -> usize {
        self.num_states + self.transitions.len()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transitions_from(&self, q: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.adj[q].iter().map(move |&i| &self.transitions[i as usize])
    }

    pub fn initial(&self) -> &BTreeMap<StateId, TropicalWeight> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeMap<StateId, TropicalWeight> {
        &self.finals
    }

    pub fn initial_weight(&self, q: StateId) -> TropicalWeight {
        self.initial.get(&q).copied().unwrap_or(TropicalWeight::INFINITY)
    }

    pub fn final_weight(&self, q: StateId) -> TropicalWeight {
        self.finals.get(&q).copied().unwrap_or(TropicalWeight::INFINITY)
    }

    pub fn input_alphabet(&self) -> &BTreeSet<Label> {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &BTreeSet<Label> {
        &self.output_alphabet
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| t.ilabel == EPSILON || t.olabel == EPSILON)
    }

    /// Minimum weight over all accepting paths with input `x` and output `y`.
    ///
    /// Only defined for epsilon-free machines, where every transition consumes
    /// exactly one input and one output symbol, so `|x| != |y|` means no path.
    pub fn weight_of(&self, x: &[Label], y: &[Label]) -> Result<TropicalWeight> {
        if self.has_epsilon() {
            return Err(Error::EpsilonArc { context: "transducer evaluation" });
        }
        if x.len() != y.len() {
            return Ok(TropicalWeight::INFINITY);
        }
        let mut d = vec![TropicalWeight::INFINITY; self.num_states];
        for (&q, &w) in &self.initial {
            d[q] = d[q].combine(w);
        }
        for (a, b) in x.iter().zip(y) {
            let mut next = vec![TropicalWeight::INFINITY; self.num_states];
            for t in &self.transitions {
                if t.ilabel == *a && t.olabel == *b {
                    next[t.dst] = next[t.dst].combine(d[t.src].extend(t.weight));
                }
            }
            d = next;
        }
        let mut best = TropicalWeight::INFINITY;
        for (&q, &w) in &self.finals {
            best = best.combine(d[q].extend(w));
        }
        Ok(best)
    }
}

/// A weighted finite-state acceptor over the tropical semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAutomaton {
    alphabet: BTreeSet<Label>,
    num_states: usize,
    initial: BTreeMap<StateId, TropicalWeight>,
    finals: BTreeMap<StateId, TropicalWeight>,
    arcs: Vec<Arc>,
    adj: Vec<Vec<u32>>,
}

impl WeightedAutomaton {
    pub fn new(num_states: usize) -> Self {
        WeightedAutomaton {
            alphabet: BTreeSet::new(),
            num_states,
            initial: BTreeMap::new(),
            finals: BTreeMap::new(),
            arcs: Vec::new(),
            adj: vec![Vec::new(); num_states],
        }
    }

    /// Chain acceptor recognizing exactly `x` with weight 0.
    pub fn from_string(x: &[Label]) -> Self {
        let mut a = WeightedAutomaton::new(x.len() + 1);
        a.set_initial(0, TropicalWeight::one());
        for (i, &sym) in x.iter().enumerate() {
            debug_assert_ne!(sym, EPSILON);
            a.add_arc(i, i + 1, sym, TropicalWeight::one());
        }
        a.set_final(x.len(), TropicalWeight::one());
        a
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.adj.push(Vec::new());
        self.num_states - 1
    }

    /// Appends an arc. Non-epsilon labels extend the declared alphabet.
    pub fn add_arc(&mut self, src: StateId, dst: StateId, label: Label, weight: TropicalWeight) {
        assert!(src < self.num_states && dst < self.num_states);
        if label != EPSILON {
            self.alphabet.insert(label);
        }
        self.adj[src].push(self.arcs.len() as u32);
        self.arcs.push(Arc { src, label, weight, dst });
    }

    pub fn set_initial(&mut self, q: StateId, w: TropicalWeight) {
        assert!(q < self.num_states);
        let entry = self.initial.entry(q).or_insert(TropicalWeight::INFINITY);
        *entry = entry.combine(w);
    }

    pub fn set_final(&mut self, q: StateId, w: TropicalWeight) {
        assert!(q < self.num_states);
        let entry = self.finals.entry(q).or_insert(TropicalWeight::INFINITY);
        *entry = entry.combine(w);
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// `|A| = |A|_Q + |A|_E`.
    pub fn size(&self) -> usize {
        self.num_states + self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arcs_from(&self, q: StateId) -> impl Iterator<Item = &Arc> + '_ {
        self.adj[q].iter().map(move |&i| &self.arcs[i as usize])
    }

    /// Arc indices leaving `q`, in insertion order.
    pub fn arc_ids_from(&self, q: StateId) -> &[u32] {
        &self.adj[q]
    }

    pub fn initial(&self) -> &BTreeMap<StateId, TropicalWeight> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeMap<StateId, TropicalWeight> {
        &self.finals
    }

    pub fn initial_weight(&self, q: StateId) -> TropicalWeight {
        self.initial.get(&q).copied().unwrap_or(TropicalWeight::INFINITY)
    }

    pub fn final_weight(&self, q: StateId) -> TropicalWeight {
        self.finals.get(&q).copied().unwrap_or(TropicalWeight::INFINITY)
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn widen_alphabet(&mut self, labels: impl IntoIterator<Item = Label>) {
        self.alphabet.extend(labels.into_iter().filter(|&l| l != EPSILON));
    }

    pub fn has_epsilon(&self) -> bool {
        self.arcs.iter().any(|a| a.label == EPSILON)
    }

    /// `A(y)`: minimum weight over accepting paths labeled `y`, by on-the-fly
    /// intersection with the chain of `y`. Symbols absent from the machine
    /// simply yield +infinity; epsilon arcs are rejected.
    pub fn weight_of(&self, y: &[Label]) -> Result<TropicalWeight> {
        if self.has_epsilon() {
            return Err(Error::EpsilonArc { context: "automaton evaluation" });
        }
        let mut d = vec![TropicalWeight::INFINITY; self.num_states];
        for (&q, &w) in &self.initial {
            d[q] = d[q].combine(w);
        }
        for &sym in y {
            let mut next = vec![TropicalWeight::INFINITY; self.num_states];
            for arc in &self.arcs {
                if arc.label == sym {
                    next[arc.dst] = next[arc.dst].combine(d[arc.src].extend(arc.weight));
                }
            }
            d = next;
        }
        let mut best = TropicalWeight::INFINITY;
        for (&q, &w) in &self.finals {
            best = best.combine(d[q].extend(w));
        }
        Ok(best)
    }

    /// Reverses every arc and swaps the initial and final maps. The arc list
    /// keeps its order, so `mirror` is an involution by construction.
    pub fn mirror(&self) -> Self {
        let mut m = WeightedAutomaton::new(self.num_states);
        m.alphabet = self.alphabet.clone();
        m.initial = self.finals.clone();
        m.finals = self.initial.clone();
        for arc in &self.arcs {
            m.adj[arc.dst].push(m.arcs.len() as u32);
            m.arcs.push(Arc { src: arc.dst, label: arc.label, weight: arc.weight, dst: arc.src });
        }
        m
    }

    /// The same machine as a transducer with `ilabel = olabel` on every arc.
    pub fn to_transducer(&self) -> WeightedTransducer {
        let mut t = WeightedTransducer::new(self.num_states);
        t.input_alphabet = self.alphabet.clone();
        t.output_alphabet = self.alphabet.clone();
        t.initial = self.initial.clone();
        t.finals = self.finals.clone();
        for arc in &self.arcs {
            t.adj[arc.src].push(t.transitions.len() as u32);
            t.transitions.push(Transition {
                src: arc.src,
                ilabel: arc.label,
                olabel: arc.label,
                weight: arc.weight,
                dst: arc.dst,
            });
        }
        t
    }
}
