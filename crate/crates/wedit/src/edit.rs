//! The edit model: operations, alignments, and cost functions.
//!
//! An edit operation is a pair over `(Σ ∪ {ε}) × (Σ ∪ {ε})` minus `(ε, ε)`:
//! substitutions consume one symbol on each side, deletions consume input
//! only, insertions output only. An alignment is a sequence of operations;
//! its cost is the sum of per-operation costs.

use std::collections::BTreeSet;

use crate::automata::{Label, WeightedTransducer, EPSILON};
use crate::semiring::TropicalWeight;
use crate::{Error, Result};

/// One edit operation; `EPSILON` on at most one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EditOp {
    pub input: Label,
    pub output: Label,
}

impl EditOp {
    pub fn new(input: Label, output: Label) -> Result<Self> {
        if input == EPSILON && output == EPSILON {
            return Err(Error::InvalidEditOp { input, output });
        }
        Ok(EditOp { input, output })
    }

    pub fn substitution(input: Label, output: Label) -> Self {
        debug_assert!(input != EPSILON && output != EPSILON);
        EditOp { input, output }
    }

    pub fn deletion(input: Label) -> Self {
        debug_assert_ne!(input, EPSILON);
        EditOp { input, output: EPSILON }
    }

    pub fn insertion(output: Label) -> Self {
        debug_assert_ne!(output, EPSILON);
        EditOp { input: EPSILON, output }
    }

    pub fn is_insertion(self) -> bool {
        self.input == EPSILON
    }

    pub fn is_deletion(self) -> bool {
        self.output == EPSILON
    }

    pub fn is_substitution(self) -> bool {
        self.input != EPSILON && self.output != EPSILON
    }
}

/// A sequence of edit operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    ops: Vec<EditOp>,
}

impl Alignment {
    pub fn new() -> Self {
        Alignment { ops: Vec::new() }
    }

    pub fn from_ops(ops: Vec<EditOp>) -> Self {
        Alignment { ops }
    }

    pub fn push(&mut self, op: EditOp) {
        self.ops.push(op);
    }

    pub fn ops(&self) -> &[EditOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// The morphism `h`: projects onto the input and output strings, with
    /// epsilons erased.
    pub fn project(&self) -> (Vec<Label>, Vec<Label>) {
        let input = self.ops.iter().map(|o| o.input).filter(|&l| l != EPSILON).collect();
        let output = self.ops.iter().map(|o| o.output).filter(|&l| l != EPSILON).collect();
        (input, output)
    }
}

impl IntoIterator for Alignment {
    type Item = EditOp;
    type IntoIter = std::vec::IntoIter<EditOp>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.into_iter()
    }
}

/// Non-negative per-operation costs, stored as a dense table over
/// `(Σ ∪ {ε})²` with the `(ε, ε)` cell poisoned to +infinity.
#[derive(Clone, Debug)]
pub struct CostFunction {
    alphabet: Vec<Label>,
    member: Vec<bool>,
    table: Vec<TropicalWeight>,
    side: usize,
}

impl CostFunction {
    /// Levenshtein costs over `alphabet`: matches cost 0, every substitution,
    /// insertion and deletion costs 1.
    pub fn levenshtein(alphabet: impl IntoIterator<Item = Label>) -> Self {
        let mut c = CostFunction::uniform(alphabet, TropicalWeight::new(1.0));
        for i in 0..c.alphabet.len() {
            let a = c.alphabet[i];
            c.set(a, a, TropicalWeight::one());
        }
        c
    }

    /// All operations cost `w`; the diagonal included.
    pub fn uniform(alphabet: impl IntoIterator<Item = Label>, w: TropicalWeight) -> Self {
        let alphabet: BTreeSet<Label> = alphabet.into_iter().collect();
        debug_assert!(!alphabet.contains(&EPSILON));
        let side = alphabet.iter().next_back().map_or(0, |&m| m as usize) + 1;
        let mut member = vec![false; side];
        member[EPSILON as usize] = true;
        for &a in &alphabet {
            member[a as usize] = true;
        }
        let mut table = vec![w; side * side];
        table[0] = TropicalWeight::INFINITY; // the (epsilon, epsilon) cell
        CostFunction { alphabet: alphabet.iter().copied().collect(), member, table, side }
    }

    /// Levenshtein base overridden by explicit `(input, output, cost)` cells.
    /// Costs must be finite and non-negative; `(ε, ε)` cannot be assigned.
    pub fn levenshtein_with_overrides(
        alphabet: impl IntoIterator<Item = Label>,
        entries: &[(Label, Label, f64)],
    ) -> Result<Self> {
        let mut c = CostFunction::levenshtein(alphabet);
        for &(input, output, cost) in entries {
            if input == EPSILON && output == EPSILON {
                return Err(Error::InvalidEditOp { input, output });
            }
            if !(c.contains_symbol(input) && c.contains_symbol(output)) {
                return Err(Error::InvalidEditOp { input, output });
            }
            if !(cost >= 0.0 && cost.is_finite()) {
                return Err(Error::InvalidEditOp { input, output });
            }
            c.set(input, output, TropicalWeight::new(cost));
        }
        Ok(c)
    }

    fn set(&mut self, input: Label, output: Label, w: TropicalWeight) {
        let idx = input as usize * self.side + output as usize;
        self.table[idx] = w;
    }

    /// True for epsilon and for every symbol of the declared alphabet.
    pub fn contains_symbol(&self, l: Label) -> bool {
        (l as usize) < self.side && self.member[l as usize]
    }

    /// Alphabet in ascending label order, epsilon excluded.
    pub fn alphabet(&self) -> &[Label] {
        &self.alphabet
    }

    /// `c(input, output)` for an operation inside the domain.
    pub fn cost(&self, input: Label, output: Label) -> Result<TropicalWeight> {
        if input == EPSILON && output == EPSILON {
            return Err(Error::InvalidEditOp { input, output });
        }
        if !(self.contains_symbol(input) && self.contains_symbol(output)) {
            return Err(Error::InvalidEditOp { input, output });
        }
        Ok(self.cost_unchecked(input, output))
    }

    /// Table lookup without domain checks; callers must have validated the
    /// operation. Used on the lattice inner loop.
    pub fn cost_unchecked(&self, input: Label, output: Label) -> TropicalWeight {
        debug_assert!(self.contains_symbol(input) && self.contains_symbol(output));
        debug_assert!(input != EPSILON || output != EPSILON);
        self.table[input as usize * self.side + output as usize]
    }

    /// `c(ω)`: the summed cost of an alignment; the empty alignment costs 0.
    pub fn alignment_cost(&self, alignment: &Alignment) -> Result<TropicalWeight> {
        let mut total = TropicalWeight::one();
        for op in alignment.ops() {
            total = total.extend(self.cost(op.input, op.output)?);
        }
        Ok(total)
    }

    /// The one-state edit transducer `T_c`: a self-loop per operation of
    /// `(Σ ∪ {ε})² \ {(ε, ε)}` weighted by its cost, so `(n+1)² - 1` loops.
    pub fn to_transducer(&self) -> WeightedTransducer {
        let mut t = WeightedTransducer::new(1);
        t.set_initial(0, TropicalWeight::one());
        t.set_final(0, TropicalWeight::one());
        t.widen_input_alphabet(self.alphabet.iter().copied());
        t.widen_output_alphabet(self.alphabet.iter().copied());
        let symbols: Vec<Label> =
            std::iter::once(EPSILON).chain(self.alphabet.iter().copied()).collect();
        for &input in &symbols {
            for &output in &symbols {
                if input == EPSILON && output == EPSILON {
                    continue;
                }
                t.add_transition(0, 0, input, output, self.cost_unchecked(input, output));
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: f64) -> TropicalWeight {
        TropicalWeight::new(v)
    }

    #[test]
    fn epsilon_epsilon_is_not_an_operation() {
        assert!(EditOp::new(EPSILON, EPSILON).is_err());
        assert!(EditOp::new(1, EPSILON).is_ok());
    }

    #[test]
    fn levenshtein_cells() {
        let c = CostFunction::levenshtein([1, 2]);
        assert_eq!(c.cost(1, 1).unwrap(), w(0.0));
        assert_eq!(c.cost(1, 2).unwrap(), w(1.0));
        assert_eq!(c.cost(1, EPSILON).unwrap(), w(1.0));
        assert_eq!(c.cost(EPSILON, 2).unwrap(), w(1.0));
        assert!(c.cost(EPSILON, EPSILON).is_err());
        assert!(c.cost(1, 9).is_err());
    }

    #[test]
    fn alignment_cost_examples() {
        let c = CostFunction::levenshtein([1, 2]);
        assert_eq!(c.alignment_cost(&Alignment::new()).unwrap(), w(0.0));
        // (a,a)(b,eps)(a,a) under Levenshtein costs 1.
        let ops = Alignment::from_ops(vec![
            EditOp::substitution(1, 1),
            EditOp::deletion(2),
            EditOp::substitution(1, 1),
        ]);
        assert_eq!(c.alignment_cost(&ops).unwrap(), w(1.0));
    }

    #[test]
    fn projection_erases_epsilons() {
        let ops = Alignment::from_ops(vec![
            EditOp::substitution(1, 2),
            EditOp::deletion(2),
            EditOp::insertion(1),
        ]);
        let (x, y) = ops.project();
        assert_eq!(x, vec![1, 2]);
        assert_eq!(y, vec![2, 1]);
        assert_eq!(Alignment::new().project(), (vec![], vec![]));
    }

    #[test]
    fn edit_transducer_shape() {
        let c = CostFunction::levenshtein([1, 2]);
        let t = c.to_transducer();
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.num_transitions(), 8); // (2+1)^2 - 1
        assert!(t.transitions().iter().all(|tr| tr.src == 0 && tr.dst == 0));
        // Exactly one loop per operation.
        let mut seen = std::collections::BTreeSet::new();
        for tr in t.transitions() {
            assert!(seen.insert((tr.ilabel, tr.olabel)));
            assert!(!(tr.ilabel == EPSILON && tr.olabel == EPSILON));
        }
    }

    #[test]
    fn overrides_replace_levenshtein_cells() {
        let c = CostFunction::levenshtein_with_overrides(
            [1, 2],
            &[(1, 2, 0.25), (1, EPSILON, 3.0)],
        )
        .unwrap();
        assert_eq!(c.cost(1, 2).unwrap(), w(0.25));
        assert_eq!(c.cost(1, EPSILON).unwrap(), w(3.0));
        assert_eq!(c.cost(2, 1).unwrap(), w(1.0));
        assert!(CostFunction::levenshtein_with_overrides([1], &[(1, 1, -0.5)]).is_err());
        assert!(
            CostFunction::levenshtein_with_overrides([1], &[(EPSILON, EPSILON, 0.0)])
                .is_err()
        );
    }

    fn arb_op() -> impl Strategy<Value = EditOp> {
        (0u32..=3, 0u32..=3)
            .prop_filter("not both epsilon", |&(i, o)| i != EPSILON || o != EPSILON)
            .prop_map(|(i, o)| EditOp { input: i, output: o })
    }

    proptest! {
        #[test]
        fn alignment_cost_is_additive(
            left in prop::collection::vec(arb_op(), 0..12),
            right in prop::collection::vec(arb_op(), 0..12),
        ) {
            let c = CostFunction::levenshtein([1, 2, 3]);
            let mut both = left.clone();
            both.extend(right.iter().copied());
            let total = c.alignment_cost(&Alignment::from_ops(both)).unwrap();
            let l = c.alignment_cost(&Alignment::from_ops(left)).unwrap();
            let r = c.alignment_cost(&Alignment::from_ops(right)).unwrap();
            prop_assert_eq!(total, l.extend(r));
        }
    }
}
