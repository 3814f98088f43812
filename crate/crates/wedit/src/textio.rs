//! Plain-text automaton, transducer, and cost-table formats.
//!
//! One item per line, fields separated by whitespace:
//!
//! ```text
//! @initial STATE [WEIGHT]     entry state (repeatable; weight defaults to 0)
//! SRC DST LABEL [WEIGHT]      acceptor arc
//! SRC DST ILABEL OLABEL [W]   transducer arc
//! STATE [WEIGHT]              final state
//! ```
//!
//! State names are arbitrary tokens, mapped to dense ids by first appearance.
//! Without an `@initial` line, the source of the first arc is the entry state
//! with weight 0. The token `<eps>` denotes the empty label; acceptors reject
//! it. Serialization writes canonical numeric state names, so a parsed file
//! reserializes into a fixed normal form.

use std::collections::HashMap;

use crate::automata::{Label, StateId, WeightedAutomaton, WeightedTransducer, EPSILON};
use crate::semiring::TropicalWeight;
use crate::{Error, Result};

pub const EPSILON_TOKEN: &str = "<eps>";

/// Bidirectional map between label ids and their printable names.
/// Id 0 is always `<eps>`.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    names: Vec<String>,
    ids: HashMap<String, Label>,
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut ids = HashMap::new();
        ids.insert(EPSILON_TOKEN.to_string(), EPSILON);
        SymbolTable { names: vec![EPSILON_TOKEN.to_string()], ids }
    }

    /// Builds a table from one symbol per line, ids assigned in file order.
    pub fn parse(text: &str) -> Result<SymbolTable> {
        let mut table = SymbolTable::new();
        for (lineno, line) in numbered_lines(text) {
            let mut tokens = line.split_whitespace();
            let name = tokens.next().expect("numbered_lines yields non-blank lines");
            if tokens.next().is_some() {
                return Err(parse_error(lineno, "expected one symbol per line"));
            }
            if table.ids.contains_key(name) {
                return Err(parse_error(lineno, format!("duplicate symbol `{name}`")));
            }
            table.intern(name);
        }
        Ok(table)
    }

    pub fn intern(&mut self, name: &str) -> Label {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len() as Label;
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<Label> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, label: Label) -> Option<&str> {
        self.names.get(label as usize).map(String::as_str)
    }

    /// Number of symbols, counting `<eps>`; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// All non-epsilon labels, in id order.
    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (1..self.names.len()).map(|i| i as Label)
    }
}

impl Default for SymbolTable {
    fn default() -> Self {
        SymbolTable::new()
    }
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_weight(token: &str, line: usize) -> Result<TropicalWeight> {
    let v: f64 = token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid weight `{token}`")))?;
    if v.is_nan() {
        return Err(parse_error(line, "weight must not be NaN"));
    }
    if v < 0.0 {
        return Err(parse_error(line, format!("negative weight `{token}`")));
    }
    Ok(TropicalWeight::new(v))
}

#[derive(Default)]
struct StateTable {
    ids: HashMap<String, StateId>,
}

impl StateTable {
    fn intern(&mut self, token: &str) -> StateId {
        let next = self.ids.len();
        *self.ids.entry(token.to_string()).or_insert(next)
    }
}

fn split_directive<'a>(
    tokens: &[&'a str],
    lineno: usize,
) -> Result<Option<(&'a str, TropicalWeight)>> {
    if !tokens[0].starts_with('@') {
        return Ok(None);
    }
    if tokens[0] != "@initial" {
        return Err(parse_error(lineno, format!("unknown directive `{}`", tokens[0])));
    }
    match tokens.len() {
        2 => Ok(Some((tokens[1], TropicalWeight::one()))),
        3 => Ok(Some((tokens[1], parse_weight(tokens[2], lineno)?))),
        _ => Err(parse_error(lineno, "@initial takes a state and an optional weight")),
    }
}

/// Parses an acceptor, interning labels into `symbols`.
pub fn parse_automaton(text: &str, symbols: &mut SymbolTable) -> Result<WeightedAutomaton> {
    let mut a = WeightedAutomaton::new(0);
    let mut states = StateTable::default();
    let mut ensure = |a: &mut WeightedAutomaton, token: &str| -> StateId {
        let q = states.intern(token);
        while a.num_states() <= q {
            a.add_state();
        }
        q
    };
    let mut saw_initial = false;
    let mut first_arc_src: Option<StateId> = None;

    for (lineno, line) in numbered_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some((state, weight)) = split_directive(&tokens, lineno)? {
            let q = ensure(&mut a, state);
            a.set_initial(q, weight);
            saw_initial = true;
            continue;
        }
        match tokens.len() {
            1 | 2 => {
                let q = ensure(&mut a, tokens[0]);
                let w = if tokens.len() == 2 {
                    parse_weight(tokens[1], lineno)?
                } else {
                    TropicalWeight::one()
                };
                a.set_final(q, w);
            }
            3 | 4 => {
                let src = ensure(&mut a, tokens[0]);
                let dst = ensure(&mut a, tokens[1]);
                let label = symbols.intern(tokens[2]);
                if label == EPSILON {
                    return Err(parse_error(lineno, "acceptors cannot carry `<eps>` arcs"));
                }
                let w = if tokens.len() == 4 {
                    parse_weight(tokens[3], lineno)?
                } else {
                    TropicalWeight::one()
                };
                a.add_arc(src, dst, label, w);
                first_arc_src.get_or_insert(src);
            }
            _ => return Err(parse_error(lineno, "expected 1 to 4 fields")),
        }
    }

    if !saw_initial {
        match first_arc_src {
            Some(src) => a.set_initial(src, TropicalWeight::one()),
            None => {
                return Err(parse_error(
                    0,
                    "no @initial directive and no arc to infer an initial state from",
                ))
            }
        }
    }
    Ok(a)
}

/// Parses a transducer; `<eps>` is allowed on either tape.
pub fn parse_transducer(
    text: &str,
    input_symbols: &mut SymbolTable,
    output_symbols: &mut SymbolTable,
) -> Result<WeightedTransducer> {
    let mut t = WeightedTransducer::new(0);
    let mut states = StateTable::default();
    let mut ensure = |t: &mut WeightedTransducer, token: &str| -> StateId {
        let q = states.intern(token);
        while t.num_states() <= q {
            t.add_state();
        }
        q
    };
    let mut saw_initial = false;
    let mut first_arc_src: Option<StateId> = None;

    for (lineno, line) in numbered_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some((state, weight)) = split_directive(&tokens, lineno)? {
            let q = ensure(&mut t, state);
            t.set_initial(q, weight);
            saw_initial = true;
            continue;
        }
        match tokens.len() {
            1 | 2 => {
                let q = ensure(&mut t, tokens[0]);
                let w = if tokens.len() == 2 {
                    parse_weight(tokens[1], lineno)?
                } else {
                    TropicalWeight::one()
                };
                t.set_final(q, w);
            }
            4 | 5 => {
                let src = ensure(&mut t, tokens[0]);
                let dst = ensure(&mut t, tokens[1]);
                let ilabel = input_symbols.intern(tokens[2]);
                let olabel = output_symbols.intern(tokens[3]);
                if ilabel == EPSILON && olabel == EPSILON {
                    return Err(parse_error(lineno, "arc maps `<eps>` to `<eps>`"));
                }
                let w = if tokens.len() == 5 {
                    parse_weight(tokens[4], lineno)?
                } else {
                    TropicalWeight::one()
                };
                t.add_transition(src, dst, ilabel, olabel, w);
                first_arc_src.get_or_insert(src);
            }
            _ => return Err(parse_error(lineno, "expected 1, 2, 4, or 5 fields")),
        }
    }

    if !saw_initial {
        match first_arc_src {
            Some(src) => t.set_initial(src, TropicalWeight::one()),
            None => {
                return Err(parse_error(
                    0,
                    "no @initial directive and no arc to infer an initial state from",
                ))
            }
        }
    }
    Ok(t)
}

fn label_name(symbols: &SymbolTable, label: Label) -> String {
    symbols.name(label).map(str::to_string).unwrap_or_else(|| label.to_string())
}

/// Canonical text form: `@initial` lines, arcs in stored order, then finals,
/// all weights explicit and state names numeric.
pub fn serialize_automaton(a: &WeightedAutomaton, symbols: &SymbolTable) -> String {
    let mut out = String::new();
    for (&q, &w) in a.initial() {
        out.push_str(&format!("@initial {q} {w}\n"));
    }
    for arc in a.arcs() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            arc.src,
            arc.dst,
            label_name(symbols, arc.label),
            arc.weight
        ));
    }
    for (&q, &w) in a.finals() {
        out.push_str(&format!("{q} {w}\n"));
    }
    out
}

pub fn serialize_transducer(
    t: &WeightedTransducer,
    input_symbols: &SymbolTable,
    output_symbols: &SymbolTable,
) -> String {
    let mut out = String::new();
    for (&q, &w) in t.initial() {
        out.push_str(&format!("@initial {q} {w}\n"));
    }
    for tr in t.transitions() {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            tr.src,
            tr.dst,
            label_name(input_symbols, tr.ilabel),
            label_name(output_symbols, tr.olabel),
            tr.weight
        ));
    }
    for (&q, &w) in t.finals() {
        out.push_str(&format!("{q} {w}\n"));
    }
    out
}

/// Parses `INPUT OUTPUT COST` lines for edit-cost overrides. Costs must be
/// finite and non-negative; `(<eps>, <eps>)` is rejected.
pub fn parse_cost_entries(
    text: &str,
    symbols: &mut SymbolTable,
) -> Result<Vec<(Label, Label, TropicalWeight)>> {
    let mut entries = Vec::new();
    for (lineno, line) in numbered_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(parse_error(lineno, "expected `input output cost`"));
        }
        let input = symbols.intern(tokens[0]);
        let output = symbols.intern(tokens[1]);
        if input == EPSILON && output == EPSILON {
            return Err(parse_error(lineno, "cannot assign a cost to (<eps>, <eps>)"));
        }
        let w = parse_weight(tokens[2], lineno)?;
        if w.is_infinite() {
            return Err(parse_error(lineno, "edit costs must be finite"));
        }
        entries.push((input, output, w));
    }
    Ok(entries)
}
