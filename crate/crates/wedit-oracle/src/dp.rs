//! Textbook string-to-string edit distance: the full quadratic table plus a
//! traceback. Ties prefer substitution, then deletion, then insertion.

use wedit::{Alignment, CostFunction, EditOp, Label, TropicalWeight, EPSILON};

/// Distance and one optimal alignment between two plain strings.
#[derive(Clone, Debug)]
pub struct DpAlignment {
    pub distance: TropicalWeight,
    pub alignment: Alignment,
}

pub fn dp_edit_distance(x: &[Label], y: &[Label], costs: &CostFunction) -> DpAlignment {
    let (n, m) = (x.len(), y.len());
    let cost = |input: Label, output: Label| {
        costs.cost(input, output).expect("cost domain covers both strings")
    };
    let mut d = vec![vec![TropicalWeight::INFINITY; m + 1]; n + 1];
    d[0][0] = TropicalWeight::one();
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = TropicalWeight::INFINITY;
            if i > 0 && j > 0 {
                best = best.combine(d[i - 1][j - 1].extend(cost(x[i - 1], y[j - 1])));
            }
            if i > 0 {
                best = best.combine(d[i - 1][j].extend(cost(x[i - 1], EPSILON)));
            }
            if j > 0 {
                best = best.combine(d[i][j - 1].extend(cost(EPSILON, y[j - 1])));
            }
            d[i][j] = best;
        }
    }

    let mut ops: Vec<EditOp> = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1].extend(cost(x[i - 1], y[j - 1])) {
            ops.push(EditOp::substitution(x[i - 1], y[j - 1]));
            i -= 1;
            j -= 1;
        } else if i > 0 && d[i][j] == d[i - 1][j].extend(cost(x[i - 1], EPSILON)) {
            ops.push(EditOp::deletion(x[i - 1]));
            i -= 1;
        } else {
            ops.push(EditOp::insertion(y[j - 1]));
            j -= 1;
        }
    }
    ops.reverse();
    DpAlignment { distance: d[n][m], alignment: Alignment::from_ops(ops) }
}

/// Minimum alignment cost by bare recursion over every operation sequence.
/// Exponential; keep `|x|, |y|` small.
pub fn exhaustive_alignment_min(x: &[Label], y: &[Label], costs: &CostFunction) -> TropicalWeight {
    fn rec(x: &[Label], y: &[Label], costs: &CostFunction) -> TropicalWeight {
        if x.is_empty() && y.is_empty() {
            return TropicalWeight::one();
        }
        let mut best = TropicalWeight::INFINITY;
        if !x.is_empty() && !y.is_empty() {
            let c = costs.cost(x[0], y[0]).expect("cost domain");
            best = best.combine(c.extend(rec(&x[1..], &y[1..], costs)));
        }
        if !x.is_empty() {
            let c = costs.cost(x[0], EPSILON).expect("cost domain");
            best = best.combine(c.extend(rec(&x[1..], y, costs)));
        }
        if !y.is_empty() {
            let c = costs.cost(EPSILON, y[0]).expect("cost domain");
            best = best.combine(c.extend(rec(x, &y[1..], costs)));
        }
        best
    }
    rec(x, y, costs)
}
