//! Weighted Levenshtein distance over symbol sequences.

use num_rational::Rational64;

use super::{unscale, EditCosts, ScaledEditCosts};

/// Minimum total cost of turning `a` into `b` by single-symbol insertions,
/// deletions and changes. Changing a symbol into an equal one is free.
pub fn levenshtein<L: PartialEq>(a: &[L], b: &[L], costs: &EditCosts) -> Rational64 {
    let c = costs.scaled();
    unscale(levenshtein_scaled(a, b, &c), c.denom)
}

pub(crate) fn levenshtein_scaled<L: PartialEq>(a: &[L], b: &[L], c: &ScaledEditCosts) -> u64 {
    // row[j] holds the distance between a[..i] and b[..j].
    let mut row: Vec<u64> = (0..=b.len() as u64).map(|j| j * c.ins).collect();
    for (i, x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = (i as u64 + 1) * c.del;
        for (j, y) in b.iter().enumerate() {
            let change = if x == y { 0 } else { c.ch };
            let best = (diag + change)
                .min(row[j + 1] + c.del)
                .min(row[j] + c.ins);
            diag = row[j + 1];
            row[j + 1] = best;
        }
    }
    row[b.len()]
}
