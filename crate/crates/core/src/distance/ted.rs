//! Ordered tree edit distance (Zhang–Shasha keyroot decomposition).
//!
//! Operations: insert a node, delete a node (its children move up into its
//! place), rename a node. Renaming to an equal label is free.

use num_rational::Rational64;

use super::{unscale, EditCosts, ScaledEditCosts};
use crate::term::{Label, Term};

/// A term in the post-order layout the algorithm works on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TedTree {
    labels: Vec<Label>,
    /// Post-order index of each node's leftmost leaf descendant.
    leftmost: Vec<usize>,
    keyroots: Vec<usize>,
}

impl TedTree {
    pub fn new(t: &Term) -> Self {
        let mut tree = TedTree {
            labels: Vec::with_capacity(t.size()),
            leftmost: Vec::with_capacity(t.size()),
            keyroots: Vec::new(),
        };
        tree.push(t);
        let n = tree.labels.len();
        // A keyroot is the highest node for its leftmost leaf.
        let mut seen = vec![false; n];
        for i in (0..n).rev() {
            let l = tree.leftmost[i];
            if !seen[l] {
                seen[l] = true;
                tree.keyroots.push(i);
            }
        }
        tree.keyroots.reverse();
        tree
    }

    fn push(&mut self, t: &Term) -> usize {
        let mut first_leaf = None;
        for arg in t.args() {
            let child = self.push(arg);
            first_leaf.get_or_insert(self.leftmost[child]);
        }
        let idx = self.labels.len();
        self.labels.push(t.label());
        self.leftmost.push(first_leaf.unwrap_or(idx));
        idx
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Reusable buffers for [`ted_scaled`].
#[derive(Default)]
pub(crate) struct Scratch {
    tree_dist: Vec<u64>,
    forest_dist: Vec<u64>,
}

pub fn tree_edit_distance(a: &Term, b: &Term, costs: &EditCosts) -> Rational64 {
    let c = costs.scaled();
    let d = ted_scaled(
        &TedTree::new(a),
        &TedTree::new(b),
        &c,
        &mut Scratch::default(),
    );
    unscale(d, c.denom)
}

pub(crate) fn ted_scaled(a: &TedTree, b: &TedTree, c: &ScaledEditCosts, s: &mut Scratch) -> u64 {
    let (n1, n2) = (a.len(), b.len());
    s.tree_dist.clear();
    s.tree_dist.resize(n1 * n2, 0);
    let stride = n2 + 1;
    s.forest_dist.clear();
    s.forest_dist.resize((n1 + 1) * stride, 0);
    let td = &mut s.tree_dist;
    let fd = &mut s.forest_dist;

    for &i in &a.keyroots {
        for &j in &b.keyroots {
            let (li, lj) = (a.leftmost[i], b.leftmost[j]);
            let (rows, cols) = (i - li + 2, j - lj + 2);
            fd[0] = 0;
            for x in 1..rows {
                fd[x * stride] = fd[(x - 1) * stride] + c.del;
            }
            for y in 1..cols {
                fd[y] = fd[y - 1] + c.ins;
            }
            for x in 1..rows {
                let ai = li + x - 1;
                for y in 1..cols {
                    let bj = lj + y - 1;
                    let del = fd[(x - 1) * stride + y] + c.del;
                    let ins = fd[x * stride + y - 1] + c.ins;
                    let best = if a.leftmost[ai] == li && b.leftmost[bj] == lj {
                        let rename = if a.labels[ai] == b.labels[bj] { 0 } else { c.ch };
                        let d = del.min(ins).min(fd[(x - 1) * stride + y - 1] + rename);
                        td[ai * n2 + bj] = d;
                        d
                    } else {
                        let p = a.leftmost[ai] - li;
                        let q = b.leftmost[bj] - lj;
                        del.min(ins).min(fd[p * stride + q] + td[ai * n2 + bj])
                    };
                    fd[x * stride + y] = best;
                }
            }
        }
    }
    td[n1 * n2 - 1]
}
