//! Similarity kernels between terms: weighted Levenshtein over symbol
//! sequences, ordered tree edit distance, the generalization/instantiation
//! structural distance, and prefix matching against a related set.
//!
//! Costs are non-negative rationals. Kernels scale them to a common
//! denominator and run in integer arithmetic, so results are exact.

pub mod lev;
pub mod structural;
pub mod ted;

use num_rational::Rational64;
use num_traits::Signed;

use crate::related::{Member, RelatedMode, RelatedSet};
use crate::term::{Label, Norm, Term};

pub use lev::levenshtein;
pub use structural::struct_distance;
pub use ted::tree_edit_distance;

/// Distance reported against an empty related set.
pub const EMPTY_RELATED_DISTANCE: i64 = 1 << 20;

/// Costs of inserting, deleting and changing one symbol (or tree node).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EditCosts {
    pub ins: Rational64,
    pub del: Rational64,
    pub ch: Rational64,
}

impl EditCosts {
    pub fn new(ins: Rational64, del: Rational64, ch: Rational64) -> Self {
        assert!(
            !(ins.is_negative() || del.is_negative() || ch.is_negative()),
            "edit costs must be non-negative"
        );
        EditCosts { ins, del, ch }
    }

    pub fn integers(ins: i64, del: i64, ch: i64) -> Self {
        Self::new(ins.into(), del.into(), ch.into())
    }

    pub fn unit() -> Self {
        Self::integers(1, 1, 1)
    }

    pub(crate) fn scaled(&self) -> ScaledEditCosts {
        let (v, denom) = scale([self.ins, self.del, self.ch]);
        ScaledEditCosts {
            ins: v[0],
            del: v[1],
            ch: v[2],
            denom,
        }
    }
}

/// Penalties of the structural distance: variable mismatch, instantiating a
/// variable to a term, generalizing a term to a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StructCosts {
    pub miss: Rational64,
    pub inst: Rational64,
    pub gen: Rational64,
}

impl StructCosts {
    pub fn new(miss: Rational64, inst: Rational64, gen: Rational64) -> Self {
        assert!(
            !(miss.is_negative() || inst.is_negative() || gen.is_negative()),
            "structural costs must be non-negative"
        );
        StructCosts { miss, inst, gen }
    }

    pub fn integers(miss: i64, inst: i64, gen: i64) -> Self {
        Self::new(miss.into(), inst.into(), gen.into())
    }

    pub(crate) fn scaled(&self) -> ScaledStructCosts {
        let (v, denom) = scale([self.miss, self.inst, self.gen]);
        ScaledStructCosts {
            miss: v[0],
            inst: v[1],
            gen: v[2],
            denom,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ScaledEditCosts {
    pub ins: u64,
    pub del: u64,
    pub ch: u64,
    pub denom: i64,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ScaledStructCosts {
    pub miss: u64,
    pub inst: u64,
    pub gen: u64,
    pub denom: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn scale<const N: usize>(costs: [Rational64; N]) -> ([u64; N], i64) {
    let denom = costs
        .iter()
        .fold(1i64, |l, c| l / gcd(l, *c.denom()) * c.denom());
    let mut out = [0u64; N];
    for (o, c) in out.iter_mut().zip(costs) {
        *o = (c.numer() * (denom / c.denom())) as u64;
    }
    (out, denom)
}

pub(crate) fn unscale(value: u64, denom: i64) -> Rational64 {
    Rational64::new(value as i64, denom)
}

/// The kernel used by a distance-based weight, with its costs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    Lev(EditCosts),
    Ted(EditCosts),
    Struc(StructCosts),
}

/// Smallest kernel distance from `t` to a base member of `related`, or
/// [`EMPTY_RELATED_DISTANCE`] when the set is empty. `t` must already be
/// normalized under the set's normalization.
pub fn min_distance_to_related(t: &Term, related: &RelatedSet, kernel: &Kernel) -> Rational64 {
    if related.is_empty() {
        return EMPTY_RELATED_DISTANCE.into();
    }
    match kernel {
        Kernel::Lev(costs) => {
            let c = costs.scaled();
            let seq = t.symbol_sequence();
            let best = related
                .members()
                .iter()
                .map(|m| lev::levenshtein_scaled(&seq, &m.sequence, &c))
                .min()
                .unwrap_or(0);
            unscale(best, c.denom)
        }
        Kernel::Ted(costs) => {
            let c = costs.scaled();
            let tree = ted::TedTree::new(t);
            let mut scratch = ted::Scratch::default();
            let best = related
                .members()
                .iter()
                .map(|m| ted::ted_scaled(&tree, &m.tree, &c, &mut scratch))
                .min()
                .unwrap_or(0);
            unscale(best, c.denom)
        }
        Kernel::Struc(costs) => {
            let c = costs.scaled();
            let best = related
                .members()
                .iter()
                .map(|m| structural::struct_scaled(t, &m.term, &c))
                .min()
                .unwrap_or(0);
            unscale(best, c.denom)
        }
    }
}

/// Length of the longest prefix of `t`'s symbol sequence shared with a term
/// of `related`; `t` must be normalized under the set's normalization.
///
/// In `Gen` mode the related terms include generalizations of the base, so a
/// variable of `t` may stand for a whole subterm of a base member.
pub fn longest_related_prefix(t: &Term, related: &RelatedSet) -> usize {
    let seq = t.symbol_sequence();
    let gen = related.mode() == RelatedMode::Gen;
    related
        .members()
        .iter()
        .map(|m| {
            if gen {
                generalized_prefix(&seq, m, related.norm())
            } else {
                common_prefix(&seq, &m.sequence)
            }
        })
        .max()
        .unwrap_or(0)
}

pub fn common_prefix(a: &[Label], b: &[Label]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Walks `seq` against `member`, letting each variable of `seq` absorb one
/// whole subterm of the member. Under `Alf` a repeated variable must absorb
/// equal subterms.
fn generalized_prefix(seq: &[Label], member: &Member, norm: Norm) -> usize {
    let target = &member.sequence;
    let mut bound: Vec<Option<(usize, usize)>> = Vec::new();
    let mut j = 0;
    for (i, label) in seq.iter().enumerate() {
        if j >= target.len() {
            return i;
        }
        match label {
            Label::Var(v) => {
                let end = member.subterm_end[j];
                if norm == Norm::Alf {
                    let v = *v as usize;
                    if bound.len() <= v {
                        bound.resize(v + 1, None);
                    }
                    match bound[v] {
                        Some((s, e)) if target[s..e] != target[j..end] => return i,
                        Some(_) => {}
                        None => bound[v] = Some((j, end)),
                    }
                }
                j = end;
            }
            Label::Sym(_) => {
                if target[j] != *label {
                    return i;
                }
                j += 1;
            }
        }
    }
    seq.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Norm;
    use crate::tptp::parse_problem;

    fn setup(conj: &str, mode: RelatedMode, norm: Norm) -> (crate::tptp::Problem, RelatedSet) {
        let text = format!(
            "cnf(g, negated_conjecture, {conj}).\ncnf(q, axiom, w(f(a,b), f(b,c), f(a,c), g(a), g(b), h(X))).\n"
        );
        let p = parse_problem(&text).unwrap();
        let r = RelatedSet::build(&p.clauses, mode, norm);
        (p, r)
    }

    fn arg(p: &crate::tptp::Problem, i: usize) -> Term {
        p.clauses[1].literals[0].atom.args()[i].clone()
    }

    #[test]
    fn prefix_examples() {
        let (p, r) = setup("~q(f(a,c))", RelatedMode::Ter, Norm::Alf);
        // Members: q(f(a,c)) and f(a,c).
        assert_eq!(longest_related_prefix(&arg(&p, 0), &r), 2);
        assert_eq!(longest_related_prefix(&arg(&p, 2), &r), 3);
        let empty = RelatedSet::build(&p.clauses[1..], RelatedMode::Ter, Norm::Alf);
        assert_eq!(longest_related_prefix(&arg(&p, 0), &empty), 0);
    }

    #[test]
    fn gen_prefix_lets_variables_absorb_subterms() {
        let (p, gen) = setup("~q(g(f(a,b)))", RelatedMode::Gen, Norm::Alf);
        let (_, sub) = setup("~q(g(f(a,b)))", RelatedMode::Sub, Norm::Alf);
        let g = p.signature.lookup("g").unwrap();
        let gx = Term::App(g, vec![Term::Var(0)]);
        assert_eq!(longest_related_prefix(&gx, &gen), 2);
        assert_eq!(longest_related_prefix(&gx, &sub), 1);
        assert_eq!(longest_related_prefix(&Term::Var(0), &gen), 1);
    }

    #[test]
    fn min_distance_examples() {
        let p = parse_problem(
            "cnf(g, negated_conjecture, ~r(a, f(a))).\ncnf(x, axiom, r(f(b), b)).",
        )
        .unwrap();
        // Ter over r(a,f(a)) gives members r(a,f(a)), a, f(a).
        let r = RelatedSet::build(&p.clauses, RelatedMode::Ter, Norm::Alf);
        let fb = p.clauses[1].literals[0].atom.args()[0].clone();
        let d = min_distance_to_related(&fb, &r, &Kernel::Lev(EditCosts::unit()));
        assert_eq!(d, Rational64::from(1));
        let fa = r.base().nth(2).unwrap().clone();
        for kernel in [
            Kernel::Lev(EditCosts::unit()),
            Kernel::Ted(EditCosts::integers(1, 5, 5)),
            Kernel::Struc(StructCosts::integers(1, 1, 5)),
        ] {
            assert_eq!(min_distance_to_related(&fa, &r, &kernel), Rational64::from(0));
        }
        let empty = RelatedSet::build(&p.clauses[1..], RelatedMode::Gen, Norm::Uni);
        assert_eq!(
            min_distance_to_related(&fa, &empty, &Kernel::Lev(EditCosts::unit())),
            Rational64::from(EMPTY_RELATED_DISTANCE)
        );
    }

    #[test]
    fn fractional_costs_stay_exact() {
        let c = EditCosts::new(Rational64::new(1, 2), Rational64::new(1, 3), 1.into());
        let s = c.scaled();
        assert_eq!((s.ins, s.del, s.ch, s.denom), (3, 2, 6, 6));
        assert_eq!(unscale(5, 6), Rational64::new(5, 6));
    }
}
