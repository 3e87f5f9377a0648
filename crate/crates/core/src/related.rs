//! The conjecture-related term set that every similarity weight compares
//! against.

use std::collections::HashMap;

use crate::distance::ted::TedTree;
use crate::term::{Clause, Label, Norm, Role, Term};

/// How the related set is grown from the conjecture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatedMode {
    /// Conjecture atoms and their immediate arguments.
    Ter,
    /// Conjecture atoms and all their subterms.
    Sub,
    /// `Sub` plus the one-layer generalization `f(X1,..,Xn)` of each member.
    Top,
    /// `Sub` plus every generalization, answered by matching.
    Gen,
}

/// A base member with the views the distance kernels need.
#[derive(Clone, Debug)]
pub struct Member {
    pub term: Term,
    pub sequence: Vec<Label>,
    /// `subterm_end[i]` is one past the last position of the subterm that
    /// starts at position `i` of `sequence`.
    pub subterm_end: Vec<usize>,
    pub tree: TedTree,
    /// Occurrences of this term in the construction of the set.
    pub count: u32,
}

impl Member {
    fn new(term: Term, count: u32) -> Self {
        let sequence = term.symbol_sequence();
        let mut subterm_end = vec![0; sequence.len()];
        fill_ends(&term, 0, &mut subterm_end);
        let tree = TedTree::new(&term);
        Member {
            term,
            sequence,
            subterm_end,
            tree,
            count,
        }
    }
}

fn fill_ends(t: &Term, start: usize, ends: &mut [usize]) -> usize {
    let mut pos = start + 1;
    for a in t.args() {
        pos = fill_ends(a, pos, ends);
    }
    ends[start] = pos;
    pos
}

#[derive(Clone, Debug)]
pub struct RelatedSet {
    mode: RelatedMode,
    norm: Norm,
    members: Vec<Member>,
    index: HashMap<Term, usize>,
    by_head: HashMap<Label, Vec<usize>>,
}

impl RelatedSet {
    /// Builds the set from the `negated_conjecture` clauses among `clauses`;
    /// other roles are ignored.
    pub fn build<'a>(
        clauses: impl IntoIterator<Item = &'a Clause>,
        mode: RelatedMode,
        norm: Norm,
    ) -> Self {
        let mut set = RelatedSet {
            mode,
            norm,
            members: Vec::new(),
            index: HashMap::new(),
            by_head: HashMap::new(),
        };
        let atoms = clauses
            .into_iter()
            .filter(|c| c.role == Role::NegatedConjecture)
            .flat_map(|c| c.literals.iter().map(|l| &l.atom));
        for atom in atoms {
            match mode {
                RelatedMode::Ter => {
                    set.add(atom.normalize(norm));
                    for arg in atom.args() {
                        set.add(arg.normalize(norm));
                    }
                }
                RelatedMode::Sub | RelatedMode::Gen => {
                    for s in atom.occurrences() {
                        set.add(s.normalize(norm));
                    }
                }
                RelatedMode::Top => {
                    for s in atom.occurrences() {
                        set.add(s.normalize(norm));
                        if let Some(g) = top_generalization(s) {
                            set.add(g.normalize(norm));
                        }
                    }
                }
            }
        }
        set
    }

    fn add(&mut self, t: Term) {
        if let Some(&i) = self.index.get(&t) {
            self.members[i].count += 1;
            return;
        }
        let i = self.members.len();
        self.by_head.entry(t.label()).or_default().push(i);
        self.index.insert(t.clone(), i);
        self.members.push(Member::new(t, 1));
    }

    pub fn mode(&self) -> RelatedMode {
        self.mode
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The exact members, in order of first insertion.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn base(&self) -> impl Iterator<Item = &Term> {
        self.members.iter().map(|m| &m.term)
    }

    /// Membership of an already normalized term. In `Gen` mode this holds
    /// iff `t` is the normalized form of a generalization of some base
    /// member.
    pub fn contains(&self, t: &Term) -> bool {
        match self.mode {
            RelatedMode::Gen => self.matching_members(t).next().is_some(),
            _ => self.index.contains_key(t),
        }
    }

    /// Term frequency: occurrences of `t` in the construction of the set.
    /// In `Gen` mode every base member that `t` generalizes contributes its
    /// count.
    pub fn term_frequency(&self, t: &Term) -> u32 {
        match self.mode {
            RelatedMode::Gen => self.matching_members(t).map(|m| m.count).sum(),
            _ => self.index.get(t).map_or(0, |&i| self.members[i].count),
        }
    }

    fn matching_members<'a>(&'a self, t: &'a Term) -> Box<dyn Iterator<Item = &'a Member> + 'a> {
        match t {
            Term::Var(_) => Box::new(self.members.iter()),
            Term::App(..) => {
                let candidates = self.by_head.get(&t.label()).map_or(&[][..], |v| v.as_slice());
                Box::new(
                    candidates
                        .iter()
                        .map(move |&i| &self.members[i])
                        .filter(move |m| generalizes(t, &m.term, self.norm)),
                )
            }
        }
    }
}

/// `f(t1,..,tn)` becomes `f(X0,..,X(n-1))`; variables and constants have none.
fn top_generalization(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, args) if !args.is_empty() => Some(Term::App(
            *f,
            (0..args.len() as u32).map(Term::Var).collect(),
        )),
        _ => None,
    }
}

/// One-sided matching: is there a `σ` with `pattern σ = target`, where
/// `target`'s variables are rigid?
///
/// Under `Uni` every variable of the pattern stands for a distinct
/// generalized position (the single shared name is an artifact of the
/// normalization), so occurrences bind independently.
pub fn generalizes(pattern: &Term, target: &Term, norm: Norm) -> bool {
    let mut bindings: HashMap<u32, &Term> = HashMap::new();
    match_into(pattern, target, norm, &mut bindings)
}

fn match_into<'a>(
    pattern: &Term,
    target: &'a Term,
    norm: Norm,
    bindings: &mut HashMap<u32, &'a Term>,
) -> bool {
    match (pattern, target) {
        (Term::Var(_), _) if norm == Norm::Uni => true,
        (Term::Var(v), _) => match bindings.get(v) {
            Some(bound) => *bound == target,
            None => {
                bindings.insert(*v, target);
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| match_into(x, y, norm, bindings))
        }
        (Term::App(..), Term::Var(_)) => false,
    }
}
