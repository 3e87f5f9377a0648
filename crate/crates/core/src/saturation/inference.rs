//! Binary resolution, factoring, tautology detection and forward
//! subsumption.

use crate::term::{Clause, Literal, Role, Term};

/// A triangular substitution whose bindings point into the unified terms.
struct Subst<'a> {
    bindings: Vec<Option<&'a Term>>,
}

impl<'a> Subst<'a> {
    fn new(vars: usize) -> Self {
        Subst {
            bindings: vec![None; vars],
        }
    }

    fn walk(&self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.bindings[*v as usize] {
                Some(b) => t = b,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: u32, t: &'a Term) -> bool {
        match self.walk(t) {
            Term::Var(u) => *u == v,
            Term::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn unify(&mut self, a: &'a Term, b: &'a Term) -> bool {
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            let (x, y) = (self.walk(x), self.walk(y));
            match (x, y) {
                (Term::Var(u), Term::Var(v)) if u == v => {}
                (Term::Var(u), t) | (t, Term::Var(u)) => {
                    if self.occurs(*u, t) {
                        return false;
                    }
                    self.bindings[*u as usize] = Some(t);
                }
                (Term::App(f, xs), Term::App(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return false;
                    }
                    stack.extend(xs.iter().zip(ys));
                }
            }
        }
        true
    }

    fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.bindings[*v as usize] {
                Some(b) => self.apply(b),
                None => t.clone(),
            },
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    fn apply_literal(&self, l: &Literal) -> Literal {
        Literal::new(l.positive, self.apply(&l.atom))
    }
}

fn var_count(lits: &[Literal]) -> usize {
    lits.iter()
        .filter_map(|l| l.atom.max_var())
        .max()
        .map_or(0, |m| m as usize + 1)
}

fn shift(lits: &[Literal], offset: u32) -> Vec<Literal> {
    lits.iter()
        .map(|l| Literal::new(l.positive, l.atom.map_vars(&mut |v| v + offset)))
        .collect()
}

/// Drops repeated literals, keeping first occurrences.
fn dedup(lits: Vec<Literal>) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for l in lits {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

fn derived(literals: Vec<Literal>, parents: &[&Clause]) -> Clause {
    let mut c = Clause::new(dedup(literals), Role::Derived);
    c.parents = parents.iter().map(|p| p.age).collect();
    c.goal_descendant = parents.iter().any(|p| p.goal_descendant);
    c.normalize_vars();
    c
}

/// Literal lists of all binary resolvents of `a` and `b` (renamed apart).
/// With `one_way`, only positive literals of `a` are resolved against
/// negative literals of `b`; resolving a clause with itself needs only
/// that direction.
pub(crate) fn resolvent_literals(a: &[Literal], b: &[Literal], one_way: bool) -> Vec<Vec<Literal>> {
    let offset = var_count(a) as u32;
    let b = shift(b, offset);
    let vars = offset as usize + var_count(&b);
    let mut out = Vec::new();
    for (i, la) in a.iter().enumerate() {
        for (j, lb) in b.iter().enumerate() {
            if la.positive == lb.positive || (one_way && !la.positive) {
                continue;
            }
            if la.predicate() != lb.predicate() {
                continue;
            }
            let mut s = Subst::new(vars);
            if !s.unify(&la.atom, &lb.atom) {
                continue;
            }
            let lits = a
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, l)| s.apply_literal(l))
                .chain(
                    b.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, l)| s.apply_literal(l)),
                )
                .collect();
            out.push(lits);
        }
    }
    out
}

/// All binary resolvents of two clauses, in both directions.
pub fn resolve(a: &Clause, b: &Clause) -> Vec<Clause> {
    resolvent_literals(&a.literals, &b.literals, false)
        .into_iter()
        .map(|lits| derived(lits, &[a, b]))
        .collect()
}

/// Resolvents of a clause with a renamed copy of itself.
pub fn resolve_self(a: &Clause) -> Vec<Clause> {
    resolvent_literals(&a.literals, &a.literals, true)
        .into_iter()
        .map(|lits| derived(lits, &[a, a]))
        .collect()
}

/// All factors: each unifiable pair of same-sign literals merged under its
/// most general unifier.
pub fn factor(c: &Clause) -> Vec<Clause> {
    let lits = &c.literals;
    let vars = var_count(lits);
    let mut out = Vec::new();
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            let (a, b) = (&lits[i], &lits[j]);
            if a.positive != b.positive || a.predicate() != b.predicate() {
                continue;
            }
            let mut s = Subst::new(vars);
            if !s.unify(&a.atom, &b.atom) {
                continue;
            }
            let merged = lits
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, l)| s.apply_literal(l))
                .collect();
            let mut f = derived(merged, &[c]);
            f.parents = vec![c.age];
            out.push(f);
        }
    }
    out
}

/// True iff the clause contains some `L` and `~L` with identical atoms.
pub fn is_tautology(c: &Clause) -> bool {
    let lits = &c.literals;
    lits.iter().enumerate().any(|(i, a)| {
        lits[i + 1..]
            .iter()
            .any(|b| a.positive != b.positive && a.atom == b.atom)
    })
}

/// One-sided matching of `pattern` onto `target`, recording new bindings
/// on `trail` so the caller can undo them.
fn match_term<'a>(pattern: &Term, target: &'a Term, bindings: &mut [Option<&'a Term>], trail: &mut Vec<u32>) -> bool {
    match (pattern, target) {
        (Term::Var(v), _) => match bindings[*v as usize] {
            Some(bound) => bound == target,
            None => {
                bindings[*v as usize] = Some(target);
                trail.push(*v);
                true
            }
        },
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| match_term(x, y, bindings, trail))
        }
        (Term::App(..), Term::Var(_)) => false,
    }
}

/// Does `d` subsume `c`: is there a `σ` mapping `d`'s literals injectively
/// onto literals of `c`?
pub fn subsumes(d: &Clause, c: &Clause) -> bool {
    if d.len() > c.len() {
        return false;
    }
    const STACK: usize = 32;
    let vars = var_count(&d.literals);
    let mut trail = Vec::new();
    if vars <= STACK && c.len() <= STACK {
        let mut bindings = [None; STACK];
        let mut used = [false; STACK];
        return subsume_from(0, &d.literals, &c.literals, &mut bindings[..vars], &mut used[..c.len()], &mut trail);
    }
    let mut bindings = vec![None; vars];
    let mut used = vec![false; c.len()];
    subsume_from(0, &d.literals, &c.literals, &mut bindings, &mut used, &mut trail)
}

fn subsume_from<'a>(
    k: usize,
    d: &[Literal],
    c: &'a [Literal],
    bindings: &mut [Option<&'a Term>],
    used: &mut [bool],
    trail: &mut Vec<u32>,
) -> bool {
    let Some(dl) = d.get(k) else {
        return true;
    };
    for (i, cl) in c.iter().enumerate() {
        if used[i] || cl.positive != dl.positive {
            continue;
        }
        let mark = trail.len();
        if match_term(&dl.atom, &cl.atom, bindings, trail) {
            used[i] = true;
            if subsume_from(k + 1, d, c, bindings, used, trail) {
                return true;
            }
            used[i] = false;
        }
        for v in trail.drain(mark..) {
            bindings[v as usize] = None;
        }
    }
    false
}

/// Cheap necessary condition for subsumption: every (sign, predicate) bit
/// of the subsumer appears in the subsumed clause.
pub(crate) fn feature_mask(c: &Clause) -> u64 {
    c.literals.iter().fold(0u64, |m, l| {
        let bit = (l.predicate().0 as u64 * 2 + l.positive as u64) % 64;
        m | 1 << bit
    })
}

/// Bits a subsumer needs present in [`offered_mask`] of the subsumed
/// clause: the whole literal when ground, else its sign, predicate and the
/// top symbol of its first argument when that is not a variable.
pub(crate) fn required_mask(c: &Clause) -> u64 {
    c.literals.iter().fold(0u64, |m, l| match fine_key(l, !l.atom.is_ground()) {
        Some(bit) => m | 1 << bit,
        None => m,
    })
}

pub(crate) fn offered_mask(c: &Clause) -> u64 {
    c.literals.iter().fold(0u64, |mut m, l| {
        if let Some(bit) = fine_key(l, true) {
            m |= 1 << bit;
        }
        if l.atom.is_ground() {
            m |= 1 << fine_key(l, false).expect("ground literal key");
        }
        m
    })
}

fn fine_key(l: &Literal, by_head: bool) -> Option<u64> {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    l.positive.hash(&mut h);
    if by_head {
        let Term::App(p, args) = &l.atom else { return None };
        let Some(Term::App(f, _)) = args.first() else { return None };
        (p, f).hash(&mut h);
    } else {
        l.atom.hash(&mut h);
    }
    Some(h.finish() % 64)
}

/// The mask of the literals a clause with mask `m` can resolve against.
pub(crate) fn complement_mask(m: u64) -> u64 {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    (m & EVEN) << 1 | (m >> 1) & EVEN
}
