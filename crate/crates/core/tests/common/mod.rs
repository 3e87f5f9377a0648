#![allow(dead_code)]

use proptest::prelude::*;
use simsel_core::{Clause, Literal, Role, Signature, SymbolId, Term};

/// A fixed signature: `f/2`, `g/1`, `h/1`, constants `a b c`, predicates `p/1 q/2 r/0`.
pub struct Sig {
    pub sig: Signature,
    pub f: SymbolId,
    pub g: SymbolId,
    pub h: SymbolId,
    pub a: SymbolId,
    pub b: SymbolId,
    pub c: SymbolId,
    pub p: SymbolId,
    pub q: SymbolId,
    pub r: SymbolId,
}

pub fn sig() -> Sig {
    let mut sig = Signature::new();
    let f = sig.intern("f", false, 2).unwrap();
    let g = sig.intern("g", false, 1).unwrap();
    let h = sig.intern("h", false, 1).unwrap();
    let a = sig.intern("a", false, 0).unwrap();
    let b = sig.intern("b", false, 0).unwrap();
    let c = sig.intern("c", false, 0).unwrap();
    let p = sig.intern("p", true, 1).unwrap();
    let q = sig.intern("q", true, 2).unwrap();
    let r = sig.intern("r", true, 0).unwrap();
    Sig { sig, f, g, h, a, b, c, p, q, r }
}

pub fn term() -> impl Strategy<Value = Term> {
    let s = sig();
    let (f, g) = (s.f, s.g);
    let leaf = prop_oneof![
        (0u32..3).prop_map(Term::Var),
        Just(Term::constant(s.a)),
        Just(Term::constant(s.b)),
        Just(Term::constant(s.c)),
    ];
    leaf.prop_recursive(4, 12, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Term::App(f, vec![x, y])),
            inner.prop_map(move |x| Term::App(g, vec![x])),
        ]
    })
}

pub fn atom() -> impl Strategy<Value = Term> {
    let s = sig();
    let (p, q) = (s.p, s.q);
    prop_oneof![
        term().prop_map(move |t| Term::App(p, vec![t])),
        (term(), term()).prop_map(move |(x, y)| Term::App(q, vec![x, y])),
    ]
}

pub fn clause(role: Role) -> impl Strategy<Value = Clause> {
    prop::collection::vec((any::<bool>(), atom()), 1..4).prop_map(move |lits| {
        let mut c = Clause::new(
            lits.into_iter().map(|(pos, a)| Literal::new(pos, a)).collect(),
            role,
        );
        c.normalize_vars();
        c
    })
}

/// Function-free atoms over constants `a b c` and variables `X1..X3`.
pub fn flat_atom() -> impl Strategy<Value = Term> {
    let s = sig();
    let (p, q) = (s.p, s.q);
    let arg = prop_oneof![
        (0u32..3).prop_map(Term::Var),
        Just(Term::constant(s.a)),
        Just(Term::constant(s.b)),
        Just(Term::constant(s.c)),
    ];
    prop_oneof![
        arg.clone().prop_map(move |t| Term::App(p, vec![t])),
        (arg.clone(), arg).prop_map(move |(x, y)| Term::App(q, vec![x, y])),
    ]
}

pub fn flat_clause(role: Role) -> impl Strategy<Value = Clause> {
    prop::collection::vec((any::<bool>(), flat_atom()), 1..4).prop_map(move |lits| {
        let mut c = Clause::new(
            lits.into_iter().map(|(pos, a)| Literal::new(pos, a)).collect(),
            role,
        );
        c.normalize_vars();
        c
    })
}
