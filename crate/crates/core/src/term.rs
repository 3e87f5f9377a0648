//! First-order terms, literals and clauses.
//!
//! Atoms are plain [`Term`]s whose head is a predicate symbol, so every
//! term-level utility here (normalization, subterms, symbol sequences)
//! applies to atoms as well.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Index of a symbol in its [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Function,
    Constant,
    Predicate,
    Variable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{name}` used with arity {found}, previously {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{name}` used as {found:?}, previously {expected:?}")]
    Kind {
        name: String,
        expected: SymbolKind,
        found: SymbolKind,
    },
}

/// The non-variable symbols of one problem.
///
/// A name has a single kind and arity per problem; [`Signature::intern`]
/// rejects conflicting uses.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
    by_name: HashMap<String, SymbolId>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `name` as a predicate (`predicate == true`) or as a
    /// function/constant symbol of the given arity.
    pub fn intern(
        &mut self,
        name: &str,
        predicate: bool,
        arity: usize,
    ) -> Result<SymbolId, SignatureError> {
        let kind = match (predicate, arity) {
            (true, _) => SymbolKind::Predicate,
            (false, 0) => SymbolKind::Constant,
            (false, _) => SymbolKind::Function,
        };
        if let Some(&id) = self.by_name.get(name) {
            let sym = &self.symbols[id.0 as usize];
            if (sym.kind == SymbolKind::Predicate) != predicate {
                return Err(SignatureError::Kind {
                    name: name.to_string(),
                    expected: sym.kind,
                    found: kind,
                });
            }
            if sym.arity != arity {
                return Err(SignatureError::Arity {
                    name: name.to_string(),
                    expected: sym.arity,
                    found: arity,
                });
            }
            return Ok(id);
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_string(),
            kind,
            arity,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.0 as usize]
    }

    pub fn kind(&self, id: SymbolId) -> SymbolKind {
        self.symbols[id.0 as usize].kind
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.0 as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }
}

/// Variable normalization mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Norm {
    /// Variables renamed by first left-to-right occurrence.
    Alf,
    /// Every variable collapsed onto a single variable.
    Uni,
}

/// One position of a term's pre-order symbol sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Var(u32),
    Sym(SymbolId),
}

/// A first-order term. Variables are numbered per clause; `Var(0)` prints
/// as `X1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    App(SymbolId, Vec<Term>),
}

impl Term {
    pub fn constant(sym: SymbolId) -> Term {
        Term::App(sym, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn label(&self) -> Label {
        match self {
            Term::Var(v) => Label::Var(*v),
            Term::App(f, _) => Label::Sym(*f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of symbol occurrences, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Pre-order flattening: head before arguments, arguments left to right.
    pub fn symbol_sequence(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.size());
        self.push_labels(&mut out);
        out
    }

    pub fn push_labels(&self, out: &mut Vec<Label>) {
        out.push(self.label());
        for arg in self.args() {
            arg.push_labels(out);
        }
    }

    /// All subterm occurrences in pre-order, starting with `self`.
    pub fn occurrences(&self) -> Occurrences<'_> {
        Occurrences { stack: vec![self] }
    }

    /// Distinct subterms (including `self`), in order of first occurrence.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut seen = HashSet::new();
        self.occurrences().filter(|t| seen.insert(*t)).collect()
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn normalize(&self, norm: Norm) -> Term {
        match norm {
            Norm::Uni => self.map_vars(&mut |_| 0),
            Norm::Alf => {
                let mut renaming = VarRenaming::default();
                self.map_vars(&mut |v| renaming.get(v))
            }
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> u32) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::App(sym, args) => Term::App(*sym, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }
}

/// Pre-order iterator over subterm occurrences.
pub struct Occurrences<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> Iterator for Occurrences<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        let t = self.stack.pop()?;
        self.stack.extend(t.args().iter().rev());
        Some(t)
    }
}

/// Assigns dense variable numbers in order of first request.
#[derive(Default)]
pub struct VarRenaming {
    map: HashMap<u32, u32>,
}

impl VarRenaming {
    pub fn get(&mut self, v: u32) -> u32 {
        let next = self.map.len() as u32;
        *self.map.entry(v).or_insert(next)
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => write!(f, "X{}", v + 1),
            Term::App(sym, args) => {
                f.write_str(self.sig.name(*sym))?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", a.display(self.sig))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Term,
}

impl Literal {
    pub fn new(positive: bool, atom: Term) -> Self {
        Literal { positive, atom }
    }

    pub fn pos(atom: Term) -> Self {
        Literal::new(true, atom)
    }

    pub fn neg(atom: Term) -> Self {
        Literal::new(false, atom)
    }

    pub fn predicate(&self) -> SymbolId {
        match self.atom {
            Term::App(p, _) => p,
            Term::Var(_) => panic!("literal atom must have a predicate head"),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> LiteralDisplay<'a> {
        LiteralDisplay { lit: self, sig }
    }
}

pub struct LiteralDisplay<'a> {
    lit: &'a Literal,
    sig: &'a Signature,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Equality atoms print infix so the output stays valid TPTP.
        if let Term::App(p, args) = &self.lit.atom {
            if self.sig.name(*p) == "=" && args.len() == 2 {
                let op = if self.lit.positive { "=" } else { "!=" };
                return write!(
                    f,
                    "{} {} {}",
                    args[0].display(self.sig),
                    op,
                    args[1].display(self.sig)
                );
            }
        }
        if !self.lit.positive {
            f.write_str("~")?;
        }
        write!(f, "{}", self.lit.atom.display(self.sig))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    NegatedConjecture,
    Derived,
}

impl Role {
    pub fn as_tptp(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::NegatedConjecture => "negated_conjecture",
            Role::Derived => "plain",
        }
    }
}

/// Clause identifier; equal to the clause's age within one proof run.
pub type ClauseId = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub role: Role,
    pub age: ClauseId,
    pub parents: Vec<ClauseId>,
    /// Set when the clause is a negated conjecture or has one among its
    /// ancestors.
    pub goal_descendant: bool,
}

impl Clause {
    pub fn new(literals: Vec<Literal>, role: Role) -> Self {
        Clause {
            literals,
            role,
            age: 0,
            parents: Vec::new(),
            goal_descendant: role == Role::NegatedConjecture,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.literals.iter().filter_map(|l| l.atom.max_var()).max()
    }

    /// Renames variables to `0, 1, ...` by first occurrence across the
    /// whole clause.
    pub fn normalize_vars(&mut self) {
        let mut renaming = VarRenaming::default();
        for lit in &mut self.literals {
            lit.atom = lit.atom.map_vars(&mut |v| renaming.get(v));
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ClauseDisplay<'a> {
        ClauseDisplay { clause: self, sig }
    }
}

pub struct ClauseDisplay<'a> {
    clause: &'a Clause,
    sig: &'a Signature,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clause.literals.is_empty() {
            return f.write_str("$false");
        }
        for (i, lit) in self.clause.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", lit.display(self.sig))?;
        }
        Ok(())
    }
}
