//! Clause evaluation functions.
//!
//! A weight function assigns each clause a [`Weight`]; together with a
//! priority function it forms a [`Cef`], which ranks clauses by the pair
//! `(priority, weight)`, smaller first.
//!
//! The similarity weights share three arguments: the variable
//! normalization ([`Norm`]), the construction of the related set
//! ([`RelatedMode`]) and how a per-term score is extended over subterms
//! ([`Extension`]). Each weight supplies the per-term score itself.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::distance::{self, EditCosts, Kernel, StructCosts};
use crate::related::{RelatedMode, RelatedSet};
use crate::term::{Clause, Norm, Role, Signature, SymbolId, SymbolKind, Term};

/// A clause weight. Everything is exact except TF-IDF, which involves a
/// logarithm and is carried as a double.
#[derive(Clone, Copy, Debug)]
pub enum Weight {
    Exact(Rational64),
    Approx(f64),
}

impl Weight {
    pub fn zero() -> Self {
        Weight::Exact(Rational64::zero())
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            Weight::Approx(x) => x,
        }
    }

    pub fn exact(self) -> Option<Rational64> {
        match self {
            Weight::Exact(r) => Some(r),
            Weight::Approx(_) => None,
        }
    }
}

impl From<Rational64> for Weight {
    fn from(r: Rational64) -> Self {
        Weight::Exact(r)
    }
}

impl From<i64> for Weight {
    fn from(i: i64) -> Self {
        Weight::Exact(i.into())
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            (a, b) => Weight::Approx(a.to_f64() + b.to_f64()),
        }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), Add::add)
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => a.cmp(b),
            (a, b) => a.to_f64().total_cmp(&b.to_f64()),
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Weight {}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(r) => write!(f, "{r}"),
            Weight::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Per-kind symbol weights with the conjecture multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolWeights {
    pub conj: Rational64,
    pub function: Rational64,
    pub constant: Rational64,
    pub predicate: Rational64,
    pub variable: Rational64,
}

impl SymbolWeights {
    fn for_kind(&self, kind: SymbolKind) -> Rational64 {
        match kind {
            SymbolKind::Function => self.function,
            SymbolKind::Constant => self.constant,
            SymbolKind::Predicate => self.predicate,
            SymbolKind::Variable => self.variable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Score of the term itself.
    Sim,
    /// Sum over all subterm occurrences.
    Sum,
    /// Maximum over all subterms.
    Max,
}

/// Arguments shared by every similarity weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Common {
    pub norm: Norm,
    pub related: RelatedMode,
    pub ext: Extension,
}

/// Which clauses count as TF-IDF documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DocMode {
    /// The input axioms.
    Ax,
    /// Every clause moved to the processed set.
    Pro,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrefCosts {
    pub matched: Rational64,
    pub missed: Rational64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFn {
    /// Conjecture symbol weight: symbol counting with conjecture symbols
    /// discounted.
    Ref(SymbolWeights),
    /// Kind weight of each term, discounted for members of the related set.
    Term(Common, SymbolWeights),
    Tfidf(Common, DocMode),
    Pref(Common, PrefCosts),
    Lev(Common, EditCosts),
    Ted(Common, EditCosts),
    Struc(Common, StructCosts),
    Fifo,
}

impl WeightFn {
    pub fn common(&self) -> Option<&Common> {
        match self {
            WeightFn::Term(c, _)
            | WeightFn::Tfidf(c, _)
            | WeightFn::Pref(c, _)
            | WeightFn::Lev(c, _)
            | WeightFn::Ted(c, _)
            | WeightFn::Struc(c, _) => Some(c),
            WeightFn::Ref(_) | WeightFn::Fifo => None,
        }
    }

    /// The `(norm, mode)` of the related set this weight consults.
    pub fn related_key(&self) -> Option<(Norm, RelatedMode)> {
        self.common().map(|c| (c.norm, c.related))
    }

    /// The `(norm, doc mode)` of the document registry this weight reads.
    pub fn docs_key(&self) -> Option<(Norm, DocMode)> {
        match self {
            WeightFn::Tfidf(c, d) => Some((c.norm, *d)),
            _ => None,
        }
    }

    fn kernel(&self) -> Option<Kernel> {
        match self {
            WeightFn::Lev(_, c) => Some(Kernel::Lev(*c)),
            WeightFn::Ted(_, c) => Some(Kernel::Ted(*c)),
            WeightFn::Struc(_, c) => Some(Kernel::Struc(*c)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PriorityFn {
    ConstPrio,
    PreferGoals,
}

/// Clause evaluation function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cef {
    pub priority: PriorityFn,
    pub weight: WeightFn,
}

/// Document frequencies for TF-IDF. Documents are clause instances: the
/// same clause registered twice counts twice.
#[derive(Clone, Debug)]
pub struct DocRegistry {
    mode: DocMode,
    norm: Norm,
    count: u64,
    df: HashMap<Term, u64>,
}

impl DocRegistry {
    pub fn new(mode: DocMode, norm: Norm) -> Self {
        DocRegistry {
            mode,
            norm,
            count: 0,
            df: HashMap::new(),
        }
    }

    pub fn mode(&self) -> DocMode {
        self.mode
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn doc_count(&self) -> u64 {
        self.count
    }

    /// Number of registered documents containing the normalized term `t`.
    pub fn df(&self, t: &Term) -> u64 {
        self.df.get(t).copied().unwrap_or(0)
    }

    pub fn register(&mut self, c: &Clause) {
        self.count += 1;
        let mut distinct = HashSet::new();
        for lit in &c.literals {
            for s in lit.atom.occurrences() {
                distinct.insert(s.normalize(self.norm));
            }
        }
        for t in distinct {
            *self.df.entry(t).or_insert(0) += 1;
        }
    }
}

/// Everything a weight function may consult besides the clause.
#[derive(Clone, Copy)]
pub struct EvalContext<'a> {
    pub signature: &'a Signature,
    pub related: Option<&'a RelatedSet>,
    pub docs: Option<&'a DocRegistry>,
    pub conjecture_symbols: &'a HashSet<SymbolId>,
}

/// Symbols occurring in the `negated_conjecture` clauses.
pub fn conjecture_symbols<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> HashSet<SymbolId> {
    let mut out = HashSet::new();
    for c in clauses.into_iter().filter(|c| c.role == Role::NegatedConjecture) {
        for lit in &c.literals {
            for s in lit.atom.occurrences() {
                if let Term::App(f, _) = s {
                    out.insert(*f);
                }
            }
        }
    }
    out
}

fn head_kind(t: &Term, sig: &Signature) -> SymbolKind {
    match t {
        Term::Var(_) => SymbolKind::Variable,
        Term::App(f, _) => sig.kind(*f),
    }
}

/// Kind weight of `t`'s head, times the conjecture multiplier when `t` is
/// in the related set.
pub fn weight_one_term(t: &Term, related: &RelatedSet, w: &SymbolWeights, sig: &Signature) -> Rational64 {
    let base = w.for_kind(head_kind(t, sig));
    if related.contains(t) {
        base * w.conj
    } else {
        base
    }
}

/// `1 / (1 + tf(t) * ln((1 + |D|) / (1 + df(t))))`.
pub fn weight_one_tfidf(t: &Term, related: &RelatedSet, docs: &DocRegistry) -> f64 {
    let tf = related.term_frequency(t) as f64;
    if tf == 0.0 {
        return 1.0;
    }
    let idf = ((1.0 + docs.doc_count() as f64) / (1.0 + docs.df(t) as f64)).ln();
    1.0 / (1.0 + tf * idf)
}

pub fn weight_one_pref(t: &Term, related: &RelatedSet, costs: &PrefCosts) -> Rational64 {
    let size = t.size() as i64;
    let prefix = distance::longest_related_prefix(t, related) as i64;
    costs.matched * prefix + costs.missed * (size - prefix)
}

pub fn weight_one_distance(t: &Term, related: &RelatedSet, kernel: &Kernel) -> Rational64 {
    distance::min_distance_to_related(t, related, kernel)
}

/// Lifts a per-term score `omega` to a term weight.
pub fn extend(t: &Term, ext: Extension, mut omega: impl FnMut(&Term) -> Weight) -> Weight {
    match ext {
        Extension::Sim => omega(t),
        Extension::Sum => t.occurrences().map(omega).sum(),
        Extension::Max => t
            .occurrences()
            .map(omega)
            .max()
            .expect("a term has at least one subterm"),
    }
}

fn ref_weight(t: &Term, w: &SymbolWeights, ctx: &EvalContext<'_>) -> Rational64 {
    t.occurrences()
        .map(|s| match s {
            Term::Var(_) => w.variable,
            Term::App(f, _) => {
                let base = w.for_kind(ctx.signature.kind(*f));
                if ctx.conjecture_symbols.contains(f) {
                    base * w.conj
                } else {
                    base
                }
            }
        })
        .sum()
}

/// Sum over the clause's atoms of the extended per-term score. The empty
/// clause weighs zero under every weight function.
pub fn clause_weight(c: &Clause, wf: &WeightFn, ctx: &EvalContext<'_>) -> Weight {
    if c.is_empty() {
        return match wf {
            WeightFn::Tfidf(..) => Weight::Approx(0.0),
            _ => Weight::zero(),
        };
    }
    let atoms = c.literals.iter().map(|l| &l.atom);
    match wf {
        WeightFn::Fifo => Weight::from(c.age as i64),
        WeightFn::Ref(w) => Weight::Exact(atoms.map(|a| ref_weight(a, w, ctx)).sum()),
        _ => {
            let common = wf.common().expect("similarity weight");
            let related = ctx
                .related
                .expect("similarity weights need a related set");
            let norm = common.norm;
            let kernel = wf.kernel();
            let mut omega = |s: &Term| -> Weight {
                let s = s.normalize(norm);
                match wf {
                    WeightFn::Term(_, w) => weight_one_term(&s, related, w, ctx.signature).into(),
                    WeightFn::Tfidf(..) => {
                        let docs = ctx.docs.expect("TF-IDF needs a document registry");
                        Weight::Approx(weight_one_tfidf(&s, related, docs))
                    }
                    WeightFn::Pref(_, costs) => weight_one_pref(&s, related, costs).into(),
                    _ => weight_one_distance(&s, related, kernel.as_ref().unwrap()).into(),
                }
            };
            let start = match wf {
                WeightFn::Tfidf(..) => Weight::Approx(0.0),
                _ => Weight::zero(),
            };
            atoms.fold(start, |acc, a| acc + extend(a, common.ext, &mut omega))
        }
    }
}

pub fn priority(c: &Clause, p: PriorityFn) -> i64 {
    match p {
        PriorityFn::ConstPrio => 0,
        PriorityFn::PreferGoals => {
            if c.role == Role::NegatedConjecture || c.goal_descendant {
                0
            } else {
                1
            }
        }
    }
}

pub fn evaluate(c: &Clause, cef: &Cef, ctx: &EvalContext<'_>) -> (i64, Weight) {
    (priority(c, cef.priority), clause_weight(c, &cef.weight, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Literal;
    use crate::tptp::{parse_problem, Problem};

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn weights(conj: Rational64, f: i64, c: i64, p: i64, v: i64) -> SymbolWeights {
        SymbolWeights {
            conj,
            function: f.into(),
            constant: c.into(),
            predicate: p.into(),
            variable: v.into(),
        }
    }

    fn ctx<'a>(
        p: &'a Problem,
        related: Option<&'a RelatedSet>,
        docs: Option<&'a DocRegistry>,
        conj: &'a HashSet<SymbolId>,
    ) -> EvalContext<'a> {
        EvalContext {
            signature: &p.signature,
            related,
            docs,
            conjecture_symbols: conj,
        }
    }

    #[test]
    fn term_kernel_examples() {
        let p = parse_problem("cnf(g, negated_conjecture, ~p(f(a))).").unwrap();
        let sub = RelatedSet::build(&p.clauses, RelatedMode::Sub, Norm::Alf);
        let w = weights(r(1, 2), 2, 1, 1, 1);
        let fa = p.clauses[0].literals[0].atom.args()[0].clone();
        assert_eq!(weight_one_term(&fa, &sub, &w, &p.signature), 1.into());
        assert_eq!(weight_one_term(&Term::Var(0), &sub, &w, &p.signature), 1.into());

        let gen = RelatedSet::build(&p.clauses, RelatedMode::Gen, Norm::Alf);
        let pa = p.clauses[0].literals[0].atom.clone();
        let w = weights(r(1, 4), 2, 1, 3, 1);
        assert_eq!(weight_one_term(&pa, &gen, &w, &p.signature), r(3, 4));
    }

    #[test]
    fn tfidf_examples() {
        let p = parse_problem(
            "cnf(g, negated_conjecture, ~p(a, a)).\ncnf(x, axiom, q(b)).",
        )
        .unwrap();
        let sub = RelatedSet::build(&p.clauses, RelatedMode::Sub, Norm::Alf);
        let mut docs = DocRegistry::new(DocMode::Ax, Norm::Alf);
        let b = Term::constant(p.signature.lookup("b").unwrap());
        assert_eq!(weight_one_tfidf(&b, &sub, &docs), 1.0);

        // tf(a) = 2; nine documents, four of them containing `a`.
        let a = Term::constant(p.signature.lookup("a").unwrap());
        let with_a = Clause::new(vec![Literal::pos(p.clauses[0].literals[0].atom.clone())], Role::Axiom);
        for _ in 0..4 {
            docs.register(&with_a);
        }
        for _ in 0..5 {
            docs.register(&p.clauses[1]);
        }
        assert_eq!(docs.doc_count(), 9);
        assert_eq!(docs.df(&a), 4);
        let w = weight_one_tfidf(&a, &sub, &docs);
        assert!((w - 1.0 / (1.0 + 2.0 * 2f64.ln())).abs() < 1e-15);
        assert!((w - 0.419).abs() < 5e-4);

        // df = |D| makes the logarithm vanish.
        let mut all = DocRegistry::new(DocMode::Pro, Norm::Alf);
        all.register(&with_a);
        all.register(&with_a);
        assert_eq!(weight_one_tfidf(&a, &sub, &all), 1.0);
    }

    #[test]
    fn registry_counts_distinct_subterms() {
        let p = parse_problem("cnf(x, axiom, p(a) | q(a)).").unwrap();
        let mut docs = DocRegistry::new(DocMode::Ax, Norm::Alf);
        assert_eq!(docs.doc_count(), 0);
        docs.register(&p.clauses[0]);
        let a = Term::constant(p.signature.lookup("a").unwrap());
        assert_eq!(docs.df(&a), 1);
        assert_eq!(docs.df(&p.clauses[0].literals[0].atom), 1);
        docs.register(&p.clauses[0]);
        assert_eq!(docs.doc_count(), 2);
        assert_eq!(docs.df(&a), 2);
    }

    #[test]
    fn pref_examples() {
        let p = parse_problem(
            "cnf(g, negated_conjecture, ~q(f(a,c))).\ncnf(x, axiom, q(f(a,b))).",
        )
        .unwrap();
        let ter = RelatedSet::build(&p.clauses, RelatedMode::Ter, Norm::Alf);
        let costs = PrefCosts {
            matched: 1.into(),
            missed: 3.into(),
        };
        let fab = p.clauses[1].literals[0].atom.args()[0].clone();
        assert_eq!(weight_one_pref(&fab, &ter, &costs), 5.into());
        let fac = p.clauses[0].literals[0].atom.args()[0].clone();
        assert_eq!(weight_one_pref(&fac, &ter, &costs), 3.into());
        let empty = RelatedSet::build(&p.clauses[1..], RelatedMode::Ter, Norm::Alf);
        assert_eq!(weight_one_pref(&fab, &empty, &costs), 9.into());
    }

    #[test]
    fn extension_modes() {
        let p = parse_problem("cnf(x, axiom, p(f(a, a))).").unwrap();
        let faa = p.clauses[0].literals[0].atom.args()[0].clone();
        let one = |_: &Term| Weight::from(1);
        assert_eq!(extend(&faa, Extension::Sum, one), Weight::from(3));
        assert_eq!(extend(&faa, Extension::Max, one), Weight::from(1));
        let a = faa.args()[0].clone();
        let size = |t: &Term| Weight::from(t.size() as i64);
        for ext in [Extension::Sim, Extension::Sum, Extension::Max] {
            assert_eq!(extend(&a, ext, size), Weight::from(1));
        }
        assert_eq!(extend(&faa, Extension::Max, size), Weight::from(3));
    }

    #[test]
    fn clause_level_weights() {
        let p = parse_problem(
            "cnf(g, negated_conjecture, ~p(b)).\ncnf(x, axiom, p(a)).\ncnf(y, axiom, $false).",
        )
        .unwrap();
        let conj = conjecture_symbols(&p.clauses);
        let c = ctx(&p, None, None, &conj);
        let refw = WeightFn::Ref(weights(r(1, 2), 1, 1, 1, 1));
        assert_eq!(clause_weight(&p.clauses[1], &refw, &c), Weight::Exact(r(3, 2)));
        assert_eq!(clause_weight(&p.clauses[2], &refw, &c), Weight::zero());
        assert_eq!(
            clause_weight(&p.clauses[1], &WeightFn::Fifo, &c),
            Weight::from(1)
        );

        let ter = RelatedSet::build(&p.clauses, RelatedMode::Ter, Norm::Uni);
        let c = ctx(&p, Some(&ter), None, &conj);
        let lev = WeightFn::Lev(
            Common {
                norm: Norm::Uni,
                related: RelatedMode::Ter,
                ext: Extension::Sim,
            },
            EditCosts::unit(),
        );
        assert_eq!(clause_weight(&p.clauses[1], &lev, &c), Weight::from(1));
        assert_eq!(clause_weight(&p.clauses[0], &lev, &c), Weight::zero());
        assert_eq!(clause_weight(&p.clauses[2], &lev, &c), Weight::zero());
    }

    #[test]
    fn priorities() {
        let p = parse_problem("cnf(g, negated_conjecture, ~p(b)).\ncnf(x, axiom, p(a)).").unwrap();
        assert_eq!(priority(&p.clauses[0], PriorityFn::ConstPrio), 0);
        assert_eq!(priority(&p.clauses[1], PriorityFn::ConstPrio), 0);
        assert_eq!(priority(&p.clauses[0], PriorityFn::PreferGoals), 0);
        assert_eq!(priority(&p.clauses[1], PriorityFn::PreferGoals), 1);
        let mut derived = Clause::new(vec![], Role::Derived);
        derived.goal_descendant = true;
        assert_eq!(priority(&derived, PriorityFn::PreferGoals), 0);
    }

    #[test]
    fn mixed_weight_ordering() {
        assert!(Weight::from(1) < Weight::Approx(1.5));
        assert!(Weight::Approx(0.25) < Weight::Exact(r(1, 3)));
        assert_eq!(Weight::from(2) + Weight::Approx(0.5), Weight::Approx(2.5));
    }
}
