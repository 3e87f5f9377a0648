//! The given-clause loop.
//!
//! Clauses wait in the unprocessed set `U` until a CEF of the heuristic
//! picks them. A picked clause that is neither a tautology nor subsumed by
//! a processed clause moves to the processed set `P`, and its resolvents
//! with `P` (itself included) and its factors go back into `U`. The loop
//! stops at the empty clause, when `U` runs dry, or at a resource limit.

pub mod inference;
pub mod proof;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::heuristic::Heuristic;
use crate::related::{RelatedMode, RelatedSet};
use crate::term::{Clause, ClauseId, Norm, Role, Signature, SymbolId};
use crate::weights::{self, DocMode, DocRegistry, EvalContext, Weight};

pub use inference::{factor, is_tautology, resolve, resolve_self, subsumes};
pub use proof::{Derivation, ReplayError, Rule, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub timeout: Option<Duration>,
    pub max_processed: Option<u64>,
    pub max_generated: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            timeout: None,
            max_processed: None,
            max_generated: Some(1_000_000),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Limit {
    Time,
    Processed,
    Generated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Proof,
    Saturated,
    ResourceOut(Limit),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Clauses moved to the processed set.
    pub processed: u64,
    /// Clauses produced by inferences.
    pub generated: u64,
    /// Given-clause selections, discarded ones included.
    pub selected: u64,
    pub tautologies: u64,
    pub subsumed: u64,
    /// Selections made by each CEF of the heuristic.
    pub per_cef: Vec<u64>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub outcome: Outcome,
    pub stats: Stats,
    pub derivation: Option<Derivation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Unprocessed,
    Processed,
    Discarded,
}

struct Record {
    clause: Clause,
    rule: Rule,
    status: Status,
}

/// Queue order: priority, weight, empty clause first, then age.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    priority: i64,
    weight: Weight,
    nonempty: bool,
    age: ClauseId,
}

pub struct ProofState {
    signature: Signature,
    heuristic: Heuristic,
    records: Vec<Record>,
    processed: Vec<Indexed>,
    queues: Vec<BinaryHeap<Reverse<QueueKey>>>,
    unprocessed: usize,
    related: Vec<RelatedSet>,
    cef_related: Vec<Option<usize>>,
    docs: Vec<DocRegistry>,
    cef_docs: Vec<Option<usize>>,
    conjecture_symbols: HashSet<SymbolId>,
    schedule: Vec<usize>,
    cursor: usize,
    empty: Option<ClauseId>,
    stats: Stats,
}

/// A processed clause with its subsumption prefilter data.
struct Indexed {
    mask: u64,
    required: u64,
    len: usize,
    id: ClauseId,
}

impl ProofState {
    /// Sets up `U` with the input clauses, which receive ages `0..n` in
    /// order. One related set is built per distinct `(norm, mode)` used by
    /// the heuristic, and `ax` document registries are filled from the
    /// input axioms.
    pub fn new(signature: &Signature, inputs: Vec<Clause>, heuristic: &Heuristic) -> Self {
        let mut related_ids: HashMap<(Norm, RelatedMode), usize> = HashMap::new();
        let mut related = Vec::new();
        let mut doc_ids: HashMap<(Norm, DocMode), usize> = HashMap::new();
        let mut docs = Vec::new();
        let mut cef_related = Vec::new();
        let mut cef_docs = Vec::new();
        for cef in heuristic.cefs() {
            cef_related.push(cef.weight.related_key().map(|(norm, mode)| {
                *related_ids.entry((norm, mode)).or_insert_with(|| {
                    related.push(RelatedSet::build(&inputs, mode, norm));
                    related.len() - 1
                })
            }));
            cef_docs.push(cef.weight.docs_key().map(|(norm, mode)| {
                *doc_ids.entry((norm, mode)).or_insert_with(|| {
                    let mut reg = DocRegistry::new(mode, norm);
                    if mode == DocMode::Ax {
                        for c in inputs.iter().filter(|c| c.role == Role::Axiom) {
                            reg.register(c);
                        }
                    }
                    docs.push(reg);
                    docs.len() - 1
                })
            }));
        }
        let ncef = heuristic.entries().len();
        let mut state = ProofState {
            signature: signature.clone(),
            heuristic: heuristic.clone(),
            records: Vec::new(),
            processed: Vec::new(),
            queues: vec![BinaryHeap::new(); ncef],
            unprocessed: 0,
            related,
            cef_related,
            docs,
            cef_docs,
            conjecture_symbols: weights::conjecture_symbols(&inputs),
            schedule: heuristic.schedule(),
            cursor: 0,
            empty: None,
            stats: Stats {
                per_cef: vec![0; ncef],
                ..Stats::default()
            },
        };
        for mut c in inputs {
            c.parents.clear();
            c.goal_descendant = c.role == Role::NegatedConjecture;
            state.insert(c, Rule::Input);
        }
        state
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn heuristic(&self) -> &Heuristic {
        &self.heuristic
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.records[id as usize].clause
    }

    pub fn unprocessed_len(&self) -> usize {
        self.unprocessed
    }

    pub fn processed_ids(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.processed.iter().map(|p| p.id)
    }

    /// Related set consulted by CEF `cef`, if it is a similarity weight.
    pub fn related_for(&self, cef: usize) -> Option<&RelatedSet> {
        self.cef_related[cef].map(|i| &self.related[i])
    }

    fn context(&self, cef: usize) -> EvalContext<'_> {
        EvalContext {
            signature: &self.signature,
            related: self.cef_related[cef].map(|i| &self.related[i]),
            docs: self.cef_docs[cef].map(|i| &self.docs[i]),
            conjecture_symbols: &self.conjecture_symbols,
        }
    }

    /// Adds a clause to `U`, evaluating it once under every CEF. Returns its
    /// id (its age).
    pub fn insert(&mut self, mut clause: Clause, rule: Rule) -> ClauseId {
        let id = self.records.len() as ClauseId;
        clause.age = id;
        let keys: Vec<QueueKey> = self
            .heuristic
            .cefs()
            .enumerate()
            .map(|(i, cef)| {
                let (priority, weight) = weights::evaluate(&clause, cef, &self.context(i));
                QueueKey {
                    priority,
                    weight,
                    nonempty: !clause.is_empty(),
                    age: id,
                }
            })
            .collect();
        for (queue, key) in self.queues.iter_mut().zip(keys) {
            queue.push(Reverse(key));
        }
        if clause.is_empty() && self.empty.is_none() {
            self.empty = Some(id);
        }
        self.records.push(Record {
            clause,
            rule,
            status: Status::Unprocessed,
        });
        self.unprocessed += 1;
        id
    }

    /// Removes and returns the next given clause together with the index of
    /// the CEF that chose it. The CEF follows the heuristic's round-robin
    /// schedule.
    pub fn select_given(&mut self) -> Option<(ClauseId, usize)> {
        if self.unprocessed == 0 {
            return None;
        }
        let cef = self.schedule[self.cursor];
        self.cursor = (self.cursor + 1) % self.schedule.len();
        while let Some(Reverse(key)) = self.queues[cef].pop() {
            let rec = &mut self.records[key.age as usize];
            if rec.status == Status::Unprocessed {
                rec.status = Status::Discarded;
                self.unprocessed -= 1;
                self.stats.per_cef[cef] += 1;
                return Some((key.age, cef));
            }
        }
        unreachable!("every queue holds every unprocessed clause")
    }

    /// Is `c` subsumed by a clause of `P`?
    pub fn forward_subsumed(&self, c: &Clause) -> bool {
        let mask = inference::feature_mask(c);
        let offered = inference::offered_mask(c);
        self.processed.iter().any(|p| {
            p.mask & !mask == 0
                && p.required & !offered == 0
                && p.len <= c.len()
                && subsumes(&self.records[p.id as usize].clause, c)
        })
    }

    fn move_to_processed(&mut self, id: ClauseId) {
        let rec = &mut self.records[id as usize];
        rec.status = Status::Processed;
        let c = &rec.clause;
        self.processed.push(Indexed {
            mask: inference::feature_mask(c),
            required: inference::required_mask(c),
            len: c.len(),
            id,
        });
        for reg in self.docs.iter_mut().filter(|r| r.mode() == DocMode::Pro) {
            reg.register(c);
        }
        self.stats.processed += 1;
    }

    /// Inferences between the given clause and `P`, which already holds it.
    fn generate(&self, given: ClauseId) -> Vec<(Clause, Rule)> {
        let g = self.clause(given);
        let mut out: Vec<(Clause, Rule)> = factor(g).into_iter().map(|c| (c, Rule::Factoring)).collect();
        let clash = inference::complement_mask(inference::feature_mask(g));
        for &Indexed { mask, id, .. } in &self.processed {
            if mask & clash == 0 {
                continue;
            }
            let resolvents = if id == given {
                resolve_self(g)
            } else {
                resolve(g, self.clause(id))
            };
            out.extend(resolvents.into_iter().map(|c| (c, Rule::Resolution)));
        }
        out
    }

    fn derivation(&self, root: ClauseId) -> Derivation {
        let mut seen = HashSet::new();
        let mut stack = vec![root];
        let mut steps = Vec::new();
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            let rec = &self.records[id as usize];
            stack.extend(rec.clause.parents.iter().copied());
            steps.push(Step {
                clause: rec.clause.clone(),
                rule: rec.rule,
            });
        }
        Derivation::new(steps)
    }

    fn finish(&mut self, outcome: Outcome, start: Instant) -> SaturationResult {
        self.stats.elapsed = start.elapsed();
        let derivation = match outcome {
            Outcome::Proof => self.empty.map(|id| self.derivation(id)),
            _ => None,
        };
        SaturationResult {
            outcome,
            stats: self.stats.clone(),
            derivation,
        }
    }

    pub fn run(&mut self, limits: &Limits) -> SaturationResult {
        let start = Instant::now();
        loop {
            if self.empty.is_some() {
                return self.finish(Outcome::Proof, start);
            }
            if limits.timeout.is_some_and(|t| start.elapsed() >= t) {
                return self.finish(Outcome::ResourceOut(Limit::Time), start);
            }
            if limits.max_processed.is_some_and(|m| self.stats.processed >= m) {
                return self.finish(Outcome::ResourceOut(Limit::Processed), start);
            }
            if limits.max_generated.is_some_and(|m| self.stats.generated >= m) {
                return self.finish(Outcome::ResourceOut(Limit::Generated), start);
            }
            let Some((given, _)) = self.select_given() else {
                return self.finish(Outcome::Saturated, start);
            };
            self.stats.selected += 1;
            let g = self.clause(given);
            if is_tautology(g) {
                self.stats.tautologies += 1;
                continue;
            }
            if self.forward_subsumed(g) {
                self.stats.subsumed += 1;
                continue;
            }
            self.move_to_processed(given);
            for (c, rule) in self.generate(given) {
                self.stats.generated += 1;
                self.insert(c, rule);
                if self.empty.is_some() {
                    break;
                }
            }
        }
    }
}

/// Runs the given-clause loop on `clauses` under `heuristic`.
pub fn saturate(signature: &Signature, clauses: Vec<Clause>, heuristic: &Heuristic, limits: &Limits) -> SaturationResult {
    ProofState::new(signature, clauses, heuristic).run(limits)
}
