//! A given-clause resolution prover for clausal first-order problems whose
//! clause selection is driven by conjecture-similarity weights.
//!
//! The pieces, bottom up:
//!
//! * [`term`] and [`tptp`]: terms, clauses and the TPTP `cnf` reader;
//! * [`related`]: the set of conjecture-derived terms weights compare to;
//! * [`distance`]: Levenshtein, tree edit and structural distances;
//! * [`weights`]: clause evaluation functions;
//! * [`heuristic`]: round-robin heuristics and their text syntax;
//! * [`saturation`]: the given-clause loop.

pub mod distance;
pub mod heuristic;
pub mod related;
pub mod saturation;
pub mod term;
pub mod tptp;
pub mod weights;

pub use heuristic::{decode_cost_code, parse_heuristic, CostCode, CostKind, DecodedCosts, Heuristic, HeuristicError};
pub use related::{RelatedMode, RelatedSet};
pub use saturation::{saturate, Derivation, Limit, Limits, Outcome, ProofState, SaturationResult, Stats};
pub use term::{Clause, ClauseId, Label, Literal, Norm, Role, Signature, Symbol, SymbolId, SymbolKind, Term};
pub use tptp::{parse_problem, ParseError, Problem};
pub use weights::{Cef, Common, DocMode, DocRegistry, Extension, PriorityFn, Weight, WeightFn};

pub use num_rational::Rational64;
