//! Shared fixtures for the criterion benchmarks: seeded random terms over a
//! small signature and the bundled problem files.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simsel_core::{parse_problem, Problem, Signature, SymbolId, Term};

pub struct TermGen {
    pub signature: Signature,
    functions: Vec<(SymbolId, usize)>,
    constants: Vec<SymbolId>,
    rng: ChaCha8Rng,
}

impl TermGen {
    pub fn new(seed: u64) -> Self {
        let mut signature = Signature::new();
        let functions = [("f", 2), ("g", 1), ("h", 3)]
            .map(|(n, a)| (signature.intern(n, false, a).unwrap(), a))
            .to_vec();
        let constants = ["a", "b", "c"].map(|n| signature.intern(n, false, 0).unwrap()).to_vec();
        TermGen {
            signature,
            functions,
            constants,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random term of depth at most `depth` with variables `X0..X2`.
    pub fn term(&mut self, depth: u32) -> Term {
        if depth == 0 || self.rng.gen_bool(0.25) {
            return if self.rng.gen_bool(0.3) {
                Term::Var(self.rng.gen_range(0..3))
            } else {
                Term::constant(self.constants[self.rng.gen_range(0..self.constants.len())])
            };
        }
        let (f, arity) = self.functions[self.rng.gen_range(0..self.functions.len())];
        Term::App(f, (0..arity).map(|_| self.term(depth - 1)).collect())
    }

    pub fn pairs(&mut self, n: usize, depth: u32) -> Vec<(Term, Term)> {
        (0..n).map(|_| (self.term(depth), self.term(depth))).collect()
    }
}

/// Directory of the problem files bundled with the command-line crate.
pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/problems")
}

pub fn load(relative: &str) -> Problem {
    let path = problems_dir().join(relative);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_problem(&text).unwrap_or_else(|e| panic!("{}: {e:?}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_seeded() {
        let a = TermGen::new(7).pairs(20, 4);
        let b = TermGen::new(7).pairs(20, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn bundled_problems_load() {
        assert!(!load("perf/layers.p").clauses.is_empty());
        assert!(!load("micro/prop02_chain.p").clauses.is_empty());
    }
}
