//! Derivations of the empty clause and their independent replay.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::inference::{factor, resolve};
use crate::term::{Clause, ClauseId, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Input,
    Resolution,
    Factoring,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Input => "input",
            Rule::Resolution => "resolution",
            Rule::Factoring => "factoring",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub clause: Clause,
    pub rule: Rule,
}

impl Step {
    pub fn id(&self) -> ClauseId {
        self.clause.age
    }
}

/// The inference DAG below the empty clause, in increasing clause id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("derivation is empty")]
    Empty,
    #[error("final clause {0} is not the empty clause")]
    NotRefutation(ClauseId),
    #[error("clause {id} cites parent {parent}, which is not an earlier step")]
    MissingParent { id: ClauseId, parent: ClauseId },
    #[error("clause {id} is not produced by {rule} from its parents")]
    NotDerivable { id: ClauseId, rule: &'static str },
}

impl Derivation {
    pub(crate) fn new(mut steps: Vec<Step>) -> Self {
        steps.sort_by_key(Step::id);
        Derivation { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn root(&self) -> Option<&Step> {
        self.steps.last()
    }

    pub fn inputs(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.rule == Rule::Input)
    }

    /// Re-runs every inference step and checks that it yields the recorded
    /// clause, ending in the empty clause.
    pub fn replay(&self) -> Result<(), ReplayError> {
        let root = self.root().ok_or(ReplayError::Empty)?;
        if !root.clause.is_empty() {
            return Err(ReplayError::NotRefutation(root.id()));
        }
        let mut known: HashMap<ClauseId, &Clause> = HashMap::new();
        for step in &self.steps {
            let id = step.id();
            let mut parents = Vec::new();
            for p in &step.clause.parents {
                match known.get(p) {
                    Some(c) => parents.push(*c),
                    None => return Err(ReplayError::MissingParent { id, parent: *p }),
                }
            }
            let candidates = match (step.rule, parents.as_slice()) {
                (Rule::Input, []) => None,
                (Rule::Resolution, [a, b]) => Some(resolve(a, b)),
                (Rule::Factoring, [a]) => Some(factor(a)),
                _ => {
                    return Err(ReplayError::NotDerivable {
                        id,
                        rule: step.rule.name(),
                    })
                }
            };
            if let Some(candidates) = candidates {
                if !candidates.iter().any(|c| c.literals == step.clause.literals) {
                    return Err(ReplayError::NotDerivable {
                        id,
                        rule: step.rule.name(),
                    });
                }
            }
            known.insert(id, &step.clause);
        }
        Ok(())
    }

    /// One line per clause: `id. <literals> [rule, parent ids]`.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let _ = write!(out, "{}. {} [{}", step.id(), step.clause.display(sig), step.rule.name());
            for p in &step.clause.parents {
                let _ = write!(out, ", {p}");
            }
            out.push_str("]\n");
        }
        out
    }
}
