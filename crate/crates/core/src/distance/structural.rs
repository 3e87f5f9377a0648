//! Distance counted in generalization and instantiation steps.

use num_rational::Rational64;

use super::{unscale, ScaledStructCosts, StructCosts};
use crate::term::Term;

/// Structural distance from `a` to `b`:
///
/// * variable to variable: `0` when identical, otherwise `miss`;
/// * variable to term: instantiate, `inst * |b|`;
/// * term to variable: generalize, `gen * |a|`;
/// * same head symbol: sum over argument pairs;
/// * different heads: generalize `a` to a fresh variable, then instantiate
///   that to `b`.
pub fn struct_distance(a: &Term, b: &Term, costs: &StructCosts) -> Rational64 {
    let c = costs.scaled();
    unscale(struct_scaled(a, b, &c), c.denom)
}

pub(crate) fn struct_scaled(a: &Term, b: &Term, c: &ScaledStructCosts) -> u64 {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            if x == y {
                0
            } else {
                c.miss
            }
        }
        (Term::Var(_), _) => c.inst * b.size() as u64,
        (_, Term::Var(_)) => c.gen * a.size() as u64,
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => xs
            .iter()
            .zip(ys)
            .map(|(x, y)| struct_scaled(x, y, c))
            .sum(),
        _ => c.gen * a.size() as u64 + c.inst * b.size() as u64,
    }
}
