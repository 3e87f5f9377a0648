//! The best-solving configuration of each weight kind, as named strategies.

use simsel_core::weights::{PrefCosts, SymbolWeights};
use simsel_core::{
    decode_cost_code, parse_heuristic, Cef, Common, CostKind, DecodedCosts, DocMode, Extension, Heuristic,
    HeuristicError, Norm, PriorityFn, Rational64, RelatedMode, WeightFn,
};

/// Preset names in table order.
pub const NAMES: [&str; 7] = ["ref", "term", "tfidf", "pref", "lev", "ted", "struc"];

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn common(norm: Norm, related: RelatedMode, ext: Extension) -> Common {
    Common { norm, related, ext }
}

fn symbol_weights() -> SymbolWeights {
    SymbolWeights {
        conj: r(1, 2),
        function: r(2, 1),
        constant: r(1, 1),
        predicate: r(1, 1),
        variable: r(1, 1),
    }
}

fn edit(code: &str) -> simsel_core::distance::EditCosts {
    match decode_cost_code(code, CostKind::Edit) {
        Ok(DecodedCosts::Edit(c)) => c,
        _ => unreachable!("preset cost codes are valid"),
    }
}

fn structural(code: &str) -> simsel_core::distance::StructCosts {
    match decode_cost_code(code, CostKind::Struct) {
        Ok(DecodedCosts::Struct(c)) => c,
        _ => unreachable!("preset cost codes are valid"),
    }
}

pub fn weight(name: &str) -> Option<WeightFn> {
    use Extension::*;
    use Norm::*;
    use RelatedMode::*;
    Some(match name {
        "ref" => WeightFn::Ref(symbol_weights()),
        "term" => WeightFn::Term(common(Uni, Gen, Sum), symbol_weights()),
        "tfidf" => WeightFn::Tfidf(common(Alf, Gen, Sum), DocMode::Pro),
        "pref" => WeightFn::Pref(
            common(Alf, Gen, Sum),
            PrefCosts {
                matched: r(1, 1),
                missed: r(3, 1),
            },
        ),
        "lev" => WeightFn::Lev(common(Uni, Gen, Sim), edit("155")),
        "ted" => WeightFn::Ted(common(Alf, Gen, Sim), edit("111")),
        "struc" => WeightFn::Struc(common(Uni, Ter, Sim), structural("115")),
        _ => return None,
    })
}

/// A single-CEF heuristic for a preset name.
pub fn preset(name: &str) -> Option<Heuristic> {
    weight(name).map(|weight| {
        Heuristic::single(Cef {
            priority: PriorityFn::ConstPrio,
            weight,
        })
    })
}

/// Accepts either a preset name or a heuristic in the `(n*Cef(..),..)`
/// grammar.
pub fn resolve(spec: &str) -> Result<Heuristic, HeuristicError> {
    match preset(spec.trim()) {
        Some(h) => Ok(h),
        None => parse_heuristic(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_print_in_the_grammar() {
        let printed: Vec<String> = NAMES.iter().map(|n| preset(n).unwrap().to_string()).collect();
        assert_eq!(
            printed,
            [
                "(1*Ref(ConstPrio,0.5,2,1,1,1))",
                "(1*ConjectureTermWeight(ConstPrio,Uni,Gen,Sum,0.5,2,1,1,1))",
                "(1*ConjectureTfIdfWeight(ConstPrio,Alf,Gen,Sum,pro))",
                "(1*ConjecturePrefixWeight(ConstPrio,Alf,Gen,Sum,1,3))",
                "(1*ConjectureLevWeight(ConstPrio,Uni,Gen,Sim,1,5,5))",
                "(1*ConjectureTedWeight(ConstPrio,Alf,Gen,Sim,1,1,1))",
                "(1*ConjectureStrucWeight(ConstPrio,Uni,Ter,Sim,1,1,5))",
            ]
        );
        for p in printed {
            assert_eq!(resolve(&p).unwrap().to_string(), p);
        }
    }

    #[test]
    fn unknown_names_fall_through_to_the_grammar() {
        assert!(resolve("nope").is_err());
        assert!(preset("lev").is_some());
    }
}
