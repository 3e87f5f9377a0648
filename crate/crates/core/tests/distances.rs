mod common;

use proptest::prelude::*;
use simsel_core::distance::{
    levenshtein, longest_related_prefix, min_distance_to_related, struct_distance, tree_edit_distance,
    EditCosts, Kernel, StructCosts, EMPTY_RELATED_DISTANCE,
};
use simsel_core::{Clause, Literal, Norm, Rational64, RelatedMode, RelatedSet, Role, Term};

use common::{sig, term};

fn lev_oracle(a: &[u8], b: &[u8], c: &EditCosts) -> Rational64 {
    match (a.split_first(), b.split_first()) {
        (None, None) => Rational64::from(0),
        (Some((_, rest)), None) => c.del + lev_oracle(rest, b, c),
        (None, Some((_, rest))) => c.ins + lev_oracle(a, rest, c),
        (Some((x, ra)), Some((y, rb))) => {
            let change = if x == y { Rational64::from(0) } else { c.ch };
            (change + lev_oracle(ra, rb, c))
                .min(c.del + lev_oracle(ra, b, c))
                .min(c.ins + lev_oracle(a, rb, c))
        }
    }
}

/// Direct transcription of the five structural rules.
fn struct_oracle(a: &Term, b: &Term, c: &StructCosts) -> Rational64 {
    let size = |t: &Term| Rational64::from(t.size() as i64);
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            if x == y {
                Rational64::from(0)
            } else {
                c.miss
            }
        }
        (Term::Var(_), t) => c.inst * size(t),
        (t, Term::Var(_)) => c.gen * size(t),
        (Term::App(f, xs), Term::App(g, ys)) if f == g => {
            xs.iter().zip(ys).map(|(x, y)| struct_oracle(x, y, c)).sum()
        }
        _ => c.gen * size(a) + c.inst * size(b),
    }
}

fn cost() -> impl Strategy<Value = Rational64> {
    (0i64..7, 1i64..4).prop_map(|(n, d)| Rational64::new(n, d))
}

fn positive_cost() -> impl Strategy<Value = Rational64> {
    (1i64..7, 1i64..4).prop_map(|(n, d)| Rational64::new(n, d))
}

fn edit_costs() -> impl Strategy<Value = EditCosts> {
    (cost(), cost(), cost()).prop_map(|(i, d, c)| EditCosts::new(i, d, c))
}

fn struct_costs() -> impl Strategy<Value = StructCosts> {
    (positive_cost(), positive_cost(), positive_cost()).prop_map(|(m, i, g)| StructCosts::new(m, i, g))
}

fn seq() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 0..7)
}

/// Unary chains over `g` and `h`, whose trees are paths.
fn chain() -> impl Strategy<Value = Term> {
    let s = sig();
    let heads = [s.g, s.h];
    let leaves = [Term::constant(s.a), Term::constant(s.b), Term::Var(0)];
    (prop::collection::vec(0usize..2, 0..5), 0usize..3).prop_map(move |(hs, leaf)| {
        hs.into_iter()
            .fold(leaves[leaf].clone(), |t, h| Term::App(heads[h], vec![t]))
    })
}

fn zero() -> Rational64 {
    Rational64::from(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn levenshtein_matches_recursion(a in seq(), b in seq(), c in edit_costs()) {
        prop_assert_eq!(levenshtein(&a, &b, &c), lev_oracle(&a, &b, &c));
    }

    #[test]
    fn levenshtein_is_bounded(a in seq(), b in seq(), c in edit_costs()) {
        let d = levenshtein(&a, &b, &c);
        prop_assert!(d >= zero());
        prop_assert!(d <= c.del * a.len() as i64 + c.ins * b.len() as i64);
        prop_assert_eq!(levenshtein(&a, &a, &c), zero());
    }

    #[test]
    fn levenshtein_is_symmetric_when_ins_equals_del(a in seq(), b in seq(), x in cost(), ch in cost()) {
        let c = EditCosts::new(x, x, ch);
        prop_assert_eq!(levenshtein(&a, &b, &c), levenshtein(&b, &a, &c));
    }

    #[test]
    fn ted_metric_properties(a in term(), b in term(), c in term()) {
        let u = EditCosts::unit();
        let ab = tree_edit_distance(&a, &b, &u);
        prop_assert!(ab >= zero());
        prop_assert_eq!(tree_edit_distance(&a, &a, &u), zero());
        prop_assert_eq!(ab == zero(), a == b);
        prop_assert_eq!(ab, tree_edit_distance(&b, &a, &u));
        prop_assert!(tree_edit_distance(&a, &c, &u) <= ab + tree_edit_distance(&b, &c, &u));
    }

    #[test]
    fn ted_is_bounded_by_delete_all_insert_all(a in term(), b in term(), c in edit_costs()) {
        let d = tree_edit_distance(&a, &b, &c);
        prop_assert!(d >= zero());
        prop_assert!(d <= c.del * a.size() as i64 + c.ins * b.size() as i64);
    }

    #[test]
    fn ted_on_paths_is_sequence_levenshtein(a in chain(), b in chain(), c in edit_costs()) {
        prop_assert_eq!(
            tree_edit_distance(&a, &b, &c),
            levenshtein(&a.symbol_sequence(), &b.symbol_sequence(), &c)
        );
    }

    #[test]
    fn ted_is_symmetric_when_ins_equals_del(a in term(), b in term(), x in cost(), ch in cost()) {
        let c = EditCosts::new(x, x, ch);
        prop_assert_eq!(tree_edit_distance(&a, &b, &c), tree_edit_distance(&b, &a, &c));
    }

    #[test]
    fn struct_matches_transcription(a in term(), b in term(), c in struct_costs()) {
        prop_assert_eq!(struct_distance(&a, &b, &c), struct_oracle(&a, &b, &c));
    }

    #[test]
    fn struct_swap_symmetry(a in term(), b in term(), c in struct_costs()) {
        let swapped = StructCosts::new(c.miss, c.gen, c.inst);
        prop_assert_eq!(struct_distance(&a, &b, &c), struct_distance(&b, &a, &swapped));
    }

    #[test]
    fn struct_is_zero_iff_identical(a in term(), b in term(), c in struct_costs()) {
        prop_assert_eq!(struct_distance(&a, &b, &c) == zero(), a == b);
    }

    #[test]
    fn struct_instantiation_base_case(t in term(), c in struct_costs()) {
        prop_assume!(!t.is_var());
        prop_assert_eq!(struct_distance(&Term::Var(9), &t, &c), c.inst * t.size() as i64);
    }

    #[test]
    fn min_distance_is_zero_on_members(atom in common::atom(), c in edit_costs()) {
        let conj = Clause::new(vec![Literal::neg(atom)], Role::NegatedConjecture);
        let r = RelatedSet::build([&conj], RelatedMode::Sub, Norm::Alf);
        for t in r.base() {
            for k in [Kernel::Lev(c), Kernel::Ted(c)] {
                prop_assert_eq!(min_distance_to_related(t, &r, &k), zero());
            }
            prop_assert_eq!(longest_related_prefix(t, &r), t.size());
        }
    }
}

#[test]
fn empty_related_set_gives_sentinel() {
    let r = RelatedSet::build(std::iter::empty::<&Clause>(), RelatedMode::Sub, Norm::Alf);
    let t = Term::Var(0);
    for k in [
        Kernel::Lev(EditCosts::unit()),
        Kernel::Ted(EditCosts::unit()),
        Kernel::Struc(StructCosts::integers(1, 1, 1)),
    ] {
        assert_eq!(min_distance_to_related(&t, &r, &k), Rational64::from(EMPTY_RELATED_DISTANCE));
    }
    assert_eq!(longest_related_prefix(&t, &r), 0);
}

#[test]
fn worked_kernel_examples() {
    let s = sig();
    let a = Term::constant(s.a);
    let b = Term::constant(s.b);
    let fa = Term::App(s.g, vec![a.clone()]);
    let gb = Term::App(s.f, vec![b.clone(), b.clone()]);
    let fab = Term::App(s.f, vec![a.clone(), b.clone()]);
    let u = StructCosts::integers(1, 1, 1);
    assert_eq!(struct_distance(&Term::Var(0), &fab, &u), Rational64::from(3));
    assert_eq!(struct_distance(&fa, &fa, &u), zero());
    // Different heads: generalize |g(a)| = 2, instantiate |f(b,b)| = 3.
    assert_eq!(struct_distance(&fa, &gb, &u), Rational64::from(5));
    let e = EditCosts::unit();
    assert_eq!(levenshtein(&[1, 2], &[1, 2, 3], &e), Rational64::from(1));
    let ga = Term::App(s.g, vec![a.clone()]);
    let gga = Term::App(s.g, vec![ga.clone()]);
    assert_eq!(tree_edit_distance(&ga, &Term::App(s.g, vec![b]), &e), Rational64::from(1));
    assert_eq!(tree_edit_distance(&gga, &ga, &e), Rational64::from(1));
}
