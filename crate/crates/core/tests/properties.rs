use std::sync::Arc;

use proptest::prelude::*;

use automaton_groups::families::{make_e, make_pi, make_u, perms, Scope};
use automaton_groups::machine::{
    compose, compose_all, composite_witness, distinguishing_word, nontrivial_witness,
    reachable_pairs, state_word_machine, transformations_equal, Alphabet, Limits, MealyMachine,
};
use automaton_groups::transforms::{
    classify, disjoint_union, dual_automaton, inverse_automaton, reverse_automaton,
};
use automaton_groups::words::{
    chi, collapse_h, free_reduce, is_freely_irreducible, lift_h, pattern_of, SignedAlphabet,
    StateWord,
};

fn machine_from(
    nq: usize,
    nx: usize,
    next: Vec<usize>,
    out: Vec<usize>,
    tag: &str,
) -> MealyMachine {
    let alphabet = Alphabet::new((0..nx).map(|x| x.to_string())).unwrap();
    let states = (0..nq).map(|q| format!("{tag}{q}")).collect();
    MealyMachine::new(format!("M{tag}"), alphabet, states, next, out).unwrap()
}

/// Any machine with 1..=4 states over 2..=3 letters.
fn any_machine() -> impl Strategy<Value = MealyMachine> {
    (1usize..=4, 2usize..=3).prop_flat_map(|(nq, nx)| {
        (
            prop::collection::vec(0..nq, nq * nx),
            prop::collection::vec(0..nx, nq * nx),
        )
            .prop_map(move |(next, out)| machine_from(nq, nx, next, out, "s"))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Machines whose per-state output maps are bijections.
fn invertible_machine(nx: usize, tag: &'static str) -> impl Strategy<Value = MealyMachine> {
    (1usize..=4).prop_flat_map(move |nq| {
        (
            prop::collection::vec(0..nq, nq * nx),
            prop::collection::vec(permutation(nx), nq),
        )
            .prop_map(move |(next, perms)| machine_from(nq, nx, next, perms.concat(), tag))
    })
}

/// Machines whose per-letter transition maps are bijections.
fn reversible_machine() -> impl Strategy<Value = MealyMachine> {
    (1usize..=4, 2usize..=3).prop_flat_map(|(nq, nx)| {
        (
            prop::collection::vec(permutation(nq), nx),
            prop::collection::vec(0..nx, nq * nx),
        )
            .prop_map(move |(cols, out)| {
                let next = (0..nq)
                    .flat_map(|q| cols.iter().map(move |c| c[q]))
                    .collect();
                machine_from(nq, nx, next, out, "r")
            })
    })
}

/// Bi-reversible machines: a random bijection of `Q × X` gives `(φ, ψ)`,
/// kept only if the output and transition maps are also bijections.
fn bireversible_machine() -> impl Strategy<Value = MealyMachine> {
    (1usize..=3, 2usize..=3)
        .prop_flat_map(|(nq, nx)| permutation(nq * nx).prop_map(move |p| (nq, nx, p)))
        .prop_map(|(nq, nx, p)| {
            let next = p.iter().map(|&c| c / nx).collect();
            let out = p.iter().map(|&c| c % nx).collect();
            machine_from(nq, nx, next, out, "b")
        })
        .prop_filter("output and transition maps bijective", |m| {
            let c = classify(m);
            c.invertible && c.reversible
        })
}

fn word(nx: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..nx, 0..=max)
}

fn all_words(nx: usize, len: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![vec![]], |acc, _| {
        acc.iter()
            .flat_map(|w| {
                (0..nx).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn classic() -> SignedAlphabet {
    Scope::Classic.signed_alphabet().unwrap()
}

fn signed_word(max: usize) -> impl Strategy<Value = StateWord> {
    prop::collection::vec(0usize..6, 0..=max).prop_map(StateWord)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn actions_preserve_length_and_prefixes(m in any_machine(), q in 0usize..4, seed in word(3, 8)) {
        let m = Arc::new(m);
        let nx = m.alphabet().len();
        let w: Vec<usize> = seed.iter().map(|&x| x % nx).collect();
        let t = m.pointed(q % m.num_states());
        let image = t.apply(&w).unwrap();
        prop_assert_eq!(image.len(), w.len());
        for i in 0..=w.len() {
            prop_assert_eq!(&t.apply(&w[..i]).unwrap()[..], &image[..i]);
        }
        if let Some((&x, rest)) = w.split_first() {
            let (y, section) = t.section(x).unwrap();
            let mut expected = vec![y];
            expected.extend(section.apply(rest).unwrap());
            prop_assert_eq!(image, expected);
        }
    }

    #[test]
    fn composition_applies_first_argument_first(m1 in any_machine(), m2 in any_machine(), seed in word(3, 8)) {
        prop_assume!(m1.alphabet() == m2.alphabet());
        let (m1, m2) = (Arc::new(m1), Arc::new(m2));
        let w: Vec<usize> = seed.iter().map(|&x| x % m1.alphabet().len()).collect();
        let lim = Limits::default();
        for t1 in m1.all_pointed() {
            for t2 in m2.all_pointed() {
                let c = compose(&t1, &t2, &lim).unwrap();
                prop_assert_eq!(c.apply(&w).unwrap(), t2.apply(&t1.apply(&w).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn lazy_witness_agrees_with_product(m in any_machine(), xi in prop::collection::vec(0usize..4, 1..=4)) {
        let m = Arc::new(m);
        let xi: Vec<usize> = xi.iter().map(|&q| q % m.num_states()).collect();
        let lim = Limits::default();
        let ts: Vec<_> = xi.iter().map(|&q| m.pointed(q)).collect();
        let product = compose_all(&ts, &lim).unwrap();
        prop_assert_eq!(composite_witness(&ts, &lim).unwrap(), nontrivial_witness(&product, &lim).unwrap());
        let via_word = state_word_machine(&m, &xi, &lim).unwrap();
        prop_assert!(transformations_equal(&product, &via_word, &lim).unwrap());
    }

    #[test]
    fn equality_decision_matches_exhaustive_comparison(m in any_machine()) {
        prop_assume!(m.alphabet().len() == 2 && m.num_states() <= 3);
        let m = Arc::new(m);
        let lim = Limits::default();
        for t1 in m.all_pointed() {
            for t2 in m.all_pointed() {
                let depth = reachable_pairs(&t1, &t2);
                let exhaustive = all_words(2, depth)
                    .iter()
                    .all(|w| t1.apply(w).unwrap() == t2.apply(w).unwrap());
                prop_assert_eq!(transformations_equal(&t1, &t2, &lim).unwrap(), exhaustive);
                if let Some(w) = distinguishing_word(&t1, &t2, &lim).unwrap() {
                    prop_assert!(w.len() <= depth);
                    prop_assert_ne!(t1.apply(&w).unwrap(), t2.apply(&w).unwrap());
                }
            }
        }
    }

    #[test]
    fn dual_is_an_involution(m in any_machine()) {
        prop_assert!(dual_automaton(&dual_automaton(&m)).same_tables(&m));
    }

    #[test]
    fn reverse_is_an_involution(m in reversible_machine()) {
        let r = reverse_automaton(&m).unwrap();
        prop_assert!(reverse_automaton(&r).unwrap().same_tables(&m));
        for q in 0..m.num_states() {
            for x in 0..m.alphabet().len() {
                let p = m.next(q, x);
                prop_assert_eq!(r.next(p, x), q);
                prop_assert_eq!(r.out(p, x), m.out(q, x));
            }
        }
    }

    #[test]
    fn inverse_states_invert(m in invertible_machine(3, "i"), seed in word(3, 6)) {
        let m = Arc::new(m);
        let inv = Arc::new(inverse_automaton(&m).unwrap());
        let lim = Limits::default();
        for q in 0..m.num_states() {
            let c = compose(&m.pointed(q), &inv.pointed(q), &lim).unwrap();
            prop_assert!(distinguishing_word(&c, &automaton_groups::PointedMachine::identity(m.alphabet()), &lim).unwrap().is_none());
            prop_assert_eq!(inv.pointed(q).apply(&m.pointed(q).apply(&seed).unwrap()).unwrap(), seed.clone());
        }
    }

    #[test]
    fn bireversibility_passes_to_inverse_reverse_and_dual(m in bireversible_machine()) {
        let c = classify(&m);
        prop_assert!(c.bireversible && c.defects.is_empty());
        for derived in [inverse_automaton(&m).unwrap(), reverse_automaton(&m).unwrap(), dual_automaton(&m)] {
            prop_assert!(classify(&derived).bireversible);
        }
    }

    #[test]
    fn union_properties_are_componentwise(m1 in any_machine(), m2 in invertible_machine(2, "j")) {
        prop_assume!(m1.alphabet() == m2.alphabet());
        let u = disjoint_union("U", &[&m1, &m2]).unwrap();
        let (c, c1, c2) = (classify(&u), classify(&m1), classify(&m2));
        prop_assert_eq!(c.invertible, c1.invertible && c2.invertible);
        prop_assert_eq!(c.reversible, c1.reversible && c2.reversible);
        prop_assert_eq!(c.bireversible, c1.bireversible && c2.bireversible);
    }

    #[test]
    fn chi_is_multiplicative(x in signed_word(6), y in signed_word(6)) {
        let a = classic();
        prop_assert_eq!(chi(&a, &x.concat(&y)), chi(&a, &x) * chi(&a, &y));
    }

    #[test]
    fn reduction_does_not_change_the_transformation(xi in signed_word(6)) {
        let a = classic();
        let u = Arc::new(make_u(&Scope::Classic).unwrap());
        let lim = Limits::default();
        let reduced = free_reduce(&a, &xi);
        prop_assert!(is_freely_irreducible(&a, &reduced));
        let t1 = state_word_machine(&u, &xi.0, &lim).unwrap();
        let t2 = state_word_machine(&u, &reduced.0, &lim).unwrap();
        prop_assert!(transformations_equal(&t1, &t2, &lim).unwrap());
    }

    #[test]
    fn letter_permutations_preserve_patterns(xi in signed_word(8), which in 0usize..5) {
        let a = classic();
        let tau = [perms::tau0, perms::tau1, perms::swap_ab, perms::swap_bc, perms::chain_c][which](&a);
        let image = StateWord(make_pi(&a, &tau).unwrap().apply(&xi.0).unwrap());
        prop_assert_eq!(pattern_of(&a, &image), pattern_of(&a, &xi));
        prop_assert_eq!(is_freely_irreducible(&a, &image), is_freely_irreducible(&a, &xi));
    }

    #[test]
    fn lifting_to_a_component_commutes(xi in signed_word(6), n in 1u32..=3) {
        let base = classic();
        let scope = Scope::single(n);
        let target = scope.signed_alphabet().unwrap();
        let lift = |w: &StateWord| lift_h(&base, &target, n, w).unwrap();
        let lifted = lift(&xi);
        prop_assert_eq!(pattern_of(&target, &lifted), pattern_of(&base, &xi));
        prop_assert_eq!(is_freely_irreducible(&target, &lifted), is_freely_irreducible(&base, &xi));
        for (small, large) in [
            (perms::swap_ab(&base), perms::swap_ab(&target)),
            (perms::swap_bc(&base), perms::swap_bc(&target)),
        ] {
            let lhs = lift(&StateWord(make_pi(&base, &small).unwrap().apply(&xi.0).unwrap()));
            let rhs = make_pi(&target, &large).unwrap().apply(&lifted.0).unwrap();
            prop_assert_eq!(lhs.0, rhs);
        }
        let e = Arc::new(make_e(&Scope::Classic).unwrap());
        let en = Arc::new(make_e(&scope).unwrap());
        let lhs = lift(&StateWord(e.pointed(0).apply(&xi.0).unwrap()));
        prop_assert_eq!(lhs.0, en.pointed(0).apply(&lifted.0).unwrap());
    }

    #[test]
    fn collapsing_components_commutes(raw in prop::collection::vec((0usize..2, 0usize..3, any::<bool>()), 0..=6)) {
        let scope = Scope::union([1, 2]).unwrap();
        let from = scope.signed_alphabet().unwrap();
        let to = classic();
        // letters a_n, b_n, c_n and their inverses only
        let xi = StateWord(
            raw.iter()
                .map(|&(comp, role, neg)| {
                    let base = from
                        .base()
                        .iter()
                        .position(|b| b.component == comp as u32 + 1 && b.name.starts_with(["a", "b", "c"][role]))
                        .unwrap();
                    from.letter(base, if neg { automaton_groups::Sign::Neg } else { automaton_groups::Sign::Pos })
                })
                .collect(),
        );
        let collapse = |w: &StateWord| collapse_h(&from, &to, w).unwrap();
        let e = Arc::new(make_e(&Scope::Classic).unwrap());
        let en = Arc::new(make_e(&scope).unwrap());
        let lhs = e.pointed(0).apply(&collapse(&xi).0).unwrap();
        let rhs = collapse(&StateWord(en.pointed(0).apply(&xi.0).unwrap()));
        prop_assert_eq!(lhs, rhs.0);
        let lhs = make_pi(&to, &perms::swap_ab(&to)).unwrap().apply(&collapse(&xi).0).unwrap();
        let rhs = collapse(&StateWord(make_pi(&from, &perms::swap_ab(&from)).unwrap().apply(&xi.0).unwrap()));
        prop_assert_eq!(lhs, rhs.0);
        if is_freely_irreducible(&to, &collapse(&xi)) {
            prop_assert!(is_freely_irreducible(&from, &xi));
        }
    }
}
