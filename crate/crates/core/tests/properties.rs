use hafs_core::bridge::{ternarize, ternarize_float, FLOAT_TERNARY_TOLERANCE};
use hafs_core::equations::{h_function, EquationSystem};
use hafs_core::extension::{
    complete_extensions, defeats, dft, extension_derived_labelling, indirect_defeat_chain,
};
use hafs_core::framework::{generate_random, parse, RandomSpec};
use hafs_core::labelling::{enumerate_adjacent_complete, is_adjacent_complete};
use hafs_core::logic::{evaluate, evaluate_three_valued, Logic, LogicSystem, NormalEncoding};
use hafs_core::value::ratio;
use hafs_core::{ElementSet, Hafs, Kind, Labelling, Tri};
use num_rational::BigRational;
use proptest::prelude::*;

fn framework() -> impl Strategy<Value = Hafs> {
    (
        1usize..4,
        0usize..4,
        0usize..4,
        any::<u64>(),
        any::<bool>(),
        0.0f64..0.8,
    )
        .prop_filter_map("infeasible", |(a, r, t, seed, acyclic, p)| {
            let mut spec = RandomSpec::new(a, r, t, seed);
            spec.support_acyclic = acyclic;
            spec.higher_order_prob = p;
            generate_random(&spec).ok()
        })
}

fn all_ternary(n: usize) -> Vec<Vec<Tri>> {
    (0..3usize.pow(n as u32))
        .map(|mut k| {
            let mut v = vec![Tri::Zero; n];
            for slot in v.iter_mut().rev() {
                *slot = Tri::ALL[k % 3];
                k /= 3;
            }
            v
        })
        .collect()
}

/// `dft(B)` as a least fixed point: direct targets of `B`, closed under
/// supports in `B` whose source is already defeated.
fn dft_oracle(h: &Hafs, b: &ElementSet) -> ElementSet {
    let relations = |kind: Kind| {
        (0..h.len())
            .filter(move |&ix| h.element(ix).kind == kind && b.contains(ix))
            .map(move |ix| h.endpoints(ix).unwrap())
    };
    let mut out = ElementSet::empty(h.len());
    for (s, t) in relations(Kind::Attack) {
        if b.contains(s) {
            out.insert(t);
        }
    }
    loop {
        let mut grew = false;
        for (s, t) in relations(Kind::Support) {
            if out.contains(s) && !out.contains(t) {
                out.insert(t);
                grew = true;
            }
        }
        if !grew {
            return out;
        }
    }
}

fn unit() -> impl Strategy<Value = BigRational> {
    (0i64..=12).prop_map(|k| ratio(k, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_round_trip(h in framework()) {
        let again = parse(&h.to_string()).unwrap();
        prop_assert_eq!(&again, &h);
        prop_assert_eq!(again.digest(), h.digest());
    }

    #[test]
    fn pruned_enumeration_matches_brute_force(h in framework()) {
        prop_assume!(h.len() <= 8);
        let fast = enumerate_adjacent_complete(&h, 16).unwrap();
        let slow: Vec<Labelling> = all_ternary(h.len())
            .into_iter()
            .map(Labelling::new)
            .filter(|l| is_adjacent_complete(&h, l).unwrap())
            .collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn defeat_closure_matches_recursive_form(h in framework(), mask in any::<u64>()) {
        let b = ElementSet::from_mask(h.len(), mask);
        let expected = dft_oracle(&h, &b);
        prop_assert_eq!(&dft(&h, &b), &expected);
        for a in 0..h.len() {
            let by_member = b.iter().any(|x| defeats(&h, x, a, &b));
            prop_assert_eq!(by_member, expected.contains(a));
            for x in b.iter() {
                if let Some(chain) = indirect_defeat_chain(&h, x, a, &b) {
                    prop_assert!(chain.is_acyclic());
                    prop_assert_eq!(chain.tail(), a);
                    prop_assert!(chain.edges().iter().all(|&e| b.contains(e)));
                }
            }
        }
    }

    #[test]
    fn derived_labellings_are_complete(h in framework()) {
        prop_assume!(h.len() <= 10);
        for e in complete_extensions(&h, 20).unwrap() {
            let l = extension_derived_labelling(&h, &e).unwrap();
            prop_assert!(is_adjacent_complete(&h, &l).unwrap());
        }
    }

    #[test]
    fn three_valued_evaluators_agree(h in framework()) {
        prop_assume!(h.len() <= 6);
        let enc = NormalEncoding::new(&h);
        for v in all_ternary(h.len()) {
            let fast = evaluate_three_valued(enc.formula(), &v).unwrap();
            let exact: Vec<BigRational> = v.iter().map(|t| t.to_degree()).collect();
            let slow = evaluate(enc.formula(), &|ix: &usize| exact.get(*ix).cloned(), &Logic::L3).unwrap();
            prop_assert_eq!(fast.to_degree::<BigRational>(), slow);
        }
    }

    #[test]
    fn models_are_solutions(h in framework(), picks in prop::collection::vec(0usize..5, 16)) {
        let grid = [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 1)];
        let v: Vec<BigRational> = (0..h.len()).map(|i| grid[picks[i % 16]].clone()).collect();
        let enc = NormalEncoding::new(&h);
        for logic in Logic::FUZZY {
            let sys = EquationSystem::new(&h, logic);
            prop_assert_eq!(enc.is_model(&v, &logic).unwrap(), sys.is_solution(&v));
        }
    }

    #[test]
    fn tnorm_axioms(x in unit(), y in unit(), z in unit()) {
        let one = ratio(1, 1);
        for logic in Logic::FUZZY {
            let t = |a: &BigRational, b: &BigRational| logic.tnorm(a, b);
            prop_assert_eq!(t(&x, &y), t(&y, &x));
            prop_assert_eq!(t(&x, &t(&y, &z)), t(&t(&x, &y), &z));
            prop_assert_eq!(t(&x, &one), x.clone());
            if y <= z {
                prop_assert!(t(&x, &y) <= t(&x, &z));
            }
            // residuation: z ≤ (x → y) iff x ∗ z ≤ y
            prop_assert_eq!(z <= logic.implies(&x, &y), t(&x, &z) <= y);
        }
    }

    #[test]
    fn h_function_properties(
        att in prop::collection::vec((unit(), unit()), 0..4),
        sup in prop::collection::vec((unit(), unit()), 0..4),
        coord in 0usize..16,
        bump in 1i64..12,
    ) {
        let zero = ratio(0, 1);
        let one = ratio(1, 1);
        for logic in Logic::FUZZY {
            let base = h_function(&logic, &att, &sup);
            prop_assert!(zero <= base && base <= one);

            let mut rev_att = att.clone();
            rev_att.reverse();
            let mut rev_sup = sup.clone();
            rev_sup.reverse();
            prop_assert_eq!(h_function(&logic, &rev_att, &rev_sup), base.clone());

            let unblocked = att.iter().all(|(b, r)| b == &zero || r == &zero)
                && sup.iter().all(|(c, t)| c == &one || t == &zero);
            if unblocked {
                prop_assert_eq!(base.clone(), one.clone());
            }
            if att.iter().any(|(b, r)| b == &one && r == &one) {
                prop_assert_eq!(base.clone(), zero.clone());
            }

            // raise one coordinate and compare
            let coords = 2 * att.len() + 2 * sup.len();
            if coords > 0 {
                let k = coord % coords;
                let (mut a2, mut s2) = (att.clone(), sup.clone());
                let raise = |v: &mut BigRational| *v = (v.clone() + ratio(bump, 12)).min(one.clone());
                let increasing = if k < 2 * att.len() {
                    let p = &mut a2[k / 2];
                    if k % 2 == 0 { raise(&mut p.0) } else { raise(&mut p.1) }
                    false
                } else {
                    let p = &mut s2[(k - 2 * att.len()) / 2];
                    if k % 2 == 0 { raise(&mut p.0); true } else { raise(&mut p.1); false }
                };
                let moved = h_function(&logic, &a2, &s2);
                if increasing {
                    prop_assert!(moved >= base);
                } else {
                    prop_assert!(moved <= base);
                }
            }
        }
    }

    #[test]
    fn ternarize_is_idempotent(v in prop::collection::vec(0.0f64..=1.0, 0..8)) {
        let once = ternarize_float(&v, FLOAT_TERNARY_TOLERANCE).unwrap();
        let embedded: Vec<f64> = once.to_degrees();
        prop_assert_eq!(ternarize_float(&embedded, FLOAT_TERNARY_TOLERANCE).unwrap(), once.clone());
        prop_assert_eq!(ternarize(&embedded).unwrap(), once);
    }
}

#[test]
fn ternarize_fixes_ternary_values() {
    for v in all_ternary(3) {
        let l = Labelling::new(v);
        assert_eq!(ternarize(&l.to_degrees::<BigRational>()).unwrap(), l);
        assert_eq!(
            ternarize_float(&l.to_degrees::<f64>(), FLOAT_TERNARY_TOLERANCE).unwrap(),
            l
        );
    }
}

#[test]
fn relation_kinds_partition_the_universe() {
    let h = parse("arg(a). arg(b). att(r1,a,b). supp(t1,b,r1).").unwrap();
    assert_eq!(h.arguments().count(), 2);
    assert_eq!(h.relations_of(Kind::Attack).count(), 1);
    assert_eq!(h.relations_of(Kind::Support).count(), 1);
}
