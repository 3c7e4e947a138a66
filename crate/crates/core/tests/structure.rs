use neural_ideals::betti::has_linear_resolution;
use neural_ideals::structure::{
    is_linear_quotient_order, linear_quotients_search, recursive_linear_check,
    recursive_linear_check_with, split_at_neuron, PivotRule, SplitCriterion,
};
use neural_ideals::verify::{enumerate_degree_n, enumerate_polarized, sample_degree_n};
use neural_ideals::{FieldTag, Monomial};
use proptest::prelude::*;

/// Linear quotients straight from the definition, on raw masks: the colon
/// `(m_1..m_{i-1}) : m_i` is generated by `m_j & !m_i`, and its minimal
/// generators must all be single variables.
fn lq_by_definition(order: &[u64]) -> bool {
    (1..order.len()).all(|i| {
        let quotients: Vec<u64> = order[..i].iter().map(|m| m & !order[i]).collect();
        quotients.iter().all(|&q| {
            quotients
                .iter()
                .any(|&p| p.count_ones() == 1 && p & !q == 0)
        })
    })
}

/// First order in lexicographic order (by canonical generator order) that
/// passes the definition.
fn lex_least_lq(gens: &[Monomial]) -> Option<Vec<Monomial>> {
    fn go(gens: &[Monomial], used: &mut Vec<bool>, order: &mut Vec<Monomial>) -> bool {
        if order.len() == gens.len() {
            let masks: Vec<u64> = order.iter().map(|m| m.mask()).collect();
            return lq_by_definition(&masks);
        }
        for idx in 0..gens.len() {
            if used[idx] {
                continue;
            }
            used[idx] = true;
            order.push(gens[idx]);
            if go(gens, used, order) {
                return true;
            }
            order.pop();
            used[idx] = false;
        }
        false
    }
    let mut order = Vec::new();
    go(gens, &mut vec![false; gens.len()], &mut order).then_some(order)
}

#[test]
fn search_finds_lex_least_order() {
    let mut ideals: Vec<_> = enumerate_polarized(2).unwrap();
    ideals.extend(enumerate_degree_n(3).unwrap());
    let mut found = 0;
    for ideal in ideals.iter().filter(|i| i.len() <= 7) {
        let expected = lex_least_lq(ideal.gens());
        let got = linear_quotients_search(ideal).unwrap().map(|o| o.order);
        assert_eq!(got, expected, "{ideal}");
        if let Some(order) = got {
            found += 1;
            assert!(is_linear_quotient_order(ideal, &order));
        }
    }
    assert!(found > 50);
}

#[test]
fn linear_quotients_imply_linear_resolution_in_degree_n() {
    for n in 1..=3 {
        for ideal in enumerate_degree_n(n).unwrap() {
            let lq = linear_quotients_search(&ideal).unwrap().is_some();
            let lr = has_linear_resolution(&ideal, FieldTag::F2).unwrap();
            assert_eq!(lq, lr, "{ideal}");
        }
    }
}

#[test]
fn containment_criterion_is_sound_but_incomplete() {
    let mut missed = 0;
    for ideal in enumerate_degree_n(3).unwrap() {
        let lr = has_linear_resolution(&ideal, FieldTag::F2).unwrap();
        let contained = recursive_linear_check(&ideal, PivotRule::Last).unwrap();
        assert!(!contained || lr, "{ideal}");
        if lr && !contained {
            missed += 1;
            let s = split_at_neuron(&ideal, 3).unwrap();
            assert!(!s.j.gens_subset_of(&s.k) && !s.k.gens_subset_of(&s.j));
        }
    }
    assert_eq!(missed, 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_criterion_matches_oracle(n in 1u32..=4, seed in any::<u64>()) {
        let ideal = sample_degree_n(n, seed, 1).unwrap().pop().unwrap();
        let lr = has_linear_resolution(&ideal, FieldTag::F2).unwrap();
        for rule in [PivotRule::Last, PivotRule::Smallest] {
            let rec = recursive_linear_check_with(&ideal, rule, SplitCriterion::Intersection)
                .unwrap();
            prop_assert_eq!(rec, lr, "{} under {:?}", ideal, rule);
        }
    }

    #[test]
    fn split_reconstructs(n in 1u32..=4, seed in any::<u64>(), p in 1u32..=4) {
        let ideal = sample_degree_n(n, seed, 1).unwrap().pop().unwrap();
        let pivot = p.min(n);
        let s = split_at_neuron(&ideal, pivot).unwrap();
        prop_assert_eq!(s.reconstruct(), (*ideal).clone());
        prop_assert_eq!(s.j.len() + s.k.len(), ideal.len());
    }
}
