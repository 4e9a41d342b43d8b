mod common;

use std::ops::ControlFlow;
use std::sync::Arc;

use complicial::document::ComplexDocument;
use complicial::homotopy::multiply;
use complicial::lifting::{find_extensions, for_each_horn_map, ExtensionProblem};
use complicial::standard::{complicial_delta, complicial_horn, delta};
use complicial::{gproduct, regular_subset, SimplexId, StratifiedSSet};
use proptest::prelude::*;

/// `Δ[n]` truncated at `cap`, with the nondegenerate positive-dimensional
/// simplices selected by `mask` marked thin.
fn stratified_delta(n: usize, cap: usize, mask: &[bool]) -> Arc<StratifiedSSet> {
    let d = delta(n, cap).unwrap();
    let s = d.sset();
    let extra: Vec<SimplexId> = (1..=cap)
        .flat_map(|k| s.nondegenerate(k).collect::<Vec<_>>())
        .zip(mask.iter().cycle())
        .filter(|(_, &m)| m)
        .map(|(x, _)| x)
        .collect();
    Arc::new(d.complex().with_extra_thin(extra).unwrap())
}

fn mask() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stratifications_survive_a_document_round_trip(n in 0usize..4, m in mask()) {
        let x = stratified_delta(n, 3, &m);
        prop_assert!(x.satisfies_axioms());
        let doc = ComplexDocument::from_complex(&x, None, None);
        let back = ComplexDocument::from_json(&doc.to_json()).unwrap().to_complex().unwrap();
        prop_assert_eq!(&back, &*x);
        prop_assert_eq!(ComplexDocument::from_complex(&back, None, None).digest(), doc.digest());
    }

    #[test]
    fn product_thinness_is_componentwise(a in 0usize..3, b in 0usize..3, ma in mask(), mb in mask()) {
        let x = stratified_delta(a, 2, &ma);
        let y = stratified_delta(b, 2, &mb);
        let p = gproduct(&x, &y);
        prop_assert!(p.complex().satisfies_axioms());
        for s in p.complex().sset().all_simplices() {
            let (u, v) = p.split(s);
            prop_assert_eq!(p.pair(u, v), s);
            prop_assert_eq!(p.complex().is_thin(s), x.is_thin(u) && y.is_thin(v));
        }
    }

    #[test]
    fn regular_subsets_are_closed_and_monotone(n in 1usize..4, m in mask(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let x = stratified_delta(n, 3, &m);
        let all = x.sset().all_simplices().collect::<Vec<_>>();
        let gens: Vec<SimplexId> = picks.iter().map(|i| *i.get(&all)).collect();
        let (sub, inc) = regular_subset(&x, &gens).unwrap();
        prop_assert!(inc.is_injective());
        prop_assert!(inc.revalidate().is_ok());
        for s in sub.sset().all_simplices() {
            prop_assert_eq!(sub.is_thin(s), x.is_thin(inc.apply(s)));
        }
        let (again, _) = regular_subset(&sub, &sub.sset().all_simplices().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&*again, &*sub);
        if let Some((_, fewer)) = gens.split_last() {
            let (smaller, _) = regular_subset(&x, fewer).unwrap();
            for d in 0..=3 {
                prop_assert!(smaller.sset().count(d) <= sub.sset().count(d));
            }
        }
    }

    #[test]
    fn extensions_match_naive_enumeration(n in 1usize..4, k_seed in 0usize..4, target_dim in 1usize..4, m in mask()) {
        let k = k_seed % (n + 1);
        let x = stratified_delta(target_dim, 3, &m);
        let horn = complicial_horn(k, n, n).unwrap();
        let simplex = complicial_delta(k, n, n).unwrap();
        let candidates: Vec<_> = x
            .sset()
            .simplices(n)
            .filter_map(|s| simplex.yoneda(&x, s).ok())
            .collect();
        let mut failure = None;
        for_each_horn_map(&horn, &x, |_, map| {
            let problem = ExtensionProblem::new(&horn.inclusion, &map).unwrap();
            let found = find_extensions(&problem, None);
            let naive = candidates
                .iter()
                .filter(|f| horn.inclusion.then(f).unwrap() == map)
                .count();
            let sound = found.iter().all(|f| f.revalidate().is_ok() && horn.inclusion.then(f).unwrap() == map);
            if !sound || found.len() != naive {
                failure = Some((found.len(), naive, sound));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        prop_assert_eq!(failure, None);
    }

    #[test]
    fn loops_in_cyclic_nerves_multiply_by_addition(order in 1usize..7, a in 0usize..7, b in 0usize..7) {
        let (a, b) = (a % order, b % order);
        let x = common::th0_nerve(&format!("cyclic:{order}"), 2);
        let star = SimplexId::new(0, 0);
        let r = multiply(&x, star, 1, SimplexId::new(1, a), SimplexId::new(1, b)).unwrap();
        prop_assert_eq!(r.simplex, SimplexId::new(1, (a + b) % order));
    }
}
