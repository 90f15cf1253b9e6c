use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::graph::{enumerate_graphs, free_lift, ArrowKind, HopfGraph, LiftOutcome, Tail};
use crate::linalg::{PGroupHom, Prime};
use crate::string::{decompose, string_module};

fn p2() -> Prime {
    Prime::new(2).unwrap()
}

fn p3() -> Prime {
    Prime::new(3).unwrap()
}

/// Replaces each cyclic generator `x_i` by `u_i x_i` for units `u_i`.
fn rescale(m: &WittModule, units: &[u64]) -> WittModule {
    let p = m.prime();
    let conj = |h: &PGroupHom, from: usize, to: usize| {
        let mut entries = Vec::new();
        for k in 0..h.dst().len() {
            for l in 0..h.src().len() {
                let modulus = p.power(h.dst()[k]);
                let inv = (1..modulus)
                    .find(|x| x * units[to] % modulus == 1 % modulus)
                    .unwrap_or(0);
                entries.push(h.get(k, l) * units[from] % modulus * inv % modulus);
            }
        }
        PGroupHom::new(p, h.src().to_vec(), h.dst().to_vec(), entries).unwrap()
    };
    let s = (0..m.top()).map(|i| conj(m.s(i), i, i + 1)).collect();
    let t = (0..m.top()).map(|i| conj(m.t(i), i + 1, i)).collect();
    WittModule::new(p, m.all_orders().to_vec(), s, t, m.extends()).unwrap()
}

#[test]
fn the_relation_ts_equals_p_is_checked() {
    let m = WittModule::from_entries(p2(), vec![vec![1], vec![1]], vec![vec![1]], vec![vec![1]], false).unwrap();
    let v = m.validate();
    assert!(v.iter().any(|x| x.degree == 0 && x.message == "ts ≠ p"), "{v:?}");
    let bad_entry =
        WittModule::from_entries(p2(), vec![vec![1], vec![2]], vec![vec![1]], vec![vec![0]], false).unwrap();
    assert!(bad_entry.validate().iter().any(|x| x.message.contains("cyclic orders")));
    let torsion = WittModule::from_entries(p2(), vec![vec![2]], vec![], vec![], false).unwrap();
    assert_eq!(torsion.validate().len(), 2);
    assert!(WittModule::from_entries(p2(), vec![vec![1], vec![1]], vec![], vec![], false).is_err());
}

#[test]
fn graph_modules_are_valid_and_reduce_to_their_strings() {
    for p in [p2(), p3()] {
        for m in 0..=5 {
            for g in enumerate_graphs(m).unwrap() {
                for shift in 0..2 {
                    let top = m + shift + 1;
                    let w = module_from_graph(&g, p, shift, top).unwrap();
                    assert!(w.validate().is_empty(), "{g}: {:?}", w.validate());
                    assert_eq!(w.mod_p_reduction(), string_module(&g.index(), shift, p, top).unwrap());
                    let orders: u32 = g.heights().iter().map(|&v| v as u32 + 1).sum();
                    assert_eq!(w.log_order(), orders);
                }
            }
        }
    }
}

#[test]
fn infinite_graphs_fill_the_window() {
    let lambda = module_from_graph(&HopfGraph::lambda(1), p3(), 1, 5).unwrap();
    assert!(lambda.extends());
    assert_eq!(
        lambda.all_orders(),
        &[vec![], vec![1], vec![2], vec![3], vec![4], vec![5]]
    );
    assert!(lambda.validate().is_empty());
    let unknown = HopfGraph::from_kinds(&[ArrowKind::LeftDown], Some(Tail::Unknown));
    assert!(module_from_graph(&unknown, p3(), 0, 4).is_err());
    assert!(module_from_graph(&HopfGraph::finite([], vec![0, 1, 0]).unwrap(), p2(), 0, 1).is_err());
}

#[test]
fn kernel_of_p_reads_arrows_as_steps() {
    use ArrowKind::*;
    for m in 1..=5 {
        for g in enumerate_graphs(m).unwrap() {
            let w = module_from_graph(&g, p2(), 0, m).unwrap();
            let dec = decompose(&w.p_torsion_kernel()).unwrap();
            assert_eq!(dec.summands.len(), 1, "{g}");
            let expected: BTreeSet<usize> = g
                .kinds()
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, k)| matches!(k, RightHorizontal | LeftDown))
                .map(|(i, _)| i + 1)
                .collect();
            assert_eq!(dec.summands[0].index.set(), &expected, "{g}");
        }
    }
}

#[test]
fn classification_recovers_graphs() {
    for p in [p2(), p3()] {
        for m in 0..=5 {
            for g in enumerate_graphs(m).unwrap() {
                let w = module_from_graph(&g, p, 1, m + 2).unwrap();
                let c = classify_basic(&w).unwrap();
                assert_eq!((c.shift, &c.graph), (1, &g));
                let units: Vec<u64> = (0..=m + 2)
                    .map(|i| if i % 2 == 0 { 1 } else { p.as_u64() - 1 })
                    .collect();
                let scrambled = rescale(&w, &units);
                assert!(scrambled.validate().is_empty());
                assert_eq!(classify_basic(&scrambled).unwrap().graph, g);
            }
        }
    }
}

#[test]
fn classification_of_a_truncated_infinite_graph_is_censored() {
    let w = module_from_graph(&HopfGraph::lambda(2), p2(), 0, 4).unwrap();
    let c = classify_basic(&w).unwrap();
    assert_eq!(c.graph.heights(), &[0, 1, 2, 3, 4]);
    assert_eq!(c.graph.tail(), Some(Tail::Unknown));
}

#[test]
fn non_basic_modules_are_rejected() {
    let a = module_from_graph(&HopfGraph::finite([], vec![0]).unwrap(), p2(), 0, 2).unwrap();
    let b = module_from_graph(&HopfGraph::finite([1], vec![0, 0]).unwrap(), p2(), 1, 2).unwrap();
    let sum = WittModule::direct_sum(p2(), 2, &[&a, &b]).unwrap();
    assert!(matches!(classify_basic(&sum), Err(Error::NotBasic(_))));
    assert!(matches!(
        classify_basic(&WittModule::zero(p2(), 2, false)),
        Err(Error::NotBasic(_))
    ));
    let invalid = WittModule::from_entries(p2(), vec![vec![1], vec![1]], vec![vec![1]], vec![vec![1]], false).unwrap();
    assert!(matches!(classify_basic(&invalid), Err(Error::InvalidModule(_))));
}

#[test]
fn injectivity_matches_the_arrow_rules() {
    for p in [p2(), p3()] {
        for m in 0..=5 {
            for g in enumerate_graphs(m).unwrap() {
                for shift in 0..2 {
                    let top = m + shift + 1;
                    let w = module_from_graph(&g, p, shift, top).unwrap();
                    assert_eq!(injectivity_profile(&w), arrow_profile(&g, shift, top).unwrap(), "{g}");
                }
            }
        }
    }
    let step_plateau = HopfGraph::infinite([4], vec![0, 1, 2, 3, 3], Tail::Repeat(ArrowKind::RightHorizontal)).unwrap();
    for g in [HopfGraph::lambda(2), step_plateau] {
        let w = module_from_graph(&g, p2(), 1, 7).unwrap();
        assert_eq!(injectivity_profile(&w), arrow_profile(&g, 1, 7).unwrap());
    }
}

#[test]
fn free_and_cofree_verdicts() {
    let lambda = module_from_graph(&HopfGraph::lambda(1), p2(), 0, 5).unwrap();
    let v = is_free_algebra(&lambda);
    assert!(v.value && v.window_uncertain);
    assert!(is_cofree_coalgebra(&lambda).value);
    let point = module_from_graph(&HopfGraph::finite([], vec![0]).unwrap(), p2(), 0, 0).unwrap();
    assert!(!is_free_algebra(&point).value);
    assert!(!is_free_algebra(&point).window_uncertain);
    let LiftOutcome::Graph(g) = free_lift(&crate::string::StringIndex::censored(4, [1, 3]).unwrap()) else {
        panic!()
    };
    let w = module_from_graph(&g, p3(), 0, 4).unwrap();
    assert!(is_free_algebra(&w).value);
    assert!(!is_cofree_coalgebra(&w).value);
}

#[test]
fn endomorphisms_of_basic_modules_are_local() {
    for m in 0..=4 {
        for g in enumerate_graphs(m).unwrap() {
            let w = module_from_graph(&g, p2(), 0, m).unwrap();
            let end = endomorphism_ring(&w).unwrap();
            assert!(end.is_local().unwrap(), "{g}");
            let idem = end.idempotents().unwrap();
            assert_eq!(idem.len(), 2, "{g}");
            for f in end.group.generator_maps() {
                assert!(f.is_homomorphism(&w, &w));
            }
        }
    }
}

#[test]
fn sums_have_more_idempotents() {
    let a = module_from_graph(&HopfGraph::finite([], vec![0]).unwrap(), p2(), 0, 2).unwrap();
    let b = module_from_graph(&HopfGraph::finite([2], vec![0, 1, 1]).unwrap(), p2(), 0, 2);
    assert!(b.is_err(), "not a valid graph");
    let b = module_from_graph(&HopfGraph::finite([2], vec![0, 1, 0]).unwrap(), p2(), 0, 2).unwrap();
    let sum = WittModule::direct_sum(p2(), 2, &[&a, &b]).unwrap();
    let end = endomorphism_ring(&sum).unwrap();
    assert!(!end.is_local().unwrap());
    let idem = end.idempotents().unwrap();
    assert!(idem.len() >= 4, "{}", idem.len());
    assert!(idem.iter().all(|e| e.is_homomorphism(&sum, &sum)));
}

#[test]
fn hom_group_orders() {
    // Hom(M, M) for the point module is Z/p; for a single Z/p^2 bump it has
    // order p^2 (multiplication by Z/p^2 on the generator).
    let point = module_from_graph(&HopfGraph::finite([], vec![0]).unwrap(), p3(), 0, 0).unwrap();
    assert_eq!(hom_group(&point, &point).unwrap().log_order(), 1);
    let bump = module_from_graph(&HopfGraph::finite([2], vec![0, 1, 0]).unwrap(), p3(), 0, 2).unwrap();
    assert_eq!(hom_group(&bump, &bump).unwrap().log_order(), 2);
    assert!(hom_group(&point, &bump).is_err());
}

#[test]
fn quotients() {
    let g = HopfGraph::finite([2], vec![0, 1, 0]).unwrap();
    let w = module_from_graph(&g, p2(), 0, 2).unwrap();
    let (same, proj) = w.quotient(&[vec![], vec![], vec![]]).unwrap();
    assert_eq!(same.all_orders(), w.all_orders());
    assert_eq!(proj.len(), 3);
    // Killing p x̃_1 leaves the socle-free truncation.
    let (q, _) = w.quotient(&[vec![], vec![vec![2]], vec![]]).unwrap();
    assert!(q.validate().is_empty(), "{:?}", q.validate());
    assert_eq!(q.log_order(), 3);
    let (zero, _) = w.quotient(&[vec![], vec![vec![1]], vec![]]).unwrap();
    assert!(zero.is_zero());
}

#[test]
fn dieudonne_validation() {
    // M_1 = Z/4 is not killed by p although 2 ∤ 1.
    let d = DieudonneModule::from_entries(p2(), vec![vec![2], vec![1]], vec![vec![1]], vec![vec![2]], false).unwrap();
    assert!(d
        .validate()
        .iter()
        .any(|v| v.degree == 1 && v.message.contains("p ∤ n")));
    let d = DieudonneModule::from_entries(p2(), vec![vec![1], vec![1]], vec![vec![1]], vec![vec![1]], false).unwrap();
    assert!(d.validate().iter().any(|v| v.message == "VF ≠ p"));
}

#[test]
fn typical_split_of_random_modules() {
    for (p, top) in [(p2(), 12), (p3(), 10), (Prime::new(5).unwrap(), 11)] {
        for seed in 0..10 {
            let d = random_dieudonne(p, top, 2, seed);
            assert!(d.validate().is_empty(), "{:?}", d.validate());
            let parts = d.p_typical_split();
            for w in parts.values() {
                assert!(w.validate().is_empty());
            }
            let back = DieudonneModule::reassemble(p, top, false, &parts).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.p_typical_split(), parts);
            let total: u32 = parts.values().map(WittModule::log_order).sum();
            assert_eq!(total, d.log_order());
        }
    }
}

#[test]
fn glued_modules() {
    assert_eq!(gamma(1).m(), Some(5));
    assert!(gamma(3).is_valid() && extension_graph(3).is_valid());
    let one = big_indecomposable(1, p2()).unwrap();
    assert_eq!(classify_basic(&one).unwrap().graph, extension_graph(1));
    assert_eq!(idempotent_search(&one).unwrap().len(), 2);
    for n in 1..=3 {
        let m = big_indecomposable(n, p2()).unwrap();
        assert!(m.validate().is_empty(), "{:?}", m.validate());
        for i in 1..=n {
            let gi = module_from_graph(&extension_graph(i), p2(), 0, big_window(n)).unwrap();
            assert!(!hom_group(&gi, &m).unwrap().is_zero());
        }
    }
}

/// `x_k ↦ y_k` for `k <= 4` and `x_5 ↦ p y_5` is a nonzero map
/// `M(Γ_1) -> M(Γ_2)`, and it lets the glued module for two graphs split.
#[test]
fn gamma_modules_admit_cross_maps() {
    let top = big_window(2);
    let a = module_from_graph(&gamma(1), p2(), 0, top).unwrap();
    let b = module_from_graph(&gamma(2), p2(), 0, top).unwrap();
    let h = hom_group(&a, &b).unwrap();
    assert!(!h.is_zero());
    let glued = big_indecomposable(2, p2()).unwrap();
    let idem = idempotent_search(&glued).unwrap();
    assert!(idem.len() > 2);
    assert!(idem.iter().all(|e| e.is_homomorphism(&glued, &glued)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classify_inverts_module_from_graph(m in 0usize..=6, pick in any::<u64>(), shift in 0usize..3, p in prop::sample::select(vec![2u64, 3, 5])) {
        let graphs = enumerate_graphs(m).unwrap();
        let g = &graphs[(pick % graphs.len() as u64) as usize];
        let w = module_from_graph(g, Prime::new(p).unwrap(), shift, m + shift).unwrap();
        let c = classify_basic(&w).unwrap();
        prop_assert_eq!(c.shift, shift);
        prop_assert_eq!(&c.graph, g);
    }

    #[test]
    fn hom_generators_are_homomorphisms(a in 0usize..=3, b in 0usize..=3, pa in any::<u64>(), pb in any::<u64>()) {
        let ga = enumerate_graphs(a).unwrap();
        let gb = enumerate_graphs(b).unwrap();
        let top = 4;
        let x = module_from_graph(&ga[(pa % ga.len() as u64) as usize], p2(), 0, top).unwrap();
        let y = module_from_graph(&gb[(pb % gb.len() as u64) as usize], p2(), 1, top).unwrap();
        let h = hom_group(&x, &y).unwrap();
        for f in h.generator_maps() {
            prop_assert!(f.is_homomorphism(&x, &y));
        }
        let elements = h.elements().unwrap();
        prop_assert_eq!(elements.len() as u64, 2u64.pow(h.log_order()));
    }
}
