use proptest::prelude::*;

use super::*;
use crate::string::Length;

fn plateau() -> HopfGraph {
    HopfGraph::finite([2, 4], vec![0, 1, 1, 1, 0]).unwrap()
}

fn late_staircase() -> HopfGraph {
    HopfGraph::infinite([1], vec![0, 0, 1, 2], Tail::Repeat(ArrowKind::LeftDown)).unwrap()
}

fn step_plateau() -> HopfGraph {
    HopfGraph::infinite([4], vec![0, 1, 2, 3, 3], Tail::Repeat(ArrowKind::RightHorizontal)).unwrap()
}

/// All `(I, v)` with `v_i ∈ 0..=m`, filtered by the four codec rules.
fn brute_force_count(m: usize) -> usize {
    let mut count = 0;
    for mask in 0u32..(1 << m) {
        let set: BTreeSet<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut v = vec![0i64; m + 1];
        loop {
            let ok = v[0] == 0
                && v[m] == 0
                && (1..=m).all(|i| {
                    if set.contains(&i) {
                        v[i] == v[i - 1] || v[i] == v[i - 1] - 1
                    } else {
                        v[i] == v[i - 1] || v[i] == v[i - 1] + 1
                    }
                });
            if ok {
                count += 1;
            }
            let mut k = 0;
            while k <= m {
                v[k] += 1;
                if v[k] <= m as i64 {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
            if k > m {
                break;
            }
        }
    }
    count
}

#[test]
fn codec_examples() {
    assert!(plateau().is_valid());
    assert!(late_staircase().is_valid());
    let bad = HopfGraph::finite([1], vec![0, 1, 0]).unwrap();
    let v = bad.validate();
    assert_eq!(v.len(), 2, "{v:?}");
    assert!(v[0].starts_with("1 ∈ I"));
    assert!(!HopfGraph::finite([], vec![0, 1]).unwrap().is_valid());
    assert!(
        !HopfGraph::infinite([1], vec![0, 0], Tail::Repeat(ArrowKind::RightDown))
            .unwrap()
            .is_valid()
    );
}

#[test]
fn arrow_kinds_of_sample_graphs() {
    use ArrowKind::*;
    assert_eq!(
        plateau().kinds().unwrap(),
        vec![LeftDown, RightHorizontal, LeftHorizontal, RightDown]
    );
    assert_eq!(HopfGraph::lambda(5).kinds().unwrap(), vec![LeftDown; 5]);
    assert!(graph_from_arrows(&ArrowList {
        arrows: vec![],
        tail: None
    })
    .is_err());
}

#[test]
fn arrows_need_an_origin_and_a_chain() {
    let shifted = ArrowList {
        arrows: vec![Arrow {
            from: (1, 0),
            to: (2, 0),
        }],
        tail: None,
    };
    assert!(graph_from_arrows(&shifted).is_err());
    let broken = ArrowList {
        arrows: vec![
            Arrow {
                from: (0, 0),
                to: (1, 0),
            },
            Arrow {
                from: (1, 1),
                to: (2, 1),
            },
        ],
        tail: None,
    };
    assert!(graph_from_arrows(&broken).is_err());
    let long = ArrowList {
        arrows: vec![Arrow {
            from: (0, 0),
            to: (2, 0),
        }],
        tail: None,
    };
    assert!(graph_from_arrows(&long).is_err());
}

#[test]
fn enumeration_counts() {
    let counts: Vec<usize> = (0..=5).map(|m| enumerate_graphs(m).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
    for m in 0..=5 {
        assert_eq!(counts[m], brute_force_count(m));
    }
    let two = enumerate_graphs(2).unwrap();
    let sets: Vec<Vec<usize>> = two.iter().map(|g| g.set().iter().copied().collect()).collect();
    assert_eq!(sets, vec![vec![], vec![1], vec![1, 2], vec![2], vec![2]]);
    assert_eq!(two[3].heights(), &[0, 0, 0]);
    assert_eq!(two[4].heights(), &[0, 1, 0]);
    let one = enumerate_graphs(1).unwrap();
    assert!(one.iter().all(|g| g.heights() == [0, 0]));
    assert!(matches!(enumerate_graphs(13), Err(Error::SizeGuard { .. })));
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    for m in 0..=6 {
        let gs = enumerate_graphs(m).unwrap();
        let mut dedup = gs.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), gs.len());
        assert!(gs.iter().all(|g| g.is_valid() && g.m() == Some(m)));
    }
}

#[test]
fn arrow_roundtrip_on_enumerated_graphs() {
    for m in 1..=8 {
        for g in enumerate_graphs(m).unwrap() {
            let list = graph_arrows(&g).unwrap();
            assert_eq!(graph_from_arrows(&list).unwrap(), g);
            let mut reversed = list.clone();
            reversed.arrows.reverse();
            assert_eq!(graph_from_arrows(&reversed).unwrap(), g);
        }
    }
}

#[test]
fn tikz_of_the_plateau_graph() {
    let text = render_graph(&plateau(), RenderFormat::Tikz).unwrap();
    let arrows: Vec<&str> = text.lines().filter(|l| l.contains("stealth")).collect();
    assert_eq!(
        arrows,
        vec![
            "\\draw[stealth-] (0,0) -- (1,1);",
            "\\draw[-stealth] (1,1) -- (2,1);",
            "\\draw[stealth-] (2,1) -- (3,1);",
            "\\draw[-stealth] (3,1) -- (4,0);",
        ]
    );
    assert_eq!(graph_from_arrows(&parse_tikz_arrows(&text).unwrap()).unwrap(), plateau());
}

#[test]
fn tikz_tails() {
    let text = render_graph(&late_staircase(), RenderFormat::Tikz).unwrap();
    assert!(text.contains("\\draw[dotted,stealth-] (3,2) -- (4,3);"), "{text}");
    for g in [late_staircase(), step_plateau(), HopfGraph::lambda(3)] {
        let text = render_graph(&g, RenderFormat::Tikz).unwrap();
        assert_eq!(graph_from_arrows(&parse_tikz_arrows(&text).unwrap()).unwrap(), g);
    }
    let unknown = HopfGraph::from_kinds(&[ArrowKind::LeftDown], Some(Tail::Unknown));
    let text = render_graph(&unknown, RenderFormat::Tikz).unwrap();
    assert!(text.contains("\\draw[dotted] (1,1) -- (2,1);"));
}

#[test]
fn ascii_renderings() {
    let lambda = render_graph(&HopfGraph::lambda(3), RenderFormat::Ascii).unwrap();
    assert_eq!(
        lambda,
        "            o ...\n         </\n        o\n     </\n    o\n </\no\n"
    );
    let point = render_graph(&HopfGraph::finite([], vec![0]).unwrap(), RenderFormat::Ascii).unwrap();
    assert_eq!(point, "o\n");
    let f1 = render_graph(&plateau(), RenderFormat::Ascii).unwrap();
    assert_eq!(f1, "    o-->o<--o\n </           \\>\no               o\n");
    let tikz_point = render_graph(&HopfGraph::finite([], vec![0]).unwrap(), RenderFormat::Tikz).unwrap();
    assert!(tikz_point.contains("\\fill (0,0) circle (2pt);"));
}

#[test]
fn shapes() {
    let lambda = HopfGraph::lambda(4);
    assert!(free_shape(&lambda) && cofree_shape(&lambda));
    assert!(!free_shape(&plateau()) && !cofree_shape(&plateau()));
    let right = HopfGraph::finite([1, 2, 3], vec![0, 0, 0, 0]).unwrap();
    assert!(free_shape(&right) && !cofree_shape(&right));
}

#[test]
fn p_polar_family() {
    assert!(is_p_polar_free(&step_plateau()));
    assert!(is_p_polar_free(&HopfGraph::lambda(2)));
    assert!(!is_p_polar_free(&plateau()));
    assert!(!is_p_polar_free(&late_staircase()));
    let plateau = HopfGraph::infinite([1, 2], vec![0, 0, 0], Tail::Repeat(ArrowKind::RightHorizontal)).unwrap();
    assert!(is_p_polar_free(&plateau));
    // The heights `min(i, n)` break the codec at step `n`.
    assert!(
        !HopfGraph::infinite([4], vec![0, 1, 2, 3, 4], Tail::Repeat(ArrowKind::RightHorizontal))
            .unwrap()
            .is_valid()
    );
    let p2 = Prime::new(2).unwrap();
    assert!(satisfies_projectivity_criterion(1, &HopfGraph::lambda(3), p2));
    assert!(!satisfies_projectivity_criterion(2, &HopfGraph::lambda(3), p2));
}

#[test]
fn lifts() {
    let all = StringIndex::censored(5, 1..=5).unwrap();
    match free_lift(&all) {
        LiftOutcome::Graph(g) => {
            assert_eq!(g.heights(), &[0; 6]);
            assert!(free_shape(&g));
        }
        other => panic!("{other:?}"),
    }
    match free_lift(&StringIndex::censored(4, []).unwrap()) {
        LiftOutcome::Graph(g) => assert_eq!(g.kinds().unwrap(), vec![ArrowKind::LeftDown; 4]),
        other => panic!("{other:?}"),
    }
    match free_lift(&StringIndex::finite(2, [1]).unwrap()) {
        LiftOutcome::Impossible(o) => {
            assert_eq!(o.forced_heights, vec![0, 0, 1]);
            assert!(o.height_violation);
        }
        other => panic!("{other:?}"),
    }
    match cofree_lift(&StringIndex::censored(3, [2]).unwrap()) {
        LiftOutcome::Graph(g) => {
            assert_eq!(g.heights(), &[0, 0, 1, 1]);
            assert!(cofree_shape(&g));
        }
        other => panic!("{other:?}"),
    }
    // Even the all-horizontal finite type is blocked at the top.
    match free_lift(&StringIndex::finite(2, [1, 2]).unwrap()) {
        LiftOutcome::Impossible(o) => assert!(!o.height_violation),
        other => panic!("{other:?}"),
    }
}

#[test]
fn graph_index() {
    assert_eq!(plateau().index(), StringIndex::finite(4, [2, 4]).unwrap());
    assert_eq!(late_staircase().index().length(), Length::AtLeast(3));
    assert_eq!(late_staircase().extended(6).unwrap().heights(), &[0, 0, 1, 2, 3, 4, 5]);
    assert!(HopfGraph::from_kinds(&[], Some(Tail::Unknown)).extended(2).is_err());
}

fn arb_graph() -> impl Strategy<Value = HopfGraph> {
    (0usize..=8, any::<u64>()).prop_map(|(m, pick)| {
        let all = enumerate_graphs(m).unwrap();
        all[(pick % all.len() as u64) as usize].clone()
    })
}

proptest! {
    #[test]
    fn rendering_is_deterministic_and_parses_back(g in arb_graph()) {
        let a = render_graph(&g, RenderFormat::Tikz).unwrap();
        prop_assert_eq!(&a, &render_graph(&g, RenderFormat::Tikz).unwrap());
        if g.steps() > 0 {
            prop_assert_eq!(graph_from_arrows(&parse_tikz_arrows(&a).unwrap()).unwrap(), g);
        }
    }
}
