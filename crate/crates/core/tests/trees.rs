use std::collections::BTreeSet;

use proptest::prelude::*;
use tridend_core::linalg::Q;
use tridend_core::series::{f_lr, Half};
use tridend_core::tree::*;
use tridend_core::{DescentOrientation, Error, Tree, TriSeries};

/// Little Schröder numbers from `(n+1)s_n = 3(2n−1)s_{n−1} − (n−2)s_{n−2}`,
/// indexed by degree.
fn schroeder(max: usize) -> Vec<u64> {
    let mut s = vec![1u64, 1];
    for n in 2..=max as i64 + 1 {
        let v = (3 * (2 * n - 1) * s[n as usize - 1] as i64 - (n - 2) * s[n as usize - 2] as i64) / (n + 1);
        s.push(v as u64);
    }
    s.truncate(max + 1);
    s
}

#[test]
fn counts_follow_schroeder_recurrence() {
    let expected = schroeder(7);
    assert_eq!(&expected[..7], &[1, 1, 3, 11, 45, 197, 903]);
    for (n, &count) in expected.iter().enumerate() {
        assert_eq!(enumerate_trees(n).unwrap().len() as u64, count, "degree {n}");
    }
}

#[test]
fn enumeration_sorted_and_unique() {
    for n in 0..=6 {
        let trees = enumerate_trees(n).unwrap();
        let encodings: Vec<String> = trees.iter().map(Tree::encode).collect();
        let mut sorted = encodings.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(encodings, sorted);
        assert!(trees.iter().all(|t| t.degree() == n));
    }
}

#[test]
fn degree_cap() {
    assert_eq!(enumerate_trees(11).unwrap_err(), Error::DegreeCap { degree: 11, cap: DEFAULT_DEGREE_CAP });
    assert_eq!(enumerate_trees_capped(7, 7).unwrap().len(), 4279);
}

#[test]
fn descent_bounds_and_mirror() {
    for n in 1..=6 {
        for t in enumerate_trees(n).unwrap() {
            for o in DescentOrientation::ALL {
                let s = t.descent_stats(o);
                assert!(s.strict <= s.weak && s.weak < n, "{t}");
            }
            assert_eq!(t.mirror().mirror(), t);
            assert_eq!(t.descent_stats(DescentOrientation::Mirrored), t.mirror().descent_stats(DescentOrientation::AsPrinted));
        }
    }
}

#[test]
fn closure_is_transitive_and_graded() {
    for n in 1..=5 {
        for t in enumerate_trees(n).unwrap() {
            let c = t.contraction_closure();
            assert!(c.contains(&t));
            for u in &c {
                assert_eq!(u.degree(), n);
                assert!(u.contraction_closure().is_subset(&c), "{u} ≤ {t}");
            }
        }
    }
}

#[test]
fn closure_by_single_contractions() {
    // breadth-first search over one-edge contractions
    for n in 1..=5 {
        for t in enumerate_trees(n).unwrap() {
            let mut seen = BTreeSet::from([t.clone()]);
            let mut frontier = vec![t.clone()];
            while let Some(u) = frontier.pop() {
                for e in u.inner_edges() {
                    let v = u.contract_edge(&e.path).unwrap();
                    if seen.insert(v.clone()) {
                        frontier.push(v);
                    }
                }
            }
            assert_eq!(seen, t.contraction_closure(), "{t}");
        }
    }
}

/// Shrinking the edge from `v` up to `u`: a right-pointing edge keeps the
/// descent count, a left-pointing one keeps the strict count. Otherwise the
/// rightmost child of `u`, if a leaf, becomes a descent, and the leftmost
/// child of `u`, if a leaf, stops being a strict descent.
#[test]
fn shrinking_an_inner_edge() {
    let o = DescentOrientation::AsPrinted;
    let mut middle_seen = 0;
    for n in 1..=5 {
        for t in enumerate_trees(n).unwrap() {
            let before = t.descent_stats(o);
            for e in t.inner_edges() {
                let after = t.contract_edge(&e.path).unwrap().descent_stats(o);
                let mut upper = &t;
                for &i in &e.path {
                    upper = &upper.children()[i];
                }
                let kids = upper.children();
                let gain = usize::from(kids[kids.len() - 1].is_leaf() && e.side != EdgeSide::Right);
                let loss = usize::from(kids[0].is_leaf() && e.side != EdgeSide::Left);
                assert_eq!(after.weak, before.weak + gain, "{t} {e:?}");
                assert_eq!(after.strict + loss, before.strict, "{t} {e:?}");
                match e.side {
                    EdgeSide::Right => assert_eq!(after.weak, before.weak),
                    EdgeSide::Left => assert_eq!(after.strict, before.strict),
                    EdgeSide::Middle if gain == 1 && loss == 1 => {
                        middle_seen += 1;
                        assert_eq!((after.weak, after.strict + 1), (before.weak + 1, before.strict));
                    }
                    EdgeSide::Middle => {}
                }
            }
        }
    }
    assert!(middle_seen > 0);
}

/// `F_L(t₁∨t₂) = (F_L(t₁) ≻ Y) ⪯ F_L(t₂)` and
/// `F_R(t₁∨t₂) = (F_R(t₁) ≽ Y) ≺ F_R(t₂)`, with `F(|) = 1`.
fn dendriform_image(t: &Tree, half: Half, truncation: usize) -> TriSeries<Tree> {
    match t {
        Tree::Leaf => TriSeries::one(truncation),
        Tree::Node(c) => {
            let (left, right) = (dendriform_image(&c[0], half, truncation), dendriform_image(&c[1], half, truncation));
            let y = TriSeries::generator(truncation);
            match half {
                Half::L => left.succ(&y).unwrap().preceq(&right).unwrap(),
                Half::R => left.succeq(&y).unwrap().prec(&right).unwrap(),
            }
        }
    }
}

#[test]
fn f_lr_is_the_dendriform_morphism() {
    let o = DescentOrientation::AsPrinted;
    let mut strictly_smaller = 0;
    for n in 1..=5 {
        for t in enumerate_trees(n).unwrap().into_iter().filter(Tree::is_binary) {
            let d = t.descent_stats(o).strict;
            for half in [Half::L, Half::R] {
                let image = f_lr(&t, half).unwrap();
                assert_eq!(image, dendriform_image(&t, half, n), "{t} {half:?}");
                assert!(image.terms().values().all(|c| *c == Q::from_integer(1.into())));
                let filtered: BTreeSet<Tree> = t
                    .contraction_closure()
                    .into_iter()
                    .filter(|u| {
                        let s = u.descent_stats(o);
                        match half {
                            Half::L => s.weak == d,
                            Half::R => s.strict == d,
                        }
                    })
                    .collect();
                let got: BTreeSet<Tree> = image.terms().keys().cloned().collect();
                assert!(got.is_subset(&filtered), "{t} {half:?}");
                if got != filtered {
                    strictly_smaller += 1;
                }
            }
        }
    }
    // ((|,(|,|)),|) is the first binary tree where the two differ.
    assert!(strictly_smaller > 0);
    let t: Tree = "((|,(|,|)),|)".parse().unwrap();
    assert_eq!(f_lr(&t, Half::L).unwrap().len(), 2);
}

#[test]
fn combs_and_printed_examples() {
    assert_eq!(comb(0, CombSide::Right), Tree::Leaf);
    assert_eq!(graft(vec![Tree::y(), Tree::Leaf]).unwrap(), comb(2, CombSide::Left));
    assert_eq!(graft(vec![Tree::Leaf]).unwrap_err(), Error::Arity(1));
    let o = DescentOrientation::AsPrinted;
    assert_eq!(comb(2, CombSide::Right).descent_stats(o).weak, 1);
    assert_eq!(comb(3, CombSide::Right).descent_stats(o).weak, 2);
    for n in 1..=6 {
        assert_eq!(comb(n, CombSide::Left).descent_stats(o), DescentStats::default());
    }
    let c3 = Tree::corolla(3).unwrap().descent_stats(o);
    assert_eq!((c3.weak, c3.strict), (1, 0));
}

fn arb_tree() -> impl Strategy<Value = Tree> {
    let leaf = Just(Tree::Leaf);
    leaf.prop_recursive(4, 24, 4, |inner| prop::collection::vec(inner, 2..=4).prop_map(Tree::Node))
}

proptest! {
    #[test]
    fn encoding_round_trips(t in arb_tree()) {
        let s = t.encode();
        prop_assert_eq!(s.parse::<Tree>().unwrap(), t.clone());
        prop_assert_eq!(t.degree() + 1, t.leaf_count());
    }

    #[test]
    fn ordering_is_encoding_order(a in arb_tree(), b in arb_tree()) {
        prop_assert_eq!(a.cmp(&b), a.encode().cmp(&b.encode()));
    }

    #[test]
    fn mirror_swaps_descent_orientation(t in arb_tree()) {
        prop_assert_eq!(t.mirror().mirror(), t.clone());
        prop_assert_eq!(t.mirror().degree(), t.degree());
        let s = t.descent_stats(DescentOrientation::AsPrinted);
        prop_assert!(s.strict <= s.weak);
    }

    #[test]
    fn garbage_does_not_parse_as_a_different_tree(s in "[(|,) ]{0,12}") {
        if let Ok(t) = s.parse::<Tree>() {
            let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(t.encode(), compact);
        }
    }
}
