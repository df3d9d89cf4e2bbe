mod common;

use std::collections::BTreeSet;

use common::{config, graph, q, quiver_fixtures};
use gitfan::exactgeom::matrix::hermite_rows;
use gitfan::exactgeom::{Int, Rat};
use gitfan::roots::{box_below, DimensionVector, FramedGraph};
use gitfan::sigma::{
    connected_bipartitions, decompositions, in_sigma_theta, theta_of, DecompositionQuiver, SigmaVerdict,
    DEFAULT_DECOMPOSITION_CAP,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

const CAP: usize = DEFAULT_DECOMPOSITION_CAP;

/// Loop-free-or-not framed graphs with a nonzero target of total size at most 6 and a
/// stability vector vanishing on it.
fn problem() -> impl Strategy<Value = (FramedGraph, DimensionVector, Vec<Rat>)> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n), 0..=3),
                proptest::collection::vec(0i64..=2, n),
                proptest::collection::vec(0i64..=2, n + 1),
                proptest::collection::vec(-2i64..=2, n + 1),
                any::<bool>(),
            )
                .prop_map(move |(e, w, a, t, zero)| (n, e, w, a, t, zero))
        })
        .prop_filter("small nonzero target", |(_, _, _, a, _, _)| {
            let s: i64 = a.iter().sum();
            s > 0 && s <= 6
        })
        .prop_map(|(n, e, w, a, t, zero)| {
            let g = FramedGraph::new(n, e, w).unwrap();
            let alpha = DimensionVector(a);
            let theta = if zero { vec![Rat::zero(); n + 1] } else { orthogonal(&t, &alpha) };
            (g, alpha, theta)
        })
}

/// Adjusts one coordinate of `t` so that it vanishes on `alpha`.
fn orthogonal(t: &[i64], alpha: &DimensionVector) -> Vec<Rat> {
    let mut theta: Vec<Rat> = t.iter().map(|&x| Rat::from_integer(x.into())).collect();
    let k = alpha.0.iter().position(|&a| a != 0).unwrap();
    theta[k] = Rat::zero();
    let rest = theta_of(&theta, alpha);
    theta[k] = -rest / Rat::from_integer(alpha.0[k].into());
    theta
}

/// Every ordered sequence of nonzero box vectors summing to `target`, each a θ-root,
/// collapsed to sorted multisets.
fn brute_force_decompositions(g: &FramedGraph, alpha: &DimensionVector, theta: &[Rat]) -> BTreeSet<Vec<DimensionVector>> {
    fn rec(
        g: &FramedGraph,
        theta: &[Rat],
        rest: &DimensionVector,
        cur: &mut Vec<DimensionVector>,
        out: &mut BTreeSet<Vec<DimensionVector>>,
    ) {
        if rest.is_zero() {
            let mut parts = cur.clone();
            parts.sort_by(|a, b| b.cmp(a));
            out.insert(parts);
            return;
        }
        for b in box_below(rest) {
            if theta_of(theta, &b).is_zero() && g.classify_root(&b).unwrap().is_root() {
                cur.push(b.clone());
                rec(g, theta, &rest.sub(&b), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    if theta_of(theta, alpha).is_zero() && g.classify_root(alpha).unwrap().is_root() {
        rec(g, theta, alpha, &mut Vec::new(), &mut out);
    }
    out
}

fn p_sum(g: &FramedGraph, parts: &[DimensionVector]) -> i64 {
    parts.iter().map(|b| g.p_value(b).unwrap()).sum()
}

fn connected_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=7).prop_flat_map(|n| {
        let tree: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        (Just(n), tree, proptest::collection::vec((0..n, 0..n), 0..=6)).prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            (n, edges)
        })
    })
}

fn bfs_connected(n: usize, edges: &[(usize, usize)], set: &BTreeSet<usize>) -> bool {
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == u { b } else if b == u { a } else { continue };
            if other < n && set.contains(&other) && seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen.len() == set.len()
}

proptest! {
    #![proptest_config(config(64, 0x7369_676d))]

    #[test]
    fn decompositions_match_ordered_compositions((g, alpha, theta) in problem()) {
        let got = decompositions(&g, &alpha, &theta, CAP).unwrap();
        for d in &got {
            prop_assert!(d.parts.windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(d.total().unwrap(), alpha.clone());
        }
        if let Some(first) = got.first() {
            prop_assert_eq!(&first.parts, &vec![alpha.clone()]);
        }
        let set: BTreeSet<Vec<DimensionVector>> = got.iter().map(|d| d.parts.clone()).collect();
        prop_assert_eq!(set.len(), got.len());
        prop_assert_eq!(set, brute_force_decompositions(&g, &alpha, &theta));
    }

    #[test]
    fn sigma_membership_matches_decomposition_scan((g, alpha, theta) in problem()) {
        let all = brute_force_decompositions(&g, &alpha, &theta);
        let verdict = in_sigma_theta(&g, &alpha, &theta, CAP).unwrap();
        if all.is_empty() {
            prop_assert_eq!(verdict, SigmaVerdict::NotThetaRoot);
        } else {
            let pa = g.p_value(&alpha).unwrap();
            let member = all.iter().filter(|d| d.len() > 1).all(|d| p_sum(&g, d) < pa);
            prop_assert_eq!(verdict.is_member(), member);
            if let SigmaVerdict::Violated { witness, p_alpha, p_sum: s } = verdict {
                prop_assert!(witness.is_proper());
                prop_assert!(all.contains(&witness.parts));
                prop_assert_eq!(p_alpha, pa);
                prop_assert!(s >= pa);
            }
        }
    }

    #[test]
    fn sigma_members_have_connected_decomposition_quivers((g, alpha, _t) in problem()) {
        let zero = vec![Rat::zero(); g.framed_size()];
        if in_sigma_theta(&g, &alpha, &zero, CAP).unwrap().is_member() {
            for d in decompositions(&g, &alpha, &zero, CAP).unwrap() {
                prop_assert!(DecompositionQuiver::new(&g, &d).is_connected(), "{:?}", d.parts);
            }
        }
    }

    #[test]
    fn bipartitions_span_the_lattice((n, edges) in connected_graph()) {
        let subsets = connected_bipartitions(n, &edges).unwrap();
        let full: BTreeSet<usize> = (0..n).collect();
        prop_assert!(subsets.iter().any(|s| s.len() == n));
        for s in &subsets {
            let j: BTreeSet<usize> = s.iter().copied().collect();
            let c: BTreeSet<usize> = full.difference(&j).copied().collect();
            prop_assert!(bfs_connected(n, &edges, &j) && bfs_connected(n, &edges, &c));
        }
        let rows: Vec<Vec<Int>> = subsets
            .iter()
            .map(|s| (0..n).map(|i| if s.contains(&i) { Int::one() } else { Int::zero() }).collect())
            .collect();
        let hnf = hermite_rows(&rows);
        prop_assert_eq!(hnf.len(), n);
        for (i, r) in hnf.iter().enumerate() {
            prop_assert!(r[i].is_one());
        }
    }
}

#[test]
fn sigma_zero_fixtures_have_connected_quivers() {
    for (name, ..) in quiver_fixtures() {
        let (g, v) = graph(name);
        let alpha = DimensionVector::framed(&v);
        let zero = q(&vec![0; alpha.len()]);
        if !in_sigma_theta(&g, &alpha, &zero, CAP).unwrap().is_member() {
            continue;
        }
        for d in decompositions(&g, &alpha, &zero, CAP).unwrap() {
            assert!(DecompositionQuiver::new(&g, &d).is_connected(), "{name}: {:?}", d.parts);
        }
    }
}

#[test]
fn jordan_witnesses_reach_equality() {
    let expect = [("jordan-n1", vec![vec![1, 0], vec![0, 1]]), ("jordan-n2", vec![vec![1, 1], vec![0, 1]])];
    for (name, parts) in expect {
        let (g, v) = graph(name);
        let alpha = DimensionVector::framed(&v);
        match in_sigma_theta(&g, &alpha, &q(&[0, 0]), CAP).unwrap() {
            SigmaVerdict::Violated { witness, p_alpha, p_sum } => {
                let want: Vec<DimensionVector> = parts.into_iter().map(DimensionVector).collect();
                assert_eq!(witness.parts, want);
                assert_eq!(p_alpha, p_sum);
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn path_and_triangle_bipartitions() {
    assert_eq!(
        connected_bipartitions(3, &[(0, 1), (1, 2)]).unwrap(),
        vec![vec![0], vec![0, 1], vec![2], vec![1, 2], vec![0, 1, 2]]
    );
    assert_eq!(connected_bipartitions(3, &[(0, 1), (1, 2), (0, 2)]).unwrap().len(), 7);
    assert_eq!(connected_bipartitions(1, &[]).unwrap(), vec![vec![0]]);
}
