#![allow(dead_code)]

use gitfan::exactgeom::lp::feasible_point;
use gitfan::exactgeom::num::ints;
use gitfan::exactgeom::{Int, IntMatrix, Rat};
use num_traits::{One, Zero};
use gitfan::quiverfan::{git_fan, FanOptions, GitFan};
use gitfan::roots::FramedGraph;
use gitfan::toric::ToricGitProblem;
use proptest::test_runner::{Config, RngSeed};

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn q(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Quiver fixtures: name, vertex count, edges, framing, v.
pub type QuiverFixture = (&'static str, usize, Vec<(usize, usize)>, Vec<i64>, Vec<i64>);

pub fn quiver_fixtures() -> Vec<QuiverFixture> {
    vec![
        ("a1-frame2", 1, vec![], vec![2], vec![1]),
        ("a2-mckay", 2, vec![(0, 1)], vec![1, 1], vec![1, 1]),
        ("a3-mckay", 3, vec![(0, 1), (1, 2)], vec![1, 0, 1], vec![1, 1, 1]),
        ("tp2-frame3", 1, vec![], vec![3], vec![1]),
        ("jordan-n1", 1, vec![(0, 0)], vec![1], vec![1]),
        ("jordan-n2", 1, vec![(0, 0)], vec![1], vec![2]),
        ("affine-a1-w1", 2, vec![(0, 1), (0, 1)], vec![1, 0], vec![1, 1]),
    ]
}

pub fn graph(name: &str) -> (FramedGraph, Vec<i64>) {
    let (_, n, e, w, v) = quiver_fixtures()
        .into_iter()
        .find(|f| f.0 == name)
        .expect("known fixture");
    (FramedGraph::new(n, e, w).unwrap(), v)
}

pub fn fan(name: &str) -> GitFan {
    let (g, v) = graph(name);
    git_fan(&g, &v, &FanOptions::default()).unwrap()
}

pub fn conifold() -> ToricGitProblem {
    ToricGitProblem::new(
        &IntMatrix::from_i64(&[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]),
        &IntMatrix::from_i64(&[&[1, 1, -1, -1]]),
        &[],
    )
    .unwrap()
}

pub fn f1_cox() -> ToricGitProblem {
    ToricGitProblem::new(
        &IntMatrix::identity(4),
        &IntMatrix::from_i64(&[&[1, -1, 1, 0], &[0, 1, 0, 1]]),
        &[],
    )
    .unwrap()
}

pub fn sum_zero_constraint(n: usize) -> Vec<Vec<Int>> {
    vec![ints(&vec![1; n])]
}

/// `target ∈ cone(gens)`, decided by an LP over the coefficients.
pub fn in_conic_hull(gens: &[Vec<Int>], target: &[Int]) -> bool {
    let k = gens.len();
    let mut ineqs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..=k {
        let mut row = vec![Int::zero(); k + 1];
        row[i] = Int::one();
        ineqs.push(row);
        rhs.push(if i == k { Int::one() } else { Int::zero() });
    }
    let eqs: Vec<Vec<Int>> = (0..target.len())
        .map(|c| {
            let mut row: Vec<Int> = gens.iter().map(|g| g[c].clone()).collect();
            row.push(-target[c].clone());
            row
        })
        .collect();
    feasible_point(&ineqs, &rhs, &eqs).is_some()
}
