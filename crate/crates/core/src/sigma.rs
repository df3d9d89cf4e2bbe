//! Decompositions into θ-roots, the strict p-inequality defining Σ_θ, decomposition
//! quivers and connected bipartitions.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactgeom::smith::smith_diagonal;
use crate::exactgeom::{IntMatrix, Rat};
use crate::roots::{DimensionVector, FramedGraph, RootError};

pub const DEFAULT_DECOMPOSITION_CAP: usize = 1_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SigmaError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("θ has {got} entries, expected {expected}")]
    ThetaLength { expected: usize, got: usize },
    #[error("decomposition search exceeded the cap of {0} nodes")]
    CapExceeded(usize),
    #[error("graph on {0} vertices is not connected")]
    Disconnected(usize),
    #[error("bipartition enumeration supports at most 20 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("connected bipartitions do not span the vertex lattice")]
    SpanningFailure,
}

/// A multiset of positive roots summing to a fixed vector, parts in non-increasing
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    pub parts: Vec<DimensionVector>,
}

impl Decomposition {
    pub fn is_proper(&self) -> bool {
        self.parts.len() > 1
    }

    pub fn p_sum(&self, fg: &FramedGraph) -> i64 {
        self.parts.iter().map(|b| fg.p(b)).sum()
    }

    pub fn total(&self) -> Option<DimensionVector> {
        let mut it = self.parts.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, b| acc.add(b)))
    }
}

pub fn theta_of(theta: &[Rat], gamma: &DimensionVector) -> Rat {
    theta
        .iter()
        .zip(&gamma.0)
        .fold(Rat::zero(), |acc, (t, &g)| acc + t * Rat::from_integer(g.into()))
}

fn check_theta(fg: &FramedGraph, theta: &[Rat]) -> Result<(), SigmaError> {
    if theta.len() != fg.framed_size() {
        return Err(SigmaError::ThetaLength {
            expected: fg.framed_size(),
            got: theta.len(),
        });
    }
    Ok(())
}

/// Positive roots `β <= α` with `θ(β) = 0`, in lexicographic order.
pub fn r_plus_theta(fg: &FramedGraph, alpha: &DimensionVector, theta: &[Rat]) -> Result<Vec<DimensionVector>, SigmaError> {
    check_theta(fg, theta)?;
    Ok(fg
        .roots_below(alpha)?
        .into_iter()
        .map(|(b, _)| b)
        .filter(|b| theta_of(theta, b).is_zero())
        .collect())
}

struct Search<'a> {
    fg: &'a FramedGraph,
    /// θ-roots in decreasing lexicographic order.
    roots: Vec<DimensionVector>,
    cap: usize,
    visited: AtomicUsize,
}

impl Search<'_> {
    fn tick(&self) -> Result<(), SigmaError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(SigmaError::CapExceeded(self.cap));
        }
        Ok(())
    }

    /// Appends every completion of `prefix` using parts with index `>= from`.
    fn collect(
        &self,
        rest: &DimensionVector,
        from: usize,
        prefix: &mut Vec<DimensionVector>,
        out: &mut Vec<Decomposition>,
    ) -> Result<(), SigmaError> {
        self.tick()?;
        if rest.is_zero() {
            out.push(Decomposition {
                parts: prefix.clone(),
            });
            return Ok(());
        }
        for k in from..self.roots.len() {
            let b = &self.roots[k];
            if b.le(rest) {
                prefix.push(b.clone());
                self.collect(&rest.sub(b), k, prefix, out)?;
                prefix.pop();
            }
        }
        Ok(())
    }

    /// Largest `Σ p` over decompositions of `gamma` into θ-roots, if any exists.
    fn best(&self, gamma: &DimensionVector, memo: &mut HashMap<DimensionVector, Option<i64>>) -> Option<i64> {
        if let Some(v) = memo.get(gamma) {
            return *v;
        }
        let mut best: Option<i64> = None;
        for b in &self.roots {
            if !b.le(gamma) {
                continue;
            }
            let rest = gamma.sub(b);
            let cand = if rest.is_zero() {
                Some(self.fg.p(b))
            } else {
                self.best(&rest, memo).map(|v| v + self.fg.p(b))
            };
            best = best.max(cand);
        }
        memo.insert(gamma.clone(), best);
        best
    }

    /// First proper decomposition in canonical order with `Σ p >= target`.
    fn first_violation(
        &self,
        rest: &DimensionVector,
        from: usize,
        prefix: &mut Vec<DimensionVector>,
        acc: i64,
        target: i64,
        memo: &mut HashMap<DimensionVector, Option<i64>>,
    ) -> Result<Option<Decomposition>, SigmaError> {
        self.tick()?;
        if rest.is_zero() {
            return Ok((prefix.len() > 1 && acc >= target).then(|| Decomposition {
                parts: prefix.clone(),
            }));
        }
        match self.best(rest, memo) {
            Some(b) if acc + b >= target => {}
            _ => return Ok(None),
        }
        for k in from..self.roots.len() {
            let b = &self.roots[k];
            if !b.le(rest) || (prefix.is_empty() && b == rest) {
                continue;
            }
            prefix.push(b.clone());
            let found = self.first_violation(&rest.sub(b), k, prefix, acc + self.fg.p(b), target, memo)?;
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn search<'a>(fg: &'a FramedGraph, alpha: &DimensionVector, theta: &[Rat], cap: usize) -> Result<Search<'a>, SigmaError> {
    let mut roots = r_plus_theta(fg, alpha, theta)?;
    roots.reverse();
    Ok(Search {
        fg,
        roots,
        cap,
        visited: AtomicUsize::new(0),
    })
}

/// All decompositions of `α` into θ-roots including the one-part decomposition, in
/// canonical order (parts non-increasing, earlier first parts larger). Empty when `α`
/// is not itself a θ-root.
pub fn decompositions(
    fg: &FramedGraph,
    alpha: &DimensionVector,
    theta: &[Rat],
    cap: usize,
) -> Result<Vec<Decomposition>, SigmaError> {
    let s = search(fg, alpha, theta, cap)?;
    if !s.roots.contains(alpha) {
        return Ok(Vec::new());
    }
    let per_first: Result<Vec<Vec<Decomposition>>, SigmaError> = (0..s.roots.len())
        .into_par_iter()
        .map(|k| {
            let mut out = Vec::new();
            let b = &s.roots[k];
            if b.le(alpha) {
                let mut prefix = vec![b.clone()];
                s.collect(&alpha.sub(b), k, &mut prefix, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    Ok(per_first?.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaVerdict {
    Member,
    NotThetaRoot,
    /// A proper decomposition with `Σ p(β) >= p(α)`.
    Violated {
        witness: Decomposition,
        p_alpha: i64,
        p_sum: i64,
    },
}

impl SigmaVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, SigmaVerdict::Member)
    }
}

/// Decides `α ∈ Σ_θ`. A failing verdict carries the first violating decomposition in
/// canonical order.
pub fn in_sigma_theta(
    fg: &FramedGraph,
    alpha: &DimensionVector,
    theta: &[Rat],
    cap: usize,
) -> Result<SigmaVerdict, SigmaError> {
    let s = search(fg, alpha, theta, cap)?;
    if !s.roots.contains(alpha) {
        return Ok(SigmaVerdict::NotThetaRoot);
    }
    let target = fg.p(alpha);
    let mut memo = HashMap::new();
    let found = s.first_violation(alpha, 0, &mut Vec::new(), 0, target, &mut memo)?;
    Ok(match found {
        None => SigmaVerdict::Member,
        Some(witness) => {
            let p_sum = witness.p_sum(fg);
            SigmaVerdict::Violated {
                witness,
                p_alpha: target,
                p_sum,
            }
        }
    })
}

/// The graph on the parts of a decomposition with `max(0, -(β_i, β_j))` edges between
/// distinct parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionQuiver {
    pub parts: Vec<DimensionVector>,
    pub multiplicity: Vec<Vec<i64>>,
}

impl DecompositionQuiver {
    pub fn new(fg: &FramedGraph, d: &Decomposition) -> Self {
        let k = d.parts.len();
        let mut multiplicity = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    multiplicity[i][j] = (-fg.pair(&d.parts[i], &d.parts[j])).max(0);
                }
            }
        }
        DecompositionQuiver {
            parts: d.parts.clone(),
            multiplicity,
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.parts.len();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.multiplicity[i][j] > 0)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        is_connected_subset(self.parts.len(), &self.edges(), (1u32 << self.parts.len()) - 1)
    }
}

fn is_connected_subset(n: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && y < n && mask >> y & 1 == 1 && seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
    }
    seen == mask
}

/// All nonempty vertex subsets `J` with `J` and its complement connected, as sorted
/// index lists ordered by their indicator bitmask. Checks that the indicator vectors
/// span `Z^n`.
pub fn connected_bipartitions(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, SigmaError> {
    if n > 20 {
        return Err(SigmaError::TooManyVertices(n));
    }
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    if !is_connected_subset(n, edges, full) {
        return Err(SigmaError::Disconnected(n));
    }
    let subsets: Vec<Vec<usize>> = (1..=full)
        .filter(|&m| is_connected_subset(n, edges, m) && is_connected_subset(n, edges, full & !m))
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    let rows: Vec<Vec<crate::exactgeom::Int>> = subsets
        .iter()
        .map(|s| {
            (0..n)
                .map(|i| {
                    if s.contains(&i) {
                        crate::exactgeom::Int::one()
                    } else {
                        crate::exactgeom::Int::zero()
                    }
                })
                .collect()
        })
        .collect();
    let d = smith_diagonal(&IntMatrix::from_rows(rows));
    if d.len() != n || !d.iter().all(One::is_one) {
        return Err(SigmaError::SpanningFailure);
    }
    Ok(subsets)
}
