//! Framed graphs, their symmetric Cartan pairing, and positive-root classification.
//!
//! Vertices of the framed graph are ordered `∞, 0, 1, ..., r`; every vector indexed by
//! the framed vertex set uses that order, so position `0` is always `∞`.

use std::fmt;

use rayon::prelude::*;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("edge ({0}, {1}) refers to a vertex outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("framing has {got} entries for {expected} vertices")]
    FramingLength { expected: usize, got: usize },
    #[error("framing entries must be nonnegative")]
    NegativeFraming,
    #[error("vector has {got} entries, framed graph has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("the zero vector is not a root candidate")]
    ZeroVector,
    #[error("reflection algorithm made no progress after {0} steps")]
    NonTermination(usize),
}

/// An undirected multigraph on vertices `0..r` (loops allowed) with a framing vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    framing: Vec<i64>,
    cartan: Vec<Vec<i64>>,
}

impl FramedGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, framing: Vec<i64>) -> Result<Self, RootError> {
        if framing.len() != vertices {
            return Err(RootError::FramingLength {
                expected: vertices,
                got: framing.len(),
            });
        }
        if framing.iter().any(|&w| w < 0) {
            return Err(RootError::NegativeFraming);
        }
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(RootError::EdgeOutOfRange(a, b, vertices));
            }
        }
        let n = vertices + 1;
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 1..n {
            cartan[i][i] = 2;
        }
        cartan[0][0] = 2;
        for &(a, b) in &edges {
            let (i, j) = (a + 1, b + 1);
            if i == j {
                cartan[i][i] -= 2;
            } else {
                cartan[i][j] -= 1;
                cartan[j][i] -= 1;
            }
        }
        for (k, &w) in framing.iter().enumerate() {
            cartan[0][k + 1] -= w;
            cartan[k + 1][0] -= w;
        }
        Ok(FramedGraph {
            vertices,
            edges,
            framing,
            cartan,
        })
    }

    /// Number of unframed vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Size of the framed vertex set `{∞} ∪ V`.
    pub fn framed_size(&self) -> usize {
        self.vertices + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn framing(&self) -> &[i64] {
        &self.framing
    }

    /// Symmetric pairing matrix on the framed vertex set.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Number of loops at framed vertex `i` (`∞` has none).
    pub fn loops_at(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.edges.iter().filter(|&&(a, b)| a == b && a + 1 == i).count()
    }

    pub fn is_loop_free(&self, i: usize) -> bool {
        self.loops_at(i) == 0
    }

    /// Framed vertices `i != j` are adjacent.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// The framed graph is connected.
    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.framed_size()).collect();
        self.is_connected_on(&all)
    }

    /// The full subgraph on `support` is connected (the empty set counts as connected).
    pub fn is_connected_on(&self, support: &[usize]) -> bool {
        let Some(&start) = support.first() else {
            return true;
        };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in support {
                if !seen.contains(&v) && self.adjacent(u, v) {
                    seen.push(v);
                    stack.push(v);
                }
            }
        }
        seen.len() == support.len()
    }

    fn check(&self, v: &DimensionVector) -> Result<(), RootError> {
        if v.len() != self.framed_size() {
            return Err(RootError::IndexMismatch {
                expected: self.framed_size(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `(β, γ)` for the symmetric pairing.
    pub fn cartan(&self, beta: &DimensionVector, gamma: &DimensionVector) -> Result<i64, RootError> {
        self.check(beta)?;
        self.check(gamma)?;
        Ok(self.pair(beta, gamma))
    }

    pub(crate) fn pair(&self, beta: &DimensionVector, gamma: &DimensionVector) -> i64 {
        let mut s = 0;
        for (i, &b) in beta.0.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (j, &g) in gamma.0.iter().enumerate() {
                s += b * self.cartan[i][j] * g;
            }
        }
        s
    }

    /// `(γ, e_i)`.
    pub(crate) fn pair_simple(&self, gamma: &DimensionVector, i: usize) -> i64 {
        gamma.0.iter().zip(&self.cartan[i]).map(|(g, c)| g * c).sum()
    }

    /// `p(γ) = 1 - (γ, γ)/2`. The pairing has even diagonal, so this is an integer.
    pub fn p_value(&self, gamma: &DimensionVector) -> Result<i64, RootError> {
        self.check(gamma)?;
        Ok(self.p(gamma))
    }

    pub(crate) fn p(&self, gamma: &DimensionVector) -> i64 {
        1 - self.pair(gamma, gamma) / 2
    }

    /// Simple reflection `s_i γ = γ - (γ, e_i) e_i` at a loop-free framed vertex.
    pub fn reflect(&self, gamma: &DimensionVector, i: usize) -> DimensionVector {
        let c = self.pair_simple(gamma, i);
        let mut out = gamma.clone();
        out.0[i] -= c;
        out
    }

    pub fn classify_root(&self, gamma: &DimensionVector) -> Result<RootClass, RootError> {
        self.check(gamma)?;
        classify(self, gamma)
    }

    /// All roots `0 < β <= α`, in lexicographic order.
    pub fn roots_below(&self, alpha: &DimensionVector) -> Result<Vec<(DimensionVector, RootClass)>, RootError> {
        self.check(alpha)?;
        let boxes: Vec<DimensionVector> = box_below(alpha).collect();
        let classes: Result<Vec<_>, _> = boxes
            .into_par_iter()
            .map(|b| classify(self, &b).map(|c| (b, c)))
            .collect();
        Ok(classes?
            .into_iter()
            .filter(|(_, c)| *c != RootClass::NotRoot)
            .collect())
    }
}

/// Nonzero vectors `0 <= β <= α` in lexicographic order.
pub fn box_below(alpha: &DimensionVector) -> impl Iterator<Item = DimensionVector> + '_ {
    let n = alpha.len();
    let mut cur = vec![0i64; n];
    let mut done = alpha.0.iter().any(|&a| a < 0);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        // advance like an odometer, last coordinate fastest
        let Some(k) = (0..n).rev().find(|&k| cur[k] < alpha.0[k]) else {
            done = true;
            return None;
        };
        cur[k] += 1;
        for c in cur.iter_mut().skip(k + 1) {
            *c = 0;
        }
        Some(DimensionVector(cur.clone()))
    })
}

fn classify(fg: &FramedGraph, gamma: &DimensionVector) -> Result<RootClass, RootError> {
    if gamma.is_zero() {
        return Err(RootError::ZeroVector);
    }
    let has_pos = gamma.0.iter().any(|&x| x > 0);
    let has_neg = gamma.0.iter().any(|&x| x < 0);
    if has_pos && has_neg {
        return Ok(RootClass::NotRoot);
    }
    let mut g = if has_neg { gamma.negated() } else { gamma.clone() };
    let cap = 1_000_000usize;
    for _ in 0..cap {
        if g.0.iter().any(|&x| x < 0) {
            return Ok(RootClass::NotRoot);
        }
        let support = g.support();
        if support.len() == 1 {
            let i = support[0];
            return Ok(if !fg.is_loop_free(i) {
                RootClass::Imaginary
            } else if g.0[i] == 1 {
                RootClass::Real
            } else {
                RootClass::NotRoot
            });
        }
        let step = (0..g.len()).find(|&i| fg.is_loop_free(i) && fg.pair_simple(&g, i) > 0);
        match step {
            // strictly decreases the coordinate sum, which is bounded below
            Some(i) => g = fg.reflect(&g, i),
            None => {
                return Ok(if fg.is_connected_on(&support) {
                    RootClass::Imaginary
                } else {
                    RootClass::NotRoot
                });
            }
        }
    }
    Err(RootError::NonTermination(cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootClass {
    NotRoot,
    Real,
    Imaginary,
}

impl RootClass {
    pub fn is_root(self) -> bool {
        self != RootClass::NotRoot
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootClass::NotRoot => "not-root",
            RootClass::Real => "real",
            RootClass::Imaginary => "imaginary",
        }
    }
}

/// An integer vector on the framed vertex set `∞, 0, ..., r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimensionVector(pub Vec<i64>);

impl DimensionVector {
    /// `α = (1, v)`.
    pub fn framed(v: &[i64]) -> Self {
        let mut a = vec![1];
        a.extend_from_slice(v);
        DimensionVector(a)
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        DimensionVector(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn negated(&self) -> Self {
        DimensionVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        DimensionVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        DimensionVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self) -> i64 {
        self.0
            .iter()
            .fold(0i64, |g, &x| num_integer::gcd(g, x))
    }

    pub fn to_int(&self) -> Vec<crate::exactgeom::Int> {
        self.0.iter().map(|&x| x.into()).collect()
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
