//! GIT fans of framed quiver varieties computed from root combinatorics: the
//! arrangement of hyperplanes `β^⊥` in the stability space, its chambers, the
//! codimension-two sub-arrangement and its regions, the reflection group acting on
//! regions, wall types and crepant-resolution counts.

mod queries;
mod regions;

pub use queries::{classify_wall, cone_queries, ConeQuery, WallType};
pub use regions::{
    boundary_reflection, count_crepant_resolutions, namikawa_weyl, regions, CrepantCount, Reflection,
    ReflectionGroup, Region, DEFAULT_GROUP_CAP,
};

use num_traits::Zero;

use crate::exactgeom::num::{canonical_line, dot_rat, sign_of_rat};
use crate::exactgeom::{Arrangement, ArrangementError, Chamber, Int, Rat, Subspace};
use crate::roots::{DimensionVector, FramedGraph, RootError};
use crate::sigma::{in_sigma_theta, SigmaError, SigmaVerdict, DEFAULT_DECOMPOSITION_CAP};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("malformed quiver data: {0}")]
    Malformed(String),
    #[error("{0} is not a positive root")]
    NotARoot(DimensionVector),
    #[error("θ has {got} entries, expected {expected}")]
    ThetaLength { expected: usize, got: usize },
    #[error("θ(α) = {0}, but stability parameters must satisfy θ(α) = 0")]
    ThetaNotInSpace(String),
    #[error("{0} is not a valid codimension-two root for this α")]
    InvalidCodim2Root(DimensionVector),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("vector is not a facet normal of the given cone")]
    NotAFacet,
    #[error("facet does not lie on a hyperplane of the arrangement")]
    NotOnArrangement,
    #[error("region {0} is not simplicial")]
    NonSimplicialRegion(usize),
    #[error("no integral reflection exists across this wall")]
    NoIntegralReflection,
}

#[derive(Clone, Debug)]
pub struct FanOptions {
    pub decomposition_cap: usize,
    /// Replaces the `(β, α - β) = -2` criterion with an explicit root list.
    pub codim2_roots: Option<Vec<DimensionVector>>,
}

impl Default for FanOptions {
    fn default() -> Self {
        FanOptions {
            decomposition_cap: DEFAULT_DECOMPOSITION_CAP,
            codim2_roots: None,
        }
    }
}

/// `Θ = {θ : θ(α) = 0}` with a lattice basis. When `α_∞ = 1` the coordinates are
/// `θ_0, ..., θ_r` and `θ_∞` is determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilitySpace {
    alpha: DimensionVector,
    subspace: Subspace,
}

impl StabilitySpace {
    pub fn new(alpha: &DimensionVector) -> Self {
        let subspace = Subspace::kernel_of(alpha.len(), &[alpha.to_int()]);
        StabilitySpace {
            alpha: alpha.clone(),
            subspace,
        }
    }

    pub fn alpha(&self) -> &DimensionVector {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Θ-coordinates of an ambient stability parameter.
    pub fn coords(&self, theta: &[Rat]) -> Result<Vec<Rat>, FanError> {
        if theta.len() != self.alpha.len() {
            return Err(FanError::ThetaLength {
                expected: self.alpha.len(),
                got: theta.len(),
            });
        }
        let value = crate::sigma::theta_of(theta, &self.alpha);
        if !value.is_zero() {
            return Err(FanError::ThetaNotInSpace(crate::exactgeom::num::fmt_rat(&value)));
        }
        Ok(self
            .subspace
            .coords_of(theta)
            .expect("θ(α) = 0 places θ in the subspace"))
    }

    pub fn to_ambient(&self, coords: &[Int]) -> Vec<Int> {
        self.subspace.to_ambient(coords)
    }

    /// The functional `θ ↦ θ(β)` in Θ-coordinates.
    pub fn functional(&self, beta: &DimensionVector) -> Vec<Int> {
        self.subspace.restrict(&beta.to_int())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    /// `α` is a positive root; every θ in Θ is then effective.
    pub effective: bool,
    pub sigma0: SigmaVerdict,
    pub indivisible: bool,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.effective && self.sigma0.is_member() && self.indivisible
    }
}

fn validate_input(fg: &FramedGraph, v: &[i64]) -> Result<DimensionVector, FanError> {
    if v.len() != fg.vertex_count() {
        return Err(FanError::Malformed(format!(
            "v has {} entries for {} vertices",
            v.len(),
            fg.vertex_count()
        )));
    }
    if fg.framing().iter().all(|&w| w == 0) {
        return Err(FanError::Malformed("framing vector is zero".into()));
    }
    if v.iter().any(|&x| x < 1) {
        return Err(FanError::Malformed("every entry of v must be at least 1".into()));
    }
    if !fg.is_connected() {
        return Err(FanError::Malformed("framed graph is not connected".into()));
    }
    Ok(DimensionVector::framed(v))
}

pub fn check_hypotheses(fg: &FramedGraph, v: &[i64], cap: usize) -> Result<HypothesisReport, FanError> {
    let alpha = validate_input(fg, v)?;
    let effective = fg.classify_root(&alpha)?.is_root();
    let zero = vec![Rat::zero(); alpha.len()];
    let sigma0 = in_sigma_theta(fg, &alpha, &zero, cap)?;
    Ok(HypothesisReport {
        effective,
        sigma0,
        indivisible: alpha.gcd() == 1,
    })
}

/// Hyperplanes `β^⊥ ∩ Θ` over all splittings `α = β + (α - β)` into positive roots,
/// keyed by their primitive normal in Θ-coordinates and labelled by every such `β`.
pub fn arrangement_a_alpha(
    fg: &FramedGraph,
    alpha: &DimensionVector,
) -> Result<(StabilitySpace, Arrangement<DimensionVector>), FanError> {
    if !fg.classify_root(alpha)?.is_root() {
        return Err(FanError::NotARoot(alpha.clone()));
    }
    let space = StabilitySpace::new(alpha);
    let mut arr = Arrangement::new(space.dim());
    for (beta, _) in fg.roots_below(alpha)? {
        if beta == *alpha {
            continue;
        }
        if fg.classify_root(&alpha.sub(&beta))?.is_root() {
            arr.insert(&space.functional(&beta), beta)?;
        }
    }
    Ok((space, arr))
}

/// Roots `β` with `α - β` a positive root and `(β, α - β) = -2`.
pub fn codim2_roots(fg: &FramedGraph, alpha: &DimensionVector) -> Result<Vec<DimensionVector>, FanError> {
    let mut out = Vec::new();
    for (beta, _) in fg.roots_below(alpha)? {
        if beta == *alpha {
            continue;
        }
        let rest = alpha.sub(&beta);
        if fg.classify_root(&rest)?.is_root() && fg.pair(&beta, &rest) == -2 {
            out.push(beta);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GitFan {
    pub graph: FramedGraph,
    pub alpha: DimensionVector,
    pub space: StabilitySpace,
    pub hypotheses: HypothesisReport,
    pub arrangement: Arrangement<DimensionVector>,
    pub chambers: Vec<Chamber>,
    pub codim2_roots: Vec<DimensionVector>,
    /// Canonical normals of the codimension-two sub-arrangement, sorted.
    pub codim2_normals: Vec<Vec<Int>>,
}

pub fn git_fan(fg: &FramedGraph, v: &[i64], options: &FanOptions) -> Result<GitFan, FanError> {
    let hypotheses = check_hypotheses(fg, v, options.decomposition_cap)?;
    let alpha = DimensionVector::framed(v);
    let (space, arrangement) = arrangement_a_alpha(fg, &alpha)?;
    let codim2 = match &options.codim2_roots {
        None => codim2_roots(fg, &alpha)?,
        Some(list) => {
            for beta in list {
                let ok = beta.len() == alpha.len()
                    && !beta.is_zero()
                    && beta != &alpha
                    && beta.le(&alpha)
                    && fg.classify_root(beta)?.is_root()
                    && fg.classify_root(&alpha.sub(beta))?.is_root();
                if !ok {
                    return Err(FanError::InvalidCodim2Root(beta.clone()));
                }
            }
            let mut l = list.clone();
            l.sort();
            l.dedup();
            l
        }
    };
    let mut codim2_normals: Vec<Vec<Int>> = codim2
        .iter()
        .map(|b| canonical_line(&space.functional(b)))
        .collect();
    codim2_normals.sort();
    codim2_normals.dedup();
    let chambers = arrangement.chambers();
    Ok(GitFan {
        graph: fg.clone(),
        alpha,
        space,
        hypotheses,
        arrangement,
        chambers,
        codim2_roots: codim2,
        codim2_normals,
    })
}

impl GitFan {
    /// `α ∈ Σ_0` and `α` indivisible, so the arrangement fan is the GIT fan.
    pub fn is_git_fan(&self) -> bool {
        self.hypotheses.holds()
    }

    pub fn interpretation(&self) -> &'static str {
        if self.is_git_fan() {
            "git-fan"
        } else {
            "combinatorial-only"
        }
    }

    pub fn normals(&self) -> Vec<Vec<Int>> {
        self.arrangement.normals()
    }

    pub fn is_codim2_hyperplane(&self, normal: &[Int]) -> bool {
        self.codim2_normals
            .binary_search(&canonical_line(normal))
            .is_ok()
    }

    /// θ avoids every hyperplane; equivalently the quiver variety at θ is smooth.
    pub fn is_generic(&self, theta: &[Rat]) -> Result<bool, FanError> {
        let c = self.space.coords(theta)?;
        Ok(self
            .arrangement
            .iter()
            .all(|(n, _)| sign_of_rat(&dot_rat(n, &c)) != 0))
    }
}
