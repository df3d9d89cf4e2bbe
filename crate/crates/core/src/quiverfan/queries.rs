use num_traits::Zero;

use super::{FanError, GitFan, Region};
use crate::exactgeom::matrix::rank;
use crate::exactgeom::num::{canonical_line, dot_rat, sign_of_rat};
use crate::exactgeom::{Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallType {
    Flipping,
    Divisorial,
}

impl WallType {
    pub fn as_str(self) -> &'static str {
        match self {
            WallType::Flipping => "flipping",
            WallType::Divisorial => "divisorial",
        }
    }
}

/// A wall of a chamber is divisorial exactly when its hyperplane belongs to the
/// codimension-two sub-arrangement.
pub fn classify_wall(fan: &GitFan, chamber: usize, facet: &[Int]) -> Result<WallType, FanError> {
    let ch = fan.chambers.get(chamber).ok_or(FanError::OutOfRange(chamber))?;
    let key = canonical_line(facet);
    if !ch.closure.facets().iter().any(|f| canonical_line(f) == key) {
        return Err(FanError::NotAFacet);
    }
    if fan.arrangement.labels(&key).is_none() {
        return Err(FanError::NotOnArrangement);
    }
    Ok(if fan.is_codim2_hyperplane(&key) {
        WallType::Divisorial
    } else {
        WallType::Flipping
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeQuery {
    /// Closed sign pattern of θ against every hyperplane.
    pub signs: Vec<i8>,
    pub other_signs: Vec<i8>,
    /// θ and θ' lie in the relative interior of the same GIT cone.
    pub same_model: bool,
    /// Dimension of the smallest GIT cone containing θ.
    pub picard_rank: usize,
    /// Every region whose closure contains θ.
    pub regions: Vec<usize>,
}

pub fn cone_queries(fan: &GitFan, regions: &[Region], theta: &[Rat], other: &[Rat]) -> Result<ConeQuery, FanError> {
    let c = fan.space.coords(theta)?;
    let c2 = fan.space.coords(other)?;
    let normals = fan.normals();
    let pattern = |x: &[Rat]| -> Vec<i8> { normals.iter().map(|n| sign_of_rat(&dot_rat(n, x))).collect() };
    let signs = pattern(&c);
    let other_signs = pattern(&c2);
    let tight: Vec<Vec<Int>> = normals
        .iter()
        .filter(|n| dot_rat(n, &c).is_zero())
        .cloned()
        .collect();
    let picard_rank = fan.space.dim() - rank(&tight);
    let containing = regions
        .iter()
        .enumerate()
        .filter(|(_, r)| r.cone.contains_rat(&c))
        .map(|(k, _)| k)
        .collect();
    Ok(ConeQuery {
        same_model: signs == other_signs,
        signs,
        other_signs,
        picard_rank,
        regions: containing,
    })
}
