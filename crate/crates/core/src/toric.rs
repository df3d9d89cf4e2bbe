//! Support-based GIT for a torus acting on an affine toric variety `Spec k[N]`, where
//! `N` is the semigroup generated by the columns of an integer matrix and the torus
//! acts through a linear weight map.
//!
//! A point whose support is the face `F` of the generator cone is θ-semistable iff
//! θ lies in the cone spanned by the weights of the generators on `F`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactgeom::arrangement::enumerate_chambers;
use crate::exactgeom::matrix::rank;
use crate::exactgeom::num::{canonical_line, dot, to_rat};
use crate::exactgeom::{Arrangement, Cone, ConeError, Face, Int, IntMatrix, Rat, Subspace};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ToricError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("weight matrix has {got} columns, generator matrix has {expected}")]
    ColumnMismatch { expected: usize, got: usize },
    #[error("weight of generator {0} violates the character-lattice constraint")]
    WeightOutsideLattice(usize),
    #[error("constraint has {got} entries, expected {expected}")]
    ConstraintLength { expected: usize, got: usize },
    #[error("weights are not a linear function of the generator exponents")]
    WeightsNotLinear,
    #[error("the cone spanned by the generators is not strongly convex")]
    NotStronglyConvex,
    #[error("θ has {got} entries, expected {expected}")]
    ThetaLength { expected: usize, got: usize },
    #[error("θ violates the character-lattice constraint")]
    ThetaOutsideLattice,
    #[error("θ is not effective: no face is semistable")]
    NotEffective,
    #[error("chamber {0} does not exist")]
    NoSuchChamber(usize),
    #[error("vector is not a facet normal of the chamber")]
    NotAFacet,
    #[error("no general point could be constructed on the wall")]
    DegenerateWall,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Debug)]
pub struct ToricGitProblem {
    generators: Vec<Vec<Int>>,
    weights: Vec<Vec<Int>>,
    space: Subspace,
    /// Weight of each generator in character-space coordinates.
    weight_coords: Vec<Vec<Int>>,
    cone: Cone,
    faces: Vec<Face>,
    /// `cone(wt(F))` for every face, in character-space coordinates.
    weight_cones: Vec<Cone>,
}

impl ToricGitProblem {
    /// `generators` is `k × n` (one column per semigroup generator), `weights` is
    /// `ρ × n`, and the character space is `{θ ∈ Q^ρ : c·θ = 0 for c in constraints}`.
    /// Every weight row must lie in the rational row space of `generators`.
    pub fn new(generators: &IntMatrix, weights: &IntMatrix, constraints: &[Vec<Int>]) -> Result<Self, ToricError> {
        if weights.cols() != generators.cols() {
            return Err(ToricError::ColumnMismatch {
                expected: generators.cols(),
                got: weights.cols(),
            });
        }
        let rho = weights.rows();
        if let Some(c) = constraints.iter().find(|c| c.len() != rho) {
            return Err(ToricError::ConstraintLength {
                expected: rho,
                got: c.len(),
            });
        }
        let mut stacked = generators.row_vecs();
        let base = rank(&stacked);
        stacked.extend(weights.row_vecs());
        if rank(&stacked) != base {
            return Err(ToricError::WeightsNotLinear);
        }
        let space = Subspace::kernel_of(rho, constraints);
        let weights: Vec<Vec<Int>> = weights.col_vecs();
        let weight_coords: Vec<Vec<Int>> = weights
            .iter()
            .enumerate()
            .map(|(j, w)| space.int_coords_of(w).ok_or(ToricError::WeightOutsideLattice(j)))
            .collect::<Result<_, _>>()?;
        let gens = generators.col_vecs();
        let cone = Cone::from_generators(generators.rows(), &gens)?;
        if !cone.is_strongly_convex() {
            return Err(ToricError::NotStronglyConvex);
        }
        let faces = cone.face_lattice(&gens)?;
        let d = space.dim();
        let weight_cones: Vec<Cone> = faces
            .par_iter()
            .map(|f| {
                let ws: Vec<Vec<Int>> = f.generators.iter().map(|&j| weight_coords[j].clone()).collect();
                Cone::from_generators(d, &ws).expect("weights live in the character space")
            })
            .collect();
        Ok(ToricGitProblem {
            generators: gens,
            weights,
            space,
            weight_coords,
            cone,
            faces,
            weight_cones,
        })
    }

    pub fn character_dim(&self) -> usize {
        self.space.dim()
    }

    pub fn character_space(&self) -> &Subspace {
        &self.space
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn weights(&self) -> &[Vec<Int>] {
        &self.weights
    }

    pub fn weight_coords(&self) -> &[Vec<Int>] {
        &self.weight_coords
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn weight_cone(&self, face: usize) -> &Cone {
        &self.weight_cones[face]
    }

    /// Character-space coordinates of an ambient character.
    pub fn coords(&self, theta: &[Rat]) -> Result<Vec<Rat>, ToricError> {
        if theta.len() != self.space.ambient_dim() {
            return Err(ToricError::ThetaLength {
                expected: self.space.ambient_dim(),
                got: theta.len(),
            });
        }
        self.space.coords_of(theta).ok_or(ToricError::ThetaOutsideLattice)
    }

    /// Indices of the faces semistable at θ (given in character-space coordinates).
    pub fn semistable_at(&self, theta: &[Rat]) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&k| self.weight_cones[k].contains_rat(theta))
            .collect()
    }

    /// Faces `F` with θ in the relative interior of `cone(wt(F))`: the supports of
    /// closed orbits in the semistable locus.
    pub fn polystable_at(&self, theta: &[Rat]) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&k| self.weight_cones[k].relative_interior_contains_rat(theta))
            .collect()
    }

    /// Dimension of the quotient stratum of points with support `F`.
    fn stratum_dim(&self, face: usize) -> usize {
        self.faces[face].dim() - self.weight_cones[face].dim()
    }

    fn face_index(&self, gens: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.generators == gens)
    }

    /// Subspaces that a general stability parameter must avoid: every facet hyperplane
    /// and the linear span of every weight cone.
    fn special_subspaces(&self) -> Vec<Vec<Vec<Int>>> {
        let mut out: Vec<Vec<Vec<Int>>> = Vec::new();
        for w in &self.weight_cones {
            for f in w.facets() {
                out.push(vec![f.clone()]);
            }
            if !w.equations().is_empty() {
                out.push(w.equations().to_vec());
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Faces semistable at an ambient character θ.
pub fn semistable_faces(p: &ToricGitProblem, theta: &[Rat]) -> Result<Vec<usize>, ToricError> {
    let c = p.coords(theta)?;
    let ss = p.semistable_at(&c);
    debug_assert!(ss.iter().all(|&k| {
        (0..p.faces.len())
            .filter(|&j| p.faces[k].generators.iter().all(|g| p.faces[j].generators.contains(g)))
            .all(|j| ss.contains(&j))
    }));
    Ok(ss)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricChamber {
    pub closure: Cone,
    pub interior: Vec<Int>,
    /// Faces semistable at every point of the chamber.
    pub semistable: Vec<usize>,
    /// Arrangement cells merged into this chamber.
    pub cells: usize,
}

#[derive(Clone, Debug)]
pub struct ToricFan {
    pub arrangement: Arrangement<usize>,
    pub chambers: Vec<ToricChamber>,
    /// Maximal cones among the face weight cones; their union is the effective locus.
    pub effective: Vec<Cone>,
}

impl ToricFan {
    /// The chamber whose generic semistable set matches.
    pub fn chamber_with(&self, semistable: &[usize]) -> Option<usize> {
        self.chambers.iter().position(|c| c.semistable == semistable)
    }

    pub fn is_effective(&self, theta: &[Rat]) -> bool {
        self.effective.iter().any(|c| c.contains_rat(theta))
    }
}

/// Chambers of the GIT fan: cells of the arrangement of all facet hyperplanes of
/// full-dimensional weight cones and spans of codimension-one weight cones, with empty
/// cells dropped and cells of equal semistable sets merged.
pub fn toric_git_fan(p: &ToricGitProblem) -> ToricFan {
    let d = p.character_dim();
    let mut arrangement: Arrangement<usize> = Arrangement::new(d);
    for (k, w) in p.weight_cones.iter().enumerate() {
        if w.is_full_dimensional() {
            for f in w.facets() {
                arrangement.insert(f, k).expect("facet normals are nonzero");
            }
        } else if w.equations().len() == 1 {
            arrangement.insert(&w.equations()[0], k).expect("nonzero equation");
        }
    }
    let cells = enumerate_chambers(d, &arrangement.normals());
    let full: Vec<usize> = (0..p.faces.len())
        .filter(|&k| p.weight_cones[k].is_full_dimensional())
        .collect();
    let generic: Vec<Vec<usize>> = cells
        .par_iter()
        .map(|c| {
            full.iter()
                .copied()
                .filter(|&k| p.weight_cones[k].contains(&c.interior))
                .collect()
        })
        .collect();
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, ss) in generic.iter().enumerate() {
        if !ss.is_empty() {
            groups.entry(ss.clone()).or_default().push(i);
        }
    }
    let mut merged: Vec<(usize, Vec<usize>, Vec<usize>)> =
        groups.into_iter().map(|(ss, members)| (members[0], ss, members)).collect();
    merged.sort();
    let chambers = merged
        .into_par_iter()
        .map(|(first, semistable, members)| {
            let mut rays = Vec::new();
            let mut lin = Vec::new();
            for &m in &members {
                rays.extend(cells[m].closure.rays().iter().cloned());
                lin.extend(cells[m].closure.lineality().iter().cloned());
            }
            ToricChamber {
                closure: Cone::from_v(d, &rays, &lin).expect("dimensions agree"),
                interior: cells[first].interior.clone(),
                semistable,
                cells: members.len(),
            }
        })
        .collect();
    let mut effective: Vec<Cone> = Vec::new();
    for w in &p.weight_cones {
        if p.weight_cones.iter().any(|o| o != w && o.contains_cone(w)) {
            continue;
        }
        if !effective.contains(w) {
            effective.push(w.clone());
        }
    }
    ToricFan {
        arrangement,
        chambers,
        effective,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnstableReport {
    pub semistable: Vec<usize>,
    /// Largest dimension of a non-semistable face, `None` when every face is semistable.
    pub max_unstable_dim: Option<usize>,
    /// `dim cone(generators) - max_unstable_dim`, `None` standing for infinity.
    pub codim: Option<usize>,
}

pub fn unstable_stratum_dim(p: &ToricGitProblem, theta: &[Rat]) -> Result<UnstableReport, ToricError> {
    let ss = semistable_faces(p, theta)?;
    if ss.is_empty() {
        return Err(ToricError::NotEffective);
    }
    let max = (0..p.faces.len())
        .filter(|k| !ss.contains(k))
        .map(|k| p.faces[k].dim())
        .max();
    Ok(UnstableReport {
        semistable: ss,
        max_unstable_dim: max,
        codim: max.map(|m| p.cone.dim() - m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallSide {
    /// Chamber on this side, `None` outside the effective locus.
    pub chamber: Option<usize>,
    /// A general point on this side, in character-space coordinates.
    pub theta: Vec<Int>,
    /// Whether the morphism from this side to the wall quotient fails to be an
    /// isomorphism; `None` when this side is not effective.
    pub changed: Option<bool>,
    /// Whether the semistable face sets at this side and on the wall coincide.
    pub semistable_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallReport {
    pub normal: Vec<Int>,
    pub theta0: Vec<Int>,
    /// The given chamber's side first, then the opposite side.
    pub sides: [WallSide; 2],
}

/// Compares the quotient at a general point of the chamber near the wall, and at a
/// general point just across it, with the quotient at a general point `θ_0` of the
/// wall.
///
/// A side is unchanged when sending each closed-orbit support `F` at the side to the
/// support `{g ∈ F : wt(g) in the smallest face of cone(wt(F)) containing θ_0}` of its
/// limit is a bijection onto the closed-orbit supports at `θ_0` preserving stratum
/// dimensions.
pub fn wall_side_analysis(
    p: &ToricGitProblem,
    fan: &ToricFan,
    chamber: usize,
    wall: &[Int],
) -> Result<WallReport, ToricError> {
    let ch = fan.chambers.get(chamber).ok_or(ToricError::NoSuchChamber(chamber))?;
    let key = canonical_line(wall);
    let n = ch
        .closure
        .facets()
        .iter()
        .find(|f| canonical_line(f) == key)
        .ok_or(ToricError::NotAFacet)?
        .clone();
    let d = p.character_dim();
    let mut eqs = ch.closure.equations().to_vec();
    eqs.push(n.clone());
    let wall_cone = Cone::from_inequalities(d, ch.closure.facets(), &eqs)?;
    let special = p.special_subspaces();
    let theta0 = wall_cone.general_point(&special).ok_or(ToricError::DegenerateWall)?;
    let off = |x: &[Int], s: &Vec<Vec<Int>>| s.iter().any(|e| !dot(e, x).is_zero());
    let near = |sign: i64| -> Result<Vec<Int>, ToricError> {
        let mut scale = Int::one();
        for _ in 0..256 {
            scale *= 2;
            let x: Vec<Int> = theta0
                .iter()
                .zip(&n)
                .map(|(a, b)| &scale * a + Int::from(sign) * b)
                .collect();
            let ok = special.iter().all(|s| {
                off(&x, s)
                    && (!off(&theta0, s)
                        || s.len() != 1
                        || crate::exactgeom::num::sign_of(&dot(&s[0], &x))
                            == crate::exactgeom::num::sign_of(&dot(&s[0], &theta0)))
            });
            if ok {
                return Ok(crate::exactgeom::num::primitive(&x));
            }
        }
        Err(ToricError::DegenerateWall)
    };
    let inside = near(1)?;
    let outside = near(-1)?;
    let t0 = to_rat(&theta0);
    let ss0 = p.semistable_at(&t0);
    let ps0 = p.polystable_at(&t0);
    let analyse = |theta: &[Int]| -> WallSide {
        let t = to_rat(theta);
        let ss = p.semistable_at(&t);
        let chamber = if ss.is_empty() { None } else { fan.chamber_with(&ss) };
        let changed = (!ss.is_empty()).then(|| !limit_is_bijective(p, &t, &theta0, &ps0));
        WallSide {
            chamber,
            theta: theta.to_vec(),
            changed,
            semistable_equal: ss == ss0,
        }
    };
    let own = analyse(&inside);
    if own.chamber != Some(chamber) {
        return Err(ToricError::Invariant("point beside the wall left its chamber".into()));
    }
    let other = analyse(&outside);
    Ok(WallReport {
        normal: n,
        theta0,
        sides: [own, other],
    })
}

fn limit_is_bijective(p: &ToricGitProblem, theta: &[Rat], theta0: &[Int], ps0: &[usize]) -> bool {
    let ps = p.polystable_at(theta);
    let mut images = Vec::with_capacity(ps.len());
    for &f in &ps {
        let g = p.weight_cones[f].smallest_face_containing(&[theta0.to_vec()]);
        let support: Vec<usize> = p.faces[f]
            .generators
            .iter()
            .copied()
            .filter(|&j| g.contains(&p.weight_coords[j]))
            .collect();
        let Some(img) = p.face_index(&support) else {
            return false;
        };
        if p.stratum_dim(img) != p.stratum_dim(f) {
            return false;
        }
        images.push(img);
    }
    images.sort_unstable();
    let before = images.len();
    images.dedup();
    images.len() == before && images == ps0
}
