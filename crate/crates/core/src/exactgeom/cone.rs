//! Rational polyhedral cones with both descriptions, computed by the double description
//! method, plus face lattices.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{canonical_span_basis, rank};
use super::num::{dot, is_zero_vec, neg, primitive, primitive_from_rat, to_rat, Int, Rat};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("vector of length {got} in ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone has a nontrivial lineality space")]
    NotStronglyConvex,
}

/// A rational polyhedral cone `cone(rays) + span(lineality)`, equivalently
/// `{x : equations·x = 0, facets·x >= 0}`.
///
/// Rays are primitive, orthogonal to the lineality space and sorted; facet normals are
/// primitive, orthogonal to the equations and sorted. Two cones are equal iff their
/// fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

impl Cone {
    pub fn from_generators(dim: usize, gens: &[Vec<Int>]) -> Result<Self, ConeError> {
        Self::from_v(dim, gens, &[])
    }

    /// Cone generated by `gens` plus the linear span of `lineality`.
    pub fn from_v(dim: usize, gens: &[Vec<Int>], lineality: &[Vec<Int>]) -> Result<Self, ConeError> {
        check_dims(dim, gens.iter().chain(lineality))?;
        let mut ineqs: Vec<Vec<Int>> = gens.to_vec();
        for l in lineality {
            ineqs.push(l.clone());
            ineqs.push(neg(l));
        }
        let (dual_rays, dual_lin) = double_description(dim, &ineqs);
        let equations = canonical_span_basis(&dual_lin);
        let facets = canonical_rays(&dual_rays, &equations);
        Ok(Self::from_h_minimal(dim, facets, equations))
    }

    /// Cone `{x : ineqs·x >= 0, eqs·x = 0}`.
    pub fn from_inequalities(dim: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Result<Self, ConeError> {
        check_dims(dim, ineqs.iter().chain(eqs))?;
        let mut rows: Vec<Vec<Int>> = ineqs.to_vec();
        for e in eqs {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        let (rays, lin) = double_description(dim, &rows);
        Self::from_v(dim, &rays, &lin)
    }

    fn from_h_minimal(dim: usize, facets: Vec<Vec<Int>>, equations: Vec<Vec<Int>>) -> Self {
        let mut rows = facets.clone();
        for e in &equations {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        let (rays, lin) = double_description(dim, &rows);
        let lineality = canonical_span_basis(&lin);
        let rays = canonical_rays(&rays, &lineality);
        Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn whole(dim: usize) -> Self {
        Self::from_inequalities(dim, &[], &[]).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Strongly convex with exactly `dim` extreme rays.
    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim()
    }

    /// The image in the quotient by the lineality space is simplicial.
    pub fn is_simplicial_modulo_lineality(&self) -> bool {
        self.rays.len() + self.lineality.len() == self.dim()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.equations
            .iter()
            .all(|e| super::num::dot_rat(e, x).is_zero())
            && self
                .facets
                .iter()
                .all(|f| !super::num::dot_rat(f, x).is_negative())
    }

    pub fn relative_interior_contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn relative_interior_contains_rat(&self, x: &[Rat]) -> bool {
        self.equations
            .iter()
            .all(|e| super::num::dot_rat(e, x).is_zero())
            && self
                .facets
                .iter()
                .all(|f| super::num::dot_rat(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&neg(l)))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let ineqs: Vec<Vec<Int>> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vec<Int>> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Cone::from_inequalities(self.dim, &ineqs, &eqs).expect("same ambient dimension")
    }

    /// Face of `self` cut out by the facets vanishing on all of `x`s.
    pub fn smallest_face_containing(&self, xs: &[Vec<Int>]) -> Cone {
        let tight: Vec<Vec<Int>> = self
            .facets
            .iter()
            .filter(|f| xs.iter().all(|x| dot(f, x).is_zero()))
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        Cone::from_inequalities(self.dim, &self.facets, &eqs).expect("same ambient dimension")
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        gens.extend(self.lineality.iter().map(|l| neg(l)));
        other.smallest_face_containing(&gens) == *self
    }

    /// Sum of the extreme rays: a point of the relative interior for a strongly convex
    /// cone.
    pub fn ray_sum(&self) -> Vec<Int> {
        let mut s = vec![Int::zero(); self.dim];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    /// A primitive point of the relative interior lying outside every subspace in
    /// `avoid` (each given by its equations) that does not contain the cone.
    ///
    /// Points are taken along the curve `sum (1 + s^(i+1)) r_i + sum s^(k+j+1) l_j` for
    /// `s = 1/2, 1/3, ...`; a subspace not containing the cone meets it in finitely many
    /// parameters, so the search terminates.
    pub fn general_point(&self, avoid: &[Vec<Vec<Int>>]) -> Option<Vec<Int>> {
        let gens: Vec<&Vec<Int>> = self.rays.iter().chain(&self.lineality).collect();
        let relevant: Vec<&Vec<Vec<Int>>> = avoid
            .iter()
            .filter(|eqs| !gens.iter().all(|g| eqs.iter().all(|e| dot(e, g).is_zero())))
            .collect();
        let k = self.rays.len();
        let bound = 2 + (gens.len() + 1) * (relevant.len() + 1);
        for d in 2..=bound {
            let s = Rat::new(Int::from(1), Int::from(d as u64));
            let mut p = vec![Rat::zero(); self.dim];
            let mut power = s.clone();
            for (i, g) in gens.iter().enumerate() {
                let c = if i < k {
                    Rat::from_integer(Int::from(1)) + &power
                } else {
                    power.clone()
                };
                for (x, y) in p.iter_mut().zip(g.iter()) {
                    *x += &c * Rat::from_integer(y.clone());
                }
                power *= &s;
            }
            let p = primitive_from_rat(&p);
            if gens.is_empty() {
                return Some(p);
            }
            let clear = relevant
                .iter()
                .all(|eqs| eqs.iter().any(|e| !dot(e, &p).is_zero()));
            if clear && self.relative_interior_contains(&p) {
                return Some(p);
            }
        }
        None
    }

    /// All faces of a strongly convex cone, each with the indices of `gens` lying on it.
    /// `gens` must generate `self`.
    pub fn face_lattice(&self, gens: &[Vec<Int>]) -> Result<Vec<Face>, ConeError> {
        if !self.is_strongly_convex() {
            return Err(ConeError::NotStronglyConvex);
        }
        check_dims(self.dim, gens.iter())?;
        let nf = self.facets.len();
        let zero_sets: Vec<BTreeSet<usize>> = gens
            .iter()
            .map(|g| {
                (0..nf)
                    .filter(|&k| dot(&self.facets[k], g).is_zero())
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..gens.len()).collect();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(all.clone(), ());
        queue.push_back(all);
        let mut found: Vec<Vec<usize>> = Vec::new();
        while let Some(g) = queue.pop_front() {
            for k in 0..nf {
                let next: Vec<usize> = g
                    .iter()
                    .copied()
                    .filter(|&i| zero_sets[i].contains(&k))
                    .collect();
                if next.len() == g.len() {
                    continue;
                }
                // close under the face operation
                let tight: BTreeSet<usize> = if next.is_empty() {
                    (0..nf).collect()
                } else {
                    next.iter()
                        .map(|&i| zero_sets[i].clone())
                        .reduce(|a, b| a.intersection(&b).copied().collect())
                        .unwrap()
                };
                let closed: Vec<usize> = (0..gens.len())
                    .filter(|&i| tight.is_subset(&zero_sets[i]))
                    .collect();
                if seen.insert(closed.clone(), ()).is_none() {
                    queue.push_back(closed);
                }
            }
            found.push(g);
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|idx| {
                let fg: Vec<Vec<Int>> = idx.iter().map(|&i| gens[i].clone()).collect();
                let cone = Cone::from_generators(self.dim, &fg).expect("dimensions checked");
                Face {
                    generators: idx,
                    cone,
                }
            })
            .collect();
        faces.sort_by(|a, b| {
            a.cone
                .dim()
                .cmp(&b.cone.dim())
                .then_with(|| a.generators.cmp(&b.generators))
        });
        Ok(faces)
    }
}

/// A face of a cone together with the input generators lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub generators: Vec<usize>,
    pub cone: Cone,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.cone.dim()
    }
}

fn check_dims<'a>(dim: usize, vs: impl Iterator<Item = &'a Vec<Int>>) -> Result<(), ConeError> {
    for v in vs {
        if v.len() != dim {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    Ok(())
}

/// Projects each ray orthogonally off `span(modulo)`, makes it primitive, drops zeros
/// and duplicates, and sorts.
fn canonical_rays(rays: &[Vec<Int>], modulo: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: BTreeSet<Vec<Int>> = BTreeSet::new();
    for r in rays {
        let p = if modulo.is_empty() {
            primitive(r)
        } else {
            primitive_from_rat(&project_off(r, modulo))
        };
        if !is_zero_vec(&p) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
fn project_off(v: &[Int], basis: &[Vec<Int>]) -> Vec<Rat> {
    // Gram-Schmidt over Q
    let mut ortho: Vec<Vec<Rat>> = Vec::new();
    for b in basis {
        let mut w = to_rat(b);
        for o in &ortho {
            let c = rat_dot(&w, o) / rat_dot(o, o);
            for (x, y) in w.iter_mut().zip(o) {
                *x -= &c * y;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            ortho.push(w);
        }
    }
    let mut out = to_rat(v);
    for o in &ortho {
        let c = rat_dot(&out, o) / rat_dot(o, o);
        for (x, y) in out.iter_mut().zip(o) {
            *x -= &c * y;
        }
    }
    out
}

fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone)]
struct DdRay {
    v: Vec<Int>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut Vec<u64>, k: usize) {
    let w = k / 64;
    if bits.len() <= w {
        bits.resize(w + 1, 0);
    }
    bits[w] |= 1 << (k % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_superset(sup: &[u64], sub: &[u64]) -> bool {
    sub.iter()
        .enumerate()
        .all(|(i, s)| s & !sup.get(i).copied().unwrap_or(0) == 0)
}

/// Double description method for `{x in Q^dim : a·x >= 0 for a in ineqs}`.
/// Returns extreme rays of the pointed part and a basis of the lineality space.
pub fn double_description(dim: usize, ineqs: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let words = ineqs.len() / 64 + 1;
    let mut lin: Vec<Vec<Int>> = (0..dim).map(|i| super::num::unit(dim, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(idx) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.remove(idx);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = neg(&l);
                al = -al;
            }
            for other in lin.iter_mut() {
                let c = dot(a, other);
                if !c.is_zero() {
                    *other = primitive(&combine(&al, other, &c, &l));
                }
            }
            for r in rays.iter_mut() {
                let c = dot(a, &r.v);
                if !c.is_zero() {
                    r.v = primitive(&combine(&al, &r.v, &c, &l));
                }
                bit_set(&mut r.zeros, k);
            }
            let mut zeros = vec![0u64; words];
            for j in 0..k {
                bit_set(&mut zeros, j);
            }
            rays.push(DdRay {
                v: primitive(&l),
                zeros,
            });
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<DdRay> = Vec::new();
        for i in 0..rays.len() {
            if vals[i].is_negative() {
                continue;
            }
            let mut r = rays[i].clone();
            if vals[i].is_zero() {
                bit_set(&mut r.zeros, k);
            }
            next.push(r);
        }
        // effective dimension of the pointed part, for the algebraic adjacency guard
        let pointed_dim = dim - lin.len();
        for &p in &pos {
            for &n in &negs {
                let common = bits_and(&rays[p].zeros, &rays[n].zeros);
                let blocked = (0..rays.len()).any(|r| {
                    r != p && r != n && bits_superset(&rays[r].zeros, &common)
                });
                if blocked {
                    continue;
                }
                if pointed_dim > 2 {
                    let active: Vec<Vec<Int>> = (0..k)
                        .filter(|&j| common.get(j / 64).is_some_and(|w| w >> (j % 64) & 1 == 1))
                        .map(|j| ineqs[j].clone())
                        .collect();
                    if rank(&active) + 2 < pointed_dim {
                        continue;
                    }
                }
                let v = combine(&vals[p], &rays[n].v, &vals[n], &rays[p].v);
                let mut zeros = common;
                zeros.resize(words, 0);
                bit_set(&mut zeros, k);
                next.push(DdRay {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        rays = next;
    }
    let rays = rays
        .into_iter()
        .map(|r| r.v)
        .filter(|v| !is_zero_vec(v))
        .collect();
    (rays, lin)
}

/// `a*x - c*y`
fn combine(a: &Int, x: &[Int], c: &Int, y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(xi, yi)| a * xi - c * yi).collect()
}
