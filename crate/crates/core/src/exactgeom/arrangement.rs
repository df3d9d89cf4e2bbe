//! Central hyperplane arrangements in `Q^d` and enumeration of their chambers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::cone::Cone;
use super::lp::strict_cone_point;
use super::num::{canonical_line, dot, is_zero_vec, neg, Int};
use num_traits::{Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("normal of length {got} in dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A central arrangement whose hyperplanes carry labels. Hyperplanes are stored by
/// their canonical primitive normal, so inserting the same hyperplane twice merges the
/// labels.
#[derive(Clone, Debug)]
pub struct Arrangement<L> {
    dim: usize,
    hyperplanes: BTreeMap<Vec<Int>, Vec<L>>,
}

impl<L: Clone + Ord> Arrangement<L> {
    pub fn new(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Returns `true` if the hyperplane was new.
    pub fn insert(&mut self, normal: &[Int], label: L) -> Result<bool, ArrangementError> {
        if normal.len() != self.dim {
            return Err(ArrangementError::DimensionMismatch {
                expected: self.dim,
                got: normal.len(),
            });
        }
        if is_zero_vec(normal) {
            return Err(ArrangementError::ZeroNormal);
        }
        let key = canonical_line(normal);
        let fresh = !self.hyperplanes.contains_key(&key);
        let labels = self.hyperplanes.entry(key).or_default();
        if let Err(pos) = labels.binary_search(&label) {
            labels.insert(pos, label);
        }
        Ok(fresh)
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Canonical normals in sorted order; chamber sign vectors refer to this order.
    pub fn normals(&self) -> Vec<Vec<Int>> {
        self.hyperplanes.keys().cloned().collect()
    }

    pub fn labels(&self, normal: &[Int]) -> Option<&[L]> {
        self.hyperplanes
            .get(&canonical_line(normal))
            .map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Int>, &Vec<L>)> {
        self.hyperplanes.iter()
    }

    pub fn chambers(&self) -> Vec<Chamber> {
        enumerate_chambers(self.dim, &self.normals())
    }

    /// Sign pattern of `x` against every hyperplane (`0` on a hyperplane).
    pub fn sign_vector(&self, x: &[Int]) -> Vec<i8> {
        self.hyperplanes
            .keys()
            .map(|n| super::num::sign_of(&dot(n, x)))
            .collect()
    }
}

/// An open chamber: signs against each normal, an exact interior point and the
/// closure as a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<i8>,
    pub interior: Vec<Int>,
    pub closure: Cone,
}

impl Chamber {
    pub fn sign_string(&self) -> String {
        sign_string(&self.signs)
    }

    pub fn contains_open(&self, x: &[Int], normals: &[Vec<Int>]) -> bool {
        normals
            .iter()
            .zip(&self.signs)
            .all(|(n, &s)| super::num::sign_of(&dot(n, x)) == s)
    }
}

pub fn sign_string(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

/// All chambers of the central arrangement with the given normals in `Q^dim`, sorted
/// by sign string with `+` before `-`.
///
/// Cells are refined one hyperplane at a time; a cell's interior witness decides one
/// side for free and an exact LP decides the other.
pub fn enumerate_chambers(dim: usize, normals: &[Vec<Int>]) -> Vec<Chamber> {
    struct Cell {
        signs: Vec<i8>,
        witness: Vec<Int>,
    }
    let signed = |signs: &[i8], extra: &[Int], s: i8| -> Vec<Vec<Int>> {
        let mut rows: Vec<Vec<Int>> = normals
            .iter()
            .zip(signs)
            .map(|(n, &t)| if t > 0 { n.clone() } else { neg(n) })
            .collect();
        rows.push(if s > 0 { extra.to_vec() } else { neg(extra) });
        rows
    };
    let mut cells = vec![Cell {
        signs: Vec::new(),
        witness: vec![Int::zero(); dim],
    }];
    for n in normals {
        cells = cells
            .into_par_iter()
            .flat_map_iter(|c| {
                let v = dot(n, &c.witness);
                let mut out = Vec::with_capacity(2);
                for s in [1i8, -1] {
                    let free = (s > 0 && v.is_positive()) || (s < 0 && v.is_negative());
                    let witness = if free {
                        Some(c.witness.clone())
                    } else {
                        strict_cone_point(&signed(&c.signs, n, s), &[], &[])
                    };
                    if let Some(w) = witness {
                        let mut signs = c.signs.clone();
                        signs.push(s);
                        out.push(Cell { signs, witness: w });
                    }
                }
                out
            })
            .collect();
    }
    let mut chambers: Vec<Chamber> = cells
        .into_par_iter()
        .map(|c| {
            let rows: Vec<Vec<Int>> = normals
                .iter()
                .zip(&c.signs)
                .map(|(n, &t)| if t > 0 { n.clone() } else { neg(n) })
                .collect();
            let closure = Cone::from_inequalities(dim, &rows, &[]).expect("dimensions agree");
            let interior = if normals.is_empty() {
                c.witness
            } else {
                super::num::primitive(&c.witness)
            };
            Chamber {
                signs: c.signs,
                interior,
                closure,
            }
        })
        .collect();
    chambers.sort_by_key(|c| c.sign_string());
    chambers
}

/// Sign patterns of all chambers by testing every sign vector with an independent
/// Fourier-Motzkin feasibility check. Exponential; meant for cross-checking.
pub fn brute_force_sign_vectors(dim: usize, normals: &[Vec<Int>]) -> Vec<String> {
    let k = normals.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let signs: Vec<i8> = (0..k)
            .map(|i| if mask >> (k - 1 - i) & 1 == 0 { 1 } else { -1 })
            .collect();
        let rows: Vec<Vec<Int>> = normals
            .iter()
            .zip(&signs)
            .map(|(n, &s)| if s > 0 { n.clone() } else { neg(n) })
            .collect();
        if fourier_motzkin_strict(dim, &rows) {
            out.push(sign_string(&signs));
        }
    }
    out.sort();
    out
}

/// Decides whether `{x : a·x > 0 for all rows}` is nonempty by Fourier-Motzkin
/// elimination of the homogeneous strict system.
pub fn fourier_motzkin_strict(dim: usize, rows: &[Vec<Int>]) -> bool {
    let mut sys: Vec<Vec<Int>> = rows.to_vec();
    for var in 0..dim {
        let (mut pos, mut negs, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in sys {
            if r[var].is_positive() {
                pos.push(r);
            } else if r[var].is_negative() {
                negs.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &negs {
                let a = -&n[var];
                let b = p[var].clone();
                let comb: Vec<Int> = p.iter().zip(n).map(|(x, y)| &a * x + &b * y).collect();
                rest.push(super::num::primitive(&comb));
            }
        }
        rest.sort();
        rest.dedup();
        sys = rest;
    }
    // every remaining row is identically zero, so `0 > 0` must not occur
    sys.is_empty()
}
