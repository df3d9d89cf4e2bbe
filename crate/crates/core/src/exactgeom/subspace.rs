//! Rational subspaces of `Q^n` carried with a lattice basis, so that geometry can be
//! done in subspace coordinates and reported back in ambient coordinates.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{rank, rref, IntMatrix};
use super::num::{dot, to_rat, Int, Rat};
use super::smith::smith_kernel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Basis vectors, each of length `ambient`.
    basis: Vec<Vec<Int>>,
    /// Ambient indices whose entries determine the coordinates.
    pivot_rows: Vec<usize>,
    /// Inverse of the basis restricted to `pivot_rows` (row-major `dim x dim`).
    inverse: Vec<Vec<Rat>>,
}

impl Subspace {
    /// All of `Z^n` with the standard basis.
    pub fn whole(n: usize) -> Self {
        let basis = (0..n).map(|i| super::num::unit(n, i)).collect();
        Self::from_basis(n, basis)
    }

    /// Panics if the basis vectors are dependent.
    pub fn from_basis(ambient: usize, basis: Vec<Vec<Int>>) -> Self {
        assert!(basis.iter().all(|b| b.len() == ambient));
        assert_eq!(rank(&basis), basis.len(), "dependent subspace basis");
        let d = basis.len();
        // choose d independent ambient coordinates greedily
        let mut pivot_rows = Vec::with_capacity(d);
        let mut chosen: Vec<Vec<Int>> = Vec::new();
        for i in 0..ambient {
            let row: Vec<Int> = basis.iter().map(|b| b[i].clone()).collect();
            chosen.push(row);
            if rank(&chosen) == chosen.len() {
                pivot_rows.push(i);
                if pivot_rows.len() == d {
                    break;
                }
            } else {
                chosen.pop();
            }
        }
        let inverse = invert(&chosen);
        Subspace {
            ambient,
            basis,
            pivot_rows,
            inverse,
        }
    }

    /// The lattice `{x in Z^n : E x = 0}` for the given equation rows.
    ///
    /// When the reduced row echelon form of `E` is integral the basis is the one dual
    /// to the free variables, so subspace coordinates are literally the free
    /// ambient coordinates; otherwise a saturated Smith kernel basis is used.
    pub fn kernel_of(ambient: usize, equations: &[Vec<Int>]) -> Self {
        if equations.is_empty() {
            return Self::whole(ambient);
        }
        let (red, pivots) = rref(&equations.iter().map(|e| to_rat(e)).collect::<Vec<_>>());
        if red.iter().flatten().all(|x| x.is_integer()) {
            let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
            let basis = free
                .iter()
                .map(|&f| {
                    let mut v = vec![Int::zero(); ambient];
                    v[f] = Int::one();
                    for (row, &p) in red.iter().zip(&pivots) {
                        v[p] = -row[f].to_integer();
                    }
                    v
                })
                .collect();
            return Self::from_basis(ambient, basis);
        }
        let k = smith_kernel(&IntMatrix::from_rows(equations.to_vec()));
        Self::from_basis(ambient, k.col_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(self.ambient, &self.basis)
    }

    pub fn to_ambient(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Int::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    pub fn to_ambient_rat(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * BigRational::from_integer(x.clone());
            }
        }
        out
    }

    /// Subspace coordinates of an ambient rational vector, or `None` if it is not in
    /// the subspace.
    pub fn coords_of(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        if x.len() != self.ambient {
            return None;
        }
        let picked: Vec<&Rat> = self.pivot_rows.iter().map(|&i| &x[i]).collect();
        let coords: Vec<Rat> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&picked)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * *b)
            })
            .collect();
        if self.to_ambient_rat(&coords) == x {
            Some(coords)
        } else {
            None
        }
    }

    /// Integer coordinates of a lattice point of the subspace.
    pub fn int_coords_of(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = self.coords_of(&to_rat(x))?;
        c.iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// Restriction of an ambient linear functional to subspace coordinates.
    pub fn restrict(&self, functional: &[Int]) -> Vec<Int> {
        self.basis.iter().map(|b| dot(functional, b)).collect()
    }
}

fn invert(m: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = to_rat(row);
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (red, _) = rref(&aug);
    red.into_iter().map(|r| r[n..].to_vec()).collect()
}
