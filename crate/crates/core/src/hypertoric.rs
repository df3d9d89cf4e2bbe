//! Hypertoric data: an `r × n` integer matrix `A`, its Gale dual `B`, the smoothness
//! and affineness gates, the moment map, and the chamber arrangement in `Q^r`.

use rayon::prelude::*;

use num_traits::{One, Signed, Zero};

use crate::exactgeom::arrangement::enumerate_chambers;
use crate::exactgeom::matrix::rank;
use crate::exactgeom::num::canonical_line;
use crate::exactgeom::smith::{smith_diagonal, smith_kernel};
use crate::exactgeom::{Chamber, Int, IntMatrix, Subspace};

pub const WALL_MODEL: &str = "column-span-arrangement";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HypertoricError {
    #[error("A has {rows} rows and {cols} columns; hypertoric data needs r < n")]
    TooManyRows { rows: usize, cols: usize },
    #[error("column {0} of A is zero")]
    ZeroColumn(usize),
    #[error("the columns of A do not span Z^r")]
    ColumnsDoNotSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypertoricDatum {
    pub a: IntMatrix,
    /// `n × (n - r)` saturated kernel basis, `A·B = 0`.
    pub b: IntMatrix,
    pub columns_span: bool,
    /// Every `r × r` minor of `A` lies in `{-1, 0, 1}`.
    pub unimodular: bool,
    /// Every `(n - r) × (n - r)` minor of `B` lies in `{-1, 0, 1}`.
    pub b_unimodular: bool,
    pub no_zero_row: bool,
}

impl HypertoricDatum {
    /// Quotients at general θ are nonsingular.
    pub fn smooth_for_general_theta(&self) -> bool {
        self.unimodular
    }

    /// The zero fibre of the moment map is affine-admissible.
    pub fn affine_gate(&self) -> bool {
        self.no_zero_row
    }

    pub fn statements(&self) -> Vec<String> {
        vec![
            format!(
                "X_θ is nonsingular for general θ iff A is unimodular: {}",
                if self.unimodular { "yes" } else { "no" }
            ),
            format!(
                "no row of B is zero: {}",
                if self.no_zero_row { "yes" } else { "no" }
            ),
        ]
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All maximal minors of `m` (`k × n` with `k <= n`) lie in `{-1, 0, 1}`.
fn maximal_minors_unit(m: &IntMatrix) -> bool {
    let k = m.rows();
    let rows: Vec<usize> = (0..k).collect();
    subsets(m.cols(), k)
        .into_par_iter()
        .all(|cols| m.submatrix(&rows, &cols).det().abs() <= Int::one())
}

/// Derives `B` and every flag without checking the shape of `A`.
pub fn datum(a: &IntMatrix) -> HypertoricDatum {
    let r = a.rows();
    let d = smith_diagonal(a);
    let columns_span = d.len() == r && d.iter().all(One::is_one);
    let b = smith_kernel(a);
    let no_zero_row = (0..b.rows()).all(|i| b.row(i).iter().any(|x| !x.is_zero()));
    HypertoricDatum {
        a: a.clone(),
        unimodular: maximal_minors_unit(a),
        b_unimodular: maximal_minors_unit(&b.transpose()),
        b,
        columns_span,
        no_zero_row,
    }
}

pub fn validate(a: &IntMatrix) -> Result<HypertoricDatum, HypertoricError> {
    if a.rows() >= a.cols() {
        return Err(HypertoricError::TooManyRows {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if let Some(j) = (0..a.cols()).find(|&j| a.col(j).iter().all(Zero::is_zero)) {
        return Err(HypertoricError::ZeroColumn(j));
    }
    Ok(datum(a))
}

/// One moment-map component `Σ_i c_i z_i w_i = 0` per row of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentEquation {
    pub coefficients: Vec<Int>,
}

impl MomentEquation {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = format!("z{}*w{}", i + 1, i + 1);
            let mag = c.abs();
            let body = if mag.is_one() { term } else { format!("{mag}*{term}") };
            if s.is_empty() {
                s = if c.is_negative() { format!("-{body}") } else { body };
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s + " = 0"
    }
}

pub fn moment_map_report(a: &IntMatrix) -> Vec<MomentEquation> {
    (0..a.rows())
        .map(|i| MomentEquation {
            coefficients: a.row(i).to_vec(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypertoricChambers {
    pub datum: HypertoricDatum,
    pub normals: Vec<Vec<Int>>,
    pub chambers: Vec<Chamber>,
    /// The datum satisfies `r < n` and `B` has no zero row.
    pub valid_for_geometry: bool,
    pub wall_model: &'static str,
}

/// Chambers of the arrangement in `Q^r` whose hyperplanes are spanned by linearly
/// independent `(r - 1)`-subsets of columns of `A`. Degenerate data (`r = n`, zero
/// rows in `B`) is still computed but marked invalid for geometry.
pub fn hypertoric_chambers(a: &IntMatrix) -> Result<HypertoricChambers, HypertoricError> {
    let datum = datum(a);
    if !datum.columns_span {
        return Err(HypertoricError::ColumnsDoNotSpan);
    }
    let r = a.rows();
    let cols: Vec<Vec<Int>> = a.col_vecs();
    let mut normals: Vec<Vec<Int>> = subsets(cols.len(), r.saturating_sub(1))
        .into_iter()
        .filter_map(|s| {
            let picked: Vec<Vec<Int>> = s.iter().map(|&j| cols[j].clone()).collect();
            if rank(&picked) != picked.len() {
                return None;
            }
            let perp = Subspace::kernel_of(r, &picked);
            (perp.dim() == 1).then(|| canonical_line(&perp.basis()[0]))
        })
        .collect();
    normals.sort();
    normals.dedup();
    let chambers = enumerate_chambers(r, &normals);
    let valid_for_geometry = r < a.cols() && datum.no_zero_row;
    Ok(HypertoricChambers {
        datum,
        normals,
        chambers,
        valid_for_geometry,
        wall_model: WALL_MODEL,
    })
}
