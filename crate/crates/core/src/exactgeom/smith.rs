//! Smith normal form and saturated integer kernels.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{hermite_rows, IntMatrix};
use super::num::{Int, Rat};

/// Nonzero invariant factors `d_1 | d_2 | ...` of the Smith normal form, all positive.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.row_axpy(i, &q, t);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.col_axpy(j, &q, t);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    // fold row i into row t and redo
                    let one = Int::one();
                    a.row_axpy(t, &-one, i);
                }
                None => break,
            }
        }
        t += 1;
    }
    (0..rows.min(cols))
        .map(|i| a[(i, i)].abs())
        .filter(|d| !d.is_zero())
        .collect()
}

/// True when the rows of `m` span the full lattice `Z^cols`.
pub fn rows_span_lattice(m: &IntMatrix) -> bool {
    let d = smith_diagonal(m);
    d.len() == m.cols() && d.iter().all(One::is_one)
}

/// Unimodular column reduction: returns `(m·v, v, r)` where the first `r` columns of
/// `m·v` are in lower echelon form and the remaining columns are zero.
fn column_reduce(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let n = m.cols();
    let mut a = m.clone();
    let mut v = IntMatrix::identity(n);
    let mut pc = 0;
    for row in 0..a.rows() {
        if pc >= n {
            break;
        }
        loop {
            let best = (pc..n)
                .filter(|&j| !a[(row, j)].is_zero())
                .min_by(|&x, &y| a[(row, x)].abs().cmp(&a[(row, y)].abs()));
            let Some(j0) = best else { break };
            a.swap_cols(pc, j0);
            v.swap_cols(pc, j0);
            let mut clean = true;
            for j in pc + 1..n {
                if a[(row, j)].is_zero() {
                    continue;
                }
                let q = a[(row, j)].div_floor(&a[(row, pc)]);
                a.col_axpy(j, &q, pc);
                v.col_axpy(j, &q, pc);
                if !a[(row, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pc += 1;
                break;
            }
        }
    }
    (a, v, pc)
}

/// Lattice basis of the integer kernel `{x : M x = 0}` as the columns of the result
/// (`cols(M)` rows, one column per basis vector). The basis is put into Hermite form so
/// that the output does not depend on elimination order.
pub fn smith_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let (_, v, pc) = column_reduce(m);
    let basis: Vec<Vec<Int>> = (pc..n).map(|j| v.col(j)).collect();
    let basis = hermite_rows(&basis);
    IntMatrix::from_cols(n, &basis)
}

/// An integer point of `x + span_Q(directions)`, or `None` when the coset misses `Z^n`.
/// Among the candidates, the returned point has coordinates in `(-1/2, 1/2]` along a
/// lattice basis of the saturated span, measured from `x`.
pub fn integral_translate(x: &[Rat], directions: &[Vec<Int>]) -> Option<Vec<Int>> {
    let n = x.len();
    let free: Vec<Vec<Int>> = directions.iter().filter(|d| d.iter().any(|c| !c.is_zero())).cloned().collect();
    let basis = if free.is_empty() {
        Vec::new()
    } else {
        let annihilator = smith_kernel(&IntMatrix::from_rows(free));
        smith_kernel(&annihilator.transpose()).col_vecs()
    };
    let l = basis.len();
    let mut t: Vec<Rat> = Vec::with_capacity(l);
    if l > 0 {
        // B^T v = [H | 0] with H lower triangular and unimodular for a saturated B;
        // solve H^T t = -(v^T x) restricted to the first l coordinates.
        let (a, v, _) = column_reduce(&IntMatrix::from_rows(basis.clone()));
        let s: Vec<Rat> = (0..l)
            .map(|j| (0..n).map(|i| Rat::from_integer(v[(i, j)].clone()) * &x[i]).sum())
            .collect();
        t = vec![Rat::zero(); l];
        for j in (0..l).rev() {
            let mut rhs = -s[j].clone();
            for k in j + 1..l {
                rhs -= Rat::from_integer(a[(k, j)].clone()) * &t[k];
            }
            t[j] = rhs / Rat::from_integer(a[(j, j)].clone());
        }
        let half = Rat::new(Int::one(), Int::from(2));
        for tj in &mut t {
            *tj -= (&*tj - &half).ceil();
        }
    }
    let point: Vec<Rat> = (0..n)
        .map(|i| x[i].clone() + (0..l).map(|j| Rat::from_integer(basis[j][i].clone()) * &t[j]).sum::<Rat>())
        .collect();
    point.iter().all(Rat::is_integer).then(|| point.iter().map(Rat::to_integer).collect())
}
