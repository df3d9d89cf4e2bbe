//! Exact rational feasibility by phase-one simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::num::{dot, primitive_from_rat, Int, Rat};

/// Finds `x` with `A x >= b` and `E x = 0`, or `None` when the system is infeasible.
/// Variables are free.
pub fn feasible_point(ineqs: &[Vec<Int>], rhs: &[Int], eqs: &[Vec<Int>]) -> Option<Vec<Rat>> {
    assert_eq!(ineqs.len(), rhs.len());
    let dim = ineqs
        .first()
        .or(eqs.first())
        .map(Vec::len)
        .unwrap_or(0);
    if dim == 0 {
        return rhs
            .iter()
            .all(|b| !b.is_positive())
            .then(Vec::new);
    }
    let m = ineqs.len() + eqs.len();
    // columns: p (dim), q (dim), slacks (ineqs), artificials (m), rhs
    let ns = ineqs.len();
    let ncols = 2 * dim + ns + m;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (k, (a, b)) in ineqs.iter().zip(rhs).enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..dim {
            row[j] = BigRational::from_integer(a[j].clone());
            row[dim + j] = -BigRational::from_integer(a[j].clone());
        }
        row[2 * dim + k] = -Rat::from_integer(1.into());
        row[ncols] = BigRational::from_integer(b.clone());
        t.push(row);
    }
    for e in eqs {
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..dim {
            row[j] = BigRational::from_integer(e[j].clone());
            row[dim + j] = -BigRational::from_integer(e[j].clone());
        }
        t.push(row);
    }
    for (i, row) in t.iter_mut().enumerate() {
        if row[ncols].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        row[2 * dim + ns + i] = Rat::from_integer(1.into());
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * dim + ns + i).collect();
    // objective: minimise the sum of artificials; reduced costs = -sum of rows on
    // non-artificial columns
    let mut obj = vec![Rat::zero(); ncols + 1];
    for row in &t {
        for j in 0..ncols + 1 {
            if j < 2 * dim + ns || j == ncols {
                obj[j] -= &row[j];
            }
        }
    }
    while let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][ncols] / &t[i][enter];
            let better = match &best {
                None => true,
                Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        let Some(r) = leave else {
            // unbounded in phase one cannot happen (objective bounded below by 0)
            unreachable!("phase-one objective is bounded");
        };
        pivot(&mut t, &mut obj, r, enter);
        basis[r] = enter;
    }
    if !obj[ncols].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); dim];
    for (i, &bcol) in basis.iter().enumerate() {
        if bcol < dim {
            x[bcol] += &t[i][ncols];
        } else if bcol < 2 * dim {
            x[bcol - dim] -= &t[i][ncols];
        }
    }
    debug_assert!(ineqs
        .iter()
        .zip(rhs)
        .all(|(a, b)| super::num::dot_rat(a, &x) >= BigRational::from_integer(b.clone())));
    Some(x)
}

fn pivot(t: &mut [Vec<Rat>], obj: &mut [Rat], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Finds a primitive integer `x` with `s·x > 0` for every strict row, `w·x >= 0` for
/// every weak row and `E x = 0`. The returned point is an exact certificate.
pub fn strict_cone_point(strict: &[Vec<Int>], weak: &[Vec<Int>], eqs: &[Vec<Int>]) -> Option<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = strict.to_vec();
    let mut rhs: Vec<Int> = vec![Int::from(1); strict.len()];
    rows.extend(weak.iter().cloned());
    rhs.extend(std::iter::repeat_n(Int::zero(), weak.len()));
    let x = feasible_point(&rows, &rhs, eqs)?;
    let p = primitive_from_rat(&x);
    let ok = strict.iter().all(|s| dot(s, &p).is_positive())
        && weak.iter().all(|w| !dot(w, &p).is_negative())
        && eqs.iter().all(|e| dot(e, &p).is_zero());
    assert!(ok, "feasibility certificate failed verification");
    Some(p)
}
