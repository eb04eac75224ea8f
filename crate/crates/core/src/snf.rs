//! Smith normal form over the integers, with unimodular transforms.
//!
//! For an `m x n` matrix `A` we compute unimodular `P` (m x m) and `Q`
//! (n x n) with `P A Q = D`, where `D` is diagonal with nonnegative entries
//! `d_1 | d_2 | ... | d_r` followed by zeros. `Q⁻¹` is tracked as well so
//! that coordinates with respect to kernel bases can be read off exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Columns of `Q` beyond the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.q.cols();
        let cols: Vec<usize> = (self.rank()..n).collect();
        let rows: Vec<usize> = (0..n).collect();
        self.q.submatrix(&rows, &cols)
    }

    /// Factors different from 1.
    pub fn nonunit_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t, t..m, t..n) else { break };
        move_pivot(&mut d, &mut p, &mut q, &mut q_inv, t, pi, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let f = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &f);
                p.add_row_multiple(i, t, &f);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let f = -(&d[(t, j)] / &d[(t, t)]);
                col_op(&mut d, &mut q, &mut q_inv, j, t, &f);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; promote it.
                let cross = min_abs_in_cross(&d, t);
                move_pivot(&mut d, &mut p, &mut q, &mut q_inv, t, cross.0, cross.1);
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }

    let factors = (0..m.min(n)).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    SmithForm { factors, p, q, q_inv }
}

/// col[target] += factor * col[source], keeping `Q` and `Q⁻¹` in sync.
fn col_op(d: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, target: usize, source: usize, f: &BigInt) {
    d.add_col_multiple(target, source, f);
    q.add_col_multiple(target, source, f);
    q_inv.add_row_multiple(source, target, &-f);
}

fn move_pivot(
    d: &mut IntMatrix,
    p: &mut IntMatrix,
    q: &mut IntMatrix,
    q_inv: &mut IntMatrix,
    t: usize,
    i: usize,
    j: usize,
) {
    d.swap_rows(t, i);
    p.swap_rows(t, i);
    d.swap_cols(t, j);
    q.swap_cols(t, j);
    q_inv.swap_rows(t, j);
}

fn min_abs_entry(
    d: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = d[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let col = min_abs_entry(d, t, t..d.rows(), t..t + 1);
    let row = min_abs_entry(d, t, t..t + 1, t..d.cols());
    match (col, row) {
        (Some(a), Some(b)) => {
            if d[a].abs() <= d[b].abs() {
                a
            } else {
                b
            }
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => (t, t),
    }
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Rank over the two-element field.
pub fn rank_mod2(a: &IntMatrix) -> usize {
    let mut rows = a.mod2();
    let ncols = a.cols();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                for k in c..ncols {
                    let v = rows[rank][k];
                    rows[r][k] ^= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Kernel basis over the two-element field, as 0/1 columns.
pub fn kernel_mod2(a: &IntMatrix) -> IntMatrix {
    let mut rows = a.mod2();
    let ncols = a.cols();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let r = pivots.len();
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                for k in c..ncols {
                    let v = rows[r][k];
                    rows[i][k] ^= v;
                }
            }
        }
        pivots.push(c);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let columns: Vec<Vec<BigInt>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = BigInt::one();
            for (r, &pc) in pivots.iter().enumerate() {
                if rows[r][f] {
                    v[pc] = BigInt::one();
                }
            }
            v
        })
        .collect();
    IntMatrix::from_columns(ncols, &columns)
}
