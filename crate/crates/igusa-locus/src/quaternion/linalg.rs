//! Small exact linear algebra helpers: rational determinants and inverses of
//! 4x4 matrices, and Hermite normal form of integer row lattices.

use crate::arith::{Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Mat4 = [[Rat; 4]; 4];

pub fn det4(m: &Mat4) -> Rat {
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = Rat::from_integer(Int::from(1));
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..4 {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..4 {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

pub fn inv4(m: &Mat4) -> Option<Mat4> {
    // Gauss-Jordan on [m | I]
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.to_vec();
            for k in 0..4 {
                row.push(if k == i { Rat::from_integer(Int::from(1)) } else { Rat::zero() });
            }
            row
        })
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pv = a[col][col].clone();
        for c in 0..8 {
            a[col][c] /= &pv;
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..8 {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    let mut out: Mat4 = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j + 4].clone();
        }
    }
    Some(out)
}

/// Matrix-vector product y = M x.
pub fn mat4_apply(m: &Mat4, x: &[Rat; 4]) -> [Rat; 4] {
    let mut y: [Rat; 4] = Default::default();
    for i in 0..4 {
        let mut acc = Rat::zero();
        for j in 0..4 {
            acc += &m[i][j] * &x[j];
        }
        y[i] = acc;
    }
    y
}

/// Row Hermite normal form of the lattice spanned by the given integer rows.
/// Returns the nonzero rows: upper triangular shape with positive pivots and
/// entries above each pivot reduced into [0, pivot).
pub fn hnf(rows: Vec<[Int; 4]>) -> Vec<[Int; 4]> {
    let mut rows: Vec<[Int; 4]> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, column)
    let mut top = 0usize;
    for col in 0..4 {
        loop {
            // row with the smallest nonzero |entry| in this column
            let mut best: Option<usize> = None;
            for r in top..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if rows[r][col].abs() < rows[b][col].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                for c in 0..4 {
                    let sub = &q * &rows[top][c];
                    rows[r][c] -= sub;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[top][col].is_negative() {
                    for c in 0..4 {
                        rows[top][c] = -rows[top][c].clone();
                    }
                }
                pivots.push((top, col));
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    // reduce entries above each pivot
    for &(pr, pc) in &pivots {
        let pivot = rows[pr][pc].clone();
        for r in 0..pr {
            let q = rows[r][pc].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for c in 0..4 {
                let sub = &q * &rows[pr][c];
                rows[r][c] -= sub;
            }
        }
    }
    rows
}
