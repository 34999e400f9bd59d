//! Small exact linear algebra over the rationals, sized for rank <= 8.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// Row-echelon rank of an integer matrix, computed over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x as i128)).collect())
        .collect();
    echelon(&mut m)
}

#[allow(clippy::needless_range_loop)]
fn echelon(m: &mut [Vec<Rat>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][col];
        for v in m[pivot_row].iter_mut().skip(col) {
            *v /= inv;
        }
        for i in 0..nrows {
            if i != pivot_row && !m[i][col].is_zero() {
                let factor = m[i][col];
                for j in col..ncols {
                    let v = m[i][j] - factor * m[pivot_row][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    pivot_row
}

/// Solves the square system `a * x = b` over the rationals.
/// Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = a[i].iter().map(|&x| rat(x as i128)).collect();
            row.push(rat(b[i] as i128));
            row
        })
        .collect();
    if echelon(&mut m) < n {
        // Singular; the augmented system may still be inconsistent or
        // underdetermined, neither of which we solve.
        return None;
    }
    // After full reduction the pivot of row i is at column i with value 1.
    Some((0..n).map(|i| m[i][n]).collect())
}

/// Computes the one-dimensional kernel of the row span: a vector orthogonal
/// to every row. Returns `None` unless the rows have rank exactly `dim - 1`.
/// The result is primitive integral with its first nonzero entry positive.
pub fn hyperplane_normal(rows: &[Vec<i64>]) -> Option<Vec<i64>> {
    let dim = rows.first()?.len();
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x as i128)).collect())
        .collect();
    let rk = echelon(&mut m);
    if rk != dim - 1 {
        return None;
    }
    // Identify pivot columns; exactly one column is free.
    let mut pivot_col = vec![usize::MAX; rk];
    let mut is_pivot = vec![false; dim];
    for (i, pc) in pivot_col.iter_mut().enumerate() {
        let col = (0..dim).find(|&c| !m[i][c].is_zero()).unwrap();
        *pc = col;
        is_pivot[col] = true;
    }
    let free = (0..dim).find(|&c| !is_pivot[c]).unwrap();
    // Kernel vector: free coordinate 1, pivots read off from the echelon form.
    let mut v = vec![Rat::zero(); dim];
    v[free] = rat(1);
    for (i, &pc) in pivot_col.iter().enumerate() {
        v[pc] = -m[i][free];
    }
    Some(primitive(&v))
}

/// Clears denominators and content, and normalizes the sign so the first
/// nonzero entry is positive.
pub fn primitive(v: &[Rat]) -> Vec<i64> {
    let mut denom_lcm: i128 = 1;
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let mut ints: Vec<i128> = v.iter().map(|x| (x * rat(denom_lcm)).to_integer()).collect();
    let mut g: i128 = 0;
    for &x in &ints {
        g = g.gcd(&x);
    }
    if g > 1 {
        for x in ints.iter_mut() {
            *x /= g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -*x;
            }
        }
    }
    ints.into_iter().map(|x| x as i64).collect()
}

/// Invariant factors (Smith normal form diagonal) of a square integer
/// matrix.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(mat: &[Vec<i64>]) -> Vec<i64> {
    let n = mat.len();
    let mut m: Vec<Vec<i128>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag: Vec<i128> = Vec::with_capacity(n);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = (t..n)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] != 0)
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // Clear column t: each step either zeroes an entry or pulls a
            // strictly smaller remainder into the pivot, so this terminates.
            for i in t + 1..n {
                while m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    if q != 0 {
                        for j in t..n {
                            m[i][j] -= q * m[t][j];
                        }
                    }
                    if m[i][t] == 0 {
                        break;
                    }
                    m.swap(t, i);
                    dirty = true;
                }
            }
            // Clear row t with column operations, same scheme.
            for j in t + 1..n {
                while m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    if q != 0 {
                        for row in m.iter_mut().skip(t) {
                            let delta = q * row[t];
                            row[j] -= delta;
                        }
                    }
                    if m[t][j] == 0 {
                        break;
                    }
                    // Column swap may reintroduce entries below the pivot.
                    for row in m.iter_mut().skip(t) {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    while diag.len() < n {
        diag.push(0);
    }
    // Normalize to the divisibility chain d1 | d2 | ... .
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            if a != 0 && b % a != 0 {
                let g = a.gcd(&b);
                diag[i] = g;
                diag[j] = a / g * b;
            }
        }
    }
    diag.into_iter().map(|d| d as i64).collect()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
