//! Independent brute-force oracles for validating the production algorithms
//! on small instances. These are deliberately naive: the hull test runs an
//! exact rational simplex, the orbit test applies every group element, and
//! the exterior rank materializes every subset.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::criteria::RankProfile;
use crate::linalg;
use crate::rootsys::{Family, RootSystem, Weight};
use crate::{Error, Result};

type Big = Ratio<BigInt>;

/// Exact convex-hull membership by rational linear feasibility: is `mu` a
/// convex combination of `points`?
pub fn hull_membership_exact(points: &[Weight], mu: &Weight) -> Result<bool> {
    let Some(first) = points.first() else {
        return Ok(false);
    };
    let dim = first.rank();
    if points.len() > 10_000 {
        return Err(Error::OracleScale("more than 10000 hull points".to_string()));
    }
    if dim > 6 {
        return Err(Error::OracleScale("hull oracle is limited to rank 6".to_string()));
    }
    if mu.rank() != dim {
        return Err(Error::WrongRank {
            expected: dim,
            actual: mu.rank(),
        });
    }
    // Feasibility of: sum t_i p_i = mu, sum t_i = 1, t >= 0.
    let m = dim + 1;
    let n = points.len();
    let mut a: Vec<Vec<Big>> = (0..m)
        .map(|row| {
            (0..n)
                .map(|col| {
                    if row < dim {
                        Big::from_integer(BigInt::from(points[col].coords2()[row]))
                    } else {
                        Big::one()
                    }
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Big> = (0..m)
        .map(|row| {
            if row < dim {
                Big::from_integer(BigInt::from(mu.coords2()[row]))
            } else {
                Big::one()
            }
        })
        .collect();
    for (arow, bval) in a.iter_mut().zip(b.iter_mut()) {
        if bval.is_negative() {
            *bval = -bval.clone();
            for entry in arow.iter_mut() {
                *entry = -entry.clone();
            }
        }
    }
    Ok(phase_one_feasible(&a, &b))
}

/// Phase-one simplex with Bland's rule: is `{x >= 0 : A x = b}` nonempty?
#[allow(clippy::needless_range_loop)]
fn phase_one_feasible(a: &[Vec<Big>], b: &[Big]) -> bool {
    let m = a.len();
    let n = a[0].len();
    let total = n + m;
    // Tableau rows: [A | I | b], basis starts at the artificial columns.
    let mut t: Vec<Vec<Big>> = (0..m)
        .map(|i| {
            let mut row: Vec<Big> = Vec::with_capacity(total + 1);
            row.extend(a[i].iter().cloned());
            for j in 0..m {
                row.push(if i == j { Big::one() } else { Big::zero() });
            }
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();
    // Reduced costs for minimizing the artificial sum.
    let mut cost: Vec<Big> = vec![Big::zero(); total + 1];
    for j in 0..=total {
        let mut s = Big::zero();
        for row in t.iter() {
            s += row[j].clone();
        }
        cost[j] = -s;
    }
    for j in n..total {
        cost[j] += Big::one();
    }
    // Bland: the entering column is the smallest index with negative cost.
    while let Some(enter) = (0..total).find(|&j| cost[j].is_negative()) {
        // Ratio test, ties broken by the smallest basis index.
        let mut pivot: Option<usize> = None;
        let mut best: Option<Big> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = t[i][total].clone() / t[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[pivot.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    pivot = Some(i);
                }
            }
        }
        let Some(pr) = pivot else {
            // Unbounded phase-one cannot happen; treat as infeasible.
            return false;
        };
        let inv = t[pr][enter].clone();
        for j in 0..=total {
            let v = t[pr][j].clone() / inv.clone();
            t[pr][j] = v;
        }
        for i in 0..m {
            if i != pr && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=total {
                    let v = t[i][j].clone() - f.clone() * t[pr][j].clone();
                    t[i][j] = v;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..=total {
                let v = cost[j].clone() - f.clone() * t[pr][j].clone();
                cost[j] = v;
            }
        }
        basis[pr] = enter;
    }
    // Feasible iff the artificial objective reaches zero.
    cost[total].is_zero()
}

/// The Weyl orbit computed by applying every group element: all signed
/// permutations, restricted to an even number of sign changes for type D.
pub fn orbit_naive(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    let r = rs.rank();
    if r > 6 {
        return Err(Error::OracleScale("naive orbits are limited to rank 6".to_string()));
    }
    let lambda = crate::weyl::dominant_representative(rs, lambda)?;
    let mut perm: Vec<usize> = (0..r).collect();
    let mut out = alloc::collections::BTreeSet::new();
    permute(&mut perm, 0, &mut |p: &[usize]| {
        for signs in 0u32..(1 << r) {
            if rs.family() == Family::D && signs.count_ones() % 2 == 1 {
                continue;
            }
            let mut c2 = vec![0i64; r];
            for (i, &pi) in p.iter().enumerate() {
                let v = lambda.coords2()[pi];
                c2[i] = if signs & (1 << i) != 0 { -v } else { v };
            }
            out.insert(Weight::from_coords2(c2));
        }
    });
    Ok(out.into_iter().collect())
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Exterior-power rank by materializing every k-subset of the eigenvalue
/// multiset and counting the nonzero sums.
pub fn exterior_rank_naive(p: &RankProfile) -> Result<u64> {
    let n = p.n();
    let k = p.k();
    if linalg::binomial(n, k) > 1_000_000 {
        return Err(Error::OracleScale("more than 10^6 subsets".to_string()));
    }
    if k == 0 {
        return Ok(1);
    }
    let (n0, np, nm) = p.eigen_mults();
    let mut eigen: Vec<i64> = Vec::with_capacity(n as usize);
    eigen.extend(core::iter::repeat_n(0, n0 as usize));
    eigen.extend(core::iter::repeat_n(1, np as usize));
    eigen.extend(core::iter::repeat_n(-1, nm as usize));
    let k = k as usize;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut nonzero = 0u64;
    loop {
        let sum: i64 = idx.iter().map(|&i| eigen[i]).sum();
        if sum != 0 {
            nonzero += 1;
        }
        // Advance the combination.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(nonzero);
            }
            i -= 1;
            if idx[i] != i + eigen.len() - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
