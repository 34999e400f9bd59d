//! Root systems of types B, C, and D in explicit epsilon-coordinates.
//!
//! Weights carry doubled integer coordinates (`coords2`), so half-integer
//! spinor weights are exact. All pairings are computed through the coroot
//! convention `(mu, alpha_check) = 2 (mu, alpha) / (alpha, alpha)`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::excision::Hyperplane;
use crate::linalg::{self, Rat};
use crate::{Error, Result};

/// The three root-system families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Smallest rank at which the family is defined here (B: 2, C: 3, D: 4).
    pub fn min_rank(self) -> usize {
        match self {
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A point of the ambient Euclidean space with half-integer coordinates,
/// stored as doubled integers: coordinate `i` equals `coords2[i] / 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    coords2: Vec<i64>,
}

impl Weight {
    pub fn from_coords2(coords2: Vec<i64>) -> Weight {
        Weight { coords2 }
    }

    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords2: vec![0; rank],
        }
    }

    /// The standard basis vector `epsilon_i` (0-based index).
    pub fn epsilon(rank: usize, i: usize) -> Weight {
        let mut coords2 = vec![0; rank];
        coords2[i] = 2;
        Weight { coords2 }
    }

    pub fn coords2(&self) -> &[i64] {
        &self.coords2
    }

    pub fn rank(&self) -> usize {
        self.coords2.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords2.iter().all(|&c| c == 0)
    }

    /// Four times the Euclidean inner product; exact for all weights.
    pub fn dot4(&self, other: &Weight) -> i64 {
        assert_eq!(self.rank(), other.rank());
        self.coords2
            .iter()
            .zip(&other.coords2)
            .map(|(&a, &b)| a * b)
            .sum()
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight {
            coords2: self
                .coords2
                .iter()
                .zip(&other.coords2)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank());
        Weight {
            coords2: self
                .coords2
                .iter()
                .zip(&other.coords2)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn negated(&self) -> Weight {
        Weight {
            coords2: self.coords2.iter().map(|&a| -a).collect(),
        }
    }

    pub fn times(&self, k: i64) -> Weight {
        Weight {
            coords2: self.coords2.iter().map(|&a| k * a).collect(),
        }
    }
}

impl fmt::Display for Weight {
    /// Exact epsilon-coordinates, e.g. `3/2,1/2,-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c2) in self.coords2.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c2 % 2 == 0 {
                write!(f, "{}", c2 / 2)?;
            } else {
                write!(f, "{c2}/2")?;
            }
        }
        Ok(())
    }
}

/// Coroot pairing `(mu, alpha_check) = 2 (mu, alpha) / (alpha, alpha)`.
pub fn pairing(mu: &Weight, alpha: &Weight) -> Result<Rat> {
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    if mu.rank() != alpha.rank() {
        return Err(Error::WrongRank {
            expected: alpha.rank(),
            actual: mu.rank(),
        });
    }
    let num = 2 * mu.dot4(alpha) as i128;
    let den = alpha.dot4(alpha) as i128;
    Ok(Rat::new(num, den))
}

/// Integral pairing for the common case `mu` in P, `alpha` a root.
/// Panics if the pairing is not an integer.
pub(crate) fn pairing_int(mu: &Weight, alpha: &Weight) -> i64 {
    let num = 2 * mu.dot4(alpha);
    let den = alpha.dot4(alpha);
    debug_assert!(den != 0);
    assert!(num % den == 0, "non-integral pairing");
    num / den
}

/// The coroot `2 alpha / (alpha, alpha)` as a weight.
pub fn coroot(alpha: &Weight) -> Result<Weight> {
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    let den = alpha.dot4(alpha);
    let coords2: Vec<i64> = alpha
        .coords2()
        .iter()
        .map(|&c| {
            let num = 8 * c;
            if num % den != 0 {
                return Err(Error::Unsupported(
                    "coroot has non-half-integer coordinates".to_string(),
                ));
            }
            Ok(num / den)
        })
        .collect::<Result<_>>()?;
    Ok(Weight::from_coords2(coords2))
}

/// A weight given either by exact epsilon-coordinates or by
/// fundamental-weight coefficients (prefix `fw:`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    /// Doubled epsilon-coordinates.
    Coords(Vec<i64>),
    /// Coefficients on the fundamental weights.
    Fw(Vec<i64>),
}

impl WeightSpec {
    /// Parses `"1/2,1/2,1/2"` or `"fw:0,0,1"`. Errors carry the byte
    /// position of the offending token.
    pub fn parse(input: &str) -> Result<WeightSpec> {
        if let Some(rest) = input.strip_prefix("fw:") {
            let coeffs = parse_int_list(rest, 3)?;
            return Ok(WeightSpec::Fw(coeffs));
        }
        let mut coords2 = Vec::new();
        let mut pos = 0;
        for part in input.split(',') {
            let token = part.trim();
            let tok_pos = pos + (part.len() - part.trim_start().len());
            coords2.push(parse_half(token, tok_pos)?);
            pos += part.len() + 1;
        }
        Ok(WeightSpec::Coords(coords2))
    }

    /// Resolves against a root system, checking the rank.
    pub fn resolve(&self, rs: &RootSystem) -> Result<Weight> {
        match self {
            WeightSpec::Coords(coords2) => {
                if coords2.len() != rs.rank() {
                    return Err(Error::WrongRank {
                        expected: rs.rank(),
                        actual: coords2.len(),
                    });
                }
                Ok(Weight::from_coords2(coords2.clone()))
            }
            WeightSpec::Fw(coeffs) => {
                if coeffs.len() != rs.rank() {
                    return Err(Error::WrongRank {
                        expected: rs.rank(),
                        actual: coeffs.len(),
                    });
                }
                Ok(rs.weight_from_fw(coeffs))
            }
        }
    }
}

fn parse_int_list(input: &str, offset: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in input.split(',') {
        let token = part.trim();
        let tok_pos = pos + (part.len() - part.trim_start().len());
        out.push(token.parse::<i64>().map_err(|_| Error::Parse {
            pos: tok_pos,
            msg: alloc::format!("expected an integer, found {token:?}"),
        })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Parses one exact coordinate with denominator 1 or 2, doubled.
fn parse_half(token: &str, pos: usize) -> Result<i64> {
    let bad = |msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    if token.is_empty() {
        return Err(bad("empty coordinate"));
    }
    if let Some((num, den)) = token.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| bad("expected an integer numerator"))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| bad("expected an integer denominator"))?;
        match d {
            1 => Ok(2 * n),
            2 => Ok(n),
            -1 => Ok(-2 * n),
            -2 => Ok(-n),
            _ => Err(bad("coordinate denominators must be 1 or 2")),
        }
    } else {
        let n: i64 = token
            .parse()
            .map_err(|_| bad("expected an integer or a half"))?;
        Ok(2 * n)
    }
}

/// Diagram families recognized for subsystems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagramKind {
    A,
    B,
    C,
    D,
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            DiagramKind::A => 'A',
            DiagramKind::B => 'B',
            DiagramKind::C => 'C',
            DiagramKind::D => 'D',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramLabel {
    pub kind: DiagramKind,
    pub rank: usize,
}

impl fmt::Display for DiagramLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

/// An ordered simple system, usually a subsystem of lines inside a larger
/// system. When the induced diagram is connected and of type A/B/C/D the
/// roots are stored in the standard order for the detected type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSubsystem {
    roots: Vec<Weight>,
    label: Option<DiagramLabel>,
}

impl SimpleSubsystem {
    /// Builds a subsystem from a set of simple roots, detecting the diagram
    /// type by Cartan-matrix isomorphism (order-insensitive).
    pub fn new(roots: Vec<Weight>) -> SimpleSubsystem {
        let (roots, label) = detect_diagram(roots);
        SimpleSubsystem { roots, label }
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn label(&self) -> Option<DiagramLabel> {
        self.label
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Returns the roots in the canonical order for the detected label, or in
/// the input order with no label when the diagram is not connected A/B/C/D.
fn detect_diagram(roots: Vec<Weight>) -> (Vec<Weight>, Option<DiagramLabel>) {
    let k = roots.len();
    if k == 0 {
        return (roots, None);
    }
    if k == 1 {
        let label = DiagramLabel {
            kind: DiagramKind::A,
            rank: 1,
        };
        return (roots, Some(label));
    }
    // Integer Cartan matrix of the candidate simple system.
    let mut cartan = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let num = 2 * roots[i].dot4(&roots[j]);
            let den = roots[j].dot4(&roots[j]);
            if num % den != 0 {
                return (roots, None);
            }
            cartan[i][j] = num / den;
        }
    }
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && cartan[i][j] != 0).collect())
        .collect();
    // Connectivity.
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return (roots, None);
    }
    let degrees: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    if degrees.iter().any(|&d| d > 3) {
        return (roots, None);
    }
    let branches: Vec<usize> = (0..k).filter(|&i| degrees[i] == 3).collect();
    match branches.len() {
        0 => order_path(roots, &cartan, &adj),
        1 => order_branched(roots, &cartan, &adj, branches[0]),
        _ => (roots, None),
    }
}

/// Orders a connected path diagram; distinguishes A (all single bonds) from
/// B/C (one double bond, necessarily at an end here).
fn order_path(
    roots: Vec<Weight>,
    cartan: &[Vec<i64>],
    adj: &[Vec<usize>],
) -> (Vec<Weight>, Option<DiagramLabel>) {
    let k = roots.len();
    let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 {
        return (roots, None);
    }
    let walk = |start: usize| -> Vec<usize> {
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < k {
            let next = *adj[cur].iter().find(|&&x| x != prev).unwrap();
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    };
    let doubles: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| cartan[i][j] * cartan[j][i] == 2)
        .collect();
    let all_single = (0..k).all(|i| {
        (0..k).all(|j| i == j || cartan[i][j] == 0 || cartan[i][j] * cartan[j][i] == 1)
    });
    if all_single {
        // Type A; pick the lexicographically smaller of the two orientations.
        let fwd = walk(ends[0]);
        let bwd = walk(ends[1]);
        let key = |order: &[usize]| -> Vec<&Weight> { order.iter().map(|&i| &roots[i]).collect() };
        let order = if key(&fwd) <= key(&bwd) { fwd } else { bwd };
        let ordered = order.into_iter().map(|i| roots[i].clone()).collect();
        let label = DiagramLabel {
            kind: DiagramKind::A,
            rank: k,
        };
        return (ordered, Some(label));
    }
    if doubles.len() != 1 {
        return (roots, None);
    }
    let (d0, d1) = doubles[0];
    // The double bond must involve an end of the path.
    let order = if adj[d0].len() == 1 && adj[d1].len() == 1 {
        // k == 2: orient with the long root first so the label is B.
        if cartan[d0][d1] == -2 {
            vec![d0, d1]
        } else {
            vec![d1, d0]
        }
    } else if adj[d1].len() == 1 {
        walk(*ends.iter().find(|&&e| e != d1).unwrap())
    } else if adj[d0].len() == 1 {
        walk(*ends.iter().find(|&&e| e != d0).unwrap())
    } else {
        return (roots, None);
    };
    let last = order[k - 1];
    let prev = order[k - 2];
    let kind = if cartan[prev][last] == -2 {
        DiagramKind::B
    } else {
        DiagramKind::C
    };
    let ordered: Vec<Weight> = order.into_iter().map(|i| roots[i].clone()).collect();
    let label = DiagramLabel { kind, rank: k };
    (ordered, Some(label))
}

/// Orders a simply-laced diagram with one degree-3 vertex as type D: the two
/// short branches become the last two roots.
fn order_branched(
    roots: Vec<Weight>,
    cartan: &[Vec<i64>],
    adj: &[Vec<usize>],
    branch: usize,
) -> (Vec<Weight>, Option<DiagramLabel>) {
    let k = roots.len();
    if k < 4 {
        return (roots, None);
    }
    let simply_laced = (0..k).all(|i| {
        (0..k).all(|j| i == j || cartan[i][j] == 0 || cartan[i][j] * cartan[j][i] == 1)
    });
    if !simply_laced {
        return (roots, None);
    }
    // Ties (notably the triality of the 4-vertex diagram) break by input
    // position, so ambient systems keep their own order.
    let mut leaves: Vec<usize> = adj[branch]
        .iter()
        .copied()
        .filter(|&n| adj[n].len() == 1)
        .collect();
    leaves.sort_unstable();
    let (tail, leaf_pair) = match leaves.len() {
        2 => {
            let tail = *adj[branch]
                .iter()
                .find(|&&n| !leaves.contains(&n))
                .unwrap();
            (Some(tail), [leaves[0], leaves[1]])
        }
        // k == 4 with three leaves: the smallest leaf heads the long path.
        3 => (Some(leaves[0]), [leaves[1], leaves[2]]),
        _ => return (roots, None),
    };
    // Walk the long path from its far end toward the branch vertex.
    let mut path = vec![branch];
    let mut prev = branch;
    let mut cur = tail.unwrap();
    loop {
        path.push(cur);
        let next = adj[cur].iter().copied().find(|&x| x != prev);
        match next {
            Some(n) => {
                if adj[cur].len() != 2 {
                    return (roots, None);
                }
                prev = cur;
                cur = n;
            }
            None => break,
        }
    }
    if path.len() + 2 != k {
        return (roots, None);
    }
    path.reverse();
    let mut order = path;
    order.extend_from_slice(&leaf_pair);
    let ordered: Vec<Weight> = order.into_iter().map(|i| roots[i].clone()).collect();
    let label = DiagramLabel {
        kind: DiagramKind::D,
        rank: k,
    };
    (ordered, Some(label))
}

/// A full root system with its simple roots, fundamental weights, and
/// lattice data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    simple_roots: Vec<Weight>,
    fundamental_weights: Vec<Weight>,
    rho: Weight,
    weyl_order: u128,
    pq_index: u64,
    snf_divisors: Vec<i64>,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        // The upper cap keeps the stored group order inside u128.
        if rank < family.min_rank() || rank > 24 {
            return Err(Error::RankOutOfBounds {
                family: family.letter(),
                rank,
            });
        }
        let r = rank;
        let mut roots: Vec<Weight> = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut c2 = vec![0i64; r];
                    c2[i] = 2 * si;
                    c2[j] = 2 * sj;
                    roots.push(Weight::from_coords2(c2));
                }
            }
        }
        match family {
            Family::B => {
                for i in 0..r {
                    for s in [2i64, -2] {
                        let mut c2 = vec![0i64; r];
                        c2[i] = s;
                        roots.push(Weight::from_coords2(c2));
                    }
                }
            }
            Family::C => {
                for i in 0..r {
                    for s in [4i64, -4] {
                        let mut c2 = vec![0i64; r];
                        c2[i] = s;
                        roots.push(Weight::from_coords2(c2));
                    }
                }
            }
            Family::D => {}
        }
        roots.sort();
        roots.dedup();

        let positive_roots: Vec<Weight> = roots
            .iter()
            .filter(|w| {
                w.coords2()
                    .iter()
                    .find(|&&c| c != 0)
                    .is_some_and(|&c| c > 0)
            })
            .cloned()
            .collect();

        let mut simple_roots: Vec<Weight> = (0..r - 1)
            .map(|i| {
                let mut c2 = vec![0i64; r];
                c2[i] = 2;
                c2[i + 1] = -2;
                Weight::from_coords2(c2)
            })
            .collect();
        let mut last = vec![0i64; r];
        match family {
            Family::B => last[r - 1] = 2,
            Family::C => last[r - 1] = 4,
            Family::D => {
                last[r - 2] = 2;
                last[r - 1] = 2;
            }
        }
        simple_roots.push(Weight::from_coords2(last));

        let mut fundamental_weights: Vec<Weight> = Vec::with_capacity(r);
        for i in 1..=r {
            let mut c2 = vec![0i64; r];
            match family {
                Family::B => {
                    if i < r {
                        c2[..i].fill(2);
                    } else {
                        c2.fill(1);
                    }
                }
                Family::C => c2[..i].fill(2),
                Family::D => {
                    if i <= r - 2 {
                        c2[..i].fill(2);
                    } else if i == r - 1 {
                        c2.fill(1);
                        c2[r - 1] = -1;
                    } else {
                        c2.fill(1);
                    }
                }
            }
            fundamental_weights.push(Weight::from_coords2(c2));
        }

        let mut rho = Weight::zero(r);
        for fw in &fundamental_weights {
            rho = rho.plus(fw);
        }

        let mut weyl_order: u128 = 1;
        for i in 1..=r as u128 {
            weyl_order *= i;
        }
        weyl_order <<= match family {
            Family::B | Family::C => r as u32,
            Family::D => r as u32 - 1,
        };

        // Index [P : Q] from the Smith normal form of the Cartan matrix,
        // which expresses the simple roots in the fundamental-weight basis.
        let cartan: Vec<Vec<i64>> = simple_roots
            .iter()
            .map(|ai| {
                simple_roots
                    .iter()
                    .map(|aj| pairing_int(aj, ai))
                    .collect()
            })
            .collect();
        let snf_divisors = linalg::smith_diagonal(&cartan);
        let pq_index = snf_divisors.iter().map(|&d| d.unsigned_abs()).product();

        Ok(RootSystem {
            family,
            rank,
            roots,
            positive_roots,
            simple_roots,
            fundamental_weights,
            rho,
            weyl_order,
            pq_index,
            snf_divisors,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All roots, sorted lexicographically by doubled coordinates.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Simple roots in the standard order.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    /// Half-sum of the positive roots.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// The index [P : Q] (2 for B and C, 4 for D).
    pub fn pq_index(&self) -> u64 {
        self.pq_index
    }

    /// Elementary divisors of the Cartan matrix.
    pub fn snf_divisors(&self) -> &[i64] {
        &self.snf_divisors
    }

    pub fn is_root(&self, v: &Weight) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Membership in the weight lattice P: same parity on every doubled
    /// coordinate for B and D, all even for C.
    pub fn in_weight_lattice(&self, mu: &Weight) -> bool {
        if mu.rank() != self.rank {
            return false;
        }
        match self.family {
            Family::C => mu.coords2().iter().all(|&c| c % 2 == 0),
            Family::B | Family::D => {
                let parity = mu.coords2()[0].rem_euclid(2);
                mu.coords2().iter().all(|&c| c.rem_euclid(2) == parity)
            }
        }
    }

    /// Coefficients of `v` in the simple-root basis, always solvable.
    pub(crate) fn simple_root_coefficients(&self, v: &Weight) -> Vec<Rat> {
        // Columns of the system are the simple roots.
        let r = self.rank;
        let a: Vec<Vec<i64>> = (0..r)
            .map(|row| (0..r).map(|col| self.simple_roots[col].coords2()[row]).collect())
            .collect();
        linalg::solve(&a, v.coords2()).expect("simple roots form a basis")
    }

    /// Membership in the root lattice Q, by integral solvability in the
    /// simple-root basis.
    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        if mu.rank() != self.rank {
            return false;
        }
        self.simple_root_coefficients(mu)
            .iter()
            .all(|c| c.is_integer())
    }

    pub fn is_dominant(&self, mu: &Weight) -> bool {
        mu.rank() == self.rank
            && self
                .simple_roots
                .iter()
                .all(|alpha| mu.dot4(alpha) >= 0)
    }

    /// The weight with the given fundamental-weight coefficients.
    pub fn weight_from_fw(&self, coeffs: &[i64]) -> Weight {
        assert_eq!(coeffs.len(), self.rank);
        let mut w = Weight::zero(self.rank);
        for (c, fw) in coeffs.iter().zip(&self.fundamental_weights) {
            w = w.plus(&fw.times(*c));
        }
        w
    }

    /// Fundamental-weight coefficients of `mu` (integral iff `mu` is in P).
    pub fn fw_coefficients(&self, mu: &Weight) -> Vec<Rat> {
        self.simple_roots
            .iter()
            .map(|alpha| pairing(mu, alpha).expect("simple roots are nonzero"))
            .collect()
    }

    /// The ambient simple system as an ordered subsystem of itself.
    pub fn simple_subsystem(&self) -> SimpleSubsystem {
        SimpleSubsystem {
            roots: self.simple_roots.clone(),
            label: Some(DiagramLabel {
                kind: match self.family {
                    Family::B => DiagramKind::B,
                    Family::C => DiagramKind::C,
                    Family::D => DiagramKind::D,
                },
                rank: self.rank,
            }),
        }
    }
}

/// The distinguished boundary subset of an indecomposable simple system of
/// type B, C, or D. Other diagram types are not tabulated and error out.
pub fn boundary_subset(pi: &SimpleSubsystem) -> Result<Vec<Weight>> {
    let label = pi.label().ok_or(Error::UnsupportedDiagram)?;
    let roots = pi.roots();
    let r = label.rank;
    let picks: Vec<usize> = match label.kind {
        DiagramKind::B => {
            if r >= 5 {
                vec![0]
            } else {
                vec![0, r - 1]
            }
        }
        DiagramKind::C => vec![0, 1],
        DiagramKind::D => {
            if r >= 7 {
                vec![0]
            } else {
                vec![0, r - 2, r - 1]
            }
        }
        DiagramKind::A => return Err(Error::UnsupportedDiagram),
    };
    Ok(picks.into_iter().map(|i| roots[i].clone()).collect())
}

/// All indecomposable simple systems of order `r - 2` inside the ambient
/// simple system: the connected induced subdiagrams with `r - 2` vertices.
pub fn pc_family(rs: &RootSystem) -> Result<Vec<SimpleSubsystem>> {
    let r = rs.rank();
    if r <= 2 {
        return Err(Error::RankOutOfBounds {
            family: rs.family().letter(),
            rank: r,
        });
    }
    let simple = rs.simple_roots();
    let adjacent = |i: usize, j: usize| simple[i].dot4(&simple[j]) != 0;
    let size = r - 2;
    let mut out = Vec::new();
    // Enumerate index subsets of the given size in lexicographic order.
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let connected = {
            let mut seen = vec![false; size];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for w in 0..size {
                    if !seen[w] && adjacent(idx[v], idx[w]) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        if connected {
            let roots: Vec<Weight> = idx.iter().map(|&i| simple[i].clone()).collect();
            out.push(SimpleSubsystem::new(roots));
        }
        // Next combination.
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] != i + r - size {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The simple system of the root subsystem `Delta intersect H` with respect
/// to the induced positive system: positive roots in H that are not the sum
/// of two positive roots in H.
pub fn subsystem_simple_system(rs: &RootSystem, h: &Hyperplane) -> SimpleSubsystem {
    let in_h: Vec<Weight> = rs
        .positive_roots()
        .iter()
        .filter(|alpha| h.contains(alpha))
        .cloned()
        .collect();
    let simple: Vec<Weight> = in_h
        .iter()
        .filter(|alpha| {
            !in_h.iter().any(|beta| {
                let gamma = alpha.minus(beta);
                !gamma.is_zero()
                    && gamma
                        .coords2()
                        .iter()
                        .find(|&&c| c != 0)
                        .is_some_and(|&c| c > 0)
                    && in_h.binary_search(&gamma).is_ok()
            })
        })
        .cloned()
        .collect();
    SimpleSubsystem::new(simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excision;

    #[test]
    fn counts_b3_d4() {
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        assert_eq!(b3.roots().len(), 18);
        assert_eq!(b3.positive_roots().len(), 9);
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        assert_eq!(d4.roots().len(), 24);
    }

    #[test]
    fn c3_conventions() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        assert_eq!(
            c3.simple_roots()[2],
            Weight::from_coords2(vec![0, 0, 4]),
            "alpha_3 = 2 eps_3"
        );
        assert_eq!(
            c3.fundamental_weights()[2],
            Weight::from_coords2(vec![2, 2, 2]),
            "phi_3 = eps_1 + eps_2 + eps_3"
        );
    }

    #[test]
    fn rank_bounds() {
        assert!(RootSystem::new(Family::C, 2).is_err());
        assert!(RootSystem::new(Family::D, 3).is_err());
        assert!(RootSystem::new(Family::B, 1).is_err());
        assert!(RootSystem::new(Family::B, 2).is_ok());
    }

    #[test]
    fn fundamental_weights_pair_to_identity() {
        for (family, r) in [(Family::B, 4), (Family::C, 3), (Family::D, 5)] {
            let rs = RootSystem::new(family, r).unwrap();
            for (i, phi) in rs.fundamental_weights().iter().enumerate() {
                for (j, alpha) in rs.simple_roots().iter().enumerate() {
                    let expected = i64::from(i == j);
                    assert_eq!(pairing_int(phi, alpha), expected);
                }
            }
        }
    }

    #[test]
    fn spinor_pairing_and_coroot_identity() {
        // In B_r: (phi_r, alpha_r^check) = 1, and for alpha = alpha_{r-1} +
        // alpha_r the coroot is 2 eps_{r-1} = 2 alpha_{r-1}^check +
        // alpha_r^check.
        let r = 5;
        let rs = RootSystem::new(Family::B, r).unwrap();
        let phi_r = &rs.fundamental_weights()[r - 1];
        let alpha_r = &rs.simple_roots()[r - 1];
        assert_eq!(pairing(phi_r, alpha_r).unwrap(), Rat::new(1, 1));
        let alpha = rs.simple_roots()[r - 2].plus(alpha_r);
        let lhs = coroot(&alpha).unwrap();
        let rhs = coroot(&rs.simple_roots()[r - 2])
            .unwrap()
            .times(2)
            .plus(&coroot(alpha_r).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Weight::epsilon(r, r - 2).times(2));
    }

    #[test]
    fn pairing_rejects_zero() {
        let z = Weight::zero(3);
        let v = Weight::epsilon(3, 0);
        assert_eq!(pairing(&v, &z), Err(Error::ZeroVector));
    }

    #[test]
    fn pq_index_values() {
        for (family, r, expected) in [
            (Family::B, 2, 2),
            (Family::B, 6, 2),
            (Family::C, 4, 2),
            (Family::D, 4, 4),
            (Family::D, 7, 4),
        ] {
            let rs = RootSystem::new(family, r).unwrap();
            assert_eq!(rs.pq_index(), expected, "{family}{r}");
        }
    }

    #[test]
    fn boundary_table() {
        let b5 = RootSystem::new(Family::B, 5).unwrap();
        let b = boundary_subset(&b5.simple_subsystem()).unwrap();
        assert_eq!(b, vec![b5.simple_roots()[0].clone()]);

        let c4 = RootSystem::new(Family::C, 4).unwrap();
        let b = boundary_subset(&c4.simple_subsystem()).unwrap();
        assert_eq!(
            b,
            vec![c4.simple_roots()[0].clone(), c4.simple_roots()[1].clone()]
        );

        let d5 = RootSystem::new(Family::D, 5).unwrap();
        let b = boundary_subset(&d5.simple_subsystem()).unwrap();
        assert_eq!(
            b,
            vec![
                d5.simple_roots()[0].clone(),
                d5.simple_roots()[3].clone(),
                d5.simple_roots()[4].clone()
            ]
        );

        let d7 = RootSystem::new(Family::D, 7).unwrap();
        let b = boundary_subset(&d7.simple_subsystem()).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn boundary_rejects_type_a() {
        let b4 = RootSystem::new(Family::B, 4).unwrap();
        let sub = SimpleSubsystem::new(vec![
            b4.simple_roots()[0].clone(),
            b4.simple_roots()[1].clone(),
        ]);
        assert_eq!(sub.label().unwrap().kind, DiagramKind::A);
        assert_eq!(boundary_subset(&sub), Err(Error::UnsupportedDiagram));
    }

    #[test]
    fn pc_family_b4_and_d5() {
        let b4 = RootSystem::new(Family::B, 4).unwrap();
        let fam = pc_family(&b4).unwrap();
        assert_eq!(fam.len(), 3);

        let d5 = RootSystem::new(Family::D, 5).unwrap();
        let fam = pc_family(&d5).unwrap();
        assert_eq!(fam.len(), 4);
        // Union of the members covers the whole simple system.
        let mut covered: Vec<Weight> = fam
            .iter()
            .flat_map(|s| s.roots().iter().cloned())
            .collect();
        covered.sort();
        covered.dedup();
        let mut all = d5.simple_roots().to_vec();
        all.sort();
        assert_eq!(covered, all);
    }

    #[test]
    fn pc_family_covers_every_simple_system() {
        for (family, lo) in [(Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            for r in lo..=8 {
                let rs = RootSystem::new(family, r).unwrap();
                let fam = pc_family(&rs).unwrap();
                let mut covered: Vec<Weight> = Vec::new();
                for sub in &fam {
                    assert_eq!(sub.len(), r - 2, "{family}{r} member size");
                    assert!(sub.label().is_some(), "{family}{r} member connected");
                    covered.extend(sub.roots().iter().cloned());
                }
                covered.sort();
                covered.dedup();
                let mut all = rs.simple_roots().to_vec();
                all.sort();
                assert_eq!(covered, all, "{family}{r} union covers the system");
                // Members are pairwise distinct.
                let mut keys: Vec<Vec<Weight>> = fam
                    .iter()
                    .map(|s| {
                        let mut v = s.roots().to_vec();
                        v.sort();
                        v
                    })
                    .collect();
                keys.sort();
                let before = keys.len();
                keys.dedup();
                assert_eq!(before, keys.len(), "{family}{r} members distinct");
            }
        }
    }

    #[test]
    fn pc_family_rejects_rank_two() {
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert!(pc_family(&b2).is_err());
    }

    #[test]
    fn subsystem_inside_coordinate_hyperplane() {
        // B_r with H = {x_r = 0} gives a B_{r-1} whose last simple root is
        // alpha_{r-1} + alpha_r.
        let r = 5;
        let rs = RootSystem::new(Family::B, r).unwrap();
        let h = excision::Hyperplane::from_normal(alloc::vec![0, 0, 0, 0, 1]).unwrap();
        let sub = subsystem_simple_system(&rs, &h);
        let label = sub.label().unwrap();
        assert_eq!((label.kind, label.rank), (DiagramKind::B, r - 1));
        let expected_last = rs.simple_roots()[r - 2].plus(&rs.simple_roots()[r - 1]);
        assert_eq!(sub.roots()[r - 2], expected_last);
        assert_eq!(&sub.roots()[..r - 2], &rs.simple_roots()[..r - 2]);

        let c4 = RootSystem::new(Family::C, 4).unwrap();
        let h = excision::Hyperplane::from_normal(alloc::vec![0, 0, 0, 1]).unwrap();
        let sub = subsystem_simple_system(&c4, &h);
        let label = sub.label().unwrap();
        assert_eq!((label.kind, label.rank), (DiagramKind::C, 3));
        let expected_last = c4.simple_roots()[2].times(2).plus(&c4.simple_roots()[3]);
        assert_eq!(sub.roots()[2], expected_last);

        let d6 = RootSystem::new(Family::D, 6).unwrap();
        let h = excision::Hyperplane::from_normal(alloc::vec![0, 0, 0, 0, 0, 1]).unwrap();
        let sub = subsystem_simple_system(&d6, &h);
        let label = sub.label().unwrap();
        assert_eq!((label.kind, label.rank), (DiagramKind::D, 5));
        let expected_last = d6.simple_roots()[3]
            .plus(&d6.simple_roots()[4])
            .plus(&d6.simple_roots()[5]);
        assert_eq!(sub.roots()[4], expected_last);
    }

    #[test]
    fn detection_recovers_every_ambient_diagram() {
        for (family, lo, kind) in [
            (Family::B, 2, DiagramKind::B),
            (Family::C, 3, DiagramKind::C),
            (Family::D, 4, DiagramKind::D),
        ] {
            for r in lo..=8 {
                let rs = RootSystem::new(family, r).unwrap();
                let sub = SimpleSubsystem::new(rs.simple_roots().to_vec());
                let label = sub.label().unwrap();
                assert_eq!((label.kind, label.rank), (kind, r), "{family}{r}");
                assert_eq!(sub.roots(), rs.simple_roots());
            }
        }
    }

    #[test]
    fn subsystem_roots_expand_over_its_simple_system() {
        // Every positive root inside H is a nonnegative integer combination
        // of the extracted simple system.
        for (family, r, normal) in [
            (Family::B, 5, vec![0i64, 0, 0, 0, 1]),
            (Family::C, 4, vec![0, 0, 0, 1]),
            (Family::D, 5, vec![0, 0, 0, 0, 1]),
            (Family::B, 4, vec![1, 1, 1, 1]),
        ] {
            let rs = RootSystem::new(family, r).unwrap();
            let h = excision::Hyperplane::from_normal(normal).unwrap();
            let sub = subsystem_simple_system(&rs, &h);
            let k = sub.len();
            if k == 0 {
                continue;
            }
            let rows: Vec<Vec<i64>> = sub.roots().iter().map(|w| w.coords2().to_vec()).collect();
            assert_eq!(crate::linalg::rank(&rows), k, "independent");
            // Expand each positive root of the slice over the subsystem by
            // exhaustive small search in the pairing coordinates.
            for beta in rs.positive_roots().iter().filter(|b| h.contains(b)) {
                let mut remaining = beta.clone();
                // Greedy peeling: subtract a simple subsystem root with a
                // positive pairing until zero.
                let mut steps = 0;
                while !remaining.is_zero() {
                    let next = sub
                        .roots()
                        .iter()
                        .find(|a| pairing(&remaining, a).unwrap() > Rat::new(0, 1));
                    let Some(a) = next else { break };
                    remaining = remaining.minus(a);
                    steps += 1;
                    assert!(steps < 64, "peeling ran away");
                }
                assert!(
                    remaining.is_zero(),
                    "{family}{r}: {beta} does not expand over the subsystem"
                );
            }
        }
    }

    #[test]
    fn subsystem_may_be_empty() {
        // A generic normal meets no roots.
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        let h = excision::Hyperplane::from_normal(alloc::vec![9, 5, 1]).unwrap();
        let sub = subsystem_simple_system(&b3, &h);
        assert!(sub.is_empty());
    }

    #[test]
    fn weight_spec_roundtrip() {
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        let w = WeightSpec::parse("1/2,1/2,1/2")
            .unwrap()
            .resolve(&b3)
            .unwrap();
        assert_eq!(w, b3.fundamental_weights()[2]);
        let w2 = WeightSpec::parse("fw:0,0,1").unwrap().resolve(&b3).unwrap();
        assert_eq!(w, w2);
        assert_eq!(alloc::format!("{w}"), "1/2,1/2,1/2");

        // Positions in parse errors.
        let err = WeightSpec::parse("1,x,0").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 2, .. }));
        let err = WeightSpec::parse("1/3,0,0").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 0, .. }));
    }

    #[test]
    fn lattice_membership_parity() {
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        assert!(b3.in_weight_lattice(&Weight::from_coords2(vec![1, 1, 1])));
        assert!(b3.in_weight_lattice(&Weight::from_coords2(vec![2, 0, -2])));
        assert!(!b3.in_weight_lattice(&Weight::from_coords2(vec![1, 2, 1])));
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        assert!(!c3.in_weight_lattice(&Weight::from_coords2(vec![1, 1, 1])));
    }
}
