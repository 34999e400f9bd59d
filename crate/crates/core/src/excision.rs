//! Hyperplanes and excision counts: how many roots and how many weights of a
//! weight system a hyperplane misses.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::linalg::{self, Rat};
use crate::rootsys::{pairing_int, RootSystem, Weight, WeightSpec};
use crate::weightset::WeightSystem;
use crate::{Error, Result};

/// A linear hyperplane, canonicalized to a primitive integral normal with
/// positive leading entry, so equality is plain coordinate comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    normal: Vec<i64>,
    generators: Option<Vec<Weight>>,
}

impl Hyperplane {
    /// Builds a hyperplane from any nonzero integer normal vector.
    pub fn from_normal(normal: Vec<i64>) -> Result<Hyperplane> {
        if normal.iter().all(|&c| c == 0) {
            return Err(Error::ZeroVector);
        }
        let rats: Vec<Rat> = normal.iter().map(|&c| Rat::from_integer(c as i128)).collect();
        Ok(Hyperplane {
            normal: linalg::primitive(&rats),
            generators: None,
        })
    }

    /// The primitive integral normal.
    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    /// Dimension of the ambient space.
    pub fn ambient_rank(&self) -> usize {
        self.normal.len()
    }

    /// Dimension of the hyperplane itself.
    pub fn dim(&self) -> usize {
        self.normal.len() - 1
    }

    /// Spanning vectors, when the hyperplane was built from a span.
    pub fn generators(&self) -> Option<&[Weight]> {
        self.generators.as_deref()
    }

    /// Exact membership test `(mu, normal) = 0`.
    pub fn contains(&self, mu: &Weight) -> bool {
        self.eval2(mu) == 0
    }

    /// Twice the pairing of `mu` with the normal; zero iff `mu` lies in H.
    pub fn eval2(&self, mu: &Weight) -> i64 {
        assert_eq!(mu.rank(), self.normal.len());
        mu.coords2()
            .iter()
            .zip(&self.normal)
            .map(|(&c, &n)| c * n)
            .sum()
    }

    /// Parses `"normal:1,-1,0,0"` or `"span:<weight>;<weight>;..."`.
    pub fn parse(input: &str, rs: &RootSystem) -> Result<Hyperplane> {
        if let Some(rest) = input.strip_prefix("normal:") {
            let mut entries: Vec<Rat> = Vec::new();
            let mut pos = 7;
            for part in rest.split(',') {
                let token = part.trim();
                let tok_pos = pos + (part.len() - part.trim_start().len());
                entries.push(parse_rational(token, tok_pos)?);
                pos += part.len() + 1;
            }
            if entries.len() != rs.rank() {
                return Err(Error::WrongRank {
                    expected: rs.rank(),
                    actual: entries.len(),
                });
            }
            if entries.iter().all(|e| *e == Rat::from_integer(0)) {
                return Err(Error::ZeroVector);
            }
            Ok(Hyperplane {
                normal: linalg::primitive(&entries),
                generators: None,
            })
        } else if let Some(rest) = input.strip_prefix("span:") {
            let mut vectors = Vec::new();
            for part in rest.split(';') {
                let spec = WeightSpec::parse(part.trim())?;
                vectors.push(spec.resolve(rs)?);
            }
            span_hyperplane(&vectors)
        } else {
            Err(Error::Parse {
                pos: 0,
                msg: "expected a 'normal:' or 'span:' prefix".to_string(),
            })
        }
    }
}

fn parse_rational(token: &str, pos: usize) -> Result<Rat> {
    let bad = |msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    if token.is_empty() {
        return Err(bad("empty entry"));
    }
    if let Some((num, den)) = token.split_once('/') {
        let n: i128 = num
            .trim()
            .parse()
            .map_err(|_| bad("expected an integer numerator"))?;
        let d: i128 = den
            .trim()
            .parse()
            .map_err(|_| bad("expected an integer denominator"))?;
        if d == 0 {
            return Err(bad("zero denominator"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: i128 = token.parse().map_err(|_| bad("expected a rational"))?;
        Ok(Rat::from_integer(n))
    }
}

/// The span of the given vectors as a hyperplane. Fails with the actual rank
/// when the span does not have dimension exactly `r - 1`.
pub fn span_hyperplane(vectors: &[Weight]) -> Result<Hyperplane> {
    let Some(first) = vectors.first() else {
        return Err(Error::ZeroVector);
    };
    let dim = first.rank();
    let rows: Vec<Vec<i64>> = vectors.iter().map(|w| w.coords2().to_vec()).collect();
    match linalg::hyperplane_normal(&rows) {
        Some(normal) => Ok(Hyperplane {
            normal,
            generators: Some(vectors.to_vec()),
        }),
        None => Err(Error::SpanRank {
            expected: dim - 1,
            actual: linalg::rank(&rows),
        }),
    }
}

/// Number of roots with nonzero pairing against the normal of `h`.
pub fn roots_off(rs: &RootSystem, h: &Hyperplane) -> u64 {
    count_off(rs.roots(), h)
}

/// Number of weights in the slice that lie off the hyperplane.
pub fn count_off(weights: &[Weight], h: &Hyperplane) -> u64 {
    weights.iter().filter(|w| !h.contains(w)).count() as u64
}

/// Both counts of `support \ H`: as a set and with multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OffCounts {
    pub set_count: u64,
    pub multiset_count: u64,
}

pub fn weights_off(ws: &WeightSystem<'_>, h: &Hyperplane) -> OffCounts {
    let mut set_count = 0;
    let mut multiset_count = 0;
    for (w, m) in ws.iter() {
        if !h.contains(w) {
            set_count += 1;
            multiset_count += m;
        }
    }
    OffCounts {
        set_count,
        multiset_count,
    }
}

fn is_parallel(v: &Weight, alpha: &Weight) -> bool {
    let vc = v.coords2();
    let ac = alpha.coords2();
    for i in 0..vc.len() {
        for j in i + 1..vc.len() {
            if vc[i] * ac[j] != vc[j] * ac[i] {
                return false;
            }
        }
    }
    true
}

/// The string-counting bound: for a root `alpha` off `H` and a subset `K`
/// of the support whose pairwise differences avoid the line of `alpha`, the
/// number of support elements off `H` is at least
/// `sum over K of (x, alpha_check)`. Returns that sum.
pub fn sxa_lower_bound(
    ws: &WeightSystem<'_>,
    h: &Hyperplane,
    alpha: &Weight,
    k: &[Weight],
) -> Result<i64> {
    if !ws.root_system().is_root(alpha) {
        return Err(Error::NotARoot);
    }
    if h.contains(alpha) {
        return Err(Error::Violates {
            constraint: "alpha must lie off the hyperplane",
            witness: alpha.to_string(),
        });
    }
    for x in k {
        if ws.multiplicity(x) == 0 {
            return Err(Error::NotInSupport(x.to_string()));
        }
    }
    for (i, x) in k.iter().enumerate() {
        for y in &k[i + 1..] {
            let d = x.minus(y);
            if !d.is_zero() && is_parallel(&d, alpha) {
                return Err(Error::SubsetPair {
                    constraint: "K - K must avoid the line of alpha",
                    first: x.to_string(),
                    second: y.to_string(),
                });
            }
        }
    }
    Ok(k.iter().map(|x| pairing_int(x, alpha)).sum())
}

/// The reflection-pairing estimator: if `S` is closed under the sign flip of
/// coordinate `p`, avoids the coordinate hyperplane `x_p = 0`, and
/// `eps_p` lies off `H`, then `|S \ H| >= |S| / 2`. Returns `|S| / 2`.
pub fn gamma_half_bound(s: &[Weight], p: usize, h: &Hyperplane) -> Result<u64> {
    if p >= h.ambient_rank() {
        return Err(Error::WrongRank {
            expected: h.ambient_rank(),
            actual: p,
        });
    }
    if h.normal()[p] == 0 {
        return Err(Error::Violates {
            constraint: "eps_p must lie off the hyperplane",
            witness: format!("p = {p}"),
        });
    }
    let set: alloc::collections::BTreeSet<&Weight> = s.iter().collect();
    if set.len() != s.len() {
        return Err(Error::Violates {
            constraint: "S must not contain duplicates",
            witness: format!("{} elements, {} distinct", s.len(), set.len()),
        });
    }
    for x in s {
        if x.coords2()[p] == 0 {
            return Err(Error::Violates {
                constraint: "S must avoid the hyperplane x_p = 0",
                witness: x.to_string(),
            });
        }
        let mut flipped = x.coords2().to_vec();
        flipped[p] = -flipped[p];
        let gx = Weight::from_coords2(flipped);
        if !set.contains(&gx) {
            return Err(Error::Violates {
                constraint: "S must be closed under the sign flip of x_p",
                witness: x.to_string(),
            });
        }
    }
    Ok(s.len() as u64 / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use crate::weightset::weight_system;
    use alloc::vec;

    #[test]
    fn span_of_three_spin_shifts_is_coordinate_plane() {
        // In B_4 the vectors phi_4 - 2 eps_j (j = 1, 2, 3) span {x_4 = 0}.
        let rs = RootSystem::new(Family::B, 4).unwrap();
        let phi = &rs.fundamental_weights()[2];
        let omega: Vec<Weight> = (0..3)
            .map(|j| phi.minus(&Weight::epsilon(4, j).times(2)))
            .collect();
        let h = span_hyperplane(&omega).unwrap();
        assert_eq!(h.normal(), &[0, 0, 0, 1]);
    }

    #[test]
    fn span_rank_error_reports_actual_rank() {
        let v = Weight::epsilon(4, 0);
        let err = span_hyperplane(&[v.clone(), v.times(3)]).unwrap_err();
        assert_eq!(
            err,
            Error::SpanRank {
                expected: 3,
                actual: 1
            }
        );
    }

    #[test]
    fn general_span_normal() {
        // Vectors c eps_1 - 3 eps_j + phi_r in C_4 (c = 0) span the
        // hyperplane (r - 4) x_1 = (c + 1)(x_2 + ... + x_r), i.e. here
        // 0 = x_2 + x_3 + x_4.
        let rs = RootSystem::new(Family::C, 4).unwrap();
        let phi = &rs.fundamental_weights()[3];
        let omega: Vec<Weight> = (1..4)
            .map(|j| phi.minus(&Weight::epsilon(4, j).times(3)))
            .collect();
        let h = span_hyperplane(&omega).unwrap();
        assert_eq!(h.normal(), &[0, 1, 1, 1]);
    }

    #[test]
    fn roots_off_c3_alpha1_perp() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        let h = Hyperplane::from_normal(vec![1, -1, 0]).unwrap();
        assert_eq!(roots_off(&rs, &h), 14);
    }

    #[test]
    fn roots_off_b3_alpha1_perp() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let h = Hyperplane::from_normal(vec![1, -1, 0]).unwrap();
        assert_eq!(roots_off(&rs, &h), 14);
    }

    #[test]
    fn roots_split_d4_sum_zero() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let h = Hyperplane::from_normal(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(roots_off(&rs, &h), 12);
        assert_eq!(count_off(rs.roots(), &h) + 12, rs.roots().len() as u64);
    }

    #[test]
    fn sxa_empty_subset_is_zero() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let lambda = rs.weight_from_fw(&[1, 0, 1, 0]);
        let ws = weight_system(&rs, &lambda).unwrap();
        let h = Hyperplane::from_normal(vec![1, 0, 0, 0]).unwrap();
        let alpha = Weight::epsilon(4, 0).plus(&Weight::epsilon(4, 1));
        assert_eq!(sxa_lower_bound(&ws, &h, &alpha, &[]).unwrap(), 0);
    }

    #[test]
    fn sxa_rejects_parallel_pair() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let lambda = rs.weight_from_fw(&[1, 0, 1, 0]);
        let ws = weight_system(&rs, &lambda).unwrap();
        let h = Hyperplane::from_normal(vec![1, 0, 0, 0]).unwrap();
        let alpha = Weight::epsilon(4, 0).plus(&Weight::epsilon(4, 1));
        // phi_4 and phi_4 - alpha differ by exactly alpha.
        let phi4 = rs.fundamental_weights()[3].clone();
        let other = phi4.minus(&alpha);
        let err = sxa_lower_bound(&ws, &h, &alpha, &[phi4, other]).unwrap_err();
        assert!(matches!(err, Error::SubsetPair { .. }));
    }

    #[test]
    fn gamma_bound_checks_closure() {
        let h = Hyperplane::from_normal(vec![1, 2, 0]).unwrap();
        let a = Weight::from_coords2(vec![2, 2, 0]);
        let b = Weight::from_coords2(vec![-2, 2, 0]);
        assert_eq!(gamma_half_bound(&[a.clone(), b.clone()], 0, &h).unwrap(), 1);
        // Not closed under the flip.
        assert!(gamma_half_bound(core::slice::from_ref(&a), 0, &h).is_err());
        // Element on the coordinate hyperplane.
        let c = Weight::from_coords2(vec![0, 2, 2]);
        assert!(gamma_half_bound(&[c], 0, &h).is_err());
        // eps_p inside H.
        assert!(gamma_half_bound(&[a, b], 2, &h).is_err());
    }

    #[test]
    fn hyperplane_parse_forms() {
        let rs = RootSystem::new(Family::B, 4).unwrap();
        let h1 = Hyperplane::parse("normal:2,-2,2,-2", &rs).unwrap();
        assert_eq!(h1.normal(), &[1, -1, 1, -1]);
        let h2 = Hyperplane::parse("normal:1/2,-1/2,1/2,-1/2", &rs).unwrap();
        assert_eq!(h1, h2);
        let h3 = Hyperplane::parse(
            "span:1/2,-3/2,1/2,1/2;1/2,1/2,-3/2,1/2;1/2,1/2,1/2,-3/2",
            &rs,
        )
        .unwrap();
        assert_eq!(h3.normal(), &[1, 1, 1, 1]);
        assert!(Hyperplane::parse("x:1", &rs).is_err());
        assert!(Hyperplane::parse("normal:0,0,0,0", &rs).is_err());
    }
}
