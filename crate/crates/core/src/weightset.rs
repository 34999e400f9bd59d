//! Saturated weight systems: the set of weights of the irreducible module
//! with a given highest weight, together with exact Freudenthal
//! multiplicities, the Weyl dimension, and the orthogonality indicator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::rootsys::{pairing_int, RootSystem, Weight};
use crate::weyl::{self, dominant_form};
use crate::{Error, Result};

/// The saturated weight system of a dominant weight: every weight of the
/// irreducible highest-weight module, with its multiplicity.
#[derive(Debug, Clone)]
pub struct WeightSystem<'a> {
    rs: &'a RootSystem,
    lambda: Weight,
    /// All weights, sorted lexicographically by doubled coordinates.
    support: Vec<Weight>,
    /// Multiplicities parallel to `support`.
    mults: Vec<u64>,
    /// Dominant weights with their multiplicities, by increasing depth.
    dominant_support: Vec<(Weight, u64)>,
    /// The orbit of `lambda` itself, sorted.
    lambda_orbit: Vec<Weight>,
    delta: u32,
}

impl<'a> WeightSystem<'a> {
    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn support(&self) -> &[Weight] {
        &self.support
    }

    /// Multiplicity of `mu`; zero for weights outside the support.
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        match self.support.binary_search(mu) {
            Ok(i) => self.mults[i],
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.support.iter().zip(self.mults.iter().copied())
    }

    /// Number of distinct weights.
    pub fn set_count(&self) -> u64 {
        self.support.len() as u64
    }

    /// Total count with multiplicities; equals the module dimension.
    pub fn multiset_count(&self) -> u64 {
        self.mults.iter().sum()
    }

    pub fn dominant_support(&self) -> &[(Weight, u64)] {
        &self.dominant_support
    }

    /// The extremal orbit `W lambda`, sorted.
    pub fn lambda_orbit(&self) -> &[Weight] {
        &self.lambda_orbit
    }

    /// 1 when the module is orthogonal, 2 otherwise.
    pub fn delta(&self) -> u32 {
        self.delta
    }
}

/// Membership of `mu` in the convex hull of the orbit of `lambda`, decided
/// by the dominance test: the difference of `lambda` and the dominant form
/// of `mu` must be a nonnegative rational combination of simple roots.
pub fn conv_membership(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    if lambda.rank() != rs.rank() || mu.rank() != rs.rank() {
        return false;
    }
    let lam = dominant_form(rs.family(), lambda);
    let dom = dominant_form(rs.family(), mu);
    let diff = lam.minus(&dom);
    rs.simple_root_coefficients(&diff)
        .iter()
        .all(|c| *c >= crate::linalg::rat(0))
}

/// Enumerates the dominant weights of the support: dominant lattice points
/// of the coset `lambda + Q` inside the hull, found by exhausting the
/// coordinate box `|x_i| <= lambda_1`.
fn dominant_support_weights(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let r = rs.rank();
    let max2 = lambda.coords2().iter().map(|c| c.abs()).max().unwrap_or(0);
    let parity = lambda.coords2()[0].rem_euclid(2);
    let mut found: Vec<Weight> = Vec::new();
    let mut stack: Vec<i64> = Vec::with_capacity(r);

    fn descend(
        rs: &RootSystem,
        lambda: &Weight,
        stack: &mut Vec<i64>,
        found: &mut Vec<Weight>,
        bound: i64,
        parity: i64,
        r: usize,
    ) {
        if stack.len() == r {
            let mu = Weight::from_coords2(stack.clone());
            let diff = lambda.minus(&mu);
            let coeffs = rs.simple_root_coefficients(&diff);
            // In the coset and in the hull: integral nonnegative coefficients.
            if coeffs.iter().all(|c| c.is_integer() && *c >= crate::linalg::rat(0)) {
                found.push(mu);
            }
            return;
        }
        let is_last = stack.len() == r - 1;
        let upper = stack.last().copied().unwrap_or(bound);
        let mut c = if parity == 0 { 0 } else { 1 };
        while c <= upper {
            stack.push(c);
            descend(rs, lambda, stack, found, bound, parity, r);
            stack.pop();
            // Type D admits a negative last coordinate.
            if is_last && c != 0 && rs.family() == crate::rootsys::Family::D {
                stack.push(-c);
                descend(rs, lambda, stack, found, bound, parity, r);
                stack.pop();
            }
            c += 2;
        }
    }

    descend(rs, lambda, &mut stack, &mut found, max2, parity, r);
    // Sort by increasing depth below lambda so multiplicities can be filled
    // in one pass.
    let depth = |mu: &Weight| -> i64 {
        let coeffs = rs.simple_root_coefficients(&lambda.minus(mu));
        coeffs.iter().map(|c| c.to_integer() as i64).sum()
    };
    found.sort_by_key(|mu| (depth(mu), mu.clone()));
    found
}

/// Builds the full weight system of the irreducible module with highest
/// weight `lambda` (normalized to dominant if necessary).
pub fn weight_system<'a>(rs: &'a RootSystem, lambda: &Weight) -> Result<WeightSystem<'a>> {
    let lambda = weyl::dominant_representative(rs, lambda)?;
    let dominants = dominant_support_weights(rs, &lambda);
    debug_assert_eq!(dominants.first(), Some(&lambda));

    // Freudenthal recursion on dominant representatives, walking downward
    // from lambda. All inner products are computed as quadrupled integers.
    let dom_index: BTreeMap<&Weight, usize> =
        dominants.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let lam_rho = lambda.plus(rs.rho());
    let lam_rho_norm4 = lam_rho.dot4(&lam_rho);
    let mut mults: Vec<u64> = Vec::with_capacity(dominants.len());
    for (idx, mu) in dominants.iter().enumerate() {
        if idx == 0 {
            mults.push(1);
            continue;
        }
        let mut sum: i128 = 0;
        for alpha in rs.positive_roots() {
            let mut nu = mu.plus(alpha);
            loop {
                let dom_nu = dominant_form(rs.family(), &nu);
                match dom_index.get(&dom_nu) {
                    Some(&j) if j < idx => {
                        sum += mults[j] as i128 * nu.dot4(alpha) as i128;
                    }
                    Some(_) => {
                        // Same or deeper dominant weight cannot appear above
                        // mu on a root string inside the support.
                        break;
                    }
                    None => break,
                }
                nu = nu.plus(alpha);
            }
        }
        let mu_rho = mu.plus(rs.rho());
        let denom = (lam_rho_norm4 - mu_rho.dot4(&mu_rho)) as i128;
        debug_assert!(denom > 0);
        let num = 2 * sum;
        assert!(num % denom == 0, "Freudenthal division must be exact");
        mults.push((num / denom) as u64);
    }

    // Expand the dominant data to the full W-invariant support.
    let mut support_map: BTreeMap<Weight, u64> = BTreeMap::new();
    let mut lambda_orbit: Vec<Weight> = Vec::new();
    for (mu, &m) in dominants.iter().zip(&mults) {
        let orb = weyl::orbit(rs, mu)?;
        if mu == &lambda {
            lambda_orbit = orb.elements().to_vec();
        }
        for w in orb.elements() {
            support_map.insert(w.clone(), m);
        }
    }
    let (support, flat_mults): (Vec<Weight>, Vec<u64>) = support_map.into_iter().unzip();

    let delta = if lambda.is_zero() {
        1
    } else {
        delta_indicator(rs, &lambda)?
    };

    Ok(WeightSystem {
        rs,
        lambda: lambda.clone(),
        support,
        mults: flat_mults,
        dominant_support: dominants.into_iter().zip(mults).collect(),
        lambda_orbit,
        delta,
    })
}

/// Multiplicity of `mu` in the irreducible module with highest weight
/// `lambda`; zero exactly off the support.
pub fn freudenthal_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<u64> {
    let ws = weight_system(rs, lambda)?;
    Ok(ws.multiplicity(mu))
}

/// The Weyl dimension formula, as an exact big integer.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    let lambda = weyl::dominant_representative(rs, lambda)?;
    let lam_rho = lambda.plus(rs.rho());
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for alpha in rs.positive_roots() {
        num *= BigUint::from(lam_rho.dot4(alpha) as u64);
        den *= BigUint::from(rs.rho().dot4(alpha) as u64);
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    Ok(num / den)
}

/// The orthogonality indicator: 1 when the irreducible module with highest
/// weight `lambda` is orthogonal (real), 2 otherwise (complex or
/// quaternionic). Self-duality is `-w_0 lambda = lambda`; for self-dual
/// modules the type is decided by the parity of `(lambda, 2 rho_check)`.
pub fn delta_indicator(rs: &RootSystem, lambda: &Weight) -> Result<u32> {
    let lambda = weyl::dominant_representative(rs, lambda)?;
    if lambda.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let minus_w0 = dominant_form(rs.family(), &lambda.negated());
    if minus_w0 != lambda {
        return Ok(2);
    }
    let two_rho_check_pairing: i64 = rs
        .positive_roots()
        .iter()
        .map(|alpha| pairing_int(&lambda, alpha))
        .sum();
    Ok(if two_rho_check_pairing % 2 == 0 { 1 } else { 2 })
}

/// Exact membership flags for the two lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeFlags {
    pub in_p: bool,
    pub in_q: bool,
}

pub fn lattice_membership(rs: &RootSystem, mu: &Weight) -> LatticeFlags {
    LatticeFlags {
        in_p: rs.in_weight_lattice(mu),
        in_q: rs.in_root_lattice(mu),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use alloc::vec;

    #[test]
    fn conv_membership_basics() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let lambda = rs.weight_from_fw(&[0, 1, 0]);
        assert!(conv_membership(&rs, &lambda, &lambda));
        assert!(conv_membership(&rs, &lambda, &Weight::zero(3)));
        assert!(!conv_membership(&rs, &lambda, &lambda.times(2)));
    }

    #[test]
    fn spin_system_is_a_single_orbit() {
        for r in 2..=6 {
            let rs = RootSystem::new(Family::B, r).unwrap();
            let spin = rs.fundamental_weights()[r - 1].clone();
            let ws = weight_system(&rs, &spin).unwrap();
            assert_eq!(ws.set_count(), 1 << r);
            assert_eq!(ws.multiset_count(), 1 << r);
            assert_eq!(ws.support(), ws.lambda_orbit());
        }
    }

    #[test]
    fn vector_plus_spin_counts() {
        // lambda = eps_1 + phi_r: 2^r (r + 1) distinct weights.
        for r in 2..=5 {
            let rs = RootSystem::new(Family::B, r).unwrap();
            let lambda = rs.weight_from_fw([1, 0, 0, 0, 0][..r].to_vec().as_slice());
            let lambda = lambda.plus(&rs.fundamental_weights()[r - 1]);
            let ws = weight_system(&rs, &lambda).unwrap();
            assert_eq!(ws.set_count(), (1u64 << r) * (r as u64 + 1));
        }
    }

    #[test]
    fn two_vectors_plus_spin_counts() {
        for r in 2..=5 {
            let rs = RootSystem::new(Family::B, r).unwrap();
            let mut fw = vec![0i64; r];
            fw[r - 1] = 1;
            if r == 2 {
                fw[1] += 2; // phi_2 + eps_1 + eps_2 = 3 phi_2 has the same shape rule
            } else {
                fw[1] = 1;
            }
            let lambda = rs.weight_from_fw(&fw);
            let ws = weight_system(&rs, &lambda).unwrap();
            let r_u = r as u64;
            let expected = (1u64 << r) * (r_u * (r_u - 1) / 2 + r_u + 1);
            assert_eq!(ws.set_count(), expected, "rank {r}");
        }
    }

    #[test]
    fn freudenthal_b2_adjoint() {
        let rs = RootSystem::new(Family::B, 2).unwrap();
        let adjoint = Weight::from_coords2(vec![2, 2]);
        let ws = weight_system(&rs, &adjoint).unwrap();
        assert_eq!(ws.multiplicity(&Weight::zero(2)), 2);
        assert_eq!(ws.multiset_count(), 10);
        assert_eq!(ws.multiplicity(&adjoint), 1);
        // Wrong coset.
        let spin = rs.fundamental_weights()[1].clone();
        assert_eq!(ws.multiplicity(&spin), 0);
    }

    #[test]
    fn freudenthal_interior_orbit_multiplicity() {
        // lambda = eps_1 + phi_3 in B_3: the spin orbit inside carries
        // multiplicity 3 (dimension 48 = 24 + 3 * 8).
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let lambda = rs.weight_from_fw(&[1, 0, 1]);
        let ws = weight_system(&rs, &lambda).unwrap();
        let phi3 = rs.fundamental_weights()[2].clone();
        assert_eq!(ws.multiplicity(&phi3), 3);
        assert_eq!(ws.multiset_count(), 48);
        assert_eq!(
            weyl_dimension(&rs, &lambda).unwrap(),
            BigUint::from(48u32)
        );
    }

    #[test]
    fn weyl_dimension_examples() {
        let b3 = RootSystem::new(Family::B, 3).unwrap();
        assert_eq!(
            weyl_dimension(&b3, &Weight::zero(3)).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            weyl_dimension(&b3, &b3.fundamental_weights()[2]).unwrap(),
            BigUint::from(8u32)
        );
        let d8 = RootSystem::new(Family::D, 8).unwrap();
        assert_eq!(
            weyl_dimension(&d8, &d8.fundamental_weights()[7]).unwrap(),
            BigUint::from(128u32)
        );
    }

    #[test]
    fn multiplicities_sum_to_dimension() {
        for (family, r, fw) in [
            (Family::B, 3, vec![1, 0, 1]),
            (Family::B, 4, vec![0, 0, 1, 0]),
            (Family::C, 3, vec![0, 0, 1]),
            (Family::C, 4, vec![0, 1, 0, 0]),
            (Family::D, 4, vec![1, 0, 1, 0]),
            (Family::D, 5, vec![0, 0, 1, 0, 0]),
        ] {
            let rs = RootSystem::new(family, r).unwrap();
            let lambda = rs.weight_from_fw(&fw);
            let ws = weight_system(&rs, &lambda).unwrap();
            let dim = weyl_dimension(&rs, &lambda).unwrap();
            assert_eq!(BigUint::from(ws.multiset_count()), dim, "{family}{r}");
        }
    }

    #[test]
    fn delta_rules() {
        // C: delta = 1 exactly on the root lattice.
        for r in 3..=5 {
            let rs = RootSystem::new(Family::C, r).unwrap();
            for i in 0..r {
                let mut fw = vec![0i64; r];
                fw[i] = 1;
                let lambda = rs.weight_from_fw(&fw);
                let expected = if rs.in_root_lattice(&lambda) { 1 } else { 2 };
                assert_eq!(delta_indicator(&rs, &lambda).unwrap(), expected);
            }
        }
        // D spinor classes: delta = 1 iff the rank is divisible by 4.
        for r in 4..=8 {
            let rs = RootSystem::new(Family::D, r).unwrap();
            let lambda = rs.fundamental_weights()[r - 1].clone();
            let expected = if r % 4 == 0 { 1 } else { 2 };
            assert_eq!(delta_indicator(&rs, &lambda).unwrap(), expected, "D{r}");
        }
        // B_2 with lambda in phi_2 + (Q minus 0): quaternionic.
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let lambda = b2.weight_from_fw(&[1, 1]);
        assert_eq!(delta_indicator(&b2, &lambda).unwrap(), 2);
        // The adjoint is always orthogonal.
        let b4 = RootSystem::new(Family::B, 4).unwrap();
        assert_eq!(
            delta_indicator(&b4, &b4.weight_from_fw(&[0, 1, 0, 0])).unwrap(),
            1
        );
        // delta of the zero weight is undefined.
        assert!(delta_indicator(&b2, &Weight::zero(2)).is_err());
    }

    #[test]
    fn lattice_membership_examples() {
        let b4 = RootSystem::new(Family::B, 4).unwrap();
        let spin = b4.fundamental_weights()[3].clone();
        let flags = lattice_membership(&b4, &spin);
        assert!(flags.in_p && !flags.in_q);
        let flags2 = lattice_membership(&b4, &spin.times(2));
        assert!(flags2.in_q);
        for alpha in b4.roots() {
            assert!(lattice_membership(&b4, alpha).in_q);
        }
        let c4 = RootSystem::new(Family::C, 4).unwrap();
        let phi1 = c4.fundamental_weights()[0].clone();
        let flags3 = lattice_membership(&c4, &phi1);
        assert!(flags3.in_p && !flags3.in_q);
    }

    #[test]
    fn trivial_system() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        let ws = weight_system(&rs, &Weight::zero(3)).unwrap();
        assert_eq!(ws.set_count(), 1);
        assert_eq!(ws.multiset_count(), 1);
        assert_eq!(ws.support(), &[Weight::zero(3)]);
    }

    #[test]
    fn interior_orbits_nest_and_avoid_the_extremal_one() {
        // Every orbit inside the support generates a smaller saturated set
        // that stays inside and, when proper, misses the extremal orbit.
        for (family, r, fw) in [
            (Family::B, 3usize, vec![1i64, 0, 1]),
            (Family::C, 3, vec![1, 0, 1]),
            (Family::D, 4, vec![1, 0, 1, 0]),
        ] {
            let rs = RootSystem::new(family, r).unwrap();
            let lambda = rs.weight_from_fw(&fw);
            let ws = weight_system(&rs, &lambda).unwrap();
            for w in ws.lambda_orbit() {
                assert_eq!(ws.multiplicity(w), 1, "extremal weights are free");
            }
            for (mu, _) in ws.dominant_support() {
                let inner = weight_system(&rs, mu).unwrap();
                for w in inner.support() {
                    assert!(ws.multiplicity(w) > 0, "nested support escapes");
                }
                if mu != ws.lambda() {
                    for w in inner.support() {
                        assert!(
                            ws.lambda_orbit().binary_search(w).is_err(),
                            "inner support touched the extremal orbit"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn saturation_along_root_strings() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        let ws = weight_system(&rs, &rs.weight_from_fw(&[1, 0, 1])).unwrap();
        for mu in ws.support() {
            for alpha in rs.roots() {
                let k = pairing_int(mu, alpha);
                for j in 0..=k.abs() {
                    let step = if k >= 0 { j } else { -j };
                    let nu = mu.minus(&alpha.times(step));
                    assert!(ws.multiplicity(&nu) > 0, "string through {mu} broke");
                }
            }
        }
    }
}
