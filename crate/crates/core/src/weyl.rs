//! The Weyl group action: signed permutations for B and C, even-sign signed
//! permutations for D. Orbits are enumerated by closure under simple
//! reflections, never by walking the whole group.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::rootsys::{pairing, Family, RootSystem, Weight};
use crate::{Error, Result};

/// A Weyl orbit together with its dominant representative.
#[derive(Debug, Clone)]
pub struct OrbitSet<'a> {
    rs: &'a RootSystem,
    dominant: Weight,
    elements: Vec<Weight>,
    normalized_input: bool,
}

impl<'a> OrbitSet<'a> {
    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn dominant(&self) -> &Weight {
        &self.dominant
    }

    /// Orbit elements in lexicographic order of doubled coordinates.
    pub fn elements(&self) -> &[Weight] {
        &self.elements
    }

    pub fn len(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    /// True when the input weight was not dominant and had to be normalized.
    pub fn normalized_input(&self) -> bool {
        self.normalized_input
    }
}

/// The canonical chamber representative of any real vector under the group
/// of (even for D) signed permutations. No lattice check.
pub(crate) fn dominant_form(family: Family, mu: &Weight) -> Weight {
    let mut c2: Vec<i64> = mu.coords2().to_vec();
    let negatives = c2.iter().filter(|&&c| c < 0).count();
    for c in c2.iter_mut() {
        *c = c.abs();
    }
    c2.sort_unstable_by(|a, b| b.cmp(a));
    if family == Family::D {
        let has_zero = c2.last() == Some(&0);
        if negatives % 2 == 1 && !has_zero {
            let last = c2.len() - 1;
            c2[last] = -c2[last];
        }
    }
    Weight::from_coords2(c2)
}

/// The unique element of the orbit of `mu` inside the closed chamber.
pub fn dominant_representative(rs: &RootSystem, mu: &Weight) -> Result<Weight> {
    if mu.rank() != rs.rank() {
        return Err(Error::WrongRank {
            expected: rs.rank(),
            actual: mu.rank(),
        });
    }
    if !rs.in_weight_lattice(mu) {
        return Err(Error::NotInWeightLattice);
    }
    Ok(dominant_form(rs.family(), mu))
}

/// The reflection `s_alpha(mu) = mu - (mu, alpha_check) alpha` for a root
/// `alpha` of the system.
pub fn reflect(rs: &RootSystem, alpha: &Weight, mu: &Weight) -> Result<Weight> {
    if !rs.is_root(alpha) {
        return Err(Error::NotARoot);
    }
    let p = pairing(mu, alpha)?;
    if !p.is_integer() {
        return Err(Error::NotInWeightLattice);
    }
    let k = p.to_integer() as i64;
    Ok(mu.minus(&alpha.times(k)))
}

/// Reflection in a root known to belong to the system, for weights known to
/// lie in P.
pub(crate) fn reflect_unchecked(alpha: &Weight, mu: &Weight) -> Weight {
    let k = crate::rootsys::pairing_int(mu, alpha);
    mu.minus(&alpha.times(k))
}

/// The full Weyl orbit of `lambda`, computed by breadth-first closure under
/// the simple reflections. Non-dominant input is normalized and flagged.
pub fn orbit<'a>(rs: &'a RootSystem, lambda: &Weight) -> Result<OrbitSet<'a>> {
    let dominant = dominant_representative(rs, lambda)?;
    let normalized_input = &dominant != lambda;
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut frontier: Vec<Weight> = Vec::new();
    seen.insert(dominant.clone());
    frontier.push(dominant.clone());
    while let Some(w) = frontier.pop() {
        for alpha in rs.simple_roots() {
            let image = reflect_unchecked(alpha, &w);
            if !seen.contains(&image) {
                seen.insert(image.clone());
                frontier.push(image);
            }
        }
    }
    Ok(OrbitSet {
        rs,
        dominant,
        elements: seen.into_iter().collect(),
        normalized_input,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn dominant_rep_b3_spinor() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let mu = Weight::from_coords2(vec![-1, 1, -1]);
        let dom = dominant_representative(&rs, &mu).unwrap();
        assert_eq!(dom, Weight::from_coords2(vec![1, 1, 1]));
    }

    #[test]
    fn dominant_rep_d4_pairs_of_flips() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let mu = Weight::from_coords2(vec![2, -2, 0, 0]);
        let dom = dominant_representative(&rs, &mu).unwrap();
        assert_eq!(dom, Weight::from_coords2(vec![2, 2, 0, 0]));
        // An odd number of flips with no zero coordinate keeps a negative
        // last coordinate.
        let mu = Weight::from_coords2(vec![-1, 1, 1, 1]);
        let dom = dominant_representative(&rs, &mu).unwrap();
        assert_eq!(dom, Weight::from_coords2(vec![1, 1, 1, -1]));
    }

    #[test]
    fn dominant_rep_is_idempotent() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        let mu = rs.weight_from_fw(&[1, 1, 0]);
        let dom = dominant_representative(&rs, &mu).unwrap();
        assert_eq!(dom, mu);
    }

    #[test]
    fn dominant_rep_rejects_off_lattice() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let mu = Weight::from_coords2(vec![1, 2, 1]);
        assert_eq!(
            dominant_representative(&rs, &mu),
            Err(Error::NotInWeightLattice)
        );
    }

    #[test]
    fn orbit_sizes() {
        for r in 2..=6 {
            let rs = RootSystem::new(Family::B, r).unwrap();
            let spin = rs.fundamental_weights()[r - 1].clone();
            assert_eq!(orbit(&rs, &spin).unwrap().len(), 1 << r);
        }
        for r in 4..=6 {
            let rs = RootSystem::new(Family::D, r).unwrap();
            let half_spin = rs.fundamental_weights()[r - 2].clone();
            assert_eq!(orbit(&rs, &half_spin).unwrap().len(), 1 << (r - 1));
        }
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let lambda = d4.weight_from_fw(&[1, 0, 1, 0]);
        assert_eq!(orbit(&d4, &lambda).unwrap().len(), 32);
    }

    #[test]
    fn orbit_normalizes_and_flags() {
        let rs = RootSystem::new(Family::B, 3).unwrap();
        let mu = Weight::from_coords2(vec![-2, 0, 2]);
        let orb = orbit(&rs, &mu).unwrap();
        assert!(orb.normalized_input());
        assert_eq!(orb.dominant(), &Weight::from_coords2(vec![2, 2, 0]));
        let orb2 = orbit(&rs, orb.dominant()).unwrap();
        assert!(!orb2.normalized_input());
        assert_eq!(orb.elements(), orb2.elements());
    }

    #[test]
    fn reflect_basics() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        let alpha = rs.simple_roots()[0].clone();
        assert_eq!(reflect(&rs, &alpha, &alpha).unwrap(), alpha.negated());
        // Fixed point when the pairing vanishes.
        let phi3 = rs.fundamental_weights()[2].clone();
        assert_eq!(reflect(&rs, &rs.simple_roots()[1], &phi3).unwrap(), phi3);
        // s_{alpha_1}(phi_1) = phi_1 - alpha_1.
        let phi1 = rs.fundamental_weights()[0].clone();
        assert_eq!(
            reflect(&rs, &alpha, &phi1).unwrap(),
            phi1.minus(&alpha)
        );
        // Not a root.
        let not_root = Weight::from_coords2(vec![2, 2, 2]);
        assert_eq!(reflect(&rs, &not_root, &phi1), Err(Error::NotARoot));
    }

    #[test]
    fn orbit_closed_under_all_reflections() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let orb = orbit(&rs, &rs.weight_from_fw(&[0, 1, 0, 0])).unwrap();
        for w in orb.elements() {
            for alpha in rs.roots() {
                assert!(orb.contains(&reflect_unchecked(alpha, w)));
            }
        }
    }
}
