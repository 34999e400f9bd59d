//! Seeded randomized checks that the two counting estimators never exceed
//! the true excision counts.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use weylcert_core::excision::{self, Hyperplane};
use weylcert_core::rootsys::{Family, RootSystem, Weight};
use weylcert_core::weightset::weight_system;

fn random_system(rng: &mut ChaCha8Rng) -> RootSystem {
    let family = *[Family::B, Family::C, Family::D].choose(rng).unwrap();
    let rank = rng.gen_range(family.min_rank()..=5);
    RootSystem::new(family, rank).unwrap()
}

fn random_dominant(rng: &mut ChaCha8Rng, rs: &RootSystem) -> Weight {
    loop {
        let fw: Vec<i64> = (0..rs.rank()).map(|_| rng.gen_range(0..=1)).collect();
        if fw.iter().any(|&c| c > 0) {
            return rs.weight_from_fw(&fw);
        }
    }
}

fn random_normal(rng: &mut ChaCha8Rng, rank: usize) -> Vec<i64> {
    loop {
        let n: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
        if n.iter().any(|&c| c != 0) {
            return n;
        }
    }
}

#[test]
fn sxa_bound_never_exceeds_true_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ea1);
    let mut checked = 0;
    while checked < 200 {
        let rs = random_system(&mut rng);
        let lambda = random_dominant(&mut rng, &rs);
        let ws = weight_system(&rs, &lambda).unwrap();
        let h = Hyperplane::from_normal(random_normal(&mut rng, rs.rank())).unwrap();
        let alpha = rs.roots().choose(&mut rng).unwrap().clone();
        if h.contains(&alpha) {
            continue;
        }
        // Greedily build a subset whose pairwise differences avoid the line
        // of alpha.
        let mut pool: Vec<Weight> = ws.support().to_vec();
        pool.shuffle(&mut rng);
        let take = rng.gen_range(1..=8.min(pool.len()));
        let mut k: Vec<Weight> = Vec::new();
        for x in pool {
            if k.len() == take {
                break;
            }
            let clash = k.iter().any(|y| {
                let d = x.minus(y);
                !d.is_zero() && {
                    // Parallel to alpha?
                    let dc = d.coords2();
                    let ac = alpha.coords2();
                    (0..dc.len()).all(|i| {
                        (0..dc.len()).all(|j| dc[i] * ac[j] == dc[j] * ac[i])
                    })
                }
            });
            if !clash {
                k.push(x);
            }
        }
        let bound = excision::sxa_lower_bound(&ws, &h, &alpha, &k).unwrap();
        let off = excision::weights_off(&ws, &h);
        assert!(
            bound <= off.set_count as i64,
            "sxa bound {bound} beat the set count {} for {}{} lambda {}",
            off.set_count,
            rs.family(),
            rs.rank(),
            ws.lambda(),
        );
        assert!(bound <= off.multiset_count as i64);
        checked += 1;
    }
}

#[test]
fn gamma_half_bound_never_exceeds_true_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a77a);
    let mut checked = 0;
    while checked < 200 {
        let rank = rng.gen_range(2..=5);
        let p = rng.gen_range(0..rank);
        let normal = random_normal(&mut rng, rank);
        if normal[p] == 0 {
            continue;
        }
        let h = Hyperplane::from_normal(normal).unwrap();
        // A random finite set, closed under the sign flip of coordinate p
        // and avoiding x_p = 0.
        let mut s: Vec<Weight> = Vec::new();
        for _ in 0..rng.gen_range(1..=20) {
            let mut c2: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4i64..=4)).collect();
            if c2[p] == 0 {
                c2[p] = 1;
            }
            let w = Weight::from_coords2(c2.clone());
            c2[p] = -c2[p];
            let flipped = Weight::from_coords2(c2);
            if !s.contains(&w) {
                s.push(w);
            }
            if !s.contains(&flipped) {
                s.push(flipped);
            }
        }
        let bound = excision::gamma_half_bound(&s, p, &h).unwrap();
        let true_count = excision::count_off(&s, &h);
        assert!(
            bound <= true_count,
            "gamma bound {bound} beat the true count {true_count}"
        );
        checked += 1;
    }
}
