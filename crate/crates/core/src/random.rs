//! Random configurations for property tests and benchmarks.

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::{AngleId, Configuration};
use crate::seq::{check_type_s, SequenceIndex};

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub max_angles: usize,
    pub max_degree: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_angles: 12, max_degree: 6 }
    }
}

fn power(perm: &[usize], k: usize) -> Vec<usize> {
    (0..perm.len())
        .map(|mut e| {
            for _ in 0..k {
                e = perm[e];
            }
            e
        })
        .collect()
}

/// Common refinement of `labels` and all of its images under powers of `sigma`.
fn meet_invariant(labels: &[usize], sigma: &[usize]) -> Vec<usize> {
    let n = labels.len();
    let mut keys: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut s = (0..n).collect::<Vec<_>>();
    for _ in 0..n.max(1) {
        for e in 0..n {
            keys[e].push(labels[s[e]]);
        }
        s = s.iter().map(|&x| sigma[x]).collect();
    }
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter().map(|k| distinct.binary_search(k).unwrap()).collect()
}

/// Finest common coarsening of `labels` and all of its images under `sigma`.
fn join_invariant(labels: &[usize], sigma: &[usize]) -> Vec<usize> {
    let n = labels.len();
    let mut uf = UnionFind::new(n);
    let mut first = vec![usize::MAX; n];
    for e in 0..n {
        if first[labels[e]] == usize::MAX {
            first[labels[e]] = e;
        }
        uf.union(e, first[labels[e]]);
    }
    loop {
        let mut changed = false;
        for e in 0..n {
            let r = uf.find(e);
            changed |= uf.union(sigma[e], sigma[r]);
        }
        if !changed {
            break;
        }
    }
    (0..n).map(|e| uf.find(e)).collect()
}

/// A structurally valid configuration satisfying (f1)–(f5); (f6) may fail.
pub fn random_candidate<R: Rng>(rng: &mut R, params: RandomParams) -> Configuration {
    let n = rng.gen_range(1..=params.max_angles.max(1));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut degree = vec![0; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut e = perm[start];
        while e != start {
            seen[e] = true;
            orbit.push(e);
            e = perm[e];
        }
        let size = orbit.len();
        let d = if size <= params.max_degree && rng.gen_bool(0.5) {
            size * rng.gen_range(1..=params.max_degree / size)
        } else {
            rng.gen_range(1..=params.max_degree)
        };
        for e in orbit {
            degree[e] = d;
        }
    }
    let sigma: Vec<usize> = (0..n).map(|e| power(&perm, degree[e])[e]).collect();

    let k = rng.gen_range(1..=n);
    let p0: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let polygons = if rng.gen_bool(0.5) { meet_invariant(&p0, &sigma) } else { join_invariant(&p0, &sigma) };

    let blocks = if rng.gen_bool(0.4) {
        (0..n).collect()
    } else {
        let coarse: Vec<usize> = (0..n).map(|e| polygons[e] * n + polygons[perm[e]]).collect();
        let k = rng.gen_range(1..=n);
        let r0: Vec<usize> = (0..n).map(|e| coarse[e] * n + rng.gen_range(0..k)).collect();
        meet_invariant(&r0, &sigma)
    };

    let names = (0..n).map(|i| AngleId::new(format!("a{i:02}")).unwrap()).collect();
    Configuration::from_indices(names, perm, &polygons, &blocks, degree)
}

/// A configuration satisfying (f1)–(f6).
pub fn random_fbc<R: Rng>(rng: &mut R, params: RandomParams) -> Configuration {
    loop {
        let c = random_candidate(rng, params);
        if c.validate().all_hold() {
            return c;
        }
    }
}

/// A configuration of type S.
pub fn random_type_s<R: Rng>(rng: &mut R, params: RandomParams) -> Configuration {
    loop {
        let c = random_fbc(rng, params);
        if check_type_s(&c, &SequenceIndex::new(&c)).is_ok() {
            return c;
        }
    }
}

/// A Brauer configuration: trivial `L`, integral f-degree, polygons of at
/// least two angles, each containing an angle of degree above 1. Degrees are
/// multiples of orbit sizes, so an orbit longer than `max_degree` gets its size.
pub fn random_bc<R: Rng>(rng: &mut R, params: RandomParams) -> Configuration {
    loop {
        let n = rng.gen_range(2..=params.max_angles.max(2));
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut degree = vec![0; n];
        for start in 0..n {
            if degree[start] != 0 {
                continue;
            }
            let mut orbit = vec![start];
            let mut e = perm[start];
            while e != start {
                orbit.push(e);
                e = perm[e];
            }
            let size = orbit.len();
            let d = size * rng.gen_range(1..=(params.max_degree / size).max(1));
            for e in orbit {
                degree[e] = d;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut polygons = vec![0; n];
        let mut label = 0;
        let mut i = 0;
        while i < n {
            let remaining = n - i;
            let size = if remaining < 4 { remaining } else { rng.gen_range(2..=(remaining - 2).min(4)) };
            for &e in &order[i..i + size] {
                polygons[e] = label;
            }
            label += 1;
            i += size;
        }
        let blocks: Vec<usize> = (0..n).collect();
        let names = (0..n).map(|i| AngleId::new(format!("a{i:02}")).unwrap()).collect();
        let c = Configuration::from_indices(names, perm, &polygons, &blocks, degree);
        let condition_7 = c.polygons().iter().all(|p| p.iter().any(|&e| c.degree(e) > 1));
        if condition_7 && c.validate().all_hold() {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn candidates_satisfy_f1_to_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let c = random_candidate(&mut rng, RandomParams::default());
            let r = c.validate();
            assert!(r.violations.iter().all(|v| v.axiom == crate::config::Axiom::F6), "{r:?}");
        }
    }

    #[test]
    fn brauer_configurations_classify_as_bc() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = random_bc(&mut rng, RandomParams::default());
            assert!(crate::classify::classify(&c).is_bc);
        }
    }
}
