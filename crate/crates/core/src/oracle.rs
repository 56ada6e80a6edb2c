//! Brute-force ground truth for small instances, and random instance generation.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{evaluate_cost, Cost, Instance, Permutation};

pub const DEFAULT_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub optimum: Cost,
    /// Lexicographically smallest permutation attaining `optimum`.
    pub argmin: Permutation,
    /// Number of permutations evaluated; always `n!`.
    pub explored: u64,
}

/// Advances `v` to the next permutation in lexicographic order.
/// Returns `false` (leaving `v` untouched) when `v` is the last one.
fn next_lexicographic(v: &mut [usize]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let succ = v.iter().rposition(|&x| x > v[pivot]).expect("successor exists");
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

/// Evaluates every permutation of `0..n` in lexicographic order.
pub fn exhaustive_optimum(inst: &Instance, limit: usize) -> Result<OracleResult> {
    let n = inst.size();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let mut current = Permutation::identity(n);
    let mut best = (evaluate_cost(inst, &current)?, current.clone());
    let mut explored = 1u64;
    let mut buf: Vec<usize> = current.as_slice().to_vec();
    while next_lexicographic(&mut buf) {
        current = Permutation::from_vec_unchecked(buf.clone());
        explored += 1;
        let cost = evaluate_cost(inst, &current)?;
        // Strict comparison keeps the first (smallest) optimal permutation.
        if cost < best.0 {
            best = (cost, current.clone());
        }
    }
    Ok(OracleResult {
        optimum: best.0,
        argmin: best.1,
        explored,
    })
}

/// Random instance with entries uniform in `0..=max_entry`.
///
/// With `symmetric` the upper triangle is mirrored into the lower one; with
/// `zero_diagonal` both diagonals are zero.
pub fn random_instance<R: Rng + ?Sized>(
    n: usize,
    max_entry: i64,
    symmetric: bool,
    zero_diagonal: bool,
    rng: &mut R,
) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidInstance("size must be at least 1".into()));
    }
    if max_entry < 0 {
        return Err(Error::InvalidInstance(format!("max_entry {max_entry} is negative")));
    }
    let mut matrix = || {
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                if zero_diagonal && i == k {
                    continue;
                }
                if symmetric && k < i {
                    m[i * n + k] = m[k * n + i];
                } else {
                    m[i * n + k] = rng.gen_range(0..=max_entry);
                }
            }
        }
        m
    };
    let flow = matrix();
    let dist = matrix();
    Instance::new(format!("random{n}"), n, flow, dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lexicographic_successor() {
        let mut v = vec![0, 1, 2];
        let mut all = vec![v.clone()];
        while next_lexicographic(&mut v) {
            all.push(v.clone());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn single_facility() {
        let inst = Instance::new("one", 1, vec![3], vec![5]).unwrap();
        let res = exhaustive_optimum(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(res.optimum.get(), 15);
        assert_eq!(res.argmin, Permutation::identity(1));
        assert_eq!(res.explored, 1);
    }

    #[test]
    fn two_facilities_tie() {
        let inst = Instance::from_rows("two", &[vec![0, 1], vec![1, 0]], &[vec![0, 3], vec![3, 0]]).unwrap();
        let res = exhaustive_optimum(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(res.optimum.get(), 6);
        assert_eq!(res.argmin.as_slice(), &[0, 1]);
        assert_eq!(res.explored, 2);
    }

    #[test]
    fn refuses_above_limit() {
        let inst = Instance::new("big", 4, vec![0; 16], vec![0; 16]).unwrap();
        assert!(matches!(
            exhaustive_optimum(&inst, 3),
            Err(Error::OracleLimit { n: 4, limit: 3 })
        ));
    }

    #[test]
    fn random_instance_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let zero = random_instance(5, 0, false, false, &mut rng).unwrap();
        assert!(zero.flow_matrix().iter().chain(zero.dist_matrix()).all(|&v| v == 0));

        let sym = random_instance(6, 50, true, true, &mut rng).unwrap();
        for i in 0..6 {
            assert_eq!(sym.flow(i, i), 0);
            assert_eq!(sym.dist(i, i), 0);
            for k in 0..6 {
                assert_eq!(sym.flow(i, k), sym.flow(k, i));
                assert_eq!(sym.dist(i, k), sym.dist(k, i));
                assert!((0..=50).contains(&sym.flow(i, k)));
            }
        }

        let a = random_instance(4, 9, false, false, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        let b = random_instance(4, 9, false, false, &mut ChaCha8Rng::seed_from_u64(77)).unwrap();
        assert_eq!(a, b);

        assert!(random_instance(0, 3, false, false, &mut rng).is_err());
        assert!(random_instance(3, -1, false, false, &mut rng).is_err());
    }
}
