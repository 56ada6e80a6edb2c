//! Variation operators on permutation chromosomes.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Chromosome;
use crate::error::{Error, Result};
use crate::instance::{evaluate_cost, Instance, Permutation};

/// Uniformly random permutation of `0..n` (Fisher-Yates).
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut assign: Vec<usize> = (0..n).collect();
    assign.shuffle(rng);
    Permutation::from_vec_unchecked(assign)
}

/// `size` independent uniformly random chromosomes with cached costs.
pub fn init_population<R: Rng + ?Sized>(
    inst: &Instance,
    size: usize,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    if size < 2 {
        return Err(Error::PopulationTooSmall(size));
    }
    (0..size)
        .map(|_| {
            let perm = random_permutation(inst.size(), rng);
            let cost = evaluate_cost(inst, &perm)?;
            Ok(Chromosome::from_parts(perm, cost))
        })
        .collect()
}

fn fill_around(fixed: &[usize], order: &[usize], cut1: usize, cut2: usize) -> Vec<usize> {
    let n = fixed.len();
    let mut in_segment = vec![false; n];
    for &g in &fixed[cut1..cut2] {
        in_segment[g] = true;
    }
    let mut donors = order.iter().copied().filter(|&g| !in_segment[g]);
    (0..n)
        .map(|pos| {
            if (cut1..cut2).contains(&pos) {
                fixed[pos]
            } else {
                // Exactly n - (cut2 - cut1) donors exist.
                donors.next().expect("donor gene available")
            }
        })
        .collect()
}

/// Two-point order crossover.
///
/// Child 1 keeps `p1[cut1..cut2]` in place and fills the remaining positions,
/// left to right, with the missing genes in the order they occur in `p2`.
/// Child 2 is the mirror image.
pub fn order_crossover_two_point(
    p1: &Permutation,
    p2: &Permutation,
    cut1: usize,
    cut2: usize,
) -> Result<(Permutation, Permutation)> {
    let n = p1.len();
    if p2.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: p2.len(),
        });
    }
    if cut1 > cut2 || cut2 > n {
        return Err(Error::InvalidCuts { cut1, cut2, n });
    }
    let (a, b) = (p1.as_slice(), p2.as_slice());
    Ok((
        Permutation::from_vec_unchecked(fill_around(a, b, cut1, cut2)),
        Permutation::from_vec_unchecked(fill_around(b, a, cut1, cut2)),
    ))
}

/// Two cut points drawn uniformly from `0..=n`, returned in order.
pub fn sample_cuts<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let x = rng.gen_range(0..=n);
    let y = rng.gen_range(0..=n);
    (x.min(y), x.max(y))
}

/// A uniformly random pair of distinct positions, or `None` when `n < 2`.
pub fn sample_swap<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let i = rng.gen_range(0..n);
    let mut k = rng.gen_range(0..n - 1);
    if k >= i {
        k += 1;
    }
    Some((i, k))
}

/// Exchanges two distinct random positions of `p`.
///
/// Returns the mutated permutation and the swapped positions. For `n < 2`
/// nothing can be swapped: `p` comes back unchanged with `None`.
pub fn swap_mutation<R: Rng + ?Sized>(
    p: &Permutation,
    rng: &mut R,
) -> (Permutation, Option<(usize, usize)>) {
    let mut out = p.clone();
    let positions = sample_swap(p.len(), rng);
    if let Some((i, k)) = positions {
        out.swap(i, k);
    }
    (out, positions)
}
