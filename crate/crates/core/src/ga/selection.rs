//! Fitness-proportionate (roulette wheel) selection for a minimization objective.
//!
//! Raw costs cannot be used as fitness directly: larger costs would be picked
//! more often. Each cost is mapped to `max + min - cost`, which reverses the
//! order while keeping the weights proportional to a linear fitness, and the
//! result is normalized to sum to one.

use rand::Rng;

use super::Chromosome;
use crate::error::{Error, Result};
use crate::instance::Cost;

/// Normalized selection probabilities for `costs`.
///
/// Lower cost gets strictly higher weight. If every cost is equal the weights
/// are uniform. A chromosome whose cost equals the maximum gets weight zero
/// only when the minimum cost is zero.
pub fn selection_weights(costs: &[Cost]) -> Result<Vec<f64>> {
    let min = costs.iter().min().ok_or(Error::EmptyCosts)?.get();
    let max = costs.iter().max().ok_or(Error::EmptyCosts)?.get();
    let len = costs.len() as f64;
    if min == max {
        return Ok(vec![1.0 / len; costs.len()]);
    }
    let raw: Vec<f64> = costs
        .iter()
        .map(|c| (i128::from(max) + i128::from(min) - i128::from(c.get())) as f64)
        .collect();
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

/// Cumulative distribution over population indices.
#[derive(Debug, Clone)]
pub struct RouletteWheel {
    cumulative: Vec<f64>,
}

impl RouletteWheel {
    pub fn new(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyCosts);
        }
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(weights.len());
        for &w in weights {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidConfig(format!("invalid selection weight {w}")));
            }
            acc += w;
            cumulative.push(acc);
        }
        if acc <= 0.0 {
            return Err(Error::InvalidConfig("selection weights sum to zero".into()));
        }
        Ok(RouletteWheel { cumulative })
    }

    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    /// One spin: a single uniform draw, mapped to the first slot whose
    /// cumulative weight exceeds it. Zero-weight slots are never chosen.
    pub fn spin<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("wheel is non-empty");
        let u = rng.gen::<f64>() * total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

/// Draws one chromosome with probability given by `weights`.
pub fn roulette_select<'a, R: Rng + ?Sized>(
    population: &'a [Chromosome],
    weights: &[f64],
    rng: &mut R,
) -> Result<&'a Chromosome> {
    if population.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: population.len(),
            right: weights.len(),
        });
    }
    let wheel = RouletteWheel::new(weights)?;
    Ok(&population[wheel.spin(rng)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Permutation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn costs(v: &[i64]) -> Vec<Cost> {
        v.iter().map(|&c| Cost::new(c).unwrap()).collect()
    }

    #[test]
    fn equal_costs_are_uniform() {
        let w = selection_weights(&costs(&[7, 7, 7, 7])).unwrap();
        assert_eq!(w, vec![0.25; 4]);
    }

    #[test]
    fn two_cost_ratio() {
        // raw weights 30 and 10
        let w = selection_weights(&costs(&[10, 30])).unwrap();
        assert!((w[0] - 0.75).abs() < 1e-15);
        assert!((w[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn empty_costs_rejected() {
        assert!(matches!(selection_weights(&[]), Err(Error::EmptyCosts)));
    }

    #[test]
    fn extreme_costs_do_not_overflow() {
        let w = selection_weights(&costs(&[i64::MAX, i64::MAX - 1, 0])).unwrap();
        assert!(w[2] > w[1] && w[1] > w[0]);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_element_always_selected() {
        let pop = vec![Chromosome::from_parts(Permutation::identity(2), Cost::ZERO)];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(std::ptr::eq(roulette_select(&pop, &[1.0], &mut rng).unwrap(), &pop[0]));
        }
    }

    #[test]
    fn degenerate_wheel() {
        let wheel = RouletteWheel::new(&[1.0, 0.0, 0.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!((0..10_000).all(|_| wheel.spin(&mut rng) == 0));
        let wheel = RouletteWheel::new(&[0.0, 0.0, 1.0]).unwrap();
        assert!((0..10_000).all(|_| wheel.spin(&mut rng) == 2));
    }

    #[test]
    fn length_mismatch() {
        let pop = vec![Chromosome::from_parts(Permutation::identity(2), Cost::ZERO)];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            roulette_select(&pop, &[0.5, 0.5], &mut rng),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(RouletteWheel::new(&[]).is_err());
        assert!(RouletteWheel::new(&[0.0, 0.0]).is_err());
        assert!(RouletteWheel::new(&[0.5, -0.1]).is_err());
        assert!(RouletteWheel::new(&[f64::NAN]).is_err());
    }
}
