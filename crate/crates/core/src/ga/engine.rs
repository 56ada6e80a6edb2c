use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operators::{init_population, order_crossover_two_point, sample_cuts, sample_swap};
use super::selection::{selection_weights, RouletteWheel};
use super::{Chromosome, GaConfig};
use crate::error::{Error, Result};
use crate::instance::{evaluate_cost, is_bijection, swap_delta, Cost, Instance, Permutation};

/// The generator used for every run. Seeded from [`GaConfig::rng_seed`].
pub type GaRng = ChaCha8Rng;

/// Outcome of [`run`].
///
/// Serialization leaves out `wall_time`, so two runs with the same instance,
/// config and seed serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaResult {
    pub best: Chromosome,
    pub generations_run: u64,
    /// Number of cost computations, full or incremental.
    pub evaluations: u64,
    #[serde(skip)]
    pub wall_time: Duration,
    /// Best-so-far cost after initialization and after each generation.
    pub history: Vec<Cost>,
}

impl GaResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("GaResult serializes")
    }
}

struct Child {
    perm: Permutation,
    cost: Option<Cost>,
}

/// Produces the next generation and the number of cost computations it took.
///
/// Draw order per offspring pair: two roulette spins, the crossover coin,
/// the cut points (only when crossing), then for each child in turn its
/// mutation coin and swap positions (only when mutating).
fn next_generation<R: Rng + ?Sized>(
    inst: &Instance,
    population: &[Chromosome],
    cfg: &GaConfig,
    rng: &mut R,
) -> Result<(Vec<Chromosome>, u64)> {
    let size = population.len();
    if size != cfg.population_size {
        return Err(Error::LengthMismatch {
            left: size,
            right: cfg.population_size,
        });
    }
    if cfg.elitism_count > size {
        return Err(Error::InvalidConfig(format!(
            "elitism_count {} exceeds population_size {size}",
            cfg.elitism_count
        )));
    }

    let mut ranked: Vec<usize> = (0..size).collect();
    ranked.sort_by_key(|&i| (population[i].cost, i));
    let mut elites = ranked[..cfg.elitism_count].to_vec();
    elites.sort_unstable();

    let mut next: Vec<Chromosome> = elites.iter().map(|&i| population[i].clone()).collect();
    let mut evaluations = 0;
    if next.len() == size {
        return Ok((next, evaluations));
    }

    let costs: Vec<Cost> = population.iter().map(|c| c.cost).collect();
    let wheel = RouletteWheel::new(&selection_weights(&costs)?)?;
    let n = inst.size();

    while next.len() < size {
        let a = &population[wheel.spin(rng)];
        let b = &population[wheel.spin(rng)];
        let children = if rng.gen::<f64>() < cfg.crossover_rate {
            let (cut1, cut2) = sample_cuts(n, rng);
            let (c1, c2) = order_crossover_two_point(&a.perm, &b.perm, cut1, cut2)?;
            [
                Child { cost: (c1 == a.perm).then_some(a.cost), perm: c1 },
                Child { cost: (c2 == b.perm).then_some(b.cost), perm: c2 },
            ]
        } else {
            [
                Child { perm: a.perm.clone(), cost: Some(a.cost) },
                Child { perm: b.perm.clone(), cost: Some(b.cost) },
            ]
        };

        for mut child in children {
            if rng.gen::<f64>() < cfg.mutation_rate {
                if let Some((i, k)) = sample_swap(n, rng) {
                    if let Some(cost) = child.cost {
                        child.cost = Some(swap_delta(inst, &child.perm, cost, i, k)?);
                        evaluations += 1;
                    }
                    child.perm.swap(i, k);
                }
            }
            let cost = match child.cost {
                Some(c) => c,
                None => {
                    evaluations += 1;
                    evaluate_cost(inst, &child.perm)?
                }
            };
            debug_assert_eq!(cost, evaluate_cost(inst, &child.perm)?);
            if next.len() < size {
                next.push(Chromosome::from_parts(child.perm, cost));
            }
        }
    }
    Ok((next, evaluations))
}

/// One generation: elites survive unchanged (kept in their original order),
/// the rest are offspring of roulette-selected parents.
pub fn evolve_step<R: Rng + ?Sized>(
    inst: &Instance,
    population: &[Chromosome],
    cfg: &GaConfig,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    next_generation(inst, population, cfg, rng).map(|(pop, _)| pop)
}

fn generation_best(population: &[Chromosome]) -> &Chromosome {
    population
        .iter()
        .min_by_key(|c| c.cost)
        .expect("population is non-empty")
}

fn check_closure(population: &[Chromosome], generation: u64) -> Result<()> {
    let bad = if cfg!(debug_assertions) {
        population.iter().find(|c| !is_bijection(c.perm.as_slice()))
    } else {
        let c = &population[generation as usize % population.len()];
        (!is_bijection(c.perm.as_slice())).then_some(c)
    };
    match bad {
        Some(c) => Err(Error::InvalidPermutation(format!(
            "generation {generation} produced {:?}",
            c.perm.as_slice()
        ))),
        None => Ok(()),
    }
}

/// Runs the GA until `max_generations`, the target cost or the time limit is
/// reached, whichever comes first. Returns the best chromosome ever seen.
pub fn run(inst: &Instance, cfg: &GaConfig) -> Result<GaResult> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = GaRng::seed_from_u64(cfg.rng_seed);

    let mut population = init_population(inst, cfg.population_size, &mut rng)?;
    let mut evaluations = population.len() as u64;
    let mut best = generation_best(&population).clone();
    let mut history = vec![best.cost];
    let mut generations = 0u64;

    loop {
        if cfg.target_cost.is_some_and(|t| best.cost.get() <= t) {
            break;
        }
        if generations >= cfg.max_generations {
            break;
        }
        if cfg.time_limit.is_some_and(|limit| start.elapsed() >= limit) {
            break;
        }
        // A single facility has exactly one assignment.
        if inst.size() < 2 {
            break;
        }
        let (next, evals) = next_generation(inst, &population, cfg, &mut rng)?;
        population = next;
        evaluations += evals;
        generations += 1;
        check_closure(&population, generations)?;

        let candidate = generation_best(&population);
        if candidate.cost < best.cost {
            best = candidate.clone();
        }
        history.push(best.cost);
    }

    Ok(GaResult {
        best,
        generations_run: generations,
        evaluations,
        wall_time: start.elapsed(),
        history,
    })
}
