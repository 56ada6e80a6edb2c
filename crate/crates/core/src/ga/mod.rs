//! Genetic algorithm over permutation chromosomes.

mod config;
mod engine;
mod operators;
mod selection;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{evaluate_cost, Cost, Instance, Permutation};

pub use config::GaConfig;
pub use engine::{evolve_step, run, GaResult, GaRng};
pub use operators::{
    init_population, order_crossover_two_point, random_permutation, sample_cuts, sample_swap,
    swap_mutation,
};
pub use selection::{roulette_select, selection_weights, RouletteWheel};

/// A permutation together with its cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chromosome {
    perm: Permutation,
    cost: Cost,
}

impl Chromosome {
    pub fn new(inst: &Instance, perm: Permutation) -> Result<Self> {
        let cost = evaluate_cost(inst, &perm)?;
        Ok(Chromosome { perm, cost })
    }

    /// `cost` must be the cost of `perm`.
    pub(crate) fn from_parts(perm: Permutation, cost: Cost) -> Self {
        Chromosome { perm, cost }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn cost(&self) -> Cost {
        self.cost
    }
}
