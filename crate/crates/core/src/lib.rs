//! Genetic algorithm for the quadratic assignment problem (QAP).
//!
//! * [`instance`]: QAPLIB parsing, the cost function and O(n) swap re-evaluation.
//! * [`ga`]: permutation chromosomes, order crossover, swap mutation,
//!   roulette selection and the generation loop.
//! * [`oracle`]: exhaustive search and random instances for small `n`.
//! * [`bench`]: best-of-seeds runs against best-known values, CSV/JSON reports.
//! * [`cli`]: the `qapga` command.

pub mod bench;
pub mod cli;
pub mod error;
pub mod ga;
pub mod instance;
pub mod oracle;

pub use error::{Error, ParseError, Result};
pub use ga::{Chromosome, GaConfig, GaResult};
pub use instance::{evaluate_cost, parse_qaplib, render_qaplib, swap_delta, Cost, Instance, Permutation};
