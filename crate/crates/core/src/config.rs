//! Run-wide knobs shared by every module.

use crate::exact::FactorConfig;
use crate::grp::DEFAULT_MAX_ORDER;
use crate::par::ExecMode;

/// Default coset count up to which brute-force oracles run alongside formulas.
pub const DEFAULT_ORACLE_CUTOFF: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Seed for every randomized subroutine.
    pub seed: u64,
    pub max_group_order: usize,
    pub oracle_cutoff: usize,
    pub max_rational_degree: usize,
    pub exec: ExecMode,
}

impl Default for Config {
    fn default() -> Self {
        let f = FactorConfig::default();
        Config {
            seed: f.seed,
            max_group_order: DEFAULT_MAX_ORDER,
            oracle_cutoff: DEFAULT_ORACLE_CUTOFF,
            max_rational_degree: f.max_rational_degree,
            exec: ExecMode::default(),
        }
    }
}

impl Config {
    pub fn factor(&self) -> FactorConfig {
        FactorConfig {
            seed: self.seed,
            max_rational_degree: self.max_rational_degree,
        }
    }

    pub fn with_exec(self, exec: ExecMode) -> Config {
        Config { exec, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Config {
        Config { seed, ..self }
    }
}
