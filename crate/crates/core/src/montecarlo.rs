//! Seeded Monte Carlo estimates of the effective loss probability.
//!
//! Every physical leaf of the `5^N` layout gets its own loss draw from a counter-based
//! hash of `(seed, shot, leaf)`, so a shot can be evaluated lazily in any order and on
//! any thread without changing the result. Failures are summed as integers.

use crate::analytics::{check_probability, iterate_levels, preannounced, LossMode};
use crate::code::{build_pentagon_code, RING_SIZE};
use crate::error::{Error, Result};
use crate::pauli::Basis;
use crate::strategy::{NonpreRecurrence, PolicyNode};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MAX_LEVELS: u32 = 7;
const CHUNK: u64 = 4096;
const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Loss probability as a cut on 64-bit hashes; `None` means every leaf is lost.
fn loss_cut(p: f64) -> Option<u64> {
    if p >= 1.0 {
        None
    } else {
        Some((p * 2f64.powi(64)) as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub mode: LossMode,
    pub p: f64,
    pub levels: u32,
    pub shots: u64,
    pub seed: u64,
    /// Top-level logical basis.
    pub basis: Basis,
    /// Nonpre mode only: losses are known before bases are chosen.
    #[serde(default)]
    pub revealed_loss: bool,
}

impl SimConfig {
    pub fn new(mode: LossMode, p: f64, levels: u32, shots: u64, seed: u64) -> Self {
        SimConfig {
            mode,
            p,
            levels,
            shots,
            seed,
            basis: Basis::Z,
            revealed_loss: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p", self.p)?;
        if self.shots == 0 {
            return Err(Error::out_of_range("shots", self.shots, "at least 1"));
        }
        if self.levels == 0 || self.levels > MAX_LEVELS {
            return Err(Error::out_of_range("levels", self.levels, "1..=7"));
        }
        Ok(())
    }

    /// `pre`, `nonpre` or `nonpre-revealed`.
    pub fn label(&self) -> String {
        match (self.mode, self.revealed_loss) {
            (LossMode::Nonpreannounced, true) => "nonpre-revealed".to_string(),
            (mode, _) => mode.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub config: SimConfig,
    /// Seed actually driving the draws; differs from `config.seed` inside a sweep.
    pub stream_seed: u64,
    pub failures: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub analytic: f64,
    /// `(estimate - analytic) / stderr`, using the reference spread when `stderr` is 0.
    /// `None` when both spreads vanish and the estimate misses the reference.
    pub z: Option<f64>,
}

pub const CSV_HEADER: &str = "mode,p,levels,shots,seed,estimate,stderr,analytic,z";

impl SimReport {
    pub fn csv_row(&self) -> String {
        let c = &self.config;
        let z = self.z.map(|z| format!("{z:e}")).unwrap_or_else(|| "nan".to_string());
        format!(
            "{},{},{},{},{},{:e},{:e},{:e},{}",
            c.label(),
            c.p,
            c.levels,
            c.shots,
            self.stream_seed,
            self.estimate,
            self.stderr,
            self.analytic,
            z
        )
    }

    pub fn within(&self, sigmas: f64) -> bool {
        self.z.is_some_and(|z| z.abs() <= sigmas)
    }
}

pub fn to_csv(reports: &[SimReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Holds the code tables and the three optimal policies so repeated runs share them.
pub struct Simulator {
    recurrence: NonpreRecurrence,
    /// `recoverable[basis][lost_mask]`.
    recoverable: [[bool; 1 << RING_SIZE]; 3],
}

struct Shot<'a> {
    sim: &'a Simulator,
    cut: Option<u64>,
    key: u64,
}

impl Shot<'_> {
    fn leaf_lost(&self, leaf: u64) -> bool {
        match self.cut {
            None => true,
            Some(cut) => mix64(self.key ^ leaf) < cut,
        }
    }

    /// Located loss: a block is lost iff three or more children are.
    fn pre_lost(&self, level: u32, block: u64) -> bool {
        if level == 0 {
            return self.leaf_lost(block);
        }
        let mut lost = 0;
        for q in 0..RING_SIZE as u64 {
            if self.pre_lost(level - 1, block * 5 + q) {
                lost += 1;
                if lost == 3 {
                    return true;
                }
            }
        }
        false
    }

    /// Located loss decided through the code's recovery table for `basis`.
    fn revealed_lost(&self, level: u32, block: u64, basis: Basis) -> bool {
        if level == 0 {
            return self.leaf_lost(block);
        }
        let mut mask = 0usize;
        for q in 0..RING_SIZE {
            if self.revealed_lost(level - 1, block * 5 + q as u64, basis) {
                mask |= 1 << q;
            }
        }
        !self.sim.recoverable[basis.index()][mask]
    }

    /// Runs the optimal `basis` policy on a block; children are measured on demand.
    fn nonpre_lost(&self, level: u32, block: u64, basis: Basis) -> bool {
        if level == 0 {
            return self.leaf_lost(block);
        }
        let mut node = &self.sim.recurrence.policy(basis).policy.root;
        let mut used = 0u32;
        loop {
            match node {
                PolicyNode::Success => return false,
                PolicyNode::Failure => return true,
                PolicyNode::Probe(probe) => {
                    let lost = used >> probe.qubit & 1 == 1
                        || self.nonpre_lost(level - 1, block * 5 + probe.qubit as u64, probe.basis);
                    used |= 1 << probe.qubit;
                    node = if lost { &probe.on_lost } else { &probe.on_click };
                }
            }
        }
    }
}

impl Simulator {
    pub fn new() -> Result<Self> {
        let code = build_pentagon_code()?;
        let recurrence = NonpreRecurrence::build(&code)?;
        let mut recoverable = [[false; 1 << RING_SIZE]; 3];
        for b in Basis::ALL {
            for mask in 0..1u32 << RING_SIZE {
                recoverable[b.index()][mask as usize] = code.recoverable(b, mask)?;
            }
        }
        Ok(Simulator {
            recurrence,
            recoverable,
        })
    }

    pub fn recurrence(&self) -> &NonpreRecurrence {
        &self.recurrence
    }

    /// The value the estimate should converge to.
    pub fn analytic(&self, config: &SimConfig) -> Result<f64> {
        Ok(match (config.mode, config.revealed_loss) {
            (LossMode::Preannounced, _) | (LossMode::Nonpreannounced, true) => {
                iterate_levels(&preannounced, config.p, config.levels)
            }
            (LossMode::Nonpreannounced, false) => {
                self.recurrence.iterate_vector(config.p, config.levels)?[config.basis.index()]
            }
        })
    }

    pub fn run(&self, config: &SimConfig) -> Result<SimReport> {
        self.run_stream(config, config.seed)
    }

    fn run_stream(&self, config: &SimConfig, stream_seed: u64) -> Result<SimReport> {
        config.validate()?;
        let stream = mix64(stream_seed);
        let cut = loss_cut(config.p);
        let chunks = config.shots.div_ceil(CHUNK);
        let failures: u64 = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * CHUNK).min(config.shots);
                (c * CHUNK..end)
                    .filter(|&shot| {
                        let s = Shot {
                            sim: self,
                            cut,
                            key: mix64(stream ^ mix64(shot)),
                        };
                        match (config.mode, config.revealed_loss) {
                            (LossMode::Preannounced, _) => s.pre_lost(config.levels, 0),
                            (LossMode::Nonpreannounced, true) => s.revealed_lost(config.levels, 0, config.basis),
                            (LossMode::Nonpreannounced, false) => s.nonpre_lost(config.levels, 0, config.basis),
                        }
                    })
                    .count() as u64
            })
            .sum();
        let n = config.shots as f64;
        let estimate = failures as f64 / n;
        let stderr = (estimate * (1.0 - estimate) / n).sqrt();
        let analytic = self.analytic(config)?;
        // With no observed failures (or no successes) the sample error is zero; fall
        // back to the spread expected under the reference value.
        let sigma = if stderr > 0.0 {
            stderr
        } else {
            (analytic * (1.0 - analytic) / n).sqrt()
        };
        let z = if sigma > 0.0 {
            Some((estimate - analytic) / sigma)
        } else if (estimate - analytic).abs() < 1e-12 {
            Some(0.0)
        } else {
            None
        };
        Ok(SimReport {
            config: config.clone(),
            stream_seed,
            failures,
            estimate,
            stderr,
            analytic,
            z,
        })
    }

    /// Runs each config on its own stream `mix64(seed ^ mix64(index))`.
    pub fn sweep(&self, configs: &[SimConfig]) -> Result<Vec<Result<SimReport>>> {
        if configs.is_empty() {
            return Err(Error::out_of_range("sweep", 0, "at least one config"));
        }
        Ok(configs
            .iter()
            .enumerate()
            .map(|(i, c)| self.run_stream(c, sweep_seed(c.seed, i as u64)))
            .collect())
    }
}

pub fn sweep_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index))
}

pub fn run(config: &SimConfig) -> Result<SimReport> {
    Simulator::new()?.run(config)
}

pub fn sweep(configs: &[SimConfig]) -> Result<Vec<Result<SimReport>>> {
    Simulator::new()?.sweep(configs)
}

/// Runs `f` on a dedicated pool of `jobs` threads (0 uses the default pool).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
