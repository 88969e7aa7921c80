//! OR-channel device-discovery simulation: sample a set of active devices,
//! form the Boolean-OR of their signature columns, flip outcome bits for
//! detection noise, decode, and score exact recovery.
//!
//! Trials derive their randomness from (seed, trial index), so reports are
//! reproducible and independent of worker count. Exhaustive mode sweeps
//! every size-d_active subset against every error pattern of weight up to
//! error_weight instead of sampling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::construct::{sample_distinct, CodePlan};
use crate::decode::{cover_decode, DecodeError, KsListDecoder};
use crate::matrix::{CodeMatrix, MatrixError, Outcome};

/// Cap on exhaustive-mode work units (subsets x error patterns).
pub const EXHAUSTIVE_BUDGET: u128 = 50_000_000;

const CHUNK: usize = 64;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("error weight {error_weight} exceeds the {decoder} decoder guarantee of {guarantee}; rerun with the override flag to force it")]
    GuaranteeExceeded {
        error_weight: usize,
        guarantee: usize,
        decoder: &'static str,
    },
    #[error("d_active = {d_active} exceeds the plan's defectives bound d = {d}")]
    ActiveExceedsPlan { d_active: usize, d: u32 },
    #[error("the list-recovery decoder needs a plan")]
    MissingPlan,
    #[error("exhaustive sweep needs {required} work units, over the {budget} budget")]
    ExhaustiveBudgetExceeded { required: u128, budget: u128 },
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Cover,
    ListRecovery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMode {
    Random,
    Exhaustive,
}

#[derive(Debug, Clone, Copy)]
pub struct SimConfig<'a> {
    pub matrix: &'a CodeMatrix,
    /// Required for the list-recovery decoder; also bounds d_active.
    pub plan: Option<&'a CodePlan>,
    /// Active devices per trial (exact, unless mixed_active_size).
    pub d_active: usize,
    /// Outcome bits flipped per trial (exact in Random mode, a cap in
    /// Exhaustive mode).
    pub error_weight: usize,
    pub nu: u32,
    /// Trial count in Random mode; ignored by Exhaustive mode.
    pub trials: usize,
    pub seed: u64,
    pub decoder: DecoderKind,
    pub error_mode: ErrorMode,
    /// Run even when error_weight exceeds the decoder's guarantee.
    pub allow_beyond_guarantee: bool,
    /// Draw |active| uniformly from 0..=d_active instead of exactly d_active.
    pub mixed_active_size: bool,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub active: Vec<usize>,
    pub flipped: Vec<usize>,
    pub decoded: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub trials_run: usize,
    pub exact_recoveries: usize,
    /// Declared-defective items that were inactive, summed over trials.
    pub false_positive_count: usize,
    /// Active items that were missed, summed over trials.
    pub false_negative_count: usize,
    pub mean_decode_seconds: f64,
    /// The first 10 failing trials.
    pub failures: Vec<TrialFailure>,
}

impl SimReport {
    pub fn failure_count(&self) -> usize {
        self.trials_run - self.exact_recoveries
    }
}

enum Decoder<'a> {
    Cover(&'a CodeMatrix, u32),
    List(Box<KsListDecoder>, u32),
}

impl Decoder<'_> {
    fn decode(&self, y: &Outcome) -> Result<Vec<usize>, DecodeError> {
        match self {
            Decoder::Cover(m, nu) => Ok(cover_decode(m, y, *nu)?.items),
            Decoder::List(d, nu) => Ok(d.decode(y, *nu)?.items),
        }
    }
}

pub fn run_sim(cfg: &SimConfig) -> Result<SimReport, SimError> {
    let m = cfg.matrix;
    let (n, t) = (m.cols(), m.rows());
    assert!(cfg.d_active <= n && cfg.error_weight <= t);
    if let Some(plan) = cfg.plan {
        if cfg.d_active > plan.d as usize {
            return Err(SimError::ActiveExceedsPlan {
                d_active: cfg.d_active,
                d: plan.d,
            });
        }
    }
    let (guarantee, name) = match cfg.decoder {
        DecoderKind::Cover => (cfg.nu as usize / 2, "cover"),
        DecoderKind::ListRecovery => (cfg.nu as usize, "list-recovery"),
    };
    if cfg.error_weight > guarantee && !cfg.allow_beyond_guarantee {
        return Err(SimError::GuaranteeExceeded {
            error_weight: cfg.error_weight,
            guarantee,
            decoder: name,
        });
    }
    let decoder = match cfg.decoder {
        DecoderKind::Cover => Decoder::Cover(m, cfg.nu),
        DecoderKind::ListRecovery => {
            let plan = cfg.plan.ok_or(SimError::MissingPlan)?;
            Decoder::List(Box::new(KsListDecoder::new(plan)?), cfg.nu)
        }
    };

    let trials = match cfg.error_mode {
        ErrorMode::Random => cfg.trials,
        ErrorMode::Exhaustive => {
            let subsets = binom(n, cfg.d_active);
            let patterns = patterns_up_to(t, cfg.error_weight);
            let total = subsets.saturating_mul(patterns);
            if total > EXHAUSTIVE_BUDGET {
                return Err(SimError::ExhaustiveBudgetExceeded {
                    required: total,
                    budget: EXHAUSTIVE_BUDGET,
                });
            }
            total as usize
        }
    };

    let next = AtomicUsize::new(0);
    let agg = Mutex::new(Aggregate::default());
    let workers = cfg.workers.max(1).min(trials.max(1));
    let run_worker = || -> Result<(), SimError> {
        let mut local = Aggregate::default();
        loop {
            let start = next.fetch_add(CHUNK, Ordering::Relaxed);
            if start >= trials {
                break;
            }
            for trial in start..(start + CHUNK).min(trials) {
                let (active, flips) = trial_inputs(cfg, n, t, trial);
                let mut y = m.or_columns(&active)?;
                for &f in &flips {
                    y.flip(f);
                }
                let started = Instant::now();
                let decoded = decoder.decode(&y)?;
                local.decode_time += started.elapsed();
                local.record(trial, active, flips, decoded);
            }
        }
        agg.lock().unwrap().merge(local);
        Ok(())
    };

    if workers <= 1 {
        run_worker()?;
    } else {
        std::thread::scope(|scope| -> Result<(), SimError> {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(run_worker)).collect();
            for h in handles {
                h.join().expect("sim worker panicked")?;
            }
            Ok(())
        })?;
    }

    let mut agg = agg.into_inner().unwrap();
    agg.failures.sort_by_key(|f| f.trial);
    agg.failures.truncate(10);
    Ok(SimReport {
        trials_run: trials,
        exact_recoveries: agg.exact,
        false_positive_count: agg.false_pos,
        false_negative_count: agg.false_neg,
        mean_decode_seconds: if trials == 0 {
            0.0
        } else {
            agg.decode_time.as_secs_f64() / trials as f64
        },
        failures: agg.failures,
    })
}

#[derive(Default)]
struct Aggregate {
    exact: usize,
    false_pos: usize,
    false_neg: usize,
    decode_time: Duration,
    failures: Vec<TrialFailure>,
}

impl Aggregate {
    fn record(
        &mut self,
        trial: usize,
        active: Vec<usize>,
        flipped: Vec<usize>,
        decoded: Vec<usize>,
    ) {
        if decoded == active {
            self.exact += 1;
            return;
        }
        self.false_pos += decoded.iter().filter(|j| !active.contains(j)).count();
        self.false_neg += active.iter().filter(|j| !decoded.contains(j)).count();
        if self.failures.len() < 10 {
            self.failures.push(TrialFailure {
                trial,
                active,
                flipped,
                decoded,
            });
        }
    }

    fn merge(&mut self, other: Aggregate) {
        self.exact += other.exact;
        self.false_pos += other.false_pos;
        self.false_neg += other.false_neg;
        self.decode_time += other.decode_time;
        self.failures.extend(other.failures);
    }
}

/// Active set and flip positions of one trial, derived deterministically.
fn trial_inputs(cfg: &SimConfig, n: usize, t: usize, trial: usize) -> (Vec<usize>, Vec<usize>) {
    match cfg.error_mode {
        ErrorMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            let size = if cfg.mixed_active_size {
                rng.gen_range(0..=cfg.d_active)
            } else {
                cfg.d_active
            };
            let mut active = sample_distinct(&mut rng, size, n);
            active.sort_unstable();
            let mut flips = sample_distinct(&mut rng, cfg.error_weight, t);
            flips.sort_unstable();
            (active, flips)
        }
        ErrorMode::Exhaustive => {
            let patterns = patterns_up_to(t, cfg.error_weight);
            let subset_rank = trial as u128 / patterns;
            let pattern_rank = trial as u128 % patterns;
            let active = unrank_combination(subset_rank, n, cfg.d_active);
            let flips = unrank_pattern(pattern_rank, t);
            (active, flips)
        }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of bit patterns of weight 0..=e over t positions.
fn patterns_up_to(t: usize, e: usize) -> u128 {
    (0..=e).map(|w| binom(t, w)).sum()
}

/// The rank-th k-subset of 0..n in lexicographic order.
fn unrank_combination(mut rank: u128, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0usize;
    for rem in (1..=k).rev() {
        loop {
            let with_x = binom(n - x - 1, rem - 1);
            if rank < with_x {
                break;
            }
            rank -= with_x;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Flip patterns ordered by weight, then lexicographically within a weight.
fn unrank_pattern(mut rank: u128, t: usize) -> Vec<usize> {
    let mut weight = 0usize;
    loop {
        let count = binom(t, weight);
        if rank < count {
            return unrank_combination(rank, t, weight);
        }
        rank -= count;
        weight += 1;
    }
}
