//! (d, nu)-disjunctness verification: a fast sufficient test from weight and
//! correlation statistics, and an exact exhaustive search with counterexample
//! extraction.
//!
//! The exact search enumerates covering sets in increasing size, and per
//! column only over columns that intersect its support, pruning branches
//! whose best remaining overlap cannot push the residual down to nu. The
//! outer loop over columns can be partitioned across workers; the reported
//! witness is always the one with the smallest (|S|, i, lexicographic S),
//! independent of worker count.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::matrix::CodeMatrix;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("work budget exhausted after {evaluated} residual evaluations (budget {budget}, last fully checked set size {})", last_completed_size.map(|s| s.to_string()).unwrap_or_else(|| "none".into()))]
    WorkBudgetExceeded {
        evaluated: u64,
        budget: u64,
        last_completed_size: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMethod {
    Sufficient,
    Exact,
}

/// A violation of (d, nu)-disjunctness: the union of `covering` leaves at
/// most nu rows of column `column`'s support uncovered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub column: usize,
    pub covering: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyStats {
    pub w_min: usize,
    pub lambda_max: usize,
    pub subsets_examined: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub method: VerifyMethod,
    pub is_disjunct: bool,
    /// False only for a failed sufficient test, which proves nothing.
    pub conclusive: bool,
    pub d: u32,
    pub nu: u32,
    pub witness: Option<Witness>,
    pub stats: VerifyStats,
}

/// Knobs for the exact search.
#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    /// Abort with an error after this many residual evaluations.
    pub work_budget: u64,
    pub workers: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            work_budget: 1_000_000_000,
            workers: 1,
        }
    }
}

/// Minimum column weight and maximal correlation (largest pairwise overlap
/// of ones between two columns).
pub fn correlation_stats(m: &CodeMatrix) -> (usize, usize) {
    let n = m.cols();
    assert!(n >= 2, "correlation needs at least two columns");
    let w_min = (0..n).map(|j| m.col_weight(j)).min().unwrap();
    let mut lambda_max = 0usize;
    for i in 0..n {
        let a = m.col_words(i);
        for j in i + 1..n {
            let overlap: usize = a
                .iter()
                .zip(m.col_words(j))
                .map(|(&x, &y)| (x & y).count_ones() as usize)
                .sum();
            lambda_max = lambda_max.max(overlap);
        }
    }
    (w_min, lambda_max)
}

/// One-sided disjunctness test: w_min >= d*lambda_max + nu + 1 proves the
/// matrix (d, nu)-disjunct; a false result is inconclusive. Disjoint
/// supports (lambda_max = 0) with w_min >= nu+1 imply disjunctness for
/// every d.
pub fn disjunct_sufficient(m: &CodeMatrix, d: u32, nu: u32) -> VerifyReport {
    let (w_min, lambda_max) = correlation_stats(m);
    let is_disjunct = if lambda_max == 0 {
        w_min > nu as usize
    } else {
        w_min > d as usize * lambda_max + nu as usize
    };
    VerifyReport {
        method: VerifyMethod::Sufficient,
        is_disjunct,
        conclusive: is_disjunct,
        d,
        nu,
        witness: None,
        stats: VerifyStats {
            w_min,
            lambda_max,
            subsets_examined: 0,
        },
    }
}

pub fn disjunct_exact(m: &CodeMatrix, d: u32, nu: u32) -> Result<VerifyReport, VerifyError> {
    disjunct_exact_with(m, d, nu, &ExactOptions::default())
}

/// Exhaustive check of |supp(M_i) \ union supp(M_j)| > nu over every column
/// i and every covering set S with |S| <= d, i not in S. On failure the
/// witness has minimal |S|, then minimal i, then lexicographically minimal S.
pub fn disjunct_exact_with(
    m: &CodeMatrix,
    d: u32,
    nu: u32,
    opts: &ExactOptions,
) -> Result<VerifyReport, VerifyError> {
    let n = m.cols();
    assert!(n >= 2);
    let (w_min, lambda_max) = correlation_stats(m);
    let counter = AtomicU64::new(0);
    let mut witness = None;
    let mut last_completed: Option<u32> = None;

    'sizes: for size in 0..=d as usize {
        let found = if size == 0 {
            // empty covering set: any column with weight <= nu violates
            (0..n)
                .find(|&i| m.col_weight(i) <= nu as usize)
                .map(|i| Witness {
                    column: i,
                    covering: Vec::new(),
                })
        } else if opts.workers <= 1 {
            let mut best = None;
            for i in 0..n {
                if let Some(covering) = search_column(m, i, size, nu, &counter, opts.work_budget)
                    .map_err(|_| budget_error(&counter, opts, last_completed))?
                {
                    best = Some(Witness {
                        column: i,
                        covering,
                    });
                    break;
                }
            }
            best
        } else {
            search_level_parallel(m, size, nu, &counter, opts, last_completed)?
        };
        if let Some(w) = found {
            witness = Some(w);
            break 'sizes;
        }
        last_completed = Some(size as u32);
    }

    let is_disjunct = witness.is_none();
    Ok(VerifyReport {
        method: VerifyMethod::Exact,
        is_disjunct,
        conclusive: true,
        d,
        nu,
        witness,
        stats: VerifyStats {
            w_min,
            lambda_max,
            subsets_examined: counter.load(Ordering::Relaxed),
        },
    })
}

fn budget_error(
    counter: &AtomicU64,
    opts: &ExactOptions,
    last_completed_size: Option<u32>,
) -> VerifyError {
    VerifyError::WorkBudgetExceeded {
        evaluated: counter.load(Ordering::Relaxed),
        budget: opts.work_budget,
        last_completed_size,
    }
}

struct BudgetHit;

/// All witnesses of exactly `size` covering columns for column i, explored
/// in lexicographic order; returns the first (= smallest) one.
fn search_column(
    m: &CodeMatrix,
    i: usize,
    size: usize,
    nu: u32,
    counter: &AtomicU64,
    budget: u64,
) -> Result<Option<Vec<usize>>, BudgetHit> {
    let target = m.col_words(i);
    let weight = m.col_weight(i);
    // only columns intersecting supp(M_i) can reduce its residual
    let mut cands: Vec<usize> = Vec::new();
    let mut overlaps: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        if j == i {
            continue;
        }
        let overlap: usize = target
            .iter()
            .zip(m.col_words(j))
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum();
        if overlap > 0 {
            cands.push(j);
            overlaps.push(overlap);
        }
    }
    if cands.len() < size {
        return Ok(None);
    }
    // best_gain[pos][p]: largest total overlap any p candidates from
    // cands[pos..] can contribute; used to prune hopeless branches
    let mut best_gain = vec![vec![0usize; size + 1]; cands.len() + 1];
    let mut top: Vec<usize> = Vec::with_capacity(size + 1);
    for pos in (0..cands.len()).rev() {
        let ins = top.partition_point(|&v| v > overlaps[pos]);
        top.insert(ins, overlaps[pos]);
        top.truncate(size);
        let mut acc = 0;
        for (p, slot) in best_gain[pos].iter_mut().enumerate().skip(1) {
            acc += top.get(p - 1).copied().unwrap_or(0);
            *slot = acc;
        }
    }

    let words = target.len();
    let mut union = vec![0u64; words * (size + 1)];
    let mut chosen = vec![0usize; size];
    dfs(
        m,
        target,
        weight,
        nu as usize,
        &cands,
        &best_gain,
        counter,
        budget,
        &mut union,
        &mut chosen,
        0,
        0,
        size,
    )
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    m: &CodeMatrix,
    target: &[u64],
    weight: usize,
    nu: usize,
    cands: &[usize],
    best_gain: &[Vec<usize>],
    counter: &AtomicU64,
    budget: u64,
    union: &mut [u64],
    chosen: &mut [usize],
    depth: usize,
    start: usize,
    size: usize,
) -> Result<Option<Vec<usize>>, BudgetHit> {
    let words = target.len();
    let remaining = size - depth;
    let residual_now = {
        let u = &union[depth * words..(depth + 1) * words];
        target
            .iter()
            .zip(u)
            .map(|(&t, &v)| (t & !v).count_ones() as usize)
            .sum::<usize>()
    };
    if remaining == 0 {
        return Ok(if residual_now <= nu {
            Some(chosen.to_vec())
        } else {
            None
        });
    }
    debug_assert!(residual_now <= weight);
    for pos in start..=cands.len().saturating_sub(remaining) {
        // even the best remaining overlaps cannot reach residual <= nu
        if residual_now > nu + best_gain[pos][remaining] {
            return Ok(None);
        }
        if counter.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(BudgetHit);
        }
        chosen[depth] = cands[pos];
        let (head, tail) = union.split_at_mut((depth + 1) * words);
        let cur = &head[depth * words..];
        let next = &mut tail[..words];
        for (w, (&u, &c)) in cur.iter().zip(m.col_words(cands[pos])).enumerate() {
            next[w] = u | c;
        }
        if let Some(hit) = dfs(
            m,
            target,
            weight,
            nu,
            cands,
            best_gain,
            counter,
            budget,
            union,
            chosen,
            depth + 1,
            pos + 1,
            size,
        )? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

/// Level-parallel search: workers claim columns from a shared counter and
/// skip any column index above the best witness found so far.
fn search_level_parallel(
    m: &CodeMatrix,
    size: usize,
    nu: u32,
    counter: &AtomicU64,
    opts: &ExactOptions,
    last_completed: Option<u32>,
) -> Result<Option<Witness>, VerifyError> {
    let n = m.cols();
    let next = AtomicUsize::new(0);
    let best_i = AtomicUsize::new(usize::MAX);
    let best: Mutex<Option<Witness>> = Mutex::new(None);
    let budget_hit = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..opts.workers.min(n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n || budget_hit.load(Ordering::Relaxed) != 0 {
                    break;
                }
                if i > best_i.load(Ordering::Relaxed) {
                    continue;
                }
                match search_column(m, i, size, nu, counter, opts.work_budget) {
                    Ok(Some(covering)) => {
                        best_i.fetch_min(i, Ordering::Relaxed);
                        let mut guard = best.lock().unwrap();
                        if guard.as_ref().is_none_or(|w| i < w.column) {
                            *guard = Some(Witness {
                                column: i,
                                covering,
                            });
                        }
                    }
                    Ok(None) => {}
                    Err(BudgetHit) => {
                        budget_hit.store(1, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });

    if budget_hit.load(Ordering::Relaxed) != 0 {
        return Err(budget_error(counter, opts, last_completed));
    }
    Ok(best.into_inner().unwrap())
}
