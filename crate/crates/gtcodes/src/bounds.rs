//! Lower bounds on the number of tests under column-weight (tests per item)
//! and row-weight (items per test) constraints, plus planners that resolve a
//! constraint regime to a concrete construction.
//!
//! Individual bounds compose by maximum. Values are computed as reals;
//! callers take the ceiling only at the reporting boundary.

use std::fmt;

use thiserror::Error;

use crate::construct::CodePlan;
use crate::gf::{prime_power, MAX_FIELD_SIZE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("weight-ladder bound degenerates for d={d}, l={l} (needs d >= 2, l >= 2)")]
    DegenerateParameters { d: u32, l: u32 },
}

/// Which rule produced the binding (largest) lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindingRule {
    /// min{C(d+2,2), n}, no sparsity constraint.
    Unrestricted,
    /// (nu+1) n: the constraint forces repeated individual testing.
    IndividualTesting,
    /// Column budget exactly one above the forced regime: w_max = d+nu+1.
    ColumnBudgetStep,
    /// Column budget on the ladder w_max = l*d+nu+1 for this l >= 2.
    ColumnBudgetLadder(u32),
    /// Row budget: (d+nu+1) n / rho_max.
    RowBudgetRatio,
}

impl fmt::Display for BindingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindingRule::Unrestricted => write!(f, "unrestricted"),
            BindingRule::IndividualTesting => write!(f, "individual-testing"),
            BindingRule::ColumnBudgetStep => write!(f, "column-budget-step"),
            BindingRule::ColumnBudgetLadder(l) => write!(f, "column-budget-ladder-l{l}"),
            BindingRule::RowBudgetRatio => write!(f, "row-budget-ratio"),
        }
    }
}

/// A real-valued lower bound on the number of tests t.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub binding_rule: BindingRule,
    pub regime: String,
}

impl BoundResult {
    /// Integer test requirement implied by the bound.
    pub fn tests_required(&self) -> usize {
        self.value.ceil() as usize
    }
}

fn max_rule(candidates: &[(f64, BindingRule)]) -> (f64, BindingRule) {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if c.0 > best.0 {
            best = c;
        }
    }
    best
}

fn unrestricted_value(n: usize, d: u32) -> f64 {
    let pairs = (d as f64 + 2.0) * (d as f64 + 1.0) / 2.0;
    pairs.min(n as f64)
}

/// Lower bound with no sparsity constraint: min{C(d+2,2), n}.
pub fn lb_unrestricted(n: usize, d: u32) -> BoundResult {
    assert!(n >= 1 && d >= 1);
    BoundResult {
        value: unrestricted_value(n, d),
        binding_rule: BindingRule::Unrestricted,
        regime: format!("n={n} d={d} unrestricted"),
    }
}

/// Multi-level column-budget bound for w_max = l*d + nu + 1 with l >= 2.
/// Computed in the log domain so large l stays finite.
pub fn weight_ladder_bound(n: usize, d: u32, nu: u32, l: u32) -> Result<f64, BoundsError> {
    if d < 2 || l < 2 {
        return Err(BoundsError::DegenerateParameters { d, l });
    }
    let (nf, df, nuf, lf) = (n as f64, d as f64, nu as f64, l as f64);
    let ln_sum = if nu == 0 {
        // den = 2 e^l (l-1)(d-1)^(l-1) + 1, value = (num/den)^(1/(l+1)) n^(1/(l+1))
        // with num = ((l-1)(d-1))^(l+1); expressed below as (den/num)^-(1/(l+1)).
        let ln_num = (lf + 1.0) * ((lf - 1.0).ln() + (df - 1.0).ln());
        let ln_den_main = 2.0f64.ln() + lf + (lf - 1.0).ln() + (lf - 1.0) * (df - 1.0).ln();
        log_sum_exp(ln_den_main, 0.0) - ln_num
    } else {
        // 2 e^l / ((d+nu)^2 (l-1)^l) + 1/((l-1)(d-1)+nu)^(l+1)
        let ln_t1 = 2.0f64.ln() + lf - 2.0 * (df + nuf).ln() - lf * (lf - 1.0).ln();
        let ln_t2 = -(lf + 1.0) * ((lf - 1.0) * (df - 1.0) + nuf).ln();
        log_sum_exp(ln_t1, ln_t2)
    };
    Ok(((nf.ln() - ln_sum) / (lf + 1.0)).exp())
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Largest ladder level l with l*d + nu + 1 <= w_max (zero when the budget
/// forces individual testing). Budgets strictly between ladder points use
/// the ladder point below them.
pub fn ladder_level(d: u32, nu: u32, w_max: u32) -> u32 {
    if w_max <= d + nu {
        0
    } else {
        (w_max - nu - 1) / d
    }
}

/// Lower bound on t for (d, nu)-disjunct matrices whose columns weigh at
/// most w_max.
pub fn lb_sparse_codewords(n: usize, d: u32, nu: u32, w_max: u32) -> BoundResult {
    assert!(n >= 1 && d >= 1 && w_max >= 1);
    let regime = format!("n={n} d={d} nu={nu} w_max<={w_max}");
    let nf = n as f64;
    let base = (unrestricted_value(n, d), BindingRule::Unrestricted);
    let l = ladder_level(d, nu, w_max);
    let branch = if l == 0 {
        ((nu as f64 + 1.0) * nf, BindingRule::IndividualTesting)
    } else if l == 1 {
        let step = (((d + nu) as f64) * ((d + nu + 1) as f64) * nf).sqrt();
        (
            step.min((nu as f64 + 1.0) * nf),
            BindingRule::ColumnBudgetStep,
        )
    } else {
        match weight_ladder_bound(n, d, nu, l) {
            Ok(v) => (v, BindingRule::ColumnBudgetLadder(l)),
            // d = 1 degenerates the ladder formula; the unrestricted floor
            // is the only bound left for this regime.
            Err(_) => (0.0, BindingRule::Unrestricted),
        }
    };
    let (value, binding_rule) = max_rule(&[branch, base]);
    BoundResult {
        value,
        binding_rule,
        regime,
    }
}

/// Lower bound on t for (d, nu)-disjunct matrices whose rows weigh at most
/// rho_max.
pub fn lb_sparse_tests(n: usize, d: u32, nu: u32, rho_max: usize) -> BoundResult {
    assert!(n >= 1 && d >= 1 && rho_max >= 1);
    let regime = format!("n={n} d={d} nu={nu} rho_max<={rho_max}");
    let nf = n as f64;
    let base = (unrestricted_value(n, d), BindingRule::Unrestricted);
    // threshold: rho_max > (d+nu+1)/(nu+1), compared exactly in integers
    let branch = if rho_max as u64 * (nu as u64 + 1) > (d + nu + 1) as u64 {
        (
            (d + nu + 1) as f64 * nf / rho_max as f64,
            BindingRule::RowBudgetRatio,
        )
    } else {
        ((nu as f64 + 1.0) * nf, BindingRule::IndividualTesting)
    };
    let (value, binding_rule) = max_rule(&[branch, base]);
    BoundResult {
        value,
        binding_rule,
        regime,
    }
}

/// True when x^k >= target, without overflowing.
fn pow_at_least(x: u64, k: u32, target: u128) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(x as u128);
        if acc >= target {
            return true;
        }
    }
    acc >= target
}

/// Smallest integer x with x^k >= n.
fn integer_kth_root_ceil(n: usize, k: u32) -> u64 {
    let mut x = (n as f64).powf(1.0 / k as f64).floor() as u64;
    x = x.saturating_sub(1).max(1);
    while !pow_at_least(x, k, n as u128) {
        x += 1;
    }
    x
}

fn smallest_prime_power_at_least(lo: u64) -> Option<u64> {
    (lo.max(2)..=MAX_FIELD_SIZE).find(|&q| prime_power(q).is_some())
}

/// Resolve a column-weight budget to a plan. Budgets at or below d+nu force
/// repeated individual testing (which is optimal there); otherwise the
/// largest feasible ladder level l gets a Kautz-Singleton plan with
/// t_q = l*d+nu+1, k_q = l+1, and the smallest prime power q >= t_q with
/// q^k_q >= n. Falls back to the identity stack when no field size fits.
pub fn plan_sparse_codewords(n: usize, d: u32, nu: u32, w_max: u32) -> CodePlan {
    assert!(n >= 2 && d >= 1 && w_max >= 1);
    let top = ladder_level(d, nu, w_max);
    for l in (1..=top).rev() {
        let t_q = l as u64 * d as u64 + nu as u64 + 1;
        let k_q = l + 1;
        if t_q > MAX_FIELD_SIZE {
            continue;
        }
        let q_min = integer_kth_root_ceil(n, k_q).max(t_q);
        if let Some(q) = smallest_prime_power_at_least(q_min) {
            return CodePlan::kautz_singleton(n, d, nu, q as u32, k_q, t_q as u32);
        }
    }
    CodePlan::identity_stack(n, d, nu)
}

/// Resolve a row-weight budget to a plan: over k_q >= 2 with
/// t_q = (k_q-1)d+nu+1, pick the smallest prime power q >= t_q with
/// q^k_q >= n and q^(k_q-1) <= rho_max, and return the feasible plan with
/// minimal t = q*t_q. Row weight 1 always complies, so the identity stack
/// is the fallback.
pub fn plan_sparse_tests(n: usize, d: u32, nu: u32, rho_max: usize) -> CodePlan {
    assert!(n >= 2 && d >= 1 && rho_max >= 1);
    let mut best: Option<(usize, u64, u32, u64)> = None; // (t, q, k_q, t_q)
    for k_q in 2u32.. {
        let t_q = (k_q as u64 - 1) * d as u64 + nu as u64 + 1;
        let min_row_weight = 1u128.checked_shl(k_q - 1);
        if t_q > MAX_FIELD_SIZE || min_row_weight.is_none_or(|v| v > rho_max as u128) {
            // even q = 2 gives q^(k_q-1) > rho_max; larger k_q only worsens it
            break;
        }
        if let Some(best_t) = best.map(|(t, ..)| t) {
            // q >= t_q forces t >= t_q^2; larger k_q only grows t_q
            if (t_q as u128) * (t_q as u128) >= best_t as u128 {
                break;
            }
        }
        let q_min = integer_kth_root_ceil(n, k_q).max(t_q);
        let Some(q) = smallest_prime_power_at_least(q_min) else {
            continue;
        };
        // the smallest admissible q decides feasibility: larger q only
        // grows the row weight bound q^(k_q-1)
        if (q as u128)
            .checked_pow(k_q - 1)
            .is_none_or(|v| v > rho_max as u128)
        {
            continue;
        }
        let t = q as usize * t_q as usize;
        if best.is_none_or(|(bt, ..)| t < bt) {
            best = Some((t, q, k_q, t_q));
        }
    }
    match best {
        Some((_, q, k_q, t_q)) => CodePlan::kautz_singleton(n, d, nu, q as u32, k_q, t_q as u32),
        None => CodePlan::identity_stack(n, d, nu),
    }
}
