//! Defective-set recovery from test outcomes: the noisy cover decoder and
//! the Kautz-Singleton list-recovery decoder.
//!
//! The list decoder splits the outcome into t_q blocks of q bits, collects
//! the candidate symbol list S_i of each block, and recovers outer codewords
//! by Lagrange interpolation through k_q-subsets of the blocks. A candidate
//! is kept when it agrees with at least t_q - nu of the lists. In the
//! noiseless case only the k_q blocks with the shortest lists are needed;
//! with errors every k_q-subset of blocks is tried.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::construct::{CodePlan, Construction};
use crate::gf::{Field, FieldElement};
use crate::matrix::{CodeMatrix, Outcome};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("outcome has {got} bits but the code has {want} tests")]
    LengthMismatch { got: usize, want: usize },
    #[error("plan mismatch: {0}")]
    PlanMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeMethod {
    Cover,
    ListRecovery,
}

/// Effort counters for complexity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeWork {
    pub columns_scanned: usize,
    pub candidates_interpolated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Declared-defective column indices, ascending and duplicate-free.
    pub items: Vec<usize>,
    pub method: DecodeMethod,
    pub work: DecodeWork,
}

/// Scan every column and eliminate those hit by at least ceil(nu/2)+1
/// negative tests; the survivors are declared defective. With nu = 0 this
/// keeps exactly the columns covered by y.
pub fn cover_decode(m: &CodeMatrix, y: &Outcome, nu: u32) -> Result<DecodeResult, DecodeError> {
    if y.len() != m.rows() {
        return Err(DecodeError::LengthMismatch {
            got: y.len(),
            want: m.rows(),
        });
    }
    let threshold = (nu as usize).div_ceil(2) + 1;
    let mut items = Vec::new();
    for j in 0..m.cols() {
        let negatives: usize = m
            .col_words(j)
            .iter()
            .zip(y.words())
            .map(|(&c, &v)| (c & !v).count_ones() as usize)
            .sum();
        if negatives < threshold {
            items.push(j);
        }
    }
    Ok(DecodeResult {
        items,
        method: DecodeMethod::Cover,
        work: DecodeWork {
            columns_scanned: m.cols(),
            candidates_interpolated: 0,
        },
    })
}

/// Reusable list-recovery decoder for one Kautz-Singleton plan; building it
/// resolves the field once so repeated decodes stay cheap.
pub struct KsListDecoder {
    field: Field,
    q: usize,
    k_q: usize,
    t_q: usize,
    n: usize,
}

impl KsListDecoder {
    pub fn new(plan: &CodePlan) -> Result<KsListDecoder, DecodeError> {
        let Construction::KautzSingleton { q, k_q, t_q } = plan.construction else {
            return Err(DecodeError::PlanMismatch(format!(
                "list recovery needs a KautzSingleton plan, got {}",
                plan.kind_name()
            )));
        };
        let field = Field::new(q as u64)
            .map_err(|e| DecodeError::PlanMismatch(format!("bad field size {q}: {e}")))?;
        Ok(KsListDecoder {
            field,
            q: q as usize,
            k_q: k_q as usize,
            t_q: t_q as usize,
            n: plan.n,
        })
    }

    pub fn decode(&self, y: &Outcome, nu: u32) -> Result<DecodeResult, DecodeError> {
        let t = self.q * self.t_q;
        if y.len() != t {
            return Err(DecodeError::LengthMismatch {
                got: y.len(),
                want: t,
            });
        }
        if self.t_q < self.k_q + nu as usize {
            return Err(DecodeError::PlanMismatch(format!(
                "t_q = {} cannot absorb nu = {nu} errors with k_q = {} (needs t_q - nu >= k_q)",
                self.t_q, self.k_q
            )));
        }

        // Step 1: per-block candidate symbol lists, O(t)
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); self.t_q];
        for (b, list) in lists.iter_mut().enumerate() {
            for s in 0..self.q {
                if y.bit(b * self.q + s) {
                    list.push(s as u32);
                }
            }
        }

        // Step 2: interpolate outer codewords through k_q-subsets of blocks
        let mut work = DecodeWork {
            columns_scanned: t,
            candidates_interpolated: 0,
        };
        let mut accepted: BTreeSet<usize> = BTreeSet::new();
        let mut xs = vec![FieldElement::ZERO; self.k_q];
        let mut ys = vec![FieldElement::ZERO; self.k_q];
        let mut visit = |blocks: &[usize],
                         work: &mut DecodeWork,
                         accepted: &mut BTreeSet<usize>| {
            for tuple in blocks
                .iter()
                .map(|&b| lists[b].iter().copied())
                .multi_cartesian_product()
            {
                for (i, (&b, s)) in blocks.iter().zip(tuple).enumerate() {
                    xs[i] = self.field.element(b as u32);
                    ys[i] = self.field.element(s);
                }
                work.candidates_interpolated += 1;
                let coeffs = interpolate(&self.field, &xs, &ys);
                let agree = (0..self.t_q)
                    .filter(|&b| {
                        let symbol = self.field.poly_eval(&coeffs, self.field.element(b as u32));
                        lists[b].binary_search(&symbol.index()).is_ok()
                    })
                    .count();
                if agree >= self.t_q - nu as usize {
                    let mut index: u128 = 0;
                    for &c in coeffs.iter().rev() {
                        index = index * self.q as u128 + c.index() as u128;
                    }
                    if index < self.n as u128 {
                        accepted.insert(index as usize);
                    }
                }
            }
        };

        if nu == 0 {
            // a noiseless defective matches every block, so the k_q
            // shortest lists minimize the candidate product
            let mut order: Vec<usize> = (0..self.t_q).collect();
            order.sort_by_key(|&b| (lists[b].len(), b));
            let mut blocks: Vec<usize> = order[..self.k_q].to_vec();
            blocks.sort_unstable();
            visit(&blocks, &mut work, &mut accepted);
        } else {
            for blocks in (0..self.t_q).combinations(self.k_q) {
                visit(&blocks, &mut work, &mut accepted);
            }
        }

        Ok(DecodeResult {
            items: accepted.into_iter().collect(),
            method: DecodeMethod::ListRecovery,
            work,
        })
    }
}

/// One-shot wrapper around [`KsListDecoder`].
pub fn ks_list_decode(plan: &CodePlan, y: &Outcome, nu: u32) -> Result<DecodeResult, DecodeError> {
    KsListDecoder::new(plan)?.decode(y, nu)
}

/// Coefficients (ascending) of the unique degree < k polynomial through the
/// given points; the x coordinates must be distinct.
fn interpolate(field: &Field, xs: &[FieldElement], ys: &[FieldElement]) -> Vec<FieldElement> {
    let k = xs.len();
    let mut coeffs = vec![FieldElement::ZERO; k];
    let mut numer = vec![FieldElement::ZERO; k];
    for j in 0..k {
        numer.fill(FieldElement::ZERO);
        numer[0] = FieldElement::ONE;
        let mut deg = 0usize;
        let mut denom = FieldElement::ONE;
        for (m, &xm) in xs.iter().enumerate() {
            if m == j {
                continue;
            }
            // numer *= (x - xm)
            numer[deg + 1] = numer[deg];
            for i in (1..=deg).rev() {
                numer[i] = field.sub(numer[i - 1], field.mul(xm, numer[i]));
            }
            numer[0] = field.neg(field.mul(xm, numer[0]));
            deg += 1;
            denom = field.mul(denom, field.sub(xs[j], xm));
        }
        let scale = field
            .div(ys[j], denom)
            .expect("interpolation points must be distinct");
        for (c, &nc) in coeffs.iter_mut().zip(numer.iter()) {
            *c = field.add(*c, field.mul(scale, nc));
        }
    }
    coeffs
}
