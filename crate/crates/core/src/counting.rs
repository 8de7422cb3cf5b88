//! Counting nonzero tuples in `Z_p` with prescribed sum, and normal surface
//! subgroups of prime index.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signatures::Signature;

/// Largest number of tuples the brute-force oracle will walk.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// `s_k` (tuples summing to 0) and `t_k` (tuples summing to any fixed nonzero value)
/// over nonzero `k`-tuples in `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCount {
    pub p: u64,
    pub k: u32,
    pub s: i128,
    pub t: i128,
}

impl TupleCount {
    pub fn formula(p: u64, k: u32) -> Self {
        TupleCount { p, k, s: s_formula(p, k), t: t_formula(p, k) }
    }

    /// `s + (p−1)·t` accounts for every nonzero tuple.
    pub fn partition_holds(&self) -> bool {
        let q = self.p as i128 - 1;
        self.s + q * self.t == q.pow(self.k)
    }
}

fn sign(k: u32) -> i128 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn s_formula(p: u64, k: u32) -> i128 {
    let q = p as i128 - 1;
    if k == 0 {
        return 1;
    }
    q * (q.pow(k - 1) + sign(k)) / p as i128
}

pub fn t_formula(p: u64, k: u32) -> i128 {
    let q = p as i128 - 1;
    (q.pow(k) - sign(k)) / p as i128
}

/// `(s_k, t_k)` by iterating `(s, t) ↦ (s, t)·[[0, 1], [p−1, p−2]]` from `(s_0, t_0) = (1, 0)`.
pub fn st_recurrence(p: u64, k: u32) -> (i128, i128) {
    let q = p as i128 - 1;
    let (mut s, mut t) = (1i128, 0i128);
    for _ in 0..k {
        (s, t) = (q * t, s + (q - 1) * t);
    }
    (s, t)
}

/// Counts nonzero `k`-tuples over `Z_p` summing to zero by walking all of them.
pub fn s_bruteforce(p: u64, k: u32) -> Result<u128> {
    let total = (p as u128 - 1).checked_pow(k).unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded(format!("{total} tuples for p = {p}, k = {k}")));
    }
    if k == 0 {
        return Ok(1);
    }
    let count = (1..p)
        .into_par_iter()
        .map(|first| {
            let mut digits = vec![1u64; k as usize - 1];
            let mut hits = 0u128;
            loop {
                let sum = digits.iter().fold(first, |acc, &d| (acc + d) % p);
                if sum == 0 {
                    hits += 1;
                }
                // odometer over {1..p-1}^(k-1)
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        return hits;
                    }
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 1;
                    i += 1;
                }
            }
        })
        .sum();
    Ok(count)
}

/// Number of normal subgroups `K` of Γ(σ) with `Γ/K ≅ C_p` and `K` torsion-free.
/// Zero unless every period equals `p`.
pub fn count_kernels_cyclic_p(sig: &Signature, p: u64) -> i128 {
    if sig.periods().iter().any(|&m| m as u64 != p) {
        return 0;
    }
    let k = sig.num_periods() as u32;
    let pp = p as i128;
    let hyp = pp.pow(2 * sig.gamma());
    if k == 0 {
        (hyp - 1) / (pp - 1)
    } else {
        s_formula(p, k) * hyp / (pp - 1)
    }
}
