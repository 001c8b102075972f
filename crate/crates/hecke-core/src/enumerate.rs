//! Deterministic enumeration of discrete bounded enhanced parameters of a
//! given flavor and total size over a finite registered supply.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::params::{block_admissible, is_relevant, EnhancedParam, GenKey, JordanBlock};
use crate::repdata::{GroupFlavor, Registry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    EmptySupply,
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::EmptySupply => write!(f, "no symbols registered"),
        }
    }
}

/// Every multiset of admissible blocks over the supply with total size `n`
/// and each (rep, a) at most once, carrying each sign character that passes
/// the relevance test. Deterministic order: block sets lexicographically by
/// (rep id, a), sign characters by their value vector.
pub fn enumerate_discrete(
    reg: &Registry,
    flavor: &GroupFlavor,
    n: u64,
) -> Result<Vec<EnhancedParam>, EnumerateError> {
    if reg.is_empty() {
        return Err(EnumerateError::EmptySupply);
    }
    let reps: Vec<(String, u64)> = reg
        .iter()
        .map(|sym| (sym.id.clone(), u64::from(sym.dim)))
        .collect();
    // admissible SL2 sizes per symbol, within the size budget
    let pools: Vec<Vec<u32>> = reps
        .iter()
        .map(|(id, dim)| {
            let mut v = Vec::new();
            let mut a = 1u32;
            while u64::from(a) * dim <= n {
                if block_admissible(reg, flavor, id, a) {
                    v.push(a);
                }
                a += 1;
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut blocks: Vec<JordanBlock> = Vec::new();
    dfs(reg, flavor, &reps, &pools, 0, 0, n, &mut blocks, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    reg: &Registry,
    flavor: &GroupFlavor,
    reps: &[(String, u64)],
    pools: &[Vec<u32>],
    rep_idx: usize,
    pool_idx: usize,
    remaining: u64,
    blocks: &mut Vec<JordanBlock>,
    out: &mut Vec<EnhancedParam>,
) {
    if remaining == 0 {
        emit(reg, flavor, blocks, out);
        return;
    }
    if rep_idx >= reps.len() {
        return;
    }
    if pool_idx >= pools[rep_idx].len() {
        dfs(
            reg,
            flavor,
            reps,
            pools,
            rep_idx + 1,
            0,
            remaining,
            blocks,
            out,
        );
        return;
    }
    // skip this size
    dfs(
        reg,
        flavor,
        reps,
        pools,
        rep_idx,
        pool_idx + 1,
        remaining,
        blocks,
        out,
    );
    // take this size (at most once per (rep, a))
    let a = pools[rep_idx][pool_idx];
    let cost = u64::from(a) * reps[rep_idx].1;
    if cost <= remaining {
        blocks.push(JordanBlock::new(&reps[rep_idx].0, a));
        dfs(
            reg,
            flavor,
            reps,
            pools,
            rep_idx,
            pool_idx + 1,
            remaining - cost,
            blocks,
            out,
        );
        blocks.pop();
    }
}

fn emit(
    reg: &Registry,
    flavor: &GroupFlavor,
    blocks: &[JordanBlock],
    out: &mut Vec<EnhancedParam>,
) {
    let keys: Vec<GenKey> = blocks.iter().map(|b| (b.rep.clone(), b.a)).collect();
    // all sign characters, lexicographic with +1 before −1 on each generator
    for mask in 0..(1u64 << keys.len()) {
        let mut phi = EnhancedParam::with_blocks(*flavor, blocks.to_vec());
        for (i, (rep, a)) in keys.iter().enumerate() {
            let v = if mask >> (keys.len() - 1 - i) & 1 == 0 {
                1
            } else {
                -1
            };
            phi.set_eps(rep, *a, v);
        }
        if is_relevant(reg, &phi).unwrap_or(false) {
            out.push(phi);
        }
    }
}
