//! Exhaustive reference implementations used to cross-check the fast paths.
//!
//! Everything here enumerates vectors of `F_p^n` directly and is guarded by
//! the enumeration limit.

use std::collections::BTreeSet;

use crate::error::{guard, Error, Result};
use crate::linalg::enumerate_vectors;

use super::chain::start_degree;
use super::{GradedFpModule, StringChain, StringIndex};

/// Every chain starting at `m0`, pure or not, on a window that does not
/// extend. `t`-preimages are found by trying every vector of the component.
pub fn enumerate_chains(m: &GradedFpModule, m0: &[u32]) -> Result<Vec<StringChain>> {
    if m.extends() {
        return Err(Error::InvalidModule(
            "chain enumeration needs a window that does not extend".into(),
        ));
    }
    let start = start_degree(m, m0)?;
    let mut out = Vec::new();
    let mut prefix = vec![m0.to_vec()];
    let mut letters = Vec::new();
    walk(m, start, &mut prefix, &mut letters, &mut out)?;
    Ok(out)
}

fn walk(
    m: &GradedFpModule,
    start: usize,
    prefix: &mut Vec<Vec<u32>>,
    letters: &mut Vec<bool>,
    out: &mut Vec<StringChain>,
) -> Result<()> {
    guard("enumerated chains", out.len() as u128)?;
    let deg = start + letters.len();
    let x = prefix.last().expect("nonempty").clone();
    let is_zero = |v: &[u32]| v.iter().all(|&c| c == 0);
    let sx = if deg < m.top() { m.s(deg).apply(&x) } else { Vec::new() };
    if !is_zero(&sx) {
        prefix.push(sx);
        letters.push(true);
        walk(m, start, prefix, letters, out)?;
        prefix.pop();
        letters.pop();
        return Ok(());
    }
    // A chain may stop wherever s kills its tip.
    out.push(StringChain {
        start,
        index: StringIndex::from_letters(letters, false),
        elements: prefix.clone(),
    });
    if deg < m.top() {
        for y in enumerate_vectors(m.prime(), m.dim(deg + 1))? {
            if !is_zero(&y) && m.t(deg).apply(&y) == x {
                prefix.push(y);
                letters.push(false);
                walk(m, start, prefix, letters, out)?;
                prefix.pop();
                letters.pop();
            }
        }
    }
    Ok(())
}

/// Purity of a finite chain checked straight from the definition of the
/// quick test, by enumerating the next component.
pub fn chain_is_pure(m: &GradedFpModule, c: &StringChain) -> Result<bool> {
    let end = c.end_degree();
    let last = &c.elements[c.index.m()];
    if end >= m.top() {
        return Ok(true);
    }
    for y in enumerate_vectors(m.prime(), m.dim(end + 1))? {
        if m.t(end).apply(&y) == *last {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a <= b` from a clause-wise description of the order, written
/// independently of [`StringIndex::compare`]:
///
/// 1. `a` is a prefix of `b` and either equal to it or continued by an
///    `s`-step in `b`;
/// 2. `b` is a proper prefix of `a` continued by a `t`-step in `a`;
/// 3. there is an `i <= m_a` in `I_b - I_a` with `I_a` and `I_b` agreeing below `i`.
pub fn le_by_clauses(a: &StringIndex, b: &StringIndex) -> bool {
    let (m, i) = (a.m(), a.set());
    let (m2, i2) = (b.m(), b.set());
    let below = |set: &BTreeSet<usize>, n: usize| set.iter().copied().filter(|&x| x <= n).collect::<BTreeSet<_>>();
    if m <= m2 && below(i2, m) == *i && (m == m2 || i2.contains(&(m + 1))) {
        return true;
    }
    if m2 < m && below(i, m2) == *i2 && !i.contains(&(m2 + 1)) {
        return true;
    }
    i2.difference(i)
        .filter(|&&j| j <= m)
        .any(|&j| i.iter().filter(|&&x| x < j).eq(i2.iter().filter(|&&x| x < j)))
}

/// The minimum of the indices of all pure chains from `m0`.
pub fn brute_force_initial_index(m: &GradedFpModule, m0: &[u32]) -> Result<StringIndex> {
    let chains = enumerate_chains(m, m0)?;
    let mut pure = Vec::new();
    for c in &chains {
        if chain_is_pure(m, c)? {
            pure.push(c.index.clone());
        }
    }
    let best = pure
        .iter()
        .find(|a| pure.iter().all(|b| le_by_clauses(a, b)))
        .cloned()
        .ok_or_else(|| Error::InvalidChain("no pure chain found".into()))?;
    Ok(best)
}
