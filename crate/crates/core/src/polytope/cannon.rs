use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Oracle, Word};

/// A suffix separating the prefixes `t c^n` and `t c^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerodeWitness {
    pub m: u32,
    pub n: u32,
    /// `t c^m`.
    pub suffix: Word,
    /// Whether `t c^n t c^m` is geodesic.
    pub long_geodesic: bool,
    /// Whether `t c^m t c^m` is geodesic.
    pub short_geodesic: bool,
}

impl NerodeWitness {
    pub fn separates(&self) -> bool {
        self.long_geodesic != self.short_geodesic
    }
}

fn letters(oracle: &Oracle) -> Result<(usize, usize)> {
    let gens = oracle.gens();
    let t = gens.index_of("t").ok_or_else(|| Error::UnknownLetter("t".into()))?;
    let c = gens.index_of("c").ok_or_else(|| Error::UnknownLetter("c".into()))?;
    Ok((t, c))
}

fn tc(t: usize, c: usize, n: u32) -> Word {
    let mut w = Word::new(alloc::vec![t]);
    for _ in 0..n {
        w.push(c);
    }
    w
}

/// For every `1 <= m < n <= n_max`, checks the suffix `t c^m` against
/// the prefixes `t c^n` and `t c^m`. Needs letters named `t` and `c`.
pub fn nerode_separation(n_max: u32, oracle: &Oracle) -> Result<Vec<NerodeWitness>> {
    let (t, c) = letters(oracle)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..n {
            let suffix = tc(t, c, m);
            let long_geodesic = oracle.is_geodesic(&tc(t, c, n).concat(&suffix))?;
            let short_geodesic = oracle.is_geodesic(&tc(t, c, m).concat(&suffix))?;
            out.push(NerodeWitness { m, n, suffix, long_geodesic, short_geodesic });
        }
    }
    Ok(out)
}

/// Oracle verdicts `(m, n, is_geodesic(t c^n t c^m))` for `0 <= m, n <= n_max`.
pub fn cannon_pattern(n_max: u32, oracle: &Oracle) -> Result<Vec<(u32, u32, bool)>> {
    let (t, c) = letters(oracle)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n_max {
            let w = tc(t, c, n).concat(&tc(t, c, m));
            out.push((m, n, oracle.is_geodesic(&w)?));
        }
    }
    Ok(out)
}
