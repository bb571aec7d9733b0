use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::GeodesicAutomaton;
use crate::error::{Error, Result};
use crate::group::{Oracle, Word};

/// A word on which two acceptors disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub word: Word,
    /// Verdict of the automaton under test.
    pub accepted: bool,
    /// Verdict of the reference (the oracle or a second automaton).
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub radius: u32,
    pub agree: bool,
    /// Shortlex-least word on which the verdicts first differ.
    pub first_disagreement: Option<Disagreement>,
    /// Disagreeing words found, counting one per (state, element) class
    /// and final letter, and only words whose proper prefixes agree.
    pub disagreements: u64,
    /// Distinct (state, element) pairs explored.
    pub pairs: u64,
}

/// Generic product sweep. `pairs` are keyed by `K`; `step` returns the
/// automaton verdict, the reference verdict and the next key.
fn sweep<K, F>(radius: u32, weights: &[u32], start: K, mut step: F) -> Result<ValidationReport>
where
    K: Clone + Eq + core::hash::Hash,
    F: FnMut(&K, usize, u32) -> Result<(bool, bool, K)>,
{
    let mut buckets: Vec<HashMap<K, Word>> = vec![HashMap::new(); radius as usize + 1];
    buckets[0].insert(start, Word::empty());
    let mut best: Option<Disagreement> = None;
    let mut disagreements = 0u64;
    let mut pairs = 0u64;
    let shortlex = |u: &Word, v: &Word| -> core::cmp::Ordering {
        let lu: u32 = u.letters().iter().map(|&a| weights[a]).sum();
        let lv: u32 = v.letters().iter().map(|&a| weights[a]).sum();
        lu.cmp(&lv).then_with(|| u.cmp(v))
    };
    for n in 0..=radius {
        let mut level: Vec<(K, Word)> = core::mem::take(&mut buckets[n as usize]).into_iter().collect();
        level.sort_by(|x, y| x.1.cmp(&y.1));
        pairs += level.len() as u64;
        for (key, rep) in level {
            for (a, &w) in weights.iter().enumerate() {
                let m = n + w;
                if m > radius {
                    continue;
                }
                let (accepted, expected, next) = step(&key, a, m)?;
                let mut word = rep.clone();
                word.push(a);
                if accepted != expected {
                    disagreements += 1;
                    let better = best.as_ref().is_none_or(|b| shortlex(&word, &b.word).is_lt());
                    if better {
                        best = Some(Disagreement { word, accepted, expected });
                    }
                } else if accepted {
                    let slot = &mut buckets[m as usize];
                    match slot.get_mut(&next) {
                        Some(existing) => {
                            if word < *existing {
                                *existing = word;
                            }
                        }
                        None => {
                            slot.insert(next, word);
                        }
                    }
                }
            }
        }
    }
    Ok(ValidationReport { radius, agree: best.is_none(), first_disagreement: best, disagreements, pairs })
}

/// Compares `accepts(w)` with the oracle's `is_geodesic(w)` on every word
/// of length at most `radius`.
///
/// Words are grouped by (automaton state, element): the verdicts on every
/// extension of a word depend only on that pair, so one representative
/// per pair is explored. Extensions of words on which both verdicts are
/// negative are skipped since neither side can accept them again.
pub fn cross_validate(aut: &GeodesicAutomaton, radius: u32, oracle: &Oracle) -> Result<ValidationReport> {
    oracle.require_radius(radius)?;
    if aut.letter_names().len() != oracle.gens().len()
        || aut.weights().iter().zip(oracle.gens().letters()).any(|(&w, l)| w != l.weight)
    {
        return Err(Error::Precondition("automaton alphabet does not match the generating set".into()));
    }
    let table = oracle.table();
    let pres = oracle.pres();
    let gens = oracle.gens();
    sweep(radius, aut.weights(), (aut.start(), 0u32), |&(s, g), a, m| {
        let h = pres.multiply(table.element(g as usize), &gens.letter(a).value)?;
        let hi = table.index_of(&h).expect("element within radius");
        let geodesic = table.length_at(hi) == m;
        let t = aut.next(s, a);
        Ok((t != aut.fail(), geodesic, (t, hi as u32)))
    })
}

/// Compares the languages of two automata over the same alphabet on all
/// words of length at most `radius`.
pub fn language_agreement(
    aut: &GeodesicAutomaton,
    reference: &GeodesicAutomaton,
    radius: u32,
) -> Result<ValidationReport> {
    if aut.weights() != reference.weights() {
        return Err(Error::Precondition("automata have different alphabets".into()));
    }
    sweep(radius, aut.weights(), (aut.start(), reference.start()), |&(s, r), a, _| {
        let t = aut.next(s, a);
        let u = reference.next(r, a);
        Ok((t != aut.fail(), u != reference.fail(), (t, u)))
    })
}
