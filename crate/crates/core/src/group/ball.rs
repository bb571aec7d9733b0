use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::gens::{eval, GeneratingSet, Word};
use super::presentation::{GroupElement, Presentation};
use crate::error::{Error, Result};

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 10_000_000;

/// Exact word lengths on a ball of the Cayley graph.
///
/// Elements are stored in order of increasing length; within one length
/// the order is the (deterministic) order in which the search settled
/// them. Callers should not depend on the within-length order.
#[derive(Debug, Clone)]
pub struct LengthTable {
    radius: u32,
    elements: Vec<GroupElement>,
    lengths: Vec<u32>,
    index: HashMap<GroupElement, u32>,
}

impl LengthTable {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn length(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).map(|&i| self.lengths[i as usize])
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn length_at(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u32)> {
        self.elements.iter().zip(self.lengths.iter().copied())
    }

    /// Number of elements of each length `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.radius as usize + 1];
        for &l in &self.lengths {
            out[l as usize] += 1;
        }
        out
    }

    /// Number of elements with length at most `r`; they form a prefix.
    pub fn count_within(&self, r: u32) -> usize {
        self.lengths.partition_point(|&l| l <= r)
    }
}

/// Weighted search from the identity by right multiplication with `steps`.
fn weighted_search(pres: &Presentation, steps: &[(GroupElement, u32)], radius: u32, cap: usize) -> Result<LengthTable> {
    let mut found: Vec<GroupElement> = vec![pres.identity()];
    let mut tentative: Vec<u32> = vec![0];
    let mut index: HashMap<GroupElement, u32> = HashMap::new();
    index.insert(pres.identity(), 0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); radius as usize + 1];
    buckets[0].push(0);
    let mut settled: Vec<u32> = Vec::new();

    for r in 0..=radius {
        let bucket = core::mem::take(&mut buckets[r as usize]);
        for id in bucket {
            if tentative[id as usize] != r {
                continue;
            }
            settled.push(id);
            let g = found[id as usize].clone();
            for (value, weight) in steps {
                let nl = r + weight;
                if nl > radius {
                    continue;
                }
                let h = pres.multiply(&g, value)?;
                match index.get(&h) {
                    Some(&j) => {
                        if nl < tentative[j as usize] {
                            tentative[j as usize] = nl;
                            buckets[nl as usize].push(j);
                        }
                    }
                    None => {
                        if found.len() >= cap {
                            return Err(Error::ResourceCap { what: "ball size", cap });
                        }
                        let j = found.len() as u32;
                        index.insert(h.clone(), j);
                        found.push(h);
                        tentative.push(nl);
                        buckets[nl as usize].push(j);
                    }
                }
            }
        }
    }

    // Re-index in settling order so lengths are non-decreasing.
    let mut elements = Vec::with_capacity(settled.len());
    let mut lengths = Vec::with_capacity(settled.len());
    let mut slots: Vec<Option<GroupElement>> = found.into_iter().map(Some).collect();
    index.clear();
    for (new_id, &old) in settled.iter().enumerate() {
        let g = slots[old as usize].take().expect("settled once");
        index.insert(g.clone(), new_id as u32);
        elements.push(g);
        lengths.push(tentative[old as usize]);
    }
    Ok(LengthTable { radius, elements, lengths, index })
}

/// All elements of directed length at most `radius`, with default cap.
pub fn ball(pres: &Presentation, gens: &GeneratingSet, radius: u32) -> Result<LengthTable> {
    ball_with_cap(pres, gens, radius, DEFAULT_BALL_CAP)
}

pub fn ball_with_cap(pres: &Presentation, gens: &GeneratingSet, radius: u32, cap: usize) -> Result<LengthTable> {
    let steps: Vec<(GroupElement, u32)> = gens.letters().iter().map(|l| (l.value.clone(), l.weight)).collect();
    weighted_search(pres, &steps, radius, cap)
}

/// Ball in the undirected Cayley graph: edges may be crossed backwards at
/// the same weight.
pub fn undirected_ball(pres: &Presentation, gens: &GeneratingSet, radius: u32, cap: usize) -> Result<LengthTable> {
    let mut steps: Vec<(GroupElement, u32)> = Vec::with_capacity(2 * gens.len());
    for l in gens.letters() {
        steps.push((l.value.clone(), l.weight));
    }
    for l in gens.letters() {
        steps.push((pres.inverse(&l.value)?, l.weight));
    }
    weighted_search(pres, &steps, radius, cap)
}

/// `d(g, h) = l(g^-1 h)` when it is at most `cap`.
pub fn directed_distance(
    pres: &Presentation,
    gens: &GeneratingSet,
    g: &GroupElement,
    h: &GroupElement,
    cap: u32,
) -> Result<Option<u32>> {
    let target = pres.left_divide(g, h)?;
    let table = ball(pres, gens, cap)?;
    Ok(table.length(&target))
}

/// `k = max_a l(a^-1)`: the constant comparing `d(g,h)` with `d(h,g)`.
///
/// Balls of radius `max_weight`, twice that, and so on up to `cap` are
/// tried in turn, so the cap may be generous for groups of fast growth.
pub fn asym_constant(pres: &Presentation, gens: &GeneratingSet, cap: u32) -> Result<u32> {
    let mut radius = gens.max_weight().min(cap);
    loop {
        let table = ball(pres, gens, radius)?;
        match asym_constant_from(pres, gens, &table) {
            Err(Error::AbsentInverse { .. }) if radius < cap => radius = radius.saturating_mul(2).min(cap),
            other => return other,
        }
    }
}

pub(crate) fn asym_constant_from(pres: &Presentation, gens: &GeneratingSet, table: &LengthTable) -> Result<u32> {
    let mut k = 0;
    for letter in gens.letters() {
        let inv = pres.inverse(&letter.value)?;
        match table.length(&inv) {
            Some(l) => k = k.max(l),
            None => {
                return Err(Error::AbsentInverse { letter: letter.name.clone(), cap: table.radius() });
            }
        }
    }
    Ok(k)
}

/// Whether `len(word) = l(eval(word))`, using a ball of radius `len(word)`.
pub fn is_geodesic(word: &Word, gens: &GeneratingSet, pres: &Presentation, cap: usize) -> Result<bool> {
    let len = word.length(gens);
    let table = ball_with_cap(pres, gens, len, cap)?;
    let g = eval(word, gens, pres)?;
    Ok(table.length(&g) == Some(len))
}

/// Outcome of the bounded generation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationCheck {
    pub radius: u32,
    pub last_sphere: u64,
    /// For virtually abelian groups: whether the letters map onto `F`.
    pub onto_finite_quotient: bool,
}

impl GenerationCheck {
    /// A warning is due when the group is known to be infinite but the
    /// outermost sphere is empty, or the letters miss part of `F`.
    pub fn warrants_warning(&self, known_infinite: bool) -> bool {
        (known_infinite && self.last_sphere == 0) || !self.onto_finite_quotient
    }
}

/// Generation cannot be decided; this inspects a finite ball instead.
pub fn generation_check(pres: &Presentation, gens: &GeneratingSet, radius: u32) -> Result<GenerationCheck> {
    let table = ball(pres, gens, radius)?;
    let last_sphere = *table.sphere_sizes().last().unwrap_or(&0);
    let onto_finite_quotient = match pres {
        Presentation::VirtuallyAbelian(va) => {
            let order = va.quotient_order();
            let mut reached = vec![false; order];
            reached[va.identity_coset() as usize] = true;
            let mut stack = vec![va.identity_coset()];
            while let Some(f) = stack.pop() {
                for g in gens.values() {
                    let h = va.coset_product(f, g.coset().unwrap_or(0));
                    if !reached[h as usize] {
                        reached[h as usize] = true;
                        stack.push(h);
                    }
                }
            }
            reached.iter().all(|&r| r)
        }
        Presentation::Matrix(_) => true,
    };
    Ok(GenerationCheck { radius, last_sphere, onto_finite_quotient })
}

/// Shared brute-force context: a presentation, generating set and a
/// precomputed directed ball.
#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    pres: &'a Presentation,
    gens: &'a GeneratingSet,
    table: LengthTable,
}

impl<'a> Oracle<'a> {
    pub fn new(pres: &'a Presentation, gens: &'a GeneratingSet, radius: u32) -> Result<Self> {
        Self::with_cap(pres, gens, radius, DEFAULT_BALL_CAP)
    }

    pub fn with_cap(pres: &'a Presentation, gens: &'a GeneratingSet, radius: u32, cap: usize) -> Result<Self> {
        let table = ball_with_cap(pres, gens, radius, cap)?;
        Ok(Self { pres, gens, table })
    }

    pub fn pres(&self) -> &'a Presentation {
        self.pres
    }

    pub fn gens(&self) -> &'a GeneratingSet {
        self.gens
    }

    pub fn table(&self) -> &LengthTable {
        &self.table
    }

    pub fn radius(&self) -> u32 {
        self.table.radius()
    }

    pub fn length(&self, g: &GroupElement) -> Option<u32> {
        self.table.length(g)
    }

    pub fn eval(&self, word: &Word) -> Result<GroupElement> {
        eval(word, self.gens, self.pres)
    }

    /// `d(g, h)`, or `None` when it exceeds the oracle radius.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> Result<Option<u32>> {
        Ok(self.table.length(&self.pres.left_divide(g, h)?))
    }

    pub fn require_radius(&self, needed: u32) -> Result<()> {
        if needed > self.radius() {
            return Err(Error::BeyondOracle { needed, radius: self.radius() });
        }
        Ok(())
    }

    pub fn is_geodesic(&self, word: &Word) -> Result<bool> {
        let len = word.length(self.gens);
        self.require_radius(len)?;
        let g = self.eval(word)?;
        Ok(self.table.length(&g) == Some(len))
    }

    pub fn asym_constant(&self) -> Result<u32> {
        asym_constant_from(self.pres, self.gens, &self.table)
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.gens.letter(i).name
    }

    pub fn describe(&self, word: &Word) -> alloc::string::String {
        if word.is_empty() {
            return "ε".to_string();
        }
        self.gens.format_word(word)
    }
}
