//! Fellow travelling of paths and the falsification-by-fellow-traveller
//! property.
//!
//! Paths are sampled at their vertices. Distances are directed: a word
//! `v` stays within `delta` of `u` at a pair of vertices `(u(i), v(j))`
//! when `d(u(i), v(j)) <= delta`.
//!
//! The sweep in [`verify_fft`] does not enumerate words. For a word `u`
//! it tracks a *corridor profile*: for each `x` with `l(x) <= delta`, the
//! least length of a word `v` whose path asynchronously fellow travels
//! `u` and ends at `u x`, minus `len(u)`. The profile of `u a` depends only
//! on the profile of `u` and on `a`, and `u` is falsified exactly when the
//! profile is negative at the identity. Words are therefore explored as
//! pairs (profile, element), one representative word per pair.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::group::{GeneratingSet, GroupElement, Oracle, Word};

const NONE: u32 = u32::MAX;
const INF: i32 = i32::MAX;

/// Default cap on (profile, element) pairs held by [`verify_fft`].
pub const DEFAULT_PAIR_CAP: usize = 5_000_000;

/// Outcome of a falsification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FellowTravelReport {
    pub delta: u32,
    pub radius: u32,
    pub holds: bool,
    /// Shortlex-least non-geodesic word with no shorter fellow traveller.
    pub counterexample: Option<(Word, String)>,
    /// Non-geodesic words examined, one per geodesic representative
    /// prefix class and final letter.
    pub words_checked: u64,
    pub falsified: u64,
    /// Distinct corridor profiles met during the sweep.
    pub profiles: usize,
    /// The shortlex-least failing words, at most `failure_cap` of them.
    /// Each is the least word of its (profile, element) class.
    pub failures: Vec<Word>,
}

/// Limits for [`verify_fft_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FftOptions {
    pub pair_cap: usize,
    pub failure_cap: usize,
}

impl Default for FftOptions {
    fn default() -> Self {
        Self { pair_cap: DEFAULT_PAIR_CAP, failure_cap: 256 }
    }
}

fn vertex_at(times: &[u32], t: u32) -> usize {
    times.partition_point(|&s| s <= t) - 1
}

/// Synchronous fellow travelling: `d(u(t), v(t)) <= delta` for every
/// integer time `t`, a path resting at its last vertex once finished.
/// With weighted letters `u(t)` is the last vertex reached by time `t`.
pub fn sync_fellow_travel(u: &Word, v: &Word, delta: u32, oracle: &Oracle) -> Result<bool> {
    oracle.require_radius(delta)?;
    let (pu, tu) = crate::group::path_vertices(u, oracle.gens(), oracle.pres())?;
    let (pv, tv) = crate::group::path_vertices(v, oracle.gens(), oracle.pres())?;
    let end = (*tu.last().unwrap()).max(*tv.last().unwrap());
    for t in 0..=end {
        let a = &pu[vertex_at(&tu, t)];
        let b = &pv[vertex_at(&tv, t)];
        match oracle.distance(a, b)? {
            Some(d) if d <= delta => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Asynchronous fellow travelling: a monotone staircase through the grid
/// of vertex pairs from `(0,0)` to `(|u|,|v|)` on which every visited pair
/// is within `delta`.
pub fn async_fellow_travel(u: &Word, v: &Word, delta: u32, oracle: &Oracle) -> Result<bool> {
    oracle.require_radius(delta)?;
    let (pu, _) = crate::group::path_vertices(u, oracle.gens(), oracle.pres())?;
    let (pv, _) = crate::group::path_vertices(v, oracle.gens(), oracle.pres())?;
    let (n, m) = (pu.len(), pv.len());
    let mut reach = vec![false; n * m];
    for i in 0..n {
        for j in 0..m {
            let from_prev = (i == 0 && j == 0)
                || (i > 0 && reach[(i - 1) * m + j])
                || (j > 0 && reach[i * m + j - 1])
                || (i > 0 && j > 0 && reach[(i - 1) * m + j - 1]);
            if !from_prev {
                continue;
            }
            if let Some(d) = oracle.distance(&pu[i], &pv[j])? {
                reach[i * m + j] = d <= delta;
            }
        }
    }
    Ok(reach[n * m - 1])
}

/// Adjacency on the directed ball `D = {x : l(x) <= delta}`.
struct Corridor {
    size: usize,
    letters: usize,
    weights: Vec<i32>,
    /// `x b`, indexed `x * letters + b`.
    right: Vec<u32>,
    /// `a^-1 x` as an index into the extended set, indexed `a * size + x`.
    back: Vec<u32>,
    /// `y b` for `y` in the extended set, indexed `y * letters + b`.
    ext_right: Vec<u32>,
    /// Pairs `(x, b)` with `x b = y`, per `y` in `D`.
    preds: Vec<Vec<(u32, u16)>>,
}

impl Corridor {
    fn new(oracle: &Oracle, delta: u32, cap: usize) -> Result<Self> {
        oracle.require_radius(delta)?;
        let pres = oracle.pres();
        let gens = oracle.gens();
        let table = oracle.table();
        let size = table.count_within(delta);
        let letters = gens.len();
        let mut ext: Vec<GroupElement> = table.elements()[..size].to_vec();
        let mut ext_index: HashMap<GroupElement, u32> =
            ext.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let mut back = vec![NONE; letters * size];
        for (a, letter) in gens.letters().iter().enumerate() {
            let inv = pres.inverse(&letter.value)?;
            for x in 0..size {
                let y = pres.multiply(&inv, &ext[x])?;
                let id = match ext_index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if ext.len() >= cap {
                            return Err(Error::ResourceCap { what: "corridor size", cap });
                        }
                        let id = ext.len() as u32;
                        ext_index.insert(y.clone(), id);
                        ext.push(y);
                        id
                    }
                };
                back[a * size + x] = id;
            }
        }
        if ext.len().saturating_mul(letters) > cap.saturating_mul(8) {
            return Err(Error::ResourceCap { what: "corridor size", cap });
        }
        let mut ext_right = vec![NONE; ext.len() * letters];
        for (y, g) in ext.iter().enumerate() {
            for (b, letter) in gens.letters().iter().enumerate() {
                let h = pres.multiply(g, &letter.value)?;
                if let Some(&j) = ext_index.get(&h) {
                    if (j as usize) < size {
                        ext_right[y * letters + b] = j;
                    }
                }
            }
        }
        let right = ext_right[..size * letters].to_vec();
        let mut preds = vec![Vec::new(); size];
        for x in 0..size {
            for b in 0..letters {
                let y = right[x * letters + b];
                if y != NONE {
                    preds[y as usize].push((x as u32, b as u16));
                }
            }
        }
        let weights = gens.letters().iter().map(|l| l.weight as i32).collect();
        Ok(Self { size, letters, weights, right, back, ext_right, preds })
    }

    /// Relaxes `phi` along letters inside `D`.
    fn close(&self, phi: &mut [i32]) {
        let mut heap: BinaryHeap<Reverse<(i32, u32)>> =
            phi.iter().enumerate().filter(|(_, &v)| v < INF).map(|(i, &v)| Reverse((v, i as u32))).collect();
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > phi[x as usize] {
                continue;
            }
            for b in 0..self.letters {
                let y = self.right[x as usize * self.letters + b];
                if y == NONE {
                    continue;
                }
                let nd = d + self.weights[b];
                if nd < phi[y as usize] {
                    phi[y as usize] = nd;
                    heap.push(Reverse((nd, y)));
                }
            }
        }
    }

    fn start(&self, oracle: &Oracle) -> Vec<i32> {
        (0..self.size).map(|i| oracle.table().length_at(i) as i32).collect()
    }

    fn step(&self, phi: &[i32], a: usize) -> Vec<i32> {
        let wa = self.weights[a];
        let mut out = vec![INF; self.size];
        for (x, &v) in phi.iter().enumerate() {
            if v == INF {
                continue;
            }
            let y = self.back[a * self.size + x] as usize;
            if y < self.size && v - wa < out[y] {
                out[y] = v - wa;
            }
            for b in 0..self.letters {
                let z = self.ext_right[y * self.letters + b];
                if z != NONE {
                    let nv = v + self.weights[b] - wa;
                    if nv < out[z as usize] {
                        out[z as usize] = nv;
                    }
                }
            }
        }
        self.close(&mut out);
        out
    }
}

/// Hash-consed corridor profiles with memoized transitions.
struct Profiles<'c> {
    corridor: &'c Corridor,
    index: HashMap<Vec<i32>, u32>,
    list: Vec<Vec<i32>>,
    memo: HashMap<(u32, u16), u32>,
}

impl<'c> Profiles<'c> {
    fn new(corridor: &'c Corridor) -> Self {
        Self { corridor, index: HashMap::new(), list: Vec::new(), memo: HashMap::new() }
    }

    fn intern(&mut self, phi: Vec<i32>) -> u32 {
        if let Some(&id) = self.index.get(&phi) {
            return id;
        }
        let id = self.list.len() as u32;
        self.index.insert(phi.clone(), id);
        self.list.push(phi);
        id
    }

    fn step(&mut self, p: u32, a: usize) -> u32 {
        if let Some(&q) = self.memo.get(&(p, a as u16)) {
            return q;
        }
        let next = self.corridor.step(&self.list[p as usize], a);
        let q = self.intern(next);
        self.memo.insert((p, a as u16), q);
        q
    }

    fn at_identity(&self, p: u32) -> i32 {
        self.list[p as usize][0]
    }
}

/// Shortest word with the value of `word` whose path asynchronously
/// `delta`-fellow travels that of `word`, if it is strictly shorter.
/// Among shortest candidates the lexicographically least is returned.
pub fn falsify(word: &Word, delta: u32, oracle: &Oracle) -> Result<Option<Word>> {
    word.check(oracle.gens())?;
    if oracle.is_geodesic(word)? {
        return Err(Error::Precondition(format!("`{}` is geodesic and cannot be falsified", oracle.describe(word))));
    }
    let corridor = Corridor::new(oracle, delta, DEFAULT_PAIR_CAP)?;
    let gens = oracle.gens();
    let n = word.num_letters();
    let size = corridor.size;
    let k = corridor.letters;

    // Cost-to-go from each node (i, x) to (n, identity).
    let mut togo: Vec<Vec<i32>> = vec![vec![INF; size]; n + 1];
    togo[n][0] = 0;
    backward_close(&corridor, &mut togo[n]);
    for i in (0..n).rev() {
        let a = word.letters()[i];
        let mut layer = vec![INF; size];
        for x in 0..size {
            let y = corridor.back[a * size + x] as usize;
            let mut best = INF;
            if y < size {
                best = togo[i + 1][y];
            }
            for b in 0..k {
                let z = corridor.ext_right[y * k + b];
                if z != NONE && togo[i + 1][z as usize] != INF {
                    best = best.min(togo[i + 1][z as usize] + corridor.weights[b]);
                }
            }
            layer[x] = best;
        }
        backward_close(&corridor, &mut layer);
        togo[i] = layer;
    }

    let optimum = togo[0][0];
    if optimum == INF || optimum >= word.length(gens) as i32 {
        return Ok(None);
    }

    let advance = |nodes: &mut Vec<(usize, u32)>| {
        let mut seen: hashbrown::HashSet<(usize, u32)> = nodes.iter().copied().collect();
        let mut i = 0;
        while i < nodes.len() {
            let (layer, x) = nodes[i];
            if layer < n {
                let a = word.letters()[layer];
                let y = corridor.back[a * size + x as usize];
                if (y as usize) < size && seen.insert((layer + 1, y)) {
                    nodes.push((layer + 1, y));
                }
            }
            i += 1;
        }
    };
    let best_of = |nodes: &[(usize, u32)]| nodes.iter().map(|&(l, x)| togo[l][x as usize]).min().unwrap_or(INF);

    let mut nodes = vec![(0usize, 0u32)];
    advance(&mut nodes);
    let mut budget = optimum;
    let mut out = Word::empty();
    while budget > 0 {
        let mut chosen = None;
        for b in 0..k {
            let wb = corridor.weights[b];
            if wb > budget {
                continue;
            }
            let mut next = Vec::new();
            let mut seen = hashbrown::HashSet::new();
            for &(layer, x) in &nodes {
                let z = corridor.right[x as usize * k + b];
                if z != NONE && seen.insert((layer, z)) {
                    next.push((layer, z));
                }
                if layer < n {
                    let a = word.letters()[layer];
                    let y = corridor.back[a * size + x as usize] as usize;
                    let z = corridor.ext_right[y * k + b];
                    if z != NONE && seen.insert((layer + 1, z)) {
                        next.push((layer + 1, z));
                    }
                }
            }
            advance(&mut next);
            if best_of(&next) == budget - wb {
                chosen = Some((b, next));
                break;
            }
        }
        let (b, next) = chosen.expect("optimal continuation exists");
        out.push(b);
        budget -= corridor.weights[b];
        nodes = next;
    }
    Ok(Some(out))
}

fn backward_close(corridor: &Corridor, h: &mut [i32]) {
    let mut heap: BinaryHeap<Reverse<(i32, u32)>> =
        h.iter().enumerate().filter(|(_, &v)| v < INF).map(|(i, &v)| Reverse((v, i as u32))).collect();
    while let Some(Reverse((d, y))) = heap.pop() {
        if d > h[y as usize] {
            continue;
        }
        for &(x, b) in &corridor.preds[y as usize] {
            let nd = d + corridor.weights[b as usize];
            if nd < h[x as usize] {
                h[x as usize] = nd;
                heap.push(Reverse((nd, x)));
            }
        }
    }
}

/// Checks every non-geodesic word of length at most `radius`.
pub fn verify_fft(oracle: &Oracle, delta: u32, radius: u32) -> Result<FellowTravelReport> {
    verify_fft_with(oracle, delta, radius, &FftOptions::default())
}

pub fn verify_fft_with(oracle: &Oracle, delta: u32, radius: u32, options: &FftOptions) -> Result<FellowTravelReport> {
    let cap = options.pair_cap;
    let failure_cap = options.failure_cap.max(1);
    if radius == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    oracle.require_radius(radius)?;
    let gens: &GeneratingSet = oracle.gens();
    let pres = oracle.pres();
    let table = oracle.table();
    let corridor = Corridor::new(oracle, delta, cap)?;
    let mut profiles = Profiles::new(&corridor);
    let start = profiles.intern({
        let mut s = corridor.start(oracle);
        corridor.close(&mut s);
        s
    });

    let mut buckets: Vec<HashMap<(u32, u32), Word>> = vec![HashMap::new(); radius as usize + 1];
    buckets[0].insert((start, 0), Word::empty());
    let mut held = 1usize;
    let mut failures: Vec<Word> = Vec::new();
    let mut words_checked = 0u64;
    let mut falsified = 0u64;

    for n in 0..=radius {
        if let Some(f) = failures.last() {
            if f.length(gens) <= n && failures.len() >= failure_cap {
                break;
            }
        }
        let mut level: Vec<((u32, u32), Word)> = core::mem::take(&mut buckets[n as usize]).into_iter().collect();
        held -= level.len();
        level.sort_by(|x, y| x.1.cmp(&y.1));
        for ((p, g), rep) in level {
            let element = table.element(g as usize).clone();
            for (a, letter) in gens.letters().iter().enumerate() {
                let m = n + letter.weight;
                if m > radius {
                    continue;
                }
                let h = pres.multiply(&element, &letter.value)?;
                let hi = table.index_of(&h).expect("within radius") as u32;
                let q = profiles.step(p, a);
                let mut w = rep.clone();
                w.push(a);
                if table.length_at(hi as usize) == m {
                    let slot = &mut buckets[m as usize];
                    match slot.get_mut(&(q, hi)) {
                        Some(existing) => {
                            if w < *existing {
                                *existing = w;
                            }
                        }
                        None => {
                            if held >= cap {
                                return Err(Error::ResourceCap { what: "fellow-traveller sweep pairs", cap });
                            }
                            held += 1;
                            slot.insert((q, hi), w);
                        }
                    }
                } else {
                    words_checked += 1;
                    if profiles.at_identity(q) < 0 {
                        falsified += 1;
                    } else {
                        record_failure(&mut failures, w, gens, failure_cap);
                    }
                }
            }
        }
    }

    let counterexample = failures.first().cloned().map(|w| {
        let note =
            format!("no shorter word {delta}-fellow travels `{}` (length {})", oracle.describe(&w), w.length(gens));
        (w, note)
    });
    Ok(FellowTravelReport {
        delta,
        radius,
        holds: counterexample.is_none(),
        counterexample,
        words_checked,
        falsified,
        profiles: profiles.list.len(),
        failures,
    })
}

fn record_failure(failures: &mut Vec<Word>, w: Word, gens: &GeneratingSet, cap: usize) {
    let at = failures.partition_point(|f| f.shortlex_cmp(&w, gens).is_lt());
    if at < cap {
        failures.insert(at, w);
        failures.truncate(cap);
    }
}

/// Least `delta <= delta_max` for which the sweep to `radius` holds.
pub fn min_fft_delta(oracle: &Oracle, radius: u32, delta_max: u32) -> Result<Option<u32>> {
    for delta in 0..=delta_max {
        if verify_fft(oracle, delta, radius)?.holds {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElement, Letter, Presentation};

    fn z2() -> (Presentation, GeneratingSet) {
        let p = Presentation::free_abelian(2);
        let g = GeneratingSet::new(
            &p,
            vec![
                Letter::new("a", GroupElement::va(vec![1, 0], 0), 1),
                Letter::new("A", GroupElement::va(vec![-1, 0], 0), 1),
                Letter::new("b", GroupElement::va(vec![0, 1], 0), 1),
                Letter::new("B", GroupElement::va(vec![0, -1], 0), 1),
            ],
            true,
        )
        .unwrap();
        (p, g)
    }

    #[test]
    fn commuting_paths_travel_together() {
        let (p, g) = z2();
        let o = Oracle::new(&p, &g, 4).unwrap();
        let u = g.parse_word("a b").unwrap();
        let v = g.parse_word("b a").unwrap();
        assert!(async_fellow_travel(&u, &v, 2, &o).unwrap());
        assert!(async_fellow_travel(&u, &v, 1, &o).unwrap());
        assert!(!async_fellow_travel(&u, &v, 0, &o).unwrap());
        assert!(!sync_fellow_travel(&u, &v, 1, &o).unwrap());
        let u = g.parse_word("a b a b").unwrap();
        let v = g.parse_word("b a b a").unwrap();
        assert!(sync_fellow_travel(&u, &v, 2, &o).unwrap());
    }

    #[test]
    fn falsify_backtrack() {
        let (p, g) = z2();
        let o = Oracle::new(&p, &g, 4).unwrap();
        let w = g.parse_word("a A b").unwrap();
        assert_eq!(falsify(&w, 2, &o).unwrap(), Some(g.parse_word("b").unwrap()));
        assert!(matches!(falsify(&g.parse_word("a b").unwrap(), 2, &o), Err(Error::Precondition(_))));
    }

    #[test]
    fn z2_holds() {
        let (p, g) = z2();
        let o = Oracle::new(&p, &g, 6).unwrap();
        let r = verify_fft(&o, 2, 6).unwrap();
        assert!(r.holds);
        assert!(r.words_checked > 0);
    }
}
