//! Brute-force oracle: group arithmetic written out by hand and every
//! word up to a radius enumerated explicitly.

use std::collections::HashMap;

use geodesic_core::group::{GeneratingSet, GroupElement, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    Va(Vec<i64>, u32),
    Mat([i64; 4]),
}

#[derive(Debug, Clone)]
pub enum Model {
    /// `(v, f)(w, g) = (v + action[f] w, table[f][g])`.
    Va { action: Vec<Vec<Vec<i64>>>, table: Vec<Vec<u32>> },
    /// 2x2 integer matrices up to sign.
    Psl,
}

impl Model {
    pub fn free_abelian() -> Self {
        Model::Va { action: vec![vec![]], table: vec![vec![0]] }
    }

    pub fn swap() -> Self {
        Model::Va {
            action: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]],
            table: vec![vec![0, 1], vec![1, 0]],
        }
    }
}

fn norm(m: [i64; 4]) -> [i64; 4] {
    let first = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if first < 0 {
        m.map(|x| -x)
    } else {
        m
    }
}

pub fn key(g: &GroupElement) -> Key {
    match g {
        GroupElement::Va { vector, coset } => Key::Va(vector.clone(), *coset),
        GroupElement::Mat(m) => {
            let e = m.entries();
            Key::Mat(norm([e[0], e[1], e[2], e[3]]))
        }
    }
}

pub struct Brute {
    model: Model,
    letters: Vec<Key>,
    weights: Vec<u32>,
    pub radius: u32,
    /// Every word of length at most `radius`, shortlex ordered, with its
    /// value and length.
    pub words: Vec<(Word, Key, u32)>,
    len: HashMap<Key, u32>,
    by_value: HashMap<Key, Vec<usize>>,
}

impl Brute {
    pub fn new(model: Model, gens: &GeneratingSet, radius: u32) -> Self {
        let letters: Vec<Key> = gens.letters().iter().map(|l| key(&l.value)).collect();
        let weights: Vec<u32> = gens.letters().iter().map(|l| l.weight).collect();
        let mut b =
            Brute { model, letters, weights, radius, words: Vec::new(), len: HashMap::new(), by_value: HashMap::new() };
        let id = b.identity();
        let mut frontier = vec![(Word::empty(), id, 0u32)];
        let mut all = Vec::new();
        while let Some((w, k, l)) = frontier.pop() {
            for a in 0..b.letters.len() {
                let m = l + b.weights[a];
                if m <= radius {
                    let mut u = w.clone();
                    u.push(a);
                    frontier.push((u, b.mul(&k, &b.letters[a].clone()), m));
                }
            }
            all.push((w, k, l));
        }
        all.sort_by(|x, y| x.2.cmp(&y.2).then_with(|| x.0.cmp(&y.0)));
        for (i, (_, k, l)) in all.iter().enumerate() {
            let e = b.len.entry(k.clone()).or_insert(*l);
            *e = (*e).min(*l);
            b.by_value.entry(k.clone()).or_default().push(i);
        }
        b.words = all;
        b
    }

    pub fn identity(&self) -> Key {
        match &self.model {
            Model::Va { .. } => {
                let m = match &self.letters[0] {
                    Key::Va(v, _) => v.len(),
                    Key::Mat(_) => unreachable!(),
                };
                Key::Va(vec![0; m], 0)
            }
            Model::Psl => Key::Mat([1, 0, 0, 1]),
        }
    }

    pub fn mul(&self, x: &Key, y: &Key) -> Key {
        match (&self.model, x, y) {
            (Model::Va { action, table }, Key::Va(v, f), Key::Va(w, g)) => {
                let a = &action[*f as usize];
                let aw: Vec<i64> = if a.is_empty() {
                    w.clone()
                } else {
                    a.iter().map(|row| row.iter().zip(w).map(|(p, q)| p * q).sum()).collect()
                };
                Key::Va(v.iter().zip(&aw).map(|(p, q)| p + q).collect(), table[*f as usize][*g as usize])
            }
            (Model::Psl, Key::Mat(a), Key::Mat(b)) => Key::Mat(norm([
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ])),
            _ => unreachable!(),
        }
    }

    pub fn inv(&self, x: &Key) -> Key {
        match (&self.model, x) {
            (Model::Va { action, table }, Key::Va(v, f)) => {
                let fi = (0..table.len() as u32).find(|&g| table[*f as usize][g as usize] == 0).unwrap();
                let a = &action[fi as usize];
                let av: Vec<i64> = if a.is_empty() {
                    v.clone()
                } else {
                    a.iter().map(|row| row.iter().zip(v).map(|(p, q)| p * q).sum()).collect()
                };
                Key::Va(av.iter().map(|x| -x).collect(), fi)
            }
            (Model::Psl, Key::Mat(a)) => Key::Mat(norm([a[3], -a[1], -a[2], a[0]])),
            _ => unreachable!(),
        }
    }

    pub fn value(&self, w: &Word) -> Key {
        w.letters().iter().fold(self.identity(), |k, &a| self.mul(&k, &self.letters[a]))
    }

    pub fn word_length(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&a| self.weights[a]).sum()
    }

    /// Shortest length of a word for `k`, if one has length at most `radius`.
    pub fn length(&self, k: &Key) -> Option<u32> {
        self.len.get(k).copied()
    }

    pub fn is_geodesic(&self, w: &Word) -> bool {
        let l = self.word_length(w);
        assert!(l <= self.radius, "word beyond the brute-force radius");
        self.length(&self.value(w)) == Some(l)
    }

    pub fn dist(&self, g: &Key, h: &Key) -> Option<u32> {
        self.length(&self.mul(&self.inv(g), h))
    }

    pub fn path(&self, w: &Word) -> Vec<Key> {
        let mut out = vec![self.identity()];
        for &a in w.letters() {
            let next = self.mul(out.last().unwrap(), &self.letters[a]);
            out.push(next);
        }
        out
    }

    /// Direct search for a monotone staircase within `delta`.
    pub fn async_ft(&self, u: &Word, v: &Word, delta: u32) -> bool {
        let pu = self.path(u);
        let pv = self.path(v);
        let ok = |i: usize, j: usize| self.dist(&pu[i], &pv[j]).is_some_and(|d| d <= delta);
        if !ok(0, 0) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((i, j)) = stack.pop() {
            if i + 1 == pu.len() && j + 1 == pv.len() {
                return true;
            }
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                let (a, b) = (i + di, j + dj);
                if a < pu.len() && b < pv.len() && ok(a, b) && seen.insert((a, b)) {
                    stack.push((a, b));
                }
            }
        }
        false
    }

    /// Pointwise check at integer times; weighted letters hold the last
    /// vertex until the next is reached.
    pub fn sync_ft(&self, u: &Word, v: &Word, delta: u32) -> bool {
        let at = |w: &Word, path: &[Key], t: u32| -> Key {
            let mut acc = 0;
            let mut idx = 0;
            for (i, &a) in w.letters().iter().enumerate() {
                acc += self.weights[a];
                if acc <= t {
                    idx = i + 1;
                }
            }
            path[idx].clone()
        };
        let pu = self.path(u);
        let pv = self.path(v);
        let end = self.word_length(u).max(self.word_length(v));
        (0..=end).all(|t| self.dist(&at(u, &pu, t), &at(v, &pv, t)).is_some_and(|d| d <= delta))
    }

    /// Shortlex-least strictly shorter word with the same value that
    /// asynchronously fellow travels `w`.
    pub fn falsify(&self, w: &Word, delta: u32) -> Option<Word> {
        let k = self.value(w);
        let l = self.word_length(w);
        self.by_value[&k]
            .iter()
            .map(|&i| &self.words[i])
            .take_while(|(_, _, m)| *m < l)
            .find(|(u, _, _)| self.async_ft(w, u, delta))
            .map(|(u, _, _)| u.clone())
    }

    /// Shortlex-least non-geodesic word that [`Brute::falsify`] cannot
    /// shorten, among all words of the enumeration.
    pub fn fft_counterexample(&self, delta: u32) -> Option<Word> {
        self.words
            .iter()
            .filter(|(w, _, _)| !self.is_geodesic(w))
            .find(|(w, _, _)| self.falsify(w, delta).is_none())
            .map(|(w, _, _)| w.clone())
    }

    /// Number of words of each length that are geodesic.
    pub fn geodesic_counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.radius as usize + 1];
        for (w, _, l) in &self.words {
            if self.is_geodesic(w) {
                out[*l as usize] += 1;
            }
        }
        out
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.radius as usize + 1];
        for l in self.len.values() {
            out[*l as usize] += 1;
        }
        out
    }
}
