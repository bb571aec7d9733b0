use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::presentation::{GroupElement, Presentation};
use crate::error::{Error, Result};

/// A named generator with its group value and positive integer weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub value: GroupElement,
    pub weight: u32,
}

impl Letter {
    pub fn new(name: impl Into<String>, value: GroupElement, weight: u32) -> Self {
        Self { name: name.into(), value, weight }
    }
}

/// An ordered, weighted monoid generating set.
///
/// Letter order is significant: it fixes the lexicographic order on words
/// used by every deterministic search in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    letters: Vec<Letter>,
    inverse_closed: bool,
}

impl GeneratingSet {
    pub fn new(pres: &Presentation, letters: Vec<Letter>, inverse_closed: bool) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidGenerators("no letters".into()));
        }
        if letters.len() > u16::MAX as usize {
            return Err(Error::InvalidGenerators("too many letters".into()));
        }
        let mut normalized = Vec::with_capacity(letters.len());
        for (i, letter) in letters.into_iter().enumerate() {
            if letter.weight == 0 {
                return Err(Error::InvalidGenerators(format!("letter `{}` has weight 0", letter.name)));
            }
            if letter.name.is_empty() || letter.name.chars().any(|c| c.is_whitespace() || c == '^') {
                return Err(Error::InvalidGenerators(format!("letter name `{}` is not a single token", letter.name)));
            }
            if normalized.iter().any(|l: &Letter| l.name == letter.name) {
                return Err(Error::InvalidGenerators(format!("duplicate letter name `{}` at {i}", letter.name)));
            }
            let value = pres.normalize(letter.value)?;
            normalized.push(Letter { name: letter.name, value, weight: letter.weight });
        }
        if inverse_closed {
            for letter in &normalized {
                let inv = pres.inverse(&letter.value)?;
                if !normalized.iter().any(|l| l.value == inv) {
                    return Err(Error::InvalidGenerators(format!(
                        "inverse_closed claimed but the inverse of `{}` is not a letter value",
                        letter.name
                    )));
                }
            }
        }
        Ok(Self { letters: normalized, inverse_closed })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, index: usize) -> &Letter {
        &self.letters[index]
    }

    pub fn inverse_closed(&self) -> bool {
        self.inverse_closed
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.letters[index].weight
    }

    pub fn max_weight(&self) -> u32 {
        self.letters.iter().map(|l| l.weight).max().unwrap_or(1)
    }

    pub fn min_weight(&self) -> u32 {
        self.letters.iter().map(|l| l.weight).min().unwrap_or(1)
    }

    pub fn all_weight_one(&self) -> bool {
        self.letters.iter().all(|l| l.weight == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }

    pub fn values(&self) -> impl Iterator<Item = &GroupElement> {
        self.letters.iter().map(|l| &l.value)
    }

    /// Parses whitespace-separated letter names; `name^k` repeats a letter.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            let (name, count) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: usize = exp.parse().map_err(|_| Error::UnknownLetter(String::from(token)))?;
                    (name, k)
                }
                None => (token, 1),
            };
            let idx = self.index_of(name).ok_or_else(|| Error::UnknownLetter(String::from(name)))?;
            out.extend(core::iter::repeat_n(idx, count));
        }
        Ok(Word(out))
    }

    /// Space-separated letter names; the empty word renders as `ε`.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return String::from("ε");
        }
        let mut s = String::new();
        for (i, &l) in word.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&self.letters[l].name);
        }
        s
    }
}

/// A word over a generating set, stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn num_letters(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `len(w)`: sum of the letter weights.
    pub fn length(&self, gens: &GeneratingSet) -> u32 {
        self.0.iter().map(|&l| gens.weight(l)).sum()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn check(&self, gens: &GeneratingSet) -> Result<()> {
        match self.0.iter().find(|&&l| l >= gens.len()) {
            Some(&index) => Err(Error::LetterOutOfRange { index, size: gens.len() }),
            None => Ok(()),
        }
    }

    /// Shortlex comparison: weighted length first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word, gens: &GeneratingSet) -> Ordering {
        self.length(gens).cmp(&other.length(gens)).then_with(|| self.0.cmp(&other.0))
    }
}

/// Value of a word, multiplying letter values left to right.
pub fn eval(word: &Word, gens: &GeneratingSet, pres: &Presentation) -> Result<GroupElement> {
    word.check(gens)?;
    let mut g = pres.identity();
    for &l in &word.0 {
        g = pres.multiply(&g, &gens.letter(l).value)?;
    }
    Ok(g)
}

/// Vertices visited by a word's path together with their cumulative times.
pub(crate) fn path_vertices(
    word: &Word,
    gens: &GeneratingSet,
    pres: &Presentation,
) -> Result<(Vec<GroupElement>, Vec<u32>)> {
    word.check(gens)?;
    let mut points = Vec::with_capacity(word.num_letters() + 1);
    let mut times = Vec::with_capacity(word.num_letters() + 1);
    let mut g = pres.identity();
    let mut t = 0;
    points.push(g.clone());
    times.push(0);
    for &l in &word.0 {
        g = pres.multiply(&g, &gens.letter(l).value)?;
        t += gens.weight(l);
        points.push(g.clone());
        times.push(t);
    }
    Ok((points, times))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z1() -> (Presentation, GeneratingSet) {
        let p = Presentation::free_abelian(1);
        let g = GeneratingSet::new(
            &p,
            vec![Letter::new("a", GroupElement::va(vec![1], 0), 1), Letter::new("A", GroupElement::va(vec![-1], 0), 1)],
            true,
        )
        .unwrap();
        (p, g)
    }

    #[test]
    fn eval_empty_is_identity() {
        let (p, g) = z1();
        assert_eq!(eval(&Word::empty(), &g, &p).unwrap(), p.identity());
    }

    #[test]
    fn eval_cancels() {
        let (p, g) = z1();
        let w = g.parse_word("a a A").unwrap();
        assert_eq!(eval(&w, &g, &p).unwrap(), GroupElement::va(vec![1], 0));
    }

    #[test]
    fn parse_powers_and_format() {
        let (_, g) = z1();
        let w = g.parse_word("a^3 A").unwrap();
        assert_eq!(w.letters(), &[0, 0, 0, 1]);
        assert_eq!(g.format_word(&w), "a a a A");
        assert!(g.parse_word("b").is_err());
    }

    #[test]
    fn rejects_duplicates_and_false_inverse_claims() {
        let p = Presentation::free_abelian(1);
        let dup = GeneratingSet::new(
            &p,
            vec![Letter::new("a", GroupElement::va(vec![1], 0), 1), Letter::new("a", GroupElement::va(vec![2], 0), 1)],
            false,
        );
        assert!(matches!(dup, Err(Error::InvalidGenerators(_))));
        let one_way = GeneratingSet::new(&p, vec![Letter::new("a", GroupElement::va(vec![1], 0), 1)], true);
        assert!(matches!(one_way, Err(Error::InvalidGenerators(_))));
    }

    #[test]
    fn out_of_range_letter() {
        let (p, g) = z1();
        assert!(matches!(eval(&Word::new(vec![5]), &g, &p), Err(Error::LetterOutOfRange { .. })));
    }
}
