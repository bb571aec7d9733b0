use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::hull::{self, det};
use super::{abelian_letters, q, translation_length, virtually_abelian, Ray};
use crate::error::{Error, Result};
use crate::group::{ball, eval, GeneratingSet, GroupElement, LengthTable, Presentation, Word};

/// Rational ordered triangulation of the sphere of directions, given by
/// vertex rays and simplices of at most `rank` rays each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    rank: usize,
    rays: Vec<Ray>,
    simplices: Vec<Vec<usize>>,
    ordered: bool,
}

/// Coefficients of `v` in the linearly independent columns `cols`, if
/// `v` lies in their span.
fn solve(cols: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = v.len();
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let p = (r..m).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, r);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&p| a[p][k].clone()).collect())
}

impl Triangulation {
    pub fn new(rank: usize, rays: Vec<Ray>, simplices: Vec<Vec<usize>>, ordered: bool) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidTriangulation("rank must be positive".into()));
        }
        if let Some(r) = rays.iter().find(|r| r.dim() != rank) {
            return Err(Error::InvalidTriangulation(format!("ray {r} does not have {rank} coordinates")));
        }
        if simplices.is_empty() {
            return Err(Error::InvalidTriangulation("no simplices".into()));
        }
        for s in &simplices {
            if s.is_empty() || s.len() > rank {
                return Err(Error::InvalidTriangulation(format!("simplex {s:?} must have 1 to {rank} rays")));
            }
            if let Some(&i) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidTriangulation(format!("ray index {i} out of range")));
            }
            let vs: Vec<Vec<BigRational>> = s.iter().map(|&i| rays[i].rational()).collect();
            if hull::rank(&vs) < s.len() {
                return Err(Error::InvalidTriangulation(format!("rays of simplex {s:?} are dependent")));
            }
        }
        Ok(Self { rank, rays, simplices, ordered })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn ordered(&self) -> bool {
        self.ordered
    }

    /// Nonnegative coefficients of `v` in the rays of some simplex.
    pub fn locate(&self, v: &[i64]) -> Option<(usize, Vec<BigRational>)> {
        let target: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
        self.simplices.iter().enumerate().find_map(|(i, s)| {
            let cols: Vec<Vec<BigRational>> = s.iter().map(|&r| self.rays[r].rational()).collect();
            solve(&cols, &target).filter(|c| c.iter().all(|x| !x.is_negative())).map(|c| (i, c))
        })
    }

    /// First integer point of `[-bound, bound]^m` outside every cone.
    pub fn uncovered_point(&self, bound: i64) -> Option<Vec<i64>> {
        let mut cur = vec![-bound; self.rank];
        loop {
            if self.locate(&cur).is_none() {
                return Some(cur);
            }
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -bound;
            }
        }
    }

    /// Whether the finite quotient permutes the rays and the simplices.
    pub fn is_invariant(&self, pres: &Presentation) -> Result<bool> {
        let va = virtually_abelian(pres)?;
        for f in 0..va.quotient_order() as u32 {
            let mut image = Vec::with_capacity(self.rays.len());
            for r in &self.rays {
                let v = Ray::new(va.act(f, r.direction())?)?;
                match self.rays.iter().position(|s| *s == v) {
                    Some(i) => image.push(i),
                    None => return Ok(false),
                }
            }
            for s in &self.simplices {
                let mut mapped: Vec<usize> = s.iter().map(|&i| image[i]).collect();
                mapped.sort_unstable();
                let found = self.simplices.iter().any(|t| {
                    let mut t = t.clone();
                    t.sort_unstable();
                    t == mapped
                });
                if !found {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Words `w_v` for the rays of a triangulation, coset words `X`, and the
/// outcome of checking that `L'' X` reaches every element of a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeLanguage {
    pub scale: u64,
    /// Per ray: the integer point on the boundary of `N . C(A)` and a
    /// geodesic word for it.
    pub ray_words: Vec<(Vec<i64>, Word)>,
    pub simplices: Vec<Vec<usize>>,
    /// `H = d Z^m` lies in the lattice of every full simplex.
    pub lattice_index: u64,
    /// One word per right coset of `H`, shortlex least among geodesics.
    pub coset_words: Vec<Word>,
    pub checked_radius: u32,
    pub elements_checked: usize,
    /// Largest `len(word) - l(value)` over the checked elements.
    pub max_slack: u32,
    pub max_coset_length: u32,
}

impl ConeLanguage {
    /// The word of `L'' X` this language assigns to an element, if any.
    pub fn word_for(&self, g: &GroupElement, pres: &Presentation, gens: &GeneratingSet) -> Result<Option<Word>> {
        let va = virtually_abelian(pres)?;
        let d = self.lattice_index as i64;
        let key = coset_key(g, d);
        let Some(x) =
            self.coset_words.iter().find(|w| eval(w, gens, pres).map(|v| coset_key(&v, d)).ok() == Some(key.clone()))
        else {
            return Ok(None);
        };
        let xv = eval(x, gens, pres)?;
        let h = pres.multiply(g, &pres.inverse(&xv)?)?;
        if h.coset() != Some(va.identity_coset()) {
            return Ok(None);
        }
        let hv = h.vector().unwrap();
        for s in &self.simplices {
            let cols: Vec<Vec<BigRational>> =
                s.iter().map(|&r| self.ray_words[r].0.iter().map(|&x| q(x)).collect()).collect();
            let target: Vec<BigRational> = hv.iter().map(|&x| q(x)).collect();
            let Some(c) = solve(&cols, &target) else { continue };
            if c.iter().any(|x| x.is_negative() || !x.is_integer()) {
                continue;
            }
            let mut word = Word::empty();
            for (&r, n) in s.iter().zip(&c) {
                let n: usize = n.to_integer().try_into().map_err(|_| Error::Overflow)?;
                for _ in 0..n {
                    word = word.concat(&self.ray_words[r].1);
                }
            }
            return Ok(Some(word.concat(x)));
        }
        Ok(None)
    }

    /// All words of `L'' X` of length at most `radius`, sorted, without
    /// repeats.
    pub fn words_up_to(&self, radius: u32, gens: &GeneratingSet) -> Vec<Word> {
        fn extend(
            lang: &ConeLanguage,
            simplex: &[usize],
            prefix: Word,
            budget: u32,
            gens: &GeneratingSet,
            out: &mut Vec<Word>,
        ) {
            let Some((&r, rest)) = simplex.split_first() else {
                for x in &lang.coset_words {
                    if x.length(gens) <= budget {
                        out.push(prefix.concat(x));
                    }
                }
                return;
            };
            let w = &lang.ray_words[r].1;
            let len = w.length(gens);
            let mut prefix = prefix;
            let mut budget = budget;
            extend(lang, rest, prefix.clone(), budget, gens, out);
            while len > 0 && len <= budget {
                prefix = prefix.concat(w);
                budget -= len;
                extend(lang, rest, prefix.clone(), budget, gens, out);
            }
        }
        let mut out = Vec::new();
        for s in &self.simplices {
            extend(self, s, Word::empty(), radius, gens, &mut out);
        }
        out.sort_by(|a, b| a.shortlex_cmp(b, gens));
        out.dedup();
        out
    }
}

fn coset_key(g: &GroupElement, d: i64) -> (Vec<i64>, u32) {
    let v = g.vector().expect("virtually abelian").iter().map(|x| x.rem_euclid(d)).collect();
    (v, g.coset().unwrap())
}

/// Shortlex-least geodesic word for `g` using exact lengths from `table`.
fn least_geodesic(g: &GroupElement, table: &LengthTable, gens: &GeneratingSet, pres: &Presentation) -> Result<Word> {
    let total = table.length(g).ok_or(Error::BeyondOracle { needed: table.radius() + 1, radius: table.radius() })?;
    let mut word = Word::empty();
    let mut at = pres.identity();
    let mut left = total;
    while left > 0 {
        let mut moved = false;
        for (a, l) in gens.letters().iter().enumerate() {
            if l.weight > left {
                continue;
            }
            let next = pres.multiply(&at, &l.value)?;
            if table.length(&pres.left_divide(&next, g)?) == Some(left - l.weight) {
                word.push(a);
                at = next;
                left -= l.weight;
                moved = true;
                break;
            }
        }
        assert!(moved, "a geodesic continues");
    }
    Ok(word)
}

/// Builds the cone language of a triangulation at scale `N` and checks
/// that `L'' X` reaches every element of the ball of radius
/// `check_radius`.
pub fn cone_language(
    tri: &Triangulation,
    gens: &GeneratingSet,
    scale: u64,
    pres: &Presentation,
    check_radius: u32,
) -> Result<ConeLanguage> {
    let va = virtually_abelian(pres)?;
    if tri.rank() != va.rank() {
        return Err(Error::InvalidTriangulation(format!("rank {} does not match the group", tri.rank())));
    }
    let n = u32::try_from(scale).map_err(|_| Error::Overflow)?;
    let az = abelian_letters(gens, va);
    let az_gens = GeneratingSet::new(pres, az.iter().map(|&i| gens.letter(i).clone()).collect(), false)?;
    let full = ball(pres, gens, n.max(check_radius))?;
    let abelian = ball(pres, &az_gens, n)?;

    let mut ray_words = Vec::with_capacity(tri.rays().len());
    for ray in tri.rays() {
        let missing = || Error::NoGeodesicRepresentative { ray: format!("{ray}"), scale };
        let tau = translation_length(ray.direction(), gens, pres).map_err(|_| missing())?;
        let factor = q(n as i64) / tau;
        let point: Vec<BigRational> = ray.direction().iter().map(|&x| q(x) * &factor).collect();
        if point.iter().any(|x| !x.is_integer()) {
            return Err(missing());
        }
        let point: Vec<i64> =
            point.iter().map(|x| i64::try_from(x.to_integer()).map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
        let g = GroupElement::va(point.clone(), va.identity_coset());
        if full.length(&g) != Some(n) || abelian.length(&g) != Some(n) {
            return Err(missing());
        }
        let sub = least_geodesic(&g, &abelian, &az_gens, pres)?;
        let word = Word::new(sub.letters().iter().map(|&i| az[i]).collect());
        ray_words.push((point, word));
    }

    let mut index = 1i64;
    let mut full_simplices = 0;
    for s in tri.simplices() {
        if s.len() == tri.rank() {
            let m: Vec<Vec<BigRational>> = s.iter().map(|&r| ray_words[r].0.iter().map(|&x| q(x)).collect()).collect();
            let d = det(m).abs().to_integer();
            index = index.lcm(&i64::try_from(d).map_err(|_| Error::Overflow)?);
            full_simplices += 1;
        }
    }
    if full_simplices == 0 {
        return Err(Error::InvalidTriangulation("no simplex spans the space".into()));
    }

    // Coset words: shortlex-least geodesic word among elements of least
    // length in each right coset of H = index Z^m.
    let cosets = (index as usize).checked_pow(va.rank() as u32).and_then(|c| c.checked_mul(va.quotient_order()));
    let cosets = cosets.ok_or(Error::Overflow)?;
    let mut best: HashMap<(Vec<i64>, u32), (u32, Word)> = HashMap::new();
    let mut radius = 0;
    let mut table = full.clone();
    loop {
        for (g, l) in table.iter() {
            let key = coset_key(g, index);
            match best.get(&key) {
                Some((bl, _)) if *bl < l => continue,
                _ => {}
            }
            let w = least_geodesic(g, &table, gens, pres)?;
            match best.get_mut(&key) {
                Some((bl, bw)) => {
                    if l < *bl || w.shortlex_cmp(bw, gens).is_lt() {
                        *bl = l;
                        *bw = w;
                    }
                }
                None => {
                    best.insert(key, (l, w));
                }
            }
        }
        if best.len() == cosets {
            break;
        }
        radius = table.radius().max(radius) * 2 + 1;
        table = ball(pres, gens, radius)?;
        best.clear();
    }
    let mut coset_words: Vec<Word> = best.into_values().map(|(_, w)| w).collect();
    coset_words.sort_by(|a, b| a.shortlex_cmp(b, gens));
    let max_coset_length = coset_words.iter().map(|w| w.length(gens)).max().unwrap_or(0);

    let mut lang = ConeLanguage {
        scale,
        ray_words,
        simplices: tri.simplices().to_vec(),
        lattice_index: index as u64,
        coset_words,
        checked_radius: check_radius,
        elements_checked: 0,
        max_slack: 0,
        max_coset_length,
    };

    let mut max_slack = 0;
    let mut checked = 0;
    for (g, l) in full.iter() {
        if l > check_radius {
            continue;
        }
        let Some(w) = lang.word_for(g, pres, gens)? else {
            return Err(Error::SurjectivityFailed(format!(
                "no word of the cone language reaches the element {:?} of length {l}",
                g
            )));
        };
        if eval(&w, gens, pres)? != *g {
            return Err(Error::SurjectivityFailed("a cone word evaluates to the wrong element".into()));
        }
        max_slack = max_slack.max(w.length(gens) - l);
        checked += 1;
    }
    lang.elements_checked = checked;
    lang.max_slack = max_slack;
    Ok(lang)
}
