//! Translation lengths in the free abelian part of a virtually abelian
//! group, the polytope `C(A)`, good generating sets, hemisphere
//! predicates and cone languages.

mod cannon;
mod cone;
pub mod hull;
pub mod lp;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{ball, GeneratingSet, GroupElement, Letter, Presentation, VaPresentation, Word};
pub use cannon::{cannon_pattern, nerode_separation, NerodeWitness};
pub use cone::{cone_language, ConeLanguage, Triangulation};
pub use hull::Polytope;
use lp::LpOutcome;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// A primitive integer direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray(Vec<i64>);

impl Ray {
    pub fn new(direction: Vec<i64>) -> Result<Self> {
        let g = direction.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return Err(Error::Precondition("a ray needs a nonzero direction".into()));
        }
        Ok(Ray(direction.into_iter().map(|x| x / g).collect()))
    }

    pub fn direction(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Ray {
        Ray(self.0.iter().map(|x| -x).collect())
    }

    pub(crate) fn rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|&x| q(x)).collect()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn virtually_abelian(pres: &Presentation) -> Result<&VaPresentation> {
    pres.as_virtually_abelian().ok_or_else(|| Error::Unsupported("this needs a virtually abelian presentation".into()))
}

/// Indices of the letters whose values lie in `Z^m`.
pub fn abelian_letters(gens: &GeneratingSet, va: &VaPresentation) -> Vec<usize> {
    (0..gens.len()).filter(|&i| gens.letter(i).value.coset() == Some(va.identity_coset())).collect()
}

/// `tau(v) = min sum l_i len(a_i)` over `l >= 0` with `sum l_i a_i = v`,
/// taken over the letters with values in `Z^m`.
pub fn translation_length(v: &[i64], gens: &GeneratingSet, pres: &Presentation) -> Result<BigRational> {
    let va = virtually_abelian(pres)?;
    if v.len() != va.rank() {
        return Err(Error::Precondition(format!("vector has {} coordinates, rank is {}", v.len(), va.rank())));
    }
    let az = abelian_letters(gens, va);
    let cost: Vec<BigRational> = az.iter().map(|&i| q(gens.weight(i) as i64)).collect();
    let a: Vec<Vec<BigRational>> = (0..va.rank())
        .map(|row| az.iter().map(|&i| q(gens.letter(i).value.vector().expect("abelian")[row])).collect())
        .collect();
    let b: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
    if az.is_empty() {
        return if v.iter().all(|&x| x == 0) { Ok(BigRational::zero()) } else { Err(Error::NotInPositiveSpan) };
    }
    match lp::minimize(&cost, &a, &b) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::NotInPositiveSpan),
        LpOutcome::Unbounded => unreachable!("letter weights are positive"),
    }
}

/// `C(A)`: the convex hull of `a / len(a)` over letters with values in
/// `Z^m`, required to contain the origin in its interior.
pub fn translation_polytope(gens: &GeneratingSet, pres: &Presentation) -> Result<Polytope> {
    let va = virtually_abelian(pres)?;
    let points: Vec<Vec<BigRational>> = abelian_letters(gens, va)
        .into_iter()
        .map(|i| {
            let l = gens.letter(i);
            let w = q(l.weight as i64);
            l.value.vector().expect("abelian").iter().map(|&x| q(x) / &w).collect()
        })
        .collect();
    if points.is_empty() {
        return Err(Error::NotFullDimensional);
    }
    let p = Polytope::hull(&points)?;
    if !p.origin_interior() {
        return Err(Error::NotFullDimensional);
    }
    Ok(p)
}

/// Whether the finite quotient maps the vertex set of `p` to itself.
pub fn is_invariant(p: &Polytope, va: &VaPresentation) -> Result<bool> {
    for m in va.action() {
        for v in p.vertices() {
            let image: Vec<BigRational> = (0..m.dim())
                .map(|r| (0..m.dim()).fold(BigRational::zero(), |acc, c| acc + q(m.get(r, c)) * &v[c]))
                .collect();
            if !p.vertices().contains(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A good generating set together with its scale.
#[derive(Debug, Clone)]
pub struct GoodSet {
    pub gens: GeneratingSet,
    pub scale: u64,
    /// The vectors `C` had to contain, sorted.
    pub mandated: Vec<Vec<i64>>,
}

/// Largest scale tried by [`good_generating_set`].
pub const MAX_SCALE: u64 = 1 << 12;

/// Enlarges `base` by the integer points of `N . Q` for the least `N`
/// such that `N . Q` has integer vertices and contains every vector the
/// falsification argument for virtually abelian groups needs: the
/// abelian parts `n_w` of words `w` of at most three letters (after
/// removing a final letter of the right coset), and the values of
/// `b b'^-1` lying in `Z^m`. New letters have weight 1 and are named by
/// their coordinates, e.g. `[2,-1]`.
pub fn good_generating_set(base: &GeneratingSet, target: &Polytope, pres: &Presentation) -> Result<GoodSet> {
    let va = virtually_abelian(pres)?;
    if target.dim() != va.rank() || !target.origin_interior() {
        return Err(Error::NotFullDimensional);
    }
    if !is_invariant(target, va)? {
        return Err(Error::NotInvariant);
    }
    let identity_coset = va.identity_coset();
    // First letter of each coset, used to split off n_w.
    let mut coset_letter: Vec<Option<usize>> = vec![None; va.quotient_order()];
    for (i, l) in base.letters().iter().enumerate() {
        let f = l.value.coset().expect("virtually abelian") as usize;
        if coset_letter[f].is_none() {
            coset_letter[f] = Some(i);
        }
    }
    if coset_letter.iter().any(|c| c.is_none()) {
        return Err(Error::Precondition("the base letters must meet every coset of Z^m".into()));
    }

    let mut mandated: Vec<Vec<i64>> = Vec::new();
    let mut words: Vec<Word> = vec![Word::empty()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &words {
            for a in 0..base.len() {
                let mut u = w.clone();
                u.push(a);
                let g = crate::group::eval(&u, base, pres)?;
                let f = g.coset().expect("virtually abelian");
                let n = if f == identity_coset {
                    g
                } else {
                    let b = &base.letter(coset_letter[f as usize].unwrap()).value;
                    pres.multiply(&g, &pres.inverse(b)?)?
                };
                mandated.push(n.vector().expect("virtually abelian").to_vec());
                next.push(u);
            }
        }
        words = next;
    }
    for x in base.letters() {
        for y in base.letters() {
            let g = pres.multiply(&x.value, &pres.inverse(&y.value)?)?;
            if g.coset() == Some(identity_coset) {
                mandated.push(g.vector().unwrap().to_vec());
            }
        }
    }
    mandated.sort();
    mandated.dedup();

    let mut scale = 1u64;
    let scaled = loop {
        let p = target.scaled(&q(scale as i64));
        if p.integral() && mandated.iter().all(|v| p.contains(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())) {
            break p;
        }
        scale += 1;
        if scale > MAX_SCALE {
            return Err(Error::ResourceCap { what: "good generating set scale", cap: MAX_SCALE as usize });
        }
    };

    let existing: Vec<&[i64]> = base
        .letters()
        .iter()
        .filter(|l| l.value.coset() == Some(identity_coset))
        .map(|l| l.value.vector().unwrap())
        .collect();
    let mut letters: Vec<Letter> = base.letters().to_vec();
    for point in scaled.lattice_points() {
        if point.iter().all(|&x| x == 0) || existing.contains(&point.as_slice()) {
            continue;
        }
        let name = format!("[{}]", point.iter().map(|x| format!("{x}")).collect::<Vec<String>>().join(","));
        letters.push(Letter::new(name, GroupElement::va(point, identity_coset), 1));
    }
    let symmetric = target.vertices().iter().all(|v| {
        let neg: Vec<BigRational> = v.iter().map(|x| -x).collect();
        target.vertices().contains(&neg)
    });
    let gens = GeneratingSet::new(pres, letters, base.inverse_closed() && symmetric)?;
    Ok(GoodSet { gens, scale, mandated })
}

/// Result of the minimal non-geodesic monomial search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianBound {
    pub k: u32,
    /// Minimal exponent vectors of non-geodesic monomials found.
    pub minimal: Vec<Vec<u32>>,
    /// Whether every minimal vector found lies at least one letter weight
    /// inside the search cap.
    pub closed: bool,
    pub cap: u32,
}

/// Searches exponent vectors `n` with `sum n_i len(a_i) <= cap` for
/// non-geodesic monomials `a_1^n_1 ... a_r^n_r` and returns the largest
/// weighted sum of a minimal one.
pub fn abelian_fft_bound(gens: &GeneratingSet, pres: &Presentation, cap: u32) -> Result<AbelianBound> {
    let va = virtually_abelian(pres)?;
    if va.quotient_order() != 1 {
        return Err(Error::Precondition("the monomial bound needs a free abelian group".into()));
    }
    let table = ball(pres, gens, cap)?;
    let r = gens.len();
    let rank = va.rank();
    let vectors: Vec<&[i64]> = gens.letters().iter().map(|l| l.value.vector().unwrap()).collect();
    let weight = |n: &[u32]| -> u32 { n.iter().zip(gens.letters()).map(|(&k, l)| k * l.weight).sum() };
    let value = |n: &[u32]| -> Result<GroupElement> {
        let mut v = vec![0i64; rank];
        for (k, a) in n.iter().zip(&vectors) {
            for (x, y) in v.iter_mut().zip(a.iter()) {
                *x = y.checked_mul(*k as i64).and_then(|p| x.checked_add(p)).ok_or(Error::Overflow)?;
            }
        }
        Ok(GroupElement::va(v, 0))
    };
    let geodesic = |n: &[u32]| -> Result<bool> { Ok(table.length(&value(n)?) == Some(weight(n))) };

    let mut minimal = Vec::new();
    let mut n = vec![0u32; r];
    // Odometer over vectors of bounded weight.
    'outer: loop {
        if !geodesic(&n)? {
            let mut is_min = true;
            for i in 0..r {
                if n[i] > 0 {
                    n[i] -= 1;
                    let g = geodesic(&n)?;
                    n[i] += 1;
                    if !g {
                        is_min = false;
                        break;
                    }
                }
            }
            if is_min {
                minimal.push(n.clone());
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            n[i] += 1;
            if weight(&n) <= cap {
                break;
            }
            n[i] = 0;
        }
    }
    minimal.sort();
    let k = minimal.iter().map(|n| weight(n)).max().unwrap_or(0);
    let margin = cap.saturating_sub(gens.max_weight());
    let closed = minimal.iter().all(|n| weight(n) <= margin);
    Ok(AbelianBound { k, minimal, closed, cap })
}

/// Whether the rays lie in a closed hemisphere: some nonzero `u` has
/// `u . s >= 0` for every direction `s`. Decided by checking whether the
/// rays positively span every `+-e_i`.
pub fn hemisphere_check(rays: &[Ray]) -> bool {
    let Some(first) = rays.first() else { return true };
    let m = first.dim();
    let a: Vec<Vec<BigRational>> = (0..m).map(|row| rays.iter().map(|r| q(r.direction()[row])).collect()).collect();
    for i in 0..m {
        for s in [1, -1] {
            let mut b = vec![BigRational::zero(); m];
            b[i] = q(s);
            if !lp::feasible(&a, &b) {
                return true;
            }
        }
    }
    false
}

/// [`hemisphere_check`] applied to `S ∩ -S`.
pub fn hemisphere_check_symmetric(rays: &[Ray]) -> bool {
    let both: Vec<Ray> = rays.iter().filter(|r| rays.contains(&r.negated())).cloned().collect();
    hemisphere_check(&both)
}
