//! Growth series from the geodesic automaton.
//!
//! Counting accepted words by length gives the growth of the geodesic
//! language. Dividing each transition into state `j` by the number `p_j`
//! of letters that can end a geodesic at an element in state `j` counts
//! every group element exactly once, which gives the growth of the group.

pub mod poly;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::{minimize_colored, GeodesicAutomaton};
use crate::error::{Error, Result};
use crate::group::{GeneratingSet, LengthTable, Presentation};
use poly::Poly;

/// Largest matrix handled by [`determinant_form`].
pub const DETERMINANT_LIMIT: usize = 60;

/// One aggregated transition: `value` times `t^weight` from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub from: u32,
    pub to: u32,
    pub weight: u32,
    pub value: BigRational,
}

/// Sparse transition matrix over the live states, with start row `v1` and
/// accept column `v2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    size: usize,
    entries: Vec<Entry>,
    v1: Vec<BigRational>,
    v2: Vec<BigRational>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entries sorted by `(from, to, weight)`.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn v1(&self) -> &[BigRational] {
        &self.v1
    }

    pub fn v2(&self) -> &[BigRational] {
        &self.v2
    }

    pub fn max_weight(&self) -> u32 {
        self.entries.iter().map(|e| e.weight).max().unwrap_or(1)
    }

    /// Dense matrix of the entries of one weight.
    pub fn dense(&self, weight: u32) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.size]; self.size];
        for e in self.entries.iter().filter(|e| e.weight == weight) {
            m[e.from as usize][e.to as usize] += &e.value;
        }
        m
    }

    /// Row sums of the matrix with every weight collapsed.
    pub fn row_sums(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.size];
        for e in &self.entries {
            out[e.from as usize] += &e.value;
        }
        out
    }
}

/// Letter counts between live states; the fail state is dropped.
pub fn transition_matrix(aut: &GeodesicAutomaton) -> TransitionMatrix {
    let n = aut.num_states();
    let letters = aut.num_letters();
    let mut counts: Vec<(u32, u32, u32)> = Vec::new();
    for s in 0..n {
        for a in 0..letters {
            let t = aut.transitions()[s * letters + a];
            if t != aut.fail() {
                counts.push((s as u32, t, aut.weights()[a]));
            }
        }
    }
    counts.sort_unstable();
    let mut entries: Vec<Entry> = Vec::new();
    for (from, to, weight) in counts {
        match entries.last_mut() {
            Some(e) if e.from == from && e.to == to && e.weight == weight => e.value += BigRational::one(),
            _ => entries.push(Entry { from, to, weight, value: BigRational::one() }),
        }
    }
    let mut v1 = vec![BigRational::zero(); n];
    v1[aut.start() as usize] = BigRational::one();
    TransitionMatrix { size: n, entries, v1, v2: vec![BigRational::one(); n] }
}

/// Parent counts of the live states of an unminimized automaton.
///
/// For a state with profile `psi` this is the number of letters `b` with
/// `psi(b^-1) = -len(b)`: the letters that end a geodesic at an element
/// reaching this state. Letters are counted rather than the points
/// `b^-1`, since distinct letters may share a value. The start state
/// gets 1.
pub fn parent_counts(aut: &GeodesicAutomaton, pres: &Presentation, gens: &GeneratingSet) -> Result<Vec<u32>> {
    if aut.delta() < aut.k() {
        return Err(Error::Precondition(format!(
            "parent counts need delta >= k, got delta = {} and k = {}",
            aut.delta(),
            aut.k()
        )));
    }
    let profiles = aut
        .profiles()
        .ok_or_else(|| Error::Precondition("parent counts need the profiles of an unminimized automaton".into()))?;
    let ball = aut.ball_points();
    let mut points: Vec<Option<usize>> = Vec::with_capacity(gens.len());
    for letter in gens.letters() {
        let inv = pres.inverse(&letter.value)?;
        points.push(ball.iter().position(|x| *x == inv));
    }
    let mut out = Vec::with_capacity(profiles.len());
    for (s, psi) in profiles.iter().enumerate() {
        if s as u32 == aut.start() {
            out.push(1);
            continue;
        }
        let p = gens
            .letters()
            .iter()
            .zip(&points)
            .filter(|(l, x)| x.is_some_and(|x| psi.get(x) == -(l.weight as i32)))
            .count() as u32;
        if p == 0 {
            return Err(Error::Precondition(format!("state {s} has no parent letter")));
        }
        out.push(p);
    }
    Ok(out)
}

/// Divides every entry by the parent count of its target state.
pub fn corrected_matrix(m: &TransitionMatrix, parents: &[u32]) -> Result<TransitionMatrix> {
    if parents.len() != m.size {
        return Err(Error::Precondition("one parent count per state is required".into()));
    }
    if parents.contains(&0) {
        return Err(Error::Precondition("parent counts must be positive".into()));
    }
    let entries = m
        .entries
        .iter()
        .map(|e| Entry { value: &e.value / BigRational::from_integer(parents[e.to as usize].into()), ..e.clone() })
        .collect();
    Ok(TransitionMatrix { entries, ..m.clone() })
}

/// The corrected matrix of a built automaton, after merging states with
/// equal futures and equal parent counts.
pub fn group_growth_matrix(
    aut: &GeodesicAutomaton,
    pres: &Presentation,
    gens: &GeneratingSet,
) -> Result<TransitionMatrix> {
    let parents = parent_counts(aut, pres, gens)?;
    let (small, colors) = minimize_colored(aut, &parents);
    corrected_matrix(&transition_matrix(&small), &colors)
}

/// Coefficients `c_0, c_1, ...` of a growth series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries(pub Vec<BigRational>);

impl GrowthSeries {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The coefficients as integers, if they all are.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

/// `c_n = v1 M^n v2`, with `t^w` entries shifting by `w`.
pub fn series(m: &TransitionMatrix, n_terms: usize) -> GrowthSeries {
    let mut layers: Vec<Vec<BigRational>> = Vec::with_capacity(n_terms);
    let mut out = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        let mut x = if n == 0 { m.v1.clone() } else { vec![BigRational::zero(); m.size] };
        for e in &m.entries {
            let w = e.weight as usize;
            if w <= n {
                let src = &layers[n - w][e.from as usize];
                if !src.is_zero() {
                    x[e.to as usize] += src * &e.value;
                }
            }
        }
        let c = x.iter().zip(&m.v2).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        out.push(c);
        layers.push(x);
    }
    GrowthSeries(out)
}

/// A rational function with coprime integer numerator and denominator,
/// normalized so that the denominator is 1 at `t = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalGF {
    /// Reduces and normalizes `num / den`; `den(0)` must be nonzero.
    pub fn new(num: &Poly, den: &Poly) -> Result<Self> {
        let num = poly::trim(num.clone());
        let den = poly::trim(den.clone());
        if den.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::Precondition("denominator must be nonzero at t = 0".into()));
        }
        let g = if num.is_empty() { den.clone() } else { poly::gcd(&num, &den) };
        let mut n = poly::div_exact(&num, &g);
        let mut d = poly::div_exact(&den, &g);
        let inv = d[0].recip();
        n = poly::scale(&n, &inv);
        d = poly::scale(&d, &inv);
        // Clear denominators jointly; d(0) = 1 survives when d is integral.
        let mut joint: Poly = d.clone();
        joint.extend(n.iter().cloned());
        let lcm = joint.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let factor = BigRational::from_integer(lcm);
        let to_int = |p: &Poly| -> Vec<BigInt> { p.iter().map(|c| (c * &factor).to_integer()).collect() };
        Ok(Self { numerator: to_int(&n), denominator: to_int(&d) })
    }

    pub fn from_integers(num: &[BigInt], den: &[BigInt]) -> Result<Self> {
        Self::new(&poly::from_ints(num), &poly::from_ints(den))
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    pub fn taylor(&self, n: usize) -> Vec<BigRational> {
        poly::taylor(&poly::from_ints(&self.numerator), &poly::from_ints(&self.denominator), n)
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[BigInt]) -> fmt::Result {
    let terms: Vec<(usize, &BigInt)> = p.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    if terms.is_empty() {
        return f.write_str("0");
    }
    let wrap = terms.len() > 1;
    if wrap {
        f.write_str("(")?;
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        match *k {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                f.write_str("t")?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.numerator)?;
        f.write_str(" / ")?;
        write_poly(f, &self.denominator)
    }
}

/// Shortest linear recurrence of `s` (Berlekamp-Massey over the
/// rationals): the connection polynomial `C` with `C(0) = 1` and its
/// length `L`.
pub fn berlekamp_massey(s: &[BigRational]) -> (Poly, usize) {
    let mut c: Poly = vec![BigRational::one()];
    let mut b: Poly = vec![BigRational::one()];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len().saturating_sub(1)) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &d / &last;
        let mut adjusted = c.clone();
        let need = b.len() + shift;
        if adjusted.len() < need {
            adjusted.resize(need, BigRational::zero());
        }
        for (i, x) in b.iter().enumerate() {
            adjusted[i + shift] -= &coef * x;
        }
        if 2 * l <= n {
            b = c;
            l = n + 1 - l;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
        c = adjusted;
    }
    (poly::trim(c), l)
}

/// Closed form of `v1 (I - M(t))^-1 v2` by recurrence detection.
///
/// The order is bounded by `size * max_weight + 1`; twice that many terms
/// fix the recurrence and `guard` further terms must confirm it.
pub fn rational_form(m: &TransitionMatrix, guard: usize) -> Result<RationalGF> {
    let bound = m.size * m.max_weight() as usize + 1;
    let fit = 2 * bound;
    let s = series(m, fit + guard);
    let (c, l) = berlekamp_massey(&s.0[..fit]);
    if l > bound {
        return Err(Error::RecurrenceNotFound(format!("recurrence order {l} exceeds the bound {bound}")));
    }
    let mut num = poly::mul(&s.0[..l.max(1)].to_vec(), &c);
    num.truncate(l);
    let gf = RationalGF::new(&num, &c)?;
    let expansion = gf.taylor(s.len());
    if let Some(i) = expansion.iter().zip(&s.0).position(|(a, b)| a != b) {
        return Err(Error::RecurrenceNotFound(format!("closed form disagrees with the series at t^{i}")));
    }
    Ok(gf)
}

/// Fraction-free determinant of a matrix over `Q[t]` (Bareiss).
pub fn determinant(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return poly::constant(BigRational::one());
    }
    let mut prev: Poly = poly::constant(BigRational::one());
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_empty() {
            match (k + 1..n).find(|&r| !a[r][k].is_empty()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Vec::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly::sub(&poly::mul(&a[i][j], &a[k][k]), &poly::mul(&a[i][k], &a[k][j]));
                a[i][j] = poly::div_exact(&num, &prev);
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        poly::neg(&d)
    } else {
        d
    }
}

/// Closed form by Cramer's rule: `-det [[A, v2], [v1, 0]] / det A` with
/// `A = I - M(t)`. Independent of [`rational_form`]; for small matrices.
pub fn determinant_form(m: &TransitionMatrix) -> Result<RationalGF> {
    let n = m.size;
    if n > DETERMINANT_LIMIT {
        return Err(Error::ResourceCap { what: "determinant matrix size", cap: DETERMINANT_LIMIT });
    }
    let mut a: Vec<Vec<Poly>> = vec![vec![Vec::new(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = poly::constant(BigRational::one());
    }
    for e in &m.entries {
        let (i, j) = (e.from as usize, e.to as usize);
        a[i][j] = poly::sub(&a[i][j], &poly::monomial(e.value.clone(), e.weight as usize));
    }
    let den = determinant(a.clone());
    let mut bordered = a;
    for (i, row) in bordered.iter_mut().enumerate() {
        row.push(poly::constant(m.v2[i].clone()));
    }
    let mut last: Vec<Poly> = m.v1.iter().map(|c| poly::constant(c.clone())).collect();
    last.push(Vec::new());
    bordered.push(last);
    let num = poly::neg(&determinant(bordered));
    RationalGF::new(&num, &den)
}

/// Whether each `c_n` equals the number of elements of length `n`.
pub fn validate_growth(s: &GrowthSeries, table: &LengthTable) -> Result<bool> {
    let needed = s.len().saturating_sub(1) as u32;
    if needed > table.radius() {
        return Err(Error::BeyondOracle { needed, radius: table.radius() });
    }
    let spheres = table.sphere_sizes();
    Ok(s.0.iter().enumerate().all(|(n, c)| *c == BigRational::from_integer(spheres[n].into())))
}

/// Count of elements of each length as a series.
pub fn sphere_series(table: &LengthTable) -> GrowthSeries {
    GrowthSeries(table.sphere_sizes().into_iter().map(|c| BigRational::from_integer(c.into())).collect())
}

pub fn format_series(s: &GrowthSeries) -> String {
    let mut out = String::new();
    for c in &s.0 {
        out.push_str(&format!("{c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn display_forms() {
        let gf = RationalGF::from_integers(&ints(&[1, 1]), &ints(&[1, -1])).unwrap();
        assert_eq!(gf.to_string(), "(1 + t) / (1 - t)");
        let gf = RationalGF::from_integers(&ints(&[1]), &ints(&[1, -1])).unwrap();
        assert_eq!(gf.to_string(), "1 / (1 - t)");
        let gf = RationalGF::from_integers(&ints(&[1, 2, 1]), &ints(&[1, -2, 1])).unwrap();
        assert_eq!(gf.to_string(), "(1 + 2t + t^2) / (1 - 2t + t^2)");
    }

    #[test]
    fn reduces_common_factors() {
        let gf = RationalGF::from_integers(&ints(&[1, 0, -1]), &ints(&[1, -2, 1])).unwrap();
        assert_eq!(gf.to_string(), "(1 + t) / (1 - t)");
        let gf = RationalGF::from_integers(&ints(&[-2, -2]), &ints(&[-2, 2])).unwrap();
        assert_eq!(gf.to_string(), "(1 + t) / (1 - t)");
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let (c, l) = berlekamp_massey(&q(&[1, 1, 2, 3, 5, 8, 13, 21]));
        assert_eq!(l, 2);
        assert_eq!(c, q(&[1, -1, -1]));
    }

    #[test]
    fn one_letter_monoid() {
        let m = TransitionMatrix {
            size: 1,
            entries: vec![Entry { from: 0, to: 0, weight: 1, value: BigRational::one() }],
            v1: q(&[1]),
            v2: q(&[1]),
        };
        assert_eq!(series(&m, 4).0, q(&[1, 1, 1, 1]));
        assert_eq!(rational_form(&m, 2).unwrap().to_string(), "1 / (1 - t)");
        assert_eq!(determinant_form(&m).unwrap().to_string(), "1 / (1 - t)");
    }

    #[test]
    fn weighted_loop() {
        let m = TransitionMatrix {
            size: 1,
            entries: vec![Entry { from: 0, to: 0, weight: 2, value: BigRational::one() }],
            v1: q(&[1]),
            v2: q(&[1]),
        };
        assert_eq!(series(&m, 5).0, q(&[1, 0, 1, 0, 1]));
        assert_eq!(rational_form(&m, 2).unwrap().to_string(), "1 / (1 - t^2)");
        assert_eq!(determinant_form(&m).unwrap(), rational_form(&m, 2).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let p = |v: &[i64]| poly::trim(q(v));
        let a = vec![vec![p(&[1, 1]), p(&[2])], vec![p(&[0, 1]), p(&[1, -1])]];
        // (1+t)(1-t) - 2t
        assert_eq!(determinant(a), p(&[1, -2, -1]));
    }
}
