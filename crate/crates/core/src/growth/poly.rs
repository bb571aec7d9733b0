//! Dense univariate polynomials with exact rational coefficients,
//! lowest degree first, without trailing zeros.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigRational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn constant(c: BigRational) -> Poly {
    trim(vec![c])
}

/// `c t^k`.
pub fn monomial(c: BigRational, k: usize) -> Poly {
    let mut p = vec![BigRational::zero(); k + 1];
    p[k] = c;
    trim(p)
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &neg(b))
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &Poly, c: &BigRational) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            rem[i + shift] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Exact quotient; the caller guarantees divisibility.
pub fn div_exact(a: &Poly, b: &Poly) -> Poly {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    match x.last() {
        Some(lead) => {
            let inv = lead.recip();
            scale(&x, &inv)
        }
        None => x,
    }
}

/// First `n` Taylor coefficients of `num / den`; requires `den(0) != 0`.
pub fn taylor(num: &Poly, den: &Poly, n: usize) -> Vec<BigRational> {
    let d0 = den.first().expect("denominator vanishes at 0").clone();
    assert!(!d0.is_zero(), "denominator vanishes at 0");
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = num.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..den.len().min(k + 1) {
            c -= &den[j] * &out[k - j];
        }
        out.push(c / &d0);
    }
    out
}

/// Rescales `p` to coprime integer coefficients, keeping the sign.
pub fn primitive(p: &Poly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / g.abs()).collect()
}

pub fn from_ints(p: &[BigInt]) -> Poly {
    trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}
