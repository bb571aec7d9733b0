//! Convex hulls of finitely many rational points in low dimension, by
//! brute-force facet enumeration.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Point = Vec<BigRational>;

/// Largest dimension handled by the facet enumeration.
pub const MAX_DIMENSION: usize = 4;

/// A full-dimensional convex polytope: vertices and facet inequalities
/// `normal . x <= offset`, each list sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<(Vec<BigRational>, BigRational)>,
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Determinant by Gaussian elimination.
pub(crate) fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        let pivot = m[k][k].clone();
        d *= &pivot;
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] / &pivot;
            for c in k..n {
                let delta = &f * &m[k][c];
                m[r][c] -= delta;
            }
        }
    }
    d
}

/// Rank of a list of vectors.
pub(crate) fn rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Vector orthogonal to `m - 1` vectors in dimension `m` (cofactor
/// expansion); zero when they are dependent.
fn normal_to(diffs: &[Vec<BigRational>], dim: usize) -> Vec<BigRational> {
    (0..dim)
        .map(|k| {
            let minor: Vec<Vec<BigRational>> = diffs
                .iter()
                .map(|d| d.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let c = det(minor);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Scales a nonzero rational vector to a primitive integer vector with
/// the same direction.
pub(crate) fn primitive_direction(v: &[BigRational]) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| BigRational::from_integer(if g.is_zero() { x } else { x / &g })).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl Polytope {
    /// Convex hull of `points`, which must span the whole space.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        if dim == 0 || dim > MAX_DIMENSION || points.iter().any(|p| p.len() != dim) {
            return Err(Error::NotFullDimensional);
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        let diffs: Vec<Vec<BigRational>> =
            pts.iter().skip(1).map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
        if rank(&diffs) < dim {
            return Err(Error::NotFullDimensional);
        }

        let mut facets: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for subset in subsets(pts.len(), dim) {
            let base = &pts[subset[0]];
            let d: Vec<Vec<BigRational>> =
                subset[1..].iter().map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
            let n = if dim == 1 { vec![BigRational::one()] } else { normal_to(&d, dim) };
            if n.iter().all(|x| x.is_zero()) {
                continue;
            }
            let off = dot(&n, base);
            let mut above = false;
            let mut below = false;
            for p in &pts {
                let s = dot(&n, p) - &off;
                above |= s.is_positive();
                below |= s.is_negative();
            }
            let candidates: Vec<Vec<BigRational>> = match (above, below) {
                (true, true) => continue,
                (false, true) => vec![n],
                (true, false) => vec![n.iter().map(|x| -x).collect()],
                (false, false) => unreachable!("points span the space"),
            };
            for n in candidates {
                let n = primitive_direction(&n);
                let off = dot(&n, base);
                if !facets.iter().any(|(m, o)| *m == n && *o == off) {
                    facets.push((n, off));
                }
            }
        }
        facets.sort();

        let mut vertices: Vec<Point> = Vec::new();
        for p in &pts {
            let tight: Vec<Vec<BigRational>> =
                facets.iter().filter(|(n, o)| dot(n, p) == *o).map(|(n, _)| n.clone()).collect();
            if rank(&tight) == dim {
                vertices.push(p.clone());
            }
        }
        Ok(Self { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.facets
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.facets.iter().all(|(n, o)| dot(n, v) <= *o)
    }

    /// Whether the origin satisfies every facet inequality strictly.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|(_, o)| o.is_positive())
    }

    /// `c . P` for a positive rational `c`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        assert!(c.is_positive(), "scale must be positive");
        Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
            facets: self.facets.iter().map(|(n, o)| (n.clone(), o * c)).collect(),
        }
    }

    /// Whether all vertices have integer coordinates.
    pub fn integral(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Integer points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for v in &self.vertices {
            for (i, x) in v.iter().enumerate() {
                let f = x.floor().to_integer();
                let c = x.ceil().to_integer();
                lo[i] = lo[i].min(i64::try_from(f).unwrap_or(i64::MIN));
                hi[i] = hi[i].max(i64::try_from(c).unwrap_or(i64::MAX));
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let q: Vec<BigRational> = cur.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            if self.contains(&q) {
                out.push(cur.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Point {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn square_with_interior_points() {
        let pts = vec![p(&[1, 1]), p(&[-1, 1]), p(&[1, -1]), p(&[-1, -1]), p(&[0, 0]), p(&[1, 0])];
        let q = Polytope::hull(&pts).unwrap();
        assert_eq!(q.vertices().len(), 4);
        assert_eq!(q.facets().len(), 4);
        assert!(q.origin_interior());
        assert_eq!(q.lattice_points().len(), 9);
    }

    #[test]
    fn interval() {
        let q = Polytope::hull(&[p(&[-1]), p(&[1]), p(&[2])]).unwrap();
        assert_eq!(q.vertices(), &[p(&[-1]), p(&[2])]);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(Polytope::hull(&[p(&[1, 1]), p(&[2, 2]), p(&[0, 0])]), Err(Error::NotFullDimensional));
    }

    #[test]
    fn cube_in_three_dimensions() {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(p(&[x, y, z]));
                }
            }
        }
        let q = Polytope::hull(&pts).unwrap();
        assert_eq!(q.facets().len(), 6);
        assert_eq!(q.vertices().len(), 8);
    }
}
