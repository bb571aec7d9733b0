//! Exact two-phase simplex method with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns marked `allowed`; false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        reduced -= &cost[self.basis[i]] * &row[j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Minimizes `c . x` subject to `a x = b`, `x >= 0`.
pub fn minimize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == m, "inconsistent LP dimensions");
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); cols + 1];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[cols] = if flip { -b[i].clone() } else { b[i].clone() };
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..cols).collect(), cols };

    let mut phase1 = vec![BigRational::zero(); cols];
    for x in phase1.iter_mut().skip(n) {
        *x = BigRational::one();
    }
    let all = vec![true; cols];
    t.optimize(&phase1, &all);
    let infeasibility = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &j)| j >= n)
        .fold(BigRational::zero(), |acc, (row, _)| acc + &row[cols]);
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut phase2 = c.to_vec();
    phase2.resize(cols, BigRational::zero());
    let mut allowed = vec![true; cols];
    for x in allowed.iter_mut().skip(n) {
        *x = false;
    }
    if !t.optimize(&phase2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &j) in t.rows.iter().zip(&t.basis) {
        x[j] = row[cols].clone();
    }
    let value = x.iter().zip(c).fold(BigRational::zero(), |acc, (xi, ci)| acc + xi * ci);
    LpOutcome::Optimal { x, value }
}

/// Whether `a x = b` has a solution with `x >= 0`.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    minimize(&vec![BigRational::zero(); n], a, b).is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_program() {
        // min x + 2y, x + y = 3, x - y = 1 -> x = 2, y = 1
        let out = minimize(&[q(1), q(2)], &[vec![q(1), q(1)], vec![q(1), q(-1)]], &[q(3), q(1)]);
        assert_eq!(out, LpOutcome::Optimal { x: vec![q(2), q(1)], value: q(4) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(minimize(&[q(1)], &[vec![q(1)]], &[q(-1)]), LpOutcome::Infeasible);
        // min -x with x - y = 0
        assert_eq!(minimize(&[q(-1), q(0)], &[vec![q(1), q(-1)]], &[q(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let out = minimize(&[q(1), q(1)], &[vec![q(1), q(1)], vec![q(2), q(2)]], &[q(1), q(2)]);
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if value == q(1)));
    }
}
