use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A square integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidPresentation(format!(
                "matrix has {} entries, expected {}",
                entries.len(),
                dim * dim
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidPresentation(format!(
                    "matrix row of length {} in a {dim}x{dim} matrix",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.dim;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for k in 0..n {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        let n = self.dim;
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (j, x) in v.iter().enumerate() {
                let term = self.get(i, j).checked_mul(*x).ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
            *slot = acc;
        }
        Ok(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j));
            }
        }
        Self { dim: n - 1, entries }
    }

    /// Determinant by cofactor expansion; only used for small dimensions.
    pub fn determinant(&self) -> Result<i64> {
        match self.dim {
            0 => Ok(1),
            1 => Ok(self.entries[0]),
            2 => {
                let a = self.entries[0].checked_mul(self.entries[3]).ok_or(Error::Overflow)?;
                let b = self.entries[1].checked_mul(self.entries[2]).ok_or(Error::Overflow)?;
                a.checked_sub(b).ok_or(Error::Overflow)
            }
            n => {
                let mut acc = 0i64;
                for j in 0..n {
                    let a = self.get(0, j);
                    if a == 0 {
                        continue;
                    }
                    let sub = self.minor(0, j).determinant()?;
                    let term = a.checked_mul(sub).ok_or(Error::Overflow)?;
                    acc = if j % 2 == 0 { acc.checked_add(term) } else { acc.checked_sub(term) }
                        .ok_or(Error::Overflow)?;
                }
                Ok(acc)
            }
        }
    }

    /// Inverse over the integers; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let det = self.determinant()?;
        if det != 1 && det != -1 {
            return Err(Error::ElementMismatch(format!(
                "matrix with determinant {det} is not invertible over the integers"
            )));
        }
        if n == 1 {
            return Ok(Self { dim: 1, entries: vec![det] });
        }
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(j, i).determinant()?;
                let signed = if (i + j) % 2 == 0 { cof } else { cof.checked_neg().ok_or(Error::Overflow)? };
                entries[i * n + j] = signed.checked_mul(det).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self { dim: n, entries })
    }
}

/// An exact, canonical element of a computable group.
///
/// `Va` is `vector . s(coset)` in a virtually abelian extension where `s`
/// is the section fixed by the presentation. `Mat` is an integer matrix;
/// in a projective presentation it is stored with its first nonzero entry
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Va { vector: Vec<i64>, coset: u32 },
    Mat(IntMatrix),
}

impl GroupElement {
    pub fn va(vector: Vec<i64>, coset: u32) -> Self {
        GroupElement::Va { vector, coset }
    }

    /// The `Z^m` part of a virtually abelian element.
    pub fn vector(&self) -> Option<&[i64]> {
        match self {
            GroupElement::Va { vector, .. } => Some(vector),
            GroupElement::Mat(_) => None,
        }
    }

    pub fn coset(&self) -> Option<u32> {
        match self {
            GroupElement::Va { coset, .. } => Some(*coset),
            GroupElement::Mat(_) => None,
        }
    }
}

/// Extension data for `1 -> Z^m -> P -> F -> 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VaPresentation {
    rank: usize,
    action: Vec<IntMatrix>,
    table: Vec<Vec<u32>>,
    cocycle: Option<Vec<Vec<Vec<i64>>>>,
    identity: u32,
    inverse: Vec<u32>,
}

impl VaPresentation {
    /// Builds and validates the extension data.
    ///
    /// `action[f]` is the matrix of `f` acting on `Z^m`, `table[f][g]` the
    /// index of `fg` in `F`, and `cocycle[f][g]` (if given) the correction
    /// vector with `s(f) s(g) = cocycle[f][g] . s(fg)`.
    pub fn new(
        rank: usize,
        action: Vec<IntMatrix>,
        table: Vec<Vec<u32>>,
        cocycle: Option<Vec<Vec<Vec<i64>>>>,
    ) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidPresentation("finite quotient is empty".into()));
        }
        if action.len() != order {
            return Err(Error::InvalidPresentation(format!(
                "{} action matrices for a quotient of order {order}",
                action.len()
            )));
        }
        for row in &table {
            if row.len() != order || row.iter().any(|&x| x as usize >= order) {
                return Err(Error::InvalidPresentation("malformed multiplication table".into()));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] as usize == g && table[g][e] as usize == g))
            .ok_or_else(|| Error::InvalidPresentation("multiplication table has no identity".into()))?
            as u32;
        let mut inverse = Vec::with_capacity(order);
        for f in 0..order {
            let inv = (0..order)
                .find(|&g| table[f][g] == identity && table[g][f] == identity)
                .ok_or_else(|| Error::InvalidPresentation(format!("element {f} has no inverse")))?;
            inverse.push(inv as u32);
        }
        for f in 0..order {
            for g in 0..order {
                for h in 0..order {
                    let left = table[table[f][g] as usize][h];
                    let right = table[f][table[g][h] as usize];
                    if left != right {
                        return Err(Error::InvalidPresentation("multiplication table is not associative".into()));
                    }
                }
            }
        }
        for (f, m) in action.iter().enumerate() {
            if m.dim() != rank {
                return Err(Error::InvalidPresentation(format!("action matrix {f} has the wrong dimension")));
            }
            let det = m.determinant()?;
            if det != 1 && det != -1 {
                return Err(Error::InvalidPresentation(format!(
                    "action matrix {f} is not invertible over the integers"
                )));
            }
        }
        if action[identity as usize] != IntMatrix::identity(rank) {
            return Err(Error::InvalidPresentation("identity of F must act trivially".into()));
        }
        for f in 0..order {
            for g in 0..order {
                if action[f].mul(&action[g])? != action[table[f][g] as usize] {
                    return Err(Error::InvalidPresentation(format!("action is not a homomorphism at ({f}, {g})")));
                }
            }
        }
        if let Some(c) = &cocycle {
            if c.len() != order || c.iter().any(|row| row.len() != order || row.iter().any(|v| v.len() != rank)) {
                return Err(Error::InvalidPresentation("malformed cocycle".into()));
            }
            for g in 0..order {
                let e = identity as usize;
                if c[e][g].iter().any(|&x| x != 0) || c[g][e].iter().any(|&x| x != 0) {
                    return Err(Error::InvalidPresentation("cocycle must vanish on the identity".into()));
                }
            }
            // c(f,g) + c(fg,h) = f.c(g,h) + c(f,gh)
            for f in 0..order {
                for g in 0..order {
                    for h in 0..order {
                        let fg = table[f][g] as usize;
                        let gh = table[g][h] as usize;
                        let lhs = add(&c[f][g], &c[fg][h])?;
                        let rhs = add(&action[f].apply(&c[g][h])?, &c[f][gh])?;
                        if lhs != rhs {
                            return Err(Error::InvalidPresentation("cocycle condition fails".into()));
                        }
                    }
                }
            }
        }
        Ok(Self { rank, action, table, cocycle, identity, inverse })
    }

    /// The free abelian group `Z^m`.
    pub fn free_abelian(rank: usize) -> Self {
        Self {
            rank,
            action: vec![IntMatrix::identity(rank)],
            table: vec![vec![0]],
            cocycle: None,
            identity: 0,
            inverse: vec![0],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn quotient_order(&self) -> usize {
        self.table.len()
    }

    pub fn identity_coset(&self) -> u32 {
        self.identity
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn cocycle(&self) -> Option<&[Vec<Vec<i64>>]> {
        self.cocycle.as_deref()
    }

    pub fn coset_product(&self, f: u32, g: u32) -> u32 {
        self.table[f as usize][g as usize]
    }

    pub fn coset_inverse(&self, f: u32) -> u32 {
        self.inverse[f as usize]
    }

    /// Action of `f` on a vector of `Z^m` (conjugation by any lift of `f`).
    pub fn act(&self, f: u32, v: &[i64]) -> Result<Vec<i64>> {
        self.action[f as usize].apply(v)
    }

    fn correction(&self, f: u32, g: u32) -> Option<&[i64]> {
        self.cocycle.as_ref().map(|c| c[f as usize][g as usize].as_slice())
    }

    fn multiply(&self, v: &[i64], f: u32, w: &[i64], g: u32) -> Result<GroupElement> {
        let mut out = add(v, &self.act(f, w)?)?;
        if let Some(c) = self.correction(f, g) {
            out = add(&out, c)?;
        }
        Ok(GroupElement::Va { vector: out, coset: self.coset_product(f, g) })
    }

    fn invert(&self, v: &[i64], f: u32) -> Result<GroupElement> {
        let fi = self.coset_inverse(f);
        // (v, f)^-1 = (w, f^-1) with v + f.w + c(f, f^-1) = 0
        let mut rhs: Vec<i64> = v.iter().map(|x| x.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        if let Some(c) = self.correction(f, fi) {
            rhs = sub(&rhs, c)?;
        }
        Ok(GroupElement::Va { vector: self.act(fi, &rhs)?, coset: fi })
    }
}

/// Integer matrix groups, optionally projectivised (`M ~ -M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixPresentation {
    pub dim: usize,
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    VirtuallyAbelian(VaPresentation),
    Matrix(MatrixPresentation),
}

impl Presentation {
    pub fn free_abelian(rank: usize) -> Self {
        Presentation::VirtuallyAbelian(VaPresentation::free_abelian(rank))
    }

    pub fn matrix(dim: usize, projective: bool) -> Result<Self> {
        if dim == 0 || dim > 6 {
            return Err(Error::InvalidPresentation(format!("matrix dimension {dim} not supported")));
        }
        Ok(Presentation::Matrix(MatrixPresentation { dim, projective }))
    }

    pub fn as_virtually_abelian(&self) -> Option<&VaPresentation> {
        match self {
            Presentation::VirtuallyAbelian(va) => Some(va),
            Presentation::Matrix(_) => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Presentation::VirtuallyAbelian(va) => GroupElement::Va { vector: vec![0; va.rank], coset: va.identity },
            Presentation::Matrix(m) => GroupElement::Mat(IntMatrix::identity(m.dim)),
        }
    }

    /// Checks the shape of an element and brings it into canonical form.
    pub fn normalize(&self, element: GroupElement) -> Result<GroupElement> {
        match (self, element) {
            (Presentation::VirtuallyAbelian(va), GroupElement::Va { vector, coset }) => {
                if vector.len() != va.rank || coset as usize >= va.quotient_order() {
                    return Err(Error::ElementMismatch(format!(
                        "expected a rank-{} vector and a coset below {}",
                        va.rank,
                        va.quotient_order()
                    )));
                }
                Ok(GroupElement::Va { vector, coset })
            }
            (Presentation::Matrix(p), GroupElement::Mat(m)) => {
                if m.dim() != p.dim {
                    return Err(Error::ElementMismatch(format!("expected a {0}x{0} matrix", p.dim)));
                }
                let det = m.determinant()?;
                if det != 1 && det != -1 {
                    return Err(Error::ElementMismatch(format!("matrix determinant {det} is not a unit")));
                }
                Ok(GroupElement::Mat(if p.projective { sign_normalize(m)? } else { m }))
            }
            _ => Err(Error::ElementMismatch("element kind does not match presentation".into())),
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match (self, a, b) {
            (
                Presentation::VirtuallyAbelian(va),
                GroupElement::Va { vector: v, coset: f },
                GroupElement::Va { vector: w, coset: g },
            ) => va.multiply(v, *f, w, *g),
            (Presentation::Matrix(p), GroupElement::Mat(x), GroupElement::Mat(y)) => {
                let m = x.mul(y)?;
                Ok(GroupElement::Mat(if p.projective { sign_normalize(m)? } else { m }))
            }
            _ => Err(Error::ElementMismatch("element kind does not match presentation".into())),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        match (self, a) {
            (Presentation::VirtuallyAbelian(va), GroupElement::Va { vector, coset }) => va.invert(vector, *coset),
            (Presentation::Matrix(p), GroupElement::Mat(m)) => {
                let inv = m.inverse()?;
                Ok(GroupElement::Mat(if p.projective { sign_normalize(inv)? } else { inv }))
            }
            _ => Err(Error::ElementMismatch("element kind does not match presentation".into())),
        }
    }

    /// `a^-1 b`
    pub fn left_divide(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.multiply(&self.inverse(a)?, b)
    }
}

fn sign_normalize(m: IntMatrix) -> Result<IntMatrix> {
    match m.entries.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => {
            let entries = m.entries.iter().map(|e| e.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
            Ok(IntMatrix { dim: m.dim, entries })
        }
        _ => Ok(m),
    }
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow)).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow)).collect()
}
