#![allow(dead_code)]

pub mod brute;

use geodesic_core::group::{GeneratingSet, GroupElement, IntMatrix, Letter, Presentation, VaPresentation};

pub fn v(x: &[i64]) -> GroupElement {
    GroupElement::va(x.to_vec(), 0)
}

pub fn unit_letters(m: usize) -> Vec<Letter> {
    let lower = ["a", "b", "c", "d"];
    let upper = ["A", "B", "C", "D"];
    let mut out = Vec::new();
    for i in 0..m {
        let mut e = vec![0; m];
        e[i] = 1;
        out.push(Letter::new(lower[i], GroupElement::va(e.clone(), 0), 1));
        e[i] = -1;
        out.push(Letter::new(upper[i], GroupElement::va(e, 0), 1));
    }
    out
}

pub fn zn(m: usize) -> (Presentation, GeneratingSet) {
    let p = Presentation::free_abelian(m);
    let g = GeneratingSet::new(&p, unit_letters(m), true).unwrap();
    (p, g)
}

pub fn one_letter() -> (Presentation, GeneratingSet) {
    let p = Presentation::free_abelian(1);
    let g = GeneratingSet::new(&p, vec![Letter::new("a", v(&[1]), 1)], false).unwrap();
    (p, g)
}

pub fn cannon_presentation() -> Presentation {
    let id = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
    let sw = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    let va = VaPresentation::new(2, vec![id, sw], vec![vec![0, 1], vec![1, 0]], None).unwrap();
    Presentation::VirtuallyAbelian(va)
}

pub fn cannon_letters() -> Vec<Letter> {
    let t = GroupElement::va(vec![0, 0], 1);
    vec![
        Letter::new("a", v(&[1, 0]), 1),
        Letter::new("A", v(&[-1, 0]), 1),
        Letter::new("c", v(&[2, 0]), 1),
        Letter::new("C", v(&[-2, 0]), 1),
        Letter::new("d", v(&[1, 1]), 1),
        Letter::new("D", v(&[-1, -1]), 1),
        Letter::new("t", t.clone(), 1),
        Letter::new("T", t, 1),
    ]
}

pub fn cannon() -> (Presentation, GeneratingSet) {
    let p = cannon_presentation();
    let g = GeneratingSet::new(&p, cannon_letters(), true).unwrap();
    (p, g)
}

pub fn cannon_enlarged() -> (Presentation, GeneratingSet) {
    let p = cannon_presentation();
    let mut letters = cannon_letters();
    letters.push(Letter::new("b", v(&[0, 1]), 1));
    letters.push(Letter::new("B", v(&[0, -1]), 1));
    letters.push(Letter::new("e", v(&[0, 2]), 1));
    letters.push(Letter::new("E", v(&[0, -2]), 1));
    let g = GeneratingSet::new(&p, letters, true).unwrap();
    (p, g)
}

pub fn psl2z() -> (Presentation, GeneratingSet) {
    let p = Presentation::matrix(2, true).unwrap();
    let m = |r: [[i64; 2]; 2]| GroupElement::Mat(IntMatrix::from_rows(&[r[0].to_vec(), r[1].to_vec()]).unwrap());
    let s = m([[0, -1], [1, 0]]);
    let letters = vec![
        Letter::new("S", s.clone(), 1),
        Letter::new("s", s, 1),
        Letter::new("T", m([[1, 1], [0, 1]]), 1),
        Letter::new("t", m([[1, -1], [0, 1]]), 1),
    ];
    let g = GeneratingSet::new(&p, letters, true).unwrap();
    (p, g)
}

/// Z^1 with `a` and `b = a^-2`; not closed under inverses.
pub fn z1_skew() -> (Presentation, GeneratingSet) {
    let p = Presentation::free_abelian(1);
    let g = GeneratingSet::new(&p, vec![Letter::new("a", v(&[1]), 1), Letter::new("b", v(&[-2]), 1)], false).unwrap();
    (p, g)
}

/// Z^1 with `a` of weight 1 and `A` of weight 2.
pub fn z1_weighted() -> (Presentation, GeneratingSet) {
    let p = Presentation::free_abelian(1);
    let g = GeneratingSet::new(&p, vec![Letter::new("a", v(&[1]), 1), Letter::new("A", v(&[-1]), 2)], true).unwrap();
    (p, g)
}
