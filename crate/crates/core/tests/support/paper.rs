//! Worked examples transcribed from the reference tables.
//!
//! A basis vector is written as its set of terms `(sector, exponents)`;
//! exponents run over the fixed cycles of the sector ordered by smallest
//! variable, so `(x1 + x2 + x3) x4` on `(1 2 3)` is `[1, 1]`.

use lgmirror::polynomial::{InvertiblePolynomial, Rational};
use lgmirror::symmetry::{exponential_grading, MonomialSymmetry, Perm};

pub type Term = (MonomialSymmetry, Vec<u32>);

#[derive(Debug, Clone)]
pub struct Row {
    pub terms: Vec<Term>,
    pub bidegree: (i64, i64),
}

pub fn fermat(d: u32, n: usize) -> InvertiblePolynomial {
    InvertiblePolynomial::fermat(&vec![d; n]).unwrap()
}

/// One-based cycles, as printed.
pub fn perm(n: usize, cycles: &[&[usize]]) -> MonomialSymmetry {
    let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect();
    MonomialSymmetry::permutation(Perm::from_cycles(n, &cs).unwrap())
}

pub fn j_power(w: &InvertiblePolynomial, k: u32) -> MonomialSymmetry {
    exponential_grading(w).pow(k)
}

fn untwisted(n: usize, monomials: &[&[u32]]) -> Vec<Term> {
    monomials
        .iter()
        .map(|m| (MonomialSymmetry::identity(n), m.to_vec()))
        .collect()
}

/// Narrow diagonal sectors given by numerators over `d`.
fn narrow(d: i64, numerators: &[&[i64]]) -> Vec<Term> {
    numerators
        .iter()
        .map(|ns| {
            let phases: Vec<Rational> = ns.iter().map(|&k| Rational::new(k, d)).collect();
            (MonomialSymmetry::diagonal(&phases), vec![])
        })
        .collect()
}

fn row(terms: Vec<Term>, bidegree: (i64, i64)) -> Row {
    Row { terms, bidegree }
}

pub fn quartic() -> InvertiblePolynomial {
    fermat(4, 4)
}

/// Basis of the quartic A-model with `G = <j, (123)>`.
pub fn quartic_a_basis() -> Vec<Row> {
    let w = quartic();
    let c123 = perm(4, &[&[1, 2, 3]]);
    let c132 = perm(4, &[&[1, 3, 2]]);
    let mut rows = vec![
        row(untwisted(4, &[&[0, 0, 0, 0]]), (0, 2)),
        row(untwisted(4, &[&[1, 1, 1, 1]]), (1, 1)),
        row(untwisted(4, &[&[2, 2, 2, 2]]), (2, 0)),
        row(untwisted(4, &[&[2, 2, 0, 0], &[2, 0, 2, 0], &[0, 2, 2, 0]]), (1, 1)),
        row(untwisted(4, &[&[1, 1, 2, 0], &[2, 1, 1, 0], &[1, 2, 1, 0]]), (1, 1)),
        row(untwisted(4, &[&[1, 1, 0, 2], &[1, 0, 1, 2], &[0, 1, 1, 2]]), (1, 1)),
        row(untwisted(4, &[&[1, 2, 0, 1], &[0, 1, 2, 1], &[2, 0, 1, 1]]), (1, 1)),
        row(untwisted(4, &[&[2, 1, 0, 1], &[0, 2, 1, 1], &[1, 0, 2, 1]]), (1, 1)),
        row(untwisted(4, &[&[2, 0, 0, 2], &[0, 2, 0, 2], &[0, 0, 2, 2]]), (1, 1)),
    ];
    for c in [&c123, &c132] {
        for e in [[2, 0], [1, 1], [0, 2]] {
            rows.push(row(vec![(c.clone(), e.to_vec())], (1, 1)));
        }
    }
    for (k, b) in [(1, (0, 0)), (2, (1, 1)), (3, (2, 2))] {
        rows.push(row(vec![(j_power(&w, k), vec![])], b));
    }
    for c in [&c123, &c132] {
        for k in 1..=3 {
            rows.push(row(vec![(j_power(&w, k).compose(c), vec![])], (1, 1)));
        }
    }
    rows
}

/// Pairs of the quartic mirror map following the permutation structure;
/// every pair sits in bidegree `(1, 1)`.
pub fn quartic_permutation_pairs() -> Vec<(Vec<Term>, Vec<Term>)> {
    vec![
        (
            untwisted(4, &[&[2, 2, 0, 0], &[2, 0, 2, 0], &[0, 2, 2, 0]]),
            narrow(4, &[&[3, 3, 1, 1], &[3, 1, 3, 1], &[1, 3, 3, 1]]),
        ),
        (
            untwisted(4, &[&[1, 1, 2, 0], &[2, 1, 1, 0], &[1, 2, 1, 0]]),
            narrow(4, &[&[2, 2, 3, 1], &[3, 2, 2, 1], &[2, 3, 2, 1]]),
        ),
        (
            untwisted(4, &[&[1, 1, 0, 2], &[1, 0, 1, 2], &[0, 1, 1, 2]]),
            narrow(4, &[&[2, 2, 1, 3], &[2, 1, 2, 3], &[1, 2, 2, 3]]),
        ),
        (
            untwisted(4, &[&[1, 2, 0, 1], &[0, 1, 2, 1], &[2, 0, 1, 1]]),
            narrow(4, &[&[2, 3, 1, 2], &[1, 2, 3, 2], &[3, 1, 2, 2]]),
        ),
        (
            untwisted(4, &[&[2, 1, 0, 1], &[0, 2, 1, 1], &[1, 0, 2, 1]]),
            narrow(4, &[&[3, 2, 1, 2], &[1, 3, 2, 2], &[2, 1, 3, 2]]),
        ),
        (
            untwisted(4, &[&[2, 0, 0, 2], &[0, 2, 0, 2], &[0, 0, 2, 2]]),
            narrow(4, &[&[3, 1, 1, 3], &[1, 3, 1, 3], &[1, 1, 3, 3]]),
        ),
    ]
}

/// `[1, j^k] <-> [x^{k-1}, id]` in both directions, for Fermat degree `d`
/// in `n` variables; `(A term, B term, bidegree)`.
pub fn center_pairs(d: u32, n: usize) -> Vec<(Vec<Term>, Vec<Term>, (i64, i64))> {
    let w = fermat(d, n);
    let id = MonomialSymmetry::identity(n);
    let top = d as i64 - 2;
    let mut out = Vec::new();
    for k in 1..d {
        let jk = vec![(j_power(&w, k), vec![])];
        let mono = vec![(id.clone(), vec![k - 1; n])];
        let km = k as i64 - 1;
        out.push((jk.clone(), mono.clone(), (km, km)));
        out.push((mono, jk, (km, top - km)));
    }
    out
}

/// First rows of the bad quintic table: `[1, perm . j^k]` in both models.
pub fn bad_quintic_permutation_rows() -> Vec<(MonomialSymmetry, (i64, i64), (i64, i64))> {
    let w = fermat(5, 5);
    let mut out = Vec::new();
    for p in [
        perm(5, &[&[1, 2], &[3, 4]]),
        perm(5, &[&[1, 3], &[2, 4]]),
        perm(5, &[&[1, 4], &[2, 3]]),
    ] {
        for k in 1..=4u32 {
            let (a, b) = if k % 2 == 1 { ((1, 1), (1, 2)) } else { ((2, 2), (2, 1)) };
            out.push((j_power(&w, k).compose(&p), a, b));
        }
    }
    out
}
