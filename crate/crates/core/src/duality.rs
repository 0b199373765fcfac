//! Dual groups: the abelian BHK dual `H^T`, the non-abelian dual
//! `G* = H^T . K`, and the parity condition on pure permutations.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polynomial::{InvertiblePolynomial, Rational};
use crate::symmetry::{closure, diagonal_group_capped, is_symmetry, MonomialSymmetry, Phase, SymmetryGroup};

/// `G = H . K` with `H` diagonal and `K` pure even permutations.
#[derive(Debug, Clone)]
pub struct HKDecomposition {
    pub h: SymmetryGroup,
    pub k: SymmetryGroup,
    pub g: SymmetryGroup,
}

pub fn decompose_hk(g: &SymmetryGroup, w: &InvertiblePolynomial) -> Result<HKDecomposition> {
    for e in g.generators() {
        if !is_symmetry(e, w)? {
            return Err(Error::NotASymmetry(e.to_string()));
        }
    }
    for e in g.elements() {
        if e.is_pure_permutation() && !e.perm().is_even() {
            return Err(Error::OddPermutation(e.to_string()));
        }
    }
    for e in g.elements() {
        if !g.contains(&MonomialSymmetry::permutation(e.perm().clone())) {
            return Err(Error::NotHKProduct(e.to_string()));
        }
    }
    let h = g.subgroup_where(|e| e.is_diagonal());
    let k = g.subgroup_where(|e| e.is_pure_permutation());
    Ok(HKDecomposition { h, k, g: g.clone() })
}

/// `g A h^T` as a phase.
fn pairing(g: &MonomialSymmetry, a: &[Vec<u32>], h: &MonomialSymmetry) -> Phase {
    let mut total = Rational::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e != 0 {
                total += g.phases()[i].value() * h.phases()[j].value() * (e as i64);
            }
        }
    }
    Phase::new(total)
}

/// `H^T = { g in G_{W^T}^diag : g A_W h^T in Z for all h in H }`.
pub fn dual_group(h: &SymmetryGroup, w: &InvertiblePolynomial) -> Result<SymmetryGroup> {
    dual_group_capped(h, w, crate::symmetry::DEFAULT_CAP)
}

pub fn dual_group_capped(h: &SymmetryGroup, w: &InvertiblePolynomial, cap: usize) -> Result<SymmetryGroup> {
    if h.n() != w.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: w.n_vars(),
            found: h.n(),
        });
    }
    if let Some(e) = h.elements().iter().find(|e| !e.is_diagonal()) {
        return Err(Error::NotDiagonal(e.to_string()));
    }
    let full = diagonal_group_capped(&w.transpose(), cap)?;
    let a = w.exponents();
    let gens = h.generators();
    Ok(full.subgroup_where(|g| gens.iter().all(|hg| pairing(g, a, hg).is_zero())))
}

/// `G* = H^T . K`, a subgroup of `G_{W^T}^max`.
pub fn nonabelian_dual(g: &SymmetryGroup, w: &InvertiblePolynomial, cap: usize) -> Result<SymmetryGroup> {
    let hk = decompose_hk(g, w)?;
    let wt = w.transpose();
    let ht = dual_group_capped(&hk.h, w, cap)?;
    for k in hk.k.generators() {
        if !is_symmetry(k, &wt)? {
            return Err(Error::NotASymmetry(format!("{k} on the transpose polynomial")));
        }
    }
    let mut gens = ht.generators().to_vec();
    gens.extend(hk.k.generators().iter().cloned());
    closure(w.n_vars(), &gens, cap)
}

/// A subgroup `T <= K` with `dim (C^N)^T` of the wrong parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityWitness {
    pub elements: Vec<MonomialSymmetry>,
    pub fixed_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityResult {
    pub holds: bool,
    pub witness: Option<ParityWitness>,
    pub subgroups_checked: usize,
}

/// Number of orbits of the permutations in `elements` on `{0..n-1}`.
pub fn fixed_dimension(n: usize, elements: &[MonomialSymmetry]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for e in elements {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, e.perm().apply(i)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Checks `dim (C^N)^T = N mod 2` for every subgroup `T` of `K`.
///
/// Subgroups are enumerated by adjoining one element at a time to already
/// known subgroups; the witness is the first failure ordered by
/// `(order, elements)`.
pub fn parity_condition(k: &SymmetryGroup) -> Result<ParityResult> {
    if let Some(e) = k.elements().iter().find(|e| !e.is_pure_permutation()) {
        return Err(Error::NotPurePermutations(e.to_string()));
    }
    let n = k.n();
    let order = k.order();
    let close = |seed: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut set = seed.clone();
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                for z in [k.mul(x, y), k.mul(y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        set
    };
    let identity = k.index_of(&MonomialSymmetry::identity(n)).expect("identity");
    let trivial: BTreeSet<usize> = BTreeSet::from([identity]);
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::from([trivial.clone()]);
    let mut all = vec![trivial.clone()];
    let mut queue = vec![trivial];
    while let Some(s) = queue.pop() {
        if s.len() == order {
            continue;
        }
        for x in 0..order {
            if s.contains(&x) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(x);
            let t = close(&seed);
            if seen.insert(t.clone()) {
                all.push(t.clone());
                queue.push(t);
            }
        }
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    let subgroups_checked = all.len();
    for t in all {
        let elements: Vec<MonomialSymmetry> = t.iter().map(|&i| k.element(i).clone()).collect();
        let fixed_dim = fixed_dimension(n, &elements);
        if fixed_dim % 2 != n % 2 {
            return Ok(ParityResult {
                holds: false,
                witness: Some(ParityWitness { elements, fixed_dim }),
                subgroups_checked,
            });
        }
    }
    Ok(ParityResult {
        holds: true,
        witness: None,
        subgroups_checked,
    })
}
