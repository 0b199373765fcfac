//! The mirror map on untwisted and narrow diagonal corners, and full A/B
//! comparisons.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::duality::{decompose_hk, dual_group_capped, nonabelian_dual, parity_condition, ParityResult};
use crate::error::{Error, Result};
use crate::polynomial::{InvertiblePolynomial, Rational};
use crate::state_space::{
    a_state_space, b_state_space, invariant_basis, Bidegree, GradedBasisVector, GradedSpace, Side,
};
use crate::symmetry::{exponential_grading, is_symmetry, MonomialSymmetry, Phase, SymmetryGroup};

/// Diagonal elements with no fixed coordinate.
pub fn narrow_diagonal_set(h: &SymmetryGroup) -> Result<Vec<MonomialSymmetry>> {
    if let Some(e) = h.elements().iter().find(|e| !e.is_diagonal()) {
        return Err(Error::NotDiagonal(e.to_string()));
    }
    Ok(h.elements()
        .iter()
        .filter(|e| e.phases().iter().all(|p| !p.is_zero()))
        .cloned()
        .collect())
}

/// `[prod_{i not in I_g} x_i^{b_i} dx_i, a/d] -> [prod_{j in I_g} y_j^{a_j - 1} dy_j, b'/d]`
/// where `I_g` is the set of coordinates moved by `g` and `b'_i = b_i + 1`
/// off `I_g`, `0` on it.
///
/// `exponents` are listed over the coordinates fixed by `g` in increasing
/// order; so is the result, over the coordinates fixed by the image sector.
pub fn unprojected_mirror(
    w: &InvertiblePolynomial,
    sector: &MonomialSymmetry,
    exponents: &[u32],
) -> Result<(MonomialSymmetry, Vec<u32>)> {
    let d = w.fermat_degrees().ok_or(Error::NotFermat)?;
    if !sector.is_diagonal() {
        return Err(Error::NotDiagonalSector(sector.to_string()));
    }
    if sector.n() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            found: sector.n(),
        });
    }
    let fixed = sector.phases().iter().filter(|p| p.is_zero()).count();
    if exponents.len() != fixed {
        return Err(Error::DimensionMismatch {
            expected: fixed,
            found: exponents.len(),
        });
    }
    let mut b = exponents.iter();
    let mut phases = Vec::with_capacity(d.len());
    let mut out = Vec::new();
    for (p, &di) in sector.phases().iter().zip(&d) {
        if p.is_zero() {
            let bi = *b.next().expect("length checked");
            phases.push(Rational::new(bi as i64 + 1, di as i64));
        } else {
            let k = p.value() * di as i64;
            if !k.is_integer() {
                return Err(Error::NotASymmetry(sector.to_string()));
            }
            out.push((k.to_integer() - 1) as u32);
            phases.push(Rational::from_integer(0));
        }
    }
    Ok((MonomialSymmetry::diagonal(&phases), out))
}

/// An A-side basis vector and the B-side vector it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub a: GradedBasisVector,
    pub b: GradedBasisVector,
}

impl Pairing {
    pub fn bidegree(&self) -> Bidegree {
        self.a.bidegree
    }
}

/// The two bijections `A_0 -> B_nar'` and `A_nar' -> B_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedMirror {
    pub a0_to_bnar: Vec<Pairing>,
    pub anar_to_b0: Vec<Pairing>,
}

type TermKey = (MonomialSymmetry, Vec<u32>);

fn match_corner(
    w_src: &InvertiblePolynomial,
    src: &[GradedBasisVector],
    dst: &[GradedBasisVector],
    a_is_src: bool,
) -> Result<Vec<Pairing>> {
    let mut by_terms: HashMap<Vec<TermKey>, usize> = HashMap::new();
    for (i, v) in dst.iter().enumerate() {
        let mut keys: Vec<TermKey> = v.terms.iter().map(|t| (t.sector.clone(), t.exponents.clone())).collect();
        keys.sort();
        by_terms.insert(keys, i);
    }
    let mut used = vec![false; dst.len()];
    let mut out = Vec::with_capacity(src.len());
    for v in src {
        let mut image: Vec<(TermKey, Phase)> = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            let (g, e) = unprojected_mirror(w_src, &t.sector, &t.exponents)?;
            image.push(((g, e), t.phase));
        }
        image.sort();
        let keys: Vec<TermKey> = image.iter().map(|(k, _)| k.clone()).collect();
        let j = *by_terms
            .get(&keys)
            .ok_or_else(|| Error::TheoremViolation(format!("no partner for {}", v.label())))?;
        if used[j] {
            return Err(Error::TheoremViolation(format!("{} hit twice", dst[j].label())));
        }
        used[j] = true;
        let target = &dst[j];
        let phase_of: HashMap<TermKey, Phase> = target
            .terms
            .iter()
            .map(|t| ((t.sector.clone(), t.exponents.clone()), t.phase))
            .collect();
        let offsets: Vec<Phase> = image.iter().map(|(k, p)| phase_of[k] - *p).collect();
        if offsets.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::TheoremViolation(format!(
                "coefficients of {} do not match {}",
                v.label(),
                target.label()
            )));
        }
        if v.bidegree != target.bidegree {
            return Err(Error::TheoremViolation(format!(
                "{} has bidegree {:?} but its image {} has {:?}",
                v.label(),
                v.bidegree,
                target.label(),
                target.bidegree
            )));
        }
        let (a, b) = if a_is_src {
            (v.clone(), target.clone())
        } else {
            (target.clone(), v.clone())
        };
        out.push(Pairing { a, b });
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(Error::TheoremViolation(format!("{} is not hit", dst[j].label())));
    }
    Ok(out)
}

/// The generators of `G* = H^T K` without closing the group.
fn dual_generators(w: &InvertiblePolynomial, g: &SymmetryGroup, cap: usize) -> Result<(SymmetryGroup, Vec<MonomialSymmetry>)> {
    let hk = decompose_hk(g, w)?;
    let ht = dual_group_capped(&hk.h, w, cap)?;
    let wt = w.transpose();
    for k in hk.k.generators() {
        if !is_symmetry(k, &wt)? {
            return Err(Error::NotASymmetry(format!("{k} on the transpose polynomial")));
        }
    }
    let mut gens = ht.generators().to_vec();
    gens.extend(hk.k.generators().iter().cloned());
    if let Some(e) = gens.iter().find(|e| !e.det_phase().is_zero()) {
        return Err(Error::NotAdmissibleB(e.to_string()));
    }
    Ok((ht, gens))
}

/// Builds both corners and checks that the mirror map is a bigraded
/// bijection on each.
///
/// Only the identity and narrow diagonal sectors are built, so `G*` is never
/// closed; the result does not depend on `|G*|`.
pub fn restricted_mirror(w: &InvertiblePolynomial, g: &SymmetryGroup, cap: usize) -> Result<RestrictedMirror> {
    if !w.is_fermat() {
        return Err(Error::NotFermat);
    }
    if !g.contains(&exponential_grading(w)) {
        return Err(Error::NotAdmissibleA);
    }
    let wt = w.transpose();
    let (ht, star_gens) = dual_generators(w, g, cap)?;
    let h = g.subgroup_where(|e| e.is_diagonal());
    let id = [MonomialSymmetry::identity(w.n_vars())];

    let a0 = invariant_basis(w, g.generators(), &id, Side::A)?;
    let anar = invariant_basis(w, g.generators(), &narrow_diagonal_set(&h)?, Side::A)?;
    let b0 = invariant_basis(&wt, &star_gens, &id, Side::B)?;
    let bnar = invariant_basis(&wt, &star_gens, &narrow_diagonal_set(&ht)?, Side::B)?;

    Ok(RestrictedMirror {
        a0_to_bnar: match_corner(w, &a0, &bnar, true)?,
        anar_to_b0: match_corner(&wt, &b0, &anar, false)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    BigradedIsomorphic,
    DimensionsMatchBigradingFails,
    DimensionMismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::BigradedIsomorphic => "BigradedIsomorphic",
            Verdict::DimensionsMatchBigradingFails => "DimensionsMatchBigradingFails",
            Verdict::DimensionMismatch => "DimensionMismatch",
        })
    }
}

/// Bidegrees of the basis vectors touching a non-diagonal element of
/// `G` and `G*`, when the two sides differ there.
///
/// Diagonal sectors are left out: the mirror map exchanges them with
/// untwisted ones, so they always differ sector by sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorDiff {
    pub sector: MonomialSymmetry,
    pub a: Vec<Bidegree>,
    pub b: Vec<Bidegree>,
}

#[derive(Debug, Clone)]
pub struct MirrorReport {
    pub a_space: GradedSpace,
    pub b_space: GradedSpace,
    pub dual_group: SymmetryGroup,
    pub verdict: Verdict,
    pub pc: ParityResult,
    pub restricted: RestrictedMirror,
    /// `(bidegree, dim A, dim B)` wherever the two differ.
    pub bidegree_diffs: Vec<(Bidegree, usize, usize)>,
    pub sector_diffs: Vec<SectorDiff>,
}

fn bidegrees_by_sector(space: &GradedSpace) -> BTreeMap<MonomialSymmetry, Vec<Bidegree>> {
    let mut map: BTreeMap<MonomialSymmetry, Vec<Bidegree>> = BTreeMap::new();
    for v in &space.basis {
        let mut seen: Vec<&MonomialSymmetry> = v.terms.iter().map(|t| &t.sector).collect();
        seen.dedup();
        for s in seen {
            map.entry(s.clone()).or_default().push(v.bidegree);
        }
    }
    for list in map.values_mut() {
        list.sort();
    }
    map
}

/// Builds `A_{W,G}` and `B_{W^T,G*}` and compares them.
pub fn full_comparison(w: &InvertiblePolynomial, g: &SymmetryGroup, cap: usize) -> Result<MirrorReport> {
    let a_space = a_state_space(w, g)?;
    let gstar = nonabelian_dual(g, w, cap)?;
    let wt = w.transpose();
    let b_space = b_state_space(&wt, &gstar)?;
    let restricted = restricted_mirror(w, g, cap)?;
    let pc = parity_condition(&decompose_hk(g, w)?.k)?;

    let mut keys: Vec<Bidegree> = a_space.dims.keys().chain(b_space.dims.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let bidegree_diffs: Vec<(Bidegree, usize, usize)> = keys
        .into_iter()
        .map(|k| {
            (
                k,
                a_space.dims.get(&k).copied().unwrap_or(0),
                b_space.dims.get(&k).copied().unwrap_or(0),
            )
        })
        .filter(|(_, a, b)| a != b)
        .collect();
    let verdict = if bidegree_diffs.is_empty() {
        Verdict::BigradedIsomorphic
    } else if a_space.total_dim == b_space.total_dim {
        Verdict::DimensionsMatchBigradingFails
    } else {
        Verdict::DimensionMismatch
    };

    let a_map = bidegrees_by_sector(&a_space);
    let b_map = bidegrees_by_sector(&b_space);
    let sector_diffs = g
        .elements()
        .iter()
        .filter(|s| !s.is_diagonal() && gstar.contains(s))
        .filter_map(|s| {
            let a = a_map.get(s).cloned().unwrap_or_default();
            let b = b_map.get(s).cloned().unwrap_or_default();
            (a != b).then(|| SectorDiff {
                sector: s.clone(),
                a,
                b,
            })
        })
        .collect();

    Ok(MirrorReport {
        a_space,
        b_space,
        dual_group: gstar,
        verdict,
        pc,
        restricted,
        bidegree_diffs,
        sector_diffs,
    })
}
