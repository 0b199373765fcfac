//! A- and B-model state spaces for Fermat polynomials.
//!
//! Every sector `Q_{W_g} . omega_g` has a monomial basis on the fixed-cycle
//! coordinates of `g`, and every group element maps basis monomials of one
//! sector to phase multiples of basis monomials of a conjugate sector. The
//! invariants are therefore spanned by orbit sums, one per orbit whose
//! accumulated phases are consistent.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::{InvertiblePolynomial, Rational};
use crate::symmetry::{exponential_grading, is_symmetry, FixedLocus, MonomialSymmetry, Phase, SymmetryGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

pub type Bidegree = (Rational, Rational);

/// The sector of `g`: Milnor ring of `W` restricted to `Fix(g)`, times the
/// volume form on `Fix(g)`.
///
/// Coordinate `y_C` belongs to the `C`-th fixed cycle; `W_g` restricts to
/// `sum_C y_C^{d_C}` up to coefficients, so the Milnor basis is every tuple
/// with `0 <= b_C <= d_C - 2`.
#[derive(Debug, Clone)]
pub struct Sector {
    pub element: MonomialSymmetry,
    pub locus: FixedLocus,
    pub degrees: Vec<u32>,
}

impl Sector {
    pub fn is_narrow(&self) -> bool {
        self.locus.is_trivial()
    }

    pub fn basis_len(&self) -> usize {
        self.degrees.iter().map(|&d| (d - 1) as usize).product()
    }

    /// Basis tuples in lexicographic order.
    pub fn milnor_basis(&self) -> Vec<Vec<u32>> {
        (0..self.basis_len()).map(|i| self.monomial(i)).collect()
    }

    pub fn monomial(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.degrees.len()];
        for (slot, &d) in out.iter_mut().zip(&self.degrees).rev() {
            let r = (d - 1) as usize;
            *slot = (index % r) as u32;
            index /= r;
        }
        out
    }

    pub fn index_of(&self, exponents: &[u32]) -> usize {
        exponents
            .iter()
            .zip(&self.degrees)
            .fold(0, |acc, (&b, &d)| acc * (d - 1) as usize + b as usize)
    }

    /// Weighted degree of `prod y_C^{b_C} dy_C`, form included.
    pub fn degree(&self, exponents: &[u32]) -> Rational {
        exponents
            .iter()
            .zip(&self.degrees)
            .map(|(&b, &d)| Rational::new(b as i64 + 1, d as i64))
            .sum()
    }
}

pub fn build_sector(w: &InvertiblePolynomial, g: &MonomialSymmetry) -> Result<Sector> {
    let d = w.fermat_degrees().ok_or(Error::NotFermat)?;
    if g.n() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            found: g.n(),
        });
    }
    let locus = g.fixed_locus();
    let mut degrees = Vec::with_capacity(locus.dimension());
    for cycle in &locus.cycles {
        let dc = d[cycle[0]];
        if cycle.iter().any(|&i| d[i] != dc) {
            return Err(Error::NotASymmetry(g.to_string()));
        }
        degrees.push(dc);
    }
    Ok(Sector {
        element: g.clone(),
        locus,
        degrees,
    })
}

/// The pullback by `gamma` from the sector of `g` to the sector of
/// `gamma^{-1} g gamma`.
///
/// Target coordinate `z_D` pulls `y_{C}` back to `e(scalar_D) z_D` where
/// `C = cycle_source[D]`; `form_phase` is the phase picked up by the volume
/// form, reordering sign included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorMap {
    pub gamma: MonomialSymmetry,
    pub source: MonomialSymmetry,
    pub target: MonomialSymmetry,
    pub cycle_source: Vec<usize>,
    pub scalars: Vec<Phase>,
    pub form_phase: Phase,
}

impl SectorMap {
    /// Image of `y^b . omega` as `(phase, exponents)` in the target sector.
    pub fn apply(&self, exponents: &[u32]) -> (Phase, Vec<u32>) {
        let mut out = Vec::with_capacity(self.cycle_source.len());
        let mut phase = self.form_phase;
        for (d, &c) in self.cycle_source.iter().enumerate() {
            let b = exponents[c];
            out.push(b);
            phase = phase + self.scalars[d].times(b as i64);
        }
        (phase, out)
    }
}

pub fn sector_map(gamma: &MonomialSymmetry, sector: &Sector) -> Result<SectorMap> {
    let target = sector.element.conjugate_by(gamma);
    let target_locus = target.fixed_locus();
    sector_map_onto(gamma, sector, &target, &target_locus)
}

fn sector_map_onto(
    gamma: &MonomialSymmetry,
    sector: &Sector,
    target: &MonomialSymmetry,
    target_locus: &FixedLocus,
) -> Result<SectorMap> {
    let tau = gamma.perm();
    let k = target_locus.dimension();
    if k != sector.locus.dimension() {
        return Err(Error::Internal(format!(
            "conjugation by {gamma} changed the fixed dimension of {}",
            sector.element
        )));
    }
    let mut cycle_source = Vec::with_capacity(k);
    let mut scalars = Vec::with_capacity(k);
    for (dcycle, dvec) in target_locus.cycles.iter().zip(&target_locus.vectors) {
        // gamma u_D is supported on tau^{-1}(D)
        let mut pre: Vec<usize> = dcycle.iter().map(|&i| tau.inverse().apply(i)).collect();
        pre.sort_unstable();
        let c = sector
            .locus
            .cycles
            .iter()
            .position(|cyc| {
                let mut s = cyc.clone();
                s.sort_unstable();
                s == pre
            })
            .ok_or_else(|| Error::Internal(format!("{gamma} does not map fixed cycles of {}", sector.element)))?;
        let i0 = sector.locus.cycles[c][0];
        let at = tau.apply(i0);
        let u = dvec
            .iter()
            .find(|(i, _)| *i == at)
            .map(|&(_, p)| p)
            .ok_or_else(|| Error::Internal("canonical vector lookup".into()))?;
        cycle_source.push(c);
        scalars.push(gamma.phases()[i0] + u);
    }
    let sign = if permutation_is_even(&cycle_source) {
        Phase::zero()
    } else {
        Phase::half()
    };
    let form_phase = scalars.iter().fold(sign, |acc, &s| acc + s);
    Ok(SectorMap {
        gamma: gamma.clone(),
        source: sector.element.clone(),
        target: target.clone(),
        cycle_source,
        scalars,
        form_phase,
    })
}

fn permutation_is_even(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    let mut transpositions = 0;
    for start in 0..images.len() {
        let mut i = start;
        let mut len = 0;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// `(deg P + age g - age j, N_g - deg P + age g - age j)`.
pub fn bidegree_a(degree: Rational, g: &MonomialSymmetry, w: &InvertiblePolynomial) -> Bidegree {
    let shift = g.age() - exponential_grading(w).age();
    let n_g = Rational::from_integer(g.fixed_locus().dimension() as i64);
    (degree + shift, n_g - degree + shift)
}

/// `(deg P + age g - age j, deg P + age g^{-1} - age j)`.
pub fn bidegree_b(degree: Rational, g: &MonomialSymmetry, w: &InvertiblePolynomial) -> Bidegree {
    let age_j = exponential_grading(w).age();
    (degree + g.age() - age_j, degree + g.inverse().age() - age_j)
}

pub fn bidegree(side: Side, degree: Rational, g: &MonomialSymmetry, w: &InvertiblePolynomial) -> Bidegree {
    match side {
        Side::A => bidegree_a(degree, g, w),
        Side::B => bidegree_b(degree, g, w),
    }
}

/// One term `e(phase) . y^exponents . omega_sector`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub sector: MonomialSymmetry,
    pub exponents: Vec<u32>,
    pub phase: Phase,
}

impl Term {
    /// The polynomial part, written in the ambient `x` variables: a fixed
    /// cycle becomes the linear form it is dual to.
    pub fn polynomial_label(&self) -> String {
        let locus = self.sector.fixed_locus();
        let mut factors = Vec::new();
        for ((cycle, vec), &b) in locus.cycles.iter().zip(&locus.vectors).zip(&self.exponents) {
            if b == 0 {
                continue;
            }
            let base = if cycle.len() == 1 {
                format!("x{}", cycle[0] + 1)
            } else {
                let mut sorted = vec.clone();
                sorted.sort_unstable_by_key(|&(i, _)| i);
                let parts: Vec<String> = sorted
                    .iter()
                    .map(|&(i, p)| {
                        if p.is_zero() {
                            format!("x{}", i + 1)
                        } else {
                            format!("e({})*x{}", -p, i + 1)
                        }
                    })
                    .collect();
                format!("({})", parts.join(" + "))
            };
            factors.push(if b == 1 { base } else { format!("{base}^{b}") });
        }
        let body = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        };
        if self.phase.is_zero() {
            body
        } else {
            format!("e({})*{}", self.phase, body)
        }
    }
}

/// An orbit sum of terms; the first term is the leading one and carries
/// phase 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasisVector {
    pub side: Side,
    pub terms: Vec<Term>,
    pub bidegree: Bidegree,
}

impl GradedBasisVector {
    pub fn leading(&self) -> &Term {
        &self.terms[0]
    }

    pub fn is_narrow(&self) -> bool {
        self.leading().exponents.is_empty() && self.leading().sector.fixed_locus().is_trivial()
    }

    /// `[P1 + P2, g] + [1, h] + ...`, consecutive terms in one sector grouped.
    pub fn label(&self) -> String {
        self.label_truncated(usize::MAX)
    }

    /// Like [`label`](Self::label) but stops after `max_groups` sector groups.
    pub fn label_truncated(&self, max_groups: usize) -> String {
        let mut groups: Vec<(MonomialSymmetry, Vec<String>)> = Vec::new();
        for t in &self.terms {
            match groups.last_mut() {
                Some((g, polys)) if *g == t.sector => polys.push(t.polynomial_label()),
                _ => groups.push((t.sector.clone(), vec![t.polynomial_label()])),
            }
        }
        let total = groups.len();
        let mut parts: Vec<String> = groups
            .into_iter()
            .take(max_groups)
            .map(|(g, polys)| format!("[{}, {}]", polys.join(" + "), g))
            .collect();
        if total > max_groups {
            parts.push(format!("({} more)", total - max_groups));
        }
        parts.join(" + ")
    }
}

/// Basis of the invariants of `sum_{g in sectors} Q_{W_g} . omega_g` under
/// the group generated by `generators`.
///
/// `sectors` must be closed under conjugation by the generators. Output is
/// ordered by leading term.
pub fn invariant_basis(
    w: &InvertiblePolynomial,
    generators: &[MonomialSymmetry],
    sectors: &[MonomialSymmetry],
    side: Side,
) -> Result<Vec<GradedBasisVector>> {
    let mut elems = sectors.to_vec();
    elems.sort();
    elems.dedup();
    let index: HashMap<&MonomialSymmetry, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let data: Vec<Sector> = elems.iter().map(|g| build_sector(w, g)).collect::<Result<_>>()?;
    let loci: Vec<&FixedLocus> = data.iter().map(|s| &s.locus).collect();

    let mut maps: Vec<Vec<(usize, SectorMap)>> = Vec::with_capacity(elems.len());
    for s in &data {
        let mut row = Vec::with_capacity(generators.len());
        for gamma in generators {
            let target = s.element.conjugate_by(gamma);
            let t = *index
                .get(&target)
                .ok_or_else(|| Error::Internal(format!("sector set not closed: missing {target}")))?;
            row.push((t, sector_map_onto(gamma, s, &elems[t], loci[t])?));
        }
        maps.push(row);
    }

    let mut offsets = Vec::with_capacity(elems.len() + 1);
    offsets.push(0usize);
    for s in &data {
        offsets.push(offsets.last().unwrap() + s.basis_len());
    }
    let total = *offsets.last().unwrap();
    let locate = |node: usize| -> (usize, usize) {
        let s = offsets.partition_point(|&o| o <= node) - 1;
        (s, node - offsets[s])
    };

    let mut phase: Vec<Option<Phase>> = vec![None; total];
    let mut out = Vec::new();
    for root in 0..total {
        if phase[root].is_some() {
            continue;
        }
        phase[root] = Some(Phase::zero());
        let mut members = vec![root];
        let mut queue = VecDeque::from([root]);
        let mut consistent = true;
        while let Some(node) = queue.pop_front() {
            let (s, m) = locate(node);
            let exps = data[s].monomial(m);
            let p = phase[node].unwrap();
            for (t, map) in &maps[s] {
                let (dp, image) = map.apply(&exps);
                let target = offsets[*t] + data[*t].index_of(&image);
                let q = p + dp;
                match phase[target] {
                    None => {
                        phase[target] = Some(q);
                        members.push(target);
                        queue.push_back(target);
                    }
                    Some(existing) if existing != q => consistent = false,
                    Some(_) => {}
                }
            }
        }
        if !consistent {
            continue;
        }
        members.sort_unstable();
        let terms: Vec<Term> = members
            .iter()
            .map(|&node| {
                let (s, m) = locate(node);
                Term {
                    sector: elems[s].clone(),
                    exponents: data[s].monomial(m),
                    phase: phase[node].unwrap(),
                }
            })
            .collect();
        let (s, m) = locate(root);
        let bideg = bidegree(side, data[s].degree(&data[s].monomial(m)), &elems[s], w);
        out.push(GradedBasisVector {
            side,
            terms,
            bidegree: bideg,
        });
    }
    Ok(out)
}

/// Contribution of one conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub representative: MonomialSymmetry,
    pub size: usize,
    pub fixed_dim: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectorKind {
    Untwisted,
    TwistedBroad,
    Narrow,
}

impl ClassCensus {
    pub fn kind(&self) -> SectorKind {
        if self.representative.is_identity() {
            SectorKind::Untwisted
        } else if self.fixed_dim > 0 {
            SectorKind::TwistedBroad
        } else {
            SectorKind::Narrow
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedSpace {
    pub side: Side,
    pub basis: Vec<GradedBasisVector>,
    pub dims: BTreeMap<Bidegree, usize>,
    pub total_dim: usize,
    pub census: Vec<ClassCensus>,
}

impl GradedSpace {
    fn assemble(side: Side, group: &SymmetryGroup, basis: Vec<GradedBasisVector>) -> Self {
        let mut dims = BTreeMap::new();
        let mut per_class = vec![0usize; group.classes().len()];
        for v in &basis {
            *dims.entry(v.bidegree).or_insert(0) += 1;
            let i = group.index_of(&v.leading().sector).expect("sector in group");
            per_class[group.class_of(i)] += 1;
        }
        let census = group
            .classes()
            .iter()
            .zip(per_class)
            .map(|(c, dim)| {
                let rep = group.element(c[0]).clone();
                ClassCensus {
                    fixed_dim: rep.fixed_locus().dimension(),
                    representative: rep,
                    size: c.len(),
                    dim,
                }
            })
            .collect();
        GradedSpace {
            side,
            total_dim: basis.len(),
            basis,
            dims,
            census,
        }
    }

    /// Sum of class contributions of the given kind.
    pub fn census_dim(&self, kind: SectorKind) -> usize {
        self.census.iter().filter(|c| c.kind() == kind).map(|c| c.dim).sum()
    }
}

fn check_members(w: &InvertiblePolynomial, group: &SymmetryGroup) -> Result<()> {
    if !w.is_fermat() {
        return Err(Error::NotFermat);
    }
    if group.n() != w.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: w.n_vars(),
            found: group.n(),
        });
    }
    for g in group.generators() {
        if !is_symmetry(g, w)? {
            return Err(Error::NotASymmetry(g.to_string()));
        }
    }
    Ok(())
}

pub fn a_state_space(w: &InvertiblePolynomial, group: &SymmetryGroup) -> Result<GradedSpace> {
    check_members(w, group)?;
    if !group.contains(&exponential_grading(w)) {
        return Err(Error::NotAdmissibleA);
    }
    let basis = invariant_basis(w, group.generators(), group.elements(), Side::A)?;
    Ok(GradedSpace::assemble(Side::A, group, basis))
}

pub fn b_state_space(w: &InvertiblePolynomial, group: &SymmetryGroup) -> Result<GradedSpace> {
    check_members(w, group)?;
    if let Some(g) = group.generators().iter().find(|g| !g.det_phase().is_zero()) {
        return Err(Error::NotAdmissibleB(g.to_string()));
    }
    let basis = invariant_basis(w, group.generators(), group.elements(), Side::B)?;
    Ok(GradedSpace::assemble(Side::B, group, basis))
}

/// Graded dimensions arranged by `p + q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDiamond {
    /// Rows from the largest `p + q` down; each row runs over `p` descending.
    /// Empty when some bidegree is not integral.
    pub rows: Vec<Vec<usize>>,
    pub sparse: Vec<(Bidegree, usize)>,
}

impl HodgeDiamond {
    pub fn is_integral(&self) -> bool {
        self.sparse.iter().all(|((p, q), _)| p.is_integer() && q.is_integer())
    }

    pub fn render(&self) -> String {
        if !self.is_integral() {
            return self
                .sparse
                .iter()
                .map(|((p, q), d)| format!("({p}, {q}): {d}\n"))
                .collect();
        }
        let lines: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("   "))
            .collect();
        let width = lines.iter().map(|l| l.len()).max().unwrap_or(0);
        lines
            .iter()
            .map(|l| format!("{}{}\n", " ".repeat((width - l.len()) / 2), l))
            .collect()
    }
}

pub fn hodge_diamond(space: &GradedSpace) -> HodgeDiamond {
    diamond_from_dims(&space.dims)
}

pub fn diamond_from_dims(dims: &BTreeMap<Bidegree, usize>) -> HodgeDiamond {
    let sparse: Vec<(Bidegree, usize)> = dims.iter().filter(|(_, &d)| d > 0).map(|(&b, &d)| (b, d)).collect();
    let mut diamond = HodgeDiamond { rows: Vec::new(), sparse };
    if diamond.sparse.is_empty() || !diamond.is_integral() {
        return diamond;
    }
    let grid: BTreeMap<(i64, i64), usize> = diamond
        .sparse
        .iter()
        .map(|((p, q), d)| ((p.to_integer(), q.to_integer()), *d))
        .collect();
    let pmin = grid.keys().map(|k| k.0).min().unwrap();
    let pmax = grid.keys().map(|k| k.0).max().unwrap();
    let qmin = grid.keys().map(|k| k.1).min().unwrap();
    let qmax = grid.keys().map(|k| k.1).max().unwrap();
    for s in (pmin + qmin..=pmax + qmax).rev() {
        let row: Vec<usize> = (pmin..=pmax)
            .rev()
            .filter(|p| (qmin..=qmax).contains(&(s - p)))
            .map(|p| grid.get(&(p, s - p)).copied().unwrap_or(0))
            .collect();
        if row.iter().any(|&d| d > 0) {
            diamond.rows.push(row);
        }
    }
    diamond
}

/// Sum over all group elements of the sector dimensions, before taking
/// invariants.
pub fn unprojected_dimension(w: &InvertiblePolynomial, group: &SymmetryGroup) -> Result<usize> {
    group
        .elements()
        .iter()
        .map(|g| build_sector(w, g).map(|s| s.basis_len()))
        .sum()
}
