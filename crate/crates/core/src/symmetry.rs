//! Monomial symmetries (diagonal times permutation) and the finite groups
//! they generate.
//!
//! A [`MonomialSymmetry`] `g = (sigma, a)` is the matrix with entry
//! `e^{2 pi i a_i}` in row `i`, column `sigma(i)`. On coordinates it acts by
//! `(g.x)_i = e^{2 pi i a_i} x_{sigma(i)}`, so a diagonal element reads off
//! directly as its additive phase vector. Products are matrix products:
//! `g.compose(h)` is the matrix `g * h`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polynomial::{inverse_rational, InvertiblePolynomial, Rational};

/// Default upper bound on group orders produced by [`closure`].
pub const DEFAULT_CAP: usize = 1_000_000;

/// A rational number modulo 1, kept in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(value: Rational) -> Self {
        Phase(value - value.floor())
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Phase::new(Rational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Phase(Rational::zero())
    }

    pub fn half() -> Self {
        Phase(Rational::new(1, 2))
    }

    pub fn value(self) -> Rational {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn times(self, k: i64) -> Phase {
        Phase::new(self.0 * k)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::new(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::new(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A permutation of `{0, ..., n-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::parse(0, format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from zero-based cycles; `(0 1 2)` sends 0 to 1.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                if i >= n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: i + 1,
                    });
                }
                if touched[i] {
                    return Err(Error::parse(0, format!("index {} repeated in cycle notation", i + 1)));
                }
                touched[i] = true;
                images[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self` first, then `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All cycles including fixed points, each starting at its smallest
    /// index, ordered by that index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `true` for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let labels: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// A monomial matrix `diag(e^{2 pi i a}) * P_sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialSymmetry {
    perm: Perm,
    phases: Vec<Phase>,
}

/// Fixed subspace of a monomial symmetry.
///
/// Each cycle of `sigma` whose phases sum to an integer contributes one
/// eigenvector with eigenvalue 1. Its canonical representative has entry 1
/// at the smallest index of the cycle; `vectors[k]` lists the support of the
/// `k`-th vector as `(index, phase)` pairs in cycle order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedLocus {
    pub cycles: Vec<Vec<usize>>,
    pub vectors: Vec<Vec<(usize, Phase)>>,
}

impl FixedLocus {
    pub fn dimension(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Position of the fixed cycle containing coordinate `i`, if any.
    pub fn cycle_containing(&self, i: usize) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(&i))
    }
}

impl MonomialSymmetry {
    pub fn new(perm: Perm, phases: Vec<Phase>) -> Result<Self> {
        if perm.len() != phases.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                found: phases.len(),
            });
        }
        Ok(Self { perm, phases })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: Perm::identity(n),
            phases: vec![Phase::zero(); n],
        }
    }

    pub fn diagonal(phases: &[Rational]) -> Self {
        Self {
            perm: Perm::identity(phases.len()),
            phases: phases.iter().map(|&a| Phase::new(a)).collect(),
        }
    }

    pub fn permutation(perm: Perm) -> Self {
        let n = perm.len();
        Self {
            perm,
            phases: vec![Phase::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.phases.len()
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.phases.iter().all(|p| p.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.phases.iter().all(|p| p.is_zero())
    }

    /// Matrix product `self * other`: permutation `i -> other(self(i))`,
    /// phase `a_i + b_{self(i)}`.
    pub fn compose(&self, other: &MonomialSymmetry) -> MonomialSymmetry {
        let perm = self.perm.then(&other.perm);
        let phases = self
            .phases
            .iter()
            .enumerate()
            .map(|(i, &a)| a + other.phases[self.perm.apply(i)])
            .collect();
        MonomialSymmetry { perm, phases }
    }

    pub fn inverse(&self) -> MonomialSymmetry {
        let inv = self.perm.inverse();
        let n = self.n();
        let mut phases = vec![Phase::zero(); n];
        for i in 0..n {
            phases[self.perm.apply(i)] = -self.phases[i];
        }
        MonomialSymmetry { perm: inv, phases }
    }

    pub fn pow(&self, k: u32) -> MonomialSymmetry {
        let mut acc = MonomialSymmetry::identity(self.n());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// `gamma^{-1} * self * gamma`.
    pub fn conjugate_by(&self, gamma: &MonomialSymmetry) -> MonomialSymmetry {
        gamma.inverse().compose(self).compose(gamma)
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    /// Determinant as a phase: `sign(sigma) * e^{2 pi i sum a}`.
    pub fn det_phase(&self) -> Phase {
        let total = self.phases.iter().fold(Phase::zero(), |acc, &p| acc + p);
        if self.perm.is_even() {
            total
        } else {
            total + Phase::half()
        }
    }

    /// Sum of `log(lambda)/(2 pi i)` over the eigenvalues, principal branch
    /// in `[0, 1)`.
    ///
    /// A cycle of length `l` with total phase `s` has eigenvalues
    /// `e^{2 pi i (s+k)/l}`, `k = 0..l-1`.
    pub fn age(&self) -> Rational {
        let mut total = Rational::zero();
        for cycle in self.perm.cycles() {
            let len = cycle.len() as i64;
            let s = cycle.iter().fold(Phase::zero(), |acc, &i| acc + self.phases[i]).value();
            for k in 0..len {
                total += Phase::new((s + k) / len).value();
            }
        }
        total
    }

    pub fn fixed_locus(&self) -> FixedLocus {
        let mut cycles = Vec::new();
        let mut vectors = Vec::new();
        for cycle in self.perm.cycles() {
            let s = cycle.iter().fold(Phase::zero(), |acc, &i| acc + self.phases[i]);
            if !s.is_zero() {
                continue;
            }
            // (g v)_i = e(a_i) v_{sigma(i)} = v_i  =>  v_{sigma(i)} = v_i - a_i
            let mut vec = Vec::with_capacity(cycle.len());
            let mut phase = Phase::zero();
            for &i in &cycle {
                vec.push((i, phase));
                phase = phase - self.phases[i];
            }
            cycles.push(cycle);
            vectors.push(vec);
        }
        FixedLocus { cycles, vectors }
    }

    /// Pulls the monomial `x^e` back along `g`: `(x^e)(g x) = e(phase) x^{e'}`
    /// where `e'_{sigma(i)} = e_i`.
    pub fn act_on_exponents(&self, exponents: &[u32]) -> (Vec<u32>, Phase) {
        let mut out = vec![0; exponents.len()];
        let mut phase = Phase::zero();
        for (i, &e) in exponents.iter().enumerate() {
            out[self.perm.apply(i)] = e;
            phase = phase + self.phases[i].times(e as i64);
        }
        (out, phase)
    }
}

impl fmt::Display for MonomialSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diag_trivial = self.is_pure_permutation();
        let perm_trivial = self.perm.is_identity();
        if !diag_trivial || perm_trivial {
            let parts: Vec<String> = self.phases.iter().map(|p| p.to_string()).collect();
            write!(f, "diag({})", parts.join(","))?;
        }
        if !perm_trivial {
            if !diag_trivial {
                f.write_str("*")?;
            }
            write!(f, "{}", self.perm)?;
        }
        Ok(())
    }
}

/// `true` iff `g` maps `W` to itself and mixes only equal-weight variables.
pub fn is_symmetry(g: &MonomialSymmetry, w: &InvertiblePolynomial) -> Result<bool> {
    let n = w.n_vars();
    if g.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.n(),
        });
    }
    let q = w.weights();
    if (0..n).any(|i| q[i] != q[g.perm().apply(i)]) {
        return Ok(false);
    }
    let rows: HashSet<&[u32]> = w.exponents().iter().map(|r| r.as_slice()).collect();
    for row in w.exponents() {
        let (image, phase) = g.act_on_exponents(row);
        if !phase.is_zero() || !rows.contains(image.as_slice()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `j_W = (q_1, ..., q_N)`.
pub fn exponential_grading(w: &InvertiblePolynomial) -> MonomialSymmetry {
    MonomialSymmetry::diagonal(w.weights())
}

/// The group of all diagonal symmetries, generated by the columns of
/// `A_W^{-1}`.
pub fn diagonal_group(w: &InvertiblePolynomial) -> Result<SymmetryGroup> {
    diagonal_group_capped(w, DEFAULT_CAP)
}

pub fn diagonal_group_capped(w: &InvertiblePolynomial, cap: usize) -> Result<SymmetryGroup> {
    let n = w.n_vars();
    let a: Vec<Vec<Rational>> = w
        .exponents()
        .iter()
        .map(|r| r.iter().map(|&e| Rational::from_integer(e as i64)).collect())
        .collect();
    let inv = inverse_rational(&a).ok_or(Error::SingularMatrix)?;
    let gens: Vec<MonomialSymmetry> = (0..n)
        .map(|j| {
            let column: Vec<Rational> = (0..n).map(|i| inv[i][j]).collect();
            MonomialSymmetry::diagonal(&column)
        })
        .filter(|g| !g.is_identity())
        .collect();
    closure(n, &gens, cap)
}

/// Breadth-first closure of `generators` under composition.
pub fn closure(n: usize, generators: &[MonomialSymmetry], cap: usize) -> Result<SymmetryGroup> {
    SymmetryGroup::generate(n, generators.to_vec(), cap)
}

/// Determinant-one elements of `group`.
pub fn sl_subgroup(group: &SymmetryGroup) -> SymmetryGroup {
    group.subgroup_where(|g| g.det_phase().is_zero())
}

pub fn age(g: &MonomialSymmetry) -> Rational {
    g.age()
}

pub fn fixed_locus(g: &MonomialSymmetry) -> FixedLocus {
    g.fixed_locus()
}

/// A finite group of monomial symmetries with eagerly computed conjugacy
/// classes.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    n: usize,
    elements: Vec<MonomialSymmetry>,
    index: HashMap<MonomialSymmetry, usize>,
    generators: Vec<MonomialSymmetry>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl PartialEq for SymmetryGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for SymmetryGroup {}

impl SymmetryGroup {
    fn generate(n: usize, generators: Vec<MonomialSymmetry>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        let elements = close_set(n, std::slice::from_ref(&MonomialSymmetry::identity(n)), &generators, cap)?;
        Ok(Self::from_closed(n, elements, generators))
    }

    /// Builds the group from an element list already known to be closed.
    fn from_closed(n: usize, mut elements: Vec<MonomialSymmetry>, generators: Vec<MonomialSymmetry>) -> Self {
        elements.sort();
        elements.dedup();
        let index: HashMap<MonomialSymmetry, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        let inverses: Vec<MonomialSymmetry> = generators.iter().map(|g| g.inverse()).collect();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for (g, ginv) in generators.iter().zip(&inverses) {
                    let c = ginv.compose(&elements[i]).compose(g);
                    let j = index[&c];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Self {
            n,
            elements,
            index,
            generators,
            classes,
            class_of,
        }
    }

    /// Elements satisfying `pred`, which must cut out a subgroup.
    pub fn subgroup_where(&self, pred: impl Fn(&MonomialSymmetry) -> bool) -> SymmetryGroup {
        let elements: Vec<MonomialSymmetry> = self.elements.iter().filter(|g| pred(g)).cloned().collect();
        let generators = generating_set(self.n, &elements);
        Self::from_closed(self.n, elements, generators)
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_closed(n, vec![MonomialSymmetry::identity(n)], Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialSymmetry] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MonomialSymmetry {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[MonomialSymmetry] {
        &self.generators
    }

    pub fn index_of(&self, g: &MonomialSymmetry) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &MonomialSymmetry) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    /// Conjugacy classes as sorted element indices; the first member is the
    /// lexicographically least element and serves as representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of_element(&self, g: &MonomialSymmetry) -> Result<&[usize]> {
        let i = self.index_of(g).ok_or_else(|| Error::NotAMember(g.to_string()))?;
        Ok(&self.classes[self.class_of[i]])
    }

    pub fn centralizer(&self, g: &MonomialSymmetry) -> Result<SymmetryGroup> {
        if !self.contains(g) {
            return Err(Error::NotAMember(g.to_string()));
        }
        Ok(self.subgroup_where(|h| h.compose(g) == g.compose(h)))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.elements.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.elements.iter().all(|g| g.is_diagonal())
    }

    /// Subgroup generated by `extra` together with this group.
    pub fn join(&self, extra: &[MonomialSymmetry], cap: usize) -> Result<SymmetryGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        closure(self.n, &gens, cap)
    }
}

/// Conjugacy classes of `group` as element lists.
pub fn conjugacy_classes(group: &SymmetryGroup) -> Vec<Vec<MonomialSymmetry>> {
    group
        .classes()
        .iter()
        .map(|c| c.iter().map(|&i| group.element(i).clone()).collect())
        .collect()
}

pub fn centralizer(group: &SymmetryGroup, g: &MonomialSymmetry) -> Result<SymmetryGroup> {
    group.centralizer(g)
}

/// Closes `seed` under right multiplication by `generators`.
fn close_set(
    n: usize,
    seed: &[MonomialSymmetry],
    generators: &[MonomialSymmetry],
    cap: usize,
) -> Result<Vec<MonomialSymmetry>> {
    let mut seen: HashSet<MonomialSymmetry> = seed.iter().cloned().collect();
    let mut out: Vec<MonomialSymmetry> = seed.to_vec();
    let mut queue: VecDeque<usize> = (0..out.len()).collect();
    if out.is_empty() {
        out.push(MonomialSymmetry::identity(n));
        seen.insert(out[0].clone());
        queue.push_back(0);
    }
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h = out[i].compose(g);
            if !seen.contains(&h) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(h.clone());
                out.push(h);
                queue.push_back(out.len() - 1);
            }
        }
    }
    Ok(out)
}

/// Greedy generating set of a closed element list, scanned in canonical order.
fn generating_set(n: usize, elements: &[MonomialSymmetry]) -> Vec<MonomialSymmetry> {
    let mut sorted = elements.to_vec();
    sorted.sort();
    let mut gens: Vec<MonomialSymmetry> = Vec::new();
    let mut span: HashSet<MonomialSymmetry> = HashSet::from([MonomialSymmetry::identity(n)]);
    for g in sorted {
        if span.contains(&g) {
            continue;
        }
        gens.push(g);
        let seed: Vec<MonomialSymmetry> = span.iter().cloned().collect();
        span = close_set(n, &seed, &gens, usize::MAX)
            .expect("uncapped closure")
            .into_iter()
            .collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// Least common multiple of all phase denominators of `g`.
pub fn phase_denominator(g: &MonomialSymmetry) -> i64 {
    g.phases().iter().fold(1i64, |acc, p| acc.lcm(p.value().denom()))
}

impl MonomialSymmetry {
    /// Entry of the underlying matrix at `(row, col)` as a phase, `None` for 0.
    pub fn matrix_entry(&self, row: usize, col: usize) -> Option<Phase> {
        (self.perm.apply(row) == col).then(|| self.phases[row])
    }
}

/// Parses one generator: `j`, `diag(r, ...)`, cycles such as `(1 2)(3 4)`,
/// or `diag(...)*cycles`. Offsets in errors are relative to `text`.
pub fn parse_generator(text: &str, w: &InvertiblePolynomial) -> Result<MonomialSymmetry> {
    let n = w.n_vars();
    let mut p = GenParser { src: text, pos: 0 };
    p.skip_ws();
    if p.rest().trim_end() == "j" {
        return Ok(exponential_grading(w));
    }
    let mut phases: Option<Vec<Rational>> = None;
    if p.rest().starts_with("diag") {
        p.pos += 4;
        p.skip_ws();
        p.expect('(')?;
        let mut v = vec![p.rational()?];
        loop {
            p.skip_ws();
            if p.eat(',') {
                v.push(p.rational()?);
            } else {
                p.expect(')')?;
                break;
            }
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        phases = Some(v);
        p.skip_ws();
        if p.at_end() {
            return Ok(MonomialSymmetry::diagonal(phases.as_ref().unwrap()));
        }
        p.expect('*')?;
        p.skip_ws();
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    while !p.at_end() {
        p.expect('(')?;
        let mut cycle = Vec::new();
        loop {
            p.skip_ws();
            if p.eat(')') {
                break;
            }
            let start = p.pos;
            let i = p.posint()?;
            if i > n {
                return Err(Error::parse(start, format!("index {i} exceeds the {n} variables")));
            }
            cycle.push(i - 1);
        }
        if cycle.is_empty() {
            return Err(Error::parse(p.pos, "empty cycle"));
        }
        cycles.push(cycle);
        p.skip_ws();
    }
    if cycles.is_empty() {
        return Err(Error::parse(p.pos, "expected `j`, `diag(...)` or a cycle"));
    }
    let perm = Perm::from_cycles(n, &cycles)?;
    let phases = phases.unwrap_or_else(|| vec![Rational::zero(); n]);
    MonomialSymmetry::new(perm, phases.into_iter().map(Phase::new).collect())
}

struct GenParser<'a> {
    src: &'a str,
    pos: usize,
}

impl GenParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.rest().trim().is_empty()
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> Result<i64> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(Error::parse(self.pos, "expected a number"));
        }
        let start = self.pos;
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn posint(&mut self) -> Result<usize> {
        let start = self.pos;
        match self.digits()? {
            0 => Err(Error::parse(start, "indices start at 1")),
            v => Ok(v as usize),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let negative = self.eat('-');
        let num = self.digits()?;
        self.skip_ws();
        let den = if self.eat('/') {
            self.skip_ws();
            let start = self.pos;
            match self.digits()? {
                0 => return Err(Error::parse(start, "zero denominator")),
                d => d,
            }
        } else {
            1
        };
        Ok(Rational::new(if negative { -num } else { num }, den))
    }
}
