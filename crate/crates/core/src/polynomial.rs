//! Invertible polynomials stored through their exponent matrices.
//!
//! Row `i` of the exponent matrix is the `i`-th monomial and column `j` the
//! exponent of `x_{j+1}` in it. Coefficients are not tracked: every monomial
//! carries coefficient 1. Rows are kept in a canonical order in which row
//! `i` is the monomial whose "main" variable (exponent >= 2) is `x_{i+1}`,
//! so the diagonal of the matrix carries the atomic exponents `a_i`. That
//! order makes the variables of the transposed polynomial line up with the
//! variables of the original one.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

pub(crate) fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Atomic types of the Thom-Sebastiani decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AtomKind::Fermat => "fermat",
            AtomKind::Chain => "chain",
            AtomKind::Loop => "loop",
        };
        f.write_str(s)
    }
}

/// One Fermat, chain or loop summand.
///
/// `variables` are zero-based indices listed along the block: for a chain
/// `x1^a1 x2 + x2^a2 x3 + ... + xN^aN` they run from `x1` to `xN`; for a
/// loop they start at the smallest index. `exponents[k]` is the exponent of
/// `variables[k]` in the monomial where it is the main variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicBlock {
    pub kind: AtomKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    exponents: Vec<Vec<u32>>,
    weights: Vec<Rational>,
    atoms: Vec<AtomicBlock>,
    var_names: Vec<String>,
}

/// Solves `matrix * x = rhs` exactly. Returns `None` when singular.
pub(crate) fn solve_rational(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(*b);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col];
                for c in col..=n {
                    let v = aug[col][c];
                    aug[r][c] -= factor * v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n]).collect())
}

/// Exact inverse of a square rational matrix.
pub(crate) fn inverse_rational(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        columns.push(solve_rational(matrix, &e)?);
    }
    // columns[j][i] = inv[i][j]
    Some((0..n).map(|i| (0..n).map(|j| columns[j][i]).collect()).collect())
}

fn to_rational_matrix(exponents: &[Vec<u32>]) -> Vec<Vec<Rational>> {
    exponents
        .iter()
        .map(|row| row.iter().map(|&e| Rational::from_integer(e as i64)).collect())
        .collect()
}

/// Unique weights `q` with `A q = (1,...,1)`.
///
/// Weights must lie in `(0, 1/2]`. The closed upper end admits chain tails
/// such as `x3^2` in `x1^3 x2 + x2^2 x3 + x3^2`.
pub fn compute_weights(exponents: &[Vec<u32>]) -> Result<Vec<Rational>> {
    let n = exponents.len();
    if exponents.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare {
            monomials: n,
            variables: exponents.first().map_or(0, |r| r.len()),
        });
    }
    let ones = vec![Rational::one(); n];
    let weights = solve_rational(&to_rational_matrix(exponents), &ones).ok_or(Error::SingularMatrix)?;
    for (i, q) in weights.iter().enumerate() {
        if !q.is_positive() || *q > rat(1, 2) {
            return Err(Error::WeightOutOfRange {
                index: i + 1,
                weight: q.to_string(),
            });
        }
    }
    Ok(weights)
}

/// Integer determinant of a square integer matrix.
pub fn determinant(exponents: &[Vec<u32>]) -> i64 {
    let mut m = to_rational_matrix(exponents);
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return 0;
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            let factor = m[r][col] / p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = m[col][c];
                m[r][c] -= factor * v;
            }
        }
    }
    det.to_integer()
}

/// Finds the main variable of every row and the atomic blocks.
///
/// Returns `main[r]` (the column with exponent >= 2 in row `r`) together
/// with the blocks.
fn decompose(exponents: &[Vec<u32>]) -> Result<(Vec<usize>, Vec<AtomicBlock>)> {
    let n = exponents.len();
    let mut main = Vec::with_capacity(n);
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut main_exp = vec![0u32; n];
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (r, row) in exponents.iter().enumerate() {
        let nonzero: Vec<(usize, u32)> = row.iter().copied().enumerate().filter(|&(_, e)| e > 0).collect();
        let (m, other) = match nonzero.as_slice() {
            [] => return Err(Error::NotInvertible(format!("monomial {} is constant", r + 1))),
            [(j, e)] if *e >= 2 => (*j, None),
            [(j, e), (k, f)] if *e >= 2 && *f == 1 => (*j, Some(*k)),
            [(j, e), (k, f)] if *e == 1 && *f >= 2 => (*k, Some(*j)),
            [_] => {
                return Err(Error::NotInvertible(format!(
                    "monomial {} is linear in a single variable",
                    r + 1
                )))
            }
            [_, _] => {
                return Err(Error::NotInvertible(format!(
                    "monomial {} is not of the form x^a or x^a*y",
                    r + 1
                )))
            }
            _ => {
                return Err(Error::NotInvertible(format!(
                    "monomial {} involves more than two variables",
                    r + 1
                )))
            }
        };
        if let Some(prev) = owner[m] {
            return Err(Error::NotInvertible(format!(
                "monomials {} and {} share the main variable x{}",
                prev + 1,
                r + 1,
                m + 1
            )));
        }
        owner[m] = Some(r);
        main.push(m);
        main_exp[m] = row[m];
        succ[m] = other;
    }
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for (v, s) in succ.iter().enumerate() {
        if let Some(s) = *s {
            if pred[s].is_some() {
                return Err(Error::NotInvertible(format!(
                    "x{} is the linear factor of two monomials",
                    s + 1
                )));
            }
            pred[s] = Some(v);
        }
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if pred[start].is_some() || seen[start] {
            continue;
        }
        let mut vars = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            seen[v] = true;
            vars.push(v);
            cur = succ[v];
        }
        let kind = if vars.len() == 1 { AtomKind::Fermat } else { AtomKind::Chain };
        let exps = vars.iter().map(|&v| main_exp[v]).collect();
        blocks.push(AtomicBlock {
            kind,
            variables: vars,
            exponents: exps,
        });
    }
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut vars = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            vars.push(v);
            v = succ[v].ok_or_else(|| Error::Internal("loop without successor".into()))?;
        }
        let exps = vars.iter().map(|&v| main_exp[v]).collect();
        blocks.push(AtomicBlock {
            kind: AtomKind::Loop,
            variables: vars,
            exponents: exps,
        });
    }
    blocks.sort_by_key(|b| b.variables.iter().copied().min());
    Ok((main, blocks))
}

/// Fermat/chain/loop decomposition of a validated polynomial.
pub fn classify_atoms(poly: &InvertiblePolynomial) -> Vec<AtomicBlock> {
    poly.atoms.clone()
}

impl InvertiblePolynomial {
    /// Validates an exponent matrix and canonicalizes its row order.
    pub fn from_exponents(exponents: Vec<Vec<u32>>) -> Result<Self> {
        let n = exponents.len();
        if n == 0 {
            return Err(Error::NotInvertible("no monomials".into()));
        }
        if let Some(row) = exponents.iter().find(|row| row.len() != n) {
            return Err(Error::NotSquare {
                monomials: n,
                variables: row.len(),
            });
        }
        let (main, atoms) = decompose(&exponents)?;
        let mut rows: Vec<Option<Vec<u32>>> = vec![None; n];
        for (row, m) in exponents.into_iter().zip(main) {
            rows[m] = Some(row);
        }
        let exponents: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.ok_or_else(|| Error::Internal("row canonicalization".into())))
            .collect::<Result<_>>()?;
        let weights = compute_weights(&exponents)?;
        let var_names = (1..=n).map(|i| format!("x{i}")).collect();
        Ok(Self {
            exponents,
            weights,
            atoms,
            var_names,
        })
    }

    /// `x1^d1 + ... + xN^dN`.
    pub fn fermat(degrees: &[u32]) -> Result<Self> {
        let n = degrees.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { degrees[i] } else { 0 }).collect())
            .collect();
        Self::from_exponents(rows)
    }

    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn atoms(&self) -> &[AtomicBlock] {
        &self.atoms
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// Set when some weight equals 1/2, the boundary case accepted for
    /// chain tails.
    pub fn has_half_weight(&self) -> bool {
        self.weights.iter().any(|q| *q == rat(1, 2))
    }

    pub fn is_fermat(&self) -> bool {
        self.atoms.iter().all(|a| a.kind == AtomKind::Fermat)
    }

    /// Per-variable Fermat exponents, or `None` when some atom is not Fermat.
    pub fn fermat_degrees(&self) -> Option<Vec<u32>> {
        self.is_fermat()
            .then(|| (0..self.n_vars()).map(|i| self.exponents[i][i]).collect())
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.exponents)
    }

    /// The BHK dual polynomial defined by the transposed exponent matrix.
    pub fn transpose(&self) -> InvertiblePolynomial {
        let n = self.n_vars();
        let t: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| self.exponents[j][i]).collect()).collect();
        Self::from_exponents(t).expect("transpose of an invertible exponent matrix is invertible")
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.exponents.iter().enumerate() {
            if r > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            for (j, &e) in row.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "{}", self.var_names[j])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn posint(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a positive integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v: u64 = digits
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))?;
        if v == 0 {
            return Err(Error::parse(start, "expected a positive integer"));
        }
        Ok((start, v))
    }
}

/// Parses `x1^4 + x2^4 + ...`, inferring `N` from the largest index.
pub fn parse_polynomial(text: &str) -> Result<InvertiblePolynomial> {
    parse_monomials(text, None)
}

/// Parses a polynomial in exactly the declared variables `x1..x{n_vars}`.
pub fn parse_polynomial_in(text: &str, n_vars: usize) -> Result<InvertiblePolynomial> {
    parse_monomials(text, Some(n_vars))
}

fn parse_monomials(text: &str, declared: Option<usize>) -> Result<InvertiblePolynomial> {
    let mut lx = Lexer::new(text);
    // (variable index, exponent) lists, one per monomial
    let mut terms: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut term_offsets = Vec::new();
    loop {
        lx.skip_ws();
        term_offsets.push(lx.pos);
        let mut term: Vec<(usize, u32)> = Vec::new();
        loop {
            match lx.peek() {
                Some(b'x') => {
                    let at = lx.pos;
                    lx.pos += 1;
                    let (_, idx) = lx.posint()?;
                    let idx = idx as usize;
                    if let Some(n) = declared {
                        if idx > n {
                            return Err(Error::parse(at, format!("undeclared variable x{idx}")));
                        }
                    }
                    let exp = if lx.eat(b'^') {
                        let (o, e) = lx.posint()?;
                        u32::try_from(e).map_err(|_| Error::parse(o, "exponent out of range"))?
                    } else {
                        1
                    };
                    if term.iter().any(|&(v, _)| v == idx) {
                        return Err(Error::DuplicateVariable(idx));
                    }
                    term.push((idx, exp));
                }
                Some(c) if c.is_ascii_digit() => {
                    // numeric coefficients are accepted and dropped
                    lx.posint()?;
                }
                Some(_) => return Err(Error::parse(lx.pos, "expected a variable x<k>")),
                None => return Err(Error::parse(lx.pos, "unexpected end of input")),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        if term.is_empty() {
            return Err(Error::parse(*term_offsets.last().unwrap(), "constant monomial"));
        }
        terms.push(term);
        if !lx.eat(b'+') {
            break;
        }
    }
    if let Some(c) = lx.peek() {
        return Err(Error::parse(lx.pos, format!("unexpected character '{}'", c as char)));
    }
    let max_idx = terms.iter().flatten().map(|&(v, _)| v).max().unwrap_or(0);
    let n = declared.unwrap_or(max_idx);
    for k in 1..=n {
        if !terms.iter().flatten().any(|&(v, _)| v == k) {
            return Err(Error::parse(text.len(), format!("variable x{k} does not appear")));
        }
    }
    if terms.len() != n {
        return Err(Error::NotSquare {
            monomials: terms.len(),
            variables: n,
        });
    }
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (t, term) in terms.iter().enumerate() {
        let mut row = vec![0u32; n];
        for &(v, e) in term {
            row[v - 1] = e;
        }
        if rows.contains(&row) {
            return Err(Error::parse(term_offsets[t], "repeated monomial"));
        }
        rows.push(row);
    }
    InvertiblePolynomial::from_exponents(rows)
}
