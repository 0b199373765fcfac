//! Dense reference model of the group action on a union of sectors.
//!
//! Everything is rebuilt from the raw permutation and phase data of the
//! group elements: dense matrices over Z[zeta_m], fixed loci found by
//! walking the matrix pattern, coordinate changes solved from dense
//! matrix-vector products, pullbacks of forms expanded as polynomials with
//! a determinant for the volume form. Nothing here assumes the pullback is
//! monomial.

use std::collections::BTreeMap;

use lgmirror::polynomial::Rational;
use lgmirror::symmetry::MonomialSymmetry;
use num_integer::Integer;

use super::cyclotomic::{prime_with_root, rank_mod, Cyc};

pub type Mat = Vec<Vec<Cyc>>;

pub fn dense(g: &MonomialSymmetry, m: u32) -> Mat {
    let n = g.n();
    let mut out = vec![vec![Cyc::zero(m); n]; n];
    for i in 0..n {
        let j = g.perm().images()[i];
        out[i][j] = Cyc::from_phase(m, g.phases()[i].value());
    }
    out
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = a[0][0].m;
    let mut out = vec![vec![Cyc::zero(m); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_structurally_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_structurally_zero() {
                    out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
                }
            }
        }
    }
    out
}

pub fn mat_eq(a: &Mat, b: &Mat) -> bool {
    a.iter().zip(b).all(|(x, y)| x.iter().zip(y).all(|(p, q)| p.equals(q)))
}

fn conj(z: &Cyc) -> Cyc {
    Cyc {
        m: z.m,
        terms: z.terms.iter().map(|(&k, &c)| ((z.m - k) % z.m, c)).collect(),
    }
}

/// Conjugate transpose; the inverse of a unitary monomial matrix.
fn adjoint(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| conj(&a[j][i])).collect()).collect()
}

fn mat_vec(a: &Mat, v: &[Cyc]) -> Vec<Cyc> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_structurally_zero() && !y.is_structurally_zero())
                .fold(Cyc::zero(v[0].m), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

fn det(a: &[Vec<Cyc>], m: u32) -> Cyc {
    let k = a.len();
    if k == 0 {
        return Cyc::int(m, 1);
    }
    let mut total = Cyc::zero(m);
    for j in 0..k {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Cyc>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a[0][j].mul(&det(&minor, m));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// One sector: basis vectors of the fixed space, each a dense vector
/// normalised to 1 at the largest coordinate it touches.
struct DenseSector {
    matrix: Mat,
    cycles: Vec<Vec<usize>>,
    vectors: Vec<Vec<Cyc>>,
    degrees: Vec<u32>,
}

impl DenseSector {
    fn new(matrix: Mat, fermat: &[u32]) -> Self {
        let n = matrix.len();
        let m = matrix[0][0].m;
        let succ: Vec<usize> = (0..n)
            .map(|i| (0..n).find(|&j| !matrix[i][j].is_zero()).expect("monomial row"))
            .collect();
        let mut pred = vec![0; n];
        for i in 0..n {
            pred[succ[i]] = i;
        }
        let mut seen = vec![false; n];
        let mut found: Vec<(Vec<usize>, Vec<Cyc>)> = Vec::new();
        for start in (0..n).rev() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = pred[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = pred[i];
            }
            let top = *cycle.iter().max().unwrap();
            // (G v)_i = G[i][succ i] v[succ i] must equal v_i; walk backwards from top
            let mut v = vec![Cyc::zero(m); n];
            v[top] = Cyc::int(m, 1);
            let mut j = top;
            loop {
                let i = pred[j];
                let val = matrix[i][j].mul(&v[j]);
                if i == top {
                    if val.equals(&v[top]) {
                        found.push((cycle.clone(), v));
                    }
                    break;
                }
                v[i] = val;
                j = i;
            }
        }
        found.sort_by_key(|(c, _)| *c.iter().max().unwrap());
        let mut cycles = Vec::new();
        let mut vectors = Vec::new();
        let mut degrees = Vec::new();
        for (c, v) in found {
            let d = fermat[c[0]];
            assert!(c.iter().all(|&i| fermat[i] == d), "cycle mixes degrees");
            // W restricted to the line through v is (sum_i v_i^d) y^d
            let coeff = c.iter().fold(Cyc::zero(m), |acc, &i| {
                let mut p = Cyc::int(m, 1);
                for _ in 0..d {
                    p = p.mul(&v[i]);
                }
                acc.add(&p)
            });
            assert!(!coeff.is_zero(), "degenerate restriction");
            cycles.push(c);
            vectors.push(v);
            degrees.push(d);
        }
        DenseSector {
            matrix,
            cycles,
            vectors,
            degrees,
        }
    }

    fn basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &d in &self.degrees {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d - 1).map(move |b| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

type Poly = BTreeMap<Vec<u32>, Cyc>;

fn poly_mul_truncated(a: &Poly, b: &Poly, caps: &[u32], m: u32) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            // z_D^{d_D - 1} is a Jacobian generator; the ideal is monomial
            if e.iter().zip(caps).any(|(&x, &c)| x > c) {
                continue;
            }
            let entry = out.entry(e).or_insert_with(|| Cyc::zero(m));
            *entry = entry.add(&ca.mul(cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Sparse matrix of the pullback along `gamma`: column per source basis
/// vector, entries `(global target index, coefficient)`.
type Action = Vec<Vec<(usize, Cyc)>>;

pub struct Oracle {
    m: u32,
    sectors: Vec<DenseSector>,
    offsets: Vec<usize>,
    dim: usize,
}

pub struct OracleReport {
    /// `tr(sum_gamma rho(gamma)) / |G|`, computed in Z[zeta_m].
    pub trace_dim: usize,
    /// Rank of `sum_gamma rho(gamma)` over `F_p`.
    pub rank: usize,
}

fn common_modulus(elements: &[MonomialSymmetry], fermat: &[u32]) -> u32 {
    let mut m: i64 = 2;
    for &d in fermat {
        m = m.lcm(&(d as i64));
    }
    for g in elements {
        for p in g.phases() {
            let r: Rational = p.value();
            m = m.lcm(r.denom());
        }
    }
    m as u32
}

impl Oracle {
    pub fn new(fermat: &[u32], group: &[MonomialSymmetry], sectors: &[MonomialSymmetry]) -> Self {
        let m = common_modulus(group, fermat);
        let sectors: Vec<DenseSector> = sectors.iter().map(|g| DenseSector::new(dense(g, m), fermat)).collect();
        let mut offsets = vec![0];
        for s in &sectors {
            offsets.push(offsets.last().unwrap() + s.basis().len());
        }
        let dim = *offsets.last().unwrap();
        Oracle {
            m,
            sectors,
            offsets,
            dim,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn total_dim(&self) -> usize {
        self.dim
    }

    fn sector_index(&self, matrix: &Mat) -> usize {
        self.sectors
            .iter()
            .position(|s| mat_eq(&s.matrix, matrix))
            .expect("sector set closed under conjugation")
    }

    pub fn action(&self, gamma: &Mat) -> Action {
        let m = self.m;
        let gamma_inv = adjoint(gamma);
        let mut columns = Vec::with_capacity(self.dim);
        for src in &self.sectors {
            let t = self.sector_index(&mat_mul(&mat_mul(&gamma_inv, &src.matrix), gamma));
            let tgt = &self.sectors[t];
            let k = src.cycles.len();
            assert_eq!(k, tgt.cycles.len());
            // gamma u_D = sum_C M[C][D] v_C
            let mut coords = vec![vec![Cyc::zero(m); k]; k];
            for (dd, u) in tgt.vectors.iter().enumerate() {
                let image = mat_vec(gamma, u);
                let mut rebuilt = vec![Cyc::zero(m); image.len()];
                for (c, (cyc, v)) in src.cycles.iter().zip(&src.vectors).enumerate() {
                    let top = *cyc.iter().max().unwrap();
                    coords[c][dd] = image[top].clone();
                    for (r, x) in rebuilt.iter_mut().enumerate() {
                        *x = x.add(&coords[c][dd].mul(&v[r]));
                    }
                }
                assert!(
                    image.iter().zip(&rebuilt).all(|(a, b)| a.equals(b)),
                    "image of a fixed vector left the fixed space"
                );
            }
            let jac = det(&coords, m);
            let caps: Vec<u32> = tgt.degrees.iter().map(|d| d - 2).collect();
            let linear: Vec<Poly> = (0..k)
                .map(|c| {
                    let mut p = Poly::new();
                    for dd in 0..k {
                        if !coords[c][dd].is_zero() {
                            let mut e = vec![0; k];
                            e[dd] = 1;
                            p.insert(e, coords[c][dd].clone());
                        }
                    }
                    p
                })
                .collect();
            let basis = tgt.basis();
            for b in src.basis() {
                let mut poly = Poly::from([(vec![0; k], jac.clone())]);
                for (c, &bc) in b.iter().enumerate() {
                    for _ in 0..bc {
                        poly = poly_mul_truncated(&poly, &linear[c], &caps, m);
                    }
                }
                let col = poly
                    .into_iter()
                    .map(|(e, coeff)| {
                        let local = basis.iter().position(|x| *x == e).expect("reduced monomial");
                        (self.offsets[t] + local, coeff)
                    })
                    .collect();
                columns.push(col);
            }
        }
        columns
    }

    fn dense_mod(&self, action: &Action, omega: u64, p: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.dim]; self.dim];
        for (src, col) in action.iter().enumerate() {
            for (tgt, c) in col {
                out[*tgt][src] = (out[*tgt][src] + c.eval_mod(omega, p)) % p;
            }
        }
        out
    }

    /// Averages over every element of the group.
    pub fn invariant_dimension(&self, group: &[MonomialSymmetry]) -> OracleReport {
        let (p, omega) = prime_with_root(self.m, 1 << 20);
        let mut trace = Cyc::zero(self.m);
        let mut sum = vec![vec![0u64; self.dim]; self.dim];
        for g in group {
            let action = self.action(&dense(g, self.m));
            for (src, col) in action.iter().enumerate() {
                for (tgt, c) in col {
                    if *tgt == src {
                        trace = trace.add(c);
                    }
                }
            }
            let local = self.dense_mod(&action, omega, p);
            for (row, add) in sum.iter_mut().zip(local) {
                for (x, y) in row.iter_mut().zip(add) {
                    *x = (*x + y) % p;
                }
            }
        }
        let t = trace.as_integer().expect("trace of a projector is rational");
        let order = group.len() as i64;
        assert!(t >= 0 && t % order == 0, "trace {t} not a multiple of {order}");
        OracleReport {
            trace_dim: (t / order) as usize,
            rank: rank_mod(sum, p),
        }
    }

    /// `rho(a b) = rho(b) rho(a)` for the pullback action, checked over `F_p`.
    pub fn is_antihomomorphic(&self, a: &MonomialSymmetry, b: &MonomialSymmetry) -> bool {
        let (p, omega) = prime_with_root(self.m, 1 << 20);
        let (da, db) = (dense(a, self.m), dense(b, self.m));
        let lhs = self.dense_mod(&self.action(&mat_mul(&da, &db)), omega, p);
        let ra = self.dense_mod(&self.action(&da), omega, p);
        let rb = self.dense_mod(&self.action(&db), omega, p);
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = (0..n).fold(0u64, |acc, k| (acc + rb[i][k] * ra[k][j]) % p);
                v == lhs[i][j]
            })
        })
    }
}
