//! Exact arithmetic in Z[zeta_m], kept as sparse elements of the group ring
//! Z[x]/(x^m - 1) and reduced mod the cyclotomic polynomial only when
//! testing for equality.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use lgmirror::polynomial::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyc {
    pub m: u32,
    pub terms: BTreeMap<u32, i64>,
}

impl Cyc {
    pub fn zero(m: u32) -> Self {
        Cyc { m, terms: BTreeMap::new() }
    }

    pub fn int(m: u32, c: i64) -> Self {
        let mut z = Cyc::zero(m);
        z.add_term(0, c);
        z
    }

    /// `zeta^k`.
    pub fn root(m: u32, k: i64) -> Self {
        let mut z = Cyc::zero(m);
        z.add_term(k.rem_euclid(m as i64) as u32, 1);
        z
    }

    /// `e^{2 pi i r}` for a rational `r` whose denominator divides `m`.
    pub fn from_phase(m: u32, r: Rational) -> Self {
        let k = r * Rational::from_integer(m as i64);
        assert!(k.is_integer(), "phase {r} does not live in Z[zeta_{m}]");
        Cyc::root(m, k.to_integer())
    }

    fn add_term(&mut self, k: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        let mut out = self.clone();
        for (&k, &c) in &o.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            m: self.m,
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        let mut out = Cyc::zero(self.m);
        for (&a, &x) in &self.terms {
            for (&b, &y) in &o.terms {
                out.add_term((a + b) % self.m, x * y);
            }
        }
        out
    }

    /// Coefficients of the reduction mod `Phi_m`, lowest degree first.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.m);
        let deg = phi.len() - 1;
        let mut dense = vec![0i64; self.m as usize];
        for (&k, &c) in &self.terms {
            dense[k as usize] += c;
        }
        // phi is monic: long division leaves an integral remainder
        for top in (deg..dense.len()).rev() {
            let c = dense[top];
            if c != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    dense[top - deg + j] -= c * p;
                }
            }
        }
        dense.truncate(deg);
        dense
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.reduced().iter().all(|&c| c == 0)
    }

    pub fn equals(&self, o: &Cyc) -> bool {
        self.sub(o).is_zero()
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// Image under `zeta -> omega` in `F_p`.
    pub fn eval_mod(&self, omega: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for (&k, &c) in &self.terms {
            let v = pow_mod(omega, k as u64, p);
            let c = c.rem_euclid(p as i64) as u64;
            acc = (acc + v * c % p) % p;
        }
        acc
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

thread_local! {
    static PHI: RefCell<HashMap<u32, Vec<i64>>> = RefCell::new(HashMap::new());
}

/// `Phi_m` from `x^m - 1 = prod_{d | m} Phi_d`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    if let Some(p) = PHI.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    let p = compute_cyclotomic(m);
    PHI.with(|c| c.borrow_mut().insert(m, p.clone()));
    p
}

fn compute_cyclotomic(m: u32) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p = 1 mod m` above `floor` and an element of order exactly `m`.
pub fn prime_with_root(m: u32, floor: u64) -> (u64, u64) {
    let m = m as u64;
    let mut p = floor - floor % m + 1;
    while p <= floor || !is_prime(p) {
        p += m;
    }
    let qs = prime_factors(m);
    for x in 2..p {
        let w = pow_mod(x, (p - 1) / m, p);
        if qs.iter().all(|&q| pow_mod(w, m / q, p) != 1) {
            return (p, w);
        }
    }
    unreachable!("F_p^* is cyclic")
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of a dense matrix over `F_p`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..ncols {
                    let sub = f * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn small_cyclotomics() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    // 1 + zeta + ... + zeta^{m-1} = 0
    let s = (0..10).fold(Cyc::zero(10), |acc, k| acc.add(&Cyc::root(10, k)));
    assert!(s.is_zero());
    assert_eq!(Cyc::root(4, 2).as_integer(), Some(-1));
    let (p, w) = prime_with_root(12, 1000);
    assert_eq!(p % 12, 1);
    assert_eq!(pow_mod(w, 12, p), 1);
    assert_ne!(pow_mod(w, 6, p), 1);
    assert_ne!(pow_mod(w, 4, p), 1);
}
