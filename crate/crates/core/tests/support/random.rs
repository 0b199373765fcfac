//! Seeded random instances.

use lgmirror::polynomial::{InvertiblePolynomial, Rational};
use lgmirror::symmetry::{closure, exponential_grading, MonomialSymmetry, Perm, Phase, SymmetryGroup};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::new(images).unwrap()
}

/// Any monomial matrix with phase denominators dividing `den`.
pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, den: i64) -> MonomialSymmetry {
    let phases = (0..n).map(|_| Phase::from_ratio(rng.gen_range(0..den), den)).collect();
    MonomialSymmetry::new(random_perm(rng, n), phases).unwrap()
}

/// A random even permutation that only mixes variables of equal degree.
fn even_degree_preserving(rng: &mut ChaCha8Rng, degrees: &[u32]) -> Perm {
    let n = degrees.len();
    let mut images: Vec<usize> = (0..n).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for d in {
        let mut ds = degrees.to_vec();
        ds.sort_unstable();
        ds.dedup();
        ds
    } {
        classes.push((0..n).filter(|&i| degrees[i] == d).collect());
    }
    for class in &classes {
        let mut shuffled = class.clone();
        shuffled.shuffle(rng);
        for (&from, &to) in class.iter().zip(&shuffled) {
            images[from] = to;
        }
    }
    let perm = Perm::new(images.clone()).unwrap();
    if perm.is_even() {
        return perm;
    }
    match classes.iter().find(|c| c.len() >= 2) {
        Some(c) => {
            let swap = Perm::from_cycles(n, &[vec![c[0], c[1]]]).unwrap();
            perm.then(&swap)
        }
        None => Perm::identity(n),
    }
}

/// Fermat `W` with degrees in `2..=max_d`, and `G = <j, diagonal extras,
/// even permutations>` closed with `|G| <= max_order`. `None` if the draw
/// overflowed the bound.
pub fn random_fermat_hk(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_d: u32,
    max_order: usize,
) -> Option<(InvertiblePolynomial, SymmetryGroup)> {
    let n = rng.gen_range(2..=max_n);
    // few distinct degrees so that permutations have room
    let pool: Vec<u32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(2..=max_d)).collect();
    let mut degrees: Vec<u32> = (0..n).map(|_| *pool.choose(rng).unwrap()).collect();
    degrees.sort_unstable();
    let w = InvertiblePolynomial::fermat(&degrees).unwrap();
    let mut gens = vec![exponential_grading(&w)];
    for _ in 0..rng.gen_range(0..=2) {
        let phases: Vec<Rational> = degrees
            .iter()
            .map(|&d| Rational::new(rng.gen_range(0..d as i64), d as i64))
            .collect();
        gens.push(MonomialSymmetry::diagonal(&phases));
    }
    for _ in 0..rng.gen_range(0..=2) {
        gens.push(MonomialSymmetry::permutation(even_degree_preserving(rng, &degrees)));
    }
    let g = closure(n, &gens, max_order).ok()?;
    Some((w, g))
}
