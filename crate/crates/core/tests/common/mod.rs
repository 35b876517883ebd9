#![allow(dead_code)]

use polymut::geometry::{int, rat, Polytope, Rational};
use polymut::poset::{partitions, YoungDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small signed rational with denominator at most 6.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-24..=24), rng.gen_range(1..=6))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Every Young diagram with between 1 and `max` cells.
pub fn diagrams_up_to(max: usize) -> Vec<YoungDiagram> {
    (1..=max).flat_map(partitions).map(|p| YoungDiagram::from_partition(&p).unwrap()).collect()
}

/// Lattice points of `nP` by testing every integer point of the box
/// `[n·lo, n·hi]` against the constraints. Returns `None` if the box has
/// more than `limit` points.
pub fn naive_count(p: &Polytope, n: u64, lo: &[i64], hi: &[i64], limit: u64) -> Option<u64> {
    let n = n as i64;
    let lo: Vec<i64> = lo.iter().map(|a| a * n).collect();
    let hi: Vec<i64> = hi.iter().map(|a| a * n).collect();
    let size = lo.iter().zip(&hi).try_fold(1u64, |acc, (a, b)| acc.checked_mul((b - a + 1) as u64))?;
    if size > limit {
        return None;
    }
    let holds = |z: &[i64]| {
        p.inequalities().iter().all(|h| h.normal.iter().zip(z).map(|(a, x)| a * x).sum::<i64>() <= h.bound * n)
            && p.equations().iter().all(|e| e.normal.iter().zip(z).map(|(a, x)| a * x).sum::<i64>() == e.bound * n)
    };
    let mut z = lo.clone();
    let mut count = 0;
    loop {
        if holds(&z) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == z.len() {
                return Some(count);
            }
            if z[i] < hi[i] {
                z[i] += 1;
                break;
            }
            z[i] = lo[i];
            i += 1;
        }
    }
}

pub fn to_rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}
