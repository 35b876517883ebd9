//! Double description method over the integers.
//!
//! Converts a cone `{z : h · z <= 0 for every row h}` into a lineality basis
//! and a minimal set of extreme rays. Rows are inserted one at a time; while
//! the current cone still contains lines, a line not orthogonal to the new
//! row is turned into a ray. Otherwise the classic step applies, combining
//! adjacent positive/negative ray pairs under the combinatorial adjacency
//! test on zero sets.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::make_primitive;

#[derive(Clone, Debug, Default)]
pub struct Cone {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    make_primitive(u.iter().zip(v).map(|(x, y)| a * x + b * y).collect())
}

pub fn cone_generators(dim: usize, rows: &[Vec<BigInt>]) -> Cone {
    let nrows = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in rows.iter().enumerate() {
        if h.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zeros.set(k);
            }
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = dot(h, &l0);
            if s0.is_positive() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                s0 = -s0;
            }
            let neg_s0 = -&s0;
            for l in lineality.iter_mut() {
                let hl = dot(h, l);
                if !hl.is_zero() {
                    *l = combine(&neg_s0, l, &hl, &l0);
                }
            }
            for r in rays.iter_mut() {
                let hr = dot(h, &r.v);
                if !hr.is_zero() {
                    r.v = combine(&neg_s0, &r.v, &hr, &l0);
                }
                r.zeros.set(k);
            }
            let mut zeros = Bits::new(nrows);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray { v: make_primitive(l0), zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == n || !common.subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &-&values[n], &rays[p].v);
                let mut zeros = common;
                zeros.set(k);
                created.push(Ray { v, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, val) in rays.into_iter().zip(values) {
            if val.is_positive() {
                continue;
            }
            if val.is_zero() {
                r.zeros.set(k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    Cone { lineality, rays: rays.into_iter().map(|r| r.v).collect() }
}
