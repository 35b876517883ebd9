//! Lattice-point counting in dilates of a polytope.
//!
//! Coordinates are filled depth-first in canonical order. Each constraint
//! bounds the current coordinate using the partial sum of already fixed
//! coordinates and the best case over the remaining ones (taken from the
//! vertex bounding box). A constraint is exact at its last nonzero
//! coordinate, so an equation pins that coordinate to a single value.

use num_bigint::BigInt;

use super::polytope::Polytope;
use super::rational::{ceil, floor, int, to_i64};
use crate::error::{Error, Result};

/// How the counting search is scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Split the search over the range of the first coordinate. Falls back
    /// to sequential when the `parallel` feature is off.
    #[default]
    Parallel,
}

/// `|nP ∩ Z^N|`.
pub fn count_lattice_points(p: &Polytope, n: u64) -> Result<u64> {
    count_lattice_points_with(p, n, Execution::default())
}

pub fn count_lattice_points_with(p: &Polytope, n: u64, exec: Execution) -> Result<u64> {
    let vertices = p.vertices()?;
    if vertices.is_empty() {
        return Ok(0);
    }
    if n == 0 || p.ambient_dim() == 0 {
        return Ok(1);
    }
    match Search::new(p, n)? {
        Some(search) => Ok(search.run(exec)),
        None => Ok(0),
    }
}

struct Search {
    dim: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    rhs: Vec<i64>,
    /// Per level: (constraint, coefficient at this level, best-case sum of the
    /// remaining coordinates).
    levels: Vec<Vec<(usize, i64, i64)>>,
}

impl Search {
    fn new(p: &Polytope, n: u64) -> Result<Option<Search>> {
        let dim = p.ambient_dim();
        let n_big = int(i64::try_from(n).map_err(|_| Error::Overflow(format!("dilate {n}")))?);
        let vertices = p.vertices()?;
        let mut lo = Vec::with_capacity(dim);
        let mut hi = Vec::with_capacity(dim);
        for j in 0..dim {
            let min = vertices.iter().map(|v| &v[j]).min().expect("nonempty");
            let max = vertices.iter().map(|v| &v[j]).max().expect("nonempty");
            let l: BigInt = ceil(&(min * &n_big));
            let h: BigInt = floor(&(max * &n_big));
            if l > h {
                return Ok(None);
            }
            lo.push(to_i64(&l)?);
            hi.push(to_i64(&h)?);
        }

        let n = n as i64;
        let scale = |b: i64| b.checked_mul(n).ok_or_else(|| Error::Overflow(format!("{b} * {n}")));
        let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
        for h in p.inequalities() {
            rows.push((h.normal.clone(), scale(h.bound)?));
        }
        for e in p.equations() {
            rows.push((e.normal.clone(), scale(e.bound)?));
            rows.push((e.normal.iter().map(|a| -a).collect(), -scale(e.bound)?));
        }

        let mut levels = vec![Vec::new(); dim];
        let mut rhs = Vec::with_capacity(rows.len());
        for (c, (a, b)) in rows.iter().enumerate() {
            rhs.push(*b);
            let mut rest = 0i64;
            for j in (0..dim).rev() {
                if a[j] != 0 {
                    levels[j].push((c, a[j], rest));
                    rest += (a[j] * lo[j]).min(a[j] * hi[j]);
                }
            }
            if a.iter().all(|&x| x == 0) && *b < 0 {
                return Ok(None);
            }
        }
        Ok(Some(Search { dim, lo, hi, rhs, levels }))
    }

    fn interval(&self, j: usize, partial: &[i64]) -> (i64, i64) {
        let (mut lo, mut hi) = (self.lo[j], self.hi[j]);
        for &(c, a, rest) in &self.levels[j] {
            let room = self.rhs[c] - partial[c] - rest;
            if a > 0 {
                hi = hi.min(room.div_euclid(a));
            } else {
                lo = lo.max(-room.div_euclid(-a));
            }
        }
        (lo, hi)
    }

    fn dfs(&self, j: usize, partial: &mut [i64]) -> u64 {
        let (lo, hi) = self.interval(j, partial);
        if lo > hi {
            return 0;
        }
        if j + 1 == self.dim {
            return (hi - lo + 1) as u64;
        }
        let mut total = 0;
        for v in lo..=hi {
            total += self.branch(j, v, partial);
        }
        total
    }

    fn branch(&self, j: usize, v: i64, partial: &mut [i64]) -> u64 {
        for &(c, a, _) in &self.levels[j] {
            partial[c] += a * v;
        }
        let count = self.dfs(j + 1, partial);
        for &(c, a, _) in &self.levels[j] {
            partial[c] -= a * v;
        }
        count
    }

    fn run(&self, exec: Execution) -> u64 {
        let mut partial = vec![0i64; self.rhs.len()];
        if self.dim == 1 || exec == Execution::Sequential {
            return self.dfs(0, &mut partial);
        }
        let (lo, hi) = self.interval(0, &partial);
        if lo > hi {
            return 0;
        }
        self.first_level(lo, hi)
    }

    #[cfg(feature = "parallel")]
    fn first_level(&self, lo: i64, hi: i64) -> u64 {
        use rayon::prelude::*;
        (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut partial = vec![0i64; self.rhs.len()];
                self.branch(0, v, &mut partial)
            })
            .sum()
    }

    #[cfg(not(feature = "parallel"))]
    fn first_level(&self, lo: i64, hi: i64) -> u64 {
        let mut partial = vec![0i64; self.rhs.len()];
        (lo..=hi).map(|v| self.branch(0, v, &mut partial)).sum()
    }
}
