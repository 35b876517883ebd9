//! Exact rational convex polytopes: H/V conversion by double description,
//! membership, equality, and lattice-point counting.

mod count;
mod dd;
pub mod linalg;
mod polytope;
pub mod rational;

pub use count::{count_lattice_points, count_lattice_points_with, Execution};
pub use polytope::{hull, AffineEquation, HalfSpace, Polytope, PolytopeJson};
pub use rational::{dot_int, format_rational, int, parse_rational, point, rat, Point, Rational};

use num_bigint::BigInt;

use crate::error::Result;

pub fn enumerate_vertices(p: &Polytope) -> Result<Vec<Point>> {
    Ok(p.vertices()?.to_vec())
}

pub fn contains(p: &Polytope, x: &[Rational]) -> Result<bool> {
    p.contains(x)
}

pub fn polytopes_equal(p: &Polytope, q: &Polytope) -> Result<bool> {
    p.equals(q)
}

pub fn intersect(p: &Polytope, equations: &[AffineEquation]) -> Result<Polytope> {
    p.intersect(equations)
}

pub fn denominator(p: &Polytope) -> Result<BigInt> {
    p.denominator()
}

pub fn dimension(p: &Polytope) -> Result<i64> {
    p.dimension()
}
