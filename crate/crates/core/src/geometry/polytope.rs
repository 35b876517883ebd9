use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::cone_generators;
use super::linalg::{nullspace, rank, rref};
use super::rational::{
    dot_int, format_rational, int, lcm_of_denominators, make_primitive, parse_rational, primitive_integer_row, to_i64,
    Point, Rational,
};
use crate::error::{Error, Result};

/// `normal · x <= bound` with integer data, normalized by the gcd of all
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub bound: i64,
}

impl HalfSpace {
    pub fn new(normal: Vec<i64>, bound: i64) -> Result<Self> {
        if normal.iter().all(|&a| a == 0) {
            return Err(Error::ZeroNormal);
        }
        let (normal, bound) = reduce(normal, bound);
        Ok(HalfSpace { normal, bound })
    }

    /// `normal · x >= bound`.
    pub fn at_least(normal: Vec<i64>, bound: i64) -> Result<Self> {
        HalfSpace::new(normal.into_iter().map(|a| -a).collect(), -bound)
    }

    fn from_big(row: Vec<BigInt>) -> Result<Self> {
        let (bound, normal) = row.split_last().expect("nonempty row");
        HalfSpace::new(normal.iter().map(to_i64).collect::<Result<_>>()?, to_i64(bound)?)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        dot_int(&self.normal, x) <= int(self.bound)
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        dot_int(&self.normal, x) == int(self.bound)
    }
}

/// `normal · x = bound`, normalized with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineEquation {
    pub normal: Vec<i64>,
    pub bound: i64,
}

impl AffineEquation {
    pub fn new(normal: Vec<i64>, bound: i64) -> Result<Self> {
        let Some(&lead) = normal.iter().find(|&&a| a != 0) else {
            return Err(Error::ZeroNormal);
        };
        let (mut normal, mut bound) = reduce(normal, bound);
        if lead < 0 {
            normal.iter_mut().for_each(|a| *a = -*a);
            bound = -bound;
        }
        Ok(AffineEquation { normal, bound })
    }

    fn from_big(row: Vec<BigInt>) -> Result<Self> {
        let (bound, normal) = row.split_last().expect("nonempty row");
        AffineEquation::new(normal.iter().map(to_i64).collect::<Result<_>>()?, to_i64(bound)?)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        dot_int(&self.normal, x) == int(self.bound)
    }
}

fn reduce(normal: Vec<i64>, bound: i64) -> (Vec<i64>, i64) {
    let g = normal.iter().fold(bound.unsigned_abs(), |g, &a| gcd(g, a.unsigned_abs())) as i64;
    if g > 1 {
        (normal.into_iter().map(|a| a / g).collect(), bound / g)
    } else {
        (normal, bound)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An exact rational polytope in H-representation, with a lazily computed
/// vertex list.
#[derive(Debug)]
pub struct Polytope {
    ambient: Vec<String>,
    inequalities: Vec<HalfSpace>,
    equations: Vec<AffineEquation>,
    vertices: OnceLock<Result<Vec<Point>>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        let vertices = OnceLock::new();
        if let Some(v) = self.vertices.get() {
            let _ = vertices.set(v.clone());
        }
        Polytope {
            ambient: self.ambient.clone(),
            inequalities: self.inequalities.clone(),
            equations: self.equations.clone(),
            vertices,
        }
    }
}

/// Affine parametrization of the solution set of a system of equations:
/// coordinates in `free` are the parameters, the `pivots` follow from them.
#[derive(Clone, Debug)]
pub(crate) struct Param {
    pub n: usize,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    /// Row `i`: `x[pivots[i]] + Σ coef[j]·x[free[j]] = rhs`.
    pub coef: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl Param {
    pub fn new(n: usize, equations: &[AffineEquation]) -> Option<Param> {
        let rows: Vec<Vec<Rational>> =
            equations.iter().map(|e| e.normal.iter().map(|&a| int(a)).chain([int(e.bound)]).collect()).collect();
        let (reduced, pivots) = rref(rows, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let coef = reduced.iter().map(|row| free.iter().map(|&f| row[f].clone()).collect()).collect();
        let rhs = reduced.iter().map(|row| row[n].clone()).collect();
        Some(Param { n, pivots, free, coef, rhs })
    }

    pub fn expand(&self, y: &[Rational]) -> Point {
        let mut x = vec![Rational::zero(); self.n];
        for (&f, v) in self.free.iter().zip(y) {
            x[f] = v.clone();
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut v = self.rhs[i].clone();
            for (c, yj) in self.coef[i].iter().zip(y) {
                if !c.is_zero() {
                    v -= c * yj;
                }
            }
            x[p] = v;
        }
        x
    }

    /// Rewrite `a · x <= b` in terms of the free parameters.
    pub fn restrict(&self, normal: &[i64], bound: i64) -> (Vec<Rational>, Rational) {
        let mut c: Vec<Rational> = self.free.iter().map(|&f| int(normal[f])).collect();
        let mut b = int(bound);
        for (i, &p) in self.pivots.iter().enumerate() {
            if normal[p] == 0 {
                continue;
            }
            let a = int(normal[p]);
            for (cj, rj) in c.iter_mut().zip(&self.coef[i]) {
                *cj -= &a * rj;
            }
            b -= &a * &self.rhs[i];
        }
        (c, b)
    }
}

impl Polytope {
    pub fn new(ambient: Vec<String>, inequalities: Vec<HalfSpace>, equations: Vec<AffineEquation>) -> Result<Self> {
        let n = ambient.len();
        for len in inequalities.iter().map(|h| h.normal.len()).chain(equations.iter().map(|e| e.normal.len())) {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        Ok(Polytope { ambient, inequalities, equations, vertices: OnceLock::new() })
    }

    /// A polytope with no points.
    pub fn empty(ambient: Vec<String>) -> Self {
        let n = ambient.len();
        let mut ineqs = Vec::new();
        if n > 0 {
            let mut e = vec![0; n];
            e[0] = 1;
            ineqs.push(HalfSpace::new(e.clone(), -1).expect("nonzero"));
            ineqs.push(HalfSpace::at_least(e, 0).expect("nonzero"));
        }
        let p = Polytope { ambient, inequalities: ineqs, equations: Vec::new(), vertices: OnceLock::new() };
        let _ = p.vertices.set(Ok(Vec::new()));
        p
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn inequalities(&self) -> &[HalfSpace] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[AffineEquation] {
        &self.equations
    }

    /// Exact vertex set, sorted lexicographically. Computed once.
    pub fn vertices(&self) -> Result<&[Point]> {
        self.vertices.get_or_init(|| self.compute_vertices()).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
    }

    fn compute_vertices(&self) -> Result<Vec<Point>> {
        let n = self.ambient_dim();
        let Some(param) = Param::new(n, &self.equations) else {
            return Ok(Vec::new());
        };
        let k = param.free.len();
        let mut rows = Vec::with_capacity(self.inequalities.len() + 1);
        let mut t_row = vec![BigInt::zero(); k + 1];
        t_row[k] = BigInt::from(-1);
        rows.push(t_row);
        for h in &self.inequalities {
            let (mut c, b) = param.restrict(&h.normal, h.bound);
            c.push(-b);
            rows.push(primitive_integer_row(&c));
        }
        let cone = cone_generators(k + 1, &rows);
        let mut vertices: Vec<Point> = cone
            .rays
            .iter()
            .filter(|r| r[k].is_positive())
            .map(|r| {
                let t = Rational::from_integer(r[k].clone());
                let y: Vec<Rational> = r[..k].iter().map(|v| Rational::from_integer(v.clone()) / &t).collect();
                param.expand(&y)
            })
            .collect();
        if vertices.is_empty() {
            return Ok(Vec::new());
        }
        if !cone.lineality.is_empty() || cone.rays.iter().any(|r| r[k].is_zero()) {
            return Err(Error::Unbounded);
        }
        vertices.sort();
        vertices.dedup();
        Ok(vertices)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.vertices()?.is_empty())
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: x.len() });
        }
        Ok(self.inequalities.iter().all(|h| h.holds(x)) && self.equations.iter().all(|e| e.holds(x)))
    }

    /// Same point set, decided on exact vertex sets.
    pub fn equals(&self, other: &Polytope) -> Result<bool> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: other.ambient_dim() });
        }
        Ok(self.vertices()? == other.vertices()?)
    }

    /// Append equations; the vertex cache is not carried over.
    pub fn intersect(&self, equations: &[AffineEquation]) -> Result<Polytope> {
        let mut eqs = self.equations.clone();
        eqs.extend(equations.iter().cloned());
        Polytope::new(self.ambient.clone(), self.inequalities.clone(), eqs)
    }

    /// Append inequalities; the vertex cache is not carried over.
    pub fn restrict(&self, inequalities: &[HalfSpace]) -> Result<Polytope> {
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(inequalities.iter().cloned());
        Polytope::new(self.ambient.clone(), ineqs, self.equations.clone())
    }

    /// Least common multiple of all vertex-coordinate denominators.
    pub fn denominator(&self) -> Result<BigInt> {
        let vs = self.vertices()?;
        if vs.is_empty() {
            return Err(Error::Empty);
        }
        Ok(lcm_of_denominators(vs.iter().flatten()))
    }

    /// Affine dimension, `-1` when empty.
    pub fn dimension(&self) -> Result<i64> {
        let vs = self.vertices()?;
        let Some(first) = vs.first() else {
            return Ok(-1);
        };
        let diffs: Vec<Vec<Rational>> =
            vs[1..].iter().map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
        Ok(rank(diffs, self.ambient_dim()) as i64)
    }

    /// The `k`-th dilate.
    pub fn dilate(&self, k: i64) -> Result<Polytope> {
        let scale = |b: i64| b.checked_mul(k).ok_or_else(|| Error::Overflow(format!("{b} * {k}")));
        let ineqs = self
            .inequalities
            .iter()
            .map(|h| Ok(HalfSpace { normal: h.normal.clone(), bound: scale(h.bound)? }))
            .collect::<Result<Vec<_>>>()?;
        let eqs = self
            .equations
            .iter()
            .map(|e| Ok(AffineEquation { normal: e.normal.clone(), bound: scale(e.bound)? }))
            .collect::<Result<Vec<_>>>()?;
        let p = Polytope::new(self.ambient.clone(), ineqs, eqs)?;
        if let Some(Ok(vs)) = self.vertices.get() {
            let f = int(k);
            let mut scaled: Vec<Point> = vs.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect();
            if k < 0 {
                scaled.sort();
            }
            let _ = p.vertices.set(Ok(scaled));
        }
        Ok(p)
    }

    /// Image under a map that is affine on this polytope, computed as the
    /// hull of the vertex images.
    pub fn map_vertices<F: Fn(&[Rational]) -> Point>(&self, f: F) -> Result<Polytope> {
        let images: Vec<Point> = self.vertices()?.iter().map(|v| f(v)).collect();
        if images.is_empty() {
            return Ok(Polytope::empty(self.ambient.clone()));
        }
        hull(self.ambient.clone(), &images)
    }

    pub fn to_json(&self) -> Result<PolytopeJson> {
        let vertices = self.vertices()?.iter().map(|v| v.iter().map(format_rational).collect()).collect();
        Ok(PolytopeJson {
            ambient: self.ambient.clone(),
            inequalities: self.inequalities.iter().map(|h| with_bound(&h.normal, h.bound)).collect(),
            equations: self.equations.iter().map(|e| with_bound(&e.normal, e.bound)).collect(),
            vertices: Some(vertices),
        })
    }

    /// Build from the JSON schema; a supplied vertex list is checked against
    /// the H-representation.
    pub fn from_json(json: &PolytopeJson) -> Result<Polytope> {
        let split = |row: &Vec<i64>| -> Result<(Vec<i64>, i64)> {
            let (b, a) = row.split_last().ok_or_else(|| Error::Parse("empty constraint row".into()))?;
            Ok((a.to_vec(), *b))
        };
        let ineqs = json
            .inequalities
            .iter()
            .map(|r| split(r).and_then(|(a, b)| HalfSpace::new(a, b)))
            .collect::<Result<Vec<_>>>()?;
        let eqs = json
            .equations
            .iter()
            .map(|r| split(r).and_then(|(a, b)| AffineEquation::new(a, b)))
            .collect::<Result<Vec<_>>>()?;
        let p = Polytope::new(json.ambient.clone(), ineqs, eqs)?;
        if let Some(vs) = &json.vertices {
            let mut given: Vec<Point> = vs
                .iter()
                .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            given.sort();
            given.dedup();
            if given != p.vertices()? {
                return Err(Error::Parse("vertex list does not match the inequalities".into()));
            }
        }
        Ok(p)
    }
}

fn with_bound(normal: &[i64], bound: i64) -> Vec<i64> {
    normal.iter().copied().chain([bound]).collect()
}

/// JSON form: constraint rows are `[a_1, …, a_N, b]`, rationals are
/// `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient: Vec<String>,
    pub inequalities: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
}

/// Convex hull of a nonempty finite point set, as equations for the affine
/// hull plus facet inequalities.
pub fn hull(ambient: Vec<String>, points: &[Point]) -> Result<Polytope> {
    let n = ambient.len();
    if points.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let p0 = pts[0].clone();
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| p.iter().zip(&p0).map(|(a, b)| a - b).collect()).collect();
    let mut equations = Vec::new();
    for normal in nullspace(diffs, n) {
        let mut row = normal.clone();
        row.push(super::rational::dot(&normal, &p0));
        equations.push(AffineEquation::from_big(primitive_integer_row(&row))?);
    }
    let param = Param::new(n, &equations).expect("affine hull equations are consistent");
    let k = param.free.len();
    let ys: Vec<Vec<Rational>> = pts.iter().map(|p| param.free.iter().map(|&f| p[f].clone()).collect()).collect();

    // Valid inequalities (a, b) with a · y <= b for every point form a
    // pointed cone whose extreme rays are the facets.
    let rows: Vec<Vec<BigInt>> = ys
        .iter()
        .map(|y| {
            let mut r = y.clone();
            r.push(-Rational::one());
            primitive_integer_row(&r)
        })
        .collect();
    let cone = cone_generators(k + 1, &rows);
    debug_assert!(cone.lineality.is_empty());
    let mut inequalities = Vec::new();
    for ray in &cone.rays {
        if ray[..k].iter().all(Zero::is_zero) {
            continue;
        }
        let mut full = vec![BigInt::zero(); n + 1];
        for (j, &f) in param.free.iter().enumerate() {
            full[f] = ray[j].clone();
        }
        full[n] = ray[k].clone();
        inequalities.push(HalfSpace::from_big(make_primitive(full))?);
    }
    inequalities.sort();
    inequalities.dedup();

    let facet_rows: Vec<(Vec<Rational>, Rational)> = cone
        .rays
        .iter()
        .filter(|r| !r[..k].iter().all(Zero::is_zero))
        .map(|r| {
            (r[..k].iter().map(|v| Rational::from_integer(v.clone())).collect(), Rational::from_integer(r[k].clone()))
        })
        .collect();
    let mut vertices: Vec<Point> = pts
        .iter()
        .zip(&ys)
        .filter(|(_, y)| {
            let tight: Vec<Vec<Rational>> =
                facet_rows.iter().filter(|(a, b)| &super::rational::dot(a, y) == b).map(|(a, _)| a.clone()).collect();
            rank(tight, k) == k
        })
        .map(|(p, _)| p.clone())
        .collect();
    vertices.sort();

    let p = Polytope::new(ambient, inequalities, equations)?;
    let _ = p.vertices.set(Ok(vertices));
    Ok(p)
}
