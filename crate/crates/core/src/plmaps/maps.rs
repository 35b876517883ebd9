use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::determinant;
use crate::geometry::{dot_int, int, Point, Rational};
use crate::poset::{is_linear_extension, Cell, YoungDiagram};

/// `φ_{w,F}(x) = x − (min_{f ∈ F} x·f) · w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalMap {
    pub w: Vec<i64>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<i64>>,
}

impl TropicalMap {
    pub fn new(w: Vec<i64>, f: Vec<Vec<i64>>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidMap("F is empty".into()));
        }
        let g = w.iter().fold(0u64, |g, &a| num_integer::gcd(g, a.unsigned_abs()));
        if g != 1 {
            return Err(Error::InvalidMap(format!("w = {w:?} is not primitive")));
        }
        for v in &f {
            if v.len() != w.len() {
                return Err(Error::DimensionMismatch { expected: w.len(), got: v.len() });
            }
            if v.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() != 0 {
                return Err(Error::InvalidMap(format!("{v:?} is not orthogonal to w")));
            }
        }
        let mut f = f;
        f.sort();
        f.dedup();
        Ok(TropicalMap { w, f })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// `min_{f ∈ F} x·f`.
    pub fn x_min(&self, x: &[Rational]) -> Rational {
        self.f.iter().map(|f| dot_int(f, x)).min().expect("F is nonempty")
    }

    /// Linear piece on the region where the vertex `v` attains the minimum.
    pub fn linear_piece(&self, v: &[i64], x: &[Rational]) -> Point {
        let m = dot_int(v, x);
        shear(&self.w, &m, x)
    }

    /// Whether F is a single point, making the map affine.
    pub fn is_affine(&self) -> bool {
        self.f.len() == 1
    }
}

fn shear(w: &[i64], m: &Rational, x: &[Rational]) -> Point {
    if m.is_zero() {
        return x.to_vec();
    }
    x.iter().zip(w).map(|(xi, &wi)| if wi == 0 { xi.clone() } else { xi - m * int(wi) }).collect()
}

pub fn apply_tropical(m: &TropicalMap, x: &[Rational]) -> Result<Point> {
    if x.len() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: x.len() });
    }
    Ok(shear(&m.w, &m.x_min(x), x))
}

/// `x ↦ matrix · x + offset` with an integer matrix of determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<i64>>, offset: Vec<i64>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if offset.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: offset.len() });
        }
        let rows: Vec<Vec<Rational>> = matrix.iter().map(|r| r.iter().map(|&a| int(a)).collect()).collect();
        let det = determinant(rows);
        if det != int(1) && det != int(-1) {
            return Err(Error::InvalidMap(format!("determinant {det} is not ±1")));
        }
        Ok(UnimodularMap { matrix, offset })
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Point> {
        if x.len() != self.matrix.len() {
            return Err(Error::DimensionMismatch { expected: self.matrix.len(), got: x.len() });
        }
        Ok(self.matrix.iter().zip(&self.offset).map(|(row, &b)| dot_int(row, x) + int(b)).collect())
    }

    /// `row · matrix` for a row vector.
    pub fn pull_back_row(&self, row: &[i64]) -> Vec<i64> {
        let n = self.matrix.len();
        (0..n).map(|j| (0..n).map(|i| row[i] * self.matrix[i][j]).sum()).collect()
    }
}

fn index(diagram: &YoungDiagram, c: Cell) -> Option<usize> {
    diagram.index_of(c)
}

fn unit(diagram: &YoungDiagram, c: Cell) -> Vec<i64> {
    let mut v = vec![0; diagram.len()];
    if let Some(i) = index(diagram, c) {
        v[i] = 1;
    }
    v
}

fn check_cell(diagram: &YoungDiagram, r: Cell) -> Result<()> {
    if !diagram.contains(r) {
        return Err(Error::InvalidMap(format!("{r} is not a cell of the diagram")));
    }
    Ok(())
}

/// `min{a, b} − 1`.
pub fn i_max(r: Cell) -> usize {
    (r.row.min(r.col) - 1) as usize
}

/// The tropical map `φ_i` for the cell `r = (a, b)`.
///
/// Cells outside the diagram have zero unit vectors, so `F` keeps a zero
/// vertex whenever one of its two generators lies outside. This keeps the
/// decomposition of `χ_r` exact on all of `ℝ^λ`, not only on nonnegative
/// vectors.
pub fn phi_step(diagram: &YoungDiagram, r: Cell, i: usize) -> Result<TropicalMap> {
    check_cell(diagram, r)?;
    if i > i_max(r) {
        return Err(Error::StepOutOfRange { index: i, max: i_max(r) });
    }
    let s = i as i64;
    let (a, b) = (r.row, r.col);
    let mut w = unit(diagram, Cell::new(a - s - 1, b - s - 1));
    let lower = unit(diagram, Cell::new(a - s, b - s));
    for (x, y) in w.iter_mut().zip(&lower) {
        *x -= y;
    }
    let f = vec![unit(diagram, Cell::new(a - s - 1, b - s)), unit(diagram, Cell::new(a - s, b - s - 1))];
    TropicalMap::new(w, f)
}

/// Cells `(i, j) ≤ r` on the diagonal of `r`, largest first.
fn diagonal_below(r: Cell) -> impl Iterator<Item = Cell> {
    (0..r.row.min(r.col)).map(move |s| r.back(s))
}

pub fn psi_map(diagram: &YoungDiagram, r: Cell) -> Result<UnimodularMap> {
    check_cell(diagram, r)?;
    let n = diagram.len();
    let mut matrix: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for c in diagonal_below(r) {
        let i = index(diagram, c).expect("cells below r lie in the diagram");
        let sign = if c == r { 1 } else { -1 };
        matrix[i][i] = sign;
        for q in [c.up(), c.left()] {
            if let Some(j) = index(diagram, q) {
                matrix[i][j] = -sign;
            }
        }
    }
    UnimodularMap::new(matrix, vec![0; n])
}

fn value(diagram: &YoungDiagram, x: &[Rational], c: Cell) -> Rational {
    index(diagram, c).map_or_else(Rational::zero, |i| x[i].clone())
}

fn check_len(diagram: &YoungDiagram, x: &[Rational]) -> Result<()> {
    if x.len() != diagram.len() {
        return Err(Error::DimensionMismatch { expected: diagram.len(), got: x.len() });
    }
    Ok(())
}

fn max_before(diagram: &YoungDiagram, x: &[Rational], c: Cell) -> Rational {
    value(diagram, x, c.up()).max(value(diagram, x, c.left()))
}

fn min_after(diagram: &YoungDiagram, x: &[Rational], c: Cell) -> Rational {
    value(diagram, x, c.down()).min(value(diagram, x, c.right()))
}

/// The piecewise-linear move `χ_r`, acting on the diagonal cells `≤ r` only.
pub fn chi_r(diagram: &YoungDiagram, r: Cell, x: &[Rational]) -> Result<Point> {
    check_cell(diagram, r)?;
    check_len(diagram, x)?;
    let mut y = x.to_vec();
    for c in diagonal_below(r) {
        let i = index(diagram, c).expect("in diagram");
        y[i] = if c == r {
            &x[i] - max_before(diagram, x, c)
        } else {
            max_before(diagram, x, c) + min_after(diagram, x, c) - &x[i]
        };
    }
    Ok(y)
}

pub fn chi_r_inverse(diagram: &YoungDiagram, r: Cell, x: &[Rational]) -> Result<Point> {
    check_cell(diagram, r)?;
    check_len(diagram, x)?;
    let mut y = x.to_vec();
    for c in diagonal_below(r) {
        let i = index(diagram, c).expect("in diagram");
        y[i] = if c == r {
            &x[i] + max_before(diagram, x, c)
        } else {
            max_before(diagram, x, c) + min_after(diagram, x, c) - &x[i]
        };
    }
    Ok(y)
}

/// `ψ ∘ φ_{i_max} ∘ … ∘ φ_0`, evaluated step by step.
pub fn chi_r_decomposed(diagram: &YoungDiagram, r: Cell, x: &[Rational]) -> Result<Point> {
    check_len(diagram, x)?;
    let mut y = x.to_vec();
    for i in 0..=i_max(r) {
        y = apply_tropical(&phi_step(diagram, r, i)?, &y)?;
    }
    psi_map(diagram, r)?.apply(&y)
}

/// `ξ_λ = χ_{r_1} ∘ … ∘ χ_{r_n}` for a linear extension `(r_1, …, r_n)`.
pub fn xi(diagram: &YoungDiagram, linear_extension: &[Cell], x: &[Rational]) -> Result<Point> {
    check_len(diagram, x)?;
    if !is_linear_extension(diagram, linear_extension) {
        return Err(Error::InvalidLinearExtension(
            linear_extension.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
        ));
    }
    let mut y = x.to_vec();
    for &r in linear_extension.iter().rev() {
        y = chi_r(diagram, r, &y)?;
    }
    Ok(y)
}
