//! Builders for order, chain and chain-order polytopes of a Young diagram,
//! their restricted versions, the Stanley vertex oracle, and
//! Gelfand-Tsetlin polytopes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{int, AffineEquation, HalfSpace, Point, Polytope};
use crate::poset::{paths_to_corners, restriction_sets, Cell, DVector, UpSet, YoungDiagram};

/// Everything needed to build one (restricted) chain-order polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSpec {
    pub diagram: YoungDiagram,
    pub upset: UpSet,
    pub dvector: Option<DVector>,
    pub dilate: i64,
}

impl PolytopeSpec {
    pub fn restricted(&self) -> bool {
        self.dvector.is_some()
    }

    /// Parse `"partition=4,4,3 upset=empty d=1,2,3,2,2,1 k=2"`. Only the
    /// partition is required.
    pub fn parse(text: &str) -> Result<Self> {
        let mut partition = None;
        let mut upset = None;
        let mut d = None;
        let mut k = None;
        for token in text.split_whitespace() {
            let (key, value) =
                token.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            match key {
                "partition" => partition = Some(value.to_string()),
                "upset" => upset = Some(value.to_string()),
                "d" => d = Some(value.to_string()),
                "k" => k = Some(value.to_string()),
                _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
            }
        }
        let partition = partition.ok_or_else(|| Error::Parse("missing partition=".into()))?;
        PolytopeSpec::from_parts(&partition, upset.as_deref(), d.as_deref(), k.as_deref())
    }

    pub fn from_parts(partition: &str, upset: Option<&str>, d: Option<&str>, k: Option<&str>) -> Result<Self> {
        let diagram = YoungDiagram::parse(partition)?;
        let upset = UpSet::parse(&diagram, upset.unwrap_or("empty"))?;
        let dvector = d.map(|t| DVector::parse(&diagram, t)).transpose()?;
        let dilate = match k {
            Some(t) => t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad k {t:?}")))?,
            None => 1,
        };
        if dilate < 1 {
            return Err(Error::Parse(format!("k must be positive, got {dilate}")));
        }
        Ok(PolytopeSpec { diagram, upset, dvector, dilate })
    }

    pub fn build(&self) -> Result<Polytope> {
        match &self.dvector {
            Some(d) => restricted_chain_order(&self.diagram, &self.upset, d, self.dilate),
            None => chain_order_polytope(&self.diagram, &self.upset)?.dilate(self.dilate),
        }
    }

    pub fn to_json(&self) -> SpecJson {
        SpecJson {
            partition: self.diagram.parts().to_vec(),
            upset: self.upset.to_text(&self.diagram),
            d: self.dvector.as_ref().map(|d| d.values().to_vec()),
            k: self.dilate,
            restricted: self.restricted(),
        }
    }
}

impl fmt::Display for PolytopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagram.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "partition={} upset={}", parts.join(","), self.upset.to_text(&self.diagram))?;
        if let Some(d) = &self.dvector {
            write!(f, " d={d}")?;
        }
        write!(f, " k={}", self.dilate)
    }
}

/// JSON echo of a resolved [`PolytopeSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub partition: Vec<usize>,
    pub upset: String,
    pub d: Option<Vec<i64>>,
    pub k: i64,
    pub restricted: bool,
}

fn unit(diagram: &YoungDiagram, cells: &[(Cell, i64)]) -> Vec<i64> {
    let mut v = vec![0; diagram.len()];
    for &(c, coef) in cells {
        if let Some(i) = diagram.index_of(c) {
            v[i] += coef;
        }
    }
    v
}

fn box_bounds(diagram: &YoungDiagram, k: i64, upper: bool) -> Vec<HalfSpace> {
    let mut out = Vec::new();
    for &c in diagram.cells() {
        out.push(HalfSpace::at_least(unit(diagram, &[(c, 1)]), 0).expect("nonzero"));
        if upper {
            out.push(HalfSpace::new(unit(diagram, &[(c, 1)]), k).expect("nonzero"));
        }
    }
    out
}

fn chain_constraint(diagram: &YoungDiagram, cells: &[Cell], k: i64) -> HalfSpace {
    let terms: Vec<(Cell, i64)> = cells.iter().map(|&c| (c, 1)).collect();
    HalfSpace::new(unit(diagram, &terms), k).expect("nonzero")
}

fn chain_polytope_constraints(diagram: &YoungDiagram, k: i64) -> Vec<HalfSpace> {
    let mut out = box_bounds(diagram, k, false);
    for chain in diagram.maximal_chains() {
        out.push(chain_constraint(diagram, &chain, k));
    }
    out
}

/// Defining inequalities of `k · O_C(λ)`. Order constraints use covering
/// relations only; mixed chain constraints use saturated chains from a cover
/// of `p` to a corner of `λ`, which imply all the others.
pub(crate) fn chain_order_constraints(diagram: &YoungDiagram, upset: &UpSet, k: i64) -> Vec<HalfSpace> {
    if upset.is_full(diagram) {
        return chain_polytope_constraints(diagram, k);
    }
    let mut out = box_bounds(diagram, k, true);
    let free = |c: Cell| diagram.contains(c) && !upset.contains(c);
    for &p in diagram.cells() {
        if !free(p) {
            continue;
        }
        for q in [p.down(), p.right()] {
            if free(q) {
                out.push(HalfSpace::new(unit(diagram, &[(p, 1), (q, -1)]), 0).expect("nonzero"));
            } else if diagram.contains(q) {
                for path in paths_to_corners(diagram, q, &|_| true) {
                    let mut cells = vec![p];
                    cells.extend(path);
                    out.push(chain_constraint(diagram, &cells, k));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn order_polytope(diagram: &YoungDiagram) -> Polytope {
    Polytope::new(diagram.labels(), chain_order_constraints(diagram, &UpSet::empty(), 1), Vec::new())
        .expect("consistent dimensions")
}

pub fn chain_polytope(diagram: &YoungDiagram) -> Polytope {
    Polytope::new(diagram.labels(), chain_polytope_constraints(diagram, 1), Vec::new()).expect("consistent dimensions")
}

/// `O_C(λ)`; `C = λ` gives the chain polytope.
pub fn chain_order_polytope(diagram: &YoungDiagram, upset: &UpSet) -> Result<Polytope> {
    check_upset(diagram, upset)?;
    Polytope::new(diagram.labels(), chain_order_constraints(diagram, upset, 1), Vec::new())
}

fn check_upset(diagram: &YoungDiagram, upset: &UpSet) -> Result<()> {
    let cells: Vec<Cell> = upset.cells().collect();
    if !crate::poset::is_up_set(diagram, &cells)? {
        return Err(Error::NotUpSet(upset.to_text(diagram)));
    }
    Ok(())
}

/// The hyperplane `H_ℓ^C` with its signed 0/±1 coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalHyperplane {
    pub ell: i64,
    pub coefficients: Vec<i64>,
    pub rhs: i64,
}

impl DiagonalHyperplane {
    pub fn equation(&self) -> AffineEquation {
        AffineEquation::new(self.coefficients.clone(), self.rhs).expect("hyperplane normal is nonzero")
    }
}

/// One hyperplane per diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneFamily {
    pub hyperplanes: Vec<DiagonalHyperplane>,
}

impl HyperplaneFamily {
    pub fn equations(&self) -> Vec<AffineEquation> {
        self.hyperplanes.iter().map(DiagonalHyperplane::equation).collect()
    }

    pub fn get(&self, ell: i64) -> Option<&DiagonalHyperplane> {
        self.hyperplanes.iter().find(|h| h.ell == ell)
    }
}

pub fn restriction_hyperplanes(diagram: &YoungDiagram, upset: &UpSet, d: &DVector) -> Result<HyperplaneFamily> {
    let mut hyperplanes = Vec::new();
    for ell in diagram.diags() {
        let rs = restriction_sets(diagram, upset, ell)?;
        let mut terms: Vec<(Cell, i64)> = Vec::new();
        terms.extend(rs.s_bar.iter().map(|&c| (c, 1)));
        terms.extend(rs.t_bar.iter().map(|&c| (c, -1)));
        terms.extend(rs.rect.iter().filter(|&&c| upset.contains(c)).map(|&c| (c, 1)));
        hyperplanes.push(DiagonalHyperplane { ell, coefficients: unit(diagram, &terms), rhs: d.get(ell) });
    }
    Ok(HyperplaneFamily { hyperplanes })
}

/// `O_C(λ)^k_d = k · O_C(λ) ∩ ⋂_ℓ H_ℓ^C`.
pub fn restricted_chain_order(diagram: &YoungDiagram, upset: &UpSet, d: &DVector, k: i64) -> Result<Polytope> {
    check_upset(diagram, upset)?;
    let family = restriction_hyperplanes(diagram, upset, d)?;
    Polytope::new(diagram.labels(), chain_order_constraints(diagram, upset, k), family.equations())
}

pub fn restricted_order_polytope(diagram: &YoungDiagram, d: &DVector, k: i64) -> Result<Polytope> {
    restricted_chain_order(diagram, &UpSet::empty(), d, k)
}

pub fn restricted_chain_polytope(diagram: &YoungDiagram, d: &DVector, k: i64) -> Result<Polytope> {
    restricted_chain_order(diagram, &UpSet::full(diagram), d, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Order,
    Chain,
}

/// Characteristic vectors of all up-sets (order) or antichains (chain),
/// sorted.
pub fn stanley_vertex_oracle(diagram: &YoungDiagram, kind: OracleKind) -> Vec<Point> {
    let indicator = |cells: &mut dyn Iterator<Item = Cell>| -> Point {
        let mut v = vec![int(0); diagram.len()];
        for c in cells {
            v[diagram.index_of(c).expect("cell in diagram")] = int(1);
        }
        v
    };
    let mut out: Vec<Point> = match kind {
        OracleKind::Order => diagram.up_sets().iter().map(|u| indicator(&mut u.cells())).collect(),
        OracleKind::Chain => diagram.antichains().iter().map(|a| indicator(&mut a.iter().copied())).collect(),
    };
    out.sort();
    out
}

/// Gelfand-Tsetlin polytope with top row `shape` and content `content`.
///
/// Coordinates are the entries of rows `m-1, …, 1` (row `j` has `j`
/// entries), labelled `"x{j},{i}"`. Row `j` sums to `content[0] + … +
/// content[j-1]`.
pub fn gt_polytope(shape: &[i64], content: &[i64]) -> Result<Polytope> {
    let m = shape.len();
    if m == 0 {
        return Err(Error::InvalidGt("empty shape".into()));
    }
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidGt(format!("shape {shape:?} is not weakly decreasing")));
    }
    if content.len() != m {
        return Err(Error::InvalidGt(format!("content has {} entries, expected {m}", content.len())));
    }
    if content.iter().sum::<i64>() != shape.iter().sum::<i64>() {
        return Err(Error::InvalidGt(format!(
            "content {content:?} does not sum to |shape| = {}",
            shape.iter().sum::<i64>()
        )));
    }
    let mut labels = Vec::new();
    let mut index = std::collections::HashMap::new();
    for j in (1..m).rev() {
        for i in 1..=j {
            index.insert((j, i), labels.len());
            labels.push(format!("x{j},{i}"));
        }
    }
    let dim = labels.len();
    if dim == 0 {
        return Polytope::new(labels, Vec::new(), Vec::new());
    }
    let e = |j: usize, i: usize| {
        let mut v = vec![0; dim];
        v[index[&(j, i)]] = 1;
        v
    };
    let mut ineqs = Vec::new();
    for j in 1..m {
        for i in 1..=j {
            // x^{(j+1)}_{i+1} <= x^{(j)}_i <= x^{(j+1)}_i
            if j + 1 == m {
                ineqs.push(HalfSpace::new(e(j, i), shape[i - 1])?);
                ineqs.push(HalfSpace::at_least(e(j, i), shape[i])?);
            } else {
                let mut up = e(j, i);
                up[index[&(j + 1, i)]] -= 1;
                ineqs.push(HalfSpace::new(up, 0)?);
                let mut low = e(j, i);
                low[index[&(j + 1, i + 1)]] -= 1;
                ineqs.push(HalfSpace::at_least(low, 0)?);
            }
        }
    }
    let mut eqs = Vec::new();
    let mut prefix = 0;
    for j in 1..m {
        prefix += content[j - 1];
        let mut row = vec![0; dim];
        for i in 1..=j {
            row[index[&(j, i)]] = 1;
        }
        eqs.push(AffineEquation::new(row, prefix)?);
    }
    Polytope::new(labels, ineqs, eqs)
}

/// Shape and content of the Gelfand-Tsetlin polytope matched with the
/// restricted order polytope of the `m1 × m2` rectangle. The listed content
/// has `m1 + m2 - 1` entries; the last entry is derived from the sum
/// condition and reported via the returned flag.
pub fn gt_data_for_rectangle(m1: usize, m2: usize, d: &DVector, k: i64) -> (Vec<i64>, Vec<i64>, bool) {
    let mut shape = vec![k; m1];
    shape.extend(std::iter::repeat_n(0, m2));
    let top = m1 as i64 - 1;
    let mut content = vec![d.get(top)];
    let split = m1 as i64 - m2 as i64;
    for idx in (split..top).rev() {
        content.push(d.get(idx) - d.get(idx + 1));
    }
    for idx in (1 - m2 as i64..split).rev() {
        content.push(k + d.get(idx) - d.get(idx + 1));
    }
    let last = shape.iter().sum::<i64>() - content.iter().sum::<i64>();
    content.push(last);
    (shape, content, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{count_lattice_points, point, rat};

    fn yd(parts: &[usize]) -> YoungDiagram {
        YoungDiagram::from_partition(parts).unwrap()
    }

    fn grid(rows: &[&[i64]]) -> Point {
        point(&rows.concat())
    }

    #[test]
    fn single_box_polytopes() {
        let l = yd(&[1]);
        assert_eq!(order_polytope(&l).vertices().unwrap(), &[point(&[0]), point(&[1])]);
        assert_eq!(chain_polytope(&l).vertices().unwrap(), &[point(&[0]), point(&[1])]);
    }

    #[test]
    fn example_chain_order_vertices() {
        let l = yd(&[3, 2]);
        let c = UpSet::parse(&l, "1,2;2,2").unwrap();
        let p = chain_order_polytope(&l, &c).unwrap();
        let mut expected = vec![
            grid(&[&[0, 0, 0], &[0, 0]]),
            grid(&[&[0, 0, 0], &[1, 0]]),
            grid(&[&[1, 0, 0], &[1, 0]]),
            grid(&[&[0, 1, 0], &[0, 0]]),
            grid(&[&[0, 1, 0], &[1, 0]]),
            grid(&[&[0, 0, 0], &[0, 1]]),
            grid(&[&[0, 0, 1], &[0, 0]]),
            grid(&[&[0, 0, 1], &[1, 0]]),
            grid(&[&[0, 0, 1], &[0, 1]]),
        ];
        expected.sort();
        assert_eq!(p.vertices().unwrap(), expected.as_slice());
    }

    #[test]
    fn chain_order_special_cases() {
        let l = yd(&[3, 2, 1]);
        let order = chain_order_polytope(&l, &UpSet::empty()).unwrap();
        assert!(order.equals(&order_polytope(&l)).unwrap());
        let almost = UpSet::new(&l, l.cells()[1..].iter().copied()).unwrap();
        let chain = chain_order_polytope(&l, &almost).unwrap();
        assert!(chain.equals(&chain_polytope(&l)).unwrap());
        let full = chain_order_polytope(&l, &UpSet::full(&l)).unwrap();
        assert!(full.equals(&chain_polytope(&l)).unwrap());
    }

    #[test]
    fn antichain_vertices_of_small_chain_polytope() {
        let l = yd(&[2, 1]);
        assert_eq!(chain_polytope(&l).vertices().unwrap().len(), 5);
        assert_eq!(stanley_vertex_oracle(&l, OracleKind::Chain).len(), 5);
    }

    #[test]
    fn hyperplanes_reduce_to_plain_sums() {
        let l = yd(&[4, 4, 3]);
        let d = DVector::parse(&l, "1,2,3,2,2,1").unwrap();
        let empty = restriction_hyperplanes(&l, &UpSet::empty(), &d).unwrap();
        for h in &empty.hyperplanes {
            let expected = unit(&l, &l.diagonal(h.ell).into_iter().map(|c| (c, 1)).collect::<Vec<_>>());
            assert_eq!(h.coefficients, expected);
        }
        let full = restriction_hyperplanes(&l, &UpSet::full(&l), &d).unwrap();
        for h in &full.hyperplanes {
            let r = l.diagonal_max(h.ell).unwrap();
            let below: Vec<(Cell, i64)> = l.cells().iter().filter(|c| c.leq(r)).map(|&c| (c, 1)).collect();
            assert_eq!(h.coefficients, unit(&l, &below));
        }
    }

    #[test]
    fn hyperplane_of_rectangle_example() {
        let l = yd(&[6, 6, 6, 6, 6]);
        let c = UpSet::parse(&l, "4,3;3,5").unwrap();
        let d = DVector::new(&l, vec![1; 10]).unwrap();
        let h = restriction_hyperplanes(&l, &c, &d).unwrap();
        let h = h.get(-1).unwrap();
        let at = |r, c| h.coefficients[l.index_of(Cell::new(r, c)).unwrap()];
        for (r, c) in [(1, 2), (1, 5), (2, 3), (2, 6), (3, 4), (4, 1), (5, 2)] {
            assert_eq!(at(r, c), 1, "s cell ({r},{c})");
        }
        for (r, c) in [(1, 3), (2, 1), (2, 4), (3, 2)] {
            assert_eq!(at(r, c), -1, "t-bar cell ({r},{c})");
        }
        for cell in c.cells() {
            assert_eq!(at(cell.row, cell.col), 1);
        }
        assert_eq!(h.coefficients.iter().filter(|&&x| x == 0).count(), 30 - 7 - 4 - c.len());
    }

    #[test]
    fn restricted_order_example_vertices() {
        let l = yd(&[4, 4, 3]);
        let d = DVector::parse(&l, "1,2,3,2,2,1").unwrap();
        let p = restricted_order_polytope(&l, &d, 2).unwrap();
        let vs = p.vertices().unwrap();
        assert_eq!(vs.len(), 7);
        assert!(vs.contains(&grid(&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1]])));
        let half = vec![
            int(0),
            rat(1, 2),
            rat(1, 2),
            int(1),
            rat(1, 2),
            rat(3, 2),
            rat(3, 2),
            rat(3, 2),
            int(1),
            rat(3, 2),
            rat(3, 2),
        ];
        assert!(vs.contains(&half));
        let face = p.intersect(&[AffineEquation::new(unit(&l, &[(Cell::new(1, 1), 1)]), 1).unwrap()]).unwrap();
        assert_eq!(face.vertices().unwrap().len(), 1);
    }

    #[test]
    fn emptiness_from_decreasing_adjacent_entries() {
        let l = yd(&[3, 3, 3]);
        // Diagonals 1 and 2 have equal length on the positive side? No: lengths 2 and 1.
        // Use diagonals -1 and -2 of (4,4,3): equal length 2.
        let l2 = yd(&[4, 4, 3]);
        let d = DVector::parse(&l2, "1,2,3,2,1,1").unwrap();
        assert!(restricted_order_polytope(&l2, &d, 2).unwrap().is_empty().unwrap());
        let d = DVector::parse(&l, "1,2,3,2,1").unwrap();
        assert!(!restricted_order_polytope(&l, &d, 2).unwrap().is_empty().unwrap());
    }

    #[test]
    fn gt_small_cases() {
        let p = gt_polytope(&[1, 0], &[1, 0]).unwrap();
        assert_eq!(p.vertices().unwrap(), &[point(&[1])]);
        for a in 0..=3 {
            let p = gt_polytope(&[3, 0], &[a, 3 - a]).unwrap();
            assert_eq!(p.vertices().unwrap(), &[point(&[a])]);
        }
        assert!(gt_polytope(&[1, 0], &[1, 1]).is_err());
        assert!(gt_polytope(&[0, 1], &[1, 0]).is_err());
        // Kostka number K_{(2,1),(1,1,1)} = 2.
        let p = gt_polytope(&[2, 1, 0], &[1, 1, 1]).unwrap();
        assert_eq!(count_lattice_points(&p, 1).unwrap(), 2);
    }

    #[test]
    fn gt_data_for_square() {
        let l = yd(&[2, 2]);
        let d = DVector::parse(&l, "1,1,1").unwrap();
        let (shape, content, derived) = gt_data_for_rectangle(2, 2, &d, 1);
        assert_eq!(shape, vec![1, 1, 0, 0]);
        assert_eq!(content, vec![1, 0, 1, 0]);
        assert!(derived);
    }

    #[test]
    fn spec_string() {
        let s = PolytopeSpec::parse("partition=4,4,3 upset=empty d=1,2,3,2,2,1 k=2").unwrap();
        assert_eq!(s.dilate, 2);
        assert!(s.restricted());
        assert_eq!(s.to_string(), "partition=4,4,3 upset=empty d=1,2,3,2,2,1 k=2");
        assert_eq!(s.build().unwrap().vertices().unwrap().len(), 7);
        assert!(PolytopeSpec::parse("upset=empty").is_err());
        assert!(PolytopeSpec::parse("partition=2,1 k=0").is_err());
        assert!(PolytopeSpec::parse("partition=2,1 z=3").is_err());
    }
}
