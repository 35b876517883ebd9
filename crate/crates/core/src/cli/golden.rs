//! Embedded reference data for the worked examples and the checks that
//! replay them.

use serde::{Deserialize, Serialize};

use crate::ehrhart::{ehrhart_equal, fit_quasi_polynomial, h_star, period_report, period_report_of, PeriodReport};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, hull, parse_rational, Point, Polytope};
use crate::plmaps::{mutate, TropicalMap};
use crate::poset::{delete_diagonal, DVector, UpSet, YoungDiagram};
use crate::posetpoly::{chain_order_polytope, restricted_chain_order};

pub const EXAMPLE_IDS: [&str; 5] = ["1.1", "2.6", "5.3", "5.4", "5.5"];

const FIXTURES: [(&str, &str); 5] = [
    ("1.1", include_str!("../../fixtures/example_1_1.json")),
    ("2.6", include_str!("../../fixtures/example_2_6.json")),
    ("5.3", include_str!("../../fixtures/example_5_3.json")),
    ("5.4", include_str!("../../fixtures/example_5_4.json")),
    ("5.5", include_str!("../../fixtures/example_5_5.json")),
];

#[derive(Clone, Debug, Deserialize)]
pub struct MutationFixture {
    pub ambient: Vec<String>,
    pub p_vertices: Vec<Vec<String>>,
    pub w: Vec<i64>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<i64>>,
    pub q_vertices: Vec<Vec<String>>,
    pub p_period: PeriodReport,
    pub q_period: PeriodReport,
    pub ehrhart_check_dilate: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DeletionFixture {
    pub ell: i64,
    pub partition: Vec<usize>,
    pub d: Vec<i64>,
    pub check_dilate: u64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PolytopeFixture {
    pub partition: Vec<usize>,
    pub upset: String,
    #[serde(default)]
    pub d: Option<Vec<i64>>,
    #[serde(default = "one")]
    pub k: i64,
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub ehrhart: Option<Vec<String>>,
    #[serde(default)]
    pub h_star: Option<Vec<i64>>,
    #[serde(default)]
    pub period: Option<PeriodReport>,
    #[serde(default)]
    pub delete_diagonal: Option<DeletionFixture>,
}

fn one() -> i64 {
    1
}

impl PolytopeFixture {
    pub fn diagram(&self) -> Result<YoungDiagram> {
        YoungDiagram::from_partition(&self.partition)
    }

    pub fn build(&self) -> Result<Polytope> {
        let l = self.diagram()?;
        let c = UpSet::parse(&l, &self.upset)?;
        match &self.d {
            Some(d) => restricted_chain_order(&l, &c, &DVector::new(&l, d.clone())?, self.k),
            None => chain_order_polytope(&l, &c)?.dilate(self.k),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Mutation(MutationFixture),
    Polytope(PolytopeFixture),
}

pub fn fixture(id: &str) -> Result<Fixture> {
    let text =
        FIXTURES.iter().find(|(k, _)| *k == id).map(|(_, t)| *t).ok_or_else(|| {
            Error::Parse(format!("unknown example {id:?}; expected one of {}", EXAMPLE_IDS.join(", ")))
        })?;
    let parsed = if id == "1.1" {
        serde_json::from_str(text).map(Fixture::Mutation)
    } else {
        serde_json::from_str(text).map(Fixture::Polytope)
    };
    parsed.map_err(|e| Error::Parse(format!("fixture {id}: {e}")))
}

pub fn parse_points(rows: &[Vec<String>]) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> =
        rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    pts.sort();
    pts.dedup();
    Ok(pts)
}

fn show_points(pts: &[Point]) -> String {
    let rows: Vec<String> =
        pts.iter().map(|p| format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(","))).collect();
    format!("{} points: {}", pts.len(), rows.join(" "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub got: String,
}

impl Check {
    fn new(name: &str, expected: String, got: String) -> Self {
        Check { name: name.into(), pass: expected == got, expected, got }
    }

    fn flag(name: &str, ok: bool) -> Self {
        Check { name: name.into(), pass: ok, expected: "true".into(), got: ok.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub id: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

fn vertex_check(name: &str, expected: &[Point], p: &Polytope) -> Result<Check> {
    Ok(Check::new(name, show_points(expected), show_points(p.vertices()?)))
}

fn period_text(r: &PeriodReport) -> String {
    format!("D={} s={} collapse={}", r.denominator, r.period, r.collapse)
}

fn verify_mutation(fx: &MutationFixture) -> Result<Vec<Check>> {
    let p_pts = parse_points(&fx.p_vertices)?;
    let q_pts = parse_points(&fx.q_vertices)?;
    let p = hull(fx.ambient.clone(), &p_pts)?;
    let m = TropicalMap::new(fx.w.clone(), fx.f.clone())?;
    let (q, cert) = mutate(&p, &m)?;
    Ok(vec![
        vertex_check("P vertices", &p_pts, &p)?,
        Check::flag("mutation certified convex", cert.valid),
        vertex_check("image vertices", &q_pts, &q)?,
        Check::new("P period", period_text(&fx.p_period), period_text(&period_report(&p)?)),
        Check::new("Q period", period_text(&fx.q_period), period_text(&period_report(&q)?)),
        Check::flag("P and Q Ehrhart-equal", ehrhart_equal(&p, &q, fx.ehrhart_check_dilate)?),
    ])
}

fn verify_polytope(fx: &PolytopeFixture) -> Result<Vec<Check>> {
    let expected = parse_points(&fx.vertices)?;
    let p = fx.build()?;
    let mut checks = vec![vertex_check("vertices", &expected, &p)?];
    if fx.ehrhart.is_none() && fx.h_star.is_none() && fx.period.is_none() {
        return Ok(checks);
    }
    let q = fit_quasi_polynomial(&p)?;
    if let Some(poly) = &fx.ehrhart {
        let want = poly.join(" ");
        for r in 0..q.modulus as usize {
            let got: Vec<String> = q.descending(r).iter().map(format_rational).collect();
            checks.push(Check::new(&format!("Ehrhart constituent {r}"), want.clone(), got.join(" ")));
        }
    }
    if let Some(period) = &fx.period {
        checks.push(Check::new("period", period_text(period), period_text(&period_report_of(&q))));
    }
    if let Some(h) = &fx.h_star {
        let got = match h_star(&q) {
            Ok(v) => format!("{v:?}"),
            Err(e) => e.to_string(),
        };
        checks.push(Check::new("h*", format!("{h:?}"), got));
    }
    if let Some(del) = &fx.delete_diagonal {
        let l = fx.diagram()?;
        let d = DVector::new(&l, fx.d.clone().unwrap_or_default())?;
        let cut = delete_diagonal(&l, &d, del.ell)?;
        checks.push(Check::new(
            "diagonal deletion shape",
            format!("{:?} d={:?}", del.partition, del.d),
            format!("{:?} d={:?}", cut.diagram.parts(), cut.dvector.values()),
        ));
        let small = restricted_chain_order(&cut.diagram, &UpSet::empty(), &cut.dvector, fx.k)?;
        let projected: Vec<Point> = p.vertices()?.iter().map(|v| cut.project(v)).collect();
        let projected_hull = hull(cut.diagram.labels(), &projected)?;
        checks.push(Check::flag("projection maps vertices onto the smaller polytope", projected_hull.equals(&small)?));
        checks.push(Check::flag("Ehrhart-equal after deletion", ehrhart_equal(&p, &small, del.check_dilate)?));
    }
    Ok(checks)
}

pub fn verify_example(id: &str) -> Result<ExampleReport> {
    let checks = match fixture(id)? {
        Fixture::Mutation(fx) => verify_mutation(&fx)?,
        Fixture::Polytope(fx) => verify_polytope(&fx)?,
    };
    Ok(ExampleReport { id: id.into(), pass: checks.iter().all(|c| c.pass), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for id in EXAMPLE_IDS {
            fixture(id).unwrap();
        }
        assert!(fixture("9.9").is_err());
    }

    #[test]
    fn small_examples_pass() {
        for id in ["1.1", "2.6"] {
            let report = verify_example(id).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }
}
