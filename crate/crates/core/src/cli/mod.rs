//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when a computation or verification fails,
//! and 2 for malformed input.

pub mod golden;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ehrhart::{
    ehrhart_equal, fit_quasi_polynomial, format_polynomial, h_star, lattice_counts, period_report_of, EhrhartReport,
};
use crate::error::{Error, Result};
use crate::geometry::{count_lattice_points, format_rational, Polytope, PolytopeJson};
use crate::plmaps::{mutation_sequence, mutation_sequence_unrestricted, MutationOptions};
use crate::poset::{corner_flag, delete_diagonal, FlagOrder};
use crate::posetpoly::PolytopeSpec;

#[derive(Parser, Debug)]
#[command(name = "polymut", version, about = "Chain-order polytopes of Young diagrams, mutations and Ehrhart data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the H- and V-representation of a polytope.
    Build(Common),
    /// Print the vertices of a polytope.
    Vertices(Common),
    /// Fit the Ehrhart quasi-polynomial and report period data and h*.
    Ehrhart(Common),
    /// Report denominator, period and period collapse.
    Period(Common),
    /// Print the h*-vector (fails when the Ehrhart function is not a polynomial).
    Hstar(Common),
    /// Count lattice points in a dilate.
    Count {
        #[command(flatten)]
        common: Common,
        /// Dilation factor of the count.
        #[arg(long, default_value_t = 1)]
        dilate: u64,
    },
    /// Run the mutation sequence from the order side to the chain side.
    MutateSeq {
        #[command(flatten)]
        common: Common,
        /// Also compare lattice counts of every intermediate for dilates 0..=N.
        #[arg(long, value_name = "N")]
        check_dilates: Option<u64>,
        #[arg(long, default_value = "lex-largest")]
        flag_order: FlagOrder,
        /// Include every intermediate polytope in the output.
        #[arg(long)]
        keep_polytopes: bool,
    },
    /// Remove a diagonal that has an equal-length neighbour.
    DeleteDiagonal {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        /// Compare lattice counts of both polytopes for dilates 0..=N.
        #[arg(long, value_name = "N")]
        check_dilates: Option<u64>,
    },
    /// Replay the embedded worked examples.
    VerifyExamples {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        example: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Whole specification, e.g. "partition=4,4,3 upset=empty d=1,2,3,2,2,1 k=2".
    #[arg(long, conflicts_with_all = ["partition", "polytope"])]
    spec: Option<String>,
    /// Partition, e.g. 4,4,3.
    #[arg(long, conflicts_with = "polytope")]
    partition: Option<String>,
    /// Up-set: "empty", "full" or minimal cells "1,2;2,2".
    #[arg(long, requires = "partition")]
    upset: Option<String>,
    /// Diagonal sums d_{m1-1}, …, d_{1-m2}.
    #[arg(long, requires = "partition", allow_hyphen_values = true)]
    d: Option<String>,
    /// Dilation factor of the polytope.
    #[arg(long, requires = "partition")]
    k: Option<String>,
    /// Polytope JSON file instead of a specification.
    #[arg(long)]
    polytope: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl Common {
    fn spec(&self) -> Result<Option<PolytopeSpec>> {
        if let Some(s) = &self.spec {
            return PolytopeSpec::parse(s).map(Some);
        }
        match &self.partition {
            Some(p) => {
                PolytopeSpec::from_parts(p, self.upset.as_deref(), self.d.as_deref(), self.k.as_deref()).map(Some)
            }
            None => Ok(None),
        }
    }

    fn require_spec(&self) -> Result<PolytopeSpec> {
        self.spec()?.ok_or_else(|| Error::Parse("this command needs --spec or --partition".into()))
    }

    fn polytope(&self) -> Result<(Polytope, Value)> {
        if let Some(spec) = self.spec()? {
            return Ok((spec.build()?, serde_json::to_value(spec.to_json()).expect("serializable")));
        }
        let Some(path) = &self.polytope else {
            return Err(Error::Parse("give --spec, --partition or --polytope".into()));
        };
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let json: PolytopeJson =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok((Polytope::from_json(&json)?, json!({ "file": path.display().to_string() })))
    }
}

/// Output produced by a subcommand: JSON value plus a table rendering.
struct Report {
    json: Value,
    table: String,
    ok: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed { .. }
        | Error::FitVerification(_)
        | Error::PeriodNotOne(_)
        | Error::Unbounded
        | Error::Empty
        | Error::Overflow(_) => 1,
        _ => 2,
    }
}

fn points_table(pts: &[Vec<crate::geometry::Rational>]) -> String {
    pts.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>().join("  ")).collect::<Vec<_>>().join("\n")
}

fn build(common: &Common) -> Result<Report> {
    let (p, source) = common.polytope()?;
    let json = p.to_json()?;
    let mut table = format!("ambient: {}\n", p.ambient().join(" "));
    table += &format!("inequalities ({}):\n", p.inequalities().len());
    for h in p.inequalities() {
        table += &format!("  {:?} <= {}\n", h.normal, h.bound);
    }
    table += &format!("equations ({}):\n", p.equations().len());
    for e in p.equations() {
        table += &format!("  {:?} = {}\n", e.normal, e.bound);
    }
    table += &format!("vertices ({}):\n{}", p.vertices()?.len(), points_table(p.vertices()?));
    Ok(Report { json: json!({ "source": source, "polytope": json }), table, ok: true })
}

fn vertices(common: &Common) -> Result<Report> {
    let (p, _) = common.polytope()?;
    let vs = p.vertices()?;
    let rows: Vec<Vec<String>> = vs.iter().map(|v| v.iter().map(format_rational).collect()).collect();
    let table = format!("{} vertices\n{}", vs.len(), points_table(vs));
    Ok(Report { json: json!({ "ambient": p.ambient(), "vertices": rows }), table, ok: true })
}

fn ehrhart(common: &Common) -> Result<Report> {
    let (p, _) = common.polytope()?;
    let q = fit_quasi_polynomial(&p)?;
    let report = EhrhartReport::new(&q);
    let mut table = format!(
        "degree {}  denominator {}  period {}  collapse {}\n",
        report.degree, report.denominator, report.period, report.collapse
    );
    for r in 0..q.modulus as usize {
        table += &format!("n = {r} mod {}: {}\n", q.modulus, format_polynomial(&q.descending(r)));
    }
    table += &match &report.h_star {
        Some(h) => format!("h* = {h:?}"),
        None => "h* undefined (period > 1)".into(),
    };
    Ok(Report { json: serde_json::to_value(&report).expect("serializable"), table, ok: true })
}

fn period(common: &Common) -> Result<Report> {
    let (p, _) = common.polytope()?;
    let r = period_report_of(&fit_quasi_polynomial(&p)?);
    let table = format!("D={} s={} collapse={}", r.denominator, r.period, r.collapse);
    Ok(Report { json: serde_json::to_value(r).expect("serializable"), table, ok: true })
}

fn hstar(common: &Common) -> Result<Report> {
    let (p, _) = common.polytope()?;
    let h = h_star(&fit_quasi_polynomial(&p)?)?;
    Ok(Report { json: json!({ "h_star": h }), table: format!("{h:?}"), ok: true })
}

fn count(common: &Common, dilate: u64) -> Result<Report> {
    let (p, _) = common.polytope()?;
    let n = count_lattice_points(&p, dilate)?;
    Ok(Report { json: json!({ "dilate": dilate, "count": n }), table: format!("L({dilate}) = {n}"), ok: true })
}

fn mutate_seq(common: &Common, check_dilates: Option<u64>, order: FlagOrder, keep: bool) -> Result<Report> {
    let spec = common.require_spec()?;
    if !spec.upset.is_empty() {
        return Err(Error::InvalidFlag("the sequence starts at the empty up-set; drop --upset".into()));
    }
    let l = &spec.diagram;
    let flag = corner_flag(l, order);
    let options = MutationOptions { keep_polytopes: keep, check_dilates };
    let trace = match &spec.dvector {
        Some(d) => mutation_sequence(l, d, spec.dilate, &flag, &options)?,
        None => mutation_sequence_unrestricted(l, spec.dilate, &flag, &options)?,
    };
    let steps = trace.steps_json();
    let mut table = format!(
        "{spec}\n{:<10} {:<6} {:<8} {:<9} {:<9} {}\n",
        "kind", "corner", "index", "verified", "vertices", "denominator"
    );
    for s in &steps {
        table += &format!(
            "{:<10} {:<6} {:<8} {:<9} {:<9} {}\n",
            s.kind,
            s.corner,
            s.index.map_or("-".into(), |i| i.to_string()),
            s.verified,
            s.vertex_count,
            s.denominator
        );
    }
    if let Some(c) = &trace.counts {
        table += &format!("lattice counts 0..={}: {:?} (equal at every step)\n", c.len() - 1, c);
    }
    let ok = trace.all_verified();
    table += if ok { "all steps verified" } else { "verification FAILED" };
    let mut json = json!({
        "spec": spec.to_json(),
        "trace": steps,
        "blocks": trace.blocks,
        "counts": trace.counts,
        "verified": ok,
    });
    if keep {
        let polys: Vec<PolytopeJson> = trace.polytopes().iter().map(|p| p.to_json()).collect::<Result<_>>()?;
        json["polytopes"] = serde_json::to_value(polys).expect("serializable");
    }
    Ok(Report { json, table, ok })
}

fn delete_diag(common: &Common, ell: i64, check_dilates: Option<u64>) -> Result<Report> {
    let spec = common.require_spec()?;
    let d = spec.dvector.as_ref().ok_or_else(|| Error::Parse("delete-diagonal needs --d".into()))?;
    let cut = delete_diagonal(&spec.diagram, d, ell)?;
    let parts: Vec<String> = cut.diagram.parts().iter().map(|p| p.to_string()).collect();
    let mut table = format!("partition={} d={} k={}", parts.join(","), cut.dvector, spec.dilate);
    let mut json = json!({
        "partition": cut.diagram.parts(),
        "d": cut.dvector.values(),
        "k": spec.dilate,
        "partner": cut.partner,
    });
    let mut ok = true;
    if let Some(n) = check_dilates {
        let big = spec.build()?;
        let small = crate::posetpoly::restricted_chain_order(&cut.diagram, &spec.upset, &cut.dvector, spec.dilate)?;
        ok = ehrhart_equal(&big, &small, n)?;
        json["counts"] = json!(lattice_counts(&small, n)?);
        json["ehrhart_equal"] = json!(ok);
        table += &format!("\nEhrhart-equal for dilates 0..={n}: {ok}");
    }
    Ok(Report { json, table, ok })
}

fn verify_examples(example: Option<&str>, all: bool) -> Result<Report> {
    let ids: Vec<&str> = if all { golden::EXAMPLE_IDS.to_vec() } else { vec![example.expect("clap enforces one")] };
    let mut reports = Vec::new();
    let mut table = String::new();
    for id in ids {
        let r = golden::verify_example(id)?;
        table += &format!("{} example {}\n", if r.pass { "PASS" } else { "FAIL" }, r.id);
        for c in &r.checks {
            if c.pass {
                table += &format!("  ok   {}: {}\n", c.name, c.got);
            } else {
                table += &format!("  DIFF {}\n    expected: {}\n    got:      {}\n", c.name, c.expected, c.got);
            }
        }
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.pass);
    Ok(Report { json: serde_json::to_value(&reports).expect("serializable"), table: table.trim_end().into(), ok })
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
        Format::Table => report.table.clone(),
    };
    match out {
        Some(path) => fs::write(path, text + "\n"),
        None => writeln!(stdout, "{text}"),
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    crate::configure_threads();
    let (result, format, out) = match &cli.command {
        Command::Build(c) => (build(c), c.format, c.out.clone()),
        Command::Vertices(c) => (vertices(c), c.format, c.out.clone()),
        Command::Ehrhart(c) => (ehrhart(c), c.format, c.out.clone()),
        Command::Period(c) => (period(c), c.format, c.out.clone()),
        Command::Hstar(c) => (hstar(c), c.format, c.out.clone()),
        Command::Count { common, dilate } => (count(common, *dilate), common.format, common.out.clone()),
        Command::MutateSeq { common, check_dilates, flag_order, keep_polytopes } => {
            (mutate_seq(common, *check_dilates, *flag_order, *keep_polytopes), common.format, common.out.clone())
        }
        Command::DeleteDiagonal { common, ell, check_dilates } => {
            (delete_diag(common, *ell, *check_dilates), common.format, common.out.clone())
        }
        Command::VerifyExamples { example, all, format, out } => {
            (verify_examples(example.as_deref(), *all), *format, out.clone())
        }
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, format, out.as_ref(), stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            match format {
                Format::Json => {
                    let msg = e.to_string();
                    let _ = writeln!(
                        stderr,
                        "{}",
                        serde_json::to_string(&ErrorJson { error: &msg }).expect("serializable")
                    );
                }
                Format::Table => {
                    let _ = writeln!(stderr, "error: {e}");
                }
            }
            exit_code(&e)
        }
    }
}
