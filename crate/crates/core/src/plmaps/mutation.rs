//! Applying tropical maps to polytopes with an exact convexity certificate,
//! and running the full sequence from the order side to the chain side.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::maps::{i_max, phi_step, psi_map, TropicalMap, UnimodularMap};
use crate::ehrhart::lattice_counts;
use crate::error::{Error, Result};
use crate::geometry::{dot_int, format_rational, hull, HalfSpace, Point, Polytope};
use crate::poset::{flag_steps, Cell, DVector, UpSet, YoungDiagram};
use crate::posetpoly::{chain_order_polytope, restricted_chain_order, restriction_hyperplanes, HyperplaneFamily};

/// Outcome of [`mutate`]. When `valid` is false, `witness` is a point of
/// the hull that is not in the image of the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub valid: bool,
    pub regions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

fn region(m: &TropicalMap, v: &[i64]) -> Vec<HalfSpace> {
    m.f.iter()
        .filter(|f| f.as_slice() != v)
        .map(|f| HalfSpace::new(v.iter().zip(f).map(|(a, b)| a - b).collect(), 0).expect("distinct vertices"))
        .collect()
}

/// Image of `p` under `m`. On each region `U_v` where the vertex `v` of `F`
/// attains the minimum the map is linear, so the image of `p ∩ U_v` is the
/// hull of its mapped vertices. The map preserves every `x·f`, so it sends
/// each region into itself; the image is convex exactly when the hull `Q`
/// of all pieces satisfies `Q ∩ U_v = φ(p ∩ U_v)` for every `v`.
pub fn mutate(p: &Polytope, m: &TropicalMap) -> Result<(Polytope, Certificate)> {
    if p.ambient_dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), got: m.dim() });
    }
    if p.is_empty()? {
        return Ok((p.clone(), Certificate { valid: true, regions: 0, witness: None }));
    }
    if m.is_affine() {
        let image = p.map_vertices(|x| m.linear_piece(&m.f[0], x))?;
        return Ok((image, Certificate { valid: true, regions: 1, witness: None }));
    }
    let mut pieces: Vec<(Vec<HalfSpace>, Vec<Point>)> = Vec::new();
    for v in &m.f {
        let cut = region(m, v);
        let piece = p.restrict(&cut)?;
        let images: Vec<Point> = piece.vertices()?.iter().map(|x| m.linear_piece(v, x)).collect();
        pieces.push((cut, images));
    }
    let all: Vec<Point> = pieces.iter().flat_map(|(_, imgs)| imgs.iter().cloned()).collect();
    let q = hull(p.ambient().to_vec(), &all)?;
    let mut regions = 0;
    for (cut, images) in &pieces {
        let restricted = q.restrict(cut)?;
        let expected =
            if images.is_empty() { Polytope::empty(p.ambient().to_vec()) } else { hull(p.ambient().to_vec(), images)? };
        if !images.is_empty() {
            regions += 1;
        }
        if !restricted.equals(&expected)? {
            let mut witness = None;
            for x in restricted.vertices()? {
                if !expected.contains(x)? || images.is_empty() {
                    witness = Some(x.iter().map(format_rational).collect());
                    break;
                }
            }
            return Ok((q, Certificate { valid: false, regions, witness }));
        }
    }
    Ok((q, Certificate { valid: true, regions, witness: None }))
}

/// Whether `m` sends `p ∩ {a·x = b}` into the same hyperplane. On the region
/// of `v` the map changes `a·x` by `-(x·v)(a·w)`, so either `a·w = 0` or
/// `x·v` must vanish on every vertex of `p ∩ U_v`.
pub fn fixes_hyperplane(p: &Polytope, m: &TropicalMap, a: &[i64]) -> Result<bool> {
    if a.iter().zip(&m.w).map(|(x, y)| x * y).sum::<i64>() == 0 {
        return Ok(true);
    }
    for v in &m.f {
        let piece = p.restrict(&region(m, v))?;
        if piece.vertices()?.iter().any(|x| !dot_int(v, x).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image of `p` under a unimodular map.
pub fn apply_unimodular(p: &Polytope, m: &UnimodularMap) -> Result<Polytope> {
    if p.ambient_dim() != m.matrix.len() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), got: m.matrix.len() });
    }
    p.map_vertices(|x| m.apply(x).expect("dimension checked"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapStep {
    Tropical(TropicalMap),
    Unimodular(UnimodularMap),
}

/// One map applied during a sequence.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub corner: Cell,
    /// `i` for `φ_i`, `None` for `ψ`.
    pub index: Option<usize>,
    pub map: MapStep,
    pub certificate: Certificate,
    /// Hyperplane check: `φ_i` fixes every `H_ℓ^C`, `ψ` sends `H_ℓ^C` to
    /// `H_ℓ^{C ∪ r}`. `None` for unrestricted sequences.
    pub hyperplanes_invariant: Option<bool>,
    pub vertex_count: usize,
    pub denominator: u64,
    /// Whether lattice counts up to the requested dilate match the start.
    pub counts_equal: Option<bool>,
    pub output: Option<Polytope>,
}

/// The state after a full `χ_r` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRecord {
    pub corner: String,
    pub upset: String,
    pub matches_construction: bool,
    pub vertex_count: usize,
    pub denominator: u64,
}

#[derive(Clone, Debug)]
pub struct MutationTrace {
    pub start: Polytope,
    pub end: Polytope,
    pub steps: Vec<TraceStep>,
    pub blocks: Vec<BlockRecord>,
    /// Counts `L(0), …, L(N)` of the start when dilate checks were requested.
    pub counts: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepJson {
    pub kind: &'static str,
    pub corner: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<i64>>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplanes_invariant: Option<bool>,
    pub vertex_count: usize,
    pub denominator: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts_equal: Option<bool>,
}

impl TraceStep {
    pub fn to_json(&self) -> StepJson {
        let (kind, w, f, matrix) = match &self.map {
            MapStep::Tropical(m) => ("tropical", Some(m.w.clone()), Some(m.f.clone()), None),
            MapStep::Unimodular(m) => ("unimodular", None, None, Some(m.matrix.clone())),
        };
        StepJson {
            kind,
            corner: self.corner.to_string(),
            index: self.index,
            w,
            f,
            matrix,
            verified: self.certificate.valid && self.hyperplanes_invariant != Some(false),
            hyperplanes_invariant: self.hyperplanes_invariant,
            vertex_count: self.vertex_count,
            denominator: self.denominator,
            counts_equal: self.counts_equal,
        }
    }
}

impl MutationTrace {
    pub fn steps_json(&self) -> Vec<StepJson> {
        self.steps.iter().map(TraceStep::to_json).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.steps.iter().all(|s| s.to_json().verified && s.counts_equal != Some(false))
            && self.blocks.iter().all(|b| b.matches_construction)
    }

    /// The start followed by every intermediate output, when kept.
    pub fn polytopes(&self) -> Vec<&Polytope> {
        std::iter::once(&self.start).chain(self.steps.iter().filter_map(|s| s.output.as_ref())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct MutationOptions {
    pub keep_polytopes: bool,
    /// Compare lattice counts of every intermediate with the start for
    /// dilates `0..=N`.
    pub check_dilates: Option<u64>,
}

impl Default for MutationOptions {
    fn default() -> Self {
        MutationOptions { keep_polytopes: true, check_dilates: None }
    }
}

fn small_denominator(p: &Polytope) -> Result<u64> {
    let d = p.denominator()?;
    d.to_u64().ok_or_else(|| Error::Overflow(format!("denominator {d}")))
}

fn fail(step: usize, corner: Cell, what: &str, reason: String) -> Error {
    Error::VerificationFailed { step: format!("step {step} ({what} at {corner})"), reason }
}

fn psi_invariant(psi: &UnimodularMap, before: &HyperplaneFamily, after: &HyperplaneFamily) -> bool {
    before
        .hyperplanes
        .iter()
        .zip(&after.hyperplanes)
        .all(|(b, a)| a.ell == b.ell && a.rhs == b.rhs && psi.pull_back_row(&a.coefficients) == b.coefficients)
}

/// Runs `χ_r = ψ ∘ φ_{i_max} ∘ … ∘ φ_0` for every step of `flag`, starting
/// from the restricted order polytope `O(λ)^k_d`. Each tropical step must
/// be certified convex and keep the hyperplanes, and after each block the
/// current polytope must equal `O_{C_i}(λ)^k_d` built from its definition.
pub fn mutation_sequence(
    diagram: &YoungDiagram,
    d: &DVector,
    k: i64,
    flag: &[UpSet],
    options: &MutationOptions,
) -> Result<MutationTrace> {
    run(diagram, Some(d), k, flag, options)
}

/// The same sequence on the unrestricted polytopes `k · O_C(λ)`.
pub fn mutation_sequence_unrestricted(
    diagram: &YoungDiagram,
    k: i64,
    flag: &[UpSet],
    options: &MutationOptions,
) -> Result<MutationTrace> {
    run(diagram, None, k, flag, options)
}

fn construction(diagram: &YoungDiagram, d: Option<&DVector>, k: i64, upset: &UpSet) -> Result<Polytope> {
    match d {
        Some(d) => restricted_chain_order(diagram, upset, d, k),
        None => chain_order_polytope(diagram, upset)?.dilate(k),
    }
}

fn run(
    diagram: &YoungDiagram,
    d: Option<&DVector>,
    k: i64,
    flag: &[UpSet],
    options: &MutationOptions,
) -> Result<MutationTrace> {
    let corners = flag_steps(diagram, flag)?;
    let start = construction(diagram, d, k, &flag[0])?;
    if start.is_empty()? {
        return Err(Error::Empty);
    }
    let counts = options.check_dilates.map(|n| lattice_counts(&start, n)).transpose()?;
    let compare_counts = |p: &Polytope| -> Result<Option<bool>> {
        match (&counts, options.check_dilates) {
            (Some(c), Some(n)) => Ok(Some(&lattice_counts(p, n)? == c)),
            _ => Ok(None),
        }
    };

    let mut current = start.clone();
    let mut steps = Vec::new();
    let mut blocks = Vec::new();
    for (b, &r) in corners.iter().enumerate() {
        let (before, after) = (&flag[b], &flag[b + 1]);
        let family = d.map(|d| restriction_hyperplanes(diagram, before, d)).transpose()?;
        for i in 0..=i_max(r) {
            let m = phi_step(diagram, r, i)?;
            let invariant = match &family {
                Some(fam) => {
                    let mut all = true;
                    for h in &fam.hyperplanes {
                        all &= fixes_hyperplane(&current, &m, &h.coefficients)?;
                    }
                    Some(all)
                }
                None => None,
            };
            let (next, certificate) = mutate(&current, &m)?;
            let n = steps.len();
            if invariant == Some(false) {
                return Err(fail(n, r, &format!("phi_{i}"), "a restriction hyperplane is not fixed".into()));
            }
            if !certificate.valid {
                return Err(fail(
                    n,
                    r,
                    &format!("phi_{i}"),
                    format!("image is not convex, witness {:?}", certificate.witness.clone().unwrap_or_default()),
                ));
            }
            let counts_equal = compare_counts(&next)?;
            if counts_equal == Some(false) {
                return Err(fail(n, r, &format!("phi_{i}"), "lattice counts changed".into()));
            }
            steps.push(TraceStep {
                corner: r,
                index: Some(i),
                map: MapStep::Tropical(m),
                certificate,
                hyperplanes_invariant: invariant,
                vertex_count: next.vertices()?.len(),
                denominator: small_denominator(&next)?,
                counts_equal,
                output: options.keep_polytopes.then(|| next.clone()),
            });
            current = next;
        }

        let psi = psi_map(diagram, r)?;
        let n = steps.len();
        let invariant = match d {
            Some(d) => {
                let next_family = restriction_hyperplanes(diagram, after, d)?;
                Some(psi_invariant(&psi, family.as_ref().expect("restricted"), &next_family))
            }
            None => None,
        };
        if invariant == Some(false) {
            return Err(fail(n, r, "psi", "hyperplanes are not carried to the next family".into()));
        }
        let next = apply_unimodular(&current, &psi)?;
        let counts_equal = compare_counts(&next)?;
        if counts_equal == Some(false) {
            return Err(fail(n, r, "psi", "lattice counts changed".into()));
        }
        let expected = construction(diagram, d, k, after)?;
        if !next.equals(&expected)? {
            return Err(fail(
                n,
                r,
                "psi",
                format!(
                    "image has {} vertices, the construction for C = {} has {}",
                    next.vertices()?.len(),
                    after.to_text(diagram),
                    expected.vertices()?.len()
                ),
            ));
        }
        let vertex_count = next.vertices()?.len();
        let denominator = small_denominator(&next)?;
        steps.push(TraceStep {
            corner: r,
            index: None,
            map: MapStep::Unimodular(psi),
            certificate: Certificate { valid: true, regions: 1, witness: None },
            hyperplanes_invariant: invariant,
            vertex_count,
            denominator,
            counts_equal,
            output: options.keep_polytopes.then(|| next.clone()),
        });
        blocks.push(BlockRecord {
            corner: r.to_string(),
            upset: after.to_text(diagram),
            matches_construction: true,
            vertex_count,
            denominator,
        });
        current = next;
    }
    Ok(MutationTrace { start, end: current, steps, blocks, counts })
}
