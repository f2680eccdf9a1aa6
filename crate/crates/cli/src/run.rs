//! Dispatch from interchange documents to the library checks and
//! constructions.  Everything here is pure: callers hand in parsed JSON
//! values and get verdicts or fresh documents back, so the command layer
//! only does file IO and exit codes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use semikan::colimits::{pullback, pushout};
use semikan::complex::terminal_truncated;
use semikan::error::{Error, Result};
use semikan::exponential::marked_exponential;
use semikan::interchange::{
    complex_document, map_document, marked_document, outer_document, CategoryDocument,
    ComplexDocument, MapDocument,
};
use semikan::join::{join, marked_join, Join, JoinCell};
use semikan::lifting::{
    bounded_factorization, is_complete_semi_segal, is_inner_fibration, is_inner_kan, is_kan,
    is_left_fibration, is_marked_inner_fibration, is_marked_inner_kan, is_marked_left_fibration,
    is_marked_right_fibration, is_right_fibration, is_trivial_fibration, Family, LiftFailure,
    LiftReport, MarkedInnerKanReport,
};
use semikan::maps::SSetMap;
use semikan::marking::{MarkedMap, MarkedSSet};
use semikan::product::marked_geometric_product;
use semikan::simplicial::free_simplicial;
use semikan::slice::{find_terminal_extension, hom_left, slice_over, slice_under, Slice,
    TerminalSearch};
use semikan::standard_simplex;
use semikan::unitality::{
    check_left_fib_over_point, check_outer_degeneracies, check_two_out_of_six, equivalences_horn,
    fully_marked, is_quasi_unital, is_quasi_unital_map, natural_marking, verify_theorem_a,
    verify_theorem_c, EdgeStatus, EquivalenceEvidence, OuterDegeneracyData, QuasiUnitalReport,
    TheoremAReport, TheoremCReport, TwoOutOfSixReport,
};
use semikan::SemiSimplicialSet;

use crate::corpus::{nerve_document, CorpusEntry};
use crate::verdict::{Verdict, Witness};

/// How many failing squares a check reports: stop at the first or list all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    First,
    All,
}

/// Which document shape a JSON value carries, decided by its fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Complex,
    Map,
    Category,
}

pub fn classify(value: &Value) -> DocumentKind {
    match value.as_object() {
        Some(m) if m.contains_key("components") => DocumentKind::Map,
        Some(m) if m.contains_key("objects") && m.contains_key("morphisms") => {
            DocumentKind::Category
        }
        _ => DocumentKind::Complex,
    }
}

fn complex_doc(value: &Value) -> Result<ComplexDocument> {
    serde_json::from_value(value.clone())
        .map_err(|e| Error::Document(format!("malformed complex document: {e}")))
}

fn map_doc(value: &Value) -> Result<MapDocument> {
    serde_json::from_value(value.clone())
        .map_err(|e| Error::Document(format!("malformed map document: {e}")))
}

fn category_doc(value: &Value) -> Result<CategoryDocument> {
    serde_json::from_value(value.clone())
        .map_err(|e| Error::Document(format!("malformed category document: {e}")))
}

fn to_value<T: Serialize>(doc: T) -> Result<Value> {
    serde_json::to_value(doc).map_err(|e| Error::Document(format!("serialization failed: {e}")))
}

/// Resolve a map document with embedded endpoints into a marking-aware map.
fn resolve_marked_map(doc: &MapDocument) -> Result<MarkedMap> {
    let source_doc = doc
        .source
        .as_ref()
        .ok_or_else(|| Error::Document("map document needs an embedded source".into()))?;
    let target_doc = doc
        .target
        .as_ref()
        .ok_or_else(|| Error::Document("map document needs an embedded target".into()))?;
    let source = source_doc.marked()?;
    let target = target_doc.marked()?;
    let f = doc.map(source.carrier(), target.carrier())?;
    MarkedMap::new(source, target, f)
}

// ---------------------------------------------------------------------------
// check

/// Decide `property` of the document at dimension bound `dim`.
pub fn check_value(value: &Value, property: &str, dim: usize, mode: WitnessMode) -> Result<Verdict> {
    match classify(value) {
        DocumentKind::Complex => check_complex(&complex_doc(value)?, property, dim, mode),
        DocumentKind::Map => check_map(&map_doc(value)?, property, dim, mode),
        DocumentKind::Category => Err(Error::Document(
            "check expects a complex or map document, not a category".into(),
        )),
    }
}

fn check_complex(
    doc: &ComplexDocument,
    property: &str,
    dim: usize,
    mode: WitnessMode,
) -> Result<Verdict> {
    let marked = doc.marked()?;
    let x = Arc::clone(marked.carrier());
    let start = Instant::now();
    let (holds, witnesses) = match property {
        "kan" => lift_outcome(is_kan(&marked, dim)?, mode),
        "inner-kan" => lift_outcome(is_inner_kan(&marked, dim)?, mode),
        "complete-semi-segal" => lift_outcome(is_complete_semi_segal(&marked, dim)?, mode),
        "marked-inner-kan" => {
            marked_inner_kan_outcome(is_marked_inner_kan(&marked, dim)?, &x, mode)
        }
        "quasi-unital" => quasi_unital_outcome(&is_quasi_unital(&x, dim)?, &x),
        "equivalences" => equivalences_outcome(&x, doc.marking_indices()?, dim)?,
        "two-out-of-six" => {
            two_six_outcome(check_two_out_of_six(&x, &doc.marking_indices()?), &x)
        }
        "theorem-a" => theorem_a_outcome(&verify_theorem_a(&x, dim)?, &x, mode),
        "theorem-c" => {
            let d = doc.outer_data()?.ok_or_else(|| {
                Error::Document("theorem-c needs outer degeneracy tables in the document".into())
            })?;
            theorem_c_outcome(&verify_theorem_c(&x, &d, dim)?, &x)
        }
        _ => {
            return Err(Error::Document(format!(
                "unknown property {property:?} for a complex document"
            )))
        }
    };
    Ok(Verdict {
        property: property.to_string(),
        dim,
        holds,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn check_map(doc: &MapDocument, property: &str, dim: usize, mode: WitnessMode) -> Result<Verdict> {
    let marked = resolve_marked_map(doc)?;
    let start = Instant::now();
    let (holds, witnesses) = match property {
        "trivial-fibration" => lift_outcome(is_trivial_fibration(&marked, dim)?, mode),
        "inner-fibration" => lift_outcome(is_inner_fibration(&marked, dim)?, mode),
        "left-fibration" => lift_outcome(is_left_fibration(&marked, dim)?, mode),
        "right-fibration" => lift_outcome(is_right_fibration(&marked, dim)?, mode),
        "marked-inner-fibration" => lift_outcome(is_marked_inner_fibration(&marked, dim)?, mode),
        "marked-left-fibration" => lift_outcome(is_marked_left_fibration(&marked, dim)?, mode),
        "marked-right-fibration" => lift_outcome(is_marked_right_fibration(&marked, dim)?, mode),
        "point-fibration" => {
            let r = check_left_fib_over_point(&marked, dim)?;
            let mut witnesses = lift_witnesses(&r.fibration, mode);
            let source = marked.source().carrier();
            for &e in &r.unmarked_edges {
                witnesses.push(Witness::new("unmarked-edge").cell("edge", source.id(1, e)));
            }
            if let Some(kan) = &r.kan {
                witnesses.extend(lift_witnesses(kan, mode));
            }
            let holds = r.fibration.holds()
                && r.unmarked_edges.is_empty()
                && r.kan.as_ref().is_some_and(LiftReport::holds);
            (holds, witnesses)
        }
        "quasi-unital" => {
            let r = is_quasi_unital_map(marked.underlying(), dim)?;
            let f = marked.underlying();
            let witnesses = r
                .broken
                .iter()
                .map(|&v| {
                    Witness::new("broken-unit")
                        .cell("vertex", f.source().id(0, v))
                        .cell("image", f.target().id(0, f.apply(0, v)))
                        .note("the image of the chosen unit is not a unit")
                })
                .collect();
            (r.holds(), witnesses)
        }
        _ => {
            return Err(Error::Document(format!(
                "unknown property {property:?} for a map document"
            )))
        }
    };
    Ok(Verdict {
        property: property.to_string(),
        dim,
        holds,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// witness builders

fn lift_outcome(report: LiftReport, mode: WitnessMode) -> (bool, Vec<Witness>) {
    (report.holds(), lift_witnesses(&report, mode))
}

fn lift_witnesses(report: &LiftReport, mode: WitnessMode) -> Vec<Witness> {
    let mut out = Vec::new();
    for failure in &report.failures {
        out.push(lift_failure_witness(failure));
        if mode == WitnessMode::First {
            break;
        }
    }
    out
}

/// A failing square as id references: each cell of the generator's source is
/// keyed by its own id and points at its image in the checked document, so
/// the square can be rebuilt and re-solved from the verdict alone.
fn lift_failure_witness(failure: &LiftFailure) -> Witness {
    let mut w = Witness::new(failure.generator.clone())
        .note(format!("{} fillers", failure.fillers));
    let top = &failure.top;
    let (horn, target) = (top.source(), top.target());
    for n in 0..=horn.dim_bound() {
        for s in 0..horn.level_size(n) {
            w = w.cell(horn.id(n, s), target.id(n, top.apply(n, s)));
        }
    }
    if let Some(bottom) = &failure.bottom {
        let (simplex, base) = (bottom.source(), bottom.target());
        for n in 0..=simplex.dim_bound() {
            for s in 0..simplex.level_size(n) {
                w = w.cell(
                    format!("bottom:{}", simplex.id(n, s)),
                    base.id(n, bottom.apply(n, s)),
                );
            }
        }
    }
    w
}

fn marked_inner_kan_outcome(
    report: MarkedInnerKanReport,
    x: &SemiSimplicialSet,
    mode: WitnessMode,
) -> (bool, Vec<Witness>) {
    let mut witnesses = lift_witnesses(&report.lifting, mode);
    for &e in &report.non_equivalence_marked {
        witnesses.push(Witness::new("marked-non-equivalence").cell("edge", x.id(1, e)));
    }
    witnesses.extend(two_six_witnesses(&report.two_out_of_six, x));
    (report.holds(), witnesses)
}

fn two_six_witnesses(report: &TwoOutOfSixReport, x: &SemiSimplicialSet) -> Vec<Witness> {
    let Some(v) = &report.violation else {
        return Vec::new();
    };
    let mut w = Witness::new("two-out-of-six-violation")
        .cell("simplex", x.id(3, v.simplex))
        .note(format!("{} composite patterns triggered", report.triggered));
    for (k, &e) in v.unmarked.iter().enumerate() {
        w = w.cell(format!("unmarked.{k}"), x.id(1, e));
    }
    vec![w]
}

fn two_six_outcome(report: TwoOutOfSixReport, x: &SemiSimplicialSet) -> (bool, Vec<Witness>) {
    let witnesses = if report.holds() {
        vec![Witness::new("closure").note(format!(
            "{} composite patterns checked",
            report.triggered
        ))]
    } else {
        two_six_witnesses(&report, x)
    };
    (report.holds(), witnesses)
}

fn quasi_unital_outcome(
    report: &QuasiUnitalReport,
    x: &SemiSimplicialSet,
) -> (bool, Vec<Witness>) {
    let mut witnesses = Vec::new();
    for (vertex, status) in report.units.iter().enumerate() {
        match status {
            None => witnesses.push(Witness::new("missing-unit").cell("vertex", x.id(0, vertex))),
            Some(unit) => witnesses.push(unit_witness(vertex, unit, x)),
        }
    }
    (report.holds(), witnesses)
}

fn unit_witness(vertex: usize, unit: &EdgeStatus, x: &SemiSimplicialSet) -> Witness {
    let mut w = Witness::new("unit")
        .cell("vertex", x.id(0, vertex))
        .cell("edge", x.id(1, unit.edge));
    if let Some(h) = unit.idempotent {
        w = w.cell("idempotent", x.id(2, h));
    }
    match &unit.equivalence {
        Some(EquivalenceEvidence::Horns { dim }) => {
            w = w.note(format!("equivalence by horn fillers through dimension {dim}"));
        }
        Some(EquivalenceEvidence::Witness { inverse, cell }) => {
            w = w
                .cell("inverse", x.id(1, *inverse))
                .cell("witness", x.id(3, *cell));
        }
        None => {
            w = w.note("not an equivalence");
        }
    }
    w
}

fn equivalences_outcome(
    x: &Arc<SemiSimplicialSet>,
    marked: BTreeSet<usize>,
    dim: usize,
) -> Result<(bool, Vec<Witness>)> {
    let equivalences = equivalences_horn(x, dim)?;
    let mut witnesses = Vec::new();
    let mut holds = true;
    for &e in &marked {
        if !equivalences.contains(&e) {
            holds = false;
            witnesses.push(Witness::new("marked-non-equivalence").cell("edge", x.id(1, e)));
        }
    }
    for &e in &equivalences {
        witnesses.push(Witness::new("equivalence").cell("edge", x.id(1, e)));
    }
    Ok((holds, witnesses))
}

fn theorem_a_outcome(
    report: &TheoremAReport,
    x: &SemiSimplicialSet,
    mode: WitnessMode,
) -> (bool, Vec<Witness>) {
    let side = |name: &str, holds: bool| {
        Witness::new(name).note(if holds { "holds" } else { "fails" })
    };
    let mut witnesses = vec![
        side("quasi-unital-side", report.quasi_unital.holds()),
        side("marked-inner-kan-side", report.marked_inner_kan.holds()),
    ];
    for v in report.quasi_unital.missing() {
        witnesses.push(Witness::new("missing-unit").cell("vertex", x.id(0, v)));
    }
    witnesses.extend(lift_witnesses(&report.marked_inner_kan.lifting, mode));
    (report.agree, witnesses)
}

fn theorem_c_outcome(report: &TheoremCReport, x: &SemiSimplicialSet) -> (bool, Vec<Witness>) {
    let mut witnesses = Vec::new();
    for v in &report.data.violations {
        witnesses.push(
            Witness::new("degeneracy-identity")
                .cell("simplex", x.id(v.dim, v.simplex))
                .note(v.identity.clone()),
        );
    }
    for v in &report.vertices {
        let mut w = Witness::new("unit")
            .cell("vertex", x.id(0, v.vertex))
            .cell("edge", x.id(1, v.unit));
        if let Some(h) = v.idempotent_witness {
            w = w.cell("idempotent", x.id(2, h));
        }
        w = w.note(if v.is_equivalence {
            "idempotent equivalence"
        } else {
            "not an equivalence"
        });
        witnesses.push(w);
    }
    (report.holds(), witnesses)
}

// ---------------------------------------------------------------------------
// validate

#[derive(Debug, Serialize)]
pub struct ValidateOutcome {
    pub kind: String,
    pub valid: bool,
    /// Human-readable identity and compatibility failures.  Structural
    /// problems (unknown ids, missing fields) error out before this level.
    pub errors: Vec<String>,
}

impl ValidateOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.valid {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{}: {}",
            self.kind,
            if self.valid { "valid" } else { "invalid" }
        );
        for e in &self.errors {
            out.push_str(&format!("\n  {e}"));
        }
        out
    }
}

/// Parse a document and check its internal laws.  Structural failures come
/// back as errors; law violations come back as a report.
pub fn validate_value(value: &Value) -> Result<ValidateOutcome> {
    match classify(value) {
        DocumentKind::Complex => validate_complex(&complex_doc(value)?),
        DocumentKind::Map => validate_map(&map_doc(value)?),
        DocumentKind::Category => {
            let doc = category_doc(value)?;
            let mut errors = Vec::new();
            match doc.category() {
                Ok(_) => {}
                Err(Error::Category(msg)) => errors.push(format!("category laws fail: {msg}")),
                Err(e) => return Err(e),
            }
            Ok(ValidateOutcome {
                kind: "category".into(),
                valid: errors.is_empty(),
                errors,
            })
        }
    }
}

fn validate_complex(doc: &ComplexDocument) -> Result<ValidateOutcome> {
    let x = doc.complex_unchecked()?;
    let mut errors = Vec::new();
    for v in x.validate().violations {
        errors.push(format!(
            "on {}-simplex {}: d{}(d{} _) = {} but d{}(d{} _) = {}",
            v.dim,
            x.id(v.dim, v.simplex),
            v.i,
            v.j,
            x.id(v.dim - 2, v.lhs),
            v.j - 1,
            v.i,
            x.id(v.dim - 2, v.rhs),
        ));
    }
    doc.marking_indices()?;
    doc.outer_data()?;
    if doc.augmented == Some(true) && errors.is_empty() {
        match doc.augmented() {
            Ok(_) => {}
            Err(e @ Error::UnknownId { .. }) => return Err(e),
            Err(e) => errors.push(format!("augmentation fails: {e}")),
        }
    }
    Ok(ValidateOutcome {
        kind: "complex".into(),
        valid: errors.is_empty(),
        errors,
    })
}

fn validate_map(doc: &MapDocument) -> Result<ValidateOutcome> {
    let mut errors = Vec::new();
    let source_doc = doc
        .source
        .as_ref()
        .ok_or_else(|| Error::Document("map document needs an embedded source".into()))?;
    let target_doc = doc
        .target
        .as_ref()
        .ok_or_else(|| Error::Document("map document needs an embedded target".into()))?;
    for (role, side) in [("source", source_doc), ("target", target_doc)] {
        if let Err(e) = side.complex() {
            match e {
                Error::IdentityViolations { .. } => {
                    errors.push(format!("{role} complex is invalid: {e}"))
                }
                other => return Err(other),
            }
        }
    }
    if errors.is_empty() {
        let source = source_doc.marked()?;
        let target = target_doc.marked()?;
        match doc.map(source.carrier(), target.carrier()) {
            Ok(f) => {
                if let Err(e) = MarkedMap::new(source, target, f) {
                    errors.push(format!("marking is not preserved: {e}"));
                }
            }
            Err(e @ Error::UnknownId { .. }) | Err(e @ Error::ComponentMismatch { .. }) => {
                return Err(e)
            }
            Err(e) => errors.push(format!("components do not commute with faces: {e}")),
        }
    }
    Ok(ValidateOutcome {
        kind: "map".into(),
        valid: errors.is_empty(),
        errors,
    })
}

// ---------------------------------------------------------------------------
// construct

#[derive(Debug, Default)]
pub struct ConstructOptions {
    pub dim: usize,
    pub vertex: Option<String>,
    pub target: Option<String>,
}

/// Build a new document from existing ones.  The output is a complex
/// document (with provenance strings tracing each cell to its origin) or a
/// map document, depending on the operation.
pub fn construct(op: &str, inputs: &[Value], opts: &ConstructOptions) -> Result<Value> {
    match op {
        "join" => {
            arity(inputs, 2, op)?;
            let a = complex_doc(&inputs[0])?.marked()?;
            let b = complex_doc(&inputs[1])?.marked()?;
            let j = marked_join(&a, &b);
            let mut out = if j.marked.marked().is_empty() {
                complex_document(&j.join.complex)
            } else {
                marked_document(&j.marked)
            };
            out.provenance = Some(join_provenance(&j.join, a.carrier(), b.carrier()));
            to_value(out)
        }
        "product" => {
            arity(inputs, 2, op)?;
            let a = complex_doc(&inputs[0])?.marked()?;
            let b = complex_doc(&inputs[1])?.marked()?;
            let p = marked_geometric_product(&a, &b);
            let mut out = if p.marked.marked().is_empty() {
                complex_document(&p.product.complex)
            } else {
                marked_document(&p.marked)
            };
            let mut provenance = BTreeMap::new();
            let x = &p.product.complex;
            for n in 0..=x.dim_bound() {
                let mut level = BTreeMap::new();
                for idx in 0..x.level_size(n) {
                    let cell = p.product.cell(n, idx);
                    let tracks_a: String =
                        cell.a.iter().map(ToString::to_string).collect();
                    let tracks_b: String =
                        cell.b.iter().map(ToString::to_string).collect();
                    level.insert(
                        x.id(n, idx).to_string(),
                        format!(
                            "pair:{} x {}; tracks {} / {}",
                            a.carrier().id(cell.left_dim, cell.left),
                            b.carrier().id(cell.right_dim, cell.right),
                            tracks_a,
                            tracks_b
                        ),
                    );
                }
                if !level.is_empty() {
                    provenance.insert(n as i64, level);
                }
            }
            out.provenance = Some(provenance);
            to_value(out)
        }
        "exp" => {
            arity(inputs, 2, op)?;
            let x = complex_doc(&inputs[0])?.marked()?;
            let j = complex_doc(&inputs[1])?.marked()?;
            let e = marked_exponential(&x, &j, opts.dim)?;
            let mut out = if e.marked.marked().is_empty() {
                complex_document(&e.exponential.complex)
            } else {
                marked_document(&e.marked)
            };
            let mut provenance = BTreeMap::new();
            let c = &e.exponential.complex;
            for n in 0..=c.dim_bound() {
                let mut level = BTreeMap::new();
                for idx in 0..c.level_size(n) {
                    let w = &e.exponential.witnesses[n][idx];
                    let images: Vec<String> = (0..w.source().level_size(0))
                        .map(|s| w.target().id(0, w.apply(0, s)).to_string())
                        .collect();
                    level.insert(
                        c.id(n, idx).to_string(),
                        format!("vertex-images:{}", images.join(",")),
                    );
                }
                if !level.is_empty() {
                    provenance.insert(n as i64, level);
                }
            }
            out.provenance = Some(provenance);
            to_value(out)
        }
        "slice-under" | "slice-over" => {
            arity(inputs, 1, op)?;
            let p = map_doc(&inputs[0])?.resolve()?;
            let slice = if op == "slice-under" {
                slice_under(&p, opts.dim)?
            } else {
                slice_over(&p, opts.dim)?
            };
            let mut out = map_document(&slice.projection, true);
            if let Some(src) = out.source.as_mut() {
                src.provenance = Some(slice_provenance(&slice));
            }
            to_value(out)
        }
        "hom-left" => {
            arity(inputs, 1, op)?;
            let x = complex_doc(&inputs[0])?.complex()?;
            let x0 = vertex_index(&x, opts.vertex.as_deref(), "--vertex")?;
            let y = vertex_index(&x, opts.target.as_deref(), "--target")?;
            let ext = terminal_extension(&x, y, opts.dim)?;
            let h = hom_left(&x, x0, &ext, opts.dim)?;
            let mut out = complex_document(&h.complex);
            let mut provenance = BTreeMap::new();
            for (k, level) in h.members.iter().enumerate() {
                let mut m = BTreeMap::new();
                for (c, &s) in level.iter().enumerate() {
                    m.insert(
                        h.complex.id(k, c).to_string(),
                        format!("cone:{}", h.base.id(k + 1, s)),
                    );
                }
                if !m.is_empty() {
                    provenance.insert(k as i64, m);
                }
            }
            out.provenance = Some(provenance);
            to_value(out)
        }
        "t-extend" => {
            arity(inputs, 1, op)?;
            let x = complex_doc(&inputs[0])?.complex()?;
            let y = vertex_index(&x, opts.vertex.as_deref(), "--vertex")?;
            let ext = terminal_extension(&x, y, opts.dim)?;
            to_value(map_document(&ext.to_map(&x), true))
        }
        "natural-marking" => {
            arity(inputs, 1, op)?;
            let x = complex_doc(&inputs[0])?.complex()?;
            to_value(marked_document(&natural_marking(&x, opts.dim)?))
        }
        "nerve" => {
            arity(inputs, 1, op)?;
            let c = category_doc(&inputs[0])?.category()?;
            to_value(nerve_document(&c, opts.dim))
        }
        "forget" => {
            arity(inputs, 1, op)?;
            let x = complex_doc(&inputs[0])?.complex()?;
            to_value(complex_document(&x))
        }
        "free" => {
            arity(inputs, 1, op)?;
            let x = complex_doc(&inputs[0])?.complex()?;
            let f = free_simplicial(&x, opts.dim)?;
            let mut out = complex_document(&f.underlying);
            out.outer = Some(outer_document(
                &f.underlying,
                &OuterDegeneracyData::from_simplicial(&f.simplicial),
            ));
            let mut provenance = BTreeMap::new();
            for k in 0..=f.underlying.dim_bound() {
                let mut level = BTreeMap::new();
                for idx in 0..f.underlying.level_size(k) {
                    let (m, sigma, alpha) = f.cell(k, idx);
                    let digits: String = alpha.iter().map(ToString::to_string).collect();
                    level.insert(
                        f.underlying.id(k, idx).to_string(),
                        format!("degenerate:{} via {}", x.id(*m, *sigma), digits),
                    );
                }
                if !level.is_empty() {
                    provenance.insert(k as i64, level);
                }
            }
            out.provenance = Some(provenance);
            to_value(out)
        }
        _ => Err(Error::Document(format!("unknown construction {op:?}"))),
    }
}

fn arity(inputs: &[Value], n: usize, op: &str) -> Result<()> {
    if inputs.len() != n {
        return Err(Error::Document(format!(
            "{op} takes {n} input document(s), got {}",
            inputs.len()
        )));
    }
    Ok(())
}

fn vertex_index(x: &SemiSimplicialSet, id: Option<&str>, flag: &str) -> Result<usize> {
    let id = id.ok_or_else(|| Error::Document(format!("this construction needs {flag} <vertex-id>")))?;
    x.index_of(0, id).ok_or_else(|| Error::UnknownId {
        dim: 0,
        id: id.to_string(),
    })
}

fn terminal_extension(
    x: &Arc<SemiSimplicialSet>,
    y: usize,
    dim: usize,
) -> Result<semikan::slice::TerminalExtension> {
    match find_terminal_extension(x, y, dim)? {
        TerminalSearch::Found(ext) => Ok(ext),
        TerminalSearch::Exhausted { at } => Err(Error::Document(format!(
            "no terminal extension over vertex {}: every branch dies at height {at}",
            x.id(0, y)
        ))),
    }
}

fn join_provenance(
    j: &Join,
    a: &SemiSimplicialSet,
    b: &SemiSimplicialSet,
) -> BTreeMap<i64, BTreeMap<String, String>> {
    let x = &j.complex;
    let mut out = BTreeMap::new();
    for n in 0..=x.dim_bound() {
        let mut level = BTreeMap::new();
        for idx in 0..x.level_size(n) {
            let origin = match j.cell(n, idx) {
                JoinCell::Left(s) => format!("left:{}", a.id(n, s)),
                JoinCell::Right(t) => format!("right:{}", b.id(n, t)),
                JoinCell::Pair {
                    left_dim,
                    left,
                    right,
                } => format!(
                    "join:{}|{}",
                    a.id(left_dim, left),
                    b.id(n - 1 - left_dim, right)
                ),
            };
            level.insert(x.id(n, idx).to_string(), origin);
        }
        if !level.is_empty() {
            out.insert(n as i64, level);
        }
    }
    out
}

/// Trace each slice cell to the image of the top cell of its cone witness.
fn slice_provenance(slice: &Slice) -> BTreeMap<i64, BTreeMap<String, String>> {
    let x = &slice.complex;
    let mut out = BTreeMap::new();
    for (n, level) in slice.witnesses.iter().enumerate() {
        let mut m = BTreeMap::new();
        for (c, w) in level.iter().enumerate() {
            let src = w.source();
            let top = src.dim_bound();
            let ids: Vec<String> = (0..src.level_size(top))
                .map(|s| w.target().id(top, w.apply(top, s)).to_string())
                .collect();
            m.insert(x.id(n, c).to_string(), format!("cone:{}", ids.join(",")));
        }
        if !m.is_empty() {
            out.insert(n as i64, m);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// factor

#[derive(Debug, Serialize)]
pub struct AttachmentTrace {
    pub generator: String,
    /// Fresh simplices per dimension.
    pub added: Vec<usize>,
    /// The attaching site: each cell of the generator's source keyed by its
    /// own id, pointing at its image at the moment of gluing.
    pub cells: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
pub struct RoundTrace {
    pub problems: usize,
    pub attachments: Vec<AttachmentTrace>,
}

#[derive(Debug, Serialize)]
pub struct FactorTrace {
    pub family: String,
    pub dim: usize,
    pub rounds: Vec<RoundTrace>,
    pub complete: bool,
    pub residual_failures: Vec<Witness>,
    pub inclusion: MapDocument,
    pub projection: MapDocument,
}

impl FactorTrace {
    pub fn exit_code(&self) -> i32 {
        if self.complete {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "factor {} (dim {}): {}",
            self.family,
            self.dim,
            if self.complete { "complete" } else { "incomplete" }
        );
        for (i, round) in self.rounds.iter().enumerate() {
            out.push_str(&format!(
                "\n  round {}: {} open problem(s), {} attachment(s)",
                i + 1,
                round.problems,
                round.attachments.len()
            ));
            for a in &round.attachments {
                let added: Vec<String> = a.added.iter().map(ToString::to_string).collect();
                out.push_str(&format!("\n    {} +[{}]", a.generator, added.join(",")));
            }
        }
        if !self.complete {
            out.push_str(&format!(
                "\n  residual failures: {}",
                self.residual_failures.len()
            ));
        }
        out
    }
}

/// Factor a map as bounded generator attachments followed by a residual
/// lifting report, and trace every attachment.
pub fn factor(value: &Value, family_name: &str, dim: usize, rounds: usize) -> Result<FactorTrace> {
    let family = parse_family(family_name)?;
    let marked = resolve_marked_map(&map_doc(value)?)?;
    let outcome = bounded_factorization(&marked, family, dim, rounds)?;
    let trace_rounds = outcome
        .rounds
        .iter()
        .map(|round| RoundTrace {
            problems: round.problems,
            attachments: round
                .attachments
                .iter()
                .map(|a| {
                    let mut cells = BTreeMap::new();
                    let (src, dst) = (a.top.source(), a.top.target());
                    for n in 0..=src.dim_bound() {
                        for s in 0..src.level_size(n) {
                            cells.insert(
                                src.id(n, s).to_string(),
                                dst.id(n, a.top.apply(n, s)).to_string(),
                            );
                        }
                    }
                    AttachmentTrace {
                        generator: a.generator.clone(),
                        added: a.added.clone(),
                        cells,
                    }
                })
                .collect(),
        })
        .collect();
    Ok(FactorTrace {
        family: family_name.to_string(),
        dim,
        rounds: trace_rounds,
        complete: outcome.complete,
        residual_failures: lift_witnesses(&outcome.residual, WitnessMode::All),
        inclusion: map_document(outcome.inclusion.underlying(), true),
        projection: map_document(outcome.projection.underlying(), true),
    })
}

fn parse_family(name: &str) -> Result<Family> {
    Ok(match name {
        "boundaries" => Family::Boundaries,
        "horns" => Family::Horns,
        "inner-horns" => Family::InnerHorns,
        "left-horns" => Family::LeftHorns,
        "right-horns" => Family::RightHorns,
        "marked-boundaries" => Family::MarkedBoundaries,
        "admissible-horns" => Family::AdmissibleHorns,
        _ => {
            return Err(Error::Document(format!(
                "unknown lifting family {name:?}; expected one of boundaries, horns, \
                 inner-horns, left-horns, right-horns, marked-boundaries, admissible-horns"
            )))
        }
    })
}

// ---------------------------------------------------------------------------
// suite

#[derive(Debug, Serialize)]
pub struct MemberReport {
    pub member: String,
    pub verdicts: Vec<Verdict>,
}

impl MemberReport {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub dim: usize,
    pub members: Vec<MemberReport>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.members.iter().all(MemberReport::pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite (dim {}): {} member(s), {}",
            self.dim,
            self.members.len(),
            if self.pass() { "pass" } else { "fail" }
        );
        for m in &self.members {
            if m.pass() {
                out.push_str(&format!(
                    "\n  {}: pass ({} checks)",
                    m.member,
                    m.verdicts.len()
                ));
            } else {
                out.push_str(&format!("\n  {}: FAIL", m.member));
                for v in m.verdicts.iter().filter(|v| !v.holds) {
                    for line in v.render_text().lines() {
                        out.push_str(&format!("\n    {line}"));
                    }
                }
            }
        }
        out
    }
}

/// Run every invariant over the corpus, one job per document, and merge the
/// verdicts in corpus order.
pub fn suite(entries: &[CorpusEntry], dim: usize) -> SuiteReport {
    let members = entries
        .par_iter()
        .map(|e| MemberReport {
            member: e.name.clone(),
            verdicts: member_verdicts(e, dim),
        })
        .collect();
    SuiteReport { dim, members }
}

fn member_verdicts(entry: &CorpusEntry, dim: usize) -> Vec<Verdict> {
    match checked_member_verdicts(entry, dim) {
        Ok(v) => v,
        Err(e) => vec![Verdict {
            property: "suite".into(),
            dim,
            holds: false,
            witnesses: vec![Witness::new("error").note(e.to_string())],
            elapsed_ms: 0,
        }],
    }
}

fn verdict_result<F>(property: &str, dim: usize, body: F) -> Verdict
where
    F: FnOnce() -> Result<(bool, Vec<Witness>)>,
{
    let start = Instant::now();
    let (holds, witnesses) = match body() {
        Ok(outcome) => outcome,
        Err(e) => (false, vec![Witness::new("error").note(e.to_string())]),
    };
    Verdict {
        property: property.to_string(),
        dim,
        holds,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn size_at(x: &SemiSimplicialSet, n: usize) -> usize {
    if n <= x.dim_bound() {
        x.level_size(n)
    } else {
        0
    }
}

fn checked_member_verdicts(entry: &CorpusEntry, dim: usize) -> Result<Vec<Verdict>> {
    let doc = &entry.document;
    let marked = doc.marked()?;
    let x = Arc::clone(marked.carrier());
    let bound = x.dim_bound();
    let sdim = dim.min(bound);
    let outer = doc.outer_data()?;
    let segment = Arc::new(standard_simplex(1));
    let mut out = Vec::new();

    out.push(verdict_result("validate", sdim, || {
        Ok((x.validate().is_valid(), Vec::new()))
    }));

    out.push(verdict_result("document-round-trip", sdim, || {
        let mut re = if doc.marking.is_some() {
            marked_document(&marked)
        } else {
            complex_document(&x)
        };
        if let Some(d) = &outer {
            re.outer = Some(outer_document(&x, d));
        }
        re.augmented = doc.augmented;
        Ok((re == *doc, Vec::new()))
    }));

    out.push(verdict_result("join-convolution", sdim, || {
        let j = join(&x, &segment);
        let ok = (0..=j.complex.dim_bound()).all(|n| {
            let pairs: usize = (0..n)
                .map(|i| size_at(&x, i) * size_at(&segment, n - 1 - i))
                .sum();
            j.complex.level_size(n) == size_at(&x, n) + size_at(&segment, n) + pairs
        });
        Ok((ok, Vec::new()))
    }));

    out.push(verdict_result("product-symmetry", sdim, || {
        let left = marked_geometric_product(&marked, &MarkedSSet::flat(Arc::clone(&segment)));
        let right = marked_geometric_product(&MarkedSSet::flat(Arc::clone(&segment)), &marked);
        let ok = left.product.complex.level_sizes() == right.product.complex.level_sizes();
        Ok((ok, Vec::new()))
    }));

    out.push(verdict_result("identity-trivial-fibration", sdim, || {
        let idm = MarkedMap::flat(SSetMap::identity(&x));
        let r = is_trivial_fibration(&idm, sdim)?;
        Ok((r.holds(), lift_witnesses(&r, WitnessMode::First)))
    }));

    out.push(verdict_result("pushout-identity", sdim, || {
        let idm = SSetMap::identity(&x);
        let p = pushout(&idm, &idm)?;
        Ok((p.complex.level_sizes() == x.level_sizes(), Vec::new()))
    }));

    out.push(verdict_result("pullback-diagonal", sdim, || {
        let t = Arc::new(terminal_truncated(bound));
        let tm = SSetMap::terminal_map(&x, &t)?;
        let p = pullback(&tm, &tm)?;
        let ok = (0..=bound).all(|n| p.complex.level_size(n) == x.level_size(n).pow(2));
        Ok((ok, Vec::new()))
    }));

    out.push(verdict_result("flat-marking-collapse", sdim, || {
        let collapsed = fully_marked(&MarkedSSet::flat(Arc::clone(&x)));
        let ok = collapsed.level_size(0) == x.level_size(0)
            && (1..=bound).all(|n| collapsed.level_size(n) == 0);
        Ok((ok, Vec::new()))
    }));

    if let Some(d) = &outer {
        // Nerves keep one dimension of headroom for the marked checks and
        // need dimension 3 for the equivalence searches.
        let adim = sdim.min(bound.saturating_sub(1));
        out.push(verdict_result("outer-degeneracies", adim, || {
            Ok((check_outer_degeneracies(&x, d).holds(), Vec::new()))
        }));
        out.push(verdict_result("inner-horn-fillers", adim, || {
            let r = is_inner_kan(&marked, adim)?;
            Ok((r.holds(), lift_witnesses(&r, WitnessMode::First)))
        }));
        out.push(verdict_result("unitality-agreement", adim, || {
            let r = verify_theorem_a(&x, adim)?;
            Ok(theorem_a_outcome(&r, &x, WitnessMode::First))
        }));
        out.push(verdict_result("idempotent-units", adim, || {
            let r = verify_theorem_c(&x, d, adim)?;
            Ok(theorem_c_outcome(&r, &x))
        }));
        out.push(verdict_result("natural-marking-closure", adim, || {
            let nm = natural_marking(&x, adim)?;
            let r = check_two_out_of_six(&x, nm.marked());
            Ok((r.holds(), two_six_witnesses(&r, &x)))
        }));
    }

    Ok(out)
}
