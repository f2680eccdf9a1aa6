//! Idempotents, equivalences, and quasi-unitality.
//!
//! A complex with no degeneracies has no canonical identity edges, so unit
//! behaviour has to be found rather than assumed: a loop is idempotent when
//! a 2-cell contracts it onto itself, an edge is an equivalence when every
//! outer horn built around it fills, and a complex is quasi-unital when
//! every vertex carries an idempotent equivalence.  The theorem verifiers
//! at the bottom tie these notions to the marked lifting machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{horn, standard_simplex, vertex_set_id, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::lifting::{is_kan, is_marked_inner_kan, is_marked_left_fibration, LiftReport, MarkedInnerKanReport};
use crate::maps::{extensions_along, enumerate_maps, SSetMap};
use crate::marking::{MarkedMap, MarkedSSet};
use crate::search::SearchMode;
use crate::simplicial::SimplicialSet;

/// Evidence that an edge is an equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceEvidence {
    /// Every outer horn carrying the edge in the constrained position
    /// filled, for all dimensions from 2 up to `dim`.
    Horns { dim: usize },
    /// An inverse edge and a 3-cell whose two short composites are the
    /// chosen units at the endpoints.
    Witness { inverse: usize, cell: usize },
}

/// Per-edge record produced by the enumerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStatus {
    pub edge: usize,
    /// A 2-cell with all three faces equal to the edge, when one exists.
    pub idempotent: Option<usize>,
    pub equivalence: Option<EquivalenceEvidence>,
}

/// The 1-simplex spanned by vertices `i < j` of an `n`-simplex, computed by
/// stripping all other vertices from the top dimension down.
pub(crate) fn edge_between(x: &SemiSimplicialSet, n: usize, s: usize, i: usize, j: usize) -> usize {
    let mut dim = n;
    let mut cur = s;
    for k in (0..=n).rev() {
        if k == i || k == j {
            continue;
        }
        cur = x.face(dim, cur, k);
        dim -= 1;
    }
    cur
}

fn require_bound(x: &SemiSimplicialSet, required: usize) -> Result<()> {
    if x.dim_bound() < required {
        return Err(Error::InsufficientTruncation {
            required,
            actual: x.dim_bound(),
        });
    }
    Ok(())
}

/// Loops that absorb themselves: edges `f` with a 2-cell whose three faces
/// are all `f`.  Each status carries the first witnessing 2-cell.
pub fn idempotent_edges(x: &SemiSimplicialSet) -> Result<Vec<EdgeStatus>> {
    require_bound(x, 2)?;
    let mut witness: BTreeMap<usize, usize> = BTreeMap::new();
    for h in 0..x.level_size(2) {
        let faces = x.faces(2, h);
        if faces[0] == faces[1] && faces[1] == faces[2] {
            witness.entry(faces[0]).or_insert(h);
        }
    }
    Ok(witness
        .into_iter()
        .map(|(edge, h)| EdgeStatus {
            edge,
            idempotent: Some(h),
            equivalence: None,
        })
        .collect())
}

/// Edges that behave invertibly under the horn criterion: for every
/// dimension `2 <= k <= n`, every initial horn whose `{0,1}` edge is the
/// candidate fills, and likewise every final horn whose `{k-1,k}` edge is.
/// The verdict is relative to `n`; nothing finite certifies all dimensions.
pub fn equivalences_horn(x: &Arc<SemiSimplicialSet>, n: usize) -> Result<BTreeSet<usize>> {
    require_bound(x, n)?;
    let mut failed: BTreeSet<usize> = BTreeSet::new();
    for k in 2..=n {
        let d = Arc::new(standard_simplex(k));
        for last in [false, true] {
            let i = if last { k } else { 0 };
            let h = Arc::new(horn(k, i).expect("outer horn indices are in range"));
            let j = SSetMap::by_ids(&h, &d).expect("horn ids appear in the simplex");
            let pinned_edge = h
                .index_of(1, &vertex_set_id(&if last { [k - 1, k] } else { [0, 1] }))
                .expect("outer horns keep the edge at their rim");
            for top in enumerate_maps(&h, x, SearchMode::All) {
                let e = top.apply(1, pinned_edge);
                if failed.contains(&e) {
                    continue;
                }
                let fillers = extensions_along(&j, &top, SearchMode::First)
                    .expect("horn inclusions are levelwise injective");
                if fillers.is_empty() {
                    failed.insert(e);
                }
            }
        }
    }
    Ok((0..x.level_size(1)).filter(|e| !failed.contains(e)).collect())
}

/// Equivalences by explicit inverse: an edge `f : a -> b` is certified when
/// some `g : b -> a` and a 3-cell with spine `f, g, f` exist whose short
/// composites are the chosen units at `a` and `b`.  `units` is indexed by
/// vertex; a missing unit is an error because the pattern needs both.
pub fn equivalences_witness(
    x: &SemiSimplicialSet,
    units: &[Option<usize>],
) -> Result<Vec<EdgeStatus>> {
    require_bound(x, 3)?;
    assert_eq!(units.len(), x.level_size(0), "one unit slot per vertex");
    if let Some(v) = units.iter().position(Option::is_none) {
        return Err(Error::MissingUnit { vertex: v });
    }
    let mut found: BTreeMap<usize, EquivalenceEvidence> = BTreeMap::new();
    for cell in 0..x.level_size(3) {
        let f = edge_between(x, 3, cell, 0, 1);
        if found.contains_key(&f) || edge_between(x, 3, cell, 2, 3) != f {
            continue;
        }
        let a = x.vertex(1, f, 0);
        let b = x.vertex(1, f, 1);
        if edge_between(x, 3, cell, 0, 2) == units[a].unwrap()
            && edge_between(x, 3, cell, 1, 3) == units[b].unwrap()
        {
            let g = edge_between(x, 3, cell, 1, 2);
            found.insert(f, EquivalenceEvidence::Witness { inverse: g, cell });
        }
    }
    Ok(found
        .into_iter()
        .map(|(edge, evidence)| EdgeStatus {
            edge,
            idempotent: None,
            equivalence: Some(evidence),
        })
        .collect())
}

/// The complex with its horn-equivalences marked.
pub fn natural_marking(x: &Arc<SemiSimplicialSet>, n: usize) -> Result<MarkedSSet> {
    let marks = equivalences_horn(x, n)?;
    MarkedSSet::new(Arc::clone(x), marks)
}

/// The subcomplex of simplices all of whose edges are marked, down to every
/// iterated 1-dimensional face.  Vertices have no edges and always survive.
pub fn fully_marked(x: &MarkedSSet) -> SemiSimplicialSet {
    let c = x.carrier();
    let mut builder = crate::complex::ComplexBuilder::new();
    let mut kept: Vec<Vec<Option<usize>>> = Vec::with_capacity(c.dim_bound() + 1);
    for n in 0..=c.dim_bound() {
        let mut level = vec![None; c.level_size(n)];
        for s in 0..c.level_size(n) {
            let all_marked = (0..n).all(|i| {
                (i + 1..=n).all(|j| x.marked().contains(&edge_between(c, n, s, i, j)))
            });
            if !all_marked {
                continue;
            }
            let faces: Vec<usize> = if n == 0 {
                Vec::new()
            } else {
                c.faces(n, s)
                    .iter()
                    .map(|&f| kept[n - 1][f].expect("faces of a fully marked simplex are fully marked"))
                    .collect()
            };
            level[s] = Some(
                builder
                    .add(n, c.id(n, s), &faces)
                    .expect("ids stay distinct in a subcomplex"),
            );
        }
        kept.push(level);
    }
    builder.build_unchecked().with_dim_bound(c.dim_bound())
}

/// Quasi-unitality verdict: the chosen unit per vertex, first idempotent
/// equivalence in index order, with `None` where none exists.
#[derive(Debug, Clone)]
pub struct QuasiUnitalReport {
    pub dim: usize,
    pub units: Vec<Option<EdgeStatus>>,
}

impl QuasiUnitalReport {
    pub fn holds(&self) -> bool {
        self.units.iter().all(Option::is_some)
    }

    pub fn missing(&self) -> Vec<usize> {
        self.units
            .iter()
            .enumerate()
            .filter_map(|(v, u)| u.is_none().then_some(v))
            .collect()
    }

    /// Unit edges by vertex, the shape the witness method consumes.
    pub fn unit_edges(&self) -> Vec<Option<usize>> {
        self.units
            .iter()
            .map(|u| u.as_ref().map(|s| s.edge))
            .collect()
    }
}

/// Every vertex must carry an idempotent equivalence, up to dimension `n`.
pub fn is_quasi_unital(x: &Arc<SemiSimplicialSet>, n: usize) -> Result<QuasiUnitalReport> {
    let idempotents = idempotent_edges(x)?;
    let equivalences = equivalences_horn(x, n)?;
    let mut units: Vec<Option<EdgeStatus>> = vec![None; x.level_size(0)];
    for status in idempotents {
        if !equivalences.contains(&status.edge) {
            continue;
        }
        let v = x.vertex(1, status.edge, 0);
        if units[v].is_none() {
            units[v] = Some(EdgeStatus {
                equivalence: Some(EquivalenceEvidence::Horns { dim: n }),
                ..status
            });
        }
    }
    Ok(QuasiUnitalReport { dim: n, units })
}

#[derive(Debug, Clone)]
pub struct MapUnitalityReport {
    pub dim: usize,
    /// How many idempotent equivalences of the source were examined.
    pub checked: usize,
    /// Those whose image is not an equivalence of the target.  Idempotence
    /// of the image is automatic and not retested.
    pub broken: Vec<usize>,
}

impl MapUnitalityReport {
    pub fn holds(&self) -> bool {
        self.broken.is_empty()
    }
}

/// A map is quasi-unital when it sends idempotent equivalences to
/// idempotent equivalences.
pub fn is_quasi_unital_map(f: &SSetMap, n: usize) -> Result<MapUnitalityReport> {
    let source_eq = equivalences_horn(f.source(), n)?;
    let target_eq = equivalences_horn(f.target(), n)?;
    let mut checked = 0;
    let mut broken = Vec::new();
    for status in idempotent_edges(f.source())? {
        if !source_eq.contains(&status.edge) {
            continue;
        }
        checked += 1;
        if !target_eq.contains(&f.apply(1, status.edge)) {
            broken.push(status.edge);
        }
    }
    Ok(MapUnitalityReport {
        dim: n,
        checked,
        broken,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOutOfSixViolation {
    pub simplex: usize,
    /// Edges of the violating 3-simplex that are not marked.
    pub unmarked: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TwoOutOfSixReport {
    /// 3-simplices whose diagonal edges were both marked.
    pub triggered: usize,
    pub violation: Option<TwoOutOfSixViolation>,
}

impl TwoOutOfSixReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Two-out-of-six closure: in any 3-simplex whose `{0,2}` and `{1,3}` edges
/// are marked, all six edges must be.  Stops at the first violator.
pub fn check_two_out_of_six(x: &SemiSimplicialSet, marked: &BTreeSet<usize>) -> TwoOutOfSixReport {
    let mut triggered = 0;
    if x.dim_bound() < 3 {
        return TwoOutOfSixReport {
            triggered,
            violation: None,
        };
    }
    for s in 0..x.level_size(3) {
        if !marked.contains(&edge_between(x, 3, s, 0, 2))
            || !marked.contains(&edge_between(x, 3, s, 1, 3))
        {
            continue;
        }
        triggered += 1;
        let mut unmarked = Vec::new();
        for i in 0..3 {
            for j in i + 1..=3 {
                let e = edge_between(x, 3, s, i, j);
                if !marked.contains(&e) {
                    unmarked.push(e);
                }
            }
        }
        if !unmarked.is_empty() {
            unmarked.sort_unstable();
            unmarked.dedup();
            return TwoOutOfSixReport {
                triggered,
                violation: Some(TwoOutOfSixViolation { simplex: s, unmarked }),
            };
        }
    }
    TwoOutOfSixReport {
        triggered,
        violation: None,
    }
}

/// Partial degeneracy data: candidates for `s0` and the top degeneracy,
/// given as index tables `X_n -> X_{n+1}` for each `n` below the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterDegeneracyData {
    pub s0: Vec<Vec<usize>>,
    pub s_omega: Vec<Vec<usize>>,
}

impl OuterDegeneracyData {
    /// Extract the outer degeneracies from a genuinely simplicial structure.
    pub fn from_simplicial(y: &SimplicialSet) -> Self {
        let base = y.base();
        let mut s0 = Vec::new();
        let mut s_omega = Vec::new();
        for n in 0..base.dim_bound() {
            s0.push((0..base.level_size(n)).map(|s| y.degeneracy(n, s, 0)).collect());
            s_omega.push((0..base.level_size(n)).map(|s| y.degeneracy(n, s, n)).collect());
        }
        OuterDegeneracyData { s0, s_omega }
    }
}

/// One failed identity in a degeneracy table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyViolation {
    /// Which identity failed, e.g. `"d1 s0 = id"`.
    pub identity: String,
    pub dim: usize,
    pub simplex: usize,
}

#[derive(Debug, Clone)]
pub struct OuterDegeneracyReport {
    pub violations: Vec<DegeneracyViolation>,
}

impl OuterDegeneracyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validate every identity the outer degeneracy tables must satisfy:
/// the two face cancellations on each side, the exchange rules against the
/// untouched faces, and agreement of the two tables on vertices.
pub fn check_outer_degeneracies(
    x: &SemiSimplicialSet,
    d: &OuterDegeneracyData,
) -> OuterDegeneracyReport {
    let mut violations = Vec::new();
    let mut push = |identity: &str, dim: usize, simplex: usize| {
        violations.push(DegeneracyViolation {
            identity: identity.to_string(),
            dim,
            simplex,
        });
    };
    let levels = d.s0.len().min(d.s_omega.len()).min(x.dim_bound());
    for n in 0..levels {
        for s in 0..x.level_size(n) {
            let up0 = d.s0[n][s];
            if x.face(n + 1, up0, 0) != s {
                push("d0 s0 = id", n, s);
            }
            if x.face(n + 1, up0, 1) != s {
                push("d1 s0 = id", n, s);
            }
            let upw = d.s_omega[n][s];
            if x.face(n + 1, upw, n) != s {
                push("dn s_omega = id", n, s);
            }
            if x.face(n + 1, upw, n + 1) != s {
                push("dn+1 s_omega = id", n, s);
            }
            if n >= 1 {
                for j in 1..=n {
                    if d.s0[n - 1][x.face(n, s, j)] != x.face(n + 1, up0, j + 1) {
                        push("s0 dj = dj+1 s0", n, s);
                    }
                }
                for j in 0..n {
                    if d.s_omega[n - 1][x.face(n, s, j)] != x.face(n + 1, upw, j) {
                        push("s_omega dj = dj s_omega", n, s);
                    }
                }
            }
        }
    }
    if !d.s0.is_empty() && !d.s_omega.is_empty() {
        for v in 0..x.level_size(0) {
            if d.s0[0][v] != d.s_omega[0][v] {
                push("s0 = s_omega on vertices", 0, v);
            }
        }
    }
    OuterDegeneracyReport { violations }
}

/// Per-vertex outcome of the unit theorem.
#[derive(Debug, Clone)]
pub struct VertexUnitVerdict {
    pub vertex: usize,
    /// The candidate unit `s0 x`.
    pub unit: usize,
    /// The 2-cell `s0 s0 x`, checked to contract the unit onto itself.
    pub idempotent_witness: Option<usize>,
    pub is_equivalence: bool,
}

impl VertexUnitVerdict {
    pub fn holds(&self) -> bool {
        self.idempotent_witness.is_some() && self.is_equivalence
    }
}

#[derive(Debug, Clone)]
pub struct TheoremCReport {
    pub dim: usize,
    pub data: OuterDegeneracyReport,
    pub vertices: Vec<VertexUnitVerdict>,
    /// Vertex count of the complex, so a report with missing verdicts
    /// (tables too short to name any unit) cannot pass by default.
    pub vertices_total: usize,
}

impl TheoremCReport {
    pub fn holds(&self) -> bool {
        self.data.holds()
            && self.vertices.len() == self.vertices_total
            && self.vertices.iter().all(VertexUnitVerdict::holds)
    }
}

/// Outer degeneracies make a complex quasi-unital: with validated tables,
/// every edge `s0 x` must be idempotent, witnessed by `s0 s0 x`, and an
/// equivalence under the horn criterion up to `n`.
pub fn verify_theorem_c(
    x: &Arc<SemiSimplicialSet>,
    d: &OuterDegeneracyData,
    n: usize,
) -> Result<TheoremCReport> {
    require_bound(x, 2)?;
    let data = check_outer_degeneracies(x, d);
    let equivalences = equivalences_horn(x, n)?;
    let mut vertices = Vec::with_capacity(x.level_size(0));
    if data.holds() && !d.s0.is_empty() {
        for v in 0..x.level_size(0) {
            let unit = d.s0[0][v];
            // Tables stopping below dimension 1 cannot produce the witness,
            // which reads as an unproven vertex, not a vacuous pass.
            let cell = (d.s0.len() > 1)
                .then(|| d.s0[1][unit])
                .filter(|&c| (0..3).all(|i| x.face(2, c, i) == unit));
            vertices.push(VertexUnitVerdict {
                vertex: v,
                unit,
                idempotent_witness: cell,
                is_equivalence: equivalences.contains(&unit),
            });
        }
    }
    Ok(TheoremCReport {
        dim: n,
        data,
        vertices,
        vertices_total: x.level_size(0),
    })
}

#[derive(Debug, Clone)]
pub struct TheoremAReport {
    pub quasi_unital: QuasiUnitalReport,
    pub marked_inner_kan: MarkedInnerKanReport,
    pub agree: bool,
}

impl TheoremAReport {
    pub fn holds(&self) -> bool {
        self.agree
    }
}

/// Quasi-unitality is equivalent to the natural marking being marked inner
/// Kan; this runs both sides and compares.
pub fn verify_theorem_a(x: &Arc<SemiSimplicialSet>, n: usize) -> Result<TheoremAReport> {
    let quasi_unital = is_quasi_unital(x, n)?;
    let marked_inner_kan = is_marked_inner_kan(&natural_marking(x, n)?, n)?;
    let agree = quasi_unital.holds() == marked_inner_kan.holds();
    Ok(TheoremAReport {
        quasi_unital,
        marked_inner_kan,
        agree,
    })
}

#[derive(Debug, Clone)]
pub struct PointFibrationReport {
    /// The marked left fibration check the conclusion is conditional on.
    pub fibration: LiftReport,
    /// Unmarked edges of the source, which should be empty for a marked
    /// left fibration over a sharp point.
    pub unmarked_edges: Vec<usize>,
    /// Kan report for the underlying source complex, run when the
    /// fibration check passes.
    pub kan: Option<LiftReport>,
}

impl PointFibrationReport {
    /// Vacuously true when the map is not a marked left fibration.
    pub fn holds(&self) -> bool {
        if !self.fibration.holds() {
            return true;
        }
        self.unmarked_edges.is_empty()
            && self.kan.as_ref().map(LiftReport::holds).unwrap_or(false)
    }
}

/// Over a sharp point, a marked left fibration has every edge marked and a
/// Kan complex underneath.
pub fn check_left_fib_over_point(f: &MarkedMap, n: usize) -> Result<PointFibrationReport> {
    let fibration = is_marked_left_fibration(f, n)?;
    if !fibration.holds() {
        return Ok(PointFibrationReport {
            fibration,
            unmarked_edges: Vec::new(),
            kan: None,
        });
    }
    let source = f.source();
    let unmarked_edges = (0..source.carrier().level_size(1))
        .filter(|e| !source.marked().contains(e))
        .collect();
    let kan = Some(is_kan(&MarkedSSet::flat(Arc::clone(source.carrier())), n)?);
    Ok(PointFibrationReport {
        fibration,
        unmarked_edges,
        kan,
    })
}
