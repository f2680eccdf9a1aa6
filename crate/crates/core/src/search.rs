//! Backtracking search for extensions of partial maps between complexes.
//!
//! This is the single engine behind `enumerate_maps`, `extensions_along` and
//! the lifting solver.  Free simplices of the domain are assigned in a fixed
//! order that puts every face before the simplex carrying it and reaches
//! top-dimensional simplices as early as possible, so a simplex's candidate
//! set is cut down by its already-assigned face tuple (plus the optional
//! image and marking constraints) before branching.  Scheduling high cells
//! early matters: their face tuples force or refute the adjacent lower
//! cells instead of leaving them as free choices.

use std::collections::{BTreeSet, HashMap};

use crate::complex::SemiSimplicialSet;
use crate::maps::SSetMap;

/// Whether to stop at the first complete assignment or collect all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

pub(crate) struct ImageConstraint<'a> {
    /// Right leg of the square, `X -> Y`.
    pub f: &'a SSetMap,
    /// Bottom of the square, `B -> Y`; assignments must satisfy
    /// `f(assign(b)) = bottom(b)`.
    pub bottom: &'a SSetMap,
}

pub(crate) struct ExtensionProblem<'a> {
    /// Domain `B` of the maps being searched for.
    pub domain: &'a SemiSimplicialSet,
    /// Target `X` of the maps being searched for.
    pub target: &'a SemiSimplicialSet,
    /// Pre-assigned simplices of `B` (typically the image of a subcomplex);
    /// `None` entries are free.
    pub pinned: Vec<Vec<Option<usize>>>,
    /// Edges of `B` that must land in `marked_target`.
    pub marked_domain: Option<&'a BTreeSet<usize>>,
    pub marked_target: Option<&'a BTreeSet<usize>>,
    pub image: Option<ImageConstraint<'a>>,
}

pub(crate) struct SearchOutcome {
    /// Complete assignments, one `Vec<usize>` per domain level.
    pub assignments: Vec<Vec<Vec<usize>>>,
    /// True when the whole search space was explored, so the returned set is
    /// known to be complete.
    pub exhaustive: bool,
}

/// Lookup from a face tuple `d_0 .. d_n` to the simplices carrying it.
struct FaceIndex {
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
}

impl FaceIndex {
    fn build(x: &SemiSimplicialSet) -> Self {
        let mut by_faces = Vec::with_capacity(x.dim_bound() + 1);
        by_faces.push(HashMap::new());
        for n in 1..=x.dim_bound() {
            let mut level: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for s in 0..x.level_size(n) {
                level.entry(x.faces(n, s).to_vec()).or_default().push(s);
            }
            by_faces.push(level);
        }
        FaceIndex { by_faces }
    }
}

/// Assignment order for the free simplices: walk the levels from the top
/// down, and in front of each simplex schedule its face closure.  The order
/// is deterministic and every face precedes its carrier.
fn schedule_free(
    domain: &SemiSimplicialSet,
    pinned: &[Vec<Option<usize>>],
) -> Vec<(usize, usize)> {
    let mut order = Vec::new();
    let mut seen: Vec<Vec<bool>> = (0..=domain.dim_bound())
        .map(|n| vec![false; domain.level_size(n)])
        .collect();
    fn visit(
        domain: &SemiSimplicialSet,
        pinned: &[Vec<Option<usize>>],
        seen: &mut [Vec<bool>],
        order: &mut Vec<(usize, usize)>,
        n: usize,
        s: usize,
    ) {
        if seen[n][s] {
            return;
        }
        seen[n][s] = true;
        if n > 0 {
            for &f in domain.faces(n, s) {
                visit(domain, pinned, seen, order, n - 1, f);
            }
        }
        if pinned[n][s].is_none() {
            order.push((n, s));
        }
    }
    for n in (0..=domain.dim_bound()).rev() {
        for s in 0..domain.level_size(n) {
            visit(domain, pinned, &mut seen, &mut order, n, s);
        }
    }
    order
}

pub(crate) fn search(problem: &ExtensionProblem, mode: SearchMode) -> SearchOutcome {
    let domain = problem.domain;
    let target = problem.target;

    let free = schedule_free(domain, &problem.pinned);

    let mut assignment: Vec<Vec<usize>> = (0..=domain.dim_bound())
        .map(|n| {
            (0..domain.level_size(n))
                .map(|s| problem.pinned[n][s].unwrap_or(usize::MAX))
                .collect()
        })
        .collect();

    let index = FaceIndex::build(target);
    let empty: Vec<usize> = Vec::new();
    let all_vertices: Vec<usize> = (0..target.level_size(0)).collect();

    let mut outcome = SearchOutcome {
        assignments: Vec::new(),
        exhaustive: true,
    };

    // A pinned cell can already break a constraint, e.g. a marked domain
    // edge pinned onto an unmarked target edge when the domain marking is
    // strictly larger than what the pinning respects.  No assignment can
    // repair that, so the search is over before it starts.
    for n in 0..=domain.dim_bound() {
        for s in 0..domain.level_size(n) {
            let Some(x) = problem.pinned[n][s] else {
                continue;
            };
            if let Some(img) = &problem.image {
                if img.f.apply(n, x) != img.bottom.apply(n, s) {
                    return outcome;
                }
            }
            if n == 1 {
                if let (Some(md), Some(mt)) = (problem.marked_domain, problem.marked_target) {
                    if md.contains(&s) && !mt.contains(&x) {
                        return outcome;
                    }
                }
            }
        }
    }

    // Depth-first over `free`; returns true when the caller should stop.
    fn dfs(
        depth: usize,
        free: &[(usize, usize)],
        assignment: &mut Vec<Vec<usize>>,
        problem: &ExtensionProblem,
        index: &FaceIndex,
        all_vertices: &[usize],
        empty: &[usize],
        mode: SearchMode,
        outcome: &mut SearchOutcome,
    ) -> bool {
        if depth == free.len() {
            outcome.assignments.push(assignment.clone());
            if mode == SearchMode::First {
                outcome.exhaustive = false;
                return true;
            }
            return false;
        }
        let (n, s) = free[depth];
        let candidates: &[usize] = if n == 0 {
            all_vertices
        } else {
            let tuple: Vec<usize> = problem
                .domain
                .faces(n, s)
                .iter()
                .map(|&f| assignment[n - 1][f])
                .collect();
            match index.by_faces.get(n).and_then(|m| m.get(&tuple)) {
                Some(v) => v,
                None => empty,
            }
        };
        for &x in candidates {
            if let Some(img) = &problem.image {
                if img.f.apply(n, x) != img.bottom.apply(n, s) {
                    continue;
                }
            }
            if n == 1 {
                if let (Some(md), Some(mt)) = (problem.marked_domain, problem.marked_target) {
                    if md.contains(&s) && !mt.contains(&x) {
                        continue;
                    }
                }
            }
            assignment[n][s] = x;
            if dfs(
                depth + 1,
                free,
                assignment,
                problem,
                index,
                all_vertices,
                empty,
                mode,
                outcome,
            ) {
                assignment[n][s] = usize::MAX;
                return true;
            }
            assignment[n][s] = usize::MAX;
        }
        false
    }

    dfs(
        0,
        &free,
        &mut assignment,
        problem,
        &index,
        &all_vertices,
        &empty,
        mode,
        &mut outcome,
    );
    outcome
}

/// Number of unconstrained assignments of the free simplices, i.e. the size
/// of the space a naive enumeration would walk.  Saturates at `usize::MAX`.
pub(crate) fn naive_assignment_count(
    domain: &SemiSimplicialSet,
    target: &SemiSimplicialSet,
    pinned: &[Vec<Option<usize>>],
) -> usize {
    let mut count: usize = 1;
    for n in 0..=domain.dim_bound() {
        for s in 0..domain.level_size(n) {
            if pinned[n][s].is_none() {
                count = count.saturating_mul(target.level_size(n));
            }
        }
    }
    count
}
