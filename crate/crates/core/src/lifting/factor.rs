//! Cell attachment and the bounded small object argument: factor a map as a
//! relative cell complex followed by a map with the right lifting property,
//! up to a dimension bound and a round budget.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::colimits::pushout;
use crate::error::Result;
use crate::maps::SSetMap;
use crate::marking::{MarkedMap, MarkedSSet};
use crate::search::SearchMode;

use super::families::Family;
use super::solve::{has_rlp, solve_lift, squares, LiftReport, LiftingProblem};

/// One pushout in the attachment trace.
#[derive(Debug, Clone)]
pub struct Attachment {
    pub generator: String,
    /// The attaching map, from the generator's source into the complex as it
    /// was when the cell was glued.
    pub top: SSetMap,
    /// Fresh simplices per dimension.
    pub added: Vec<usize>,
}

/// The result of a single attachment round.
#[derive(Debug, Clone)]
pub struct AttachOutcome {
    /// Inclusion of the old source into the enlarged one.
    pub inclusion: MarkedMap,
    /// The enlarged map down to the original target.
    pub projection: MarkedMap,
    pub attachments: Vec<Attachment>,
}

/// Glue one cell for every unfilled lifting problem of `f` against the
/// family, all problems collected up front and deduplicated, then attached
/// in canonical order.  Problems another attachment happens to fill are
/// still glued, like the small object argument does.
pub fn attach_cells(f: &MarkedMap, family: Family, n: usize) -> Result<AttachOutcome> {
    for end in [f.source(), f.target()] {
        let actual = end.carrier().dim_bound();
        if actual < n {
            return Err(crate::error::Error::InsufficientTruncation {
                required: n,
                actual,
            });
        }
    }
    let generators = family.generators(n);
    let all = squares(f, &generators);
    let unfilled: BTreeSet<(usize, Vec<Vec<usize>>, Vec<Vec<usize>>)> = all
        .par_iter()
        .filter_map(|sq| {
            let problem = LiftingProblem {
                j: generators[sq.generator].map.clone(),
                f: f.clone(),
                top: sq.top.clone(),
                bottom: sq.bottom.clone(),
            };
            if solve_lift(&problem, SearchMode::First).fillers.is_empty() {
                Some((
                    sq.generator,
                    sq.top.underlying().components().to_vec(),
                    sq.bottom.underlying().components().to_vec(),
                ))
            } else {
                None
            }
        })
        .collect();

    let y = f.target().clone();
    let mut carrier = Arc::clone(f.source().carrier());
    let mut marks = f.source().marked().clone();
    let mut proj = f.underlying().components().to_vec();
    let mut attachments = Vec::new();

    for (gi, top_components, bottom_components) in unfilled {
        let g = &generators[gi];
        let a = g.map.source().carrier();
        let b = g.map.target().carrier();
        // Indices in the carrier are stable across pushouts, so the recorded
        // components still name the same simplices in the enlarged complex.
        let top = SSetMap::new(Arc::clone(a), Arc::clone(&carrier), top_components)
            .expect("earlier pushouts keep old simplices at their indices");
        let glued = pushout(g.map.underlying(), &top)?;

        let mut added = vec![0usize; glued.complex.dim_bound() + 1];
        proj.resize(glued.complex.dim_bound() + 1, Vec::new());
        for (dim, level) in proj.iter_mut().enumerate() {
            let new_size = glued.complex.level_size(dim);
            added[dim] = new_size - level.len();
            level.resize(new_size, usize::MAX);
        }
        for dim in 0..=b.dim_bound() {
            for s in 0..b.level_size(dim) {
                proj[dim][glued.from_cell.apply(dim, s)] = bottom_components[dim][s];
            }
        }
        for e in g.map.target().marked() {
            marks.insert(glued.from_cell.apply(1, *e));
        }
        attachments.push(Attachment {
            generator: g.name.clone(),
            top,
            added,
        });
        carrier = glued.complex;
    }

    let enlarged = MarkedSSet::new(Arc::clone(&carrier), marks)?;
    let inclusion_map = SSetMap::new(
        Arc::clone(f.source().carrier()),
        Arc::clone(&carrier),
        (0..=f.source().carrier().dim_bound())
            .map(|dim| (0..f.source().carrier().level_size(dim)).collect())
            .collect(),
    )
    .expect("the enlarged complex starts with the old one");
    let inclusion = MarkedMap::new(f.source().clone(), enlarged.clone(), inclusion_map)
        .expect("attachment only adds marks");
    let projection_map = SSetMap::new(Arc::clone(&carrier), Arc::clone(y.carrier()), proj)
        .expect("glued cells project along their lifting problem's bottom");
    let projection = MarkedMap::new(enlarged, y, projection_map)
        .expect("new marks come from marked generator targets");
    Ok(AttachOutcome {
        inclusion,
        projection,
        attachments,
    })
}

#[derive(Debug, Clone)]
pub struct FactorRound {
    /// Unfilled problems found at the start of the round, after
    /// deduplication.
    pub problems: usize,
    pub attachments: Vec<Attachment>,
}

#[derive(Debug, Clone)]
pub struct Factorization {
    /// Composite relative cell inclusion.
    pub inclusion: MarkedMap,
    /// The factored map; equals the input when no round attached anything.
    pub projection: MarkedMap,
    pub rounds: Vec<FactorRound>,
    /// Lifting report for the final projection, recomputed from scratch.
    pub residual: LiftReport,
    /// True when the residual report has no failures.
    pub complete: bool,
}

/// Iterate [`attach_cells`] until nothing is missing or the round budget
/// runs out.  Fresh cells can pose fresh problems, so exhausting the budget
/// with a nonzero residual is a normal outcome, reported rather than hidden.
pub fn bounded_factorization(
    f: &MarkedMap,
    family: Family,
    n: usize,
    max_rounds: usize,
) -> Result<Factorization> {
    let mut inclusion = MarkedMap::new(
        f.source().clone(),
        f.source().clone(),
        SSetMap::identity(f.source().carrier()),
    )
    .expect("the identity preserves any marking");
    let mut projection = f.clone();
    let mut rounds = Vec::new();
    for _ in 0..max_rounds {
        let outcome = attach_cells(&projection, family, n)?;
        if outcome.attachments.is_empty() {
            break;
        }
        rounds.push(FactorRound {
            problems: outcome.attachments.len(),
            attachments: outcome.attachments,
        });
        inclusion = MarkedMap::compose(&inclusion, &outcome.inclusion)?;
        projection = outcome.projection;
    }
    let residual = has_rlp(&projection, family, n);
    let complete = residual.holds();
    Ok(Factorization {
        inclusion,
        projection,
        rounds,
        residual,
        complete,
    })
}
