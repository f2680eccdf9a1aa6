//! Lifting problems and the reports that aggregate them over a family: a
//! problem is a commuting square with an inclusion on the left, a solution
//! is the set of diagonal fillers found by the extension search.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::maps::{pinned_from, SSetMap};
use crate::marking::{enumerate_marked_maps, marked_extensions_along, MarkedMap, MarkedSSet};
use crate::search::{self, ExtensionProblem, ImageConstraint, SearchMode};

use super::families::{Family, Generator};

/// A commuting square: `j` a levelwise injective inclusion `A -> B`, `f` the
/// map `X -> Y` being tested, `top : A -> X`, `bottom : B -> Y`.
#[derive(Debug, Clone)]
pub struct LiftingProblem {
    pub j: MarkedMap,
    pub f: MarkedMap,
    pub top: MarkedMap,
    pub bottom: MarkedMap,
}

impl LiftingProblem {
    /// Check endpoints, injectivity of `j`, and exact commutation.
    pub fn new(j: MarkedMap, f: MarkedMap, top: MarkedMap, bottom: MarkedMap) -> Result<Self> {
        if j.source() != top.source()
            || j.target() != bottom.source()
            || top.target() != f.source()
            || bottom.target() != f.target()
        {
            return Err(Error::NotComposable);
        }
        if !j.is_levelwise_injective() {
            return Err(Error::NotInjective);
        }
        let via_f = MarkedMap::compose(&top, &f)?;
        let via_j = MarkedMap::compose(&j, &bottom)?;
        if via_f.underlying() != via_j.underlying() {
            return Err(Error::SquareNotCommuting);
        }
        Ok(LiftingProblem { j, f, top, bottom })
    }

    /// Wrap plain maps with empty markings.
    pub fn unmarked(j: &SSetMap, f: &SSetMap, top: &SSetMap, bottom: &SSetMap) -> Result<Self> {
        LiftingProblem::new(
            MarkedMap::flat(j.clone()),
            MarkedMap::flat(f.clone()),
            MarkedMap::flat(top.clone()),
            MarkedMap::flat(bottom.clone()),
        )
    }

    /// Size of the raw candidate space a naive enumeration of fillers would
    /// walk: one target simplex choice per cell outside the image of `j`.
    pub fn search_space(&self) -> usize {
        let pinned = pinned_from(self.j.underlying(), self.top.underlying());
        search::naive_assignment_count(
            self.j.target().carrier(),
            self.f.source().carrier(),
            &pinned,
        )
    }
}

#[derive(Debug, Clone)]
pub struct LiftSolution {
    /// Maps `B -> X` commuting with both triangles, in search order.
    pub fillers: Vec<MarkedMap>,
    /// True when the whole space was explored, so an empty list proves
    /// there is no lift at this truncation.
    pub exhaustive: bool,
}

/// Backtracking search for fillers.  Every returned filler is re-verified by
/// composing out both triangles.
pub fn solve_lift(p: &LiftingProblem, mode: SearchMode) -> LiftSolution {
    let k = p.j.target();
    let x = p.f.source();
    let problem = ExtensionProblem {
        domain: k.carrier().as_ref(),
        target: x.carrier().as_ref(),
        pinned: pinned_from(p.j.underlying(), p.top.underlying()),
        marked_domain: Some(k.marked()),
        marked_target: Some(x.marked()),
        image: Some(ImageConstraint {
            f: p.f.underlying(),
            bottom: p.bottom.underlying(),
        }),
    };
    let outcome = search::search(&problem, mode);
    let fillers = outcome
        .assignments
        .into_iter()
        .map(|components| {
            let underlying =
                SSetMap::new(Arc::clone(k.carrier()), Arc::clone(x.carrier()), components)
                    .expect("search returns face-compatible assignments");
            let through_top = SSetMap::compose(p.j.underlying(), &underlying)
                .expect("filler restricts along the inclusion");
            assert!(
                through_top == *p.top.underlying(),
                "solver returned a map that does not restrict to the top"
            );
            let through_bottom = SSetMap::compose(&underlying, p.f.underlying())
                .expect("filler lands in the source of f");
            assert!(
                through_bottom == *p.bottom.underlying(),
                "solver returned a map that does not project to the bottom"
            );
            MarkedMap::new(k.clone(), x.clone(), underlying)
                .expect("search enforces the marking constraint")
        })
        .collect();
    LiftSolution {
        fillers,
        exhaustive: outcome.exhaustive,
    }
}

/// One square that did not behave: no filler for right-lifting reports, a
/// filler count different from one for orthogonality reports.
#[derive(Debug, Clone)]
pub struct LiftFailure {
    pub generator: String,
    pub fillers: usize,
    pub top: SSetMap,
    /// Absent for object-level reports, where the bottom is unique.
    pub bottom: Option<SSetMap>,
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    /// The dimension bound the generators were enumerated to.
    pub dim: usize,
    /// How many squares were examined.
    pub problems: usize,
    pub failures: Vec<LiftFailure>,
}

impl LiftReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) struct Square {
    pub generator: usize,
    pub top: MarkedMap,
    pub bottom: MarkedMap,
}

/// All commuting squares over `f` with a generator on the left: every marked
/// `top`, and for each one every `bottom` restricting to `f . top`.
pub(crate) fn squares(f: &MarkedMap, generators: &[Generator]) -> Vec<Square> {
    let mut out = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        for top in enumerate_marked_maps(g.map.source(), f.source(), SearchMode::All) {
            let composite = MarkedMap::compose(&top, f).expect("tops land in the source of f");
            let bottoms = marked_extensions_along(&g.map, &composite, SearchMode::All)
                .expect("generators are levelwise injective");
            for bottom in bottoms {
                out.push(Square {
                    generator: gi,
                    top: top.clone(),
                    bottom,
                });
            }
        }
    }
    out
}

fn report_on_squares(
    f: &MarkedMap,
    generators: &[Generator],
    n: usize,
    mode: SearchMode,
    bad: impl Fn(usize) -> bool + Sync,
) -> LiftReport {
    let squares = squares(f, generators);
    let failures: Vec<LiftFailure> = squares
        .par_iter()
        .filter_map(|sq| {
            let problem = LiftingProblem {
                j: generators[sq.generator].map.clone(),
                f: f.clone(),
                top: sq.top.clone(),
                bottom: sq.bottom.clone(),
            };
            let solution = solve_lift(&problem, mode);
            if bad(solution.fillers.len()) {
                Some(LiftFailure {
                    generator: generators[sq.generator].name.clone(),
                    fillers: solution.fillers.len(),
                    top: sq.top.underlying().clone(),
                    bottom: Some(sq.bottom.underlying().clone()),
                })
            } else {
                None
            }
        })
        .collect();
    LiftReport {
        dim: n,
        problems: squares.len(),
        failures,
    }
}

/// Right lifting property of `f` against every generator of the family up to
/// dimension `n`: each square must have at least one filler.
pub fn has_rlp(f: &MarkedMap, family: Family, n: usize) -> LiftReport {
    has_rlp_generators(f, &family.generators(n), n)
}

pub(crate) fn has_rlp_generators(f: &MarkedMap, generators: &[Generator], n: usize) -> LiftReport {
    report_on_squares(f, generators, n, SearchMode::First, |count| count == 0)
}

/// Like [`has_rlp`] but each square must have exactly one filler.  Squares
/// with several fillers are reported with their counts; strictly distinct
/// fillers may still be homotopic, which this check does not see.
pub fn is_orthogonal(f: &MarkedMap, family: Family, n: usize) -> LiftReport {
    report_on_squares(f, &family.generators(n), n, SearchMode::All, |count| {
        count != 1
    })
}

fn object_report(
    x: &MarkedSSet,
    family: Family,
    n: usize,
    mode: SearchMode,
    bad: impl Fn(usize) -> bool + Sync,
) -> LiftReport {
    let generators = family.generators(n);
    let mut tasks = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        for top in enumerate_marked_maps(g.map.source(), x, SearchMode::All) {
            tasks.push((gi, top));
        }
    }
    let failures: Vec<LiftFailure> = tasks
        .par_iter()
        .filter_map(|(gi, top)| {
            let fillers = marked_extensions_along(&generators[*gi].map, top, mode)
                .expect("generators are levelwise injective");
            if bad(fillers.len()) {
                Some(LiftFailure {
                    generator: generators[*gi].name.clone(),
                    fillers: fillers.len(),
                    top: top.underlying().clone(),
                    bottom: None,
                })
            } else {
                None
            }
        })
        .collect();
    LiftReport {
        dim: n,
        problems: tasks.len(),
        failures,
    }
}

/// Object-level right lifting: extensions along each generator must exist
/// for every marked map out of its source.  This is lifting against the map
/// to the terminal truncation, whose bottom squares are unique.
pub fn has_rlp_object(x: &MarkedSSet, family: Family, n: usize) -> LiftReport {
    object_report(x, family, n, SearchMode::First, |count| count == 0)
}

/// Object-level orthogonality: exactly one extension per problem.
pub fn is_orthogonal_object(x: &MarkedSSet, family: Family, n: usize) -> LiftReport {
    object_report(x, family, n, SearchMode::All, |count| count != 1)
}
