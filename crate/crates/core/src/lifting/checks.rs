//! Named fibrancy checks: thin wrappers that pick a generating family and
//! run the lifting search up to a dimension bound.
//!
//! Object checks ask for truncation `n + 1` so fillers for the top horns
//! exist in the complex; map checks ask for `n` on both ends, which is what
//! the square enumeration actually consumes.

use crate::error::{Error, Result};
use crate::marking::{MarkedMap, MarkedSSet};
use crate::unitality::{self, TwoOutOfSixReport};

use super::families::{flat_horn, Family};
use super::solve::{has_rlp_generators, has_rlp_object, is_orthogonal_object, LiftReport};

fn require_object_bound(x: &MarkedSSet, n: usize) -> Result<()> {
    let actual = x.carrier().dim_bound();
    if actual < n + 1 {
        return Err(Error::InsufficientTruncation {
            required: n + 1,
            actual,
        });
    }
    Ok(())
}

fn require_map_bound(f: &MarkedMap, n: usize) -> Result<()> {
    for end in [f.source(), f.target()] {
        let actual = end.carrier().dim_bound();
        if actual < n {
            return Err(Error::InsufficientTruncation {
                required: n,
                actual,
            });
        }
    }
    Ok(())
}

/// Every horn up to dimension `n` fills.
pub fn is_kan(x: &MarkedSSet, n: usize) -> Result<LiftReport> {
    require_object_bound(x, n)?;
    Ok(has_rlp_object(x, Family::Horns, n))
}

/// Every inner horn up to dimension `n` fills.
pub fn is_inner_kan(x: &MarkedSSet, n: usize) -> Result<LiftReport> {
    require_object_bound(x, n)?;
    Ok(has_rlp_object(x, Family::InnerHorns, n))
}

/// Exactly one extension against every admissible generator.  Fillers are
/// compared on the nose, so a pair of distinct homotopic fillers also
/// reports as a failure; the counts are in the report.
pub fn is_complete_semi_segal(x: &MarkedSSet, n: usize) -> Result<LiftReport> {
    require_object_bound(x, n)?;
    Ok(is_orthogonal_object(x, Family::AdmissibleHorns, n))
}

/// The three conditions a marked complex must satisfy to be marked inner
/// Kan: extensions against the admissible generators, every marked edge an
/// equivalence, and closure of the marking under two-out-of-six.
#[derive(Debug, Clone)]
pub struct MarkedInnerKanReport {
    pub lifting: LiftReport,
    /// Marked edges that the horn criterion does not certify as
    /// equivalences.
    pub non_equivalence_marked: Vec<usize>,
    pub two_out_of_six: TwoOutOfSixReport,
}

impl MarkedInnerKanReport {
    pub fn holds(&self) -> bool {
        self.lifting.holds() && self.non_equivalence_marked.is_empty() && self.two_out_of_six.holds()
    }
}

pub fn is_marked_inner_kan(x: &MarkedSSet, n: usize) -> Result<MarkedInnerKanReport> {
    require_object_bound(x, n)?;
    let lifting = has_rlp_object(x, Family::AdmissibleHorns, n);
    let equivalences = unitality::equivalences_horn(x.carrier(), n)?;
    let non_equivalence_marked = x
        .marked()
        .iter()
        .copied()
        .filter(|e| !equivalences.contains(e))
        .collect();
    let two_out_of_six = unitality::check_two_out_of_six(x.carrier(), x.marked());
    Ok(MarkedInnerKanReport {
        lifting,
        non_equivalence_marked,
        two_out_of_six,
    })
}

/// Right lifting against the boundary inclusions, levelwise surjectivity
/// with compatible fillers.
pub fn is_trivial_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    Ok(has_rlp_generators(f, &Family::Boundaries.generators(n), n))
}

pub fn is_inner_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    Ok(has_rlp_generators(f, &Family::InnerHorns.generators(n), n))
}

pub fn is_left_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    Ok(has_rlp_generators(f, &Family::LeftHorns.generators(n), n))
}

pub fn is_right_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    Ok(has_rlp_generators(f, &Family::RightHorns.generators(n), n))
}

pub fn is_marked_inner_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    Ok(has_rlp_generators(
        f,
        &Family::AdmissibleHorns.generators(n),
        n,
    ))
}

/// Admissible generators plus the flat initial horns: the marked horns
/// handle composition with marked edges, the flat ones force cocartesian
/// behaviour in every dimension.
pub fn is_marked_left_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    let mut generators = Family::AdmissibleHorns.generators(n);
    generators.extend((1..=n).map(|k| flat_horn(k, 0)));
    Ok(has_rlp_generators(f, &generators, n))
}

pub fn is_marked_right_fibration(f: &MarkedMap, n: usize) -> Result<LiftReport> {
    require_map_bound(f, n)?;
    let mut generators = Family::AdmissibleHorns.generators(n);
    generators.extend((1..=n).map(|k| flat_horn(k, k)));
    Ok(has_rlp_generators(f, &generators, n))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::FiniteCategory;
    use crate::complex::{standard_simplex, terminal_truncated};
    use crate::maps::SSetMap;
    use crate::simplicial::nerve;
    use crate::unitality::natural_marking;

    fn flat_nerve(c: &FiniteCategory, trunc: usize) -> MarkedSSet {
        MarkedSSet::flat(Arc::new(nerve(c, trunc).simplicial.forget()))
    }

    #[test]
    fn group_nerves_are_kan() {
        let x = flat_nerve(&FiniteCategory::cyclic_group(2), 3);
        let report = is_kan(&x, 2).unwrap();
        assert!(report.holds(), "failures: {:?}", report.failures);
    }

    #[test]
    fn poset_nerves_are_inner_kan_but_not_kan() {
        let x = flat_nerve(&FiniteCategory::poset_chain(1), 3);
        assert!(is_inner_kan(&x, 2).unwrap().holds());
        let report = is_kan(&x, 2).unwrap();
        assert!(!report.holds());
        // Both outer horns break: horn(2,0) wants a left inverse of the
        // arrow, and horn(2,2) wants to divide the identity by it.  Inner
        // horns always fill since composites exist.
        assert!(!report.failures.is_empty());
        for f in &report.failures {
            assert!(f.generator == "horn(2,0)" || f.generator == "horn(2,2)");
        }
        for g in ["horn(2,0)", "horn(2,2)"] {
            assert!(report.failures.iter().any(|f| f.generator == g));
        }
    }

    #[test]
    fn simplices_are_inner_kan() {
        let x = MarkedSSet::flat(Arc::new(standard_simplex(3)));
        assert!(is_inner_kan(&x, 2).unwrap().holds());
    }

    #[test]
    fn object_checks_demand_one_extra_level() {
        let x = MarkedSSet::flat(Arc::new(standard_simplex(2)));
        match is_inner_kan(&x, 2) {
            Err(Error::InsufficientTruncation { required: 3, actual: 2 }) => {}
            other => panic!("expected a truncation error, got {other:?}"),
        }
    }

    #[test]
    fn sharp_group_nerves_are_marked_inner_kan() {
        let z2 = Arc::new(nerve(&FiniteCategory::cyclic_group(2), 3).simplicial.forget());
        let x = MarkedSSet::sharp(z2);
        let report = is_marked_inner_kan(&x, 2).unwrap();
        assert!(report.holds(), "lifting failures: {:?}", report.lifting.failures);
    }

    #[test]
    fn diagonal_marking_fails_the_exchange_generator() {
        let d3 = Arc::new(standard_simplex(3).with_dim_bound(4));
        let e02 = d3.index_of(1, "02").unwrap();
        let e13 = d3.index_of(1, "13").unwrap();
        let x = MarkedSSet::new(d3, [e02, e13].into_iter().collect()).unwrap();
        let report = is_marked_inner_kan(&x, 3).unwrap();
        assert!(!report.holds());
        assert!(report
            .lifting
            .failures
            .iter()
            .any(|f| f.generator == "exchange"));
        assert!(!report.two_out_of_six.holds());
    }

    #[test]
    fn sharp_group_nerves_are_not_complete() {
        let z2 = Arc::new(nerve(&FiniteCategory::cyclic_group(2), 3).simplicial.forget());
        let x = MarkedSSet::sharp(z2);
        let report = is_complete_semi_segal(&x, 2).unwrap();
        assert!(!report.holds());
        let bad = report
            .failures
            .iter()
            .find(|f| f.generator == "left-horn(1)")
            .expect("both loops fill the marked interval");
        assert_eq!(bad.fillers, 2);
    }

    #[test]
    fn poset_nerves_with_identity_marking_are_complete() {
        let chain = Arc::new(nerve(&FiniteCategory::poset_chain(2), 3).simplicial.forget());
        let x = natural_marking(&chain, 2).unwrap();
        let report = is_complete_semi_segal(&x, 2).unwrap();
        assert!(report.holds(), "failures: {:?}", report.failures);
    }

    #[test]
    fn sharp_group_nerves_are_marked_left_fibrant_over_the_point() {
        let z2 = Arc::new(nerve(&FiniteCategory::cyclic_group(2), 3).simplicial.forget());
        let x = MarkedSSet::sharp(Arc::clone(&z2));
        let t = MarkedSSet::sharp(Arc::new(terminal_truncated(3)));
        let f = MarkedMap::new(
            x,
            t.clone(),
            SSetMap::terminal_map(&z2, t.carrier()).unwrap(),
        )
        .unwrap();
        let report = is_marked_left_fibration(&f, 2).unwrap();
        assert!(report.holds(), "failures: {:?}", report.failures);
    }

    #[test]
    fn poset_nerves_are_not_marked_left_fibrant_over_the_point() {
        let chain = Arc::new(nerve(&FiniteCategory::poset_chain(1), 3).simplicial.forget());
        let x = natural_marking(&chain, 2).unwrap();
        let t = MarkedSSet::sharp(Arc::new(terminal_truncated(3)));
        let f = MarkedMap::new(
            x,
            t.clone(),
            SSetMap::terminal_map(&chain, t.carrier()).unwrap(),
        )
        .unwrap();
        let report = is_marked_left_fibration(&f, 2).unwrap();
        assert!(!report.holds());
        assert!(report.failures.iter().any(|f| f.generator == "horn(2,0)"));
    }
}
