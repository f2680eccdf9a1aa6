//! Markings: distinguished sets of 1-simplices, and maps preserving them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::SemiSimplicialSet;
use crate::error::{Error, Result};
use crate::maps::{enumerate_maps, extensions_along, same_complex, SSetMap};
use crate::search::{self, ExtensionProblem, SearchMode};

/// A complex together with a set of marked edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSSet {
    carrier: Arc<SemiSimplicialSet>,
    marked: BTreeSet<usize>,
}

impl MarkedSSet {
    pub fn new(carrier: Arc<SemiSimplicialSet>, marked: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = marked.iter().find(|&&e| e >= carrier.level_size(1)) {
            return Err(Error::MarkingOutOfRange { index: bad });
        }
        Ok(MarkedSSet { carrier, marked })
    }

    /// Nothing marked.
    pub fn flat(carrier: Arc<SemiSimplicialSet>) -> Self {
        MarkedSSet {
            carrier,
            marked: BTreeSet::new(),
        }
    }

    /// Every edge marked.
    pub fn sharp(carrier: Arc<SemiSimplicialSet>) -> Self {
        let marked = (0..carrier.level_size(1)).collect();
        MarkedSSet { carrier, marked }
    }

    pub fn carrier(&self) -> &Arc<SemiSimplicialSet> {
        &self.carrier
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn is_marked(&self, edge: usize) -> bool {
        self.marked.contains(&edge)
    }

    pub fn is_flat(&self) -> bool {
        self.marked.is_empty()
    }

    pub fn is_sharp(&self) -> bool {
        self.marked.len() == self.carrier.level_size(1)
    }
}

/// A map of marked complexes: the underlying map must send marked edges to
/// marked edges.  Checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedMap {
    source: MarkedSSet,
    target: MarkedSSet,
    underlying: SSetMap,
}

impl MarkedMap {
    pub fn new(source: MarkedSSet, target: MarkedSSet, underlying: SSetMap) -> Result<Self> {
        if !same_complex(underlying.source(), source.carrier())
            || !same_complex(underlying.target(), target.carrier())
        {
            return Err(Error::NotComposable);
        }
        for &e in source.marked() {
            if !target.is_marked(underlying.apply(1, e)) {
                return Err(Error::MarkingNotPreserved { edge: e });
            }
        }
        Ok(MarkedMap {
            source,
            target,
            underlying,
        })
    }

    /// Wrap a plain map between flat complexes; always marking-preserving.
    pub fn flat(underlying: SSetMap) -> Self {
        MarkedMap {
            source: MarkedSSet::flat(Arc::clone(underlying.source())),
            target: MarkedSSet::flat(Arc::clone(underlying.target())),
            underlying,
        }
    }

    pub fn identity(m: &MarkedSSet) -> Self {
        MarkedMap {
            source: m.clone(),
            target: m.clone(),
            underlying: SSetMap::identity(m.carrier()),
        }
    }

    pub fn source(&self) -> &MarkedSSet {
        &self.source
    }

    pub fn target(&self) -> &MarkedSSet {
        &self.target
    }

    pub fn underlying(&self) -> &SSetMap {
        &self.underlying
    }

    pub fn apply(&self, n: usize, s: usize) -> usize {
        self.underlying.apply(n, s)
    }

    pub fn compose(first: &MarkedMap, second: &MarkedMap) -> Result<MarkedMap> {
        let underlying = SSetMap::compose(&first.underlying, &second.underlying)?;
        MarkedMap::new(first.source.clone(), second.target.clone(), underlying)
    }

    pub fn is_levelwise_injective(&self) -> bool {
        self.underlying.is_levelwise_injective()
    }
}

/// All marked maps `A -> X`.
pub fn enumerate_marked_maps(a: &MarkedSSet, x: &MarkedSSet, mode: SearchMode) -> Vec<MarkedMap> {
    if a.is_flat() {
        return enumerate_maps(a.carrier(), x.carrier(), mode)
            .into_iter()
            .map(|m| {
                MarkedMap::new(a.clone(), x.clone(), m).expect("flat sources preserve markings")
            })
            .collect();
    }
    let pinned: Vec<Vec<Option<usize>>> = (0..=a.carrier().dim_bound())
        .map(|n| vec![None; a.carrier().level_size(n)])
        .collect();
    let problem = ExtensionProblem {
        domain: a.carrier(),
        target: x.carrier(),
        pinned,
        marked_domain: Some(a.marked()),
        marked_target: Some(x.marked()),
        image: None,
    };
    search::search(&problem, mode)
        .assignments
        .into_iter()
        .map(|components| {
            let underlying = SSetMap::new(
                Arc::clone(a.carrier()),
                Arc::clone(x.carrier()),
                components,
            )
            .expect("search returns face-compatible assignments");
            MarkedMap::new(a.clone(), x.clone(), underlying)
                .expect("search enforces the marking constraint")
        })
        .collect()
}

/// All marked maps `B -> X` restricting to `g` along a levelwise injective
/// marked map `j : A -> B`.
pub fn marked_extensions_along(
    j: &MarkedMap,
    g: &MarkedMap,
    mode: SearchMode,
) -> Result<Vec<MarkedMap>> {
    if j.source() != g.source() {
        return Err(Error::NotComposable);
    }
    if !j.is_levelwise_injective() {
        return Err(Error::NotInjective);
    }
    if j.target().is_flat() {
        return Ok(extensions_along(j.underlying(), g.underlying(), mode)?
            .into_iter()
            .map(|m| {
                MarkedMap::new(j.target().clone(), g.target().clone(), m)
                    .expect("flat sources preserve markings")
            })
            .collect());
    }
    let problem = ExtensionProblem {
        domain: j.target().carrier(),
        target: g.target().carrier(),
        pinned: crate::maps::pinned_from(j.underlying(), g.underlying()),
        marked_domain: Some(j.target().marked()),
        marked_target: Some(g.target().marked()),
        image: None,
    };
    Ok(search::search(&problem, mode)
        .assignments
        .into_iter()
        .map(|components| {
            let underlying = SSetMap::new(
                Arc::clone(j.target().carrier()),
                Arc::clone(g.target().carrier()),
                components,
            )
            .expect("search returns face-compatible assignments");
            MarkedMap::new(j.target().clone(), g.target().clone(), underlying)
                .expect("search enforces the marking constraint")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard_simplex;

    #[test]
    fn marking_must_name_edges() {
        let d1 = Arc::new(standard_simplex(1));
        assert!(MarkedSSet::new(Arc::clone(&d1), BTreeSet::from([0])).is_ok());
        assert!(matches!(
            MarkedSSet::new(d1, BTreeSet::from([3])),
            Err(Error::MarkingOutOfRange { index: 3 })
        ));
    }

    #[test]
    fn marked_map_construction_checks_preservation() {
        let d1 = Arc::new(standard_simplex(1));
        let sharp = MarkedSSet::sharp(Arc::clone(&d1));
        let flat = MarkedSSet::flat(Arc::clone(&d1));
        let id = SSetMap::identity(&d1);
        // flat -> sharp is the marking-increasing map; fine.
        assert!(MarkedMap::new(flat.clone(), sharp.clone(), id.clone()).is_ok());
        // sharp -> flat would forget a marking; rejected.
        assert!(matches!(
            MarkedMap::new(sharp, flat, id),
            Err(Error::MarkingNotPreserved { edge: 0 })
        ));
    }

    #[test]
    fn marked_enumeration_filters_by_markings() {
        // Sharp edge into a triangle with one marked edge: only that edge
        // (and nothing else) receives it.
        let d1 = Arc::new(standard_simplex(1));
        let d2 = Arc::new(standard_simplex(2));
        let sharp_edge = MarkedSSet::sharp(Arc::clone(&d1));
        let e02 = d2.index_of(1, "02").unwrap();
        let partially = MarkedSSet::new(Arc::clone(&d2), BTreeSet::from([e02])).unwrap();
        let maps = enumerate_marked_maps(&sharp_edge, &partially, SearchMode::All);
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].apply(1, 0), e02);
        // Flat edge: all three edges work.
        let flat_edge = MarkedSSet::flat(Arc::clone(&d1));
        assert_eq!(
            enumerate_marked_maps(&flat_edge, &partially, SearchMode::All).len(),
            3
        );
    }
}
