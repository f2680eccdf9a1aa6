//! Maps of semi-simplicial sets: levelwise functions commuting with faces.

use std::sync::Arc;

use crate::complex::SemiSimplicialSet;
use crate::error::{Error, Result};
use crate::search::{self, ExtensionProblem, SearchMode};

/// A map of complexes.  Validity (totality, range, face commutation) is
/// checked at construction, so a value of this type is always an actual map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSetMap {
    source: Arc<SemiSimplicialSet>,
    target: Arc<SemiSimplicialSet>,
    components: Vec<Vec<usize>>,
}

/// Pointer or structural equality; maps built against separately constructed
/// but equal complexes still compose.
pub(crate) fn same_complex(a: &Arc<SemiSimplicialSet>, b: &Arc<SemiSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SSetMap {
    pub fn new(
        source: Arc<SemiSimplicialSet>,
        target: Arc<SemiSimplicialSet>,
        components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if components.len() != source.dim_bound() + 1 {
            return Err(Error::ComponentMismatch {
                dim: source.dim_bound(),
                expected: source.dim_bound() + 1,
                got: components.len(),
            });
        }
        for n in 0..=source.dim_bound() {
            if components[n].len() != source.level_size(n) {
                return Err(Error::ComponentMismatch {
                    dim: n,
                    expected: source.level_size(n),
                    got: components[n].len(),
                });
            }
            for (s, &x) in components[n].iter().enumerate() {
                if x >= target.level_size(n) {
                    return Err(Error::ComponentOutOfRange { dim: n, simplex: s });
                }
            }
        }
        for n in 1..=source.dim_bound() {
            for s in 0..source.level_size(n) {
                for i in 0..=n {
                    let lhs = target.face(n, components[n][s], i);
                    let rhs = components[n - 1][source.face(n, s, i)];
                    if lhs != rhs {
                        return Err(Error::NotCommuting {
                            dim: n,
                            simplex: s,
                            face: i,
                        });
                    }
                }
            }
        }
        Ok(SSetMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: &Arc<SemiSimplicialSet>) -> Self {
        let components = (0..=x.dim_bound())
            .map(|n| (0..x.level_size(n)).collect())
            .collect();
        SSetMap {
            source: Arc::clone(x),
            target: Arc::clone(x),
            components,
        }
    }

    /// The unique map to a complex with exactly one simplex in each level
    /// populated by `x` (e.g. a truncated terminal complex).
    pub fn terminal_map(x: &Arc<SemiSimplicialSet>, t: &Arc<SemiSimplicialSet>) -> Result<Self> {
        let mut components = Vec::with_capacity(x.dim_bound() + 1);
        for n in 0..=x.dim_bound() {
            if x.level_size(n) > 0 && t.level_size(n) != 1 {
                return Err(Error::InsufficientTruncation {
                    required: n,
                    actual: t.dim_bound().min(n.saturating_sub(1)),
                });
            }
            components.push(vec![0; x.level_size(n)]);
        }
        SSetMap::new(Arc::clone(x), Arc::clone(t), components)
    }

    /// Build a map by matching simplex ids, e.g. the inclusion of a horn in
    /// its simplex.  Every id of the source must appear in the target.
    pub fn by_ids(source: &Arc<SemiSimplicialSet>, target: &Arc<SemiSimplicialSet>) -> Result<Self> {
        let mut components = Vec::with_capacity(source.dim_bound() + 1);
        for n in 0..=source.dim_bound() {
            let mut level = Vec::with_capacity(source.level_size(n));
            for s in 0..source.level_size(n) {
                let id = source.id(n, s);
                let t = target.index_of(n, id).ok_or_else(|| Error::UnknownId {
                    dim: n,
                    id: id.to_string(),
                })?;
                level.push(t);
            }
            components.push(level);
        }
        SSetMap::new(Arc::clone(source), Arc::clone(target), components)
    }

    pub fn source(&self) -> &Arc<SemiSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SemiSimplicialSet> {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Image of simplex `s` at dimension `n`.  Levels above the source bound
    /// are empty, so asking for them is a caller bug.
    pub fn apply(&self, n: usize, s: usize) -> usize {
        self.components[n][s]
    }

    /// `compose(f, g) = g . f` (apply `f` first).
    pub fn compose(first: &SSetMap, second: &SSetMap) -> Result<SSetMap> {
        if !same_complex(&first.target, &second.source) {
            return Err(Error::NotComposable);
        }
        let components = (0..=first.source.dim_bound())
            .map(|n| {
                first.components[n]
                    .iter()
                    .map(|&x| second.components[n][x])
                    .collect()
            })
            .collect();
        Ok(SSetMap {
            source: Arc::clone(&first.source),
            target: Arc::clone(&second.target),
            components,
        })
    }

    pub fn is_levelwise_injective(&self) -> bool {
        for n in 0..=self.source.dim_bound() {
            let mut seen = vec![false; self.target.level_size(n)];
            for &x in &self.components[n] {
                if seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        true
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        if !self.is_levelwise_injective() {
            return false;
        }
        for n in 0..=self.target.dim_bound() {
            let hits = if n <= self.source.dim_bound() {
                self.components[n].len()
            } else {
                0
            };
            if hits != self.target.level_size(n) {
                return false;
            }
        }
        true
    }

    /// The inverse of a levelwise bijective map.
    pub fn inverse(&self) -> Result<SSetMap> {
        if !self.is_levelwise_bijective() {
            return Err(Error::NotInjective);
        }
        let mut components: Vec<Vec<usize>> = (0..=self.target.dim_bound())
            .map(|n| vec![0; self.target.level_size(n)])
            .collect();
        for n in 0..=self.source.dim_bound() {
            for (s, &x) in self.components[n].iter().enumerate() {
                components[n][x] = s;
            }
        }
        SSetMap::new(Arc::clone(&self.target), Arc::clone(&self.source), components)
    }
}

/// All maps `J -> X`, in the canonical order induced by the search.
/// The inclusion of standard simplices that skips vertex `i`; `src` and
/// `dst` must be the standard simplices of dimensions `n - 1` and `n`
/// (their ids are used for the lookup).
pub fn simplex_coface(
    src: &Arc<SemiSimplicialSet>,
    dst: &Arc<SemiSimplicialSet>,
    n: usize,
    i: usize,
) -> SSetMap {
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let mut level = Vec::with_capacity(src.level_size(k));
        for set in crate::complex::subsets_of_size(n - 1, k + 1) {
            let shifted: Vec<usize> = set
                .iter()
                .map(|&v| if v >= i { v + 1 } else { v })
                .collect();
            let idx = dst
                .index_of(k, &crate::complex::vertex_set_id(&shifted))
                .expect("every subset names a simplex face");
            level.push(idx);
        }
        components.push(level);
    }
    SSetMap::new(Arc::clone(src), Arc::clone(dst), components)
        .expect("vertex shifts commute with faces")
}

pub fn enumerate_maps(
    j: &Arc<SemiSimplicialSet>,
    x: &Arc<SemiSimplicialSet>,
    mode: SearchMode,
) -> Vec<SSetMap> {
    let pinned: Vec<Vec<Option<usize>>> = (0..=j.dim_bound())
        .map(|n| vec![None; j.level_size(n)])
        .collect();
    let problem = ExtensionProblem {
        domain: j,
        target: x,
        pinned,
        marked_domain: None,
        marked_target: None,
        image: None,
    };
    search::search(&problem, mode)
        .assignments
        .into_iter()
        .map(|components| SSetMap {
            source: Arc::clone(j),
            target: Arc::clone(x),
            components,
        })
        .collect()
}

pub(crate) fn pinned_from(j: &SSetMap, g: &SSetMap) -> Vec<Vec<Option<usize>>> {
    let b = j.target();
    let mut pinned: Vec<Vec<Option<usize>>> = (0..=b.dim_bound())
        .map(|n| vec![None; b.level_size(n)])
        .collect();
    for n in 0..=j.source().dim_bound() {
        for a in 0..j.source().level_size(n) {
            pinned[n][j.apply(n, a)] = Some(g.apply(n, a));
        }
    }
    pinned
}

/// All maps `B -> X` restricting to `g` along a levelwise injective
/// `j : A -> B`, i.e. the fillers of the triangle `g = (-) . j`.
pub fn extensions_along(j: &SSetMap, g: &SSetMap, mode: SearchMode) -> Result<Vec<SSetMap>> {
    if !same_complex(j.source(), g.source()) {
        return Err(Error::NotComposable);
    }
    if !j.is_levelwise_injective() {
        return Err(Error::NotInjective);
    }
    let problem = ExtensionProblem {
        domain: j.target(),
        target: g.target(),
        pinned: pinned_from(j, g),
        marked_domain: None,
        marked_target: None,
        image: None,
    };
    Ok(search::search(&problem, mode)
        .assignments
        .into_iter()
        .map(|components| SSetMap {
            source: Arc::clone(j.target()),
            target: Arc::clone(g.target()),
            components,
        })
        .collect())
}
