//! Slices of a complex at a map `p : J -> X`: the cells of the under-slice
//! are join maps `J * simplex(n) -> X` restricting to `p` on the left factor
//! (over-slices mirror this on the right).  Also the anchor-free variant that
//! collects every `p` at once into an augmented complex, plus two consumers:
//! terminal extension search and left mapping complexes between vertices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::augmented::AugmentedSSet;
use crate::complex::{standard_simplex, terminal_truncated, ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::join::{join, join_map, Join};
use crate::maps::{enumerate_maps, extensions_along, simplex_coface, SSetMap};
use crate::search::SearchMode;

/// Which factor of the join carries the anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Under,
    Over,
}

#[derive(Debug)]
pub struct Slice {
    pub complex: Arc<SemiSimplicialSet>,
    /// `witnesses[n][cell]` is the join map the cell stands for.
    pub witnesses: Vec<Vec<SSetMap>>,
    /// Restriction to the simplex factor, a map into the base complex.
    pub projection: SSetMap,
    /// The map the slice was taken at.
    pub anchor: SSetMap,
}

/// Slices consume one level of the base above their own dimension, so the
/// base must be truncated high enough for every requested level to be honest
/// rather than accidentally empty.
fn check_headroom(x: &SemiSimplicialSet, j: &SemiSimplicialSet, n: usize) -> Result<()> {
    let required = n as isize + j.dim() + 1;
    if (x.dim_bound() as isize) < required {
        return Err(Error::InsufficientTruncation {
            required: required.max(0) as usize,
            actual: x.dim_bound(),
        });
    }
    Ok(())
}

/// Build the slice cells from their witnesses: face `i` precomposes with the
/// coface of the simplex factor, and the result is looked up one level down.
fn assemble_cells(
    witnesses: &[Vec<SSetMap>],
    joins: &[Join],
    simplices: &[Arc<SemiSimplicialSet>],
    j: &Arc<SemiSimplicialSet>,
    side: Side,
) -> SemiSimplicialSet {
    let n = witnesses.len() - 1;
    let mut builder = ComplexBuilder::new();
    for i in 0..witnesses[0].len() {
        builder.add(0, format!("c0.{i}"), &[]).expect("fresh ids");
    }
    for k in 1..=n {
        let lower: HashMap<&[Vec<usize>], usize> = witnesses[k - 1]
            .iter()
            .enumerate()
            .map(|(i, w)| (w.components(), i))
            .collect();
        for (c, w) in witnesses[k].iter().enumerate() {
            let faces: Vec<usize> = (0..=k)
                .map(|i| {
                    let delta = simplex_coface(&simplices[k - 1], &simplices[k], k, i);
                    let id_j = SSetMap::identity(j);
                    let incl = match side {
                        Side::Under => join_map(&id_j, &delta, &joins[k - 1], &joins[k]),
                        Side::Over => join_map(&delta, &id_j, &joins[k - 1], &joins[k]),
                    }
                    .expect("join factor maps compose");
                    let restricted =
                        SSetMap::compose(&incl, w).expect("join inclusions compose");
                    lower[restricted.components()]
                })
                .collect();
            builder
                .add(k, format!("c{k}.{c}"), &faces)
                .expect("fresh ids");
        }
    }
    let complex = builder.build_unchecked().with_dim_bound(n);
    debug_assert!(complex.validate().is_valid());
    complex
}

fn slice_impl(p: &SSetMap, n: usize, side: Side) -> Result<Slice> {
    let j = p.source();
    let x = p.target();
    check_headroom(x, j, n)?;
    let mut simplices = Vec::with_capacity(n + 1);
    let mut joins = Vec::with_capacity(n + 1);
    let mut witnesses = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let simplex = Arc::new(standard_simplex(k));
        let jn = match side {
            Side::Under => join(j, &simplex),
            Side::Over => join(&simplex, j),
        };
        let inclusion = match side {
            Side::Under => &jn.left_inclusion,
            Side::Over => &jn.right_inclusion,
        };
        witnesses.push(extensions_along(inclusion, p, SearchMode::All)?);
        simplices.push(simplex);
        joins.push(jn);
    }
    let complex = Arc::new(assemble_cells(&witnesses, &joins, &simplices, j, side));
    let mut proj = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let top = match side {
            Side::Under => joins[k].right_index(k, 0),
            Side::Over => joins[k].left_index(k, 0),
        };
        proj.push(witnesses[k].iter().map(|w| w.apply(k, top)).collect());
    }
    let projection = SSetMap::new(Arc::clone(&complex), Arc::clone(x), proj)
        .expect("witness faces restrict to simplex faces");
    Ok(Slice {
        complex,
        witnesses,
        projection,
        anchor: p.clone(),
    })
}

/// The complex of simplices under the image of `p`: level `n` is the set of
/// maps `J * simplex(n) -> X` restricting to `p` on the left factor.
pub fn slice_under(p: &SSetMap, n: usize) -> Result<Slice> {
    slice_impl(p, n, Side::Under)
}

/// The mirror image of [`slice_under`], anchored on the right factor.
pub fn slice_over(p: &SSetMap, n: usize) -> Result<Slice> {
    slice_impl(p, n, Side::Over)
}

pub struct FreeSlice {
    /// Level `-1` holds one cell per anchor map; level `n` holds every map
    /// `J * simplex(n) -> X`, sitting over the anchor it restricts to.
    pub augmented: AugmentedSSet,
    /// All maps `J -> X` in enumeration order, one `(-1)`-cell each.
    pub anchors: Vec<SSetMap>,
    pub witnesses: Vec<Vec<SSetMap>>,
}

impl FreeSlice {
    /// Number of level-`k` cells sitting over the given anchor.
    pub fn fiber_level_count(&self, anchor: usize, k: usize) -> usize {
        (0..self.augmented.base().level_size(k))
            .filter(|&c| self.augmented.cell_over(k, c) == anchor)
            .count()
    }
}

/// Every slice of `X` along `J` at once: the disjoint union of the slices at
/// all anchors `p : J -> X`, augmented by the anchors themselves.
pub fn free_slice(
    x: &Arc<SemiSimplicialSet>,
    j: &Arc<SemiSimplicialSet>,
    n: usize,
) -> Result<FreeSlice> {
    check_headroom(x, j, n)?;
    let anchors = enumerate_maps(j, x, SearchMode::All);
    let anchor_index: HashMap<&[Vec<usize>], usize> = anchors
        .iter()
        .enumerate()
        .map(|(i, p)| (p.components(), i))
        .collect();
    let mut simplices = Vec::with_capacity(n + 1);
    let mut joins = Vec::with_capacity(n + 1);
    let mut witnesses = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let simplex = Arc::new(standard_simplex(k));
        let jn = join(j, &simplex);
        witnesses.push(enumerate_maps(&jn.complex, x, SearchMode::All));
        simplices.push(simplex);
        joins.push(jn);
    }
    let base = assemble_cells(&witnesses, &joins, &simplices, j, Side::Under);
    let augmentation = witnesses[0]
        .iter()
        .map(|w| {
            let restricted = SSetMap::compose(&joins[0].left_inclusion, w)
                .expect("join inclusions compose");
            anchor_index[restricted.components()]
        })
        .collect();
    let minus_one = (0..anchors.len()).map(|i| format!("p{i}")).collect();
    let augmented = AugmentedSSet::new(base, minus_one, augmentation)
        .expect("cells restrict to a single anchor");
    Ok(FreeSlice {
        augmented,
        anchors,
        witnesses,
    })
}

/// A chain of cells, one per dimension, every face of each being the
/// previous one.  Equivalently a map from a terminal truncation, pointed at
/// the bottom cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalExtension {
    pub cells: Vec<usize>,
}

impl TerminalExtension {
    pub fn new(x: &SemiSimplicialSet, cells: Vec<usize>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::ComponentMismatch {
                dim: 0,
                expected: 1,
                got: 0,
            });
        }
        for (k, &c) in cells.iter().enumerate() {
            if c >= x.level_size(k) {
                return Err(Error::ComponentOutOfRange { dim: k, simplex: c });
            }
        }
        for k in 1..cells.len() {
            for i in 0..=k {
                if x.face(k, cells[k], i) != cells[k - 1] {
                    return Err(Error::NotCommuting {
                        dim: k,
                        simplex: cells[k],
                        face: i,
                    });
                }
            }
        }
        Ok(TerminalExtension { cells })
    }

    /// The map from the terminal truncation of matching depth that the chain
    /// determines.
    pub fn to_map(&self, x: &Arc<SemiSimplicialSet>) -> SSetMap {
        let source = Arc::new(terminal_truncated(self.cells.len() - 1));
        let components = self.cells.iter().map(|&c| vec![c]).collect();
        SSetMap::new(source, Arc::clone(x), components)
            .expect("a terminal extension is a map from the terminal truncation")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminalSearch {
    Found(TerminalExtension),
    /// No chain reaches the requested dimension; `at` is the first dimension
    /// where every branch of the search ran out of candidates.
    Exhausted { at: usize },
}

/// Depth-first search for a terminal extension starting at the vertex `y`,
/// trying cells in index order at each dimension, so the result is the first
/// extension in the lexicographic order on chains.
pub fn find_terminal_extension(
    x: &SemiSimplicialSet,
    y: usize,
    n: usize,
) -> Result<TerminalSearch> {
    if y >= x.level_size(0) {
        return Err(Error::ComponentOutOfRange { dim: 0, simplex: y });
    }
    if x.dim_bound() < n {
        return Err(Error::InsufficientTruncation {
            required: n,
            actual: x.dim_bound(),
        });
    }
    let mut cells = vec![y];
    let mut start = 0usize;
    let mut deepest = 0usize;
    loop {
        let k = cells.len();
        if k > n {
            return Ok(TerminalSearch::Found(TerminalExtension { cells }));
        }
        let prev = *cells.last().expect("the chain retains its vertex");
        let chosen = (start..x.level_size(k)).find(|&s| (0..=k).all(|i| x.face(k, s, i) == prev));
        match chosen {
            Some(s) => {
                deepest = deepest.max(k);
                cells.push(s);
                start = 0;
            }
            None if k == 1 => {
                return Ok(TerminalSearch::Exhausted { at: deepest + 1 });
            }
            None => {
                let abandoned = cells.pop().expect("depth at least two here");
                start = abandoned + 1;
            }
        }
    }
}

#[derive(Debug)]
pub struct HomLeft {
    pub complex: Arc<SemiSimplicialSet>,
    pub base: Arc<SemiSimplicialSet>,
    /// The vertex the members start at.
    pub vertex: usize,
    /// `members[k][c]` is the underlying `(k + 1)`-simplex of the base.
    pub members: Vec<Vec<usize>>,
}

/// The left mapping complex from the vertex `x0` to the tip of a terminal
/// extension: level `n` collects the `(n + 1)`-simplices whose first vertex
/// is `x0` and whose face opposite it is `ext.cells[n]`, with faces induced
/// by the base faces that keep the first vertex.
pub fn hom_left(
    x: &Arc<SemiSimplicialSet>,
    x0: usize,
    ext: &TerminalExtension,
    n: usize,
) -> Result<HomLeft> {
    if x0 >= x.level_size(0) {
        return Err(Error::ComponentOutOfRange {
            dim: 0,
            simplex: x0,
        });
    }
    if x.dim_bound() < n + 1 {
        return Err(Error::InsufficientTruncation {
            required: n + 1,
            actual: x.dim_bound(),
        });
    }
    if ext.cells.len() <= n {
        return Err(Error::ExtensionTooShort {
            required: n,
            actual: ext.cells.len() - 1,
        });
    }
    for (k, &c) in ext.cells.iter().enumerate().take(n + 1) {
        if c >= x.level_size(k) {
            return Err(Error::ComponentOutOfRange { dim: k, simplex: c });
        }
    }
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    let mut positions: Vec<HashMap<usize, usize>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let level: Vec<usize> = (0..x.level_size(k + 1))
            .filter(|&s| x.vertex(k + 1, s, 0) == x0 && x.face(k + 1, s, 0) == ext.cells[k])
            .collect();
        positions.push(level.iter().enumerate().map(|(i, &s)| (s, i)).collect());
        members.push(level);
    }
    let mut builder = ComplexBuilder::new();
    for (k, level) in members.iter().enumerate() {
        for &s in level {
            let faces: Vec<usize> = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| positions[k - 1][&x.face(k + 1, s, i + 1)])
                    .collect()
            };
            builder
                .add(k, x.id(k + 1, s), &faces)
                .expect("base ids are unique per level");
        }
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(n));
    debug_assert!(complex.validate().is_valid());
    Ok(HomLeft {
        complex,
        base: Arc::clone(x),
        vertex: x0,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FiniteCategory;
    use crate::complex::{boundary, standard_simplex};
    use crate::simplicial::nerve;

    fn vertex_map(x: &Arc<SemiSimplicialSet>, v: usize) -> SSetMap {
        let pt = Arc::new(standard_simplex(0));
        SSetMap::new(pt, Arc::clone(x), vec![vec![v]]).unwrap()
    }

    #[test]
    fn under_slice_of_an_interval_counts_outgoing_simplices() {
        let x = Arc::new(standard_simplex(1).with_dim_bound(2));
        let slice = slice_under(&vertex_map(&x, 0), 1).unwrap();
        assert_eq!(slice.complex.level_sizes(), vec![1, 0]);
        // The one cell is the edge out of vertex 0, and the projection picks
        // out its other endpoint.
        assert_eq!(slice.projection.apply(0, 0), 1);
    }

    #[test]
    fn slices_need_headroom_above_the_requested_level() {
        let x = Arc::new(standard_simplex(1));
        let err = slice_under(&vertex_map(&x, 0), 1).unwrap_err();
        match err {
            Error::InsufficientTruncation { required, actual } => {
                assert_eq!((required, actual), (2, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn under_slice_of_a_group_nerve_doubles_each_level() {
        let nv = nerve(&FiniteCategory::cyclic_group(2), 4);
        let x = Arc::new(nv.simplicial.forget());
        let slice = slice_under(&vertex_map(&x, 0), 3).unwrap();
        assert_eq!(slice.complex.level_sizes(), vec![2, 4, 8, 16]);
    }

    #[test]
    fn over_slice_of_a_group_nerve_matches_the_under_slice() {
        let nv = nerve(&FiniteCategory::cyclic_group(2), 4);
        let x = Arc::new(nv.simplicial.forget());
        let slice = slice_over(&vertex_map(&x, 0), 2).unwrap();
        assert_eq!(slice.complex.level_sizes(), vec![2, 4, 8]);
    }

    #[test]
    fn free_slice_fibers_agree_with_anchored_slices() {
        let x = Arc::new(standard_simplex(1).with_dim_bound(2));
        let pt = Arc::new(standard_simplex(0));
        let free = free_slice(&x, &pt, 1).unwrap();
        assert_eq!(free.anchors.len(), 2);
        assert_eq!(free.augmented.base().level_sizes(), vec![1, 0]);
        for anchor in 0..2 {
            let slice = slice_under(&free.anchors[anchor], 1).unwrap();
            for k in 0..=1 {
                assert_eq!(
                    free.fiber_level_count(anchor, k),
                    slice.complex.level_size(k)
                );
            }
        }
    }

    #[test]
    fn free_slice_along_the_empty_complex_recovers_the_base() {
        let x = Arc::new(boundary(2));
        let empty = Arc::new(SemiSimplicialSet::empty(0));
        let free = free_slice(&x, &empty, 1).unwrap();
        assert_eq!(free.augmented.minus_one_size(), 1);
        assert_eq!(free.augmented.base().level_sizes(), x.level_sizes());
    }

    #[test]
    fn terminal_extension_of_a_group_nerve_is_the_identity_chain() {
        let nv = nerve(&FiniteCategory::cyclic_group(2), 3);
        let x = Arc::new(nv.simplicial.forget());
        match find_terminal_extension(&x, 0, 3).unwrap() {
            TerminalSearch::Found(ext) => {
                assert_eq!(x.id(1, ext.cells[1]), "e");
                assert_eq!(x.id(2, ext.cells[2]), "e,e");
                assert_eq!(x.id(3, ext.cells[3]), "e,e,e");
                let map = ext.to_map(&x);
                assert_eq!(map.source().level_sizes(), vec![1, 1, 1, 1]);
            }
            TerminalSearch::Exhausted { at } => panic!("exhausted at {at}"),
        }
    }

    #[test]
    fn terminal_extension_stops_where_candidates_run_out() {
        let x = standard_simplex(1);
        assert_eq!(
            find_terminal_extension(&x, 0, 1).unwrap(),
            TerminalSearch::Exhausted { at: 1 }
        );
        assert_eq!(
            find_terminal_extension(&x, 0, 0).unwrap(),
            TerminalSearch::Found(TerminalExtension { cells: vec![0] })
        );

        let mut builder = ComplexBuilder::new();
        builder.add(0, "v", &[]).unwrap();
        builder.add(1, "e", &[0, 0]).unwrap();
        let looped = builder.build_unchecked().with_dim_bound(2);
        assert_eq!(
            find_terminal_extension(&looped, 0, 2).unwrap(),
            TerminalSearch::Exhausted { at: 2 }
        );
    }

    #[test]
    fn hom_left_of_a_group_nerve_is_levelwise_the_group() {
        let nv = nerve(&FiniteCategory::cyclic_group(2), 4);
        let x = Arc::new(nv.simplicial.forget());
        let ext = match find_terminal_extension(&x, 0, 3).unwrap() {
            TerminalSearch::Found(ext) => ext,
            TerminalSearch::Exhausted { at } => panic!("exhausted at {at}"),
        };
        let hom = hom_left(&x, 0, &ext, 3).unwrap();
        assert_eq!(hom.complex.level_sizes(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn hom_left_counts_poset_arrows() {
        let nv = nerve(&FiniteCategory::poset_chain(2), 3);
        let x = Arc::new(nv.simplicial.forget());
        let to_top = match find_terminal_extension(&x, 2, 2).unwrap() {
            TerminalSearch::Found(ext) => ext,
            TerminalSearch::Exhausted { at } => panic!("exhausted at {at}"),
        };
        let hom = hom_left(&x, 0, &to_top, 2).unwrap();
        assert_eq!(hom.complex.level_sizes(), vec![1, 1, 1]);

        let to_bottom = match find_terminal_extension(&x, 0, 2).unwrap() {
            TerminalSearch::Found(ext) => ext,
            TerminalSearch::Exhausted { at } => panic!("exhausted at {at}"),
        };
        let none = hom_left(&x, 2, &to_bottom, 2).unwrap();
        assert_eq!(none.complex.level_sizes(), vec![0, 0, 0]);
    }

    #[test]
    fn hom_left_guards_its_inputs() {
        let nv = nerve(&FiniteCategory::poset_chain(2), 3);
        let x = Arc::new(nv.simplicial.forget());
        let ext = match find_terminal_extension(&x, 2, 1).unwrap() {
            TerminalSearch::Found(ext) => ext,
            TerminalSearch::Exhausted { at } => panic!("exhausted at {at}"),
        };
        match hom_left(&x, 0, &ext, 2).unwrap_err() {
            Error::ExtensionTooShort { required, actual } => {
                assert_eq!((required, actual), (2, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
        match hom_left(&x, 0, &ext, 3).unwrap_err() {
            Error::InsufficientTruncation { required, .. } => assert_eq!(required, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
