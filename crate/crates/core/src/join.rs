//! Joins of semi-simplicial sets.  An `n`-simplex of `J * K` is a simplex
//! of `J`, a simplex of `K`, or a pair whose dimensions sum to `n - 1`,
//! with the left factor occupying the initial vertices.

use std::collections::HashMap;
use std::sync::Arc;

use crate::augmented::AugmentedSSet;
use crate::complex::{ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::{same_complex, SSetMap};
use crate::marking::MarkedSSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinCell {
    Left(usize),
    Right(usize),
    Pair {
        left_dim: usize,
        left: usize,
        right: usize,
    },
}

/// Level layout of a join: left simplices first, then right, then pairs
/// ordered by left dimension.  Indices are arithmetic in the factor sizes.
#[derive(Debug, Clone)]
struct JoinIndex {
    left_sizes: Vec<usize>,
    right_sizes: Vec<usize>,
}

impl JoinIndex {
    fn left_count(&self, n: usize) -> usize {
        self.left_sizes.get(n).copied().unwrap_or(0)
    }

    fn right_count(&self, n: usize) -> usize {
        self.right_sizes.get(n).copied().unwrap_or(0)
    }

    fn left(&self, _n: usize, s: usize) -> usize {
        s
    }

    fn right(&self, n: usize, t: usize) -> usize {
        self.left_count(n) + t
    }

    fn pair(&self, n: usize, left_dim: usize, left: usize, right: usize) -> usize {
        let mut idx = self.left_count(n) + self.right_count(n);
        for i in 0..left_dim {
            idx += self.left_count(i) * self.right_count(n - 1 - i);
        }
        idx + left * self.right_count(n - 1 - left_dim) + right
    }
}

pub struct Join {
    pub complex: Arc<SemiSimplicialSet>,
    pub left_inclusion: SSetMap,
    pub right_inclusion: SSetMap,
    cells: Vec<Vec<JoinCell>>,
    index: JoinIndex,
}

impl Join {
    pub fn cell(&self, n: usize, idx: usize) -> JoinCell {
        self.cells[n][idx]
    }

    /// Index in `J * K` of a left simplex at its own level.
    pub fn left_index(&self, n: usize, s: usize) -> usize {
        self.index.left(n, s)
    }

    pub fn right_index(&self, n: usize, t: usize) -> usize {
        self.index.right(n, t)
    }

    /// Index of the pair of a `left_dim`-simplex and an
    /// `(n - 1 - left_dim)`-simplex at level `n`.
    pub fn pair_index(&self, n: usize, left_dim: usize, left: usize, right: usize) -> usize {
        self.index.pair(n, left_dim, left, right)
    }
}

pub fn join(j: &Arc<SemiSimplicialSet>, k: &Arc<SemiSimplicialSet>) -> Join {
    let bound = j.dim_bound() + k.dim_bound() + 1;
    let index = JoinIndex {
        left_sizes: (0..=bound).map(|n| j.level_size(n)).collect(),
        right_sizes: (0..=bound).map(|n| k.level_size(n)).collect(),
    };
    let mut builder = ComplexBuilder::new();
    let mut cells: Vec<Vec<JoinCell>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level = Vec::new();
        for s in 0..j.level_size(n) {
            let faces: Vec<usize> = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| index.left(n - 1, j.face(n, s, i))).collect()
            };
            builder
                .add(n, format!("({}|)", j.id(n, s)), &faces)
                .expect("left ids are fresh");
            level.push(JoinCell::Left(s));
        }
        for t in 0..k.level_size(n) {
            let faces: Vec<usize> = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| index.right(n - 1, k.face(n, t, i)))
                    .collect()
            };
            builder
                .add(n, format!("(|{})", k.id(n, t)), &faces)
                .expect("right ids are fresh");
            level.push(JoinCell::Right(t));
        }
        for i in 0..n {
            let jdim = n - 1 - i;
            for l in 0..j.level_size(i) {
                for r in 0..k.level_size(jdim) {
                    let faces: Vec<usize> = (0..=n)
                        .map(|f| {
                            if f <= i {
                                if i == 0 {
                                    index.right(n - 1, r)
                                } else {
                                    index.pair(n - 1, i - 1, j.face(i, l, f), r)
                                }
                            } else if jdim == 0 {
                                index.left(n - 1, l)
                            } else {
                                index.pair(n - 1, i, l, k.face(jdim, r, f - i - 1))
                            }
                        })
                        .collect();
                    builder
                        .add(n, format!("({}|{})", j.id(i, l), k.id(jdim, r)), &faces)
                        .expect("pair ids are fresh");
                    level.push(JoinCell::Pair {
                        left_dim: i,
                        left: l,
                        right: r,
                    });
                }
            }
        }
        cells.push(level);
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(bound));
    debug_assert!(complex.validate().is_valid());
    let left_components: Vec<Vec<usize>> = (0..=j.dim_bound())
        .map(|n| (0..j.level_size(n)).collect())
        .collect();
    let left_inclusion = SSetMap::new(Arc::clone(j), Arc::clone(&complex), left_components)
        .expect("the left part embeds with its own faces");
    let right_components: Vec<Vec<usize>> = (0..=k.dim_bound())
        .map(|n| (0..k.level_size(n)).map(|t| index.right(n, t)).collect())
        .collect();
    let right_inclusion = SSetMap::new(Arc::clone(k), Arc::clone(&complex), right_components)
        .expect("the right part embeds after the left");
    Join {
        complex,
        left_inclusion,
        right_inclusion,
        cells,
        index,
    }
}

/// The join of two maps, `f * g : J * K -> J' * K'`.
pub fn join_map(f: &SSetMap, g: &SSetMap, src: &Join, dst: &Join) -> Result<SSetMap> {
    if !same_complex(f.source(), src.left_inclusion.source())
        || !same_complex(g.source(), src.right_inclusion.source())
        || !same_complex(f.target(), dst.left_inclusion.source())
        || !same_complex(g.target(), dst.right_inclusion.source())
    {
        return Err(Error::NotComposable);
    }
    let bound = src.complex.dim_bound();
    let components: Vec<Vec<usize>> = (0..=bound)
        .map(|n| {
            src.cells[n]
                .iter()
                .map(|cell| match *cell {
                    JoinCell::Left(s) => dst.left_index(n, f.apply(n, s)),
                    JoinCell::Right(t) => dst.right_index(n, g.apply(n, t)),
                    JoinCell::Pair {
                        left_dim,
                        left,
                        right,
                    } => dst.pair_index(
                        n,
                        left_dim,
                        f.apply(left_dim, left),
                        g.apply(n - 1 - left_dim, right),
                    ),
                })
                .collect()
        })
        .collect();
    SSetMap::new(
        Arc::clone(&src.complex),
        Arc::clone(&dst.complex),
        components,
    )
}

pub struct MarkedJoin {
    pub join: Join,
    pub marked: MarkedSSet,
}

/// Joins of marked complexes mark exactly the images of the two factors'
/// marked edges; mixed edges stay unmarked.
pub fn marked_join(a: &MarkedSSet, b: &MarkedSSet) -> MarkedJoin {
    let join = join(a.carrier(), b.carrier());
    let mut marked = std::collections::BTreeSet::new();
    for &e in a.marked() {
        marked.insert(join.left_index(1, e));
    }
    for &e in b.marked() {
        marked.insert(join.right_index(1, e));
    }
    let marked = MarkedSSet::new(Arc::clone(&join.complex), marked)
        .expect("factor edges land at level one");
    MarkedJoin { join, marked }
}

pub struct AugmentedJoin {
    pub augmented: AugmentedSSet,
    /// `(left dim, left, right)` per cell and level; dimension -1 points
    /// into the factor's (-1)-cells.
    cells: Vec<Vec<(isize, usize, usize)>>,
}

impl AugmentedJoin {
    pub fn cell(&self, n: usize, idx: usize) -> (isize, usize, usize) {
        self.cells[n][idx]
    }

    pub fn index_of_cell(&self, n: usize, cell: (isize, usize, usize)) -> Option<usize> {
        self.cells[n].iter().position(|&c| c == cell)
    }
}

/// The augmented join: every `n`-cell is a pair with dimensions summing to
/// `n - 1`, where either side may be a (-1)-cell.  Pure parts appear once
/// per (-1)-cell of the other factor.
pub fn augmented_join(a: &AugmentedSSet, b: &AugmentedSSet) -> AugmentedJoin {
    let bound = a.base().dim_bound() + b.base().dim_bound() + 1;
    let a_size = |i: isize| -> usize {
        if i == -1 {
            a.minus_one_size()
        } else {
            a.base().level_size(i as usize)
        }
    };
    let b_size = |j: isize| -> usize {
        if j == -1 {
            b.minus_one_size()
        } else {
            b.base().level_size(j as usize)
        }
    };
    let a_id = |i: isize, l: usize| -> String {
        if i == -1 {
            a.minus_one_id(l).to_string()
        } else {
            a.base().id(i as usize, l).to_string()
        }
    };
    let b_id = |j: isize, r: usize| -> String {
        if j == -1 {
            b.minus_one_id(r).to_string()
        } else {
            b.base().id(j as usize, r).to_string()
        }
    };
    let mut minus_one = Vec::new();
    for l in 0..a.minus_one_size() {
        for r in 0..b.minus_one_size() {
            minus_one.push(format!("({}|{})", a.minus_one_id(l), b.minus_one_id(r)));
        }
    }
    let minus_index = |l: usize, r: usize| l * b.minus_one_size() + r;
    let mut builder = ComplexBuilder::new();
    let mut cells: Vec<Vec<(isize, usize, usize)>> = Vec::with_capacity(bound + 1);
    let mut index: Vec<HashMap<(isize, usize, usize), usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level = Vec::new();
        let mut level_index = HashMap::new();
        for i in -1..=(n as isize) {
            let jdim = (n as isize) - 1 - i;
            for l in 0..a_size(i) {
                for r in 0..b_size(jdim) {
                    let faces: Vec<usize> = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n)
                            .map(|f| {
                                let key = if (f as isize) <= i {
                                    if i == 0 {
                                        (-1, a.augmentation(l), r)
                                    } else {
                                        (i - 1, a.base().face(i as usize, l, f), r)
                                    }
                                } else if jdim == 0 {
                                    (i, l, b.augmentation(r))
                                } else {
                                    (
                                        i,
                                        l,
                                        b.base().face(jdim as usize, r, f - (i + 1) as usize),
                                    )
                                };
                                index[n - 1][&key]
                            })
                            .collect()
                    };
                    let idx = builder
                        .add(n, format!("({}|{})", a_id(i, l), b_id(jdim, r)), &faces)
                        .expect("augmented join ids are fresh");
                    level_index.insert((i, l, r), idx);
                    level.push((i, l, r));
                }
            }
        }
        cells.push(level);
        index.push(level_index);
    }
    let base = builder.build_unchecked().with_dim_bound(bound);
    debug_assert!(base.validate().is_valid());
    let augmentation: Vec<usize> = cells[0]
        .iter()
        .map(|&(i, l, r)| {
            if i == -1 {
                minus_index(l, b.augmentation(r))
            } else {
                minus_index(a.augmentation(l), r)
            }
        })
        .collect();
    let augmented = AugmentedSSet::new(base, minus_one, augmentation)
        .expect("join endpoints stay over one cell");
    AugmentedJoin { augmented, cells }
}
