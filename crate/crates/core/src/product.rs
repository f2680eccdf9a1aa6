//! The geometric product of semi-simplicial sets.  An `n`-cell is a pair of
//! simplices together with a shuffle: two monotone surjections out of `[n]`
//! that are jointly injective, i.e. a lattice path whose steps advance at
//! least one coordinate.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::{ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::{same_complex, SSetMap};
use crate::marking::MarkedSSet;
use crate::simplicial::{simplicial_product, FreeSimplicial, SimplicialProduct};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductCell {
    pub left_dim: usize,
    pub right_dim: usize,
    pub left: usize,
    pub right: usize,
    /// `a : [n] ->> [left_dim]`, one value per vertex of the cell.
    pub a: Vec<usize>,
    /// `b : [n] ->> [right_dim]`, jointly injective with `a`.
    pub b: Vec<usize>,
}

#[derive(Debug)]
pub struct Product {
    pub complex: Arc<SemiSimplicialSet>,
    pub left: Arc<SemiSimplicialSet>,
    pub right: Arc<SemiSimplicialSet>,
    cells: Vec<Vec<ProductCell>>,
    index: Vec<HashMap<ProductCell, usize>>,
}

impl Product {
    pub fn cell(&self, n: usize, idx: usize) -> &ProductCell {
        &self.cells[n][idx]
    }

    pub fn index_of(&self, n: usize, cell: &ProductCell) -> Option<usize> {
        self.index.get(n)?.get(cell).copied()
    }
}

/// Lattice paths from `(0, 0)` to `(p, q)` with `n` steps in
/// `{(1,0), (0,1), (1,1)}`, as vertex tracks `(a, b)`.  The generation
/// order (right step, left step, both) is the canonical cell order.
fn shuffles(n: usize, p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut a = vec![0usize];
    let mut b = vec![0usize];
    fn rec(
        n: usize,
        p: usize,
        q: usize,
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let (ca, cb) = (*a.last().unwrap(), *b.last().unwrap());
        if a.len() == n + 1 {
            if ca == p && cb == q {
                out.push((a.clone(), b.clone()));
            }
            return;
        }
        let rem = n + 1 - a.len() - 1;
        for (da, db) in [(0, 1), (1, 0), (1, 1)] {
            let (na, nb) = (ca + da, cb + db);
            // Each remaining step advances each coordinate by at most one
            // and the pair by at least one.
            if na <= p
                && nb <= q
                && (p - na).max(q - nb) <= rem
                && rem <= (p - na) + (q - nb)
            {
                a.push(na);
                b.push(nb);
                rec(n, p, q, a, b, out);
                a.pop();
                b.pop();
            }
        }
    }
    if p > n || q > n || p + q < n {
        return out;
    }
    rec(n, p, q, &mut a, &mut b, &mut out);
    out
}

fn track_id(track: &[usize]) -> String {
    if track.iter().all(|&v| v < 10) {
        track.iter().map(|v| v.to_string()).collect()
    } else {
        track
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
}

/// Drop one skipped value from a track, pushing it into the simplex.
fn normalize_track(
    x: &SemiSimplicialSet,
    dim: &mut usize,
    simplex: &mut usize,
    track: &mut [usize],
) {
    let mut present = vec![false; *dim + 1];
    for &v in track.iter() {
        present[v] = true;
    }
    if let Some(v) = (0..=*dim).find(|&v| !present[v]) {
        *simplex = x.face(*dim, *simplex, v);
        for t in track.iter_mut() {
            if *t > v {
                *t -= 1;
            }
        }
        *dim -= 1;
        debug_assert!({
            let mut seen = vec![false; *dim + 1];
            for &t in track.iter() {
                seen[t] = true;
            }
            seen.iter().all(|&s| s)
        });
    }
}

/// Face `f` of a product cell: drop the vertex, then repair each track that
/// lost a value (at most one per side).
fn face_cell(
    x: &SemiSimplicialSet,
    y: &SemiSimplicialSet,
    cell: &ProductCell,
    f: usize,
) -> ProductCell {
    let mut a = cell.a.clone();
    let mut b = cell.b.clone();
    a.remove(f);
    b.remove(f);
    let (mut p, mut q) = (cell.left_dim, cell.right_dim);
    let (mut l, mut r) = (cell.left, cell.right);
    normalize_track(x, &mut p, &mut l, &mut a);
    normalize_track(y, &mut q, &mut r, &mut b);
    ProductCell {
        left_dim: p,
        right_dim: q,
        left: l,
        right: r,
        a,
        b,
    }
}

/// The geometric product, truncated at `bound` (which defaults to the sum
/// of the factors' bounds in [`geometric_product`]).
pub fn geometric_product_truncated(
    x: &Arc<SemiSimplicialSet>,
    y: &Arc<SemiSimplicialSet>,
    bound: usize,
) -> Product {
    let mut builder = ComplexBuilder::new();
    let mut cells: Vec<Vec<ProductCell>> = Vec::with_capacity(bound + 1);
    let mut index: Vec<HashMap<ProductCell, usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level = Vec::new();
        let mut level_index = HashMap::new();
        for p in 0..=n.min(x.dim_bound()) {
            for q in 0..=n.min(y.dim_bound()) {
                if p + q < n {
                    continue;
                }
                for l in 0..x.level_size(p) {
                    for r in 0..y.level_size(q) {
                        for (a, b) in shuffles(n, p, q) {
                            let cell = ProductCell {
                                left_dim: p,
                                right_dim: q,
                                left: l,
                                right: r,
                                a,
                                b,
                            };
                            let faces: Vec<usize> = if n == 0 {
                                Vec::new()
                            } else {
                                (0..=n)
                                    .map(|f| index[n - 1][&face_cell(x, y, &cell, f)])
                                    .collect()
                            };
                            let id = format!(
                                "({}x{}@{}|{})",
                                x.id(p, l),
                                y.id(q, r),
                                track_id(&cell.a),
                                track_id(&cell.b)
                            );
                            let idx =
                                builder.add(n, id, &faces).expect("product cells are unique");
                            level_index.insert(cell.clone(), idx);
                            level.push(cell);
                        }
                    }
                }
            }
        }
        cells.push(level);
        index.push(level_index);
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(bound));
    debug_assert!(complex.validate().is_valid());
    Product {
        complex,
        left: Arc::clone(x),
        right: Arc::clone(y),
        cells,
        index,
    }
}

pub fn geometric_product(
    x: &Arc<SemiSimplicialSet>,
    y: &Arc<SemiSimplicialSet>,
) -> Product {
    geometric_product_truncated(x, y, x.dim_bound() + y.dim_bound())
}

/// The product of two maps; shuffles carry over unchanged.
pub fn product_map(f: &SSetMap, g: &SSetMap, src: &Product, dst: &Product) -> Result<SSetMap> {
    if !same_complex(f.source(), &src.left)
        || !same_complex(g.source(), &src.right)
        || !same_complex(f.target(), &dst.left)
        || !same_complex(g.target(), &dst.right)
    {
        return Err(Error::NotComposable);
    }
    let components: Vec<Vec<usize>> = (0..=src.complex.dim_bound())
        .map(|n| {
            src.cells[n]
                .iter()
                .map(|cell| {
                    let image = ProductCell {
                        left: f.apply(cell.left_dim, cell.left),
                        right: g.apply(cell.right_dim, cell.right),
                        ..cell.clone()
                    };
                    dst.index_of(n, &image)
                        .expect("images of product cells are product cells")
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

pub struct MarkedProduct {
    pub product: Product,
    pub marked: MarkedSSet,
}

/// An edge of the product is marked when every projection that is not
/// constant lands on a marked edge.
pub fn marked_geometric_product(a: &MarkedSSet, b: &MarkedSSet) -> MarkedProduct {
    marked_geometric_product_truncated(
        a,
        b,
        a.carrier().dim_bound() + b.carrier().dim_bound(),
    )
}

pub fn marked_geometric_product_truncated(
    a: &MarkedSSet,
    b: &MarkedSSet,
    bound: usize,
) -> MarkedProduct {
    let product = geometric_product_truncated(a.carrier(), b.carrier(), bound);
    let mut marked = BTreeSet::new();
    if bound >= 1 {
        for (idx, cell) in product.cells[1].iter().enumerate() {
            let left_ok = cell.left_dim == 0 || a.is_marked(cell.left);
            let right_ok = cell.right_dim == 0 || b.is_marked(cell.right);
            if left_ok && right_ok {
                marked.insert(idx);
            }
        }
    }
    let marked = MarkedSSet::new(Arc::clone(&product.complex), marked)
        .expect("marked product edges are edges");
    MarkedProduct { product, marked }
}

/// Comparison data for the free simplicial set on a product: the canonical
/// map into the product of the free objects, which pushes each cell's
/// surjection into the two tracks.
pub struct FreeProductComparison {
    pub product: Product,
    pub free_product: FreeSimplicial,
    pub free_left: FreeSimplicial,
    pub free_right: FreeSimplicial,
    pub simplicial_product: SimplicialProduct,
    pub underlying_product: Arc<SemiSimplicialSet>,
    pub comparison: SSetMap,
}

pub fn free_product_comparison(
    x: &Arc<SemiSimplicialSet>,
    y: &Arc<SemiSimplicialSet>,
    n: usize,
) -> Result<FreeProductComparison> {
    let product = geometric_product(x, y);
    let free_product = crate::simplicial::free_simplicial(&product.complex, n)?;
    let free_left = crate::simplicial::free_simplicial(x, n)?;
    let free_right = crate::simplicial::free_simplicial(y, n)?;
    let simplicial_product =
        simplicial_product(&free_left.simplicial, &free_right.simplicial);
    let underlying_product = Arc::new(simplicial_product.simplicial.forget());
    let components: Vec<Vec<usize>> = (0..=n)
        .map(|k| {
            (0..free_product.underlying.level_size(k))
                .map(|idx| {
                    let (m, w, alpha) = free_product.cell(k, idx);
                    let cell = product.cell(*m, *w);
                    let a_alpha: Vec<usize> = alpha.iter().map(|&v| cell.a[v]).collect();
                    let b_alpha: Vec<usize> = alpha.iter().map(|&v| cell.b[v]).collect();
                    let li = free_left
                        .index_of_cell(k, cell.left_dim, cell.left, &a_alpha)
                        .expect("pushed tracks are free cells");
                    let ri = free_right
                        .index_of_cell(k, cell.right_dim, cell.right, &b_alpha)
                        .expect("pushed tracks are free cells");
                    simplicial_product
                        .index_of_pair(k, li, ri)
                        .expect("pairs index the product")
                })
                .collect()
        })
        .collect();
    let comparison = SSetMap::new(
        Arc::clone(&free_product.underlying),
        Arc::clone(&underlying_product),
        components,
    )?;
    Ok(FreeProductComparison {
        product,
        free_product,
        free_left,
        free_right,
        simplicial_product,
        underlying_product,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary, standard_simplex};

    #[test]
    fn square_has_two_triangles_and_a_diagonal() {
        let d1 = Arc::new(standard_simplex(1));
        let p = geometric_product(&d1, &d1);
        assert_eq!(p.complex.level_sizes(), vec![4, 5, 2]);
        assert!(p.complex.validate().is_valid());
    }

    #[test]
    fn point_is_a_unit_for_the_product() {
        let d2 = Arc::new(standard_simplex(2));
        let pt = Arc::new(standard_simplex(0));
        let p = geometric_product(&d2, &pt);
        assert_eq!(p.complex.level_sizes(), standard_simplex(2).level_sizes());
    }

    #[test]
    fn product_levels_are_symmetric_in_the_factors() {
        let b = Arc::new(boundary(2));
        let d1 = Arc::new(standard_simplex(1));
        let p = geometric_product(&b, &d1);
        let q = geometric_product(&d1, &b);
        assert_eq!(p.complex.level_sizes(), q.complex.level_sizes());
        assert!(p.complex.validate().is_valid());
    }

    #[test]
    fn marked_product_marks_edges_with_marked_projections() {
        let d1 = Arc::new(standard_simplex(1));
        let sharp = MarkedSSet::sharp(Arc::clone(&d1));
        let flat = MarkedSSet::flat(Arc::clone(&d1));
        // sharp x flat: only edges constant on the right may be marked.
        let m = marked_geometric_product(&sharp, &flat);
        for &e in m.marked.marked() {
            let cell = m.product.cell(1, e);
            assert_eq!(cell.right_dim, 0);
            assert_eq!(cell.left_dim, 1);
        }
        assert_eq!(m.marked.marked().len(), 2);
        // sharp x sharp marks everything nonconstant, diagonal included.
        let s = marked_geometric_product(&sharp, &sharp);
        assert_eq!(s.marked.marked().len(), 5);
    }

    #[test]
    fn product_map_tracks_the_factors() {
        let d1 = Arc::new(standard_simplex(1));
        let pt = Arc::new(standard_simplex(0));
        let square = geometric_product(&d1, &d1);
        let strip = geometric_product(&pt, &d1);
        // Include the strip over vertex 1 into the square.
        let at_one = SSetMap::new(Arc::clone(&pt), Arc::clone(&d1), vec![vec![1]]).unwrap();
        let m = product_map(&at_one, &SSetMap::identity(&d1), &strip, &square).unwrap();
        let image = square.cell(1, m.apply(1, 0));
        assert_eq!((image.left_dim, image.left), (0, 1));
        assert_eq!((image.right_dim, image.right), (1, 0));
        let id = product_map(
            &SSetMap::identity(&d1),
            &SSetMap::identity(&d1),
            &square,
            &square,
        )
        .unwrap();
        assert_eq!(id, SSetMap::identity(&square.complex));
    }

    #[test]
    fn free_product_comparison_is_a_levelwise_bijection() {
        let d1 = Arc::new(standard_simplex(1));
        let pt = Arc::new(standard_simplex(0));
        let cmp = free_product_comparison(&d1, &pt, 2).unwrap();
        assert!(cmp.comparison.is_levelwise_bijective());
    }
}
