//! Exponentials: the complex whose `n`-cells are maps out of the cylinder
//! `simplex(n) x J` into `X`, with faces given by precomposition along the
//! cofaces of the simplex factor.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::{standard_simplex, ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::{enumerate_maps, same_complex, simplex_coface, SSetMap};
use crate::marking::{MarkedMap, MarkedSSet};
use crate::product::{geometric_product, product_map, Product};
use crate::search::SearchMode;

#[derive(Debug)]
pub struct Exponential {
    pub complex: Arc<SemiSimplicialSet>,
    /// `witnesses[n][cell]` is the cylinder map the cell stands for.
    pub witnesses: Vec<Vec<SSetMap>>,
    /// `simplex(n) x J` for each level, shared by the witnesses.
    pub cylinders: Vec<Product>,
    pub simplices: Vec<Arc<SemiSimplicialSet>>,
    pub base: Arc<SemiSimplicialSet>,
    pub exponent: Arc<SemiSimplicialSet>,
}

fn check_headroom(
    x: &SemiSimplicialSet,
    j: &SemiSimplicialSet,
    n: usize,
) -> Result<()> {
    let required = n as isize + j.dim() + 1;
    if (x.dim_bound() as isize) < required {
        return Err(Error::InsufficientTruncation {
            required: required.max(0) as usize,
            actual: x.dim_bound(),
        });
    }
    Ok(())
}

/// Shared face scaffolding: given the cylinder maps per level, compute the
/// face table by precomposing with `coface x id` and looking the result up
/// among the lower level's maps.
fn face_tables(
    witnesses: &[Vec<SSetMap>],
    cylinders: &[Product],
    simplices: &[Arc<SemiSimplicialSet>],
    j: &Arc<SemiSimplicialSet>,
) -> Vec<Vec<Vec<usize>>> {
    let n = witnesses.len() - 1;
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    tables.push(witnesses[0].iter().map(|_| Vec::new()).collect());
    for k in 1..=n {
        let lower: HashMap<&[Vec<usize>], usize> = witnesses[k - 1]
            .iter()
            .enumerate()
            .map(|(i, w)| (w.components(), i))
            .collect();
        let mut level = Vec::with_capacity(witnesses[k].len());
        for w in &witnesses[k] {
            let faces: Vec<usize> = (0..=k)
                .map(|i| {
                    let delta = simplex_coface(&simplices[k - 1], &simplices[k], k, i);
                    let incl = product_map(
                        &delta,
                        &SSetMap::identity(j),
                        &cylinders[k - 1],
                        &cylinders[k],
                    )
                    .expect("cylinders share their factors");
                    let restricted =
                        SSetMap::compose(&incl, w).expect("cylinder inclusions compose");
                    lower[restricted.components()]
                })
                .collect();
            level.push(faces);
        }
        tables.push(level);
    }
    tables
}

fn assemble(
    witnesses: Vec<Vec<SSetMap>>,
    cylinders: Vec<Product>,
    simplices: Vec<Arc<SemiSimplicialSet>>,
    x: &Arc<SemiSimplicialSet>,
    j: &Arc<SemiSimplicialSet>,
    n: usize,
) -> Exponential {
    let tables = face_tables(&witnesses, &cylinders, &simplices, j);
    let mut builder = ComplexBuilder::new();
    for k in 0..=n {
        for (i, faces) in tables[k].iter().enumerate() {
            builder
                .add(k, format!("f{k}.{i}"), faces)
                .expect("exponential cells are freshly named");
        }
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(n));
    debug_assert!(complex.validate().is_valid());
    Exponential {
        complex,
        witnesses,
        cylinders,
        simplices,
        base: Arc::clone(x),
        exponent: Arc::clone(j),
    }
}

pub fn exponential(
    x: &Arc<SemiSimplicialSet>,
    j: &Arc<SemiSimplicialSet>,
    n: usize,
) -> Result<Exponential> {
    check_headroom(x, j, n)?;
    let mut witnesses = Vec::with_capacity(n + 1);
    let mut cylinders = Vec::with_capacity(n + 1);
    let mut simplices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let simplex = Arc::new(standard_simplex(k));
        let cylinder = geometric_product(&simplex, j);
        witnesses.push(enumerate_maps(&cylinder.complex, x, SearchMode::All));
        cylinders.push(cylinder);
        simplices.push(simplex);
    }
    Ok(assemble(witnesses, cylinders, simplices, x, j, n))
}

pub struct MarkedExponential {
    pub exponential: Exponential,
    pub marked: MarkedSSet,
}

/// Marked exponential: cells are maps sending each vertical edge over a
/// marked exponent edge into the marking; an edge of the result is marked
/// when it also sends the interval edges and the diagonals over marked
/// exponent edges into the marking.
pub fn marked_exponential(
    x: &MarkedSSet,
    j: &MarkedSSet,
    n: usize,
) -> Result<MarkedExponential> {
    check_headroom(x.carrier(), j.carrier(), n)?;
    let mut witnesses: Vec<Vec<SSetMap>> = Vec::with_capacity(n + 1);
    let mut cylinders = Vec::with_capacity(n + 1);
    let mut simplices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let simplex = Arc::new(standard_simplex(k));
        let cylinder = geometric_product(&simplex, j.carrier());
        let level: Vec<SSetMap> =
            enumerate_maps(&cylinder.complex, x.carrier(), SearchMode::All)
                .into_iter()
                .filter(|w| {
                    vertical_edges(&cylinder, j)
                        .all(|e| x.is_marked(w.apply(1, e)))
                })
                .collect();
        witnesses.push(level);
        cylinders.push(cylinder);
        simplices.push(simplex);
    }
    let marked: BTreeSet<usize> = if n == 0 {
        BTreeSet::new()
    } else {
        witnesses[1]
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                interval_edges(&cylinders[1], j).all(|e| x.is_marked(w.apply(1, e)))
            })
            .map(|(i, _)| i)
            .collect()
    };
    let exponential = assemble(witnesses, cylinders, simplices, x.carrier(), j.carrier(), n);
    let marked = MarkedSSet::new(Arc::clone(&exponential.complex), marked)
        .expect("marked cells are level-one cells");
    Ok(MarkedExponential {
        exponential,
        marked,
    })
}

/// Cylinder edges lying over a vertex of the simplex and a marked exponent
/// edge.
fn vertical_edges<'a>(
    cylinder: &'a Product,
    j: &'a MarkedSSet,
) -> impl Iterator<Item = usize> + 'a {
    (0..cylinder.complex.level_size(1)).filter(move |&e| {
        let cell = cylinder.cell(1, e);
        cell.left_dim == 0 && cell.right_dim == 1 && j.is_marked(cell.right)
    })
}

/// Cylinder edges of `simplex(1) x J` that the sharp interval adds to the
/// flat one: the two horizontal edges over each exponent vertex and the
/// diagonals over each marked exponent edge.
fn interval_edges<'a>(
    cylinder: &'a Product,
    j: &'a MarkedSSet,
) -> impl Iterator<Item = usize> + 'a {
    (0..cylinder.complex.level_size(1)).filter(move |&e| {
        let cell = cylinder.cell(1, e);
        cell.left_dim == 1 && (cell.right_dim == 0 || j.is_marked(cell.right))
    })
}

/// The restriction `X^K -> X^J` along `g : J -> K`: precompose every
/// witness with `id x g`.
pub fn exponential_restriction(
    g: &SSetMap,
    xk: &Exponential,
    xj: &Exponential,
) -> Result<SSetMap> {
    if !same_complex(g.source(), &xj.exponent)
        || !same_complex(g.target(), &xk.exponent)
        || !same_complex(&xj.base, &xk.base)
        || xj.complex.dim_bound() != xk.complex.dim_bound()
    {
        return Err(Error::NotComposable);
    }
    let n = xk.complex.dim_bound();
    let mut components = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lower: HashMap<&[Vec<usize>], usize> = xj.witnesses[k]
            .iter()
            .enumerate()
            .map(|(i, w)| (w.components(), i))
            .collect();
        let incl = product_map(
            &SSetMap::identity(&xk.simplices[k]),
            g,
            &xj.cylinders[k],
            &xk.cylinders[k],
        )?;
        let level: Vec<usize> = xk.witnesses[k]
            .iter()
            .map(|w| {
                let restricted =
                    SSetMap::compose(&incl, w).expect("cylinder inclusions compose");
                *lower
                    .get(restricted.components())
                    .expect("restrictions of cylinder maps are cylinder maps")
            })
            .collect();
        components.push(level);
    }
    SSetMap::new(
        Arc::clone(&xk.complex),
        Arc::clone(&xj.complex),
        components,
    )
}

/// The marked restriction along a marked map of exponents.
pub fn marked_exponential_restriction(
    g: &MarkedMap,
    xk: &MarkedExponential,
    xj: &MarkedExponential,
) -> Result<MarkedMap> {
    let underlying =
        exponential_restriction(g.underlying(), &xk.exponential, &xj.exponential)?;
    MarkedMap::new(xk.marked.clone(), xj.marked.clone(), underlying)
}

/// For a one-point exponent the exponential is the base itself: evaluate
/// each witness at the top cell of its cylinder.
pub fn point_exponential_iso(e: &Exponential) -> Result<SSetMap> {
    if e.exponent.level_sizes() != vec![1] {
        return Err(Error::NotComposable);
    }
    let n = e.complex.dim_bound();
    let components: Vec<Vec<usize>> = (0..=n)
        .map(|k| {
            let top = crate::product::ProductCell {
                left_dim: k,
                right_dim: 0,
                left: 0,
                right: 0,
                a: (0..=k).collect(),
                b: vec![0; k + 1],
            };
            let top_idx = e.cylinders[k]
                .index_of(k, &top)
                .expect("the cylinder over a point is the simplex");
            e.witnesses[k].iter().map(|w| w.apply(k, top_idx)).collect()
        })
        .collect();
    SSetMap::new(Arc::clone(&e.complex), Arc::clone(&e.base), components)
}
