//! Cross-module laws: joins against the convolution formula, product
//! symmetry and adjunction, point exponentials, and fibration stability
//! under pullback.

use std::sync::Arc;

use semikan::category::FiniteCategory;
use semikan::colimits::pullback;
use semikan::exponential::{exponential, point_exponential_iso};
use semikan::join::join;
use semikan::lifting::{is_left_fibration, is_trivial_fibration};
use semikan::maps::enumerate_maps;
use semikan::product::{free_product_comparison, geometric_product};
use semikan::simplicial::nerve;
use semikan::{
    boundary, standard_simplex, terminal_truncated, MarkedMap, SSetMap, SearchMode,
    SemiSimplicialSet,
};

fn flat_nerve(c: &FiniteCategory, trunc: usize) -> Arc<SemiSimplicialSet> {
    Arc::new(nerve(c, trunc).simplicial.forget())
}

fn level_sizes(x: &SemiSimplicialSet) -> Vec<usize> {
    (0..=x.dim_bound()).map(|n| x.level_size(n)).collect()
}

/// `join(X, Y)_n = X_n + Y_n + sum over p + q = n - 1 of X_p * Y_q`.
fn convolution(x: &SemiSimplicialSet, y: &SemiSimplicialSet, n: usize) -> usize {
    let size = |z: &SemiSimplicialSet, k: usize| z.level_size(k);
    let mut total = size(x, n) + size(y, n);
    for p in 0..n {
        total += size(x, p) * size(y, n - 1 - p);
    }
    total
}

#[test]
fn join_level_counts_follow_the_convolution_formula() {
    let fixtures: Vec<Arc<SemiSimplicialSet>> = vec![
        Arc::new(standard_simplex(1)),
        Arc::new(boundary(2)),
        flat_nerve(&FiniteCategory::cyclic_group(2), 2),
    ];
    for x in &fixtures {
        for y in &fixtures {
            let j = join(x, y);
            for n in 0..=j.complex.dim_bound() {
                assert_eq!(
                    j.complex.level_size(n),
                    convolution(x, y, n),
                    "level {n} of join of {:?} and {:?}",
                    level_sizes(x),
                    level_sizes(y),
                );
            }
        }
    }
}

#[test]
fn joins_of_simplices_have_simplex_level_counts() {
    for n in 0..=2usize {
        for m in 0..=1usize {
            let j = join(
                &Arc::new(standard_simplex(n)),
                &Arc::new(standard_simplex(m)),
            );
            let expected = standard_simplex(n + m + 1);
            assert_eq!(level_sizes(&j.complex), level_sizes(&expected));
            assert!(j.complex.validate().is_valid());
        }
    }
}

#[test]
fn join_is_associative_on_level_counts() {
    let a = Arc::new(boundary(2));
    let b = Arc::new(standard_simplex(1));
    let c = Arc::new(standard_simplex(0));
    let left = join(&join(&a, &b).complex, &c);
    let right = join(&a, &join(&b, &c).complex);
    assert_eq!(level_sizes(&left.complex), level_sizes(&right.complex));
}

#[test]
fn products_are_symmetric_on_level_counts() {
    let a = Arc::new(boundary(2));
    let b = flat_nerve(&FiniteCategory::poset_chain(2), 2);
    let ab = geometric_product(&a, &b);
    let ba = geometric_product(&b, &a);
    assert_eq!(level_sizes(&ab.complex), level_sizes(&ba.complex));
    assert!(ab.complex.validate().is_valid());
}

#[test]
fn the_point_is_a_product_unit() {
    let x = flat_nerve(&FiniteCategory::cyclic_group(2), 3);
    let point = Arc::new(standard_simplex(0));
    let p = geometric_product(&x, &point);
    assert_eq!(level_sizes(&p.complex), level_sizes(&x));
}

#[test]
fn maps_out_of_a_simplex_are_the_simplices() {
    let x = flat_nerve(&FiniteCategory::cyclic_group(2), 3);
    for n in 0..=3usize {
        let simplex = Arc::new(standard_simplex(n));
        let maps = enumerate_maps(&simplex, &x, SearchMode::All);
        assert_eq!(maps.len(), x.level_size(n));
    }
}

#[test]
fn point_exponentials_collapse_to_the_base() {
    let x = flat_nerve(&FiniteCategory::poset_chain(1), 3);
    let e = exponential(&x, &Arc::new(standard_simplex(0)), 2).unwrap();
    let iso = point_exponential_iso(&e).unwrap();
    assert!(iso.is_levelwise_injective());
    for n in 0..=2usize {
        assert_eq!(e.complex.level_size(n), x.level_size(n));
    }
}

#[test]
fn exponentials_are_adjoint_to_products() {
    // Maps from the cylinder over the boundary triangle agree with maps
    // from the triangle into the exponential, edge by edge.
    let x = Arc::new(boundary(2));
    let interval = Arc::new(standard_simplex(1));
    let z = flat_nerve(&FiniteCategory::cyclic_group(2), 3);
    let cylinder = geometric_product(&x, &interval);
    let through_product = enumerate_maps(&cylinder.complex, &z, SearchMode::All);
    let e = exponential(&z, &interval, 1).unwrap();
    let through_exponential = enumerate_maps(&x, &e.complex, SearchMode::All);
    assert_eq!(through_product.len(), through_exponential.len());
    assert!(!through_product.is_empty());
}

#[test]
fn free_simplicial_sets_split_over_products() {
    let a = Arc::new(standard_simplex(1));
    let cmp = free_product_comparison(&a, &a, 2).unwrap();
    assert!(cmp.comparison.is_levelwise_injective());
    for n in 0..=2usize {
        assert_eq!(
            cmp.comparison.source().level_size(n),
            cmp.comparison.target().level_size(n),
            "level {n}",
        );
    }
}

#[test]
fn identities_are_trivial_fibrations() {
    let x = flat_nerve(&FiniteCategory::two_object_groupoid(), 3);
    let id = MarkedMap::flat(SSetMap::identity(&x));
    assert!(is_trivial_fibration(&id, 2).unwrap().holds());
}

#[test]
fn left_fibrations_pull_back() {
    let kan = flat_nerve(&FiniteCategory::cyclic_group(2), 3);
    let base = flat_nerve(&FiniteCategory::poset_chain(1), 3);
    let t = Arc::new(terminal_truncated(3));
    let f = SSetMap::terminal_map(&kan, &t).unwrap();
    let g = SSetMap::terminal_map(&base, &t).unwrap();
    assert!(is_left_fibration(&MarkedMap::flat(f.clone()), 2)
        .unwrap()
        .holds());
    let pb = pullback(&f, &g).unwrap();
    assert!(is_left_fibration(&MarkedMap::flat(pb.to_second.clone()), 2)
        .unwrap()
        .holds());
    // Pulling back over the point is the levelwise product.
    for n in 0..=3usize {
        assert_eq!(
            pb.complex.level_size(n),
            kan.level_size(n) * base.level_size(n)
        );
    }
}
