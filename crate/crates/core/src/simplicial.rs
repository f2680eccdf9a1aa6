//! Simplicial sets (faces plus degeneracies), nerves of finite categories,
//! and the forgetful/free pair between simplicial and semi-simplicial sets.
//!
//! Everything is truncated: a simplicial set stores levels `0 ..= dim_bound`
//! and its identities are checked wherever both sides stay below the bound.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{FiniteCategory, FiniteFunctor};
use crate::complex::{ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::SSetMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    base: SemiSimplicialSet,
    /// `degeneracies[n][s][i] = s_i(s)` for a simplex `s` at level
    /// `n < dim_bound`, landing at level `n + 1`; `0 <= i <= n`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone)]
pub struct SimplicialViolation {
    pub identity: String,
    pub dim: usize,
    pub simplex: usize,
}

#[derive(Debug, Clone, Default)]
pub struct SimplicialReport {
    pub violations: Vec<SimplicialViolation>,
}

impl SimplicialReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SimplicialSet {
    pub fn new(base: SemiSimplicialSet, degeneracies: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let s = SimplicialSet::new_unchecked(base, degeneracies)?;
        let report = s.validate();
        if report.is_valid() {
            Ok(s)
        } else {
            Err(Error::IdentityViolations {
                count: report.violations.len(),
                first_dim: report.violations[0].dim,
            })
        }
    }

    /// Shape- and range-checks only; the result may fail `validate`.
    pub fn new_unchecked(
        base: SemiSimplicialSet,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if degeneracies.len() != base.dim_bound() {
            return Err(Error::ComponentMismatch {
                dim: base.dim_bound(),
                expected: base.dim_bound(),
                got: degeneracies.len(),
            });
        }
        for (n, level) in degeneracies.iter().enumerate() {
            if level.len() != base.level_size(n) {
                return Err(Error::ComponentMismatch {
                    dim: n,
                    expected: base.level_size(n),
                    got: level.len(),
                });
            }
            for (s, degs) in level.iter().enumerate() {
                if degs.len() != n + 1 {
                    return Err(Error::FaceArity {
                        dim: n,
                        id: base.id(n, s).to_string(),
                        expected: n + 1,
                        got: degs.len(),
                    });
                }
                if degs.iter().any(|&d| d >= base.level_size(n + 1)) {
                    return Err(Error::ComponentOutOfRange { dim: n, simplex: s });
                }
            }
        }
        Ok(SimplicialSet { base, degeneracies })
    }

    pub fn base(&self) -> &SemiSimplicialSet {
        &self.base
    }

    pub fn dim_bound(&self) -> usize {
        self.base.dim_bound()
    }

    /// `s_i` of simplex `s` at level `n`; requires `n < dim_bound`.
    pub fn degeneracy(&self, n: usize, s: usize, i: usize) -> usize {
        self.degeneracies[n][s][i]
    }

    /// Drop the degeneracy data, keeping every simplex.
    pub fn forget(&self) -> SemiSimplicialSet {
        self.base.clone()
    }

    /// Check the five simplicial identities (and degeneracy injectivity)
    /// wherever both sides are defined below the truncation bound.
    pub fn validate(&self) -> SimplicialReport {
        let mut report = SimplicialReport::default();
        let bound = self.dim_bound();
        for v in self.base.validate().violations {
            report.violations.push(SimplicialViolation {
                identity: format!("d{} . d{} = d{} . d{}", v.i, v.j, v.j - 1, v.i),
                dim: v.dim,
                simplex: v.simplex,
            });
        }
        // Mixed identities: d_i . s_j on every level carrying degeneracies.
        for n in 0..bound {
            for s in 0..self.base.level_size(n) {
                for j in 0..=n {
                    let sj = self.degeneracy(n, s, j);
                    for i in 0..=n + 1 {
                        let lhs = self.base.face(n + 1, sj, i);
                        let rhs = if i == j || i == j + 1 {
                            s
                        } else if i < j {
                            // s_{j-1} d_i, defined since j >= 1.
                            self.degeneracy(n - 1, self.base.face(n, s, i), j - 1)
                        } else {
                            // i > j + 1: s_j d_{i-1}.
                            self.degeneracy(n - 1, self.base.face(n, s, i - 1), j)
                        };
                        if lhs != rhs {
                            report.violations.push(SimplicialViolation {
                                identity: format!("d{i} . s{j}"),
                                dim: n,
                                simplex: s,
                            });
                        }
                    }
                }
            }
        }
        // s_i . s_j = s_{j+1} . s_i for i <= j, two levels of headroom.
        for n in 0..bound.saturating_sub(1) {
            for s in 0..self.base.level_size(n) {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degeneracy(n + 1, self.degeneracy(n, s, j), i);
                        let rhs = self.degeneracy(n + 1, self.degeneracy(n, s, i), j + 1);
                        if lhs != rhs {
                            report.violations.push(SimplicialViolation {
                                identity: format!("s{i} . s{j}"),
                                dim: n,
                                simplex: s,
                            });
                        }
                    }
                }
            }
        }
        // Injectivity is implied by d_i . s_i = id but is cheap to confirm.
        for n in 0..bound {
            for i in 0..=n {
                let mut seen = vec![false; self.base.level_size(n + 1)];
                for s in 0..self.base.level_size(n) {
                    let img = self.degeneracy(n, s, i);
                    if seen[img] {
                        report.violations.push(SimplicialViolation {
                            identity: format!("s{i} injective"),
                            dim: n,
                            simplex: s,
                        });
                    }
                    seen[img] = true;
                }
            }
        }
        report
    }

    pub fn degeneracies_injective(&self) -> bool {
        self.validate()
            .violations
            .iter()
            .all(|v| !v.identity.ends_with("injective"))
    }

    /// Contravariant action of a monotone `alpha : [n] -> [m]` on a simplex
    /// at level `m`, producing one at level `n = alpha.len() - 1`.  The map
    /// is factored as faces (for skipped values) followed by degeneracies
    /// (for repeats).
    pub fn monotone_action(&self, alpha: &[usize], m: usize, s: usize) -> usize {
        debug_assert!(!alpha.is_empty());
        debug_assert!(alpha.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(*alpha.last().unwrap() <= m);
        let mut vals = alpha.to_vec();
        let mut m = m;
        let mut cur = s;
        loop {
            let mut present = vec![false; m + 1];
            for &v in &vals {
                present[v] = true;
            }
            match (0..=m).rev().find(|&t| !present[t]) {
                Some(t) => {
                    cur = self.base.face(m, cur, t);
                    for v in vals.iter_mut() {
                        if *v > t {
                            *v -= 1;
                        }
                    }
                    m -= 1;
                }
                None => break,
            }
        }
        self.surjection_action(&vals, m, cur)
    }

    fn surjection_action(&self, vals: &[usize], m: usize, cur: usize) -> usize {
        if vals.len() == m + 1 {
            return cur;
        }
        let p = (0..vals.len() - 1)
            .find(|&p| vals[p] == vals[p + 1])
            .expect("a non-bijective monotone surjection repeats a value");
        let mut shorter = vals.to_vec();
        shorter.remove(p);
        let inner = self.surjection_action(&shorter, m, cur);
        self.degeneracy(vals.len() - 2, inner, p)
    }
}

/// Levelwise product of simplicial sets, with componentwise structure.
pub struct SimplicialProduct {
    pub simplicial: SimplicialSet,
    pairs: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
}

impl SimplicialProduct {
    pub fn pair(&self, n: usize, cell: usize) -> (usize, usize) {
        self.pairs[n][cell]
    }

    pub fn index_of_pair(&self, n: usize, left: usize, right: usize) -> Option<usize> {
        self.index.get(n)?.get(&(left, right)).copied()
    }
}

pub fn simplicial_product(a: &SimplicialSet, b: &SimplicialSet) -> SimplicialProduct {
    let bound = a.dim_bound().min(b.dim_bound());
    let mut builder = ComplexBuilder::new();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(bound + 1);
    let mut index: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut level_pairs = Vec::new();
        let mut level_index = HashMap::new();
        for l in 0..a.base().level_size(n) {
            for r in 0..b.base().level_size(n) {
                let faces: Vec<usize> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| index[n - 1][&(a.base().face(n, l, i), b.base().face(n, r, i))])
                        .collect()
                };
                let id = format!("{}|{}", a.base().id(n, l), b.base().id(n, r));
                let idx = builder.add(n, id, &faces).expect("product is built bottom-up");
                level_index.insert((l, r), idx);
                level_pairs.push((l, r));
            }
        }
        pairs.push(level_pairs);
        index.push(level_index);
    }
    let base = builder.build_unchecked().with_dim_bound(bound);
    let degeneracies: Vec<Vec<Vec<usize>>> = (0..bound)
        .map(|n| {
            pairs[n]
                .iter()
                .map(|&(l, r)| {
                    (0..=n)
                        .map(|i| index[n + 1][&(a.degeneracy(n, l, i), b.degeneracy(n, r, i))])
                        .collect()
                })
                .collect()
        })
        .collect();
    let simplicial =
        SimplicialSet::new(base, degeneracies).expect("componentwise structure is coherent");
    SimplicialProduct {
        simplicial,
        pairs,
        index,
    }
}

/// The nerve of a finite category, truncated.  Level `k` holds the
/// composable chains of `k` morphisms (level 0 the objects, in order);
/// `d_0`/`d_k` drop an end, inner faces compose, degeneracies insert
/// identities.
pub struct Nerve {
    pub category: FiniteCategory,
    pub simplicial: SimplicialSet,
    /// Chains per level for `k >= 1`; level 0 cells are the objects in
    /// category order, so `chains[0]` stays empty.
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn chain(&self, k: usize, cell: usize) -> &[usize] {
        &self.chains[k][cell]
    }

    pub fn index_of_chain(&self, k: usize, chain: &[usize]) -> Option<usize> {
        if k == 0 {
            return None;
        }
        self.index.get(k)?.get(chain).copied()
    }
}

pub fn nerve(c: &FiniteCategory, trunc: usize) -> Nerve {
    let mut builder = ComplexBuilder::new();
    let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); trunc + 1];
    let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); trunc + 1];
    for o in 0..c.object_count() {
        builder
            .add(0, c.object_name(o), &[])
            .expect("object names are unique");
    }
    for k in 1..=trunc {
        let prefixes: Vec<Vec<usize>> = if k == 1 {
            vec![Vec::new()]
        } else {
            chains[k - 1].clone()
        };
        for prefix in prefixes {
            for m in 0..c.morphism_count() {
                if let Some(&last) = prefix.last() {
                    if c.morphism(last).dst != c.morphism(m).src {
                        continue;
                    }
                }
                let mut chain = prefix.clone();
                chain.push(m);
                let faces: Vec<usize> = (0..=k)
                    .map(|i| face_of_chain(c, &chain, i, &index))
                    .collect();
                let id = chain
                    .iter()
                    .map(|&m| c.morphism(m).id.clone())
                    .collect::<Vec<_>>()
                    .join(",");
                let idx = builder.add(k, id, &faces).expect("chain ids are unique");
                index[k].insert(chain.clone(), idx);
                chains[k].push(chain);
            }
        }
    }
    let base = builder.build_unchecked().with_dim_bound(trunc);
    debug_assert!(base.validate().is_valid());
    let degeneracies: Vec<Vec<Vec<usize>>> = (0..trunc)
        .map(|k| {
            (0..base.level_size(k))
                .map(|s| {
                    (0..=k)
                        .map(|i| {
                            let mut chain: Vec<usize> = if k == 0 {
                                Vec::new()
                            } else {
                                chains[k][s].clone()
                            };
                            let object = object_at(c, &chain, s, i);
                            chain.insert(i, c.identity_of(object));
                            index[k + 1][&chain]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let simplicial =
        SimplicialSet::new(base, degeneracies).expect("nerve structure is coherent");
    Nerve {
        category: c.clone(),
        simplicial,
        chains,
        index,
    }
}

/// Vertex `i` of a chain (its `i`-th object); for level 0, `s` is the object.
fn object_at(c: &FiniteCategory, chain: &[usize], s: usize, i: usize) -> usize {
    if chain.is_empty() {
        s
    } else if i == 0 {
        c.morphism(chain[0]).src
    } else {
        c.morphism(chain[i - 1]).dst
    }
}

fn face_of_chain(
    c: &FiniteCategory,
    chain: &[usize],
    i: usize,
    index: &[HashMap<Vec<usize>, usize>],
) -> usize {
    let k = chain.len();
    if k == 1 {
        // Faces of an edge are objects: d_0 the destination, d_1 the source.
        return if i == 0 {
            c.morphism(chain[0]).dst
        } else {
            c.morphism(chain[0]).src
        };
    }
    let smaller: Vec<usize> = if i == 0 {
        chain[1..].to_vec()
    } else if i == k {
        chain[..k - 1].to_vec()
    } else {
        let mut v = chain[..i - 1].to_vec();
        v.push(
            c.composite(chain[i - 1], chain[i])
                .expect("consecutive chain entries compose"),
        );
        v.extend_from_slice(&chain[i + 1..]);
        v
    };
    index[k - 1][&smaller]
}

/// The map of nerves induced by a functor; both nerves must be truncated at
/// the source's bound or above.
pub fn nerve_functor_map(
    f: &FiniteFunctor,
    src: &Nerve,
    dst: &Nerve,
    src_arc: &Arc<SemiSimplicialSet>,
    dst_arc: &Arc<SemiSimplicialSet>,
) -> Result<SSetMap> {
    let bound = src.simplicial.dim_bound();
    let mut components: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    components.push((0..src.category.object_count()).map(|o| f.ob[o]).collect());
    for k in 1..=bound {
        let mut level = Vec::new();
        for chain in &src.chains[k] {
            let image: Vec<usize> = chain.iter().map(|&m| f.mor[m]).collect();
            let idx = dst
                .index_of_chain(k, &image)
                .ok_or_else(|| Error::Category("functor image chain missing in nerve".into()))?;
            level.push(idx);
        }
        components.push(level);
    }
    SSetMap::new(Arc::clone(src_arc), Arc::clone(dst_arc), components)
}

/// The free simplicial set on a semi-simplicial set, truncated at `n`:
/// level `k` holds the pairs of a monotone surjection `[k] ->> [m]` and an
/// `m`-simplex of the generator.
pub struct FreeSimplicial {
    pub simplicial: SimplicialSet,
    pub generator: Arc<SemiSimplicialSet>,
    /// `forget(simplicial)`, shared so maps in and out compose.
    pub underlying: Arc<SemiSimplicialSet>,
    /// The inclusion as the identity-surjection pairs.
    pub unit: SSetMap,
    cells: Vec<Vec<(usize, usize, Vec<usize>)>>,
    index: Vec<HashMap<(usize, usize, Vec<usize>), usize>>,
}

impl FreeSimplicial {
    /// `(m, generator simplex, surjection)` behind a cell.
    pub fn cell(&self, level: usize, idx: usize) -> &(usize, usize, Vec<usize>) {
        &self.cells[level][idx]
    }

    pub fn index_of_cell(
        &self,
        level: usize,
        m: usize,
        sigma: usize,
        alpha: &[usize],
    ) -> Option<usize> {
        self.index
            .get(level)?
            .get(&(m, sigma, alpha.to_vec()))
            .copied()
    }
}

/// Monotone surjections `[n] ->> [m]` in lexicographic order.
fn surjections(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            if cur[n] == m {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        // Stay or step; values must still be able to reach m.
        for next in [last, last + 1] {
            if next <= m && m - next <= n - (cur.len() - 1) {
                cur.push(next);
                rec(n, m, cur, out);
                cur.pop();
            }
        }
    }
    if m > n {
        return out;
    }
    rec(n, m, &mut cur, &mut out);
    out
}

fn surjection_id(alpha: &[usize]) -> String {
    if alpha.iter().all(|&v| v < 10) {
        alpha.iter().map(|v| v.to_string()).collect()
    } else {
        alpha
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
}

pub fn free_simplicial(j: &Arc<SemiSimplicialSet>, n: usize) -> Result<FreeSimplicial> {
    if (n as isize) < j.dim() {
        return Err(Error::InsufficientTruncation {
            required: j.dim().max(0) as usize,
            actual: n,
        });
    }
    let mut builder = ComplexBuilder::new();
    let mut cells: Vec<Vec<(usize, usize, Vec<usize>)>> = Vec::with_capacity(n + 1);
    let mut index: Vec<HashMap<(usize, usize, Vec<usize>), usize>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut level_cells = Vec::new();
        let mut level_index = HashMap::new();
        for m in 0..=k.min(j.dim_bound()) {
            for sigma in 0..j.level_size(m) {
                for alpha in surjections(k, m) {
                    let faces: Vec<usize> = if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|i| {
                                let mut beta = alpha.clone();
                                beta.remove(i);
                                let (m2, sigma2, beta2) = normalize_pair(j, m, sigma, beta);
                                index[k - 1][&(m2, sigma2, beta2)]
                            })
                            .collect()
                    };
                    let id = format!("{}@{}", j.id(m, sigma), surjection_id(&alpha));
                    let idx = builder.add(k, id, &faces).expect("free cells are unique");
                    level_index.insert((m, sigma, alpha.clone()), idx);
                    level_cells.push((m, sigma, alpha));
                }
            }
        }
        cells.push(level_cells);
        index.push(level_index);
    }
    let base = builder.build_unchecked().with_dim_bound(n);
    debug_assert!(base.validate().is_valid());
    let degeneracies: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|k| {
            cells[k]
                .iter()
                .map(|(m, sigma, alpha)| {
                    (0..=k)
                        .map(|i| {
                            let mut longer = alpha.clone();
                            longer.insert(i, alpha[i]);
                            index[k + 1][&(*m, *sigma, longer)]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let simplicial =
        SimplicialSet::new(base, degeneracies).expect("free structure is coherent");
    let underlying = Arc::new(simplicial.forget());
    let unit_components: Vec<Vec<usize>> = (0..=j.dim_bound())
        .map(|m| {
            (0..j.level_size(m))
                .map(|sigma| {
                    let identity: Vec<usize> = (0..=m).collect();
                    index[m][&(m, sigma, identity)]
                })
                .collect()
        })
        .collect();
    let unit = SSetMap::new(Arc::clone(j), Arc::clone(&underlying), unit_components)?;
    Ok(FreeSimplicial {
        simplicial,
        generator: Arc::clone(j),
        underlying,
        unit,
        cells,
        index,
    })
}

/// Epi-mono factorization step for free cells: make `beta` surjective by
/// pushing skipped values into faces of the generator simplex.
fn normalize_pair(
    j: &SemiSimplicialSet,
    mut m: usize,
    mut sigma: usize,
    mut beta: Vec<usize>,
) -> (usize, usize, Vec<usize>) {
    loop {
        let mut present = vec![false; m + 1];
        for &v in &beta {
            present[v] = true;
        }
        match (0..=m).rev().find(|&t| !present[t]) {
            Some(t) => {
                sigma = j.face(m, sigma, t);
                for v in beta.iter_mut() {
                    if *v > t {
                        *v -= 1;
                    }
                }
                m -= 1;
            }
            None => return (m, sigma, beta),
        }
    }
}

/// Free-forgetful data for extending a map along the unit.
pub struct UnitExtension {
    pub free: FreeSimplicial,
    /// The extension `forget(free(J)) -> forget(X')` with
    /// `extension . unit = f` on the nose.
    pub extension: SSetMap,
}

/// Extend `f : J -> forget(X')` over the free simplicial set on `J`,
/// truncated at `n`, by acting with the surjection of each free cell.
pub fn extend_along_unit(
    f: &SSetMap,
    x_prime: &SimplicialSet,
    n: usize,
) -> Result<UnitExtension> {
    if x_prime.base() != &**f.target() {
        return Err(Error::NotComposable);
    }
    if n > x_prime.dim_bound() {
        return Err(Error::InsufficientTruncation {
            required: n,
            actual: x_prime.dim_bound(),
        });
    }
    let free = free_simplicial(f.source(), n)?;
    let components: Vec<Vec<usize>> = (0..=n)
        .map(|k| {
            free.cells[k]
                .iter()
                .map(|(m, sigma, alpha)| x_prime.monotone_action(alpha, *m, f.apply(*m, *sigma)))
                .collect()
        })
        .collect();
    let extension = SSetMap::new(
        Arc::clone(&free.underlying),
        Arc::clone(f.target()),
        components,
    )?;
    Ok(UnitExtension { free, extension })
}

/// The counit evaluation `free(forget(X')) -> X'` at the underlying level:
/// act with each cell's surjection.  `l` must be the free object on
/// `forget(x_prime)`.
pub fn counit(x_prime: &SimplicialSet, l: &FreeSimplicial) -> Result<SSetMap> {
    if l.generator.as_ref() != x_prime.base() {
        return Err(Error::NotComposable);
    }
    let target = Arc::new(x_prime.forget());
    let components: Vec<Vec<usize>> = (0..=l.simplicial.dim_bound())
        .map(|k| {
            l.cells[k]
                .iter()
                .map(|(m, sigma, alpha)| x_prime.monotone_action(alpha, *m, *sigma))
                .collect()
        })
        .collect();
    SSetMap::new(Arc::clone(&l.underlying), target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{standard_simplex, terminal_truncated};

    #[test]
    fn nerve_of_z2_doubles_levelwise() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve(&z2, 3);
        assert_eq!(n.simplicial.base().level_sizes(), vec![1, 2, 4, 8]);
        assert!(n.simplicial.validate().is_valid());
        assert!(n.simplicial.degeneracies_injective());
    }

    #[test]
    fn nerve_of_a_two_element_chain() {
        let chain = FiniteCategory::poset_chain(1);
        let n = nerve(&chain, 2);
        assert_eq!(n.simplicial.base().level_sizes(), vec![2, 3, 4]);
        assert!(n.simplicial.validate().is_valid());
    }

    #[test]
    fn nerve_of_the_empty_category_is_empty() {
        let empty = FiniteCategory::new(Vec::new(), Vec::new(), Vec::new(), HashMap::new())
            .expect("the empty category is coherent");
        let n = nerve(&empty, 2);
        assert!(n.simplicial.base().is_empty());
    }

    #[test]
    fn free_on_the_point_is_the_terminal_complex() {
        let d0 = Arc::new(standard_simplex(0));
        let free = free_simplicial(&d0, 3).unwrap();
        assert_eq!(free.underlying.level_sizes(), terminal_truncated(3).level_sizes());
        // All faces collapse, as in the terminal complex.
        for n in 1..=3 {
            for i in 0..=n {
                assert_eq!(free.underlying.face(n, 0, i), 0);
            }
        }
    }

    #[test]
    fn free_on_a_simplex_has_monotone_map_counts() {
        // Level k of the free object on a simplex is all monotone
        // [k] -> [n]; into [1] there are k + 2 of them, one per step
        // position with the constants at the ends.
        let d1 = Arc::new(standard_simplex(1));
        let free = free_simplicial(&d1, 3).unwrap();
        let sizes = free.underlying.level_sizes();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
        assert!(free.simplicial.validate().is_valid());
    }

    #[test]
    fn unit_extension_retracts_on_the_nose() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve(&z2, 3);
        let x_arc = Arc::new(n.simplicial.forget());
        let d1 = Arc::new(standard_simplex(1));
        // Send the edge to the generator loop.
        let g_edge = 1;
        let f = SSetMap::new(
            Arc::clone(&d1),
            Arc::clone(&x_arc),
            vec![vec![0, 0], vec![g_edge]],
        )
        .unwrap();
        let ext = extend_along_unit(&f, &n.simplicial, 3).unwrap();
        let composite = SSetMap::compose(&ext.free.unit, &ext.extension).unwrap();
        assert_eq!(composite, f);
    }

    #[test]
    fn counit_retracts_the_unit_of_the_forgetful_image() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve(&z2, 2);
        let x_arc = Arc::new(n.simplicial.forget());
        let free = free_simplicial(&x_arc, 2).unwrap();
        let eps = counit(&n.simplicial, &free).unwrap();
        let composite = SSetMap::compose(&free.unit, &eps).unwrap();
        assert_eq!(composite, SSetMap::identity(&x_arc));
    }

    #[test]
    fn monotone_action_recovers_faces_and_degeneracies() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve(&z2, 3);
        let s = &n.simplicial;
        for e in 0..s.base().level_size(1) {
            // alpha = [0, 0, 1] is s_0; [1] is d_1 (the source vertex).
            assert_eq!(s.monotone_action(&[0, 0, 1], 1, e), s.degeneracy(1, e, 0));
            assert_eq!(s.monotone_action(&[1], 1, e), s.base().face(1, e, 0));
        }
    }

    #[test]
    fn simplicial_product_multiplies_levels() {
        let z2 = FiniteCategory::cyclic_group(2);
        let n = nerve(&z2, 2);
        let p = simplicial_product(&n.simplicial, &n.simplicial);
        assert_eq!(p.simplicial.base().level_sizes(), vec![1, 4, 16]);
        assert!(p.simplicial.validate().is_valid());
    }

    #[test]
    fn functor_map_between_nerves() {
        let z2 = FiniteCategory::cyclic_group(2);
        let pt = FiniteCategory::cyclic_group(1);
        let f = FiniteFunctor::new(&z2, &pt, vec![0], vec![0, 0]).unwrap();
        let src = nerve(&z2, 3);
        let dst = nerve(&pt, 3);
        let src_arc = Arc::new(src.simplicial.forget());
        let dst_arc = Arc::new(dst.simplicial.forget());
        let m = nerve_functor_map(&f, &src, &dst, &src_arc, &dst_arc).unwrap();
        assert_eq!(m.apply(2, 3), 0);
    }
}
