//! Levelwise pushouts and pullbacks of complexes.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::complex::{ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::{same_complex, SSetMap};

#[derive(Debug, Clone)]
pub struct Pushout {
    pub complex: Arc<SemiSimplicialSet>,
    /// Leg from the target of `g` (kept whole, indices unchanged).
    pub from_base: SSetMap,
    /// Leg from the target of `j` (the attached cell).
    pub from_cell: SSetMap,
}

/// Pushout of `X <-g- A -j-> B` with `j` levelwise injective.  The result
/// keeps every simplex of `X` at its old index and appends the simplices of
/// `B` outside the image of `j`, so gluing is stable under iteration.
pub fn pushout(j: &SSetMap, g: &SSetMap) -> Result<Pushout> {
    if !same_complex(j.source(), g.source()) {
        return Err(Error::NotComposable);
    }
    if !j.is_levelwise_injective() {
        return Err(Error::NotInjective);
    }
    let a = j.source();
    let b = j.target();
    let x = g.target();
    let bound = x.dim_bound().max(b.dim_bound());

    // Where each B-simplex goes: the image of its preimage under j when it
    // has one, a fresh index otherwise.
    let mut b_to_result: Vec<Vec<Option<usize>>> = (0..=b.dim_bound())
        .map(|n| vec![None; b.level_size(n)])
        .collect();
    for n in 0..=a.dim_bound() {
        for s in 0..a.level_size(n) {
            b_to_result[n][j.apply(n, s)] = Some(g.apply(n, s));
        }
    }

    let mut builder = ComplexBuilder::new();
    let mut taken: Vec<HashSet<String>> = vec![HashSet::new(); bound + 1];
    // X first, names kept verbatim.
    for n in 0..=x.dim_bound() {
        for s in 0..x.level_size(n) {
            let faces: Vec<usize> = if n == 0 {
                Vec::new()
            } else {
                x.faces(n, s).to_vec()
            };
            let id = x.id(n, s).to_string();
            taken[n].insert(id.clone());
            builder.add(n, id, &faces)?;
        }
    }
    // New cells from B, bottom-up so faces resolve.
    for n in 0..=b.dim_bound() {
        for s in 0..b.level_size(n) {
            if b_to_result[n][s].is_some() {
                continue;
            }
            let faces: Vec<usize> = if n == 0 {
                Vec::new()
            } else {
                b.faces(n, s)
                    .iter()
                    .map(|&f| b_to_result[n - 1][f].expect("lower levels are resolved first"))
                    .collect()
            };
            let mut id = b.id(n, s).to_string();
            if taken[n].contains(&id) {
                let mut copy = 2;
                while taken[n].contains(&format!("{id}~{copy}")) {
                    copy += 1;
                }
                id = format!("{id}~{copy}");
            }
            taken[n].insert(id.clone());
            let idx = builder.add(n, id, &faces)?;
            b_to_result[n][s] = Some(idx);
        }
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(bound));
    debug_assert!(complex.validate().is_valid());

    let from_base = SSetMap::new(
        Arc::clone(x),
        Arc::clone(&complex),
        (0..=x.dim_bound())
            .map(|n| (0..x.level_size(n)).collect())
            .collect(),
    )?;
    let from_cell = SSetMap::new(
        Arc::clone(b),
        Arc::clone(&complex),
        b_to_result
            .into_iter()
            .map(|level| level.into_iter().map(Option::unwrap).collect())
            .collect(),
    )?;
    Ok(Pushout {
        complex,
        from_base,
        from_cell,
    })
}

#[derive(Debug, Clone)]
pub struct Pullback {
    pub complex: Arc<SemiSimplicialSet>,
    pub to_first: SSetMap,
    pub to_second: SSetMap,
}

/// Levelwise fiber product of `f : X -> Z` and `g : Y -> Z`: simplices are
/// the pairs agreeing in `Z`, with componentwise faces.
pub fn pullback(f: &SSetMap, g: &SSetMap) -> Result<Pullback> {
    if !same_complex(f.target(), g.target()) {
        return Err(Error::NotComposable);
    }
    let x = f.source();
    let y = g.source();
    let bound = x.dim_bound().min(y.dim_bound());

    let mut builder = ComplexBuilder::new();
    let mut index: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new(); bound + 1];
    let mut first: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    let mut second: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut lvl_first = Vec::new();
        let mut lvl_second = Vec::new();
        for sx in 0..x.level_size(n) {
            for sy in 0..y.level_size(n) {
                if f.apply(n, sx) != g.apply(n, sy) {
                    continue;
                }
                let faces: Vec<usize> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| index[n - 1][&(x.face(n, sx, i), y.face(n, sy, i))])
                        .collect()
                };
                let id = format!("{}&{}", x.id(n, sx), y.id(n, sy));
                let idx = builder.add(n, id, &faces)?;
                index[n].insert((sx, sy), idx);
                lvl_first.push(sx);
                lvl_second.push(sy);
            }
        }
        first.push(lvl_first);
        second.push(lvl_second);
    }
    let complex = Arc::new(builder.build_unchecked().with_dim_bound(bound));
    debug_assert!(complex.validate().is_valid());
    let to_first = SSetMap::new(Arc::clone(&complex), Arc::clone(x), first)?;
    let to_second = SSetMap::new(Arc::clone(&complex), Arc::clone(y), second)?;
    Ok(Pullback {
        complex,
        to_first,
        to_second,
    })
}
