//! Flat JSON documents for complexes, maps, and categories.
//!
//! Everything is id-based: levels list simplex ids per dimension, faces
//! refer to ids one dimension down, and maps send ids to ids.  Indices are
//! an in-memory detail, so documents survive reordering-free round trips
//! and stay diffable.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::augmented::AugmentedSSet;
use crate::category::{FiniteCategory, Morphism};
use crate::complex::{ComplexBuilder, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::maps::SSetMap;
use crate::marking::MarkedSSet;
use crate::unitality::OuterDegeneracyData;

/// Optional outer degeneracy tables, by id: `s0[n]` and `s_omega[n]` list
/// the image of each `n`-simplex one dimension up, in level order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterDocument {
    pub s0: Vec<Vec<String>>,
    pub s_omega: Vec<Vec<String>>,
}

/// One complex per document.  `levels` maps each dimension to its simplex
/// ids; `faces` maps ids to their faces in order `d_0 .. d_n`.  A marking is
/// a list of edge ids.  Augmented complexes carry a `"-1"` level and give
/// each vertex its augmentation target as a single face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub dim_bound: usize,
    pub levels: BTreeMap<i64, Vec<String>>,
    pub faces: BTreeMap<i64, BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augmented: Option<bool>,
    /// Free-form origin notes per simplex, written by constructions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<BTreeMap<i64, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<OuterDocument>,
}

pub fn complex_document(x: &SemiSimplicialSet) -> ComplexDocument {
    let mut levels = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for n in 0..=x.dim_bound() {
        levels.insert(
            n as i64,
            (0..x.level_size(n)).map(|s| x.id(n, s).to_string()).collect(),
        );
        if n == 0 {
            continue;
        }
        let mut level_faces = BTreeMap::new();
        for s in 0..x.level_size(n) {
            level_faces.insert(
                x.id(n, s).to_string(),
                x.faces(n, s)
                    .iter()
                    .map(|&f| x.id(n - 1, f).to_string())
                    .collect(),
            );
        }
        faces.insert(n as i64, level_faces);
    }
    ComplexDocument {
        dim_bound: x.dim_bound(),
        levels,
        faces,
        marking: None,
        augmented: None,
        provenance: None,
        outer: None,
    }
}

pub fn marked_document(x: &MarkedSSet) -> ComplexDocument {
    let mut doc = complex_document(x.carrier());
    doc.marking = Some(
        x.marked()
            .iter()
            .map(|&e| x.carrier().id(1, e).to_string())
            .collect(),
    );
    doc
}

pub fn augmented_document(a: &AugmentedSSet) -> ComplexDocument {
    let base = a.base();
    let mut doc = complex_document(base);
    doc.augmented = Some(true);
    doc.levels.insert(
        -1,
        (0..a.minus_one_size())
            .map(|c| a.minus_one_id(c).to_string())
            .collect(),
    );
    let mut vertex_faces = BTreeMap::new();
    for v in 0..base.level_size(0) {
        vertex_faces.insert(
            base.id(0, v).to_string(),
            vec![a.minus_one_id(a.augmentation(v)).to_string()],
        );
    }
    doc.faces.insert(0, vertex_faces);
    doc
}

pub fn outer_document(x: &SemiSimplicialSet, d: &OuterDegeneracyData) -> OuterDocument {
    let table = |t: &[Vec<usize>]| {
        t.iter()
            .enumerate()
            .map(|(n, level)| level.iter().map(|&s| x.id(n + 1, s).to_string()).collect())
            .collect()
    };
    OuterDocument {
        s0: table(&d.s0),
        s_omega: table(&d.s_omega),
    }
}

impl ComplexDocument {
    pub fn level_ids(&self, dim: i64) -> &[String] {
        self.levels.get(&dim).map(Vec::as_slice).unwrap_or(&[])
    }

    fn index_in(&self, dim: i64, id: &str) -> Result<usize> {
        self.level_ids(dim)
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownId {
                dim: dim.max(0) as usize,
                id: id.to_string(),
            })
    }

    /// Build and validate the underlying complex, ignoring marking and
    /// augmentation.
    pub fn complex(&self) -> Result<Arc<SemiSimplicialSet>> {
        self.assemble(true)
    }

    /// Build without checking the simplicial identities. Structural errors
    /// (unknown ids, wrong face counts) still fail; validators that want the
    /// full violation list call this and then `validate` on the result.
    pub fn complex_unchecked(&self) -> Result<Arc<SemiSimplicialSet>> {
        self.assemble(false)
    }

    fn assemble(&self, validate: bool) -> Result<Arc<SemiSimplicialSet>> {
        let mut builder = ComplexBuilder::new();
        for n in 0..=self.dim_bound {
            let empty = BTreeMap::new();
            let level_faces = self.faces.get(&(n as i64)).unwrap_or(&empty);
            for id in self.level_ids(n as i64) {
                let faces: Vec<usize> = if n == 0 {
                    Vec::new()
                } else {
                    let listed = level_faces.get(id).ok_or_else(|| Error::FaceArity {
                        dim: n,
                        id: id.clone(),
                        expected: n + 1,
                        got: 0,
                    })?;
                    let mut resolved = Vec::with_capacity(listed.len());
                    for f in listed {
                        resolved.push(self.index_in(n as i64 - 1, f)?);
                    }
                    resolved
                };
                builder.add(n, id.clone(), &faces)?;
            }
        }
        let built = if validate {
            builder.build()?
        } else {
            builder.build_unchecked()
        };
        Ok(Arc::new(built.with_dim_bound(self.dim_bound)))
    }

    /// Indices of the marked edges, resolved against the parsed complex.
    pub fn marking_indices(&self) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for id in self.marking.iter().flatten() {
            out.insert(self.index_in(1, id)?);
        }
        Ok(out)
    }

    /// The complex with its marking; absent marking parses as flat.
    pub fn marked(&self) -> Result<MarkedSSet> {
        MarkedSSet::new(self.complex()?, self.marking_indices()?)
    }

    /// The augmented reading: the `"-1"` level plus one face per vertex.
    pub fn augmented(&self) -> Result<AugmentedSSet> {
        if self.augmented != Some(true) {
            return Err(Error::Document(
                "document is not flagged as augmented".into(),
            ));
        }
        let base = self.complex()?;
        let minus_one: Vec<String> = self.level_ids(-1).to_vec();
        let empty = BTreeMap::new();
        let vertex_faces = self.faces.get(&0).unwrap_or(&empty);
        let mut augmentation = Vec::with_capacity(base.level_size(0));
        for v in 0..base.level_size(0) {
            let id = base.id(0, v);
            let listed = vertex_faces.get(id).ok_or_else(|| Error::FaceArity {
                dim: 0,
                id: id.to_string(),
                expected: 1,
                got: 0,
            })?;
            if listed.len() != 1 {
                return Err(Error::FaceArity {
                    dim: 0,
                    id: id.to_string(),
                    expected: 1,
                    got: listed.len(),
                });
            }
            augmentation.push(self.index_in(-1, &listed[0])?);
        }
        AugmentedSSet::new(base.as_ref().clone(), minus_one, augmentation)
    }

    /// The outer degeneracy tables, resolved to indices.
    pub fn outer_data(&self) -> Result<Option<OuterDegeneracyData>> {
        let Some(outer) = &self.outer else {
            return Ok(None);
        };
        let resolve = |t: &[Vec<String>]| -> Result<Vec<Vec<usize>>> {
            t.iter()
                .enumerate()
                .map(|(n, level)| {
                    level
                        .iter()
                        .map(|id| self.index_in(n as i64 + 1, id))
                        .collect()
                })
                .collect()
        };
        Ok(Some(OuterDegeneracyData {
            s0: resolve(&outer.s0)?,
            s_omega: resolve(&outer.s_omega)?,
        }))
    }
}

/// A map as id assignments per dimension.  Endpoints may be embedded for
/// self-contained documents or supplied at parse time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<ComplexDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ComplexDocument>,
    pub components: BTreeMap<i64, BTreeMap<String, String>>,
}

pub fn map_document(f: &SSetMap, embed: bool) -> MapDocument {
    let src = f.source();
    let dst = f.target();
    let mut components = BTreeMap::new();
    for n in 0..=src.dim_bound() {
        let mut level = BTreeMap::new();
        for s in 0..src.level_size(n) {
            level.insert(
                src.id(n, s).to_string(),
                dst.id(n, f.apply(n, s)).to_string(),
            );
        }
        components.insert(n as i64, level);
    }
    MapDocument {
        source: embed.then(|| complex_document(src)),
        target: embed.then(|| complex_document(dst)),
        components,
    }
}

impl MapDocument {
    /// Resolve against explicit endpoints, validating commutation with
    /// faces.
    pub fn map(
        &self,
        source: &Arc<SemiSimplicialSet>,
        target: &Arc<SemiSimplicialSet>,
    ) -> Result<SSetMap> {
        let mut components = Vec::with_capacity(source.dim_bound() + 1);
        for n in 0..=source.dim_bound() {
            let empty = BTreeMap::new();
            let level = self.components.get(&(n as i64)).unwrap_or(&empty);
            let mut resolved = Vec::with_capacity(source.level_size(n));
            for s in 0..source.level_size(n) {
                let id = source.id(n, s);
                let image = level.get(id).ok_or_else(|| Error::ComponentMismatch {
                    dim: n,
                    expected: source.level_size(n),
                    got: level.len(),
                })?;
                resolved.push(target.index_of(n, image).ok_or_else(|| Error::UnknownId {
                    dim: n,
                    id: image.clone(),
                })?);
            }
            components.push(resolved);
        }
        SSetMap::new(Arc::clone(source), Arc::clone(target), components)
    }

    /// Resolve a self-contained document through its embedded endpoints.
    pub fn resolve(&self) -> Result<SSetMap> {
        let source = self
            .source
            .as_ref()
            .ok_or_else(|| Error::Document("map document has no embedded source".into()))?
            .complex()?;
        let target = self
            .target
            .as_ref()
            .ok_or_else(|| Error::Document("map document has no embedded target".into()))?
            .complex()?;
        self.map(&source, &target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite category by name: object list, morphism endpoints, identity
/// morphisms per object, and the full composition table as
/// `[first, then, composite]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDocument {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDocument>,
    pub identities: Vec<String>,
    pub compose: Vec<[String; 3]>,
}

pub fn category_document(c: &FiniteCategory) -> CategoryDocument {
    let morphisms = (0..c.morphism_count())
        .map(|m| {
            let mor = c.morphism(m);
            MorphismDocument {
                id: mor.id.clone(),
                src: c.object_name(mor.src).to_string(),
                dst: c.object_name(mor.dst).to_string(),
            }
        })
        .collect();
    let identities = (0..c.object_count())
        .map(|o| c.morphism(c.identity_of(o)).id.clone())
        .collect();
    let mut compose = Vec::new();
    for f in 0..c.morphism_count() {
        for g in 0..c.morphism_count() {
            if let Some(h) = c.composite(f, g) {
                compose.push([
                    c.morphism(f).id.clone(),
                    c.morphism(g).id.clone(),
                    c.morphism(h).id.clone(),
                ]);
            }
        }
    }
    CategoryDocument {
        objects: (0..c.object_count())
            .map(|o| c.object_name(o).to_string())
            .collect(),
        morphisms,
        identities,
        compose,
    }
}

impl CategoryDocument {
    pub fn category(&self) -> Result<FiniteCategory> {
        let object_index = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::Document(format!("unknown object {name:?}")))
        };
        let morphism_index = |id: &str| {
            self.morphisms
                .iter()
                .position(|m| m.id == id)
                .ok_or_else(|| Error::Document(format!("unknown morphism {id:?}")))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(Morphism {
                    id: m.id.clone(),
                    src: object_index(&m.src)?,
                    dst: object_index(&m.dst)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let identities = self
            .identities
            .iter()
            .map(|id| morphism_index(id))
            .collect::<Result<Vec<_>>>()?;
        let mut compose = std::collections::HashMap::new();
        for [first, then, result] in &self.compose {
            compose.insert(
                (morphism_index(first)?, morphism_index(then)?),
                morphism_index(result)?,
            );
        }
        FiniteCategory::new(self.objects.clone(), morphisms, identities, compose)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FiniteCategory;
    use crate::complex::{boundary, standard_simplex};
    use crate::simplicial::nerve;
    use crate::slice::free_slice;

    #[test]
    fn complexes_round_trip() {
        let x = Arc::new(nerve(&FiniteCategory::cyclic_group(2), 3).simplicial.forget());
        let doc = complex_document(&x);
        let back = doc.complex().unwrap();
        assert_eq!(*back, *x);
        let json = serde_json::to_string(&doc).unwrap();
        let reparsed: ComplexDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed, doc);
    }

    #[test]
    fn padded_bounds_survive_the_trip() {
        let x = standard_simplex(1).with_dim_bound(3);
        let doc = complex_document(&x);
        let back = doc.complex().unwrap();
        assert_eq!(back.dim_bound(), 3);
        assert_eq!(*back, x);
    }

    #[test]
    fn markings_round_trip() {
        let x = Arc::new(standard_simplex(2));
        let marked = MarkedSSet::new(Arc::clone(&x), [0, 2].into_iter().collect()).unwrap();
        let doc = marked_document(&marked);
        assert_eq!(doc.marked().unwrap(), marked);
    }

    #[test]
    fn bad_face_ids_name_the_offender() {
        let x = standard_simplex(1);
        let mut doc = complex_document(&x);
        doc.faces.get_mut(&1).unwrap().get_mut("01").unwrap()[0] = "zz".to_string();
        match doc.complex() {
            Err(Error::UnknownId { dim: 0, id }) => assert_eq!(id, "zz"),
            other => panic!("expected an unknown id, got {other:?}"),
        }
    }

    #[test]
    fn augmented_complexes_round_trip() {
        let base = Arc::new(boundary(2).with_dim_bound(2));
        let j = Arc::new(standard_simplex(0));
        let free = free_slice(&base, &j, 1).unwrap();
        let doc = augmented_document(&free.augmented);
        let back = doc.augmented().unwrap();
        assert_eq!(back, free.augmented);
    }

    #[test]
    fn maps_round_trip_through_embedded_endpoints() {
        let h = Arc::new(crate::complex::horn(2, 1).unwrap());
        let d = Arc::new(standard_simplex(2));
        let f = SSetMap::by_ids(&h, &d).unwrap();
        let doc = map_document(&f, true);
        let back = doc.resolve().unwrap();
        assert_eq!(back.components(), f.components());
    }

    #[test]
    fn categories_round_trip() {
        for c in [
            FiniteCategory::cyclic_group(3),
            FiniteCategory::poset_chain(2),
            FiniteCategory::two_object_groupoid(),
        ] {
            let doc = category_document(&c);
            assert_eq!(doc.category().unwrap(), c);
            let json = serde_json::to_string_pretty(&doc).unwrap();
            let reparsed: CategoryDocument = serde_json::from_str(&json).unwrap();
            assert_eq!(reparsed.category().unwrap(), c);
        }
    }

    #[test]
    fn outer_tables_resolve() {
        let nv = nerve(&FiniteCategory::cyclic_group(2), 3);
        let x = nv.simplicial.forget();
        let d = crate::unitality::OuterDegeneracyData::from_simplicial(&nv.simplicial);
        let mut doc = complex_document(&x);
        doc.outer = Some(outer_document(&x, &d));
        assert_eq!(doc.outer_data().unwrap(), Some(d));
    }
}
