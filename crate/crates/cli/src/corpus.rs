//! The test corpus: nerves of small categories plus the simplex family,
//! generated deterministically from a spec.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use semikan::category::FiniteCategory;
use semikan::complex::{boundary, horn, standard_simplex};
use semikan::error::{Error, Result};
use semikan::interchange::{complex_document, outer_document, CategoryDocument, ComplexDocument};
use semikan::simplicial::nerve;
use semikan::unitality::OuterDegeneracyData;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Group { order: usize },
    Poset { length: usize },
    Groupoid,
    CustomCategory { name: String, category: CategoryDocument },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub generators: Vec<GeneratorSpec>,
    pub truncation: usize,
}

impl CorpusSpec {
    /// Nerves of Z/2, Z/3, the poset chains of length up to 3, and the
    /// 2-object groupoid, truncated one level above the default check
    /// dimension.
    pub fn default_spec() -> Self {
        CorpusSpec {
            generators: vec![
                GeneratorSpec::Group { order: 2 },
                GeneratorSpec::Group { order: 3 },
                GeneratorSpec::Poset { length: 1 },
                GeneratorSpec::Poset { length: 2 },
                GeneratorSpec::Poset { length: 3 },
                GeneratorSpec::Groupoid,
            ],
            truncation: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub document: ComplexDocument,
}

/// A nerve document, with the outer degeneracy tables that come for free
/// from the genuine simplicial structure.
pub fn nerve_document(c: &FiniteCategory, trunc: usize) -> ComplexDocument {
    let nv = nerve(c, trunc);
    let x = nv.simplicial.forget();
    let data = OuterDegeneracyData::from_simplicial(&nv.simplicial);
    let mut doc = complex_document(&x);
    doc.outer = Some(outer_document(&x, &data));
    doc
}

/// The corpus a spec describes: one nerve per generator, in spec order.
pub fn spec_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for g in &spec.generators {
        let (name, cat) = match g {
            GeneratorSpec::Group { order } => {
                if *order == 0 {
                    return Err(Error::Category("a group needs at least one element".into()));
                }
                (format!("nerve-z{order}"), FiniteCategory::cyclic_group(*order))
            }
            GeneratorSpec::Poset { length } => (
                format!("nerve-chain-{length}"),
                FiniteCategory::poset_chain(*length),
            ),
            GeneratorSpec::Groupoid => {
                ("nerve-groupoid".to_string(), FiniteCategory::two_object_groupoid())
            }
            GeneratorSpec::CustomCategory { name, category } => {
                (format!("nerve-{name}"), category.category()?)
            }
        };
        entries.push(CorpusEntry {
            name,
            document: nerve_document(&cat, spec.truncation),
        });
    }
    Ok(entries)
}

/// Simplices, boundaries, and horns in dimensions up to 3, padded to the
/// given truncation.
pub fn simplex_family(trunc: usize) -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    for n in 0..=3usize {
        let x = Arc::new(standard_simplex(n).with_dim_bound(trunc));
        entries.push(CorpusEntry {
            name: format!("simplex-{n}"),
            document: complex_document(&x),
        });
    }
    for n in 0..=3usize {
        let x = Arc::new(boundary(n).with_dim_bound(trunc));
        entries.push(CorpusEntry {
            name: format!("boundary-{n}"),
            document: complex_document(&x),
        });
    }
    for n in 1..=3usize {
        for i in 0..=n {
            let x = Arc::new(horn(n, i).expect("indices in range").with_dim_bound(trunc));
            entries.push(CorpusEntry {
                name: format!("horn-{n}-{i}"),
                document: complex_document(&x),
            });
        }
    }
    entries
}

/// The default corpus: the spec'd nerves followed by the simplex family.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let spec = CorpusSpec::default_spec();
    let mut entries = spec_corpus(&spec).expect("builtin generators are valid");
    entries.extend(simplex_family(spec.truncation));
    entries
}
