//! Augmented semi-simplicial sets: an extra level of (-1)-cells under the
//! vertices, with every vertex assigned one compatibly with faces.

use crate::complex::SemiSimplicialSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSSet {
    base: SemiSimplicialSet,
    minus_one: Vec<String>,
    /// `augmentation[v]` is the (-1)-cell under vertex `v`.
    augmentation: Vec<usize>,
}

impl AugmentedSSet {
    pub fn new(
        base: SemiSimplicialSet,
        minus_one: Vec<String>,
        augmentation: Vec<usize>,
    ) -> Result<Self> {
        if augmentation.len() != base.level_size(0) {
            return Err(Error::ComponentMismatch {
                dim: 0,
                expected: base.level_size(0),
                got: augmentation.len(),
            });
        }
        for (v, &c) in augmentation.iter().enumerate() {
            if c >= minus_one.len() {
                return Err(Error::ComponentOutOfRange { dim: 0, simplex: v });
            }
        }
        for (i, id) in minus_one.iter().enumerate() {
            if minus_one[..i].contains(id) {
                return Err(Error::DuplicateId {
                    dim: 0,
                    id: id.clone(),
                });
            }
        }
        // Both endpoints of an edge must sit over the same (-1)-cell.
        for e in 0..base.level_size(1) {
            if augmentation[base.face(1, e, 0)] != augmentation[base.face(1, e, 1)] {
                return Err(Error::NotCommuting {
                    dim: 1,
                    simplex: e,
                    face: 0,
                });
            }
        }
        Ok(AugmentedSSet {
            base,
            minus_one,
            augmentation,
        })
    }

    pub fn base(&self) -> &SemiSimplicialSet {
        &self.base
    }

    pub fn minus_one_size(&self) -> usize {
        self.minus_one.len()
    }

    pub fn minus_one_id(&self, c: usize) -> &str {
        &self.minus_one[c]
    }

    pub fn augmentation(&self, vertex: usize) -> usize {
        self.augmentation[vertex]
    }

    /// The (-1)-cell under any simplex, via its first vertex.
    pub fn cell_over(&self, n: usize, s: usize) -> usize {
        self.augmentation[self.base.vertex(n, s, 0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard_simplex;

    #[test]
    fn simplex_augments_over_a_point() {
        let d2 = standard_simplex(2);
        let aug =
            AugmentedSSet::new(d2, vec!["*".to_string()], vec![0, 0, 0]).unwrap();
        assert_eq!(aug.cell_over(2, 0), 0);
        assert_eq!(aug.minus_one_size(), 1);
    }

    #[test]
    fn mismatched_endpoints_are_rejected() {
        let d1 = standard_simplex(1);
        let err = AugmentedSSet::new(
            d1,
            vec!["x".to_string(), "y".to_string()],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotCommuting { dim: 1, .. }));
    }
}
