//! Finite semi-simplicial sets: levelwise finite sets of simplices together
//! with face maps, and no degeneracies.
//!
//! Conventions used throughout the crate:
//!
//! * A complex is truncated: it stores levels `0 ..= dim_bound` and is silent
//!   about anything above the bound.  Levels may be empty.
//! * An `n`-simplex has faces `d_0, ..., d_n` landing in level `n - 1`,
//!   stored in that order.
//! * The only axiom is `d_i . d_j = d_{j-1} . d_i` for `i < j`, checked as
//!   functions `levels[n] -> levels[n-2]` for every `n >= 2`.
//! * Simplex ids are opaque strings, unique within their level.  All
//!   structure lives in the face tables; positions (level, index) are the
//!   working representation and insertion order is the canonical order.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A single level of a complex: ids plus face tables.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    ids: Vec<String>,
    /// `faces[s]` lists `d_0 .. d_n` of simplex `s`; empty for level 0.
    faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiSimplicialSet {
    levels: Vec<Level>,
}

/// One failed instance of `d_i . d_j = d_{j-1} . d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityViolation {
    pub dim: usize,
    pub simplex: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Outcome of validating a complex.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<IdentityViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SemiSimplicialSet {
    /// The complex with empty levels `0 ..= dim_bound`.
    pub fn empty(dim_bound: usize) -> Self {
        let levels = (0..=dim_bound)
            .map(|_| Level {
                ids: Vec::new(),
                faces: Vec::new(),
            })
            .collect();
        SemiSimplicialSet { levels }
    }

    /// Truncation bound: the largest dimension this complex knows about.
    pub fn dim_bound(&self) -> usize {
        self.levels.len() - 1
    }

    /// Largest dimension with at least one simplex, if any.
    pub fn populated_dim(&self) -> Option<usize> {
        (0..self.levels.len()).rev().find(|&n| !self.levels[n].ids.is_empty())
    }

    /// Dimension of the complex as a signed quantity: -1 when empty.
    pub fn dim(&self) -> isize {
        self.populated_dim().map_or(-1, |n| n as isize)
    }

    pub fn is_empty(&self) -> bool {
        self.populated_dim().is_none()
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.ids.len())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.ids.len()).collect()
    }

    pub fn total_size(&self) -> usize {
        self.levels.iter().map(|l| l.ids.len()).sum()
    }

    /// The `i`-th face of simplex `s` at dimension `n`.
    ///
    /// # Panics
    ///
    /// Panics if the position or face index is out of range; positions are
    /// assumed to come from the same complex.
    pub fn face(&self, n: usize, s: usize, i: usize) -> usize {
        self.levels[n].faces[s][i]
    }

    /// All faces `d_0 .. d_n` of simplex `s` at dimension `n >= 1`.
    pub fn faces(&self, n: usize, s: usize) -> &[usize] {
        &self.levels[n].faces[s]
    }

    pub fn id(&self, n: usize, s: usize) -> &str {
        &self.levels[n].ids[s]
    }

    pub fn index_of(&self, n: usize, id: &str) -> Option<usize> {
        self.levels.get(n)?.ids.iter().position(|x| x == id)
    }

    /// Iterated face keeping only the vertex positions in `keep`
    /// (sorted, distinct, non-empty).  Returns `(dim, index)`.
    pub fn subface(&self, n: usize, s: usize, keep: &[usize]) -> (usize, usize) {
        debug_assert!(!keep.is_empty());
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(*keep.last().unwrap() <= n);
        let mut dim = n;
        let mut cur = s;
        for pos in (0..=n).rev() {
            if !keep.contains(&pos) {
                cur = self.face(dim, cur, pos);
                dim -= 1;
            }
        }
        (dim, cur)
    }

    /// The `k`-th vertex of simplex `s` at dimension `n`.
    pub fn vertex(&self, n: usize, s: usize, k: usize) -> usize {
        self.subface(n, s, &[k]).1
    }

    /// Check the semi-simplicial identities and face-table integrity.
    /// Range and arity errors cannot occur in a built complex, so the report
    /// only carries identity violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for n in 2..=self.dim_bound() {
            for s in 0..self.level_size(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, self.face(n, s, j), i);
                        let rhs = self.face(n - 1, self.face(n, s, i), j - 1);
                        if lhs != rhs {
                            report.violations.push(IdentityViolation {
                                dim: n,
                                simplex: s,
                                i,
                                j,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    /// Copy with the truncation bound changed.  Raising the bound appends
    /// empty levels; lowering it drops the higher levels.
    pub fn with_dim_bound(&self, dim_bound: usize) -> Self {
        let mut levels = self.levels.clone();
        levels.truncate(dim_bound + 1);
        while levels.len() <= dim_bound {
            levels.push(Level {
                ids: Vec::new(),
                faces: Vec::new(),
            });
        }
        SemiSimplicialSet { levels }
    }
}

/// Incremental constructor for complexes.  Simplices must be added bottom-up
/// since faces refer to the level below by index.
#[derive(Debug, Default)]
pub struct ComplexBuilder {
    levels: Vec<Level>,
    seen: Vec<HashMap<String, usize>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        ComplexBuilder::default()
    }

    fn ensure_level(&mut self, n: usize) {
        while self.levels.len() <= n {
            self.levels.push(Level {
                ids: Vec::new(),
                faces: Vec::new(),
            });
            self.seen.push(HashMap::new());
        }
    }

    /// Add a simplex at dimension `dim` with the given id and faces
    /// `d_0 .. d_dim` (indices into the previous level).  Returns the index
    /// of the new simplex within its level.
    pub fn add(&mut self, dim: usize, id: impl Into<String>, faces: &[usize]) -> Result<usize> {
        let id = id.into();
        self.ensure_level(dim);
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::FaceArity {
                dim,
                id,
                expected,
                got: faces.len(),
            });
        }
        if dim > 0 {
            let below = self.levels[dim - 1].ids.len();
            if let Some(&bad) = faces.iter().find(|&&f| f >= below) {
                return Err(Error::FaceOutOfRange { dim, id, index: bad });
            }
        }
        if self.seen[dim].contains_key(&id) {
            return Err(Error::DuplicateId { dim, id });
        }
        let idx = self.levels[dim].ids.len();
        self.seen[dim].insert(id.clone(), idx);
        self.levels[dim].ids.push(id);
        self.levels[dim].faces.push(faces.to_vec());
        Ok(idx)
    }

    pub fn index_of(&self, dim: usize, id: &str) -> Option<usize> {
        self.seen.get(dim)?.get(id).copied()
    }

    /// Finish construction, checking the semi-simplicial identities.
    pub fn build(self) -> Result<SemiSimplicialSet> {
        let complex = self.build_unchecked();
        let report = complex.validate();
        if report.is_valid() {
            Ok(complex)
        } else {
            Err(Error::IdentityViolations {
                count: report.violations.len(),
                first_dim: report.violations[0].dim,
            })
        }
    }

    /// Finish construction without checking the identities.  Face indices
    /// have already been range-checked by `add`, so the result is safe to
    /// traverse; it may still fail `validate`.
    pub fn build_unchecked(mut self) -> SemiSimplicialSet {
        if self.levels.is_empty() {
            self.ensure_level(0);
        }
        SemiSimplicialSet { levels: self.levels }
    }
}

pub(crate) fn vertex_set_id(vertices: &[usize]) -> String {
    if vertices.iter().all(|&v| v < 10) {
        vertices.iter().map(|v| v.to_string()).collect()
    } else {
        let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        parts.join("_")
    }
}

/// All non-empty subsets of `{0..=n}` of size `k + 1`, in lexicographic
/// order; the order fixes the indexing of the standard complexes.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Build the complex whose simplices are a downward-closed family of
/// subsets of `{0..=n}`, e.g. a standard simplex or one of its parts.
fn subset_complex(n: usize, keep: impl Fn(&[usize]) -> bool) -> SemiSimplicialSet {
    let mut b = ComplexBuilder::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for dim in 0..=n {
        for set in subsets_of_size(n, dim + 1) {
            if !keep(&set) {
                continue;
            }
            let faces: Vec<usize> = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut sub = set.clone();
                        sub.remove(i);
                        index[&sub]
                    })
                    .collect()
            };
            let idx = b
                .add(dim, vertex_set_id(&set), &faces)
                .expect("subset complexes are built bottom-up");
            index.insert(set, idx);
        }
    }
    let complex = b.build_unchecked();
    debug_assert!(complex.validate().is_valid());
    complex.with_dim_bound(n)
}

/// The standard `n`-simplex: simplices are the non-empty subsets of
/// `{0..=n}`, with `d_i` removing the `i`-th vertex.
pub fn standard_simplex(n: usize) -> SemiSimplicialSet {
    subset_complex(n, |_| true)
}

/// The boundary of the standard `n`-simplex (all proper subsets).
/// `boundary(0)` is the empty complex truncated at 0.
pub fn boundary(n: usize) -> SemiSimplicialSet {
    if n == 0 {
        return SemiSimplicialSet::empty(0);
    }
    subset_complex(n, |set| set.len() < n + 1).with_dim_bound(n.saturating_sub(1))
}

/// The horn `horn(n, i)`: the boundary with the face opposite vertex `i`
/// removed as well.  Requires `n >= 1` and `i <= n`.
pub fn horn(n: usize, i: usize) -> Result<SemiSimplicialSet> {
    if n == 0 || i > n {
        return Err(Error::InvalidHorn { n, i });
    }
    Ok(subset_complex(n, |set| {
        set.len() < n + 1 && !(set.len() == n && !set.contains(&i))
    })
    .with_dim_bound(n - 1))
}

/// The terminal complex truncated at `n`: one simplex per level, all faces
/// collapsing.
pub fn terminal_truncated(n: usize) -> SemiSimplicialSet {
    let mut b = ComplexBuilder::new();
    for dim in 0..=n {
        let faces = if dim == 0 { Vec::new() } else { vec![0; dim + 1] };
        b.add(dim, format!("t{dim}"), &faces).expect("terminal levels are tiny");
    }
    b.build().expect("terminal complex satisfies the identities")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_level_counts_are_binomial() {
        // C(n+1, k+1) simplices at level k.
        let d3 = standard_simplex(3);
        assert_eq!(d3.level_sizes(), vec![4, 6, 4, 1]);
        assert!(d3.validate().is_valid());
    }

    #[test]
    fn boundary_of_the_tetrahedron() {
        let b3 = boundary(3);
        assert_eq!(b3.level_sizes(), vec![4, 6, 4]);
        assert_eq!(b3.dim_bound(), 2);
        assert!(b3.validate().is_valid());
    }

    #[test]
    fn boundary_of_the_point_is_empty() {
        let b0 = boundary(0);
        assert!(b0.is_empty());
        assert_eq!(b0.dim_bound(), 0);
    }

    #[test]
    fn horns_drop_one_facet() {
        let h = horn(2, 1).unwrap();
        assert_eq!(h.level_sizes(), vec![3, 2]);
        // The missing edge is the one opposite vertex 1, i.e. "02".
        assert!(h.index_of(1, "02").is_none());
        assert!(h.index_of(1, "01").is_some());
        assert!(h.index_of(1, "12").is_some());
        assert!(horn(0, 0).is_err());
        assert!(horn(2, 3).is_err());
    }

    #[test]
    fn terminal_complex_validates() {
        let t = terminal_truncated(4);
        assert_eq!(t.level_sizes(), vec![1; 5]);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn validate_reports_identity_violations_with_indices() {
        let mut b = ComplexBuilder::new();
        let x = b.add(0, "x", &[]).unwrap();
        let y = b.add(0, "y", &[]).unwrap();
        let z = b.add(0, "z", &[]).unwrap();
        let xy = b.add(1, "xy", &[y, x]).unwrap();
        let yz = b.add(1, "yz", &[z, y]).unwrap();
        // Correct d_1 would be an edge x -> z; use a loop at z instead.  Its
        // target agrees with the composite by accident, so the only broken
        // pair is d_1 d_2 = x against d_1 d_1 = z.
        let xz_bad = b.add(1, "xz", &[z, z]).unwrap();
        b.add(2, "xyz", &[yz, xz_bad, xy]).unwrap();
        let complex = b.build_unchecked();
        let report = complex.validate();
        assert!(!report.is_valid());
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!((v.dim, v.i, v.j), (2, 1, 2));
    }

    #[test]
    fn builder_rejects_malformed_input() {
        let mut b = ComplexBuilder::new();
        b.add(0, "x", &[]).unwrap();
        assert!(matches!(
            b.add(0, "x", &[]),
            Err(Error::DuplicateId { .. })
        ));
        assert!(matches!(
            b.add(1, "e", &[0]),
            Err(Error::FaceArity { .. })
        ));
        assert!(matches!(
            b.add(1, "e", &[0, 7]),
            Err(Error::FaceOutOfRange { .. })
        ));
    }

    #[test]
    fn subface_extracts_edges_of_a_tetrahedron() {
        let d3 = standard_simplex(3);
        let top = d3.index_of(3, "0123").unwrap();
        let (dim, e) = d3.subface(3, top, &[0, 2]);
        assert_eq!(dim, 1);
        assert_eq!(d3.id(1, e), "02");
        let (_, v) = d3.subface(3, top, &[3]);
        assert_eq!(d3.id(0, v), "3");
        assert_eq!(d3.vertex(3, top, 1), d3.index_of(0, "1").unwrap());
    }

    #[test]
    fn with_dim_bound_extends_and_truncates() {
        let d1 = standard_simplex(1);
        let wide = d1.with_dim_bound(3);
        assert_eq!(wide.level_sizes(), vec![2, 1, 0, 0]);
        let cut = wide.with_dim_bound(0);
        assert_eq!(cut.level_sizes(), vec![2]);
    }
}
