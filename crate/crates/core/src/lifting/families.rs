//! The generating families: boundary and horn inclusions in the usual index
//! ranges, plus the marked refinements where outer horns carry a marked
//! leading or trailing edge and the interval gets its marking bumped.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::complex::{boundary, horn, standard_simplex};
use crate::error::Error;
use crate::maps::SSetMap;
use crate::marking::{MarkedMap, MarkedSSet};

/// A named generating map, levelwise injective by construction.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub map: MarkedMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Boundary inclusions of every dimension.
    Boundaries,
    /// All horn inclusions.
    Horns,
    /// Horns with 0 < i < n.
    InnerHorns,
    /// Horns with i < n.
    LeftHorns,
    /// Horns with i > 0.
    RightHorns,
    /// Flat boundary inclusions plus the interval marking bump.
    MarkedBoundaries,
    /// Flat inner horns, outer horns whose leading or trailing edge is
    /// marked, and the exchange cell that forces two-out-of-six closure.
    AdmissibleHorns,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Boundaries,
        Family::Horns,
        Family::InnerHorns,
        Family::LeftHorns,
        Family::RightHorns,
        Family::MarkedBoundaries,
        Family::AdmissibleHorns,
    ];

    /// The members of dimension at most `n`, in a fixed order: dimension
    /// ascending, inner before outer, the exchange cell last.
    pub fn generators(self, n: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        match self {
            Family::Boundaries => {
                for k in 0..=n {
                    out.push(flat_boundary(k));
                }
            }
            Family::Horns => {
                for k in 1..=n {
                    for i in 0..=k {
                        out.push(flat_horn(k, i));
                    }
                }
            }
            Family::InnerHorns => {
                for k in 2..=n {
                    for i in 1..k {
                        out.push(flat_horn(k, i));
                    }
                }
            }
            Family::LeftHorns => {
                for k in 1..=n {
                    for i in 0..k {
                        out.push(flat_horn(k, i));
                    }
                }
            }
            Family::RightHorns => {
                for k in 1..=n {
                    for i in 1..=k {
                        out.push(flat_horn(k, i));
                    }
                }
            }
            Family::MarkedBoundaries => {
                for k in 0..=n {
                    out.push(flat_boundary(k));
                }
                if n >= 1 {
                    out.push(interval_bump());
                }
            }
            Family::AdmissibleHorns => {
                for k in 2..=n {
                    for i in 1..k {
                        out.push(flat_horn(k, i));
                    }
                }
                for k in 1..=n {
                    out.push(marked_outer_horn(k, 0));
                }
                for k in 1..=n {
                    out.push(marked_outer_horn(k, k));
                }
                if n >= 3 {
                    out.push(exchange());
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Boundaries => "boundaries",
            Family::Horns => "horns",
            Family::InnerHorns => "inner-horns",
            Family::LeftHorns => "left-horns",
            Family::RightHorns => "right-horns",
            Family::MarkedBoundaries => "marked-boundaries",
            Family::AdmissibleHorns => "admissible-horns",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.to_string() == s)
            .ok_or_else(|| Error::Document(format!("unknown family {s:?}")))
    }
}

pub(crate) fn flat_boundary(k: usize) -> Generator {
    let b = Arc::new(boundary(k));
    let d = Arc::new(standard_simplex(k));
    let map = SSetMap::by_ids(&b, &d).expect("boundary ids appear in the simplex");
    Generator {
        name: format!("boundary({k})"),
        map: MarkedMap::flat(map),
    }
}

pub(crate) fn flat_horn(k: usize, i: usize) -> Generator {
    let h = Arc::new(horn(k, i).expect("horn indices are in range"));
    let d = Arc::new(standard_simplex(k));
    let map = SSetMap::by_ids(&h, &d).expect("horn ids appear in the simplex");
    Generator {
        name: format!("horn({k},{i})"),
        map: MarkedMap::flat(map),
    }
}

/// The identity on the interval, from no marking to the full one.
fn interval_bump() -> Generator {
    let d1 = Arc::new(standard_simplex(1));
    let map = MarkedMap::new(
        MarkedSSet::flat(Arc::clone(&d1)),
        MarkedSSet::sharp(Arc::clone(&d1)),
        SSetMap::identity(&d1),
    )
    .expect("everything is marked in the target");
    Generator {
        name: "mark-interval".to_string(),
        map,
    }
}

/// The outer horn `i = 0` or `i = k` with the edge adjacent to the missing
/// face marked on both sides (the horn of dimension one has no edges, so
/// only its target carries the mark).
fn marked_outer_horn(k: usize, i: usize) -> Generator {
    debug_assert!(i == 0 || i == k);
    let h = Arc::new(horn(k, i).expect("horn indices are in range"));
    let d = Arc::new(standard_simplex(k));
    let underlying = SSetMap::by_ids(&h, &d).expect("horn ids appear in the simplex");
    let edge = if i == 0 {
        crate::complex::vertex_set_id(&[0, 1])
    } else {
        crate::complex::vertex_set_id(&[k - 1, k])
    };
    let target_marked: BTreeSet<usize> = d.index_of(1, &edge).into_iter().collect();
    let source_marked: BTreeSet<usize> = h.index_of(1, &edge).into_iter().collect();
    let map = MarkedMap::new(
        MarkedSSet::new(h, source_marked).expect("the edge is a 1-simplex"),
        MarkedSSet::new(d, target_marked).expect("the edge is a 1-simplex"),
        underlying,
    )
    .expect("the marked edge is sent to itself");
    let name = if i == 0 {
        format!("left-horn({k})")
    } else {
        format!("right-horn({k})")
    };
    Generator { name, map }
}

/// The identity on the 3-simplex, from the two interleaved long edges to the
/// full marking.  Filling against it closes markings under two-out-of-six.
fn exchange() -> Generator {
    let d3 = Arc::new(standard_simplex(3));
    let marked: BTreeSet<usize> = ["02", "13"]
        .iter()
        .map(|id| d3.index_of(1, id).expect("edges of the 3-simplex"))
        .collect();
    let map = MarkedMap::new(
        MarkedSSet::new(Arc::clone(&d3), marked).expect("edges are 1-simplices"),
        MarkedSSet::sharp(Arc::clone(&d3)),
        SSetMap::identity(&d3),
    )
    .expect("everything is marked in the target");
    Generator {
        name: "exchange".to_string(),
        map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes_follow_the_index_ranges() {
        assert_eq!(Family::Boundaries.generators(2).len(), 3);
        assert_eq!(Family::Horns.generators(2).len(), 5);
        assert_eq!(Family::InnerHorns.generators(3).len(), 3);
        assert_eq!(Family::LeftHorns.generators(2).len(), 3);
        assert_eq!(Family::RightHorns.generators(2).len(), 3);
        assert_eq!(Family::MarkedBoundaries.generators(1).len(), 3);
        // Three inner, three left, three right, one exchange.
        assert_eq!(Family::AdmissibleHorns.generators(3).len(), 10);
    }

    #[test]
    fn generators_are_levelwise_injective() {
        for family in Family::ALL {
            for g in family.generators(3) {
                assert!(g.map.is_levelwise_injective(), "{} in {family}", g.name);
            }
        }
    }

    #[test]
    fn outer_horn_markings_sit_next_to_the_missing_face() {
        let gens = Family::AdmissibleHorns.generators(2);
        let left1 = gens.iter().find(|g| g.name == "left-horn(1)").unwrap();
        assert!(left1.map.source().marked().is_empty());
        assert_eq!(left1.map.target().marked().len(), 1);

        let left2 = gens.iter().find(|g| g.name == "left-horn(2)").unwrap();
        let src = left2.map.source();
        assert_eq!(src.marked().len(), 1);
        let marked_edge = *src.marked().iter().next().unwrap();
        assert_eq!(src.carrier().id(1, marked_edge), "01");

        let right2 = gens.iter().find(|g| g.name == "right-horn(2)").unwrap();
        let marked_edge = *right2.map.source().marked().iter().next().unwrap();
        assert_eq!(right2.map.source().carrier().id(1, marked_edge), "12");
    }

    #[test]
    fn exchange_marks_the_interleaved_edges() {
        let gens = Family::AdmissibleHorns.generators(3);
        let ex = gens.iter().find(|g| g.name == "exchange").unwrap();
        assert_eq!(ex.map.source().marked().len(), 2);
        assert!(ex.map.target().is_sharp());
        assert!(Family::AdmissibleHorns
            .generators(2)
            .iter()
            .all(|g| g.name != "exchange"));
    }

    #[test]
    fn family_names_round_trip() {
        for family in Family::ALL {
            assert_eq!(family.to_string().parse::<Family>().unwrap(), family);
        }
        assert!("no-such-family".parse::<Family>().is_err());
    }
}
