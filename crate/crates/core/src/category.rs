//! Finite categories presented by object and morphism tables, used as nerve
//! input.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `(f, g) -> g . f` for composable `f : x -> y`, `g : y -> z`.
    compose: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let cat = FiniteCategory {
            objects,
            morphisms,
            identities,
            compose,
        };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<()> {
        if self.identities.len() != self.objects.len() {
            return Err(Error::Category(format!(
                "{} identities for {} objects",
                self.identities.len(),
                self.objects.len()
            )));
        }
        for (o, &i) in self.identities.iter().enumerate() {
            let m = self
                .morphisms
                .get(i)
                .ok_or_else(|| Error::Category(format!("identity of object {o} out of range")))?;
            if m.src != o || m.dst != o {
                return Err(Error::Category(format!(
                    "identity of object {o} is not an endomorphism of it"
                )));
            }
        }
        for m in &self.morphisms {
            if m.src >= self.objects.len() || m.dst >= self.objects.len() {
                return Err(Error::Category(format!(
                    "morphism {} has an out-of-range endpoint",
                    m.id
                )));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                let composable = mf.dst == mg.src;
                match self.compose.get(&(f, g)) {
                    None if composable => {
                        return Err(Error::Category(format!(
                            "missing composite of {} then {}",
                            mf.id, mg.id
                        )));
                    }
                    Some(_) if !composable => {
                        return Err(Error::Category(format!(
                            "composite listed for non-composable {} then {}",
                            mf.id, mg.id
                        )));
                    }
                    Some(&h) => {
                        let mh = self.morphisms.get(h).ok_or_else(|| {
                            Error::Category("composite index out of range".into())
                        })?;
                        if mh.src != mf.src || mh.dst != mg.dst {
                            return Err(Error::Category(format!(
                                "composite of {} then {} has the wrong endpoints",
                                mf.id, mg.id
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            let id_src = self.identities[mf.src];
            let id_dst = self.identities[mf.dst];
            if self.compose[&(id_src, f)] != f || self.compose[&(f, id_dst)] != f {
                return Err(Error::Category(format!("unit law fails at {}", mf.id)));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for (g, mg) in self.morphisms.iter().enumerate() {
                if mf.dst != mg.src {
                    continue;
                }
                for h in 0..self.morphisms.len() {
                    if mg.dst != self.morphisms[h].src {
                        continue;
                    }
                    let left = self.compose[&(self.compose[&(f, g)], h)];
                    let right = self.compose[&(f, self.compose[&(g, h)])];
                    if left != right {
                        return Err(Error::Category(format!(
                            "associativity fails at {} ; {} ; {}",
                            mf.id, mg.id, self.morphisms[h].id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|x| x == name)
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn identity_of(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities.contains(&m)
    }

    /// `g . f` when `f` then `g` compose.
    pub fn composite(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// A morphism is an isomorphism when it has a two-sided inverse.
    pub fn is_isomorphism(&self, m: usize) -> bool {
        let mor = &self.morphisms[m];
        (0..self.morphisms.len()).any(|w| {
            self.composite(m, w) == Some(self.identities[mor.src])
                && self.composite(w, m) == Some(self.identities[mor.dst])
        })
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1, "a group has at least the unit element");
        let objects = vec!["*".to_string()];
        let morphisms = (0..n)
            .map(|k| Morphism {
                id: if k == 0 { "e".to_string() } else { format!("g{k}") },
                src: 0,
                dst: 0,
            })
            .collect();
        let mut compose = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                compose.insert((a, b), (a + b) % n);
            }
        }
        FiniteCategory::new(objects, morphisms, vec![0], compose)
            .expect("cyclic group tables are coherent")
    }

    /// The linear poset `0 < 1 < ... < len` as a category; `len + 1` objects.
    pub fn poset_chain(len: usize) -> Self {
        let objects: Vec<String> = (0..=len).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut pair_to_index = HashMap::new();
        for i in 0..=len {
            for j in i..=len {
                let id = if i == j {
                    format!("id{i}")
                } else {
                    format!("{i}to{j}")
                };
                pair_to_index.insert((i, j), morphisms.len());
                morphisms.push(Morphism { id, src: i, dst: j });
            }
        }
        let identities = (0..=len).map(|i| pair_to_index[&(i, i)]).collect();
        let mut compose = HashMap::new();
        for (&(i, j), &f) in &pair_to_index {
            for (&(k, l), &g) in &pair_to_index {
                if j == k {
                    compose.insert((f, g), pair_to_index[&(i, l)]);
                }
            }
        }
        FiniteCategory::new(objects, morphisms, identities, compose)
            .expect("poset tables are coherent")
    }

    /// The contractible groupoid on two objects: one morphism between any
    /// ordered pair.
    pub fn two_object_groupoid() -> Self {
        let objects = vec!["a".to_string(), "b".to_string()];
        let mut morphisms = Vec::new();
        let mut pair_to_index = HashMap::new();
        for src in 0..2 {
            for dst in 0..2 {
                let id = match (src, dst) {
                    (0, 0) => "ida",
                    (1, 1) => "idb",
                    (0, 1) => "f",
                    _ => "finv",
                };
                pair_to_index.insert((src, dst), morphisms.len());
                morphisms.push(Morphism {
                    id: id.to_string(),
                    src,
                    dst,
                });
            }
        }
        let identities = vec![pair_to_index[&(0, 0)], pair_to_index[&(1, 1)]];
        let mut compose = HashMap::new();
        for (&(i, j), &f) in &pair_to_index {
            for (&(k, l), &g) in &pair_to_index {
                if j == k {
                    compose.insert((f, g), pair_to_index[&(i, l)]);
                }
            }
        }
        FiniteCategory::new(objects, morphisms, identities, compose)
            .expect("groupoid tables are coherent")
    }
}

/// A functor between finite categories, given by its object and morphism
/// tables.
#[derive(Debug, Clone)]
pub struct FiniteFunctor {
    pub ob: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FiniteFunctor {
    pub fn new(
        c: &FiniteCategory,
        d: &FiniteCategory,
        ob: Vec<usize>,
        mor: Vec<usize>,
    ) -> Result<Self> {
        if ob.len() != c.object_count() || mor.len() != c.morphism_count() {
            return Err(Error::Category("functor tables have the wrong size".into()));
        }
        for (m, &fm) in mor.iter().enumerate() {
            let src = c.morphism(m).src;
            let dst = c.morphism(m).dst;
            let img = d.morphism(fm);
            if img.src != ob[src] || img.dst != ob[dst] {
                return Err(Error::Category(format!(
                    "functor breaks typing at {}",
                    c.morphism(m).id
                )));
            }
        }
        for o in 0..c.object_count() {
            if mor[c.identity_of(o)] != d.identity_of(ob[o]) {
                return Err(Error::Category(format!(
                    "functor breaks identities at object {}",
                    c.object_name(o)
                )));
            }
        }
        for f in 0..c.morphism_count() {
            for g in 0..c.morphism_count() {
                if let Some(h) = c.composite(f, g) {
                    if d.composite(mor[f], mor[g]) != Some(mor[h]) {
                        return Err(Error::Category(format!(
                            "functor breaks composition at {} ; {}",
                            c.morphism(f).id,
                            c.morphism(g).id
                        )));
                    }
                }
            }
        }
        Ok(FiniteFunctor { ob, mor })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_categories_validate() {
        FiniteCategory::cyclic_group(2);
        FiniteCategory::cyclic_group(3);
        FiniteCategory::poset_chain(3);
        FiniteCategory::two_object_groupoid();
    }

    #[test]
    fn isomorphisms_in_the_builtins() {
        let z3 = FiniteCategory::cyclic_group(3);
        assert!((0..3).all(|m| z3.is_isomorphism(m)));
        let chain = FiniteCategory::poset_chain(2);
        for m in 0..chain.morphism_count() {
            assert_eq!(chain.is_isomorphism(m), chain.is_identity(m));
        }
        let gpd = FiniteCategory::two_object_groupoid();
        assert!((0..4).all(|m| gpd.is_isomorphism(m)));
    }

    #[test]
    fn validation_catches_a_broken_unit() {
        let objects = vec!["x".to_string()];
        let morphisms = vec![
            Morphism {
                id: "idx".into(),
                src: 0,
                dst: 0,
            },
            Morphism {
                id: "s".into(),
                src: 0,
                dst: 0,
            },
        ];
        // s absorbs everything, so idx is not a unit.
        let mut compose = HashMap::new();
        for a in 0..2 {
            for b in 0..2 {
                compose.insert((a, b), if a == 1 || b == 1 { 1 } else { 0 });
            }
        }
        // As written this is a perfectly fine monoid with identity idx...
        // except that we declare s to be the identity.
        let bad = FiniteCategory::new(objects, morphisms, vec![1], compose);
        assert!(bad.is_err());
    }

    #[test]
    fn functor_validation() {
        let z2 = FiniteCategory::cyclic_group(2);
        let pt = FiniteCategory::cyclic_group(1);
        let collapse = FiniteFunctor::new(&z2, &pt, vec![0], vec![0, 0]).unwrap();
        assert_eq!(collapse.mor, vec![0, 0]);
        // Sending the generator to the identity of Z/3 is a functor, but
        // sending it to a non-involution is not.
        let z3 = FiniteCategory::cyclic_group(3);
        assert!(FiniteFunctor::new(&z2, &z3, vec![0], vec![0, 0]).is_ok());
        assert!(FiniteFunctor::new(&z2, &z3, vec![0], vec![0, 1]).is_err());
    }
}
