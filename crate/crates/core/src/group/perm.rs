//! Explicit permutation groups on `0..degree`, used as carriers for
//! automorphism groups acting on a table group's elements.

use super::TableGroup;
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

pub type Perm = Vec<u32>;

pub fn perm_identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// Composition "apply a, then b".
pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn perm_inverse(a: &Perm) -> Perm {
    let mut out = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

/// The conjugation map `x -> g^-1 x g` as a permutation of element indices.
pub fn conjugation_perm(g: &TableGroup, by: usize) -> Perm {
    (0..g.order()).map(|x| g.conj_idx(x, by) as u32).collect()
}

/// Checks that a permutation of element indices is multiplicative.
pub fn is_automorphism(g: &TableGroup, p: &Perm) -> bool {
    if p.len() != g.order() || p[0] != 0 {
        return false;
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if p[g.mul_idx(x, y)] != g.mul_idx(p[x] as usize, p[y] as usize) as u32 {
                return false;
            }
        }
    }
    true
}

/// A set of permutations closed under composition and inverse.
#[derive(Debug, Clone)]
pub struct PermSubgroup {
    pub degree: usize,
    pub elems: Vec<Perm>,
    pub index: HashMap<Perm, usize>,
    pub gens: Vec<Perm>,
}

impl PermSubgroup {
    pub fn trivial(degree: usize) -> PermSubgroup {
        let id = perm_identity(degree);
        PermSubgroup {
            degree,
            elems: vec![id.clone()],
            index: HashMap::from([(id.clone(), 0)]),
            gens: vec![id],
        }
    }

    /// Closure of the generators, BFS order with the identity first.
    pub fn generate(degree: usize, gens: Vec<Perm>, limit: usize) -> Result<PermSubgroup> {
        for g in &gens {
            if g.len() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree as u64,
                    got: g.len() as u64,
                });
            }
        }
        let id = perm_identity(degree);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = perm_compose(&elems[i], g);
                if !index.contains_key(&next) {
                    if elems.len() >= limit {
                        return Err(Error::SizeLimit {
                            what: "permutation group closure",
                            limit,
                            need: format!("> {limit}"),
                        });
                    }
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        Ok(PermSubgroup {
            degree,
            elems,
            index,
            gens,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_subgroup_of(&self, other: &PermSubgroup) -> bool {
        self.elems.iter().all(|p| other.contains(p))
    }

    /// Checks every member is multiplicative for `g`. Generator membership
    /// suffices mathematically, so only generators are checked.
    pub fn check_automorphisms(&self, g: &TableGroup) -> Result<()> {
        for p in &self.gens {
            if !is_automorphism(g, p) {
                let (x, y) = first_violation(g, p);
                return Err(Error::NotAutomorphism { x, y });
            }
        }
        Ok(())
    }

    /// Normality of `self` in `other`, by conjugating generators.
    pub fn is_normal_in(&self, other: &PermSubgroup) -> bool {
        other.gens.iter().all(|h| {
            let h_inv = perm_inverse(h);
            self.gens
                .iter()
                .all(|d| self.contains(&perm_compose(&perm_compose(&h_inv, d), h)))
        })
    }

    /// Greedy small generating set (largest element order first).
    pub fn small_generating_set(&self) -> Vec<Perm> {
        if self.len() == 1 {
            return vec![perm_identity(self.degree)];
        }
        let mut by_order: Vec<usize> = (1..self.len()).collect();
        let ord = |i: usize| -> u64 {
            let mut acc = self.elems[i].clone();
            let id = perm_identity(self.degree);
            let mut n = 1;
            while acc != id {
                acc = perm_compose(&acc, &self.elems[i]);
                n += 1;
            }
            n
        };
        let orders: Vec<u64> = (0..self.len()).map(ord).collect();
        by_order.sort_by_key(|&i| (std::cmp::Reverse(orders[i]), i));
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([perm_identity(self.degree)]);
        for i in by_order {
            if span.contains(&self.elems[i]) {
                continue;
            }
            gens.push(self.elems[i].clone());
            let sub = PermSubgroup::generate(self.degree, gens.clone(), self.len() + 1)
                .expect("closure within parent");
            span = sub.elems.iter().cloned().collect();
            if span.len() == self.len() {
                break;
            }
        }
        gens
    }

    /// The abstract group of this permutation set as a table group, with
    /// elements sorted lexicographically (identity first) plus the index map.
    pub fn as_table_group(&self, table_limit: usize) -> Result<(TableGroup, HashMap<Perm, usize>)> {
        if self.len() > table_limit {
            return Err(Error::SizeLimit {
                what: "permutation group table",
                limit: table_limit,
                need: self.len().to_string(),
            });
        }
        let mut sorted: Vec<Perm> = self.elems.clone();
        sorted.sort();
        debug_assert_eq!(sorted[0], perm_identity(self.degree));
        let index: HashMap<Perm, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let gens: Vec<u32> = {
            let mut g: Vec<u32> = self.gens.iter().map(|p| index[p] as u32).collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        let table = TableGroup::from_fn(
            sorted.len(),
            |x, y| index[&perm_compose(&sorted[x], &sorted[y])],
            gens,
            None,
        )?;
        Ok((table, index))
    }
}

fn first_violation(g: &TableGroup, p: &Perm) -> (usize, usize) {
    for x in 0..g.order() {
        for y in 0..g.order() {
            if p[g.mul_idx(x, y)] != g.mul_idx(p[x] as usize, p[y] as usize) as u32 {
                return (x, y);
            }
        }
    }
    (0, 0)
}

/// The inner automorphism group of `g` as permutations of its elements.
pub fn inner_automorphisms(g: &TableGroup, limit: usize) -> Result<PermSubgroup> {
    let gens: Vec<Perm> = g
        .gens()
        .iter()
        .map(|&x| conjugation_perm(g, x as usize))
        .collect();
    PermSubgroup::generate(g.order(), gens, limit)
}

#[cfg(test)]
mod tests {
    use super::super::catalog::catalog_group;
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a: Perm = vec![1, 2, 0, 3];
        let b = perm_inverse(&a);
        assert_eq!(perm_compose(&a, &b), perm_identity(4));
        assert_eq!(perm_compose(&b, &a), perm_identity(4));
    }

    #[test]
    fn inner_automorphism_group_of_s3() {
        let s3 = catalog_group("S3", 4096).unwrap();
        let inn = inner_automorphisms(&s3, 1_000_000).unwrap();
        assert_eq!(inn.len(), 6); // S3 is centerless
        inn.check_automorphisms(&s3).unwrap();
    }

    #[test]
    fn inner_automorphism_group_of_abelian_is_trivial() {
        let c6 = catalog_group("C6", 4096).unwrap();
        let inn = inner_automorphisms(&c6, 1_000_000).unwrap();
        assert_eq!(inn.len(), 1);
    }

    #[test]
    fn closure_ceiling() {
        let s4 = catalog_group("S4", 4096).unwrap();
        let gens: Vec<Perm> = s4
            .gens()
            .iter()
            .map(|&x| conjugation_perm(&s4, x as usize))
            .collect();
        assert!(matches!(
            PermSubgroup::generate(s4.order(), gens, 5),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn table_group_of_perm_group() {
        let s3 = catalog_group("S3", 4096).unwrap();
        let inn = inner_automorphisms(&s3, 1_000_000).unwrap();
        let (t, _) = inn.as_table_group(4096).unwrap();
        assert_eq!(t.order(), 6);
        assert!(!t.is_abelian());
    }
}
