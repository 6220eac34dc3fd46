//! Fully enumerated finite groups with dense multiplication tables.
//!
//! Elements are indices `0..order` with index 0 the identity. Everything
//! downstream (conjugacy, closures, solvability, quotients, automorphism
//! search) works on these indices.

pub mod aut;
pub mod catalog;
pub mod perm;

use crate::error::{Error, Result};
use crate::order::GroupOrder;
use std::collections::VecDeque;

/// Abstract finite group with value-type elements.
pub trait FiniteGroup {
    type Elem: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    fn group_order(&self) -> GroupOrder;

    fn conj(&self, x: &Self::Elem, by: &Self::Elem) -> Self::Elem {
        let t = self.mul(&self.inv(by), x);
        self.mul(&t, by)
    }

    fn elem_order(&self, x: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut acc = x.clone();
        let mut n = 1;
        while acc != id {
            acc = self.mul(&acc, x);
            n += 1;
        }
        n
    }
}

/// Finite group whose elements are in bijection with `0..size()`.
pub trait IndexedGroup: FiniteGroup {
    fn size(&self) -> usize;
    fn index_of(&self, x: &Self::Elem) -> usize;
    fn elem_at(&self, i: usize) -> Self::Elem;
}

/// A finite group as a dense `order x order` multiplication table.
#[derive(Debug, Clone)]
pub struct TableGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl TableGroup {
    /// Builds a table group from a multiplication function.
    ///
    /// Index 0 must be a two-sided identity; this and the existence of
    /// inverses are verified here. Associativity is the caller's contract
    /// (checked exhaustively in tests for small orders).
    pub fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<TableGroup> {
        assert!(order > 0);
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let z = mul(x, y);
                assert!(z < order, "multiplication escaped the index range");
                table[x * order + y] = z as u32;
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            if table[x * order] != x as u32 || table[x] != x as u32 {
                return Err(Error::Internal(format!(
                    "index 0 is not a two-sided identity at element {x}"
                )));
            }
            for y in 0..order {
                if table[x * order + y] == 0 && table[y * order + x] == 0 {
                    inv[x] = y as u32;
                    break;
                }
            }
            if inv[x] == u32::MAX {
                return Err(Error::Internal(format!("element {x} has no inverse")));
            }
        }
        let g = TableGroup {
            order,
            mul: table,
            inv,
            generators: if generators.is_empty() { vec![0] } else { generators },
            labels,
        };
        let closure = g.subgroup_closure(&g.generators.clone())?;
        if closure.len() != order {
            return Err(Error::Internal(format!(
                "generators span {} of {} elements",
                closure.len(),
                order
            )));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv_idx(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    #[inline]
    pub fn conj_idx(&self, x: usize, by: usize) -> usize {
        self.mul_idx(self.mul_idx(self.inv_idx(by), x), by)
    }

    pub fn gens(&self) -> &[u32] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label_of(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Least `n >= 1` with `x^n = 0`.
    pub fn element_order(&self, x: usize) -> u64 {
        assert!(x < self.order);
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul_idx(acc, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        // generator commutation suffices for a generating set
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul_idx(a as usize, b as usize) == self.mul_idx(b as usize, a as usize))
        })
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, x| lcm(acc, self.element_order(x)))
    }

    /// Exhaustive associativity check, intended for tests on small orders.
    pub fn check_associative(&self) -> bool {
        for x in 0..self.order {
            for y in 0..self.order {
                let xy = self.mul_idx(x, y);
                for z in 0..self.order {
                    if self.mul_idx(xy, z) != self.mul_idx(x, self.mul_idx(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Orbit partition of elements under conjugation.
    pub fn conjugacy_classes(&self) -> ConjPartition {
        let mut class_of = vec![u32::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.order {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            class_of[start] = id;
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for &g in &self.generators {
                    let y = self.conj_idx(x, g as usize);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjPartition { class_of, classes }
    }

    /// Smallest subgroup containing `gens`, as a sorted element list plus
    /// membership mask. Asserts the Lagrange divisibility of the result.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Result<SubgroupSet> {
        for &g in gens {
            if g as usize >= self.order {
                return Err(Error::BadIndex {
                    index: g as usize,
                    order: self.order,
                });
            }
        }
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul_idx(x, g as usize);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<usize> = (0..self.order).filter(|&i| mask[i]).collect();
        assert_eq!(
            self.order % elems.len(),
            0,
            "closure size must divide the group order"
        );
        Ok(SubgroupSet {
            elems,
            mask,
            gens: gens.to_vec(),
        })
    }

    /// Derived subgroup of the subgroup `s`.
    ///
    /// All-pairs commutators up to 4096 elements; generator-pair commutators
    /// plus normal closure beyond that.
    pub fn derived_subgroup(&self, s: &SubgroupSet) -> Result<SubgroupSet> {
        let mut comms: Vec<u32> = Vec::new();
        if s.len() <= 4096 {
            let mut seen = vec![false; self.order];
            for &x in &s.elems {
                for &y in &s.elems {
                    let c = self.commutator(x, y);
                    if !seen[c] {
                        seen[c] = true;
                        comms.push(c as u32);
                    }
                }
            }
            self.subgroup_closure(&comms)
        } else {
            for &x in &s.gens {
                for &y in &s.gens {
                    comms.push(self.commutator(x as usize, y as usize) as u32);
                }
            }
            // normal closure inside s: close under multiplication and
            // conjugation by s's generators
            let mut mask = vec![false; self.order];
            mask[0] = true;
            let mut queue: VecDeque<usize> = VecDeque::from([0]);
            let push = |mask: &mut Vec<bool>, queue: &mut VecDeque<usize>, y: usize| {
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            };
            for &c in &comms {
                push(&mut mask, &mut queue, c as usize);
            }
            while let Some(x) = queue.pop_front() {
                for &c in &comms {
                    push(&mut mask, &mut queue, self.mul_idx(x, c as usize));
                }
                for &g in &s.gens {
                    push(&mut mask, &mut queue, self.conj_idx(x, g as usize));
                }
            }
            // re-close multiplicatively over everything found
            let gens: Vec<u32> = (0..self.order).filter(|&i| mask[i]).map(|i| i as u32).collect();
            self.subgroup_closure(&gens)
        }
    }

    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        // x^-1 y^-1 x y
        let a = self.mul_idx(self.inv_idx(x), self.inv_idx(y));
        let b = self.mul_idx(a, x);
        self.mul_idx(b, y)
    }

    /// Derived series starting at the whole group, ending when it stabilizes.
    pub fn derived_series(&self) -> Result<Vec<SubgroupSet>> {
        let all: Vec<u32> = self.generators.clone();
        let mut series = vec![self.subgroup_closure(&all)?];
        loop {
            let next = self.derived_subgroup(series.last().unwrap())?;
            let stop = next.len() == series.last().unwrap().len();
            series.push(next);
            if stop || series.last().unwrap().len() == 1 {
                return Ok(series);
            }
        }
    }

    /// True iff the derived series reaches the trivial subgroup.
    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().len() == 1)
    }

    /// True iff the subgroup generated by all odd-order elements has odd
    /// order. That subgroup is then the normal 2-complement.
    pub fn has_normal_2_complement(&self) -> Result<bool> {
        let k = self.odd_order_part()?;
        if k.len() % 2 == 1 {
            let index = self.order / k.len();
            assert!(index.is_power_of_two(), "2-complement index must be a 2-power");
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Closure of all odd-order elements.
    pub fn odd_order_part(&self) -> Result<SubgroupSet> {
        let odd: Vec<u32> = (0..self.order)
            .filter(|&x| self.element_order(x) % 2 == 1)
            .map(|x| x as u32)
            .collect();
        self.subgroup_closure(&odd)
    }

    /// Quotient by a normal subgroup; returns the coset group and the
    /// projection map element index -> coset index.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<(TableGroup, Vec<u32>)> {
        // subgroup check: closed under multiplication
        for &x in &n.elems {
            for &g in n.gens_or_elems() {
                let y = self.mul_idx(x, g as usize);
                if !n.mask[y] {
                    return Err(Error::NotASubgroup { witness: y });
                }
            }
        }
        // normality: conjugate members by group generators
        for &x in &n.elems {
            for &g in &self.generators {
                let y = self.conj_idx(x, g as usize);
                if !n.mask[y] {
                    return Err(Error::NotNormal { elem: x, by: g as usize });
                }
            }
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in &n.elems {
                coset_of[self.mul_idx(x, m)] = id;
            }
        }
        let q_order = reps.len();
        assert_eq!(q_order * n.len(), self.order);
        let gens: Vec<u32> = {
            let mut g: Vec<u32> = self
                .generators
                .iter()
                .map(|&x| coset_of[x as usize])
                .filter(|&c| c != 0)
                .collect();
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                g.push(0);
            }
            g
        };
        let labels = self.labels.as_ref().map(|l| {
            reps.iter().map(|&r| format!("[{}]", l[r])).collect::<Vec<_>>()
        });
        let q = TableGroup::from_fn(
            q_order,
            |x, y| coset_of[self.mul_idx(reps[x], reps[y])] as usize,
            gens,
            labels,
        )?;
        Ok((q, coset_of))
    }

    /// Direct product with lexicographic (self-major) element indexing.
    pub fn direct_product(&self, other: &TableGroup) -> Result<TableGroup> {
        let n = self.order * other.order;
        let m = other.order;
        let gens: Vec<u32> = self
            .generators
            .iter()
            .map(|&g| g * m as u32)
            .chain(other.generators.iter().copied())
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(
                (0..n)
                    .map(|i| format!("({},{})", a[i / m], b[i % m]))
                    .collect(),
            ),
            _ => None,
        };
        TableGroup::from_fn(
            n,
            |x, y| self.mul_idx(x / m, y / m) * m + other.mul_idx(x % m, y % m),
            gens,
            labels,
        )
    }
}

impl FiniteGroup for TableGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.mul_idx(*x, *y)
    }
    fn inv(&self, x: &usize) -> usize {
        self.inv_idx(*x)
    }
    fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }
    fn group_order(&self) -> GroupOrder {
        GroupOrder::from_u64(self.order as u64)
    }
}

impl IndexedGroup for TableGroup {
    fn size(&self) -> usize {
        self.order
    }
    fn index_of(&self, x: &usize) -> usize {
        *x
    }
    fn elem_at(&self, i: usize) -> usize {
        i
    }
}

/// Conjugacy partition: class ids in discovery order (identity first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjPartition {
    pub class_of: Vec<u32>,
    pub classes: Vec<Vec<usize>>,
}

impl ConjPartition {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

/// A subgroup as a sorted element list with O(1) membership.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    pub elems: Vec<usize>,
    pub mask: Vec<bool>,
    pub gens: Vec<u32>,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
    fn gens_or_elems(&self) -> &[u32] {
        &self.gens
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::catalog::catalog_group;
    use super::*;

    #[test]
    fn identity_and_inverses() {
        let g = catalog_group("S4", 4096).unwrap();
        assert_eq!(g.order(), 24);
        for x in 0..g.order() {
            assert_eq!(g.mul_idx(x, 0), x);
            assert_eq!(g.mul_idx(0, x), x);
            assert_eq!(g.mul_idx(x, g.inv_idx(x)), 0);
            assert_eq!(g.mul_idx(g.inv_idx(x), x), 0);
        }
    }

    #[test]
    fn element_orders() {
        let c6 = catalog_group("C6", 4096).unwrap();
        assert_eq!(c6.element_order(0), 1);
        assert_eq!(c6.element_order(1), 6);
        let a5 = catalog_group("A5", 4096).unwrap();
        let dt = a5.index_of_label("(0 1)(2 3)").unwrap();
        assert_eq!(a5.element_order(dt), 2);
    }

    #[test]
    fn conjugacy_class_shapes() {
        let s3 = catalog_group("S3", 4096).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);

        let a5 = catalog_group("A5", 4096).unwrap();
        assert_eq!(a5.conjugacy_classes().num_classes(), 5);

        let ab = catalog_group("C2 x C2", 4096).unwrap();
        assert!(ab.conjugacy_classes().classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn conjugacy_independent_of_generators() {
        let s4 = catalog_group("S4", 4096).unwrap();
        let p1 = s4.conjugacy_classes();
        // rebuild S4 with a different generating set: all transpositions
        let transpositions: Vec<u32> = (0..s4.order())
            .filter(|&x| s4.element_order(x) == 2 && s4.conjugacy_classes().class_of[x] == p1.class_of[s4.index_of_label("(0 1)").unwrap()])
            .map(|x| x as u32)
            .collect();
        let alt = TableGroup::from_fn(
            s4.order(),
            |x, y| s4.mul_idx(x, y),
            transpositions,
            None,
        )
        .unwrap();
        let p2 = alt.conjugacy_classes();
        assert_eq!(p1.class_of, p2.class_of);
    }

    #[test]
    fn closure_examples() {
        let s3 = catalog_group("S3", 4096).unwrap();
        assert_eq!(s3.subgroup_closure(&[]).unwrap().len(), 1);
        let r = s3.index_of_label("(0 1 2)").unwrap();
        assert_eq!(s3.subgroup_closure(&[r as u32]).unwrap().len(), 3);

        let s4 = catalog_group("S4", 4096).unwrap();
        let t1 = s4.index_of_label("(0 1)").unwrap() as u32;
        let t2 = s4.index_of_label("(0 2)").unwrap() as u32;
        assert_eq!(s4.subgroup_closure(&[t1, t2]).unwrap().len(), 6);
    }

    #[test]
    fn solvability() {
        let s4 = catalog_group("S4", 4096).unwrap();
        let series = s4.derived_series().unwrap();
        let sizes: Vec<usize> = series.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable().unwrap());

        let a5 = catalog_group("A5", 4096).unwrap();
        assert!(!a5.is_solvable().unwrap());

        let triv = catalog_group("C1", 4096).unwrap();
        assert!(triv.is_solvable().unwrap());
    }

    #[test]
    fn solvability_multiplicative_on_products() {
        for (a, b) in [("S3", "C4"), ("A5", "C2"), ("S4", "S3"), ("Q8", "C3")] {
            let ga = catalog_group(a, 4096).unwrap();
            let gb = catalog_group(b, 4096).unwrap();
            let prod = ga.direct_product(&gb).unwrap();
            assert_eq!(
                prod.is_solvable().unwrap(),
                ga.is_solvable().unwrap() && gb.is_solvable().unwrap(),
                "product solvability for {a} x {b}"
            );
        }
    }

    #[test]
    fn normal_2_complements() {
        let s3 = catalog_group("S3", 4096).unwrap();
        assert!(s3.has_normal_2_complement().unwrap());
        assert_eq!(s3.odd_order_part().unwrap().len(), 3);

        let a4 = catalog_group("A4", 4096).unwrap();
        assert!(!a4.has_normal_2_complement().unwrap());

        let q8 = catalog_group("Q8", 4096).unwrap();
        assert!(q8.has_normal_2_complement().unwrap());
        assert_eq!(q8.odd_order_part().unwrap().len(), 1);
    }

    #[test]
    fn quotients() {
        let c6 = catalog_group("C6", 4096).unwrap();
        let c3 = c6.subgroup_closure(&[2]).unwrap();
        let (q, _) = c6.quotient(&c3).unwrap();
        assert_eq!(q.order(), 2);

        let whole = c6.subgroup_closure(c6.gens()).unwrap();
        let (q, _) = c6.quotient(&whole).unwrap();
        assert_eq!(q.order(), 1);

        let s4 = catalog_group("S4", 4096).unwrap();
        let v4_gens: Vec<u32> = ["(0 1)(2 3)", "(0 2)(1 3)"]
            .iter()
            .map(|l| s4.index_of_label(l).unwrap() as u32)
            .collect();
        let v4 = s4.subgroup_closure(&v4_gens).unwrap();
        assert_eq!(v4.len(), 4);
        let (q, proj) = s4.quotient(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        // projection is a homomorphism
        for x in 0..s4.order() {
            for y in 0..s4.order() {
                assert_eq!(
                    proj[s4.mul_idx(x, y)] as usize,
                    q.mul_idx(proj[x] as usize, proj[y] as usize)
                );
            }
        }
    }

    #[test]
    fn quotient_rejects_bad_subgroups() {
        let s4 = catalog_group("S4", 4096).unwrap();
        // a non-normal subgroup: <(0 1)>
        let t = s4.index_of_label("(0 1)").unwrap() as u32;
        let h = s4.subgroup_closure(&[t]).unwrap();
        assert!(matches!(s4.quotient(&h), Err(Error::NotNormal { .. })));
        // not closed: raw two-element set missing products
        let bad = SubgroupSet {
            elems: vec![0, t as usize, s4.index_of_label("(0 2)").unwrap()],
            mask: {
                let mut m = vec![false; s4.order()];
                m[0] = true;
                m[t as usize] = true;
                m[s4.index_of_label("(0 2)").unwrap()] = true;
                m
            },
            gens: vec![t, s4.index_of_label("(0 2)").unwrap() as u32],
        };
        assert!(matches!(s4.quotient(&bad), Err(Error::NotASubgroup { .. })));
    }

    #[test]
    fn associativity_spotcheck() {
        for name in ["Q8", "D4", "S3", "C6"] {
            let g = catalog_group(name, 4096).unwrap();
            assert!(g.check_associative(), "{name} associativity");
        }
    }
}
