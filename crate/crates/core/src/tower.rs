//! Iterated extension towers: `Sak(A) = G_{p1}(G_{p2}(...G_{pn}(A)...))`
//! over the primes of `pi(A)` sorted ascending, with the largest prime
//! applied innermost.
//!
//! Orders past the first level are astronomically large, so upper levels
//! expose only element arithmetic (structurally keyed sparse vectors);
//! verification operations refuse rather than sample.

use crate::error::{Error, Result};
use crate::group::TableGroup;
use crate::order::{Exponent, GroupOrder};
use crate::semidirect::{build_gp, minimal_wild_prime_from_support, SdGroup};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One extension level: `G_p(.)` with its wild prime and module dimension.
#[derive(Debug, Clone)]
pub struct SakLevel {
    pub p: u64,
    pub r: u64,
    pub dim: Exponent,
    pub order: GroupOrder,
}

/// A tower of extensions over an enumerated base group. Level 0 is the base;
/// `levels[0]` is the innermost extension.
#[derive(Debug, Clone)]
pub struct SakTower {
    base: Arc<TableGroup>,
    levels: Vec<SakLevel>,
}

/// Serializable per-level summary of a tower.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SakDescriptor {
    pub base_order: String,
    pub prime_chain: Vec<u64>,
    pub levels: Vec<LevelRecord>,
    pub total_order: String,
    pub pi: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LevelRecord {
    pub p: u64,
    pub r: u64,
    pub dim: String,
    pub order: String,
}

/// An element of a tower level. Vectors are keyed by (block, inner element)
/// so that arithmetic works even when the coordinate space is unindexable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TowerElem {
    Base(u32),
    Ext {
        a: Box<TowerElem>,
        v: BTreeMap<(u32, TowerElem), u64>,
    },
}

impl TowerElem {
    pub fn depth(&self) -> usize {
        match self {
            TowerElem::Base(_) => 0,
            TowerElem::Ext { a, .. } => a.depth() + 1,
        }
    }
}

impl SakTower {
    pub fn new(base: Arc<TableGroup>) -> Result<SakTower> {
        if base.order() < 2 {
            return Err(Error::TrivialGroup);
        }
        Ok(SakTower {
            base,
            levels: Vec::new(),
        })
    }

    pub fn base(&self) -> &Arc<TableGroup> {
        &self.base
    }

    pub fn levels(&self) -> &[SakLevel] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn order(&self) -> GroupOrder {
        self.levels
            .last()
            .map(|l| l.order.clone())
            .unwrap_or_else(|| GroupOrder::from_u64(self.base.order() as u64))
    }

    /// Adds an outer extension level `G_p(.)`.
    pub fn extend(&mut self, p: u64) -> Result<()> {
        let inner_order = self.order();
        let r = minimal_wild_prime_from_support(&inner_order.support(), p)?;
        let dim = match inner_order.value() {
            Some(v) => Exponent::Int(BigUint::from(r) * (v - BigUint::one())),
            None => Exponent::Sym(format!("{r}*({}-1)", inner_order.render())),
        };
        let order = GroupOrder::prime_power_times(p, dim.clone(), &inner_order);
        self.levels.push(SakLevel { p, r, dim, order });
        Ok(())
    }

    pub fn descriptor(&self) -> SakDescriptor {
        SakDescriptor {
            base_order: self.base.order().to_string(),
            prime_chain: self.levels.iter().map(|l| l.p).collect(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelRecord {
                    p: l.p,
                    r: l.r,
                    dim: l.dim.render(),
                    order: l.order.render(),
                })
                .collect(),
            total_order: self.order().render(),
            pi: self.order().support(),
        }
    }

    /// A one-level tower is an ordinary `G_p(A)` with full machinery.
    pub fn as_single_level_sd(&self) -> Option<SdGroup> {
        if self.levels.len() != 1 {
            return None;
        }
        let sd = build_gp(self.base.clone(), self.levels[0].p).ok()?;
        debug_assert_eq!(sd.r(), self.levels[0].r);
        Some(sd)
    }

    // ---- element arithmetic --------------------------------------------

    pub fn identity(&self) -> TowerElem {
        self.identity_at(self.depth())
    }

    pub fn identity_at(&self, level: usize) -> TowerElem {
        if level == 0 {
            TowerElem::Base(0)
        } else {
            TowerElem::Ext {
                a: Box::new(self.identity_at(level - 1)),
                v: BTreeMap::new(),
            }
        }
    }

    /// Wraps a level `k` element as the level `k+1` element `(x, 0)`.
    pub fn lift(&self, x: TowerElem) -> TowerElem {
        TowerElem::Ext {
            a: Box::new(x),
            v: BTreeMap::new(),
        }
    }

    /// Basis vector `v_g^i` at the given level (`g` a level-1 lower element).
    pub fn basis_elem(&self, level: usize, block: u32, g: TowerElem) -> Result<TowerElem> {
        if level == 0 || level > self.depth() {
            return Err(Error::Precondition(format!("no module at level {level}")));
        }
        let lv = &self.levels[level - 1];
        if u64::from(block) >= lv.r {
            return Err(Error::BadBlock {
                i: block,
                r: lv.r,
            });
        }
        if g == self.identity_at(level - 1) {
            return Ok(self.identity_at(level));
        }
        let mut v = BTreeMap::new();
        v.insert((block, g), 1u64);
        Ok(TowerElem::Ext {
            a: Box::new(self.identity_at(level - 1)),
            v,
        })
    }

    pub fn mul(&self, x: &TowerElem, y: &TowerElem) -> Result<TowerElem> {
        self.mul_at(self.depth(), x, y)
    }

    fn mul_at(&self, level: usize, x: &TowerElem, y: &TowerElem) -> Result<TowerElem> {
        match (x, y) {
            (TowerElem::Base(a), TowerElem::Base(b)) if level == 0 => {
                Ok(TowerElem::Base(self.base.mul_idx(*a as usize, *b as usize) as u32))
            }
            (TowerElem::Ext { a: a1, v: v1 }, TowerElem::Ext { a: a2, v: v2 }) if level > 0 => {
                let p = self.levels[level - 1].p;
                let a = self.mul_at(level - 1, a1, a2)?;
                let mut v = self.act_at(level, v1, a2)?;
                for (key, &val) in v2 {
                    add_entry(&mut v, key.clone(), val, p);
                }
                Ok(TowerElem::Ext { a: Box::new(a), v })
            }
            _ => Err(Error::Precondition("element depth does not match tower level".into())),
        }
    }

    /// Right action on the level `level` module:
    /// `(v_h^i)^g = v_{hg}^i - v_g^i` extended linearly.
    fn act_at(
        &self,
        level: usize,
        v: &BTreeMap<(u32, TowerElem), u64>,
        g: &TowerElem,
    ) -> Result<BTreeMap<(u32, TowerElem), u64>> {
        let p = self.levels[level - 1].p;
        let id = self.identity_at(level - 1);
        if *g == id {
            return Ok(v.clone());
        }
        let mut out = BTreeMap::new();
        let mut block_acc: BTreeMap<u32, u64> = BTreeMap::new();
        for ((block, h), &val) in v {
            let hg = self.mul_at(level - 1, h, g)?;
            if hg != id {
                add_entry(&mut out, (*block, hg), val, p);
            }
            let acc = block_acc.entry(*block).or_insert(0);
            *acc = (*acc + val) % p;
        }
        for (block, acc) in block_acc {
            if acc != 0 {
                add_entry(&mut out, (block, g.clone()), p - acc, p);
            }
        }
        Ok(out)
    }

    pub fn inv(&self, x: &TowerElem) -> Result<TowerElem> {
        self.inv_at(self.depth(), x)
    }

    fn inv_at(&self, level: usize, x: &TowerElem) -> Result<TowerElem> {
        match x {
            TowerElem::Base(a) if level == 0 => {
                Ok(TowerElem::Base(self.base.inv_idx(*a as usize) as u32))
            }
            TowerElem::Ext { a, v } if level > 0 => {
                let p = self.levels[level - 1].p;
                let a_inv = self.inv_at(level - 1, a)?;
                let acted = self.act_at(level, v, &a_inv)?;
                let mut neg = BTreeMap::new();
                for (key, &val) in &acted {
                    add_entry(&mut neg, key.clone(), p - val, p);
                }
                Ok(TowerElem::Ext { a: Box::new(a_inv), v: neg })
            }
            _ => Err(Error::Precondition("element depth does not match tower level".into())),
        }
    }

    pub fn order_of(&self, x: &TowerElem) -> Result<u64> {
        let id = self.identity();
        let mut acc = x.clone();
        let mut n = 1;
        while acc != id {
            acc = self.mul(&acc, x)?;
            n += 1;
        }
        Ok(n)
    }
}

fn add_entry(
    map: &mut BTreeMap<(u32, TowerElem), u64>,
    key: (u32, TowerElem),
    val: u64,
    p: u64,
) {
    use std::collections::btree_map::Entry;
    let val = val % p;
    if val == 0 {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            let next = (*e.get() + val) % p;
            if next == 0 {
                e.remove();
            } else {
                *e.get_mut() = next;
            }
        }
        Entry::Vacant(e) => {
            e.insert(val);
        }
    }
}

/// The Theorem-2 iterate over `pi(A)` (largest prime innermost).
pub fn build_saksonov(base: Arc<TableGroup>) -> Result<SakTower> {
    let mut tower = SakTower::new(base.clone())?;
    let mut primes = GroupOrder::from_u64(base.order() as u64).support();
    primes.sort_unstable();
    for &p in primes.iter().rev() {
        tower.extend(p)?;
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::GfpVec;
    use crate::group::catalog::catalog_group;
    use crate::semidirect::SdElement;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sak_c2_is_one_level_of_order_16() {
        let base = Arc::new(catalog_group("C2", 4096).unwrap());
        let t = build_saksonov(base).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.order().to_u64(), Some(16));
        let sd = t.as_single_level_sd().unwrap();
        assert_eq!(sd.order().to_u64(), Some(16));
    }

    #[test]
    fn sak_c3_is_one_level_of_order_3_pow_11() {
        let base = Arc::new(catalog_group("C3", 4096).unwrap());
        let t = build_saksonov(base).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.order().to_u64(), Some(177147));
    }

    #[test]
    fn sak_s3_has_two_levels_with_expected_parameters() {
        let base = Arc::new(catalog_group("S3", 4096).unwrap());
        let t = build_saksonov(base).unwrap();
        assert_eq!(t.depth(), 2);
        // inner level: G_3(S3), r = 5, dim 25, order 3^25 * 6 = 2 * 3^26
        assert_eq!(t.levels()[0].p, 3);
        assert_eq!(t.levels()[0].r, 5);
        assert_eq!(t.levels()[0].dim.render(), "25");
        assert_eq!(t.levels()[0].order.to_u64(), Some(5083731656658));
        // outer level: p = 2, r = 5, symbolic order
        assert_eq!(t.levels()[1].p, 2);
        assert_eq!(t.levels()[1].r, 5);
        assert_eq!(t.levels()[1].dim.render(), "25418658283285");
        assert_eq!(t.order().render(), "2^25418658283286 * 3^26");
        assert!(t.order().value().is_none());
        assert_eq!(t.order().support(), vec![2, 3]);

        let d = t.descriptor();
        assert_eq!(d.prime_chain, vec![3, 2]);
        assert_eq!(d.pi, vec![2, 3]);
    }

    #[test]
    fn trivial_base_rejected() {
        let base = Arc::new(catalog_group("C1", 4096).unwrap());
        assert!(matches!(build_saksonov(base), Err(Error::TrivialGroup)));
    }

    #[test]
    fn single_level_tower_matches_sd_arithmetic() {
        // manual one-level tower G_2(C3) compared against the dedicated
        // implementation on random pairs
        let base = Arc::new(catalog_group("C3", 4096).unwrap());
        let mut t = SakTower::new(base.clone()).unwrap();
        t.extend(2).unwrap();
        let sd = t.as_single_level_sd().unwrap();
        assert_eq!(sd.order().to_u64(), Some(48));

        let to_tower = |e: &SdElement, t: &SakTower| -> TowerElem {
            let mut v = BTreeMap::new();
            for (c, val) in e.v.nonzero() {
                let (block, g) = sd.module().decode(c);
                v.insert((block as u32, TowerElem::Base(g as u32)), val);
            }
            TowerElem::Ext {
                a: Box::new(TowerElem::Base(e.a as u32)),
                v,
            }
        };

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let x = sd.index_to_elem(rng.gen_range(0..48));
            let y = sd.index_to_elem(rng.gen_range(0..48));
            let sd_prod = sd.sd_mul(&x, &y).unwrap();
            let tower_prod = t.mul(&to_tower(&x, &t), &to_tower(&y, &t)).unwrap();
            assert_eq!(tower_prod, to_tower(&sd_prod, &t));
        }

        let v = GfpVec::basis(2, 4, 0);
        let x = sd.from_vec(v);
        assert_eq!(t.order_of(&to_tower(&x, &t)).unwrap(), 2);
    }

    #[test]
    fn two_level_arithmetic_sanity() {
        let base = Arc::new(catalog_group("S3", 4096).unwrap());
        let t = build_saksonov(base.clone()).unwrap();
        let id = t.identity();

        // lift the order-3 base generator twice
        let g0 = TowerElem::Base(base.gens()[1]);
        let lifted = t.lift(t.lift(g0.clone()));
        let inv = t.inv(&lifted).unwrap();
        assert_eq!(t.mul(&lifted, &inv).unwrap(), id);
        assert_eq!(
            t.order_of(&lifted).unwrap(),
            base.element_order(base.gens()[1] as usize)
        );

        // an outer basis vector has order p = 2
        let inner_elem = t.lift(g0); // level-1 element, not the identity
        let b = t.basis_elem(2, 0, inner_elem.clone()).unwrap();
        assert_eq!(t.order_of(&b).unwrap(), 2);

        // the defining action relation: lifted^-1 * b * lifted = b^lifted
        let conj = t
            .mul(&t.mul(&t.inv(&lifted).unwrap(), &b).unwrap(), &lifted)
            .unwrap();
        // (v_h^0)^g = v_{hg}^0 - v_g^0 with h = g here: v_{h^2}^0 - v_h^0
        let h2 = t.mul_at(1, &inner_elem, &inner_elem).unwrap();
        let expect = {
            let mut v = BTreeMap::new();
            v.insert((0u32, h2), 1u64);
            v.insert((0u32, inner_elem.clone()), 1u64); // -1 = 1 mod 2
            TowerElem::Ext {
                a: Box::new(t.identity_at(1)),
                v,
            }
        };
        assert_eq!(conj, expect);

        // identity element depth matches the tower depth
        assert_eq!(id.depth(), 2);
    }

    #[test]
    fn mismatched_depth_rejected() {
        let base = Arc::new(catalog_group("S3", 4096).unwrap());
        let t = build_saksonov(base).unwrap();
        let shallow = TowerElem::Base(0);
        assert!(t.mul(&shallow, &shallow).is_err());
    }
}
