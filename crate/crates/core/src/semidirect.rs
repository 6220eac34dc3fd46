//! The extension group `G_p(A) = B x| A` with lazy element arithmetic.
//!
//! Elements are pairs `(a, v)` in the normal form "base element left, vector
//! right"; multiplication is `(a1, v1)(a2, v2) = (a1 a2, v1^{a2} + v2)`.

use crate::error::{Error, Result};
use crate::gfp::{GfpVec, ModuleB};
use crate::group::{FiniteGroup, IndexedGroup, TableGroup};
use crate::order::{is_prime, Exponent, GroupOrder};
use num_bigint::BigUint;
use std::sync::Arc;

/// Smallest prime dividing neither `n_a` nor `p - 1`.
pub fn minimal_wild_prime(n_a: u64, p: u64) -> Result<u64> {
    if n_a < 2 {
        return Err(Error::TrivialGroup);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut r = 2;
    loop {
        if n_a % r != 0 && (p - 1) % r != 0 {
            return Ok(r);
        }
        r = crate::order::next_prime(r);
    }
}

/// Same, for orders known only through their prime support.
pub fn minimal_wild_prime_from_support(support: &[u64], p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut r = 2;
    loop {
        if !support.contains(&r) && (p - 1) % r != 0 {
            return Ok(r);
        }
        r = crate::order::next_prime(r);
    }
}

#[derive(Debug)]
struct SdInner {
    a: Arc<TableGroup>,
    p: u64,
    r: u64,
    module: ModuleB,
    order: GroupOrder,
    /// `p^dim` when it fits, for the element index bijection.
    b_size: Option<u64>,
}

/// The group `G_p(A)`, cheap to clone and safe to share across threads.
#[derive(Debug, Clone)]
pub struct SdGroup {
    inner: Arc<SdInner>,
}

/// An element `a * v` of an `SdGroup`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdElement {
    pub a: usize,
    pub v: GfpVec,
}

/// Builds `G_p(A)` with `r` the minimal wild prime for `(|A|, p)`.
pub fn build_gp(a: Arc<TableGroup>, p: u64) -> Result<SdGroup> {
    if a.order() < 2 {
        return Err(Error::TrivialGroup);
    }
    let r = minimal_wild_prime(a.order() as u64, p)?;
    let module = ModuleB::new(p, r, a.clone());
    let dim = module.dim();
    debug_assert!((a.order() as u64) % r != 0 && (p - 1) % r != 0);
    let order = GroupOrder::prime_power_times(
        p,
        Exponent::Int(BigUint::from(dim)),
        &GroupOrder::from_u64(a.order() as u64),
    );
    let b_size = checked_pow(p, dim);
    Ok(SdGroup {
        inner: Arc::new(SdInner {
            a,
            p,
            r,
            module,
            order,
            b_size,
        }),
    })
}

fn checked_pow(p: u64, e: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

impl SdGroup {
    pub fn a(&self) -> &Arc<TableGroup> {
        &self.inner.a
    }
    pub fn p(&self) -> u64 {
        self.inner.p
    }
    pub fn r(&self) -> u64 {
        self.inner.r
    }
    pub fn module(&self) -> &ModuleB {
        &self.inner.module
    }
    pub fn dim(&self) -> u64 {
        self.inner.module.dim()
    }
    pub fn order(&self) -> &GroupOrder {
        &self.inner.order
    }

    pub fn same_parent(&self, other: &SdGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.r == other.inner.r
                && self.inner.a.order() == other.inner.a.order())
    }

    pub fn identity_elem(&self) -> SdElement {
        SdElement {
            a: 0,
            v: self.inner.module.zero(),
        }
    }

    /// The element `(a, 0)`.
    pub fn lift_a(&self, a: usize) -> SdElement {
        SdElement {
            a,
            v: self.inner.module.zero(),
        }
    }

    /// The element `(0, v)`.
    pub fn from_vec(&self, v: GfpVec) -> SdElement {
        debug_assert_eq!(v.dim(), self.dim());
        SdElement { a: 0, v }
    }

    pub fn check_elem(&self, x: &SdElement) -> Result<()> {
        if x.a >= self.inner.a.order() {
            return Err(Error::BadIndex {
                index: x.a,
                order: self.inner.a.order(),
            });
        }
        if x.v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.v.dim(),
            });
        }
        if x.v.p() != self.inner.p {
            return Err(Error::ModulusMismatch {
                expected: self.inner.p,
                got: x.v.p(),
            });
        }
        Ok(())
    }

    /// `(a1, v1)(a2, v2) = (a1 a2, v1^{a2} + v2)`.
    pub fn sd_mul(&self, x: &SdElement, y: &SdElement) -> Result<SdElement> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        let acted = self.inner.module.act(&x.v, y.a)?;
        Ok(SdElement {
            a: self.inner.a.mul_idx(x.a, y.a),
            v: acted.add(&y.v)?,
        })
    }

    pub fn sd_inv(&self, x: &SdElement) -> SdElement {
        let a_inv = self.inner.a.inv_idx(x.a);
        let v = self
            .inner
            .module
            .act(&x.v, a_inv)
            .expect("checked element")
            .neg();
        SdElement { a: a_inv, v }
    }

    pub fn sd_conj(&self, x: &SdElement, by: &SdElement) -> Result<SdElement> {
        let t = self.sd_mul(&self.sd_inv(by), x)?;
        self.sd_mul(&t, by)
    }

    /// Least `n` with `x^n = identity`. For `x = (g, t)` with `ord(g) = p`
    /// the result is cross-checked against the norm criterion
    /// `sum_k t^{g^k} = 0`.
    pub fn sd_order(&self, x: &SdElement) -> Result<u64> {
        self.check_elem(x)?;
        let id = self.identity_elem();
        let mut acc = x.clone();
        let mut n = 1u64;
        while acc != id {
            acc = self.sd_mul(&acc, x)?;
            n += 1;
        }
        if self.inner.a.element_order(x.a) == self.inner.p {
            let mut norm = self.inner.module.zero();
            let mut g_pow = 0usize;
            for _ in 0..self.inner.p {
                norm = norm.add(&self.inner.module.act(&x.v, g_pow)?)?;
                g_pow = self.inner.a.mul_idx(g_pow, x.a);
            }
            let by_norm = norm.is_zero();
            assert_eq!(
                n == self.inner.p,
                by_norm,
                "norm criterion disagrees with iterated multiplication"
            );
        }
        Ok(n)
    }

    pub fn sd_pow(&self, x: &SdElement, e: u64) -> Result<SdElement> {
        let mut acc = self.identity_elem();
        for _ in 0..e {
            acc = self.sd_mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Generators: the lifted generators of A plus all basis vectors of B.
    pub fn sd_generators(&self) -> Vec<SdElement> {
        let mut gens: Vec<SdElement> = self
            .inner
            .a
            .gens()
            .iter()
            .map(|&g| self.lift_a(g as usize))
            .collect();
        for c in 0..self.dim() {
            gens.push(self.from_vec(GfpVec::basis(self.inner.p, self.dim(), c)));
        }
        gens
    }

    /// Number of elements when it fits in a machine word.
    pub fn exact_size(&self) -> Option<usize> {
        let b = self.inner.b_size?;
        let total = b.checked_mul(self.inner.a.order() as u64)?;
        usize::try_from(total).ok()
    }

    pub fn enumerable(&self, max_enum: usize) -> Result<usize> {
        match self.exact_size() {
            Some(n) if n <= max_enum => Ok(n),
            _ => Err(Error::SizeLimit {
                what: "group enumeration",
                limit: max_enum,
                need: self.inner.order.render(),
            }),
        }
    }

    pub fn elem_to_index(&self, x: &SdElement) -> usize {
        let b = self.inner.b_size.expect("index bijection needs exact size");
        let mut digits = 0u64;
        for (c, val) in x.v.nonzero() {
            digits += val * checked_pow(self.inner.p, c).expect("within b_size");
        }
        (x.a as u64 * b + digits) as usize
    }

    pub fn index_to_elem(&self, i: usize) -> SdElement {
        let b = self.inner.b_size.expect("index bijection needs exact size");
        let i = i as u64;
        let a = (i / b) as usize;
        let mut digits = i % b;
        let mut v = self.inner.module.zero();
        let mut c = 0u64;
        while digits > 0 {
            let d = digits % self.inner.p;
            if d != 0 {
                v.add_at(c, d);
            }
            digits /= self.inner.p;
            c += 1;
        }
        SdElement { a, v }
    }

    /// Dense multiplication table plus the element-index bijection witness
    /// (i.e. the elements listed in index order).
    pub fn enumerate(&self, table_limit: usize) -> Result<(TableGroup, Vec<SdElement>)> {
        let n = match self.exact_size() {
            Some(n) if n <= table_limit => n,
            _ => {
                return Err(Error::SizeLimit {
                    what: "dense multiplication table",
                    limit: table_limit,
                    need: self.inner.order.render(),
                })
            }
        };
        let elems: Vec<SdElement> = (0..n).map(|i| self.index_to_elem(i)).collect();
        let labels: Vec<String> = elems
            .iter()
            .map(|e| {
                let digits: String = (0..self.dim()).map(|c| char::from(b'0' + e.v.get(c) as u8)).collect();
                format!("{}|{}", self.inner.a.label_of(e.a), digits)
            })
            .collect();
        let gens: Vec<u32> = self
            .sd_generators()
            .iter()
            .map(|e| self.elem_to_index(e) as u32)
            .collect();
        let table = TableGroup::from_fn(
            n,
            |x, y| {
                self.elem_to_index(&self.sd_mul(&elems[x], &elems[y]).expect("valid elements"))
            },
            gens,
            Some(labels),
        )?;
        Ok((table, elems))
    }
}

impl FiniteGroup for SdGroup {
    type Elem = SdElement;

    fn identity(&self) -> SdElement {
        self.identity_elem()
    }
    fn mul(&self, x: &SdElement, y: &SdElement) -> SdElement {
        self.sd_mul(x, y).expect("elements of this group")
    }
    fn inv(&self, x: &SdElement) -> SdElement {
        self.sd_inv(x)
    }
    fn generators(&self) -> Vec<SdElement> {
        self.sd_generators()
    }
    fn group_order(&self) -> GroupOrder {
        self.inner.order.clone()
    }
}

impl IndexedGroup for SdGroup {
    fn size(&self) -> usize {
        self.exact_size().expect("group too large to index")
    }
    fn index_of(&self, x: &SdElement) -> usize {
        self.elem_to_index(x)
    }
    fn elem_at(&self, i: usize) -> SdElement {
        self.index_to_elem(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog_group;
    use rand::{Rng, SeedableRng};

    fn gp(name: &str, p: u64) -> SdGroup {
        let a = Arc::new(catalog_group(name, 4096).unwrap());
        build_gp(a, p).unwrap()
    }

    #[test]
    fn minimal_wild_primes() {
        assert_eq!(minimal_wild_prime(2, 2).unwrap(), 3);
        assert_eq!(minimal_wild_prime(3, 2).unwrap(), 2);
        assert_eq!(minimal_wild_prime(6, 3).unwrap(), 5);
        assert!(matches!(minimal_wild_prime(1, 2), Err(Error::TrivialGroup)));
        assert!(matches!(minimal_wild_prime(4, 6), Err(Error::NotPrime(6))));
    }

    #[test]
    fn construction_parameters() {
        let g = gp("C2", 2);
        assert_eq!((g.r(), g.dim()), (3, 3));
        assert_eq!(g.order().to_u64(), Some(16));

        let g = gp("C3", 2);
        assert_eq!((g.r(), g.dim()), (2, 4));
        assert_eq!(g.order().to_u64(), Some(48));

        let g = gp("C3", 3);
        assert_eq!((g.r(), g.dim()), (5, 10));
        assert_eq!(g.order().to_u64(), Some(177147));
    }

    #[test]
    fn multiplication_examples() {
        // (0,v)(0,w) = (0, v+w)
        let g = gp("C3", 3);
        let v = GfpVec::basis(3, 10, 0);
        let w = GfpVec::basis(3, 10, 3);
        let x = g.from_vec(v.clone());
        let y = g.from_vec(w.clone());
        assert_eq!(g.sd_mul(&x, &y).unwrap(), g.from_vec(v.add(&w).unwrap()));

        // (g,0)(g^2,0) = identity
        let lg = g.lift_a(1);
        let lg2 = g.lift_a(2);
        assert_eq!(g.sd_mul(&lg, &lg2).unwrap(), g.identity_elem());

        // (g, v_g^1)(g, 0) = (g^2, v_{g^2}^1 - v_g^1)
        let m = g.module();
        let x = SdElement { a: 1, v: m.basis_vec(0, 1) };
        let y = g.lift_a(1);
        let prod = g.sd_mul(&x, &y).unwrap();
        let expected = SdElement {
            a: 2,
            v: m.basis_vec(0, 2).sub(&m.basis_vec(0, 1)).unwrap(),
        };
        assert_eq!(prod, expected);
    }

    #[test]
    fn inverses_and_associativity_sample() {
        let g = gp("C3", 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let random_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
            let a = rng.gen_range(0..3);
            let coords: Vec<u64> = (0..4).map(|_| rng.gen_range(0..2)).collect();
            SdElement { a, v: GfpVec::from_coords(2, &coords) }
        };
        for _ in 0..200 {
            let x = random_elem(&mut rng);
            let y = random_elem(&mut rng);
            let z = random_elem(&mut rng);
            assert_eq!(g.sd_mul(&x, &g.sd_inv(&x)).unwrap(), g.identity_elem());
            assert_eq!(g.sd_mul(&g.sd_inv(&x), &x).unwrap(), g.identity_elem());
            let xy_z = g.sd_mul(&g.sd_mul(&x, &y).unwrap(), &z).unwrap();
            let x_yz = g.sd_mul(&x, &g.sd_mul(&y, &z).unwrap()).unwrap();
            assert_eq!(xy_z, x_yz);
        }
    }

    #[test]
    fn element_orders() {
        let g = gp("C3", 3);
        assert_eq!(g.sd_order(&g.identity_elem()).unwrap(), 1);
        // (0, v) with v != 0 has order p
        let v = g.from_vec(GfpVec::basis(3, 10, 4));
        assert_eq!(g.sd_order(&v).unwrap(), 3);
        // (g, v_g^1) has order 3 (norm criterion checked internally)
        let x = SdElement { a: 1, v: g.module().basis_vec(0, 1) };
        assert_eq!(g.sd_order(&x).unwrap(), 3);
    }

    #[test]
    fn enumeration_round_trip_and_agreement() {
        let g = gp("C2", 2);
        let (table, elems) = g.enumerate(4096).unwrap();
        assert_eq!(table.order(), 16);
        // exhaustive agreement for small orders
        for x in 0..16 {
            for y in 0..16 {
                let sd = g.sd_mul(&elems[x], &elems[y]).unwrap();
                assert_eq!(table.mul_idx(x, y), g.elem_to_index(&sd));
            }
        }

        let g = gp("C3", 2);
        let (table, elems) = g.enumerate(4096).unwrap();
        assert_eq!(table.order(), 48);
        for x in 0..48 {
            for y in 0..48 {
                let sd = g.sd_mul(&elems[x], &elems[y]).unwrap();
                assert_eq!(table.mul_idx(x, y), g.elem_to_index(&sd));
            }
        }
    }

    #[test]
    fn big_groups_refuse_enumeration() {
        let a = Arc::new(catalog_group("S3", 4096).unwrap());
        let g = build_gp(a, 3).unwrap();
        assert_eq!((g.r(), g.dim()), (5, 25));
        assert!(matches!(g.enumerate(4096), Err(Error::SizeLimit { .. })));
        assert!(g.enumerable(1 << 21).is_err());
        // but arithmetic still works
        let x = g.lift_a(1);
        let y = g.from_vec(GfpVec::basis(3, 25, 7));
        let xy = g.sd_mul(&x, &y).unwrap();
        assert_eq!(g.sd_mul(&xy, &g.sd_inv(&xy)).unwrap(), g.identity_elem());
    }

    #[test]
    fn index_bijection_round_trip() {
        let g = gp("C3", 3);
        let n = g.exact_size().unwrap();
        assert_eq!(n, 177147);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let i = rng.gen_range(0..n);
            assert_eq!(g.elem_to_index(&g.index_to_elem(i)), i);
        }
        assert_eq!(g.elem_to_index(&g.identity_elem()), 0);
    }

    #[test]
    fn conjugation_in_b_matches_action() {
        // (0,v)^(g,0) = (0, v^g), exhaustively on basis vectors of G_2(C3)
        let g = gp("C3", 2);
        for c in 0..g.dim() {
            let v = GfpVec::basis(2, g.dim(), c);
            for a in 0..3 {
                let conj = g.sd_conj(&g.from_vec(v.clone()), &g.lift_a(a)).unwrap();
                let acted = g.module().act(&v, a).unwrap();
                assert_eq!(conj, g.from_vec(acted));
            }
        }
    }

    #[test]
    fn base_subgroup_is_isomorphic_to_a() {
        let g = gp("C3", 2);
        let a = g.a().clone();
        for x in 0..a.order() {
            for y in 0..a.order() {
                let prod = g.sd_mul(&g.lift_a(x), &g.lift_a(y)).unwrap();
                assert_eq!(prod, g.lift_a(a.mul_idx(x, y)));
            }
        }
    }

    #[test]
    fn vector_subgroup_is_normal_elementary_abelian() {
        let g = gp("C3", 2);
        let (table, elems) = g.enumerate(4096).unwrap();
        let b_indices: Vec<u32> = (0..48)
            .filter(|&i| elems[i].a == 0)
            .map(|i| i as u32)
            .collect();
        assert_eq!(b_indices.len(), 16);
        let b_set = table.subgroup_closure(&b_indices).unwrap();
        assert_eq!(b_set.len(), 16);
        assert!(table.quotient(&b_set).is_ok()); // normality checked inside
        for &i in &b_indices[1..] {
            assert_eq!(table.element_order(i as usize), 2);
        }
    }

    /// Every order-p element (g,t) with g != 0 has ord(g) = p in A:
    /// exhaustive at order 48 (vacuous there), sampled at order 3^11.
    #[test]
    fn order_p_elements_project_to_order_p() {
        let g48 = gp("C3", 2);
        let (_, elems) = g48.enumerate(4096).unwrap();
        for e in &elems {
            if e.a != 0 && g48.sd_order(e).unwrap() == 2 {
                panic!("C3 has no involutions, so no such element can exist");
            }
        }

        let g = gp("C3", 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = g.exact_size().unwrap();
        let mut seen = 0;
        for _ in 0..2000 {
            let e = g.index_to_elem(rng.gen_range(0..n));
            if e.a != 0 && g.sd_order(&e).unwrap() == 3 {
                assert_eq!(g.a().element_order(e.a), 3);
                seen += 1;
            }
        }
        assert!(seen > 0);
    }
}
