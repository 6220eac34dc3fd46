//! `<p>`-wildness as a decision procedure.
//!
//! A group is `<p>`-wild when no conjugacy class of order-p cyclic subgroups
//! is characteristic. Two modes:
//!
//! * exact — the full (brute-forced) automorphism group acts on the classes;
//!   a fixed class is a definite refutation, none is a definite proof.
//! * witness — breadth-first search over words in a fixed list of
//!   automorphism generators, looking for a word that moves each class.
//!   Success is a definite proof (each witness re-verified by evaluation);
//!   exhausting the depth is only ever reported as inconclusive.

use crate::autos::{AutMap, PrimitiveDesc};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::aut::brute_force_aut;
use crate::group::{FiniteGroup, IndexedGroup, TableGroup};
use crate::order::is_prime;
use crate::semidirect::SdGroup;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Conjugacy classes of order-p elements and of their cyclic subgroups.
///
/// Two cyclic subgroups are conjugate iff their canonical ids agree, where
/// the id of `<x>` is the least element-class id among `x, x^2, ..., x^{p-1}`.
#[derive(Debug, Clone)]
pub struct PCyclicClasses {
    pub p: u64,
    /// Element index -> element class id (u32::MAX off the order-p locus).
    elem_class: Vec<u32>,
    /// Members of each element class, ascending.
    pub elem_classes: Vec<Vec<usize>>,
    /// Element index -> subgroup class id (u32::MAX off the locus).
    subgroup_of: Vec<u32>,
    /// Least member element index per subgroup class.
    pub subgroup_reps: Vec<usize>,
    /// Number of distinct cyclic subgroups per subgroup class.
    pub subgroup_counts: Vec<usize>,
    pub order_p_elements: usize,
}

impl PCyclicClasses {
    pub fn elem_class_count(&self) -> usize {
        self.elem_classes.len()
    }
    pub fn subgroup_class_count(&self) -> usize {
        self.subgroup_reps.len()
    }
    pub fn elem_class_of(&self, idx: usize) -> Option<u32> {
        match self.elem_class[idx] {
            u32::MAX => None,
            c => Some(c),
        }
    }
    pub fn subgroup_class_of(&self, idx: usize) -> Option<u32> {
        match self.subgroup_of[idx] {
            u32::MAX => None,
            c => Some(c),
        }
    }
}

/// Orbit partition of the order-p elements under conjugation by generators,
/// plus subgroup class ids.
pub fn p_cyclic_classes<G: IndexedGroup>(g: &G, p: u64) -> Result<PCyclicClasses> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = g.size();
    let id = g.identity();
    // order-p locus: x != e with x^p = e
    let mut on_locus = vec![false; n];
    let mut count = 0;
    for i in 0..n {
        let x = g.elem_at(i);
        if x == id {
            continue;
        }
        let mut acc = x.clone();
        for _ in 1..p {
            acc = g.mul(&acc, &x);
        }
        if acc == id {
            on_locus[i] = true;
            count += 1;
        }
    }

    let gens = g.generators();
    let gen_invs: Vec<G::Elem> = gens.iter().map(|x| g.inv(x)).collect();
    let mut elem_class = vec![u32::MAX; n];
    let mut elem_classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if !on_locus[start] || elem_class[start] != u32::MAX {
            continue;
        }
        let class_id = elem_classes.len() as u32;
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        elem_class[start] = class_id;
        while let Some(i) = queue.pop_front() {
            members.push(i);
            let x = g.elem_at(i);
            for (gen, gen_inv) in gens.iter().zip(&gen_invs) {
                let y = g.mul(&g.mul(gen_inv, &x), gen);
                let j = g.index_of(&y);
                if elem_class[j] == u32::MAX {
                    debug_assert!(on_locus[j]);
                    elem_class[j] = class_id;
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        elem_classes.push(members);
    }

    // subgroup key of an element class: min element-class id over the powers
    // of its representative
    let mut key_of_class = vec![u32::MAX; elem_classes.len()];
    for (cid, members) in elem_classes.iter().enumerate() {
        let x = g.elem_at(members[0]);
        let mut key = cid as u32;
        let mut acc = x.clone();
        for _ in 2..p {
            acc = g.mul(&acc, &x);
            key = key.min(elem_class[g.index_of(&acc)]);
        }
        debug_assert!(p == 2 || acc == g.inv(&x));
        key_of_class[cid] = key;
    }
    let mut keys: Vec<u32> = key_of_class.clone();
    keys.sort_unstable();
    keys.dedup();
    let key_rank: HashMap<u32, u32> = keys
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i as u32))
        .collect();

    let mut subgroup_of = vec![u32::MAX; n];
    let mut subgroup_reps = vec![usize::MAX; keys.len()];
    let mut subgroup_elem_totals = vec![0usize; keys.len()];
    for (cid, members) in elem_classes.iter().enumerate() {
        let sid = key_rank[&key_of_class[cid]] as usize;
        subgroup_elem_totals[sid] += members.len();
        for &m in members {
            subgroup_of[m] = sid as u32;
            if subgroup_reps[sid] == usize::MAX || m < subgroup_reps[sid] {
                subgroup_reps[sid] = m;
            }
        }
    }
    let subgroup_counts: Vec<usize> = subgroup_elem_totals
        .iter()
        .map(|&t| {
            debug_assert_eq!(t % (p as usize - 1).max(1), 0);
            t / (p as usize - 1).max(1)
        })
        .collect();

    Ok(PCyclicClasses {
        p,
        elem_class,
        elem_classes,
        subgroup_of,
        subgroup_reps,
        subgroup_counts,
        order_p_elements: count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WildMode {
    Exact,
    Witness { depth: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WildStatus {
    WildExact,
    WildWitnessed,
    NotWildExact,
    Inconclusive,
}

impl WildStatus {
    pub fn is_wild(self) -> bool {
        matches!(self, WildStatus::WildExact | WildStatus::WildWitnessed)
    }
}

/// A verifying witness: an automorphism word moving one subgroup class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassWitness {
    pub subgroup_class: u32,
    pub word: Vec<PrimitiveDesc>,
    pub moved_to: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WildReport {
    pub p: u64,
    pub status: WildStatus,
    pub subgroup_classes: usize,
    pub element_classes: usize,
    pub order_p_elements: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<ClassWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fixed_class: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub unresolved_classes: Vec<u32>,
    pub depth_used: usize,
    pub generators_used: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl WildReport {
    fn empty_locus(p: u64) -> WildReport {
        WildReport {
            p,
            status: WildStatus::WildExact,
            subgroup_classes: 0,
            element_classes: 0,
            order_p_elements: 0,
            witnesses: Vec::new(),
            fixed_class: None,
            unresolved_classes: Vec::new(),
            depth_used: 0,
            generators_used: Vec::new(),
            note: Some("no elements of order p: wild vacuously".into()),
        }
    }

    fn single_class(p: u64, classes: &PCyclicClasses) -> WildReport {
        WildReport {
            p,
            status: WildStatus::NotWildExact,
            subgroup_classes: 1,
            element_classes: classes.elem_class_count(),
            order_p_elements: classes.order_p_elements,
            witnesses: Vec::new(),
            fixed_class: Some(0),
            unresolved_classes: Vec::new(),
            depth_used: 0,
            generators_used: Vec::new(),
            note: Some(
                "single subgroup class: automorphisms permute classes, so it is fixed".into(),
            ),
        }
    }
}

// ---- exact mode ----------------------------------------------------------

/// Decides wildness by the full automorphism group's action on the classes.
pub fn verify_p_wild_exact(g: &TableGroup, p: u64, cfg: &Config) -> Result<WildReport> {
    let classes = p_cyclic_classes(g, p)?;
    if classes.subgroup_class_count() == 0 {
        return Ok(WildReport::empty_locus(p));
    }
    let aut = brute_force_aut(g, cfg.brute_aut_limit, cfg.max_aut_count)?;
    let m = classes.subgroup_class_count();
    let mut witnesses = Vec::with_capacity(m);
    for c in 0..m {
        let rep = classes.subgroup_reps[c];
        let mover = aut
            .elems
            .iter()
            .find(|f| classes.subgroup_of[f[rep] as usize] != c as u32);
        match mover {
            Some(f) => witnesses.push(ClassWitness {
                subgroup_class: c as u32,
                word: vec![PrimitiveDesc::TableAut { images: f.clone() }],
                moved_to: classes.subgroup_of[f[rep] as usize],
            }),
            None => {
                return Ok(WildReport {
                    p,
                    status: WildStatus::NotWildExact,
                    subgroup_classes: m,
                    element_classes: classes.elem_class_count(),
                    order_p_elements: classes.order_p_elements,
                    witnesses: Vec::new(),
                    fixed_class: Some(c as u32),
                    unresolved_classes: Vec::new(),
                    depth_used: 0,
                    generators_used: vec![format!("full automorphism group ({})", aut.len())],
                    note: None,
                });
            }
        }
    }
    Ok(WildReport {
        p,
        status: WildStatus::WildExact,
        subgroup_classes: m,
        element_classes: classes.elem_class_count(),
        order_p_elements: classes.order_p_elements,
        witnesses,
        fixed_class: None,
        unresolved_classes: Vec::new(),
        depth_used: 0,
        generators_used: vec![format!("full automorphism group ({})", aut.len())],
        note: None,
    })
}

// ---- witness mode --------------------------------------------------------

/// Finds, per subgroup class, a shortest word over the induced class
/// permutations that moves it. Returns per-class words as generator-index
/// sequences (application order).
fn bfs_class_witnesses(
    gen_perms: &[Vec<u32>],
    m: usize,
    depth: usize,
) -> Vec<Option<Vec<usize>>> {
    let mut witness: Vec<Option<Vec<usize>>> = vec![None; m];
    let mut remaining = m;
    let identity: Vec<u32> = (0..m as u32).collect();
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::from([(identity.clone(), ())]);
    let mut frontier: Vec<(Vec<u32>, Vec<usize>)> = vec![(identity, Vec::new())];
    for _ in 0..depth {
        if remaining == 0 {
            break;
        }
        let mut next = Vec::new();
        for (perm, word) in &frontier {
            for (gi, gperm) in gen_perms.iter().enumerate() {
                // word then generator: x -> gperm(perm(x))
                let composed: Vec<u32> = perm.iter().map(|&x| gperm[x as usize]).collect();
                if seen.contains_key(&composed) {
                    continue;
                }
                let mut w = word.clone();
                w.push(gi);
                for c in 0..m {
                    if witness[c].is_none() && composed[c] != c as u32 {
                        witness[c] = Some(w.clone());
                        remaining -= 1;
                    }
                }
                seen.insert(composed.clone(), ());
                next.push((composed, w));
            }
        }
        frontier = next;
    }
    witness
}

/// Default witness generators for an extension group: psi, phi, every psi_i,
/// inner maps at the group generators, and lifts of the (brute-forced)
/// automorphisms of A — each with its inverse.
pub fn default_witness_gens(g: &SdGroup, cfg: &Config) -> Result<Vec<(String, AutMap)>> {
    let mut gens: Vec<(String, AutMap)> = Vec::new();
    gens.push(("psi".into(), AutMap::psi(g)));
    gens.push(("psi^-1".into(), AutMap::psi(g).invert()));
    gens.push(("phi".into(), AutMap::phi(g)));
    gens.push(("phi^-1".into(), AutMap::phi(g).invert()));
    for i in 1..=g.r() {
        let map = AutMap::psi_i(g, i as u32)?;
        gens.push((format!("psi_{i}"), map.clone()));
        gens.push((format!("psi_{i}^-1"), map.invert()));
    }
    if g.a().order() <= cfg.brute_aut_limit {
        let aut_a = brute_force_aut(g.a(), cfg.brute_aut_limit, cfg.max_aut_count)?;
        for (k, f) in aut_a.small_generating_set().into_iter().enumerate() {
            let map = AutMap::lift(g, f)?;
            gens.push((format!("lift_{k}"), map.clone()));
            gens.push((format!("lift_{k}^-1"), map.invert()));
        }
    }
    for (k, x) in g.sd_generators().into_iter().enumerate() {
        let map = AutMap::inner(g, x)?;
        gens.push((format!("inner_{k}"), map.clone()));
        gens.push((format!("inner_{k}^-1"), map.invert()));
    }
    Ok(gens)
}

/// Witness-mode wildness for an extension group.
///
/// `gens` defaults to `default_witness_gens`. Every found witness is
/// re-verified by evaluating the actual automorphism word on the class
/// representative.
pub fn verify_p_wild_witness(
    g: &SdGroup,
    p: u64,
    depth: usize,
    gens: Option<Vec<(String, AutMap)>>,
    cfg: &Config,
) -> Result<WildReport> {
    g.enumerable(cfg.max_enum)?;
    let classes = p_cyclic_classes(g, p)?;
    if classes.subgroup_class_count() == 0 {
        return Ok(WildReport::empty_locus(p));
    }
    if classes.subgroup_class_count() == 1 {
        return Ok(WildReport::single_class(p, &classes));
    }
    // structural check: when p does not divide |A|, every order-p element
    // must lie in B
    if g.a().order() as u64 % p != 0 {
        for &rep in &classes.subgroup_reps {
            let e = g.index_to_elem(rep);
            if e.a != 0 {
                return Err(Error::Internal(
                    "order-p element outside B although p does not divide |A|".into(),
                ));
            }
        }
    }
    let gens = match gens {
        Some(gs) => gs,
        None => default_witness_gens(g, cfg)?,
    };
    let labels: Vec<String> = gens.iter().map(|(l, _)| l.clone()).collect();
    let m = classes.subgroup_class_count();

    // induced permutation of subgroup-class ids per generator
    let induced: Vec<Vec<u32>> = cfg.with_pool(|| {
        gens.par_iter()
            .map(|(_, map)| {
                (0..m)
                    .map(|c| {
                        let rep = g.index_to_elem(classes.subgroup_reps[c]);
                        let image = map.apply(&rep);
                        classes.subgroup_of[g.elem_to_index(&image)]
                    })
                    .collect()
            })
            .collect()
    });
    for perm in &induced {
        debug_assert!(perm.iter().all(|&c| c != u32::MAX));
    }

    let found = bfs_class_witnesses(&induced, m, depth);
    let mut witnesses = Vec::new();
    let mut unresolved = Vec::new();
    for (c, w) in found.iter().enumerate() {
        match w {
            None => unresolved.push(c as u32),
            Some(_) => {}
        }
    }

    if unresolved.is_empty() {
        // independent re-verification of every witness by evaluation
        let checked: Vec<Result<ClassWitness>> = cfg.with_pool(|| {
            found
                .par_iter()
                .enumerate()
                .map(|(c, w)| {
                    let word_idx = w.as_ref().expect("all resolved");
                    let rep = g.index_to_elem(classes.subgroup_reps[c]);
                    let mut image = rep.clone();
                    let mut word = Vec::new();
                    for &gi in word_idx {
                        image = gens[gi].1.apply(&image);
                        word.extend(gens[gi].1.describe());
                    }
                    let moved_to = classes.subgroup_of[g.elem_to_index(&image)];
                    if moved_to == c as u32 {
                        return Err(Error::Internal(format!(
                            "witness for class {c} fails re-verification"
                        )));
                    }
                    Ok(ClassWitness {
                        subgroup_class: c as u32,
                        word,
                        moved_to,
                    })
                })
                .collect()
        });
        for cw in checked {
            witnesses.push(cw?);
        }
    }

    let status = if unresolved.is_empty() {
        WildStatus::WildWitnessed
    } else {
        WildStatus::Inconclusive
    };
    Ok(WildReport {
        p,
        status,
        subgroup_classes: m,
        element_classes: classes.elem_class_count(),
        order_p_elements: classes.order_p_elements,
        witnesses,
        fixed_class: None,
        unresolved_classes: unresolved,
        depth_used: depth,
        generators_used: labels,
        note: None,
    })
}

/// Witness mode over a plain table group: only inner generators are
/// available, which never move a conjugacy class, so the only definite
/// outcomes are the vacuous and single-class shortcuts.
pub fn verify_p_wild_table_witness(
    g: &TableGroup,
    p: u64,
    depth: usize,
    _cfg: &Config,
) -> Result<WildReport> {
    let classes = p_cyclic_classes(g, p)?;
    if classes.subgroup_class_count() == 0 {
        return Ok(WildReport::empty_locus(p));
    }
    if classes.subgroup_class_count() == 1 {
        return Ok(WildReport::single_class(p, &classes));
    }
    let labels: Vec<String> = g
        .gens()
        .iter()
        .map(|&x| format!("inner_{x}"))
        .collect();
    // inner maps fix every conjugacy class, so no word over them can move
    // one; report honestly without claiming not-wild
    Ok(WildReport {
        p,
        status: WildStatus::Inconclusive,
        subgroup_classes: classes.subgroup_class_count(),
        element_classes: classes.elem_class_count(),
        order_p_elements: classes.order_p_elements,
        witnesses: Vec::new(),
        fixed_class: None,
        unresolved_classes: (0..classes.subgroup_class_count() as u32).collect(),
        depth_used: depth,
        generators_used: labels,
        note: Some("inner generators cannot move conjugacy classes; use exact mode".into()),
    })
}

// ---- dispatch and xi -----------------------------------------------------

/// A verification target: either a fully enumerated group or an extension
/// group with lazy arithmetic.
#[derive(Clone)]
pub enum WildTarget<'a> {
    Table(&'a TableGroup),
    Sd(&'a SdGroup),
}

pub fn verify_p_wild(target: &WildTarget, p: u64, mode: WildMode, cfg: &Config) -> Result<WildReport> {
    match (target, mode) {
        (WildTarget::Table(g), WildMode::Exact) => verify_p_wild_exact(g, p, cfg),
        (WildTarget::Table(g), WildMode::Witness { depth }) => {
            verify_p_wild_table_witness(g, p, depth, cfg)
        }
        (WildTarget::Sd(g), WildMode::Exact) => {
            let (table, _) = g.enumerate(cfg.brute_aut_limit)?;
            verify_p_wild_exact(&table, p, cfg)
        }
        (WildTarget::Sd(g), WildMode::Witness { depth }) => {
            verify_p_wild_witness(g, p, depth, None, cfg)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XiReport {
    pub pi: Vec<u64>,
    pub xi: Vec<u64>,
    pub per_prime: BTreeMap<u64, WildReport>,
    /// True iff every prime got a definite status and xi = pi.
    pub saksonov_property: Option<bool>,
}

/// Per-prime wildness sweep over the primes dividing the order.
pub fn xi(target: &WildTarget, mode: WildMode, cfg: &Config) -> Result<XiReport> {
    let order = match target {
        WildTarget::Table(g) => g.group_order(),
        WildTarget::Sd(g) => g.order().clone(),
    };
    let pi = order.support();
    let mut per_prime = BTreeMap::new();
    for &p in &pi {
        per_prime.insert(p, verify_p_wild(target, p, mode, cfg)?);
    }
    let xi: Vec<u64> = pi
        .iter()
        .filter(|p| per_prime[p].status.is_wild())
        .copied()
        .collect();
    let all_definite = per_prime
        .values()
        .all(|r| r.status != WildStatus::Inconclusive);
    let saksonov_property = if all_definite { Some(xi == pi) } else { None };
    Ok(XiReport {
        pi,
        xi,
        per_prime,
        saksonov_property,
    })
}
