//! Brute-force automorphism groups of small table groups.
//!
//! Strategy: pick a greedy generating sequence (highest element orders
//! first), try all image assignments with matching element orders, and prune
//! by propagating a partial homomorphism over the closure of the assigned
//! generators. Surviving assignments are validated by a full
//! multiplicativity check.

use super::perm::{Perm, PermSubgroup};
use super::TableGroup;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Greedy generating sequence preferring high element orders.
pub fn greedy_generators(g: &TableGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![0];
    }
    let orders: Vec<u64> = (0..n).map(|x| g.element_order(x)).collect();
    let mut candidates: Vec<usize> = (1..n).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let mut span_count = 1;
    for x in candidates {
        if span[x] {
            continue;
        }
        gens.push(x);
        // extend the closure
        let set = g
            .subgroup_closure(&gens.iter().map(|&i| i as u32).collect::<Vec<_>>())
            .expect("closure of valid indices");
        span_count = set.len();
        span = set.mask;
        if span_count == n {
            break;
        }
    }
    debug_assert_eq!(span_count, n);
    gens
}

/// Full automorphism group of `g` as permutations of element indices.
pub fn brute_force_aut(g: &TableGroup, limit: usize, max_count: usize) -> Result<PermSubgroup> {
    if g.order() > limit {
        return Err(Error::SizeLimit {
            what: "brute-force automorphism group",
            limit,
            need: g.order().to_string(),
        });
    }
    let n = g.order();
    let gens = greedy_generators(g);
    let orders: Vec<u64> = (0..n).map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gi| (0..n).filter(|&x| orders[x] == orders[gi]).collect())
        .collect();

    let mut found: Vec<Perm> = Vec::new();
    let mut images = vec![0usize; gens.len()];
    search(
        g,
        &gens,
        &candidates,
        0,
        &mut images,
        &mut found,
        max_count,
    )?;

    // full multiplicativity validation of every found map
    for p in &found {
        for x in 0..n {
            for y in 0..n {
                if p[g.mul_idx(x, y)] != g.mul_idx(p[x] as usize, p[y] as usize) as u32 {
                    return Err(Error::Internal(format!(
                        "search produced a non-multiplicative map at ({x},{y})"
                    )));
                }
            }
        }
    }

    let index: HashMap<Perm, usize> = found
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    if index.len() != found.len() {
        return Err(Error::Internal("duplicate automorphism found".into()));
    }
    let mut group = PermSubgroup {
        degree: n,
        elems: found,
        index,
        gens: Vec::new(),
    };
    group.gens = group.small_generating_set();
    Ok(group)
}

fn search(
    g: &TableGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    level: usize,
    images: &mut Vec<usize>,
    found: &mut Vec<Perm>,
    max_count: usize,
) -> Result<()> {
    if level == gens.len() {
        if let Some(map) = propagate(g, &gens[..level], &images[..level]) {
            if map.iter().all(|&v| v != u32::MAX) {
                if found.len() >= max_count {
                    return Err(Error::SizeLimit {
                        what: "automorphism count",
                        limit: max_count,
                        need: format!("> {max_count}"),
                    });
                }
                found.push(map);
            }
        }
        return Ok(());
    }
    for &w in &candidates[level] {
        images[level] = w;
        if propagate(g, &gens[..=level], &images[..=level]).is_some() {
            search(g, gens, candidates, level + 1, images, found, max_count)?;
        }
    }
    Ok(())
}

/// Extends `gens[i] -> images[i]` to a homomorphism on the closure of the
/// assigned generators, checking consistency on every Cayley edge and
/// injectivity. Returns the partial map (u32::MAX outside the closure), or
/// None on conflict.
///
/// Checking all edges `(x, x*g_j)` proves multiplicativity on the generated
/// subgroup by induction on word length.
fn propagate(g: &TableGroup, gens: &[usize], images: &[usize]) -> Option<Perm> {
    let n = g.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut frontier = vec![0usize];
    let mut members = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (&gj, &wj) in gens.iter().zip(images) {
            let y = g.mul_idx(x, gj);
            let fy = g.mul_idx(map[x] as usize, wj) as u32;
            if map[y] == u32::MAX {
                if used[fy as usize] {
                    return None; // not injective
                }
                map[y] = fy;
                used[fy as usize] = true;
                frontier.push(y);
                members.push(y);
            } else if map[y] != fy {
                return None; // inconsistent
            }
        }
    }
    // verify the remaining Cayley edges of members already assigned
    for &x in &members {
        for (&gj, &wj) in gens.iter().zip(images) {
            let y = g.mul_idx(x, gj);
            if map[y] != g.mul_idx(map[x] as usize, wj) as u32 {
                return None;
            }
        }
    }
    Some(map)
}
