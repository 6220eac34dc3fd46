//! Catalog of standard small groups: cyclic, dihedral, symmetric,
//! alternating, quaternion, and direct products of these.

use super::TableGroup;
use crate::error::{Error, Result};

/// Atomic catalog entries. `D(n)` is the dihedral group of order `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    C(u32),
    D(u32),
    S(u32),
    A(u32),
    Q8,
}

impl Atom {
    pub fn order(&self) -> Result<usize> {
        Ok(match *self {
            Atom::C(n) if n >= 1 => n as usize,
            Atom::D(n) if n >= 1 => 2 * n as usize,
            Atom::S(n) if (1..=6).contains(&n) => factorial(n as usize),
            Atom::A(n) if (1..=6).contains(&n) => factorial(n as usize).max(2) / 2,
            Atom::Q8 => 8,
            _ => return Err(Error::UnknownAtom(format!("{self:?}"))),
        })
    }

    pub fn render(&self) -> String {
        match *self {
            Atom::C(n) => format!("C{n}"),
            Atom::D(n) => format!("D{n}"),
            Atom::S(n) => format!("S{n}"),
            Atom::A(n) => format!("A{n}"),
            Atom::Q8 => "Q8".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Atom> {
        let s = s.trim();
        if s == "Q8" {
            return Some(Atom::Q8);
        }
        let (head, tail) = s.split_at(1);
        let n: u32 = tail.parse().ok()?;
        match head {
            "C" => Some(Atom::C(n)),
            "D" => Some(Atom::D(n)),
            "S" => Some(Atom::S(n)),
            "A" => Some(Atom::A(n)),
            _ => None,
        }
    }

    pub fn build(&self, limit: usize) -> Result<TableGroup> {
        let order = self.order()?;
        if order > limit {
            return Err(Error::SizeLimit {
                what: "catalog group",
                limit,
                need: order.to_string(),
            });
        }
        match *self {
            Atom::C(n) => cyclic(n as usize),
            Atom::D(n) => dihedral(n as usize),
            Atom::S(n) => symmetric(n as usize),
            Atom::A(n) => alternating(n as usize),
            Atom::Q8 => quaternion(),
        }
    }
}

/// Builds a group from a catalog name: an atom or an `x`-separated product,
/// e.g. `"C6"`, `"A5"`, `"C2 x C2"`.
pub fn catalog_group(name: &str, limit: usize) -> Result<TableGroup> {
    let mut parts = name.split('x').map(str::trim);
    let first = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
    let mut g = Atom::parse(first)
        .ok_or_else(|| Error::UnknownAtom(first.to_string()))?
        .build(limit)?;
    for part in parts {
        let atom = Atom::parse(part).ok_or_else(|| Error::UnknownAtom(part.to_string()))?;
        let h = atom.build(limit)?;
        if g.order().saturating_mul(h.order()) > limit {
            return Err(Error::SizeLimit {
                what: "catalog group",
                limit,
                need: format!("{}", g.order().saturating_mul(h.order())),
            });
        }
        g = g.direct_product(&h)?;
    }
    Ok(g)
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

fn cyclic(n: usize) -> Result<TableGroup> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let gens = if n > 1 { vec![1] } else { vec![0] };
    TableGroup::from_fn(n, |x, y| (x + y) % n, gens, Some(labels))
}

/// Dihedral group of order 2n: elements `r^i s^e` indexed as `e*n + i`.
fn dihedral(n: usize) -> Result<TableGroup> {
    let labels = (0..2 * n)
        .map(|k| {
            let (e, i) = (k / n, k % n);
            match (i, e) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{i}"),
                (0, 1) => "s".to_string(),
                (_, 1) => format!("r{i}s"),
                _ => unreachable!(),
            }
        })
        .collect();
    let gens = if n > 1 { vec![1, n as u32] } else { vec![n as u32] };
    TableGroup::from_fn(
        2 * n,
        |x, y| {
            let (e1, i1) = (x / n, x % n);
            let (e2, i2) = (y / n, y % n);
            // (r^i1 s^e1)(r^i2 s^e2) = r^(i1 + i2*(-1)^e1) s^(e1+e2)
            let i = if e1 == 0 { (i1 + i2) % n } else { (i1 + n - i2 % n) % n };
            ((e1 + e2) % 2) * n + i
        },
        gens,
        Some(labels),
    )
}

fn perms_lex(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn cycle_label(p: &[u8]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut k = start;
        let mut first = true;
        while !seen[k] {
            seen[k] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&k.to_string());
            first = false;
            k = p[k] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn parity(p: &[u8]) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            len += 1;
            k = p[k] as usize;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

/// Builds a table over an explicit permutation list; composition is
/// "apply x, then y".
fn perm_table(perms: Vec<Vec<u8>>, gen_perms: Vec<Vec<u8>>) -> Result<TableGroup> {
    let index: std::collections::HashMap<Vec<u8>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    let gens: Vec<u32> = gen_perms.iter().map(|p| index[p] as u32).collect();
    let n = perms.len();
    TableGroup::from_fn(
        n,
        |x, y| {
            let composed: Vec<u8> = perms[x].iter().map(|&k| perms[y][k as usize]).collect();
            index[&composed]
        },
        gens,
        Some(labels),
    )
}

fn symmetric(n: usize) -> Result<TableGroup> {
    let perms = perms_lex(n);
    let gens = if n >= 2 {
        let mut swap: Vec<u8> = (0..n as u8).collect();
        swap.swap(0, 1);
        let cycle: Vec<u8> = (0..n as u8).map(|k| (k + 1) % n as u8).collect();
        if n == 2 {
            vec![swap]
        } else {
            vec![swap, cycle]
        }
    } else {
        vec![(0..n as u8).collect()]
    };
    perm_table(perms, gens)
}

fn alternating(n: usize) -> Result<TableGroup> {
    if n <= 2 {
        return cyclic(1);
    }
    let perms: Vec<Vec<u8>> = perms_lex(n).into_iter().filter(|p| parity(p) == 0).collect();
    let three_cycle: Vec<u8> = {
        let mut p: Vec<u8> = (0..n as u8).collect();
        p[0] = 1;
        p[1] = 2;
        p[2] = 0;
        p
    };
    let gens = if n == 3 {
        vec![three_cycle]
    } else if n % 2 == 1 {
        let cycle: Vec<u8> = (0..n as u8).map(|k| (k + 1) % n as u8).collect();
        vec![three_cycle, cycle]
    } else {
        // (1 2 ... n-1) fixing 0 is even for even n
        let mut cycle: Vec<u8> = (0..n as u8).collect();
        for k in 1..n {
            cycle[k] = (k % (n - 1) + 1) as u8;
        }
        vec![three_cycle, cycle]
    };
    perm_table(perms, gens)
}

/// Quaternion group: 1, -1, i, -i, j, -j, k, -k.
fn quaternion() -> Result<TableGroup> {
    // unit table over {e, i, j, k} with result sign
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    TableGroup::from_fn(
        8,
        |x, y| {
            let (ux, sx) = (x / 2, x % 2 == 1);
            let (uy, sy) = (y / 2, y % 2 == 1);
            let (u, s) = UNIT_MUL[ux][uy];
            u * 2 + ((s ^ sx ^ sy) as usize)
        },
        vec![2, 4],
        Some(labels),
    )
}
