//! Oracles written directly from the definitions, shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use topolab_core::finspace::FinSpace;

pub type Family = BTreeSet<u32>;

pub fn full(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

pub fn is_topology(n: usize, f: &Family) -> bool {
    f.contains(&0)
        && f.contains(&full(n))
        && f.iter().all(|&a| {
            f.iter()
                .all(|&b| f.contains(&(a | b)) && f.contains(&(a & b)))
        })
}

/// Smallest topology on `n` points containing `gens`.
pub fn generate(n: usize, gens: impl IntoIterator<Item = u32>) -> Family {
    let mut f: Family = gens.into_iter().collect();
    f.insert(0);
    f.insert(full(n));
    loop {
        let mut next = f.clone();
        for &a in &f {
            for &b in &f {
                next.insert(a | b);
                next.insert(a & b);
            }
        }
        if next.len() == f.len() {
            return f;
        }
        f = next;
    }
}

pub fn opens(x: &FinSpace) -> Family {
    x.opens().iter().map(|s| s.bits()).collect()
}

pub fn preimage(table: &[usize], u: u32) -> u32 {
    table
        .iter()
        .enumerate()
        .filter(|&(_, &v)| u >> v & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Every function `Y → Z` in lexicographic order, kept when all preimages
/// of opens are open.
pub fn literal_maps(y: &FinSpace, z: &FinSpace) -> Vec<Vec<usize>> {
    let (n, m) = (y.size(), z.size());
    let (oy, oz) = (opens(y), opens(z));
    let mut out = Vec::new();
    for code in 0..m.pow(n as u32) {
        let mut table = vec![0; n];
        let mut c = code;
        for i in (0..n).rev() {
            table[i] = c % m;
            c /= m;
        }
        if oz.iter().all(|&u| oy.contains(&preimage(&table, u))) {
            out.push(table);
        }
    }
    out
}

/// Evaluation is continuous iff each preimage `e⁻¹(W)` is a union of
/// rectangles `A × V` with `A` open in `C(Y,Z)` and `V` open in `Y`.
pub fn literal_admissible(y: &FinSpace, z: &FinSpace, tables: &[Vec<usize>], t: &Family) -> bool {
    let n = y.size();
    let oy = opens(y);
    opens(z).into_iter().all(|w| {
        let pre: BTreeSet<(usize, usize)> = tables
            .iter()
            .enumerate()
            .flat_map(|(f, tab)| {
                (0..n)
                    .filter(move |&p| w >> tab[p] & 1 == 1)
                    .map(move |p| (f, p))
            })
            .collect();
        let mut covered = BTreeSet::new();
        for &a in t {
            for &v in &oy {
                let rect: Vec<(usize, usize)> = (0..tables.len())
                    .filter(|&f| a >> f & 1 == 1)
                    .flat_map(|f| {
                        (0..n)
                            .filter(move |&p| v >> p & 1 == 1)
                            .map(move |p| (f, p))
                    })
                    .collect();
                if rect.iter().all(|c| pre.contains(c)) {
                    covered.extend(rect);
                }
            }
        }
        covered == pre
    })
}
