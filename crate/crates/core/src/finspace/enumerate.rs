use std::collections::BTreeMap;

use super::{FinSpace, Subset};
use crate::error::{Result, TopoError};
use crate::par::{self, Execution};

/// Largest point count accepted by [`enumerate_topologies`].
pub const MAX_ENUM_POINTS: usize = 5;

/// Encodes the open family of a space on at most 6 points as a bitmask over
/// all subsets: bit `s` is set iff the subset with bit-vector `s` is open.
pub fn family_code(x: &FinSpace) -> Option<u64> {
    if x.size() > 6 {
        return None;
    }
    Some(
        Subset::all(x.size())
            .filter(|s| x.is_open(*s))
            .fold(0u64, |acc, s| acc | (1u64 << s.bits())),
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Largest [`family_code`] over all relabellings of `x`, together with a
/// relabelled copy attaining it. Homeomorphic spaces share this code.
pub fn canonical_code(x: &FinSpace) -> Option<(u64, FinSpace)> {
    family_code(x)?;
    permutations(x.size())
        .iter()
        .map(|p| {
            let y = x.permuted(p);
            (family_code(&y).expect("size checked"), y)
        })
        .max_by_key(|(code, _)| *code)
}

/// One representative per homeomorphism class, in ascending code order.
pub fn isomorphism_classes(spaces: &[FinSpace]) -> Vec<FinSpace> {
    let mut reps: BTreeMap<(usize, u64), FinSpace> = BTreeMap::new();
    for x in spaces {
        let (code, rep) = canonical_code(x).expect("enumerated spaces are small");
        reps.entry((x.size(), code)).or_insert(rep);
    }
    reps.into_values().collect()
}

/// All topologies on `n` labelled points, in ascending [`family_code`]
/// order.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FinSpace>> {
    enumerate_topologies_with(n, Execution::default())
}

/// Every finite topology is determined by its specialisation preorder, so
/// this enumerates reflexive transitive relations and reads off their
/// up-set topologies.
pub fn enumerate_topologies_with(n: usize, exec: Execution) -> Result<Vec<FinSpace>> {
    if n > MAX_ENUM_POINTS {
        return Err(TopoError::GroundTooLarge {
            size: n,
            max: MAX_ENUM_POINTS,
        });
    }
    let others = n.saturating_sub(1);
    let decode = |code: u64| -> Vec<Subset> {
        (0..n)
            .map(|x| {
                let chunk = (code >> (x * others)) & ((1u64 << others) - 1);
                let mut up = Subset::singleton(x);
                for (k, y) in (0..n).filter(|&y| y != x).enumerate() {
                    if chunk & (1 << k) != 0 {
                        up = up.with(y);
                    }
                }
                up
            })
            .collect()
    };
    let transitive = |up: &[Subset]| {
        up.iter()
            .all(|u| u.points().all(|y| up[y].is_subset_of(*u)))
    };
    let codes = par::filter_range(exec, 1u64 << (n * others), |c| transitive(&decode(c)));
    let mut spaces: Vec<(u64, FinSpace)> = codes
        .into_iter()
        .map(|c| {
            let x = FinSpace::from_nbhd_unchecked(decode(c));
            (family_code(&x).expect("n <= 5"), x)
        })
        .collect();
    spaces.sort_by_key(|(code, _)| *code);
    Ok(spaces.into_iter().map(|(_, x)| x).collect())
}

/// All spaces with `1..=max_n` points; with `reduced`, one per
/// homeomorphism class.
pub fn spaces_up_to(max_n: usize, reduced: bool, exec: Execution) -> Result<Vec<FinSpace>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let all = enumerate_topologies_with(n, exec)?;
        if reduced {
            out.extend(isomorphism_classes(&all));
        } else {
            out.extend(all);
        }
    }
    Ok(out)
}
