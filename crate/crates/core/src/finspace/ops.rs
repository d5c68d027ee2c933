use super::{check_ground, FinSpace, Subset};
use crate::error::{Result, TopoError};

/// Index of the pair `(i, j)` in the ground of `a × b` (row-major).
pub fn product_index(b_size: usize, i: usize, j: usize) -> usize {
    i * b_size + j
}

/// Product space. The topology is generated by the open rectangles `U × V`;
/// the minimal neighbourhood of `(i, j)` is `N(i) × N(j)`.
pub fn product(a: &FinSpace, b: &FinSpace) -> Result<FinSpace> {
    let size = a.size() * b.size();
    check_ground(size)?;
    let mut nbhd = Vec::with_capacity(size);
    for i in 0..a.size() {
        for j in 0..b.size() {
            let mut n = Subset::EMPTY;
            for p in a.min_nbhd(i).points() {
                for q in b.min_nbhd(j).points() {
                    n = n.with(product_index(b.size(), p, q));
                }
            }
            nbhd.push(n);
        }
    }
    Ok(FinSpace::from_nbhd_unchecked(nbhd))
}

/// Subspace on `carrier`, re-indexed to the carrier's points in ascending
/// order.
pub fn subspace(x: &FinSpace, carrier: Subset) -> Result<FinSpace> {
    if !carrier.within(x.size()) {
        return Err(TopoError::OutOfGround {
            subset: carrier,
            ground: x.size(),
        });
    }
    let points = carrier.to_vec();
    let reindex = |s: Subset| {
        Subset::from_points(
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| s.contains(p))
                .map(|(i, _)| i),
        )
    };
    let nbhd = points
        .iter()
        .map(|&p| reindex(x.min_nbhd(p) & carrier))
        .collect();
    Ok(FinSpace::from_nbhd_unchecked(nbhd))
}

/// Smallest closed set containing `a`: the points whose every open
/// neighbourhood meets `a`.
pub fn closure_of(x: &FinSpace, a: Subset) -> Result<Subset> {
    if !a.within(x.size()) {
        return Err(TopoError::OutOfGround {
            subset: a,
            ground: x.size(),
        });
    }
    Ok(Subset::from_points(
        (0..x.size()).filter(|&p| x.min_nbhd(p).intersects(a)),
    ))
}

/// Largest open set inside `a`.
pub fn interior_of(x: &FinSpace, a: Subset) -> Result<Subset> {
    let n = x.size();
    if !a.within(n) {
        return Err(TopoError::OutOfGround {
            subset: a,
            ground: n,
        });
    }
    Ok(closure_of(x, a.complement(n))?.complement(n))
}
