use std::sync::Arc;

use proptest::prelude::*;

use topolab_core::finspace::{
    closure_of, generate_from_subbasis, interior_of, FinSpace, Subset, SubsetFamily,
};
use topolab_core::mapspace::{is_continuous_literal, ContMap, ZContext};
use topolab_core::Budget;

fn space(max_n: usize) -> impl Strategy<Value = FinSpace> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u32..1 << n, 0..5).prop_map(move |masks| {
            let family = SubsetFamily::new(n, masks.into_iter().map(Subset::from_bits)).unwrap();
            generate_from_subbasis(n, &family).unwrap()
        })
    })
}

fn space_with_subsets(max_n: usize) -> impl Strategy<Value = (FinSpace, Subset, Subset)> {
    space(max_n).prop_flat_map(|x| {
        let n = x.size();
        (Just(x), 0u32..1 << n, 0u32..1 << n)
            .prop_map(|(x, a, b)| (x, Subset::from_bits(a), Subset::from_bits(b)))
    })
}

proptest! {
    #[test]
    fn closure_and_interior_laws((x, a, b) in space_with_subsets(5)) {
        let cl = |s| closure_of(&x, s).unwrap();
        let int = |s| interior_of(&x, s).unwrap();
        prop_assert!(a.is_subset_of(cl(a)));
        prop_assert_eq!(cl(cl(a)), cl(a));
        prop_assert_eq!(cl(a | b), cl(a) | cl(b));
        prop_assert!(x.is_closed(cl(a)));
        prop_assert!(int(a).is_subset_of(a));
        prop_assert_eq!(int(int(a)), int(a));
        prop_assert_eq!(int(a & b), int(a) & int(b));
        prop_assert!(x.is_open(int(a)));
        let n = x.size();
        prop_assert_eq!(int(a), cl(a.complement(n)).complement(n));
    }

    #[test]
    fn opens_are_unions_of_minimal_neighbourhoods(x in space(5)) {
        for &u in x.opens().iter() {
            let union = u.points().fold(Subset::EMPTY, |acc, p| acc | x.min_nbhd(p));
            prop_assert_eq!(union, u);
        }
    }

    #[test]
    fn continuity_agrees_with_preimages(
        (y, z, raw) in (space(3), space(3)).prop_flat_map(|(y, z)| {
            let (n, m) = (y.size(), z.size());
            (Just(y), Just(z), prop::collection::vec(0..m, n))
        })
    ) {
        let literal = z.opens().iter().all(|&u| {
            y.is_open(Subset::from_points((0..y.size()).filter(|&p| u.contains(raw[p]))))
        });
        prop_assert_eq!(is_continuous_literal(&y, &z, &raw), literal);
        let built = ContMap::new(Arc::new(y.clone()), Arc::new(z.clone()), raw.clone());
        prop_assert_eq!(built.is_ok(), literal);
    }

    #[test]
    fn way_below_is_monotone((y, z) in (space(3), space(2))) {
        let ctx = ZContext::new(&y, &z, &Budget::default()).unwrap();
        let oz: Vec<Subset> = ctx.o_z.iter().copied().collect();
        let opens: Vec<Subset> = y.opens().iter().copied().collect();
        let wb = |a, u| ctx.way_below(a, u).unwrap().value;
        for &a in &oz {
            for &a2 in &oz {
                if !a2.is_subset_of(a) {
                    continue;
                }
                for &u in &opens {
                    for &u2 in &opens {
                        if u.is_subset_of(u2) && wb(a, u) {
                            prop_assert!(wb(a2, u2));
                        }
                    }
                }
            }
            for &u in &opens {
                prop_assert_eq!(wb(a, u), a.is_subset_of(u));
                prop_assert_eq!(ctx.way_below_collapsed(a, u).unwrap(), wb(a, u));
            }
        }
    }
}
