use proptest::prelude::*;

use wreathk_core::groups::{all_subgroups, named, FiniteGroup, Subgroup, SubgroupClassList};
use wreathk_core::gsets::GSet;
use wreathk_core::ktheory::{
    determinant, f_c_sets, k0_rank, nontrivial_class_count, semisimple_decompose, sl_completion, wreath_blocks,
    wreath_conjugacy_oracle, wreath_decompose, wreath_decompose_infinite_cyclic, wreath_decompose_subgroup_form,
    DimVector, LeafGroup,
};

fn small() -> Vec<FiniteGroup> {
    vec![
        named::cyclic(1).unwrap(),
        named::cyclic(2).unwrap(),
        named::cyclic(3).unwrap(),
        named::cyclic(4).unwrap(),
        named::klein().unwrap(),
        named::symmetric(3).unwrap(),
    ]
}

#[test]
fn rank_matches_conjugacy_classes_of_wreath_product() {
    let pairs = [(1, 1), (1, 2), (2, 1), (2, 2), (5, 1), (1, 3), (1, 4), (2, 3), (5, 2)];
    let gs = small();
    for (hi, gi) in pairs {
        let (h, g) = (&gs[hi], &gs[gi]);
        let d = wreath_decompose(h, g, true).unwrap();
        assert_eq!(k0_rank(&d).unwrap() as usize, wreath_conjugacy_oracle(h, g).unwrap(), "H={hi} G={gi}");
    }
}

#[test]
fn orbit_and_subgroup_forms_agree() {
    let gs = small();
    let mut more = gs.clone();
    more.push(named::dihedral(4).unwrap());
    more.push(named::cyclic(6).unwrap());
    for h in &gs[1..] {
        for g in &more {
            let a = wreath_decompose(h, g, true).unwrap();
            let b = wreath_decompose_subgroup_form(h, g).unwrap();
            assert_eq!(a.leaves(), b.leaves(), "|H|={} |G|={}", h.order(), g.order());
        }
    }
}

/// Burnside's lemma for `G_F` on `{1..n}^F`.
fn function_orbit_count(g: &FiniteGroup, stab: &Subgroup, subset: &[usize], n: usize) -> usize {
    let mut total = 0usize;
    for &s in stab.members() {
        let mut seen = vec![false; subset.len()];
        let mut cycles = 0;
        for i in 0..subset.len() {
            if seen[i] {
                continue;
            }
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                let image = g.mul(s, subset[j]);
                j = subset.iter().position(|&x| x == image).unwrap();
            }
        }
        total += n.pow(cycles);
    }
    total / stab.order()
}

#[test]
fn refinement_splits_each_block_by_function_orbits() {
    for h in &small()[1..] {
        let n = nontrivial_class_count(h);
        for g in &small() {
            for block in wreath_blocks(h, g).unwrap() {
                let refined: u64 = block.refined.iter().map(|l| l.multiplicity).sum();
                assert_eq!(refined as usize, function_orbit_count(g, &block.stabilizer, &block.subset, n));
                for leaf in &block.refined {
                    match &leaf.group {
                        LeafGroup::Finite(c) => assert_eq!(block.stabilizer.order() % c.order(), 0),
                        LeafGroup::InfiniteCyclic => panic!("finite G gives finite leaves"),
                    }
                }
            }
        }
    }
}

#[test]
fn f_c_sets_have_stabilizer_exactly_c() {
    for g in [named::cyclic(4).unwrap(), named::klein().unwrap(), named::symmetric(3).unwrap(), named::cyclic(6).unwrap()] {
        for c in all_subgroups(&g).unwrap() {
            // right cosets Cg ordered by smallest element
            let mut cosets: Vec<Vec<usize>> = Vec::new();
            for x in 0..g.order() {
                if cosets.iter().any(|k| k.contains(&x)) {
                    continue;
                }
                let mut coset: Vec<usize> = c.members().iter().map(|&y| g.mul(y, x)).collect();
                coset.sort_unstable();
                cosets.push(coset);
            }
            let sets = f_c_sets(&g, &c).unwrap();
            for mask in 1u64..(1 << cosets.len()) {
                let cx: Vec<usize> = (0..cosets.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .flat_map(|i| cosets[i].clone())
                    .collect();
                let stab: Vec<usize> = (0..g.order())
                    .filter(|&s| cx.iter().all(|&y| cx.contains(&g.mul(s, y))))
                    .collect();
                assert_eq!(sets.contains(&mask), stab == c.members(), "mask {mask:b}");
            }
        }
    }
}

#[test]
fn infinite_cyclic_count_for_s3() {
    let s3 = named::symmetric(3).unwrap();
    for bound in 0..8u32 {
        let d = wreath_decompose_infinite_cyclic(&s3, bound as usize).unwrap();
        assert_eq!(d.leaf_count(), 1 + 2 * 3u64.pow(bound));
        assert_eq!(d.leaves()[0].group, LeafGroup::InfiniteCyclic);
        assert!(!d.complete);
    }
}

#[test]
fn infinite_cyclic_truncations_grow() {
    for h in &small() {
        for b in 0..6 {
            let lo = wreath_decompose_infinite_cyclic(h, b).unwrap();
            let hi = wreath_decompose_infinite_cyclic(h, b + 1).unwrap();
            assert!(lo.is_sub_multiset_of(&hi));
        }
    }
}

fn z_spec(pieces: &[usize]) -> GSet {
    let g = named::symmetric(3).unwrap();
    let classes = SubgroupClassList::new(&g).unwrap();
    let parts: Vec<GSet> = pieces.iter().map(|&i| GSet::coset_action(&g, classes.rep(i)).unwrap()).collect();
    GSet::disjoint_union(&g, &parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn localization_does_not_change_leaves(
        a in prop::collection::vec(1u64..40, 1..4),
        scale in 1u64..6,
        pieces in prop::collection::vec(0usize..4, 1..3),
        bound in 0usize..4,
    ) {
        let z = z_spec(&pieces);
        let base = DimVector::new(a.clone()).unwrap();
        let scaled = DimVector::new(a.iter().map(|d| d * scale).collect()).unwrap();
        let d1 = semisimple_decompose(&base, &z, bound).unwrap();
        let d2 = semisimple_decompose(&scaled, &z, bound).unwrap();
        prop_assert_eq!(d1.without_localization(), d2.without_localization());
        prop_assert!(d2.leaves().iter().all(|l| l.inverted == scaled.gcd()));
    }

    #[test]
    fn semisimple_truncations_grow(
        a in prop::collection::vec(1u64..20, 1..4),
        pieces in prop::collection::vec(0usize..4, 1..3),
        bound in 0usize..4,
    ) {
        let z = z_spec(&pieces);
        let dims = DimVector::new(a).unwrap();
        let lo = semisimple_decompose(&dims, &z, bound).unwrap();
        let hi = semisimple_decompose(&dims, &z, bound + 1).unwrap();
        prop_assert!(lo.is_sub_multiset_of(&hi));
    }

    #[test]
    fn sl_completion_is_unimodular_with_right_row_sums(a in prop::collection::vec(1u64..13, 1..4), scale in 1u64..4) {
        let dims = DimVector::new(a.iter().map(|d| d * scale).collect()).unwrap();
        let m = sl_completion(&dims).unwrap();
        prop_assert_eq!(determinant(&m), 1);
        for (row, d) in m.iter().zip(dims.dims()) {
            prop_assert!(row.iter().all(|&x| x >= 0));
            prop_assert_eq!(row.iter().sum::<i64>() as u64, d / dims.gcd());
        }
    }
}

#[test]
fn sl_completion_is_lex_largest_for_two_summands() {
    for a in 1..9i64 {
        for b in 1..9i64 {
            let dims = DimVector::new(vec![a as u64, b as u64]).unwrap();
            let n = dims.gcd() as i64;
            let (p, q) = (a / n, b / n);
            let mut best = None;
            for x in (0..=p).rev() {
                for z in (0..=q).rev() {
                    let m = vec![vec![x, p - x], vec![z, q - z]];
                    if determinant(&m) == 1 {
                        best = Some(m);
                        break;
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            assert_eq!(sl_completion(&dims).unwrap(), best.unwrap(), "dims ({a},{b})");
        }
    }
}
