use proptest::prelude::*;

use wreathk_core::groups::{named, FiniteGroup, SubgroupClassList};
use wreathk_core::gsets::GSet;
use wreathk_core::izumi::{Izumi, IzumiTerm};

/// Groups of order at most 8.
fn groups() -> Vec<FiniteGroup> {
    let c = |k| named::cyclic(k).unwrap();
    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        named::klein().unwrap(),
        c(5),
        c(6),
        named::symmetric(3).unwrap(),
        c(7),
        c(8),
        named::direct_product(&c(2), &c(4)).unwrap(),
        named::direct_product(&c(2), &named::klein().unwrap()).unwrap(),
        named::dihedral(4).unwrap(),
        named::quaternion().unwrap(),
    ]
}

/// All multisets of transitive pieces with total size at most `max`.
fn piece_lists(classes: &SubgroupClassList, max: usize) -> Vec<Vec<usize>> {
    fn rec(sizes: &[usize], from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in from..sizes.len() {
            if sizes[i] <= left {
                cur.push(i);
                rec(sizes, i, left - sizes[i], cur, out);
                cur.pop();
            }
        }
    }
    let sizes: Vec<usize> = classes.reps().iter().map(|h| h.index()).collect();
    let mut out = Vec::new();
    rec(&sizes, 0, max, &mut Vec::new(), &mut out);
    out
}

fn build(g: &FiniteGroup, classes: &SubgroupClassList, pieces: &[usize]) -> GSet {
    let parts: Vec<GSet> = pieces.iter().map(|&i| GSet::coset_action(g, classes.rep(i)).unwrap()).collect();
    GSet::disjoint_union(g, &parts).unwrap()
}

/// `#{(gH, S) : S ⊇ gT}` (or `⊋`) counted directly.
fn pair_count(iz: &Izumi, t: &IzumiTerm, strict: bool) -> usize {
    let index = iz.group().order() / t.subgroup.len();
    let free = iz.z().len() - t.subset.len();
    index * ((1usize << free) - strict as usize)
}

#[test]
fn telescoping_for_all_small_cases() {
    for g in groups() {
        let classes = SubgroupClassList::new(&g).unwrap();
        for pieces in piece_lists(&classes, 5) {
            let z = build(&g, &classes, &pieces);
            let iz = Izumi::new(z.clone()).unwrap();
            let cert = iz.run_expansion().unwrap();
            assert!(cert.rounds <= z.len(), "order {} pieces {pieces:?}", g.order());
            assert!(iz.verify_certificate(&cert).unwrap().ok, "order {} pieces {pieces:?}", g.order());
            iz.check_terms(&cert).unwrap();
        }
    }
}

#[test]
fn orbit_bookkeeping() {
    for g in groups().into_iter().take(8) {
        let classes = SubgroupClassList::new(&g).unwrap();
        for pieces in piece_lists(&classes, 4) {
            let iz = Izumi::new(build(&g, &classes, &pieces)).unwrap();
            let cert = iz.run_expansion().unwrap();
            for (t, _) in cert.p_plus.iter().chain(cert.p_minus.iter()) {
                let full = iz.expand_full(t).unwrap();
                let covered: usize = full.iter().map(|(u, m)| m as usize * g.order() / u.subgroup.len()).sum();
                assert_eq!(covered, pair_count(&iz, t, false));
                let (head, tail) = iz.expand_step(t).unwrap();
                assert_eq!(&head, t);
                let covered: usize = tail.iter().map(|(u, m)| m as usize * g.order() / u.subgroup.len()).sum();
                assert_eq!(covered, pair_count(&iz, t, true));
                assert!(tail.iter().all(|(u, _)| u.subset.len() > t.subset.len()));
                let mut recombined = tail.clone();
                recombined.insert(head, 1);
                assert_eq!(recombined, full);
            }
        }
    }
}

#[test]
fn terms_fixing_all_of_z() {
    let s3 = named::symmetric(3).unwrap();
    let classes = SubgroupClassList::new(&s3).unwrap();
    let z = build(&s3, &classes, &[1, 3]);
    let iz = Izumi::new(z.clone()).unwrap();
    let all: Vec<usize> = (0..z.len()).collect();
    for h in classes.reps() {
        let t = iz.canonicalize(h, &all).unwrap();
        let full = iz.expand_full(&t).unwrap();
        assert_eq!(full.total(), 1);
        assert_eq!(full.multiplicity(&t), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonicalize_is_idempotent_and_invariant(gi in 0usize..14, pick in prop::collection::vec(0usize..6, 1..3), x in any::<usize>(), hsel in any::<usize>()) {
        let g = &groups()[gi];
        let classes = SubgroupClassList::new(g).unwrap();
        let pieces: Vec<usize> = pick.iter().map(|&p| p % classes.len()).collect();
        let z = build(g, &classes, &pieces);
        prop_assume!(z.len() <= 12);
        let iz = Izumi::new(z.clone()).unwrap();
        // T = an orbit of some subgroup's stabilized union; take H = stabilizer of T
        let dec = z.orbits_and_stabilizers().unwrap();
        let t: Vec<usize> = dec.orbits[hsel % dec.len()].clone();
        let h = g.whole();
        let canon = iz.canonicalize(&h, &t).unwrap();
        let again = iz.canonicalize(&iz_subgroup(g, &canon), &canon.subset).unwrap();
        prop_assert_eq!(&again, &canon);
        // translating the input does not change the canonical form
        let y = x % g.order();
        let mut moved: Vec<usize> = t.iter().map(|&p| z.act(y, p)).collect();
        moved.sort_unstable();
        let stab = z.stabilizer(t[0]);
        let tt = vec![t[0]];
        let moved_one = vec![z.act(y, t[0])];
        prop_assert_eq!(iz.canonicalize(&stab, &tt).unwrap(), iz.canonicalize(&stab.conjugate(y), &moved_one).unwrap());
        prop_assert_eq!(iz.canonicalize(&h, &moved).unwrap(), canon);
    }

    #[test]
    fn removing_any_entry_breaks_verification(gi in 0usize..8, pick in prop::collection::vec(0usize..6, 0..3)) {
        let g = &groups()[gi];
        let classes = SubgroupClassList::new(g).unwrap();
        let pieces: Vec<usize> = pick.iter().map(|&p| p % classes.len()).collect();
        let z = build(g, &classes, &pieces);
        prop_assume!(z.len() <= 6);
        let iz = Izumi::new(z).unwrap();
        let cert = iz.run_expansion().unwrap();
        for minus in [false, true] {
            let list = if minus { &cert.p_minus } else { &cert.p_plus };
            for (t, _) in list.iter() {
                let mut broken = cert.clone();
                if minus { broken.p_minus.remove_one(t); } else { broken.p_plus.remove_one(t); }
                let v = iz.verify_certificate(&broken).unwrap();
                prop_assert!(!v.ok);
                if minus {
                    prop_assert!(!v.surplus.is_empty());
                } else {
                    prop_assert!(!v.deficit.is_empty());
                }
            }
        }
    }
}

fn iz_subgroup(g: &FiniteGroup, t: &IzumiTerm) -> wreathk_core::groups::Subgroup {
    wreathk_core::groups::Subgroup::from_members(g.clone(), t.subgroup.clone()).unwrap()
}
