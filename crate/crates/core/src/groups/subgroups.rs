//! Subgroup lattice enumeration by cyclic extension, and conjugacy classes
//! of subgroups in subconjugacy-compatible order.

use std::collections::{HashMap, HashSet};

use crate::caps::Caps;
use crate::error::Result;

use super::group::{member_key, FiniteGroup, Subgroup};

/// Every subgroup of `g`, sorted by (order, members).
///
/// Starts from the trivial subgroup and repeatedly joins a cyclic subgroup
/// until nothing new appears. Bounded by [`Caps::subgroup_order`].
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Caps::check_subgroup_order(g.order() as u128)?;

    // one generator per cyclic subgroup
    let mut cyclic_seen = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for x in 1..g.order() {
        let members = g.closure_members(&[x]);
        if cyclic_seen.insert(member_key(g.order(), &members)) {
            cyclic_gens.push(x);
        }
    }

    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Vec<u64>> = HashSet::from([trivial.key()]);
    let mut found = vec![trivial.clone()];
    let mut layer = vec![trivial];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for &x in &cyclic_gens {
                if s.contains(x) {
                    continue;
                }
                let mut gens = s.generators().to_vec();
                gens.push(x);
                let t = g.subgroup_generated(&gens);
                if seen.insert(t.key()) {
                    found.push(t.clone());
                    next.push(t);
                }
            }
        }
        layer = next;
    }
    found.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    Ok(found)
}

/// One representative per conjugacy class of subgroups.
///
/// Representatives are ordered by (longest chain of proper subgroups,
/// order, smallest member list), so index `i <= j` whenever `reps[i]` is
/// subconjugate to `reps[j]`. The trivial subgroup is first and the whole
/// group last.
#[derive(Clone, Debug)]
pub struct SubgroupClassList {
    group: FiniteGroup,
    reps: Vec<Subgroup>,
    chain_lengths: Vec<usize>,
    class_sizes: Vec<usize>,
    lookup: HashMap<Vec<u64>, usize>,
}

impl SubgroupClassList {
    pub fn new(g: &FiniteGroup) -> Result<SubgroupClassList> {
        let subgroups = all_subgroups(g)?;
        let index_of: HashMap<Vec<u64>, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();

        // longest chain 1 = K0 < K1 < ... < H; subgroups are sorted by order
        let mut chain = vec![0usize; subgroups.len()];
        for i in 0..subgroups.len() {
            chain[i] = (0..i)
                .filter(|&j| {
                    subgroups[j].order() < subgroups[i].order()
                        && subgroups[i].order() % subgroups[j].order() == 0
                        && subgroups[j].is_subgroup_of(&subgroups[i])
                })
                .map(|j| chain[j] + 1)
                .max()
                .unwrap_or(0);
        }

        let mut class_id = vec![usize::MAX; subgroups.len()];
        // (chain, order, rep members, class members)
        let mut classes: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
        for i in 0..subgroups.len() {
            if class_id[i] != usize::MAX {
                continue;
            }
            let mut conjugates: Vec<usize> = (0..g.order())
                .map(|x| index_of[&subgroups[i].conjugate(x).key()])
                .collect();
            conjugates.sort_unstable();
            conjugates.dedup();
            for &c in &conjugates {
                class_id[c] = classes.len();
            }
            // subgroups are sorted, so the smallest conjugate comes first
            classes.push((chain[i], subgroups[i].order(), subgroups[i].members().to_vec(), conjugates));
        }
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| {
            let (ca, oa, ma, _) = &classes[a];
            let (cb, ob, mb, _) = &classes[b];
            (ca, oa, ma).cmp(&(cb, ob, mb))
        });

        let mut reps = Vec::new();
        let mut chain_lengths = Vec::new();
        let mut class_sizes = Vec::new();
        let mut lookup = HashMap::new();
        for (pos, &c) in order.iter().enumerate() {
            let (ch, _, _, members) = &classes[c];
            reps.push(subgroups[members[0]].clone());
            chain_lengths.push(*ch);
            class_sizes.push(members.len());
            for &m in members {
                lookup.insert(subgroups[m].key(), pos);
            }
        }
        Ok(SubgroupClassList {
            group: g.clone(),
            reps,
            chain_lengths,
            class_sizes,
            lookup,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Subgroup] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Subgroup {
        &self.reps[i]
    }

    /// Longest chain of proper subgroups inside each representative.
    pub fn chain_lengths(&self) -> &[usize] {
        &self.chain_lengths
    }

    /// Number of conjugates in each class (equals `[G : N_G(H)]`).
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Position of the class containing `h`.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        if !h.parent().same_as(&self.group) {
            return None;
        }
        self.lookup.get(&h.key()).copied()
    }

    /// Whether `reps[i]` is conjugate to a subgroup of `reps[j]`.
    pub fn is_subconjugate(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.reps[i], &self.reps[j]);
        if b.order() % a.order() != 0 {
            return false;
        }
        (0..self.group.order()).any(|g| a.conjugate(g).is_subgroup_of(b))
    }
}
