//! Isomorphism classes of small groups via canonical multiplication tables.
//!
//! For every generating tuple of minimal length, elements are relabelled in
//! breadth-first order of words in the generators and the resulting
//! multiplication table is recorded. The lexicographically smallest table is
//! an isomorphism invariant that separates non-isomorphic groups.
//!
//! When the number of tuples to try is too large the class falls back to a
//! coarser fingerprint and is flagged as inexact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::group::FiniteGroup;
use super::named;

/// Largest number of generating tuples examined for an exact table.
const TUPLE_BUDGET: u128 = 200_000;
const ORDER_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoClass {
    order: usize,
    class_count: usize,
    /// Canonical table (row-major) when `exact`, otherwise a fingerprint.
    key: Arc<Vec<u32>>,
    exact: bool,
}

impl IsoClass {
    pub fn of(g: &FiniteGroup) -> IsoClass {
        let order = g.order();
        let class_count = g.class_count();
        match canonical_table(g) {
            Some(table) => IsoClass {
                order,
                class_count,
                key: Arc::new(table),
                exact: true,
            },
            None => IsoClass {
                order,
                class_count,
                key: Arc::new(fingerprint(g)),
                exact: false,
            },
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Whether the class was pinned down by a canonical table.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Canonical multiplication table (row-major), if exact.
    pub fn table(&self) -> Option<&[u32]> {
        self.exact.then(|| self.key.as_slice())
    }

    /// A short name such as `C4`, `V4`, `S3` or `Q8`; groups outside the
    /// built-in list are named `G<order>.<classes>`.
    pub fn name(&self) -> String {
        if self.exact {
            if let Some(name) = known_names().get(&(self.order, self.key.as_ref().clone())) {
                return name.clone();
            }
        }
        format!("G{}.{}", self.order, self.class_count)
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn canonical_table(g: &FiniteGroup) -> Option<Vec<u32>> {
    let n = g.order();
    if n > ORDER_LIMIT {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    let mut d = 1;
    loop {
        if (n as u128).checked_pow(d as u32).is_none_or(|t| t > TUPLE_BUDGET) {
            return None;
        }
        let mut best: Option<Vec<u32>> = None;
        let mut tuple = vec![0usize; d];
        loop {
            try_tuple(g, &tuple, &mut best);
            if !advance(&mut tuple, n) {
                break;
            }
        }
        if best.is_some() {
            return best;
        }
        d += 1;
    }
}

fn advance(tuple: &mut [usize], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Relabels by the tuple and keeps the table if it beats `best`.
fn try_tuple(g: &FiniteGroup, gens: &[usize], best: &mut Option<Vec<u32>>) {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut label = vec![u32::MAX; n];
    order.push(FiniteGroup::IDENTITY);
    label[FiniteGroup::IDENTITY] = 0;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if label[y] == u32::MAX {
                label[y] = order.len() as u32;
                order.push(y);
            }
        }
    }
    if order.len() < n {
        return;
    }
    let mut table = Vec::with_capacity(n * n);
    let mut decided_smaller = best.is_none();
    for &a in &order {
        for &b in &order {
            let v = label[g.mul(a, b)];
            if !decided_smaller {
                let current = best.as_ref().expect("best exists")[table.len()];
                if v > current {
                    return;
                }
                if v < current {
                    decided_smaller = true;
                }
            }
            table.push(v);
        }
    }
    if decided_smaller {
        *best = Some(table);
    }
}

/// Sorted `(element order, class size)` pairs over conjugacy classes.
fn fingerprint(g: &FiniteGroup) -> Vec<u32> {
    let mut pairs: Vec<(u32, u32)> = g
        .conjugacy_classes()
        .iter()
        .map(|c| (g.element_order(c[0]) as u32, c.len() as u32))
        .collect();
    pairs.sort_unstable();
    pairs.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

fn known_names() -> &'static HashMap<(usize, Vec<u32>), String> {
    static NAMES: OnceLock<HashMap<(usize, Vec<u32>), String>> = OnceLock::new();
    NAMES.get_or_init(|| {
        let mut list: Vec<(String, FiniteGroup)> = Vec::new();
        let mut push = |name: String, g: crate::Result<FiniteGroup>| {
            if let Ok(g) = g {
                list.push((name, g));
            }
        };
        push("1".into(), named::cyclic(1));
        for k in 2..=24 {
            push(format!("C{k}"), named::cyclic(k));
        }
        push("V4".into(), named::klein());
        push("S3".into(), named::symmetric(3));
        for k in 4..=12 {
            push(format!("D{k}"), named::dihedral(k));
        }
        push("Q8".into(), named::quaternion());
        push("A4".into(), named::alternating(4));
        push("S4".into(), named::symmetric(4));
        let c = |k| named::cyclic(k).expect("cyclic");
        push("C2xC4".into(), named::direct_product(&c(2), &c(4)));
        push("C2xC6".into(), named::direct_product(&c(2), &c(6)));
        push("C3xC3".into(), named::direct_product(&c(3), &c(3)));
        push("C2xC8".into(), named::direct_product(&c(2), &c(8)));
        push("C4xC4".into(), named::direct_product(&c(4), &c(4)));
        push("C2^3".into(), named::direct_product(&c(2), &named::klein().expect("klein")));
        push("C2xS3".into(), named::direct_product(&c(2), &named::symmetric(3).expect("S3")));
        push(
            "C2xD4".into(),
            named::direct_product(&c(2), &named::dihedral(4).expect("D4")),
        );
        push("C2xQ8".into(), named::direct_product(&c(2), &named::quaternion().expect("Q8")));
        push(
            "C2xC2xC4".into(),
            named::direct_product(&named::klein().expect("klein"), &c(4)),
        );
        push(
            "C2^4".into(),
            named::direct_product(&named::klein().expect("klein"), &named::klein().expect("klein")),
        );

        let mut map = HashMap::new();
        for (name, g) in list {
            if let Some(table) = canonical_table(&g) {
                map.entry((g.order(), table)).or_insert(name);
            }
        }
        map
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{named, wreath_product};

    #[test]
    fn names_of_small_groups() {
        let cases = [
            (named::cyclic(1).unwrap(), "1"),
            (named::cyclic(6).unwrap(), "C6"),
            (named::klein().unwrap(), "V4"),
            (named::dihedral(3).unwrap(), "S3"),
            (named::quaternion().unwrap(), "Q8"),
            (named::dihedral(4).unwrap(), "D4"),
            (named::alternating(4).unwrap(), "A4"),
        ];
        for (g, name) in cases {
            assert_eq!(IsoClass::of(&g).name(), name);
        }
    }

    #[test]
    fn isomorphic_groups_agree() {
        let c2 = named::cyclic(2).unwrap();
        let w = wreath_product(&c2, &c2).unwrap();
        assert_eq!(IsoClass::of(&w), IsoClass::of(&named::dihedral(4).unwrap()));
        let v = named::direct_product(&c2, &c2).unwrap();
        assert_eq!(IsoClass::of(&v), IsoClass::of(&named::klein().unwrap()));
        let c6 = named::direct_product(&c2, &named::cyclic(3).unwrap()).unwrap();
        assert_eq!(IsoClass::of(&c6).name(), "C6");
    }

    #[test]
    fn non_isomorphic_groups_differ() {
        let d4 = IsoClass::of(&named::dihedral(4).unwrap());
        let q8 = IsoClass::of(&named::quaternion().unwrap());
        let c8 = IsoClass::of(&named::cyclic(8).unwrap());
        assert_ne!(d4, q8);
        assert_ne!(d4, c8);
        assert_ne!(IsoClass::of(&named::cyclic(4).unwrap()), IsoClass::of(&named::klein().unwrap()));
        assert!(d4.is_exact());
    }

    #[test]
    fn subgroup_as_group_keeps_class() {
        let s4 = named::symmetric(4).unwrap();
        let v = s4.subgroup_generated(&[
            s4.index_of(&crate::groups::Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()).unwrap(),
            s4.index_of(&crate::groups::Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap()).unwrap(),
        ]);
        assert_eq!(IsoClass::of(&v.to_group()).name(), "V4");
    }
}
