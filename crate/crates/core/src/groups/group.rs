use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::perm::Permutation;

/// Orders up to this bound get a cached Cayley table.
const CAYLEY_CACHE_ORDER: usize = 1024;

/// A finite permutation group with its full, canonically ordered element list.
///
/// Elements are sorted lexicographically by image array, so index `0` is
/// always the identity. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    cayley: OnceLock<Option<Vec<u32>>>,
}

impl FiniteGroup {
    /// Closes `generators` under composition.
    ///
    /// Fails on a degree mismatch or when the order would exceed
    /// [`Caps::group_order`].
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<FiniteGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let limit = Caps::current().group_order as usize;
        let identity = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        let mut found = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = x.compose(s);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    if seen.len() > limit {
                        return Err(Error::cap("group order", seen.len() as u128, limit as u128));
                    }
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        Ok(Self::from_closed(degree, generators, found))
    }

    /// Builds a group from a list already known to be closed.
    pub(crate) fn from_closed(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> FiniteGroup {
        elements.sort();
        elements.dedup();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        FiniteGroup {
            inner: Arc::new(GroupData {
                degree,
                generators,
                elements,
                index,
                inverse,
                cayley: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        Self::from_closed(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    /// Indices of the generators in the canonical element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .inner
            .generators
            .iter()
            .map(|g| self.inner.index[g])
            .filter(|&i| i != 0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.inner.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.inner.index.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a]
    }

    /// Index of the product `a * b` (apply `b`, then `a`).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.cayley() {
            Some(table) => table[a * self.order() + b] as usize,
            None => self.inner.index[&self.inner.elements[a].compose(&self.inner.elements[b])],
        }
    }

    /// Index of `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Image of a point under element `g` of the natural action.
    #[inline]
    pub fn act(&self, g: usize, point: usize) -> usize {
        self.inner.elements[g].apply(point)
    }

    fn cayley(&self) -> Option<&Vec<u32>> {
        self.inner
            .cayley
            .get_or_init(|| {
                let n = self.order();
                if n > CAYLEY_CACHE_ORDER {
                    return None;
                }
                let els = &self.inner.elements;
                let mut table = Vec::with_capacity(n * n);
                for a in els {
                    for b in els {
                        table.push(self.inner.index[&a.compose(b)] as u32);
                    }
                }
                Some(table)
            })
            .as_ref()
    }

    /// Whether both handles describe the same permutation group.
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.degree() == other.degree() && self.elements() == other.elements())
    }

    /// Conjugacy classes as lists of element indices.
    ///
    /// The identity class comes first; classes are sorted by size, then by
    /// their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let gens = self.generator_indices();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[x] = id;
            let mut class = vec![x];
            let mut head = 0;
            while head < class.len() {
                let y = class[head];
                head += 1;
                for &s in &gens {
                    let z = self.conj(s, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Order of element `g`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            members: (0..self.order()).collect(),
            gens: self.generator_indices(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            members: vec![Self::IDENTITY],
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != Self::IDENTITY).collect();
        gens.sort_unstable();
        gens.dedup();
        let members = self.closure_members(&gens);
        Subgroup {
            parent: self.clone(),
            members,
            gens,
        }
    }

    pub(crate) fn closure_members(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[Self::IDENTITY] = true;
        let mut members = vec![Self::IDENTITY];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Normalizer `{g : g H g^-1 = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.parent.same_as(self) {
            return Err(Error::NotASubgroup("subgroup belongs to a different group".into()));
        }
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        Ok(Subgroup::from_sorted_members(self.clone(), members))
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.inner.generators)
            .finish()
    }
}

/// A subgroup, stored as sorted element indices of its parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    gens: Vec<usize>,
}

impl Subgroup {
    /// Validates closure of an arbitrary member list.
    pub fn from_members(parent: FiniteGroup, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= parent.order()) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        if members.first() != Some(&FiniteGroup::IDENTITY) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let sub = Subgroup::from_sorted_members(parent, members);
        for &a in &sub.members {
            for &b in &sub.members {
                if !sub.contains(sub.parent.mul(a, b)) {
                    return Err(Error::NotASubgroup("not closed under composition".into()));
                }
            }
        }
        Ok(sub)
    }

    /// Trusted constructor: `members` must be a sorted subgroup.
    pub(crate) fn from_sorted_members(parent: FiniteGroup, members: Vec<usize>) -> Subgroup {
        let gens = greedy_generators(&parent, &members);
        Subgroup {
            parent,
            members,
            gens,
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// A generating set (element indices of the parent).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.len() <= other.members.len() && self.gens.iter().all(|&g| other.contains(g))
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        let mut members: Vec<usize> = self.members.iter().map(|&x| p.conj(g, x)).collect();
        members.sort_unstable();
        let mut gens: Vec<usize> = self.gens.iter().map(|&x| p.conj(g, x)).collect();
        gens.sort_unstable();
        Subgroup {
            parent: p.clone(),
            members,
            gens,
        }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self.members.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup::from_sorted_members(self.parent.clone(), members)
    }

    /// Subgroup of elements of `self` satisfying `keep`; `keep` must select a subgroup.
    pub(crate) fn filter(&self, keep: impl Fn(usize) -> bool) -> Subgroup {
        let members: Vec<usize> = self.members.iter().copied().filter(|&g| keep(g)).collect();
        Subgroup::from_sorted_members(self.parent.clone(), members)
    }

    /// The subgroup as a permutation group in its own right (same degree).
    pub fn to_group(&self) -> FiniteGroup {
        let p = &self.parent;
        let generators = self.gens.iter().map(|&g| p.element(g).clone()).collect();
        let elements = self.members.iter().map(|&g| p.element(g).clone()).collect();
        FiniteGroup::from_closed(p.degree(), generators, elements)
    }

    /// Bitset key over the parent's elements.
    pub fn key(&self) -> Vec<u64> {
        member_key(self.parent.order(), &self.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .finish()
    }
}

pub(crate) fn member_key(order: usize, members: &[usize]) -> Vec<u64> {
    let mut key = vec![0u64; order.div_ceil(64)];
    for &m in members {
        key[m / 64] |= 1 << (m % 64);
    }
    key
}

fn greedy_generators(parent: &FiniteGroup, members: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![FiniteGroup::IDENTITY];
    for &m in members {
        if span.binary_search(&m).is_err() {
            gens.push(m);
            span = parent.closure_members(&gens);
            if span.len() == members.len() {
                break;
            }
        }
    }
    gens
}
