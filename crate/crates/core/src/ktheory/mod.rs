//! Decomposition formulas for the algebraic K-theory of wreath products and
//! Bernoulli shifts, as formal sums of leaves `K_*(R[Γ])[1/n]`.

mod decompose;
mod slmat;

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{wreath_product, FiniteGroup, IsoClass};

pub use decompose::{
    f_c_sets, semisimple_decompose, wreath_blocks, wreath_decompose, wreath_decompose_infinite_cyclic,
    wreath_decompose_subgroup_form, FBlock,
};
pub use slmat::{determinant, sl_completion, DimVector};

/// Group of a leaf, up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LeafGroup {
    Finite(IsoClass),
    InfiniteCyclic,
}

impl LeafGroup {
    pub fn of(g: &FiniteGroup) -> LeafGroup {
        LeafGroup::Finite(IsoClass::of(g))
    }

    pub fn label(&self) -> String {
        match self {
            LeafGroup::Finite(c) => c.name(),
            LeafGroup::InfiniteCyclic => "Z".to_string(),
        }
    }

    fn sort_key(&self) -> (bool, Reverse<usize>, Option<&IsoClass>) {
        match self {
            LeafGroup::InfiniteCyclic => (false, Reverse(usize::MAX), None),
            LeafGroup::Finite(c) => (true, Reverse(c.order()), Some(c)),
        }
    }
}

/// What the leaf is the K-theory of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LeafKind {
    /// The group ring `R[Γ]`.
    GroupRing,
    /// `I_R[H]^{⊗F} ⋊ Γ` with `factors = |F|`, before refinement.
    AugmentedCrossed { factors: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLeaf {
    pub group: LeafGroup,
    pub kind: LeafKind,
    pub multiplicity: u64,
    /// The integer made invertible; 1 means no localization.
    pub inverted: u64,
}

impl KLeaf {
    pub fn group_ring(group: LeafGroup) -> KLeaf {
        KLeaf {
            group,
            kind: LeafKind::GroupRing,
            multiplicity: 1,
            inverted: 1,
        }
    }

    fn same_slot(&self, other: &KLeaf) -> bool {
        self.group == other.group && self.kind == other.kind && self.inverted == other.inverted
    }
}

impl fmt::Display for KLeaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.group.label();
        match self.kind {
            LeafKind::GroupRing => write!(f, "K(R[{g}])")?,
            LeafKind::AugmentedCrossed { factors } => write!(f, "K(I^{factors} x| {g})")?,
        }
        if self.inverted != 1 {
            write!(f, "[1/{}]", self.inverted)?;
        }
        if self.multiplicity != 1 {
            write!(f, " x{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// Which formula produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    WreathOrbits,
    WreathOrbitsUnrefined,
    WreathSubgroups,
    WreathInfiniteCyclic,
    Semisimple,
}

/// A formal direct sum of leaves, merged and deterministically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KDecomposition {
    leaves: Vec<KLeaf>,
    pub complete: bool,
    pub truncation: Option<usize>,
    pub provenance: Provenance,
}

impl KDecomposition {
    pub fn new(leaves: Vec<KLeaf>, complete: bool, truncation: Option<usize>, provenance: Provenance) -> Self {
        let mut merged: Vec<KLeaf> = Vec::new();
        for leaf in leaves {
            match merged.iter_mut().find(|m| m.same_slot(&leaf)) {
                Some(m) => m.multiplicity += leaf.multiplicity,
                None => merged.push(leaf),
            }
        }
        merged.sort_by(|a, b| {
            (a.group.sort_key(), a.kind, a.inverted).cmp(&(b.group.sort_key(), b.kind, b.inverted))
        });
        KDecomposition {
            leaves: merged,
            complete,
            truncation,
            provenance,
        }
    }

    pub fn leaves(&self) -> &[KLeaf] {
        &self.leaves
    }

    /// Sum of multiplicities.
    pub fn leaf_count(&self) -> u64 {
        self.leaves.iter().map(|l| l.multiplicity).sum()
    }

    /// Leaves with the localization tag reset to 1.
    pub fn without_localization(&self) -> Vec<KLeaf> {
        let stripped = self
            .leaves
            .iter()
            .map(|l| KLeaf { inverted: 1, ..l.clone() })
            .collect();
        KDecomposition::new(stripped, self.complete, self.truncation, self.provenance).leaves
    }

    /// Whether every leaf of `self` occurs in `other` with at least the
    /// same multiplicity.
    pub fn is_sub_multiset_of(&self, other: &KDecomposition) -> bool {
        self.leaves.iter().all(|l| {
            other
                .leaves
                .iter()
                .find(|m| m.same_slot(l))
                .is_some_and(|m| m.multiplicity >= l.multiplicity)
        })
    }

    pub fn to_json(&self, with_rank: bool) -> Result<DecompositionJson> {
        let k0_rank = if with_rank { Some(k0_rank(self)?) } else { None };
        Ok(DecompositionJson {
            provenance: self.provenance,
            complete: self.complete,
            truncation: self.truncation,
            leaves: self
                .leaves
                .iter()
                .map(|l| LeafJson {
                    group: match &l.group {
                        LeafGroup::Finite(c) => GroupJson {
                            order: Some(c.order()),
                            class_count: Some(c.class_count()),
                            label: c.name(),
                        },
                        LeafGroup::InfiniteCyclic => GroupJson {
                            order: None,
                            class_count: None,
                            label: "Z".into(),
                        },
                    },
                    kind: l.kind,
                    multiplicity: l.multiplicity,
                    inverted: l.inverted,
                })
                .collect(),
            k0_rank,
        })
    }
}

impl fmt::Display for KDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.leaves.iter().map(|l| l.to_string()).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionJson {
    pub provenance: Provenance,
    pub complete: bool,
    pub truncation: Option<usize>,
    pub leaves: Vec<LeafJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0_rank: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafJson {
    pub group: GroupJson,
    pub kind: LeafKind,
    pub multiplicity: u64,
    pub inverted: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupJson {
    pub order: Option<usize>,
    pub class_count: Option<usize>,
    pub label: String,
}

/// Conjugacy classes of `H` other than the identity class.
pub fn nontrivial_class_count(h: &FiniteGroup) -> usize {
    h.class_count() - 1
}

/// Rank of `K_0` over an algebraically closed field of characteristic 0:
/// multiplicity times class count, summed over leaves.
pub fn k0_rank(d: &KDecomposition) -> Result<u64> {
    let mut rank = 0;
    for leaf in &d.leaves {
        match (&leaf.group, leaf.kind) {
            (LeafGroup::Finite(c), LeafKind::GroupRing) => rank += leaf.multiplicity * c.class_count() as u64,
            (LeafGroup::InfiniteCyclic, _) => {
                return Err(Error::UnsupportedLeaf("K_0 rank of an infinite cyclic leaf".into()))
            }
            (_, LeafKind::AugmentedCrossed { .. }) => {
                return Err(Error::UnsupportedLeaf("K_0 rank of an unrefined leaf".into()))
            }
        }
    }
    Ok(rank)
}

/// Conjugacy classes of `H wr G` by conjugating each new element with every
/// group element.
pub fn wreath_conjugacy_oracle(h: &FiniteGroup, g: &FiniteGroup) -> Result<usize> {
    let w = wreath_product(h, g)?;
    let mut assigned = vec![false; w.order()];
    let mut classes = 0;
    for x in 0..w.order() {
        if assigned[x] {
            continue;
        }
        classes += 1;
        for y in 0..w.order() {
            assigned[w.conj(y, x)] = true;
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    fn leaf(g: &FiniteGroup, m: u64) -> KLeaf {
        KLeaf {
            multiplicity: m,
            ..KLeaf::group_ring(LeafGroup::of(g))
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(nontrivial_class_count(&named::cyclic(2).unwrap()), 1);
        assert_eq!(nontrivial_class_count(&named::cyclic(1).unwrap()), 0);
        assert_eq!(nontrivial_class_count(&named::symmetric(3).unwrap()), 2);
    }

    #[test]
    fn ranks() {
        let (c1, c2, c3) = (
            named::cyclic(1).unwrap(),
            named::cyclic(2).unwrap(),
            named::cyclic(3).unwrap(),
        );
        let d = KDecomposition::new(vec![leaf(&c2, 1), leaf(&c1, 1), leaf(&c2, 1)], true, None, Provenance::WreathOrbits);
        assert_eq!(d.leaves().len(), 2);
        assert_eq!(k0_rank(&d).unwrap(), 5);
        let empty = KDecomposition::new(vec![], true, None, Provenance::WreathOrbits);
        assert_eq!(k0_rank(&empty).unwrap(), 0);
        let d = KDecomposition::new(vec![leaf(&c3, 2), leaf(&c1, 2)], true, None, Provenance::WreathOrbits);
        assert_eq!(k0_rank(&d).unwrap(), 8);
        assert_eq!(d.to_string(), "K(R[C3]) x2 + K(R[1]) x2");

        let z = KDecomposition::new(
            vec![KLeaf::group_ring(LeafGroup::InfiniteCyclic)],
            false,
            Some(1),
            Provenance::WreathInfiniteCyclic,
        );
        assert!(matches!(k0_rank(&z), Err(Error::UnsupportedLeaf(_))));
    }

    #[test]
    fn conjugacy_oracle() {
        let c2 = named::cyclic(2).unwrap();
        let c3 = named::cyclic(3).unwrap();
        let s3 = named::symmetric(3).unwrap();
        assert_eq!(wreath_conjugacy_oracle(&c2, &c2).unwrap(), 5);
        assert_eq!(wreath_conjugacy_oracle(&c2, &c3).unwrap(), 8);
        assert_eq!(wreath_conjugacy_oracle(&named::cyclic(1).unwrap(), &s3).unwrap(), 3);
    }
}
