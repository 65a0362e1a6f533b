use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{all_subgroups, FiniteGroup, Subgroup, SubgroupClassList};
use crate::gsets::{binomial, GSet, PointLabel};

use super::{nontrivial_class_count, DimVector, KDecomposition, KLeaf, LeafGroup, LeafKind, Provenance};

/// One orbit `[F]` of `G` on its finite subsets, with both readings of its
/// summand.
#[derive(Clone, Debug)]
pub struct FBlock {
    /// Smallest subset in the orbit, as element indices of `G`.
    pub subset: Vec<usize>,
    pub stabilizer: Subgroup,
    /// `K(I_R[H]^{⊗F} ⋊ G_F)`.
    pub unrefined: KLeaf,
    /// One `K(R[G_S])` per `G_F`-orbit `[S]` on `{1..n}^F`.
    pub refined: Vec<KLeaf>,
}

fn subset_of(label: &PointLabel) -> Vec<usize> {
    match label {
        PointLabel::Subset(s) => s.clone(),
        _ => unreachable!("finite-subset G-sets carry subset labels"),
    }
}

/// Leaves `K(R[Γ_S])` for the orbits of `Γ = stab` on `{1..n}^F`, `F` being a
/// `stab`-invariant set of points of `z`.
fn function_orbit_leaves(z: &GSet, stab: &Subgroup, f: &[usize], n: usize, inverted: u64) -> Result<Vec<KLeaf>> {
    let local = z.restrict(stab, f)?;
    let functions = local.functions(n)?;
    let dec = functions.orbits_and_stabilizers()?;
    Ok(dec
        .stabilizers
        .iter()
        .map(|s| KLeaf {
            inverted,
            ..KLeaf::group_ring(LeafGroup::of(&s.to_group()))
        })
        .collect())
}

/// Per-orbit data for the wreath decomposition over `FIN(G)`.
pub fn wreath_blocks(h: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<FBlock>> {
    let n = nontrivial_class_count(h);
    let regular = GSet::regular(g)?;
    let fin = regular.finite_subsets(g.order())?;
    let dec = fin.orbits_and_stabilizers()?;
    let mut blocks = Vec::with_capacity(dec.len());
    for (&rep, stab) in dec.reps.iter().zip(&dec.stabilizers) {
        let subset = subset_of(fin.label(rep));
        let refined = function_orbit_leaves(&regular, stab, &subset, n, 1)?;
        let unrefined = KLeaf {
            kind: LeafKind::AugmentedCrossed { factors: subset.len() },
            ..KLeaf::group_ring(LeafGroup::of(&stab.to_group()))
        };
        blocks.push(FBlock {
            subset,
            stabilizer: stab.clone(),
            unrefined,
            refined,
        });
    }
    Ok(blocks)
}

/// Sum over `[F] ∈ G\FIN(G)`; with `refine`, each summand is split over
/// `G_F`-orbits of `{1..n}^F`, `n` the number of nontrivial classes of `H`.
pub fn wreath_decompose(h: &FiniteGroup, g: &FiniteGroup, refine: bool) -> Result<KDecomposition> {
    let blocks = wreath_blocks(h, g)?;
    let (leaves, provenance) = if refine {
        (
            blocks.into_iter().flat_map(|b| b.refined).collect(),
            Provenance::WreathOrbits,
        )
    } else {
        (
            blocks.into_iter().map(|b| b.unrefined).collect(),
            Provenance::WreathOrbitsUnrefined,
        )
    };
    Ok(KDecomposition::new(leaves, true, None, provenance))
}

/// Right cosets `Cg` of `c`, as sorted member lists ordered by smallest
/// element, together with the coset index of every element.
fn right_cosets(g: &FiniteGroup, c: &Subgroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = c.members().iter().map(|&m| g.mul(m, x)).collect();
        members.sort_unstable();
        for &y in &members {
            coset_of[y] = cosets.len();
        }
        cosets.push(members);
    }
    (cosets, coset_of)
}

fn preimage(cosets: &[Vec<usize>], x: u64) -> Vec<usize> {
    let mut out: Vec<usize> = (0..cosets.len())
        .filter(|&i| x >> i & 1 == 1)
        .flat_map(|i| cosets[i].iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Nonempty `X ⊆ C\G` whose preimage in `G` is not a union of right cosets
/// of any subgroup strictly containing `C`. Sets are bitmasks over the
/// right cosets of `C` ordered by smallest element.
pub fn f_c_sets(g: &FiniteGroup, c: &Subgroup) -> Result<Vec<u64>> {
    let (cosets, _) = right_cosets(g, c);
    let m = cosets.len();
    if m > 63 {
        return Err(Error::cap("right cosets for subset enumeration", m as u128, 63));
    }
    Caps::check_points(1u128 << m)?;
    let larger: Vec<Subgroup> = all_subgroups(g)?
        .into_iter()
        .filter(|d| d.order() > c.order() && c.is_subgroup_of(d))
        .collect();
    let mut out = Vec::new();
    for x in 1..(1u64 << m) {
        let cx = preimage(&cosets, x);
        let mut in_cx = vec![false; g.order()];
        for &y in &cx {
            in_cx[y] = true;
        }
        let excluded = larger
            .iter()
            .any(|d| d.generators().iter().all(|&s| cx.iter().all(|&y| in_cx[g.mul(s, y)])));
        if !excluded {
            out.push(x);
        }
    }
    Ok(out)
}

/// `K(R[G])` plus, for each subgroup class `[C]`, each `N_C`-orbit `[X]` on
/// `F(C)` and each `C`-orbit `[S]` on `{1..n}^{C·X}`, a leaf `K(R[C_S])`.
pub fn wreath_decompose_subgroup_form(h: &FiniteGroup, g: &FiniteGroup) -> Result<KDecomposition> {
    let n = nontrivial_class_count(h);
    let regular = GSet::regular(g)?;
    let classes = SubgroupClassList::new(g)?;
    let mut leaves = vec![KLeaf::group_ring(LeafGroup::of(g))];
    for c in classes.reps() {
        let normalizer = g.normalizer(c)?;
        let (cosets, coset_of) = right_cosets(g, c);
        let sets = f_c_sets(g, c)?;
        let position: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        // x ∈ N_C sends Cy to C(xy)
        let translate = |x: usize, set: u64| -> u64 {
            (0..cosets.len())
                .filter(|&i| set >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << coset_of[g.mul(x, cosets[i][0])])
        };
        let mut seen = vec![false; sets.len()];
        for start in 0..sets.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &x in normalizer.generators() {
                    let j = *position
                        .get(&translate(x, sets[i]))
                        .ok_or_else(|| Error::Internal("normalizer does not preserve F(C)".into()))?;
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            let cx = preimage(&cosets, sets[start]);
            leaves.extend(function_orbit_leaves(&regular, c, &cx, n, 1)?);
        }
    }
    Ok(KDecomposition::new(leaves, true, None, Provenance::WreathSubgroups))
}

/// Truncated decomposition for `G = Z`: `K(R[Z])` for `F = ∅`, and for every
/// translation class of nonempty `F` of diameter at most `bound` (canonical
/// form: smallest point 0) one trivial leaf per function `F -> {1..n}`.
pub fn wreath_decompose_infinite_cyclic(h: &FiniteGroup, bound: usize) -> Result<KDecomposition> {
    let n = nontrivial_class_count(h) as u128;
    let mut trivial: u128 = 0;
    // subsets of {0..bound} containing 0 with s points: binomial(bound, s - 1)
    for s in 1..=bound + 1 {
        let functions = n.checked_pow(s as u32).unwrap_or(u128::MAX);
        trivial = trivial.saturating_add(binomial(bound as u128, s as u128 - 1).saturating_mul(functions));
    }
    let multiplicity = u64::try_from(trivial).map_err(|_| Error::cap("leaves", trivial, u64::MAX as u128))?;
    let mut leaves = vec![KLeaf::group_ring(LeafGroup::InfiniteCyclic)];
    if multiplicity > 0 {
        leaves.push(KLeaf {
            multiplicity,
            ..KLeaf::group_ring(LeafGroup::of(&FiniteGroup::trivial(1)))
        });
    }
    Ok(KDecomposition::new(
        leaves,
        false,
        Some(bound),
        Provenance::WreathInfiniteCyclic,
    ))
}

/// Truncation of the Bernoulli-shift decomposition: orbits `[F]` of
/// subsets of `z_spec` with at most `bound` points, split over
/// `G_F`-orbits on `{1..k}^F`, every leaf localized at `gcd(dims)`.
pub fn semisimple_decompose(dims: &DimVector, z_spec: &GSet, bound: usize) -> Result<KDecomposition> {
    let n = dims.gcd();
    let k = dims.k();
    let fin = z_spec.finite_subsets(bound)?;
    let dec = fin.orbits_and_stabilizers()?;
    let mut leaves = Vec::new();
    for (&rep, stab) in dec.reps.iter().zip(&dec.stabilizers) {
        let subset = subset_of(fin.label(rep));
        leaves.extend(function_orbit_leaves(z_spec, stab, &subset, k, n)?);
    }
    Ok(KDecomposition::new(leaves, false, Some(bound), Provenance::Semisimple))
}
