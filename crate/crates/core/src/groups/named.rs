//! Standard small groups as permutation groups.

use crate::error::{Error, Result};

use super::group::FiniteGroup;
use super::perm::Permutation;

fn invalid(msg: &str) -> Error {
    Error::InvalidPermutation(msg.to_string())
}

/// Cyclic group of order `k` acting regularly on `k` points.
pub fn cyclic(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(invalid("cyclic group needs k >= 1"));
    }
    let gens = if k == 1 {
        vec![]
    } else {
        vec![Permutation::new((0..k).map(|i| (i + 1) % k).collect())?]
    };
    FiniteGroup::generate(k, gens)
}

/// Symmetric group on `k` points.
pub fn symmetric(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(invalid("symmetric group needs k >= 1"));
    }
    let mut gens = Vec::new();
    if k >= 2 {
        gens.push(Permutation::new((0..k).map(|i| (i + 1) % k).collect())?);
        gens.push(Permutation::from_cycles(k, &[vec![0, 1]])?);
    }
    FiniteGroup::generate(k, gens)
}

/// Alternating group on `k` points, generated by the 3-cycles `(0 1 i)`.
pub fn alternating(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(invalid("alternating group needs k >= 1"));
    }
    let gens = (2..k)
        .map(|i| Permutation::from_cycles(k, &[vec![0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(k, gens)
}

/// Dihedral group of order `2k`.
///
/// For `k >= 3` it acts on the vertices of a `k`-gon; `D1` is cyclic of
/// order 2 and `D2` is the Klein four-group.
pub fn dihedral(k: usize) -> Result<FiniteGroup> {
    match k {
        0 => Err(invalid("dihedral group needs k >= 1")),
        1 => cyclic(2),
        2 => klein(),
        _ => {
            let rotation = Permutation::new((0..k).map(|i| (i + 1) % k).collect())?;
            let reflection = Permutation::new((0..k).map(|i| (k - i) % k).collect())?;
            FiniteGroup::generate(k, vec![rotation, reflection])
        }
    }
}

/// Klein four-group acting regularly on 4 points.
pub fn klein() -> Result<FiniteGroup> {
    FiniteGroup::generate(
        4,
        vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
        ],
    )
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for s in a.generators() {
        gens.push(Permutation::new(s.images().chain(da..da + db).collect())?);
    }
    for t in b.generators() {
        gens.push(Permutation::new((0..da).chain(t.images().map(|x| x + da)).collect())?);
    }
    FiniteGroup::generate(da + db, gens)
}

/// Quaternion group of order 8 in its left regular representation.
pub fn quaternion() -> Result<FiniteGroup> {
    // point 4*s + u encodes (-1)^s * [1, i, j, k][u]
    fn unit_mul(a: usize, b: usize) -> (usize, usize) {
        // (sign, unit) of e_a * e_b
        const TABLE: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        TABLE[a][b]
    }
    let left = |u: usize| -> Result<Permutation> {
        let images = (0..8)
            .map(|x| {
                let (s, v) = (x / 4, x % 4);
                let (t, w) = unit_mul(u, v);
                4 * ((s + t) % 2) + w
            })
            .collect();
        Permutation::new(images)
    };
    FiniteGroup::generate(8, vec![left(1)?, left(2)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_class_counts() {
        let cases = [
            (cyclic(1).unwrap(), 1, 1),
            (cyclic(6).unwrap(), 6, 6),
            (symmetric(3).unwrap(), 6, 3),
            (symmetric(4).unwrap(), 24, 5),
            (alternating(4).unwrap(), 12, 4),
            (dihedral(1).unwrap(), 2, 2),
            (dihedral(2).unwrap(), 4, 4),
            (dihedral(4).unwrap(), 8, 5),
            (dihedral(5).unwrap(), 10, 4),
            (dihedral(8).unwrap(), 16, 7),
            (klein().unwrap(), 4, 4),
            (quaternion().unwrap(), 8, 5),
        ];
        for (g, order, classes) in cases {
            assert_eq!(g.order(), order);
            assert_eq!(g.class_count(), classes, "{g:?}");
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion().unwrap();
        let involutions = (1..8).filter(|&g| q.element_order(g) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn zero_parameters_rejected() {
        assert!(cyclic(0).is_err());
        assert!(symmetric(0).is_err());
        assert!(dihedral(0).is_err());
    }
}
