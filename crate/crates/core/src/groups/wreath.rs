use crate::caps::Caps;
use crate::error::Result;

use super::group::FiniteGroup;
use super::perm::Permutation;

/// Permutation representation of `H wr G = H^G ⋊ G`.
///
/// Acts on `|H| * |G|` points: one block per element of `G`, with `H`
/// acting by left multiplication inside the identity block and `G` permuting
/// the blocks by left translation. Point `b * |H| + h` is element `h` of
/// block `b`.
pub fn wreath_product(h: &FiniteGroup, g: &FiniteGroup) -> Result<FiniteGroup> {
    let (nh, ng) = (h.order(), g.order());
    let expected = (nh as u128)
        .checked_pow(ng as u32)
        .and_then(|x| x.checked_mul(ng as u128))
        .unwrap_or(u128::MAX);
    Caps::check_group_order(expected)?;

    let degree = nh * ng;
    let mut gens = Vec::new();
    for s in h.generator_indices() {
        // s acts in block of the identity only
        let images = (0..degree)
            .map(|p| {
                let (b, x) = (p / nh, p % nh);
                if b == FiniteGroup::IDENTITY {
                    h.mul(s, x)
                } else {
                    p
                }
            })
            .collect();
        gens.push(Permutation::new(images)?);
    }
    for t in g.generator_indices() {
        let images = (0..degree)
            .map(|p| {
                let (b, x) = (p / nh, p % nh);
                g.mul(t, b) * nh + x
            })
            .collect();
        gens.push(Permutation::new(images)?);
    }
    let w = FiniteGroup::generate(degree, gens)?;
    debug_assert_eq!(w.order() as u128, expected);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    #[test]
    fn wreath_orders() {
        let c2 = named::cyclic(2).unwrap();
        let c3 = named::cyclic(3).unwrap();
        let w = wreath_product(&c2, &c2).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.class_count(), 5);
        let w = wreath_product(&c2, &c3).unwrap();
        assert_eq!(w.order(), 24);
        let s3 = named::symmetric(3).unwrap();
        let w = wreath_product(&named::cyclic(1).unwrap(), &s3).unwrap();
        assert_eq!(w.order(), 6);
        assert_eq!(w.class_count(), 3);
    }

    #[test]
    fn wreath_cap() {
        let c2 = named::cyclic(2).unwrap();
        let c4 = named::cyclic(4).unwrap();
        let res = Caps { group_order: 63, ..Caps::default() }.scoped(|| wreath_product(&c2, &c4));
        assert!(matches!(res, Err(crate::Error::ResourceCap { requested: 64, .. })));
    }
}
