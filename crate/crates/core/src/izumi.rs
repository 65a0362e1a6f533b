//! Signed expansion of subgroup/subset terms and its certificates, on index data only.
//!
//! A term `(H, T)` pairs a subgroup with a subset of `Z` that it stabilizes
//! setwise. Its full expansion is the orbit decomposition of
//! `{(gH, S) : S ⊇ gT}`; the one-step expansion splits off the orbit with
//! `S = gT` and keeps the strictly larger `S` as a tail. Iterating the tails
//! produces the certificate lists `P+` (even rounds) and `P-` (odd rounds).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::gsets::GSet;

/// A canonical pair `(H, T)`: member indices of `H` and sorted points `T`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IzumiTerm {
    pub subgroup: Vec<usize>,
    pub subset: Vec<usize>,
}

impl fmt::Display for IzumiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.subgroup.iter().map(|x| x.to_string()).collect();
        let t: Vec<String> = self.subset.iter().map(|x| x.to_string()).collect();
        write!(f, "([{}], {{{}}})", h.join(","), t.join(","))
    }
}

/// Terms with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermMultiset {
    entries: BTreeMap<IzumiTerm, u64>,
}

impl TermMultiset {
    pub fn new() -> TermMultiset {
        TermMultiset::default()
    }

    pub fn singleton(t: IzumiTerm) -> TermMultiset {
        let mut m = TermMultiset::new();
        m.insert(t, 1);
        m
    }

    pub fn insert(&mut self, t: IzumiTerm, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(t).or_insert(0) += multiplicity;
        }
    }

    /// Removes one copy; returns whether the term was present.
    pub fn remove_one(&mut self, t: &IzumiTerm) -> bool {
        match self.entries.get_mut(t) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.entries.remove(t);
                true
            }
            None => false,
        }
    }

    pub fn extend(&mut self, other: &TermMultiset) {
        for (t, &m) in &other.entries {
            self.insert(t.clone(), m);
        }
    }

    pub fn multiplicity(&self, t: &IzumiTerm) -> u64 {
        self.entries.get(t).copied().unwrap_or(0)
    }

    /// Number of distinct terms.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IzumiTerm, u64)> {
        self.entries.iter().map(|(t, &m)| (t, m))
    }

    /// `(self - other, other - self)`, each keeping only positive parts.
    pub fn difference(&self, other: &TermMultiset) -> (TermMultiset, TermMultiset) {
        let mut surplus = TermMultiset::new();
        let mut deficit = TermMultiset::new();
        for (t, &m) in &self.entries {
            surplus.insert(t.clone(), m.saturating_sub(other.multiplicity(t)));
        }
        for (t, &m) in &other.entries {
            deficit.insert(t.clone(), m.saturating_sub(self.multiplicity(t)));
        }
        (surplus, deficit)
    }

    fn to_entries(&self) -> Vec<CertificateEntry> {
        self.iter()
            .map(|(t, m)| CertificateEntry {
                subgroup: t.subgroup.clone(),
                subset: t.subset.clone(),
                multiplicity: m,
            })
            .collect()
    }
}

impl fmt::Display for TermMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(t, m)| if m == 1 { t.to_string() } else { format!("{m}x{t}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The lists `P+` and `P-` with the number of rounds that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IzumiCertificate {
    pub p_plus: TermMultiset,
    pub p_minus: TermMultiset,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub subgroup: Vec<usize>,
    pub subset: Vec<usize>,
    pub multiplicity: u64,
}

/// JSON shape of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub rounds: usize,
    pub p_plus: Vec<CertificateEntry>,
    pub p_minus: Vec<CertificateEntry>,
}

impl IzumiCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            rounds: self.rounds,
            p_plus: self.p_plus.to_entries(),
            p_minus: self.p_minus.to_entries(),
        }
    }

    /// Reads terms verbatim; [`Izumi::check_terms`] validates them.
    pub fn from_json(json: &CertificateJson) -> IzumiCertificate {
        let collect = |entries: &[CertificateEntry]| {
            let mut m = TermMultiset::new();
            for e in entries {
                m.insert(
                    IzumiTerm {
                        subgroup: e.subgroup.clone(),
                        subset: e.subset.clone(),
                    },
                    e.multiplicity,
                );
            }
            m
        };
        IzumiCertificate {
            p_plus: collect(&json.p_plus),
            p_minus: collect(&json.p_minus),
            rounds: json.rounds,
        }
    }
}

/// Outcome of [`Izumi::verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// Terms of `E+` not matched by `{(G, ∅)} ⊎ E-`.
    pub surplus: TermMultiset,
    /// Terms of `{(G, ∅)} ⊎ E-` missing from `E+`.
    pub deficit: TermMultiset,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            f.write_str("verified")
        } else {
            write!(f, "mismatch: surplus {}, deficit {}", self.surplus, self.deficit)
        }
    }
}

/// Expansion engine for a fixed G-set `Z`.
#[derive(Clone, Debug)]
pub struct Izumi {
    z: GSet,
}

impl Izumi {
    pub fn new(z: GSet) -> Result<Izumi> {
        if z.len() > 63 {
            return Err(Error::cap("points of Z for subset expansion", z.len() as u128, 63));
        }
        Ok(Izumi { z })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.z.group()
    }

    pub fn z(&self) -> &GSet {
        &self.z
    }

    /// The starting term `(G, ∅)`.
    pub fn root(&self) -> IzumiTerm {
        IzumiTerm {
            subgroup: (0..self.group().order()).collect(),
            subset: Vec::new(),
        }
    }

    fn image_mask(&self, g: usize, mask: u64) -> u64 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.z.act(g, p);
        }
        out
    }

    fn mask_of(&self, subset: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &p in subset {
            if p >= self.z.len() {
                return Err(Error::Internal(format!("point {p} is outside Z")));
            }
            mask |= 1 << p;
        }
        Ok(mask)
    }

    /// Least `(gHg^-1, gT)` over `g`; errors unless `H` stabilizes `T`.
    pub fn canonicalize(&self, h: &Subgroup, t: &[usize]) -> Result<IzumiTerm> {
        let g = self.group();
        if !h.parent().same_as(g) {
            return Err(Error::GroupMismatch("subgroup of a different group".into()));
        }
        let mask = self.mask_of(t)?;
        if h.generators().iter().any(|&x| self.image_mask(x, mask) != mask) {
            return Err(Error::NotStabilizing);
        }
        let mut best: Option<IzumiTerm> = None;
        for x in 0..g.order() {
            let conj = h.conjugate(x);
            let candidate = IzumiTerm {
                subgroup: conj.members().to_vec(),
                subset: mask_to_vec(self.image_mask(x, mask)),
            };
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        Ok(best.expect("group is nonempty"))
    }

    fn subgroup_of(&self, t: &IzumiTerm) -> Result<Subgroup> {
        Subgroup::from_members(self.group().clone(), t.subgroup.clone())
    }

    /// Checks that `t` is a valid canonical term.
    pub fn check_term(&self, t: &IzumiTerm) -> Result<()> {
        let h = self.subgroup_of(t)?;
        if !t.subset.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Internal(format!("subset of {t} is not sorted")));
        }
        let canonical = self.canonicalize(&h, &t.subset)?;
        if canonical != *t {
            return Err(Error::Internal(format!("{t} is not canonical; expected {canonical}")));
        }
        Ok(())
    }

    pub fn check_terms(&self, c: &IzumiCertificate) -> Result<()> {
        for (t, _) in c.p_plus.iter().chain(c.p_minus.iter()) {
            self.check_term(t)?;
        }
        Ok(())
    }

    /// Orbits of `{(gH, S) : S ⊇ gT}` (strict containment if `strict`),
    /// each giving the canonical term of its stabilizer and `S`.
    fn expand(&self, t: &IzumiTerm, strict: bool) -> Result<TermMultiset> {
        let g = self.group();
        let h = self.subgroup_of(t)?;
        let t_mask = self.mask_of(&t.subset)?;
        let npts = self.z.len();
        let index = h.index();
        Caps::check_points((index as u128) << npts)?;

        // left cosets of H, keyed by smallest element
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut coset_reps = Vec::with_capacity(index);
        for x in 0..g.order() {
            if coset_of[x] == usize::MAX {
                for &m in h.members() {
                    coset_of[g.mul(x, m)] = coset_reps.len();
                }
                coset_reps.push(x);
            }
        }

        let full = if npts == 64 { u64::MAX } else { (1u64 << npts) - 1 };
        let mut pairs: Vec<(usize, u64)> = Vec::new();
        for (c, &rep) in coset_reps.iter().enumerate() {
            let base = self.image_mask(rep, t_mask);
            let free = full & !base;
            let mut sub = free;
            loop {
                if !(strict && sub == 0) {
                    pairs.push((c, base | sub));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        let position: HashMap<(usize, u64), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let gens = g.generator_indices();
        let mut seen = vec![false; pairs.len()];
        let mut out = TermMultiset::new();
        let mut accounted = 0usize;
        for start in 0..pairs.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let (c, s) = pairs[orbit[head]];
                head += 1;
                for &x in &gens {
                    let image = (coset_of[g.mul(x, coset_reps[c])], self.image_mask(x, s));
                    let q = position[&image];
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            let &(c, s) = orbit
                .iter()
                .map(|&i| &pairs[i])
                .min_by_key(|&&(c, s)| (coset_reps[c], mask_to_vec(s)))
                .expect("orbit is nonempty");
            let rep = coset_reps[c];
            // stabilizer of (rep H, S) is rep H rep^-1 ∩ G_S
            let stab = h
                .conjugate(rep)
                .filter(|x| self.image_mask(x, s) == s);
            accounted += g.order() / stab.order();
            if accounted > pairs.len() || orbit.len() * stab.order() != g.order() {
                return Err(Error::Internal("orbit bookkeeping failed in expansion".into()));
            }
            out.insert(self.canonicalize(&stab, &mask_to_vec(s))?, 1);
        }
        if accounted != pairs.len() {
            return Err(Error::Internal("orbit sizes do not cover the index set".into()));
        }
        Ok(out)
    }

    /// Full expansion of the term `t`.
    pub fn expand_full(&self, t: &IzumiTerm) -> Result<TermMultiset> {
        self.expand(t, false)
    }

    /// `(t, tail)`: the tail collects the orbits with `S ⊋ gT`, all of which
    /// have strictly more points than `t`.
    pub fn expand_step(&self, t: &IzumiTerm) -> Result<(IzumiTerm, TermMultiset)> {
        let tail = self.expand(t, true)?;
        if tail.iter().any(|(u, _)| u.subset.len() <= t.subset.len()) {
            return Err(Error::Internal("tail term does not grow".into()));
        }
        Ok((t.clone(), tail))
    }

    /// Expands from `(G, ∅)` round by round until no tail remains.
    pub fn run_expansion(&self) -> Result<IzumiCertificate> {
        let mut p_plus = TermMultiset::new();
        let mut p_minus = TermMultiset::new();
        let mut current = TermMultiset::singleton(self.root());
        let mut round = 0;
        loop {
            if round % 2 == 0 {
                p_plus.extend(&current);
            } else {
                p_minus.extend(&current);
            }
            let mut next = TermMultiset::new();
            for (t, m) in current.iter() {
                let (_, tail) = self.expand_step(t)?;
                for (u, k) in tail.iter() {
                    next.insert(u.clone(), k * m);
                }
            }
            if next.is_empty() {
                break;
            }
            round += 1;
            if round > self.z.len() {
                return Err(Error::Internal("expansion did not terminate within |Z| rounds".into()));
            }
            current = next;
        }
        Ok(IzumiCertificate {
            p_plus,
            p_minus,
            rounds: round,
        })
    }

    /// Checks `E+ = {(G, ∅)} ⊎ E-`, where `E±` are the full expansions of `P±`.
    pub fn verify_certificate(&self, c: &IzumiCertificate) -> Result<Verification> {
        let expand_all = |p: &TermMultiset| -> Result<TermMultiset> {
            let mut e = TermMultiset::new();
            for (t, m) in p.iter() {
                for (u, k) in self.expand_full(t)?.iter() {
                    e.insert(u.clone(), k * m);
                }
            }
            Ok(e)
        };
        let e_plus = expand_all(&c.p_plus)?;
        let mut rhs = expand_all(&c.p_minus)?;
        rhs.insert(self.root(), 1);
        let (surplus, deficit) = e_plus.difference(&rhs);
        Ok(Verification {
            ok: surplus.is_empty() && deficit.is_empty(),
            surplus,
            deficit,
        })
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;

    fn c2_regular() -> Izumi {
        let c2 = named::cyclic(2).unwrap();
        Izumi::new(GSet::regular(&c2).unwrap()).unwrap()
    }

    fn term(h: &[usize], t: &[usize]) -> IzumiTerm {
        IzumiTerm {
            subgroup: h.to_vec(),
            subset: t.to_vec(),
        }
    }

    fn set(terms: &[IzumiTerm]) -> TermMultiset {
        let mut m = TermMultiset::new();
        for t in terms {
            m.insert(t.clone(), 1);
        }
        m
    }

    #[test]
    fn canonical_forms() {
        let iz = c2_regular();
        let g = iz.group().clone();
        assert_eq!(iz.canonicalize(&g.whole(), &[]).unwrap(), term(&[0, 1], &[]));
        let one = iz.canonicalize(&g.trivial_subgroup(), &[1]).unwrap();
        assert_eq!(one, term(&[0], &[0]));
        assert_eq!(iz.canonicalize(&g.trivial_subgroup(), &one.subset).unwrap(), one);
        assert!(matches!(iz.canonicalize(&g.whole(), &[0]), Err(Error::NotStabilizing)));
    }

    #[test]
    fn full_and_step_expansions() {
        let iz = c2_regular();
        let (g, e, z) = (term(&[0, 1], &[]), term(&[0], &[0]), [0, 1]);
        assert_eq!(
            iz.expand_full(&g).unwrap(),
            set(&[g.clone(), e.clone(), term(&[0, 1], &z)])
        );
        assert_eq!(iz.expand_full(&e).unwrap(), set(&[e.clone(), term(&[0], &z)]));
        assert_eq!(iz.expand_full(&term(&[0, 1], &z)).unwrap(), set(&[term(&[0, 1], &z)]));

        let (head, tail) = iz.expand_step(&g).unwrap();
        assert_eq!(head, g);
        assert_eq!(tail, set(&[e.clone(), term(&[0, 1], &z)]));
        assert_eq!(iz.expand_step(&e).unwrap().1, set(&[term(&[0], &z)]));
        assert!(iz.expand_step(&term(&[0], &z)).unwrap().1.is_empty());
    }

    #[test]
    fn c2_regular_certificate() {
        let iz = c2_regular();
        let c = iz.run_expansion().unwrap();
        assert_eq!(c.rounds, 2);
        assert_eq!(c.p_plus, set(&[term(&[0, 1], &[]), term(&[0], &[0, 1])]));
        assert_eq!(c.p_minus, set(&[term(&[0], &[0]), term(&[0, 1], &[0, 1])]));
        assert!(iz.verify_certificate(&c).unwrap().ok);

        let mut broken = c.clone();
        broken.p_plus.remove_one(&term(&[0], &[0, 1]));
        let v = iz.verify_certificate(&broken).unwrap();
        assert!(!v.ok);
        assert_eq!(v.deficit, set(&[term(&[0], &[0, 1])]));
        assert!(v.surplus.is_empty());
    }

    #[test]
    fn degenerate_sets() {
        let c2 = named::cyclic(2).unwrap();
        let iz = Izumi::new(GSet::trivial(&c2, 0).unwrap()).unwrap();
        let c = iz.run_expansion().unwrap();
        assert_eq!((c.rounds, c.p_plus.total(), c.p_minus.total()), (0, 1, 0));
        assert!(iz.verify_certificate(&c).unwrap().ok);

        let one = named::cyclic(1).unwrap();
        let iz = Izumi::new(GSet::trivial(&one, 1).unwrap()).unwrap();
        let c = iz.run_expansion().unwrap();
        assert_eq!(c.rounds, 1);
        assert_eq!(c.p_plus, set(&[term(&[0], &[])]));
        assert_eq!(c.p_minus, set(&[term(&[0], &[0])]));
    }

    #[test]
    fn json_round_trip() {
        let iz = c2_regular();
        let c = iz.run_expansion().unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back = IzumiCertificate::from_json(&serde_json::from_str(&text).unwrap());
        assert_eq!(back, c);
        iz.check_terms(&back).unwrap();
        let bad = IzumiCertificate {
            p_plus: set(&[term(&[0], &[1])]),
            ..c
        };
        assert!(iz.check_terms(&bad).is_err());
    }
}
