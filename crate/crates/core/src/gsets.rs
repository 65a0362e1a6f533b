//! Finite G-sets with explicit action tables.
//!
//! Points always carry a canonical label and are stored sorted by label, so
//! "smallest label" and "smallest index" coincide. Orbit decompositions
//! verify orbit-stabilizer and Burnside's counting lemma every time they run.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::Ordering;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup, SubgroupClassList};

/// Canonical label of a point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    /// A plain index: an element, the smallest element of a coset, or a
    /// point of a trivial set.
    Atom(usize),
    /// Sorted point indices of an underlying G-set.
    Subset(Vec<usize>),
    /// Values (0-based) of a function on the points of an underlying G-set.
    Function(Vec<usize>),
    /// Point of piece `.0` of a disjoint union.
    Tagged(usize, Box<PointLabel>),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Atom(i) => write!(f, "{i}"),
            PointLabel::Subset(s) => {
                let body: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", body.join(","))
            }
            PointLabel::Function(v) => {
                let body: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "({})", body.join(","))
            }
            PointLabel::Tagged(k, inner) => write!(f, "{k}:{inner}"),
        }
    }
}

/// A finite set with a left action of a finite group.
#[derive(Clone, Debug)]
pub struct GSet {
    group: FiniteGroup,
    points: Vec<PointLabel>,
    /// `action[g * points.len() + p]` is the image of point `p` under `g`.
    action: Vec<u32>,
}

/// Orbits of a G-set with their representatives and stabilizers.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Vec<usize>>,
    /// Smallest point of each orbit.
    pub reps: Vec<usize>,
    /// Stabilizer of each representative.
    pub stabilizers: Vec<Subgroup>,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

impl GSet {
    /// Builds a G-set from a labelled point list and an action function.
    ///
    /// Labels must be strictly increasing. Each row of the table is checked
    /// to be a bijection and the identity must act trivially.
    pub fn from_fn(
        group: FiniteGroup,
        points: Vec<PointLabel>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<GSet> {
        let np = points.len();
        Caps::check_points((group.order() as u128) * (np as u128))?;
        if !points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Internal("point labels must be strictly increasing".into()));
        }
        let mut action = Vec::with_capacity(group.order() * np);
        let mut hit = vec![usize::MAX; np];
        for g in 0..group.order() {
            for p in 0..np {
                let q = act(g, p);
                if q >= np || hit[q] == g {
                    return Err(Error::Internal(format!("element {g} does not act bijectively")));
                }
                if g == FiniteGroup::IDENTITY && q != p {
                    return Err(Error::Internal("identity moves a point".into()));
                }
                hit[q] = g;
                action.push(q as u32);
            }
        }
        Ok(GSet {
            group,
            points,
            action,
        })
    }

    /// `k` points fixed by every element.
    pub fn trivial(group: &FiniteGroup, k: usize) -> Result<GSet> {
        GSet::from_fn(group.clone(), (0..k).map(PointLabel::Atom).collect(), |_, p| p)
    }

    /// Left cosets `gH`, labelled by their smallest element, under left
    /// translation.
    pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> Result<GSet> {
        if !h.parent().same_as(group) {
            return Err(Error::NotASubgroup("subgroup belongs to a different group".into()));
        }
        let n = group.order();
        let mut coset_min = vec![usize::MAX; n];
        for x in 0..n {
            if coset_min[x] != usize::MAX {
                continue;
            }
            // x is the smallest element of its coset because we scan upwards
            for &m in h.members() {
                coset_min[group.mul(x, m)] = x;
            }
        }
        let mut labels: Vec<usize> = coset_min.clone();
        labels.sort_unstable();
        labels.dedup();
        let position: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let points = labels.iter().map(|&l| PointLabel::Atom(l)).collect();
        GSet::from_fn(group.clone(), points, |g, p| {
            position[&coset_min[group.mul(g, labels[p])]]
        })
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: &FiniteGroup) -> Result<GSet> {
        GSet::coset_action(group, &group.trivial_subgroup())
    }

    /// Disjoint union; points of piece `k` are tagged with `k`.
    pub fn disjoint_union(group: &FiniteGroup, parts: &[GSet]) -> Result<GSet> {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut points = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            if !part.group.same_as(group) {
                return Err(Error::GroupMismatch("disjoint union over different groups".into()));
            }
            offsets.push(points.len());
            points.extend(part.points.iter().map(|l| PointLabel::Tagged(k, Box::new(l.clone()))));
        }
        let piece_of: Vec<(usize, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(k, part)| (0..part.len()).map(move |p| (k, p)))
            .collect();
        GSet::from_fn(group.clone(), points, |g, p| {
            let (k, q) = piece_of[p];
            offsets[k] + parts[k].act(g, q)
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[PointLabel] {
        &self.points
    }

    pub fn label(&self, p: usize) -> &PointLabel {
        &self.points[p]
    }

    pub fn index_of(&self, label: &PointLabel) -> Option<usize> {
        self.points.binary_search(label).ok()
    }

    #[inline]
    pub fn act(&self, g: usize, p: usize) -> usize {
        self.action[g * self.points.len() + p] as usize
    }

    /// All subsets of at most `bound` points, under the induced action.
    pub fn finite_subsets(&self, bound: usize) -> Result<GSet> {
        let n = self.len();
        let bound = bound.min(n);
        let total: u128 = (0..=bound).map(|s| binomial(n as u128, s as u128)).sum();
        Caps::check_points(total)?;
        Caps::check_points(total * self.group.order() as u128)?;

        let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(total as usize);
        let mut current = Vec::new();
        collect_subsets(n, bound, 0, &mut current, &mut subsets);
        subsets.sort();
        let position: HashMap<&[usize], usize> =
            subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let points = subsets.iter().map(|s| PointLabel::Subset(s.clone())).collect();
        GSet::from_fn(self.group.clone(), points, |g, p| {
            let mut image: Vec<usize> = subsets[p].iter().map(|&x| self.act(g, x)).collect();
            image.sort_unstable();
            position[image.as_slice()]
        })
    }

    /// All functions from the points to `{1..n}`, with `(g.S)(z) = S(g^-1 z)`.
    pub fn functions(&self, n: usize) -> Result<GSet> {
        let f = self.len();
        let total = (n as u128).checked_pow(f as u32).unwrap_or(u128::MAX);
        Caps::check_points(total)?;
        Caps::check_points(total.saturating_mul(self.group.order() as u128))?;
        let total = total as usize;

        let decode = |mut code: usize| -> Vec<usize> {
            let mut values = vec![0; f];
            for slot in values.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            values
        };
        let values: Vec<Vec<usize>> = (0..total).map(decode).collect();
        let points = values.iter().map(|v| PointLabel::Function(v.clone())).collect();
        GSet::from_fn(self.group.clone(), points, |g, p| {
            let ginv = self.group.inv(g);
            let source = &values[p];
            (0..f).fold(0, |code, z| code * n + source[self.act(ginv, z)])
        })
    }

    /// The action of `sub` on a `sub`-invariant set of points, as a G-set
    /// over `sub.to_group()`. Point labels are kept.
    pub fn restrict(&self, sub: &Subgroup, points: &[usize]) -> Result<GSet> {
        if !sub.parent().same_as(&self.group) {
            return Err(Error::GroupMismatch("restriction to a foreign subgroup".into()));
        }
        let mut points = points.to_vec();
        points.sort_unstable();
        points.dedup();
        let position: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let labels = points.iter().map(|&p| self.points[p].clone()).collect();
        let members = sub.members().to_vec();
        let mut bad = false;
        for &g in sub.generators() {
            bad |= points.iter().any(|&p| !position.contains_key(&self.act(g, p)));
        }
        if bad {
            return Err(Error::Internal("point set is not invariant under the subgroup".into()));
        }
        GSet::from_fn(sub.to_group(), labels, |g, p| position[&self.act(members[g], points[p])])
    }

    pub fn fixed_point_count(&self, g: usize) -> usize {
        (0..self.len()).filter(|&p| self.act(g, p) == p).count()
    }

    /// Number of points fixed by every element of `h`.
    pub fn fixed_by(&self, h: &Subgroup) -> usize {
        (0..self.len())
            .filter(|&p| h.generators().iter().all(|&g| self.act(g, p) == p))
            .count()
    }

    pub fn stabilizer(&self, p: usize) -> Subgroup {
        self.group.whole().filter(|g| self.act(g, p) == p)
    }

    /// Orbits ordered by smallest point, with stabilizers at those points.
    ///
    /// Checks `|orbit| * |stabilizer| = |G|` per orbit and Burnside's lemma
    /// for the whole set; a failure is an internal error.
    pub fn orbits_and_stabilizers(&self) -> Result<OrbitDecomposition> {
        let order = self.group.order();
        let gens = self.group.generator_indices();
        let mut seen = vec![false; self.len()];
        let mut orbits = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for &g in &gens {
                    let q = self.act(g, p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let stabilizers: Vec<Subgroup> = reps.iter().map(|&p| self.stabilizer(p)).collect();

        for (orbit, stab) in orbits.iter().zip(&stabilizers) {
            if orbit.len() * stab.order() != order {
                audit::FAILURES.fetch_add(1, Ordering::Relaxed);
                return Err(Error::Internal(format!(
                    "orbit-stabilizer failed: {} * {} != {order}",
                    orbit.len(),
                    stab.order()
                )));
            }
        }
        audit::ORBITS.fetch_add(orbits.len() as u64, Ordering::Relaxed);

        let fixed: usize = (0..order).map(|g| self.fixed_point_count(g)).sum();
        if fixed != orbits.len() * order {
            audit::FAILURES.fetch_add(1, Ordering::Relaxed);
            return Err(Error::Internal(format!(
                "Burnside count failed: {fixed} != {} * {order}",
                orbits.len()
            )));
        }
        audit::GSETS.fetch_add(1, Ordering::Relaxed);

        Ok(OrbitDecomposition {
            orbits,
            reps,
            stabilizers,
        })
    }

    /// Number of orbits of the subgroup `h`.
    pub fn suborbit_count(&self, h: &Subgroup) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(p) = stack.pop() {
                for &g in h.generators() {
                    let q = self.act(g, p);
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        count
    }

    /// Checks `g.(h.p) = (gh).p` for every pair; quadratic in the group order.
    pub fn check_compatibility(&self) -> Result<()> {
        let order = self.group.order();
        for g in 0..order {
            for h in 0..order {
                let gh = self.group.mul(g, h);
                for p in 0..self.len() {
                    if self.act(g, self.act(h, p)) != self.act(gh, p) {
                        return Err(Error::Internal(format!("action not compatible at ({g},{h},{p})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn collect_subsets(n: usize, bound: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    if current.len() == bound {
        return;
    }
    for x in from..n {
        current.push(x);
        collect_subsets(n, bound, x + 1, current, out);
        current.pop();
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Global counters of orbit-machinery self-checks performed.
pub mod audit {
    use std::sync::atomic::{AtomicU64, Ordering};

    pub(super) static GSETS: AtomicU64 = AtomicU64::new(0);
    pub(super) static ORBITS: AtomicU64 = AtomicU64::new(0);
    pub(super) static FAILURES: AtomicU64 = AtomicU64::new(0);

    /// Snapshot of the counters.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
    pub struct AuditCounts {
        /// G-sets whose orbit count passed Burnside's lemma.
        pub gsets: u64,
        /// Orbits that passed the orbit-stabilizer check.
        pub orbits: u64,
        /// Checks that failed.
        pub failures: u64,
    }

    impl AuditCounts {
        pub fn since(self, earlier: AuditCounts) -> AuditCounts {
            AuditCounts {
                gsets: self.gsets - earlier.gsets,
                orbits: self.orbits - earlier.orbits,
                failures: self.failures - earlier.failures,
            }
        }
    }

    pub fn counts() -> AuditCounts {
        AuditCounts {
            gsets: GSETS.load(Ordering::Relaxed),
            orbits: ORBITS.load(Ordering::Relaxed),
            failures: FAILURES.load(Ordering::Relaxed),
        }
    }
}

/// A G-set description: `regular`, `trivial:<k>`, `cosets:<i>` (the `i`-th
/// subgroup class, 0-based) or a `+`-separated disjoint union of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetSpec {
    pieces: Vec<SpecPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecPiece {
    Regular,
    Trivial(usize),
    Cosets(usize),
}

impl GSetSpec {
    pub fn new(pieces: Vec<SpecPiece>) -> GSetSpec {
        GSetSpec { pieces }
    }

    pub fn pieces(&self) -> &[SpecPiece] {
        &self.pieces
    }

    pub fn parse(text: &str) -> Result<GSetSpec> {
        let mut pieces = Vec::new();
        let mut pos = 0;
        for raw in text.split('+') {
            let offset = pos + (raw.len() - raw.trim_start().len());
            let part = raw.trim();
            let piece = if part == "regular" {
                SpecPiece::Regular
            } else if let Some(k) = part.strip_prefix("trivial:") {
                SpecPiece::Trivial(
                    k.parse()
                        .map_err(|_| Error::parse(offset + 8, format!("invalid point count `{k}`")))?,
                )
            } else if let Some(i) = part.strip_prefix("cosets:") {
                SpecPiece::Cosets(
                    i.parse()
                        .map_err(|_| Error::parse(offset + 7, format!("invalid subgroup index `{i}`")))?,
                )
            } else {
                return Err(Error::parse(offset, format!("unknown G-set piece `{part}`")));
            };
            pieces.push(piece);
            pos += raw.len() + 1;
        }
        Ok(GSetSpec { pieces })
    }

    /// Builds the described G-set. A single piece is returned untagged.
    pub fn build(&self, group: &FiniteGroup) -> Result<GSet> {
        let needs_classes = self.pieces.iter().any(|p| matches!(p, SpecPiece::Cosets(_)));
        let classes = if needs_classes {
            Some(SubgroupClassList::new(group)?)
        } else {
            None
        };
        let parts = self
            .pieces
            .iter()
            .map(|piece| match piece {
                SpecPiece::Regular => GSet::regular(group),
                SpecPiece::Trivial(k) => GSet::trivial(group, *k),
                SpecPiece::Cosets(i) => {
                    let classes = classes.as_ref().expect("computed above");
                    let h = classes.reps().get(*i).ok_or_else(|| {
                        Error::parse(0, format!("subgroup index {i} out of range (0..{})", classes.len()))
                    })?;
                    GSet::coset_action(group, h)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.len() == 1 {
            return Ok(parts.into_iter().next().expect("one part"));
        }
        GSet::disjoint_union(group, &parts)
    }
}

impl fmt::Display for GSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p {
                SpecPiece::Regular => "regular".to_string(),
                SpecPiece::Trivial(k) => format!("trivial:{k}"),
                SpecPiece::Cosets(i) => format!("cosets:{i}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}
