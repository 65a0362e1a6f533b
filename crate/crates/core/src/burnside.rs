//! The Burnside ring `A(G)` through its table of marks.
//!
//! Elements are integer vectors over the basis `[G/H_i]`, one entry per
//! conjugacy class of subgroups. Products are formed on marks vectors and
//! pulled back by triangular back-substitution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, IsoClass, SubgroupClassList};
use crate::gsets::GSet;

/// Marks of the subgroup class representatives on the transitive G-sets.
///
/// ```
/// use wreathk_core::{burnside::TableOfMarks, groups::named};
///
/// let t = TableOfMarks::new(&named::cyclic(4)?)?;
/// assert_eq!(t.marks()[2], vec![1, 1, 1]);
/// # Ok::<(), wreathk_core::Error>(())
/// ```
#[derive(Clone, Debug)]
pub struct TableOfMarks {
    inner: Arc<TableData>,
}

#[derive(Debug)]
struct TableData {
    classes: SubgroupClassList,
    /// `marks[i][j]`: fixed points of `reps[j]` on `G/reps[i]`.
    marks: Vec<Vec<u64>>,
    names: Vec<String>,
}

impl TableOfMarks {
    /// Counts fixed points on every coset action and checks the shape of
    /// the result.
    pub fn new(group: &FiniteGroup) -> Result<TableOfMarks> {
        let classes = SubgroupClassList::new(group)?;
        let k = classes.len();
        let mut marks = vec![vec![0u64; k]; k];
        for i in 0..k {
            let cosets = GSet::coset_action(group, classes.rep(i))?;
            for j in 0..k {
                marks[i][j] = cosets.fixed_by(classes.rep(j)) as u64;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if marks[i][j] != 0 && !classes.is_subconjugate(j, i) {
                    return Err(Error::Internal(format!("marks[{i}][{j}] breaks triangularity")));
                }
            }
            let normalizer = group.normalizer(classes.rep(i))?;
            if marks[i][i] as usize != normalizer.order() / classes.rep(i).order() {
                return Err(Error::Internal(format!("diagonal mark {i} differs from [N(H):H]")));
            }
        }
        if marks[k - 1].iter().any(|&m| m != 1) {
            return Err(Error::Internal("row of G/G is not all ones".into()));
        }
        let names = class_names(&classes);
        Ok(TableOfMarks {
            inner: Arc::new(TableData { classes, marks, names }),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.inner.classes.group()
    }

    pub fn classes(&self) -> &SubgroupClassList {
        &self.inner.classes
    }

    /// Number of subgroup classes.
    pub fn rank(&self) -> usize {
        self.inner.marks.len()
    }

    pub fn marks(&self) -> &[Vec<u64>] {
        &self.inner.marks
    }

    /// Display names of the classes, e.g. `1`, `C2`, `G`.
    pub fn class_names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn same_as(&self, other: &TableOfMarks) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement {
            table: self.clone(),
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    /// `[G/G]`, the multiplicative identity.
    pub fn one(&self) -> BurnsideElement {
        self.basis(self.rank() - 1)
    }

    /// `[G/H_i]`.
    pub fn basis(&self, i: usize) -> BurnsideElement {
        let mut x = self.zero();
        x.coeffs[i] = BigInt::one();
        x
    }

    pub fn element(&self, coeffs: Vec<BigInt>) -> Result<BurnsideElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::DegreeMismatch {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        Ok(BurnsideElement {
            table: self.clone(),
            coeffs,
        })
    }

    /// Class of a G-set: orbit counts by stabilizer class.
    pub fn to_burnside(&self, z: &GSet) -> Result<BurnsideElement> {
        if !z.group().same_as(self.group()) {
            return Err(Error::GroupMismatch("G-set over a different group".into()));
        }
        let dec = z.orbits_and_stabilizers()?;
        let mut x = self.zero();
        for stab in &dec.stabilizers {
            let i = self
                .classes()
                .class_of(stab)
                .ok_or_else(|| Error::Internal("stabilizer matches no subgroup class".into()))?;
            x.coeffs[i] += 1;
        }
        let size: BigInt = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(self.classes().rep(i).index()))
            .sum();
        if size != BigInt::from(z.len()) {
            return Err(Error::Internal("orbit sizes do not add up".into()));
        }
        Ok(x)
    }

    /// Inverse of the marks map; fails unless the solution is integral.
    pub fn from_marks(&self, m: &[BigInt]) -> Result<BurnsideElement> {
        let k = self.rank();
        if m.len() != k {
            return Err(Error::DegreeMismatch { expected: k, found: m.len() });
        }
        let marks = self.marks();
        let mut coeffs = vec![BigInt::zero(); k];
        for j in (0..k).rev() {
            let mut rest = m[j].clone();
            for (i, c) in coeffs.iter().enumerate().skip(j + 1) {
                if marks[i][j] != 0 && !c.is_zero() {
                    rest -= c * BigInt::from(marks[i][j]);
                }
            }
            let (q, r) = rest.div_rem(&BigInt::from(marks[j][j]));
            if !r.is_zero() {
                return Err(Error::Internal(format!("marks vector is not integral at class {j}")));
            }
            coeffs[j] = q;
        }
        Ok(BurnsideElement {
            table: self.clone(),
            coeffs,
        })
    }

    /// `[n^Z]` by enumerating the functions `Z -> {1..n}`.
    pub fn bernoulli_class(&self, n: usize, z: &GSet) -> Result<BurnsideElement> {
        self.to_burnside(&z.functions(n)?)
    }

    /// `[n^Z]` from its marks `n^{|Z/H_j|}`, without building the function set.
    pub fn bernoulli_class_by_marks(&self, n: usize, z: &GSet) -> Result<BurnsideElement> {
        if !z.group().same_as(self.group()) {
            return Err(Error::GroupMismatch("G-set over a different group".into()));
        }
        let m: Vec<BigInt> = self
            .classes()
            .reps()
            .iter()
            .map(|h| BigInt::from(n).pow(z.suborbit_count(h) as u32))
            .collect();
        self.from_marks(&m)
    }

    /// Marks table as JSON-ready data.
    pub fn export(&self) -> MarksExport {
        MarksExport {
            classes: self
                .classes()
                .reps()
                .iter()
                .zip(self.class_names())
                .map(|(h, name)| ClassExport {
                    name: name.clone(),
                    order: h.order(),
                    members: h.members().to_vec(),
                })
                .collect(),
            marks: self.marks().to_vec(),
        }
    }
}

/// Serializable view of a table of marks.
#[derive(Clone, Debug, Serialize)]
pub struct MarksExport {
    pub classes: Vec<ClassExport>,
    pub marks: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassExport {
    pub name: String,
    pub order: usize,
    pub members: Vec<usize>,
}

fn class_names(classes: &SubgroupClassList) -> Vec<String> {
    let k = classes.len();
    let mut names: Vec<String> = classes
        .reps()
        .iter()
        .map(|h| IsoClass::of(&h.to_group()).name())
        .collect();
    names[k - 1] = "G".to_string();
    let base = names.clone();
    for i in 0..k {
        let same: Vec<usize> = (0..k).filter(|&j| base[j] == base[i]).collect();
        if same.len() > 1 {
            let pos = same.iter().position(|&j| j == i).expect("present");
            names[i] = format!("{}_{}", base[i], pos + 1);
        }
    }
    names
}

/// An integer combination of the basis `[G/H_i]`.
#[derive(Clone, Debug)]
pub struct BurnsideElement {
    table: TableOfMarks,
    coeffs: Vec<BigInt>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.table.same_as(&other.table) && self.coeffs == other.coeffs
    }
}

impl Eq for BurnsideElement {}

impl BurnsideElement {
    pub fn table(&self) -> &TableOfMarks {
        &self.table
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// All coefficients nonnegative, i.e. the class of an actual G-set.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `m[j] = sum_i coeffs[i] * marks[i][j]`.
    pub fn marks(&self) -> Vec<BigInt> {
        let marks = self.table.marks();
        (0..self.coeffs.len())
            .map(|j| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(i, c)| marks[i][j] != 0 && !c.is_zero())
                    .map(|(i, c)| c * BigInt::from(marks[i][j]))
                    .sum()
            })
            .collect()
    }

    pub fn multiply(&self, other: &BurnsideElement) -> Result<BurnsideElement> {
        self.check_same(other)?;
        let m: Vec<BigInt> = self.marks().iter().zip(other.marks()).map(|(a, b)| a * b).collect();
        self.table.from_marks(&m)
    }

    pub fn pow(&self, e: u32) -> Result<BurnsideElement> {
        let m: Vec<BigInt> = self.marks().iter().map(|a| a.pow(e)).collect();
        self.table.from_marks(&m)
    }

    pub fn scale(&self, s: &BigInt) -> BurnsideElement {
        BurnsideElement {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Exact division of every coefficient, if possible.
    pub fn div_exact(&self, d: &BigInt) -> Option<BurnsideElement> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(BurnsideElement {
            table: self.table.clone(),
            coeffs,
        })
    }

    /// Rebuilds a G-set from an effective element: `coeffs[i]` copies of
    /// `G/H_i`.
    pub fn realize(&self) -> Result<GSet> {
        if !self.is_effective() {
            return Err(Error::Internal("only effective elements are G-sets".into()));
        }
        let group = self.table.group();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let copies = c.to_usize().ok_or_else(|| Error::cap("copies", u128::MAX, usize::MAX as u128))?;
            for _ in 0..copies {
                parts.push(GSet::coset_action(group, self.table.classes().rep(i))?);
            }
        }
        GSet::disjoint_union(group, &parts)
    }

    fn check_same(&self, other: &BurnsideElement) -> Result<()> {
        if self.table.same_as(&other.table) {
            Ok(())
        } else {
            Err(Error::GroupMismatch("elements of different Burnside rings".into()))
        }
    }
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        assert!(self.table.same_as(&rhs.table), "elements of different Burnside rings");
        BurnsideElement {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self + &(-rhs)
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        BurnsideElement {
            table: self.table.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BurnsideElement {
    type Output = BurnsideElement;
    fn mul(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.multiply(rhs).expect("product in a valid table is integral")
    }
}

/// `3*[G/1] + 2*[G/G]`; the zero element prints as `0`.
impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.table.class_names();
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{magnitude}*[G/{name}]")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Which route produced `[n^Z]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BernoulliRoute {
    /// Orbits of the enumerated function set.
    Enumerated,
    /// Back-substitution from marks, used when the function set exceeds the
    /// point cap.
    Marks,
}

/// Witnesses `[n^Z]^l = n*alpha` and `[n^Z]*beta = n^r*[G/G]`.
#[derive(Clone, Debug)]
pub struct AlphaBeta {
    pub bernoulli: BurnsideElement,
    pub route: BernoulliRoute,
    pub alpha: BurnsideElement,
    pub l: u32,
    pub beta: BurnsideElement,
    pub r: u32,
}

/// `prod_i ([n^Z] - n^{|Z/H_i|} [G/G])` as a Burnside element.
pub fn vanishing_product(table: &TableOfMarks, n: usize, z: &GSet, x: &BurnsideElement) -> Result<BurnsideElement> {
    let one = table.one();
    let mut product = one.clone();
    for h in table.classes().reps() {
        let shift = one.scale(&BigInt::from(n).pow(z.suborbit_count(h) as u32));
        product = product.multiply(&(x - &shift))?;
    }
    Ok(product)
}

/// Finds minimal witnesses for the Bernoulli class `[n^Z]`.
///
/// `alpha` is `[n^Z]^l / n` for the least `l` making this integral, so it is
/// effective. `beta` comes from expanding the vanishing product
/// `prod_i (x - n^{a_i}) = x q(x) + (-1)^k n^{sum a_i}`, then dividing by `n`
/// as long as the result stays integral. Both identities are re-checked.
pub fn alpha_beta_solve(table: &TableOfMarks, n: usize, z: &GSet) -> Result<AlphaBeta> {
    if n == 0 {
        return Err(Error::NoWitness("n must be positive".into()));
    }
    let (x, route) = match table.bernoulli_class(n, z) {
        Ok(x) => (x, BernoulliRoute::Enumerated),
        Err(Error::ResourceCap { .. }) => (table.bernoulli_class_by_marks(n, z)?, BernoulliRoute::Marks),
        Err(e) => return Err(e),
    };
    let one = table.one();
    if n == 1 {
        return Ok(AlphaBeta {
            bernoulli: x,
            route,
            alpha: one.clone(),
            l: 1,
            beta: one,
            r: 1,
        });
    }

    if !vanishing_product(table, n, z, &x)?.is_zero() {
        return Err(Error::Internal("vanishing product is nonzero".into()));
    }

    let nn = BigInt::from(n);
    let k = table.rank() as u32;
    let mut power = one.clone();
    let mut found = None;
    for l in 1..=k {
        power = power.multiply(&x)?;
        if let Some(alpha) = power.div_exact(&nn) {
            found = Some((l, alpha));
            break;
        }
    }
    let (l, alpha) = found.ok_or_else(|| {
        Error::NoWitness(format!("no power of [{n}^Z] up to {k} is divisible by {n}"))
    })?;

    // coefficients of prod_i (t - n^{a_i}), lowest degree first
    let exponents: Vec<u32> = table.classes().reps().iter().map(|h| z.suborbit_count(h) as u32).collect();
    let mut poly = vec![BigInt::one()];
    for &a in &exponents {
        let root = nn.pow(a);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &root;
        }
        poly = next;
    }
    // x * q(x) = -poly[0], with q(t) = sum_{d>=1} poly[d] t^{d-1}
    let sign = if poly[0].is_negative() { BigInt::one() } else { -BigInt::one() };
    let mut beta = table.zero();
    for c in poly[1..].iter().rev() {
        beta = &beta.multiply(&x)? + &one.scale(&(c * &sign));
    }
    let mut r: u32 = exponents.iter().sum();
    while r > 1 {
        match beta.div_exact(&nn) {
            Some(b) => {
                beta = b;
                r -= 1;
            }
            None => break,
        }
    }

    if x.pow(l)? != alpha.scale(&nn) || !alpha.is_effective() {
        return Err(Error::Internal("alpha witness failed".into()));
    }
    if x.multiply(&beta)? != one.scale(&nn.pow(r)) {
        return Err(Error::Internal("beta witness failed".into()));
    }
    Ok(AlphaBeta {
        bernoulli: x,
        route,
        alpha,
        l,
        beta,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::named;
    use crate::Caps;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn marks_of_s3_and_c2() {
        let t = TableOfMarks::new(&named::symmetric(3).unwrap()).unwrap();
        assert_eq!(
            t.marks(),
            &[vec![6, 0, 0, 0], vec![3, 1, 0, 0], vec![2, 0, 2, 0], vec![1, 1, 1, 1]]
        );
        assert_eq!(t.class_names(), &["1", "C2", "C3", "G"]);
        let t = TableOfMarks::new(&named::cyclic(2).unwrap()).unwrap();
        assert_eq!(t.marks(), &[vec![2, 0], vec![1, 1]]);
        let t = TableOfMarks::new(&named::cyclic(1).unwrap()).unwrap();
        assert_eq!(t.marks(), &[vec![1]]);
    }

    #[test]
    fn to_burnside_examples() {
        let s3 = named::symmetric(3).unwrap();
        let t = TableOfMarks::new(&s3).unwrap();
        let z = GSet::disjoint_union(
            &s3,
            &[
                GSet::coset_action(&s3, t.classes().rep(1)).unwrap(),
                GSet::coset_action(&s3, t.classes().rep(2)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(t.to_burnside(&z).unwrap().coeffs(), big(&[0, 1, 1, 0]).as_slice());
        assert!(t.to_burnside(&GSet::trivial(&s3, 0).unwrap()).unwrap().is_zero());

        let c2 = named::cyclic(2).unwrap();
        let t = TableOfMarks::new(&c2).unwrap();
        let f = GSet::regular(&c2).unwrap().functions(2).unwrap();
        let x = t.to_burnside(&f).unwrap();
        assert_eq!(x.coeffs(), big(&[1, 2]).as_slice());
        assert_eq!(x.marks(), big(&[4, 2]));
    }

    #[test]
    fn products_in_c2() {
        let c2 = named::cyclic(2).unwrap();
        let t = TableOfMarks::new(&c2).unwrap();
        let free = t.basis(0);
        assert_eq!(free.marks(), big(&[2, 0]));
        assert_eq!(t.one().marks(), big(&[1, 1]));
        assert_eq!(t.zero().marks(), big(&[0, 0]));
        assert_eq!((&free * &free).coeffs(), big(&[2, 0]).as_slice());
        let x = t.element(big(&[1, 2])).unwrap();
        assert_eq!((&x * &x).coeffs(), big(&[6, 4]).as_slice());
        assert_eq!(&t.one() * &x, x);
        assert_eq!(x.to_string(), "1*[G/1] + 2*[G/G]");
        assert_eq!((-&x).to_string(), "-1*[G/1] - 2*[G/G]");
        assert_eq!(t.zero().to_string(), "0");
    }

    #[test]
    fn from_marks_rejects_non_integral() {
        let t = TableOfMarks::new(&named::cyclic(2).unwrap()).unwrap();
        assert!(t.from_marks(&big(&[1, 0])).is_err());
        assert!(t.from_marks(&big(&[1])).is_err());
    }

    #[test]
    fn bernoulli_class_examples() {
        let c2 = named::cyclic(2).unwrap();
        let t = TableOfMarks::new(&c2).unwrap();
        let reg = GSet::regular(&c2).unwrap();
        assert_eq!(t.bernoulli_class(2, &reg).unwrap().coeffs(), big(&[1, 2]).as_slice());
        assert_eq!(t.bernoulli_class(1, &reg).unwrap(), t.one());
        let empty = GSet::trivial(&c2, 0).unwrap();
        assert_eq!(t.bernoulli_class(7, &empty).unwrap(), t.one());
        assert_eq!(t.bernoulli_class_by_marks(2, &reg).unwrap(), t.bernoulli_class(2, &reg).unwrap());
    }

    #[test]
    fn alpha_beta_c2_regular() {
        let c2 = named::cyclic(2).unwrap();
        let t = TableOfMarks::new(&c2).unwrap();
        let ab = alpha_beta_solve(&t, 2, &GSet::regular(&c2).unwrap()).unwrap();
        assert_eq!(ab.l, 2);
        assert_eq!(ab.alpha.coeffs(), big(&[3, 2]).as_slice());
        assert_eq!(ab.r, 3);
        assert_eq!(ab.beta.coeffs(), big(&[-1, 4]).as_slice());
        assert_eq!(ab.route, BernoulliRoute::Enumerated);
    }

    #[test]
    fn alpha_beta_trivial_group() {
        let g = named::cyclic(1).unwrap();
        let t = TableOfMarks::new(&g).unwrap();
        let ab = alpha_beta_solve(&t, 2, &GSet::trivial(&g, 3).unwrap()).unwrap();
        assert_eq!((ab.l, ab.r), (1, 3));
        assert_eq!(ab.alpha.coeffs(), big(&[4]).as_slice());
        assert_eq!(ab.beta.coeffs(), big(&[1]).as_slice());
    }

    #[test]
    fn alpha_beta_n3_and_edge_cases() {
        let c2 = named::cyclic(2).unwrap();
        let t = TableOfMarks::new(&c2).unwrap();
        let reg = GSet::regular(&c2).unwrap();
        let ab = alpha_beta_solve(&t, 3, &reg).unwrap();
        assert!(ab.alpha.is_effective());
        let ab1 = alpha_beta_solve(&t, 1, &reg).unwrap();
        assert_eq!((ab1.alpha.clone(), ab1.l), (t.one(), 1));
        let empty = GSet::trivial(&c2, 0).unwrap();
        assert!(matches!(alpha_beta_solve(&t, 2, &empty), Err(Error::NoWitness(_))));
    }

    #[test]
    fn marks_route_when_functions_exceed_cap() {
        let c4 = named::cyclic(4).unwrap();
        let t = TableOfMarks::new(&c4).unwrap();
        let reg = GSet::regular(&c4).unwrap();
        let capped = Caps { points: 64, ..Caps::default() }.scoped(|| alpha_beta_solve(&t, 3, &reg)).unwrap();
        assert_eq!(capped.route, BernoulliRoute::Marks);
        let full = alpha_beta_solve(&t, 3, &reg).unwrap();
        assert_eq!(full.route, BernoulliRoute::Enumerated);
        assert_eq!(capped.bernoulli, full.bernoulli);
        assert_eq!((capped.l, capped.r), (full.l, full.r));
    }

    #[test]
    fn realize_round_trip() {
        let s3 = named::symmetric(3).unwrap();
        let t = TableOfMarks::new(&s3).unwrap();
        let x = t.element(big(&[1, 0, 2, 1])).unwrap();
        assert_eq!(t.to_burnside(&x.realize().unwrap()).unwrap(), x);
        assert!((-&x).realize().is_err());
    }
}
