//! Finite subgroups of `SL(2)` containing the center, realized as explicit
//! matrix groups over a cyclotomic field.
//!
//! Only the reduced part of a group scheme is materialized. The characteristic
//! `p` and the infinitesimal height `r` ride along in [`GroupSchemeSpec`] and
//! are consumed by the fusion and ramification code.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{rat, Cyclo};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: u64 = 2400;
const MAX_GROUP_ORDER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cyclic,
    Dihedral,
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Cyclic,
        Family::Dihedral,
        Family::Tetrahedral,
        Family::Octahedral,
        Family::Icosahedral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Tetrahedral => "tetrahedral",
            Family::Octahedral => "octahedral",
            Family::Icosahedral => "icosahedral",
        }
    }

    pub fn is_exceptional(self) -> bool {
        !matches!(self, Family::Cyclic | Family::Dihedral)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let s = s.strip_prefix("binary-").unwrap_or(&s);
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Largest cyclic/dihedral parameter `n`.
pub const MAX_N: u32 = 40;

/// Largest `n p^(r-1)`, the size parameter of the weight fusion data.
pub const MAX_TWISTED_N: u64 = 512;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A finite linearly reductive subgroup scheme of `SL(2)` containing the
/// center, described by family and numeric parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSchemeSpec {
    pub family: Family,
    /// Cyclic/dihedral parameter; 1 for the exceptional families.
    pub n: u32,
    pub p: u32,
    /// Height of the infinitesimal part.
    pub r: u32,
}

impl GroupSchemeSpec {
    pub fn new(family: Family, n: u32, p: u32, r: u32) -> Result<Self> {
        let spec = GroupSchemeSpec { family, n, p, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cyclic(n: u32, p: u32, r: u32) -> Result<Self> {
        Self::new(Family::Cyclic, n, p, r)
    }

    pub fn dihedral(n: u32, p: u32, r: u32) -> Result<Self> {
        Self::new(Family::Dihedral, n, p, r)
    }

    pub fn exceptional(family: Family, p: u32) -> Result<Self> {
        Self::new(family, 1, p, 1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.p <= 2 || !is_prime(self.p as u64) {
            return bad(format!("p = {} must be an odd prime", self.p));
        }
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.r == 0 {
            return bad("r must be at least 1".into());
        }
        if self.n > MAX_N || self.r > 8 || self.p > 1000 {
            return bad(format!("need n <= {MAX_N}, r <= 8, p <= 1000"));
        }
        let twisted = (self.p as u64)
            .checked_pow(self.r - 1)
            .and_then(|m| m.checked_mul(self.n as u64));
        if twisted.is_none_or(|t| t > MAX_TWISTED_N) {
            return bad(format!("n p^(r-1) exceeds {MAX_TWISTED_N}"));
        }
        if self.family.is_exceptional() {
            if self.r != 1 {
                return bad(format!("{} family requires r = 1", self.family));
            }
            if self.n != 1 {
                return bad(format!("{} family takes no n parameter", self.family));
            }
        } else if self.n.gcd(&self.p) != 1 {
            return bad(format!("gcd(n, p) = gcd({}, {}) != 1", self.n, self.p));
        }
        if self.reduced_order().is_multiple_of(self.p as u64) {
            return bad(format!(
                "p = {} divides the reduced order {}; not linearly reductive",
                self.p,
                self.reduced_order()
            ));
        }
        Ok(())
    }

    /// Order of the reduced part.
    pub fn reduced_order(&self) -> u64 {
        let n = self.n as u64;
        match self.family {
            Family::Cyclic => 2 * n,
            Family::Dihedral => 4 * n,
            Family::Tetrahedral => 24,
            Family::Octahedral => 48,
            Family::Icosahedral => 120,
        }
    }

    /// Exponent of the reduced group, used as the working conductor.
    pub fn exponent(&self) -> u32 {
        match self.family {
            Family::Cyclic => 2 * self.n,
            Family::Dihedral => (2 * self.n).lcm(&4),
            Family::Tetrahedral => 12,
            Family::Octahedral => 24,
            Family::Icosahedral => 60,
        }
    }

    /// `p^(r-1)`.
    pub fn infinitesimal_multiplier(&self) -> u64 {
        (self.p as u64).pow(self.r - 1)
    }
}

/// A 2x2 matrix over a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Cyclo,
    pub b: Cyclo,
    pub c: Cyclo,
    pub d: Cyclo,
}

impl Mat2 {
    pub fn new(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(conductor: u32) -> Self {
        Self::scalar(1, conductor)
    }

    pub fn scalar(s: i64, conductor: u32) -> Self {
        Mat2::new(
            Cyclo::from_int(s, conductor),
            Cyclo::zero(conductor),
            Cyclo::zero(conductor),
            Cyclo::from_int(s, conductor),
        )
    }

    pub fn diag(x: Cyclo, y: Cyclo) -> Self {
        let z = Cyclo::zero(x.conductor());
        Mat2::new(x, z.clone(), z, y)
    }

    pub fn det(&self) -> Cyclo {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Cyclo {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn embed(&self, conductor: u32) -> Result<Mat2> {
        Ok(Mat2::new(
            self.a.embed(conductor)?,
            self.b.embed(conductor)?,
            self.c.embed(conductor)?,
            self.d.embed(conductor)?,
        ))
    }

    pub fn conductor(&self) -> u32 {
        [&self.b, &self.c, &self.d]
            .iter()
            .fold(self.a.conductor(), |m, x| m.lcm(&x.conductor()))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// `g = +-I`.
    pub fn is_central(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Canonical key, valid for comparing matrices stored at one conductor.
    pub fn key(&self) -> String {
        format!(
            "{}|{}|{}|{}",
            self.a.key(),
            self.b.key(),
            self.c.key(),
            self.d.key()
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Least `k >= 1` with `g^k = I`.
pub fn element_order(g: &Mat2, bound: u64) -> Result<u64> {
    let mut acc = g.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(g);
    }
    Err(Error::OrderBoundExceeded(bound))
}

/// Generator matrices at the spec's working conductor.
fn generators(spec: &GroupSchemeSpec) -> Vec<Mat2> {
    let m = spec.exponent();
    let z = |k: i64, order: u32| Cyclo::zeta_pow(m, k * (m / order) as i64);
    let c = |v: i64| Cyclo::from_int(v, m);
    let j = Mat2::new(c(0), c(1), c(-1), c(0));
    match spec.family {
        Family::Cyclic => {
            let n2 = 2 * spec.n;
            vec![Mat2::diag(z(1, n2), z(-1, n2))]
        }
        Family::Dihedral => {
            let n2 = 2 * spec.n;
            vec![Mat2::diag(z(1, n2), z(-1, n2)), j]
        }
        Family::Tetrahedral | Family::Octahedral => {
            let i = z(1, 4);
            let one = c(1);
            let half = rat(1, 2);
            let quat_i = Mat2::diag(i.clone(), -&i);
            let w = Mat2::new(
                (&one + &i).scale(&half),
                (&one + &i).scale(&half),
                (&i - &one).scale(&half),
                (&one - &i).scale(&half),
            );
            let mut gens = vec![quat_i, j, w];
            if spec.family == Family::Octahedral {
                gens.push(Mat2::diag(z(1, 8), z(-1, 8)));
            }
            gens
        }
        Family::Icosahedral => {
            let e = |k: i64| z(k, 5);
            let sqrt5 = e(1) - e(2) - e(3) + e(4);
            let inv_sqrt5 = sqrt5.scale(&rat(1, 5));
            let s = Mat2::diag(e(3), e(2));
            let u = &e(1) - &e(4);
            let v = &e(2) - &e(3);
            let t = Mat2::new(
                -(&inv_sqrt5 * &u),
                &inv_sqrt5 * &v,
                &inv_sqrt5 * &v,
                &inv_sqrt5 * &u,
            );
            vec![s, t]
        }
    }
}

/// An enumerated finite subgroup of `SL(2)` with its multiplication table and
/// conjugacy classes.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    spec: GroupSchemeSpec,
    conductor: u32,
    elements: Vec<Mat2>,
    index: HashMap<String, usize>,
    table: Vec<Vec<u32>>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// Enumerate the reduced group for `spec` by closure under the generators.
pub fn build_group(spec: &GroupSchemeSpec) -> Result<FiniteMatrixGroup> {
    spec.validate()?;
    let conductor = spec.exponent();
    let gens = generators(spec);
    for g in &gens {
        debug_assert!(g.det().is_one(), "generator not in SL(2): {g:?}");
    }

    let identity = Mat2::identity(conductor);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity.key(), 0usize)]);
    // right[g][s] = index of elements[g] * gens[s]
    let mut right: Vec<Vec<usize>> = Vec::new();
    // BFS tree: element = elements[parent] * gens[step]
    let mut tree: Vec<Option<(usize, usize)>> = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, gen) in gens.iter().enumerate() {
            let prod = elements[g].mul(gen);
            let key = prod.key();
            let idx = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    elements.push(prod);
                    index.insert(key, i);
                    tree.push(Some((g, s)));
                    queue.push_back(i);
                    i
                }
            };
            row.push(idx);
        }
        if right.len() <= g {
            right.resize(g + 1, Vec::new());
        }
        right[g] = row;
    }

    let order = elements.len();
    // elements are discovered in BFS order, so parents precede children
    let mut table = vec![vec![0u32; order]; order];
    for (g, row) in table.iter_mut().enumerate() {
        row[0] = g as u32;
        for h in 1..order {
            let (parent, step) = tree[h].expect("non-identity has a parent");
            row[h] = right[row[parent] as usize][step] as u32;
        }
    }

    let mut inverse = vec![usize::MAX; order];
    for (g, row) in table.iter().enumerate() {
        inverse[g] = row.iter().position(|&x| x == 0).expect("group closure");
    }

    let orders = (0..order)
        .map(|g| {
            let mut acc = g;
            let mut k = 1u64;
            while acc != 0 {
                acc = table[acc][g] as usize;
                k += 1;
            }
            k
        })
        .collect();

    let mut group = FiniteMatrixGroup {
        spec: *spec,
        conductor,
        elements,
        index,
        table,
        inverse,
        orders,
        classes: Vec::new(),
        class_of: Vec::new(),
    };
    let (classes, class_of) = conjugacy_classes(&group);
    group.classes = classes;
    group.class_of = class_of;
    Ok(group)
}

/// Partition of element indices into conjugacy classes, ordered by smallest
/// member (so the identity class comes first), plus the class index of each
/// element.
pub fn conjugacy_classes(group: &FiniteMatrixGroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let order = group.order();
    let mut class_of = vec![usize::MAX; order];
    let mut classes = Vec::new();
    for g in 0..order {
        if class_of[g] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<usize> = (0..order)
            .map(|h| group.mul(group.mul(h, g), group.inverse(h)))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = id;
        }
        classes.push(members);
    }
    (classes, class_of)
}

impl FiniteMatrixGroup {
    pub fn spec(&self) -> &GroupSchemeSpec {
        &self.spec
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Mat2 {
        &self.elements[g]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h] as usize
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let k = k % self.orders[g];
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> u64 {
        self.orders[g]
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        let m = m.embed(self.conductor).ok()?;
        self.index.get(&m.key()).copied()
    }

    /// Index of `-I`.
    pub fn minus_identity(&self) -> Option<usize> {
        self.index_of(&Mat2::scalar(-1, self.conductor))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest element index in each class.
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn center(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }

    /// Class containing the inverses of class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.class_of(self.inverse(self.representative(i)))
    }

    /// Class containing the `k`-th powers of class `i`.
    pub fn power_class(&self, i: usize, k: u64) -> usize {
        self.class_of(self.pow(self.representative(i), k))
    }

    /// `c_ij^k = #{(a, b) in C_i x C_j : ab = g_k}` for each class `k`,
    /// where `g_k` is the class representative.
    pub fn class_mult_coeffs(&self, i: usize, j: usize) -> Vec<u64> {
        (0..self.class_count())
            .map(|k| {
                let target = self.representative(k);
                self.classes[i]
                    .iter()
                    .filter(|&&a| self.class_of(self.mul(self.inverse(a), target)) == j)
                    .count() as u64
            })
            .collect()
    }
}

/// Exponent `k` with `m = zeta_order^k`, if any.
pub(crate) fn root_power(m: &Cyclo, root_order: u32) -> Option<i64> {
    (0..root_order as i64).find(|&k| *m == Cyclo::zeta_pow(root_order, k))
}
