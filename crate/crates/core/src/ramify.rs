//! Exceptional orbits of the reduced group acting on the projective line,
//! ramification indices of the quotient map, and the tube ranks they give.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{int, Cyclo, Rational};
use crate::error::{Error, Result};
use crate::graph::{AffineFamily, AffineType};
use crate::groups::{build_group, element_order, Family, FiniteMatrixGroup, GroupSchemeSpec, Mat2, DEFAULT_ORDER_BOUND};

/// `[x : y]` with the leading nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPoint {
    pub x: Cyclo,
    pub y: Cyclo,
}

impl ProjPoint {
    pub fn new(x: Cyclo, y: Cyclo) -> Result<Self> {
        let n = crate::cyclo::lcm(x.conductor(), y.conductor());
        let (x, y) = (x.embed(n)?, y.embed(n)?);
        if let Some(inv) = x.inverse() {
            Ok(ProjPoint {
                y: &y * &inv,
                x: Cyclo::one(n),
            })
        } else if !y.is_zero() {
            Ok(ProjPoint {
                x: Cyclo::zero(n),
                y: Cyclo::one(n),
            })
        } else {
            Err(Error::Parse("[0:0] is not a point".into()))
        }
    }

    pub fn zero(conductor: u32) -> Self {
        ProjPoint {
            x: Cyclo::one(conductor),
            y: Cyclo::zero(conductor),
        }
    }

    pub fn infinity(conductor: u32) -> Self {
        ProjPoint {
            x: Cyclo::zero(conductor),
            y: Cyclo::one(conductor),
        }
    }

    /// `g . [x : y] = [ax + by : cx + dy]`.
    pub fn apply(&self, g: &Mat2) -> ProjPoint {
        ProjPoint::new(&g.a * &self.x + &g.b * &self.y, &g.c * &self.x + &g.d * &self.y)
            .expect("invertible matrices move points to points")
    }

    /// Fixed-point test without normalizing: `x1 y2 = x2 y1`.
    pub fn is_fixed_by(&self, g: &Mat2) -> bool {
        let x = &g.a * &self.x + &g.b * &self.y;
        let y = &g.c * &self.x + &g.d * &self.y;
        &x * &self.y == &y * &self.x
    }

    /// Is this `[1:0]` or `[0:1]`?
    pub fn is_torus_fixed(&self) -> bool {
        self.x.is_zero() || self.y.is_zero()
    }

    fn key(&self) -> String {
        format!("{}|{}", self.x.key(), self.y.key())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

/// Eigenlines of a non-central finite-order element.
pub fn mobius_fixed_points(g: &Mat2) -> Result<Vec<ProjPoint>> {
    if g.is_central() {
        return Err(Error::CentralElement);
    }
    let order = element_order(g, DEFAULT_ORDER_BOUND)?;
    let n = crate::cyclo::lcm(g.conductor(), order as u32);
    let g = g.embed(n)?;
    let t = g.trace();
    let one = Cyclo::one(n);
    let mut points = BTreeSet::new();
    // eigenvalues of an element of order k are primitive k-th roots of unity
    let step = (n as u64 / order) as i64;
    for s in (0..order as i64).filter(|&j| num_integer::gcd(j as u64, order) == 1) {
        let lambda = Cyclo::zeta_pow(n, s * step);
        if !(&(&lambda * &lambda) - &(&t * &lambda) + one.clone()).is_zero() {
            continue;
        }
        let point = if !g.b.is_zero() {
            ProjPoint::new(g.b.clone(), &lambda - &g.a)?
        } else if !g.c.is_zero() {
            ProjPoint::new(&lambda - &g.d, g.c.clone())?
        } else if lambda == g.a {
            ProjPoint::zero(n)
        } else {
            ProjPoint::infinity(n)
        };
        points.insert(point);
    }
    Ok(points.into_iter().collect())
}

/// The reduced group acting on the projective line through its image
/// modulo `+-I`, together with the infinitesimal data.
#[derive(Clone, Debug)]
pub struct ActionContext {
    pub group: FiniteMatrixGroup,
    pub p: u32,
    pub infinitesimal_height: u32,
}

impl ActionContext {
    pub fn new(spec: &GroupSchemeSpec) -> Result<Self> {
        spec.validate()?;
        Ok(ActionContext {
            group: build_group(spec)?,
            p: spec.p,
            infinitesimal_height: spec.r,
        })
    }

    pub fn spec(&self) -> &GroupSchemeSpec {
        self.group.spec()
    }

    /// Elements acting trivially: the scalar matrices in the group.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.group.element(g).is_central())
            .collect()
    }

    pub fn effective_order(&self) -> u64 {
        (self.group.order() / self.kernel().len()) as u64
    }

    /// `p^(r-1)` at the torus-fixed points of the cyclic and dihedral
    /// families, 1 elsewhere.
    pub fn infinitesimal_multiplier(&self, x: &ProjPoint) -> u64 {
        let fam = self.spec().family;
        if x.is_torus_fixed() && matches!(fam, Family::Cyclic | Family::Dihedral) {
            self.spec().infinitesimal_multiplier()
        } else {
            1
        }
    }

    /// Number of elements of the effective group fixing `x`.
    pub fn stabilizer_order(&self, x: &ProjPoint) -> u64 {
        let fixing = self
            .group
            .elements()
            .iter()
            .filter(|g| x.is_fixed_by(g))
            .count();
        (fixing / self.kernel().len()) as u64
    }

    fn check_faithful(&self) -> Result<()> {
        let scalars = self.kernel();
        let allowed = [Some(self.group.identity()), self.group.minus_identity()];
        if scalars.iter().any(|g| !allowed.contains(&Some(*g))) {
            return Err(Error::NotFaithful);
        }
        Ok(())
    }
}

/// One orbit of points with nontrivial ramification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalOrbit {
    pub representative: ProjPoint,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub infinitesimal_multiplier: u64,
    pub ramification_index: u64,
}

/// Orbit and stabilizer of `x`, both by direct enumeration over the group.
fn orbit_of(ctx: &ActionContext, x: &ProjPoint) -> (BTreeMap<String, ProjPoint>, u64) {
    let mut orbit = BTreeMap::new();
    for g in ctx.group.elements() {
        let y = x.apply(g);
        orbit.insert(y.key(), y);
    }
    (orbit, ctx.stabilizer_order(x))
}

/// Fixed points of all non-central elements, partitioned into orbits, plus
/// the torus-fixed points when they carry an infinitesimal multiplier.
/// Orbits are sorted by ramification index, then orbit size, then
/// representative.
pub fn exceptional_orbits(ctx: &ActionContext) -> Result<Vec<ExceptionalOrbit>> {
    ctx.check_faithful()?;
    let n = ctx.group.conductor();
    let mut points: BTreeMap<String, ProjPoint> = BTreeMap::new();
    for g in ctx.group.elements() {
        if g.is_central() {
            continue;
        }
        for x in mobius_fixed_points(g)? {
            let x = ProjPoint::new(x.x.embed(n)?, x.y.embed(n)?)?;
            points.insert(x.key(), x);
        }
    }
    if ctx.spec().infinitesimal_multiplier() > 1
        && matches!(ctx.spec().family, Family::Cyclic | Family::Dihedral)
    {
        for x in [ProjPoint::zero(n), ProjPoint::infinity(n)] {
            points.insert(x.key(), x);
        }
    }

    let mut orbits = Vec::new();
    while let Some((_, seed)) = points.iter().next() {
        let seed = seed.clone();
        let (orbit, stabilizer) = orbit_of(ctx, &seed);
        for key in orbit.keys() {
            points.remove(key);
        }
        let representative = orbit.values().min().cloned().expect("orbit contains seed");
        let multiplier = ctx.infinitesimal_multiplier(&representative);
        orbits.push(ExceptionalOrbit {
            orbit_size: orbit.len() as u64,
            stabilizer_order: stabilizer,
            infinitesimal_multiplier: multiplier,
            ramification_index: stabilizer * multiplier,
            representative,
        });
    }
    orbits.sort_by(|a, b| {
        (a.ramification_index, a.orbit_size, &a.representative).cmp(&(
            b.ramification_index,
            b.orbit_size,
            &b.representative,
        ))
    });
    Ok(orbits)
}

/// Reduced stabilizer order times the infinitesimal multiplier.
pub fn ramification_index(ctx: &ActionContext, x: &ProjPoint) -> u64 {
    ctx.stabilizer_order(x) * ctx.infinitesimal_multiplier(x)
}

/// `2 - |G| (2 - sum (1 - 1/e))` over the reduced stabilizer orders.
pub fn riemann_hurwitz_residual(effective_order: u64, stabilizers: &[u64]) -> Rational {
    let deficit = stabilizers
        .iter()
        .map(|&e| Rational::one() - Rational::new(1.into(), e.into()))
        .fold(Rational::zero(), |a, b| a + b);
    int(2) - Rational::from_integer(effective_order.into()) * (int(2) - deficit)
}

/// Exact Riemann-Hurwitz check on a report; returns the residual.
pub fn riemann_hurwitz_check(report: &RamificationReport) -> (bool, Rational) {
    let stabilizers: Vec<u64> = report.orbits.iter().map(|o| o.stabilizer_order).collect();
    let residual = riemann_hurwitz_residual(report.effective_order, &stabilizers);
    (residual.is_zero(), residual)
}

/// Tube ranks of the Euclidean type, exceptional ones only.
pub fn euclidean_tube_ranks(t: &AffineType) -> Vec<u64> {
    let k = t.index as u64;
    let mut ranks = match t.family {
        AffineFamily::A => vec![k.div_ceil(2), k.div_ceil(2)],
        AffineFamily::D => vec![2, 2, k - 2],
        AffineFamily::E => match k {
            6 => vec![2, 3, 3],
            7 => vec![2, 3, 4],
            _ => vec![2, 3, 5],
        },
    };
    ranks.retain(|&e| e > 1);
    ranks.sort_unstable();
    ranks
}

/// `m <= e n` for a tube of rank `m` over a homogeneous source tube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub m: u64,
    pub e: u64,
    pub n: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationReport {
    pub effective_order: u64,
    pub orbits: Vec<ExceptionalOrbit>,
    /// Ramification index at every point outside the listed orbits.
    pub generic_index: u64,
    /// Exceptional tube ranks, ascending; every other tube has rank 1.
    pub tube_ranks: Vec<u64>,
    pub bound_checks: Vec<BoundCheck>,
    /// Riemann-Hurwitz residual over the reduced stabilizers, as text.
    pub riemann_hurwitz_residual: String,
    pub assumptions: Vec<String>,
}

pub const BASE_FIELD_ASSUMPTION: &str = "action computed over the characteristic-0 cyclotomic field; \
     the effective group has order prime to p, so orbits and stabilizers agree with characteristic p";

pub const MULTIPLIER_ASSUMPTION: &str = "torus-fixed points [1:0], [0:1] of cyclic and dihedral \
     families carry the infinitesimal multiplier p^(r-1)";

pub fn tube_rank_report(ctx: &ActionContext) -> Result<RamificationReport> {
    let orbits = exceptional_orbits(ctx)?;
    let mut tube_ranks: Vec<u64> = orbits
        .iter()
        .map(|o| o.ramification_index)
        .filter(|&e| e > 1)
        .collect();
    tube_ranks.sort_unstable();
    let bound_checks = tube_ranks
        .iter()
        .map(|&e| {
            let (m, n) = (e, 1);
            BoundCheck {
                m,
                e,
                n,
                holds: m <= e * n,
            }
        })
        .collect();
    let stabilizers: Vec<u64> = orbits.iter().map(|o| o.stabilizer_order).collect();
    let residual = riemann_hurwitz_residual(ctx.effective_order(), &stabilizers);
    let mut assumptions = vec![BASE_FIELD_ASSUMPTION.to_string()];
    if ctx.infinitesimal_height > 1 {
        assumptions.push(MULTIPLIER_ASSUMPTION.to_string());
    }
    Ok(RamificationReport {
        effective_order: ctx.effective_order(),
        orbits,
        generic_index: 1,
        tube_ranks,
        bound_checks,
        riemann_hurwitz_residual: residual.to_string(),
        assumptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{classify_affine, mckay_quiver};
    use crate::fusion::fusion_for_spec;

    fn ctx(family: Family, n: u32, p: u32, r: u32) -> ActionContext {
        ActionContext::new(&GroupSchemeSpec::new(family, n, p, r).unwrap()).unwrap()
    }

    fn sizes_and_stabilizers(orbits: &[ExceptionalOrbit]) -> Vec<(u64, u64)> {
        let mut v: Vec<_> = orbits.iter().map(|o| (o.orbit_size, o.stabilizer_order)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn fixed_points_examples() {
        let z = |k| Cyclo::zeta_pow(5, k);
        let pts = mobius_fixed_points(&Mat2::diag(z(1), z(-1))).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(ProjPoint::is_torus_fixed));

        let c = |v| Cyclo::from_int(v, 4);
        let j = Mat2::new(c(0), c(1), c(-1), c(0));
        let pts = mobius_fixed_points(&j).unwrap();
        let i = Cyclo::zeta_pow(4, 1);
        let want = [ProjPoint::new(c(1), i.clone()).unwrap(),
            ProjPoint::new(c(1), -&i).unwrap()];
        assert_eq!(pts.len(), 2);
        assert!(want.iter().all(|w| pts.contains(w)));

        assert_eq!(mobius_fixed_points(&Mat2::scalar(-1, 4)), Err(Error::CentralElement));
        assert_eq!(mobius_fixed_points(&Mat2::identity(1)), Err(Error::CentralElement));
    }

    #[test]
    fn normalization_is_canonical() {
        let two = Cyclo::from_int(2, 3);
        let z = Cyclo::zeta_pow(3, 1);
        let a = ProjPoint::new(two.clone(), &two * &z).unwrap();
        let b = ProjPoint::new(Cyclo::one(3), z).unwrap();
        assert_eq!(a, b);
        assert!(ProjPoint::new(Cyclo::zero(3), Cyclo::zero(3)).is_err());
    }

    #[test]
    fn cyclic_order_three() {
        let c = ctx(Family::Cyclic, 3, 5, 1);
        assert_eq!(c.effective_order(), 3);
        let orbits = exceptional_orbits(&c).unwrap();
        assert_eq!(sizes_and_stabilizers(&orbits), vec![(1, 3), (1, 3)]);
        assert!(orbits.iter().all(|o| o.representative.is_torus_fixed()));
        let report = tube_rank_report(&c).unwrap();
        assert_eq!(report.tube_ranks, vec![3, 3]);
    }

    #[test]
    fn tetrahedral_and_icosahedral() {
        let t = ctx(Family::Tetrahedral, 1, 5, 1);
        assert_eq!(
            sizes_and_stabilizers(&exceptional_orbits(&t).unwrap()),
            vec![(4, 3), (4, 3), (6, 2)]
        );
        let i = ctx(Family::Icosahedral, 1, 7, 1);
        let report = tube_rank_report(&i).unwrap();
        assert_eq!(
            sizes_and_stabilizers(&report.orbits),
            vec![(12, 5), (20, 3), (30, 2)]
        );
        assert_eq!(report.tube_ranks, vec![2, 3, 5]);
        assert_eq!(riemann_hurwitz_check(&report), (true, Rational::zero()));
    }

    #[test]
    fn generic_point_is_unramified() {
        let i = ctx(Family::Icosahedral, 1, 7, 1);
        let n = i.group.conductor();
        let x = ProjPoint::new(Cyclo::one(n), Cyclo::from_int(7, n)).unwrap();
        assert_eq!(ramification_index(&i, &x), 1);
    }

    #[test]
    fn infinitesimal_multiplier() {
        let c = ctx(Family::Cyclic, 2, 3, 2);
        let orbits = exceptional_orbits(&c).unwrap();
        let torus: Vec<u64> = orbits
            .iter()
            .filter(|o| o.representative.is_torus_fixed())
            .map(|o| o.ramification_index)
            .collect();
        assert_eq!(torus, vec![6, 6]);
        assert_eq!(ramification_index(&c, &ProjPoint::zero(c.group.conductor())), 6);

        let c = ctx(Family::Cyclic, 1, 5, 2);
        assert_eq!(tube_rank_report(&c).unwrap().tube_ranks, vec![5, 5]);

        let d = ctx(Family::Dihedral, 1, 3, 3);
        let report = tube_rank_report(&d).unwrap();
        assert_eq!(report.tube_ranks, vec![2, 2, 9]);
        assert_eq!(report.assumptions.len(), 2);
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert!(riemann_hurwitz_residual(12, &[2, 3, 3]).is_zero());
        assert!(riemann_hurwitz_residual(60, &[2, 3, 5]).is_zero());
        assert!(riemann_hurwitz_residual(7, &[7, 7]).is_zero());
        assert!(!riemann_hurwitz_residual(60, &[2, 3, 4]).is_zero());
    }

    #[test]
    fn ranks_match_euclidean_type() {
        for (fam, n, p, r) in [
            (Family::Cyclic, 4, 3, 1),
            (Family::Cyclic, 2, 3, 2),
            (Family::Dihedral, 3, 5, 1),
            (Family::Dihedral, 2, 3, 2),
            (Family::Octahedral, 1, 5, 1),
        ] {
            let spec = GroupSchemeSpec::new(fam, n, p, r).unwrap();
            let t = classify_affine(&mckay_quiver(&fusion_for_spec(&spec).unwrap()).unwrap()).unwrap();
            let report = tube_rank_report(&ActionContext::new(&spec).unwrap()).unwrap();
            assert_eq!(report.tube_ranks, euclidean_tube_ranks(&t), "{fam} n={n} r={r}");
        }
    }
}
