//! Character tables of the enumerated groups.
//!
//! Exceptional families go through the Dixon-Schneider engine in
//! [`crate::dixon`]; cyclic and binary dihedral groups have closed forms.
//! Rows are sorted by `(degree, values)` so tables are reproducible.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cyclo::{int, Cyclo, Rational};
use crate::dixon;
use crate::error::{Error, Result};
use crate::groups::{root_power, Family, FiniteMatrixGroup, GroupSchemeSpec};

/// One value per conjugacy class, in the group's class order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclo>) -> Self {
        ClassFunction { values }
    }

    pub fn zero(classes: usize, conductor: u32) -> Self {
        ClassFunction::new(vec![Cyclo::zero(conductor); classes])
    }

    /// Regular character: `|G|` at the identity class, zero elsewhere.
    pub fn regular(classes: usize, order: usize, conductor: u32) -> Self {
        let mut f = Self::zero(classes, conductor);
        f.values[0] = Cyclo::from_int(order as i64, conductor);
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class.
    pub fn degree(&self) -> Option<u64> {
        self.values.first()?.as_integer()?.to_u64()
    }

    pub fn product(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, by: &Rational) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|v| v.scale(by)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclo::is_zero)
    }
}

/// `(1/|G|) sum_C |C| phi(C) conj(psi(C))`.
pub fn hermitian_pairing(
    phi: &ClassFunction,
    psi: &ClassFunction,
    class_sizes: &[usize],
    order: usize,
) -> Cyclo {
    let conductor = phi
        .values
        .first()
        .map(Cyclo::conductor)
        .unwrap_or(1);
    let psi_bar: Vec<Cyclo> = psi.values.iter().map(Cyclo::conj).collect();
    pairing_with_conjugate(phi, &psi_bar, class_sizes, order, conductor)
}

/// `sum_C |C| phi(C) psi_bar(C)` accumulated in machine integers when every
/// value has small integer coefficients.
fn integer_weighted_sum(phi: &ClassFunction, psi_bar: &[Cyclo], class_sizes: &[usize]) -> Option<Cyclo> {
    let mut acc: Option<Vec<i128>> = None;
    let mut conductor = 1;
    for ((a, b), &size) in phi.values.iter().zip(psi_bar).zip(class_sizes) {
        let prod = a * b;
        conductor = prod.conductor();
        let coeffs = prod.small_integer_coeffs()?;
        let acc = acc.get_or_insert_with(|| vec![0; coeffs.len()]);
        for (t, c) in acc.iter_mut().zip(coeffs) {
            *t = t.checked_add((c as i128).checked_mul(size as i128)?)?;
        }
    }
    let coeffs = acc?
        .into_iter()
        .map(|v| Rational::from_integer(BigInt::from(v)))
        .collect();
    Cyclo::from_coeffs(conductor, coeffs).ok()
}

/// `(1/|G|) sum_C |C| phi(C) psi_bar(C)` with `psi_bar` already conjugated.
fn pairing_with_conjugate(
    phi: &ClassFunction,
    psi_bar: &[Cyclo],
    class_sizes: &[usize],
    order: usize,
    conductor: u32,
) -> Cyclo {
    if let Some(sum) = integer_weighted_sum(phi, psi_bar, class_sizes) {
        return sum.scale(&Rational::new(BigInt::from(1), BigInt::from(order)));
    }
    let mut acc = Cyclo::zero(conductor);
    for ((a, b), &size) in phi.values.iter().zip(psi_bar).zip(class_sizes) {
        acc = acc + (a * b).scale(&int(size as i64));
    }
    acc.scale(&Rational::new(BigInt::from(1), BigInt::from(order)))
}

pub fn inner_product(phi: &ClassFunction, psi: &ClassFunction, group: &FiniteMatrixGroup) -> Cyclo {
    hermitian_pairing(phi, psi, &group.class_sizes(), group.order())
}

/// Character of the 2-dimensional standard module: the trace of each class
/// representative.
pub fn std_character(group: &FiniteMatrixGroup) -> ClassFunction {
    ClassFunction::new(
        (0..group.class_count())
            .map(|c| {
                group
                    .element(group.representative(c))
                    .trace()
                    .embed(group.conductor())
                    .expect("group elements live at the group conductor")
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub irreducibles: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    pub class_sizes: Vec<usize>,
    pub order: usize,
    pub conductor: u32,
}

impl CharacterTable {
    /// Sorts rows canonically and fills in degrees.
    pub fn from_rows(
        mut rows: Vec<ClassFunction>,
        class_sizes: Vec<usize>,
        order: usize,
        conductor: u32,
    ) -> Result<Self> {
        let mut keyed = rows
            .drain(..)
            .map(|row| {
                let d = row.degree().ok_or_else(|| {
                    Error::CharacterTable("value at identity is not a positive integer".into())
                })?;
                Ok((d, row))
            })
            .collect::<Result<Vec<_>>>()?;
        keyed.sort();
        let (degrees, irreducibles) = keyed.into_iter().unzip();
        Ok(CharacterTable {
            irreducibles,
            degrees,
            class_sizes,
            order,
            conductor,
        })
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn inner_product(&self, phi: &ClassFunction, psi: &ClassFunction) -> Cyclo {
        hermitian_pairing(phi, psi, &self.class_sizes, self.order)
    }

    /// Exact check of row orthogonality, column orthogonality and the degree
    /// sum; returns a description of every failure.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.class_sizes.len();
        if self.len() != k {
            out.push(format!("{} irreducibles for {k} classes", self.len()));
            return out;
        }
        let deg_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if deg_sq != self.order as u64 {
            out.push(format!("sum of squared degrees {deg_sq} != {}", self.order));
        }
        for (i, d) in self.degrees.iter().enumerate() {
            if !(self.order as u64).is_multiple_of(*d) {
                out.push(format!("degree {d} of row {i} does not divide |G|"));
            }
        }
        let bars: Vec<Vec<Cyclo>> = self
            .irreducibles
            .iter()
            .map(|r| r.values.iter().map(Cyclo::conj).collect())
            .collect();
        for i in 0..k {
            for j in i..k {
                let ip = pairing_with_conjugate(
                    &self.irreducibles[i],
                    &bars[j],
                    &self.class_sizes,
                    self.order,
                    self.conductor,
                );
                let want = i64::from(i == j);
                if ip != Cyclo::from_int(want, ip.conductor()) {
                    out.push(format!("<chi{i}, chi{j}> = {ip}, expected {want}"));
                }
            }
        }
        // sum_chi chi(g_a) conj(chi(g_b)) = delta_ab |G| / |C_a|
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclo::zero(self.conductor);
                for (row, bar) in self.irreducibles.iter().zip(&bars) {
                    acc = acc + &row.values[a] * &bar[b];
                }
                let want = if a == b {
                    (self.order / self.class_sizes[a]) as i64
                } else {
                    0
                };
                if acc != Cyclo::from_int(want, self.conductor) {
                    out.push(format!("column sum ({a}, {b}) = {acc}, expected {want}"));
                }
            }
        }
        out
    }
}

/// Character table of `group`: closed form for cyclic and dihedral
/// families, Dixon-Schneider for the exceptional ones.
pub fn group_character_table(group: &FiniteMatrixGroup) -> Result<CharacterTable> {
    if group.spec().family.is_exceptional() {
        character_table(group)
    } else {
        closed_form_table(group)
    }
}

/// Dixon-Schneider table, for any enumerated group.
pub fn character_table(group: &FiniteMatrixGroup) -> Result<CharacterTable> {
    dixon::dixon_schneider(group)
}

/// Classical closed-form tables for the cyclic and binary dihedral groups.
pub fn closed_form_table(group: &FiniteMatrixGroup) -> Result<CharacterTable> {
    let spec: &GroupSchemeSpec = group.spec();
    let m = group.conductor();
    let n2 = 2 * spec.n;
    let zeta = |k: i64| Cyclo::zeta_pow(n2, k).embed(m).unwrap();
    let reps: Vec<_> = (0..group.class_count())
        .map(|c| group.element(group.representative(c)))
        .collect();
    let rows = match spec.family {
        Family::Cyclic => {
            let ks: Vec<i64> = reps
                .iter()
                .map(|g| root_power(&g.a, n2).expect("cyclic element is diagonal"))
                .collect();
            (0..n2 as i64)
                .map(|j| ClassFunction::new(ks.iter().map(|&k| zeta(j * k)).collect()))
                .collect()
        }
        Family::Dihedral => {
            // each class representative is a^k or x a^k with
            // a = diag(z, z^-1), x = [[0, 1], [-1, 0]], x a^k = [[0, z^-k], [-z^k, 0]]
            let shapes: Vec<(bool, i64)> = reps
                .iter()
                .map(|g| {
                    if g.b.is_zero() {
                        (false, root_power(&g.a, n2).expect("diagonal element"))
                    } else {
                        (true, root_power(&-&g.c, n2).expect("anti-diagonal element"))
                    }
                })
                .collect();
            let one = Cyclo::one(m);
            let x_sign = if spec.n.is_multiple_of(2) {
                one.clone()
            } else {
                Cyclo::zeta_pow(4, 1).embed(m).unwrap()
            };
            let mut rows = Vec::new();
            for (chi_a, chi_x) in [
                (one.clone(), one.clone()),
                (one.clone(), -&one),
                (-&one, x_sign.clone()),
                (-&one, -&x_sign),
            ] {
                rows.push(ClassFunction::new(
                    shapes
                        .iter()
                        .map(|&(anti, k)| {
                            let base = chi_a.pow(k.rem_euclid(n2 as i64) as u32);
                            if anti {
                                &chi_x * &base
                            } else {
                                base
                            }
                        })
                        .collect(),
                ));
            }
            for j in 1..spec.n as i64 {
                rows.push(ClassFunction::new(
                    shapes
                        .iter()
                        .map(|&(anti, k)| {
                            if anti {
                                Cyclo::zero(m)
                            } else {
                                zeta(j * k) + zeta(-j * k)
                            }
                        })
                        .collect(),
                ));
            }
            rows
        }
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    CharacterTable::from_rows(rows, group.class_sizes(), group.order(), m)
}

/// Multiplicities of the irreducibles in `phi`.
pub fn decompose(phi: &ClassFunction, table: &CharacterTable) -> Result<Vec<u64>> {
    table
        .irreducibles
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let ip = table.inner_product(phi, chi);
            let q = ip
                .as_rational()
                .map_err(|_| Error::NotACharacter(format!("<phi, chi{i}> = {ip} is irrational")))?;
            if !q.is_integer() || q.is_negative() {
                return Err(Error::NotACharacter(format!("<phi, chi{i}> = {q}")));
            }
            Ok(q.to_integer().to_u64().unwrap_or(u64::MAX))
        })
        .collect()
}

/// Norm `<phi, phi>` as a rational, if it is one.
pub fn norm_squared(phi: &ClassFunction, table: &CharacterTable) -> Option<Rational> {
    table.inner_product(phi, phi).as_rational().ok()
}
