//! Dixon-Schneider character tables.
//!
//! The class-multiplication matrices are simultaneously diagonalized over a
//! prime field `F_l` with `l = 1 mod exponent`, which yields the central
//! characters mod `l`. Character values are then lifted to `Q(zeta_e)` by
//! recovering the eigenvalue multiplicities of each class representative
//! with a discrete Fourier transform over `F_l`.

use crate::chartab::{CharacterTable, ClassFunction};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::groups::FiniteMatrixGroup;

const MAX_PRIME_ATTEMPTS: usize = 16;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Admissible primes `l = 1 mod exponent` with `l > 2|G|`, in increasing
/// order.
pub fn admissible_primes(exponent: u64, order: u64) -> impl Iterator<Item = u64> {
    (1..)
        .map(move |t| t * exponent + 1)
        .filter(move |&l| l > 2 * order && is_prime(l))
}

#[derive(Clone, Copy, Debug)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    /// Smallest generator of the multiplicative group.
    fn primitive_root(self) -> u64 {
        let q = self.0 - 1;
        let factors: Vec<u64> = (2..=q).filter(|&d| q.is_multiple_of(d) && is_prime(d)).collect();
        (2..self.0)
            .find(|&g| factors.iter().all(|&f| self.pow(g, q / f) != 1))
            .expect("prime field has a primitive root")
    }

    /// Row-reduce in place; returns pivot columns.
    fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of the null space of a `d x d` matrix (acting on column vectors).
    fn null_space(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = m.len();
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; d];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.sub(0, row[f]);
                }
                v
            })
            .collect()
    }
}

/// A subspace of `F_l^k` kept as a row-reduced basis.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(field: Fp, mut basis: Vec<Vec<u64>>) -> Self {
        let pivots = field.rref(&mut basis);
        Subspace { basis, pivots }
    }
}

/// Split `space` into eigenspaces of `matrix` (which must leave it
/// invariant). Returns `None` if the eigenvalues do not all lie in `F_l`.
fn split(field: Fp, matrix: &[Vec<u64>], space: &Subspace) -> Option<Vec<Subspace>> {
    let d = space.basis.len();
    let k = matrix.len();
    // restricted[t][s] = coordinate t of matrix * basis_s
    let mut restricted = vec![vec![0u64; d]; d];
    for (s, b) in space.basis.iter().enumerate() {
        let image: Vec<u64> = (0..k)
            .map(|row| {
                matrix[row]
                    .iter()
                    .zip(b)
                    .fold(0, |acc, (&m, &x)| field.add(acc, field.mul(m, x)))
            })
            .collect();
        for (t, &pc) in space.pivots.iter().enumerate() {
            restricted[t][s] = image[pc];
        }
    }
    let mut parts = Vec::new();
    let mut found = 0;
    for lambda in 0..field.0 {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(t, row)| {
                row.iter()
                    .enumerate()
                    .map(|(s, &x)| if s == t { field.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let kernel = field.null_space(&shifted);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let vectors = kernel
            .iter()
            .map(|coords| {
                (0..k)
                    .map(|col| {
                        coords.iter().zip(&space.basis).fold(0, |acc, (&c, b)| {
                            field.add(acc, field.mul(c, b[col]))
                        })
                    })
                    .collect()
            })
            .collect();
        parts.push(Subspace::new(field, vectors));
        if found == d {
            break;
        }
    }
    (found == d).then_some(parts)
}

fn attempt(group: &FiniteMatrixGroup, field: Fp) -> Result<CharacterTable> {
    let k = group.class_count();
    let order = group.order() as u64;
    let exponent = group.exponent();
    let sizes = group.class_sizes();
    let fail = |msg: String| Err(Error::CharacterTable(msg));

    // matrices[i][j][m] = c_ij^m; right eigenvectors are central characters
    let matrices: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    group
                        .class_mult_coeffs(i, j)
                        .into_iter()
                        .map(|c| c % field.0)
                        .collect()
                })
                .collect()
        })
        .collect();

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Subspace::new(field, identity)];
    for matrix in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.basis.len() == 1 {
                next.push(space);
                continue;
            }
            match split(field, matrix, &space) {
                Some(parts) => next.extend(parts),
                None => return fail(format!("eigenvalues outside F_{}", field.0)),
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return fail(format!("eigenspaces not separated mod {}", field.0));
    }

    let inverse_class: Vec<usize> = (0..k).map(|c| group.inverse_class(c)).collect();
    let root = field.pow(field.primitive_root(), (field.0 - 1) / exponent);
    let conductor = group.conductor();

    let mut rows = Vec::with_capacity(k);
    for space in &spaces {
        let w = &space.basis[0];
        if w[0] == 0 {
            return fail("central character vanishes at identity".into());
        }
        let w0 = field.inv(w[0]);
        let w: Vec<u64> = w.iter().map(|&x| field.mul(x, w0)).collect();

        // sum_j w_j w_j* / |C_j| = |G| / d^2
        let s = (0..k).fold(0, |acc, j| {
            let t = field.mul(w[j], w[inverse_class[j]]);
            field.add(acc, field.mul(t, field.inv(sizes[j] as u64 % field.0)))
        });
        if s == 0 {
            return fail("degenerate degree equation".into());
        }
        let d_sq = field.mul(order % field.0, field.inv(s));
        let Some(degree) = (1..).take_while(|d| d * d <= order).find(|d| d * d == d_sq) else {
            return fail(format!("no integer degree with d^2 = {d_sq} mod {}", field.0));
        };

        let modular: Vec<u64> = (0..k)
            .map(|j| field.mul(field.mul(degree, w[j]), field.inv(sizes[j] as u64)))
            .collect();

        let mut values = Vec::with_capacity(k);
        for class in 0..k {
            let rep = group.representative(class);
            let o = group.element_order(rep);
            let step = exponent / o;
            let z = field.pow(root, step);
            let z_inv = field.inv(z);
            let o_inv = field.inv(o % field.0);
            let powers: Vec<u64> = (0..o).map(|t| modular[group.power_class(class, t)]).collect();
            let mut terms = Vec::new();
            for e in 0..o {
                let w_e = field.pow(z_inv, e);
                let mut acc = 0;
                let mut tw = 1;
                for &chi in &powers {
                    acc = field.add(acc, field.mul(chi, tw));
                    tw = field.mul(tw, w_e);
                }
                let mult = field.mul(acc, o_inv);
                if mult > degree {
                    return fail(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree} mod {}",
                        field.0
                    ));
                }
                if mult > 0 {
                    terms.push(((e * step) as i64, crate::cyclo::int(mult as i64)));
                }
            }
            values.push(Cyclo::from_exponents(conductor, terms));
        }
        rows.push(ClassFunction::new(values));
    }

    let table = CharacterTable::from_rows(rows, sizes, group.order(), conductor)?;
    let violations = table.violations();
    if !violations.is_empty() {
        return fail(format!("lifted table invalid: {}", violations.join("; ")));
    }
    Ok(table)
}

/// Full character table; retries successive admissible primes until the
/// eigenspace splitting separates every character.
pub fn dixon_schneider(group: &FiniteMatrixGroup) -> Result<CharacterTable> {
    dixon_schneider_from(group, 0)
}

/// As [`dixon_schneider`], starting at the `skip`-th admissible prime.
pub fn dixon_schneider_from(group: &FiniteMatrixGroup, skip: usize) -> Result<CharacterTable> {
    let mut last = Error::CharacterTable("no admissible prime tried".into());
    for prime in admissible_primes(group.exponent(), group.order() as u64)
        .skip(skip)
        .take(MAX_PRIME_ATTEMPTS)
    {
        match attempt(group, Fp(prime)) {
            Ok(table) => return Ok(table),
            Err(e) => last = e,
        }
    }
    Err(last)
}
