//! Fusion data for the distinguished 2-dimensional module: simple labels,
//! their dimensions, and `a[i][j]`, the multiplicity of `S_i` in
//! `L(1)^[1] (x) S_j`.

use serde::{Deserialize, Serialize};

use crate::chartab::{group_character_table, std_character, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, UGraph};
use crate::groups::{build_group, Family, GroupSchemeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FusionSource {
    CharacterTheoretic,
    WeightCombinatorial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionDatum {
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    pub matrix: Vec<Vec<u64>>,
    pub source: FusionSource,
}

impl FusionDatum {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `a[i][j]`.
    pub fn mult(&self, i: usize, j: usize) -> u64 {
        self.matrix[i][j]
    }

    /// Parse and verify a serialized datum.
    pub fn from_json(text: &str) -> Result<Self> {
        let datum: FusionDatum =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let violations = verify_fusion(&datum);
        if violations.is_empty() {
            Ok(datum)
        } else {
            Err(Error::FusionViolations(violations))
        }
    }

    fn graph(&self) -> UGraph {
        UGraph {
            adj: self.matrix.clone(),
        }
    }
}

fn label_for(index: usize, degree: u64) -> String {
    if degree == 1 {
        format!("chi{index}")
    } else {
        format!("rho{index}")
    }
}

/// `a[i][j] = <chi_L chi_j, chi_i>`.
pub fn fusion_from_chartab(table: &CharacterTable, chi_l: &ClassFunction) -> Result<FusionDatum> {
    let k = table.len();
    let mut matrix = vec![vec![0u64; k]; k];
    for j in 0..k {
        let product = chi_l.product(&table.irreducibles[j]);
        let column = crate::chartab::decompose(&product, table)?;
        for (i, m) in column.into_iter().enumerate() {
            matrix[i][j] = m;
        }
    }
    Ok(FusionDatum {
        labels: (0..k).map(|i| label_for(i, table.degrees[i])).collect(),
        dims: table.degrees.clone(),
        matrix,
        source: FusionSource::CharacterTheoretic,
    })
}

/// Fusion datum of the multiplicative quotient, built from weights.
///
/// Cyclic: labels `w0..w(m-1)` for `Z/m`, `m = 2 n p^(r-1)`, with
/// `L(1)^[1] (x) k_l = k_(l+1) + k_(l-1)`. Dihedral with `N = n p^(r-1)`:
/// four 1-dimensional labels `e0..e3` and `N - 1` two-dimensional labels
/// `v1..v(N-1)` arranged as `D~(N+2)`.
pub fn fusion_from_weights(spec: &GroupSchemeSpec) -> Result<FusionDatum> {
    let mult = spec.infinitesimal_multiplier();
    match spec.family {
        Family::Cyclic => {
            let m = (2 * spec.n as u64 * mult) as usize;
            let mut matrix = vec![vec![0u64; m]; m];
            for j in 0..m {
                matrix[(j + 1) % m][j] += 1;
                matrix[(j + m - 1) % m][j] += 1;
            }
            Ok(FusionDatum {
                labels: (0..m).map(|l| format!("w{l}")).collect(),
                dims: vec![1; m],
                matrix,
                source: FusionSource::WeightCombinatorial,
            })
        }
        Family::Dihedral => {
            let big_n = (spec.n as u64 * mult) as usize;
            let size = big_n + 3;
            let mut g = UGraph::new(size);
            // indices 0..4 are e0..e3, then v1..v(N-1)
            let v = |k: usize| 3 + k;
            if big_n == 1 {
                // D~3 = A~3: the 4-cycle e0 - e2 - e1 - e3
                for (a, b) in [(0, 2), (2, 1), (1, 3), (3, 0)] {
                    g.add_edge(a, b, 1);
                }
            } else {
                g.add_edge(0, v(1), 1);
                g.add_edge(1, v(1), 1);
                g.add_edge(2, v(big_n - 1), 1);
                g.add_edge(3, v(big_n - 1), 1);
                for k in 1..big_n - 1 {
                    g.add_edge(v(k), v(k + 1), 1);
                }
            }
            let mut labels: Vec<String> = (0..4).map(|i| format!("e{i}")).collect();
            labels.extend((1..big_n).map(|k| format!("v{k}")));
            let mut dims = vec![1; 4];
            dims.extend(std::iter::repeat_n(2, big_n - 1));
            Ok(FusionDatum {
                labels,
                dims,
                matrix: g.adj,
                source: FusionSource::WeightCombinatorial,
            })
        }
        other => Err(Error::UnsupportedFamily(other.to_string())),
    }
}

/// Fusion datum for a spec: character-theoretic for reduced specs (`r = 1`),
/// weight-combinatorial otherwise.
pub fn fusion_for_spec(spec: &GroupSchemeSpec) -> Result<FusionDatum> {
    spec.validate()?;
    if spec.r > 1 {
        return fusion_from_weights(spec);
    }
    let group = build_group(spec)?;
    let table = group_character_table(&group)?;
    fusion_from_chartab(&table, &std_character(&group))
}

/// Every violated invariant, as text; empty on success.
pub fn verify_fusion(d: &FusionDatum) -> Vec<String> {
    let mut out = Vec::new();
    let k = d.labels.len();
    if d.dims.len() != k {
        out.push(format!("{} dims for {k} labels", d.dims.len()));
    }
    if d.matrix.len() != k || d.matrix.iter().any(|row| row.len() != k) {
        out.push(format!("matrix is not {k} x {k}"));
        return out;
    }
    if d.dims.len() != k {
        return out;
    }
    if d.dims.contains(&0) {
        out.push("zero dimension".into());
    }
    let mut seen = std::collections::BTreeSet::new();
    for l in &d.labels {
        if !seen.insert(l) {
            out.push(format!("duplicate label {l:?}"));
        }
    }
    for j in 0..k {
        let total = (0..k).try_fold(0u64, |acc, i| {
            d.matrix[i][j]
                .checked_mul(d.dims[i])
                .and_then(|x| x.checked_add(acc))
        });
        let want = d.dims[j].checked_mul(2);
        if total.is_none() || total != want {
            out.push(format!(
                "column {j}: sum_i a[i][j] dim_i = {total:?} != 2 dim_j = {want:?}"
            ));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if d.matrix[i][j] != d.matrix[j][i] {
                out.push(format!(
                    "a[{i}][{j}] = {} != a[{j}][{i}] = {}",
                    d.matrix[i][j], d.matrix[j][i]
                ));
            }
        }
    }
    out
}

/// A label bijection carrying `a` onto `b` (dimensions and multiplicities
/// preserved), if one exists.
pub fn fusion_isomorphism(a: &FusionDatum, b: &FusionDatum) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    find_isomorphism(&a.graph(), &a.dims, &b.graph(), &b.dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chartab_fusion(family: Family, n: u32, p: u32) -> FusionDatum {
        fusion_for_spec(&GroupSchemeSpec::new(family, n, p, 1).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_order_four_is_a_four_cycle() {
        let d = chartab_fusion(Family::Cyclic, 2, 5);
        assert!(verify_fusion(&d).is_empty());
        for j in 0..4 {
            let col: Vec<u64> = (0..4).map(|i| d.matrix[i][j]).collect();
            assert_eq!(col.iter().sum::<u64>(), 2);
            assert_eq!(col[j], 0);
        }
        let w = fusion_from_weights(&GroupSchemeSpec::cyclic(2, 5, 1).unwrap()).unwrap();
        assert!(fusion_isomorphism(&d, &w).is_some());
    }

    #[test]
    fn quaternion_fusion_is_d4_star() {
        let d = chartab_fusion(Family::Dihedral, 2, 5);
        assert_eq!(d.dims, vec![1, 1, 1, 1, 2]);
        for i in 0..4 {
            assert_eq!(d.matrix[i][4], 1);
            assert_eq!(d.matrix[4][i], 1);
        }
        assert_eq!(d.labels, vec!["chi0", "chi1", "chi2", "chi3", "rho4"]);
    }

    #[test]
    fn icosahedral_conservation() {
        let d = chartab_fusion(Family::Icosahedral, 1, 7);
        assert_eq!(d.len(), 9);
        assert!(verify_fusion(&d).is_empty());
        assert_eq!(d.dims, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn weights_sizes() {
        let c = fusion_from_weights(&GroupSchemeSpec::cyclic(3, 5, 1).unwrap()).unwrap();
        assert_eq!(c.len(), 6);
        assert!(fusion_isomorphism(&c, &chartab_fusion(Family::Cyclic, 3, 5)).is_some());
        let c = fusion_from_weights(&GroupSchemeSpec::cyclic(1, 3, 2).unwrap()).unwrap();
        assert_eq!(c.len(), 6);
        let d = fusion_from_weights(&GroupSchemeSpec::dihedral(1, 3, 2).unwrap()).unwrap();
        assert_eq!(d.len(), 6);
        assert!(verify_fusion(&d).is_empty());
        assert!(fusion_from_weights(&GroupSchemeSpec::exceptional(Family::Octahedral, 5).unwrap()).is_err());
    }

    #[test]
    fn reduced_weights_match_characters() {
        for n in 1..=6u32 {
            for fam in [Family::Cyclic, Family::Dihedral] {
                let p = if n % 5 == 0 { 7 } else { 5 };
                let spec = GroupSchemeSpec::new(fam, n, p, 1).unwrap();
                let w = fusion_from_weights(&spec).unwrap();
                let c = fusion_for_spec(&spec).unwrap();
                assert!(fusion_isomorphism(&w, &c).is_some(), "{fam} n={n}");
            }
        }
    }

    #[test]
    fn corrupted_matrix_is_reported() {
        let mut d = chartab_fusion(Family::Icosahedral, 1, 7);
        d.matrix[0][1] += 1;
        let v = verify_fusion(&d);
        assert!(!v.is_empty());
        assert!(v.iter().any(|s| s.contains("column 1")));
        assert!(v.iter().any(|s| s.contains("a[0][1]")));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let d = chartab_fusion(Family::Dihedral, 3, 5);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(FusionDatum::from_json(&text).unwrap(), d);
        let bad = text.replacen("[0,", "[3,", 1);
        assert!(FusionDatum::from_json(&bad).is_err());
        assert!(FusionDatum::from_json("{").is_err());
    }
}
