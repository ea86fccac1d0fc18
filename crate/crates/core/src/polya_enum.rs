//! Pólya enumeration of weighted bipartite graphs.
//!
//! An `n × m` weighted bipartite graph is a function from cells to weights,
//! counted up to `S_n × S_m` acting on rows and columns. Its shape generating
//! function is `Z(S_n) ⋆ Z(S_m)`; specializing to `y_0..y_P` gives the type
//! generating function with weights bounded by `P`. Graphs without isolated
//! vertices (packed matrices) are extracted with
//!
//! ```text
//! g(n, m) = y_0^{nm} + Σ_{1≤k≤n, 1≤p≤m} F(k, p) · y_0^{nm - kp}
//! ```
//!
//! solved for `F(n, m)`. The brute-force census here is the independent
//! check for all of it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::WeightMatrix;
use crate::format::PolynomialJson;
use crate::symfunc::{h, Partition, PowerSumPolynomial, YPolynomial};
use crate::{Error, Result};

/// Default census budget, in canonicalization steps.
pub const DEFAULT_STEP_BUDGET: u128 = 100_000_000;

/// `(i_0, ..., i_P)`: number of cells carrying each weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeType(Vec<u32>);

impl EdgeType {
    pub fn new(counts: Vec<u32>) -> Self {
        EdgeType(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Sorted decreasingly with zeros erased.
    pub fn shape(&self) -> Partition {
        Partition::from_parts(self.0.clone())
    }

    /// Pads with zeros (or trims trailing zeros) to `len` slots.
    pub fn resized(&self, len: usize) -> Option<EdgeType> {
        if self.0.len() > len && self.0[len..].iter().any(|&c| c != 0) {
            return None;
        }
        let mut v = self.0.clone();
        v.resize(len, 0);
        Some(EdgeType(v))
    }

    /// Parses `2,2,2`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .enumerate()
            .map(|(i, x)| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(i, format!("bad type entry {x:?}")))
            })
            .collect::<Result<Vec<u32>>>()
            .map(EdgeType)
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Shape generating function `g(n, m) = Z(S_n) ⋆ Z(S_m)` in the power-sum basis.
pub fn g_power_sum(n: u32, m: u32) -> PowerSumPolynomial {
    h(n).star(&h(m))
}

/// Number of `S_n × S_m` classes of `n × m` matrices with shape `λ`.
pub fn shape_count(n: u32, m: u32, shape: &Partition) -> Result<BigInt> {
    if shape.size() != n as u64 * m as u64 {
        return Err(Error::domain(format!(
            "shape {shape} has size {}, expected {}",
            shape.size(),
            n as u64 * m as u64
        )));
    }
    Ok(integer(g_power_sum(n, m).monomial_coefficient(shape)))
}

/// Type generating function over `y_0..y_P`.
pub fn type_gf(n: u32, m: u32, max_weight: usize) -> YPolynomial {
    g_power_sum(n, m).specialize(max_weight)
}

/// Coefficient of `y^type` in a series.
pub fn type_coefficient(series: &YPolynomial, ty: &EdgeType) -> BigInt {
    integer(series.coefficient(ty.counts()))
}

fn integer(r: BigRational) -> BigInt {
    assert!(r.is_integer(), "orbit count {r} is not an integer");
    r.to_integer()
}

/// Memo table of the Feynman series `F(k, p)` for a fixed weight bound.
#[derive(Clone, Debug)]
pub struct FeynmanTable {
    max_weight: usize,
    cells: HashMap<(u32, u32), YPolynomial>,
}

#[derive(Serialize, Deserialize)]
struct FeynmanCellJson {
    rows: u32,
    cols: u32,
    series: PolynomialJson,
}

#[derive(Serialize, Deserialize)]
struct FeynmanTableJson {
    max_weight: usize,
    cells: Vec<FeynmanCellJson>,
}

impl FeynmanTable {
    pub fn new(max_weight: usize) -> Self {
        FeynmanTable {
            max_weight,
            cells: HashMap::new(),
        }
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `F(n, m)` over `y_0..y_P`, computing and caching every smaller cell.
    pub fn series(&mut self, n: u32, m: u32) -> YPolynomial {
        assert!(n >= 1 && m >= 1, "Feynman series need n, m >= 1");
        if let Some(f) = self.cells.get(&(n, m)) {
            return f.clone();
        }
        let nvars = self.max_weight + 1;
        let total = n * m;
        let mut f = type_gf(n, m, self.max_weight);
        f = &f - &YPolynomial::variable_power(0, total, nvars);
        for k in 1..=n {
            for p in 1..=m {
                if (k, p) == (n, m) {
                    continue;
                }
                let smaller = self.series(k, p);
                f = &f - &smaller.mul_variable_power(0, total - k * p);
            }
        }
        self.cells.insert((n, m), f.clone());
        f
    }

    pub fn to_json(&self) -> String {
        let mut keys: Vec<_> = self.cells.keys().copied().collect();
        keys.sort_unstable();
        let json = FeynmanTableJson {
            max_weight: self.max_weight,
            cells: keys
                .into_iter()
                .map(|(rows, cols)| FeynmanCellJson {
                    rows,
                    cols,
                    series: self.cells[&(rows, cols)].to_json(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: FeynmanTableJson =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        let mut table = FeynmanTable::new(json.max_weight);
        for cell in json.cells {
            let series = YPolynomial::from_json(&cell.series)?;
            table.cells.insert((cell.rows, cell.cols), series);
        }
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Loads a saved table, or starts an empty one when the file is missing.
    pub fn load_or_new(path: &Path, max_weight: usize) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(s) => {
                let t = Self::from_json(&s)?;
                if t.max_weight != max_weight {
                    return Err(Error::domain(format!(
                        "cache holds weight bound {}, requested {max_weight}",
                        t.max_weight
                    )));
                }
                Ok(t)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new(max_weight)),
            Err(e) => Err(e.into()),
        }
    }
}

/// `F(n, m)` over `y_0..y_P`.
pub fn feynman_series(n: u32, m: u32, max_weight: usize) -> YPolynomial {
    FeynmanTable::new(max_weight).series(n, m)
}

/// Canonicalization steps the census needs: matrices times column orders.
pub fn census_cost(n: usize, m: usize, max_weight: u32) -> u128 {
    let cells = (n * m) as u32;
    let matrices = (max_weight as u128 + 1)
        .checked_pow(cells)
        .unwrap_or(u128::MAX);
    let col_orders = (1..=m as u128).product::<u128>().max(1);
    matrices.saturating_mul(col_orders)
}

fn check_budget(n: usize, m: usize, max_weight: u32, budget: u128) -> Result<()> {
    let required = census_cost(n, m, max_weight);
    if required > budget {
        return Err(Error::Resource {
            what: format!("census of {n}x{m} matrices with weights <= {max_weight}"),
            required,
            cap: budget,
        });
    }
    Ok(())
}

/// Visits every canonical matrix in `{0..=P}^{n×m}` (packed ones only when
/// asked). The space is split by leading cells across rayon workers; the
/// per-task results come back in prefix order.
fn for_each_canonical<T, F>(
    n: usize,
    m: usize,
    max_weight: u32,
    packed_only: bool,
    visit: F,
) -> Vec<T>
where
    T: Send + Default,
    F: Fn(&WeightMatrix, &mut T) + Sync,
{
    let cells = n * m;
    let base = max_weight as u64 + 1;
    let mut prefix_len = 0;
    let mut tasks: u64 = 1;
    while prefix_len < cells && tasks < 256 {
        prefix_len += 1;
        tasks *= base;
    }
    (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut acc = T::default();
            let mut entries = vec![0u32; cells];
            let mut t = task;
            for slot in entries[..prefix_len].iter_mut().rev() {
                *slot = (t % base) as u32;
                t /= base;
            }
            let mut matrix = WeightMatrix::new(n, m, entries).expect("sized");
            loop {
                if (!packed_only || matrix.is_packed()) && matrix.is_canonical() {
                    visit(&matrix, &mut acc);
                }
                if !advance_suffix(&mut matrix, prefix_len, max_weight) {
                    break;
                }
            }
            acc
        })
        .collect()
}

fn advance_suffix(matrix: &mut WeightMatrix, prefix_len: usize, max_weight: u32) -> bool {
    for slot in matrix.entries_mut()[prefix_len..].iter_mut().rev() {
        if *slot < max_weight {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Number of orbits per type among all `n × m` matrices with entries in
/// `0..=P`, found by exhaustive canonicalization.
pub fn brute_force_census(
    n: usize,
    m: usize,
    max_weight: u32,
    packed_only: bool,
    budget: u128,
) -> Result<BTreeMap<EdgeType, u64>> {
    check_budget(n, m, max_weight, budget)?;
    let parts = for_each_canonical(
        n,
        m,
        max_weight,
        packed_only,
        |mat, acc: &mut BTreeMap<EdgeType, u64>| {
            *acc.entry(mat.type_with_bound(max_weight)).or_insert(0) += 1;
        },
    );
    let mut total = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *total.entry(k).or_insert(0) += v;
        }
    }
    Ok(total)
}

/// Canonical representatives of the Feynman diagrams (packed classes) of
/// size `n × m` with weights `<= P`, optionally of one type, sorted.
pub fn enumerate_diagrams(
    n: usize,
    m: usize,
    max_weight: u32,
    type_filter: Option<&EdgeType>,
    budget: u128,
) -> Result<Vec<WeightMatrix>> {
    check_budget(n, m, max_weight, budget)?;
    let filter =
        match type_filter {
            Some(t) => Some(t.resized(max_weight as usize + 1).ok_or_else(|| {
                Error::domain(format!("type {t} uses weights above {max_weight}"))
            })?),
            None => None,
        };
    let parts = for_each_canonical(
        n,
        m,
        max_weight,
        true,
        |mat, acc: &mut Vec<WeightMatrix>| {
            if filter
                .as_ref()
                .is_none_or(|f| mat.type_with_bound(max_weight) == *f)
            {
                acc.push(mat.clone());
            }
        },
    );
    let mut out: Vec<WeightMatrix> = parts.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Converts a census to a polynomial over `y_0..y_P`.
pub fn census_polynomial(census: &BTreeMap<EdgeType, u64>, max_weight: usize) -> YPolynomial {
    YPolynomial::from_terms(
        max_weight + 1,
        census
            .iter()
            .map(|(t, &c)| (t.counts().to_vec(), BigRational::from_integer(c.into()))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(s: &[(u32, [u32; 3])]) -> YPolynomial {
        YPolynomial::from_terms(
            3,
            s.iter()
                .map(|(c, e)| (e.to_vec(), BigRational::from_integer((*c).into()))),
        )
    }

    #[test]
    fn g_power_sum_small() {
        assert_eq!(g_power_sum(1, 1), PowerSumPolynomial::psi(1));
        assert_eq!(g_power_sum(2, 2), h(2).star(&h(2)));
        assert!(g_power_sum(2, 3).is_homogeneous());
        assert_eq!(g_power_sum(2, 3).degree(), 6);
    }

    #[test]
    fn shape_counts() {
        let sc = |parts: &[u32]| shape_count(2, 2, &Partition::from_parts(parts.to_vec())).unwrap();
        assert_eq!(sc(&[2, 2]), 3.into());
        assert_eq!(sc(&[4]), 1.into());
        assert_eq!(sc(&[1, 1, 1, 1]), 6.into());
        assert!(shape_count(2, 2, &Partition::from_parts(vec![3])).is_err());
    }

    #[test]
    fn type_gf_small() {
        assert_eq!(type_gf(1, 1, 1).to_string(), "y0 + y1");
        assert_eq!(
            type_gf(2, 2, 2).evaluate_at_ones(),
            BigRational::from_integer(27.into())
        );
        assert_eq!(
            type_coefficient(&type_gf(2, 2, 2), &EdgeType::new(vec![2, 1, 1])),
            3.into()
        );
    }

    #[test]
    fn small_feynman_series() {
        assert_eq!(
            feynman_series(1, 1, 2),
            y(&[(1, [0, 1, 0]), (1, [0, 0, 1])])
        );
        assert_eq!(
            feynman_series(2, 1, 2),
            y(&[(1, [0, 2, 0]), (1, [0, 1, 1]), (1, [0, 0, 2])])
        );
        // Three white vertices, one black: a multiset of three weights in {1, 2}.
        assert_eq!(
            feynman_series(3, 1, 2),
            y(&[
                (1, [0, 3, 0]),
                (1, [0, 2, 1]),
                (1, [0, 1, 2]),
                (1, [0, 0, 3])
            ])
        );
        assert!(feynman_series(1, 1, 0).is_zero());
    }

    #[test]
    fn census_examples() {
        let c = brute_force_census(1, 1, 2, true, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(
            c,
            BTreeMap::from([
                (EdgeType::new(vec![0, 1, 0]), 1),
                (EdgeType::new(vec![0, 0, 1]), 1)
            ])
        );
        let all = brute_force_census(2, 2, 2, false, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(all.values().sum::<u64>(), 27);
        let packed = brute_force_census(3, 2, 2, true, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(packed[&EdgeType::new(vec![2, 2, 2])], 8);
    }

    #[test]
    fn census_respects_budget() {
        let err = brute_force_census(3, 3, 2, false, 1000).unwrap_err();
        match err {
            Error::Resource { required, cap, .. } => {
                assert_eq!(required, 19683 * 6);
                assert_eq!(cap, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumerate_examples() {
        let d = enumerate_diagrams(
            3,
            2,
            2,
            Some(&EdgeType::new(vec![2, 2, 2])),
            DEFAULT_STEP_BUDGET,
        )
        .unwrap();
        assert_eq!(d.len(), 8);
        let one = enumerate_diagrams(1, 1, 1, None, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(one, vec![WeightMatrix::from_rows(&[vec![1]]).unwrap()]);
        let two = enumerate_diagrams(
            2,
            1,
            2,
            Some(&EdgeType::new(vec![0, 1, 1])),
            DEFAULT_STEP_BUDGET,
        )
        .unwrap();
        assert_eq!(
            two,
            vec![WeightMatrix::from_rows(&[vec![1], vec![2]]).unwrap()]
        );
        assert!(enumerate_diagrams(
            1,
            1,
            1,
            Some(&EdgeType::new(vec![0, 0, 1])),
            DEFAULT_STEP_BUDGET
        )
        .is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let mut t = FeynmanTable::new(2);
        t.series(2, 2);
        assert_eq!(t.len(), 4);
        let back = FeynmanTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.max_weight(), 2);
        let mut back = back;
        assert_eq!(back.series(2, 2), feynman_series(2, 2, 2));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.json");
        t.save(&path).unwrap();
        assert_eq!(FeynmanTable::load_or_new(&path, 2).unwrap().len(), 4);
        assert!(FeynmanTable::load_or_new(&path, 3).is_err());
        assert!(FeynmanTable::load_or_new(&dir.path().join("none.json"), 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn edge_type_helpers() {
        let t = EdgeType::parse("2, 2,2").unwrap();
        assert_eq!(t.to_string(), "(2,2,2)");
        assert_eq!(t.total(), 6);
        assert_eq!(t.resized(4).unwrap().counts(), &[2, 2, 2, 0]);
        assert!(t.resized(2).is_none());
        assert!(EdgeType::parse("1,a").is_err());
    }
}
