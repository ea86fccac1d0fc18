use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{add_term, impl_linear_ops};
use crate::format::{rational_from_str, rational_to_string, write_terms, PolynomialJson, TermJson};
use crate::{Error, Result};

/// Polynomial in `y_0, ..., y_{nvars-1}` keyed by exponent vectors of length
/// `nvars`. Adding polynomials over different variable counts pads the
/// shorter one with zero exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl_linear_ops!(YPolynomial);

impl YPolynomial {
    fn align_with(&mut self, other: &Self) {
        if other.nvars > self.nvars {
            *self = self.with_nvars(other.nvars);
        }
    }

    fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut k = k.clone();
                k.resize(nvars, 0);
                (k, c.clone())
            })
            .collect();
        YPolynomial { nvars, terms }
    }

    pub fn zero(nvars: usize) -> Self {
        YPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigRational::one())
    }

    /// `c * Π y_k^{exps[k]}`.
    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_monomial(exps, c);
        p
    }

    /// `y_var^power` over `nvars` variables.
    pub fn variable_power(var: usize, power: u32, nvars: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[var] = power;
        Self::monomial(exps, BigRational::one())
    }

    pub(crate) fn add_monomial(&mut self, mut exps: Vec<u32>, c: BigRational) {
        if exps.len() > self.nvars {
            *self = self.with_nvars(exps.len());
        }
        exps.resize(self.nvars, 0);
        add_term(&mut self.terms, exps, c);
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, BigRational)>>(
        nvars: usize,
        iter: I,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in iter {
            p.add_monomial(k, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `Π y_k^{exps[k]}`; missing trailing exponents are zero.
    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        if exps.len() > self.nvars && exps[self.nvars..].iter().any(|&e| e != 0) {
            return BigRational::zero();
        }
        let mut key = exps[..exps.len().min(self.nvars)].to_vec();
        key.resize(self.nvars, 0);
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let nvars = self.nvars.max(other.nvars);
        let a = self.with_nvars(nvars);
        let b = other.with_nvars(nvars);
        let mut terms = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                add_term(&mut terms, k, ca * cb);
            }
        }
        YPolynomial { nvars, terms }
    }

    /// Product with `y_0^k + ... + y_{nvars-1}^k`.
    pub fn mul_power_sum(&self, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            for v in 0..self.nvars {
                let mut e = exps.clone();
                e[v] += k;
                add_term(&mut terms, e, c.clone());
            }
        }
        YPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Product with `y_var^power`.
    pub fn mul_variable_power(&self, var: usize, power: u32) -> Self {
        let mut out = if var >= self.nvars {
            self.with_nvars(var + 1)
        } else {
            self.clone()
        };
        out.terms = out
            .terms
            .into_iter()
            .map(|(mut k, c)| {
                k[var] += power;
                (k, c)
            })
            .collect();
        out
    }

    /// Sum of all coefficients, i.e. the value at `y_k = 1`.
    pub fn evaluate_at_ones(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars, "one value per variable");
        let mut total = BigRational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(exps) {
                for _ in 0..e {
                    term *= v;
                }
            }
            total += term;
        }
        total
    }

    /// Renames `y_k` to `y_{perm[k]}`; `perm` must be a permutation of `0..nvars`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut k = vec![0; self.nvars];
                for (i, &e) in exps.iter().enumerate() {
                    k[perm[i]] = e;
                }
                (k, c.clone())
            })
            .collect();
        YPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Terms ordered by total degree, then exponent vector, both descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u64 = a.iter().map(|&x| x as u64).sum();
            let db: u64 = b.iter().map(|&x| x as u64).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            basis: "y".into(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(k, c)| TermJson {
                    index: k.iter().map(|&x| x as u64).collect(),
                    coeff: rational_to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        if json.basis != "y" {
            return Err(Error::domain(format!(
                "expected basis \"y\", got {:?}",
                json.basis
            )));
        }
        let mut p = Self::zero(json.terms.iter().map(|t| t.index.len()).max().unwrap_or(0));
        for t in &json.terms {
            let exps = t
                .index
                .iter()
                .map(|&e| u32::try_from(e).map_err(|_| Error::domain("exponent too large")))
                .collect::<Result<Vec<u32>>>()?;
            p.add_monomial(exps, rational_from_str(&t.coeff)?);
        }
        Ok(p)
    }
}

impl std::ops::Mul for &YPolynomial {
    type Output = YPolynomial;
    fn mul(self, rhs: &YPolynomial) -> YPolynomial {
        self.multiply(rhs)
    }
}

fn monomial_label(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("y{i}")
            } else {
                format!("y{i}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_terms(
            self.sorted_terms()
                .into_iter()
                .map(|(k, c)| (c, monomial_label(k))),
        ))
    }
}
