use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{add_term, impl_linear_ops, partition_from_index, Partition, YPolynomial};
use crate::format::{
    parse_linear_combination, rational_from_str, rational_to_string, write_terms, PolynomialJson,
    TermJson,
};
use crate::{Error, Result};

/// `Σ d_λ m_λ` in the monomial basis.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MonomialPolynomial {
    terms: BTreeMap<Partition, BigRational>,
}

impl_linear_ops!(MonomialPolynomial);

impl MonomialPolynomial {
    fn align_with(&mut self, _other: &Self) {}

    pub(crate) fn from_map(mut terms: BTreeMap<Partition, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        MonomialPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, BigRational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            add_term(&mut terms, k, c);
        }
        MonomialPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigRational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Evaluates on the letters `y_0..y_P`: `m_λ` becomes the sum of all
    /// distinct monomials whose sorted nonzero exponents are `λ`.
    pub fn specialize(&self, max_weight: usize) -> YPolynomial {
        let nvars = max_weight + 1;
        let mut out = YPolynomial::zero(nvars);
        for (lambda, c) in &self.terms {
            if lambda.len() > nvars {
                continue;
            }
            let mut exps: Vec<u32> = lambda.parts().to_vec();
            exps.resize(nvars, 0);
            exps.sort_unstable();
            loop {
                out.add_monomial(exps.clone(), c.clone());
                if !next_permutation(&mut exps) {
                    break;
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            basis: "m".into(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermJson {
                    index: k.parts().iter().map(|&x| x as u64).collect(),
                    coeff: rational_to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        if json.basis != "m" {
            return Err(Error::domain(format!(
                "expected basis \"m\", got {:?}",
                json.basis
            )));
        }
        let mut terms = BTreeMap::new();
        for t in &json.terms {
            add_term(
                &mut terms,
                partition_from_index(&t.index)?,
                rational_from_str(&t.coeff)?,
            );
        }
        Ok(MonomialPolynomial { terms })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (c, idx) in parse_linear_combination(s, 'm')? {
            add_term(&mut terms, partition_from_index(&idx)?, c);
        }
        Ok(MonomialPolynomial { terms })
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for MonomialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_terms(self.terms.iter().map(|(k, c)| {
            let label = if k.is_empty() {
                String::new()
            } else {
                format!("m{k}")
            };
            (c, label)
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialize_counts_distinct_arrangements() {
        let m = MonomialPolynomial::parse("m[2,1,1]").unwrap();
        // three letters: y0^2y1y2 + y0y1^2y2 + y0y1y2^2
        assert_eq!(m.specialize(2).num_terms(), 3);
        assert!(MonomialPolynomial::parse("m[1,1,1,1]")
            .unwrap()
            .specialize(2)
            .is_zero());
        assert_eq!(
            MonomialPolynomial::parse("m[1]")
                .unwrap()
                .specialize(1)
                .to_string(),
            "y0 + y1"
        );
    }

    #[test]
    fn json_round_trip() {
        let m = MonomialPolynomial::parse("3*m[2,2] + m[4] - 1/2*m[1]").unwrap();
        assert_eq!(MonomialPolynomial::from_json(&m.to_json()).unwrap(), m);
        assert_eq!(m.to_string(), "-1/2*m[1] + 3*m[2,2] + m[4]");
    }
}
