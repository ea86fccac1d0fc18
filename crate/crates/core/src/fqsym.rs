//! Free quasi-symmetric functions, stored in the `F^σ` basis.
//!
//! The two products are the permutation products lifted linearly:
//! `F^σ · F^τ = F^{σ →+ τ}` and `F^σ ⋆ F^τ = F^{σ ↗↘ τ}`. The projection `z`
//! sends `F^σ` to the cycle-type monomial of `σ`, so `z(underline_Z(G)) = Z(G)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cycle_index::frak_z_linear;
use crate::format::{
    parse_linear_combination, rational_from_str, rational_to_string, write_terms, PolynomialJson,
    TermJson,
};
use crate::permutations::{Permutation, PermutationGroup};
use crate::symfunc::{add_term, impl_linear_ops, PowerSumPolynomial};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FQSymElement {
    terms: BTreeMap<Permutation, BigRational>,
}

impl_linear_ops!(FQSymElement);

impl FQSymElement {
    fn align_with(&mut self, _other: &Self) {}

    pub fn zero() -> Self {
        Self::default()
    }

    /// `F^{id_0}`, the unit of the concatenation product.
    pub fn unit() -> Self {
        Self::basis(Permutation::identity(0))
    }

    pub fn basis(sigma: Permutation) -> Self {
        Self::term(sigma, BigRational::one())
    }

    pub fn term(sigma: Permutation, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, sigma, c);
        FQSymElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Permutation, BigRational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            add_term(&mut terms, k, c);
        }
        FQSymElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> BigRational {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    /// True when every term has degree `n`.
    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|s| s.degree() == n)
    }

    fn bilinear<F>(&self, other: &Self, op: F) -> Self
    where
        F: Fn(&Permutation, &Permutation) -> Permutation,
    {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_term(&mut terms, op(a, b), ca * cb);
            }
        }
        FQSymElement { terms }
    }

    /// Concatenation product: `F^σ · F^τ = F^{σ →+ τ}`.
    pub fn product(&self, other: &Self) -> Self {
        self.bilinear(other, Permutation::intransitive)
    }

    /// `F^σ ⋆ F^τ = F^{σ ↗↘ τ}`.
    pub fn star(&self, other: &Self) -> Self {
        self.bilinear(other, Permutation::cartesian)
    }

    /// Projection onto symmetric functions: `F^σ ↦ ψ_{cycle type of σ}`.
    pub fn z_morphism(&self) -> PowerSumPolynomial {
        frak_z_linear(self.terms.iter())
    }

    /// Coefficients in the `G` basis, using `G^σ = F^{σ^{-1}}`.
    pub fn to_g_basis(&self) -> BTreeMap<Permutation, BigRational> {
        self.terms
            .iter()
            .map(|(s, c)| (s.inverse(), c.clone()))
            .collect()
    }

    pub fn from_g_basis<I: IntoIterator<Item = (Permutation, BigRational)>>(iter: I) -> Self {
        Self::from_terms(iter.into_iter().map(|(s, c)| (s.inverse(), c)))
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            basis: "F".into(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson {
                    index: s.word().iter().map(|&x| x as u64).collect(),
                    coeff: rational_to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        if json.basis != "F" {
            return Err(Error::domain(format!(
                "expected basis \"F\", got {:?}",
                json.basis
            )));
        }
        let mut terms = BTreeMap::new();
        for t in &json.terms {
            add_term(
                &mut terms,
                permutation_from_index(&t.index, false)?,
                rational_from_str(&t.coeff)?,
            );
        }
        Ok(FQSymElement { terms })
    }

    /// Parses `1/2*F[0,1] + 1/2*F[1,0]`. With `one_indexed`, brackets hold
    /// `1..n`. A bare number is a multiple of the unit.
    pub fn parse(s: &str, one_indexed: bool) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (c, idx) in parse_linear_combination(s, 'F')? {
            add_term(&mut terms, permutation_from_index(&idx, one_indexed)?, c);
        }
        Ok(FQSymElement { terms })
    }

    /// Same terms written with 1-indexed permutations.
    pub fn to_one_indexed_string(&self) -> String {
        write_terms(self.terms.iter().map(|(s, c)| (c, label(s, 1))))
    }
}

fn label(s: &Permutation, offset: usize) -> String {
    if s.degree() == 0 {
        return String::new();
    }
    let v: Vec<String> = s.word().iter().map(|x| (x + offset).to_string()).collect();
    format!("F[{}]", v.join(","))
}

fn permutation_from_index(idx: &[u64], one_indexed: bool) -> Result<Permutation> {
    let word = idx
        .iter()
        .map(|&x| {
            let x = if one_indexed {
                x.checked_sub(1)
                    .ok_or_else(|| Error::domain("1-indexed permutation contains 0"))?
            } else {
                x
            };
            usize::try_from(x).map_err(|_| Error::domain(format!("entry {x} too large")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Permutation::new(word)
}

impl fmt::Display for FQSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_terms(
            self.terms.iter().map(|(s, c)| (c, label(s, 0))),
        ))
    }
}

impl std::ops::Mul for &FQSymElement {
    type Output = FQSymElement;
    fn mul(self, rhs: &FQSymElement) -> FQSymElement {
        self.product(rhs)
    }
}

/// Free quasi-symmetric cycle index: `(1/|G|) Σ_{σ ∈ G} F^σ`.
pub fn underline_z(group: &PermutationGroup) -> FQSymElement {
    let w = BigRational::new(BigInt::one(), BigInt::from(group.order()));
    FQSymElement::from_terms(group.elements().iter().map(|s| (s.clone(), w.clone())))
}

/// `H_n`, the cycle index of the symmetric group.
pub fn h_n(n: usize) -> FQSymElement {
    underline_z(&PermutationGroup::symmetric(n))
}

/// `E_n = underline_Z(A_n) - H_n` for `n >= 2`. For `n < 2`, where that
/// difference vanishes, this is `H_n` so that `z(E_n) = e_n` holds throughout.
pub fn e_n(n: usize) -> FQSymElement {
    if n < 2 {
        return h_n(n);
    }
    &underline_z(&PermutationGroup::alternating(n)) - &h_n(n)
}

/// `G^σ` written in the `F` basis.
pub fn g_basis(sigma: &Permutation) -> FQSymElement {
    FQSymElement::basis(sigma.inverse())
}

/// Words of length `deg σ` over the letters `0..k` whose standardization is
/// `σ^{-1}`; these are the words appearing in `F_σ` restricted to `k`
/// letters. Sorted lexicographically.
///
/// Reading `w` at positions `σ(0), σ(1), ...` must be weakly increasing, and
/// strictly so across each descent of `σ`.
pub fn realize_f(sigma: &Permutation, k: usize) -> Vec<Vec<usize>> {
    let n = sigma.degree();
    let s = sigma.word();
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut word = vec![0usize; n];
    fill(s, k, 0, 0, &mut word, &mut out);
    out.sort();
    out
}

fn fill(
    s: &[usize],
    k: usize,
    i: usize,
    lo: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == s.len() {
        out.push(word.clone());
        return;
    }
    let lo = if i > 0 && s[i - 1] > s[i] { lo + 1 } else { lo };
    for letter in lo..k {
        word[s[i]] = letter;
        fill(s, k, i + 1, letter, word, out);
    }
}

/// Renders a word over `0..k` with letters `a, b, c, ...`.
pub fn word_to_letters(w: &[usize]) -> String {
    w.iter()
        .map(|&x| {
            u8::try_from(x)
                .ok()
                .filter(|&b| b < 26)
                .map(|b| char::from(b'a' + b).to_string())
                .unwrap_or_else(|| format!("<{x}>"))
        })
        .collect()
}
