//! Symmetric functions with exact rational coefficients, in the power-sum
//! basis.
//!
//! [`PowerSumPolynomial`] carries two products: the ordinary product `×`
//! (union of cycle types) and `star`, defined on power-sum monomials by
//!
//! ```text
//! Π ψ_i^{a_i}  ⋆  Π ψ_j^{b_j}  =  Π ψ_{lcm(i,j)}^{a_i b_j gcd(i,j)}
//! ```
//!
//! which is the image of the Cartesian product of permutations under the
//! cycle-type map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::format::{
    parse_linear_combination, rational_from_str, rational_to_string, write_terms, PolynomialJson,
    TermJson,
};
use crate::{Error, Result};

mod monomial;
mod partition;
mod prime;
mod ypoly;

pub use monomial::MonomialPolynomial;
pub use partition::Partition;
pub use prime::{prime_exponents, sup_product, PrimeExponents, PrimeSignatureElement};
pub use ypoly::YPolynomial;

pub(crate) fn add_term<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, coeff: BigRational) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Implements `+`, `-`, unary `-` and scalar `*` for a type holding its
/// coefficients in a `terms: BTreeMap<_, BigRational>` field.
macro_rules! impl_linear_ops {
    ($ty:ty) => {
        impl<'a> std::ops::Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }

        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                self += &rhs;
                self
            }
        }

        impl<'a> std::ops::AddAssign<&'a $ty> for $ty {
            fn add_assign(&mut self, rhs: &'a $ty) {
                self.align_with(rhs);
                for (k, c) in &rhs.terms {
                    $crate::symfunc::add_term(&mut self.terms, k.clone(), c.clone());
                }
            }
        }

        impl<'a> std::ops::Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out.align_with(rhs);
                for (k, c) in &rhs.terms {
                    $crate::symfunc::add_term(&mut out.terms, k.clone(), -c.clone());
                }
                out
            }
        }

        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(mut self) -> $ty {
                for c in self.terms.values_mut() {
                    *c = -c.clone();
                }
                self
            }
        }

        impl $ty {
            /// Multiplies every coefficient by `c`.
            pub fn scale(&self, c: &num_rational::BigRational) -> $ty {
                let mut out = self.clone();
                if num_traits::Zero::is_zero(c) {
                    out.terms.clear();
                } else {
                    for v in out.terms.values_mut() {
                        *v *= c;
                    }
                }
                out
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn num_terms(&self) -> usize {
                self.terms.len()
            }
        }
    };
}
pub(crate) use impl_linear_ops;

/// Finite rational combination of power-sum monomials `ψ_λ`, each indexed by
/// the partition listing its power-sum indices with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PowerSumPolynomial {
    terms: BTreeMap<Partition, BigRational>,
}

impl_linear_ops!(PowerSumPolynomial);

impl PowerSumPolynomial {
    fn align_with(&mut self, _other: &Self) {}

    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty monomial, unit for `×`.
    pub fn one() -> Self {
        Self::monomial(Partition::empty())
    }

    /// `ψ_k`; `ψ_1` is the unit for `star`.
    pub fn psi(k: u32) -> Self {
        Self::monomial(Partition::from_parts(vec![k]))
    }

    pub fn monomial(lambda: Partition) -> Self {
        Self::term(lambda, BigRational::one())
    }

    pub fn term(lambda: Partition, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, lambda, coeff);
        PowerSumPolynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, BigRational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            add_term(&mut terms, k, c);
        }
        PowerSumPolynomial { terms }
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

    /// Largest `|λ|` among the terms (0 for the zero polynomial).
    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Partition::size);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Ordinary product of symmetric functions.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_term(&mut terms, a.union(b), ca * cb);
            }
        }
        PowerSumPolynomial { terms }
    }

    /// The `star` product, extended bilinearly from [`star_monomials`].
    pub fn star(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_term(&mut terms, star_monomials(a, b), ca * cb);
            }
        }
        PowerSumPolynomial { terms }
    }

    /// Coefficients in the monomial basis.
    pub fn to_monomial(&self) -> MonomialPolynomial {
        let mut by_degree: BTreeMap<u64, Vec<(&Partition, &BigRational)>> = BTreeMap::new();
        for (lambda, c) in &self.terms {
            by_degree
                .entry(lambda.size())
                .or_default()
                .push((lambda, c));
        }
        let mut out = BTreeMap::new();
        for (degree, terms) in by_degree {
            for mu in Partition::all(degree as u32) {
                let mut coeff = BigRational::zero();
                for (lambda, c) in &terms {
                    let count = power_sum_monomial_coefficient(lambda, &mu);
                    if !count.is_zero() {
                        coeff += *c * BigRational::from_integer(count);
                    }
                }
                add_term(&mut out, mu, coeff);
            }
        }
        MonomialPolynomial::from_map(out)
    }

    /// Coefficient of `m_μ` in the monomial expansion.
    pub fn monomial_coefficient(&self, mu: &Partition) -> BigRational {
        let mut coeff = BigRational::zero();
        for (lambda, c) in &self.terms {
            if lambda.size() == mu.size() {
                coeff += c * BigRational::from_integer(power_sum_monomial_coefficient(lambda, mu));
            }
        }
        coeff
    }

    /// Substitutes `ψ_k -> y_0^k + ... + y_P^k` and expands.
    pub fn specialize(&self, max_weight: usize) -> YPolynomial {
        let nvars = max_weight + 1;
        let mut out = YPolynomial::zero(nvars);
        let mut cache: HashMap<Partition, YPolynomial> = HashMap::new();
        for (lambda, c) in &self.terms {
            let expanded = cache.entry(lambda.clone()).or_insert_with(|| {
                lambda
                    .parts()
                    .iter()
                    .fold(YPolynomial::one(nvars), |acc, &k| acc.mul_power_sum(k))
            });
            out += &expanded.scale(c);
        }
        out
    }

    /// The prime-signature image of a single monic power-sum monomial.
    pub fn phi(&self) -> Result<PrimeSignatureElement> {
        let mut iter = self.terms.iter();
        match (iter.next(), iter.next()) {
            (Some((lambda, c)), None) if c.is_one() => {
                Ok(PrimeSignatureElement::of_monomial(lambda))
            }
            _ => Err(Error::domain(
                "phi is defined only on a single power-sum monomial with coefficient 1",
            )),
        }
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            basis: "p".into(),
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
        if json.basis != "p" {
            return Err(Error::domain(format!(
                "expected basis \"p\", got {:?}",
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
        Ok(PowerSumPolynomial { terms })
    }

    /// Parses `1/2*p[1,1] + 1/2*p[2]`; a bare number is a multiple of `1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (c, idx) in parse_linear_combination(s, 'p')? {
            add_term(&mut terms, partition_from_index(&idx)?, c);
        }
        Ok(PowerSumPolynomial { terms })
    }
}

pub(crate) fn partition_from_index(idx: &[u64]) -> Result<Partition> {
    let parts = idx
        .iter()
        .map(|&x| {
            u32::try_from(x)
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::domain(format!("invalid partition part {x}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Partition::from_parts(parts))
}

impl std::ops::Mul for &PowerSumPolynomial {
    type Output = PowerSumPolynomial;
    fn mul(self, rhs: &PowerSumPolynomial) -> PowerSumPolynomial {
        self.multiply(rhs)
    }
}

impl fmt::Display for PowerSumPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_terms(self.terms.iter().map(|(k, c)| {
            let label = if k.is_empty() {
                String::new()
            } else {
                format!("p{k}")
            };
            (c, label)
        })))
    }
}

/// `ψ_λ ⋆ ψ_ρ`: every pair of parts `(i, j)` contributes `gcd(i, j)` parts
/// equal to `lcm(i, j)`.
pub fn star_monomials(a: &Partition, b: &Partition) -> Partition {
    let mut parts = Vec::new();
    for &i in a.parts() {
        for &j in b.parts() {
            let g = i.gcd(&j);
            let l = i / g * j;
            parts.extend(std::iter::repeat_n(l, g as usize));
        }
    }
    Partition::from_parts(parts)
}

/// `z_λ`.
pub fn z_of(lambda: &Partition) -> BigInt {
    lambda.z()
}

/// Complete homogeneous function `h_n = Σ_{|λ|=n} ψ_λ / z_λ`.
pub fn h(n: u32) -> PowerSumPolynomial {
    PowerSumPolynomial::from_terms(Partition::all(n).into_iter().map(|l| {
        let c = BigRational::new(BigInt::one(), l.z());
        (l, c)
    }))
}

/// Elementary function `e_n = Σ_{|λ|=n} (-1)^{n-ℓ(λ)} ψ_λ / z_λ`.
pub fn e(n: u32) -> PowerSumPolynomial {
    PowerSumPolynomial::from_terms(Partition::all(n).into_iter().map(|l| {
        let sign = if (n as usize - l.len()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let c = BigRational::new(BigInt::from(sign), l.z());
        (l, c)
    }))
}

/// Coefficient of the monomial `y^μ` (with `μ` read as an exponent vector)
/// in `ψ_λ` expanded over `ℓ(μ)` variables: the number of ways to send each
/// part of `λ` to a variable so the per-variable sums equal `μ`.
fn power_sum_monomial_coefficient(lambda: &Partition, mu: &Partition) -> BigInt {
    if lambda.size() != mu.size() {
        return BigInt::zero();
    }
    let target: Vec<u32> = mu.parts().to_vec();
    let mut states: HashMap<Vec<u32>, BigInt> =
        HashMap::from([(vec![0; target.len()], BigInt::one())]);
    for &part in lambda.parts() {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (state, count) in &states {
            for i in 0..target.len() {
                if state[i] + part <= target[i] {
                    let mut s = state.clone();
                    s[i] += part;
                    *next.entry(s).or_insert_with(BigInt::zero) += count;
                }
            }
        }
        states = next;
    }
    states.remove(&target).unwrap_or_else(BigInt::zero)
}
