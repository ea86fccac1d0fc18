//! Cycle-type monomials of permutations and Pólya cycle indices of groups.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::permutations::{Permutation, PermutationGroup};
use crate::symfunc::{Partition, PowerSumPolynomial};
use crate::{Error, Result};

/// Cycle type of `σ` as a partition of its degree (fixed points included).
pub fn cycle_type(sigma: &Permutation) -> Partition {
    Partition::from_parts(
        sigma
            .cycle_lengths()
            .into_iter()
            .map(|l| l as u32)
            .collect(),
    )
}

/// `Π_j ψ_j^{c_j(σ)}` where `c_j(σ)` counts the `j`-cycles of `σ`.
pub fn frak_z(sigma: &Permutation) -> PowerSumPolynomial {
    PowerSumPolynomial::monomial(cycle_type(sigma))
}

/// Linear extension of [`frak_z`] to rational combinations of permutations.
pub fn frak_z_linear<'a, I>(combination: I) -> PowerSumPolynomial
where
    I: IntoIterator<Item = (&'a Permutation, &'a BigRational)>,
{
    PowerSumPolynomial::from_terms(
        combination
            .into_iter()
            .map(|(p, c)| (cycle_type(p), c.clone())),
    )
}

/// `Z(G) = (1/|G|) Σ_{σ∈G} frak_z(σ)`, summed over an explicit element list.
pub fn cycle_index_of_elements(elements: &[Permutation]) -> Result<PowerSumPolynomial> {
    if elements.is_empty() {
        return Err(Error::domain("cycle index of an empty element set"));
    }
    let mut counts: HashMap<Partition, u64> = HashMap::new();
    for p in elements {
        *counts.entry(cycle_type(p)).or_insert(0) += 1;
    }
    let order = BigInt::from(elements.len());
    Ok(PowerSumPolynomial::from_terms(counts.into_iter().map(
        |(lambda, count)| (lambda, BigRational::new(BigInt::from(count), order.clone())),
    )))
}

/// Pólya cycle index of `G`.
pub fn cycle_index(group: &PermutationGroup) -> PowerSumPolynomial {
    cycle_index_of_elements(group.elements()).expect("groups contain the identity")
}

/// `Σ_{|λ|=n, |ρ|=m} (z_λ z_ρ)^{-1} Π_{i,j} ψ_{lcm(λ_i,ρ_j)}^{gcd(λ_i,ρ_j)}`,
/// the closed form of `Z(S_n)` starred with `Z(S_m)`.
pub fn symmetric_star_closed_form(n: u32, m: u32) -> PowerSumPolynomial {
    let mut out = PowerSumPolynomial::zero();
    for lambda in Partition::all(n) {
        for rho in Partition::all(m) {
            let c = BigRational::new(BigInt::one(), lambda.z() * rho.z());
            out += &PowerSumPolynomial::term(crate::symfunc::star_monomials(&lambda, &rho), c);
        }
    }
    out
}
