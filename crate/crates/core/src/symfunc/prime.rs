use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Partition;

/// Prime -> exponent, nonzero exponents only.
pub type PrimeExponents = BTreeMap<u64, u32>;

/// `ν(n)`: the prime-exponent vector of `n >= 1`.
pub fn prime_exponents(mut n: u64) -> PrimeExponents {
    assert!(n >= 1, "prime exponents are defined for positive integers");
    let mut out = PrimeExponents::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Element of the integral monoid algebra of `(ℕ^primes, sup)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PrimeSignatureElement {
    terms: BTreeMap<PrimeExponents, BigInt>,
}

impl PrimeSignatureElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(v: PrimeExponents) -> Self {
        Self::from_terms([(v, BigInt::from(1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (PrimeExponents, BigInt)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, key: PrimeExponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `Σ_i i·α_i δ_{ν(i)}` for `Π ψ_i^{α_i}` given by its index partition.
    pub fn of_monomial(lambda: &Partition) -> Self {
        let mut out = Self::zero();
        for &i in lambda.parts() {
            out.add_term(prime_exponents(i as u64), BigInt::from(i));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeExponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for &PrimeSignatureElement {
    type Output = PrimeSignatureElement;
    fn add(self, rhs: &PrimeSignatureElement) -> PrimeSignatureElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

fn sup(a: &PrimeExponents, b: &PrimeExponents) -> PrimeExponents {
    let mut out = a.clone();
    for (&p, &e) in b {
        let slot = out.entry(p).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

/// Bilinear product: coefficients multiply, exponent vectors combine by
/// componentwise maximum.
pub fn sup_product(a: &PrimeSignatureElement, b: &PrimeSignatureElement) -> PrimeSignatureElement {
    let mut out = PrimeSignatureElement::zero();
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            out.add_term(sup(ka, kb), ca * cb);
        }
    }
    out
}

impl fmt::Display for PrimeSignatureElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let v: Vec<String> = k.iter().map(|(p, e)| format!("{p}:{e}")).collect();
                format!("{c}*δ{{{}}}", v.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
