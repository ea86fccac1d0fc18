//! Group specifications accepted on the command line:
//! `S:n`, `A:n`, `C:n`, `gens:W1;W2;...` and `file:PATH`.

use cyclestar::permutations::{parse_cycles, DEFAULT_ELEMENT_CAP};
use cyclestar::symfunc::{e, h};
use cyclestar::{Error, Permutation, PermutationGroup, PowerSumPolynomial, Result};

pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Generated(usize, Vec<Permutation>),
}

impl GroupSpec {
    pub fn parse(spec: &str, one_indexed: bool) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("expected KIND:ARG, got {spec:?}"),
        })?;
        let offset = kind.len() + 1;
        let degree = || {
            rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                position: offset,
                message: format!("bad degree {rest:?}"),
            })
        };
        match kind {
            "S" => Ok(GroupSpec::Symmetric(degree()?)),
            "A" => Ok(GroupSpec::Alternating(degree()?)),
            "C" => Ok(GroupSpec::Cyclic(degree()?)),
            "gens" => {
                let mut gens = Vec::new();
                let mut pos = offset;
                for w in rest.split(';') {
                    let g = Permutation::parse(w, one_indexed).map_err(|e| shift(e, pos))?;
                    gens.push(g);
                    pos += w.len() + 1;
                }
                generated(gens)
            }
            "file" => {
                let text = std::fs::read_to_string(rest)?;
                let mut gens = Vec::new();
                let mut pending_cycles = Vec::new();
                for line in text
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                {
                    if line.starts_with('(') {
                        pending_cycles.push(parse_cycles(line)?);
                    } else {
                        gens.push(Permutation::parse(line, one_indexed)?);
                    }
                }
                // Cycle notation does not fix a degree; use the largest point seen.
                let n = gens
                    .iter()
                    .map(Permutation::degree)
                    .chain(
                        pending_cycles
                            .iter()
                            .flatten()
                            .flat_map(|c| c.elements().iter().map(|&x| x + 1)),
                    )
                    .max()
                    .unwrap_or(0);
                for cycles in pending_cycles {
                    gens.push(Permutation::from_cycles(n, &cycles)?);
                }
                generated(gens)
            }
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown group kind {other:?}"),
            }),
        }
    }

    /// The full element list, refusing groups above the element cap.
    pub fn build(&self) -> Result<PermutationGroup> {
        let check = |n: usize, divisor: u128| -> Result<()> {
            let order = (1..=n as u128)
                .try_fold(1u128, |acc, k| acc.checked_mul(k))
                .unwrap_or(u128::MAX)
                / divisor;
            if order > DEFAULT_ELEMENT_CAP as u128 {
                return Err(Error::Resource {
                    what: "group elements".into(),
                    required: order,
                    cap: DEFAULT_ELEMENT_CAP as u128,
                });
            }
            Ok(())
        };
        match self {
            GroupSpec::Symmetric(n) => {
                check(*n, 1)?;
                Ok(PermutationGroup::symmetric(*n))
            }
            GroupSpec::Alternating(n) => {
                check(*n, 2)?;
                Ok(PermutationGroup::alternating(*n))
            }
            GroupSpec::Cyclic(n) => Ok(PermutationGroup::cyclic(*n)),
            GroupSpec::Generated(n, gens) => {
                PermutationGroup::closure(*n, gens, DEFAULT_ELEMENT_CAP)
            }
        }
    }

    /// Cycle index, using `h_n` and `h_n + e_n` for the symmetric and
    /// alternating groups so that large degrees need no enumeration.
    pub fn cycle_index(&self) -> Result<PowerSumPolynomial> {
        match self {
            GroupSpec::Symmetric(n) => Ok(h(degree_u32(*n)?)),
            GroupSpec::Alternating(n) if *n >= 2 => {
                let n = degree_u32(*n)?;
                Ok(&h(n) + &e(n))
            }
            _ => Ok(cyclestar::cycle_index(&self.build()?)),
        }
    }
}

fn degree_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Domain(format!("degree {n} too large")))
}

fn generated(gens: Vec<Permutation>) -> Result<GroupSpec> {
    let n = gens.first().map_or(0, Permutation::degree);
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: n,
            right: g.degree(),
        });
    }
    Ok(GroupSpec::Generated(n, gens))
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}
