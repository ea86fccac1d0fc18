//! Permutations of `{0, ..., n-1}` stored as image words, their cycles, the
//! intransitive and Cartesian products, and explicit permutation groups.
//!
//! A permutation is written as the word whose `i`-th letter is the image of
//! `i`, so `1320` sends `0 -> 1`, `1 -> 3`, `2 -> 2`, `3 -> 0`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::{Error, Result};

/// Default bound on the number of elements a group closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image word, checking that it is a bijection.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for (pos, &x) in word.iter().enumerate() {
            if x >= n {
                return Err(Error::domain(format!(
                    "letter {x} at position {pos} is out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::domain(format!(
                    "letter {x} repeated at position {pos}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (0..n).collect(),
        }
    }

    /// The permutation of `0..degree` with the given cycles; unspecified points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Cycle]) -> Result<Self> {
        let mut word: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            let l = c.len();
            for (k, &x) in c.elements().iter().enumerate() {
                if x >= degree {
                    return Err(Error::domain(format!(
                        "cycle element {x} out of range for degree {degree}"
                    )));
                }
                if touched[x] {
                    return Err(Error::domain(format!("point {x} appears in two cycles")));
                }
                touched[x] = true;
                word[x] = c.elements()[(k + 1) % l];
            }
        }
        Ok(Permutation { word })
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Image of `i` under the natural action.
    pub fn apply(&self, i: usize) -> Result<usize> {
        self.word.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            degree: self.degree(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { word: inv }
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            word: other.word.iter().map(|&x| self.word[x]).collect(),
        })
    }

    /// Cycles in canonical form (minimum first), sorted by their minimum.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut elements = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                elements.push(x);
                x = self.word[x];
            }
            // `start` is the smallest unseen point, hence the cycle minimum.
            out.push(Cycle { elements });
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Cycle::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if !seen[start] {
                count += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.word[x];
                }
            }
        }
        count
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        if (self.degree() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Intransitive product: the word of `self` followed by the word of
    /// `other` shifted by `self.degree()`.
    pub fn intransitive(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut word = Vec::with_capacity(n + other.degree());
        word.extend_from_slice(&self.word);
        word.extend(other.word.iter().map(|&x| x + n));
        Permutation { word }
    }

    /// Cartesian product on `n*m` points: `j + n*k` is sent to
    /// `self(j) + n*other(k)`.
    pub fn cartesian(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let m = other.degree();
        let mut word = Vec::with_capacity(n * m);
        for k in 0..m {
            let shift = n * other.word[k];
            word.extend(self.word.iter().map(|&x| x + shift));
        }
        Permutation { word }
    }

    /// Same product as [`Permutation::cartesian`], assembled cycle pair by
    /// cycle pair: an `l`-cycle and an `l'`-cycle contribute `gcd(l, l')`
    /// cycles of length `lcm(l, l')`.
    pub fn cartesian_by_cycles(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut cycles = Vec::new();
        for c in self.cycles() {
            for d in other.cycles() {
                cycles.extend(c.cartesian(&d, n));
            }
        }
        Permutation::from_cycles(n * other.degree(), &cycles)
            .expect("cycle pairs partition the Cartesian ground set")
    }

    /// No proper prefix `0..=k` (with `k < n-1`) is mapped onto itself.
    pub fn is_connected(&self) -> bool {
        let n = self.degree();
        let mut max = 0;
        for (k, &x) in self.word.iter().enumerate().take(n.saturating_sub(1)) {
            max = max.max(x);
            if max == k {
                return false;
            }
        }
        true
    }

    /// Maximal factorization into connected permutations under the
    /// intransitive product. The empty permutation has no factors.
    pub fn connected_factorization(&self) -> Vec<Permutation> {
        let mut factors = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (k, &x) in self.word.iter().enumerate() {
            max = max.max(x);
            if max == k {
                factors.push(Permutation {
                    word: self.word[start..=k].iter().map(|&y| y - start).collect(),
                });
                start = k + 1;
            }
        }
        factors
    }

    /// Parses a word; `one_indexed` shifts every letter down by one.
    ///
    /// Words without commas are read one digit per letter; with commas each
    /// field is a decimal number. The empty string is the empty permutation.
    pub fn parse(s: &str, one_indexed: bool) -> Result<Self> {
        let trimmed = s.trim();
        let mut letters = Vec::new();
        if trimmed.contains(',') {
            let mut offset = s.len() - s.trim_start().len();
            for field in trimmed.split(',') {
                let token = field.trim();
                let value: usize = token
                    .parse()
                    .map_err(|_| Error::parse(offset, format!("bad letter {token:?}")))?;
                letters.push((offset, value));
                offset += field.len() + 1;
            }
        } else {
            let base = s.len() - s.trim_start().len();
            for (i, ch) in trimmed.char_indices() {
                let value = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(base + i, format!("bad letter {ch:?}")))?;
                letters.push((base + i, value as usize));
            }
        }
        let mut word = Vec::with_capacity(letters.len());
        for (pos, v) in letters {
            if one_indexed {
                if v == 0 {
                    return Err(Error::parse(pos, "letter 0 in a 1-indexed word"));
                }
                word.push(v - 1);
            } else {
                word.push(v);
            }
        }
        Permutation::new(word).map_err(|e| match e {
            Error::Domain(msg) => Error::parse(0, msg),
            other => other,
        })
    }

    /// Text form with letters shifted up by one.
    pub fn to_one_indexed_string(&self) -> String {
        let shifted: Vec<usize> = self.word.iter().map(|x| x + 1).collect();
        format_word(&shifted, self.degree() <= 9)
    }
}

fn format_word(word: &[usize], compact: bool) -> String {
    if compact {
        word.iter().map(|x| x.to_string()).collect()
    } else {
        word.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word, self.degree() <= 10))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, false)
    }
}

/// Ordered by degree, then lexicographically by word.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Standardization: the permutation recording the relative ranks of the
/// letters of `w`, equal letters ranked left to right. Returned 0-indexed.
pub fn standardize<T: Ord>(w: &[T]) -> Permutation {
    let mut order: Vec<usize> = (0..w.len()).collect();
    // stable sort keeps equal letters in reading order
    order.sort_by(|&a, &b| w[a].cmp(&w[b]));
    let mut word = vec![0; w.len()];
    for (rank, &pos) in order.iter().enumerate() {
        word[pos] = rank;
    }
    Permutation { word }
}

/// All permutations of degree `n` in lexicographic order of their words.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut w = current.clone();
        if let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) {
            let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
            w.swap(i - 1, j);
            w[i..].reverse();
            next = Some(w);
        }
        Some(Permutation { word: current })
    })
}

/// A cycle `(i_0 i_1 ... i_{l-1})`, stored rotated so its minimum comes first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    pub fn new(mut elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::domain("a cycle needs at least one element"));
        }
        let distinct: HashSet<usize> = elements.iter().copied().collect();
        if distinct.len() != elements.len() {
            return Err(Error::domain("cycle elements must be distinct"));
        }
        let min_pos = (0..elements.len()).min_by_key(|&i| elements[i]).unwrap();
        elements.rotate_left(min_pos);
        Ok(Cycle { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cycles of the Cartesian product of `self` (acting on `0..n`) with
    /// `other`: for each `s < gcd(l, l')`, the cycle
    /// `(φ(s, 0), φ(s+1, 1), ..., φ(s+L-1, L-1))` with `L = lcm(l, l')` and
    /// `φ(k, k') = i_{k mod l} + n * j_{k' mod l'}`.
    pub fn cartesian(&self, other: &Cycle, n: usize) -> Vec<Cycle> {
        let l = self.len();
        let lp = other.len();
        let g = l.gcd(&lp);
        let big = l.lcm(&lp);
        let phi = |k: usize, kp: usize| self.elements[k % l] + n * other.elements[kp % lp];
        (0..g)
            .map(|s| {
                let elements = (0..big).map(|t| phi(s + t, t)).collect();
                Cycle::new(elements).expect("distinct by construction")
            })
            .collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// `(0 2 3 1)(4 6 7 5)`.
pub fn format_cycles(cycles: &[Cycle]) -> String {
    cycles.iter().map(|c| c.to_string()).collect()
}

/// Parses `(0 2 3 1)(4 5)`; elements may be separated by spaces or commas.
pub fn parse_cycles(s: &str) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some((pos, ch)) = chars.next() {
        match ch {
            c if c.is_whitespace() => {}
            '(' => {
                let mut body = String::new();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == ')' {
                        closed = true;
                        break;
                    }
                    body.push(c);
                }
                if !closed {
                    return Err(Error::parse(pos, "unclosed cycle"));
                }
                let mut elements = Vec::new();
                for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
                    if token.is_empty() {
                        continue;
                    }
                    elements.push(
                        token.parse().map_err(|_| {
                            Error::parse(pos, format!("bad cycle element {token:?}"))
                        })?,
                    );
                }
                out.push(Cycle::new(elements).map_err(|e| Error::parse(pos, e.to_string()))?);
            }
            other => return Err(Error::parse(pos, format!("unexpected {other:?}"))),
        }
    }
    Ok(out)
}

/// A finite permutation group given by its full element list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermutationGroup {
    degree: usize,
    // sorted, distinct
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Checks degrees, identity, closure under composition and inverses.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        if !set.contains(&Permutation::identity(degree)) {
            return Err(Error::domain("group does not contain the identity"));
        }
        for a in &set {
            if !set.contains(&a.inverse()) {
                return Err(Error::domain(format!("inverse of {a} missing")));
            }
            for b in &set {
                if !set.contains(&a.compose(b)?) {
                    return Err(Error::domain(format!("{a} ∘ {b} missing")));
                }
            }
        }
        Ok(Self::from_unsorted(degree, elements))
    }

    fn from_unsorted(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        PermutationGroup { degree, elements }
    }

    /// Smallest group containing `generators`, built by breadth-first
    /// multiplication. Fails once more than `cap` elements have been found.
    pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource {
                            what: "group closure elements".into(),
                            required: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_unsorted(degree, seen.into_iter().collect()))
    }

    pub fn trivial(n: usize) -> Self {
        PermutationGroup {
            degree: n,
            elements: vec![Permutation::identity(n)],
        }
    }

    pub fn symmetric(n: usize) -> Self {
        PermutationGroup {
            degree: n,
            elements: all_permutations(n).collect(),
        }
    }

    pub fn alternating(n: usize) -> Self {
        PermutationGroup {
            degree: n,
            elements: all_permutations(n).filter(|p| p.sign() == 1).collect(),
        }
    }

    /// Generated by the rotation `i -> i+1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n.max(1))
            .map(|s| Permutation {
                word: (0..n).map(|i| (i + s) % n).collect(),
            })
            .collect();
        Self::from_unsorted(n, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// `G1 × G2` acting on the disjoint union `0..n+m`.
    pub fn intransitive(&self, other: &PermutationGroup) -> PermutationGroup {
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| a.intransitive(b)))
            .collect();
        Self::from_unsorted(self.degree + other.degree, elements)
    }

    /// `G1 × G2` acting on the Cartesian product `0..n*m`.
    ///
    /// The element map is injective whenever both degrees are positive; if
    /// it is not, the result has order below `|G1|·|G2|` (see
    /// [`PermutationGroup::cartesian_is_faithful`]).
    pub fn cartesian(&self, other: &PermutationGroup) -> PermutationGroup {
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| a.cartesian(b)))
            .collect();
        Self::from_unsorted(self.degree * other.degree, elements)
    }

    pub fn cartesian_is_faithful(&self, other: &PermutationGroup) -> bool {
        self.cartesian(other).order() == self.order() * other.order()
    }
}
