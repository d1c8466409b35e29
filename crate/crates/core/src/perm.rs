//! Permutations of `{0, .., n-1}` and finite permutation groups generated by
//! closure from a generating set.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// Cap on the number of elements a generated group may have.
pub const GROUP_ORDER_CAP: usize = 10_080;

/// A permutation stored in one-line notation: `map[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// Builds from images of `0..n`; every image must appear exactly once.
    pub fn from_images(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n {
                return Err(Error::Invalid(format!(
                    "permutation image {v} out of range for degree {n}"
                )));
            }
            if seen[v] {
                return Err(Error::Invalid(format!("permutation repeats image {v}")));
            }
            seen[v] = true;
        }
        Ok(Self { map })
    }

    /// Builds from 1-indexed one-line notation, e.g. `[2, 3, 1]`.
    pub fn from_one_line_1indexed(line: &[usize]) -> Result<Self> {
        if line.iter().any(|&v| v == 0) {
            return Err(Error::Invalid("one-line notation is 1-indexed".into()));
        }
        Self::from_images(line.iter().map(|&v| v - 1).collect())
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!(
                "transposition ({i} {j}) outside degree {n}"
            )));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Ok(Self { map })
    }

    /// The n-cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn full_cycle(n: usize) -> Self {
        Self {
            map: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self.compose(other)` applies `other` first: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Self {
            map: (0..self.degree()).map(|i| self.map[other.map[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.degree();
        let mut inv = vec![0; n];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// Cycle lengths as a partition of the degree, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Sign: `(-1)^(n - number_of_cycles)`.
    pub fn sign(&self) -> i64 {
        let cycles = self.cycle_type().len();
        if (self.degree() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.cycle_type().iter().fold(1, |l, &c| lcm(l, c))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finite permutation group, stored as an explicit element list.
///
/// The identity is always element `0`; elements appear in breadth-first
/// order from the generating set with lexicographic tie-breaking inside each
/// layer, so the element order is a pure function of the generators.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    /// Closure of a generating set under composition.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut known: BTreeSet<Permutation> = BTreeSet::new();
        known.insert(identity.clone());
        let mut frontier: Vec<Permutation> = vec![identity];
        while !frontier.is_empty() {
            let mut next: BTreeSet<Permutation> = BTreeSet::new();
            for e in &frontier {
                for g in generators {
                    let p = e.compose(g);
                    if !known.contains(&p) && !next.contains(&p) {
                        next.insert(p);
                    }
                }
            }
            for p in &next {
                known.insert(p.clone());
                elements.push(p.clone());
                if elements.len() > GROUP_ORDER_CAP {
                    return Err(Error::GroupTooLarge {
                        cap: GROUP_ORDER_CAP,
                    });
                }
            }
            frontier = next.into_iter().collect();
        }
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let group = Self {
            degree,
            elements,
            index,
        };
        group.check_structure()?;
        Ok(group)
    }

    /// Trivial group on `n` letters.
    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group always valid")
    }

    /// Full symmetric group on `n` letters (`n <= 7` under the order cap).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("symmetric group needs degree >= 1".into()));
        }
        if n == 1 {
            return Ok(Self::trivial(1));
        }
        let gens = vec![Permutation::transposition(n, 0, 1)?, Permutation::full_cycle(n)];
        Self::generate(n, &gens)
    }

    /// Cyclic group generated by the full n-cycle.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group needs degree >= 1".into()));
        }
        Self::generate(n, &[Permutation::full_cycle(n)])
    }

    fn check_structure(&self) -> Result<()> {
        if self.elements.is_empty() || !self.elements[0].is_identity() {
            return Err(Error::Invalid("group must list the identity first".into()));
        }
        if self.index.len() != self.elements.len() {
            return Err(Error::Invalid("group contains duplicate elements".into()));
        }
        for p in &self.elements {
            if !self.index.contains_key(&p.inverse()) {
                return Err(Error::Invalid(
                    "generated set is not inverse-closed".into(),
                ));
            }
        }
        Ok(())
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

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Whether this group is all of `S_n` for its degree.
    pub fn is_full_symmetric(&self) -> bool {
        let mut expected: usize = 1;
        for k in 2..=self.degree {
            expected = match expected.checked_mul(k) {
                Some(v) => v,
                None => return false,
            };
        }
        self.order() == expected
    }
}
