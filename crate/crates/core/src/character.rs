//! Class functions on finite permutation groups, including the irreducible
//! characters of symmetric groups (computed by rim-hook recursion) and of
//! cyclic groups.

use crate::comb::partitions;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::scalar::Scalar;
use num_complex::Complex;
use std::collections::HashMap;

/// A complex-valued function on a group, stored by element index.
#[derive(Clone, Debug)]
pub struct CharacterFunction<T: Scalar> {
    label: String,
    values: Vec<Complex<T>>,
}

/// Diagnostics from checking a character against the group structure.
#[derive(Clone, Copy, Debug)]
pub struct CharacterDiagnostics {
    /// `(1/|G|) * sum |chi(sigma)|^2`; equals 1 for an irreducible character.
    pub norm_squared: f64,
    /// Largest `|chi(tau sigma tau^-1) - chi(sigma)|` over the sampled pairs.
    pub max_class_defect: f64,
}

impl CharacterDiagnostics {
    pub fn is_irreducible_within(&self, tol: f64) -> bool {
        (self.norm_squared - 1.0).abs() <= tol && self.max_class_defect <= tol
    }
}

impl<T: Scalar> CharacterFunction<T> {
    pub fn from_element_values(
        group: &PermutationGroup,
        label: impl Into<String>,
        values: Vec<Complex<T>>,
    ) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "character has {} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        Ok(Self {
            label: label.into(),
            values,
        })
    }

    /// Constant function 1.
    pub fn trivial(group: &PermutationGroup) -> Self {
        Self {
            label: "trivial".into(),
            values: vec![Complex::new(T::one(), T::zero()); group.order()],
        }
    }

    /// The sign of each permutation.
    pub fn sign(group: &PermutationGroup) -> Self {
        Self {
            label: "sign".into(),
            values: group
                .elements()
                .iter()
                .map(|p| Complex::new(T::real(p.sign() as f64), T::zero()))
                .collect(),
        }
    }

    /// Irreducible character of the full symmetric group indexed by a
    /// partition of its degree, evaluated by the rim-hook recursion.
    pub fn sn_irreducible(group: &PermutationGroup, partition: &[usize]) -> Result<Self> {
        if !group.is_full_symmetric() {
            return Err(Error::Invalid(
                "partition-indexed characters require the full symmetric group".into(),
            ));
        }
        let n = group.degree();
        let total: usize = partition.iter().sum();
        if total != n {
            return Err(Error::NotSamePartitionSize);
        }
        if partition.windows(2).any(|w| w[0] < w[1]) || partition.iter().any(|&p| p == 0) {
            return Err(Error::Invalid(
                "partition parts must be positive and non-increasing".into(),
            ));
        }
        let mut memo: HashMap<(Vec<usize>, Vec<usize>), i64> = HashMap::new();
        let mut by_type: HashMap<Vec<usize>, i64> = HashMap::new();
        let mut values = Vec::with_capacity(group.order());
        for p in group.elements() {
            let ct = p.cycle_type();
            let v = *by_type
                .entry(ct.clone())
                .or_insert_with(|| rim_hook_character(partition, &ct, &mut memo));
            values.push(Complex::new(T::real(v as f64), T::zero()));
        }
        let label = format!(
            "sn:{}",
            partition
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(Self { label, values })
    }

    /// Character `g^j -> exp(2 pi i j k / N)` of a cyclic group of order `N`.
    pub fn cyclic(group: &PermutationGroup, k: usize) -> Result<Self> {
        let n = group.order();
        let generator = group
            .elements()
            .iter()
            .find(|p| p.order() == n)
            .ok_or(Error::NotCyclic)?;
        let mut exponent_of = vec![usize::MAX; n];
        let mut power = Permutation::identity(group.degree());
        for j in 0..n {
            let idx = group
                .element_index(&power)
                .ok_or_else(|| Error::Invalid("generator power escaped the group".into()))?;
            exponent_of[idx] = j;
            power = generator.compose(&power);
        }
        if exponent_of.iter().any(|&j| j == usize::MAX) {
            return Err(Error::NotCyclic);
        }
        let values = (0..n)
            .map(|idx| {
                let j = exponent_of[idx];
                let theta = std::f64::consts::TAU * (j as f64) * (k as f64) / (n as f64);
                Complex::new(T::real(theta.cos()), T::real(theta.sin()))
            })
            .collect();
        Ok(Self {
            label: format!("cyclic:{k}"),
            values,
        })
    }

    /// Builds a character of the full symmetric group from values keyed by
    /// cycle type (a partition of the degree, non-increasing).
    pub fn from_cycle_type_values(
        group: &PermutationGroup,
        label: impl Into<String>,
        by_type: &HashMap<Vec<usize>, Complex<T>>,
    ) -> Result<Self> {
        if !group.is_full_symmetric() {
            return Err(Error::Invalid(
                "cycle-type keyed characters require the full symmetric group".into(),
            ));
        }
        let mut values = Vec::with_capacity(group.order());
        for p in group.elements() {
            let ct = p.cycle_type();
            let v = by_type.get(&ct).ok_or_else(|| {
                Error::Invalid(format!(
                    "missing character value for cycle type {ct:?}"
                ))
            })?;
            values.push(*v);
        }
        Ok(Self {
            label: label.into(),
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Value on the element with the given index.
    pub fn value(&self, index: usize) -> Complex<T> {
        self.values[index]
    }

    /// Value on a permutation, looked up through the group.
    pub fn value_on(&self, group: &PermutationGroup, p: &Permutation) -> Result<Complex<T>> {
        let idx = group
            .element_index(p)
            .ok_or_else(|| Error::Invalid("element not in group".into()))?;
        Ok(self.values[idx])
    }

    /// Value on the identity; real and positive for a genuine character.
    pub fn degree(&self) -> T {
        self.values[0].re
    }

    /// Norm and class-constancy diagnostics against the group structure.
    ///
    /// Class constancy is checked exhaustively for groups of order at most
    /// 360 and on a strided sample of conjugators otherwise.
    pub fn verify(&self, group: &PermutationGroup) -> Result<CharacterDiagnostics> {
        if self.values.len() != group.order() {
            return Err(Error::DimensionMismatch(
                "character length does not match group order".into(),
            ));
        }
        let order = group.order();
        let norm_squared = self
            .values
            .iter()
            .map(|z| z.norm_sqr().as_f64())
            .sum::<f64>()
            / order as f64;
        let conjugators: Vec<usize> = if order <= 360 {
            (0..order).collect()
        } else {
            let stride = (order / 32).max(1);
            (0..order).step_by(stride).collect()
        };
        let mut max_class_defect = 0.0f64;
        for (s, sigma) in group.elements().iter().enumerate() {
            for &t in &conjugators {
                let tau = group.element(t);
                let conj = tau.compose(sigma).compose(&tau.inverse());
                let idx = group
                    .element_index(&conj)
                    .ok_or_else(|| Error::Invalid("group is not closed under conjugation".into()))?;
                let d = (self.values[idx] - self.values[s]).norm().as_f64();
                if d > max_class_defect {
                    max_class_defect = d;
                }
            }
        }
        Ok(CharacterDiagnostics {
            norm_squared,
            max_class_defect,
        })
    }
}

/// Value of the irreducible symmetric-group character indexed by the
/// partition `lambda` on elements of cycle type `rho`. Both arguments must
/// be partitions of the same integer. Exact integer arithmetic.
pub fn sn_character_value(lambda: &[usize], rho: &[usize]) -> Result<i64> {
    let nl: usize = lambda.iter().sum();
    let nr: usize = rho.iter().sum();
    if nl != nr {
        return Err(Error::NotSamePartitionSize);
    }
    let mut memo = HashMap::new();
    Ok(rim_hook_character(lambda, rho, &mut memo))
}

/// Value of the symmetric-group irreducible character indexed by `lambda`
/// on elements of cycle type `rho`, by the rim-hook (border-strip) recursion
/// over beta-sets. Exact integer arithmetic.
fn rim_hook_character(
    lambda: &[usize],
    rho: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    if rho.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = rho[0];
    let rest = &rho[1..];
    // Beta-set: strictly decreasing first-column hook lengths.
    let len = lambda.len();
    let betas: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (len - 1 - i))
        .collect();
    let mut total = 0i64;
    for (pos, &b) in betas.iter().enumerate() {
        if b < k || betas.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        // Height of the strip: betas strictly between target and b.
        let height = betas.iter().filter(|&&x| x > target && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[pos] = target;
        new_betas.sort_unstable_by(|a, c| c.cmp(a));
        let new_len = new_betas.len();
        let mut new_lambda: Vec<usize> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &nb)| nb - (new_len - 1 - i))
            .collect();
        while new_lambda.last() == Some(&0) {
            new_lambda.pop();
        }
        total += sign * rim_hook_character(&new_lambda, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// All irreducible characters of the full symmetric group of the given
/// degree, labeled by partitions in reverse-lexicographic order.
pub fn all_sn_irreducibles<T: Scalar>(
    group: &PermutationGroup,
) -> Result<Vec<CharacterFunction<T>>> {
    if !group.is_full_symmetric() {
        return Err(Error::Invalid(
            "partition-indexed characters require the full symmetric group".into(),
        ));
    }
    partitions(group.degree())
        .iter()
        .map(|p| CharacterFunction::sn_irreducible(group, p))
        .collect()
}
