//! Randomized verification of the superadditivity and three-matrix
//! inequalities, in scalar, Loewner, and power-space form, with per-trial
//! margin accounting and deterministic replay from a single seed.

use crate::block::{partial_map_first, partial_map_second, BlockMatrix};
use crate::character::CharacterFunction;
use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::functionals::Functional;
use crate::matrix::ComplexMatrix;
use crate::multilinear::{three_matrix_tensor_check, PowerKind};
use crate::perm::PermutationGroup;
use crate::rng::{random_psd_with, RngSeed, SampleRng};
use crate::scalar::Scalar;
use rayon::prelude::*;
use serde::Serialize;

/// Permitted relative imaginary residue when a nominally real margin is
/// extracted from a complex functional value.
pub const IMAGINARY_RESIDUE_REL_TOL: f64 = 1e-8;

/// The inequality families covered by the suite. Scalar cases compare
/// functional values of positive semidefinite matrices; `Partial*` and
/// `BlockdetSuperadd` cases compare matrices in the Loewner order after a
/// blockwise functional map; `PowerThreeFull` compares tensor, exterior,
/// and symmetric powers in the Loewner order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `det(A+B) >= det(A) + det(B)` for PSD pairs.
    DetSuperadd,
    /// `f(A+B) >= f(A) + f(B)` across the functional sweep.
    FuncSuperadd,
    /// `f(A+B+C) + f(C) >= f(A+C) + f(B+C)` across the sweep.
    FuncThreeReduced,
    /// `f(A+B+C) + f(A) + f(B) + f(C) >= f(A+B) + f(A+C) + f(B+C)`.
    FuncThreeFull,
    /// Blockwise determinant map, two-term Loewner superadditivity.
    BlockdetSuperadd,
    /// Outer-index partial functional map, four-vs-three Loewner form.
    Partial1ThreeFull,
    /// Inner-index partial functional map, four-vs-three Loewner form.
    Partial2ThreeFull,
    /// Outer-index partial functional map, reduced three-matrix form.
    Partial1ThreeReduced,
    /// Inner-index partial functional map, reduced three-matrix form.
    Partial2ThreeReduced,
    /// Scalar determinant, four-vs-three form.
    DetThreeFull,
    /// Scalar determinant, reduced three-matrix form.
    DetThreeReduced,
    /// Tensor/exterior/symmetric power, four-vs-three Loewner form.
    PowerThreeFull,
}

impl CaseId {
    pub const ALL: [CaseId; 12] = [
        CaseId::DetSuperadd,
        CaseId::FuncSuperadd,
        CaseId::FuncThreeReduced,
        CaseId::FuncThreeFull,
        CaseId::BlockdetSuperadd,
        CaseId::Partial1ThreeFull,
        CaseId::Partial2ThreeFull,
        CaseId::Partial1ThreeReduced,
        CaseId::Partial2ThreeReduced,
        CaseId::DetThreeFull,
        CaseId::DetThreeReduced,
        CaseId::PowerThreeFull,
    ];

    pub fn key(self) -> &'static str {
        match self {
            CaseId::DetSuperadd => "det-superadd",
            CaseId::FuncSuperadd => "func-superadd",
            CaseId::FuncThreeReduced => "func-three-reduced",
            CaseId::FuncThreeFull => "func-three-full",
            CaseId::BlockdetSuperadd => "blockdet-superadd",
            CaseId::Partial1ThreeFull => "partial1-three-full",
            CaseId::Partial2ThreeFull => "partial2-three-full",
            CaseId::Partial1ThreeReduced => "partial1-three-reduced",
            CaseId::Partial2ThreeReduced => "partial2-three-reduced",
            CaseId::DetThreeFull => "det-three-full",
            CaseId::DetThreeReduced => "det-three-reduced",
            CaseId::PowerThreeFull => "power-three-full",
        }
    }

    pub fn parse(key: &str) -> Result<CaseId> {
        let lower = key.to_ascii_lowercase();
        CaseId::ALL
            .into_iter()
            .find(|c| c.key() == lower)
            .ok_or_else(|| Error::Parse(format!("unknown case {key:?}")))
    }

    /// Number of sampled matrices per trial.
    pub fn arity(self) -> usize {
        match self {
            CaseId::DetSuperadd | CaseId::FuncSuperadd | CaseId::BlockdetSuperadd => 2,
            _ => 3,
        }
    }

    /// Whether trials sample block matrices of dimension `m*n` rather than
    /// plain `n`-dimensional matrices.
    pub fn is_block(self) -> bool {
        matches!(
            self,
            CaseId::BlockdetSuperadd
                | CaseId::Partial1ThreeFull
                | CaseId::Partial2ThreeFull
                | CaseId::Partial1ThreeReduced
                | CaseId::Partial2ThreeReduced
        )
    }
}

/// One margin computation: the inequality shape together with the
/// functional (or power construction) it is instantiated with.
#[derive(Clone, Debug)]
pub enum MarginCheck<T: Scalar> {
    ScalarTwo(Functional<T>),
    ScalarThreeReduced(Functional<T>),
    ScalarThreeFull(Functional<T>),
    /// `outer = true` maps over the reshuffled (outer-index) blocks.
    BlockTwo { outer: bool, functional: Functional<T> },
    BlockThreeReduced { outer: bool, functional: Functional<T> },
    BlockThreeFull { outer: bool, functional: Functional<T> },
    Power { kind: PowerKind, r: usize },
}

/// Real part of a functional value, rejecting substantial imaginary parts.
/// Functional values of Hermitian matrices are real up to roundoff.
fn real_value<T: Scalar>(f: &Functional<T>, a: &ComplexMatrix<T>) -> Result<T> {
    let v = f.evaluate(a)?;
    let limit = T::real(IMAGINARY_RESIDUE_REL_TOL) * (T::one() + v.re.abs());
    if v.im.abs() > limit {
        return Err(Error::ImaginaryResidue(v.im.as_f64()));
    }
    Ok(v.re)
}

fn block_map<T: Scalar>(
    outer: bool,
    f: &Functional<T>,
    a: &BlockMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if outer {
        partial_map_first(a, |b| f.evaluate(b))
    } else {
        partial_map_second(a, |b| f.evaluate(b))
    }
}

fn block_sum<T: Scalar>(parts: &[&BlockMatrix<T>]) -> BlockMatrix<T> {
    let mut flat = parts[0].flatten();
    for p in &parts[1..] {
        flat = &flat + &p.flatten();
    }
    BlockMatrix::from_flat(&flat, parts[0].outer_dimension(), parts[0].inner_dimension())
        .expect("sum of equal shapes")
}

/// Margin of one inequality instance: scalar left-minus-right for scalar
/// cases, smallest eigenvalue of left-minus-right for Loewner cases. `mats`
/// holds the sampled matrices (flattened for block cases), one per arity
/// slot; `m`, `n` give the block shape where applicable.
pub fn check_margin<T: Scalar>(
    check: &MarginCheck<T>,
    mats: &[ComplexMatrix<T>],
    m: usize,
    n: usize,
) -> Result<T> {
    match check {
        MarginCheck::ScalarTwo(f) => {
            let (a, b) = (&mats[0], &mats[1]);
            Ok(real_value(f, &(a + b))? - real_value(f, a)? - real_value(f, b)?)
        }
        MarginCheck::ScalarThreeReduced(f) => {
            let (a, b, c) = (&mats[0], &mats[1], &mats[2]);
            let abc = &(a + b) + c;
            Ok(real_value(f, &abc)? + real_value(f, c)?
                - real_value(f, &(a + c))?
                - real_value(f, &(b + c))?)
        }
        MarginCheck::ScalarThreeFull(f) => {
            let (a, b, c) = (&mats[0], &mats[1], &mats[2]);
            let abc = &(a + b) + c;
            let lhs = real_value(f, &abc)?
                + real_value(f, a)?
                + real_value(f, b)?
                + real_value(f, c)?;
            let rhs = real_value(f, &(a + b))?
                + real_value(f, &(a + c))?
                + real_value(f, &(b + c))?;
            Ok(lhs - rhs)
        }
        MarginCheck::BlockTwo { outer, functional } => {
            let a = BlockMatrix::from_flat(&mats[0], m, n)?;
            let b = BlockMatrix::from_flat(&mats[1], m, n)?;
            let sum = block_sum(&[&a, &b]);
            let diff = &(&block_map(*outer, functional, &sum)?
                - &block_map(*outer, functional, &a)?)
                - &block_map(*outer, functional, &b)?;
            min_eigenvalue(&diff)
        }
        MarginCheck::BlockThreeReduced { outer, functional } => {
            let a = BlockMatrix::from_flat(&mats[0], m, n)?;
            let b = BlockMatrix::from_flat(&mats[1], m, n)?;
            let c = BlockMatrix::from_flat(&mats[2], m, n)?;
            let lhs = &block_map(*outer, functional, &block_sum(&[&a, &b, &c]))?
                + &block_map(*outer, functional, &c)?;
            let rhs = &block_map(*outer, functional, &block_sum(&[&a, &c]))?
                + &block_map(*outer, functional, &block_sum(&[&b, &c]))?;
            min_eigenvalue(&(&lhs - &rhs))
        }
        MarginCheck::BlockThreeFull { outer, functional } => {
            let a = BlockMatrix::from_flat(&mats[0], m, n)?;
            let b = BlockMatrix::from_flat(&mats[1], m, n)?;
            let c = BlockMatrix::from_flat(&mats[2], m, n)?;
            let lhs = &(&block_map(*outer, functional, &block_sum(&[&a, &b, &c]))?
                + &block_map(*outer, functional, &a)?)
                + &(&block_map(*outer, functional, &b)? + &block_map(*outer, functional, &c)?);
            let rhs = &(&block_map(*outer, functional, &block_sum(&[&a, &b]))?
                + &block_map(*outer, functional, &block_sum(&[&a, &c]))?)
                + &block_map(*outer, functional, &block_sum(&[&b, &c]))?;
            min_eigenvalue(&(&lhs - &rhs))
        }
        MarginCheck::Power { kind, r } => {
            let verdict =
                three_matrix_tensor_check(&mats[0], &mats[1], &mats[2], *r, *kind, 0.0)?;
            Ok(verdict.min_eigenvalue)
        }
    }
}

/// The seven functionals exercised by sweep cases, instantiated for
/// `dim`-dimensional inputs: trace, determinant, permanent, the hook
/// character sum on the full symmetric group, and the three indexed
/// symmetric functionals at `r = 2`.
pub fn functional_sweep<T: Scalar>(dim: usize) -> Result<Vec<Functional<T>>> {
    if dim < 2 {
        return Err(Error::DimensionMismatch(
            "functional sweep needs dimension >= 2".into(),
        ));
    }
    let group = PermutationGroup::symmetric(dim)?;
    let mut hook = vec![1usize; 2];
    hook[0] = dim - 1;
    let chi = CharacterFunction::sn_irreducible(&group, &hook)?;
    Ok(vec![
        Functional::Trace,
        Functional::Determinant,
        Functional::Permanent,
        Functional::CharacterSum {
            group,
            character: chi,
        },
        Functional::TracePower { r: 2 },
        Functional::MinorSum { r: 2 },
        Functional::PermanentalSum { r: 2 },
    ])
}

/// The labelled margin checks a case expands into, given the block shape.
/// Sweep cases produce one check per functional; the power case produces
/// one check per power construction.
pub fn case_checks<T: Scalar>(
    case: CaseId,
    m: usize,
    n: usize,
) -> Result<Vec<(String, MarginCheck<T>)>> {
    let labelled = |fs: Vec<Functional<T>>,
                    wrap: &dyn Fn(Functional<T>) -> MarginCheck<T>|
     -> Vec<(String, MarginCheck<T>)> {
        fs.into_iter().map(|f| (f.name(), wrap(f))).collect()
    };
    Ok(match case {
        CaseId::DetSuperadd => vec![(
            "det".to_string(),
            MarginCheck::ScalarTwo(Functional::Determinant),
        )],
        CaseId::FuncSuperadd => labelled(functional_sweep(n)?, &MarginCheck::ScalarTwo),
        CaseId::FuncThreeReduced => {
            labelled(functional_sweep(n)?, &MarginCheck::ScalarThreeReduced)
        }
        CaseId::FuncThreeFull => labelled(functional_sweep(n)?, &MarginCheck::ScalarThreeFull),
        CaseId::BlockdetSuperadd => vec![(
            "det".to_string(),
            MarginCheck::BlockTwo {
                outer: false,
                functional: Functional::Determinant,
            },
        )],
        CaseId::Partial1ThreeFull => labelled(functional_sweep(m)?, &|f| {
            MarginCheck::BlockThreeFull {
                outer: true,
                functional: f,
            }
        }),
        CaseId::Partial2ThreeFull => labelled(functional_sweep(n)?, &|f| {
            MarginCheck::BlockThreeFull {
                outer: false,
                functional: f,
            }
        }),
        CaseId::Partial1ThreeReduced => labelled(functional_sweep(m)?, &|f| {
            MarginCheck::BlockThreeReduced {
                outer: true,
                functional: f,
            }
        }),
        CaseId::Partial2ThreeReduced => labelled(functional_sweep(n)?, &|f| {
            MarginCheck::BlockThreeReduced {
                outer: false,
                functional: f,
            }
        }),
        CaseId::DetThreeFull => vec![(
            "det".to_string(),
            MarginCheck::ScalarThreeFull(Functional::Determinant),
        )],
        CaseId::DetThreeReduced => vec![(
            "det".to_string(),
            MarginCheck::ScalarThreeReduced(Functional::Determinant),
        )],
        CaseId::PowerThreeFull => [PowerKind::Tensor, PowerKind::Wedge, PowerKind::Vee]
            .into_iter()
            .map(|kind| {
                (
                    format!("{}-power:2", kind.label()),
                    MarginCheck::Power { kind, r: 2 },
                )
            })
            .collect(),
    })
}

/// Aggregated outcome of one (case, functional) margin check across trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub case: String,
    pub functional: String,
    pub trials: usize,
    pub failures: usize,
    pub worst_margin: f64,
    pub seed: u64,
    pub tolerance: f64,
    /// Trial indices whose margin fell below the scaled tolerance; replay
    /// by deriving the generator from (seed, case|functional, index).
    pub failed_trials: Vec<u64>,
    pub elapsed_ms: u64,
}

impl TrialReport {
    /// Copy with the timing field cleared, for determinism comparisons.
    pub fn comparison_surface(&self) -> TrialReport {
        TrialReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

fn sample_psd_set<T: Scalar>(dim: usize, count: usize, rng: &mut SampleRng) -> Vec<ComplexMatrix<T>> {
    (0..count).map(|_| random_psd_with(dim, rng)).collect()
}

/// Runs `trials` independent random instances of every selected case and
/// aggregates margins. An instance passes when its margin is at least
/// `-tol * (1 + largest input Frobenius norm)`. Deterministic for a fixed
/// seed; trials run in parallel but are keyed and reduced by index.
pub fn run_suite<T: Scalar>(
    cases: &[CaseId],
    trials: usize,
    m: usize,
    n: usize,
    tol: f64,
    seed: RngSeed,
) -> Result<Vec<TrialReport>> {
    let mut reports = Vec::new();
    for &case in cases {
        let dim = if case.is_block() { m * n } else { n };
        let arity = case.arity();
        for (label, check) in case_checks::<T>(case, m, n)? {
            let started = std::time::Instant::now();
            let tag = format!("{}|{}", case.key(), label);
            let outcomes: Result<Vec<(f64, f64)>> = (0..trials as u64)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = SampleRng::derive(seed, &tag, trial);
                    let mats = sample_psd_set::<T>(dim, arity, &mut rng);
                    let scale = mats
                        .iter()
                        .map(|a| a.frobenius_norm().as_f64())
                        .fold(0.0f64, f64::max);
                    let margin = check_margin(&check, &mats, m, n)?.as_f64();
                    Ok((margin, 1.0 + scale))
                })
                .collect();
            let outcomes = outcomes?;
            let mut failures = 0usize;
            let mut failed_trials = Vec::new();
            let mut worst = f64::INFINITY;
            for (trial, &(margin, scale)) in outcomes.iter().enumerate() {
                if margin < worst {
                    worst = margin;
                }
                if margin < -tol * scale {
                    failures += 1;
                    failed_trials.push(trial as u64);
                }
            }
            reports.push(TrialReport {
                case: case.key().to_string(),
                functional: label,
                trials,
                failures,
                worst_margin: if trials == 0 { 0.0 } else { worst },
                seed: seed.0,
                tolerance: tol,
                failed_trials,
                elapsed_ms: started.elapsed().as_millis() as u64,
            });
        }
    }
    Ok(reports)
}
