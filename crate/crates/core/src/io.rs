//! JSON wire formats for matrices, block matrices, vectors, and character
//! tables, shared by the command-line tools and the test fixtures.
//!
//! Matrices are `{"rows": r, "cols": c, "entries": [...]}` with row-major
//! entries, each either a bare real number or an `[re, im]` pair. Block
//! matrices are `{"m": m, "n": n, "blocks": [[matrix, ...], ...]}` with an
//! `m x m` grid of `n x n` matrices. Vectors are `{"entries": [...]}`.
//!
//! Character tables are
//! `{"degree": n, "generators": [[...], ...], "character": {...}}` where
//! generators are one-line permutations written 1-indexed, and the
//! character is keyed either `"by": "element"` (keys are element indices
//! in the group's enumeration order, as decimal strings) or
//! `"by": "cycle_type"` (keys are comma-separated cycle lengths, e.g.
//! `"2,1"`; requires the full symmetric group).

use crate::block::BlockMatrix;
use crate::character::CharacterFunction;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::perm::{Permutation, PermutationGroup};
use crate::scalar::Scalar;
use num_complex::Complex;
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Real(f64),
    Pair([f64; 2]),
}

impl EntryJson {
    fn to_complex<T: Scalar>(&self) -> Complex<T> {
        match self {
            EntryJson::Real(x) => Complex::new(T::real(*x), T::zero()),
            EntryJson::Pair([re, im]) => Complex::new(T::real(*re), T::real(*im)),
        }
    }
}

#[derive(Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<EntryJson>,
}

#[derive(Deserialize)]
struct BlockJson {
    m: usize,
    n: usize,
    blocks: Vec<Vec<MatrixJson>>,
}

#[derive(Deserialize)]
struct VectorJson {
    entries: Vec<EntryJson>,
}

#[derive(Deserialize)]
struct CharacterSpecJson {
    by: String,
    values: BTreeMap<String, EntryJson>,
    label: Option<String>,
}

#[derive(Deserialize)]
struct CharacterTableJson {
    degree: usize,
    generators: Vec<Vec<usize>>,
    character: CharacterSpecJson,
}

fn decode<'a, D: Deserialize<'a>>(text: &'a str, what: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn build_matrix<T: Scalar>(raw: &MatrixJson) -> Result<ComplexMatrix<T>> {
    if raw.entries.len() != raw.rows * raw.cols {
        return Err(Error::Parse(format!(
            "matrix declares {}x{} but carries {} entries",
            raw.rows,
            raw.cols,
            raw.entries.len()
        )));
    }
    let data: Vec<Complex<T>> = raw.entries.iter().map(EntryJson::to_complex).collect();
    Ok(ComplexMatrix::from_fn(raw.rows, raw.cols, |i, j| {
        data[i * raw.cols + j]
    }))
}

/// Parses the repo-wide matrix JSON format.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<ComplexMatrix<T>> {
    build_matrix(&decode::<MatrixJson>(text, "matrix")?)
}

/// Parses a block matrix: an `m x m` grid of `n x n` complex matrices.
pub fn parse_block<T: Scalar>(text: &str) -> Result<BlockMatrix<T>> {
    let raw: BlockJson = decode(text, "block matrix")?;
    if raw.blocks.len() != raw.m || raw.blocks.iter().any(|row| row.len() != raw.m) {
        return Err(Error::Parse(format!(
            "block grid must be {0}x{0}",
            raw.m
        )));
    }
    let mut cells = Vec::with_capacity(raw.m * raw.m);
    for row in &raw.blocks {
        for cell in row {
            if cell.rows != raw.n || cell.cols != raw.n {
                return Err(Error::Parse(format!(
                    "every block must be {0}x{0}, found {1}x{2}",
                    raw.n, cell.rows, cell.cols
                )));
            }
            cells.push(build_matrix::<T>(cell)?);
        }
    }
    BlockMatrix::new(raw.m, raw.n, cells)
}

/// Parses a vector of complex entries.
pub fn parse_vector<T: Scalar>(text: &str) -> Result<Vec<Complex<T>>> {
    let raw: VectorJson = decode(text, "vector")?;
    Ok(raw.entries.iter().map(EntryJson::to_complex).collect())
}

fn parse_cycle_type_key(key: &str, degree: usize) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    for piece in key.split(',') {
        let trimmed = piece.trim();
        let value: usize = trimmed
            .parse()
            .map_err(|_| Error::Parse(format!("bad cycle length {trimmed:?} in key {key:?}")))?;
        if value == 0 {
            return Err(Error::Parse(format!("zero cycle length in key {key:?}")));
        }
        parts.push(value);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts.iter().sum::<usize>() != degree {
        return Err(Error::Parse(format!(
            "cycle type {key:?} does not partition the degree {degree}"
        )));
    }
    Ok(parts)
}

/// Parses a character table into the generated group and the character
/// defined on it. Generators are one-line permutations written 1-indexed.
pub fn parse_character_table<T: Scalar>(
    text: &str,
) -> Result<(PermutationGroup, CharacterFunction<T>)> {
    let raw: CharacterTableJson = decode(text, "character table")?;
    let generators = raw
        .generators
        .iter()
        .map(|line| {
            if line.len() != raw.degree {
                return Err(Error::Parse(format!(
                    "generator {line:?} does not have degree {}",
                    raw.degree
                )));
            }
            Permutation::from_one_line_1indexed(line)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = PermutationGroup::generate(raw.degree, &generators)?;
    let label = raw.character.label.clone().unwrap_or_else(|| "custom".into());
    let character = match raw.character.by.as_str() {
        "element" => {
            let mut values = vec![None; group.order()];
            for (key, entry) in &raw.character.values {
                let index: usize = key.trim().parse().map_err(|_| {
                    Error::Parse(format!("element key {key:?} is not an index"))
                })?;
                if index >= group.order() {
                    return Err(Error::Parse(format!(
                        "element index {index} out of range for group of order {}",
                        group.order()
                    )));
                }
                values[index] = Some(entry.to_complex::<T>());
            }
            let values = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| {
                        Error::Parse(format!("missing character value for element {i}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            CharacterFunction::from_element_values(&group, label, values)?
        }
        "cycle_type" => {
            let mut by_type: HashMap<Vec<usize>, Complex<T>> = HashMap::new();
            for (key, entry) in &raw.character.values {
                by_type.insert(parse_cycle_type_key(key, raw.degree)?, entry.to_complex());
            }
            CharacterFunction::from_cycle_type_values(&group, label, &by_type)?
        }
        other => {
            return Err(Error::Parse(format!(
                "character keying must be \"element\" or \"cycle_type\", got {other:?}"
            )))
        }
    };
    Ok((group, character))
}

/// Renders a matrix in the wire format, always writing `[re, im]` pairs.
pub fn matrix_to_json<T: Scalar>(a: &ComplexMatrix<T>) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .map(|(i, j)| {
            let z = a[(i, j)];
            serde_json::json!([z.re.as_f64(), z.im.as_f64()])
        })
        .collect();
    serde_json::json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "entries": entries,
    })
}
