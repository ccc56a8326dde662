//! Wiring matrices over GF(2), the wiring classes, and the text format.
//!
//! A wiring is an n x n matrix with `w[i][j] = 1` iff pressing vertex j
//! toggles vertex i. Storage is bit-packed by column: the column degree
//! constraint and pressing (XOR of a column into the state) are the hot
//! operations.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVector;
use crate::error::{Gf2Error, ParseError};

/// Largest dimension accepted by constructors and the text format.
pub const MAX_DIMENSION: usize = 4096;

/// An n x n wiring matrix over GF(2), stored column-major.
///
/// Wirings are expected to carry a unit diagonal; every builder in this
/// crate guarantees it, and the text parser reports missing diagonal
/// entries as class warnings rather than refusing the matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WiringMatrix {
    n: usize,
    cols: Vec<BitVector>,
}

impl WiringMatrix {
    pub fn from_columns(cols: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let n = cols.len();
        if n > MAX_DIMENSION {
            return Err(Gf2Error::TooLarge {
                n,
                max: MAX_DIMENSION,
            });
        }
        for col in &cols {
            if col.len() != n {
                return Err(Gf2Error::DimensionMismatch {
                    expected: n,
                    got: col.len(),
                });
            }
        }
        Ok(Self { n, cols })
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let n = rows.len();
        if n > MAX_DIMENSION {
            return Err(Gf2Error::TooLarge {
                n,
                max: MAX_DIMENSION,
            });
        }
        let mut cols = vec![BitVector::zeros(n); n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Gf2Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for j in row.ones() {
                cols[j].set(i, true);
            }
        }
        Ok(Self { n, cols })
    }

    /// Parses rows given as strings of `0`/`1`; panics on malformed input.
    /// Intended for fixed matrices written out in code and tests.
    pub fn from_row_strs(rows: &[&str]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.parse().expect("row literal"))
            .collect();
        Self::from_rows(rows).expect("square row literals")
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n).map(|j| BitVector::unit(n, j)).collect();
        Self::from_columns(cols).expect("within dimension cap")
    }

    /// The all-ones p x p matrix (a complete subgraph on p vertices).
    pub fn all_ones(n: usize) -> Self {
        let col = BitVector::from_indices(n, 0..n);
        Self::from_columns(vec![col; n]).expect("within dimension cap")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cols[j].get(i)
    }

    #[inline]
    pub fn column(&self, j: usize) -> &BitVector {
        &self.cols[j]
    }

    /// Row i as an owned vector (columns are the packed representation).
    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_indices(self.n, (0..self.n).filter(|&j| self.get(i, j)))
    }

    /// Number of 1s in column j, diagonal included.
    pub fn column_degree(&self, j: usize) -> usize {
        self.cols[j].weight()
    }

    /// Maximum column degree.
    pub fn degree(&self) -> usize {
        (0..self.n)
            .map(|j| self.column_degree(j))
            .max()
            .unwrap_or(0)
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    /// Vertices whose diagonal entry is 0 (empty for a proper wiring).
    pub fn missing_diagonal(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.get(i, i)).collect()
    }

    /// Block-diagonal assembly; the unit diagonal of every block is kept.
    ///
    /// # Panics
    /// Panics if the combined dimension exceeds [`MAX_DIMENSION`].
    pub fn block_diag(blocks: &[WiringMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        assert!(
            n <= MAX_DIMENSION,
            "block_diag dimension {n} exceeds {MAX_DIMENSION}"
        );
        let mut cols = Vec::with_capacity(n);
        let mut offset = 0;
        for block in blocks {
            for j in 0..block.n {
                cols.push(BitVector::from_indices(
                    n,
                    block.cols[j].ones().map(|i| i + offset),
                ));
            }
            offset += block.n;
        }
        Self { n, cols }
    }

    /// Membership in the class described by `spec`.
    pub fn is_member(&self, spec: &ClassSpec) -> bool {
        if self.n != spec.n || !self.has_unit_diagonal() {
            return false;
        }
        (0..self.n).all(|j| {
            let d = self.column_degree(j);
            if spec.exact {
                d == spec.m
            } else {
                d <= spec.m
            }
        })
    }
}

impl fmt::Debug for WiringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "WiringMatrix({})", self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

/// Applies a press set: returns `Wx + c`, the per-vertex lit states.
pub fn apply(w: &WiringMatrix, x: &BitVector, c: &BitVector) -> Result<BitVector, Gf2Error> {
    if x.len() != w.n() {
        return Err(Gf2Error::DimensionMismatch {
            expected: w.n(),
            got: x.len(),
        });
    }
    if c.len() != w.n() {
        return Err(Gf2Error::DimensionMismatch {
            expected: w.n(),
            got: c.len(),
        });
    }
    let mut v = c.clone();
    for j in x.ones() {
        v ^= w.column(j);
    }
    Ok(v)
}

/// A wiring class: `A(n,m)` (column degrees at most m) or, with
/// `exact = true`, `A*(n,m)` (column degrees exactly m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    pub n: usize,
    pub m: usize,
    pub exact: bool,
}

impl ClassSpec {
    pub fn new(n: usize, m: usize, exact: bool) -> Result<Self, Gf2Error> {
        if m == 0 {
            return Err(Gf2Error::ZeroDegreeBound);
        }
        if exact && n < m {
            return Err(Gf2Error::ExactClassTooSmall { n, m });
        }
        Ok(Self { n, m, exact })
    }

    /// Off-diagonal support sizes allowed per column.
    pub(crate) fn support_sizes(&self) -> std::ops::RangeInclusive<usize> {
        let top = (self.m - 1).min(self.n.saturating_sub(1));
        if self.exact {
            self.m - 1..=self.m - 1
        } else {
            0..=top
        }
    }

    /// Number of admissible supports for one column, if it fits in u128.
    pub(crate) fn column_choices(&self) -> Option<u128> {
        let p = self.n.saturating_sub(1);
        let mut total: u128 = 0;
        for s in self.support_sizes() {
            total = total.checked_add(binomial(p, s)?)?;
        }
        Some(total)
    }

    /// Samples a uniform member; a pure function of `(n, m, exact, seed)`.
    ///
    /// Each column's off-diagonal support is drawn uniformly over the
    /// admissible supports, independently across columns.
    pub fn sample(&self, seed: u64) -> Result<WiringMatrix, Gf2Error> {
        if self.n > MAX_DIMENSION {
            return Err(Gf2Error::TooLarge {
                n: self.n,
                max: MAX_DIMENSION,
            });
        }
        let total = self.column_choices().ok_or(Gf2Error::SampleSpaceOverflow)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = self.n.saturating_sub(1);
        let mut cols = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut rank = rng.gen_range(0..total);
            // Decode the support size, then unrank within that size.
            let mut size = 0;
            for s in self.support_sizes() {
                let count = binomial(p, s).expect("checked by column_choices");
                if rank < count {
                    size = s;
                    break;
                }
                rank -= count;
            }
            let slots = colex_unrank(p, size, rank);
            let mut col = BitVector::unit(self.n, j);
            for slot in slots {
                let row = if slot >= j { slot + 1 } else { slot };
                col.set(row, true);
            }
            cols.push(col);
        }
        WiringMatrix::from_columns(cols)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "A*({},{})", self.n, self.m)
        } else {
            write!(f, "A({},{})", self.n, self.m)
        }
    }
}

pub(crate) fn binomial(p: usize, s: usize) -> Option<u128> {
    if s > p {
        return Some(0);
    }
    let s = s.min(p - s);
    let mut b: u128 = 1;
    for i in 1..=s {
        b = b.checked_mul((p - s + i) as u128)?;
        b /= i as u128;
    }
    Some(b)
}

/// The colex-rank-`rank` subset of `{0..p}` with `size` elements.
fn colex_unrank(p: usize, size: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(size);
    let mut a = p;
    for k in (1..=size).rev() {
        loop {
            a -= 1;
            let c = binomial(a, k).expect("smaller than a checked total");
            if c <= rank {
                out.push(a);
                rank -= c;
                break;
            }
        }
    }
    out.reverse();
    out
}

/// A class-membership warning attached to a successfully parsed wiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassWarning {
    /// Diagonal entries equal to 0 (0-based vertices).
    MissingDiagonal { vertices: Vec<usize> },
}

impl fmt::Display for ClassWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassWarning::MissingDiagonal { vertices } => {
                let list: Vec<String> = vertices.iter().map(|v| (v + 1).to_string()).collect();
                write!(f, "missing diagonal 1 at vertex {}", list.join(", "))
            }
        }
    }
}

/// A parsed wiring document: the matrix, the optional initial
/// configuration, and any class warnings.
#[derive(Debug, Clone)]
pub struct ParsedWiring {
    pub matrix: WiringMatrix,
    pub initial: Option<BitVector>,
    pub warnings: Vec<ClassWarning>,
}

/// Renders the wiring text format: `wiring <n>`, then the n rows, then an
/// optional `c <bits>` line. Round trips bit-exactly through [`read_wiring`].
pub fn write_wiring(w: &WiringMatrix, initial: Option<&BitVector>) -> String {
    let mut out = String::with_capacity((w.n() + 2) * (w.n() + 1));
    out.push_str(&format!("wiring {}\n", w.n()));
    for i in 0..w.n() {
        out.push_str(&w.row(i).to_string());
        out.push('\n');
    }
    if let Some(c) = initial {
        out.push_str(&format!("c {c}\n"));
    }
    out
}

/// Parses the wiring text format.
pub fn read_wiring(text: &str) -> Result<ParsedWiring, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let n_str = header
        .strip_prefix("wiring ")
        .ok_or_else(|| ParseError::BadHeader {
            found: header.to_string(),
        })?;
    let n: usize =
        n_str
            .trim()
            .parse()
            .map_err(|e: std::num::ParseIntError| ParseError::BadDimension {
                found: n_str.to_string(),
                reason: e.to_string(),
            })?;
    if n > MAX_DIMENSION {
        return Err(ParseError::BadDimension {
            found: n_str.to_string(),
            reason: format!("exceeds the supported maximum {MAX_DIMENSION}"),
        });
    }

    let mut cols = vec![BitVector::zeros(n); n];
    for row in 0..n {
        let (_, line) = lines.next().ok_or(ParseError::MissingRow {
            row: row + 1,
            expected: n,
        })?;
        let got = line.chars().count();
        if got != n {
            return Err(ParseError::WrongRowLength {
                row: row + 1,
                expected: n,
                got,
            });
        }
        for (column, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => cols[column].set(row, true),
                found => {
                    return Err(ParseError::InvalidCharacter {
                        row: row + 1,
                        column: column + 1,
                        found,
                    })
                }
            }
        }
    }

    let mut initial = None;
    if let Some((line_no, line)) = lines.next() {
        if !line.trim().is_empty() {
            let bits = line
                .strip_prefix("c ")
                .ok_or(ParseError::TrailingContent { line: line_no + 1 })?;
            let c: BitVector = bits
                .parse()
                .map_err(|e: Gf2Error| ParseError::BadConfigLine {
                    reason: e.to_string(),
                })?;
            if c.len() != n {
                return Err(ParseError::BadConfigLine {
                    reason: format!("length {} does not match n = {n}", c.len()),
                });
            }
            initial = Some(c);
        }
    }
    for (line_no, line) in lines {
        if !line.trim().is_empty() {
            return Err(ParseError::TrailingContent { line: line_no + 1 });
        }
    }

    let matrix = WiringMatrix { n, cols };
    let mut warnings = Vec::new();
    let missing = matrix.missing_diagonal();
    if !missing.is_empty() {
        warnings.push(ClassWarning::MissingDiagonal { vertices: missing });
    }
    Ok(ParsedWiring {
        matrix,
        initial,
        warnings,
    })
}
