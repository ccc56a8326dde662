//! Builders for the extremal witness wirings and the closed-form values of
//! the four extremal functions.
//!
//! Each builder returns the matrix together with the class it belongs to,
//! the initial configuration it is evaluated against, and the optimum it is
//! claimed to attain; `solve(matrix, initial) == claimed_value` holds for
//! every family and is enforced by the acceptance suite.

use std::fmt;

use serde::Serialize;

use crate::bits::BitVector;
use crate::error::ConstructError;
use crate::wiring::{ClassSpec, WiringMatrix};

/// One of the four extremal functions: minimum optimum over a wiring class,
/// from all-off (`Mu`/`MuStar`) or additionally minimized over initial
/// configurations (`Nu`/`NuStar`). The starred kinds range over exact-degree
/// classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExtremalKind {
    #[serde(rename = "mu")]
    Mu,
    #[serde(rename = "mu-star")]
    MuStar,
    #[serde(rename = "nu")]
    Nu,
    #[serde(rename = "nu-star")]
    NuStar,
}

impl ExtremalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremalKind::Mu => "mu",
            ExtremalKind::MuStar => "mu-star",
            ExtremalKind::Nu => "nu",
            ExtremalKind::NuStar => "nu-star",
        }
    }

    pub fn exact(self) -> bool {
        matches!(self, ExtremalKind::MuStar | ExtremalKind::NuStar)
    }

    pub fn over_configs(self) -> bool {
        matches!(self, ExtremalKind::Nu | ExtremalKind::NuStar)
    }
}

impl fmt::Display for ExtremalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A witness wiring with its class, initial configuration, and the optimum
/// it attains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub matrix: WiringMatrix,
    pub spec: ClassSpec,
    pub initial: BitVector,
    pub claimed_value: usize,
}

/// The 3-cycle wiring: each button toggles itself and the next vertex
/// around the triangle. Optimum 2 from all-off.
pub fn w3() -> Construction {
    Construction {
        matrix: WiringMatrix::from_row_strs(&["101", "110", "011"]),
        spec: ClassSpec::new(3, 2, true).unwrap(),
        initial: BitVector::zeros(3),
        claimed_value: 2,
    }
}

/// The six-vertex degree-3 wiring with optimum 4 from all-off; the building
/// block of the exact-degree-3 minimizers at multiples of six.
pub fn w6() -> Construction {
    Construction {
        matrix: WiringMatrix::from_row_strs(&[
            "100000", "111000", "011000", "011111", "100111", "000111",
        ]),
        spec: ClassSpec::new(6, 3, true).unwrap(),
        initial: BitVector::zeros(6),
        claimed_value: 4,
    }
}

/// Coordinate i is 1 iff i is even (1-based), i.e. `(0,1,0,1,...)`.
pub fn even_indicator(n: usize) -> BitVector {
    BitVector::from_indices(n, (1..n).step_by(2))
}

/// Initial configuration for the minimum-over-configurations witnesses:
/// every second vertex lit, with vertex n lit. Equals [`even_indicator`]
/// for even n and its complement for odd n; the odd-n mirroring is what
/// makes the odd-n witnesses attain their claimed values.
fn nu_initial(n: usize) -> BitVector {
    if n % 2 == 0 {
        even_indicator(n)
    } else {
        BitVector::from_indices(n, (0..n).step_by(2))
    }
}

/// Complete-pair wiring: 2x2 all-ones blocks (plus a singleton for odd n),
/// evaluated from the paired indicator. Attains the global minimum
/// `ceil(n/2)` within degree 2.
pub fn nu_pairs(n: usize) -> Result<Construction, ConstructError> {
    if n == 0 {
        return Err(ConstructError::NuPairsRange);
    }
    let mut blocks = vec![WiringMatrix::all_ones(2); n / 2];
    if n % 2 == 1 {
        blocks.push(WiringMatrix::all_ones(1));
    }
    Ok(Construction {
        matrix: WiringMatrix::block_diag(&blocks),
        spec: ClassSpec::new(n, 2, false).unwrap(),
        initial: nu_initial(n),
        claimed_value: n.div_ceil(2),
    })
}

/// Supports of the three columns of the 3-cycle block, shifted to `offset`.
fn w3_column(offset: usize, j: usize) -> [usize; 2] {
    match j {
        0 => [offset, offset + 1],
        1 => [offset + 1, offset + 2],
        _ => [offset, offset + 2],
    }
}

/// Exact-degree witness for the minimum over initial configurations:
/// a member of A*(n,m) whose optimum from the paired indicator is
/// `ceil(n/2)`, plus one when n is even and m odd.
///
/// Four shapes, by the parities of n and m: paired blocks capped by an
/// all-ones m-block (n-m even), the m-block leading with a 3-cycle at the
/// tail (n odd, m even) or right after it (n even, m odd) — both padded to
/// exact degree by filling rows 3..m across the later columns — and a
/// dedicated matrix for n = m+1.
pub fn nu_star(n: usize, m: usize) -> Result<Construction, ConstructError> {
    if m < 2 || n < m {
        return Err(ConstructError::NuStarRange { n, m });
    }
    let mut cols: Vec<BitVector> = Vec::with_capacity(n);
    let col = |support: Vec<usize>| BitVector::from_indices(n, support);

    if n == m + 1 {
        // Rows 1..m-1 all ones; row m covers the first m columns; the last
        // vertex is toggled only by its own button.
        for _j in 0..m {
            cols.push(col((0..m).collect()));
        }
        cols.push(col((0..m - 1).chain([n - 1]).collect()));
    } else if (n - m) % 2 == 0 {
        // diag(pairs..., ones_m), then m-2 extra 1s at the end of each of
        // the first n-m columns.
        let fill: Vec<usize> = (n - m + 2..n).collect();
        for j in 0..n - m {
            let b = 2 * (j / 2);
            cols.push(col([b, b + 1]
                .into_iter()
                .chain(fill.iter().copied())
                .collect()));
        }
        for _j in n - m..n {
            cols.push(col((n - m..n).collect()));
        }
    } else {
        // Leading all-ones m-block; rows 3..m are filled across all later
        // columns to restore exact degree m.
        let fill: Vec<usize> = (2..m).collect();
        for _j in 0..m {
            cols.push(col((0..m).collect()));
        }
        if n % 2 == 1 {
            // pairs then a trailing 3-cycle
            for j in m..n - 3 {
                let b = m + 2 * ((j - m) / 2);
                cols.push(col([b, b + 1]
                    .into_iter()
                    .chain(fill.iter().copied())
                    .collect()));
            }
            for j in 0..3 {
                cols.push(col(w3_column(n - 3, j)
                    .into_iter()
                    .chain(fill.iter().copied())
                    .collect()));
            }
        } else {
            // a 3-cycle then pairs
            for j in 0..3 {
                cols.push(col(w3_column(m, j)
                    .into_iter()
                    .chain(fill.iter().copied())
                    .collect()));
            }
            for j in m + 3..n {
                let b = m + 3 + 2 * ((j - m - 3) / 2);
                cols.push(col([b, b + 1]
                    .into_iter()
                    .chain(fill.iter().copied())
                    .collect()));
            }
        }
    }

    let claimed = n.div_ceil(2) + usize::from(n % 2 == 0 && m % 2 == 1);
    Ok(Construction {
        matrix: WiringMatrix::from_columns(cols).expect("square by construction"),
        spec: ClassSpec::new(n, m, true).unwrap(),
        initial: nu_initial(n),
        claimed_value: claimed,
    })
}

/// Degree-2 minimizer from all-off: 3-cycle blocks plus isolated vertices.
/// Attains `ceil(2n/3)`.
pub fn mu2(n: usize) -> Construction {
    let k = n / 3;
    let mut blocks = vec![w3().matrix; k];
    if n % 3 != 0 {
        blocks.push(WiringMatrix::identity(n % 3));
    }
    Construction {
        matrix: WiringMatrix::block_diag(&blocks),
        spec: ClassSpec::new(n, 2, false).unwrap(),
        initial: BitVector::zeros(n),
        claimed_value: (2 * n).div_ceil(3),
    }
}

/// Exact-degree-2 minimizer from all-off: 3-cycles plus complete pairs.
/// Attains `2 * ceil(n/3)`.
pub fn mu2_star(n: usize) -> Result<Construction, ConstructError> {
    if n < 2 {
        return Err(ConstructError::Mu2StarRange { n });
    }
    let mut blocks = Vec::new();
    match n % 3 {
        0 => blocks.extend(vec![w3().matrix; n / 3]),
        2 => {
            blocks.extend(vec![w3().matrix; n / 3]);
            blocks.push(WiringMatrix::all_ones(2));
        }
        _ => {
            blocks.extend(vec![w3().matrix; n / 3 - 1]);
            blocks.push(WiringMatrix::all_ones(2));
            blocks.push(WiringMatrix::all_ones(2));
        }
    }
    Ok(Construction {
        matrix: WiringMatrix::block_diag(&blocks),
        spec: ClassSpec::new(n, 2, true).unwrap(),
        initial: BitVector::zeros(n),
        claimed_value: 2 * n.div_ceil(3),
    })
}

/// Raises the exact degree of `base` from m to m+1 by appending n' vertices:
/// identity blocks tiled under the base give every old column one new
/// target, and the new columns duplicate the first n' old ones. The
/// optimum grows by at most n', and exactly n' for the block families here.
pub fn extend_degree(base: &Construction, n_prime: usize) -> Result<Construction, ConstructError> {
    let n = base.spec.n;
    if !base.spec.exact {
        return Err(ConstructError::ExtendBaseNotExact);
    }
    if n_prime == 0 || n_prime > n {
        return Err(ConstructError::ExtendRange { n, n_prime });
    }
    let total = n + n_prime;
    let mut cols = Vec::with_capacity(total);
    for j in 0..n {
        let mut c = BitVector::from_indices(total, base.matrix.column(j).ones());
        c.set(n + j % n_prime, true);
        cols.push(c);
    }
    for j in 0..n_prime {
        cols.push(cols[j].clone());
    }
    Ok(Construction {
        matrix: WiringMatrix::from_columns(cols).expect("square by construction"),
        spec: ClassSpec::new(total, base.spec.m + 1, true).unwrap(),
        initial: BitVector::zeros(total),
        claimed_value: base.claimed_value + n_prime,
    })
}

/// Degree-3 minimizer from all-off; degree 2 is already optimal, so this is
/// the degree-2 matrix viewed in the wider class.
pub fn mu3(n: usize) -> Construction {
    let base = mu2(n);
    Construction {
        spec: ClassSpec::new(n, 3, false).unwrap(),
        ..base
    }
}

/// Exact-degree-3 minimizer from all-off. Multiples of six use copies of
/// the six-vertex block; n = 6k-3 extends the exact-degree-2 minimizer on
/// n-3 vertices (one above the unconstrained optimum); other n extend the
/// exact-degree-2 minimizer on the largest multiple of three below n.
pub fn mu3_star(n: usize) -> Result<Construction, ConstructError> {
    if n < 3 {
        return Err(ConstructError::Mu3StarRange { n });
    }
    if n == 3 {
        return Ok(Construction {
            matrix: WiringMatrix::all_ones(3),
            spec: ClassSpec::new(3, 3, true).unwrap(),
            initial: BitVector::zeros(3),
            claimed_value: 3,
        });
    }
    let c = if n % 6 == 0 {
        let blocks = vec![w6().matrix; n / 6];
        Construction {
            matrix: WiringMatrix::block_diag(&blocks),
            spec: ClassSpec::new(n, 3, true).unwrap(),
            initial: BitVector::zeros(n),
            claimed_value: 2 * n / 3,
        }
    } else {
        let i = if n % 6 == 3 { 3 } else { n % 3 };
        extend_degree(&mu2_star(n - i)?, i)?
    };
    Ok(c)
}

/// Closed-form value of an extremal function, where one is known: the
/// degree bound must be at most 3 for the all-off kinds (larger bounds have
/// no closed form here), while the over-configurations kinds are known for
/// every degree bound.
pub fn formula(kind: ExtremalKind, n: usize, m: usize) -> Result<usize, ConstructError> {
    let range_err = || ConstructError::FormulaRange {
        kind: kind.as_str().to_string(),
        n,
        m,
    };
    if m == 0 {
        return Err(range_err());
    }
    if kind.exact() && n < m {
        return Err(range_err());
    }
    match kind {
        ExtremalKind::Mu => {
            if n == 0 {
                return Ok(0);
            }
            // Bounds above n do not constrain anything.
            match m.min(n) {
                1 => Ok(n),
                2 | 3 => Ok((2 * n).div_ceil(3)),
                _ => Err(ConstructError::FormulaUnknown {
                    kind: kind.as_str().to_string(),
                    m,
                }),
            }
        }
        ExtremalKind::MuStar => match m {
            1 => Ok(n),
            2 => Ok(2 * n.div_ceil(3)),
            3 => {
                if n % 6 == 3 {
                    Ok(4 * (n + 3) / 6 - 1)
                } else {
                    Ok((2 * n).div_ceil(3))
                }
            }
            _ => Err(ConstructError::FormulaUnknown {
                kind: kind.as_str().to_string(),
                m,
            }),
        },
        ExtremalKind::Nu => {
            if m == 1 {
                Ok(n)
            } else {
                Ok(n.div_ceil(2))
            }
        }
        ExtremalKind::NuStar => {
            if m == 1 {
                Ok(n)
            } else {
                Ok(n.div_ceil(2) + usize::from(n % 2 == 0 && m % 2 == 1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    #[test]
    fn w3_rows_are_exact() {
        let c = w3();
        assert_eq!(c.matrix.row(1).to_string(), "110");
        assert!(c.matrix.is_member(&c.spec));
        assert_eq!(c.claimed_value, 2);
    }

    #[test]
    fn w6_rows_are_exact() {
        let c = w6();
        assert_eq!(c.matrix.row(3).to_string(), "011111");
        assert!(c.matrix.is_member(&c.spec));
        assert_eq!(c.claimed_value, 4);
    }

    #[test]
    fn even_indicator_examples() {
        assert_eq!(even_indicator(4).to_string(), "0101");
        assert_eq!(even_indicator(0).len(), 0);
        for n in 0..40 {
            assert_eq!(even_indicator(n).weight(), n / 2);
        }
    }

    #[test]
    fn nu_pairs_shapes() {
        let c = nu_pairs(9).unwrap();
        assert_eq!(c.claimed_value, 5);
        assert!(c.matrix.is_member(&c.spec));
        let parts = crate::graph::EdgeView::new(&c.matrix).components();
        assert_eq!(parts.len(), 5);
        assert_eq!(parts.parts()[4], vec![8]);

        let two = nu_pairs(2).unwrap();
        assert_eq!(two.matrix, WiringMatrix::all_ones(2));
        assert_eq!(two.claimed_value, 1);

        let one = nu_pairs(1).unwrap();
        assert_eq!(one.matrix, WiringMatrix::all_ones(1));
        assert_eq!(one.claimed_value, 1);

        assert!(nu_pairs(0).is_err());
    }

    #[test]
    fn nu_star_membership_all_cases() {
        for n in 2..=20 {
            for m in 2..=n {
                let c = nu_star(n, m).unwrap();
                assert!(
                    c.matrix.is_member(&c.spec),
                    "nu_star({n},{m}) not in {}",
                    c.spec
                );
            }
        }
    }

    #[test]
    fn nu_star_examples_solve_to_claimed() {
        for (n, m, want) in [(9, 3, 5), (10, 3, 6), (6, 5, 4), (11, 4, 6), (5, 2, 3)] {
            let c = nu_star(n, m).unwrap();
            assert_eq!(c.claimed_value, want);
            assert_eq!(
                solve(&c.matrix, &c.initial).unwrap().value,
                want,
                "nu_star({n},{m})"
            );
        }
    }

    #[test]
    fn nu_star_rejects_bad_arguments() {
        assert!(nu_star(3, 1).is_err());
        assert!(nu_star(2, 3).is_err());
    }

    #[test]
    fn mu2_family_shapes() {
        assert_eq!(mu2(0).matrix.n(), 0);
        assert_eq!(mu2(0).claimed_value, 0);
        assert_eq!(mu2(3).matrix, w3().matrix);
        assert_eq!(mu2(3).claimed_value, 2);
        let seven = mu2(7);
        assert_eq!(seven.claimed_value, 5);
        assert!(seven.matrix.is_member(&seven.spec));
    }

    #[test]
    fn mu2_star_shapes() {
        assert!(mu2_star(1).is_err());
        assert_eq!(mu2_star(3).unwrap().matrix, w3().matrix);
        let four = mu2_star(4).unwrap();
        assert_eq!(four.claimed_value, 4);
        assert!(four.matrix.is_member(&four.spec));
        let big = mu2_star(2008).unwrap();
        assert_eq!(big.claimed_value, 1340);
        assert!(big.matrix.is_member(&big.spec));
    }

    #[test]
    fn extend_degree_tiles_and_duplicates() {
        let base = mu2_star(6).unwrap();
        let c = extend_degree(&base, 3).unwrap();
        assert!(c.matrix.is_member(&ClassSpec::new(9, 3, true).unwrap()));
        // Identity tiles under the base.
        for j in 0..6 {
            assert!(c.matrix.get(6 + j % 3, j));
        }
        // The last three columns duplicate the first three.
        for j in 0..3 {
            assert_eq!(c.matrix.column(6 + j), c.matrix.column(j));
        }
        assert_eq!(c.claimed_value, 7);
        assert_eq!(solve(&c.matrix, &c.initial).unwrap().value, 7);
    }

    #[test]
    fn extend_degree_rejects_bad_arguments() {
        let base = mu2_star(4).unwrap();
        assert!(extend_degree(&base, 5).is_err());
        assert!(extend_degree(&base, 0).is_err());
        let loose = mu2(6);
        assert!(matches!(
            extend_degree(&loose, 2),
            Err(ConstructError::ExtendBaseNotExact)
        ));
    }

    #[test]
    fn mu3_star_fixed_points() {
        assert_eq!(mu3_star(6).unwrap().matrix, w6().matrix);
        assert_eq!(mu3_star(6).unwrap().claimed_value, 4);
        assert_eq!(mu3_star(9).unwrap().claimed_value, 7);
        assert_eq!(mu3_star(3).unwrap().matrix, WiringMatrix::all_ones(3));
        assert_eq!(mu3_star(3).unwrap().claimed_value, 3);
        assert!(mu3_star(2).is_err());
        for n in 3..=20 {
            let c = mu3_star(n).unwrap();
            assert!(c.matrix.is_member(&c.spec), "mu3_star({n})");
        }
    }

    #[test]
    fn mu3_reuses_mu2() {
        let c = mu3(8);
        assert_eq!(c.matrix, mu2(8).matrix);
        assert_eq!(c.spec, ClassSpec::new(8, 3, false).unwrap());
    }

    #[test]
    fn formula_fixed_values() {
        assert_eq!(formula(ExtremalKind::MuStar, 2008, 2).unwrap(), 1340);
        assert_eq!(formula(ExtremalKind::NuStar, 10, 3).unwrap(), 6);
        assert_eq!(formula(ExtremalKind::MuStar, 9, 3).unwrap(), 7);
        assert_eq!(formula(ExtremalKind::Mu, 0, 2).unwrap(), 0);
        assert!(matches!(
            formula(ExtremalKind::Mu, 4, 4),
            Err(ConstructError::FormulaUnknown { .. })
        ));
        assert!(matches!(
            formula(ExtremalKind::MuStar, 2, 3),
            Err(ConstructError::FormulaRange { .. })
        ));
    }

    #[test]
    fn formula_star_is_least_even_above_mu() {
        for n in 2..=1000 {
            let mu = formula(ExtremalKind::Mu, n, 2).unwrap();
            let star = formula(ExtremalKind::MuStar, n, 2).unwrap();
            assert_eq!(star % 2, 0);
            assert!(star >= mu && star < mu + 2);
        }
    }

    #[test]
    fn formula_mu3_exceptional_case() {
        // One above the unconstrained value exactly on n = 6k-3.
        for n in 3..=300 {
            let a = formula(ExtremalKind::Mu, n, 3).unwrap();
            let b = formula(ExtremalKind::MuStar, n, 3).unwrap();
            if n % 6 == 3 {
                assert_eq!(b, a + 1, "n={n}");
            } else {
                assert_eq!(b, a, "n={n}");
            }
        }
    }
}
