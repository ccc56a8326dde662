//! Pivoting: a wiring rewrite that never increases the optimum and
//! preserves the wiring classes.
//!
//! Pivoting about vertex i replaces column j by column i for every j in
//! F(i); pressing j in the pivoted wiring then acts like pressing i in the
//! original. Pivoting about i with respect to a set T spares the columns
//! in T. F(i) is read off the input matrix, so chained pivots compose the
//! way sequential arguments use them.

use crate::bits::BitVector;
use crate::error::Gf2Error;
use crate::graph::EdgeView;
use crate::wiring::WiringMatrix;

/// Full pivot about vertex i (0-based).
pub fn pivot(w: &WiringMatrix, i: usize) -> Result<WiringMatrix, Gf2Error> {
    pivot_partial(w, i, &BitVector::zeros(w.n()))
}

/// Pivot about i, leaving columns in `spare` untouched.
pub fn pivot_partial(
    w: &WiringMatrix,
    i: usize,
    spare: &BitVector,
) -> Result<WiringMatrix, Gf2Error> {
    let n = w.n();
    if i >= n {
        return Err(Gf2Error::DimensionMismatch {
            expected: n,
            got: i,
        });
    }
    if spare.len() != n {
        return Err(Gf2Error::DimensionMismatch {
            expected: n,
            got: spare.len(),
        });
    }
    let targets = EdgeView::new(w).forward_of(i);
    let cols = (0..n)
        .map(|j| {
            if targets.get(j) && !spare.get(j) {
                w.column(i).clone()
            } else {
                w.column(j).clone()
            }
        })
        .collect();
    let out = WiringMatrix::from_columns(cols)?;
    if w.has_unit_diagonal() {
        assert!(
            out.has_unit_diagonal(),
            "pivot must preserve the unit diagonal"
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::solver::{solve, solve_restricted};
    use crate::wiring::ClassSpec;

    #[test]
    fn pivot_with_no_targets_is_identity() {
        let w = WiringMatrix::identity(4);
        assert_eq!(pivot(&w, 2).unwrap(), w);
    }

    #[test]
    fn pivot_w3_about_first_vertex() {
        let w = construct::w3().matrix;
        let p = pivot(&w, 0).unwrap();
        // F(1) = {1,2}: columns 1 and 2 both become column 1.
        assert_eq!(p.column(0), w.column(0));
        assert_eq!(p.column(1), w.column(0));
        assert_eq!(p.column(2), w.column(2));
    }

    #[test]
    fn partial_pivot_with_full_spare_is_identity() {
        let w = construct::w6().matrix;
        let all = BitVector::from_indices(6, 0..6);
        assert_eq!(pivot_partial(&w, 1, &all).unwrap(), w);
    }

    #[test]
    fn partial_pivot_with_empty_spare_is_full_pivot() {
        let w = construct::w6().matrix;
        for i in 0..6 {
            assert_eq!(
                pivot_partial(&w, i, &BitVector::zeros(6)).unwrap(),
                pivot(&w, i).unwrap()
            );
        }
    }

    #[test]
    fn pivot_index_out_of_range() {
        let w = WiringMatrix::identity(3);
        assert!(pivot(&w, 3).is_err());
    }

    #[test]
    fn pivot_preserves_exact_class() {
        let spec = ClassSpec::new(8, 3, true).unwrap();
        for seed in 0..500 {
            let w = spec.sample(seed).unwrap();
            let i = (seed % 8) as usize;
            assert!(pivot(&w, i).unwrap().is_member(&spec));
        }
    }

    #[test]
    fn partial_pivot_preserves_class() {
        let spec = ClassSpec::new(9, 3, false).unwrap();
        for seed in 0..500 {
            let w = spec.sample(seed).unwrap();
            let i = (seed % 9) as usize;
            let spare = BitVector::from_indices(9, (0..9).filter(|v| (seed >> v) & 1 == 1));
            assert!(pivot_partial(&w, i, &spare).unwrap().is_member(&spec));
        }
    }

    #[test]
    fn pivot_never_increases_the_optimum() {
        for seed in 0..300 {
            let n = 2 + (seed as usize % 11);
            let spec = ClassSpec::new(n, 1 + seed as usize % n, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let c = BitVector::from_indices(n, (0..n).filter(|v| (seed >> (v % 40)) & 1 == 1));
            let i = seed as usize % n;
            let before = solve(&w, &c).unwrap().value;
            assert!(solve(&pivot(&w, i).unwrap(), &c).unwrap().value <= before);
            let spare = BitVector::from_indices(n, (0..n).filter(|v| (seed >> (v % 23)) & 1 == 1));
            let partial = pivot_partial(&w, i, &spare).unwrap();
            assert!(solve(&partial, &c).unwrap().value <= before);
        }
    }

    #[test]
    fn pivot_value_equals_restricted_solve() {
        // Pressing inside F(i)\{i} is what pivoting forbids.
        for seed in 0..200 {
            let n = 2 + (seed as usize % 9);
            let spec = ClassSpec::new(n, 1 + seed as usize % n, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let c = BitVector::from_indices(n, (0..n).filter(|v| (seed >> (v % 17)) & 1 == 1));
            let i = seed as usize % n;
            let mut allowed = BitVector::from_indices(n, 0..n);
            for j in EdgeView::new(&w).forward_of(i).ones() {
                if j != i {
                    allowed.set(j, false);
                }
            }
            assert_eq!(
                solve(&pivot(&w, i).unwrap(), &c).unwrap().value,
                solve_restricted(&w, &c, &allowed).unwrap().value
            );
        }
    }

    #[test]
    fn pivot_makes_targets_invariant_and_complete() {
        for seed in 0..200 {
            let n = 2 + (seed as usize % 10);
            let spec = ClassSpec::new(n, 1 + seed as usize % n, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let i = seed as usize % n;
            let targets = EdgeView::new(&w).forward_of(i);
            let p = pivot(&w, i).unwrap();
            let view = EdgeView::new(&p);
            assert_eq!(view.forward_of(i), targets);
            assert!(view.is_forward_invariant(&targets).unwrap());
            assert!(view.is_complete_subgraph(&targets).unwrap());
        }
    }

    #[test]
    fn partial_pivot_leaves_complete_subgraph() {
        for seed in 0..200 {
            let n = 3 + (seed as usize % 9);
            let spec = ClassSpec::new(n, 1 + seed as usize % n, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let i = seed as usize % n;
            let spare = BitVector::from_indices(n, (0..n).filter(|v| (seed >> (v % 29)) & 1 == 1));
            let p = pivot_partial(&w, i, &spare).unwrap();
            let mut kept = EdgeView::new(&w).forward_of(i);
            for v in 0..n {
                if spare.get(v) {
                    kept.set(v, false);
                }
            }
            if !kept.is_zero() {
                assert!(EdgeView::new(&p).is_complete_subgraph(&kept).unwrap());
            }
        }
    }
}
