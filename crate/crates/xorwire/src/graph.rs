//! Directed-graph view of a wiring.
//!
//! Column j of the matrix lists the vertices toggled by pressing j, so the
//! graph has an edge j -> i exactly when `w[i][j] = 1` and `i != j`; there
//! are no self-loops even though every press toggles its own vertex.

use crate::bits::BitVector;
use crate::error::Gf2Error;
use crate::wiring::WiringMatrix;

/// Read-only graph view over a wiring.
#[derive(Clone, Copy)]
pub struct EdgeView<'a> {
    w: &'a WiringMatrix,
}

/// Partition of the vertex set into weakly connected components, each part
/// sorted ascending, parts ordered by smallest contained vertex.
///
/// Weak connectivity (edge direction ignored) is used because the finest
/// block-diagonal structure of the matrix, up to relabeling, is exactly the
/// weak component partition, and per-block values add.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    parts: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl<'a> EdgeView<'a> {
    pub fn new(w: &'a WiringMatrix) -> Self {
        Self { w }
    }

    fn check_set(&self, t: &BitVector) -> Result<(), Gf2Error> {
        if t.len() != self.w.n() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.w.n(),
                got: t.len(),
            });
        }
        Ok(())
    }

    /// `F(i)`: the vertex itself plus everything pressing it toggles; equals
    /// the support of column i for a unit-diagonal wiring.
    pub fn forward_of(&self, i: usize) -> BitVector {
        let mut f = self.w.column(i).clone();
        f.set(i, true);
        f
    }

    /// `F^-1(i)`: the vertex itself plus everything that toggles it; equals
    /// the support of row i for a unit-diagonal wiring.
    pub fn backward_of(&self, i: usize) -> BitVector {
        let mut f = self.w.row(i);
        f.set(i, true);
        f
    }

    /// `F(T)`, the union of `F(i)` over the set.
    pub fn forward_set(&self, t: &BitVector) -> Result<BitVector, Gf2Error> {
        self.check_set(t)?;
        let mut out = t.clone();
        for i in t.ones() {
            out |= &self.forward_of(i);
        }
        Ok(out)
    }

    /// `F^-1(T)`, the union of `F^-1(i)` over the set.
    pub fn backward_set(&self, t: &BitVector) -> Result<BitVector, Gf2Error> {
        self.check_set(t)?;
        let mut out = t.clone();
        for j in 0..self.w.n() {
            if self.w.column(j).weight_and(t) > 0 {
                out.set(j, true);
            }
        }
        Ok(out)
    }

    /// Whether `F(T)` stays inside T.
    pub fn is_forward_invariant(&self, t: &BitVector) -> Result<bool, Gf2Error> {
        let f = self.forward_set(t)?;
        Ok((0..self.w.n()).all(|i| !f.get(i) || t.get(i)))
    }

    /// Whether every ordered pair of distinct vertices in T is joined by an
    /// edge. Singletons (and the empty set) qualify vacuously.
    pub fn is_complete_subgraph(&self, t: &BitVector) -> Result<bool, Gf2Error> {
        self.check_set(t)?;
        let members: Vec<usize> = t.ones().collect();
        for &a in &members {
            for &b in &members {
                if a != b && !self.w.get(b, a) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Weak-connectivity partition of the symmetrized off-diagonal adjacency.
    pub fn components(&self) -> ComponentPartition {
        let n = self.w.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for j in 0..n {
            for i in self.w.column(j).ones() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let root = find(&mut parent, v);
            parts[root].push(v);
        }
        parts.retain(|p| !p.is_empty());
        // Roots are component minima, so parts are already ordered by
        // smallest vertex and sorted internally.
        ComponentPartition { parts }
    }

    /// DOT rendering: nodes labeled 1..n ascending, one line per edge,
    /// edges sorted by (source, target), no self-loops.
    pub fn export_dot(&self) -> String {
        let n = self.w.n();
        let mut out = String::from("digraph wiring {\n");
        for v in 1..=n {
            out.push_str(&format!("  {v};\n"));
        }
        for j in 0..n {
            for i in self.w.column(j).ones() {
                if i != j {
                    out.push_str(&format!("  {} -> {};\n", j + 1, i + 1));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn set(n: usize, idx: &[usize]) -> BitVector {
        BitVector::from_indices(n, idx.iter().copied())
    }

    #[test]
    fn forward_set_w3() {
        let w = construct::w3().matrix;
        let view = EdgeView::new(&w);
        assert_eq!(view.forward_set(&set(3, &[0])).unwrap(), set(3, &[0, 1]));
    }

    #[test]
    fn forward_set_whole_vertex_set_is_fixed() {
        let w = construct::w6().matrix;
        let view = EdgeView::new(&w);
        let all = set(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(view.forward_set(&all).unwrap(), all);
    }

    #[test]
    fn forward_set_w6_vertex_four() {
        let w = construct::w6().matrix;
        let view = EdgeView::new(&w);
        assert_eq!(view.forward_set(&set(6, &[3])).unwrap(), set(6, &[3, 4, 5]));
    }

    #[test]
    fn forward_invariance_examples() {
        let w3 = construct::w3().matrix;
        let block = WiringMatrix::block_diag(&[w3.clone(), w3]);
        let view = EdgeView::new(&block);
        assert!(view.is_forward_invariant(&set(6, &[0, 1, 2])).unwrap());

        let w6 = construct::w6().matrix;
        let view = EdgeView::new(&w6);
        assert!(view.is_forward_invariant(&set(6, &[3, 4, 5])).unwrap());
        // w[5][1] = 1 pulls vertex 5 into F({1,2,3}).
        assert!(!view.is_forward_invariant(&set(6, &[0, 1, 2])).unwrap());
    }

    #[test]
    fn components_examples() {
        let id = WiringMatrix::identity(3);
        assert_eq!(
            EdgeView::new(&id).components().parts(),
            &[vec![0], vec![1], vec![2]]
        );

        let pairs = WiringMatrix::block_diag(&[
            WiringMatrix::all_ones(2),
            WiringMatrix::all_ones(2),
            WiringMatrix::all_ones(1),
        ]);
        assert_eq!(
            EdgeView::new(&pairs).components().parts(),
            &[vec![0, 1], vec![2, 3], vec![4]]
        );

        let w6 = construct::w6().matrix;
        assert_eq!(
            EdgeView::new(&w6).components().parts(),
            &[vec![0, 1, 2, 3, 4, 5]]
        );
    }

    #[test]
    fn complete_subgraph_examples() {
        let ones = WiringMatrix::all_ones(3);
        let view = EdgeView::new(&ones);
        assert!(view.is_complete_subgraph(&set(3, &[0, 1, 2])).unwrap());

        let w3 = construct::w3().matrix;
        let view = EdgeView::new(&w3);
        // Edges go one way around the triangle.
        assert!(!view.is_complete_subgraph(&set(3, &[0, 1, 2])).unwrap());
        assert!(view.is_complete_subgraph(&set(3, &[1])).unwrap());
    }

    #[test]
    fn dot_identity_two_nodes_no_edges() {
        let id = WiringMatrix::identity(2);
        assert_eq!(
            EdgeView::new(&id).export_dot(),
            "digraph wiring {\n  1;\n  2;\n}\n"
        );
    }

    #[test]
    fn dot_w3_directed_cycle() {
        let w3 = construct::w3().matrix;
        assert_eq!(
            EdgeView::new(&w3).export_dot(),
            "digraph wiring {\n  1;\n  2;\n  3;\n  1 -> 2;\n  2 -> 3;\n  3 -> 1;\n}\n"
        );
    }

    #[test]
    fn dot_w6_edge_count() {
        let w6 = construct::w6().matrix;
        let dot = EdgeView::new(&w6).export_dot();
        assert_eq!(dot.matches(" -> ").count(), 12);
    }

    #[test]
    fn duality_of_edge_functions() {
        for seed in 0..50 {
            let spec = crate::wiring::ClassSpec::new(9, 3, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let view = EdgeView::new(&w);
            for i in 0..9 {
                for j in 0..9 {
                    assert_eq!(view.forward_of(j).get(i), view.backward_of(i).get(j));
                }
                // F(i) is the support of column i; F^-1(i) of row i.
                assert_eq!(view.forward_of(i), *w.column(i));
                assert_eq!(view.backward_of(i), w.row(i));
            }
        }
    }

    #[test]
    fn components_partition_has_no_cross_edges() {
        for seed in 0..50 {
            let spec = crate::wiring::ClassSpec::new(10, 3, false).unwrap();
            let w = spec.sample(seed).unwrap();
            let view = EdgeView::new(&w);
            let parts = view.components();
            let mut seen = [false; 10];
            for part in parts.parts() {
                let t = set(10, part);
                assert!(view.is_forward_invariant(&t).unwrap());
                for &v in part {
                    assert!(!seen[v]);
                    seen[v] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn blocks_are_invariant_after_block_diag() {
        let a = construct::w3().matrix;
        let b = WiringMatrix::all_ones(2);
        let w = WiringMatrix::block_diag(&[a, b]);
        let view = EdgeView::new(&w);
        let first = set(5, &[0, 1, 2]);
        let second = set(5, &[3, 4]);
        assert!(view.is_forward_invariant(&first).unwrap());
        assert!(view.is_forward_invariant(&second).unwrap());
        assert_eq!(view.backward_set(&second).unwrap(), second);
    }
}
