//! Constructive optimal lighting for degree-at-most-2 wirings.
//!
//! In `A(n,2)` every button toggles its own vertex and at most one other,
//! so the graph is functional: each vertex has at most one successor, and
//! every weak component is either a single cycle with trees hanging off it
//! (all vertices have successors) or a tree draining into one vertex with
//! no successor. Trees are lit from the outermost vertices inward, pressing
//! each vertex that is unlit when reached; cycles are then walked in cyclic
//! order the same way. Starting from all-off, each press in a fully
//! functional component changes the lit count by 0 or 2, so an odd-size
//! component of that kind keeps exactly one vertex dark and everything else
//! lights completely — which is the exact optimum.

use crate::bits::BitVector;
use crate::error::LightingError;
use crate::graph::EdgeView;
use crate::solver::{ComponentValue, SolveResult};
use crate::wiring::WiringMatrix;

/// The successor function of a degree-at-most-2 wiring: for each vertex,
/// the unique other vertex its button toggles, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessorMap {
    succ: Vec<Option<usize>>,
}

impl SuccessorMap {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.succ[i]
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }
}

/// Reads the successor function off the columns; errors if any column has
/// degree above 2.
pub fn successor_map(w: &WiringMatrix) -> Result<SuccessorMap, LightingError> {
    let mut succ = Vec::with_capacity(w.n());
    for j in 0..w.n() {
        let degree = w.column_degree(j);
        if degree > 2 {
            return Err(LightingError::NotDegreeTwo { column: j, degree });
        }
        succ.push(w.column(j).ones().find(|&i| i != j));
    }
    Ok(SuccessorMap { succ })
}

/// Computes a press set lighting the maximum number of vertices of a
/// degree-at-most-2 wiring from the all-off configuration, and that
/// maximum. Exact: the value always equals `solve(w, 0)`.
pub fn light_all(w: &WiringMatrix) -> Result<SolveResult, LightingError> {
    let n = w.n();
    let f = successor_map(w)?;
    let mut lit = BitVector::zeros(n);
    let mut presses = BitVector::zeros(n);

    let press = |v: usize, lit: &mut BitVector, presses: &mut BitVector| {
        presses.set(v, !presses.get(v));
        lit.set(v, !lit.get(v));
        if let Some(u) = f.get(v) {
            lit.set(u, !lit.get(u));
        }
    };

    let parts = EdgeView::new(w).components();
    let mut per_component = Vec::with_capacity(parts.len());
    for part in parts.parts() {
        // Peel the tree part in topological order: a vertex is ready once
        // every vertex pointing at it has been handled. What survives the
        // peeling is the component's cycle, if it has one.
        let mut indegree = vec![0usize; n];
        for &v in part {
            if let Some(u) = f.get(v) {
                indegree[u] += 1;
            }
        }
        let mut queue: Vec<usize> = part.iter().copied().filter(|&v| indegree[v] == 0).collect();
        let mut on_cycle: Vec<bool> = vec![true; n];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            on_cycle[v] = false;
            if !lit.get(v) {
                press(v, &mut lit, &mut presses);
            }
            if let Some(u) = f.get(v) {
                indegree[u] -= 1;
                if indegree[u] == 0 {
                    queue.push(u);
                }
            }
        }

        // Walk the cycle from its smallest vertex.
        if let Some(&start) = part.iter().find(|&&v| on_cycle[v]) {
            let mut v = start;
            loop {
                if !lit.get(v) {
                    press(v, &mut lit, &mut presses);
                }
                v = f.get(v).expect("cycle vertices have successors");
                if v == start {
                    break;
                }
            }
        }

        let mask = BitVector::from_indices(n, part.iter().copied());
        per_component.push(ComponentValue {
            vertices: part.clone(),
            value: lit.weight_and(&mask),
        });
    }

    let value = lit.weight();
    debug_assert_eq!(value, per_component.iter().map(|c| c.value).sum::<usize>());
    debug_assert_eq!(
        value,
        n - parts
            .parts()
            .iter()
            .filter(|p| p.len() % 2 == 1 && p.iter().all(|&v| f.get(v).is_some()))
            .count(),
        "odd fully-functional components keep exactly one vertex dark"
    );
    Ok(SolveResult {
        value,
        witness: presses,
        per_component,
    })
}
