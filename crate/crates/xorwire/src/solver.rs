//! Exact computation of `M(W,c) = max_x |Wx + c|` with a witness press set.
//!
//! The lit state reachable from c is `c + u` for u in the column space of W,
//! so the maximum depends only on the column space. The solver splits the
//! wiring into weak components (block values add), eliminates each
//! component's columns to a basis, and walks all `2^rank` span elements in
//! Gray-code order, maintaining the lit count incrementally. A second pass
//! lifts the best span element back to a press set on the original buttons
//! and reduces it modulo the press kernel to the witness whose integer value
//! (button 1 = least-significant bit) is minimal.

use num_rational::Ratio;

use crate::bits::BitVector;
use crate::error::SolveError;
use crate::graph::EdgeView;
use crate::wiring::{apply, WiringMatrix};

/// Feasibility caps for the exponential phases. Exceeding a cap is an
/// explicit error, never a silent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityCaps {
    /// Per-component column-space rank bound for [`solve`].
    pub component_rank: usize,
    /// Column-space rank bound for [`min_over_configs`].
    pub config_rank: usize,
    /// Co-rank (number of coset representatives is 2^corank) bound for
    /// [`min_over_configs`].
    pub config_corank: usize,
    /// Allowed-set size bound for [`solve_restricted`].
    pub restricted_buttons: usize,
    /// Button-count bound for [`solve_naive`] and [`press_average`].
    pub naive_buttons: usize,
}

impl Default for FeasibilityCaps {
    fn default() -> Self {
        Self {
            component_rank: 30,
            config_rank: 20,
            config_corank: 20,
            restricted_buttons: 30,
            naive_buttons: 24,
        }
    }
}

/// Lit count per weak component at the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentValue {
    /// 0-based vertices, ascending.
    pub vertices: Vec<usize>,
    pub value: usize,
}

/// An exact optimum: the lit count, a press set attaining it, and the
/// per-component breakdown (the component values always sum to `value`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: BitVector,
    pub per_component: Vec<ComponentValue>,
}

fn check_dims(w: &WiringMatrix, c: &BitVector) -> Result<(), SolveError> {
    if c.len() != w.n() {
        return Err(SolveError::DimensionMismatch {
            n: w.n(),
            got: c.len(),
        });
    }
    Ok(())
}

/// Column basis of one component, with press combinations and the press
/// kernel needed to lift span elements back to minimal witnesses.
struct ComponentBasis {
    vectors: Vec<BitVector>,
    pivots: Vec<usize>,
    combos: Vec<BitVector>,
    kernel: Vec<BitVector>,
    kernel_tops: Vec<usize>,
}

impl ComponentBasis {
    fn build(w: &WiringMatrix, buttons: &[usize]) -> Self {
        let n = w.n();
        let mut basis = ComponentBasis {
            vectors: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            kernel: Vec::new(),
            kernel_tops: Vec::new(),
        };
        for &j in buttons {
            let mut v = w.column(j).clone();
            let mut x = BitVector::unit(n, j);
            for (k, &p) in basis.pivots.iter().enumerate() {
                if v.get(p) {
                    v ^= &basis.vectors[k];
                    x ^= &basis.combos[k];
                }
            }
            match v.lowest_set_bit() {
                Some(p) => {
                    basis.vectors.push(v);
                    basis.pivots.push(p);
                    basis.combos.push(x);
                }
                None => basis.insert_kernel(x),
            }
        }
        basis
    }

    /// Inserts a press-kernel vector, keeping the kernel fully reduced with
    /// distinct top (highest set) bits.
    fn insert_kernel(&mut self, mut x: BitVector) {
        for (k, &t) in self.kernel_tops.iter().enumerate() {
            if x.get(t) {
                x ^= &self.kernel[k];
            }
        }
        let Some(top) = x.highest_set_bit() else {
            return;
        };
        for kv in &mut self.kernel {
            if kv.get(top) {
                *kv ^= &x;
            }
        }
        self.kernel.push(x);
        self.kernel_tops.push(top);
    }

    /// The minimal-integer press set in `x + kernel`.
    fn minimize(&self, mut x: BitVector) -> BitVector {
        for (k, &t) in self.kernel_tops.iter().enumerate() {
            if x.get(t) {
                x ^= &self.kernel[k];
            }
        }
        x
    }

    fn rank(&self) -> usize {
        self.vectors.len()
    }
}

fn component_label(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Exact optimum for one component; returns (value, minimal witness).
fn solve_component(
    w: &WiringMatrix,
    c: &BitVector,
    vertices: &[usize],
    caps: &FeasibilityCaps,
) -> Result<(usize, BitVector), SolveError> {
    let n = w.n();
    let mask = BitVector::from_indices(n, vertices.iter().copied());
    let base = c & &mask;
    let basis = ComponentBasis::build(w, vertices);
    let r = basis.rank();
    if r > caps.component_rank || r > 62 {
        return Err(SolveError::RankOverCap {
            component: component_label(vertices),
            rank: r,
            cap: caps.component_rank.min(62),
        });
    }

    // Pass 1: the optimum value over the span.
    let mut state = base.clone();
    let mut best = state.weight();
    for k in 1u64..(1u64 << r) {
        state ^= &basis.vectors[k.trailing_zeros() as usize];
        best = best.max(state.weight());
    }

    // Pass 2: minimal-integer witness over all presses reaching the optimum.
    let mut state = base;
    let mut combo = BitVector::zeros(n);
    let mut witness: Option<BitVector> = None;
    if state.weight() == best {
        witness = Some(basis.minimize(combo.clone()));
    }
    for k in 1u64..(1u64 << r) {
        let idx = k.trailing_zeros() as usize;
        state ^= &basis.vectors[idx];
        combo ^= &basis.combos[idx];
        if state.weight() == best {
            let cand = basis.minimize(combo.clone());
            match &witness {
                Some(cur) if cur.cmp_as_integer(&cand).is_le() => {}
                _ => witness = Some(cand),
            }
        }
    }
    Ok((
        best,
        witness.expect("some span element attains the maximum"),
    ))
}

/// Exact maximum lit count with a witness, by component decomposition and
/// column-space enumeration.
pub fn solve(w: &WiringMatrix, c: &BitVector) -> Result<SolveResult, SolveError> {
    solve_with(w, c, &FeasibilityCaps::default())
}

pub fn solve_with(
    w: &WiringMatrix,
    c: &BitVector,
    caps: &FeasibilityCaps,
) -> Result<SolveResult, SolveError> {
    check_dims(w, c)?;
    let parts = EdgeView::new(w).components();
    let mut value = 0;
    let mut witness = BitVector::zeros(w.n());
    let mut per_component = Vec::with_capacity(parts.len());
    for part in parts.parts() {
        let (v, x) = solve_component(w, c, part, caps)?;
        value += v;
        witness ^= &x;
        per_component.push(ComponentValue {
            vertices: part.clone(),
            value: v,
        });
    }
    debug_assert_eq!(apply(w, &witness, c).unwrap().weight(), value);
    Ok(SolveResult {
        value,
        witness,
        per_component,
    })
}

/// Component breakdown of a known witness (used by the scan-based solvers).
fn breakdown(w: &WiringMatrix, c: &BitVector, witness: &BitVector) -> Vec<ComponentValue> {
    let lit = apply(w, witness, c).expect("dimensions already checked");
    EdgeView::new(w)
        .components()
        .parts()
        .iter()
        .map(|part| {
            let mask = BitVector::from_indices(w.n(), part.iter().copied());
            ComponentValue {
                vertices: part.clone(),
                value: lit.weight_and(&mask),
            }
        })
        .collect()
}

/// Exhaustive scan over all press sets supported on `buttons`, in integer
/// order, so the first attainer is the minimal-integer witness.
fn scan_buttons(w: &WiringMatrix, c: &BitVector, buttons: &[usize]) -> (usize, BitVector) {
    let k = buttons.len();
    let mut state = c.clone();
    let mut best = state.weight();
    let mut best_mask = 0u64;
    let mut mask = 0u64;
    while mask + 1 < (1u64 << k) {
        let next = mask + 1;
        let mut delta = mask ^ next;
        while delta != 0 {
            let b = delta.trailing_zeros() as usize;
            delta &= delta - 1;
            state ^= w.column(buttons[b]);
        }
        mask = next;
        let weight = state.weight();
        if weight > best {
            best = weight;
            best_mask = mask;
        }
    }
    let witness = BitVector::from_indices(
        w.n(),
        buttons
            .iter()
            .enumerate()
            .filter(|(b, _)| best_mask >> b & 1 == 1)
            .map(|(_, &j)| j),
    );
    (best, witness)
}

/// Maximum of `|Wx + c|` over press sets supported on `allowed`.
pub fn solve_restricted(
    w: &WiringMatrix,
    c: &BitVector,
    allowed: &BitVector,
) -> Result<SolveResult, SolveError> {
    solve_restricted_with(w, c, allowed, &FeasibilityCaps::default())
}

pub fn solve_restricted_with(
    w: &WiringMatrix,
    c: &BitVector,
    allowed: &BitVector,
    caps: &FeasibilityCaps,
) -> Result<SolveResult, SolveError> {
    check_dims(w, c)?;
    if allowed.len() != w.n() {
        return Err(SolveError::DimensionMismatch {
            n: w.n(),
            got: allowed.len(),
        });
    }
    let buttons: Vec<usize> = allowed.ones().collect();
    if buttons.len() > caps.restricted_buttons || buttons.len() > 62 {
        return Err(SolveError::AllowedSetTooLarge {
            size: buttons.len(),
            cap: caps.restricted_buttons.min(62),
        });
    }
    let (value, witness) = scan_buttons(w, c, &buttons);
    let per_component = breakdown(w, c, &witness);
    Ok(SolveResult {
        value,
        witness,
        per_component,
    })
}

/// Direct enumeration of all `2^n` press sets; the independent oracle for
/// [`solve`].
pub fn solve_naive(w: &WiringMatrix, c: &BitVector) -> Result<SolveResult, SolveError> {
    solve_naive_with(w, c, &FeasibilityCaps::default())
}

pub fn solve_naive_with(
    w: &WiringMatrix,
    c: &BitVector,
    caps: &FeasibilityCaps,
) -> Result<SolveResult, SolveError> {
    check_dims(w, c)?;
    if w.n() > caps.naive_buttons || w.n() > 62 {
        return Err(SolveError::TooManyButtons {
            n: w.n(),
            cap: caps.naive_buttons.min(62),
        });
    }
    let buttons: Vec<usize> = (0..w.n()).collect();
    let (value, witness) = scan_buttons(w, c, &buttons);
    let per_component = breakdown(w, c, &witness);
    Ok(SolveResult {
        value,
        witness,
        per_component,
    })
}

/// Exact mean of `|Wx + c|` over all `2^n` press sets, as a reduced
/// rational. Always `n/2` for a unit-diagonal wiring; computed by direct
/// enumeration so it can serve as an independent check of that fact.
pub fn press_average(w: &WiringMatrix, c: &BitVector) -> Result<Ratio<u64>, SolveError> {
    press_average_with(w, c, &FeasibilityCaps::default())
}

pub fn press_average_with(
    w: &WiringMatrix,
    c: &BitVector,
    caps: &FeasibilityCaps,
) -> Result<Ratio<u64>, SolveError> {
    check_dims(w, c)?;
    let n = w.n();
    if n > caps.naive_buttons || n > 62 {
        return Err(SolveError::TooManyButtons {
            n,
            cap: caps.naive_buttons.min(62),
        });
    }
    let mut state = c.clone();
    let mut sum = state.weight() as u64;
    let mut mask = 0u64;
    while mask + 1 < (1u64 << n) {
        let next = mask + 1;
        let mut delta = mask ^ next;
        while delta != 0 {
            let b = delta.trailing_zeros() as usize;
            delta &= delta - 1;
            state ^= w.column(b);
        }
        mask = next;
        sum += state.weight() as u64;
    }
    Ok(Ratio::new(sum, 1u64 << n))
}

/// Minimum of `M(W,c)` over all initial configurations, with a minimizing c.
///
/// `M(W,c)` depends only on the coset of c modulo the column space, so the
/// minimum ranges over coset representatives: the column basis is completed
/// to a full basis by unit vectors at the non-pivot rows, and the
/// representatives are the spans of those completion vectors, enumerated in
/// integer order (ties therefore resolve to the minimal-integer c).
pub fn min_over_configs(w: &WiringMatrix) -> Result<(usize, BitVector), SolveError> {
    min_over_configs_with(w, &FeasibilityCaps::default())
}

pub fn min_over_configs_with(
    w: &WiringMatrix,
    caps: &FeasibilityCaps,
) -> Result<(usize, BitVector), SolveError> {
    let n = w.n();
    let all: Vec<usize> = (0..n).collect();
    let basis = ComponentBasis::build(w, &all);
    let r = basis.rank();
    if r > caps.config_rank || r > 62 {
        return Err(SolveError::ConfigRankOverCap {
            rank: r,
            cap: caps.config_rank.min(62),
        });
    }
    let corank = n - r;
    if corank > caps.config_corank || corank > 62 {
        return Err(SolveError::ConfigCorankOverCap {
            corank,
            cap: caps.config_corank.min(62),
        });
    }
    let completion: Vec<usize> = (0..n).filter(|i| !basis.pivots.contains(i)).collect();

    let mut best: Option<(usize, BitVector)> = None;
    let mut rep = BitVector::zeros(n);
    let mut mask = 0u64;
    loop {
        // Abandoning at best+1 keeps ties exact, so the first (minimal
        // integer) minimizing representative wins.
        let cap = best.as_ref().map(|(v, _)| v + 1).unwrap_or(usize::MAX);
        let mut state = rep.clone();
        let mut value = state.weight();
        for k in 1u64..(1u64 << r) {
            state ^= &basis.vectors[k.trailing_zeros() as usize];
            value = value.max(state.weight());
            if value >= cap {
                break;
            }
        }
        if value < cap {
            best = Some((value, rep.clone()));
        }
        if corank == 0 || mask + 1 == (1u64 << corank) {
            break;
        }
        let next = mask + 1;
        let mut delta = mask ^ next;
        while delta != 0 {
            let b = delta.trailing_zeros() as usize;
            delta &= delta - 1;
            rep.set(completion[b], !rep.get(completion[b]));
        }
        mask = next;
    }
    Ok(best.expect("at least the zero representative is evaluated"))
}
