//! Minimizing the joint entropy `H(X,Y)` over `C(P, Q)`.
//!
//! `H(X,Y)` is concave, so its minimum over the polytope sits at a vertex.
//! [`min_joint_entropy_exact`] walks every vertex; [`local_search_min_entropy`]
//! descends along pivots from a given vertex.
//!
//! Over `C(P, Q)` we always have `H(X,Y) >= max{H(P), H(Q)}`, with
//! `H(X,Y) = H(P)` exactly when every row of the coupling has at most one
//! nonzero cell. [`decide_entropy_min`] answers that equality question
//! combinatorially, by packing the row masses into the column masses, and
//! never compares irrational numbers.

use std::cmp::Reverse;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::entropy::{approx_entropy, entropy_of_counts, Entropy, Precision};
use crate::error::{Error, Result};
use crate::measures::{to_counts, Coupling, Distribution, Rational};
use crate::polytope::{TransportationPolytope, Vertex, DEFAULT_VERTEX_LIMIT};
use crate::search::{find_grouping, Leaderboard};

/// Largest common denominator accepted by [`decide_entropy_min_two_cols`].
pub const DEFAULT_DP_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Maximum number of distinct vertices (or assignments) to examine.
    pub limit: usize,
    pub precision: Precision,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            limit: DEFAULT_VERTEX_LIMIT,
            precision: Precision::DEFAULT,
        }
    }
}

/// Outcome of an optimization over couplings.
#[derive(Clone, Debug)]
pub struct MinEntropyResult {
    pub best: Coupling,
    /// Objective at `best`.
    pub value: Entropy,
    /// `true` only when `best` is proved globally optimal.
    pub optimal: bool,
    /// The search stopped at its budget; `best` is the best seen so far.
    pub limit_exceeded: bool,
    pub vertices_visited: usize,
    /// Other optimizers whose values could not be separated from `best`
    /// even at [`Precision::MAX`].
    pub co_minimal: Vec<Coupling>,
}

/// A row-to-column map whose induced coupling puts all of `p_i` in one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicWitness {
    assignment: Vec<Option<usize>>,
    cols: usize,
}

impl DeterministicWitness {
    pub(crate) fn new(assignment: Vec<Option<usize>>, cols: usize) -> Self {
        DeterministicWitness { assignment, cols }
    }

    /// Column of each row; `None` for rows of zero mass.
    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn column_of(&self, row: usize) -> Option<usize> {
        self.assignment.get(row).copied().flatten()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Places `p_i` at `(i, assignment(i))`.
    pub fn to_coupling(&self, p: &Distribution) -> Coupling {
        let n = p.len();
        let mut rows = vec![vec![Rational::zero(); self.cols]; n];
        for (i, col) in self.assignment.iter().enumerate() {
            if let Some(j) = col {
                rows[i][*j] = p.probs()[i].clone();
            }
        }
        Coupling::from_rows(rows).expect("witness rows carry the mass of P")
    }
}

/// Answer to an exact decision problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    Witness(W),
    /// No witness exists. `exhausted` records that the search space was
    /// fully explored, which makes the answer a proof.
    NoWitness {
        exhausted: bool,
    },
}

impl<W> Decision<W> {
    pub fn is_witness(&self) -> bool {
        matches!(self, Decision::Witness(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Witness(w) => Some(w),
            Decision::NoWitness { .. } => None,
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Decision::Witness(w) => Some(w),
            Decision::NoWitness { .. } => None,
        }
    }
}

/// The polytope restricted to rows and columns of positive mass.
struct Stripped {
    rows: Vec<usize>,
    cols: Vec<usize>,
    shape: (usize, usize),
    reduced: TransportationPolytope,
}

impl Stripped {
    fn new(p: &TransportationPolytope) -> Self {
        let keep = |d: &Distribution| -> Vec<usize> { (0..d.len()).filter(|&i| !d.probs()[i].is_zero()).collect() };
        let rows = keep(p.row_marginal());
        let cols = keep(p.col_marginal());
        let pick = |d: &Distribution, idx: &[usize]| {
            Distribution::new(idx.iter().map(|&i| d.probs()[i].clone()).collect())
                .expect("positive part of a distribution")
        };
        let reduced = TransportationPolytope::new(pick(p.row_marginal(), &rows), pick(p.col_marginal(), &cols));
        Stripped {
            rows,
            cols,
            shape: p.shape(),
            reduced,
        }
    }

    fn expand(&self, counts: &[BigUint]) -> Coupling {
        let (n, m) = self.shape;
        let rm = self.cols.len();
        let mut full = vec![BigUint::zero(); n * m];
        for (ri, &i) in self.rows.iter().enumerate() {
            for (rj, &j) in self.cols.iter().enumerate() {
                full[i * m + j] = counts[ri * rm + rj].clone();
            }
        }
        Coupling::from_counts(n, m, &full, self.reduced.denominator())
    }
}

fn signature(counts: &[BigUint]) -> Vec<BigUint> {
    let mut sig: Vec<BigUint> = counts.iter().filter(|k| !k.is_zero()).cloned().collect();
    sig.sort_unstable();
    sig
}

/// Global minimum of `H(X,Y)` over the vertices of `C(P, Q)`.
///
/// Every vertex is visited; only those whose `f64` entropy is within a small
/// slack of the running best get certified evaluation. Among minimizers the
/// first coupling in [`Coupling::canonical_cmp`] order is returned. If more than
/// `opts.limit` vertices exist the best one seen is returned with
/// `optimal = false`.
pub fn min_joint_entropy_exact(p: &TransportationPolytope, opts: SolverOptions) -> MinEntropyResult {
    let s = Stripped::new(p);
    let denom = s.reduced.denominator().clone();
    // Reverse: the canonical order ranks larger row-major counts first.
    let mut board: Leaderboard<Reverse<Vec<BigUint>>> = Leaderboard::new();
    let limit = opts.limit.max(1);
    let walk = s.reduced.walk(limit, |counts, _| {
        board.push(
            approx_entropy(counts, &denom),
            signature(counts),
            Reverse(counts.to_vec()),
        );
    });
    let settled = board
        .settle(opts.precision, |c, prec| entropy_of_counts(&c.0, &denom, prec))
        .expect("every polytope has a vertex");
    MinEntropyResult {
        best: s.expand(&settled.best.0),
        value: settled.value,
        optimal: walk.complete,
        limit_exceeded: !walk.complete,
        vertices_visited: walk.distinct.min(limit),
        co_minimal: settled.ties.iter().map(|c| s.expand(&c.0)).collect(),
    }
}

/// The product coupling `P x Q`, the unique maximizer of `H(X,Y)` over
/// `C(P, Q)`, where `H(X,Y) = H(P) + H(Q)`.
pub fn max_joint_entropy(p: &TransportationPolytope) -> Coupling {
    p.product_coupling()
}

/// Is there `S` in `C(P, Q)` with `H(S) = H(P)`?
///
/// Equivalent to packing the positive row masses into columns so that every
/// column receives exactly `q_j`. The returned witness is the
/// lexicographically smallest assignment in row order.
pub fn decide_entropy_min(p: &TransportationPolytope) -> Decision<DeterministicWitness> {
    let supply = p.supply();
    let rows: Vec<usize> = (0..supply.len()).filter(|&i| !supply[i].is_zero()).collect();
    let weights: Vec<BigUint> = rows.iter().map(|&i| supply[i].clone()).collect();
    match find_grouping(&weights, p.demand()) {
        Some(cols) => {
            let mut assignment = vec![None; supply.len()];
            for (&i, j) in rows.iter().zip(cols) {
                assignment[i] = Some(j);
            }
            Decision::Witness(DeterministicWitness::new(assignment, p.shape().1))
        }
        None => Decision::NoWitness { exhausted: true },
    }
}

/// The two-column case `Q = (q, 1 - q)`, solved as subset sum by dynamic
/// programming in `O(n D)` bit operations, where `D` is the common
/// denominator. Rows assigned to column `0` sum to `q`.
pub fn decide_entropy_min_two_cols(
    p: &Distribution,
    q: &Rational,
    budget: u64,
) -> Result<Decision<DeterministicWitness>> {
    if q < &Rational::zero() || q > &Rational::from_integer(1.into()) {
        return Err(Error::InvalidArgument(format!("column mass {q} outside [0, 1]")));
    }
    let mut all = p.probs().to_vec();
    all.push(q.clone());
    let (counts, denom) = to_counts(&all);
    let too_big = || Error::DenominatorOverflow {
        denominator: denom.to_string(),
        budget,
    };
    let d = denom.to_u64().filter(|&d| d <= budget).ok_or_else(too_big)?;
    let target = counts[p.len()].to_u64().expect("bounded by D") as usize;
    let rows: Vec<usize> = (0..p.len()).filter(|&i| !counts[i].is_zero()).collect();
    let weights: Vec<usize> = rows
        .iter()
        .map(|&i| counts[i].to_u64().expect("bounded by D") as usize)
        .collect();
    debug_assert!(weights.iter().sum::<usize>() as u64 == d);

    // reach[t]: sums up to `target` reachable with rows t.. (in `rows` order).
    let mut reach = vec![BitSet::new(target + 1); weights.len() + 1];
    reach[weights.len()].insert(0);
    for t in (0..weights.len()).rev() {
        let (head, tail) = reach.split_at_mut(t + 1);
        head[t].or_shifted(&tail[0], 0);
        head[t].or_shifted(&tail[0], weights[t]);
    }
    if !reach[0].contains(target) {
        return Ok(Decision::NoWitness { exhausted: true });
    }
    let mut assignment = vec![None; p.len()];
    let mut remaining = target;
    for (t, &i) in rows.iter().enumerate() {
        let w = weights[t];
        if w <= remaining && reach[t + 1].contains(remaining - w) {
            assignment[i] = Some(0);
            remaining -= w;
        } else {
            assignment[i] = Some(1);
        }
    }
    debug_assert_eq!(remaining, 0);
    Ok(Decision::Witness(DeterministicWitness::new(assignment, 2)))
}

#[derive(Clone, Debug)]
struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// `self |= other << shift`, truncated to `len` bits.
    fn or_shifted(&mut self, other: &BitSet, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        for k in (ws..self.words.len()).rev() {
            let src = k - ws;
            let mut v = other.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= other.words[src - 1] >> (64 - bs);
            }
            self.words[k] |= v;
        }
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

/// Steepest descent on `H(X,Y)` along pivot edges, starting at `start`.
///
/// Each step moves to the neighbor with the smallest entropy if it is
/// certifiably below the current vertex. The result is flagged optimal only
/// when the final coupling is row- or column-deterministic, which means it
/// attains the lower bound `max{H(P), H(Q)}`.
pub fn local_search_min_entropy(
    p: &TransportationPolytope,
    start: &Vertex,
    max_steps: usize,
    precision: Precision,
) -> MinEntropyResult {
    let denom = p.denominator().clone();
    let eval = |v: &Vertex| entropy_of_counts(v.counts(), &denom, precision);
    let mut current = start.clone();
    let mut value = eval(&current);
    let mut visited = 1;
    for _ in 0..max_steps {
        let neighbors = p.pivot_neighbors(&current);
        visited += neighbors.len();
        // Neighbors arrive sorted by cells; scanning them in reverse makes
        // the first minimum the canonical one.
        let Some(next) = neighbors
            .into_iter()
            .rev()
            .min_by(|a, b| approx_entropy(a.counts(), &denom).total_cmp(&approx_entropy(b.counts(), &denom)))
        else {
            break;
        };
        let next_value = eval(&next);
        if !next_value.definitely_lt(&value) {
            break;
        }
        current = next;
        value = next_value;
    }
    let best = current.into_coupling();
    let optimal = best.is_row_deterministic() || best.is_col_deterministic();
    MinEntropyResult {
        best,
        value,
        optimal,
        limit_exceeded: false,
        vertices_visited: visited,
        co_minimal: Vec::new(),
    }
}

/// `max{H(P), H(Q)}`, the lower bound on `H(X,Y)` over `C(P, Q)`.
pub fn entropy_lower_bound(p: &TransportationPolytope, precision: Precision) -> Entropy {
    let h = |d: &Distribution| {
        let (c, den) = d.counts();
        entropy_of_counts(&c, &den, precision)
    };
    let (hp, hq) = (h(p.row_marginal()), h(p.col_marginal()));
    // max(a, b) = -min(-a, -b)
    Entropy::zero().sub(&Entropy::zero().sub(&hp).min(&Entropy::zero().sub(&hq)))
}
