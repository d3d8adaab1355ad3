//! Channels with a fixed input distribution: the family `C(P, m)`.
//!
//! `C(P, m)` holds every joint distribution whose `X`-marginal is `P` and
//! whose `Y` takes at most `m` values; it is the union of `C(P, Q)` over all
//! `Q` of length `m`.
//!
//! Minimizing `H(X,Y)` (or `H(Y|X)`) over the family is trivial: send every
//! input to the same output. Maximizing `I(X;Y)` is the hard direction.
//!
//! # Why row-deterministic couplings suffice
//!
//! `C(P, m)` is the polytope `{S >= 0 : sum_j s_ij = p_i}`, a product of
//! scaled simplices, one per row. Its vertices put the whole row mass `p_i`
//! in a single column, i.e. they are exactly the row-deterministic
//! couplings. With the input fixed, `I(X;Y)` is convex in the channel
//! `p(y|x)` and hence in `S`, so its maximum over the polytope is attained
//! at a vertex. For a row-deterministic `S`, `H(X,Y) = H(P)` and therefore
//! `I(X;Y) = H(Q)`, where `Q` collects the row masses by column. The search
//! thus ranges over partitions of the rows into at most `m` groups and
//! maximizes the entropy of the group sums.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::entropy::{entropy_of_counts, log2_integer, Entropy, Precision};
use crate::error::{Error, Result};
use crate::measures::{entropy_with, mutual_information_with, Coupling, Distribution, Rational};
use crate::minentropy::{Decision, MinEntropyResult, SolverOptions};
use crate::polytope::TransportationPolytope;
use crate::search::{find_grouping, Leaderboard};

/// `C(P, m)`: input marginal `P`, output alphabet of size `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelFamily {
    input: Distribution,
    output_size: usize,
}

impl ChannelFamily {
    pub fn new(input: Distribution, output_size: usize) -> Result<Self> {
        if output_size == 0 {
            return Err(Error::InvalidArgument("output alphabet must be nonempty".into()));
        }
        Ok(ChannelFamily { input, output_size })
    }

    pub fn input_marginal(&self) -> &Distribution {
        &self.input
    }

    pub fn output_size(&self) -> usize {
        self.output_size
    }

    /// `C(P, U_m)` with `U_m` uniform on the outputs.
    pub fn uniform_output_polytope(&self) -> TransportationPolytope {
        TransportationPolytope::new(
            self.input.clone(),
            Distribution::uniform(self.output_size).expect("m >= 1"),
        )
    }

    /// Exact membership in `C(P, m)`.
    pub fn contains(&self, s: &Coupling) -> bool {
        s.rows() == self.input.len() && s.cols() == self.output_size && s.row_sums() == self.input.probs()
    }
}

/// Assignment of inputs to outputs whose output masses are all `1/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPartitionWitness {
    assignment: Vec<Option<usize>>,
    outputs: usize,
}

impl BalancedPartitionWitness {
    /// Output of each input; `None` for inputs of zero mass.
    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Input indices grouped by output, in output order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.outputs];
        for (i, col) in self.assignment.iter().enumerate() {
            if let Some(j) = col {
                g[*j].push(i);
            }
        }
        g
    }

    pub fn to_coupling(&self, p: &Distribution) -> Coupling {
        assignment_coupling(p, &self.assignment, self.outputs)
    }
}

fn assignment_coupling(p: &Distribution, assignment: &[Option<usize>], m: usize) -> Coupling {
    let mut rows = vec![vec![Rational::zero(); m]; p.len()];
    for (i, col) in assignment.iter().enumerate() {
        if let Some(j) = col {
            rows[i][*j] = p.probs()[i].clone();
        }
    }
    Coupling::from_rows(rows).expect("assignment keeps the row masses")
}

/// All input mass on output `0`: `H(X,Y) = H(P)` and `H(Y|X) = 0`.
pub fn min_joint_entropy_over_family(f: &ChannelFamily) -> Coupling {
    let assignment = vec![Some(0); f.input.len()];
    assignment_coupling(&f.input, &assignment, f.output_size)
}

/// Is there a channel in `C(P, m)` with `I(X;Y) = log2 m`?
///
/// That happens exactly when the input masses split into `m` groups of
/// mass `1/m` each. Decided by exact search over rationals; the witness is
/// the lexicographically smallest assignment, so input `0` always goes to
/// output `0`.
pub fn decide_optimal_channel(f: &ChannelFamily) -> Decision<BalancedPartitionWitness> {
    let (counts, denom) = f.input.counts();
    let m = BigUint::from(f.output_size);
    let rows: Vec<usize> = (0..counts.len()).filter(|&i| !counts[i].is_zero()).collect();
    // Scale by m so that each output's share D/m becomes the integer D.
    let weights: Vec<BigUint> = rows.iter().map(|&i| &counts[i] * &m).collect();
    let caps = vec![denom; f.output_size];
    match find_grouping(&weights, &caps) {
        Some(cols) => {
            let mut assignment = vec![None; counts.len()];
            for (&i, j) in rows.iter().zip(cols) {
                assignment[i] = Some(j);
            }
            Decision::Witness(BalancedPartitionWitness {
                assignment,
                outputs: f.output_size,
            })
        }
        None => Decision::NoWitness { exhausted: true },
    }
}

/// `min{H(P), log2 m}`, an upper bound on `I(X;Y)` over `C(P, m)`.
pub fn capacity_upper_bound(f: &ChannelFamily, precision: Precision) -> Entropy {
    entropy_with(&f.input, precision).min(&log2_integer(f.output_size as u64, precision))
}

/// Maximum of `I(X;Y)` over `C(P, m)`.
///
/// Enumerates partitions of the positive-mass inputs into at most `m`
/// groups (in canonical form, so relabelings of outputs are visited once)
/// with a water-filling bound for pruning. Stops early when a partition
/// reaches `log2 m` or `H(P)`, since nothing can exceed those. The result's
/// `value` is `I(X;Y)` of `best`, and `vertices_visited` counts complete
/// partitions examined.
pub fn max_mutual_information(f: &ChannelFamily, opts: SolverOptions) -> MinEntropyResult {
    let (counts, denom) = f.input.counts();
    let rows: Vec<usize> = (0..counts.len()).filter(|&i| !counts[i].is_zero()).collect();
    let weights: Vec<BigUint> = rows.iter().map(|&i| counts[i].clone()).collect();
    let m = f.output_size.min(rows.len()).max(1);
    let d = denom.to_f64().unwrap_or(f64::INFINITY);
    let mut search = PartitionSearch {
        weights: &weights,
        weights_f64: weights
            .iter()
            .map(|w| w.to_f64().unwrap_or(f64::INFINITY) / d)
            .collect(),
        denom: &denom,
        groups: vec![BigUint::zero(); m],
        groups_f64: vec![0.0; m],
        assignment: vec![0; weights.len()],
        board: Leaderboard::new(),
        visited: 0,
        limit: opts.limit.max(1),
        stop: Stop::No,
    };
    search.descend(0, 0);
    let PartitionSearch {
        board, visited, stop, ..
    } = search;
    let settled = board
        .settle(opts.precision, |a: &Vec<usize>, prec| {
            let sums = group_sums(&weights, a, m);
            Entropy::zero().sub(&entropy_of_counts(&sums, &denom, prec))
        })
        .expect("at least one partition");
    let full = |a: &Vec<usize>| -> Vec<Option<usize>> {
        let mut out = vec![None; counts.len()];
        for (&i, &j) in rows.iter().zip(a) {
            out[i] = Some(j);
        }
        out
    };
    let best = assignment_coupling(&f.input, &full(&settled.best), f.output_size);
    let value = mutual_information_with(&best, opts.precision);
    let limit_exceeded = stop == Stop::Limit;
    MinEntropyResult {
        best,
        value,
        optimal: !limit_exceeded,
        limit_exceeded,
        vertices_visited: visited,
        co_minimal: settled
            .ties
            .iter()
            .map(|a| assignment_coupling(&f.input, &full(a), f.output_size))
            .collect(),
    }
}

fn group_sums(weights: &[BigUint], assignment: &[usize], m: usize) -> Vec<BigUint> {
    let mut g = vec![BigUint::zero(); m];
    for (w, &j) in weights.iter().zip(assignment) {
        g[j] += w;
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    No,
    /// Found a partition attaining an upper bound.
    Attained,
    Limit,
}

struct PartitionSearch<'a> {
    weights: &'a [BigUint],
    weights_f64: Vec<f64>,
    denom: &'a BigUint,
    groups: Vec<BigUint>,
    groups_f64: Vec<f64>,
    assignment: Vec<usize>,
    board: Leaderboard<Vec<usize>>,
    visited: usize,
    limit: usize,
    stop: Stop,
}

/// Slack used when comparing the `f64` bound with the incumbent.
const BOUND_SLACK: f64 = 1e-7;

impl PartitionSearch<'_> {
    /// Rows `t..` remain; `opened` groups are in use.
    fn descend(&mut self, t: usize, opened: usize) {
        if self.stop != Stop::No {
            return;
        }
        let m = self.groups.len();
        if t == self.weights.len() {
            self.leaf(opened);
            return;
        }
        let remaining: f64 = self.weights_f64[t..].iter().sum();
        let incumbent = -self.board.best_approx();
        if incumbent.is_finite() && water_fill_bound(&self.groups_f64, remaining) + BOUND_SLACK < incumbent {
            return;
        }
        let w = self.weights[t].clone();
        let wf = self.weights_f64[t];
        for j in 0..(opened + 1).min(m) {
            self.groups[j] += &w;
            self.groups_f64[j] += wf;
            self.assignment[t] = j;
            self.descend(t + 1, opened.max(j + 1));
            self.groups[j] -= &w;
            self.groups_f64[j] -= wf;
            if self.stop != Stop::No {
                return;
            }
        }
    }

    fn leaf(&mut self, opened: usize) {
        if self.visited >= self.limit {
            self.stop = Stop::Limit;
            return;
        }
        self.visited += 1;
        let h: f64 = self
            .groups_f64
            .iter()
            .filter(|&&g| g > 0.0)
            .map(|&g| -g * g.log2())
            .sum();
        let mut sig: Vec<BigUint> = self.groups.iter().filter(|g| !g.is_zero()).cloned().collect();
        sig.sort_unstable();
        self.board.push(-h, sig, self.assignment.clone());
        let m = BigUint::from(self.groups.len());
        let balanced = self.groups.iter().all(|g| g * &m == *self.denom);
        let all_separate = opened == self.weights.len();
        if balanced || all_separate {
            self.stop = Stop::Attained;
        }
    }
}

/// Largest entropy of any `q >= groups` with `sum q = 1`, given that
/// `remaining = 1 - sum(groups)` is still to be placed.
fn water_fill_bound(groups: &[f64], remaining: f64) -> f64 {
    let mut g = groups.to_vec();
    g.sort_by(f64::total_cmp);
    // Raise the lowest k levels to a common level.
    let mut level = 0.0;
    let mut filled = 0;
    let mut prefix = 0.0;
    for k in 0..g.len() {
        prefix += g[k];
        let next = g.get(k + 1).copied().unwrap_or(f64::INFINITY);
        let target = (prefix + remaining) / (k + 1) as f64;
        if target <= next {
            level = target;
            filled = k + 1;
            break;
        }
    }
    g.iter()
        .enumerate()
        .map(|(k, &x)| if k < filled { level } else { x })
        .filter(|&q| q > 0.0)
        .map(|q| -q * q.log2())
        .sum()
}
