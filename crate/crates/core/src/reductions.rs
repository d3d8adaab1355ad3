//! Reductions from Subset Sum and 3-Partition, with back-translation of
//! witnesses and certificate checking.
//!
//! Subset Sum `(d_1..d_n; s)` maps to `C(P, Q)` with `p_i = d_i / D`,
//! `Q = (s/D, 1 - s/D)` and `D = sum d_i`. A coupling with `H(X,Y) = H(P)`
//! sends each row to one column, and the rows sent to column `0` are a
//! subset summing to `s`.
//!
//! 3-Partition `(d_1..d_3m; k)` maps to `C(P, m)` with `p_i = d_i / (mk)`.
//! A channel with `I(X;Y) = log2 m` groups the inputs into `m` sets of mass
//! `1/m`; the bounds `k/4 < d_i < k/2` force every set to be a triple.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::channel::{decide_optimal_channel, ChannelFamily};
use crate::error::{Error, Result};
use crate::measures::{Coupling, Distribution, Rational};
use crate::minentropy::decide_entropy_min;
use crate::polytope::TransportationPolytope;

/// Positive weights `d_i` and a positive target `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    weights: Vec<u64>,
    target: u64,
}

impl SubsetSumInstance {
    /// Requires at least one weight, every weight `>= 1` and `s >= 1`.
    pub fn new(weights: Vec<u64>, target: u64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::MalformedInstance("no weights".into()));
        }
        if let Some(i) = weights.iter().position(|&d| d == 0) {
            return Err(Error::MalformedInstance(format!("weight {i} is zero")));
        }
        if target == 0 {
            return Err(Error::MalformedInstance("target must be positive".into()));
        }
        Ok(SubsetSumInstance { weights, target })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    /// `D = sum d_i`.
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Random instance with `n` weights drawn from `1..=max_weight` and a
    /// target drawn from `1..=D`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, max_weight: u64) -> Result<Self> {
        if n == 0 || max_weight == 0 {
            return Err(Error::InvalidArgument("need n >= 1 and max_weight >= 1".into()));
        }
        let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
        let total: u64 = weights.iter().sum();
        let target = rng.gen_range(1..=total);
        SubsetSumInstance::new(weights, target)
    }
}

/// Weights `d_1..d_3m` with bound `k`: `k/4 < d_j < k/2` and `sum d_j = mk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    weights: Vec<u64>,
    bound: u64,
}

impl ThreePartitionInstance {
    pub fn new(weights: Vec<u64>, bound: u64) -> Result<Self> {
        if weights.is_empty() || !weights.len().is_multiple_of(3) {
            return Err(Error::MalformedInstance(format!(
                "expected 3m weights, got {}",
                weights.len()
            )));
        }
        for (i, &d) in weights.iter().enumerate() {
            if !in_open_range(d, bound) {
                return Err(Error::MalformedInstance(format!(
                    "weight {i} = {d} outside ({bound}/4, {bound}/2)"
                )));
            }
        }
        let m = (weights.len() / 3) as u128;
        let total: u128 = weights.iter().map(|&d| d as u128).sum();
        if total != m * bound as u128 {
            return Err(Error::MalformedInstance(format!(
                "weights sum to {total}, expected {m} * {bound}"
            )));
        }
        Ok(ThreePartitionInstance { weights, bound })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Number of triples `m`.
    pub fn groups(&self) -> usize {
        self.weights.len() / 3
    }

    /// Random instance with `m` triples and bound `k`. With `planted` the
    /// weights are built from `m` triples summing to `k`, so the answer is
    /// yes; otherwise they only satisfy the instance constraints.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize, k: u64, planted: bool) -> Result<Self> {
        const ATTEMPTS: usize = 10_000;
        let lo = k / 4 + 1;
        let hi = (k - 1) / 2;
        if m == 0 || k < 3 || lo > hi {
            return Err(Error::InvalidArgument(format!("no weights fit ({k}/4, {k}/2)")));
        }
        let draw = |rng: &mut R, parts: usize, sum: u64| -> Option<Vec<u64>> {
            for _ in 0..ATTEMPTS {
                let mut v: Vec<u64> = (0..parts - 1).map(|_| rng.gen_range(lo..=hi)).collect();
                let used: u64 = v.iter().sum();
                if used < sum && in_open_range(sum - used, k) {
                    v.push(sum - used);
                    return Some(v);
                }
            }
            None
        };
        let mut weights = Vec::with_capacity(3 * m);
        if planted {
            for _ in 0..m {
                let t = draw(rng, 3, k)
                    .ok_or_else(|| Error::InvalidArgument(format!("no triple sums to {k} within bounds")))?;
                weights.extend(t);
            }
        } else {
            weights = draw(rng, 3 * m, m as u64 * k)
                .ok_or_else(|| Error::InvalidArgument(format!("could not sample weights for k = {k}")))?;
        }
        // Fisher-Yates so planted triples are not contiguous.
        for i in (1..weights.len()).rev() {
            let j = rng.gen_range(0..=i);
            weights.swap(i, j);
        }
        ThreePartitionInstance::new(weights, k)
    }
}

fn in_open_range(d: u64, k: u64) -> bool {
    let (d, k) = (d as u128, k as u128);
    4 * d > k && 2 * d < k
}

/// `C(P, Q)` with `P = d / D` and `Q = (s/D, 1 - s/D)`.
pub fn reduce_subset_sum(inst: &SubsetSumInstance) -> Result<TransportationPolytope> {
    let total = inst.total();
    if inst.target > total {
        return Err(Error::TargetExceedsTotal {
            target: inst.target.to_string(),
            total: total.to_string(),
        });
    }
    let p = Distribution::from_weights(inst.weights.iter().copied())?;
    let q = Distribution::from_weights([inst.target, total - inst.target])?;
    Ok(TransportationPolytope::new(p, q))
}

/// `C(P, m)` with `P = d / (mk)`.
pub fn reduce_three_partition(inst: &ThreePartitionInstance) -> ChannelFamily {
    let p = Distribution::from_weights(inst.weights.iter().copied()).expect("validated weights are positive");
    ChannelFamily::new(p, inst.groups()).expect("m >= 1")
}

/// Solves Subset Sum through the entropy-minimization decision. Returns the
/// lexicographically smallest subset (0-based, increasing) summing to `s`.
pub fn solve_subset_sum_via_entropy(inst: &SubsetSumInstance) -> Option<Vec<usize>> {
    let total = inst.total();
    if inst.target > total {
        return None;
    }
    if inst.target == total {
        return Some((0..inst.weights.len()).collect());
    }
    let poly = reduce_subset_sum(inst).ok()?;
    let w = decide_entropy_min(&poly).into_witness()?;
    Some((0..inst.weights.len()).filter(|&i| w.column_of(i) == Some(0)).collect())
}

/// Solves 3-Partition through the optimal-channel decision. Returns `m`
/// triples of 0-based indices, each summing to `k`, ordered by their
/// smallest element.
pub fn solve_three_partition_via_channel(inst: &ThreePartitionInstance) -> Option<Vec<Vec<usize>>> {
    let family = reduce_three_partition(inst);
    let w = decide_optimal_channel(&family).into_witness()?;
    Some(w.groups())
}

/// Property a [`Certificate`] claims for its coupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Row-deterministic member of `C(P, Q)`: `H(X,Y) = H(P)`.
    RowDeterministicIn,
    /// Row-deterministic member of `C(P, m)` with uniform outputs:
    /// `I(X;Y) = log2 m`.
    RowDeterministicUniformCols,
}

/// What a certificate is checked against.
#[derive(Clone, Copy, Debug)]
pub enum CertificateTarget<'a> {
    Polytope(&'a TransportationPolytope),
    Family(&'a ChannelFamily),
}

/// A candidate matrix together with the property it is claimed to have.
///
/// The matrix is kept raw so that malformed or perturbed candidates can be
/// represented and rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub matrix: Vec<Vec<Rational>>,
    pub claim: Claim,
}

impl Certificate {
    pub fn new(coupling: &Coupling, claim: Claim) -> Self {
        Certificate {
            matrix: coupling.to_rows(),
            claim,
        }
    }

    pub fn from_matrix(matrix: Vec<Vec<Rational>>, claim: Claim) -> Self {
        Certificate { matrix, claim }
    }

    /// The matrix as a coupling, if it is one.
    pub fn coupling(&self) -> Option<Coupling> {
        Coupling::from_rows(self.matrix.clone()).ok()
    }
}

type ColumnCheck<'a> = Box<dyn Fn(usize, &Rational) -> bool + 'a>;

/// Checks a certificate with exact rational arithmetic only: shape,
/// nonnegativity, marginals and at most one nonzero cell per row. Linear in
/// the number of cells, up to the cost of rational additions.
pub fn verify_certificate(c: &Certificate, target: CertificateTarget<'_>) -> bool {
    let (p, col_ok): (&Distribution, ColumnCheck) = match (c.claim, target) {
        (Claim::RowDeterministicIn, CertificateTarget::Polytope(poly)) => {
            let q = poly.col_marginal().probs();
            (poly.row_marginal(), Box::new(move |j, v| *v == q[j]))
        }
        (Claim::RowDeterministicUniformCols, CertificateTarget::Family(f)) => {
            let share = Rational::new(BigUint::one().into(), BigUint::from(f.output_size()).into());
            (f.input_marginal(), Box::new(move |_, v| *v == share))
        }
        _ => return false,
    };
    let cols = match target {
        CertificateTarget::Polytope(poly) => poly.shape().1,
        CertificateTarget::Family(f) => f.output_size(),
    };
    if c.matrix.len() != p.len() {
        return false;
    }
    let zero = Rational::zero();
    let mut sums = vec![Rational::zero(); cols];
    for (row, p_i) in c.matrix.iter().zip(p.probs()) {
        if row.len() != cols || row.iter().any(|x| *x < zero) {
            return false;
        }
        let mut nonzero = row.iter().enumerate().filter(|(_, x)| !x.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (None, None) if p_i.is_zero() => {}
            (Some((j, x)), None) if x == p_i => sums[j] += x,
            _ => return false,
        }
    }
    sums.iter().enumerate().all(|(j, v)| col_ok(j, v))
}
