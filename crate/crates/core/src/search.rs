//! Search machinery shared by the solvers.
//!
//! [`Leaderboard`] tracks near-optimal candidates with cheap `f64` scores and
//! settles the winner with certified intervals. [`find_grouping`] decides,
//! exactly, whether integer masses can be packed into bins with prescribed
//! sums.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::entropy::{Entropy, Precision};

/// Slack on `f64` scores. Candidates scoring worse than the best by more
/// than this are discarded without certified evaluation.
const APPROX_SLACK: f64 = 1e-7;

struct Entry<T> {
    approx: f64,
    signature: Vec<BigUint>,
    item: T,
}

/// Result of settling a [`Leaderboard`].
pub(crate) struct Settled<T> {
    pub best: T,
    pub value: Entropy,
    /// Candidates whose enclosures still overlap `best` at [`Precision::MAX`].
    pub ties: Vec<T>,
}

/// Candidate pool for a minimization. Candidates with equal `signature`
/// have exactly equal objective values; only the smallest item is kept.
pub(crate) struct Leaderboard<T> {
    best: f64,
    entries: Vec<Entry<T>>,
}

impl<T: Ord + Clone> Leaderboard<T> {
    pub fn new() -> Self {
        Leaderboard {
            best: f64::INFINITY,
            entries: Vec::new(),
        }
    }

    /// Current best `f64` score.
    pub fn best_approx(&self) -> f64 {
        self.best
    }

    pub fn push(&mut self, approx: f64, signature: Vec<BigUint>, item: T) {
        if approx > self.best + APPROX_SLACK {
            return;
        }
        if approx < self.best {
            self.best = approx;
            let cutoff = self.best + APPROX_SLACK;
            self.entries.retain(|e| e.approx <= cutoff);
        }
        if let Some(e) = self.entries.iter_mut().find(|e| e.signature == signature) {
            if item < e.item {
                e.item = item;
            }
            return;
        }
        self.entries.push(Entry {
            approx,
            signature,
            item,
        });
    }

    /// Certified minimizer. Overlapping enclosures are refined by precision
    /// escalation up to [`Precision::MAX`]; whatever still overlaps is a tie
    /// and the smallest item wins.
    pub fn settle<F>(self, precision: Precision, eval: F) -> Option<Settled<T>>
    where
        F: Fn(&T, Precision) -> Entropy,
    {
        let mut pool: Vec<T> = self.entries.into_iter().map(|e| e.item).collect();
        if pool.is_empty() {
            return None;
        }
        let mut prec = precision;
        loop {
            if pool.len() == 1 {
                break;
            }
            let values: Vec<Entropy> = pool.iter().map(|t| eval(t, prec)).collect();
            let leader = values
                .iter()
                .min_by(|a, b| a.upper_exact().cmp(&b.upper_exact()))
                .expect("nonempty")
                .clone();
            pool = pool
                .into_iter()
                .zip(&values)
                .filter(|(_, v)| !leader.definitely_lt(v))
                .map(|(t, _)| t)
                .collect();
            if pool.len() == 1 {
                break;
            }
            match prec.escalate() {
                Some(p) => prec = p,
                None => break,
            }
        }
        pool.sort();
        let best = pool.remove(0);
        let value = eval(&best, precision);
        Some(Settled {
            best,
            value,
            ties: pool,
        })
    }
}

/// Finds an assignment of every weight to a bin such that each bin's total
/// equals its capacity exactly. Weights must be positive.
///
/// Feasibility is decided first with weights in decreasing order, which
/// fails fast on infeasible inputs. A feasible input is then re-solved in
/// index order so the returned assignment is the lexicographically smallest
/// one (weight `0` gets the smallest bin it can, then weight `1`, ...).
pub(crate) fn find_grouping(weights: &[BigUint], caps: &[BigUint]) -> Option<Vec<usize>> {
    let total_w: BigUint = weights.iter().sum();
    let total_c: BigUint = caps.iter().sum();
    if total_w != total_c {
        return None;
    }
    let mut by_size: Vec<usize> = (0..weights.len()).collect();
    by_size.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    GroupSearch::new(weights, &by_size).run(caps)?;
    let identity: Vec<usize> = (0..weights.len()).collect();
    let found = GroupSearch::new(weights, &identity).run(caps);
    debug_assert!(found.is_some());
    found
}

struct GroupSearch<'a> {
    weights: &'a [BigUint],
    order: &'a [usize],
    suffix_min: Vec<BigUint>,
    failed: HashSet<(usize, Vec<BigUint>)>,
    assignment: Vec<usize>,
}

impl<'a> GroupSearch<'a> {
    fn new(weights: &'a [BigUint], order: &'a [usize]) -> Self {
        let mut suffix_min = vec![BigUint::default(); order.len() + 1];
        for t in (0..order.len()).rev() {
            let w = &weights[order[t]];
            suffix_min[t] = if t + 1 == order.len() {
                w.clone()
            } else {
                w.clone().min(suffix_min[t + 1].clone())
            };
        }
        GroupSearch {
            weights,
            order,
            suffix_min,
            failed: HashSet::new(),
            assignment: vec![usize::MAX; weights.len()],
        }
    }

    fn run(mut self, caps: &[BigUint]) -> Option<Vec<usize>> {
        let mut caps = caps.to_vec();
        self.place(0, &mut caps).then_some(self.assignment)
    }

    fn place(&mut self, t: usize, caps: &mut [BigUint]) -> bool {
        if t == self.order.len() {
            return true;
        }
        // An open bin smaller than every remaining weight can never be filled.
        let smallest = &self.suffix_min[t];
        if caps.iter().any(|c| *c != BigUint::default() && c < smallest) {
            return false;
        }
        let mut key = caps.to_vec();
        key.sort_unstable();
        let key = (t, key);
        if self.failed.contains(&key) {
            return false;
        }
        let row = self.order[t];
        let w = &self.weights[row];
        let mut tried: Vec<BigUint> = Vec::new();
        for j in 0..caps.len() {
            if caps[j] < *w || tried.contains(&caps[j]) {
                continue;
            }
            // Bins with equal remaining capacity are interchangeable.
            tried.push(caps[j].clone());
            caps[j] -= w;
            self.assignment[row] = j;
            if self.place(t + 1, caps) {
                return true;
            }
            caps[j] += w;
        }
        self.failed.insert(key);
        false
    }
}
