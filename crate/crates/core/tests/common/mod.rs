//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the solvers: logarithms come from Newton's
//! method on a Taylor-series exponential, vertices from brute force over
//! spanning trees, decisions from exhaustive enumeration.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use transport_entropy::{Coupling, Distribution, Entropy, Rational};

/// Fixed-point bits of the reference arithmetic (about 120 decimal digits).
pub const BITS: u32 = 400;

/// Tolerance for comparing solver values with the reference, in bits.
pub const TOL: f64 = 1e-9;

fn one() -> BigInt {
    BigInt::one() << BITS
}

fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

/// `e^y` for `0 <= y < 1` by Taylor series.
fn exp_fixed(y: &BigInt) -> BigInt {
    let mut sum = one();
    let mut term = one();
    let mut k = 1u32;
    loop {
        term = mul(&term, y) / k;
        if term.abs() <= BigInt::one() {
            return sum;
        }
        sum += &term;
        k += 1;
    }
}

/// `ln x` for `1 <= x < 2` (fixed point) by Newton's method on `e^y = x`.
fn ln_fixed(x: &BigInt) -> BigInt {
    let xf = x.to_f64().unwrap() / 2f64.powi(BITS as i32);
    let mut y = BigInt::from((xf.ln() * 2f64.powi(52)) as i64) << (BITS - 52);
    for _ in 0..12 {
        // y <- y + x e^{-y} - 1
        let e = exp_fixed(&y);
        let step = div(x, &e) - one();
        if step.abs() <= BigInt::from(4) {
            break;
        }
        y += step;
    }
    y
}

thread_local! {
    // ln 2 = ln(3/2) + ln(4/3)
    static LN2: BigInt = ln_fixed(&((BigInt::from(3) << BITS) / 2)) + ln_fixed(&((BigInt::from(4) << BITS) / 3));
    static LOG_CACHE: RefCell<HashMap<BigUint, BigInt>> = RefCell::new(HashMap::new());
}

/// `log2 n` as a fixed-point number with [`BITS`] fractional bits.
pub fn log2_ref(n: &BigUint) -> BigInt {
    assert!(!n.is_zero());
    if let Some(v) = LOG_CACHE.with(|c| c.borrow().get(n).cloned()) {
        return v;
    }
    let e = n.bits() - 1;
    // n = 2^e * f with f in [1, 2)
    let f = (BigInt::from(n.clone()) << BITS) >> e;
    let v = (BigInt::from(e) << BITS) + LN2.with(|l2| div(&ln_fixed(&f), l2));
    LOG_CACHE.with(|c| c.borrow_mut().insert(n.clone(), v.clone()));
    v
}

/// Reference value converted to `f64`.
pub fn fixed_to_f64(v: &BigInt) -> f64 {
    Rational::new(v.clone(), one()).to_f64().unwrap()
}

pub fn fixed_to_rational(v: &BigInt) -> Rational {
    Rational::new(v.clone(), one())
}

/// Common denominator and integer numerators of a list of rationals.
pub fn to_counts(values: &[Rational]) -> (Vec<BigUint>, BigUint) {
    let mut d = BigInt::one();
    for v in values {
        d = num_integer::lcm(d, v.denom().clone());
    }
    let counts = values
        .iter()
        .map(|v| (v.numer() * (&d / v.denom())).to_biguint().expect("nonnegative"))
        .collect();
    (counts, d.to_biguint().unwrap())
}

/// `H = log2 D - sum (k/D) log2 k` in fixed point.
pub fn entropy_counts_ref(counts: &[BigUint], d: &BigUint) -> BigInt {
    let mut acc = BigInt::zero();
    for k in counts.iter().filter(|k| !k.is_zero()) {
        acc += BigInt::from(k.clone()) * log2_ref(k);
    }
    log2_ref(d) - acc / BigInt::from(d.clone())
}

pub fn entropy_ref(values: &[Rational]) -> BigInt {
    let (c, d) = to_counts(values);
    entropy_counts_ref(&c, &d)
}

pub fn joint_entropy_ref(s: &Coupling) -> BigInt {
    entropy_ref(s.cells())
}

pub fn mutual_information_ref(s: &Coupling) -> BigInt {
    entropy_ref(&s.row_sums()) + entropy_ref(&s.col_sums()) - joint_entropy_ref(s)
}

/// `true` when the enclosure contains the reference value and its midpoint
/// is within [`TOL`] of it.
pub fn agrees(e: &Entropy, reference: &BigInt) -> bool {
    let r = fixed_to_rational(reference);
    e.contains(&r) && (e.value() - fixed_to_f64(reference)).abs() <= TOL
}

pub fn dist(w: &[u64]) -> Distribution {
    Distribution::from_weights(w.iter().copied()).unwrap()
}

/// All vertices of `C(P, Q)` as integer count matrices over the common
/// denominator, by solving every spanning-tree basis. Sorted, distinct.
pub fn vertices_ref(p: &[Rational], q: &[Rational]) -> (Vec<Vec<BigUint>>, BigUint) {
    let mut all = p.to_vec();
    all.extend_from_slice(q);
    let (counts, d) = to_counts(&all);
    let (a, b) = counts.split_at(p.len());
    let (n, m) = (p.len(), q.len());
    let k = n + m - 1;
    let mut found = BTreeSet::new();
    let cells = n * m;
    let mut chosen = Vec::with_capacity(k);
    subsets(cells, k, 0, &mut chosen, &mut |basis| {
        if let Some(x) = solve_tree(n, m, basis, a, b) {
            found.insert(x);
        }
    });
    (found.into_iter().collect(), d)
}

fn subsets(total: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for c in start..total {
        if total - c < k - chosen.len() {
            break;
        }
        chosen.push(c);
        subsets(total, k, c + 1, chosen, f);
        chosen.pop();
    }
}

/// Solves the basis by peeling leaves; `None` unless it is a spanning tree
/// with a nonnegative solution.
fn solve_tree(n: usize, m: usize, basis: &[usize], a: &[BigUint], b: &[BigUint]) -> Option<Vec<BigUint>> {
    let nodes = n + m;
    let mut rest: Vec<BigInt> = a.iter().chain(b).map(|x| BigInt::from(x.clone())).collect();
    let mut deg = vec![0usize; nodes];
    let edges: Vec<(usize, usize)> = basis.iter().map(|&c| (c / m, n + c % m)).collect();
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut used = vec![false; edges.len()];
    let mut value = vec![BigInt::zero(); edges.len()];
    for _ in 0..edges.len() {
        let (e, leaf) = (0..edges.len()).filter(|&e| !used[e]).find_map(|e| {
            let (u, v) = edges[e];
            if deg[u] == 1 {
                Some((e, u))
            } else if deg[v] == 1 {
                Some((e, v))
            } else {
                None
            }
        })?; // a cycle leaves no leaf
        let (u, v) = edges[e];
        let other = if leaf == u { v } else { u };
        let x = rest[leaf].clone();
        if x.is_negative() {
            return None;
        }
        rest[leaf] -= &x;
        rest[other] -= &x;
        deg[u] -= 1;
        deg[v] -= 1;
        used[e] = true;
        value[e] = x;
    }
    if rest.iter().any(|r| !r.is_zero()) {
        return None;
    }
    let mut out = vec![BigUint::zero(); n * m];
    for (e, &c) in basis.iter().enumerate() {
        out[c] = value[e].to_biguint()?;
    }
    Some(out)
}

pub fn coupling_from_counts(n: usize, m: usize, counts: &[BigUint], d: &BigUint) -> Coupling {
    let cells = counts
        .iter()
        .map(|k| Rational::new(BigInt::from(k.clone()), BigInt::from(d.clone())))
        .collect();
    Coupling::new(n, m, cells).unwrap()
}

/// Minimum joint entropy over all vertices, the canonical minimizer (most
/// top-left mass among exact ties) and the number of vertices.
pub fn min_entropy_ref(p: &Distribution, q: &Distribution) -> (BigInt, Coupling, usize) {
    let (verts, d) = vertices_ref(p.probs(), q.probs());
    let mut best: Option<(BigInt, &Vec<BigUint>)> = None;
    for v in &verts {
        let h = entropy_counts_ref(v, &d);
        best = match best {
            None => Some((h, v)),
            Some((bh, bv)) => {
                let diff = &h - &bh;
                // Values closer than 2^-300 count as equal.
                let tiny = BigInt::one() << (BITS - 300);
                if diff < -tiny.clone() || (diff.abs() <= tiny && v > bv) {
                    Some((h, v))
                } else {
                    Some((bh, bv))
                }
            }
        };
    }
    let (h, v) = best.unwrap();
    (h, coupling_from_counts(p.len(), q.len(), v, &d), verts.len())
}

/// Every assignment of `n` items to `m` bins, in lexicographic order.
pub fn for_each_assignment(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    let mut a = vec![0usize; n];
    loop {
        f(&a);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Lexicographically smallest assignment of rows (weights) to columns whose
/// column sums equal `caps`; zero weights are left out as `None`.
pub fn grouping_ref(weights: &[BigUint], caps: &[BigUint]) -> Option<Vec<Option<usize>>> {
    let idx: Vec<usize> = (0..weights.len()).filter(|&i| !weights[i].is_zero()).collect();
    let mut found = None;
    for_each_assignment(idx.len(), caps.len(), |a| {
        if found.is_some() {
            return;
        }
        let mut sums = vec![BigUint::zero(); caps.len()];
        for (t, &j) in a.iter().enumerate() {
            sums[j] += &weights[idx[t]];
        }
        if sums == caps {
            let mut out = vec![None; weights.len()];
            for (t, &j) in a.iter().enumerate() {
                out[idx[t]] = Some(j);
            }
            found = Some(out);
        }
    });
    found
}

/// Does a row-deterministic coupling exist in `C(P, Q)`? Returns the
/// lexicographically smallest assignment.
pub fn deterministic_ref(p: &Distribution, q: &Distribution) -> Option<Vec<Option<usize>>> {
    let mut all = p.probs().to_vec();
    all.extend_from_slice(q.probs());
    let (c, _) = to_counts(&all);
    let (a, b) = c.split_at(p.len());
    grouping_ref(a, b)
}

/// Lexicographically smallest subset (sorted index set) summing to `s`.
pub fn subset_sum_ref(d: &[u64], s: u64) -> Option<Vec<usize>> {
    let n = d.len();
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if set.iter().map(|&i| d[i]).sum::<u64>() == s && best.as_ref().is_none_or(|b| set < *b) {
            best = Some(set);
        }
    }
    best
}

/// Maximum `I(X;Y)` over row-deterministic couplings in `C(P, m)`.
pub fn max_information_ref(p: &Distribution, m: usize) -> BigInt {
    let (c, d) = to_counts(p.probs());
    let mut best: Option<BigInt> = None;
    for_each_assignment(c.len(), m, |a| {
        let mut g = vec![BigUint::zero(); m];
        for (k, &j) in c.iter().zip(a) {
            g[j] += k;
        }
        let h = entropy_counts_ref(&g, &d);
        if best.as_ref().is_none_or(|b| h > *b) {
            best = Some(h);
        }
    });
    best.unwrap()
}

/// Random distribution of length `n` with integer weights in `0..=max`,
/// at least one of them positive.
pub fn random_dist<R: Rng>(rng: &mut R, n: usize, max: u64) -> Distribution {
    loop {
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if w.iter().any(|&x| x > 0) {
            return dist(&w);
        }
    }
}

/// Random point of `C(P, Q)`: a random convex combination of vertices.
pub fn random_coupling<R: Rng>(rng: &mut R, p: &Distribution, q: &Distribution) -> Coupling {
    let (verts, d) = vertices_ref(p.probs(), q.probs());
    let mut w: Vec<u64> = verts.iter().map(|_| rng.gen_range(0..=5)).collect();
    if w.iter().all(|&x| x == 0) {
        w[0] = 1;
    }
    let total = BigInt::from(d.clone()) * w.iter().sum::<u64>();
    let mut cells = vec![Rational::zero(); p.len() * q.len()];
    for (v, &wt) in verts.iter().zip(&w) {
        for (c, k) in cells.iter_mut().zip(v) {
            *c += Rational::new(BigInt::from(k.clone()) * wt, total.clone());
        }
    }
    Coupling::new(p.len(), q.len(), cells).unwrap()
}

/// Shorthand for `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
