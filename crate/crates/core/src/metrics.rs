//! Variation of information and its optimized versions over couplings.
//!
//! For a coupling `S`, `Delta(S) = H(X,Y) - I(X;Y) = H(X|Y) + H(Y|X)` and
//! `Delta'(S) = 1 - I(X;Y) / H(X,Y)`. Minimizing them over `C(P, Q)` gives
//! pseudometrics on distributions.
//!
//! With both marginals fixed, `I = H(P) + H(Q) - H(X,Y)`, so
//! `Delta = 2 H(X,Y) - H(P) - H(Q)` and `Delta' = 2 - (H(P) + H(Q)) / H(X,Y)`.
//! Both are increasing in `H(X,Y)`, and both infima are attained at the
//! coupling of minimum joint entropy.

use num_traits::Zero;

use crate::entropy::{Entropy, Precision};
use crate::measures::{
    conditional_entropy_x_given_y_with, conditional_entropy_y_given_x_with, entropy_with, joint_entropy_with, Coupling,
    Distribution, Rational,
};
use crate::minentropy::{decide_entropy_min, min_joint_entropy_exact, SolverOptions};
use crate::polytope::TransportationPolytope;

/// Value of an optimized metric and the coupling attaining it.
#[derive(Clone, Debug)]
pub struct MetricResult {
    pub value: Entropy,
    pub witness: Coupling,
    /// `true` when the inner minimization was proved optimal.
    pub exact: bool,
}

/// `Delta(S) = H(X|Y) + H(Y|X)` in bits.
pub fn vi(s: &Coupling) -> Entropy {
    vi_with(s, Precision::DEFAULT)
}

pub fn vi_with(s: &Coupling, precision: Precision) -> Entropy {
    conditional_entropy_x_given_y_with(s, precision)
        .add(&conditional_entropy_y_given_x_with(s, precision))
        .clamp_below(0)
}

/// `Delta'(S) = 1 - I(X;Y) / H(X,Y)`, taken as `0` when `H(X,Y) = 0`.
pub fn vi_normalized(s: &Coupling) -> Entropy {
    vi_normalized_with(s, Precision::DEFAULT)
}

pub fn vi_normalized_with(s: &Coupling, precision: Precision) -> Entropy {
    if s.support_size() <= 1 {
        return Entropy::zero();
    }
    // Delta' = Delta / H(X,Y). H(X,Y) > 0 here, so refining eventually
    // separates it from zero.
    let mut prec = precision;
    loop {
        let ratio = vi_with(s, prec).div(&joint_entropy_with(s, prec));
        match (ratio, prec.escalate()) {
            (Some(r), _) => return r.clamp_below(0).clamp_above(1),
            (None, Some(next)) => prec = next,
            (None, None) => return unit_interval(),
        }
    }
}

/// `[0, 1]`, the trivial enclosure of a normalized value.
fn unit_interval() -> Entropy {
    Entropy::zero().hull(&Entropy::from_integer(1))
}

/// `min over C(P, Q)` of `Delta`, computed as `2 H_min - H(P) - H(Q)`.
pub fn vi_distance(p: &Distribution, q: &Distribution, opts: SolverOptions) -> MetricResult {
    let poly = TransportationPolytope::new(p.clone(), q.clone());
    let r = min_joint_entropy_exact(&poly, opts);
    let sum = entropy_with(p, opts.precision).add(&entropy_with(q, opts.precision));
    MetricResult {
        value: r.value.scale_by(2).sub(&sum).clamp_below(0),
        witness: r.best,
        exact: r.optimal,
    }
}

/// `min over C(P, Q)` of `Delta'`, computed as `2 - (H(P) + H(Q)) / H_min`,
/// and `0` when both distributions are point masses.
pub fn vi_distance_normalized(p: &Distribution, q: &Distribution, opts: SolverOptions) -> MetricResult {
    let poly = TransportationPolytope::new(p.clone(), q.clone());
    let r = min_joint_entropy_exact(&poly, opts);
    let value = if p.is_point_mass() && q.is_point_mass() {
        Entropy::zero()
    } else {
        // H_min >= max{H(P), H(Q)} > 0.
        let mut prec = opts.precision;
        loop {
            let sum = entropy_with(p, prec).add(&entropy_with(q, prec));
            let h_min = joint_entropy_with(&r.best, prec);
            match (sum.div(&h_min), prec.escalate()) {
                (Some(x), _) => break Entropy::from_integer(2).sub(&x).clamp_below(0).clamp_above(1),
                (None, Some(next)) => prec = next,
                (None, None) => break unit_interval(),
            }
        }
    };
    MetricResult {
        value,
        witness: r.best,
        exact: r.optimal,
    }
}

/// Does `min Delta over C(P, Q)` equal `H(P) - H(Q)`?
///
/// Since `H(X,Y) >= max{H(P), H(Q)}`, equality holds exactly when some
/// coupling has `H(X,Y) = H(P)`, i.e. when a row-deterministic coupling
/// exists. That is decided combinatorially. When `H(Q) > H(P)` no such
/// coupling exists and the answer is `false`.
pub fn decide_vi_equals_entropy_gap(p: &Distribution, q: &Distribution) -> bool {
    decide_entropy_min(&TransportationPolytope::new(p.clone(), q.clone())).is_witness()
}

/// `d_V(P, Q) = 1 - sum min(p_i, q_i)`, the least off-diagonal mass of any
/// coupling. The shorter vector is padded with zeros.
pub fn total_variation(p: &Distribution, q: &Distribution) -> Rational {
    let n = p.len().max(q.len());
    let zero = Rational::zero();
    let at = |d: &Distribution, i: usize| d.probs().get(i).cloned().unwrap_or_else(|| zero.clone());
    let overlap: Rational = (0..n).map(|i| at(p, i).min(at(q, i))).sum();
    Rational::from_integer(1.into()) - overlap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{mutual_information, ratio};

    fn d(w: &[u64]) -> Distribution {
        Distribution::from_weights(w.iter().copied()).unwrap()
    }

    #[test]
    fn vi_on_simple_couplings() {
        let p = d(&[1, 2, 3]);
        assert!(vi(&Coupling::diagonal(&p)).contains(&ratio(0, 1)));
        let u = d(&[1, 1]);
        assert!(vi(&Coupling::product(&u, &u)).contains(&ratio(2, 1)));
    }

    #[test]
    fn vi_formulas_agree() {
        let s = Coupling::from_integer_rows(&[vec![1, 2, 0], vec![0, 3, 1], vec![2, 0, 4]]).unwrap();
        let other = crate::measures::joint_entropy(&s).sub(&mutual_information(&s));
        assert!(vi(&s).overlaps(&other));
    }

    #[test]
    fn normalized_vi_conventions() {
        let one = Coupling::from_integer_rows(&[vec![1]]).unwrap();
        assert!(vi_normalized(&one).contains(&ratio(0, 1)));
        let u = d(&[1, 1]);
        assert!(vi_normalized(&Coupling::product(&u, &u)).contains(&ratio(1, 1)));
        assert!(vi_normalized(&Coupling::diagonal(&u)).contains(&ratio(0, 1)));
    }

    #[test]
    fn distance_examples() {
        let opts = SolverOptions::default();
        let p = d(&[1, 3, 5]);
        assert!(vi_distance(&p, &p, opts).value.contains(&ratio(0, 1)));
        let half = d(&[1, 1]);
        let point = d(&[1]);
        let r = vi_distance(&half, &point, opts);
        assert!(r.value.contains(&ratio(1, 1)));
        assert!(r.exact);
        assert!(vi_distance_normalized(&half, &point, opts).value.contains(&ratio(1, 1)));
        assert!(vi_distance_normalized(&point, &d(&[0, 1]), opts)
            .value
            .contains(&ratio(0, 1)));
        assert!(vi_distance_normalized(&p, &p, opts).value.contains(&ratio(0, 1)));
    }

    #[test]
    fn gap_decision() {
        assert!(decide_vi_equals_entropy_gap(&d(&[2, 1, 1]), &d(&[1, 1])));
        assert!(!decide_vi_equals_entropy_gap(&d(&[1, 1, 1]), &d(&[1, 1])));
        assert!(!decide_vi_equals_entropy_gap(&d(&[1, 1]), &d(&[2, 1, 1])));
        let p = d(&[1, 4, 2]);
        assert!(decide_vi_equals_entropy_gap(&p, &p));
    }

    #[test]
    fn total_variation_examples() {
        let p = d(&[1, 3]);
        assert_eq!(total_variation(&p, &p), ratio(0, 1));
        assert_eq!(total_variation(&d(&[1, 0]), &d(&[0, 1])), ratio(1, 1));
        assert_eq!(total_variation(&d(&[1, 1]), &d(&[3, 1])), ratio(1, 4));
        assert_eq!(total_variation(&d(&[1]), &d(&[1, 1])), ratio(1, 2));
    }
}
