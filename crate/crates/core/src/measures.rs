//! Exact probability types and the Shannon information measures.
//!
//! Probabilities are arbitrary-precision rationals, so marginal constraints
//! and determinism checks are exact. Information measures return certified
//! [`Entropy`] enclosures in bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::entropy::{self, Entropy, Precision};
use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Writes `counts[i] / denom` for rationals sharing the smallest common
/// denominator.
pub(crate) fn to_counts(values: &[Rational]) -> (Vec<BigUint>, BigUint) {
    let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let counts = values
        .iter()
        .map(|v| (v.numer() * (&denom / v.denom())).to_biguint().expect("nonnegative"))
        .collect();
    (counts, denom.to_biguint().expect("positive"))
}

pub(crate) fn from_counts(counts: &[BigUint], denom: &BigUint) -> Vec<Rational> {
    let d = BigInt::from(denom.clone());
    counts
        .iter()
        .map(|k| Rational::new(BigInt::from(k.clone()), d.clone()))
        .collect()
}

fn check_probabilities(values: &[Rational]) -> Result<()> {
    if let Some((index, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeProbability {
            index,
            value: v.to_string(),
        });
    }
    let sum: Rational = values.iter().sum();
    if !sum.is_one() {
        return Err(Error::NotNormalized { sum: sum.to_string() });
    }
    Ok(())
}

/// A finite probability vector `P = (p_1, ..., p_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        check_probabilities(&probs)?;
        Ok(Distribution { probs })
    }

    /// Normalizes nonnegative integer weights, `p_i = w_i / sum(w)`.
    pub fn from_weights<I, T>(weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let w: Vec<BigUint> = weights.into_iter().map(Into::into).collect();
        if w.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let total: BigUint = w.iter().sum();
        if total.is_zero() {
            return Err(Error::NotNormalized { sum: "0".into() });
        }
        Ok(Distribution {
            probs: from_counts(&w, &total),
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_weights(vec![1u32; n])
    }

    /// Unit mass at `index` in an alphabet of size `n`.
    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidArgument(format!(
                "point mass index {index} outside alphabet of size {n}"
            )));
        }
        Self::from_weights((0..n).map(|i| u32::from(i == index)))
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of strictly positive entries.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|p| p.is_positive()).count()
    }

    pub fn is_point_mass(&self) -> bool {
        self.support_size() == 1
    }

    pub(crate) fn counts(&self) -> (Vec<BigUint>, BigUint) {
        to_counts(&self.probs)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A joint distribution `S = (s_ij)` written as an `n x m` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coupling {
    rows: usize,
    cols: usize,
    cells: Vec<Rational>,
}

impl Coupling {
    /// Row-major cells; every cell nonnegative and the total exactly 1.
    pub fn new(rows: usize, cols: usize, cells: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{rows}x{cols} nonempty"),
                actual: format!("{} cells", cells.len()),
            });
        }
        check_probabilities(&cells)?;
        Ok(Coupling { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::ShapeMismatch {
                expected: format!("rows of length {m}"),
                actual: format!("row of length {}", bad.len()),
            });
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    /// Nonnegative integer matrix divided by its total.
    pub fn from_integer_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        let flat: Vec<BigUint> = rows.iter().flatten().map(|&k| BigUint::from(k)).collect();
        let total: BigUint = flat.iter().sum();
        if total.is_zero() {
            return Err(Error::NotNormalized { sum: "0".into() });
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch {
                expected: format!("rows of length {m}"),
                actual: "ragged rows".into(),
            });
        }
        Self::new(rows.len(), m, from_counts(&flat, &total))
    }

    pub(crate) fn from_counts(rows: usize, cols: usize, counts: &[BigUint], denom: &BigUint) -> Self {
        debug_assert_eq!(counts.len(), rows * cols);
        Coupling {
            rows,
            cols,
            cells: from_counts(counts, denom),
        }
    }

    /// The independent coupling `(p_i q_j)`.
    pub fn product(p: &Distribution, q: &Distribution) -> Self {
        let cells = p
            .probs()
            .iter()
            .flat_map(|a| q.probs().iter().map(move |b| a * b))
            .collect();
        Coupling {
            rows: p.len(),
            cols: q.len(),
            cells,
        }
    }

    /// `diag(P)`: mass `p_i` at `(i, i)`.
    pub fn diagonal(p: &Distribution) -> Self {
        let n = p.len();
        let mut cells = vec![Rational::zero(); n * n];
        for (i, v) in p.probs().iter().enumerate() {
            cells[i * n + i] = v.clone();
        }
        Coupling {
            rows: n,
            cols: n,
            cells,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, i: usize, j: usize) -> &Rational {
        &self.cells[i * self.cols + j]
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[Rational] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.cells.chunks(self.cols).map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Coupling {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.cell(i, j).clone());
            }
        }
        Coupling {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.cells.chunks(self.cols).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.cell(i, j)).sum())
            .collect()
    }

    pub fn row_marginal(&self) -> Distribution {
        Distribution { probs: self.row_sums() }
    }

    pub fn col_marginal(&self) -> Distribution {
        Distribution { probs: self.col_sums() }
    }

    /// At most one nonzero cell in every row (`Y` is a function of `X`).
    pub fn is_row_deterministic(&self) -> bool {
        self.cells
            .chunks(self.cols)
            .all(|r| r.iter().filter(|v| !v.is_zero()).count() <= 1)
    }

    /// At most one nonzero cell in every column (`X` is a function of `Y`).
    pub fn is_col_deterministic(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).filter(|&i| !self.cell(i, j).is_zero()).count() <= 1)
    }

    pub fn support_size(&self) -> usize {
        self.cells.iter().filter(|v| !v.is_zero()).count()
    }

    /// Canonical order used to break ties between optimizers: cells are
    /// compared in row-major order and, at the first difference, the
    /// coupling with more mass there comes first. This prefers mass toward
    /// the top-left, so the diagonal precedes the anti-diagonal and a
    /// row-deterministic coupling ranks by its row-to-column assignment.
    /// Couplings of different shapes compare by shape first.
    pub fn canonical_cmp(&self, other: &Coupling) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| other.cells.cmp(&self.cells))
    }

    pub(crate) fn counts(&self) -> (Vec<BigUint>, BigUint) {
        to_counts(&self.cells)
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.cells.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn sums_of_counts(counts: &[BigUint], rows: usize, cols: usize) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut r = vec![BigUint::zero(); rows];
    let mut c = vec![BigUint::zero(); cols];
    for (idx, k) in counts.iter().enumerate() {
        r[idx / cols] += k;
        c[idx % cols] += k;
    }
    (r, c)
}

/// `H(P) = -sum p_i log2 p_i`, with `0 log 0 = 0`.
pub fn entropy(p: &Distribution) -> Entropy {
    entropy_with(p, Precision::DEFAULT)
}

pub fn entropy_with(p: &Distribution, precision: Precision) -> Entropy {
    let (counts, denom) = p.counts();
    entropy::entropy_of_counts(&counts, &denom, precision)
}

/// `H(X,Y) = -sum s_ij log2 s_ij` over the nonzero cells.
pub fn joint_entropy(s: &Coupling) -> Entropy {
    joint_entropy_with(s, Precision::DEFAULT)
}

pub fn joint_entropy_with(s: &Coupling, precision: Precision) -> Entropy {
    let (counts, denom) = s.counts();
    entropy::entropy_of_counts(&counts, &denom, precision)
}

/// `H(X|Y) = -sum s_ij log2 (s_ij / q_j)`.
pub fn conditional_entropy_x_given_y(s: &Coupling) -> Entropy {
    conditional_entropy_x_given_y_with(s, Precision::DEFAULT)
}

pub fn conditional_entropy_x_given_y_with(s: &Coupling, precision: Precision) -> Entropy {
    let (counts, denom) = s.counts();
    let (_, col) = sums_of_counts(&counts, s.rows, s.cols);
    entropy::cond_entropy_counts(&counts, s.cols, &col, &denom, precision)
}

/// `H(Y|X) = -sum s_ij log2 (s_ij / p_i)`.
pub fn conditional_entropy_y_given_x(s: &Coupling) -> Entropy {
    conditional_entropy_y_given_x_with(s, Precision::DEFAULT)
}

pub fn conditional_entropy_y_given_x_with(s: &Coupling, precision: Precision) -> Entropy {
    conditional_entropy_x_given_y_with(&s.transpose(), precision)
}

/// `I(X;Y) = sum s_ij log2 (s_ij / (p_i q_j))`.
pub fn mutual_information(s: &Coupling) -> Entropy {
    mutual_information_with(s, Precision::DEFAULT)
}

pub fn mutual_information_with(s: &Coupling, precision: Precision) -> Entropy {
    let (counts, denom) = s.counts();
    let (row, col) = sums_of_counts(&counts, s.rows, s.cols);
    entropy::mutual_information_counts(&counts, s.cols, &row, &col, &denom, precision)
}

pub fn row_marginal(s: &Coupling) -> Distribution {
    s.row_marginal()
}

pub fn col_marginal(s: &Coupling) -> Distribution {
    s.col_marginal()
}

pub fn is_row_deterministic(s: &Coupling) -> bool {
    s.is_row_deterministic()
}

pub fn is_col_deterministic(s: &Coupling) -> bool {
    s.is_col_deterministic()
}
