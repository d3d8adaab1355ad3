//! Certified entropy values.
//!
//! Entropies of rational distributions are irrational in general, so every
//! value is carried as a closed interval `[lo, hi] * 2^-scale` with integer
//! endpoints. Logarithms are evaluated in binary fixed point with an explicit
//! bound on the accumulated truncation error; the interval is widened by that
//! bound, so the true value always lies inside.
//!
//! All logarithms are base 2 (results are in bits).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Target interval width, expressed as the exponent `b` in `2^-b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Width used when nothing else is requested: `2^-40`.
    pub const DEFAULT: Precision = Precision(40);
    /// Ceiling for tie-breaking escalation: `2^-200`.
    pub const MAX: Precision = Precision(200);

    pub fn bits(bits: u32) -> Self {
        Precision(bits.clamp(1, 4096))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Next step of precision escalation, capped at [`Precision::MAX`].
    pub fn escalate(self) -> Option<Precision> {
        if self >= Precision::MAX {
            None
        } else {
            Some(Precision((self.0 * 2).min(Precision::MAX.0)))
        }
    }

    // Enough guard bits that the worst-case accumulated error (a few dozen
    // ulps) stays far below the requested width.
    fn scale(self) -> u32 {
        self.0 + 8
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

/// An information quantity in bits with a certified enclosure.
///
/// `lower() <= value() <= upper()` and the true (real) quantity lies in
/// `[lower_exact(), upper_exact()]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entropy {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

impl Entropy {
    pub(crate) fn from_fixed(center: BigInt, err_ulps: u64, scale: u32) -> Self {
        let err = BigInt::from(err_ulps);
        Entropy {
            lo: &center - &err,
            hi: center + err,
            scale,
        }
    }

    /// The exact value `0`.
    pub fn zero() -> Self {
        Entropy {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            scale: 0,
        }
    }

    /// An exactly representable integer value.
    pub fn from_integer(v: i64) -> Self {
        Entropy {
            lo: BigInt::from(v),
            hi: BigInt::from(v),
            scale: 0,
        }
    }

    pub fn lower_exact(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.scale)
    }

    pub fn upper_exact(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.scale)
    }

    /// Lower end rounded toward `-inf` as `f64`.
    pub fn lower(&self) -> f64 {
        let v = fixed_to_f64(&self.lo, self.scale);
        if BigRational::from_float(v).is_some_and(|r| r > self.lower_exact()) {
            v.next_down()
        } else {
            v
        }
    }

    /// Upper end rounded toward `+inf` as `f64`.
    pub fn upper(&self) -> f64 {
        let v = fixed_to_f64(&self.hi, self.scale);
        if BigRational::from_float(v).is_some_and(|r| r < self.upper_exact()) {
            v.next_up()
        } else {
            v
        }
    }

    /// Midpoint of the enclosure.
    pub fn value(&self) -> f64 {
        fixed_to_f64(&(&self.lo + &self.hi), self.scale + 1)
    }

    /// Width `upper - lower` as an exact rational.
    pub fn width_exact(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.scale)
    }

    pub fn width(&self) -> f64 {
        fixed_to_f64(&(&self.hi - &self.lo), self.scale)
    }

    /// `true` if `x` lies in the enclosure.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower_exact() <= x && x <= &self.upper_exact()
    }

    /// `true` if the two enclosures share at least one point.
    pub fn overlaps(&self, other: &Entropy) -> bool {
        let (a, b, _) = align(self, other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    /// `true` if every point of `self` is strictly below every point of `other`.
    pub fn definitely_lt(&self, other: &Entropy) -> bool {
        let (a, b, _) = align(self, other);
        a.hi < b.lo
    }

    /// `true` if every point of `self` is strictly above every point of `other`.
    pub fn definitely_gt(&self, other: &Entropy) -> bool {
        other.definitely_lt(self)
    }

    pub fn add(&self, other: &Entropy) -> Entropy {
        let (a, b, scale) = align(self, other);
        Entropy {
            lo: a.lo + b.lo,
            hi: a.hi + b.hi,
            scale,
        }
    }

    pub fn sub(&self, other: &Entropy) -> Entropy {
        let (a, b, scale) = align(self, other);
        Entropy {
            lo: a.lo - b.hi,
            hi: a.hi - b.lo,
            scale,
        }
    }

    /// Multiplies by a nonnegative integer.
    pub fn scale_by(&self, k: u64) -> Entropy {
        Entropy {
            lo: &self.lo * BigInt::from(k),
            hi: &self.hi * BigInt::from(k),
            scale: self.scale,
        }
    }

    /// Enclosure of the pointwise minimum.
    pub fn min(&self, other: &Entropy) -> Entropy {
        let (a, b, scale) = align(self, other);
        Entropy {
            lo: a.lo.min(b.lo),
            hi: a.hi.min(b.hi),
            scale,
        }
    }

    /// Smallest enclosure containing both.
    pub fn hull(&self, other: &Entropy) -> Entropy {
        let (a, b, scale) = align(self, other);
        Entropy {
            lo: a.lo.min(b.lo),
            hi: a.hi.max(b.hi),
            scale,
        }
    }

    /// Intersects the enclosure with `[lo, +inf)`, for quantities known to
    /// be at least `lo`.
    pub fn clamp_below(&self, lo: i64) -> Entropy {
        let floor = BigInt::from(lo) << self.scale;
        Entropy {
            lo: (&self.lo).max(&floor).clone(),
            hi: (&self.hi).max(&floor).clone(),
            scale: self.scale,
        }
    }

    /// Intersects the enclosure with `(-inf, hi]`.
    pub fn clamp_above(&self, hi: i64) -> Entropy {
        let ceil = BigInt::from(hi) << self.scale;
        Entropy {
            lo: (&self.lo).min(&ceil).clone(),
            hi: (&self.hi).min(&ceil).clone(),
            scale: self.scale,
        }
    }

    /// Enclosure of `self / other` for a strictly positive divisor. Returns
    /// `None` when `other` may contain zero or negative values.
    pub fn div(&self, other: &Entropy) -> Option<Entropy> {
        let (a, b, scale) = align(self, other);
        if !b.lo.is_positive() {
            return None;
        }
        let shift = |x: &BigInt| x << scale;
        // Over a positive divisor the extremes are at the endpoint pairs.
        let cands = [
            (shift(&a.lo), &b.lo),
            (shift(&a.lo), &b.hi),
            (shift(&a.hi), &b.lo),
            (shift(&a.hi), &b.hi),
        ];
        let lo = cands.iter().map(|(n, d)| n.div_floor(d)).min()?;
        let hi = cands
            .iter()
            .map(|(n, d)| {
                let (q, r) = n.div_mod_floor(d);
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            })
            .max()?;
        Some(Entropy { lo, hi, scale })
    }

    /// Lower and upper bounds as decimal strings with `digits` significant
    /// digits, rounded outward.
    pub fn to_decimal_bounds(&self, digits: usize) -> (String, String) {
        (
            decimal_directed(&self.lower_exact(), digits, Round::Down),
            decimal_directed(&self.upper_exact(), digits, Round::Up),
        )
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_bounds(12);
        write!(f, "[{lo}, {hi}] bits")
    }
}

fn align(a: &Entropy, b: &Entropy) -> (Entropy, Entropy, u32) {
    let scale = a.scale.max(b.scale);
    let up = |e: &Entropy| Entropy {
        lo: &e.lo << (scale - e.scale),
        hi: &e.hi << (scale - e.scale),
        scale,
    };
    (up(a), up(b), scale)
}

fn fixed_to_f64(v: &BigInt, scale: u32) -> f64 {
    BigRational::new(v.clone(), BigInt::one() << scale)
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Decimal bounds of an exact rational, rounded outward.
pub(crate) fn rational_decimal_bounds(x: &BigRational, digits: usize) -> (String, String) {
    (
        decimal_directed(x, digits, Round::Down),
        decimal_directed(x, digits, Round::Up),
    )
}

#[derive(Clone, Copy)]
enum Round {
    Down,
    Up,
}

fn decimal_directed(x: &BigRational, digits: usize, dir: Round) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = x.is_negative();
    let mag = x.abs();
    // Round the magnitude toward zero for (Down, +) and (Up, -).
    let toward_zero = matches!((dir, negative), (Round::Down, false) | (Round::Up, true));

    // Decimal exponent e with 10^e <= mag < 10^(e+1).
    let mut e = mag.to_f64().map(|f| f.log10().floor() as i64).unwrap_or(0);
    let pow10 = |k: i64| -> BigRational {
        let p = BigRational::from_integer(BigInt::from(10u32).pow(k.unsigned_abs() as u32));
        if k >= 0 {
            p
        } else {
            p.recip()
        }
    };
    while pow10(e) > mag {
        e -= 1;
    }
    while pow10(e + 1) <= mag {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &mag * pow10(shift);
    let mut m = if toward_zero {
        scaled.floor().to_integer()
    } else {
        scaled.ceil().to_integer()
    };
    let mut shift = shift;
    // Rounding up can spill into an extra digit (9.99.. -> 10.0..).
    if m.to_string().len() > digits {
        m /= 10;
        shift -= 1;
    }
    let s = m.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else if (shift as usize) < s.len() {
        let (int, frac) = s.split_at(s.len() - shift as usize);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{s}", "0".repeat(shift as usize - s.len()))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

// ---------------------------------------------------------------------------
// Fixed-point logarithms
// ---------------------------------------------------------------------------

/// Extra bits used internally by `log2_fixed` before rounding to the caller's
/// scale. The internal error bound must stay below `2^(GUARD-1)`.
const GUARD: u32 = 24;

/// Error bound, in ulps at the caller's scale, of `log2_fixed`.
pub(crate) const LOG2_ERR: u64 = 2;

thread_local! {
    static LN2_CACHE: RefCell<HashMap<u32, (BigInt, u64)>> = RefCell::new(HashMap::new());
}

/// `2 * atanh(z)` with `z = num/den` in `[0, 1/3]`, at `w` fractional bits.
/// Returns the value and an error bound in ulps.
fn two_atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let z = (num << w) / den;
    let z2 = (&z * &z) >> w;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = (&power * &z2) >> w;
        k += 1;
        terms += 1;
    }
    debug_assert!(z <= one);
    // z is within 1 ulp and z2 within 2; since z2 < 1/9 the error carried by
    // each power stays below 2 ulps, each division adds 1, and the dropped
    // tail is below 9/8 ulp.
    let err = 2 * (3 * terms + 4);
    (sum * 2, err)
}

fn ln2_fixed(w: u32) -> (BigInt, u64) {
    LN2_CACHE.with(|c| {
        c.borrow_mut()
            .entry(w)
            .or_insert_with(|| two_atanh_fixed(&BigInt::one(), &BigInt::from(3), w))
            .clone()
    })
}

/// `log2(n)` for `n >= 1` at `scale` fractional bits, within [`LOG2_ERR`] ulps.
pub(crate) fn log2_fixed(n: &BigUint, scale: u32) -> BigInt {
    assert!(!n.is_zero(), "log2 of zero");
    let k = n.bits() - 1;
    let w = scale + GUARD;
    // y = n / 2^k in [1, 2), truncated to w bits.
    let n = BigInt::from_biguint(Sign::Plus, n.clone());
    let y = if (k as u32) <= w {
        &n << (w - k as u32)
    } else {
        &n >> (k as u32 - w)
    };
    let one = BigInt::one() << w;
    let (ln_y, e_ln) = two_atanh_fixed(&(&y - &one), &(&y + &one), w);
    let (ln2, e_2) = ln2_fixed(w);
    let frac = (ln_y << w) / &ln2;
    // Quotient error: e_ln/ln2 + (ln y/ln2^2) e_2 + 1, with ln y < ln 2; plus
    // 1 ulp from truncating y.
    let err_w = 2 * (e_ln + 1) + 3 * e_2 + 1;
    debug_assert!(err_w < (1u64 << (GUARD - 1)));
    let total = (BigInt::from(k) << w) + frac;
    // Floor shift adds < 1 ulp at `scale`; internal error adds < 1/2 ulp.
    total >> GUARD
}

/// Memoizing `log2` evaluator at one scale.
pub(crate) struct LogTable {
    scale: u32,
    cache: HashMap<BigUint, BigInt>,
}

impl LogTable {
    pub(crate) fn new(precision: Precision) -> Self {
        LogTable {
            scale: precision.scale(),
            cache: HashMap::new(),
        }
    }

    pub(crate) fn scale(&self) -> u32 {
        self.scale
    }

    pub(crate) fn log2(&mut self, n: &BigUint) -> BigInt {
        if n.is_one() {
            return BigInt::zero();
        }
        if let Some(v) = self.cache.get(n) {
            return v.clone();
        }
        let v = log2_fixed(n, self.scale);
        self.cache.insert(n.clone(), v.clone());
        v
    }

    /// `sum_t (w_t / denom) * log2(a_t)` with error at most
    /// `LOG2_ERR * sum(w)/denom + 1` ulps. Terms with zero weight vanish.
    pub(crate) fn weighted_sum<'a, I>(&mut self, terms: I, denom: &BigUint) -> (BigInt, u64)
    where
        I: IntoIterator<Item = (&'a BigUint, &'a BigUint)>,
    {
        let mut acc = BigInt::zero();
        let mut weight = BigUint::zero();
        for (w, a) in terms {
            if w.is_zero() {
                continue;
            }
            acc += BigInt::from_biguint(Sign::Plus, w.clone()) * self.log2(a);
            weight += w;
        }
        let d = BigInt::from_biguint(Sign::Plus, denom.clone());
        let ratio_ceil = weight.div_ceil(denom).to_u64().unwrap_or(u64::MAX / 4);
        (acc.div_floor(&d), LOG2_ERR * ratio_ceil + 1)
    }
}

// ---------------------------------------------------------------------------
// Measures on integer-scaled data. Masses are `k / denom` with `sum k = denom`.
// ---------------------------------------------------------------------------

/// Shannon entropy of the mass vector `counts / denom`.
pub(crate) fn entropy_of_counts(counts: &[BigUint], denom: &BigUint, precision: Precision) -> Entropy {
    let mut t = LogTable::new(precision);
    let log_d = t.log2(denom);
    let (s, e) = t.weighted_sum(counts.iter().map(|k| (k, k)), denom);
    Entropy::from_fixed(log_d - s, LOG2_ERR + e, t.scale()).clamp_below(0)
}

/// `H(X|Y)` for an `rows x cols` matrix of counts with column sums `col_sums`.
pub(crate) fn cond_entropy_counts(
    counts: &[BigUint],
    cols: usize,
    col_sums: &[BigUint],
    denom: &BigUint,
    precision: Precision,
) -> Entropy {
    let mut t = LogTable::new(precision);
    let (a, ea) = t.weighted_sum(
        counts.iter().enumerate().map(|(idx, k)| (k, &col_sums[idx % cols])),
        denom,
    );
    let (b, eb) = t.weighted_sum(counts.iter().map(|k| (k, k)), denom);
    Entropy::from_fixed(a - b, ea + eb, t.scale()).clamp_below(0)
}

/// `I(X;Y)` for an `rows x cols` matrix of counts.
pub(crate) fn mutual_information_counts(
    counts: &[BigUint],
    cols: usize,
    row_sums: &[BigUint],
    col_sums: &[BigUint],
    denom: &BigUint,
    precision: Precision,
) -> Entropy {
    let mut t = LogTable::new(precision);
    let log_d = t.log2(denom);
    let (a, ea) = t.weighted_sum(counts.iter().map(|k| (k, k)), denom);
    let (r, er) = t.weighted_sum(
        counts.iter().enumerate().map(|(idx, k)| (k, &row_sums[idx / cols])),
        denom,
    );
    let (c, ec) = t.weighted_sum(
        counts.iter().enumerate().map(|(idx, k)| (k, &col_sums[idx % cols])),
        denom,
    );
    Entropy::from_fixed(a + log_d - r - c, ea + LOG2_ERR + er + ec, t.scale()).clamp_below(0)
}

/// Fast non-certified `f64` entropy of `counts / denom`, used for pruning.
pub(crate) fn approx_entropy(counts: &[BigUint], denom: &BigUint) -> f64 {
    let d = denom.to_f64().unwrap_or(f64::INFINITY);
    counts
        .iter()
        .filter(|k| !k.is_zero())
        .map(|k| {
            let p = k.to_f64().unwrap_or(f64::INFINITY) / d;
            -p * p.log2()
        })
        .sum()
}

/// `log2(n)` as a certified value.
pub fn log2_integer(n: u64, precision: Precision) -> Entropy {
    assert!(n >= 1, "log2 of zero");
    let mut t = LogTable::new(precision);
    let v = t.log2(&BigUint::from(n));
    if n.is_power_of_two() {
        return Entropy::from_integer(n.trailing_zeros() as i64);
    }
    Entropy::from_fixed(v, LOG2_ERR, t.scale())
}
