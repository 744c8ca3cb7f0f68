//! Exact weight distributions, three independent ways: exhaustive Gray-code
//! enumeration, the MacWilliams transform, and the closed-form tables for
//! the dual codes (plus the even-weight convolution formulas for the code
//! side). All counts are arbitrary-precision integers; nothing rounds.

use crate::binom::binomial;
use crate::bits::BitVec;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde_json::json;
use std::collections::BTreeMap;

/// Dimension bound above which exhaustive enumeration is refused.
pub const DEFAULT_GUARD: usize = 22;

/// Exact map weight -> count for a code of a given length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    length: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    /// Builds a distribution, dropping zero counts. Weights must not exceed
    /// the length.
    pub fn new(length: usize, counts: BTreeMap<usize, BigUint>) -> Result<Self> {
        if let Some((&w, _)) = counts.iter().next_back() {
            if w > length {
                return Err(Error::BadDistribution(format!(
                    "weight {w} exceeds length {length}"
                )));
            }
        }
        Ok(WeightDistribution {
            length,
            counts: counts.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Nonzero counts, ascending by weight.
    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Result<usize> {
        self.counts
            .keys()
            .find(|&&w| w > 0)
            .copied()
            .ok_or_else(|| Error::BadDistribution("no nonzero weight present".to_string()))
    }

    /// Whether counts[w] = counts[length - w] for all w.
    pub fn is_symmetric(&self) -> bool {
        self.counts
            .iter()
            .all(|(&w, c)| self.count(self.length - w) == *c)
    }

    /// {"length": v, "counts": {"0": "1", ...}} with decimal-string counts.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (w, c) in &self.counts {
            map.insert(w.to_string(), json!(c.to_string()));
        }
        json!({ "length": self.length, "counts": map })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::BadDistribution(msg.to_string());
        let length = v["length"].as_u64().ok_or_else(|| bad("missing length"))? as usize;
        let obj = v["counts"]
            .as_object()
            .ok_or_else(|| bad("missing counts"))?;
        let mut counts = BTreeMap::new();
        for (k, val) in obj {
            let w: usize = k.parse().map_err(|_| bad("non-integer weight key"))?;
            let s = val.as_str().ok_or_else(|| bad("count must be a string"))?;
            let c: BigUint = s.parse().map_err(|_| bad("count must be a decimal"))?;
            counts.insert(w, c);
        }
        WeightDistribution::new(length, counts)
    }
}

fn check_guard(dim: usize, guard: usize) -> Result<()> {
    let guard = guard.min(63);
    if dim > guard {
        return Err(Error::GuardExceeded { dim, guard });
    }
    Ok(())
}

/// Histogram of one Gray-code shard [lo, hi) of the message space: each step
/// is a single row XOR plus a popcount.
fn gray_hist(length: usize, rows: &[BitVec], lo: u64, hi: u64) -> Vec<u64> {
    let mut hist = vec![0u64; length + 1];
    let mut word = BitVec::zeros(length);
    let start = lo ^ (lo >> 1);
    for (j, row) in rows.iter().enumerate() {
        if (start >> j) & 1 == 1 {
            word.xor_assign(row);
        }
    }
    let mut i = lo;
    loop {
        hist[word.weight()] += 1;
        i += 1;
        if i == hi {
            break;
        }
        word.xor_assign(&rows[i.trailing_zeros() as usize]);
    }
    hist
}

fn hist_to_wd(length: usize, dim: usize, hist: Vec<u64>) -> Result<WeightDistribution> {
    let counts: BTreeMap<usize, BigUint> = hist
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (w, BigUint::from(c)))
        .collect();
    let wd = WeightDistribution::new(length, counts)?;
    if wd.total() != BigUint::one() << dim {
        return Err(Error::Inconsistency(format!(
            "enumeration visited {} words, expected 2^{dim}",
            wd.total()
        )));
    }
    Ok(wd)
}

/// Shard boundaries: `shards` is rounded up to a power of two and clamped so
/// every shard is a contiguous prefix range of the message space.
#[cfg(feature = "parallel")]
fn shard_ranges(dim: usize, shards: usize) -> Vec<(u64, u64)> {
    let p = shards.next_power_of_two().trailing_zeros().min(dim as u32);
    let step = 1u64 << (dim as u32 - p);
    (0..1u64 << p).map(|s| (s * step, (s + 1) * step)).collect()
}

/// Exhaustive weight distribution of the row span, single-threaded.
pub fn enumerate_wd_seq(code: &LinearCode, guard: usize) -> Result<WeightDistribution> {
    let dim = code.dimension();
    check_guard(dim, guard)?;
    let hist = gray_hist(code.length(), code.generator_rows(), 0, 1u64 << dim);
    hist_to_wd(code.length(), dim, hist)
}

/// Exhaustive weight distribution with the message space split into prefix
/// shards enumerated in parallel; `shards = 0` picks a multiple of the
/// thread count. Shard histograms merge by addition.
#[cfg(feature = "parallel")]
pub fn enumerate_wd_par(
    code: &LinearCode,
    guard: usize,
    shards: usize,
) -> Result<WeightDistribution> {
    use rayon::prelude::*;
    let dim = code.dimension();
    check_guard(dim, guard)?;
    let shards = if shards == 0 {
        4 * rayon::current_num_threads()
    } else {
        shards
    };
    let length = code.length();
    let rows = code.generator_rows();
    let hist = shard_ranges(dim, shards)
        .into_par_iter()
        .map(|(lo, hi)| gray_hist(length, rows, lo, hi))
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    hist_to_wd(length, dim, hist)
}

/// Exhaustive weight distribution of a code; parallel when the `parallel`
/// feature is enabled.
pub fn enumerate_wd(code: &LinearCode, guard: usize) -> Result<WeightDistribution> {
    enumerate_wd_sharded(code, guard, 0)
}

/// Like `enumerate_wd` with an explicit shard count (0 = automatic); the
/// count is ignored by the sequential fallback.
pub fn enumerate_wd_sharded(
    code: &LinearCode,
    guard: usize,
    shards: usize,
) -> Result<WeightDistribution> {
    #[cfg(feature = "parallel")]
    {
        enumerate_wd_par(code, guard, shards)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = shards;
        enumerate_wd_seq(code, guard)
    }
}

/// Weight distribution of the span of arbitrary rows (reduced to a basis
/// first). Used where no `LinearCode` wrapper exists, e.g. randomized
/// transform tests.
pub fn enumerate_span_wd(
    length: usize,
    rows: &[BitVec],
    guard: usize,
) -> Result<WeightDistribution> {
    let basis = crate::bits::Echelon::from_rows(length, rows.iter().cloned());
    let dim = basis.rank();
    check_guard(dim, guard)?;
    let hist = gray_hist(length, basis.rows(), 0, 1u64 << dim);
    hist_to_wd(length, dim, hist)
}

/// The Krawtchouk-style kernel sum_j (-1)^j C(i,j) C(v-i, k-j), with both
/// binomials advanced incrementally so each term costs O(1) big-integer ops.
fn kraw(v: u64, i: u64, k: u64) -> BigInt {
    let n2 = v - i;
    let j_lo = k.saturating_sub(n2);
    let j_hi = i.min(k);
    if j_lo > j_hi {
        return BigInt::zero();
    }
    // c1 = C(i, j), c2 = C(n2, k - j), starting at j = j_lo.
    let mut c1 = binomial(i, j_lo);
    let mut c2 = binomial(n2, k - j_lo);
    let mut acc = BigInt::zero();
    for j in j_lo..=j_hi {
        let term = BigInt::from(&c1 * &c2);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        if j < j_hi {
            // C(i, j+1) = C(i, j) * (i - j) / (j + 1)
            c1 = c1 * BigUint::from(i - j) / BigUint::from(j + 1);
            // C(n2, r-1) = C(n2, r) * r / (n2 - r + 1) with r = k - j
            let r = k - j;
            c2 = c2 * BigUint::from(r) / BigUint::from(n2 - r + 1);
        }
    }
    acc
}

/// One coefficient of the MacWilliams transform: the number of dual
/// codewords of weight `k`, given the distribution of a dimension-`dim`
/// code. Fails loudly if the exact 2^dim division leaves a remainder or the
/// result is negative.
pub fn macwilliams_count(wd: &WeightDistribution, dim: usize, k: usize) -> Result<BigUint> {
    let v = wd.length() as u64;
    let mut acc = BigInt::zero();
    for (&i, c) in wd.counts() {
        acc += BigInt::from(c.clone()) * kraw(v, i as u64, k as u64);
    }
    if acc.sign() == Sign::Minus {
        return Err(Error::BadDistribution(format!(
            "transform produced a negative count at weight {k}"
        )));
    }
    let acc = acc.to_biguint().expect("checked nonnegative");
    let (q, r) = num_integer_div_rem(&acc, dim);
    if !r.is_zero() {
        return Err(Error::BadDistribution(format!(
            "transform count at weight {k} is not divisible by 2^{dim}"
        )));
    }
    Ok(q)
}

fn num_integer_div_rem(x: &BigUint, shift: usize) -> (BigUint, BigUint) {
    let q = x >> shift;
    let r = x - (&q << shift);
    (q, r)
}

/// Exact MacWilliams transform: the full dual weight distribution of a
/// dimension-`dim` code of length v. Input must sum to 2^dim; output is
/// checked to sum to 2^(v-dim).
pub fn macwilliams(wd: &WeightDistribution, dim: usize) -> Result<WeightDistribution> {
    let v = wd.length();
    if wd.total() != BigUint::one() << dim {
        return Err(Error::BadDistribution(format!(
            "input sums to {}, expected 2^{dim}",
            wd.total()
        )));
    }
    let mut counts = BTreeMap::new();
    for k in 0..=v {
        let c = macwilliams_count(wd, dim, k)?;
        if !c.is_zero() {
            counts.insert(k, c);
        }
    }
    let out = WeightDistribution::new(v, counts)?;
    if out.total() != BigUint::one() << (v - dim) {
        return Err(Error::BadDistribution(format!(
            "transform output sums to {}, expected 2^{}",
            out.total(),
            v - dim
        )));
    }
    Ok(out)
}

/// Which closed-form dual table applies to (m, e).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// m / gcd(m,e) odd.
    A,
    /// e = m/2.
    B,
    /// m / gcd(m,e) even, e < m/2.
    C,
    /// Sub-case of C with gcd(m,e) = 2 and m ≡ 0 (mod 4).
    C4,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A => "a",
            CaseTag::B => "b",
            CaseTag::C => "c",
            CaseTag::C4 => "c4",
        }
    }
}

/// The closed-form dual table instance for one (m, e): the case tag, its
/// parameters, and the table counts u (outer pair), v (inner pair, cases
/// c/c4 only) and w (center).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCase {
    pub tag: CaseTag,
    /// (m - gcd(m,e)) / 2, case a only.
    pub h: Option<u32>,
    /// 2 gcd(m,e), cases c/c4 only.
    pub ell: Option<u32>,
    pub dual_dimension: usize,
    pub u: BigUint,
    pub v: Option<BigUint>,
    pub w: BigUint,
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn pow2(k: u32) -> BigUint {
    BigUint::one() << k
}

pub(crate) fn exact_div(num: BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = (&num / den, &num % den);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "non-exact division in {what}: {num} / {den}"
        )));
    }
    Ok(q)
}

/// The closed-form dual weight distribution for (m, e), m >= 4,
/// 1 <= e <= floor(m/2), selecting the applicable case.
pub fn closed_form_dual_wd(m: u32, e: u32) -> Result<(ClosedFormCase, WeightDistribution)> {
    if !(4..=16).contains(&m) {
        return Err(Error::HypothesisNotMet(format!(
            "closed-form dual tables need 4 <= m <= 16, got m={m}"
        )));
    }
    if e == 0 || 2 * e > m {
        return Err(Error::ExponentOutOfRange { m, e });
    }
    let g = gcd(m, e);
    let v_len = 1usize << m;
    let half = 1usize << (m - 1);
    let qm1 = pow2(m) - BigUint::one(); // 2^m - 1
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
    counts.insert(0, BigUint::one());
    counts.insert(v_len, BigUint::one());

    let case = if 2 * e == m {
        let dev = 1usize << ((m - 2) / 2);
        let u = (pow2(m / 2) - BigUint::one()) * pow2(m);
        let w = pow2(m + 1) - BigUint::from(2u32);
        counts.insert(half - dev, u.clone());
        counts.insert(half + dev, u.clone());
        counts.insert(half, w.clone());
        ClosedFormCase {
            tag: CaseTag::B,
            h: None,
            ell: None,
            dual_dimension: 1 + 3 * m as usize / 2,
            u,
            v: None,
            w,
        }
    } else if (m / g) % 2 == 1 {
        let h = (m - g) / 2;
        let dev = 1usize << (m - 1 - h);
        let u = &qm1 * pow2(2 * h);
        let w = &qm1 * (pow2(m + 1) - pow2(2 * h + 1) + BigUint::from(2u32));
        counts.insert(half - dev, u.clone());
        counts.insert(half + dev, u.clone());
        counts.insert(half, w.clone());
        ClosedFormCase {
            tag: CaseTag::A,
            h: Some(h),
            ell: None,
            dual_dimension: 2 * m as usize + 1,
            u,
            v: None,
            w,
        }
    } else {
        let ell = 2 * g;
        let den = pow2(ell / 2) + BigUint::one();
        let u = exact_div(pow2(m - ell) * &qm1, &den, "table count u")?;
        let vv = exact_div(pow2((2 * m + ell) / 2) * &qm1, &den, "table count v")?;
        let w = BigUint::from(2u32)
            * ((pow2(ell / 2) - BigUint::one()) * pow2(m - ell) + BigUint::one())
            * &qm1;
        let dev_out = 1usize << ((m + ell - 2) / 2);
        let dev_in = 1usize << ((m - 2) / 2);
        counts.insert(half - dev_out, u.clone());
        counts.insert(half + dev_out, u.clone());
        counts.insert(half - dev_in, vv.clone());
        counts.insert(half + dev_in, vv.clone());
        counts.insert(half, w.clone());
        ClosedFormCase {
            tag: if g == 2 && m % 4 == 0 {
                CaseTag::C4
            } else {
                CaseTag::C
            },
            h: None,
            ell: Some(ell),
            dual_dimension: 2 * m as usize + 1,
            u,
            v: Some(vv),
            w,
        }
    };

    let wd = WeightDistribution::new(v_len, counts)?;
    if wd.total() != BigUint::one() << case.dual_dimension {
        return Err(Error::Inconsistency(format!(
            "closed-form table for m={m}, e={e} sums to {}, expected 2^{}",
            wd.total(),
            case.dual_dimension
        )));
    }
    Ok((case, wd))
}

/// The table constants (u, v, w) of the gcd = 2, m ≡ 0 (mod 4) dual
/// distribution, shared by the code-side convolution formulas.
fn c4_constants(m: u32) -> Result<(BigUint, BigUint, BigUint)> {
    let qm1 = pow2(m) - BigUint::one();
    let five = BigUint::from(5u32);
    let u = exact_div(pow2(m - 4) * &qm1, &five, "constant u")?;
    let v = exact_div(pow2(m + 2) * &qm1, &five, "constant v")?;
    let w = BigUint::from(2u32) * (BigUint::from(3u32) * pow2(m - 4) + BigUint::one()) * &qm1;
    Ok((u, v, w))
}

/// Signed convolution sum_{i+j=k} ((-1)^i + (-1)^j) C(n1, i) C(n2, j),
/// computed literally with incrementally updated binomials.
fn even_convolution(n1: u64, n2: u64, k: u64) -> BigInt {
    let i_lo = k.saturating_sub(n2);
    let i_hi = n1.min(k);
    if i_lo > i_hi {
        return BigInt::zero();
    }
    let mut c1 = binomial(n1, i_lo);
    let mut c2 = binomial(n2, k - i_lo);
    let mut acc = BigInt::zero();
    for i in i_lo..=i_hi {
        let j = k - i;
        let sign = i32::from(i % 2 == 0) - i32::from(i % 2 == 1) + i32::from(j % 2 == 0)
            - i32::from(j % 2 == 1);
        if sign != 0 {
            acc += BigInt::from(sign) * BigInt::from(&c1 * &c2);
        }
        if i < i_hi {
            c1 = c1 * BigUint::from(n1 - i) / BigUint::from(i + 1);
            c2 = c2 * BigUint::from(j) / BigUint::from(n2 - j + 1);
        }
    }
    acc
}

/// Exact count of weight-k codewords of the extended code for
/// m ≡ 0 (mod 4), gcd(m, e) = 2, via the convolution expansion of the
/// transformed dual enumerator. The 2^(2m+1) division must be exact.
///
/// Boundary note: the only admissible pair at m = 4 is (4, 2), whose dual
/// falls in case b rather than c4. The formulas still hold there — the
/// case-b table is exactly the ell = 4 table scaled by 4 with its extreme
/// weights collapsed into 0 and 2^m, and the 2^(2m+1) division absorbs the
/// factor — and the tag returned by `closed_form_dual_wd` keeps the
/// boundary visible to callers.
pub fn closed_form_code_wd(m: u32, e: u32, k: usize) -> Result<BigUint> {
    if m % 4 != 0 || m < 4 {
        return Err(Error::HypothesisNotMet(format!(
            "code-side closed form needs m ≡ 0 (mod 4), got m={m}"
        )));
    }
    if e == 0 || 2 * e > m {
        return Err(Error::ExponentOutOfRange { m, e });
    }
    if gcd(m, e) != 2 {
        return Err(Error::HypothesisNotMet(format!(
            "code-side closed form needs gcd(m,e) = 2, got gcd({m},{e}) = {}",
            gcd(m, e)
        )));
    }
    let v_len = 1u64 << m;
    if k as u64 > v_len {
        return Err(Error::BadDistribution(format!(
            "weight {k} exceeds length {v_len}"
        )));
    }
    let (u, v, w) = c4_constants(m)?;
    let k64 = k as u64;
    let half = 1u64 << (m - 1);
    let d_out = 1u64 << ((m + 2) / 2);
    let d_in = 1u64 << ((m - 2) / 2);

    let mut total = BigInt::zero();
    // (1 + (-1)^k) C(2^m, k) from the all-zero and all-one dual terms.
    if k % 2 == 0 {
        total += BigInt::from(2) * BigInt::from(binomial(v_len, k64));
        // w E0(k): the center term contributes via (1 - z^2)^(2^{m-1}).
        let e0 = {
            let c = BigInt::from(binomial(half, k64 / 2));
            if (k64 / 2) % 2 == 0 {
                c
            } else {
                -c
            }
        };
        total += BigInt::from(w) * e0;
    }
    total += BigInt::from(u) * even_convolution(half - d_out, half + d_out, k64);
    total += BigInt::from(v) * even_convolution(half - d_in, half + d_in, k64);

    if total.sign() == Sign::Minus {
        return Err(Error::Inconsistency(format!(
            "code-side count at weight {k} is negative"
        )));
    }
    let total = total.to_biguint().expect("checked nonnegative");
    let shift = 2 * m as usize + 1;
    let (q, r) = num_integer_div_rem(&total, shift);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "code-side count at weight {k} is not divisible by 2^{shift}"
        )));
    }
    Ok(q)
}

/// The low-weight counts A_4, A_6, A_8 of the extended code, by formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A468 {
    pub a4: BigUint,
    pub a6: BigUint,
    pub a8: BigUint,
}

/// Evaluates the A_4/A_6/A_8 formulas. Stated for m ≡ 0 (mod 4); other even
/// m are evaluated as an extrapolation, where the exact-division checks
/// reject the attempt (5 divides 2^m - 1 only when 4 | m, so the A_6
/// division by 45 can never be exact at m ≡ 2 mod 4). The A_4 formula alone
/// does extrapolate; see `designs::steiner_block_count`.
pub fn a468(m: u32) -> Result<A468> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::HypothesisNotMet(format!(
            "A_4/A_6/A_8 formulas need even m >= 4, got m={m}"
        )));
    }
    let extrapolating = m % 4 != 0;
    let flag = |err: Error| {
        if extrapolating {
            Error::HypothesisNotMet(format!(
                "formulas do not extrapolate to m={m} ≡ 2 (mod 4): {err}"
            ))
        } else {
            err
        }
    };
    let qm1 = pow2(m) - BigUint::one();
    let a4 = exact_div(pow2(m) * &qm1, &BigUint::from(12u32), "A_4").map_err(flag)?;
    let a6 = exact_div(
        pow2(m) * &qm1 * (pow2(2 * m - 4) + pow2(m - 1) + BigUint::from(6u32)),
        &BigUint::from(45u32),
        "A_6",
    )
    .map_err(flag)?;
    let inner = BigInt::from(pow2(4 * m - 4)) - BigInt::from(27) * BigInt::from(pow2(3 * m - 4))
        + BigInt::from(23) * BigInt::from(pow2(2 * m - 1))
        + BigInt::from(261) * BigInt::from(pow2(m - 2))
        + BigInt::from(403);
    let inner = inner
        .to_biguint()
        .ok_or_else(|| Error::Inconsistency("negative A_8 bracket".to_string()))?;
    let a8 = exact_div(pow2(m - 3) * &qm1 * inner, &BigUint::from(315u32), "A_8").map_err(flag)?;
    Ok(A468 { a4, a6, a8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wd_of(pairs: &[(usize, u64)], length: usize) -> WeightDistribution {
        let counts = pairs.iter().map(|&(w, c)| (w, BigUint::from(c))).collect();
        WeightDistribution::new(length, counts).unwrap()
    }

    fn ext_and_dual(m: u32, e: u32) -> (LinearCode, LinearCode) {
        let ctx = FieldCtx::new(m).unwrap();
        let ext = LinearCode::build_cyclic(&ctx, e)
            .unwrap()
            .extend(&ctx)
            .unwrap();
        let dual = ext.dual();
        (ext, dual)
    }

    /// Reference enumeration: combine rows per message directly, no Gray
    /// stepping.
    fn brute_wd(length: usize, rows: &[BitVec]) -> WeightDistribution {
        let mut hist = vec![0u64; length + 1];
        for msg in 0..1u64 << rows.len() {
            let mut w = BitVec::zeros(length);
            for (j, row) in rows.iter().enumerate() {
                if (msg >> j) & 1 == 1 {
                    w.xor_assign(row);
                }
            }
            hist[w.weight()] += 1;
        }
        hist_to_wd(length, rows.len(), hist).unwrap()
    }

    #[test]
    fn gray_enumeration_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let length = rng.random_range(4..24usize);
            let nrows = rng.random_range(1..8usize);
            let rows: Vec<BitVec> = (0..nrows)
                .map(|_| {
                    let ones: Vec<usize> = (0..length).filter(|_| rng.random()).collect();
                    BitVec::from_ones(length, &ones)
                })
                .collect();
            let basis = crate::bits::Echelon::from_rows(length, rows.clone());
            let brute = brute_wd(length, basis.rows());
            let gray = enumerate_span_wd(length, &rows, DEFAULT_GUARD).unwrap();
            assert_eq!(brute, gray);
        }
    }

    #[test]
    fn m4_tables_by_enumeration() {
        let (ext, dual) = ext_and_dual(4, 2);
        let code_wd = enumerate_wd(&ext, DEFAULT_GUARD).unwrap();
        assert_eq!(
            code_wd,
            wd_of(
                &[
                    (0, 1),
                    (4, 20),
                    (6, 160),
                    (8, 150),
                    (10, 160),
                    (12, 20),
                    (16, 1)
                ],
                16
            )
        );
        assert_eq!(code_wd.min_distance().unwrap(), 4);
        let dual_wd = enumerate_wd(&dual, DEFAULT_GUARD).unwrap();
        assert_eq!(
            dual_wd,
            wd_of(&[(0, 1), (6, 48), (8, 30), (10, 48), (16, 1)], 16)
        );
        // Sequential and sharded paths agree.
        assert_eq!(enumerate_wd_seq(&ext, DEFAULT_GUARD).unwrap(), code_wd);
        #[cfg(feature = "parallel")]
        {
            assert_eq!(enumerate_wd_par(&ext, DEFAULT_GUARD, 8).unwrap(), code_wd);
            assert_eq!(enumerate_wd_par(&dual, DEFAULT_GUARD, 3).unwrap(), dual_wd);
        }
    }

    #[test]
    fn trivial_span_is_the_zero_code() {
        let wd = enumerate_span_wd(16, &[], DEFAULT_GUARD).unwrap();
        assert_eq!(wd, wd_of(&[(0, 1)], 16));
    }

    #[test]
    fn guard_refuses_large_dimensions() {
        let (ext, _) = ext_and_dual(8, 2);
        assert!(matches!(
            enumerate_wd(&ext, DEFAULT_GUARD),
            Err(Error::GuardExceeded { dim: 239, .. })
        ));
    }

    #[test]
    fn macwilliams_maps_m4_tables_onto_each_other() {
        let code = wd_of(
            &[
                (0, 1),
                (4, 20),
                (6, 160),
                (8, 150),
                (10, 160),
                (12, 20),
                (16, 1),
            ],
            16,
        );
        let dual = wd_of(&[(0, 1), (6, 48), (8, 30), (10, 48), (16, 1)], 16);
        assert_eq!(macwilliams(&code, 9).unwrap(), dual);
        assert_eq!(macwilliams(&dual, 7).unwrap(), code);
    }

    #[test]
    fn macwilliams_of_full_space_is_trivial() {
        let v = 6;
        let full: BTreeMap<usize, BigUint> =
            (0..=v).map(|k| (k, binomial(v as u64, k as u64))).collect();
        let full = WeightDistribution::new(v, full).unwrap();
        assert_eq!(macwilliams(&full, v).unwrap(), wd_of(&[(0, 1)], v));
    }

    #[test]
    fn macwilliams_involution_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let length = rng.random_range(6..=18usize);
            let nrows = rng.random_range(1..=length.min(10));
            let rows: Vec<BitVec> = (0..nrows)
                .map(|_| {
                    let ones: Vec<usize> = (0..length).filter(|_| rng.random()).collect();
                    BitVec::from_ones(length, &ones)
                })
                .collect();
            let basis = crate::bits::Echelon::from_rows(length, rows);
            let dim = basis.rank();
            let wd = enumerate_span_wd(length, basis.rows(), DEFAULT_GUARD).unwrap();
            let dual = macwilliams(&wd, dim).unwrap();
            let back = macwilliams(&dual, length - dim).unwrap();
            assert_eq!(back, wd);
        }
    }

    #[test]
    fn macwilliams_rejects_bad_sum() {
        let wd = wd_of(&[(0, 1), (2, 2)], 4);
        assert!(matches!(
            macwilliams(&wd, 2),
            Err(Error::BadDistribution(_))
        ));
    }

    #[test]
    fn closed_form_case_selection_and_tables() {
        // m=4, e=2: case b (e = m/2).
        let (case, wd) = closed_form_dual_wd(4, 2).unwrap();
        assert_eq!(case.tag, CaseTag::B);
        assert_eq!(case.dual_dimension, 7);
        assert_eq!(
            wd,
            wd_of(&[(0, 1), (6, 48), (8, 30), (10, 48), (16, 1)], 16)
        );

        // m=6, e=2: case a with h=2.
        let (case, wd) = closed_form_dual_wd(6, 2).unwrap();
        assert_eq!(case.tag, CaseTag::A);
        assert_eq!(case.h, Some(2));
        assert_eq!(case.dual_dimension, 13);
        assert_eq!(
            wd,
            wd_of(&[(0, 1), (24, 1008), (32, 6174), (40, 1008), (64, 1)], 64)
        );

        // m=6, e=3: case b again.
        let (case, wd) = closed_form_dual_wd(6, 3).unwrap();
        assert_eq!(case.tag, CaseTag::B);
        assert_eq!(
            wd,
            wd_of(&[(0, 1), (28, 448), (32, 126), (36, 448), (64, 1)], 64)
        );

        // m=8, e=2: case c with ell=4, tagged c4.
        let (case, wd) = closed_form_dual_wd(8, 2).unwrap();
        assert_eq!(case.tag, CaseTag::C4);
        assert_eq!(case.ell, Some(4));
        assert_eq!(
            wd,
            wd_of(
                &[
                    (0, 1),
                    (96, 816),
                    (120, 52224),
                    (128, 24990),
                    (136, 52224),
                    (160, 816),
                    (256, 1)
                ],
                256
            )
        );
        assert_eq!(wd.min_distance().unwrap(), 96);

        // m=5, e=2: case a at odd m; sums to 2^11.
        let (case, wd) = closed_form_dual_wd(5, 2).unwrap();
        assert_eq!(case.tag, CaseTag::A);
        assert_eq!(wd.total(), BigUint::one() << 11);

        // m=12, e=2: c4 at scale; sums to 2^25.
        let (case, wd) = closed_form_dual_wd(12, 2).unwrap();
        assert_eq!(case.tag, CaseTag::C4);
        assert_eq!(wd.total(), BigUint::one() << 25);

        // m=8, e=4: case b (e = m/2).
        let (case, _) = closed_form_dual_wd(8, 4).unwrap();
        assert_eq!(case.tag, CaseTag::B);

        // m=12, e=3: gcd 3, m/g = 4 even: plain case c with ell = 6.
        let (case, wd) = closed_form_dual_wd(12, 3).unwrap();
        assert_eq!(case.tag, CaseTag::C);
        assert_eq!(case.ell, Some(6));
        assert_eq!(wd.total(), BigUint::one() << 25);
    }

    #[test]
    fn closed_form_tables_match_enumeration_for_every_small_pair() {
        // Every (m, e) with 4 <= m <= 8: both parities of m, all three
        // cases, every admissible e.
        for m in 4u32..=8 {
            for e in 1..=m / 2 {
                let (ext, dual) = ext_and_dual(m, e);
                let enumerated = enumerate_wd(&dual, DEFAULT_GUARD).unwrap();
                let (_, closed) = closed_form_dual_wd(m, e).unwrap();
                assert_eq!(enumerated, closed, "tables at m={m}, e={e}");
                // Third route where the code side is small enough: the
                // transform of the enumerated code must land on the same
                // distribution.
                if ext.dimension() <= DEFAULT_GUARD {
                    let code_wd = enumerate_wd(&ext, DEFAULT_GUARD).unwrap();
                    assert_eq!(
                        macwilliams(&code_wd, ext.dimension()).unwrap(),
                        closed,
                        "transform route at m={m}, e={e}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_tables_are_symmetric() {
        for (m, e) in [
            (4u32, 2u32),
            (5, 2),
            (6, 2),
            (6, 3),
            (8, 2),
            (8, 4),
            (12, 2),
            (12, 3),
        ] {
            let (_, wd) = closed_form_dual_wd(m, e).unwrap();
            assert!(wd.is_symmetric(), "symmetry at m={m}, e={e}");
        }
    }

    #[test]
    fn code_side_closed_form_values() {
        assert_eq!(closed_form_code_wd(8, 2, 0).unwrap(), BigUint::one());
        assert_eq!(
            closed_form_code_wd(8, 2, 4).unwrap(),
            BigUint::from(5440u32)
        );
        for k in [1usize, 3, 5, 97, 255] {
            assert_eq!(
                closed_form_code_wd(8, 2, k).unwrap(),
                BigUint::zero(),
                "odd k={k}"
            );
        }
        assert!(closed_form_code_wd(6, 2, 4).is_err());
        assert!(closed_form_code_wd(8, 3, 4).is_err());
    }

    #[test]
    fn code_side_closed_form_matches_transform_at_m8() {
        let (_, dual_wd) = closed_form_dual_wd(8, 2).unwrap();
        let code_wd = macwilliams(&dual_wd, 17).unwrap();
        for k in 0..=256usize {
            assert_eq!(
                closed_form_code_wd(8, 2, k).unwrap(),
                code_wd.count(k),
                "A_{k} mismatch"
            );
        }
    }

    #[test]
    fn code_side_closed_form_matches_enumeration_at_m4_boundary() {
        // (4, 2) falls in dual case b, yet the convolution formulas still
        // reproduce the enumerated distribution.
        let (ext, _) = ext_and_dual(4, 2);
        let code_wd = enumerate_wd(&ext, DEFAULT_GUARD).unwrap();
        for k in 0..=16usize {
            assert_eq!(closed_form_code_wd(4, 2, k).unwrap(), code_wd.count(k));
        }
    }

    #[test]
    fn a468_values() {
        let a = a468(4).unwrap();
        assert_eq!(
            (a.a4, a.a6, a.a8),
            (
                BigUint::from(20u32),
                BigUint::from(160u32),
                BigUint::from(150u32)
            )
        );

        let a = a468(8).unwrap();
        assert_eq!(a.a4, BigUint::from(5440u32));
        assert_eq!(a.a6, BigUint::from(6_136_320u64));
        assert_eq!(a.a8, BigUint::from(6_240_319_200u64));

        // m ≡ 2 (mod 4): the A_6 division by 45 cannot be exact, and the
        // extrapolation attempt reports a hypothesis failure, not a bug.
        assert!(matches!(a468(6), Err(Error::HypothesisNotMet(_))));
        assert!(a468(5).is_err());
        assert!(a468(2).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let wd = wd_of(&[(0, 1), (6, 48), (8, 30), (10, 48), (16, 1)], 16);
        let j = wd.to_json();
        assert_eq!(j["length"], 16);
        assert_eq!(j["counts"]["6"], "48");
        assert_eq!(WeightDistribution::from_json(&j).unwrap(), wd);
    }

    #[test]
    fn macwilliams_count_matches_full_transform() {
        let dual = wd_of(&[(0, 1), (6, 48), (8, 30), (10, 48), (16, 1)], 16);
        let full = macwilliams(&dual, 7).unwrap();
        for k in 0..=16 {
            assert_eq!(macwilliams_count(&dual, 7, k).unwrap(), full.count(k));
        }
    }
}
