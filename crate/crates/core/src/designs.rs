//! Support designs of the codes: block extraction, exact pair-coverage
//! verification, and the closed-form design parameters.
//!
//! Weight-4 blocks are found algebraically. A support {a, b, c, d} lies in
//! the extended code iff a+b+c+d = 0 and the u-th power sum vanishes,
//! u = 1+2^e. Fixing the pair (a, b) and writing s = a+b, the remaining
//! points are d = c+s where c solves the GF(2)-linear system
//!     s^(2^e) * c + s * c^(2^e) = a^u + b^u + s^u.
//! The system matrix depends only on s, so one elimination serves all 2^(m-1)
//! pairs with that difference; its kernel has size 2^gcd(m,e). Scanning every
//! pair visits each block once per contained pair, so keeping a block exactly
//! when (a, b) are its two smallest points deduplicates canonically.

use crate::binom::binomial;
use crate::bits::BitVec;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::wdist::{closed_form_dual_wd, exact_div, gcd, pow2, CaseTag, WeightDistribution};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

/// A block design on the point set {0, ..., v-1}: points are field-element
/// encodings under the extended coordinate convention. Blocks are stored
/// flat (stride k), each strictly ascending, the block list sorted
/// lexicographically with no repeats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    k: usize,
    t: usize,
    lambda: BigUint,
    points: Vec<u32>,
}

impl Design {
    /// Builds a design from unsorted blocks, canonicalizing and validating.
    pub fn new(
        v: usize,
        k: usize,
        t: usize,
        lambda: BigUint,
        mut blocks: Vec<Vec<u32>>,
    ) -> Result<Design> {
        for b in &mut blocks {
            if b.len() != k {
                return Err(Error::Inconsistency(format!(
                    "block of size {} in a k={k} design",
                    b.len()
                )));
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) || b.iter().any(|&p| p as usize >= v) {
                return Err(Error::Inconsistency(format!("invalid block {b:?}")));
            }
        }
        blocks.sort_unstable();
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Inconsistency("repeated block".to_string()));
        }
        let mut points = Vec::with_capacity(blocks.len() * k);
        for b in &blocks {
            points.extend_from_slice(b);
        }
        Ok(Design {
            v,
            k,
            t,
            lambda,
            points,
        })
    }

    /// Fast path for already-canonical flat storage.
    fn from_flat(v: usize, k: usize, t: usize, lambda: BigUint, points: Vec<u32>) -> Design {
        debug_assert_eq!(points.len() % k, 0);
        Design {
            v,
            k,
            t,
            lambda,
            points,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The design index from the counting identity, not an empirical value.
    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    pub fn block_count(&self) -> usize {
        self.points.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn blocks(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.points.chunks_exact(self.k.max(1))
    }
}

/// lambda = b * C(k, t) / C(v, t), exactly, or an error when the division
/// does not come out.
pub fn lambda_from_count(b: &BigUint, v: u64, k: u64, t: u64) -> Result<BigUint> {
    let num = b * binomial(k, t);
    let den = binomial(v, t);
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::NonIntegerLambda {
            b: b.to_string(),
            v,
            k,
            t,
        });
    }
    Ok(num / den)
}

/// Number of weight-4 blocks, 2^(m-1) (2^m - 1) / 6, valid for all even m
/// with gcd(m, e) = 2 (equal to the A_4 formula 2^m (2^m - 1) / 12).
pub fn steiner_block_count(m: u32) -> Result<BigUint> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::HypothesisNotMet(format!(
            "Steiner block count needs even m >= 4, got m={m}"
        )));
    }
    exact_div(
        pow2(m - 1) * (pow2(m) - BigUint::one()),
        &BigUint::from(6u32),
        "Steiner block count",
    )
}

/// Row-reduced m x m GF(2) system with the elimination transform recorded,
/// so one factorization serves many right-hand sides.
struct AffineSolver {
    m: usize,
    rank: usize,
    trans: Vec<u32>,  // reduced = trans * original right-hand side
    pivots: Vec<u32>, // pivot column of each rank row
    kernel: Vec<u32>, // basis of the homogeneous solutions
}

impl AffineSolver {
    /// Builds the solver from the matrix columns (column j = image of the
    /// j-th basis vector).
    fn new(m: usize, cols: &[u32]) -> AffineSolver {
        let mut rows = vec![0u32; m];
        for (j, &col) in cols.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= ((col >> i) & 1) << j;
            }
        }
        let mut trans: Vec<u32> = (0..m).map(|i| 1u32 << i).collect();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m {
            let Some(p) = (rank..m).find(|&i| (rows[i] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            trans.swap(rank, p);
            for i in 0..m {
                if i != rank && (rows[i] >> col) & 1 == 1 {
                    rows[i] ^= rows[rank];
                    trans[i] ^= trans[rank];
                }
            }
            pivots.push(col as u32);
            rank += 1;
        }
        let pivot_set: u32 = pivots.iter().fold(0, |acc, &c| acc | (1 << c));
        let mut kernel = Vec::new();
        for f in 0..m as u32 {
            if (pivot_set >> f) & 1 == 1 {
                continue;
            }
            let mut v = 1u32 << f;
            for (i, &p) in pivots.iter().enumerate() {
                if (rows[i] >> f) & 1 == 1 {
                    v |= 1 << p;
                }
            }
            kernel.push(v);
        }
        AffineSolver {
            m,
            rank,
            trans,
            pivots,
            kernel,
        }
    }

    /// Particular solution with free variables zero, or None when the
    /// system is inconsistent for this right-hand side.
    fn solve(&self, rhs: u32) -> Option<u32> {
        let mut c0 = 0u32;
        for i in 0..self.m {
            let bit = (self.trans[i] & rhs).count_ones() & 1;
            if i < self.rank {
                c0 |= bit << self.pivots[i];
            } else if bit == 1 {
                return None;
            }
        }
        Some(c0)
    }
}

fn check_weight4_hypothesis(m: u32, e: u32) -> Result<()> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::HypothesisNotMet(format!(
            "weight-4 extraction needs even m >= 4, got m={m}"
        )));
    }
    if e < 2 || 2 * e > m {
        return Err(Error::ExponentOutOfRange { m, e });
    }
    if gcd(m, e) != 2 {
        return Err(Error::HypothesisNotMet(format!(
            "weight-4 extraction needs gcd(m,e) = 2, got gcd({m},{e}) = {}",
            gcd(m, e)
        )));
    }
    Ok(())
}

/// All sorted weight-4 blocks whose two smallest points differ by `s`.
fn weight4_blocks_for_s(
    ctx: &FieldCtx,
    e: u32,
    powu: &[FieldElement],
    s: FieldElement,
) -> Result<Vec<[u32; 4]>> {
    let m = ctx.m() as usize;
    let s2e = ctx.frob_pow(s, e);
    let cols: Vec<u32> = (0..m)
        .map(|j| {
            let basis = 1u32 << j;
            ctx.mul(s2e, basis) ^ ctx.mul(s, ctx.frob_pow(basis, e))
        })
        .collect();
    let solver = AffineSolver::new(m, &cols);
    let expected_kernel = gcd(ctx.m(), e) as usize;
    if solver.kernel.len() != expected_kernel {
        return Err(Error::Inconsistency(format!(
            "kernel of the s={s:#x} system has dimension {}, expected {expected_kernel}",
            solver.kernel.len()
        )));
    }
    let mut out = Vec::new();
    for a in 0..ctx.size() {
        let b = a ^ s;
        if a >= b {
            continue;
        }
        let rhs = powu[a as usize] ^ powu[b as usize] ^ powu[s as usize];
        let Some(c0) = solver.solve(rhs) else {
            continue;
        };
        for mask in 0..1u32 << solver.kernel.len() {
            let mut c = c0;
            for (i, &kv) in solver.kernel.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    c ^= kv;
                }
            }
            let d = c ^ s;
            if c >= d || c == a || c == b {
                continue;
            }
            let mut blk = [a, b, c, d];
            blk.sort_unstable();
            // Keep the block only where (a, b) are its two smallest points;
            // every other generating pair rediscovers the same block.
            if blk[0] == a && blk[1] == b {
                out.push(blk);
            }
        }
    }
    Ok(out)
}

fn finish_weight4(ctx: &FieldCtx, quads: Vec<[u32; 4]>) -> Result<Design> {
    let m = ctx.m();
    let mut quads = quads;
    quads.sort_unstable();
    if quads.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Inconsistency(
            "duplicate weight-4 block escaped deduplication".to_string(),
        ));
    }
    let expected = steiner_block_count(m)?;
    if BigUint::from(quads.len()) != expected {
        return Err(Error::CountMismatch {
            what: format!("weight-4 block count at m={m}"),
            expected: expected.to_string(),
            got: quads.len().to_string(),
        });
    }
    let v = 1usize << m;
    let lambda = lambda_from_count(&BigUint::from(quads.len()), v as u64, 4, 2)?;
    let mut points = Vec::with_capacity(quads.len() * 4);
    for q in &quads {
        points.extend_from_slice(q);
    }
    Ok(Design::from_flat(v, 4, 2, lambda, points))
}

fn powu_table(ctx: &FieldCtx, e: u32) -> Vec<FieldElement> {
    // x^(1+2^e) = x * x^(2^e)
    (0..ctx.size())
        .map(|x| ctx.mul(x, ctx.frob_pow(x, e)))
        .collect()
}

/// Algebraic weight-4 block extraction (single-threaded): one linear solve
/// per point pair, grouped by pair difference.
pub fn extract_weight4_blocks_seq(ctx: &FieldCtx, e: u32) -> Result<Design> {
    check_weight4_hypothesis(ctx.m(), e)?;
    let powu = powu_table(ctx, e);
    let mut quads = Vec::new();
    for s in 1..ctx.size() {
        quads.extend(weight4_blocks_for_s(ctx, e, &powu, s)?);
    }
    finish_weight4(ctx, quads)
}

/// Algebraic weight-4 block extraction, sharded over pair differences.
#[cfg(feature = "parallel")]
pub fn extract_weight4_blocks_par(ctx: &FieldCtx, e: u32) -> Result<Design> {
    use rayon::prelude::*;
    check_weight4_hypothesis(ctx.m(), e)?;
    let powu = powu_table(ctx, e);
    let per_s: Vec<Vec<[u32; 4]>> = (1..ctx.size())
        .into_par_iter()
        .map(|s| weight4_blocks_for_s(ctx, e, &powu, s))
        .collect::<Result<_>>()?;
    finish_weight4(ctx, per_s.into_iter().flatten().collect())
}

/// Algebraic weight-4 block extraction; parallel when the feature is on.
pub fn extract_weight4_blocks(ctx: &FieldCtx, e: u32) -> Result<Design> {
    #[cfg(feature = "parallel")]
    {
        extract_weight4_blocks_par(ctx, e)
    }
    #[cfg(not(feature = "parallel"))]
    {
        extract_weight4_blocks_seq(ctx, e)
    }
}

/// Supports of the weight-k codewords in one Gray-code shard, as sorted
/// point tuples (positions mapped through the coordinate labelling when the
/// code has one).
fn gray_supports(
    length: usize,
    rows: &[BitVec],
    lo: u64,
    hi: u64,
    k: usize,
    map: Option<&[FieldElement]>,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut word = BitVec::zeros(length);
    let start = lo ^ (lo >> 1);
    for (j, row) in rows.iter().enumerate() {
        if (start >> j) & 1 == 1 {
            word.xor_assign(row);
        }
    }
    let mut i = lo;
    loop {
        if word.weight() == k {
            let mut sup: Vec<u32> = word
                .iter_ones()
                .map(|p| map.map_or(p as u32, |mm| mm[p]))
                .collect();
            sup.sort_unstable();
            out.push(sup);
        }
        i += 1;
        if i == hi {
            break;
        }
        word.xor_assign(&rows[i.trailing_zeros() as usize]);
    }
    out
}

fn finish_enumerated(code: &LinearCode, k: usize, mut blocks: Vec<Vec<u32>>) -> Result<Design> {
    blocks.sort_unstable();
    if blocks.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Inconsistency(
            "two distinct codewords share a support".to_string(),
        ));
    }
    let v = code.length();
    let lambda = if blocks.is_empty() {
        BigUint::zero()
    } else {
        lambda_from_count(&BigUint::from(blocks.len()), v as u64, k as u64, 2)?
    };
    let mut points = Vec::with_capacity(blocks.len() * k);
    for b in &blocks {
        points.extend_from_slice(b);
    }
    Ok(Design::from_flat(v, k, 2, lambda, points))
}

fn check_enum_guard(code: &LinearCode, k: usize, guard: usize) -> Result<()> {
    let dim = code.dimension();
    let guard = guard.min(63);
    if dim > guard {
        return Err(Error::GuardExceeded { dim, guard });
    }
    if k == 0 || k > code.length() {
        return Err(Error::HypothesisNotMet(format!(
            "block size k={k} out of range for length {}",
            code.length()
        )));
    }
    Ok(())
}

/// Collects the supports of all weight-k codewords by full enumeration,
/// single-threaded.
pub fn extract_blocks_by_enumeration_seq(
    code: &LinearCode,
    k: usize,
    guard: usize,
) -> Result<Design> {
    check_enum_guard(code, k, guard)?;
    let blocks = gray_supports(
        code.length(),
        code.generator_rows(),
        0,
        1u64 << code.dimension(),
        k,
        code.coordinate_map(),
    );
    finish_enumerated(code, k, blocks)
}

/// Collects the supports of all weight-k codewords by sharded enumeration.
#[cfg(feature = "parallel")]
pub fn extract_blocks_by_enumeration_par(
    code: &LinearCode,
    k: usize,
    guard: usize,
) -> Result<Design> {
    use rayon::prelude::*;
    check_enum_guard(code, k, guard)?;
    let dim = code.dimension();
    let shards = (4 * rayon::current_num_threads()).next_power_of_two();
    let p = shards.trailing_zeros().min(dim as u32);
    let step = 1u64 << (dim as u32 - p);
    let length = code.length();
    let rows = code.generator_rows();
    let map = code.coordinate_map();
    let per_shard: Vec<Vec<Vec<u32>>> = (0..1u64 << p)
        .into_par_iter()
        .map(|s| gray_supports(length, rows, s * step, (s + 1) * step, k, map))
        .collect();
    finish_enumerated(code, k, per_shard.into_iter().flatten().collect())
}

/// Supports of all weight-k codewords; parallel when the feature is on.
pub fn extract_blocks_by_enumeration(code: &LinearCode, k: usize, guard: usize) -> Result<Design> {
    #[cfg(feature = "parallel")]
    {
        extract_blocks_by_enumeration_par(code, k, guard)
    }
    #[cfg(not(feature = "parallel"))]
    {
        extract_blocks_by_enumeration_seq(code, k, guard)
    }
}

/// Outcome of exact pair-coverage counting over a design's blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairCoverage {
    /// Every point pair lies in exactly this many blocks.
    Uniform(u64),
    /// Coverage is not uniform: a finding, not a crash. Carries up to ten
    /// offending pairs as (point, point, count).
    Irregular {
        expected: u64,
        sample: Vec<(u32, u32, u64)>,
    },
}

#[inline]
fn tri_index(p: usize, q: usize) -> usize {
    debug_assert!(p < q);
    q * (q - 1) / 2 + p
}

fn coverage_verdict(v: usize, counters: &[u32]) -> PairCoverage {
    let expected = counters[0] as u64;
    let mut sample = Vec::new();
    'outer: for q in 1..v {
        for p in 0..q {
            let c = counters[tri_index(p, q)] as u64;
            if c != expected {
                sample.push((p as u32, q as u32, c));
                if sample.len() == 10 {
                    break 'outer;
                }
            }
        }
    }
    if sample.is_empty() {
        PairCoverage::Uniform(expected)
    } else {
        PairCoverage::Irregular { expected, sample }
    }
}

fn check_coverage_pre(design: &Design) -> Result<()> {
    if design.block_count() == 0 {
        return Err(Error::HypothesisNotMet(
            "pair coverage needs at least one block".to_string(),
        ));
    }
    if design.k() < 2 || design.v() < 2 {
        return Err(Error::HypothesisNotMet(
            "pair coverage needs k >= 2 and v >= 2".to_string(),
        ));
    }
    Ok(())
}

/// Strength-2 verification by exhaustive pair counting over a flat
/// triangular counter array, single-threaded.
pub fn verify_design_seq(design: &Design) -> Result<PairCoverage> {
    check_coverage_pre(design)?;
    let v = design.v();
    let mut counters = vec![0u32; v * (v - 1) / 2];
    for blk in design.blocks() {
        for (i, &p) in blk.iter().enumerate() {
            for &q in &blk[i + 1..] {
                counters[tri_index(p as usize, q as usize)] += 1;
            }
        }
    }
    Ok(coverage_verdict(v, &counters))
}

/// Strength-2 verification sharded over block ranges; increments land in a
/// shared atomic counter array.
#[cfg(feature = "parallel")]
pub fn verify_design_par(design: &Design) -> Result<PairCoverage> {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicU32, Ordering};
    check_coverage_pre(design)?;
    let v = design.v();
    let counters: Vec<AtomicU32> = (0..v * (v - 1) / 2).map(|_| AtomicU32::new(0)).collect();
    let k = design.k();
    let blocks_per_chunk = 4096usize;
    design
        .points
        .par_chunks(k * blocks_per_chunk)
        .for_each(|chunk| {
            for blk in chunk.chunks_exact(k) {
                for (i, &p) in blk.iter().enumerate() {
                    for &q in &blk[i + 1..] {
                        counters[tri_index(p as usize, q as usize)].fetch_add(1, Ordering::Relaxed);
                    }
                }
            }
        });
    let counters: Vec<u32> = counters.into_iter().map(|a| a.into_inner()).collect();
    Ok(coverage_verdict(v, &counters))
}

/// Strength-2 verification by exact pair counting; parallel when the
/// feature is on.
pub fn verify_design(design: &Design) -> Result<PairCoverage> {
    #[cfg(feature = "parallel")]
    {
        verify_design_par(design)
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_design_seq(design)
    }
}

/// Parameters (t, v, k, lambda) of one 2-design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub t: u64,
    pub v: u64,
    pub k: u64,
    pub lambda: BigUint,
}

/// The (k, lambda) rows of the dual-code designs for (m, e), by the case
/// formulas, each cross-checked against the counting identity applied to
/// the closed-form dual counts.
pub fn dual_design_params(m: u32, e: u32) -> Result<Vec<DesignParams>> {
    let (case, wd) = closed_form_dual_wd(m, e)?;
    let v = 1u64 << m;
    let half = 1u64 << (m - 1);
    let one = BigUint::one();
    let rows: Vec<(u64, BigUint)> = match case.tag {
        CaseTag::A => {
            let h = case.h.expect("case a carries h");
            let dev = 1u64 << (m - 1 - h);
            let lam = |plus: bool| {
                let f = if plus {
                    pow2(2 * h - 1) + pow2(h - 1)
                } else {
                    pow2(2 * h - 1) - pow2(h - 1)
                };
                let kk = if plus { half + dev } else { half - dev };
                f * BigUint::from(kk - 1)
            };
            vec![
                (half - dev, lam(false)),
                (half, (pow2(m - 1) - &one) * (pow2(m) - pow2(2 * h) + &one)),
                (half + dev, lam(true)),
            ]
        }
        CaseTag::B => {
            let dev = 1u64 << ((m - 2) / 2);
            let lam = |plus: bool| {
                let f = if plus {
                    pow2((m - 2) / 2) + &one
                } else {
                    pow2((m - 2) / 2) - &one
                };
                pow2((m - 2) / 2) * (pow2(m / 2) - &one) * f
            };
            vec![
                (half - dev, lam(false)),
                (half, pow2(m - 1) - &one),
                (half + dev, lam(true)),
            ]
        }
        CaseTag::C | CaseTag::C4 => {
            let ell = case.ell.expect("case c carries ell");
            let d_out = 1u64 << ((m + ell - 2) / 2);
            let d_in = 1u64 << ((m - 2) / 2);
            let den_small = pow2(ell / 2) + &one;
            let den_big = pow2(ell) * &den_small;
            let outer = |plus: bool| -> Result<BigUint> {
                let kk = if plus { half + d_out } else { half - d_out };
                exact_div(
                    BigUint::from(kk) * BigUint::from(kk - 1),
                    &den_big,
                    "outer dual design lambda",
                )
            };
            let inner = |plus: bool| -> Result<BigUint> {
                let kk = if plus { half + d_in } else { half - d_in };
                let f = if plus {
                    pow2(m / 2) + &one
                } else {
                    pow2(m / 2) - &one
                };
                exact_div(
                    pow2((m + ell - 2) / 2) * f * BigUint::from(kk - 1),
                    &den_small,
                    "inner dual design lambda",
                )
            };
            let center = ((pow2(ell / 2) - &one) * pow2(m - ell) + &one) * (pow2(m - 1) - &one);
            vec![
                (half - d_out, outer(false)?),
                (half - d_in, inner(false)?),
                (half, center),
                (half + d_in, inner(true)?),
                (half + d_out, outer(true)?),
            ]
        }
    };
    let mut params = Vec::with_capacity(rows.len());
    for (k, lambda) in rows {
        // Cross-check: the same lambda must fall out of b C(k,2) = λ C(v,2)
        // applied to the table count.
        let from_count = lambda_from_count(&wd.count(k as usize), v, k, 2)?;
        if from_count != lambda {
            return Err(Error::Inconsistency(format!(
                "dual design lambda at m={m}, e={e}, k={k}: formula {lambda} vs counting {from_count}"
            )));
        }
        params.push(DesignParams { t: 2, v, k, lambda });
    }
    Ok(params)
}

fn check_wt_hypothesis(m: u32, what: &str) -> Result<()> {
    if m < 4 || m % 2 != 0 {
        return Err(Error::HypothesisNotMet(format!(
            "{what} needs even m >= 4, got m={m}"
        )));
    }
    Ok(())
}

/// Index of the weight-6 support design, (2^(2m-3) + 2^m + 12) / 3.
/// Stated for m ≡ 0 (mod 4); other even m evaluate as flagged extrapolation.
pub fn wt6_lambda(m: u32) -> Result<BigUint> {
    check_wt_hypothesis(m, "weight-6 design lambda")?;
    exact_div(
        pow2(2 * m - 3) + pow2(m) + BigUint::from(12u32),
        &BigUint::from(3u32),
        "weight-6 design lambda",
    )
}

/// Index of the weight-8 support design,
/// (2^(4m-4) - 27 2^(3m-4) + 23 2^(2m-1) + 261 2^(m-2) + 403) / 45.
/// Stated for m ≡ 0 (mod 4); the division is not exact elsewhere.
pub fn wt8_lambda(m: u32) -> Result<BigUint> {
    check_wt_hypothesis(m, "weight-8 design lambda")?;
    use num_bigint::BigInt;
    let bracket = BigInt::from(pow2(4 * m - 4)) - BigInt::from(27) * BigInt::from(pow2(3 * m - 4))
        + BigInt::from(23) * BigInt::from(pow2(2 * m - 1))
        + BigInt::from(261) * BigInt::from(pow2(m - 2))
        + BigInt::from(403);
    let bracket = bracket
        .to_biguint()
        .ok_or_else(|| Error::Inconsistency("negative weight-8 bracket".to_string()))?;
    let res = exact_div(bracket, &BigUint::from(45u32), "weight-8 design lambda");
    if m % 4 != 0 {
        return res.map_err(|err| {
            Error::HypothesisNotMet(format!(
                "formula does not extrapolate to m={m} ≡ 2 (mod 4): {err}"
            ))
        });
    }
    res
}

/// The Assmus–Mattson condition report for strength t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmReport {
    pub w: usize,
    pub w_dual: usize,
    /// Number of nonzero dual weights i with 1 <= i <= v - t.
    pub s: usize,
    /// Whether s <= d - t.
    pub holds: bool,
}

/// Largest w <= v with w - floor((w + q - 2)/(q - 1)) < d, computed
/// literally at q = 2 (where the condition is vacuous and w = v).
fn am_largest_w(v: usize, d: usize) -> usize {
    let q = 2usize;
    (0..=v)
        .rev()
        .find(|&w| w - (w + q - 2) / (q - 1) < d)
        .unwrap_or(0)
}

/// Evaluates the Assmus–Mattson sufficient condition. This is a checker
/// only: the designs in this crate come from the doubly transitive affine
/// group, not from this criterion.
pub fn am_check(
    wd: &WeightDistribution,
    wd_dual: &WeightDistribution,
    d: usize,
    d_dual: usize,
    t: usize,
) -> AmReport {
    debug_assert_eq!(wd.length(), wd_dual.length());
    let v = wd.length();
    let s = wd_dual
        .counts()
        .keys()
        .filter(|&&i| i >= 1 && i <= v - t)
        .count();
    AmReport {
        w: am_largest_w(v, d),
        w_dual: am_largest_w(v, d_dual),
        s,
        holds: s as i64 <= d as i64 - t as i64,
    }
}

/// Writes the block file: a header line
/// `v=<v> k=<k> b=<b> t=<t> lambda=<λ> m=<m> e=<e>`, then one block per
/// line as space-separated hex point encodings, blocks sorted.
pub fn write_block_file<W: Write>(
    design: &Design,
    m: u32,
    e: u32,
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(
        out,
        "v={} k={} b={} t={} lambda={} m={} e={}",
        design.v(),
        design.k(),
        design.block_count(),
        design.t(),
        design.lambda(),
        m,
        e
    )?;
    let mut line = String::new();
    for blk in design.blocks() {
        line.clear();
        for (i, p) in blk.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{p:x}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Parses a block file written by `write_block_file`.
pub fn read_block_file<R: BufRead>(input: R) -> Result<(Design, u32, u32)> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty block file".to_string()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    let mut fields: BTreeMap<String, String> = BTreeMap::new();
    for part in header.split_whitespace() {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad header field {part:?}")))?;
        fields.insert(key.to_string(), value.to_string());
    }
    let get = |key: &str| -> Result<String> {
        fields
            .get(key)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("missing header field {key}")))
    };
    let parse_usize = |key: &str| -> Result<usize> {
        get(key)?
            .parse()
            .map_err(|_| Error::Parse(format!("non-integer header field {key}")))
    };
    let v = parse_usize("v")?;
    let k = parse_usize("k")?;
    let b = parse_usize("b")?;
    let t = parse_usize("t")?;
    let lambda: BigUint = get("lambda")?
        .parse()
        .map_err(|_| Error::Parse("bad lambda".to_string()))?;
    let m = parse_usize("m")? as u32;
    let e = parse_usize("e")? as u32;
    let mut blocks = Vec::with_capacity(b);
    for line in lines {
        let line = line.map_err(|err| Error::Parse(err.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let blk: Vec<u32> = line
            .split_whitespace()
            .map(|tok| u32::from_str_radix(tok, 16))
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad block line {line:?}")))?;
        blocks.push(blk);
    }
    if blocks.len() != b {
        return Err(Error::Parse(format!(
            "header promises {b} blocks, file has {}",
            blocks.len()
        )));
    }
    let design = Design::new(v, k, t, lambda, blocks)?;
    Ok((design, m, e))
}

/// JSON mirror of the block file.
pub fn design_to_json(design: &Design, m: u32, e: u32) -> serde_json::Value {
    let blocks: Vec<serde_json::Value> = design
        .blocks()
        .map(|blk| {
            json!(blk
                .iter()
                .map(|p| format!("{p:x}"))
                .collect::<Vec<String>>())
        })
        .collect();
    json!({
        "v": design.v(),
        "k": design.k(),
        "b": design.block_count(),
        "t": design.t(),
        "lambda": design.lambda().to_string(),
        "m": m,
        "e": e,
        "blocks": blocks,
    })
}
