//! Threshold sets: enumeration of `HT_1` and `HT_2`, seeded samples of toric
//! thresholds, density scans, the `c + 1/m` accumulation family, the
//! Egyptian-fraction gap search, and the Sylvester sequence.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lct::{lct_direct_sum, lct_newton};
use crate::poly::{ExponentVector, Poly, ThresholdValue};
use crate::rat::Rat;

/// Largest accepted `HT_2` parameter bound; memory grows like `B^3`.
pub const DEFAULT_HT2_BOUND_CAP: u64 = 400;
/// Largest dimension accepted by [`gap_search`].
pub const DEFAULT_GAP_DIM_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum Provenance {
    Ht1 { k: u64 },
    Ht2 {
        bound: u64,
        /// Parameter tuples meeting the side condition with positive denominator.
        tuples: u64,
        /// Tuples meeting the side condition whose denominator vanishes.
        skipped: u64,
    },
    Toric {
        n: usize,
        degree: u32,
        count: usize,
        seed: u64,
        /// Sampled supports containing the origin (threshold infinite).
        infinite: usize,
    },
    External { source: String },
}

/// A sorted, duplicate-free finite piece of some `HT_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdSetSample {
    pub dim: usize,
    pub values: Vec<Rat>,
    pub provenance: Provenance,
}

impl ThresholdSetSample {
    /// Sorts and deduplicates `values`.
    pub fn new(dim: usize, mut values: Vec<Rat>, provenance: Provenance) -> Self {
        values.sort_unstable();
        values.dedup();
        ThresholdSetSample {
            dim,
            values,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, r: &Rat) -> bool {
        self.values.binary_search(r).is_ok()
    }

    /// Elements strictly between `lo` and `hi`.
    pub fn between(&self, lo: &Rat, hi: &Rat) -> &[Rat] {
        let start = self.values.partition_point(|v| v <= lo);
        let end = self.values.partition_point(|v| v < hi);
        &self.values[start..end.max(start)]
    }
}

/// `{0} ∪ {1/k : 1 <= k <= K}`.
pub fn ht1(k: u64) -> Result<ThresholdSetSample> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let mut values: Vec<Rat> = (1..=k).rev().map(|i| Rat::from(i).recip()).collect();
    values.insert(0, Rat::zero());
    Ok(ThresholdSetSample {
        dim: 1,
        values,
        provenance: Provenance::Ht1 { k },
    })
}

/// Value of `(c1 + c2) / (c1 c2 + a1 c2 + a2 c1)` if the side conditions
/// `a_i + c_i >= max(2, a_{3-i})` hold, as an unreduced pair.
pub fn ht2_value(a1: u64, a2: u64, c1: u64, c2: u64) -> Option<(u64, u64)> {
    if a1 + c1 < 2.max(a2) || a2 + c2 < 2.max(a1) {
        return None;
    }
    Some((c1 + c2, c1 * c2 + a1 * c2 + a2 * c1))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All values of the two-variable parametrization with parameters in
/// `[0, B]`, plus 0.
pub fn ht2_enumerate(bound: u64) -> Result<ThresholdSetSample> {
    ht2_enumerate_capped(bound, DEFAULT_HT2_BOUND_CAP)
}

pub fn ht2_enumerate_capped(bound: u64, cap: u64) -> Result<ThresholdSetSample> {
    if bound < 2 {
        return Err(Error::InvalidArgument("B must be at least 2".into()));
    }
    if bound > cap {
        return Err(Error::ResourceCap {
            what: "HT2 parameter bound",
            value: bound,
            cap,
        });
    }
    let b = bound;
    debug_assert!(3 * b * b < u32::MAX as u64);
    // Reduced values p/q satisfy p <= 2B and q <= 3B^2: one bit per pair.
    let max_p = 2 * b;
    let max_q = 3 * b * b;
    let stride = max_q + 1;
    let mut seen = vec![0u64; ((max_p + 1) * stride).div_ceil(64) as usize];
    let (mut tuples, mut skipped) = (0u64, 0u64);

    // The value and the side conditions are symmetric under
    // (a1, c1) <-> (a2, c2); visit each orbit once.
    // (gcd, reduced numerator) indexed by den mod num.
    let mut gcd_row: Vec<(u32, u64)> = Vec::with_capacity(2 * b as usize + 1);
    for c1 in 0..=b {
        for c2 in c1..=b {
            let num = c1 + c2;
            // gcd(num, den) depends only on den mod num.
            gcd_row.clear();
            gcd_row.extend((0..num.max(1)).map(|r| {
                let g = gcd_u64(num, r).max(1);
                (g as u32, num / g)
            }));
            let step = if num == 0 { 0 } else { c1 % num };
            for a1 in 0..=b {
                if a1 + c1 < 2 {
                    continue;
                }
                // a2 <= a1 + c1 and a2 + c2 >= max(2, a1).
                let lo = 2u64.max(a1).saturating_sub(c2);
                let lo = if c1 == c2 { lo.max(a1) } else { lo };
                let hi = b.min(a1 + c1);
                if lo > hi {
                    continue;
                }
                let mut den = c1 * c2 + a1 * c2 + lo * c1;
                let mut rem = if num == 0 { 0 } else { den % num };
                for a2 in lo..=hi {
                    let weight = if c1 == c2 && a1 == a2 { 1 } else { 2 };
                    if den == 0 {
                        skipped += weight;
                    } else {
                        tuples += weight;
                        let (g, p) = gcd_row[rem as usize];
                        // den <= 3B^2 fits in u32 under the bound cap.
                        let idx = p * stride + (den as u32 / g) as u64;
                        seen[(idx / 64) as usize] |= 1 << (idx % 64);
                    }
                    den += c1;
                    rem += step;
                    if rem >= num {
                        rem -= num;
                    }
                }
            }
        }
    }

    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (w, &word) in seen.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let idx = w as u64 * 64 + bits.trailing_zeros() as u64;
            pairs.push((idx / stride, idx % stride));
            bits &= bits - 1;
        }
    }
    pairs.sort_unstable_by(|x, y| (x.0 as u128 * y.1 as u128).cmp(&(y.0 as u128 * x.1 as u128)));
    let mut values = Vec::with_capacity(pairs.len() + 1);
    values.push(Rat::zero());
    values.extend(pairs.into_iter().map(|(p, q)| Rat::from_coprime(p as i64, q as i64)));
    Ok(ThresholdSetSample {
        dim: 2,
        values,
        provenance: Provenance::Ht2 {
            bound,
            tuples,
            skipped,
        },
    })
}

/// Newton thresholds of `count` seeded random supports in `n` variables with
/// exponents at most `degree`, coefficients taken generic.
pub fn toric_sample(n: usize, degree: u32, count: usize, seed: u64) -> Result<ThresholdSetSample> {
    if n == 0 || degree == 0 {
        return Err(Error::InvalidArgument("n and D must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(count);
    let mut infinite = 0;
    for _ in 0..count {
        let support = random_support(&mut rng, n, degree, n + 2);
        let f = Poly::from_support(n, support)?;
        match lct_newton(&f).value {
            ThresholdValue::Finite(v) => values.push(v),
            _ => infinite += 1,
        }
    }
    Ok(ThresholdSetSample::new(
        n,
        values,
        Provenance::Toric {
            n,
            degree,
            count,
            seed,
            infinite,
        },
    ))
}

/// Between 1 and `max_points` exponent vectors, entries uniform in
/// `[0, degree]`. May contain the origin.
pub fn random_support<R: Rng>(
    rng: &mut R,
    n: usize,
    degree: u32,
    max_points: usize,
) -> Vec<ExponentVector> {
    let k = rng.gen_range(1..=max_points.max(1));
    let mut pts: Vec<ExponentVector> = (0..k)
        .map(|_| ExponentVector::new((0..n).map(|_| rng.gen_range(0..=degree)).collect()))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// A run of sample elements lying within one window of width `<= δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub count: usize,
}

impl DenseInterval {
    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }
}

/// Left-to-right sweep for windows `[s_i, s_j]` of width `<= δ` holding at
/// least `k` elements. Each reported window extends as far right as the
/// width allows; the sweep resumes after it, so windows are disjoint.
pub fn accumulation_scan(
    sample: &ThresholdSetSample,
    delta: &Rat,
    k: usize,
) -> Result<Vec<DenseInterval>> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("δ must be positive".into()));
    }
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    let s = &sample.values;
    let mut out = Vec::new();
    let mut i = 0;
    let mut j = 0;
    while i < s.len() {
        j = j.max(i);
        let limit = &s[i] + delta;
        while j + 1 < s.len() && s[j + 1] <= limit {
            j += 1;
        }
        if j + 1 - i >= k {
            out.push(DenseInterval {
                lo: s[i].clone(),
                hi: s[j].clone(),
                count: j + 1 - i,
            });
            i = j + 1;
        } else {
            i += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub base: Rat,
    /// First `m` with `c + 1/m < 1` strictly, plus one.
    pub first_m: u64,
    pub max_m: u64,
    /// `lct(f ⊕ y^m)` for `m = first_m..=max_m`.
    pub values: Vec<Rat>,
    /// `max_m < first_m`: nothing to check.
    pub empty: bool,
    pub passed: bool,
}

/// Checks that `c ⊕ 1/m = c + 1/m` exactly for `m` in `[⌈1/(1-c)⌉ + 1, M]`
/// and that these values decrease strictly towards `c` from above.
pub fn family_limit_check(c: &ThresholdValue, max_m: u64) -> Result<FamilyRecord> {
    let base = match c {
        ThresholdValue::Finite(v) if !v.is_one() => v.clone(),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "family check needs a finite threshold below 1, got {c}"
            )))
        }
    };
    let first = (Rat::one() - &base).recip().ceil() + 1u32;
    let first_m: u64 = first.try_into().map_err(|_| Error::ResourceCap {
        what: "family start index",
        value: u64::MAX,
        cap: u64::MAX,
    })?;
    let mut values = Vec::new();
    let mut passed = true;
    for m in first_m..=max_m {
        let step = Rat::from(m).recip();
        let expected = &base + &step;
        let got = lct_direct_sum(c, &ThresholdValue::Finite(step));
        let ok = got == ThresholdValue::Finite(expected.clone())
            && expected > base
            && values.last().is_none_or(|prev: &Rat| &expected < prev);
        passed &= ok;
        values.push(expected);
    }
    Ok(FamilyRecord {
        base,
        first_m,
        max_m,
        empty: values.is_empty(),
        values,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapResult {
    pub n: usize,
    /// Largest `Σ 1/a_i < 1` over `n` positive integers.
    pub max: Rat,
    /// Nondecreasing `a_1 <= … <= a_n` attaining it.
    pub witness: Vec<u64>,
    pub nodes: u64,
}

pub fn gap_search(n: usize) -> Result<GapResult> {
    gap_search_capped(n, DEFAULT_GAP_DIM_CAP)
}

/// Exhaustive branch-and-bound for the largest sum of `n` unit fractions
/// that stays below 1.
pub fn gap_search_capped(n: usize, cap: usize) -> Result<GapResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceCap {
            what: "gap search dimension",
            value: n as u64,
            cap: cap as u64,
        });
    }
    struct Search {
        n: usize,
        best: Option<(Rat, Vec<u64>)>,
        prefix: Vec<u64>,
        nodes: u64,
    }

    impl Search {
        fn descend(&mut self, sum: &Rat, min_a: u64) {
            self.nodes += 1;
            let depth = self.prefix.len();
            let remaining = (self.n - depth) as u64;
            let room = Rat::one() - sum;
            // 1/a < room  <=>  a > 1/room.
            let above: u64 = (room.recip().floor() + 1u32)
                .try_into()
                .expect("denominators fit in u64 below the dimension cap");
            let start = min_a.max(above);
            if remaining == 1 {
                // The largest admissible term is the smallest admissible a.
                let total = sum + &Rat::from(start).recip();
                if self.best.as_ref().is_none_or(|(b, _)| &total > b) {
                    let mut w = self.prefix.clone();
                    w.push(start);
                    self.best = Some((total, w));
                }
                return;
            }
            let mut a = start;
            loop {
                // All remaining terms are at most 1/a.
                if let Some((best, _)) = &self.best {
                    if sum + &(Rat::from(remaining) / Rat::from(a)) <= *best {
                        break;
                    }
                }
                self.prefix.push(a);
                self.descend(&(sum + &Rat::from(a).recip()), a);
                self.prefix.pop();
                a += 1;
            }
        }
    }

    let mut s = Search {
        n,
        best: None,
        prefix: Vec::with_capacity(n),
        nodes: 0,
    };
    s.descend(&Rat::zero(), 1);
    let (max, witness) = s.best.expect("search visits at least one leaf");
    Ok(GapResult {
        n,
        max,
        witness,
        nodes: s.nodes,
    })
}

/// `2, 3, 7, 43, …` with `c_{k+1} = c_1 ⋯ c_k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterSeq {
    pub terms: Vec<BigUint>,
}

impl SylvesterSeq {
    pub fn as_u64(&self) -> Option<Vec<u64>> {
        self.terms.iter().map(|t| t.try_into().ok()).collect()
    }
}

pub fn sylvester(k: usize) -> Result<SylvesterSeq> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut terms = Vec::with_capacity(k);
    let mut product = BigUint::one();
    for _ in 0..k {
        let next = &product + 1u32;
        product *= &next;
        terms.push(next);
    }
    Ok(SylvesterSeq { terms })
}

/// `1 / (c_{n+1} - 1)`.
pub fn epsilon_candidate(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let seq = sylvester(n + 1)?;
    let c = seq.terms[n].clone() - 1u32;
    Ok(Rat::from_bigints(1.into(), c.into()))
}
