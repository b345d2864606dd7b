#![allow(dead_code)]

use lct_core::{ExponentVector, Poly, Rat, ThresholdValue};
use rand::Rng;

/// Numeric value of a threshold with `Zero` as 0; panics on `Infinite`.
pub fn value(v: &ThresholdValue) -> Rat {
    match v {
        ThresholdValue::Zero => Rat::zero(),
        ThresholdValue::Finite(r) => r.clone(),
        ThresholdValue::Infinite => panic!("unexpected infinite threshold"),
    }
}

/// Random support avoiding the origin: 1 to `max_points` points in
/// `[0, degree]^n`, total degree at least 1.
pub fn support_without_origin<R: Rng>(
    rng: &mut R,
    n: usize,
    degree: u32,
    max_points: usize,
) -> Vec<ExponentVector> {
    loop {
        let s: Vec<ExponentVector> = lct_core::sets::random_support(rng, n, degree, max_points)
            .into_iter()
            .filter(|e| !e.is_zero())
            .collect();
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn generic(n: usize, support: &[ExponentVector]) -> Poly {
    Poly::from_support(n, support.iter().cloned()).unwrap()
}

/// Diagonal parameter by exhaustive search over integer normals with entries
/// in `[0, max_entry]`: `max_a min_v (a·v) / Σa`. Exact whenever every facet
/// normal of the polyhedron has entries at most `max_entry`.
pub fn brute_force_diagonal(support: &[ExponentVector], max_entry: u64) -> Rat {
    let n = support[0].dim();
    let mut best = Rat::zero();
    let mut a = vec![0u64; n];
    loop {
        // next normal in odometer order
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            a[i] += 1;
            if a[i] <= max_entry {
                break;
            }
            a[i] = 0;
            i += 1;
        }
        let sum: u64 = a.iter().sum();
        let d = support
            .iter()
            .map(|v| (0..n).map(|k| a[k] * v[k] as u64).sum::<u64>())
            .min()
            .unwrap();
        let ratio = Rat::new(d as i64, sum as i64);
        if ratio > best {
            best = ratio;
        }
    }
}
