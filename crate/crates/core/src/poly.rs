//! Exponent vectors, sparse polynomials over the rationals, and the
//! threshold value type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Exponents of a monomial `x1^e1 * ... * xn^en`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn scaled(&self, k: u32) -> Self {
        ExponentVector(self.0.iter().map(|e| e * k).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Sparse polynomial in `dim` variables with rational coefficients.
///
/// `generic_coefficients` records the caller's assertion that the
/// coefficients are general for the given support. It is never checked.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rat>,
    generic_coefficients: bool,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "polynomials need at least one variable");
        Poly {
            dim,
            terms: BTreeMap::new(),
            generic_coefficients: true,
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, adding
    /// coefficients of repeated exponents and dropping zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rat)>,
    {
        let mut p = Poly::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// All coefficients 1 on the given support.
    pub fn from_support<I>(dim: usize, support: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        Poly::from_terms(dim, support.into_iter().map(|e| (e, Rat::one())))
    }

    pub fn with_generic(mut self, generic: bool) -> Self {
        self.generic_coefficients = generic;
        self
    }

    fn add_term(&mut self, e: ExponentVector, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generic_coefficients(&self) -> bool {
        self.generic_coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&Rat> {
        self.terms.get(e)
    }

    /// Exponent vectors with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&ExponentVector::zero(self.dim))
    }

    /// Vanishing order at the origin; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::total_degree).min()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    /// Taylor polynomial of degree `m`: the terms of total degree `<= m`.
    pub fn truncate(&self, m: u64) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            generic_coefficients: self.generic_coefficients,
        }
    }

    /// `f(x) + g(y)` in `dim f + dim g` variables. The result is generic
    /// only if both summands are.
    pub fn direct_sum(&self, other: &Poly) -> Poly {
        let dim = self.dim + other.dim;
        let mut out = Poly::zero(dim);
        for (e, c) in &self.terms {
            let mut v = e.0.clone();
            v.resize(dim, 0);
            out.add_term(ExponentVector(v), c.clone());
        }
        for (e, c) in &other.terms {
            let mut v = vec![0; self.dim];
            v.extend_from_slice(&e.0);
            out.add_term(ExponentVector(v), c.clone());
        }
        out.generic_coefficients = self.generic_coefficients && other.generic_coefficients;
        out
    }

    /// Restriction to the coordinate subspace spanned by `keep`: terms
    /// involving a dropped variable vanish, survivors are re-indexed in the
    /// order given by `keep`.
    pub fn restrict_to_axes(&self, keep: &[usize]) -> Result<Poly> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument(
                "restriction needs at least one kept coordinate".into(),
            ));
        }
        let mut seen = vec![false; self.dim];
        for &k in keep {
            if k >= self.dim {
                return Err(Error::InvalidArgument(format!(
                    "coordinate index {k} out of range for {} variables",
                    self.dim
                )));
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate index {k} listed twice"
                )));
            }
        }
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| (0..self.dim).all(|i| seen[i] || e[i] == 0))
            .map(|(e, c)| (ExponentVector(keep.iter().map(|&k| e[k]).collect()), c.clone()));
        Ok(Poly {
            dim: keep.len(),
            terms: terms.collect(),
            generic_coefficients: self.generic_coefficients,
        })
    }

    fn var_name(&self, i: usize) -> String {
        if self.dim <= 4 {
            ["x", "y", "z", "w"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }
}

impl fmt::Display for Poly {
    /// Terms by descending total degree; the output parses back to the same
    /// polynomial given the dimension as a hint.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then(b.0.cmp(a.0)));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = (0..self.dim)
                .filter(|&i| e[i] > 0)
                .map(|i| match e[i] {
                    1 => self.var_name(i),
                    k => format!("{}^{}", self.var_name(i), k),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Log canonical threshold at the origin.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum ThresholdValue {
    /// The zero polynomial.
    Zero,
    /// A rational in `(0, 1]`.
    Finite(Rat),
    /// `f(0) != 0`.
    Infinite,
}

impl ThresholdValue {
    /// `Finite(min(1, r))` for `r > 0`.
    pub fn capped(r: Rat) -> Self {
        assert!(r.is_positive(), "threshold candidate {r} is not positive");
        if r > Rat::one() {
            ThresholdValue::Finite(Rat::one())
        } else {
            ThresholdValue::Finite(r)
        }
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ThresholdValue::Finite(r) => Some(r),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ThresholdValue::Zero => 0,
            ThresholdValue::Finite(_) => 1,
            ThresholdValue::Infinite => 2,
        }
    }
}

impl Ord for ThresholdValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ThresholdValue::Finite(a), ThresholdValue::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ThresholdValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ThresholdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdValue::Zero => write!(f, "0"),
            ThresholdValue::Finite(r) => write!(f, "{r}"),
            ThresholdValue::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for ThresholdValue {
    type Err = Error;

    /// `0`, `inf`, or a rational in `(0, 1]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinite") {
            return Ok(ThresholdValue::Infinite);
        }
        let r: Rat = s
            .parse()
            .map_err(|e| Error::InvalidArgument(format!("threshold `{s}`: {e}")))?;
        if r.is_zero() {
            Ok(ThresholdValue::Zero)
        } else if r.is_positive() && r <= Rat::one() {
            Ok(ThresholdValue::Finite(r))
        } else {
            Err(Error::InvalidArgument(format!(
                "threshold {r} lies outside (0, 1]"
            )))
        }
    }
}

/// `"0/1"`, `"p/q"`, or `"inf"`.
impl Serialize for ThresholdValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ThresholdValue::Zero => serializer.serialize_str("0/1"),
            ThresholdValue::Finite(r) => r.serialize(serializer),
            ThresholdValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev<const N: usize>(v: [u32; N]) -> ExponentVector {
        ExponentVector::from(v)
    }

    fn monic(dim: usize, exps: &[&[u32]]) -> Poly {
        Poly::from_support(dim, exps.iter().map(|e| ExponentVector::new(e.to_vec()))).unwrap()
    }

    fn figure() -> Poly {
        monic(2, &[&[0, 7], &[2, 3], &[5, 3], &[4, 1], &[6, 0]])
    }

    #[test]
    fn support_reads_terms() {
        let f = monic(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(f.support(), vec![ev([0, 3]), ev([2, 0])]);
        assert!(Poly::zero(3).support().is_empty());
        let mut s = figure().support();
        s.sort();
        let mut expect = vec![ev([0, 7]), ev([2, 3]), ev([5, 3]), ev([4, 1]), ev([6, 0])];
        expect.sort();
        assert_eq!(s, expect);
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = Poly::from_terms(
            1,
            [(ev([2]), Rat::one()), (ev([2]), -Rat::one()), (ev([3]), Rat::new(1, 2))],
        )
        .unwrap();
        assert_eq!(f.support(), vec![ev([3])]);
        assert!(Poly::from_terms(2, [(ev([1]), Rat::one())]).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(monic(2, &[&[2, 1], &[0, 4]]).order(), Some(3));
        assert_eq!(monic(1, &[&[0], &[1]]).order(), Some(0));
        assert_eq!(figure().order(), Some(5));
        assert_eq!(Poly::zero(2).order(), None);
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(figure().truncate(5), monic(2, &[&[2, 3], &[4, 1]]));
        assert_eq!(figure().truncate(8), figure());
        assert_eq!(figure().truncate(100), figure());
        let f = monic(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(f.truncate(2), monic(2, &[&[2, 0]]));
        let d = f.clone().with_generic(false);
        assert!(!d.truncate(1).generic_coefficients());
    }

    #[test]
    fn direct_sum_examples() {
        let f = monic(1, &[&[2]]);
        let g = monic(1, &[&[3]]);
        assert_eq!(f.direct_sum(&g), monic(2, &[&[2, 0], &[0, 3]]));
        let z = Poly::zero(2);
        assert_eq!(f.direct_sum(&z), monic(3, &[&[2, 0, 0]]));
        let h = figure().direct_sum(&monic(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(h.num_terms(), 7);
        assert_eq!(h.dim(), 4);
    }

    #[test]
    fn direct_sum_constants_collide() {
        let f = Poly::from_terms(1, [(ev([0]), Rat::one()), (ev([1]), Rat::one())]).unwrap();
        let g = Poly::from_terms(1, [(ev([0]), -Rat::one()), (ev([2]), Rat::one())]).unwrap();
        let s = f.direct_sum(&g);
        assert_eq!(s, monic(2, &[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn restrict_examples() {
        let f = monic(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(f.restrict_to_axes(&[0]).unwrap(), monic(1, &[&[2]]));
        let g = monic(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(g.restrict_to_axes(&[0, 1]).unwrap(), g);
        assert!(monic(2, &[&[1, 1]]).restrict_to_axes(&[0]).unwrap().is_zero());
        assert!(f.restrict_to_axes(&[]).is_err());
        assert!(f.restrict_to_axes(&[2]).is_err());
        assert!(f.restrict_to_axes(&[0, 0]).is_err());
    }

    #[test]
    fn display() {
        let f = Poly::from_terms(
            2,
            [
                (ev([2, 0]), Rat::new(-3, 2)),
                (ev([0, 0]), Rat::from_integer(4)),
                (ev([1, 1]), Rat::one()),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "-3/2*x^2 + x*y + 4");
        assert_eq!(Poly::zero(1).to_string(), "0");
        let g = monic(5, &[&[0, 0, 0, 0, 2]]);
        assert_eq!(g.to_string(), "x5^2");
    }

    #[test]
    fn threshold_ordering_and_parse() {
        use ThresholdValue::*;
        assert!(Zero < Finite(Rat::new(1, 9)));
        assert!(Finite(Rat::one()) < Infinite);
        assert_eq!("1/2".parse::<ThresholdValue>().unwrap(), Finite(Rat::new(1, 2)));
        assert_eq!("0".parse::<ThresholdValue>().unwrap(), Zero);
        assert_eq!("inf".parse::<ThresholdValue>().unwrap(), Infinite);
        assert!("3/2".parse::<ThresholdValue>().is_err());
        assert!("-1/2".parse::<ThresholdValue>().is_err());
        assert_eq!(ThresholdValue::capped(Rat::new(7, 6)), Finite(Rat::one()));
    }
}
