//! Log canonical thresholds at the origin from Newton polyhedra, closed
//! forms, and checks for the inequalities the threshold obeys.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::{self, Facet, DEFAULT_FACET_DIM_CAP};
use crate::poly::{ExponentVector, Poly, ThresholdValue};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Coefficients asserted general: the Newton value is the threshold.
    Exact,
    /// Only the Newton upper bound is known.
    UpperBound,
}

/// What decided the reported value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ZeroPolynomial,
    ConstantTerm,
    /// The diagonal meets this facet at `t*`; smallest normal among ties.
    Facet { facet: Facet, diagonal: Rat },
    /// Dimension above the facet cap: only the LP value is available.
    DiagonalLp { diagonal: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub value: ThresholdValue,
    pub exactness: Exactness,
    pub witness: Witness,
    /// `(1/mult, min(1, n/mult))` when `f != 0` and `f(0) = 0`.
    pub bounds: Option<(Rat, Rat)>,
}

impl ThresholdReport {
    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// Newton threshold `min(1, 1/t*)`, the uncapped `1/t*` alongside.
fn newton_value(support: &[ExponentVector]) -> Result<(ThresholdValue, Option<Rat>)> {
    if support.is_empty() {
        return Ok((ThresholdValue::Zero, None));
    }
    let t = hull::diagonal_parameter(support)?;
    if t.is_zero() {
        return Ok((ThresholdValue::Infinite, None));
    }
    let inv = t.recip();
    Ok((ThresholdValue::capped(inv.clone()), Some(inv)))
}

/// The Newton threshold of `f`, labelled exact under the generic-coefficient
/// assumption and an upper bound otherwise.
pub fn lct_newton(f: &Poly) -> ThresholdReport {
    let exactness = if f.generic_coefficients() {
        Exactness::Exact
    } else {
        Exactness::UpperBound
    };
    if f.is_zero() {
        return ThresholdReport {
            value: ThresholdValue::Zero,
            exactness,
            witness: Witness::ZeroPolynomial,
            bounds: None,
        };
    }
    if f.has_constant_term() {
        return ThresholdReport {
            value: ThresholdValue::Infinite,
            exactness,
            witness: Witness::ConstantTerm,
            bounds: None,
        };
    }
    let support = f.support();
    let t = hull::diagonal_parameter(&support).expect("nonempty support of consistent dimension");
    let value = ThresholdValue::capped(t.recip());
    let witness = if f.dim() <= DEFAULT_FACET_DIM_CAP {
        let facets = hull::facets(&support).expect("dimension within cap");
        facets
            .into_iter()
            .find(|fc| fc.diagonal_crossing() == t)
            .map(|facet| Witness::Facet {
                facet,
                diagonal: t.clone(),
            })
            .unwrap_or(Witness::DiagonalLp { diagonal: t })
    } else {
        Witness::DiagonalLp { diagonal: t }
    };
    let bounds = multiplicity_bounds(f).ok();
    if let (Some((lo, hi)), Some(v)) = (&bounds, value.finite()) {
        assert!(lo <= v && v <= hi, "Newton value {v} escapes [{lo}, {hi}]");
    }
    ThresholdReport {
        value,
        exactness,
        witness,
        bounds,
    }
}

/// `1/mult_0 f` for a polynomial in one variable; needs no genericity.
pub fn lct_univariate(f: &Poly) -> Result<ThresholdValue> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    Ok(match f.order() {
        None => ThresholdValue::Zero,
        Some(0) => ThresholdValue::Infinite,
        Some(m) => ThresholdValue::Finite(Rat::new(1, m as i64)),
    })
}

/// `min(1, Σ 1/a_i)`: the threshold of `z_1^{a_1} + … + z_n^{a_n}`.
pub fn lct_diagonal(exponents: &[u64]) -> Result<ThresholdValue> {
    if exponents.is_empty() {
        return Err(Error::InvalidArgument("no exponents given".into()));
    }
    if exponents.contains(&0) {
        return Err(Error::InvalidArgument("exponents must be at least 1".into()));
    }
    let sum: Rat = exponents.iter().map(|&a| Rat::from(a).recip()).sum();
    Ok(ThresholdValue::capped(sum))
}

/// Threshold of `f(x) + g(y)` in disjoint variables: `min(1, c_f + c_g)`.
pub fn lct_direct_sum(cf: &ThresholdValue, cg: &ThresholdValue) -> ThresholdValue {
    use ThresholdValue::*;
    match (cf, cg) {
        (Infinite, _) | (_, Infinite) => Infinite,
        (Zero, c) | (c, Zero) => c.clone(),
        (Finite(a), Finite(b)) => ThresholdValue::capped(a + b),
    }
}

/// `(1/mult, min(1, n/mult))`.
pub fn multiplicity_bounds(f: &Poly) -> Result<(Rat, Rat)> {
    match f.order() {
        None => Err(Error::InvalidArgument(
            "multiplicity bounds need a nonzero polynomial".into(),
        )),
        Some(0) => Err(Error::InvalidArgument(
            "multiplicity bounds need f(0) = 0".into(),
        )),
        Some(m) => {
            let m = m as i64;
            let upper = Rat::new(f.dim() as i64, m).min(Rat::one());
            Ok((Rat::new(1, m), upper))
        }
    }
}

/// `n/(m+1)`: how far truncating at degree `m` can move the threshold.
pub fn truncation_bound(n: u64, m: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    Ok(Rat::from(n) / Rat::from(m + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubadditivityRecord {
    pub f: ThresholdValue,
    pub g: ThresholdValue,
    pub sum: ThresholdValue,
    /// `min(1, N(f) + N(g))`.
    pub bound: ThresholdValue,
    pub holds: bool,
}

/// Checks `N(f + g) <= min(1, N(f) + N(g))` with generic coefficients on the
/// union of supports. A violation is returned as [`Error::Validation`].
pub fn check_subadditivity(f: &Poly, g: &Poly) -> Result<SubadditivityRecord> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    if !(f.generic_coefficients() && g.generic_coefficients()) {
        return Err(Error::InvalidArgument(
            "subadditivity check needs generic coefficients".into(),
        ));
    }
    let (nf, _) = newton_value(&f.support())?;
    let (ng, _) = newton_value(&g.support())?;
    let mut union = f.support();
    union.extend(g.support());
    union.sort();
    union.dedup();
    let (nu, _) = newton_value(&union)?;
    let bound = lct_direct_sum(&nf, &ng);
    let holds = nu <= bound;
    let record = SubadditivityRecord {
        f: nf,
        g: ng,
        sum: nu,
        bound,
        holds,
    };
    if !holds {
        return Err(Error::Validation(format!(
            "subadditivity violated: N(f+g) = {} > min(1, {} + {})",
            record.sum, record.f, record.g
        )));
    }
    Ok(record)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionRecord {
    pub keep: Vec<usize>,
    pub restricted: ThresholdValue,
    pub full: ThresholdValue,
    /// `N(f|_L) <= N(f)`.
    pub holds: bool,
}

/// Compares the Newton threshold of `f` with that of its restriction to the
/// coordinate subspace spanned by `keep`. A violation is recorded, not raised.
pub fn check_restriction(f: &Poly, keep: &[usize]) -> Result<RestrictionRecord> {
    if !f.generic_coefficients() {
        return Err(Error::InvalidArgument(
            "restriction check needs generic coefficients".into(),
        ));
    }
    let restricted = f.restrict_to_axes(keep)?;
    if restricted.is_zero() {
        return Err(Error::InvalidArgument(
            "restriction to the chosen coordinates is identically zero".into(),
        ));
    }
    let (nl, _) = newton_value(&restricted.support())?;
    let (nf, _) = newton_value(&f.support())?;
    Ok(RestrictionRecord {
        keep: keep.to_vec(),
        holds: nl <= nf,
        restricted: nl,
        full: nf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExponentVector;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn fin(n: i64, d: i64) -> ThresholdValue {
        ThresholdValue::Finite(q(n, d))
    }

    fn monic(dim: usize, exps: &[&[u32]]) -> Poly {
        Poly::from_support(dim, exps.iter().map(|e| ExponentVector::new(e.to_vec()))).unwrap()
    }

    #[test]
    fn newton_examples() {
        let r = lct_newton(&monic(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(r.value, fin(5, 6));
        assert!(r.is_exact());
        assert_eq!(r.bounds, Some((q(1, 2), q(1, 1))));

        let fig = monic(2, &[&[0, 7], &[2, 3], &[5, 3], &[4, 1], &[6, 0]]);
        let r = lct_newton(&fig);
        assert_eq!(r.value, fin(2, 5));
        match r.witness {
            Witness::Facet { facet, diagonal } => {
                assert_eq!(facet.normal, vec![1, 1]);
                assert_eq!(facet.offset, 5);
                assert_eq!(diagonal, q(5, 2));
            }
            w => panic!("unexpected witness {w:?}"),
        }

        let unit = monic(1, &[&[0], &[1]]);
        assert_eq!(lct_newton(&unit).value, ThresholdValue::Infinite);
        assert_eq!(lct_newton(&monic(2, &[&[1, 1]])).value, fin(1, 1));
        assert_eq!(lct_newton(&Poly::zero(3)).value, ThresholdValue::Zero);
    }

    #[test]
    fn degenerate_flag_gives_upper_bound() {
        let f = monic(2, &[&[2, 0], &[1, 1], &[0, 2]]).with_generic(false);
        let r = lct_newton(&f);
        assert_eq!(r.exactness, Exactness::UpperBound);
        assert_eq!(r.value, fin(1, 1));
    }

    #[test]
    fn witness_tie_break_prefers_smallest_normal() {
        // Diagonal passes through the vertex (2,2) shared by two edges.
        let f = monic(2, &[&[0, 5], &[2, 2], &[5, 0]]);
        match lct_newton(&f).witness {
            Witness::Facet { facet, .. } => assert_eq!(facet.normal, vec![2, 3]),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn univariate_examples() {
        assert_eq!(lct_univariate(&monic(1, &[&[3]])).unwrap(), fin(1, 3));
        assert_eq!(lct_univariate(&monic(1, &[&[1]])).unwrap(), fin(1, 1));
        assert_eq!(lct_univariate(&monic(1, &[&[2], &[5]])).unwrap(), fin(1, 2));
        assert_eq!(lct_univariate(&Poly::zero(1)).unwrap(), ThresholdValue::Zero);
        assert!(lct_univariate(&monic(2, &[&[1, 0]])).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(lct_diagonal(&[2, 3]).unwrap(), fin(5, 6));
        assert_eq!(lct_diagonal(&[2, 3, 7]).unwrap(), fin(41, 42));
        assert_eq!(lct_diagonal(&[1, 100]).unwrap(), fin(1, 1));
        assert!(lct_diagonal(&[0, 3]).is_err());
        assert!(lct_diagonal(&[]).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(lct_direct_sum(&fin(1, 2), &fin(1, 3)), fin(5, 6));
        assert_eq!(lct_direct_sum(&fin(2, 5), &fin(1, 7)), fin(19, 35));
        assert_eq!(lct_direct_sum(&fin(2, 3), &fin(2, 3)), fin(1, 1));
        assert_eq!(lct_direct_sum(&ThresholdValue::Zero, &fin(1, 4)), fin(1, 4));
        assert_eq!(
            lct_direct_sum(&ThresholdValue::Infinite, &fin(1, 4)),
            ThresholdValue::Infinite
        );
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(multiplicity_bounds(&monic(2, &[&[2, 0], &[0, 3]])).unwrap(), (q(1, 2), q(1, 1)));
        assert_eq!(multiplicity_bounds(&monic(1, &[&[4]])).unwrap(), (q(1, 4), q(1, 4)));
        let fig = monic(2, &[&[0, 7], &[2, 3], &[5, 3], &[4, 1], &[6, 0]]);
        assert_eq!(multiplicity_bounds(&fig).unwrap(), (q(1, 5), q(2, 5)));
        assert!(multiplicity_bounds(&Poly::zero(2)).is_err());
        assert!(multiplicity_bounds(&monic(1, &[&[0]])).is_err());
    }

    #[test]
    fn truncation_bound_examples() {
        assert_eq!(truncation_bound(2, 9).unwrap(), q(1, 5));
        assert_eq!(truncation_bound(3, 5).unwrap(), q(1, 2));
        assert_eq!(truncation_bound(4, 3).unwrap(), truncation_bound(4, 7).unwrap() * q(2, 1));
        assert!(truncation_bound(0, 3).is_err());
    }

    #[test]
    fn subadditivity_examples() {
        let r = check_subadditivity(&monic(2, &[&[4, 0]]), &monic(2, &[&[0, 4]])).unwrap();
        assert_eq!((r.f.clone(), r.g.clone(), r.sum.clone()), (fin(1, 4), fin(1, 4), fin(1, 2)));
        assert_eq!(r.bound, r.sum);

        let r = check_subadditivity(&monic(2, &[&[4, 0]]), &monic(2, &[&[1, 2]])).unwrap();
        assert_eq!(r.sum, fin(5, 8));
        assert_eq!(r.bound, fin(3, 4));

        let f = monic(2, &[&[0, 7], &[2, 3], &[4, 1], &[6, 0]]);
        assert!(check_subadditivity(&f, &f).unwrap().holds);

        let degenerate = f.clone().with_generic(false);
        assert!(check_subadditivity(&degenerate, &f).is_err());
        assert!(check_subadditivity(&f, &monic(1, &[&[2]])).is_err());
    }

    #[test]
    fn restriction_examples() {
        let r = check_restriction(&monic(2, &[&[2, 0], &[0, 3]]), &[0]).unwrap();
        assert_eq!((r.restricted.clone(), r.full.clone()), (fin(1, 2), fin(5, 6)));
        assert!(r.holds);

        let r = check_restriction(&monic(2, &[&[3, 0], &[1, 5]]), &[0]).unwrap();
        assert_eq!((r.restricted.clone(), r.full.clone()), (fin(1, 3), fin(7, 15)));

        let r = check_restriction(&monic(2, &[&[1, 0], &[0, 1]]), &[0]).unwrap();
        assert_eq!((r.restricted.clone(), r.full.clone()), (fin(1, 1), fin(1, 1)));

        assert!(check_restriction(&monic(2, &[&[1, 1]]), &[0]).is_err());
    }
}
