//! Newton polyhedra: `conv(support) + R^n_{>=0}`.
//!
//! Two independent routes are provided. Membership and the diagonal
//! parameter are decided by exact LP over the generators; the facet list is
//! produced by the double description method on the cone of valid
//! inequalities `{(a, d) : a >= 0, a·v >= d for all v in support}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::poly::ExponentVector;
use crate::rat::Rat;

/// Facet enumeration refuses dimensions above this unless asked otherwise.
pub const DEFAULT_FACET_DIM_CAP: usize = 8;

/// Supporting inequality `normal · x >= offset` of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl Facet {
    /// Compact facets have a strictly positive normal; the others contain a
    /// recession direction.
    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&a| a > 0)
    }

    pub fn normal_sum(&self) -> u64 {
        self.normal.iter().sum()
    }

    /// `d / Σa`: where the diagonal meets this facet's hyperplane.
    pub fn diagonal_crossing(&self) -> Rat {
        Rat::from(self.offset) / Rat::from(self.normal_sum())
    }

    /// Upper bound `Σa / d` on the threshold, uncapped.
    pub fn face_bound(&self) -> Result<Rat> {
        if self.offset == 0 {
            return Err(Error::InvalidArgument(
                "facet passes through the origin; the threshold is infinite".into(),
            ));
        }
        Ok(Rat::from(self.normal_sum()) / Rat::from(self.offset))
    }

    pub fn is_satisfied_by(&self, p: &[Rat]) -> bool {
        let lhs: Rat = self
            .normal
            .iter()
            .zip(p)
            .map(|(&a, x)| Rat::from(a) * x)
            .sum();
        lhs >= Rat::from(self.offset)
    }
}

fn check_support(support: &[ExponentVector]) -> Result<usize> {
    let first = support.first().ok_or(Error::EmptySupport)?;
    let dim = first.dim();
    if let Some(bad) = support.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    Ok(dim)
}

/// Decides `p ∈ conv(support) + R^n_{>=0}` by an exact feasibility LP.
pub fn contains_point(support: &[ExponentVector], p: &[Rat]) -> Result<bool> {
    let dim = check_support(support)?;
    if p.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    if p.iter().any(Rat::is_negative) {
        return Ok(false);
    }
    // Σ λ_j v_j + μ = p,  Σ λ_j = 1,  λ, μ >= 0.
    let k = support.len();
    let mut a = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        let mut row: Vec<Rat> = support.iter().map(|v| Rat::from(v[i] as u64)).collect();
        row.extend((0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        a.push(row);
    }
    let mut convex = vec![Rat::one(); k];
    convex.extend((0..dim).map(|_| Rat::zero()));
    a.push(convex);
    let mut b = p.to_vec();
    b.push(Rat::one());
    Ok(lp::feasible(&a, &b))
}

/// The smallest `t` with `(t, …, t)` in the Newton polyhedron, by exact LP.
pub fn diagonal_parameter(support: &[ExponentVector]) -> Result<Rat> {
    let dim = check_support(support)?;
    // min t  s.t.  Σ λ_j v_j + μ - t·1 = 0,  Σ λ_j = 1,  λ, μ, t >= 0.
    let k = support.len();
    let cols = k + dim + 1;
    let mut a = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        let mut row: Vec<Rat> = support.iter().map(|v| Rat::from(v[i] as u64)).collect();
        row.extend((0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        row.push(-Rat::one());
        a.push(row);
    }
    let mut convex = vec![Rat::one(); k];
    convex.extend((0..=dim).map(|_| Rat::zero()));
    a.push(convex);
    let mut b = vec![Rat::zero(); dim];
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); cols];
    c[cols - 1] = Rat::one();
    match lp::minimize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        // The LP is feasible (t = max entry of any generator) and bounded below by 0.
        other => unreachable!("diagonal LP returned {other:?}"),
    }
}

#[derive(Clone)]
struct Ray {
    coords: Vec<i128>,
    /// Indices of processed constraints that hold with equality.
    tight: Vec<u64>,
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn dot(row: &[i128], v: &[i128]) -> i128 {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Extreme rays of the cone `{y : row · y >= 0 for all rows}`, given
/// `rows[..dim]` linearly independent with the inverse columns `seed`.
fn double_description(rows: &[Vec<i128>], seed: Vec<Vec<i128>>, dim: usize) -> Vec<Vec<i128>> {
    let words = rows.len().div_ceil(64);
    let mut rays: Vec<Ray> = seed
        .into_iter()
        .map(|coords| {
            let mut tight = vec![0u64; words];
            for (i, row) in rows[..dim].iter().enumerate() {
                if dot(row, &coords) == 0 {
                    set_bit(&mut tight, i);
                }
            }
            Ray { coords, tight }
        })
        .collect();

    for (h, row) in rows.iter().enumerate().skip(dim) {
        let vals: Vec<i128> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p]
                    .tight
                    .iter()
                    .zip(&rays[q].tight)
                    .map(|(a, b)| a & b)
                    .collect();
                let count: u32 = common.iter().map(|w| w.count_ones()).sum();
                if (count as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(r, ray)| {
                    r == p
                        || r == q
                        || !common
                            .iter()
                            .zip(&ray.tight)
                            .all(|(c, t)| c & t == *c)
                });
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let mut coords: Vec<i128> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(a, b)| vq * a + vp * b)
                    .collect();
                normalize(&mut coords);
                let mut tight = common;
                set_bit(&mut tight, h);
                created.push(Ray { coords, tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if vals[i] == 0 {
                set_bit(&mut ray.tight, h);
                next.push(ray);
            } else if vals[i] > 0 {
                next.push(ray);
            }
        }
        next.extend(created);
        rays = next;
    }
    rays.into_iter().map(|r| r.coords).collect()
}

/// All facets `a·x >= d` with `d > 0` of the Newton polyhedron of `support`,
/// sorted by normal. Coordinate hyperplanes `x_i >= 0` are implied by the
/// orthant and omitted.
pub fn facets(support: &[ExponentVector]) -> Result<Vec<Facet>> {
    facets_capped(support, DEFAULT_FACET_DIM_CAP)
}

pub fn facets_capped(support: &[ExponentVector], max_dim: usize) -> Result<Vec<Facet>> {
    let dim = check_support(support)?;
    if dim > max_dim {
        return Err(Error::ResourceCap {
            what: "facet enumeration dimension",
            value: dim as u64,
            cap: max_dim as u64,
        });
    }
    let mut points: Vec<&ExponentVector> = support.iter().collect();
    points.sort();
    points.dedup();

    // Coordinates (a_1..a_n, d). Rows: a_i >= 0, then a·v - d >= 0.
    let width = dim + 1;
    let mut rows: Vec<Vec<i128>> = (0..dim)
        .map(|i| (0..width).map(|j| (i == j) as i128).collect())
        .collect();
    for v in &points {
        let mut row: Vec<i128> = v.entries().iter().map(|&e| e as i128).collect();
        row.push(-1);
        rows.push(row);
    }
    // The first n+1 rows are independent; the columns of their inverse are
    // (e_i, v0_i) and (0, -1).
    let v0 = points[0];
    let mut seed: Vec<Vec<i128>> = (0..dim)
        .map(|i| {
            let mut r: Vec<i128> = (0..dim).map(|j| (i == j) as i128).collect();
            r.push(v0[i] as i128);
            r
        })
        .collect();
    let mut down = vec![0i128; dim];
    down.push(-1);
    seed.push(down);

    let rays = double_description(&rows, seed, width);
    let mut out: Vec<Facet> = rays
        .into_iter()
        .filter(|r| r[dim] > 0)
        .map(|r| Facet {
            normal: r[..dim].iter().map(|&a| a as u64).collect(),
            offset: r[dim] as u64,
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Facet description together with the generators it came from.
#[derive(Clone, Debug, Serialize)]
pub struct NewtonPolyhedron {
    pub dim: usize,
    pub generators: Vec<ExponentVector>,
    pub facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn new(support: &[ExponentVector]) -> Result<Self> {
        let facets = facets(support)?;
        Ok(NewtonPolyhedron {
            dim: support[0].dim(),
            generators: support.to_vec(),
            facets,
        })
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        p.len() == self.dim
            && p.iter().all(|x| !x.is_negative())
            && self.facets.iter().all(|f| f.is_satisfied_by(p))
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.is_compact())
    }

    /// `max d/Σa` over all facets: the diagonal parameter, from the facet
    /// description alone.
    pub fn diagonal_parameter(&self) -> Rat {
        self.facets
            .iter()
            .map(Facet::diagonal_crossing)
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Facets whose hyperplane the diagonal meets at `t*`, smallest normal first.
    pub fn diagonal_facets(&self) -> Vec<&Facet> {
        let t = self.diagonal_parameter();
        self.facets
            .iter()
            .filter(|f| f.diagonal_crossing() == t)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(pts: &[&[u32]]) -> Vec<ExponentVector> {
        pts.iter().map(|p| ExponentVector::new(p.to_vec())).collect()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn figure() -> Vec<ExponentVector> {
        sup(&[&[0, 7], &[2, 3], &[5, 3], &[4, 1], &[6, 0]])
    }

    fn facet(normal: &[u64], offset: u64) -> Facet {
        Facet {
            normal: normal.to_vec(),
            offset,
        }
    }

    #[test]
    fn membership_examples() {
        let s = sup(&[&[2, 0], &[0, 3]]);
        assert!(contains_point(&s, &[q(1, 1), q(3, 2)]).unwrap());
        assert!(!contains_point(&s, &[q(0, 1), q(0, 1)]).unwrap());
        assert!(!contains_point(&s, &[q(1, 1), q(1, 1)]).unwrap());
        let origin = sup(&[&[0, 0]]);
        assert!(contains_point(&origin, &[q(0, 1), q(5, 3)]).unwrap());
        assert!(!contains_point(&origin, &[q(-1, 2), q(0, 1)]).unwrap());
    }

    #[test]
    fn membership_errors() {
        assert!(matches!(contains_point(&[], &[]), Err(Error::EmptySupport)));
        let s = sup(&[&[2, 0]]);
        assert!(matches!(
            contains_point(&s, &[q(1, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
        let mixed = vec![ExponentVector::new(vec![1]), ExponentVector::new(vec![1, 2])];
        assert!(diagonal_parameter(&mixed).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_parameter(&sup(&[&[2, 0], &[0, 3]])).unwrap(), q(6, 5));
        assert_eq!(diagonal_parameter(&figure()).unwrap(), q(5, 2));
        assert_eq!(diagonal_parameter(&sup(&[&[3, 2]])).unwrap(), q(3, 1));
        assert_eq!(diagonal_parameter(&sup(&[&[0, 0], &[4, 4]])).unwrap(), Rat::zero());
        assert!(matches!(diagonal_parameter(&[]), Err(Error::EmptySupport)));
    }

    #[test]
    fn facet_examples() {
        assert_eq!(facets(&sup(&[&[2, 0], &[0, 3]])).unwrap(), vec![facet(&[3, 2], 6)]);
        assert_eq!(facets(&sup(&[&[1, 0], &[0, 1]])).unwrap(), vec![facet(&[1, 1], 1)]);
        assert_eq!(
            facets(&figure()).unwrap(),
            vec![facet(&[1, 1], 5), facet(&[1, 2], 6), facet(&[2, 1], 7)]
        );
        // Single monomial: only the two shifted coordinate facets.
        assert_eq!(
            facets(&sup(&[&[3, 2]])).unwrap(),
            vec![facet(&[0, 1], 2), facet(&[1, 0], 3)]
        );
        assert!(facets(&sup(&[&[0, 0]])).unwrap().is_empty());
    }

    #[test]
    fn facets_in_three_dimensions() {
        // x^2 + y^3 + z^7: a single compact facet 21x + 14y + 6z = 42.
        let s = sup(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 7]]);
        assert_eq!(facets(&s).unwrap(), vec![facet(&[21, 14, 6], 42)]);
        // xyz + x^3: non-compact facets appear.
        let s = sup(&[&[1, 1, 1], &[3, 0, 0]]);
        let fs = facets(&s).unwrap();
        let poly = NewtonPolyhedron::new(&s).unwrap();
        assert_eq!(poly.diagonal_parameter(), diagonal_parameter(&s).unwrap());
        assert!(fs.iter().any(|f| !f.is_compact()));
        for v in &s {
            let p: Vec<Rat> = v.entries().iter().map(|&e| Rat::from(e as u64)).collect();
            assert!(poly.contains(&p));
        }
    }

    #[test]
    fn facet_dimension_cap() {
        let s = vec![ExponentVector::new(vec![1; 9])];
        assert!(matches!(facets(&s), Err(Error::ResourceCap { .. })));
        assert!(facets_capped(&s, 9).is_ok());
    }

    #[test]
    fn face_bound_examples() {
        assert_eq!(facet(&[1, 1], 5).face_bound().unwrap(), q(2, 5));
        assert_eq!(facet(&[3, 2], 6).face_bound().unwrap(), q(5, 6));
        assert_eq!(facet(&[1, 1, 1, 1], 7).face_bound().unwrap(), q(4, 7));
        assert!(facet(&[1, 0], 0).face_bound().is_err());
    }

    #[test]
    fn membership_brackets_diagonal() {
        let s = figure();
        let t = diagonal_parameter(&s).unwrap();
        for k in [-3i64, -1, 0, 1, 4] {
            let probe = &t + &q(k, 97);
            let inside = contains_point(&s, &[probe.clone(), probe.clone()]).unwrap();
            assert_eq!(inside, k >= 0, "t = {probe}");
        }
    }
}
