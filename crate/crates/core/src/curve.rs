//! The source curve: rational maps `P¹ → Pᵐ`, hyperelliptic curves, and the
//! pullback of a family's section.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::DivisorFamily;
use crate::poly::sqfree::{gcd, is_squarefree, refine_pair};
use crate::poly::{distinct_power_decomposition, BiForm, Locus, PolyError, Rat, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("a map needs at least two coordinates")]
    TooFewCoordinates,
    #[error("all coordinates are zero")]
    AllZero,
    #[error("constant map (degree 0)")]
    Constant,
    #[error("declared degree {declared} is below the largest coordinate degree {max}")]
    DeclaredDegreeTooSmall { declared: u32, max: u32 },
    #[error("coordinates share the factor {0}")]
    CommonFactor(String),
    #[error("map has {map} coordinates but the family expects {family}")]
    ArityMismatch { map: usize, family: usize },
    #[error("the image lies in every member of the family (pullback vanishes identically)")]
    DegenerateImage,
    #[error("defining polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("defining polynomial must be nonconstant")]
    ConstantCurve,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A morphism `P¹ → Pᵐ` given by coprime binary forms of a common degree.
///
/// Coordinates are stored affinely in `t = t0/t1`; the `i`-th homogeneous
/// coordinate is `t1^d · coords[i](t0/t1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMap {
    coords: Vec<UniPoly>,
    degree: u32,
}

impl RationalMap {
    /// Homogenizes to degree `declared_degree` (default: the largest affine
    /// degree) and checks that the forms have no common factor, including
    /// the factor `t1` that appears when every affine degree falls short.
    pub fn new(coords: Vec<UniPoly>, declared_degree: Option<u32>) -> Result<Self, CurveError> {
        if coords.len() < 2 {
            return Err(CurveError::TooFewCoordinates);
        }
        if coords.iter().all(UniPoly::is_zero) {
            return Err(CurveError::AllZero);
        }
        let max = coords.iter().filter_map(UniPoly::degree).max().unwrap_or(0) as u32;
        let degree = match declared_degree {
            Some(d) if d < max => return Err(CurveError::DeclaredDegreeTooSmall { declared: d, max }),
            Some(d) => d,
            None => max,
        };
        if degree == 0 {
            return Err(CurveError::Constant);
        }
        let g = coords.iter().fold(UniPoly::zero(), |acc, c| gcd(&acc, c));
        if !g.is_constant() {
            return Err(CurveError::CommonFactor(g.display_in("t")));
        }
        if max < degree {
            return Err(CurveError::CommonFactor("t1".into()));
        }
        Ok(RationalMap { coords, degree })
    }

    pub fn from_ints(coords: &[&[i64]]) -> Result<Self, CurveError> {
        Self::new(coords.iter().map(|c| UniPoly::from_ints(c)).collect(), None)
    }

    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn target_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The same map read in the chart `u = t1/t0`.
    pub fn flipped(&self) -> RationalMap {
        RationalMap {
            coords: self.coords.iter().map(|c| c.reverse(self.degree as usize)).collect(),
            degree: self.degree,
        }
    }

    /// Precomposes with the fractional-linear change `t ↦ (αt + β)/(γt + δ)`.
    pub fn moebius(&self, alpha: &Rat, beta: &Rat, gamma: &Rat, delta: &Rat) -> Result<RationalMap, CurveError> {
        let num = UniPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let den = UniPoly::from_coeffs(vec![delta.clone(), gamma.clone()]);
        let d = self.degree as usize;
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let mut out = UniPoly::zero();
                for (k, a) in c.coeffs().iter().enumerate() {
                    let term = &num.pow(k as u32) * &den.pow((d - k) as u32);
                    out = &out + &term.scale(a);
                }
                out
            })
            .collect();
        RationalMap::new(coords, Some(self.degree))
    }

    /// Multiplies every coordinate by the same nonzero rational.
    pub fn scaled(&self, c: &Rat) -> RationalMap {
        RationalMap {
            coords: self.coords.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    pub fn display_coords(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.display_in("t")).collect()
    }
}

/// `f_S^* s`: substitutes the homogeneous coordinates of `f` for the
/// `x`-variables of the family form. The result lives on `P¹ × Pⁿ` with
/// bidegree `(a·d, b)`.
pub fn pullback_section(f: &RationalMap, fam: &DivisorFamily) -> Result<BiForm, CurveError> {
    let s = pullback_unchecked(f, fam)?;
    if s.is_zero() {
        return Err(CurveError::DegenerateImage);
    }
    Ok(s)
}

pub(crate) fn pullback_unchecked(f: &RationalMap, fam: &DivisorFamily) -> Result<BiForm, CurveError> {
    if f.coords.len() != fam.x_arity() {
        return Err(CurveError::ArityMismatch { map: f.coords.len(), family: fam.x_arity() });
    }
    Ok(fam.form().substitute_left(&f.coords, f.degree)?)
}

/// `y² = h(x)` with `h` squarefree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperellipticCurve {
    h: UniPoly,
    genus: u32,
}

impl HyperellipticCurve {
    pub fn new(h: UniPoly) -> Result<Self, CurveError> {
        let Some(deg) = h.degree().filter(|&d| d >= 1) else {
            return Err(CurveError::ConstantCurve);
        };
        if !is_squarefree(&h) {
            return Err(CurveError::NotSquarefree(h.display_in("x")));
        }
        let genus = (deg as u32).div_ceil(2) - 1;
        Ok(HyperellipticCurve { h, genus })
    }

    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    /// The point over `x = ∞` is a branch point exactly for odd `deg h`.
    pub fn branched_at_infinity(&self) -> bool {
        self.h.degree().unwrap_or(0) % 2 == 1
    }
}

/// Points of `C` over an `x`-locus, all with the same ramification
/// multiplicity `e_p − 1` for `f = φ ∘ x`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RamificationCluster {
    /// Image of the cluster on the `x`-line.
    pub x_locus: Locus,
    /// 1 when `x` is branched over the locus, 2 otherwise.
    pub sheets: u32,
    pub multiplicity: u32,
}

impl RamificationCluster {
    pub fn point_count(&self) -> usize {
        self.x_locus.point_count() * self.sheets as usize
    }

    pub fn weight(&self) -> i64 {
        self.multiplicity as i64 * self.point_count() as i64
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RamificationSummary {
    pub genus: u32,
    pub map_degree: u32,
    pub clusters: Vec<RamificationCluster>,
    pub total: i64,
    /// `2·deg(f) + 2g − 2`.
    pub expected_total: i64,
}

/// Ramification of `φ: P¹ → P¹` as `(locus, e − 1)` pairs, from the Wronskian
/// `φ0·φ1' − φ0'·φ1` in both charts.
pub fn ramification_p1(phi: &RationalMap) -> Vec<(Locus, u32)> {
    assert_eq!(phi.target_dim(), 1, "ramification_p1 needs a map to P¹");
    let mut out = Vec::new();
    let w = wronskian2(phi.coords());
    if let Ok(dp) = distinct_power_decomposition(&w) {
        for (q, e) in dp.factors {
            out.push((Locus::Finite(q), e));
        }
    }
    let flipped = phi.flipped();
    let w_inf = wronskian2(flipped.coords());
    let at_inf = w_inf.trailing_zeros().unwrap_or(0) as u32;
    if at_inf > 0 {
        out.push((Locus::Infinity, at_inf));
    }
    out
}

fn wronskian2(c: &[UniPoly]) -> UniPoly {
    &(&c[0] * &c[1].derivative()) - &(&c[0].derivative() * &c[1])
}

/// Ramification divisor of `φ ∘ x` on `y² = h(x)`, with indices composed as
/// `e_p(φ∘x) = e_p(x) · e_{x(p)}(φ)`.
pub fn hyperelliptic_ramification(
    curve: &HyperellipticCurve,
    phi: &RationalMap,
) -> Result<RamificationSummary, CurveError> {
    if phi.target_dim() != 1 {
        return Err(CurveError::ArityMismatch { map: phi.coords().len(), family: 2 });
    }
    let phi_ram = ramification_p1(phi);
    let finite: Vec<(UniPoly, u32)> = phi_ram
        .iter()
        .filter_map(|(l, e)| match l {
            Locus::Finite(q) => Some((q.clone(), *e)),
            Locus::Infinity => None,
        })
        .collect();
    let inf_ram = phi_ram
        .iter()
        .find_map(|(l, e)| matches!(l, Locus::Infinity).then_some(*e))
        .unwrap_or(0);

    // first slot: branch points of x (h is squarefree, so one factor)
    let branch = vec![(curve.h.monic(), 1)];
    let mut clusters = Vec::new();
    for (q, branched, phi_excess) in refine_pair(&branch, &finite) {
        let e_phi = phi_excess + 1;
        if branched == 1 {
            clusters.push(RamificationCluster { x_locus: Locus::Finite(q), sheets: 1, multiplicity: 2 * e_phi - 1 });
        } else if phi_excess > 0 {
            clusters.push(RamificationCluster { x_locus: Locus::Finite(q), sheets: 2, multiplicity: e_phi - 1 });
        }
    }
    let e_inf = inf_ram + 1;
    if curve.branched_at_infinity() {
        clusters.push(RamificationCluster { x_locus: Locus::Infinity, sheets: 1, multiplicity: 2 * e_inf - 1 });
    } else if inf_ram > 0 {
        clusters.push(RamificationCluster { x_locus: Locus::Infinity, sheets: 2, multiplicity: inf_ram });
    }
    clusters.sort_by(|a, b| a.x_locus.sort_key().cmp(&b.x_locus.sort_key()).then(a.multiplicity.cmp(&b.multiplicity)));
    let total = clusters.iter().map(RamificationCluster::weight).sum();
    let map_degree = 2 * phi.degree();
    Ok(RamificationSummary {
        genus: curve.genus,
        map_degree,
        clusters,
        total,
        expected_total: 2 * map_degree as i64 + curve.canonical_degree(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::point_family;
    use crate::poly::parse_uni;

    fn t(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn construction_examples() {
        let f = RationalMap::from_ints(&[&[0, 0, 1], &[1]]).unwrap();
        assert_eq!((f.degree(), f.target_dim()), (2, 1));
        let conic = RationalMap::from_ints(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        assert_eq!((conic.degree(), conic.target_dim()), (2, 2));
        assert_eq!(
            RationalMap::from_ints(&[&[0, 1], &[0, -1, 1]]),
            Err(CurveError::CommonFactor("t".into()))
        );
        assert_eq!(RationalMap::from_ints(&[&[0], &[0]]), Err(CurveError::AllZero));
        assert_eq!(RationalMap::from_ints(&[&[3], &[1]]), Err(CurveError::Constant));
        assert_eq!(RationalMap::from_ints(&[&[1]]), Err(CurveError::TooFewCoordinates));
        assert_eq!(
            RationalMap::new(vec![t(&[0, 1]), t(&[1])], Some(2)),
            Err(CurveError::CommonFactor("t1".into()))
        );
        assert!(matches!(
            RationalMap::new(vec![t(&[0, 0, 1]), t(&[1])], Some(1)),
            Err(CurveError::DeclaredDegreeTooSmall { .. })
        ));
    }

    #[test]
    fn pullback_along_double_cover() {
        let f = RationalMap::from_ints(&[&[0, 0, 1], &[1]]).unwrap();
        let s = pullback_section(&f, &point_family()).unwrap();
        assert_eq!(s.to_string(), "t0^2*z1 - t1^2*z0");
    }

    #[test]
    fn hyperelliptic_examples() {
        let sextic = HyperellipticCurve::new(UniPoly::from_roots(&[0, 1, 2, 3, 4, 5])).unwrap();
        let id = RationalMap::from_ints(&[&[0, 1], &[1]]).unwrap();
        let r = hyperelliptic_ramification(&sextic, &id).unwrap();
        assert_eq!(r.genus, 2);
        assert_eq!((r.total, r.expected_total), (6, 6));
        assert!(r.clusters.iter().all(|c| c.multiplicity == 1));

        let quintic = HyperellipticCurve::new(parse_uni("x^5 - x + 1", "x").unwrap()).unwrap();
        let r = hyperelliptic_ramification(&quintic, &id).unwrap();
        assert_eq!(r.total, 6);
        assert!(r.clusters.iter().any(|c| c.x_locus == Locus::Infinity && c.multiplicity == 1));

        let sq = RationalMap::from_ints(&[&[0, 0, 1], &[1]]).unwrap();
        let r = hyperelliptic_ramification(&sextic, &sq).unwrap();
        assert_eq!((r.total, r.expected_total), (10, 10));
    }

    #[test]
    fn hyperelliptic_rejects_bad_input() {
        assert!(matches!(
            HyperellipticCurve::new(UniPoly::from_roots(&[1, 1, 2])),
            Err(CurveError::NotSquarefree(_))
        ));
        assert_eq!(HyperellipticCurve::new(t(&[3])), Err(CurveError::ConstantCurve));
    }
}
