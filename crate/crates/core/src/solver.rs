//! Inflection divisors for one-parameter families (`n = 1`) by the
//! localized top Chern class of the first jet section on `P¹ × P¹`.
//!
//! In a chart of the curve, write the pulled-back section as `S = c·S̃` with
//! `c(t)` the gcd of its `z`-coefficients. The jet section has the flag
//! `ω⊗ℒ ⊂ J¹ℒ → ℒ`, so the class is built in two steps:
//!
//! * `Z(S)` consists of the vertical lines `{p} × P¹` (weight `ord_p c`) and
//!   the curve `Z(S̃)`.
//! * On a vertical line the derivative either vanishes (weight ≥ 2) or cuts
//!   the zeros of `S̃(p, ·)`; both give `ord_p c · b`, the degree of `ω⊗ℒ` on
//!   the line.
//! * On `Z(S̃)` the derivative restricts to `c·∂S̃`, which meets it in
//!   `ord_p c · b` points over `p` from the factor `c` plus the proper
//!   intersection `ord_p Res_z(S̃, ∂S̃)`.
//!
//! Hence `m_p = 2·b·ord_p(c) + ord_p Res_z(S̃, ∂S̃)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{pullback_unchecked, CurveError, RationalMap};
use crate::family::{binary_to_affine, common_binary_root, DivisorFamily};
use crate::jet::{content_in_t, wronskian_inflection, JetError};
use crate::poly::multi::Exponents;
use crate::poly::rat::fmt_rat;
use crate::poly::sqfree::{rational_roots, refine_pair, squarefree_part};
use crate::poly::{
    binary_resultant, distinct_power_decomposition, gcd, local_multiplicity, BiForm, BinaryForm, LocalMultiplicity,
    MultiPoly, PointCluster, Rat, UniPoly,
};
use crate::report::{Breakdown, Chart, DegenerateReason, InflectionReport, ReportCluster};
use crate::rhs::{rhs_summary, RhsError, RhsSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("nonlinear families with n = {0} are not implemented; linear families of any dimension go through the Wronskian (`wronskian` mode)")]
    NotImplemented(usize),
    #[error("degenerate: {0}")]
    Degenerate(DegenerateReason),
    #[error("the domain is P¹, so the genus must be 0 (got {0})")]
    Genus(u32),
    #[error("cross-check failed:\n{0}")]
    Disagreement(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Rhs(#[from] RhsError),
}

/// Content, reduced section and resultant of one chart.
#[derive(Clone, Debug)]
pub struct ChartAnalysis {
    pub chart: Chart,
    pub content: UniPoly,
    pub reduced: BinaryForm,
    pub resultant: UniPoly,
}

/// `f(C) ⊆ 𝒟_z` for some `z`: every `t`-coefficient of the pullback, as a
/// binary form in `z`, shares a root.
pub fn image_in_member(s: &BiForm) -> bool {
    if s.is_zero() {
        return true;
    }
    if s.right_arity() != 2 {
        return false;
    }
    let forms: Vec<UniPoly> = s
        .left_coefficients()
        .into_values()
        .map(|m| binary_to_affine(&m.into_iter().collect::<Vec<(Exponents, Rat)>>()))
        .collect();
    common_binary_root(&forms, s.bidegree().1 as usize).is_some()
}

fn pulled_back(f: &RationalMap, fam: &DivisorFamily) -> Result<BiForm, SolveError> {
    if fam.n() != 1 {
        return Err(SolveError::NotImplemented(fam.n()));
    }
    let s = pullback_unchecked(f, fam)?;
    if image_in_member(&s) {
        return Err(SolveError::Degenerate(DegenerateReason::ImageInFiber));
    }
    Ok(s)
}

pub fn analyze_chart(s: &BiForm, chart: Chart) -> Result<ChartAnalysis, SolveError> {
    let (content, reduced) = content_in_t(s, chart)?;
    let reduced = reduced.to_binary();
    let derivative = reduced.derivative_t();
    if derivative.is_zero() {
        return Err(SolveError::Degenerate(DegenerateReason::ConstantInT));
    }
    let resultant = binary_resultant(&reduced, &derivative);
    if resultant.is_zero() {
        return Err(SolveError::Degenerate(DegenerateReason::HorizontalExcess));
    }
    Ok(ChartAnalysis { chart, content, reduced, resultant })
}

/// Inflection divisor of `f` relative to a one-parameter family.
pub fn inflection_divisor_n1(f: &RationalMap, fam: &DivisorFamily) -> Result<InflectionReport, SolveError> {
    let s = pulled_back(f, fam)?;
    let b = fam.bidegree().1;
    let affine = analyze_chart(&s, Chart::Affine)?;
    let infinity = analyze_chart(&s, Chart::Infinity)?;

    let strata = |p: &UniPoly| distinct_power_decomposition(p).map(|d| d.factors).unwrap_or_default();
    let mut clusters = Vec::new();
    for (q, e_c, e_r) in refine_pair(&strata(&affine.content), &strata(&affine.resultant)) {
        let breakdown = Breakdown { vertical: 2 * b * e_c, proper: e_r };
        clusters.push(ReportCluster {
            chart: Chart::Affine,
            cluster: PointCluster::finite(q, breakdown.vertical + breakdown.proper),
            breakdown: Some(breakdown),
        });
    }
    let at = |p: &UniPoly| p.trailing_zeros().unwrap_or(0) as u32;
    let breakdown = Breakdown { vertical: 2 * b * at(&infinity.content), proper: at(&infinity.resultant) };
    clusters.push(ReportCluster {
        chart: Chart::Infinity,
        cluster: PointCluster::infinity(breakdown.vertical + breakdown.proper),
        breakdown: Some(breakdown),
    });
    Ok(InflectionReport::from_clusters(clusters))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NondegenerateFinite,
    DegenerateImage,
    EverywhereInflectionary,
}

/// Separates maps into a member of the family from maps that are
/// nondegenerate but inflectionary everywhere (a curve against its own
/// tangent lines).
pub fn degeneracy_check(f: &RationalMap, fam: &DivisorFamily) -> Result<Verdict, SolveError> {
    match inflection_divisor_n1(f, fam) {
        Ok(_) => Ok(Verdict::NondegenerateFinite),
        Err(SolveError::Degenerate(DegenerateReason::ImageInFiber)) => Ok(Verdict::DegenerateImage),
        Err(SolveError::Degenerate(_)) => Ok(Verdict::EverywhereInflectionary),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub lhs_total: i64,
    pub rhs: RhsSummary,
    pub matched: bool,
    pub report: InflectionReport,
}

/// Compares the inflection total with `2·a·b·d − 2·b`.
pub fn verify(f: &RationalMap, fam: &DivisorFamily, genus: u32) -> Result<VerificationResult, SolveError> {
    if genus != 0 {
        return Err(SolveError::Genus(genus));
    }
    let report = inflection_divisor_n1(f, fam)?;
    let (a, b) = fam.bidegree();
    let rhs = rhs_summary(a as i64, b as i64, 1, f.degree() as i64, 0)?;
    Ok(VerificationResult { lhs_total: report.total, matched: report.total == rhs.rhs_total, rhs, report })
}

/// Resultant order at a rational point against the sum of local
/// intersection numbers of `S̃` and `∂S̃` over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub t: String,
    pub resultant_order: u32,
    pub oracle_sum: u32,
    pub fiber_points: usize,
}

impl SpotCheck {
    pub fn agrees(&self) -> bool {
        self.resultant_order == self.oracle_sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    /// `Some(true)` when solver and Wronskian divisors coincide; `None` for
    /// nonlinear families.
    pub wronskian_agrees: Option<bool>,
    pub spot_checks: Vec<SpotCheck>,
}

impl AgreementReport {
    pub fn agreed(&self) -> bool {
        self.wronskian_agrees != Some(false) && self.spot_checks.iter().all(SpotCheck::agrees)
    }
}

/// Runs both independent checks of the solver: the Wronskian for linear
/// families, and local intersection numbers at rational inflection points.
pub fn cross_oracle_check(f: &RationalMap, fam: &DivisorFamily) -> Result<AgreementReport, SolveError> {
    let report = inflection_divisor_n1(f, fam)?;
    let wronskian_agrees = if fam.is_linear() {
        let w = wronskian_inflection(f, fam)?;
        let same = w.divisor() == report.divisor();
        if !same {
            return Err(SolveError::Disagreement(format!("solver:    {report}\nwronskian: {w}")));
        }
        Some(true)
    } else {
        None
    };
    let s = pulled_back(f, fam)?;
    let analysis = analyze_chart(&s, Chart::Affine)?;
    let mut spot_checks = Vec::new();
    for c in &report.clusters {
        let (crate::poly::Locus::Finite(q), Some(bd)) = (&c.cluster.locus, c.breakdown) else {
            continue;
        };
        if q.degree() != Some(1) || bd.proper == 0 {
            continue;
        }
        let p = -q.coeff(0);
        if let Some(check) = spot_check(&analysis.reduced, &p)? {
            if !check.agrees() {
                return Err(SolveError::Disagreement(format!(
                    "at t = {}: ord Res = {}, local intersection sum = {}\nsolver: {report}",
                    check.t, check.resultant_order, check.oracle_sum
                )));
            }
            spot_checks.push(check);
        }
    }
    Ok(AgreementReport { wronskian_agrees, spot_checks })
}

/// Checks `ord_{t-p} Res(F, ∂F)` against local intersection numbers, when
/// all common zeros over `t = p` are rational. `None` otherwise.
pub fn spot_check(reduced: &BinaryForm, p: &Rat) -> Result<Option<SpotCheck>, SolveError> {
    let derivative = reduced.derivative_t();
    let res = binary_resultant(reduced, &derivative);
    if res.is_zero() {
        return Err(SolveError::Degenerate(DegenerateReason::HorizontalExcess));
    }
    let linear = UniPoly::from_coeffs(vec![-p.clone(), Rat::from_integer(1.into())]);
    let resultant_order = crate::poly::order_at(&res, &linear).expect("nonzero");
    match pair_intersection_over(reduced, &derivative, p) {
        Some((oracle_sum, fiber_points)) => {
            Ok(Some(SpotCheck { t: fmt_rat(p), resultant_order, oracle_sum, fiber_points }))
        }
        None => Ok(None),
    }
}

/// Sum of local intersection numbers of `F = G = 0` along `t = p`, or `None`
/// when some common zero has irrational `z`.
pub fn pair_intersection_over(f: &BinaryForm, g: &BinaryForm, p: &Rat) -> Option<(u32, usize)> {
    let deg_f = f.degree();
    let deg_g = g.degree();
    // affine in ζ = z0/z1: Σ_j c_j ζ^(deg-j)
    let fiber = |form: &BinaryForm| -> UniPoly {
        let d = form.degree();
        form.at(p)
            .into_iter()
            .enumerate()
            .fold(UniPoly::zero(), |acc, (j, c)| &acc + &UniPoly::monomial(c, d - j))
    };
    let (ff, gf) = (fiber(f), fiber(g));
    let h = gcd(&ff, &gf);
    let mut total = 0u32;
    let mut points = 0usize;
    if !h.is_constant() {
        let sq = squarefree_part(&h);
        let roots = rational_roots(&sq)?;
        if roots.len() != sq.degree().unwrap_or(0) {
            return None;
        }
        for z in roots {
            let lf = localize(f, p, Some(&z));
            let lg = localize(g, p, Some(&z));
            match local_multiplicity(&lf, &lg, None).ok()? {
                LocalMultiplicity::Finite(k) => total += k,
                LocalMultiplicity::Unbounded => return None,
            }
            points += 1;
        }
    }
    // common zero at ζ = ∞, i.e. z = (1:0): both z0^deg coefficients vanish
    let lead_f = f.at(p)[0].clone();
    let lead_g = g.at(p)[0].clone();
    if lead_f == Rat::from_integer(0.into()) && lead_g == Rat::from_integer(0.into()) && deg_f > 0 && deg_g > 0 {
        let lf = localize(f, p, None);
        let lg = localize(g, p, None);
        match local_multiplicity(&lf, &lg, None).ok()? {
            LocalMultiplicity::Finite(k) => total += k,
            LocalMultiplicity::Unbounded => return None,
        }
        points += 1;
    }
    Some((total, points))
}

/// The binary form near `(t, z) = (p, z*)` in coordinates `(u, w)` with
/// `t = p + u` and `z0/z1 = z* + w`; `None` means the point `z = (1:0)`
/// with `z1/z0 = w`.
fn localize(form: &BinaryForm, p: &Rat, z: Option<&Rat>) -> MultiPoly {
    let d = form.degree();
    let mut out = MultiPoly::zero(2);
    for (j, c) in form.coeffs().iter().enumerate() {
        let cu = c.translate(p);
        let wpart = match z {
            Some(z0) => UniPoly::from_coeffs(vec![z0.clone(), Rat::from_integer(1.into())]).pow((d - j) as u32),
            None => UniPoly::monomial(Rat::from_integer(1.into()), j),
        };
        for (i, a) in cu.coeffs().iter().enumerate() {
            for (l, bcoef) in wpart.coeffs().iter().enumerate() {
                out.add_term(vec![i as u32, l as u32], a * bcoef);
            }
        }
    }
    out
}

/// Recomputes the divisor after `t ↦ 1/t` and compares it with the
/// transformed original: the two charts must tell the same story.
pub fn chart_consistency(f: &RationalMap, fam: &DivisorFamily) -> Result<bool, SolveError> {
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    let original = inflection_divisor_n1(f, fam)?.divisor();
    let flipped = inflection_divisor_n1(&f.flipped(), fam)?.divisor();
    Ok(original.moebius_preimage(&zero, &one, &one, &zero) == flipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{point_family, reparametrize_z, tangent_line_family};
    use crate::poly::rat::rat;

    fn map(c: &[&[i64]]) -> RationalMap {
        RationalMap::from_ints(c).unwrap()
    }

    #[test]
    fn riemann_hurwitz_double_cover() {
        let f = map(&[&[0, 0, 1], &[1]]);
        let s = pullback_unchecked(&f, &point_family()).unwrap();
        let a = analyze_chart(&s, Chart::Affine).unwrap();
        assert_eq!(a.content, UniPoly::one());
        assert_eq!(a.resultant, UniPoly::from_ints(&[0, -2]));
        let r = inflection_divisor_n1(&f, &point_family()).unwrap();
        assert_eq!(r.total, 2);
        assert_eq!((r.multiplicity_at(&rat(0)), r.multiplicity_at_infinity()), (1, 1));
    }

    #[test]
    fn pencil_with_base_point() {
        let f = map(&[&[0, 1], &[0, 0, 1], &[1]]);
        let pencil = DivisorFamily::parse("z0*x1 - z1*x0", 3, 2).unwrap();
        let s = pullback_unchecked(&f, &pencil).unwrap();
        let a = analyze_chart(&s, Chart::Affine).unwrap();
        assert_eq!(a.content, UniPoly::var());
        assert!(a.resultant.is_constant());
        let r = inflection_divisor_n1(&f, &pencil).unwrap();
        assert_eq!(r.total, 2);
        let c = &r.clusters[0];
        assert_eq!(c.breakdown, Some(Breakdown { vertical: 2, proper: 0 }));
        assert_eq!(r.multiplicity_at_infinity(), 0);
        let check = cross_oracle_check(&f, &pencil).unwrap();
        assert_eq!(check.wronskian_agrees, Some(true));
    }

    #[test]
    fn reparametrized_point_family_doubles() {
        let f = map(&[&[0, 0, 1], &[1]]);
        let h = map(&[&[0, 0, 1], &[1]]);
        let fam = reparametrize_z(&point_family(), &h).unwrap();
        let s = pullback_unchecked(&f, &fam).unwrap();
        let a = analyze_chart(&s, Chart::Affine).unwrap();
        assert_eq!(a.resultant, UniPoly::from_ints(&[0, 0, 4]));
        let v = verify(&f, &fam, 0).unwrap();
        assert_eq!((v.lhs_total, v.rhs.rhs_total, v.matched), (4, 4, true));
        assert_eq!(v.report.multiplicity_at(&rat(0)), 2);
        assert_eq!(v.report.multiplicity_at_infinity(), 2);
    }

    #[test]
    fn degeneracy_verdicts() {
        let conic = map(&[&[1], &[0, 1], &[0, 0, 1]]);
        let (tangents, _) = tangent_line_family(&conic).unwrap();
        assert_eq!(degeneracy_check(&conic, &tangents).unwrap(), Verdict::EverywhereInflectionary);
        let f = map(&[&[0, 0, 1], &[1]]);
        assert_eq!(degeneracy_check(&f, &point_family()).unwrap(), Verdict::NondegenerateFinite);
        // a line inside the member z = (1:0) of the pencil through (0:0:1)
        let pencil = DivisorFamily::parse("z0*x1 - z1*x0", 3, 2).unwrap();
        let line = map(&[&[0], &[0, 1], &[1]]);
        assert_eq!(degeneracy_check(&line, &pencil).unwrap(), Verdict::DegenerateImage);
    }

    #[test]
    fn rejects_higher_dimensional_nonlinear_families() {
        let fam = DivisorFamily::parse("x0^2*z0 + x1^2*z1 + x2^2*z2", 3, 3).unwrap();
        let f = map(&[&[1], &[0, 1], &[0, 0, 1]]);
        assert_eq!(inflection_divisor_n1(&f, &fam), Err(SolveError::NotImplemented(2)));
        assert_eq!(verify(&f, &point_family(), 1).unwrap_err(), SolveError::Genus(1));
    }

    #[test]
    fn local_leg_on_cube() {
        let f = map(&[&[0, 0, 0, 1], &[1]]);
        let rep = cross_oracle_check(&f, &point_family()).unwrap();
        assert_eq!(rep.spot_checks.len(), 1);
        assert_eq!(rep.spot_checks[0].resultant_order, 2);
        assert!(rep.agreed());
        assert!(chart_consistency(&f, &point_family()).unwrap());
    }
}
