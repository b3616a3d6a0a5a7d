//! Jet sections of pulled-back family forms, and the Wronskian route to
//! inflection multiplicities for linear series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{pullback_unchecked, CurveError, RationalMap};
use crate::family::DivisorFamily;
use crate::poly::multi::Exponents;
use crate::poly::sqfree::gcd;
use crate::poly::{determinant, distinct_power_decomposition, BiForm, BinaryForm, MultiPoly, PointCluster, UniPoly};
use crate::report::{Chart, DegenerateReason, InflectionReport, ReportCluster};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("jet order must be at least 1")]
    Order,
    #[error("section vanishes identically")]
    ZeroSection,
    #[error("section is not a form on P¹ × S (left arity {0})")]
    NotOnLine(usize),
    #[error("the Wronskian route needs a family linear in z, got bidegree {0:?}")]
    NotLinear((u32, u32)),
    #[error("degenerate: {0}")]
    Degenerate(DegenerateReason),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A form on `P¹ × Pⁿ` read in one affine chart of the `P¹` factor: for each
/// `z`-monomial, a polynomial in the chart coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartForm {
    pub chart: Chart,
    pub z_arity: usize,
    pub z_degree: u32,
    pub coeffs: BTreeMap<Exponents, UniPoly>,
}

impl ChartForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(UniPoly::is_zero)
    }

    pub fn derivative(&self) -> ChartForm {
        ChartForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| (e.clone(), p.derivative()))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
            ..self.clone()
        }
    }

    /// Monic gcd of the `z`-coefficients.
    pub fn content(&self) -> UniPoly {
        self.coeffs.values().fold(UniPoly::zero(), |acc, p| gcd(&acc, p))
    }

    pub fn exact_div(&self, c: &UniPoly) -> Option<ChartForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, p)| p.exact_div(c).map(|q| (e.clone(), q)))
            .collect::<Option<_>>()?;
        Some(ChartForm { coeffs, ..self.clone() })
    }

    /// The coefficient of `z_i` (for forms linear in `z`).
    pub fn linear_coefficient(&self, i: usize) -> UniPoly {
        let mut e = vec![0; self.z_arity];
        e[i] = 1;
        self.coeffs.get(&e).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// The form as a polynomial in `(chart variable, z0, …, zn)`.
    pub fn to_multi(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(1 + self.z_arity);
        for (e, p) in &self.coeffs {
            for (k, c) in p.coeffs().iter().enumerate() {
                let mut exps = vec![k as u32];
                exps.extend(e);
                out.add_term(exps, c.clone());
            }
        }
        out
    }

    /// For two `z`-variables: the binary form `Σ_j c_j z0^(b-j) z1^j`.
    pub fn to_binary(&self) -> BinaryForm {
        assert_eq!(self.z_arity, 2, "binary form needs two z-variables");
        let b = self.z_degree as usize;
        let mut coeffs = vec![UniPoly::zero(); b + 1];
        for (e, p) in &self.coeffs {
            coeffs[e[1] as usize] = p.clone();
        }
        BinaryForm::new(b, coeffs)
    }
}

/// Sets `t1 = 1` (affine chart, variable `t = t0`) or `t0 = 1` (infinity
/// chart, variable `u = t1`).
pub fn dehomogenize(s: &BiForm, chart: Chart) -> Result<ChartForm, JetError> {
    if s.left_arity() != 2 {
        return Err(JetError::NotOnLine(s.left_arity()));
    }
    let (_, b) = s.bidegree();
    let mut coeffs: BTreeMap<Exponents, UniPoly> = BTreeMap::new();
    for ((l, r), c) in s.terms() {
        let k = match chart {
            Chart::Affine => l[0],
            Chart::Infinity => l[1],
        };
        let slot = coeffs.entry(r.clone()).or_default();
        *slot = &*slot + &UniPoly::monomial(c.clone(), k as usize);
    }
    coeffs.retain(|_, p| !p.is_zero());
    Ok(ChartForm { chart, z_arity: s.right_arity(), z_degree: b, coeffs })
}

/// `S = c · S̃` with `c` the monic gcd of the `z`-coefficients in the chart.
pub fn content_in_t(s: &BiForm, chart: Chart) -> Result<(UniPoly, ChartForm), JetError> {
    let cf = dehomogenize(s, chart)?;
    if cf.is_zero() {
        return Err(JetError::ZeroSection);
    }
    let c = cf.content();
    let reduced = cf.exact_div(&c).expect("content divides every coefficient");
    Ok((c, reduced))
}

/// `(S, ∂S, …, ∂ⁿS)` in one chart, with the line-bundle bidegree carried by
/// each graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSection {
    pub chart: Chart,
    pub components: Vec<ChartForm>,
    /// `(a·d − 2k, b)` for the `k`-th piece: the `ω^{⊗k}` twist has degree
    /// `−2k` on `P¹`.
    pub twist_degrees: Vec<(i64, u32)>,
}

pub fn jet_section(s: &BiForm, n: usize, chart: Chart) -> Result<JetSection, JetError> {
    if n < 1 {
        return Err(JetError::Order);
    }
    let base = dehomogenize(s, chart)?;
    if base.is_zero() {
        return Err(JetError::ZeroSection);
    }
    let (t_deg, b) = s.bidegree();
    let mut components = vec![base];
    for _ in 0..n {
        let next = components.last().unwrap().derivative();
        components.push(next);
    }
    let twist_degrees = (0..=n as i64).map(|k| (t_deg as i64 - 2 * k, b)).collect();
    Ok(JetSection { chart, components, twist_degrees })
}

/// `det(G_i^{(j)})` with rows indexed by derivative order.
pub fn wronskian(g: &[UniPoly]) -> UniPoly {
    let n = g.len();
    let mut rows = Vec::with_capacity(n);
    let mut current: Vec<UniPoly> = g.to_vec();
    for _ in 0..n {
        let next = current.iter().map(UniPoly::derivative).collect();
        rows.push(std::mem::replace(&mut current, next));
    }
    determinant(rows)
}

/// Affine-chart clusters plus the order at `t = ∞` of a Wronskian pair.
pub(crate) fn clusters_from_pair(affine: &UniPoly, at_infinity: &UniPoly) -> Vec<ReportCluster> {
    let mut clusters = Vec::new();
    if let Ok(dp) = distinct_power_decomposition(affine) {
        for (q, e) in dp.factors {
            clusters.push(ReportCluster { chart: Chart::Affine, cluster: PointCluster::finite(q, e), breakdown: None });
        }
    }
    let k = at_infinity.trailing_zeros().unwrap_or(0) as u32;
    if k > 0 {
        clusters.push(ReportCluster { chart: Chart::Infinity, cluster: PointCluster::infinity(k), breakdown: None });
    }
    clusters
}

/// Pulled-back generators of a linear family in one chart.
pub fn pulled_back_generators(f: &RationalMap, fam: &DivisorFamily, chart: Chart) -> Result<Vec<UniPoly>, JetError> {
    if !fam.is_linear() {
        return Err(JetError::NotLinear(fam.bidegree()));
    }
    let s = pullback_unchecked(f, fam)?;
    let cf = dehomogenize(&s, chart)?;
    Ok((0..fam.z_arity()).map(|i| cf.linear_coefficient(i)).collect())
}

/// Inflection divisor of `f` relative to a linear series, read off the
/// Wronskian of the pulled-back generators in both charts.
pub fn wronskian_inflection(f: &RationalMap, fam: &DivisorFamily) -> Result<InflectionReport, JetError> {
    let affine = wronskian(&pulled_back_generators(f, fam, Chart::Affine)?);
    if affine.is_zero() {
        return Err(JetError::Degenerate(DegenerateReason::WronskianVanishes));
    }
    let at_inf = wronskian(&pulled_back_generators(f, fam, Chart::Infinity)?);
    Ok(InflectionReport::from_clusters(clusters_from_pair(&affine, &at_inf)))
}

/// Serializable view of a [`JetSection`] for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetSummary {
    pub chart: Chart,
    pub components: Vec<String>,
    pub twist_degrees: Vec<(i64, u32)>,
}

impl From<&JetSection> for JetSummary {
    fn from(j: &JetSection) -> Self {
        let var = match j.chart {
            Chart::Affine => "t",
            Chart::Infinity => "u",
        };
        let mut names = vec![var.to_string()];
        let z_arity = j.components.first().map_or(0, |c| c.z_arity);
        names.extend((0..z_arity).map(|i| format!("z{i}")));
        let components = j.components.iter().map(|cf| cf.to_multi().display_with(&names)).collect();
        JetSummary { chart: j.chart, components, twist_degrees: j.twist_degrees.clone() }
    }
}
