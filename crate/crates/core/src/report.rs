//! Inflection divisors as reported to callers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::{Locus, PointCluster, Rat, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `t = t0/t1`.
    Affine,
    /// `u = t1/t0`; only its `u = 0` point is reported.
    Infinity,
}

/// How a multiplicity splits between vertical components `{p} × S` of the
/// inflection locus and proper intersections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    pub vertical: u32,
    pub proper: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCluster {
    pub chart: Chart,
    #[serde(flatten)]
    pub cluster: PointCluster,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub breakdown: Option<Breakdown>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DegenerateReason {
    /// `f(C)` lies inside a member of the family.
    ImageInFiber,
    /// A horizontal curve of inflection: the reduced section and its
    /// derivative share a factor in `z`.
    HorizontalExcess,
    /// The reduced section does not depend on the curve parameter.
    ConstantInT,
    /// The pulled-back generators of a linear series are dependent.
    WronskianVanishes,
}

impl fmt::Display for DegenerateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerateReason::ImageInFiber => "IMAGE_IN_FIBER",
            DegenerateReason::HorizontalExcess => "HORIZONTAL_EXCESS",
            DegenerateReason::ConstantInT => "CONSTANT_IN_T",
            DegenerateReason::WronskianVanishes => "WRONSKIAN_VANISHES",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflectionReport {
    pub clusters: Vec<ReportCluster>,
    pub total: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degenerate: Option<DegenerateReason>,
}

impl InflectionReport {
    pub fn from_clusters(mut clusters: Vec<ReportCluster>) -> Self {
        clusters.retain(|c| c.cluster.multiplicity > 0);
        clusters.sort_by(|a, b| {
            a.cluster
                .locus
                .sort_key()
                .cmp(&b.cluster.locus.sort_key())
                .then(a.cluster.multiplicity.cmp(&b.cluster.multiplicity))
        });
        let total = clusters.iter().map(|c| c.cluster.weight()).sum();
        InflectionReport { clusters, total, degenerate: None }
    }

    pub fn degenerate(reason: DegenerateReason) -> Self {
        InflectionReport { clusters: Vec::new(), total: 0, degenerate: Some(reason) }
    }

    /// Canonical form for comparing two computations of the same divisor.
    pub fn divisor(&self) -> Divisor {
        let mut finite: BTreeMap<u32, UniPoly> = BTreeMap::new();
        let mut at_infinity = 0;
        for c in &self.clusters {
            match &c.cluster.locus {
                Locus::Finite(q) => {
                    let slot = finite.entry(c.cluster.multiplicity).or_insert_with(UniPoly::one);
                    *slot = (&*slot * q).monic();
                }
                Locus::Infinity => at_infinity += c.cluster.multiplicity,
            }
        }
        Divisor { finite, at_infinity }
    }

    /// Multiplicity at a rational point of the affine chart.
    pub fn multiplicity_at(&self, t: &crate::poly::Rat) -> u32 {
        self.clusters
            .iter()
            .filter_map(|c| match &c.cluster.locus {
                Locus::Finite(q) if q.eval(t) == crate::poly::Rat::from_integer(0.into()) => Some(c.cluster.multiplicity),
                _ => None,
            })
            .sum()
    }

    pub fn multiplicity_at_infinity(&self) -> u32 {
        self.clusters
            .iter()
            .filter(|c| c.cluster.locus == Locus::Infinity)
            .map(|c| c.cluster.multiplicity)
            .sum()
    }
}

/// A divisor on `P¹`: for each multiplicity, the monic squarefree
/// polynomial whose roots carry it, plus the multiplicity at `t = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub finite: BTreeMap<u32, UniPoly>,
    pub at_infinity: u32,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.finite
            .iter()
            .map(|(m, q)| *m as i64 * q.degree().unwrap_or(0) as i64)
            .sum::<i64>()
            + self.at_infinity as i64
    }

    /// Pullback along `s ↦ (α·s + β)/(γ·s + δ)`.
    pub fn moebius_preimage(&self, alpha: &Rat, beta: &Rat, gamma: &Rat, delta: &Rat) -> Divisor {
        let num = UniPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let den = UniPoly::from_coeffs(vec![delta.clone(), gamma.clone()]);
        let mut out = Divisor { finite: BTreeMap::new(), at_infinity: 0 };
        let mut put = |m: u32, q: UniPoly| {
            let slot = out.finite.entry(m).or_insert_with(UniPoly::one);
            *slot = (&*slot * &q).monic();
        };
        for (&m, q) in &self.finite {
            let k = q.degree().unwrap_or(0);
            let pulled = q
                .coeffs()
                .iter()
                .enumerate()
                .fold(UniPoly::zero(), |acc, (i, c)| &acc + &(&num.pow(i as u32) * &den.pow((k - i) as u32)).scale(c));
            let lost = k - pulled.degree().unwrap_or(0);
            if !pulled.is_constant() {
                put(m, pulled);
            }
            out.at_infinity += m * lost as u32;
        }
        if self.at_infinity > 0 {
            if den.is_constant() {
                out.at_infinity += self.at_infinity;
            } else {
                put(self.at_infinity, den);
            }
        }
        out.finite.retain(|_, q| !q.is_constant());
        out
    }
}

impl fmt::Display for InflectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(reason) = self.degenerate {
            return write!(f, "DEGENERATE ({reason})");
        }
        let parts: Vec<String> = self.clusters.iter().map(|c| c.cluster.to_string()).collect();
        write!(f, "[{}] total {}", parts.join(", "), self.total)
    }
}
