//! Galois-stable groups of points on the projective line.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::parse_uni;
use super::uni::UniPoly;

/// Where a cluster lives: the roots of a monic squarefree polynomial in the
/// affine chart `t = t0/t1`, or the single point `t1 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Locus {
    Finite(UniPoly),
    Infinity,
}

impl Locus {
    pub fn point_count(&self) -> usize {
        match self {
            Locus::Finite(q) => q.degree().unwrap_or(0),
            Locus::Infinity => 1,
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        match self {
            Locus::Finite(q) => q.display_in(var),
            Locus::Infinity => "∞".into(),
        }
    }

    /// Sort key: finite loci by degree then coefficients, infinity last.
    pub(crate) fn sort_key(&self) -> (u8, usize, String) {
        match self {
            Locus::Finite(q) => (0, q.degree().unwrap_or(0), q.to_string()),
            Locus::Infinity => (1, 1, String::new()),
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Serialize for Locus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.display_in("t"))
    }
}

impl<'de> Deserialize<'de> for Locus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "∞" {
            return Ok(Locus::Infinity);
        }
        parse_uni(&text, "t").map(Locus::Finite).map_err(serde::de::Error::custom)
    }
}

/// Points sharing one multiplicity, encoded by their defining polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PointCluster {
    pub locus: Locus,
    pub multiplicity: u32,
}

impl PointCluster {
    pub fn finite(q: UniPoly, multiplicity: u32) -> Self {
        debug_assert!(q.is_monic() && super::sqfree::is_squarefree(&q));
        PointCluster { locus: Locus::Finite(q), multiplicity }
    }

    pub fn infinity(multiplicity: u32) -> Self {
        PointCluster { locus: Locus::Infinity, multiplicity }
    }

    pub fn point_count(&self) -> usize {
        self.locus.point_count()
    }

    /// Contribution `multiplicity · point_count` to a divisor degree.
    pub fn weight(&self) -> i64 {
        self.multiplicity as i64 * self.point_count() as i64
    }
}

impl fmt::Display for PointCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.locus, self.multiplicity)
    }
}
