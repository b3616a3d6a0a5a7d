//! Intersection multiplicity at the origin by linear algebra on truncations.
//!
//! `dim ℚ[u,w]/((F,G) + m^N)` is nondecreasing in `N`; once two consecutive
//! truncations agree, Nakayama gives `m^N ⊆ (F,G)` in the local ring and the
//! value is the local intersection number.

use std::collections::HashMap;

use num_traits::Zero;

use super::multi::MultiPoly;
use super::rat::Rat;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalMultiplicity {
    Finite(u32),
    /// No stabilization up to the degree bound (typically a shared branch
    /// through the origin).
    Unbounded,
}

/// Total degree of a polynomial in two variables.
fn total_degree(p: &MultiPoly) -> u32 {
    p.terms().keys().map(|e| e.iter().sum()).max().unwrap_or(0)
}

pub fn default_degree_bound(f: &MultiPoly, g: &MultiPoly) -> usize {
    2 * (total_degree(f) * total_degree(g)) as usize + 2
}

/// Local intersection multiplicity of `f = g = 0` at the origin of the
/// `(u, w)` plane. Both inputs must be polynomials in two variables.
pub fn local_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    degree_bound: Option<usize>,
) -> Result<LocalMultiplicity, PolyError> {
    assert!(f.nvars() == 2 && g.nvars() == 2, "local_multiplicity needs bivariate input");
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(f, g));
    if bound < 1 {
        return Err(PolyError::DegreeBound(bound));
    }
    let origin = vec![0u32, 0];
    if f.terms().contains_key(&origin) || g.terms().contains_key(&origin) {
        return Ok(LocalMultiplicity::Finite(0));
    }
    let mut prev = truncated_colength(f, g, 1);
    for n in 2..=bound + 1 {
        let cur = truncated_colength(f, g, n);
        if cur == prev {
            return Ok(LocalMultiplicity::Finite(prev as u32));
        }
        prev = cur;
    }
    Ok(LocalMultiplicity::Unbounded)
}

/// `dim ℚ[u,w]/((f,g) + m^n)`.
fn truncated_colength(f: &MultiPoly, g: &MultiPoly, n: usize) -> usize {
    let monomials: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect();
    let index: HashMap<(u32, u32), usize> = monomials.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for p in [f, g] {
        for &(a, b) in &monomials {
            let mut row = vec![Rat::zero(); monomials.len()];
            let mut any = false;
            for (e, c) in p.terms() {
                if let Some(&k) = index.get(&(e[0] + a, e[1] + b)) {
                    row[k] = c.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    monomials.len() - rank(rows)
}

fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in &mut rows[r][col..] {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..ncols {
                row[j] -= &factor * &pivot[j];
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_multi;

    fn bi(s: &str) -> MultiPoly {
        parse_multi(s, &["u".to_string(), "w".to_string()]).unwrap()
    }

    fn mult(f: &str, g: &str) -> LocalMultiplicity {
        local_multiplicity(&bi(f), &bi(g), None).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(mult("u", "w"), LocalMultiplicity::Finite(1));
        assert_eq!(mult("u^2", "w"), LocalMultiplicity::Finite(2));
        assert_eq!(mult("w - u^2", "w + u^2"), LocalMultiplicity::Finite(2));
    }

    #[test]
    fn classical_values() {
        // cusp against its tangent line: w^2 = u^3 meets w = 0 with multiplicity 3
        assert_eq!(mult("w^2 - u^3", "w"), LocalMultiplicity::Finite(3));
        // two transverse nodes branches against a line through the node
        assert_eq!(mult("w^2 - u^2 - u^3", "w - 2*u"), LocalMultiplicity::Finite(2));
        assert_eq!(mult("u + 1", "w"), LocalMultiplicity::Finite(0));
    }

    #[test]
    fn shared_branch_is_unbounded() {
        assert_eq!(mult("u*w", "u*(w + 1)"), LocalMultiplicity::Unbounded);
        assert!(local_multiplicity(&bi("u"), &bi("w"), Some(0)).is_err());
    }
}
