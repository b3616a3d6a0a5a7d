//! Reproducible random instances.
//!
//! Instance `k` of a batch with seed `s` draws from the ChaCha stream `k` of
//! key `s`, so any single instance can be replayed without the others.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::RationalMap;
use crate::family::DivisorFamily;
use crate::poly::multi::Exponents;
use crate::poly::rat::rat;
use crate::poly::sqfree::is_squarefree;
use crate::poly::{BiForm, UniPoly};

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// All exponent vectors of `arity` variables with total degree `degree`.
pub fn monomials(arity: usize, degree: u32) -> Vec<Exponents> {
    if arity == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(arity - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn coefficient(rng: &mut impl Rng, bound: i64, sparsity: f64) -> i64 {
    if rng.gen_bool(sparsity) {
        0
    } else {
        rng.gen_range(-bound..=bound)
    }
}

/// A polynomial of exact degree `deg` with small integer coefficients.
pub fn random_uni(rng: &mut impl Rng, deg: usize, bound: i64) -> UniPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| coefficient(rng, bound, 0.3)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    UniPoly::from_ints(&c)
}

/// A map `P¹ → Pᵐ` of degree exactly `d`.
pub fn random_map(rng: &mut impl Rng, m: usize, d: u32) -> RationalMap {
    loop {
        let coords: Vec<UniPoly> = (0..=m)
            .map(|_| {
                let deg = rng.gen_range(0..=d as usize);
                let mut c: Vec<i64> = (0..=deg).map(|_| coefficient(rng, 4, 0.3)).collect();
                c[deg] = c[deg].max(1);
                UniPoly::from_ints(&c)
            })
            .collect();
        if let Ok(f) = RationalMap::new(coords, Some(d)) {
            return f;
        }
    }
}

/// A flat family on `Pᵐ × P^(z_arity-1)` of bidegree `(a, b)`.
pub fn random_family(rng: &mut impl Rng, m: usize, z_arity: usize, a: u32, b: u32) -> DivisorFamily {
    let xs = monomials(m + 1, a);
    let zs = monomials(z_arity, b);
    let sparsity = rng.gen_range(0.2..0.7);
    loop {
        let mut terms = Vec::new();
        for x in &xs {
            for z in &zs {
                terms.push((x.clone(), z.clone(), rat(coefficient(rng, 3, sparsity))));
            }
        }
        let form = BiForm::from_terms(m + 1, z_arity, (a, b), terms).expect("bidegree by construction");
        if let Ok(fam) = DivisorFamily::new(form) {
            return fam;
        }
    }
}

pub fn random_squarefree(rng: &mut impl Rng, deg: usize) -> UniPoly {
    loop {
        let h = random_uni(rng, deg, 5);
        if is_squarefree(&h) {
            return h;
        }
    }
}

/// A degree-`d` map to `P²` through `(0:0:1)` at the root of a random
/// linear factor, paired with the pencil of lines through that point, so
/// the pullback has nontrivial content.
pub fn base_point_instance(rng: &mut impl Rng, d: u32) -> (RationalMap, DivisorFamily) {
    let pencil = DivisorFamily::parse("z0*x1 - z1*x0", 3, 2).expect("pencil is flat");
    loop {
        let q = UniPoly::from_ints(&[rng.gen_range(-3..=3), 1]);
        let e = rng.gen_range(1..=d.min(2)) as usize;
        let qe = q.pow(e as u32);
        let rest = d as usize - e;
        let g0 = random_uni(rng, rest, 4);
        let (d1, d2) = (rng.gen_range(0..=rest), rng.gen_range(0..=d as usize));
        let g1 = random_uni(rng, d1, 4);
        let g2 = random_uni(rng, d2, 4);
        if (&g0.scale(&g1.leading()) - &g1.scale(&g0.leading())).is_zero() {
            continue;
        }
        if let Ok(f) = RationalMap::new(vec![&qe * &g0, &qe * &g1, g2], Some(d)) {
            return (f, pencil);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_batch_order() {
        let a: Vec<u32> = (0..5).map(|k| instance_rng(7, k).gen()).collect();
        let b: Vec<u32> = (0..5).rev().map(|k| instance_rng(7, k).gen()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(3, 2)[0], vec![2, 0, 0]);
    }

    #[test]
    fn samples_meet_their_contracts() {
        let mut rng = instance_rng(1, 0);
        for d in 1..6 {
            assert_eq!(random_map(&mut rng, 2, d).degree(), d);
        }
        let fam = random_family(&mut rng, 2, 2, 2, 3);
        assert_eq!(fam.bidegree(), (2, 3));
        assert!(is_squarefree(&random_squarefree(&mut rng, 6)));
    }
}
