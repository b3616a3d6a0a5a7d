//! Gcd, distinct-power decomposition and multiplicity bookkeeping in ℚ[t].

use num_bigint::BigInt;
use num_traits::Zero;

use super::rat::Rat;
use super::uni::{primitive, UniPoly};
use super::PolyError;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
///
/// Runs a primitive remainder sequence over the integers so that coefficient
/// growth stays linear in the degree.
pub fn gcd(p: &UniPoly, q: &UniPoly) -> UniPoly {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return UniPoly::zero(),
        (true, false) => return q.monic(),
        (false, true) => return p.monic(),
        _ => {}
    }
    let (mut a, mut b) = (p.primitive_integer(), q.primitive_integer());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
        if b.is_empty() {
            return UniPoly::from_integer_coeffs(a).monic();
        }
    }
    // b is a nonzero constant
    UniPoly::one()
}

/// Pseudo-remainder of ascending integer coefficient vectors, `deg a >= deg b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

pub fn lcm(p: &UniPoly, q: &UniPoly) -> UniPoly {
    if p.is_zero() || q.is_zero() {
        return UniPoly::zero();
    }
    let g = gcd(p, q);
    (p * &q.exact_div(&g).expect("gcd divides")).monic()
}

/// `p = unit · Π factor^multiplicity` with monic, squarefree, pairwise coprime
/// factors and strictly increasing multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctPowers {
    pub unit: Rat,
    pub factors: Vec<(UniPoly, u32)>,
}

impl DistinctPowers {
    pub fn reassemble(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (q, e)| &acc * &q.pow(*e))
    }
}

/// Yun's algorithm over ℚ (characteristic zero).
pub fn distinct_power_decomposition(p: &UniPoly) -> Result<DistinctPowers, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("distinct_power_decomposition"));
    }
    let unit = p.leading();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(DistinctPowers { unit, factors });
    }
    let df = f.derivative();
    let g = gcd(&f, &df);
    let mut a = f.exact_div(&g).expect("gcd divides f");
    let mut b = df.exact_div(&g).expect("gcd divides f'");
    let mut mult = 1u32;
    loop {
        let c = &b - &a.derivative();
        if c.is_zero() {
            // a is squarefree and every remaining root has this multiplicity
            if !a.is_constant() {
                factors.push((a.monic(), mult));
            }
            break;
        }
        let d = gcd(&a, &c);
        if !d.is_constant() {
            factors.push((d.clone(), mult));
        }
        a = a.exact_div(&d).expect("gcd divides a");
        b = c.exact_div(&d).expect("gcd divides c");
        mult += 1;
        if a.is_constant() {
            break;
        }
    }
    Ok(DistinctPowers { unit, factors })
}

pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let g = gcd(p, &p.derivative());
    p.exact_div(&g).expect("gcd divides").monic()
}

pub fn is_squarefree(p: &UniPoly) -> bool {
    !p.is_zero() && gcd(p, &p.derivative()).is_constant()
}

/// Largest `e` with `q^e | p`. `q` must be nonconstant.
pub fn order_at(p: &UniPoly, q: &UniPoly) -> Result<u32, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("order_at"));
    }
    if q.is_constant() {
        return Err(PolyError::ConstantCluster);
    }
    let mut e = 0;
    let mut rest = p.clone();
    while let Some(next) = rest.exact_div(q) {
        rest = next;
        e += 1;
    }
    Ok(e)
}

/// Splits two multiplicity-stratified factor lists onto a common coprime
/// basis. Each output `(q, e1, e2)` has `q` squarefree and monic, with every
/// root of `q` of multiplicity `e1` in the first product and `e2` in the
/// second.
pub fn refine_pair(first: &[(UniPoly, u32)], second: &[(UniPoly, u32)]) -> Vec<(UniPoly, u32, u32)> {
    let mut out = Vec::new();
    let mut second_rest: Vec<UniPoly> = second.iter().map(|(q, _)| q.clone()).collect();
    for (q, e) in first {
        let mut q_rest = q.clone();
        for (j, (r, f)) in second.iter().enumerate() {
            let g = gcd(&q_rest, r);
            if g.is_constant() {
                continue;
            }
            q_rest = q_rest.exact_div(&g).expect("gcd divides");
            second_rest[j] = second_rest[j].exact_div(&g).expect("gcd divides");
            out.push((g, *e, *f));
        }
        if !q_rest.is_constant() {
            out.push((q_rest.monic(), *e, 0));
        }
    }
    for (r, (_, f)) in second_rest.into_iter().zip(second) {
        if !r.is_constant() {
            out.push((r.monic(), 0, *f));
        }
    }
    out
}

/// Rational roots by the rational root test. Gives up (`None`) when the
/// extreme coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &UniPoly) -> Option<Vec<Rat>> {
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};
    if p.is_zero() {
        return None;
    }
    let mut roots = Vec::new();
    let mut q = squarefree_part(p);
    if q.coeff(0).is_zero() {
        roots.push(Rat::zero());
        q = q.exact_div(&UniPoly::var()).expect("t divides");
    }
    if q.is_constant() {
        return Some(roots);
    }
    let ints = q.primitive_integer();
    let a0 = ints[0].abs().to_u64().filter(|&v| v <= 1_000_000)?;
    let an = ints.last().unwrap().abs().to_u64().filter(|&v| v <= 1_000_000)?;
    let divisors = |n: u64| -> Vec<u64> { (1..=n).filter(|k| n.is_multiple_of(*k)).collect() };
    let dens = divisors(an);
    for num in divisors(a0) {
        for &den in &dens {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rat::new(BigInt::from(sign * num as i64), BigInt::from(den));
                if q.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&t(&[-1, 0, 1]), &t(&[-1, 1])), t(&[-1, 1]));
        assert_eq!(gcd(&t(&[0, 1]), &t(&[0, -1, 1])), t(&[0, 1]));
        assert_eq!(gcd(&t(&[1, 0, 1]), &t(&[2, 1])), UniPoly::one());
        assert!(gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
        assert_eq!(gcd(&UniPoly::zero(), &t(&[4, 2])), t(&[2, 1]));
    }

    #[test]
    fn decomposition_examples() {
        let d = distinct_power_decomposition(&t(&[0, 0, 0, 1, 1])).unwrap();
        assert_eq!(d.factors, vec![(t(&[1, 1]), 1), (t(&[0, 1]), 3)]);

        let d = distinct_power_decomposition(&t(&[-1, 0, 1])).unwrap();
        assert_eq!(d.factors, vec![(t(&[-1, 0, 1]), 1)]);

        // (t-1)^2 (t+2)^2
        let p = UniPoly::from_roots(&[1, 1, -2, -2]);
        let d = distinct_power_decomposition(&p).unwrap();
        assert_eq!(d.factors, vec![(t(&[-2, 1, 1]), 2)]);
        assert_eq!(d.reassemble(), p);

        assert!(distinct_power_decomposition(&UniPoly::zero()).is_err());
    }

    #[test]
    fn decomposition_keeps_unit() {
        let p = t(&[0, 0, -6]);
        let d = distinct_power_decomposition(&p).unwrap();
        assert_eq!(d.factors, vec![(t(&[0, 1]), 2)]);
        assert_eq!(d.reassemble(), p);
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_at(&t(&[0, -2]), &t(&[0, 1])).unwrap(), 1);
        assert_eq!(order_at(&t(&[0, 0, 6]), &t(&[0, 1])).unwrap(), 2);
        assert_eq!(order_at(&t(&[-1, 0, 1]), &t(&[0, 1])).unwrap(), 0);
        assert!(order_at(&UniPoly::zero(), &t(&[0, 1])).is_err());
    }

    #[test]
    fn rational_roots_found() {
        let p = &UniPoly::from_roots(&[0, 3, -2, -2]) * &t(&[1, 0, 1]);
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![Rat::from_integer((-2).into()), Rat::zero(), Rat::from_integer(3.into())]);
        let half = UniPoly::from_coeffs(vec![Rat::new((-1).into(), 1.into()), Rat::from_integer(2.into())]);
        assert_eq!(rational_roots(&half).unwrap(), vec![Rat::new(1.into(), 2.into())]);
    }

    #[test]
    fn refinement_splits_shared_roots() {
        // first: t (mult 1), (t-1)(t-2) (mult 2); second: (t-1) t (mult 1)
        let first = vec![(t(&[0, 1]), 1), (UniPoly::from_roots(&[1, 2]), 2)];
        let second = vec![(UniPoly::from_roots(&[0, 1]), 1)];
        let mut got = refine_pair(&first, &second);
        got.sort_by_key(|(q, _, _)| q.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
        let total: usize = got.iter().map(|(q, _, _)| q.degree().unwrap()).sum();
        assert_eq!(total, 3);
        for (q, e1, e2) in got {
            let root = -q.coeff(0);
            let expect = match root.to_integer().try_into().unwrap() {
                0i64 => (1, 1),
                1 => (2, 1),
                2 => (2, 0),
                _ => unreachable!(),
            };
            assert_eq!((e1, e2), expect);
        }
    }
}
