//! Flat families of divisors `𝒟 ⊆ Pᵐ × Pⁿ` cut out by one bihomogeneous form.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curve::RationalMap;
use crate::poly::multi::Exponents;
use crate::poly::parse::parse_biform;
use crate::poly::sqfree::gcd;
use crate::poly::{BiForm, MultiPoly, PolyError, Rat, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family bidegree {0:?} must be at least (1, 1)")]
    Bidegree((u32, u32)),
    #[error("family is not flat: every coefficient vanishes at z = {witness}")]
    NotFlat { witness: String },
    #[error("hyperplane family needs m >= 1, got {0}")]
    Dimension(usize),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("generators must share one degree; found {0:?}")]
    MixedDegrees(Vec<u32>),
    #[error("generator {0} is not homogeneous")]
    InhomogeneousGenerator(usize),
    #[error("a linear series needs at least two generators")]
    TooFewGenerators,
    #[error("the map is nowhere immersive: tangent determinant vanishes identically")]
    NotImmersive,
    #[error("tangent lines do not move: every member is {form}")]
    ConstantInZ { form: String },
    #[error("tangent-line families need a map to P², got target dimension {0}")]
    NotPlane(usize),
    #[error("operation needs a one-parameter family (n = 1), got n = {0}")]
    NotPencil(usize),
    #[error("reparametrization must be a map P¹ → P¹, got target dimension {0}")]
    ReparamTarget(usize),
    #[error("fiber at {0} vanishes identically")]
    ZeroFiber(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Outcome of the flatness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Flatness {
    Pass,
    /// No common factor found on the sampled lines (only for `n >= 2` and
    /// `b >= 2`, where the test is not a decision procedure).
    ProbablePass,
    Fail { witness: String },
}

impl Flatness {
    pub fn passed(&self) -> bool {
        !matches!(self, Flatness::Fail { .. })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorFamily {
    form: BiForm,
}

impl DivisorFamily {
    /// Validates bidegree and flatness.
    pub fn new(form: BiForm) -> Result<Self, FamilyError> {
        let (a, b) = form.bidegree();
        if a == 0 || b == 0 || form.is_zero() {
            return Err(FamilyError::Bidegree((a, b)));
        }
        match flatness_of_form(&form) {
            Flatness::Fail { witness } => Err(FamilyError::NotFlat { witness }),
            _ => Ok(DivisorFamily { form }),
        }
    }

    /// Parses a form in `x0..x{m}` and `z0..z{n}`.
    pub fn parse(text: &str, x_arity: usize, z_arity: usize) -> Result<Self, FamilyError> {
        let xs: Vec<String> = (0..x_arity).map(|i| format!("x{i}")).collect();
        let zs: Vec<String> = (0..z_arity).map(|i| format!("z{i}")).collect();
        Self::new(parse_biform(text, &xs, &zs)?)
    }

    pub fn form(&self) -> &BiForm {
        &self.form
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.form.bidegree()
    }

    pub fn x_arity(&self) -> usize {
        self.form.left_arity()
    }

    pub fn z_arity(&self) -> usize {
        self.form.right_arity()
    }

    /// Dimension of the parameter space.
    pub fn n(&self) -> usize {
        self.z_arity() - 1
    }

    /// Dimension of the ambient projective space.
    pub fn m(&self) -> usize {
        self.x_arity() - 1
    }

    pub fn is_linear(&self) -> bool {
        self.bidegree().1 == 1
    }

    /// For a family linear in `z`, the forms `g_i` with `form = Σ z_i g_i`.
    pub fn linear_generators(&self) -> Option<Vec<MultiPoly>> {
        if !self.is_linear() {
            return None;
        }
        let mut gens = vec![MultiPoly::zero(self.x_arity()); self.z_arity()];
        for ((l, r), c) in self.form.terms() {
            let i = r.iter().position(|&e| e == 1).expect("linear in z");
            gens[i].add_term(l.clone(), c.clone());
        }
        Some(gens)
    }

    pub fn scaled(&self, c: &Rat) -> DivisorFamily {
        DivisorFamily { form: self.form.scale(c) }
    }
}

impl fmt::Display for DivisorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |p: &str, k: usize| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        f.write_str(&self.form.display_with(&names("x", self.x_arity()), &names("z", self.z_arity())))
    }
}

pub fn flatness_check(fam: &DivisorFamily) -> Flatness {
    flatness_of_form(&fam.form)
}

/// Flat iff the `x`-coefficients `c_I(z)` have no common projective zero.
pub fn flatness_of_form(form: &BiForm) -> Flatness {
    let (_, b) = form.bidegree();
    let coeffs: Vec<Vec<(Exponents, Rat)>> = form
        .left_coefficients()
        .into_values()
        .map(|m| m.into_iter().collect())
        .collect();
    let z_arity = form.right_arity();
    if coeffs.is_empty() {
        return Flatness::Fail { witness: "every z".into() };
    }
    if z_arity == 2 {
        let forms: Vec<UniPoly> = coeffs.iter().map(|c| binary_to_affine(c)).collect();
        return match common_binary_root(&forms, b as usize) {
            Some(w) => Flatness::Fail { witness: w },
            None => Flatness::Pass,
        };
    }
    if b == 1 {
        return linear_flatness(&coeffs, z_arity);
    }
    // restrict to seeded random lines z = s·p + r·q
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1a7);
    for _ in 0..4 {
        let p: Vec<Rat> = (0..z_arity).map(|_| Rat::from_integer(rng.gen_range(-20i64..=20).into())).collect();
        let q: Vec<Rat> = (0..z_arity).map(|_| Rat::from_integer(rng.gen_range(-20i64..=20).into())).collect();
        let restricted: Vec<UniPoly> = coeffs.iter().map(|c| restrict_to_line(c, &p, &q)).collect();
        if let Some(w) = common_binary_root(&restricted, b as usize) {
            return Flatness::Fail {
                witness: format!("a hypersurface (common factor detected on the line through {p:?}, {q:?}: {w})"),
            };
        }
    }
    Flatness::ProbablePass
}

/// `Σ c·z0^j0·z1^j1` read affinely in `z = z0/z1`.
pub(crate) fn binary_to_affine(terms: &[(Exponents, Rat)]) -> UniPoly {
    terms.iter().fold(UniPoly::zero(), |acc, (e, c)| &acc + &UniPoly::monomial(c.clone(), e[0] as usize))
}

/// A common zero of binary forms of degree `deg` given affinely, as text.
pub(crate) fn common_binary_root(forms: &[UniPoly], deg: usize) -> Option<String> {
    let g = forms.iter().fold(UniPoly::zero(), |acc, f| gcd(&acc, f));
    if g.is_zero() {
        return Some("every z".into());
    }
    if !g.is_constant() {
        if g.degree() == Some(1) {
            let root = -g.coeff(0);
            return Some(format!("({}:1)", crate::poly::rat::fmt_rat(&root)));
        }
        return Some(format!("roots of {} (z = z0/z1)", g.display_in("z")));
    }
    if forms.iter().all(|f| f.degree().is_none_or(|d| d < deg)) {
        return Some("(1:0)".into());
    }
    None
}

fn restrict_to_line(terms: &[(Exponents, Rat)], p: &[Rat], q: &[Rat]) -> UniPoly {
    let lines: Vec<UniPoly> = p.iter().zip(q).map(|(a, b)| UniPoly::from_coeffs(vec![b.clone(), a.clone()])).collect();
    terms.iter().fold(UniPoly::zero(), |acc, (e, c)| {
        let mono = e
            .iter()
            .zip(&lines)
            .fold(UniPoly::constant(c.clone()), |m, (&k, l)| &m * &l.pow(k));
        &acc + &mono
    })
}

/// Linear coefficient forms have a common zero iff their matrix is rank
/// deficient; the kernel vector is the witness.
fn linear_flatness(coeffs: &[Vec<(Exponents, Rat)>], z_arity: usize) -> Flatness {
    let rows: Vec<Vec<Rat>> = coeffs
        .iter()
        .map(|c| {
            let mut row = vec![Rat::zero(); z_arity];
            for (e, v) in c {
                let i = e.iter().position(|&k| k == 1).expect("linear");
                row[i] = v.clone();
            }
            row
        })
        .collect();
    match kernel_vector(rows, z_arity) {
        None => Flatness::Pass,
        Some(v) => Flatness::Fail {
            witness: format!(
                "({})",
                v.iter().map(crate::poly::rat::fmt_rat).collect::<Vec<_>>().join(":")
            ),
        },
    }
}

/// A nonzero solution of `rows · v = 0`, if any.
pub(crate) fn kernel_vector(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Option<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); ncols];
    v[free] = Rat::one();
    for (k, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[k][free].clone();
    }
    Some(v)
}

/// `Σ x_i z_i` on `Pᵐ × (Pᵐ)*`.
pub fn hyperplane_family(m: usize) -> Result<DivisorFamily, FamilyError> {
    if m < 1 {
        return Err(FamilyError::Dimension(m));
    }
    let terms = (0..=m).map(|i| {
        let mut e = vec![0; m + 1];
        e[i] = 1;
        (e.clone(), e, Rat::one())
    });
    DivisorFamily::new(BiForm::from_terms(m + 1, m + 1, (1, 1), terms)?)
}

/// The diagonal of `P¹ × P¹`: `x0·z1 − x1·z0`.
pub fn point_family() -> DivisorFamily {
    let terms = [
        (vec![1, 0], vec![0, 1], Rat::one()),
        (vec![0, 1], vec![1, 0], -Rat::one()),
    ];
    DivisorFamily::new(BiForm::from_terms(2, 2, (1, 1), terms).expect("valid terms")).expect("flat")
}

/// `Σ z_i·g_i(x)` for linearly independent forms `g_i` of one degree.
pub fn linear_series_family(generators: &[MultiPoly]) -> Result<DivisorFamily, FamilyError> {
    if generators.len() < 2 {
        return Err(FamilyError::TooFewGenerators);
    }
    let mut degrees = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let mut ds = g.terms().keys().map(|e| e.iter().sum::<u32>());
        let Some(d) = ds.next() else {
            return Err(FamilyError::DependentGenerators);
        };
        if ds.any(|e| e != d) {
            return Err(FamilyError::InhomogeneousGenerator(i));
        }
        degrees.push(d);
    }
    if degrees.iter().any(|&d| d != degrees[0]) {
        return Err(FamilyError::MixedDegrees(degrees));
    }
    let a = degrees[0];
    let k = generators.len();
    let x_arity = generators[0].nvars();
    let mut terms = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let mut z = vec![0; k];
        z[i] = 1;
        for (e, c) in g.terms() {
            terms.push((e.clone(), z.clone(), c.clone()));
        }
    }
    let form = BiForm::from_terms(x_arity, k, (a, 1), terms)?;
    match DivisorFamily::new(form) {
        Err(FamilyError::NotFlat { .. }) | Err(FamilyError::Bidegree(_)) => Err(FamilyError::DependentGenerators),
        other => other,
    }
}

/// Family of tangent lines of a plane curve, parametrized by the curve's own
/// parameter: the determinant of the rows `x`, `∂f/∂z0`, `∂f/∂z1` with any
/// common factor in `z` removed.
///
/// Returns the family and the removed content (as text; `"1"` when none).
pub fn tangent_line_family(f: &RationalMap) -> Result<(DivisorFamily, String), FamilyError> {
    if f.target_dim() != 2 {
        return Err(FamilyError::NotPlane(f.target_dim()));
    }
    let d = f.degree() as usize;
    let z = UniPoly::var();
    let dz0: Vec<UniPoly> = f.coords().iter().map(UniPoly::derivative).collect();
    let dz1: Vec<UniPoly> = f
        .coords()
        .iter()
        .zip(&dz0)
        .map(|(p, dp)| &p.scale(&Rat::from_integer((d as i64).into())) - &(&z * dp))
        .collect();
    let minor = |i: usize, j: usize| &(&dz0[i] * &dz1[j]) - &(&dz0[j] * &dz1[i]);
    let cof = [minor(1, 2), -minor(0, 2), minor(0, 1)];
    if cof.iter().all(UniPoly::is_zero) {
        return Err(FamilyError::NotImmersive);
    }
    let full = 2 * d - 2;
    let g = cof.iter().fold(UniPoly::zero(), |acc, c| gcd(&acc, c));
    let reduced: Vec<UniPoly> = cof.iter().map(|c| c.exact_div(&g).expect("gcd divides")).collect();
    let top = reduced.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let at_infinity = full - g.degree().unwrap_or(0) - top;
    let b = top as u32;
    let mut content = Vec::new();
    if !g.is_constant() {
        content.push(format!("({})", g.display_in("z").replace('z', "z0/z1")));
    }
    if at_infinity > 0 {
        content.push(if at_infinity == 1 { "z1".to_string() } else { format!("z1^{at_infinity}") });
    }
    let mut terms = Vec::new();
    for (k, c) in reduced.iter().enumerate() {
        let mut x = vec![0; 3];
        x[k] = 1;
        for (j, v) in c.coeffs().iter().enumerate() {
            terms.push((x.clone(), vec![j as u32, b - j as u32], v.clone()));
        }
    }
    let form = BiForm::from_terms(3, 2, (1, b), terms)?;
    let form = primitive_form(&form);
    if b == 0 {
        return Err(FamilyError::ConstantInZ { form: form.to_string() });
    }
    let content = if content.is_empty() { "1".into() } else { content.join("*") };
    Ok((DivisorFamily::new(form)?, content))
}

/// Clears denominators and integer content; the last term is made positive.
fn primitive_form(form: &BiForm) -> BiForm {
    use num_integer::Integer;
    let den = form.terms().values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums: Vec<num_bigint::BigInt> = form.terms().values().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = nums.iter().fold(num_bigint::BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return form.clone();
    }
    let mut scale = Rat::new(den, g);
    if let Some(last) = form.terms().values().next_back() {
        if (last * &scale) < Rat::zero() {
            scale = -scale;
        }
    }
    form.scale(&scale)
}

/// Pulls the parameter back along `h: P¹ → P¹` of degree `e`; the new family
/// has bidegree `(a, b·e)`.
pub fn reparametrize_z(fam: &DivisorFamily, h: &RationalMap) -> Result<DivisorFamily, FamilyError> {
    if fam.n() != 1 {
        return Err(FamilyError::NotPencil(fam.n()));
    }
    if h.target_dim() != 1 {
        return Err(FamilyError::ReparamTarget(h.target_dim()));
    }
    let form = fam.form.substitute_right(h.coords(), h.degree())?;
    DivisorFamily::new(form)
}

/// The member `𝒟_z` as a form in the `x`-variables.
pub fn family_fiber(fam: &DivisorFamily, z: &[Rat]) -> Result<MultiPoly, FamilyError> {
    if z.len() != fam.z_arity() {
        return Err(FamilyError::PointArity { expected: fam.z_arity(), got: z.len() });
    }
    if z.iter().all(Zero::is_zero) {
        return Err(FamilyError::ZeroPoint);
    }
    let fiber = fam.form.eval_right(z);
    if fiber.is_zero() {
        let pt = z.iter().map(crate::poly::rat::fmt_rat).collect::<Vec<_>>().join(":");
        return Err(FamilyError::ZeroFiber(format!("({pt})")));
    }
    let mut out = MultiPoly::zero(fam.x_arity());
    for ((l, _), c) in fiber.terms() {
        out.add_term(l.clone(), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_multi;
    use crate::poly::rat::rat;

    fn xs(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn fiber_text(fam: &DivisorFamily, z: &[i64]) -> String {
        let z: Vec<Rat> = z.iter().map(|&v| rat(v)).collect();
        let f = family_fiber(fam, &z).unwrap();
        BiForm::from_multi(&f, fam.x_arity(), &xs(fam.x_arity())).unwrap().display_with(&xs(fam.x_arity()), &[])
    }

    #[test]
    fn flatness_examples() {
        assert_eq!(flatness_check(&point_family()), Flatness::Pass);
        let bad = BiForm::from_multi(
            &parse_multi("z0*(x0 + x1)", &["x0".into(), "x1".into(), "z0".into(), "z1".into()]).unwrap(),
            2,
            &[],
        )
        .unwrap();
        assert_eq!(flatness_of_form(&bad), Flatness::Fail { witness: "(0:1)".into() });
        let dual = DivisorFamily::parse("z1^2*x0 - 2*z0*z1*x1 + z0^2*x2", 3, 2).unwrap();
        assert_eq!(flatness_check(&dual), Flatness::Pass);
        assert!(matches!(DivisorFamily::parse("z1*(x0 + x1)", 2, 2), Err(FamilyError::NotFlat { .. })));
    }

    #[test]
    fn hyperplanes() {
        assert_eq!(hyperplane_family(1).unwrap().to_string(), "x0*z0 + x1*z1");
        let h2 = hyperplane_family(2).unwrap();
        assert_eq!(h2.to_string(), "x0*z0 + x1*z1 + x2*z2");
        assert_eq!(h2.n(), 2);
        assert_eq!(hyperplane_family(0), Err(FamilyError::Dimension(0)));
    }

    #[test]
    fn point_family_fibers() {
        let p = point_family();
        assert_eq!(p.to_string(), "x0*z1 - x1*z0");
        assert_eq!(fiber_text(&p, &[0, 1]), "x0");
        assert_eq!(fiber_text(&p, &[1, 1]), "x0 - x1");
        assert_eq!(fiber_text(&p, &[1, 0]), "-x1");
        assert_eq!(fiber_text(&hyperplane_family(2).unwrap(), &[1, 1, 1]), "x0 + x1 + x2");
        let dual = DivisorFamily::parse("z1^2*x0 - 2*z0*z1*x1 + z0^2*x2", 3, 2).unwrap();
        assert_eq!(fiber_text(&dual, &[0, 1]), "x0");
        assert!(matches!(family_fiber(&p, &[rat(0), rat(0)]), Err(FamilyError::ZeroPoint)));
    }

    #[test]
    fn linear_series() {
        let names = xs(2);
        let g = |s: &str| parse_multi(s, &names).unwrap();
        let pencil = linear_series_family(&[g("x0"), g("x1")]).unwrap();
        assert_eq!(pencil.bidegree(), (1, 1));
        let quad = linear_series_family(&[g("x0^2"), g("x0*x1"), g("x1^2")]).unwrap();
        assert_eq!((quad.bidegree(), quad.n()), ((2, 1), 2));
        assert_eq!(flatness_check(&quad), Flatness::Pass);
        assert_eq!(linear_series_family(&[g("x0"), g("2*x0")]), Err(FamilyError::DependentGenerators));
        assert!(matches!(linear_series_family(&[g("x0"), g("x1^2")]), Err(FamilyError::MixedDegrees(_))));
        let names3 = xs(3);
        let h = linear_series_family(&["x0", "x1", "x2"].map(|s| parse_multi(s, &names3).unwrap())).unwrap();
        assert_eq!(h, hyperplane_family(2).unwrap());
    }

    #[test]
    fn tangent_lines() {
        let conic = RationalMap::from_ints(&[&[1], &[0, 1], &[0, 0, 1]]).unwrap();
        let (fam, content) = tangent_line_family(&conic).unwrap();
        assert_eq!(fam.to_string(), "x0*z0^2 - 2*x1*z0*z1 + x2*z1^2");
        assert_eq!(content, "1");

        let line = RationalMap::from_ints(&[&[1], &[0, 1], &[0]]).unwrap();
        assert!(matches!(tangent_line_family(&line), Err(FamilyError::ConstantInZ { .. })));

        let cusp = RationalMap::from_ints(&[&[1], &[0, 1], &[0, 0, 0, 1]]).unwrap();
        let (fam, content) = tangent_line_family(&cusp).unwrap();
        assert_eq!(fam.bidegree(), (1, 3));
        assert_eq!(content, "z1");
    }

    #[test]
    fn reparametrize() {
        let h = RationalMap::from_ints(&[&[0, 0, 1], &[1]]).unwrap();
        let fam = reparametrize_z(&point_family(), &h).unwrap();
        assert_eq!(fam.to_string(), "x0*z1^2 - x1*z0^2");
        let id = RationalMap::from_ints(&[&[0, 1], &[1]]).unwrap();
        assert_eq!(reparametrize_z(&point_family(), &id).unwrap(), point_family());
        let cubic = RationalMap::from_ints(&[&[1, 0, 0, 1], &[0, 1]]).unwrap();
        let pencil = DivisorFamily::parse("z0*x1 - z1*x0", 3, 2).unwrap();
        assert_eq!(reparametrize_z(&pencil, &cubic).unwrap().bidegree(), (1, 3));
    }
}
