//! Sparse multivariate polynomials and bihomogeneous forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, Rat};
use super::uni::UniPoly;
use super::PolyError;

pub type Exponents = Vec<u32>;

/// A polynomial over a fixed, ordered list of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rat) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Terms in descending exponent order.
    pub fn display_with(&self, names: &[String]) -> String {
        format_terms(self.terms.iter().rev().map(|(e, c)| (e.clone(), c)), names)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// A form that is homogeneous separately in a left group of variables
/// (`x` or `t`) and a right group (`z`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiForm {
    left_arity: usize,
    right_arity: usize,
    bidegree: (u32, u32),
    terms: BTreeMap<(Exponents, Exponents), Rat>,
}

impl BiForm {
    pub fn zero(left_arity: usize, right_arity: usize, bidegree: (u32, u32)) -> Self {
        BiForm { left_arity, right_arity, bidegree, terms: BTreeMap::new() }
    }

    /// Builds a form from explicit terms; zero coefficients are dropped and
    /// repeated exponents merged. Every surviving term must have the stated
    /// bidegree.
    pub fn from_terms(
        left_arity: usize,
        right_arity: usize,
        bidegree: (u32, u32),
        terms: impl IntoIterator<Item = (Exponents, Exponents, Rat)>,
    ) -> Result<Self, PolyError> {
        let mut out = Self::zero(left_arity, right_arity, bidegree);
        for (l, r, c) in terms {
            if l.len() != left_arity || r.len() != right_arity {
                return Err(PolyError::Arity { expected: (left_arity, right_arity), got: (l.len(), r.len()) });
            }
            let deg = (l.iter().sum::<u32>(), r.iter().sum::<u32>());
            if deg != bidegree && !c.is_zero() {
                return Err(PolyError::WrongBidegree { expected: bidegree, got: deg });
            }
            out.add_term(l, r, c);
        }
        Ok(out)
    }

    /// Splits a polynomial over `left_arity + right_arity` variables, checking
    /// bihomogeneity. `None` names are rendered as `v{i}` in error messages.
    pub fn from_multi(p: &MultiPoly, left_arity: usize, names: &[String]) -> Result<Self, PolyError> {
        let right_arity = p.nvars() - left_arity;
        let mut first: Option<(&Exponents, (u32, u32))> = None;
        for (e, c) in p.terms() {
            let deg = (e[..left_arity].iter().sum(), e[left_arity..].iter().sum());
            match first {
                None => first = Some((e, deg)),
                Some((e0, d0)) if d0 != deg => {
                    let c0 = &p.terms()[e0];
                    return Err(PolyError::Inhomogeneous {
                        first: format_term(c0, e0, names),
                        first_bidegree: d0,
                        second: format_term(c, e, names),
                        second_bidegree: deg,
                    });
                }
                _ => {}
            }
        }
        let bidegree = first.map_or((0, 0), |(_, d)| d);
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| (e[..left_arity].to_vec(), e[left_arity..].to_vec(), c.clone()));
        Self::from_terms(left_arity, right_arity, bidegree, terms)
    }

    pub fn left_arity(&self) -> usize {
        self.left_arity
    }

    pub fn right_arity(&self) -> usize {
        self.right_arity
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn terms(&self) -> &BTreeMap<(Exponents, Exponents), Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, l: Exponents, r: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rat) -> BiForm {
        let mut out = Self::zero(self.left_arity, self.right_arity, self.bidegree);
        for ((l, r), v) in &self.terms {
            out.add_term(l.clone(), r.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &BiForm) -> Result<BiForm, PolyError> {
        if self.bidegree != other.bidegree {
            return Err(PolyError::WrongBidegree { expected: self.bidegree, got: other.bidegree });
        }
        let mut out = self.clone();
        for ((l, r), v) in &other.terms {
            out.add_term(l.clone(), r.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BiForm) -> BiForm {
        assert_eq!(
            (self.left_arity, self.right_arity),
            (other.left_arity, other.right_arity),
            "product of forms over different variable groups"
        );
        let bidegree = (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1);
        let mut out = Self::zero(self.left_arity, self.right_arity, bidegree);
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                let l = la.iter().zip(lb).map(|(a, b)| a + b).collect();
                let r = ra.iter().zip(rb).map(|(a, b)| a + b).collect();
                out.add_term(l, r, ca * cb);
            }
        }
        out
    }

    /// Groups terms by right (`z`) monomial: `Σ_J c_J(left) · z^J`.
    pub fn right_coefficients(&self) -> BTreeMap<Exponents, BTreeMap<Exponents, Rat>> {
        let mut out: BTreeMap<Exponents, BTreeMap<Exponents, Rat>> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(r.clone()).or_default().insert(l.clone(), c.clone());
        }
        out
    }

    /// Groups terms by left (`x`) monomial: `Σ_I c_I(z) · x^I`.
    pub fn left_coefficients(&self) -> BTreeMap<Exponents, BTreeMap<Exponents, Rat>> {
        let mut out: BTreeMap<Exponents, BTreeMap<Exponents, Rat>> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(l.clone()).or_default().insert(r.clone(), c.clone());
        }
        out
    }

    /// Substitutes binary forms of a common degree `deg` for the left
    /// variables. Each form is given affinely in `t = t0/t1`. The result has
    /// left variables `(t0, t1)` and bidegree `(a·deg, b)`.
    pub fn substitute_left(&self, forms: &[UniPoly], deg: u32) -> Result<BiForm, PolyError> {
        if forms.len() != self.left_arity {
            return Err(PolyError::Arity { expected: (self.left_arity, self.right_arity), got: (forms.len(), self.right_arity) });
        }
        let out_deg = self.bidegree.0 * deg;
        let mut by_right: BTreeMap<Exponents, UniPoly> = BTreeMap::new();
        let mut cache: Vec<Vec<UniPoly>> = forms.iter().map(|f| vec![UniPoly::one(), f.clone()]).collect();
        for ((l, r), c) in &self.terms {
            let mut prod = UniPoly::constant(c.clone());
            for (i, &e) in l.iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &forms[i];
                    cache[i].push(next);
                }
                prod = &prod * &cache[i][e as usize];
            }
            let slot = by_right.entry(r.clone()).or_default();
            *slot = &*slot + &prod;
        }
        let terms = by_right.into_iter().flat_map(|(r, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32, out_deg - k as u32], r.clone(), c.clone()))
                .collect::<Vec<_>>()
        });
        BiForm::from_terms(2, self.right_arity, (out_deg, self.bidegree.1), terms)
    }

    /// Substitutes binary forms of a common degree `deg` (affine in
    /// `z = z0/z1`) for the right variables, which must be two.
    pub fn substitute_right(&self, forms: &[UniPoly], deg: u32) -> Result<BiForm, PolyError> {
        let swapped = self.swap();
        let sub = swapped.substitute_left(forms, deg)?;
        Ok(sub.swap())
    }

    /// Exchanges the roles of the two variable groups.
    pub fn swap(&self) -> BiForm {
        BiForm {
            left_arity: self.right_arity,
            right_arity: self.left_arity,
            bidegree: (self.bidegree.1, self.bidegree.0),
            terms: self.terms.iter().map(|((l, r), c)| ((r.clone(), l.clone()), c.clone())).collect(),
        }
    }

    /// Evaluates the right variables at a point, leaving a form in the left
    /// variables (as a bihomogeneous form with right degree zero).
    pub fn eval_right(&self, point: &[Rat]) -> BiForm {
        assert_eq!(point.len(), self.right_arity);
        let mut out = Self::zero(self.left_arity, self.right_arity, (self.bidegree.0, 0));
        for ((l, r), c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(r) {
                v *= super::rat::pow(x, e);
            }
            out.add_term(l.clone(), vec![0; self.right_arity], v);
        }
        out
    }

    /// Evaluates the left variables at a point.
    pub fn eval_left(&self, point: &[Rat]) -> BiForm {
        self.swap().eval_right(point).swap()
    }

    /// Divides every coefficient by a common rational so that the leading
    /// term (in the internal term order) is 1.
    pub fn normalized(&self) -> BiForm {
        match self.terms.values().next_back() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    pub fn display_with(&self, left: &[String], right: &[String]) -> String {
        let names: Vec<String> = left.iter().chain(right).cloned().collect();
        let terms = self.terms.iter().rev().map(|((l, r), c)| (l.iter().chain(r).copied().collect(), c));
        format_terms(terms, &names)
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (Exponents, &'a Rat)>, names: &[String]) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format_term(&c.abs(), &e, names));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lp, rp) = if self.left_arity == 2 { ("t", "z") } else { ("x", "z") };
        let left: Vec<String> = (0..self.left_arity).map(|i| format!("{lp}{i}")).collect();
        let right: Vec<String> = (0..self.right_arity).map(|i| format!("{rp}{i}")).collect();
        f.write_str(&self.display_with(&left, &right))
    }
}

pub(crate) fn format_term(c: &Rat, e: &[u32], names: &[String]) -> String {
    let mono: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            if k == 1 {
                name
            } else {
                format!("{name}^{k}")
            }
        })
        .collect();
    if mono.is_empty() {
        fmt_rat(c)
    } else if c.is_one() {
        mono.join("*")
    } else if (-c).is_one() {
        format!("-{}", mono.join("*"))
    } else {
        format!("{}*{}", fmt_rat(c), mono.join("*"))
    }
}
