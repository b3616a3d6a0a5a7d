//! Recursive-descent parser for polynomial text.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" INTEGER)?
//! primary := INTEGER ("/" INTEGER)? | IDENT | "(" expr ")"
//! ```
//!
//! Only declared identifiers are accepted and juxtaposition is not
//! multiplication.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::multi::{BiForm, MultiPoly};
use super::rat::Rat;
use super::uni::UniPoly;
use super::PolyError;

const MAX_EXPONENT: u32 = 4096;

/// Which identifiers a polynomial may use and how they are grouped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VariableSpec {
    Single(String),
    Groups { left: Vec<String>, right: Vec<String> },
}

impl VariableSpec {
    pub fn single(name: &str) -> Self {
        VariableSpec::Single(name.to_string())
    }

    pub fn groups(left: &[&str], right: &[&str]) -> Self {
        VariableSpec::Groups {
            left: left.iter().map(|s| s.to_string()).collect(),
            right: right.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// `x0..x{m}` and `z0..z{n}`.
    pub fn indexed(left_prefix: &str, left_arity: usize, right_prefix: &str, right_arity: usize) -> Self {
        VariableSpec::Groups {
            left: (0..left_arity).map(|i| format!("{left_prefix}{i}")).collect(),
            right: (0..right_arity).map(|i| format!("{right_prefix}{i}")).collect(),
        }
    }

    fn names(&self) -> Vec<String> {
        match self {
            VariableSpec::Single(v) => vec![v.clone()],
            VariableSpec::Groups { left, right } => left.iter().chain(right).cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Uni(UniPoly),
    Bi(BiForm),
}

pub fn parse_polynomial(text: &str, vars: &VariableSpec) -> Result<Parsed, PolyError> {
    let names = vars.names();
    let p = parse_multi(text, &names)?;
    match vars {
        VariableSpec::Single(_) => Ok(Parsed::Uni(multi_to_uni(&p))),
        VariableSpec::Groups { left, .. } => Ok(Parsed::Bi(BiForm::from_multi(&p, left.len(), &names)?)),
    }
}

/// Parses a polynomial in the single variable `var`.
pub fn parse_uni(text: &str, var: &str) -> Result<UniPoly, PolyError> {
    let p = parse_multi(text, &[var.to_string()])?;
    Ok(multi_to_uni(&p))
}

/// Parses a bihomogeneous form over the two groups.
pub fn parse_biform(text: &str, left: &[String], right: &[String]) -> Result<BiForm, PolyError> {
    let names: Vec<String> = left.iter().chain(right).cloned().collect();
    let p = parse_multi(text, &names)?;
    BiForm::from_multi(&p, left.len(), &names)
}

fn multi_to_uni(p: &MultiPoly) -> UniPoly {
    let deg = p.terms().keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e[0] as usize] += c;
    }
    UniPoly::from_coeffs(coeffs)
}

/// Parses over an explicit ordered variable list.
pub fn parse_multi(text: &str, names: &[String]) -> Result<MultiPoly, PolyError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, names, end: text.len() };
    let p = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(PolyError::Syntax { pos: tok.pos, msg: format!("unexpected {}", tok.kind.describe()) });
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(n) => format!("integer {n}"),
            Kind::Ident(s) => format!("identifier '{s}'"),
            Kind::Plus => "'+'".into(),
            Kind::Minus => "'-'".into(),
            Kind::Star => "'*'".into(),
            Kind::Caret => "'^'".into(),
            Kind::Slash => "'/'".into(),
            Kind::LParen => "'('".into(),
            Kind::RParen => "')'".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'^' => Kind::Caret,
            b'/' => Kind::Slash,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { kind: Kind::Int(text[start..i].parse().unwrap()), pos: start });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: Kind::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(PolyError::Syntax { pos: start, msg: format!("unexpected character '{ch}'") });
            }
        };
        out.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Kind::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Kind::Minus) {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while self.eat(&Kind::Star) {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if self.eat(&Kind::Minus) {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.primary()?;
        if !self.eat(&Kind::Caret) {
            return Ok(base);
        }
        let pos = self.here();
        match self.next() {
            Some(Token { kind: Kind::Int(n), .. }) => {
                let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or(PolyError::Syntax {
                    pos,
                    msg: format!("exponent {n} exceeds {MAX_EXPONENT}"),
                })?;
                Ok(base.pow(e))
            }
            Some(t) => Err(PolyError::Syntax {
                pos,
                msg: format!("expected a nonnegative integer exponent, found {}", t.kind.describe()),
            }),
            None => Err(PolyError::Syntax { pos, msg: "expected an exponent, found end of input".into() }),
        }
    }

    fn primary(&mut self) -> Result<MultiPoly, PolyError> {
        let pos = self.here();
        let nvars = self.names.len();
        match self.next() {
            Some(Token { kind: Kind::Int(n), .. }) => {
                if !self.eat(&Kind::Slash) {
                    return Ok(MultiPoly::constant(nvars, Rat::from_integer(n)));
                }
                let dpos = self.here();
                match self.next() {
                    Some(Token { kind: Kind::Int(d), .. }) if !d.is_zero() => {
                        Ok(MultiPoly::constant(nvars, Rat::new(n, d)))
                    }
                    Some(Token { kind: Kind::Int(_), .. }) => {
                        Err(PolyError::Syntax { pos: dpos, msg: "zero denominator".into() })
                    }
                    _ => Err(PolyError::Syntax {
                        pos: dpos,
                        msg: "'/' is only allowed between integer literals".into(),
                    }),
                }
            }
            Some(Token { kind: Kind::Ident(name), .. }) => match self.names.iter().position(|v| *v == name) {
                Some(i) => Ok(MultiPoly::var(nvars, i)),
                None => Err(PolyError::UndeclaredVariable { name, pos }),
            },
            Some(Token { kind: Kind::LParen, .. }) => {
                let inner = self.expr()?;
                let close = self.here();
                if !self.eat(&Kind::RParen) {
                    return Err(PolyError::Syntax { pos: close, msg: "expected ')'".into() });
                }
                Ok(inner)
            }
            Some(t) => Err(PolyError::Syntax { pos, msg: format!("unexpected {}", t.kind.describe()) }),
            None => Err(PolyError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_family_of_conic() {
        let inst = VariableSpec::groups(&["x0", "x1", "x2"], &["z0", "z1"]);
        let Parsed::Bi(f) = parse_polynomial("z0^2*x2 - 2*z0*z1*x1 + z1^2*x0", &inst).unwrap() else {
            panic!("expected a form")
        };
        assert_eq!(f.bidegree(), (1, 2));
        assert_eq!(f.terms().len(), 3);
    }

    #[test]
    fn univariate() {
        let p = parse_uni("t^3 + t^4", "t").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[0, 0, 0, 1, 1]));
        assert_eq!(parse_uni("-t^2", "t").unwrap(), UniPoly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_uni("(1 - t)*(1 + t)", "t").unwrap(), UniPoly::from_ints(&[1, 0, -1]));
        assert_eq!(parse_uni("3/4*t - 1/2", "t").unwrap().to_string(), "3/4*t - 1/2");
        assert_eq!(parse_uni("2^3", "t").unwrap(), UniPoly::from_ints(&[8]));
    }

    #[test]
    fn inhomogeneous_form_names_both_terms() {
        let inst = VariableSpec::groups(&["x0", "x1"], &["z0"]);
        match parse_polynomial("x0*z0 + x1", &inst) {
            Err(PolyError::Inhomogeneous { first, second, first_bidegree, second_bidegree }) => {
                assert_eq!(first_bidegree.1 + second_bidegree.1, 1);
                assert!(first.contains("x") && second.contains("x"));
            }
            other => panic!("expected inhomogeneity error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_uni("2t", "t").unwrap_err();
        assert!(matches!(err, PolyError::Syntax { pos: 1, .. }), "{err:?}");
        let err = parse_uni("t + y", "t").unwrap_err();
        assert!(matches!(err, PolyError::UndeclaredVariable { pos: 4, .. }), "{err:?}");
        assert!(matches!(parse_uni("t^-1", "t"), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_uni("(t + 1", "t"), Err(PolyError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_uni("t/2", "t"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_uni("1/0", "t"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_uni("", "t"), Err(PolyError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_uni("t $ 1", "t"), Err(PolyError::Syntax { pos: 2, .. })));
    }
}
