//! Recursive-descent parser for scalars, polynomials and skew polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'zeta' '(' integer ')' | name | '(' expr ')'
//! ```
//!
//! `t` denotes the Ore variable. Numbers are integers or decimals; fractions
//! are written with `/`. Division is only allowed by nonzero constants.

use std::fmt;
use std::sync::Arc;

use ore_core::{DerivationSpec, MPoly, Poly, Scalar, SkewPoly};

pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    /// The input with a caret under the offending byte.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.offset.min(input.len())].chars().count();
        format!("{input}\n{}^ {}", " ".repeat(col), self.message)
    }
}

pub type ParseResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    Int(u64),
    BigInt(String),
    Name(String),
    Op(char),
    End,
}

fn tokenize(src: &str) -> ParseResult<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                out.push((Tok::Op(c as char), i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let int_end = i;
                let mut frac = "";
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let f = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac = &src[f..i];
                    if int_end == start && frac.is_empty() {
                        return Err(ParseError::new(start, "expected a number"));
                    }
                }
                let int_part = &src[start..int_end];
                let tok = if frac.is_empty() && i == int_end {
                    match int_part.parse::<u64>() {
                        Ok(n) => Tok::Int(n),
                        Err(_) => Tok::BigInt(int_part.to_string()),
                    }
                } else {
                    let num = digits_to_scalar(&format!("{int_part}{frac}"));
                    let den = Scalar::from_int(10).pow(frac.len() as u64);
                    Tok::Num(&num / &den)
                };
                out.push((tok, start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Name(src[start..i].to_string()), start));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
            }
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

fn digits_to_scalar(digits: &str) -> Scalar {
    let ten = Scalar::from_int(10);
    digits.bytes().fold(Scalar::zero(), |acc, d| {
        &(&acc * &ten) + &Scalar::from_int(i64::from(d - b'0'))
    })
}

/// Operations the evaluator needs from a target ring.
trait Ring {
    type Elem: Clone;
    fn constant(&self, c: Scalar) -> Self::Elem;
    fn variable(&self, name: &str) -> Option<Self::Elem>;
    fn as_constant(&self, e: &Self::Elem) -> Option<Scalar>;
    fn conductor(&self, e: &Self::Elem) -> Option<u32>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.constant(Scalar::zero()), a)
    }
}

struct Parser<'a, R: Ring> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a R,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> ParseResult<()> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::new(self.offset(), format!("expected '{c}'")))
        }
    }

    fn check_fields(&self, a: &R::Elem, b: &R::Elem, at: usize) -> ParseResult<()> {
        Scalar::common_conductor(self.ring.conductor(a), self.ring.conductor(b))
            .map(|_| ())
            .map_err(|e| ParseError::new(at, e.to_string()))
    }

    fn expr(&mut self) -> ParseResult<R::Elem> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            let at = self.bump().1;
            let rhs = self.term()?;
            self.check_fields(&acc, &rhs, at)?;
            acc = if c == '+' { self.ring.add(&acc, &rhs) } else { self.ring.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> ParseResult<R::Elem> {
        let mut acc = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            let at = self.bump().1;
            let rhs = self.unary()?;
            self.check_fields(&acc, &rhs, at)?;
            acc = if c == '*' {
                self.ring.mul(&acc, &rhs)
            } else {
                let d = self
                    .ring
                    .as_constant(&rhs)
                    .ok_or_else(|| ParseError::new(at, "division by a non-constant"))?;
                let inv = d.inv().map_err(|_| ParseError::new(at, "division by zero"))?;
                self.ring.mul(&acc, &self.ring.constant(inv))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> ParseResult<R::Elem> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                let v = self.unary()?;
                Ok(self.ring.neg(&v))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> ParseResult<R::Elem> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let e = match self.bump().0 {
            Tok::Int(n) if n <= u64::from(MAX_EXPONENT) => n as u32,
            Tok::Int(_) | Tok::BigInt(_) => {
                return Err(ParseError::new(at, format!("exponent overflow (maximum {MAX_EXPONENT})")))
            }
            _ => return Err(ParseError::new(at, "expected a nonnegative integer exponent")),
        };
        Ok(self.pow(&base, e))
    }

    fn pow(&self, base: &R::Elem, mut e: u32) -> R::Elem {
        let mut result = self.ring.constant(Scalar::one());
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.ring.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.ring.mul(&b, &b);
            }
        }
        result
    }

    fn integer(&mut self) -> ParseResult<u64> {
        let at = self.offset();
        match self.bump().0 {
            Tok::Int(n) => Ok(n),
            _ => Err(ParseError::new(at, "expected an integer")),
        }
    }

    fn atom(&mut self) -> ParseResult<R::Elem> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Int(n) => Ok(self.ring.constant(match i64::try_from(n) {
                Ok(v) => Scalar::from_int(v),
                Err(_) => digits_to_scalar(&n.to_string()),
            })),
            Tok::BigInt(digits) => Ok(self.ring.constant(digits_to_scalar(&digits))),
            Tok::Num(s) => Ok(self.ring.constant(s)),
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Name(name) if name == "zeta" => {
                self.expect('(')?;
                let n_at = self.offset();
                let n = self.integer()?;
                self.expect(')')?;
                let n = u32::try_from(n)
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| ParseError::new(n_at, "zeta order must be a positive 32-bit integer"))?;
                let z = Scalar::zeta(n).map_err(|e| ParseError::new(n_at, e.to_string()))?;
                Ok(self.ring.constant(z))
            }
            Tok::Name(name) => self
                .ring
                .variable(&name)
                .ok_or_else(|| ParseError::new(at, format!("unknown variable '{name}'"))),
            Tok::End => Err(ParseError::new(at, "unexpected end of input")),
            Tok::Op(c) => Err(ParseError::new(at, format!("unexpected '{c}'"))),
        }
    }
}

fn run<R: Ring>(ring: &R, src: &str) -> ParseResult<R::Elem> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::new(p.offset(), "unexpected trailing input"));
    }
    Ok(v)
}

struct Scalars;

impl Ring for Scalars {
    type Elem = Scalar;
    fn constant(&self, c: Scalar) -> Scalar {
        c
    }
    fn variable(&self, _: &str) -> Option<Scalar> {
        None
    }
    fn as_constant(&self, e: &Scalar) -> Option<Scalar> {
        Some(e.clone())
    }
    fn conductor(&self, e: &Scalar) -> Option<u32> {
        e.conductor()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
}

struct Univariate;

impl Ring for Univariate {
    type Elem = Poly;
    fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(c)
    }
    fn variable(&self, name: &str) -> Option<Poly> {
        (name == "x").then(Poly::x)
    }
    fn as_constant(&self, e: &Poly) -> Option<Scalar> {
        e.is_constant().then(|| e.constant_term())
    }
    fn conductor(&self, e: &Poly) -> Option<u32> {
        e.conductor().ok().flatten()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
}

struct Skew<'a>(&'a Arc<DerivationSpec>);

impl Ring for Skew<'_> {
    type Elem = SkewPoly;
    fn constant(&self, c: Scalar) -> SkewPoly {
        SkewPoly::from_scalar(self.0, c)
    }
    fn variable(&self, name: &str) -> Option<SkewPoly> {
        match name {
            "x" => Some(SkewPoly::from_poly(self.0, Poly::x())),
            "t" => Some(SkewPoly::theta(self.0)),
            _ => None,
        }
    }
    fn as_constant(&self, e: &SkewPoly) -> Option<Scalar> {
        (e.degree().unwrap_or(0) == 0 && e.constant_coeff().is_constant()).then(|| e.constant_coeff().constant_term())
    }
    fn conductor(&self, e: &SkewPoly) -> Option<u32> {
        e.conductor().ok().flatten().or(self.0.conductor())
    }
    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a + b
    }
    fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a - b
    }
    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a * b
    }
}

struct Multivariate<'a>(&'a [String]);

impl Ring for Multivariate<'_> {
    type Elem = MPoly;
    fn constant(&self, c: Scalar) -> MPoly {
        MPoly::constant(self.0.len(), c)
    }
    fn variable(&self, name: &str) -> Option<MPoly> {
        self.0.iter().position(|v| v == name).map(|i| MPoly::var(self.0.len(), i))
    }
    fn as_constant(&self, e: &MPoly) -> Option<Scalar> {
        e.is_constant().then(|| e.coeff(&vec![0; self.0.len()]))
    }
    fn conductor(&self, e: &MPoly) -> Option<u32> {
        e.conductor().ok().flatten()
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a + b
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a - b
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a * b
    }
}

pub fn parse_scalar(src: &str) -> ParseResult<Scalar> {
    run(&Scalars, src)
}

/// A polynomial in `x`.
pub fn parse_poly(src: &str) -> ParseResult<Poly> {
    run(&Univariate, src)
}

/// An element of K[x][t; sigma, d] for the given ring.
pub fn parse_skew(src: &str, spec: &Arc<DerivationSpec>) -> ParseResult<SkewPoly> {
    let v = run(&Skew(spec), src)?;
    if let (Some(a), Some(b)) = (v.conductor().ok().flatten(), spec.conductor()) {
        if a != b {
            return Err(ParseError::new(0, ore_core::Error::ConductorMismatch(a, b).to_string()));
        }
    }
    Ok(v)
}

/// A polynomial in the named variables; variable `i` of the result is `names[i]`.
pub fn parse_mpoly(src: &str, names: &[String]) -> ParseResult<MPoly> {
    run(&Multivariate(names), src)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Poly(Poly),
    Skew(SkewPoly),
}

/// Parses into K[x] when `t` does not occur, otherwise into the skew ring.
pub fn parse_element(src: &str, spec: &Arc<DerivationSpec>) -> ParseResult<Element> {
    let s = parse_skew(src, spec)?;
    Ok(match s.degree() {
        None | Some(0) => Element::Poly(s.constant_coeff()),
        _ => Element::Skew(s),
    })
}

/// Comma-separated list of polynomials in the named variables.
pub fn parse_mpoly_list(src: &str, names: &[String]) -> ParseResult<Vec<MPoly>> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in src.split(',') {
        out.push(parse_mpoly(piece, names).map_err(|e| ParseError::new(start + e.offset, e.message))?);
        start += piece.len() + 1;
    }
    Ok(out)
}

/// `sigma: q=<scalar>, b=<scalar>; d(x)=<poly>`. The sigma part may be omitted
/// (identity), as may either of `q=` and `b=` (defaults 1 and 0).
pub fn parse_derivation(src: &str) -> ParseResult<DerivationSpec> {
    let mut q = Scalar::one();
    let mut b = Scalar::zero();
    let mut dx = None;
    let mut offset = 0;
    for part in src.split(';') {
        let here = offset;
        offset += part.len() + 1;
        let lead = part.len() - part.trim_start().len();
        let body = part.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("sigma") {
            let after = rest.trim_start();
            let colon_at = here + lead + 5 + (rest.len() - after.len());
            let Some(assigns) = after.strip_prefix(':') else {
                return Err(ParseError::new(colon_at, "expected ':' after sigma"));
            };
            let mut inner = colon_at + 1;
            for item in assigns.split(',') {
                let at = inner;
                inner += item.len() + 1;
                let Some((key, value)) = item.split_once('=') else {
                    return Err(ParseError::new(at, "expected q=<value> or b=<value>"));
                };
                let value_at = at + key.len() + 1;
                let v = parse_scalar(value).map_err(|e| ParseError::new(value_at + e.offset, e.message))?;
                match key.trim() {
                    "q" => q = v,
                    "b" => b = v,
                    other => return Err(ParseError::new(at, format!("unknown sigma parameter '{other}'"))),
                }
            }
        } else if let Some(rest) = body.strip_prefix("d(x)") {
            let after = rest.trim_start();
            let eq_at = here + lead + 4 + (rest.len() - after.len());
            let Some(value) = after.strip_prefix('=') else {
                return Err(ParseError::new(eq_at, "expected '=' after d(x)"));
            };
            dx = Some(parse_poly(value).map_err(|e| ParseError::new(eq_at + 1 + e.offset, e.message))?);
        } else {
            return Err(ParseError::new(here + lead, "expected 'sigma:' or 'd(x)='"));
        }
    }
    let dx = dx.ok_or_else(|| ParseError::new(src.len(), "missing d(x)=<polynomial>"))?;
    DerivationSpec::new(q, b, dx).map_err(|e| ParseError::new(0, e.to_string()))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Poly(p) => p.fmt(f),
            Element::Skew(s) => s.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(parse_poly("x^2 - 1").unwrap(), Poly::from_ints(&[-1, 0, 1]));
        let spec = Arc::new(DerivationSpec::weyl());
        let s = parse_skew("(x^2-1)*t + 3/2", &spec).unwrap();
        assert_eq!(s.coeffs(), &[Poly::constant(Scalar::ratio(3, 2)), Poly::from_ints(&[-1, 0, 1])]);
        let z = parse_poly("zeta(4)*x").unwrap();
        assert_eq!(z, Poly::monomial(Scalar::zeta(4).unwrap(), 1));
        assert_eq!(z.conductor().unwrap(), Some(4));
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(parse_poly("-x^2").unwrap(), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_poly("2*x^2/4 - -3").unwrap(), Poly::from_coeffs([
            Scalar::from_int(3),
            Scalar::zero(),
            Scalar::ratio(1, 2)
        ]));
        assert_eq!(parse_poly("(x+1)^2").unwrap(), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(parse_scalar("1.25").unwrap(), Scalar::ratio(5, 4));
        assert_eq!(parse_scalar("zeta(4)^2").unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn skew_order_matters() {
        let spec = Arc::new(DerivationSpec::weyl());
        let tx = parse_skew("t*x", &spec).unwrap();
        let xt = parse_skew("x*t", &spec).unwrap();
        assert_eq!(&tx - &xt, SkewPoly::one(&spec));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_poly("x + * 2").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_poly("x^99999999").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("overflow"));
        let e = parse_poly("x^100000000000000000000000").unwrap_err();
        assert!(e.message.contains("overflow"));
        let e = parse_poly("y + 1").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_poly("1/x").unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse_poly("1/(x - x)").unwrap_err();
        assert!(e.message.contains("zero"));
        let e = parse_poly("(x + 1").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_poly("zeta(3) + zeta(5)").unwrap_err();
        assert_eq!(e.offset, 8);
        let e = parse_poly("x $").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_poly("zeta(0)").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn derivation_text() {
        let d = parse_derivation("sigma: q=2, b=-1; d(x)=x^2 + 1").unwrap();
        assert_eq!(d.q(), &Scalar::from_int(2));
        assert_eq!(d.b(), &Scalar::from_int(-1));
        assert_eq!(d.dx(), &Poly::from_ints(&[1, 0, 1]));
        let d = parse_derivation("d(x) = x").unwrap();
        assert!(d.is_sigma_identity());
        let round = parse_derivation(&d.to_string()).unwrap();
        assert_eq!(round, d);
        let e = parse_derivation("sigma: q=2, b=1; d(x)=x +").unwrap_err();
        assert_eq!(e.offset, 25);
        assert!(parse_derivation("sigma: q=0; d(x)=1").is_err());
    }

    #[test]
    fn mpoly_lists() {
        let names = vec!["x".to_string(), "y".to_string()];
        let v = parse_mpoly_list("y, 1", &names).unwrap();
        assert_eq!(v, vec![MPoly::var(2, 1), MPoly::one(2)]);
        let e = parse_mpoly_list("y, z", &names).unwrap_err();
        assert_eq!(e.offset, 3);
    }

    #[test]
    fn element_kinds() {
        let spec = Arc::new(DerivationSpec::weyl());
        assert!(matches!(parse_element("x + 1", &spec).unwrap(), Element::Poly(_)));
        assert!(matches!(parse_element("x*t", &spec).unwrap(), Element::Skew(_)));
    }
}
