//! The line-oriented system file format.
//!
//! ```text
//! # comment
//! field Q                # or: field F2, field F2 boolean
//! vars x1 x2 x3          # or: vars x[1..3]
//! poly x1*x2^2 - 3/2*x3 + 1
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use super::{PolySystem, Polynomial, Ring, Term, TermOrdering};
use crate::error::Error;
use crate::field::{Field, FieldKind, Gf2, Rational};

/// A parsed system over whichever field its header names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySystem {
    Rational(PolySystem<Rational>),
    Gf2(PolySystem<Gf2>),
}

impl AnySystem {
    pub fn ring(&self) -> &Ring {
        match self {
            AnySystem::Rational(s) => s.ring(),
            AnySystem::Gf2(s) => s.ring(),
        }
    }
}

/// A monomial as read from the file: coefficient `num/den` times a term.
struct RawMonomial {
    num: BigInt,
    den: BigInt,
    exps: Vec<u32>,
}

/// Parse a system file.
pub fn parse_system(text: &str) -> Result<AnySystem, Error> {
    let mut field: Option<(FieldKind, bool)> = None;
    let mut ring: Option<Ring> = None;
    let mut raw: Vec<(usize, Vec<RawMonomial>)> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let body = line.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed.trim_end(), ""),
        };
        let rest_col = indent + keyword.len() + 1;
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(lineno, indent + 1, "duplicate field line"));
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                let kind = match words.first() {
                    Some(&"Q") => FieldKind::Rational,
                    Some(&"F2") => FieldKind::Gf2,
                    _ => return Err(parse_err(lineno, rest_col, "expected `Q` or `F2`")),
                };
                let boolean = match &words[1..] {
                    [] => false,
                    ["boolean"] => true,
                    _ => return Err(parse_err(lineno, rest_col, "unexpected text after field")),
                };
                if boolean && kind != FieldKind::Gf2 {
                    return Err(Error::BooleanRequiresF2);
                }
                field = Some((kind, boolean));
            }
            "vars" => {
                let (kind, boolean) =
                    field.ok_or_else(|| parse_err(lineno, indent + 1, "`vars` before `field`"))?;
                if ring.is_some() {
                    return Err(parse_err(lineno, indent + 1, "duplicate vars line"));
                }
                let names = parse_vars(rest, lineno, rest_col)?;
                ring = Some(Ring::with_names(names, kind, boolean)?);
            }
            "poly" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| parse_err(lineno, indent + 1, "`poly` before `vars`"))?;
                let monomials = ExprParser::new(rest, lineno, rest_col, r).parse()?;
                raw.push((lineno, monomials));
            }
            other => {
                return Err(parse_err(lineno, indent + 1, &format!("unknown directive `{other}`")));
            }
        }
    }

    let ring = ring.ok_or_else(|| parse_err(1, 1, "missing `vars` line"))?;
    match ring.field() {
        FieldKind::Rational => Ok(AnySystem::Rational(build(ring, raw)?)),
        FieldKind::Gf2 => Ok(AnySystem::Gf2(build(ring, raw)?)),
    }
}

fn build<F: Field>(ring: Ring, raw: Vec<(usize, Vec<RawMonomial>)>) -> Result<PolySystem<F>, Error> {
    let n = ring.nvars();
    let mut gens = Vec::new();
    for (lineno, monomials) in raw {
        let mut terms = Vec::with_capacity(monomials.len());
        for m in monomials {
            let c = F::from_fraction(&m.num, &m.den)
                .ok_or_else(|| parse_err(lineno, 1, "coefficient denominator vanishes in this field"))?;
            let t = Term::from_exponents(m.exps);
            let t = if ring.is_boolean() { t.square_free() } else { t };
            terms.push((t, c));
        }
        let p = Polynomial::from_terms(n, terms);
        if !p.is_zero() {
            gens.push(p);
        }
    }
    PolySystem::new(ring, gens)
}

/// Parse a single polynomial written with the names of `ring`.
pub fn parse_polynomial<F: Field>(ring: &Ring, text: &str) -> Result<Polynomial<F>, Error> {
    if ring.field() != F::KIND {
        return Err(Error::FieldMismatch {
            ring: ring.field(),
            coefficients: F::KIND,
        });
    }
    let monomials = ExprParser::new(text, 1, 1, ring).parse()?;
    let sys: PolySystem<F> = build(ring.clone(), vec![(1, monomials)])?;
    Ok(sys
        .into_generators()
        .pop()
        .unwrap_or_else(|| Polynomial::zero(ring.nvars())))
}

fn parse_vars(rest: &str, line: usize, col: usize) -> Result<Vec<String>, Error> {
    let rest = rest.trim();
    if let Some(open) = rest.find('[') {
        // prefix[a..b]
        let prefix = &rest[..open];
        let inner = rest[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| parse_err(line, col, "expected `]`"))?;
        let (a, b) = inner
            .split_once("..")
            .ok_or_else(|| parse_err(line, col, "expected `a..b` range"))?;
        let a: usize = a.trim().parse().map_err(|_| parse_err(line, col, "bad range start"))?;
        let b: usize = b.trim().parse().map_err(|_| parse_err(line, col, "bad range end"))?;
        if !is_ident(prefix) || a > b {
            return Err(parse_err(line, col, "bad variable range"));
        }
        return Ok((a..=b).map(|i| format!("{prefix}{i}")).collect());
    }
    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if let Some(bad) = names.iter().find(|n| !is_ident(n)) {
        return Err(parse_err(line, col, &format!("invalid variable name `{bad}`")));
    }
    if names.is_empty() {
        return Err(parse_err(line, col, "no variables"));
    }
    Ok(names)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.to_string(),
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
    ring: &'a Ring,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str, line: usize, col0: usize, ring: &'a Ring) -> Self {
        ExprParser {
            src: text.as_bytes(),
            text,
            pos: 0,
            line,
            col0,
            ring,
        }
    }

    fn err(&self, msg: &str) -> Error {
        // `col0` is the column of the first byte after the keyword's separator
        parse_err(self.line, self.col0 + self.pos.saturating_sub(1), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Vec<RawMonomial>, Error> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(_) => 1,
            None => return Err(self.err("empty polynomial")),
        };
        loop {
            let mut m = self.monomial()?;
            if sign < 0 {
                m.num = -m.num;
            }
            out.push(m);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected `+`, `-` or end of line")),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn monomial(&mut self) -> Result<RawMonomial, Error> {
        let mut m = RawMonomial {
            num: BigInt::one(),
            den: BigInt::one(),
            exps: vec![0; self.ring.nvars()],
        };
        loop {
            self.factor(&mut m)?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(m);
            }
        }
    }

    fn factor(&mut self, m: &mut RawMonomial) -> Result<(), Error> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                m.num *= num;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    m.den *= den;
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                let idx = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    e = self
                        .integer()?
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                }
                m.exps[idx] += e;
                Ok(())
            }
            _ => {
                self.pos += 1;
                Err(self.err("expected a coefficient or a variable"))
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos += 1;
            return Err(self.err("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }
}

/// Render a system in the file format.
pub fn print_system<F: Field>(sys: &PolySystem<F>) -> String {
    let ring = sys.ring();
    let mut out = String::new();
    let _ = write!(out, "field {}", ring.field());
    if ring.is_boolean() {
        out.push_str(" boolean");
    }
    out.push('\n');
    let _ = writeln!(out, "vars {}", ring.names().join(" "));
    for g in sys.generators() {
        let _ = writeln!(out, "poly {}", g.display(ring));
    }
    out
}

/// Parse an ordering matrix: one row per line, `nvars` integers per row.
pub fn parse_ordering_matrix(text: &str, nvars: usize) -> Result<TermOrdering, Error> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let row = body
            .split_whitespace()
            .map(|w| w.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err(lineno + 1, 1, "expected integers"))?;
        if row.len() != nvars {
            return Err(parse_err(
                lineno + 1,
                1,
                &format!("expected {nvars} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    TermOrdering::matrix(rows)
}

impl<F: Field> PolySystem<F> {
    pub fn to_file_string(&self) -> String {
        print_system(self)
    }
}
