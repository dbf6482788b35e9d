//! Text forms of ordinals, points, threads, descriptors and arcs.
//!
//! Every parser accepts what the corresponding `Display` impl prints.
//!
//! ```text
//! ordinal  := term ("+" term)*
//! term     := nat | "w" ("^" atom)? ("*" nat)?
//! atom     := nat | "w" ("^" atom)? | "(" ordinal ")"
//! long     := "end" | ("w1" ("*" "(" ordinal ")")?)? ("+"? ordinal)? ("+"? frac)?
//! tower    := "inf" | "[" int ("," int)* "]" | "[" int ("," int)* ";" base "]"
//! base     := ordinal ("+" frac)? | frac
//! stage    := "inf" nat | "(" int "|" (long | tower) ")"
//! ```
//!
//! `ω` may be written for `w`; whitespace is ignored between tokens.
//! Positions in errors are byte offsets into the input.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::cohomology::SequenceDescriptor;
use crate::error::Result;
use crate::long_line::LongPoint;
use crate::ordinal::{omega_pow_bounded, Ordinal, DEFAULT_DEPTH_BOUND};
use crate::stage::arcs::CyclicArc;
use crate::stage::thread::Thread;
use crate::stage::{InnerPoint, StagePoint};
use crate::tower::{BasePoint, Terminator, TowerPoint};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    depth_bound: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            pos: 0,
            depth_bound: DEFAULT_DEPTH_BOUND,
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        }
        .into())
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.fail(format!("expected '{c}', found '{found}'")),
                None => self.fail(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        // `w1` is the long-line block symbol, never an ordinal.
        if (r.starts_with('w') && !r[1..].starts_with('1')) || r.starts_with('ω') {
            self.pos += r.chars().next().map_or(0, char::len_utf8);
            true
        } else {
            false
        }
    }

    fn at_digit(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        if digits.is_empty() {
            return self.fail("expected a natural number");
        }
        let value = digits.parse().expect("ascii digits");
        self.pos += digits.len();
        Ok(value)
    }

    fn int(&mut self) -> Result<BigInt> {
        let negative = self.eat('-');
        let n = BigInt::from(self.nat()?);
        Ok(if negative { -n } else { n })
    }

    fn small_int(&mut self) -> Result<i64> {
        let start = self.pos;
        let v = self.int()?;
        i64::try_from(&v).or_else(|_| {
            self.pos = start;
            self.fail(format!("{v} does not fit in 64 bits"))
        })
    }

    fn small_nat(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.nat()?;
        u64::try_from(&v).or_else(|_| {
            self.pos = start;
            self.fail(format!("{v} does not fit in 64 bits"))
        })
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.fail(format!("unexpected '{c}'")),
        }
    }

    // A natural number immediately followed by '/' starts a fraction.
    fn at_fraction(&mut self) -> bool {
        let save = self.pos;
        let ok = self.nat().is_ok() && self.peek() == Some('/');
        self.pos = save;
        ok
    }

    fn ordinal(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        loop {
            let save = self.pos;
            if !self.eat('+') {
                break;
            }
            if self.at_fraction() || !(self.at_digit() || self.peek_omega()) {
                self.pos = save;
                break;
            }
            acc = acc + self.term()?;
        }
        Ok(acc)
    }

    fn peek_omega(&mut self) -> bool {
        let save = self.pos;
        let ok = self.eat_omega();
        self.pos = save;
        ok
    }

    fn term(&mut self) -> Result<Ordinal> {
        if self.at_digit() {
            return Ok(Ordinal::from(self.nat()?));
        }
        if !self.eat_omega() {
            return self.fail("expected a natural number or 'w'");
        }
        let exponent = if self.eat('^') {
            self.atom()?
        } else {
            Ordinal::one()
        };
        let start = self.pos;
        let power = omega_pow_bounded(&exponent, self.depth_bound)?;
        let coefficient = if self.eat('*') {
            let c = self.nat()?;
            if c.is_zero() {
                self.pos = start;
                return self.fail("coefficients must be positive");
            }
            c
        } else {
            BigUint::from(1u32)
        };
        Ok(power * Ordinal::from(coefficient))
    }

    fn atom(&mut self) -> Result<Ordinal> {
        if self.at_digit() {
            return Ok(Ordinal::from(self.nat()?));
        }
        if self.eat('(') {
            let o = self.ordinal()?;
            self.expect(')')?;
            return Ok(o);
        }
        if !self.eat_omega() {
            return self.fail("expected an exponent");
        }
        let exponent = if self.eat('^') {
            self.atom()?
        } else {
            Ordinal::one()
        };
        Ok(omega_pow_bounded(&exponent, self.depth_bound)?)
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let n = self.small_int()?;
        let d = if self.eat('/') { self.small_int()? } else { 1 };
        if d == 0 {
            self.pos = start;
            return self.fail("zero denominator");
        }
        Ok(Rational::new(n, d))
    }

    fn big_rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let n = self.int()?;
        let d = if self.eat('/') {
            self.int()?
        } else {
            BigInt::from(1)
        };
        if d.is_zero() {
            self.pos = start;
            return self.fail("zero denominator");
        }
        Ok(BigRational::new(n, d))
    }

    // `ordinal ("+" frac)? | frac`, both parts optional when `allow_empty`.
    fn ordinal_and_fraction(&mut self, allow_empty: bool) -> Result<(Ordinal, Rational)> {
        let mut rho = Ordinal::zero();
        let mut t = Rational::from_integer(0);
        if self.at_fraction() {
            t = self.rational()?;
        } else if self.at_digit() || self.peek_omega() {
            rho = self.ordinal()?;
            if self.eat('+') {
                if !self.at_fraction() {
                    return self.fail("expected a fraction N/D");
                }
                t = self.rational()?;
            }
        } else if !allow_empty {
            return self.fail("expected an ordinal or a fraction");
        }
        Ok((rho, t))
    }

    fn long_point(&mut self) -> Result<LongPoint> {
        if self.eat_str("end") {
            return Ok(LongPoint::EndMax);
        }
        let mut blocks = Ordinal::zero();
        let mut more = true;
        if self.eat_str("w1") {
            blocks = Ordinal::one();
            if self.eat('*') {
                self.expect('(')?;
                blocks = self.ordinal()?;
                self.expect(')')?;
            }
            more = self.eat('+');
        }
        let start = self.pos;
        let (remainder, fraction) = if more {
            self.ordinal_and_fraction(false)?
        } else {
            (Ordinal::zero(), Rational::from_integer(0))
        };
        LongPoint::new(blocks, remainder, fraction).or_else(|e| {
            self.pos = start;
            self.fail(e.to_string())
        })
    }

    fn tower_point(&mut self, kappa: u32) -> Result<TowerPoint> {
        if self.eat_str("inf") {
            return TowerPoint::joint(kappa);
        }
        self.expect('[')?;
        let mut ints = Vec::new();
        if !matches!(self.peek(), Some(';') | Some(']')) {
            ints.push(self.small_int()?);
            while self.eat(',') {
                ints.push(self.small_int()?);
            }
        }
        let stop = if self.eat(';') {
            let start = self.pos;
            let (rho, t) = self.ordinal_and_fraction(false)?;
            let b = BasePoint::new(rho, t).or_else(|e| {
                self.pos = start;
                self.fail(e.to_string())
            })?;
            Terminator::Base(b)
        } else {
            Terminator::IntStop
        };
        self.expect(']')?;
        TowerPoint::address(kappa, ints, stop)
    }

    fn stage_point(&mut self, n: u64, kappa: Option<u32>) -> Result<StagePoint> {
        if self.eat_str("inf") {
            let i = self.small_nat()?;
            if i >= n {
                return self.fail(format!("joint index {i} is not below {n}"));
            }
            return StagePoint::joint(n, i as i64);
        }
        self.expect('(')?;
        let i = self.small_nat()?;
        if i >= n {
            return self.fail(format!("copy index {i} is not below {n}"));
        }
        self.expect('|')?;
        let x = if matches!(self.peek(), Some('[')) || self.rest().starts_with("inf") {
            let Some(kappa) = kappa else {
                return self.fail("tower points need a tower level");
            };
            InnerPoint::Tower(self.tower_point(kappa)?)
        } else {
            InnerPoint::Long(self.long_point()?)
        };
        self.expect(')')?;
        StagePoint::inner(n, i as i64, x)
    }
}

fn whole<'a, T>(text: &'a str, f: impl FnOnce(&mut Cursor<'a>) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(text);
    let v = f(&mut c)?;
    c.end()?;
    Ok(v)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    parse_ordinal_bounded(text, DEFAULT_DEPTH_BOUND)
}

/// Parses an ordinal whose `ω`-towers nest at most `bound` deep.
pub fn parse_ordinal_bounded(text: &str, bound: usize) -> Result<Ordinal> {
    whole(text, |c| {
        c.depth_bound = bound;
        c.ordinal()
    })
}

pub fn parse_long_point(text: &str) -> Result<LongPoint> {
    whole(text, Cursor::long_point)
}

pub fn parse_tower_point(text: &str, kappa: u32) -> Result<TowerPoint> {
    whole(text, |c| c.tower_point(kappa))
}

/// A point of `Σ^(n)`; `kappa` is needed only for tower coordinates.
pub fn parse_stage_point(text: &str, n: u64, kappa: Option<u32>) -> Result<StagePoint> {
    whole(text, |c| c.stage_point(n, kappa))
}

/// A rational `N/D` or integer `N` with 64-bit parts.
pub fn parse_rational(text: &str) -> Result<Rational> {
    whole(text, Cursor::rational)
}

pub fn parse_big_rational(text: &str) -> Result<BigRational> {
    whole(text, Cursor::big_rational)
}

// Splits at `sep` outside brackets and parentheses, keeping byte offsets.
fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn shifted<T>(offset: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        crate::Error::Parse(mut p) => {
            p.position += offset;
            crate::Error::Parse(p)
        }
        other => other,
    })
}

/// Thread points separated by `;` at the top level, level 1 first.
pub fn parse_thread(p: &[u64], text: &str, kappa: Option<u32>) -> Result<Thread> {
    let pieces = split_top_level(text, ';');
    let mut n: u64 = 1;
    let mut points = Vec::with_capacity(pieces.len());
    for (level, (offset, piece)) in pieces.into_iter().enumerate() {
        if level > 0 {
            let d = p.get(level - 1).copied().unwrap_or(1);
            n = n.checked_mul(d).ok_or_else(|| ParseError {
                position: offset,
                message: "stage size overflows".into(),
            })?;
        }
        points.push(shifted(offset, parse_stage_point(piece, n, kappa))?);
    }
    Thread::new(p.to_vec(), points)
}

/// Comma-separated naturals, possibly empty.
pub fn parse_nat_list(text: &str) -> Result<Vec<u64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, ',')
        .into_iter()
        .map(|(offset, piece)| shifted(offset, whole(piece, Cursor::small_nat)))
        .collect()
}

/// `PREFIX:CYCLE`, e.g. `12:5` or `:2,3`.
pub fn parse_descriptor(text: &str) -> Result<SequenceDescriptor> {
    let Some(colon) = text.find(':') else {
        return Err(ParseError {
            position: text.len(),
            message: "expected PREFIX:CYCLE".into(),
        }
        .into());
    };
    let prefix = parse_nat_list(&text[..colon])?;
    let cycle = shifted(colon + 1, parse_nat_list(&text[colon + 1..]))?;
    SequenceDescriptor::new(prefix, cycle)
}

/// `START:END` on `Σ^(n)`, or `all` for the whole stage.
pub fn parse_arc(text: &str, n: u64) -> Result<CyclicArc> {
    if text.trim() == "all" {
        return CyclicArc::full(n);
    }
    let Some(colon) = text.find(':') else {
        return Err(ParseError {
            position: text.len(),
            message: "expected START:END".into(),
        }
        .into());
    };
    let a = parse_rational(&text[..colon])?;
    let b = shifted(colon + 1, parse_rational(&text[colon + 1..]))?;
    CyclicArc::new(n, a, b)
}

/// Arcs separated by `;`.
pub fn parse_arcs(text: &str, n: u64) -> Result<Vec<CyclicArc>> {
    split_top_level(text, ';')
        .into_iter()
        .map(|(offset, piece)| shifted(offset, parse_arc(piece, n)))
        .collect()
}

impl FromStr for Ordinal {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

impl FromStr for LongPoint {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_long_point(s)
    }
}

impl FromStr for SequenceDescriptor {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s)
    }
}
