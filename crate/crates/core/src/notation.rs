//! Bracket notation for game forms.
//!
//! ```text
//! expr      := term (("+" | "-") term)*
//! term      := "-" term | "(" expr ")" | "{" opts "|" opts "}" | shorthand
//! opts      := ε | expr ("," expr)*
//! shorthand := "0" | "*" | "^" | "v" | int | int "/" pow2
//! int       := [1-9][0-9]*
//! pow2      := "2^" k | a power-of-two literal
//! ```
//!
//! Whitespace is insignificant. `^ = {0|*}`, `v = {*|0}`, `-g` is the conjugate and
//! `a - b` is `a + conj(b)`. Shorthands expand to their defining forms at parse time.

use std::collections::HashMap;

use crate::algebra::numbers::{dyadic_form, integer_form, DyadicValue};
use crate::error::{Error, Result};
use crate::game::{GameId, Games};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Only `0` and braces; round-trips through [`parse`].
    Literal,
    /// Recognized integers, small dyadics, `*`, `^` and `v` are printed by name.
    Named,
}

pub fn parse(games: &Games, text: &str) -> Result<GameId> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        games,
    };
    let g = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::syntax(
            p.pos,
            format!("unexpected '{}'", p.peek_char()),
        ));
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    games: &'a Games,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(Error::syntax(
                self.pos,
                format!("expected '{}', found '{}'", c as char, self.peek_char()),
            )),
            None => Err(Error::syntax(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn expr(&mut self) -> Result<GameId> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.games.sum(acc, rhs);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = self.games.difference(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GameId> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let g = self.term()?;
                Ok(self.games.conjugate(g))
            }
            Some(b'(') => {
                self.pos += 1;
                let g = self.expr()?;
                self.expect(b')')?;
                Ok(g)
            }
            Some(b'{') => {
                self.pos += 1;
                let left = self.opts()?;
                self.expect(b'|')?;
                let right = self.opts()?;
                self.expect(b'}')?;
                Ok(self.games.intern(left, right))
            }
            Some(b'*') => {
                self.pos += 1;
                Ok(self.games.star())
            }
            Some(b'^') => {
                self.pos += 1;
                Ok(self.games.up())
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(self.games.down())
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(self.games.zero())
            }
            Some(b'1'..=b'9') => self.number(),
            Some(_) => Err(Error::syntax(
                self.pos,
                format!("unexpected '{}'", self.peek_char()),
            )),
            None => Err(Error::syntax(self.pos, "unexpected end of input")),
        }
    }

    fn opts(&mut self) -> Result<Vec<GameId>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(b'|') | Some(b'}')) {
            return Ok(out);
        }
        out.push(self.expr()?);
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn digits(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or(Error::BoundExceeded {
                    what: "integer literal",
                    value: u64::MAX as u128,
                    limit: u64::MAX as u128,
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::syntax(start, "expected a number"));
        }
        Ok((value, start))
    }

    fn number(&mut self) -> Result<GameId> {
        let (numerator, _) = self.digits()?;
        let numerator = i64::try_from(numerator).map_err(|_| Error::BoundExceeded {
            what: "integer literal",
            value: numerator as u128,
            limit: i64::MAX as u128,
        })?;
        if self.peek() != Some(b'/') {
            return integer_form(self.games, numerator);
        }
        self.pos += 1;
        let (base, at) = self.digits()?;
        let exponent = if self.peek() == Some(b'^') {
            if base != 2 {
                return Err(Error::syntax(at, "only powers of 2 may follow '/'"));
            }
            self.pos += 1;
            let (k, at) = self.digits()?;
            u32::try_from(k).map_err(|_| Error::syntax(at, "exponent too large"))?
        } else {
            if base == 0 || !base.is_power_of_two() {
                return Err(Error::syntax(
                    at,
                    format!("denominator {base} is not a power of 2"),
                ));
            }
            base.trailing_zeros()
        };
        if exponent > 62 {
            return Err(Error::BoundExceeded {
                what: "dyadic exponent",
                value: exponent as u128,
                limit: 62,
            });
        }
        dyadic_form(self.games, DyadicValue::new(numerator, exponent))
    }
}

pub fn print(games: &Games, id: GameId, style: Style) -> String {
    let mut out = String::new();
    let names = match style {
        Style::Literal => None,
        Style::Named => Some(name_table(games)),
    };
    write_form(games, id, names, &mut out);
    out
}

fn write_form(
    games: &Games,
    id: GameId,
    names: Option<&HashMap<GameId, String>>,
    out: &mut String,
) {
    if id == GameId::ZERO {
        out.push('0');
        return;
    }
    if let Some(name) = names.and_then(|n| n.get(&id)) {
        out.push_str(name);
        return;
    }
    let form = games.form(id);
    out.push('{');
    for (i, &o) in form.left().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_form(games, o, names, out);
    }
    out.push('|');
    for (i, &o) in form.right().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_form(games, o, names, out);
    }
    out.push('}');
}

const NAMED_INTEGER_LIMIT: i64 = 8;
const NAMED_DYADIC_EXPONENT: u32 = 3;

/// Names for the shorthand forms, built once per arena.
fn name_table(games: &Games) -> &HashMap<GameId, String> {
    games.names.get_or_init(|| {
        let mut names = HashMap::new();
        names.insert(games.star(), "*".to_string());
        names.insert(games.up(), "^".to_string());
        names.insert(games.down(), "v".to_string());
        for k in 1..=NAMED_DYADIC_EXPONENT {
            let scale = 1i64 << k;
            for n in (-2 * scale + 1..2 * scale).filter(|n| n % 2 != 0) {
                let v = DyadicValue::new(n, k);
                if let Ok(g) = dyadic_form(games, v) {
                    names.entry(g).or_insert_with(|| v.to_string());
                }
            }
        }
        for n in -NAMED_INTEGER_LIMIT..=NAMED_INTEGER_LIMIT {
            if let Ok(g) = integer_form(games, n) {
                names.insert(g, n.to_string());
            }
        }
        names
    })
}
