//! The class expression grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' exponent]
//! atom   := name | 'L' | integer | '(' expr ')'
//! ```
//!
//! Names resolve against the profile library, `L` is the Lefschetz class,
//! and integer literals are multiples of the point class. Exponents are
//! integers; a negative exponent is only allowed directly on `L`.

use num_bigint::BigInt;

use hodgez_core::motivic::VirtualClass;

use crate::error::CliError;
use crate::library::ProfileLibrary;

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, CliError> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let literal: BigInt = input[start..i].parse().expect("digits");
                tokens.push((start, Token::Int(literal)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(CliError::input(format!(
                    "unexpected character {c:?} at offset {i} in class expression"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    position: usize,
    library: &'a ProfileLibrary,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.position).cloned();
        self.position += 1;
        t
    }

    fn expect(&mut self, token: Token) -> Result<(), CliError> {
        match self.next() {
            Some((_, t)) if t == token => Ok(()),
            Some((offset, t)) => Err(CliError::input(format!(
                "expected {token:?} at offset {offset}, found {t:?}"
            ))),
            None => Err(CliError::input(format!(
                "expected {token:?}, found end of expression"
            ))),
        }
    }

    fn parse_expr(&mut self) -> Result<VirtualClass, CliError> {
        let mut negate_first = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate_first = true;
        }
        let mut acc = self.parse_term()?;
        if negate_first {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<VirtualClass, CliError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            acc = acc.mul(&self.parse_factor()?);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<VirtualClass, CliError> {
        let (is_lefschetz, base) = self.parse_atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.next();
        let mut negative = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negative = true;
        }
        let exponent = match self.next() {
            Some((_, Token::Int(n))) => n,
            Some((offset, t)) => {
                return Err(CliError::input(format!(
                    "expected integer exponent at offset {offset}, found {t:?}"
                )))
            }
            None => {
                return Err(CliError::input(
                    "expected integer exponent, found end of expression",
                ))
            }
        };
        let exponent = u32::try_from(&exponent)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| {
                CliError::input(format!(
                    "exponent {exponent} exceeds the limit {MAX_EXPONENT}"
                ))
            })?;
        if negative {
            if !is_lefschetz {
                return Err(CliError::input("negative exponents are only allowed on L"));
            }
            return Ok(VirtualClass::lefschetz_power(-i64::from(exponent)));
        }
        if is_lefschetz {
            return Ok(VirtualClass::lefschetz_power(i64::from(exponent)));
        }
        Ok(base.pow(exponent))
    }

    /// Returns the parsed atom, flagging whether it was the literal `L`
    /// token (the only base that accepts a negative exponent).
    fn parse_atom(&mut self) -> Result<(bool, VirtualClass), CliError> {
        match self.next() {
            Some((_, Token::Int(n))) => Ok((false, VirtualClass::from_integer(n))),
            Some((_, Token::Ident(name))) if name == "L" => {
                Ok((true, VirtualClass::lefschetz_power(1)))
            }
            Some((offset, Token::Ident(name))) => match self.library.get(&name) {
                Some(profile) => Ok((false, VirtualClass::from_profile(profile.clone()))),
                None => Err(CliError::input(format!(
                    "unknown profile {name:?} at offset {offset}"
                ))),
            },
            Some((_, Token::LParen)) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen)?;
                Ok((false, inner))
            }
            Some((offset, t)) => Err(CliError::input(format!(
                "expected a profile name, integer, L, or '(' at offset {offset}, found {t:?}"
            ))),
            None => Err(CliError::input("empty class expression")),
        }
    }
}

/// Parse a class expression against a profile library.
pub fn parse_class_expr(input: &str, library: &ProfileLibrary) -> Result<VirtualClass, CliError> {
    let mut parser = Parser {
        tokens: tokenize(input)?,
        position: 0,
        library,
    };
    let value = parser.parse_expr()?;
    if let Some((offset, token)) = parser.tokens.get(parser.position) {
        return Err(CliError::input(format!(
            "trailing {token:?} at offset {offset} in class expression"
        )));
    }
    Ok(value)
}
