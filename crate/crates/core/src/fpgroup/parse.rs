//! Text grammar for words:
//!
//! ```text
//! word  := '1' | term ('*'? term)*
//! term  := atom ('^' '-'? digits)?
//! atom  := name | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! Generator names are single characters, matched case-sensitively.
//! Whitespace is ignored. `[a,b]` is the commutator `a^-1 b^-1 a b`.

use super::word::Word;
use crate::error::{Error, Result};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [char],
}

pub fn parse_word(text: &str, names: &[char]) -> Result<Word> {
    let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0, names };
    let w = p.word()?;
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

/// Parse a comma- or newline-separated list of words.
pub fn parse_words(text: &str, names: &[char]) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' | '\n' | ';' if depth == 0 => {
                let piece = &text[start..i];
                if !piece.trim().is_empty() {
                    out.push(parse_word(piece, names)?);
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    let piece = &text[start..];
    if !piece.trim().is_empty() {
        out.push(parse_word(piece, names)?);
    }
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1), |&(i, _)| i)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.byte_pos(), msg: msg.to_string() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<Word> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Word::identity());
        }
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    w = w.mul(&self.term()?);
                }
                Some(c) if c == '(' || c == '[' || self.names.contains(&c) => {
                    w = w.mul(&self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(a.commutator(&b))
            }
            Some(c) => match self.names.iter().position(|&n| n == c) {
                Some(g) => {
                    self.pos += 1;
                    Ok(Word::generator(g))
                }
                None => Err(self.error(&format!("unknown generator '{c}'"))),
            },
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<i32> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let v: i32 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}
