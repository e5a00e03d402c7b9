//! Words over two generators: parsing, free reduction, and evaluation on a
//! finite group.
//!
//! Grammar accepted by [`Word::parse`]:
//!
//! ```text
//! word    := factor*                      (juxtaposition = concatenation)
//! factor  := atom ('^' integer)*         (integer exponents, any sign)
//! atom    := 'x' | 'y'                   (generators)
//!          | 'X' | 'Y'                   (their inverses; '^-1' also works)
//!          | '(' word ')'
//!          | '[' word (',' word)+ ']'    (left-normed commutator)
//! ```
//!
//! `[u,v]` expands to `u^-1 v^-1 u v` and `[u,v,w]` means `[[u,v],w]`.
//! Whitespace is ignored. The result is always freely reduced.

use std::fmt;

use crate::group::{ElementIndex, Group};
use thiserror::Error;

/// Expanded words are capped at this many letters; protects against
/// pathological exponents like `x^100000000`.
const MAX_WORD_LETTERS: usize = 1 << 20;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{found}' at byte {offset}; only x and y are allowed")]
    UnknownVariable { offset: usize, found: char },
    #[error("unknown word name '{name}'")]
    UnknownName { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    First,
    Second,
}

/// One letter of a word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    fn opposite(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn symbol(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::First, false) => 'x',
            (Generator::First, true) => 'X',
            (Generator::Second, false) => 'y',
            (Generator::Second, true) => 'Y',
        }
    }
}

/// A freely reduced word over two generators.
///
/// Equality compares the reduced letter sequences only; the original source
/// text is kept for display and reporting.
#[derive(Clone, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    source: String,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("()");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl Word {
    pub fn parse(text: &str) -> Result<Word, WordError> {
        let mut parser = Parser::new(text);
        parser.skip_whitespace();
        if parser.peek().is_none() {
            return Err(WordError::Syntax {
                offset: parser.offset(),
                message: "expected a word, found end of input".into(),
            });
        }
        let letters = parser.parse_word()?;
        parser.skip_whitespace();
        if let Some((offset, c)) = parser.peek() {
            return Err(WordError::Syntax {
                offset,
                message: format!("unexpected '{c}'"),
            });
        }
        Ok(Word {
            letters,
            source: text.to_string(),
        })
    }

    /// Built-in words: `commutator`, `engelK` (K >= 1 trailing `y`s) and
    /// `powerK` (K >= 1).
    pub fn named(name: &str) -> Result<Word, WordError> {
        if name == "commutator" {
            return Word::parse("[x,y]");
        }
        if let Some(k) = strict_suffix(name, "engel") {
            if k >= 1 {
                return Word::engel(k);
            }
        }
        if let Some(k) = strict_suffix(name, "power") {
            if k >= 1 {
                return Word::parse(&format!("x^{k}"));
            }
        }
        Err(WordError::UnknownName { name: name.into() })
    }

    /// The commutator `[x,y]`.
    pub fn commutator() -> Word {
        Word::parse("[x,y]").expect("commutator word parses")
    }

    /// Left-normed `[x,y,...,y]` with `k` trailing `y`s; `engel(2)` is `[x,y,y]`.
    pub fn engel(k: usize) -> Result<Word, WordError> {
        if k == 0 {
            return Err(WordError::UnknownName {
                name: "engel0".into(),
            });
        }
        Word::parse(&format!("[x{}]", ",y".repeat(k)))
    }

    /// Build a word directly from letters, reducing them.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut reduced = Vec::new();
        for l in letters {
            push_reduced(&mut reduced, l);
        }
        let mut word = Word {
            letters: reduced,
            source: String::new(),
        };
        word.source = word.to_string();
        word
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The text this word was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// The formal inverse (reversed letters with flipped signs).
    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|l| l.opposite()))
    }

    /// Evaluate with `x`, `y` bound to the given elements: a left-to-right
    /// fold of table lookups. The empty word evaluates to the identity.
    pub fn evaluate(&self, group: &Group, x: ElementIndex, y: ElementIndex) -> ElementIndex {
        let mut acc = group.identity();
        for l in &self.letters {
            let e = match (l.generator, l.inverse) {
                (Generator::First, false) => x,
                (Generator::First, true) => group.inverse(x),
                (Generator::Second, false) => y,
                (Generator::Second, true) => group.inverse(y),
            };
            acc = group.multiply(acc, e);
        }
        acc
    }

    /// Exhaustive check over all |G|^2 assignments.
    pub fn is_identity_in(&self, group: &Group) -> bool {
        let id = group.identity();
        for x in 0..group.order() {
            for y in 0..group.order() {
                if self.evaluate(group, x, y) != id {
                    return false;
                }
            }
        }
        true
    }
}

/// Parse `name` as `prefix` followed by a bare decimal integer.
fn strict_suffix(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || rest.starts_with('0') && rest != "0" {
        return None;
    }
    rest.parse().ok()
}

/// Append one letter, cancelling against the current tail.
fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.opposite()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

fn concat_reduced(dst: &mut Vec<Letter>, src: &[Letter]) {
    for &l in src {
        push_reduced(dst, l);
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            text,
            chars: text.char_indices().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.text.len())
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// A (possibly empty) sequence of factors, stopping at `)`, `]`, `,` or
    /// end of input.
    fn parse_word(&mut self) -> Result<Vec<Letter>, WordError> {
        let mut letters = Vec::new();
        loop {
            self.skip_whitespace();
            match self.peek() {
                None | Some((_, ')')) | Some((_, ']')) | Some((_, ',')) => return Ok(letters),
                Some(_) => {
                    let factor = self.parse_factor()?;
                    concat_reduced(&mut letters, &factor);
                }
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Vec<Letter>, WordError> {
        let mut letters = self.parse_atom()?;
        loop {
            self.skip_whitespace();
            if matches!(self.peek(), Some((_, '^'))) {
                self.bump();
                let (offset, exponent) = self.parse_integer()?;
                letters = apply_power(&letters, exponent, offset)?;
            } else {
                return Ok(letters);
            }
        }
    }

    fn parse_atom(&mut self) -> Result<Vec<Letter>, WordError> {
        self.skip_whitespace();
        let (offset, c) = self.peek().ok_or_else(|| WordError::Syntax {
            offset: self.offset(),
            message: "expected 'x', 'y', '(' or '['".into(),
        })?;
        match c {
            'x' | 'y' | 'X' | 'Y' => {
                self.bump();
                Ok(vec![Letter {
                    generator: if c.eq_ignore_ascii_case(&'x') {
                        Generator::First
                    } else {
                        Generator::Second
                    },
                    inverse: c.is_ascii_uppercase(),
                }])
            }
            'a'..='z' | 'A'..='Z' => Err(WordError::UnknownVariable { offset, found: c }),
            '(' => {
                self.bump();
                let inner = self.parse_word()?;
                self.skip_whitespace();
                match self.bump() {
                    Some((_, ')')) => Ok(inner),
                    _ => Err(WordError::Syntax {
                        offset: self.offset_of_previous_or_end(),
                        message: format!("unclosed '(' opened at byte {offset}"),
                    }),
                }
            }
            '[' => {
                self.bump();
                let mut parts = vec![self.parse_word()?];
                self.skip_whitespace();
                while matches!(self.peek(), Some((_, ','))) {
                    self.bump();
                    parts.push(self.parse_word()?);
                    self.skip_whitespace();
                }
                match self.bump() {
                    Some((_, ']')) => {
                        if parts.len() < 2 {
                            return Err(WordError::Syntax {
                                offset,
                                message: "commutator brackets need at least two components"
                                    .into(),
                            });
                        }
                        let mut acc = parts[0].clone();
                        for part in &parts[1..] {
                            acc = commutator(&acc, part);
                        }
                        Ok(acc)
                    }
                    _ => Err(WordError::Syntax {
                        offset: self.offset_of_previous_or_end(),
                        message: format!("unclosed '[' opened at byte {offset}"),
                    }),
                }
            }
            _ => Err(WordError::Syntax {
                offset,
                message: format!("unexpected '{c}'"),
            }),
        }
    }

    fn offset_of_previous_or_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.chars
                .get(self.pos - 1)
                .map(|&(o, _)| o)
                .unwrap_or(self.text.len())
        }
    }

    fn parse_integer(&mut self) -> Result<(usize, i64), WordError> {
        self.skip_whitespace();
        let start = self.offset();
        let negative = if matches!(self.peek(), Some((_, '-'))) {
            self.bump();
            true
        } else {
            false
        };
        let mut value: i64 = 0;
        let mut any = false;
        while let Some((offset, c)) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                any = true;
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(i64::from(d)))
                    .ok_or(WordError::Syntax {
                        offset,
                        message: "exponent is too large".into(),
                    })?;
                self.bump();
            } else {
                break;
            }
        }
        if !any {
            return Err(WordError::Syntax {
                offset: self.offset(),
                message: "expected an integer exponent after '^'".into(),
            });
        }
        Ok((start, if negative { -value } else { value }))
    }
}

fn commutator(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(2 * (u.len() + v.len()));
    for &l in u.iter().rev() {
        push_reduced(&mut out, l.opposite());
    }
    for &l in v.iter().rev() {
        push_reduced(&mut out, l.opposite());
    }
    concat_reduced(&mut out, u);
    concat_reduced(&mut out, v);
    out
}

fn apply_power(base: &[Letter], exponent: i64, offset: usize) -> Result<Vec<Letter>, WordError> {
    let magnitude = exponent.unsigned_abs() as usize;
    if base.len().saturating_mul(magnitude) > MAX_WORD_LETTERS {
        return Err(WordError::Syntax {
            offset,
            message: format!("power expansion exceeds {MAX_WORD_LETTERS} letters"),
        });
    }
    let mut out = Vec::new();
    if exponent >= 0 {
        for _ in 0..magnitude {
            concat_reduced(&mut out, base);
        }
    } else {
        let inv: Vec<Letter> = base.iter().rev().map(|l| l.opposite()).collect();
        for _ in 0..magnitude {
            concat_reduced(&mut out, &inv);
        }
    }
    Ok(out)
}
