//! Free words over `{a, b}` and the textual word grammar.
//!
//! ```text
//! word   := term*
//! term   := letter power?
//! letter := 'a' | 'b' | 'A' | 'B'        ('A' = a^-1, 'B' = b^-1)
//! power  := '^' '-'? digits
//! ```
//!
//! Terms may be separated by whitespace. The token `e` (identity) is also
//! accepted so that printed output parses back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: BigInt,
}

/// A freely reduced word with merged syllables: every exponent is nonzero
/// and adjacent syllables carry distinct letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    syllables: Vec<Syllable>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn from_syllables<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Letter, BigInt)>,
    {
        let mut w = GroupWord::identity();
        for (letter, exp) in iter {
            w.push(letter, exp);
        }
        w
    }

    pub fn a(exp: impl Into<BigInt>) -> Self {
        Self::from_syllables([(Letter::A, exp.into())])
    }

    pub fn b(exp: impl Into<BigInt>) -> Self {
        Self::from_syllables([(Letter::B, exp.into())])
    }

    /// Appends `letter^exp`, merging with the last syllable.
    pub fn push(&mut self, letter: Letter, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.letter == letter {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { letter, exp });
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for s in &other.syllables {
            w.push(s.letter, s.exp.clone());
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::from_syllables(
            self.syllables
                .iter()
                .rev()
                .map(|s| (s.letter, -s.exp.clone())),
        )
    }

    /// Number of `b`-letters counted with multiplicity, before any reduction.
    pub fn b_letter_count(&self) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.letter == Letter::B)
            .map(|s| s.exp.abs())
            .sum()
    }

    pub fn pow(&self, z: i64) -> GroupWord {
        let base = if z < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..z.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s.letter.as_char())?;
            if !s.exp.is_one() {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses a word over `{a, b, A, B}`. Never consults the group parameters.
pub fn parse_word(text: &str) -> Result<GroupWord> {
    let terms = parse_terms(text, |c| match c {
        'a' => Some(Some((Letter::A, false))),
        'A' => Some(Some((Letter::A, true))),
        'b' => Some(Some((Letter::B, false))),
        'B' => Some(Some((Letter::B, true))),
        'e' => Some(None),
        _ => None,
    })?;
    Ok(GroupWord::from_syllables(terms))
}

/// Shared tokenizer for the word grammar over an arbitrary two-case
/// alphabet. `classify` maps a letter to `Some(Some((symbol, inverted)))`,
/// `Some(None)` for an identity token, or `None` if the letter is not allowed.
pub(crate) fn parse_terms<T, F>(text: &str, classify: F) -> Result<Vec<(T, BigInt)>>
where
    F: Fn(char) -> Option<Option<(T, bool)>>,
{
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let Some(kind) = (if c.is_ascii() { classify(c) } else { None }) else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax {
                offset: i,
                message: format!("unexpected character {ch:?}"),
            });
        };
        i += 1;
        let mut exp = BigInt::one();
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let negative = i < bytes.len() && bytes[i] == b'-';
            if negative {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Syntax {
                    offset: i,
                    message: "expected digits after '^'".into(),
                });
            }
            exp = text[start..i].parse().expect("ascii digits");
            if negative {
                exp = -exp;
            }
        }
        if let Some((symbol, inverted)) = kind {
            out.push((symbol, if inverted { -exp } else { exp }));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syl(w: &GroupWord) -> Vec<(char, i64)> {
        w.syllables()
            .iter()
            .map(|s| (s.letter.as_char(), s.exp.to_string().parse().unwrap()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            syl(&parse_word("b a^2 B").unwrap()),
            vec![('b', 1), ('a', 2), ('b', -1)]
        );
        assert!(parse_word("a^3 a^-3").unwrap().is_empty());
        assert_eq!(
            syl(&parse_word("A^2 b^2").unwrap()),
            vec![('a', -2), ('b', 2)]
        );
        assert_eq!(syl(&parse_word("A^-2").unwrap()), vec![('a', 2)]);
        assert_eq!(syl(&parse_word("abAB").unwrap()).len(), 4);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("e").unwrap().is_empty());
    }

    #[test]
    fn big_exponents_survive() {
        let w = parse_word("a^123456789012345678901234567890").unwrap();
        assert_eq!(w.to_string(), "a^123456789012345678901234567890");
    }

    #[test]
    fn syntax_errors_report_offset() {
        match parse_word("b a^x") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_word("b c") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_word("a ^2").is_err());
        assert!(parse_word("a^").is_err());
        assert!(parse_word("a^-").is_err());
    }

    #[test]
    fn display_round_trip() {
        for text in ["e", "a^3", "b a^-1 b^-1", "b^2 a^4"] {
            assert_eq!(parse_word(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn inverse_and_pow() {
        let w = parse_word("a b^2").unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(2).to_string(), "a b^2 a b^2");
        assert_eq!(w.pow(-1), w.inverse());
        assert!(w.pow(0).is_empty());
    }
}
