//! Words in a free group of finite rank.
//!
//! A [`Word`] is always freely reduced and remembers the rank of the free
//! group it lives in, so operations that combine words from different free
//! groups fail instead of silently producing nonsense.

use std::fmt;

use crate::error::{Error, Result};

/// A basis element `x_i` or its inverse, stored as a signed index
/// (`+(i+1)` for `x_i`, `-(i+1)` for `x_i^-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        let v = generator as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    rank: usize,
}

fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Word {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    pub fn generator(index: usize, rank: usize) -> Result<Word> {
        Word::reduce([Letter::new(index, false)], rank)
    }

    /// Freely reduces a raw letter sequence with a single stack pass.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Word> {
        let mut stack = Vec::new();
        for letter in letters {
            if letter.generator() >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: letter.generator(),
                    rank,
                });
            }
            push_reduced(&mut stack, letter);
        }
        Ok(Word {
            letters: stack,
            rank,
        })
    }

    /// Builds a word from 1-based signed indices: `1` is `x_1`, `-2` is `x_2^-1`.
    /// Zeros are rejected.
    pub fn from_signed(indices: &[i32], rank: usize) -> Result<Word> {
        let mut letters = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 {
                return Err(Error::domain("signed index 0 is not a letter"));
            }
            letters.push(Letter::new(i.unsigned_abs() as usize - 1, i < 0));
        }
        Word::reduce(letters, rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    // Both operands share a rank and are reduced, so only the seam can cancel.
    pub(crate) fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.reserve(other.letters.len());
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            letters,
            rank: self.rank,
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(self.concat(other))
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            rank: self.rank,
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Result<Word> {
        let uv = u.multiply(v)?;
        Ok(uv.concat(&u.inverse()).concat(&v.inverse()))
    }

    /// Applies the free-group homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        if images.len() != self.rank {
            return Err(Error::ArityMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        let target_rank = match images.first() {
            Some(w) => w.rank,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|w| w.rank != target_rank) {
            return Err(Error::RankMismatch {
                left: target_rank,
                right: bad.rank,
            });
        }
        let mut stack = Vec::new();
        for &l in &self.letters {
            let image = &images[l.generator()].letters;
            if l.is_inverse() {
                for &m in image.iter().rev() {
                    push_reduced(&mut stack, m.inverse());
                }
            } else {
                for &m in image {
                    push_reduced(&mut stack, m);
                }
            }
        }
        Ok(Word {
            letters: stack,
            rank: target_rank,
        })
    }

    /// Strips matching inverse letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut lo, mut hi) = (0, l.len());
        while hi - lo >= 2 && l[lo] == l[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: l[lo..hi].to_vec(),
            rank: self.rank,
        }
    }

    /// Rotates the word left by `k` letters and freely reduces the result.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let rotated = self.letters[k..].iter().chain(&self.letters[..k]).copied();
        let mut stack = Vec::new();
        for l in rotated {
            push_reduced(&mut stack, l);
        }
        Word {
            letters: stack,
            rank: self.rank,
        }
    }

    /// Signed exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank];
        for l in &self.letters {
            sums[l.generator()] += l.sign() as i64;
        }
        sums
    }

    /// Reinterprets the word in a free group of rank `rank`.
    pub fn with_rank(&self, rank: usize) -> Result<Word> {
        Word::reduce(self.letters.iter().copied(), rank)
    }
}

/// Generator names used to read and print words.
///
/// Text syntax: whitespace-separated factors `name` or `name^k` with `k` a
/// (possibly negative) integer. The identity is written `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) {
                return Err(Error::parse(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::parse(format!("duplicate generator name `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `x1, ..., xn`.
    pub fn standard(rank: usize) -> Alphabet {
        Alphabet {
            names: (1..=rank).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp: i64 = exp
                        .parse()
                        .map_err(|_| Error::parse(format!("bad exponent in `{token}`")))?;
                    (name, exp)
                }
                None => (token, 1),
            };
            let index = self
                .index_of(name)
                .ok_or_else(|| Error::parse(format!("unknown generator `{name}`")))?;
            if exp.unsigned_abs() > 1_000_000 {
                return Err(Error::parse(format!("exponent too large in `{token}`")));
            }
            let letter = Letter::new(index, exp < 0);
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Word::reduce(letters, self.rank())
    }

    pub fn format_word(&self, word: &Word) -> String {
        WordDisplay {
            word,
            alphabet: self,
        }
        .to_string()
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for run in letters.chunk_by(|a, b| a == b) {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self
                .alphabet
                .names
                .get(run[0].generator())
                .map(String::as_str)
                .unwrap_or("?");
            let exp = run.len() as i64 * run[0].sign() as i64;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = Alphabet::standard(self.rank);
        write!(
            f,
            "{}",
            WordDisplay {
                word: self,
                alphabet: &alphabet
            }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[i32]) -> Word {
        Word::from_signed(s, 3).unwrap()
    }

    fn raw(s: &[i32]) -> Vec<Letter> {
        s.iter()
            .map(|&i| Letter::new(i.unsigned_abs() as usize - 1, i < 0))
            .collect()
    }

    #[test]
    fn reduce_examples() {
        // a = 1, b = 2, c = 3
        assert_eq!(Word::reduce(raw(&[1, -1]), 3).unwrap(), Word::identity(3));
        assert_eq!(
            Word::reduce(raw(&[1, 2, -2, 1]), 3).unwrap().letters(),
            &raw(&[1, 1])[..]
        );
        assert_eq!(
            Word::reduce(raw(&[1, -2, 2, -1, 3]), 3).unwrap().letters(),
            &raw(&[3])[..]
        );
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert_eq!(
            Word::reduce(raw(&[4]), 3),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 3 })
        );
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2, 3])).unwrap(), w(&[1, 3]));
        assert_eq!(w(&[1, 2]).multiply(&Word::identity(3)).unwrap(), w(&[1, 2]));
        assert!(w(&[1, 2]).multiply(&w(&[-2, -1])).unwrap().is_identity());
        let other = Word::from_signed(&[1], 2).unwrap();
        assert!(matches!(
            w(&[1]).multiply(&other),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(&[1, 2]).inverse(), w(&[-2, -1]));
        assert_eq!(Word::identity(3).inverse(), Word::identity(3));
        assert_eq!(w(&[1, 1, -2]).inverse(), w(&[2, -1, -1]));
    }

    #[test]
    fn substitute_examples() {
        let ab = Word::from_signed(&[1, 2], 2).unwrap();
        let a = Word::from_signed(&[1], 2).unwrap();
        let b = Word::from_signed(&[2], 2).unwrap();
        assert_eq!(
            ab.substitute(&[a.clone(), ab.clone()]).unwrap().letters(),
            &raw(&[1, 1, 2])[..]
        );
        let a_inv = Word::from_signed(&[-1], 2).unwrap();
        assert_eq!(
            a_inv.substitute(&[ab.clone(), b.clone()]).unwrap(),
            Word::from_signed(&[-2, -1], 2).unwrap()
        );
        let aba = Word::from_signed(&[1, 2, -1], 2).unwrap();
        assert_eq!(
            aba.substitute(&[b.clone(), a.clone()]).unwrap(),
            Word::from_signed(&[2, 1, -2], 2).unwrap()
        );
        assert!(matches!(
            aba.substitute(&[b]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_reduction_and_rotation() {
        assert_eq!(w(&[1, 2, 3, -1]).cyclically_reduced(), w(&[2, 3]));
        assert_eq!(w(&[1, -1]).cyclically_reduced(), Word::identity(3));
        assert_eq!(w(&[1, 2, -1]).rotate(1), w(&[2]));
        assert_eq!(w(&[1, 2, 3]).rotate(1), w(&[2, 3, 1]));
    }

    #[test]
    fn text_syntax() {
        let alpha = Alphabet::new(["a", "b", "c"]).unwrap();
        let word = alpha.parse_word("a b^-1 a^2").unwrap();
        assert_eq!(word, w(&[1, -2, 1, 1]));
        assert_eq!(alpha.format_word(&word), "a b^-1 a^2");
        assert_eq!(alpha.format_word(&Word::identity(3)), "1");
        assert!(alpha.parse_word("1").unwrap().is_identity());
        assert!(alpha.parse_word("a a^-1").unwrap().is_identity());
        assert!(alpha.parse_word("d").is_err());
        assert!(alpha.parse_word("a^x").is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["A"]).is_err());
        assert_eq!(format!("{}", w(&[1, -3])), "x1 x3^-1");
    }
}
