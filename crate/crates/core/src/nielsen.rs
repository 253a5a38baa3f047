//! Elementary Nielsen transformations on ordered tuples of words.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// An ordered tuple of words in a common free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratingTuple {
    words: Vec<Word>,
    rank: usize,
}

impl GeneratingTuple {
    pub fn new(words: Vec<Word>, rank: usize) -> Result<GeneratingTuple> {
        if let Some(w) = words.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
        Ok(GeneratingTuple { words, rank })
    }

    /// The standard basis `(x_1, ..., x_n)` of the free group of rank `n`.
    pub fn basis(rank: usize) -> GeneratingTuple {
        let words = (0..rank)
            .map(|i| Word::generator(i, rank).expect("index < rank"))
            .collect();
        GeneratingTuple { words, rank }
    }

    pub fn arity(&self) -> usize {
        self.words.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    /// Appends the identity word.
    pub fn padded(&self) -> GeneratingTuple {
        let mut words = self.words.clone();
        words.push(Word::identity(self.rank));
        GeneratingTuple {
            words,
            rank: self.rank,
        }
    }

    pub fn apply_move(&self, m: NielsenMove) -> Result<GeneratingTuple> {
        m.validate(self.arity())?;
        let mut words = self.words.clone();
        match m {
            NielsenMove::Swap(i, j) => words.swap(i, j),
            NielsenMove::Cycle => {
                if !words.is_empty() {
                    words.rotate_left(1)
                }
            }
            NielsenMove::Invert(i) => words[i] = words[i].inverse(),
            NielsenMove::RightMultiply(i, j) => words[i] = words[i].concat(&words[j]),
        }
        Ok(GeneratingTuple {
            words,
            rank: self.rank,
        })
    }

    /// Left-to-right composition of [`apply_move`](Self::apply_move).
    pub fn apply_sequence(&self, moves: &[NielsenMove]) -> Result<GeneratingTuple> {
        let mut t = self.clone();
        for &m in moves {
            t = t.apply_move(m)?;
        }
        Ok(t)
    }

    /// Entrywise substitution into the words of `images`.
    pub fn substitute(&self, images: &[Word]) -> Result<GeneratingTuple> {
        let rank = images.first().map_or(self.rank, Word::rank);
        let words = self
            .words
            .iter()
            .map(|w| w.substitute(images))
            .collect::<Result<_>>()?;
        GeneratingTuple::new(words, rank)
    }

    /// Reads a comma-separated list of words, e.g. `a b, b^-1`.
    /// An empty string is the empty tuple.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<GeneratingTuple> {
        let words = if text.trim().is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|s| alphabet.parse_word(s))
                .collect::<Result<_>>()?
        };
        GeneratingTuple::new(words, alphabet.rank())
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        self.words
            .iter()
            .map(|w| alphabet.format_word(w))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// One elementary Nielsen transformation, generalised to arbitrary positions.
///
/// `Cycle` rotates `(t_1, ..., t_n)` to `(t_2, ..., t_n, t_1)` and
/// `RightMultiply(i, j)` replaces `t_i` by `t_i t_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NielsenMove {
    Swap(usize, usize),
    Cycle,
    Invert(usize),
    RightMultiply(usize, usize),
}

impl NielsenMove {
    pub fn validate(self, arity: usize) -> Result<()> {
        let ok = match self {
            NielsenMove::Swap(i, j) | NielsenMove::RightMultiply(i, j) => {
                i != j && i < arity && j < arity
            }
            NielsenMove::Cycle => true,
            NielsenMove::Invert(i) => i < arity,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMove {
                mv: self.to_string(),
                arity,
            })
        }
    }

    /// Moves that undo `self` when applied after it.
    pub fn inverse_sequence(self, arity: usize) -> Vec<NielsenMove> {
        match self {
            NielsenMove::Swap(..) | NielsenMove::Invert(_) => vec![self],
            NielsenMove::Cycle => vec![NielsenMove::Cycle; arity.saturating_sub(1)],
            NielsenMove::RightMultiply(i, j) => vec![
                NielsenMove::Invert(j),
                NielsenMove::RightMultiply(i, j),
                NielsenMove::Invert(j),
            ],
        }
    }

    /// Every valid move at `arity`: swaps with `i < j`, the cycle, inversions,
    /// and right multiplications for all ordered pairs.
    pub fn all(arity: usize) -> Vec<NielsenMove> {
        let mut moves = Vec::new();
        for i in 0..arity {
            for j in i + 1..arity {
                moves.push(NielsenMove::Swap(i, j));
            }
        }
        moves.push(NielsenMove::Cycle);
        moves.extend((0..arity).map(NielsenMove::Invert));
        for i in 0..arity {
            for j in 0..arity {
                if i != j {
                    moves.push(NielsenMove::RightMultiply(i, j));
                }
            }
        }
        moves
    }

    /// The four fixed-position transformations acting on entries 1 and 2.
    /// Only `Cycle` and `Invert(0)` make sense below arity 2.
    pub fn elementary(arity: usize) -> Vec<NielsenMove> {
        if arity >= 2 {
            vec![
                NielsenMove::Swap(0, 1),
                NielsenMove::Cycle,
                NielsenMove::Invert(0),
                NielsenMove::RightMultiply(0, 1),
            ]
        } else if arity == 1 {
            vec![NielsenMove::Cycle, NielsenMove::Invert(0)]
        } else {
            vec![NielsenMove::Cycle]
        }
    }

    /// Rewrites a generalised move as a composition of the four
    /// fixed-position moves of [`elementary`](Self::elementary).
    pub fn to_elementary(self, arity: usize) -> Result<Vec<NielsenMove>> {
        self.validate(arity)?;
        let (core, front) = match self {
            NielsenMove::Cycle => return Ok(vec![NielsenMove::Cycle]),
            NielsenMove::Swap(i, j) => (NielsenMove::Swap(0, 1), vec![i, j]),
            NielsenMove::Invert(i) => (NielsenMove::Invert(0), vec![i]),
            NielsenMove::RightMultiply(i, j) => (NielsenMove::RightMultiply(0, 1), vec![i, j]),
        };
        let transport = transport_to_front(&front, arity);
        let mut out = transport.clone();
        out.push(core);
        out.extend(inverse_of_sequence(&transport, arity));
        Ok(out)
    }

    /// `t_i -> t_j t_i`, built from inversions and a right multiplication.
    pub fn left_multiply(i: usize, j: usize) -> Vec<NielsenMove> {
        vec![
            NielsenMove::Invert(j),
            NielsenMove::Invert(i),
            NielsenMove::RightMultiply(i, j),
            NielsenMove::Invert(i),
            NielsenMove::Invert(j),
        ]
    }
}

// Fixed-position moves bringing the entries at `front` to positions 0, 1, ...
// with the remaining entries kept in order.
fn transport_to_front(front: &[usize], arity: usize) -> Vec<NielsenMove> {
    let mut target: Vec<usize> = front.to_vec();
    target.extend((0..arity).filter(|k| !front.contains(k)));
    let mut current: Vec<usize> = (0..arity).collect();
    let mut out = Vec::new();
    for k in 0..arity {
        let mut p = current
            .iter()
            .position(|&x| x == target[k])
            .expect("target is a permutation");
        while p > k {
            // adjacent swap (p-1, p) = Cycle^(p-1) Swap(0,1) Cycle^(n-p+1)
            let a = p - 1;
            out.extend(std::iter::repeat_n(NielsenMove::Cycle, a));
            out.push(NielsenMove::Swap(0, 1));
            out.extend(std::iter::repeat_n(NielsenMove::Cycle, (arity - a) % arity));
            current.swap(a, p);
            p -= 1;
        }
    }
    out
}

/// Moves undoing the whole sequence `moves`.
pub fn inverse_of_sequence(moves: &[NielsenMove], arity: usize) -> Vec<NielsenMove> {
    moves
        .iter()
        .rev()
        .flat_map(|m| m.inverse_sequence(arity))
        .collect()
}

/// Images of the standard basis under the composed automorphism.
pub fn move_as_automorphism(moves: &[NielsenMove], rank: usize) -> Result<GeneratingTuple> {
    GeneratingTuple::basis(rank).apply_sequence(moves)
}

/// Applies `steps` uniformly drawn valid moves. Reproducible for a fixed seed.
pub fn random_walk(
    t: &GeneratingTuple,
    steps: usize,
    seed: u64,
) -> (GeneratingTuple, Vec<NielsenMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = NielsenMove::all(t.arity());
    let mut log = Vec::with_capacity(steps);
    let mut current = t.clone();
    for _ in 0..steps {
        let m = *choices.choose(&mut rng).expect("Cycle is always valid");
        current = current.apply_move(m).expect("drawn from valid moves");
        log.push(m);
    }
    (current, log)
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NielsenMove::Swap(i, j) => write!(f, "swap {i} {j}"),
            NielsenMove::Cycle => write!(f, "cycle"),
            NielsenMove::Invert(i) => write!(f, "invert {i}"),
            NielsenMove::RightMultiply(i, j) => write!(f, "rmul {i} {j}"),
        }
    }
}

pub(crate) fn parse_indices(args: &[&str], line: &str) -> Result<Vec<usize>> {
    args.iter()
        .map(|a| {
            a.parse()
                .map_err(|_| Error::parse(format!("bad index in `{line}`")))
        })
        .collect()
}

impl FromStr for NielsenMove {
    type Err = Error;

    fn from_str(line: &str) -> Result<NielsenMove> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (&head, args) = tokens
            .split_first()
            .ok_or_else(|| Error::parse("empty move line"))?;
        let idx = parse_indices(args, line)?;
        match (head, idx.as_slice()) {
            ("swap", &[i, j]) => Ok(NielsenMove::Swap(i, j)),
            ("cycle", &[]) => Ok(NielsenMove::Cycle),
            ("invert", &[i]) => Ok(NielsenMove::Invert(i)),
            ("rmul", &[i, j]) => Ok(NielsenMove::RightMultiply(i, j)),
            _ => Err(Error::parse(format!("unrecognised move `{line}`"))),
        }
    }
}

/// One move per line.
pub fn format_log(moves: &[NielsenMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// Reads a move log; blank lines and `#` comments are skipped.
pub fn parse_log(text: &str) -> Result<Vec<NielsenMove>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}
