//! One-vertex spines of handlebodies, kept as the ordered labels of their
//! loops in the free group on the standard basis.
//!
//! An edge slide of loop `i` over loop `j` replaces `label_i` by
//! `label_i label_j`, a reversal inverts one label and a relabeling
//! reorders the loops. These are right multiplication, inversion and
//! swaps/cycles of the induced tuple.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nielsen::{
    inverse_of_sequence, move_as_automorphism, parse_indices, GeneratingTuple, NielsenMove,
};
use crate::perm::Permutation;
use crate::word::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spine {
    labels: Vec<Word>,
}

impl Spine {
    /// Loops labeled `x1, ..., xg`.
    pub fn standard(genus: usize) -> Spine {
        Spine {
            labels: GeneratingTuple::basis(genus).into_words(),
        }
    }

    pub fn from_labels(labels: Vec<Word>) -> Result<Spine> {
        let genus = labels.len();
        if let Some(w) = labels.iter().find(|w| w.rank() != genus) {
            return Err(Error::RankMismatch {
                left: genus,
                right: w.rank(),
            });
        }
        Ok(Spine { labels })
    }

    pub fn genus(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.genus() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "loop {i} out of range for genus {}",
                self.genus()
            )))
        }
    }

    /// Slides loop `i` over loop `j`: `label_i -> label_i label_j`.
    pub fn edge_slide(&self, i: usize, j: usize) -> Result<Spine> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::domain(format!("cannot slide loop {i} over itself")));
        }
        let mut labels = self.labels.clone();
        labels[i] = labels[i].concat(&labels[j]);
        Ok(Spine { labels })
    }

    /// Slides the other end of loop `i` over loop `j`: `label_i -> label_j label_i`.
    pub fn edge_slide_other_end(&self, i: usize, j: usize) -> Result<Spine> {
        self.apply_sequence(&[
            SpineMove::Reverse(j),
            SpineMove::Reverse(i),
            SpineMove::Slide(i, j),
            SpineMove::Reverse(i),
            SpineMove::Reverse(j),
        ])
    }

    pub fn reverse_edge(&self, i: usize) -> Result<Spine> {
        self.check(i)?;
        let mut labels = self.labels.clone();
        labels[i] = labels[i].inverse();
        Ok(Spine { labels })
    }

    /// New loop `k` is old loop `perm(k)`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Spine> {
        if perm.degree() != self.genus() {
            return Err(Error::domain(format!(
                "relabeling of degree {} on a genus {} spine",
                perm.degree(),
                self.genus()
            )));
        }
        let labels = (0..self.genus() as u32)
            .map(|k| self.labels[perm.apply(k) as usize].clone())
            .collect();
        Ok(Spine { labels })
    }

    pub fn induced_tuple(&self) -> GeneratingTuple {
        GeneratingTuple::new(self.labels.clone(), self.genus()).expect("labels share the rank")
    }

    pub fn apply(&self, m: &SpineMove) -> Result<Spine> {
        match m {
            SpineMove::Slide(i, j) => self.edge_slide(*i, *j),
            SpineMove::Reverse(i) => self.reverse_edge(*i),
            SpineMove::Relabel(p) => self.relabel(p),
        }
    }

    pub fn apply_sequence(&self, moves: &[SpineMove]) -> Result<Spine> {
        moves.iter().try_fold(self.clone(), |s, m| s.apply(m))
    }

    /// Checks that `certificate`, replayed from the standard spine, yields
    /// this spine, and that substituting the inverse automorphism into the
    /// labels gives back the standard basis.
    pub fn verify_certificate(&self, certificate: &[SpineMove]) -> Result<bool> {
        let g = self.genus();
        if Spine::standard(g).apply_sequence(certificate)? != *self {
            return Ok(false);
        }
        let mut nielsen = Vec::new();
        for m in certificate {
            nielsen.extend(m.as_nielsen(g)?);
        }
        let back = move_as_automorphism(&inverse_of_sequence(&nielsen, g), g)?;
        Ok(self.induced_tuple().substitute(back.words())? == GeneratingTuple::basis(g))
    }

    /// Reads one `loop <index>: <word>` line per loop, indices in order,
    /// words over `x1, ..., xg`.
    pub fn parse(text: &str) -> Result<Spine> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        let alphabet = Alphabet::standard(lines.len());
        let mut labels = Vec::with_capacity(lines.len());
        for (k, line) in lines.iter().enumerate() {
            let (head, word) = line.split_once(':').ok_or_else(|| {
                Error::parse(format!("expected `loop <index>: <word>`, got `{line}`"))
            })?;
            let index = head
                .trim()
                .strip_prefix("loop")
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::parse(format!("bad loop header in `{line}`")))?;
            if index != k {
                return Err(Error::parse(format!(
                    "expected loop {k}, found loop {index}"
                )));
            }
            labels.push(alphabet.parse_word(word)?);
        }
        Spine::from_labels(labels)
    }
}

impl fmt::Display for Spine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = Alphabet::standard(self.genus());
        for (k, w) in self.labels.iter().enumerate() {
            writeln!(f, "loop {k}: {}", alphabet.format_word(w))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpineMove {
    Slide(usize, usize),
    Reverse(usize),
    Relabel(Permutation),
}

impl SpineMove {
    /// The Nielsen moves with the same effect on the induced tuple.
    pub fn as_nielsen(&self, genus: usize) -> Result<Vec<NielsenMove>> {
        match self {
            SpineMove::Slide(i, j) => {
                let m = NielsenMove::RightMultiply(*i, *j);
                m.validate(genus)?;
                Ok(vec![m])
            }
            SpineMove::Reverse(i) => {
                let m = NielsenMove::Invert(*i);
                m.validate(genus)?;
                Ok(vec![m])
            }
            SpineMove::Relabel(p) => {
                if p.degree() != genus {
                    return Err(Error::domain(format!(
                        "relabeling of degree {} at genus {genus}",
                        p.degree()
                    )));
                }
                // Selection: bring old loop p(k) into position k.
                let mut current: Vec<u32> = (0..genus as u32).collect();
                let mut out = Vec::new();
                for k in 0..genus {
                    let want = p.apply(k as u32);
                    let pos = current.iter().position(|&x| x == want).expect("bijection");
                    if pos != k {
                        current.swap(k, pos);
                        out.push(NielsenMove::Swap(k, pos));
                    }
                }
                Ok(out)
            }
        }
    }
}

impl SpineMove {
    /// Translates a Nielsen move at the given genus.
    pub fn from_nielsen(m: NielsenMove, genus: usize) -> Result<SpineMove> {
        m.validate(genus)?;
        Ok(match m {
            NielsenMove::Swap(i, j) => SpineMove::Relabel(transposition(i, j, genus)),
            NielsenMove::Cycle => {
                let images = (0..genus as u32)
                    .map(|k| (k + 1) % genus.max(1) as u32)
                    .collect();
                SpineMove::Relabel(Permutation::from_images(images).expect("rotation"))
            }
            NielsenMove::Invert(i) => SpineMove::Reverse(i),
            NielsenMove::RightMultiply(i, j) => SpineMove::Slide(i, j),
        })
    }
}

fn transposition(i: usize, j: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.swap(i, j);
    Permutation::from_images(images).expect("transposition")
}

impl fmt::Display for SpineMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpineMove::Slide(i, j) => write!(f, "slide {i} {j}"),
            SpineMove::Reverse(i) => write!(f, "reverse {i}"),
            SpineMove::Relabel(p) => {
                let images: Vec<String> = p.images().iter().map(u32::to_string).collect();
                write!(f, "relabel {}", images.join(" "))
            }
        }
    }
}

impl FromStr for SpineMove {
    type Err = Error;

    /// Accepts `slide i j`, `reverse i` and `relabel <images>`, plus `rmul`,
    /// `invert` and `swap` lines. A swap is read as a transposition on the
    /// smallest set of loops containing both indices; use
    /// [`SpineMove::from_nielsen`] when the genus is known.
    fn from_str(line: &str) -> Result<SpineMove> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (&head, args) = tokens
            .split_first()
            .ok_or_else(|| Error::parse("empty move line"))?;
        let idx = parse_indices(args, line)?;
        match (head, idx.as_slice()) {
            ("slide" | "rmul", &[i, j]) => Ok(SpineMove::Slide(i, j)),
            ("reverse" | "invert", &[i]) => Ok(SpineMove::Reverse(i)),
            ("swap", &[i, j]) if i != j => {
                Ok(SpineMove::Relabel(transposition(i, j, i.max(j) + 1)))
            }
            ("relabel", images) => {
                let images = images.iter().map(|&x| x as u32).collect();
                Permutation::from_images(images)
                    .map(SpineMove::Relabel)
                    .map_err(|e| Error::parse(format!("`{line}`: {e}")))
            }
            _ => Err(Error::parse(format!("unrecognised spine move `{line}`"))),
        }
    }
}

pub fn format_spine_log(moves: &[SpineMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// Reads a spine move log at the given genus. `cycle` lines are accepted;
/// swaps are widened to the full genus.
pub fn parse_spine_log(text: &str, genus: usize) -> Result<Vec<SpineMove>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            if l == "cycle" || l.starts_with("swap") {
                let m: NielsenMove = l.parse()?;
                SpineMove::from_nielsen(m, genus)
            } else {
                l.parse()
            }
        })
        .collect()
}

/// Moves tried by [`connect_spines`], in their tie-breaking order: slides,
/// reversals, then transpositions.
pub fn search_moves(genus: usize) -> Vec<SpineMove> {
    let mut moves = Vec::new();
    for i in 0..genus {
        for j in 0..genus {
            if i != j {
                moves.push(SpineMove::Slide(i, j));
            }
        }
    }
    moves.extend((0..genus).map(SpineMove::Reverse));
    for i in 0..genus {
        for j in i + 1..genus {
            moves.push(SpineMove::Relabel(transposition(i, j, genus)));
        }
    }
    moves
}

fn distance(labels: &[Word], target: &[Word]) -> usize {
    labels
        .iter()
        .zip(target)
        .map(|(a, b)| a.len().abs_diff(b.len()))
        .sum()
}

struct Connect<'a> {
    target: &'a Spine,
    moves: Vec<SpineMove>,
    // Largest remaining depth each state was already explored with.
    seen: HashMap<Vec<Word>, usize>,
    path: Vec<usize>,
}

impl Connect<'_> {
    fn dfs(&mut self, s: &Spine, remaining: usize) -> bool {
        if s == self.target {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        match self.seen.get(&s.labels) {
            Some(&r) if r >= remaining => return false,
            _ => {
                self.seen.insert(s.labels.clone(), remaining);
            }
        }
        let mut children: Vec<(usize, usize, Spine)> = self
            .moves
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let child = s.apply(m).expect("moves valid at this genus");
                (distance(&child.labels, &self.target.labels), k, child)
            })
            .collect();
        children.sort_by_key(|&(d, k, _)| (d, k));
        for (_, k, child) in children {
            self.path.push(k);
            if self.dfs(&child, remaining - 1) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Iterative-deepening search for spine moves taking `s1` to `s2`. Returns
/// the first sequence found at the least depth, or `None` when nothing
/// exists within `max_depth` moves (which proves nothing).
pub fn connect_spines(s1: &Spine, s2: &Spine, max_depth: usize) -> Result<Option<Vec<SpineMove>>> {
    if s1.genus() != s2.genus() {
        return Err(Error::domain(format!(
            "genus {} vs genus {}",
            s1.genus(),
            s2.genus()
        )));
    }
    let mut search = Connect {
        target: s2,
        moves: search_moves(s1.genus()),
        seen: HashMap::new(),
        path: Vec::new(),
    };
    for depth in 0..=max_depth {
        search.seen.clear();
        search.path.clear();
        if search.dfs(s1, depth) {
            return Ok(Some(
                search
                    .path
                    .iter()
                    .map(|&k| search.moves[k].clone())
                    .collect(),
            ));
        }
    }
    Ok(None)
}
