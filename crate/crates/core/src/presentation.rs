//! Finitely presented groups, Seifert fiber space groups and their vertical
//! generating systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::nielsen::GeneratingTuple;
use crate::perm::Permutation;
use crate::word::{Alphabet, Word};

/// A finite presentation. Relators are stored cyclically reduced; trivial
/// relators are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Presentation> {
        let rank = alphabet.rank();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: r.rank(),
                });
            }
            let r = r.cyclically_reduced();
            if !r.is_identity() {
                kept.push(r);
            }
        }
        Ok(Presentation {
            alphabet,
            relators: kept,
        })
    }

    /// The free group on the given generators.
    pub fn free(alphabet: Alphabet) -> Presentation {
        Presentation {
            alphabet,
            relators: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_names(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Result<Word> {
        let i = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| Error::domain(format!("no generator `{name}`")))?;
        Word::generator(i, self.rank())
    }

    /// Exponent-sum rows of the relators, i.e. the relation matrix of the
    /// abelianization.
    pub fn abelianized_relators(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(Word::exponent_sums).collect()
    }

    /// Sends `name` to the identity, drops it from the generators and removes
    /// relators that become trivial or repeat an earlier one.
    pub fn kill_generator(&self, name: &str) -> Result<Presentation> {
        let dead = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| Error::domain(format!("no generator `{name}`")))?;
        let new_rank = self.rank() - 1;
        let images: Vec<Word> = (0..self.rank())
            .map(|i| match i.cmp(&dead) {
                std::cmp::Ordering::Less => Word::generator(i, new_rank),
                std::cmp::Ordering::Equal => Ok(Word::identity(new_rank)),
                std::cmp::Ordering::Greater => Word::generator(i - 1, new_rank),
            })
            .collect::<Result<_>>()?;
        let names = self.alphabet.names().iter().filter(|n| *n != name).cloned();
        let mut relators: Vec<Word> = Vec::new();
        for r in &self.relators {
            let r = r.substitute(&images)?.cyclically_reduced();
            if !r.is_identity() && !relators.contains(&r) {
                relators.push(r);
            }
        }
        Presentation::new(Alphabet::new(names)?, relators)
    }

    /// Index of the first relator not sent to the identity by `images`.
    pub fn failing_relator(&self, images: &[Permutation]) -> Result<Option<usize>> {
        if images.len() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                found: images.len(),
            });
        }
        let degree = images.first().map_or(0, Permutation::degree);
        for (i, r) in self.relators.iter().enumerate() {
            if !evaluate_word(r, images, degree)?.is_identity() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// True iff every relator evaluates to the identity under `images`.
    pub fn validate_homomorphism(&self, images: &[Permutation]) -> Result<bool> {
        Ok(self.failing_relator(images)?.is_none())
    }

    pub fn format_relator(&self, index: usize) -> String {
        self.alphabet.format_word(&self.relators[index])
    }

    /// Reads the line format `gens: a b c` followed by `rel: <word>` lines.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                Error::parse(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            match key.trim() {
                "gens" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(format!(
                            "line {}: duplicate gens line",
                            lineno + 1
                        )));
                    }
                    alphabet = Some(Alphabet::new(rest.split_whitespace())?);
                }
                "rel" => {
                    let a = alphabet.as_ref().ok_or_else(|| {
                        Error::parse(format!("line {}: rel before gens", lineno + 1))
                    })?;
                    relators.push(a.parse_word(rest)?);
                }
                other => {
                    return Err(Error::parse(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse("missing gens line"))?;
        Presentation::new(alphabet, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.alphabet.names().join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.alphabet.format_word(r))?;
        }
        Ok(())
    }
}

/// Evaluates `word` with generator `i` sent to `images[i]`.
pub(crate) fn evaluate_word(
    word: &Word,
    images: &[Permutation],
    degree: usize,
) -> Result<Permutation> {
    if word.rank() != images.len() {
        return Err(Error::ArityMismatch {
            expected: images.len(),
            found: word.rank(),
        });
    }
    let inverses: Vec<Option<Permutation>> = images
        .iter()
        .enumerate()
        .map(|(i, p)| {
            word.letters()
                .iter()
                .any(|l| l.generator() == i && l.is_inverse())
                .then(|| p.inverse())
        })
        .collect();
    let mut acc = Permutation::identity(degree);
    for l in word.letters() {
        let g = l.generator();
        let factor = if l.is_inverse() {
            inverses[g].as_ref().expect("computed above")
        } else {
            &images[g]
        };
        acc = acc.then(factor);
    }
    Ok(acc)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Seifert invariants `S(g, e; (alpha_1, beta_1), ..., (alpha_r, beta_r))`
/// of a Seifert fiber space with orientable base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertInvariants {
    base_genus: usize,
    euler: i64,
    fibers: Vec<(i64, i64)>,
}

impl SeifertInvariants {
    pub fn new(
        base_genus: usize,
        euler: i64,
        fibers: Vec<(i64, i64)>,
    ) -> Result<SeifertInvariants> {
        if fibers.is_empty() {
            return Err(Error::domain("at least one exceptional fiber is required"));
        }
        for (i, &(alpha, beta)) in fibers.iter().enumerate() {
            if alpha < 2 {
                return Err(Error::domain(format!(
                    "alpha_{} = {alpha} must be at least 2",
                    i + 1
                )));
            }
            if gcd(alpha, beta) != 1 {
                return Err(Error::domain(format!(
                    "alpha_{0} = {alpha} and beta_{0} = {beta} are not coprime",
                    i + 1
                )));
            }
        }
        Ok(SeifertInvariants {
            base_genus,
            euler,
            fibers,
        })
    }

    /// Reads `g=0,e=-1,fibers=5/2,7/2,9/2`.
    pub fn parse(text: &str) -> Result<SeifertInvariants> {
        let mut genus = None;
        let mut euler = None;
        let mut fibers = Vec::new();
        let mut in_fibers = false;
        for part in text.split(',').map(str::trim) {
            let fiber_text = match part.split_once('=') {
                Some(("g", v)) => {
                    genus = Some(
                        v.parse()
                            .map_err(|_| Error::parse(format!("bad genus `{v}`")))?,
                    );
                    in_fibers = false;
                    continue;
                }
                Some(("e", v)) => {
                    euler = Some(
                        v.parse()
                            .map_err(|_| Error::parse(format!("bad Euler class `{v}`")))?,
                    );
                    in_fibers = false;
                    continue;
                }
                Some(("fibers", v)) => {
                    in_fibers = true;
                    v
                }
                Some((k, _)) => return Err(Error::parse(format!("unknown key `{k}`"))),
                None if in_fibers => part,
                None => return Err(Error::parse(format!("unexpected `{part}`"))),
            };
            let (a, b) = fiber_text
                .split_once('/')
                .ok_or_else(|| Error::parse(format!("fiber `{fiber_text}` is not alpha/beta")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad alpha `{a}`")))?;
            let b = b
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad beta `{b}`")))?;
            fibers.push((a, b));
        }
        let genus = genus.ok_or_else(|| Error::parse("missing g="))?;
        let euler = euler.ok_or_else(|| Error::parse("missing e="))?;
        SeifertInvariants::new(genus, euler, fibers)
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn fibers(&self) -> &[(i64, i64)] {
        &self.fibers
    }

    /// Number of exceptional fibers.
    pub fn r(&self) -> usize {
        self.fibers.len()
    }

    /// Genus of a vertical Heegaard splitting: `2g + r - 1`.
    pub fn vertical_genus(&self) -> usize {
        2 * self.base_genus + self.r() - 1
    }

    /// `e_i = beta_i` for every index in `subset`.
    pub fn default_exponents(&self, subset: &BTreeSet<usize>) -> BTreeMap<usize, i64> {
        subset.iter().map(|&i| (i, self.fibers[i - 1].1)).collect()
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self
            .fibers
            .iter()
            .map(|(a, b)| format!("{a}/{b}"))
            .collect();
        write!(
            f,
            "g={},e={},fibers={}",
            self.base_genus,
            self.euler,
            fibers.join(",")
        )
    }
}

fn fuchsian_names(inv: &SeifertInvariants) -> Vec<String> {
    let mut names: Vec<String> = (1..=inv.r()).map(|i| format!("s{i}")).collect();
    for j in 1..=inv.base_genus {
        names.push(format!("a{j}"));
        names.push(format!("b{j}"));
    }
    names
}

// s_1 ... s_r [a_1, b_1] ... [a_g, b_g] in a group of rank `rank`.
fn boundary_product(inv: &SeifertInvariants, rank: usize) -> Result<Word> {
    let r = inv.r();
    let mut w = Word::identity(rank);
    for i in 0..r {
        w = w.concat(&Word::generator(i, rank)?);
    }
    for j in 0..inv.base_genus {
        let a = Word::generator(r + 2 * j, rank)?;
        let b = Word::generator(r + 2 * j + 1, rank)?;
        w = w.concat(&Word::commutator(&a, &b)?);
    }
    Ok(w)
}

/// The fundamental group of `S(g, e; (alpha_i, beta_i))`.
///
/// Generators `s_1..s_r, a_1, b_1, ..., a_g, b_g, h`; relators: `h` commutes
/// with every other generator, `s_i^alpha_i h^beta_i`, and
/// `s_1 ... s_r [a_1,b_1] ... [a_g,b_g] h^-e`, with `[x,y] = x y x^-1 y^-1`.
pub fn sfs_group(inv: &SeifertInvariants) -> Result<Presentation> {
    let mut names = fuchsian_names(inv);
    names.push("h".to_string());
    let rank = names.len();
    let h = Word::generator(rank - 1, rank)?;
    let mut relators = Vec::new();
    for i in 0..rank - 1 {
        relators.push(Word::commutator(&Word::generator(i, rank)?, &h)?);
    }
    for (i, &(alpha, beta)) in inv.fibers.iter().enumerate() {
        relators.push(Word::generator(i, rank)?.pow(alpha).concat(&h.pow(beta)));
    }
    relators.push(boundary_product(inv, rank)?.concat(&h.pow(-inv.euler)));
    Presentation::new(Alphabet::new(names)?, relators)
}

/// The group with the fiber class killed:
/// `<s_i, a_j, b_j | s_i^alpha_i, s_1 ... s_r [a_1,b_1] ... [a_g,b_g]>`.
pub fn fuchsian_quotient(inv: &SeifertInvariants) -> Result<Presentation> {
    let names = fuchsian_names(inv);
    let rank = names.len();
    let mut relators = Vec::new();
    for (i, &(alpha, _)) in inv.fibers.iter().enumerate() {
        relators.push(Word::generator(i, rank)?.pow(alpha));
    }
    relators.push(boundary_product(inv, rank)?);
    Presentation::new(Alphabet::new(names)?, relators)
}

/// Which exceptional fibers (1-based) a vertical splitting picks up, and
/// which of the remaining loops is left out.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerticalChoice {
    subset: BTreeSet<usize>,
    excluded_q: usize,
}

impl VerticalChoice {
    /// Uses the smallest index of the complement as the excluded loop.
    pub fn new(subset: BTreeSet<usize>, r: usize) -> Result<VerticalChoice> {
        check_subset(&subset, r)?;
        let excluded_q = (1..=r)
            .find(|i| !subset.contains(i))
            .expect("subset is proper");
        Ok(VerticalChoice { subset, excluded_q })
    }

    pub fn with_excluded_q(
        subset: BTreeSet<usize>,
        excluded_q: usize,
        r: usize,
    ) -> Result<VerticalChoice> {
        check_subset(&subset, r)?;
        if excluded_q == 0 || excluded_q > r || subset.contains(&excluded_q) {
            return Err(Error::domain(format!(
                "excluded loop {excluded_q} is not in the complement"
            )));
        }
        Ok(VerticalChoice { subset, excluded_q })
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    pub fn excluded_q(&self) -> usize {
        self.excluded_q
    }

    pub fn complement(&self, r: usize) -> BTreeSet<usize> {
        (1..=r).filter(|i| !self.subset.contains(i)).collect()
    }

    /// Reads `1,2` or `{1,2}`.
    pub fn parse_subset(text: &str) -> Result<BTreeSet<usize>> {
        text.trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|_| Error::parse(format!("bad index `{s}`")))
            })
            .collect()
    }
}

fn check_subset(subset: &BTreeSet<usize>, r: usize) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::domain("subset must be nonempty"));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > r) {
        return Err(Error::domain(format!("index {bad} outside 1..={r}")));
    }
    if subset.len() == r {
        return Err(Error::domain("subset must be a proper subset"));
    }
    Ok(())
}

pub fn format_subset(subset: &BTreeSet<usize>) -> String {
    let items: Vec<String> = subset.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// The generating tuple `(s_i^e_i for i in subset, s_m for the other
/// unexcluded m, a_1, b_1, ..., a_g, b_g)`, as words in
/// [`fuchsian_quotient`]. Its arity is `2g + r - 1`.
pub fn vertical_system(
    inv: &SeifertInvariants,
    choice: &VerticalChoice,
    exponents: &BTreeMap<usize, i64>,
) -> Result<GeneratingTuple> {
    let r = inv.r();
    check_subset(&choice.subset, r)?;
    if choice.excluded_q == 0 || choice.excluded_q > r || choice.subset.contains(&choice.excluded_q)
    {
        return Err(Error::domain("excluded loop is not in the complement"));
    }
    let rank = r + 2 * inv.base_genus;
    let mut words = Vec::with_capacity(inv.vertical_genus());
    for &i in &choice.subset {
        let e = *exponents
            .get(&i)
            .ok_or_else(|| Error::domain(format!("no exponent given for index {i}")))?;
        let alpha = inv.fibers[i - 1].0;
        if gcd(e, alpha) != 1 {
            return Err(Error::domain(format!(
                "exponent {e} is not coprime to alpha_{i} = {alpha}"
            )));
        }
        words.push(Word::generator(i - 1, rank)?.pow(e));
    }
    for m in choice.complement(r) {
        if m != choice.excluded_q {
            words.push(Word::generator(m - 1, rank)?);
        }
    }
    for k in r..rank {
        words.push(Word::generator(k, rank)?);
    }
    GeneratingTuple::new(words, rank)
}

/// One subset per `{subset, complement}` pair of nonempty proper subsets of
/// `{1..r}`, represented by the member containing 1. Sorted by size, then
/// lexicographically. There are `2^(r-1) - 1` of them.
pub fn enumerate_vertical_choices(r: usize) -> Result<Vec<BTreeSet<usize>>> {
    if r < 2 {
        return Err(Error::domain(format!("need r >= 2, got {r}")));
    }
    if r > 24 {
        return Err(Error::BudgetExceeded(format!(
            "2^{} vertical choices",
            r - 1
        )));
    }
    let mut out: Vec<BTreeSet<usize>> = (0u64..(1 << (r - 1)) - 1)
        .map(|mask| {
            std::iter::once(1)
                .chain((2..=r).filter(|&i| mask & (1 << (i - 2)) != 0))
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Outcome of checking the hypotheses under which vertical splittings are
/// classified by their subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub holds: bool,
    pub reasons: Vec<String>,
}

pub fn check_lm_hypotheses(inv: &SeifertInvariants) -> HypothesisCheck {
    let mut reasons = Vec::new();
    let (g, r) = (inv.base_genus, inv.r());
    if !((g > 0 && r > 0) || r >= 3) {
        reasons.push(format!(
            "r = {r} and g = {g}: need g > 0 and r > 0, or r >= 3"
        ));
    }
    for (i, &(alpha, beta)) in inv.fibers.iter().enumerate() {
        let b = beta.rem_euclid(alpha);
        if b == 1 {
            reasons.push(format!(
                "beta_{} = {beta} is congruent to 1 mod {alpha}",
                i + 1
            ));
        } else if b == alpha - 1 {
            reasons.push(format!(
                "beta_{} = {beta} is congruent to -1 mod {alpha}",
                i + 1
            ));
        }
    }
    for (i, &(alpha, _)) in inv.fibers.iter().enumerate() {
        if alpha % 2 == 0 {
            reasons.push(format!("alpha_{} = {alpha} is even", i + 1));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let (a, b) = (inv.fibers[i].0, inv.fibers[j].0);
            if a == b {
                reasons.push(format!("alpha_{} = alpha_{} = {a}", i + 1, j + 1));
            } else if gcd(a, b) != 1 {
                reasons.push(format!(
                    "alpha_{} = {a} and alpha_{} = {b} are not coprime",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    HypothesisCheck {
        holds: reasons.is_empty(),
        reasons,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Equal,
    Distinct,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Equal => "Equal",
            VerdictKind::Distinct => "Distinct",
            VerdictKind::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub kind: VerdictKind,
    pub reason: String,
}

/// Compares the Nielsen classes of two vertical splittings. Under the
/// hypotheses of [`check_lm_hypotheses`] they agree exactly when the
/// subsets are equal or complementary; otherwise the answer is `Unknown`.
pub fn classify_vertical_pair(
    inv: &SeifertInvariants,
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> Result<PairVerdict> {
    let r = inv.r();
    check_subset(a, r)?;
    check_subset(b, r)?;
    let check = check_lm_hypotheses(inv);
    if !check.holds {
        return Ok(PairVerdict {
            kind: VerdictKind::Unknown,
            reason: check.reasons.join("; "),
        });
    }
    let complement: BTreeSet<usize> = (1..=r).filter(|i| !a.contains(i)).collect();
    Ok(if a == b {
        PairVerdict {
            kind: VerdictKind::Equal,
            reason: "equal subsets".into(),
        }
    } else if &complement == b {
        PairVerdict {
            kind: VerdictKind::Equal,
            reason: "complementary subsets".into(),
        }
    } else {
        PairVerdict {
            kind: VerdictKind::Distinct,
            reason: "subsets neither equal nor complementary".into(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    fn small() -> SeifertInvariants {
        SeifertInvariants::new(0, -1, vec![(5, 2), (7, 2), (9, 2)]).unwrap()
    }

    #[test]
    fn sfs_group_single_fiber() {
        let inv = SeifertInvariants::new(0, 0, vec![(2, 1)]).unwrap();
        let p = sfs_group(&inv).unwrap();
        assert_eq!(
            p.to_string(),
            "gens: s1 h\nrel: s1 h s1^-1 h^-1\nrel: s1^2 h\nrel: s1\n"
        );
    }

    #[test]
    fn sfs_group_counts() {
        let p = sfs_group(&small()).unwrap();
        assert_eq!(p.rank(), 4);
        assert_eq!(p.relators().len(), 7);
    }

    #[test]
    fn sfs_group_abelianization() {
        let e = -1;
        let p = sfs_group(&SeifertInvariants::new(0, e, vec![(5, 2), (7, 2), (9, 2)]).unwrap())
            .unwrap();
        let rows = p.abelianized_relators();
        // columns s1 s2 s3 h
        assert_eq!(&rows[..3], &[vec![0; 4], vec![0; 4], vec![0; 4]][..]);
        assert_eq!(rows[3], vec![5, 0, 0, 2]);
        assert_eq!(rows[4], vec![0, 7, 0, 2]);
        assert_eq!(rows[5], vec![0, 0, 9, 2]);
        assert_eq!(rows[6], vec![1, 1, 1, -e]);
    }

    #[test]
    fn fuchsian_examples() {
        let p = fuchsian_quotient(&small()).unwrap();
        assert_eq!(
            p.to_string(),
            "gens: s1 s2 s3\nrel: s1^5\nrel: s2^7\nrel: s3^9\nrel: s1 s2 s3\n"
        );
        let q = fuchsian_quotient(&SeifertInvariants::new(1, 0, vec![(3, 1)]).unwrap()).unwrap();
        assert_eq!(
            q.to_string(),
            "gens: s1 a1 b1\nrel: s1^3\nrel: s1 a1 b1 a1^-1 b1^-1\n"
        );
    }

    #[test]
    fn killing_the_fiber_gives_the_fuchsian_group() {
        for inv in [
            small(),
            SeifertInvariants::new(1, 3, vec![(3, 1)]).unwrap(),
            SeifertInvariants::new(2, 0, vec![(5, 3), (4, 1)]).unwrap(),
        ] {
            let killed = sfs_group(&inv).unwrap().kill_generator("h").unwrap();
            assert_eq!(killed, fuchsian_quotient(&inv).unwrap());
        }
    }

    #[test]
    fn seifert_invariants_validation_and_syntax() {
        assert!(SeifertInvariants::new(0, 0, vec![]).is_err());
        assert!(SeifertInvariants::new(0, 0, vec![(1, 1)]).is_err());
        assert!(SeifertInvariants::new(0, 0, vec![(4, 2)]).is_err());
        let inv = SeifertInvariants::parse("g=0,e=-1,fibers=5/2,7/2,9/2").unwrap();
        assert_eq!(inv, small());
        assert_eq!(inv.to_string(), "g=0,e=-1,fibers=5/2,7/2,9/2");
        assert!(SeifertInvariants::parse("g=0,fibers=5/2").is_err());
        assert!(SeifertInvariants::parse("g=0,e=1,fibers=5").is_err());
        assert!(SeifertInvariants::parse("g=0,e=1,x=2,fibers=5/2").is_err());
    }

    #[test]
    fn vertical_system_examples() {
        let inv = small();
        let choice = VerticalChoice::new(set(&[1, 2]), 3).unwrap();
        assert_eq!(choice.excluded_q(), 3);
        let ex: BTreeMap<usize, i64> = [(1, 2), (2, 2)].into();
        let t = vertical_system(&inv, &choice, &ex).unwrap();
        let alpha = fuchsian_quotient(&inv).unwrap().alphabet().clone();
        assert_eq!(t.format(&alpha), "s1^2, s2^2");

        let choice = VerticalChoice::with_excluded_q(set(&[1]), 2, 3).unwrap();
        let t = vertical_system(&inv, &choice, &[(1, 3)].into()).unwrap();
        assert_eq!(t.format(&alpha), "s1^3, s3");

        let inv1 = SeifertInvariants::new(1, 0, vec![(3, 2), (5, 2)]).unwrap();
        let choice = VerticalChoice::new(set(&[2]), 2).unwrap();
        let t = vertical_system(&inv1, &choice, &inv1.default_exponents(choice.subset())).unwrap();
        let alpha1 = fuchsian_quotient(&inv1).unwrap().alphabet().clone();
        assert_eq!(t.format(&alpha1), "s2^2, a1, b1");
        assert_eq!(t.arity(), inv1.vertical_genus());
    }

    #[test]
    fn vertical_system_errors() {
        let inv = small();
        let choice = VerticalChoice::new(set(&[1]), 3).unwrap();
        assert!(vertical_system(&inv, &choice, &[(1, 5)].into()).is_err());
        assert!(vertical_system(&inv, &choice, &BTreeMap::new()).is_err());
        assert!(VerticalChoice::new(set(&[]), 3).is_err());
        assert!(VerticalChoice::new(set(&[1, 2, 3]), 3).is_err());
        assert!(VerticalChoice::new(set(&[4]), 3).is_err());
        assert!(VerticalChoice::with_excluded_q(set(&[1]), 1, 3).is_err());
    }

    #[test]
    fn enumerate_choices() {
        assert_eq!(
            enumerate_vertical_choices(3).unwrap(),
            vec![set(&[1]), set(&[1, 2]), set(&[1, 3])]
        );
        assert_eq!(enumerate_vertical_choices(4).unwrap().len(), 7);
        assert_eq!(enumerate_vertical_choices(2).unwrap(), vec![set(&[1])]);
        assert!(enumerate_vertical_choices(1).is_err());
    }

    #[test]
    fn hypothesis_examples() {
        assert!(check_lm_hypotheses(&small()).holds);
        let bad = SeifertInvariants::new(0, 0, vec![(3, 2), (5, 2), (7, 2)]).unwrap();
        let check = check_lm_hypotheses(&bad);
        assert!(!check.holds);
        assert_eq!(
            check.reasons,
            vec!["beta_1 = 2 is congruent to -1 mod 3".to_string()]
        );
        let two = SeifertInvariants::new(0, 0, vec![(5, 2), (7, 2)]).unwrap();
        let check = check_lm_hypotheses(&two);
        assert_eq!(check.reasons.len(), 1);
        assert!(check.reasons[0].starts_with("r = 2 and g = 0"));
        let even = SeifertInvariants::new(1, 0, vec![(4, 3), (9, 2), (15, 2)]).unwrap();
        let reasons = check_lm_hypotheses(&even).reasons;
        assert!(reasons.iter().any(|r| r.contains("even")));
        assert!(reasons.iter().any(|r| r.contains("not coprime")));
        assert!(reasons.iter().any(|r| r.contains("congruent to -1")));
    }

    #[test]
    fn classify_examples() {
        let inv = small();
        let v = classify_vertical_pair(&inv, &set(&[1, 2]), &set(&[3])).unwrap();
        assert_eq!(v.kind, VerdictKind::Equal);
        let v = classify_vertical_pair(&inv, &set(&[1, 2]), &set(&[1, 3])).unwrap();
        assert_eq!(v.kind, VerdictKind::Distinct);
        let bad = SeifertInvariants::new(0, 0, vec![(3, 2), (5, 2), (7, 2)]).unwrap();
        let v = classify_vertical_pair(&bad, &set(&[1]), &set(&[2])).unwrap();
        assert_eq!(v.kind, VerdictKind::Unknown);
        assert!(v.reason.contains("beta_1"));
        assert!(classify_vertical_pair(&inv, &set(&[1]), &set(&[4])).is_err());
    }

    #[test]
    fn homomorphism_validation() {
        let p = fuchsian_quotient(&small()).unwrap();
        let id = Permutation::identity(5);
        assert!(p
            .validate_homomorphism(&[id.clone(), id.clone(), id.clone()])
            .unwrap());
        assert!(p.validate_homomorphism(std::slice::from_ref(&id)).is_err());

        let alpha = Alphabet::new(["s"]).unwrap();
        let s5 = Presentation::new(alpha.clone(), vec![alpha.parse_word("s^5").unwrap()]).unwrap();
        let five = Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap();
        let two = Permutation::parse_cycles(5, "(0 1)").unwrap();
        assert!(s5.validate_homomorphism(&[five]).unwrap());
        assert!(!s5.validate_homomorphism(&[two]).unwrap());
    }

    #[test]
    fn presentation_text_round_trip() {
        let text = "# toy\ngens: x y\nrel: x^5\nrel: y^5\nrel: x y x^-1 y^-1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        assert!(Presentation::parse("rel: x\ngens: x").is_err());
        assert!(Presentation::parse("gens: x\nrel: y").is_err());
        assert!(Presentation::parse("gens: x x").is_err());
        assert!(Presentation::parse("").is_err());
    }
}
