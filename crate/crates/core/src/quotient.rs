//! Finite permutation quotients and exhaustive search over Nielsen orbits of
//! tuples of permutations.
//!
//! Nielsen-equivalent tuples stay equivalent in every quotient, so an orbit
//! search that fully enumerates the orbit of one image without meeting the
//! other is a certificate that the original tuples are not equivalent. The
//! converse is never claimed.

use std::collections::{BTreeMap, HashMap, HashSet};

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nielsen::{GeneratingTuple, NielsenMove};
use crate::perm::Permutation;
use crate::presentation::{evaluate_word, Presentation};
use crate::word::Word;

/// Default bound on the number of visited orbit states.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Default bound on `|G|^n` for [`enumerate_generating_tuples`].
pub const DEFAULT_CENSUS_BUDGET: u64 = 1_000_000;

/// A homomorphism from a presented group onto a permutation group, given by
/// the images of the generators. Construction checks every relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    name: String,
    degree: usize,
    images: Vec<Permutation>,
}

impl FiniteQuotient {
    pub fn new(
        name: impl Into<String>,
        p: &Presentation,
        images: Vec<Permutation>,
    ) -> Result<FiniteQuotient> {
        let degree = images.first().map_or(1, Permutation::degree);
        if let Some(bad) = images.iter().find(|q| q.degree() != degree) {
            return Err(Error::domain(format!(
                "image degrees differ: {degree} vs {}",
                bad.degree()
            )));
        }
        let q = FiniteQuotient {
            name: name.into(),
            degree,
            images,
        };
        q.validate_against(p)?;
        Ok(q)
    }

    /// Fails with [`Error::NotAHomomorphism`] naming the first relator that
    /// does not evaluate to the identity.
    pub fn validate_against(&self, p: &Presentation) -> Result<()> {
        match p.failing_relator(&self.images)? {
            None => Ok(()),
            Some(i) => Err(Error::NotAHomomorphism {
                relator: p.format_relator(i),
            }),
        }
    }

    /// Reads `degree: N` followed by one `image <gen>: <cycles>` line per
    /// generator of `p`.
    pub fn parse(name: impl Into<String>, p: &Presentation, text: &str) -> Result<FiniteQuotient> {
        let mut degree: Option<usize> = None;
        let mut images: Vec<Option<Permutation>> = vec![None; p.rank()];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::parse(format!("line {}: expected `key: value`", lineno + 1))
            })?;
            let key = key.trim();
            if key == "degree" {
                let d = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("line {}: bad degree", lineno + 1)))?;
                degree = Some(d);
            } else if let Some(gen) = key.strip_prefix("image ") {
                let d = degree.ok_or_else(|| {
                    Error::parse(format!("line {}: image before degree", lineno + 1))
                })?;
                let gen = gen.trim();
                let i = p.alphabet().index_of(gen).ok_or_else(|| {
                    Error::parse(format!("line {}: unknown generator `{gen}`", lineno + 1))
                })?;
                if images[i].is_some() {
                    return Err(Error::parse(format!(
                        "line {}: second image for `{gen}`",
                        lineno + 1
                    )));
                }
                images[i] = Some(Permutation::parse_cycles(d, value)?);
            } else {
                return Err(Error::parse(format!(
                    "line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
        }
        let images = images
            .into_iter()
            .zip(p.generator_names())
            .map(|(img, n)| {
                img.ok_or_else(|| Error::parse(format!("no image for generator `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let q = FiniteQuotient {
            name: name.into(),
            degree: degree.unwrap_or(1),
            images,
        };
        q.validate_against(p)?;
        Ok(q)
    }

    pub fn to_text(&self, p: &Presentation) -> String {
        let mut out = format!("degree: {}\n", self.degree);
        for (n, img) in p.generator_names().iter().zip(&self.images) {
            out.push_str(&format!("image {n}: {img}\n"));
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn evaluate(&self, w: &Word) -> Result<Permutation> {
        evaluate_word(w, &self.images, self.degree)
    }

    pub fn image_of(&self, t: &GeneratingTuple) -> Result<TupleImage> {
        let elements = t
            .words()
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<_>>()?;
        Ok(TupleImage {
            elements,
            degree: self.degree,
        })
    }
}

pub fn evaluate(w: &Word, q: &FiniteQuotient) -> Result<Permutation> {
    q.evaluate(w)
}

pub fn image_of(t: &GeneratingTuple, q: &FiniteQuotient) -> Result<TupleImage> {
    q.image_of(t)
}

/// An ordered tuple of permutations of a common degree. The derived order
/// compares entries left to right, each in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleImage {
    elements: Vec<Permutation>,
    degree: usize,
}

impl TupleImage {
    pub fn new(elements: Vec<Permutation>, degree: usize) -> Result<TupleImage> {
        if let Some(bad) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::domain(format!(
                "degree {} in a tuple of degree {degree}",
                bad.degree()
            )));
        }
        Ok(TupleImage { elements, degree })
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn apply_move(&self, m: NielsenMove) -> Result<TupleImage> {
        m.validate(self.arity())?;
        let mut e = self.elements.clone();
        match m {
            NielsenMove::Swap(i, j) => e.swap(i, j),
            NielsenMove::Cycle => {
                if !e.is_empty() {
                    e.rotate_left(1)
                }
            }
            NielsenMove::Invert(i) => e[i] = e[i].inverse(),
            NielsenMove::RightMultiply(i, j) => e[i] = e[i].then(&e[j]),
        }
        Ok(TupleImage {
            elements: e,
            degree: self.degree,
        })
    }

    pub fn apply_sequence(&self, moves: &[NielsenMove]) -> Result<TupleImage> {
        moves.iter().try_fold(self.clone(), |t, &m| t.apply_move(m))
    }
}

/// Enumerates `<gens>` by closing under right multiplication. Gives up with
/// `None` once more than `limit` elements are found.
pub(crate) fn closure(
    gens: &[Permutation],
    degree: usize,
    limit: Option<usize>,
) -> Option<Vec<Permutation>> {
    let mut elements = vec![Permutation::identity(degree)];
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(elements[0].clone());
    let mut head = 0;
    while head < elements.len() {
        let e = elements[head].clone();
        for g in gens {
            let p = e.then(g);
            if !seen.contains(&p) {
                if limit.is_some_and(|l| elements.len() >= l) {
                    return None;
                }
                seen.insert(p.clone());
                elements.push(p);
            }
        }
        head += 1;
    }
    Some(elements)
}

/// Order of the subgroup generated by the entries of `t`.
pub fn generated_subgroup_order(t: &TupleImage) -> usize {
    closure(&t.elements, t.degree, None)
        .expect("no limit")
        .len()
}

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 1024;

// Interned group elements with memoised products and inverses.
struct ElementStore {
    degree: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    // Dense n x n product table when the generated subgroup is small,
    // filled lazily; otherwise a hash memo.
    dense: Option<Vec<u32>>,
    products: HashMap<(u32, u32), u32>,
}

impl ElementStore {
    fn for_tuple(t: &TupleImage) -> ElementStore {
        let mut store = ElementStore {
            degree: t.degree,
            perms: Vec::new(),
            index: HashMap::new(),
            inverses: Vec::new(),
            dense: None,
            products: HashMap::new(),
        };
        if let Some(elements) = closure(&t.elements, t.degree, Some(DENSE_LIMIT)) {
            for p in elements {
                store.intern(p);
            }
            let n = store.perms.len();
            store.dense = Some(vec![NONE; n * n]);
        }
        store
    }

    fn intern(&mut self, p: Permutation) -> u32 {
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.perms.len() as u32;
        self.index.insert(p.clone(), id);
        self.perms.push(p);
        self.inverses.push(NONE);
        id
    }

    fn inverse(&mut self, a: u32) -> u32 {
        let cached = self.inverses[a as usize];
        if cached != NONE {
            return cached;
        }
        let inv = self.perms[a as usize].inverse();
        let b = self.intern(inv);
        self.inverses[a as usize] = b;
        self.inverses[b as usize] = a;
        b
    }

    fn product(&mut self, a: u32, b: u32) -> u32 {
        if let Some(table) = &self.dense {
            let n = self.perms.len();
            let slot = a as usize * n + b as usize;
            if table[slot] != NONE {
                return table[slot];
            }
            let p = self.perms[a as usize].then(&self.perms[b as usize]);
            let c = *self.index.get(&p).expect("closed under products");
            self.dense.as_mut().expect("checked")[slot] = c;
            return c;
        }
        if let Some(&c) = self.products.get(&(a, b)) {
            return c;
        }
        let p = self.perms[a as usize].then(&self.perms[b as usize]);
        let c = self.intern(p);
        self.products.insert((a, b), c);
        c
    }

    fn lookup(&self, t: &TupleImage) -> Option<Vec<u32>> {
        t.elements
            .iter()
            .map(|p| self.index.get(p).copied())
            .collect()
    }

    fn materialise(&self, state: &[u32]) -> TupleImage {
        TupleImage {
            elements: state
                .iter()
                .map(|&id| self.perms[id as usize].clone())
                .collect(),
            degree: self.degree,
        }
    }
}

/// The moves explored by the orbit search: every swap, inversion and right
/// multiplication. Cycles are products of swaps and are left out.
pub fn orbit_moves(arity: usize) -> Vec<NielsenMove> {
    NielsenMove::all(arity)
        .into_iter()
        .filter(|m| *m != NielsenMove::Cycle)
        .collect()
}

struct Exploration {
    store: ElementStore,
    states: IndexSet<Box<[u32]>>,
    parents: Vec<Option<(u32, NielsenMove)>>,
    truncated: bool,
    found: Option<usize>,
}

impl Exploration {
    fn run(start: &TupleImage, cap: usize, target: Option<&TupleImage>) -> Exploration {
        let mut store = ElementStore::for_tuple(start);
        let ids: Vec<u32> = start
            .elements
            .iter()
            .map(|p| store.intern(p.clone()))
            .collect();
        let target_ids: Option<Vec<u32>> = target.and_then(|t| store.lookup(t));
        let mut states = IndexSet::new();
        states.insert(ids.clone().into_boxed_slice());
        let mut parents = vec![None];
        let mut ex_found = None;
        if target_ids.as_deref() == Some(&ids[..]) {
            ex_found = Some(0);
        }
        let moves = orbit_moves(start.arity());
        let mut truncated = false;
        let mut head = 0;
        let mut buf = ids;
        'bfs: while ex_found.is_none() && head < states.len() {
            for &m in &moves {
                buf.copy_from_slice(&states[head]);
                match m {
                    NielsenMove::Swap(i, j) => buf.swap(i, j),
                    NielsenMove::Invert(i) => buf[i] = store.inverse(buf[i]),
                    NielsenMove::RightMultiply(i, j) => buf[i] = store.product(buf[i], buf[j]),
                    NielsenMove::Cycle => unreachable!("not an orbit move"),
                }
                if states.contains(&buf[..]) {
                    continue;
                }
                if states.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                states.insert(buf.clone().into_boxed_slice());
                parents.push(Some((head as u32, m)));
                if target_ids.as_deref() == Some(&buf[..]) {
                    ex_found = Some(states.len() - 1);
                    break 'bfs;
                }
            }
            head += 1;
        }
        Exploration {
            store,
            states,
            parents,
            truncated,
            found: ex_found,
        }
    }

    fn path_to(&self, mut index: usize) -> Vec<NielsenMove> {
        let mut moves = Vec::new();
        while let Some((parent, m)) = self.parents[index] {
            moves.push(m);
            index = parent as usize;
        }
        moves.reverse();
        moves
    }

    // Index of the lexicographically least visited state.
    fn least_state(&self) -> usize {
        let perms = &self.store.perms;
        let mut order: Vec<u32> = (0..perms.len() as u32).collect();
        order.sort_by(|&a, &b| perms[a as usize].cmp(&perms[b as usize]));
        let mut rank = vec![0u32; perms.len()];
        for (r, &id) in order.iter().enumerate() {
            rank[id as usize] = r as u32;
        }
        let key = |s: &[u32]| s.iter().map(|&id| rank[id as usize]).collect::<Vec<_>>();
        let mut best = 0;
        let mut best_key = key(&self.states[0]);
        for (i, s) in self.states.iter().enumerate().skip(1) {
            let k = key(s);
            if k < best_key {
                best = i;
                best_key = k;
            }
        }
        best
    }
}

/// Result of a Nielsen orbit search. When `truncated` is false, `size` is
/// the exact orbit size and `canonical` the least orbit member, reached from
/// the start by `witness_log`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    pub canonical: Option<TupleImage>,
    pub size: usize,
    pub truncated: bool,
    pub witness_log: Option<Vec<NielsenMove>>,
}

pub fn nielsen_orbit(t: &TupleImage, cap: usize) -> OrbitResult {
    let ex = Exploration::run(t, cap.max(1), None);
    if ex.truncated {
        return OrbitResult {
            canonical: None,
            size: ex.states.len(),
            truncated: true,
            witness_log: None,
        };
    }
    let best = ex.least_state();
    OrbitResult {
        canonical: Some(ex.store.materialise(&ex.states[best])),
        size: ex.states.len(),
        truncated: false,
        witness_log: Some(ex.path_to(best)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SameOrbit {
    /// `witness` takes the first tuple to the second.
    Yes {
        witness: Vec<NielsenMove>,
    },
    /// The orbit of the first tuple was enumerated in full.
    No {
        orbit_size: usize,
    },
    Inconclusive {
        explored: usize,
    },
}

pub fn same_orbit(t1: &TupleImage, t2: &TupleImage, cap: usize) -> Result<SameOrbit> {
    if t1.arity() != t2.arity() {
        return Err(Error::ArityMismatch {
            expected: t1.arity(),
            found: t2.arity(),
        });
    }
    if t1.degree != t2.degree {
        return Err(Error::domain(format!(
            "degree mismatch: {} vs {}",
            t1.degree, t2.degree
        )));
    }
    let ex = Exploration::run(t1, cap.max(1), Some(t2));
    Ok(match ex.found {
        Some(i) => SameOrbit::Yes {
            witness: ex.path_to(i),
        },
        None if ex.truncated => SameOrbit::Inconclusive {
            explored: ex.states.len(),
        },
        None => SameOrbit::No {
            orbit_size: ex.states.len(),
        },
    })
}

/// Groups `tuples` by the canonical form of their Nielsen orbit. Classes are
/// lists of input indices, ordered by their smallest member.
pub fn partition_by_canonical(tuples: &[TupleImage], cap: usize) -> Result<Vec<Vec<usize>>> {
    let lookup: HashMap<&TupleImage, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut canonical_of: Vec<Option<usize>> = vec![None; tuples.len()];
    let mut forms: Vec<TupleImage> = Vec::new();
    let mut form_ids: BTreeMap<TupleImage, usize> = BTreeMap::new();
    for i in 0..tuples.len() {
        if canonical_of[i].is_some() {
            continue;
        }
        let ex = Exploration::run(&tuples[i], cap.max(1), None);
        if ex.truncated {
            return Err(Error::BudgetExceeded(format!(
                "orbit of tuple {i} exceeds cap {cap}"
            )));
        }
        let canonical = ex.store.materialise(&ex.states[ex.least_state()]);
        let id = *form_ids.entry(canonical.clone()).or_insert_with(|| {
            forms.push(canonical);
            forms.len() - 1
        });
        for s in &ex.states {
            if let Some(&k) = lookup.get(&ex.store.materialise(s)) {
                canonical_of[k] = Some(id);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); forms.len()];
    for (i, c) in canonical_of.into_iter().enumerate() {
        classes[c.expect("every tuple lies in its own orbit")].push(i);
    }
    classes.sort();
    Ok(classes)
}

/// A finite permutation group with its elements listed, used as the carrier
/// for brute-force censuses.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermGroup {
    pub fn generated_by(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::domain(format!(
                "generator of degree {} in degree {degree}",
                bad.degree()
            )));
        }
        let elements = closure(&generators, degree, None).expect("no limit");
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    /// Like [`generated_by`](Self::generated_by) but refuses groups of order
    /// above `limit`.
    pub fn generated_by_bounded(
        degree: usize,
        generators: Vec<Permutation>,
        limit: usize,
    ) -> Result<PermGroup> {
        if closure(&generators, degree, Some(limit)).is_none() {
            return Err(Error::BudgetExceeded(format!(
                "group order exceeds {limit}"
            )));
        }
        PermGroup::generated_by(degree, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn tuple_image(&self, indices: &[usize]) -> TupleImage {
        TupleImage {
            elements: indices.iter().map(|&i| self.elements[i].clone()).collect(),
            degree: self.degree,
        }
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Every generating `n`-tuple of a group, split into Nielsen classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub order: usize,
    pub arity: usize,
    /// Each class lists its tuples as element indices into the carrier,
    /// classes ordered by smallest member.
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn generating_tuples(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Brute-force ground truth: lists all generating `arity`-tuples of `group`
/// and joins tuples related by one of the four fixed-position elementary
/// moves with a union-find. Refuses when `|G|^arity > budget`.
pub fn enumerate_generating_tuples(group: &PermGroup, arity: usize, budget: u64) -> Result<Census> {
    let order = group.order();
    let total = (order as u64)
        .checked_pow(arity as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!("{order}^{arity} tuples exceeds budget {budget}"))
        })? as usize;

    // Small carriers get a full multiplication table.
    let table: Option<Vec<usize>> = (order <= 512).then(|| {
        (0..order * order)
            .map(|k| group.index[&group.elements[k / order].then(&group.elements[k % order])])
            .collect()
    });
    let mul = |a: usize, b: usize| match &table {
        Some(t) => t[a * order + b],
        None => group.index[&group.elements[a].then(&group.elements[b])],
    };
    let inverse: Vec<usize> = group
        .elements
        .iter()
        .map(|p| group.index[&p.inverse()])
        .collect();
    debug_assert!(group.elements[0].is_identity());

    let decode = |mut code: usize, digits: &mut [usize]| {
        for d in digits.iter_mut() {
            *d = code % order;
            code /= order;
        }
    };
    let encode = |digits: &[usize]| digits.iter().rev().fold(0, |acc, &d| acc * order + d);

    let mut digits = vec![0; arity];
    let mut reached = vec![false; order];
    let mut queue = Vec::with_capacity(order);
    let mut generating = vec![false; total];
    for (code, slot) in generating.iter_mut().enumerate() {
        decode(code, &mut digits);
        reached.iter_mut().for_each(|r| *r = false);
        queue.clear();
        reached[0] = true;
        queue.push(0);
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            for &g in &digits {
                let p = mul(e, g);
                if !reached[p] {
                    reached[p] = true;
                    queue.push(p);
                }
            }
            head += 1;
        }
        *slot = queue.len() == order;
    }

    let mut sets = DisjointSets::new(total);
    let mut next = vec![0; arity];
    for code in (0..total).filter(|&c| generating[c]) {
        decode(code, &mut digits);
        for m in NielsenMove::elementary(arity) {
            next.copy_from_slice(&digits);
            match m {
                NielsenMove::Swap(i, j) => next.swap(i, j),
                NielsenMove::Cycle => next.rotate_left(1.min(arity)),
                NielsenMove::Invert(i) => next[i] = inverse[next[i]],
                NielsenMove::RightMultiply(i, j) => next[i] = mul(next[i], next[j]),
            }
            sets.union(code, encode(&next));
        }
    }

    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for code in (0..total).filter(|&c| generating[c]) {
        by_root.entry(sets.find(code)).or_default().push(code);
    }
    let mut classes: Vec<Vec<Vec<usize>>> = by_root
        .into_values()
        .map(|codes| {
            codes
                .into_iter()
                .map(|c| {
                    let mut d = vec![0; arity];
                    decode(c, &mut d);
                    d
                })
                .collect()
        })
        .collect();
    classes.sort_by_key(|c| encode(&c[0]));
    Ok(Census {
        order,
        arity,
        classes,
    })
}

/// How one quotient answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOutcome {
    pub quotient: String,
    pub answer: SameOrbit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    /// The images in `quotient` lie in different Nielsen orbits, so the
    /// tuples are not Nielsen equivalent.
    Distinct {
        quotient: String,
        orbit_size: usize,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctionReport {
    pub verdict: Distinction,
    pub outcomes: Vec<QuotientOutcome>,
}

/// Tries each quotient in turn; reports `Distinct` for the first one whose
/// orbit search answers `No`. Quotients are searched in parallel, and the
/// result does not depend on the number of worker threads.
pub fn distinguish_via_quotients(
    p: &Presentation,
    ta: &GeneratingTuple,
    tb: &GeneratingTuple,
    quotients: &[FiniteQuotient],
    cap: usize,
) -> Result<DistinctionReport> {
    if ta.arity() != tb.arity() {
        return Err(Error::ArityMismatch {
            expected: ta.arity(),
            found: tb.arity(),
        });
    }
    for t in [ta, tb] {
        if t.rank() != p.rank() {
            return Err(Error::RankMismatch {
                left: p.rank(),
                right: t.rank(),
            });
        }
    }
    for q in quotients {
        q.validate_against(p)?;
    }
    let outcomes = quotients
        .par_iter()
        .map(|q| {
            let answer = same_orbit(&q.image_of(ta)?, &q.image_of(tb)?, cap)?;
            Ok(QuotientOutcome {
                quotient: q.name.clone(),
                answer,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = outcomes
        .iter()
        .find_map(|o| match o.answer {
            SameOrbit::No { orbit_size } => Some(Distinction::Distinct {
                quotient: o.quotient.clone(),
                orbit_size,
            }),
            _ => None,
        })
        .unwrap_or(Distinction::Inconclusive);
    Ok(DistinctionReport { verdict, outcomes })
}
