//! Built-in finite target groups and a search for homomorphisms onto them.
//!
//! Names: `z<n>` (cyclic, order up to 1000), `z<a>xz<b>` (bicyclic, order up
//! to 1000, acting on `a + b` points), `s<n>` and `a<n>` (symmetric and
//! alternating, degree up to 8).

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::presentation::{evaluate_word, Presentation};
use crate::quotient::{closure, FiniteQuotient, PermGroup};

const MAX_ABELIAN_ORDER: usize = 1000;
const MAX_SYMMETRIC_DEGREE: usize = 8;

/// A moderate panel of library targets, small enough to run exhaustive
/// orbit searches against in bulk.
pub const STANDARD_PANEL: &[&str] = &[
    "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z9", "z10", "z12", "z2xz2", "z3xz3", "z2xz4",
    "z5xz5", "s3", "s4", "a4", "a5", "s5",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

fn cycle_on(degree: usize, points: std::ops::Range<usize>) -> Permutation {
    let pts: Vec<u32> = points.map(|p| p as u32).collect();
    Permutation::from_cycles(degree, &[pts]).expect("points within degree")
}

fn parse_order(s: &str, name: &str) -> Result<usize> {
    s.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::domain(format!("unknown library group `{name}`")))
}

impl TargetGroup {
    pub fn by_name(name: &str) -> Result<TargetGroup> {
        let unknown = || Error::domain(format!("unknown library group `{name}`"));
        let (degree, generators) = if let Some((a, b)) = name.split_once('x') {
            let a = parse_order(a.strip_prefix('z').ok_or_else(unknown)?, name)?;
            let b = parse_order(b.strip_prefix('z').ok_or_else(unknown)?, name)?;
            if a * b > MAX_ABELIAN_ORDER {
                return Err(Error::domain(format!(
                    "`{name}` exceeds order {MAX_ABELIAN_ORDER}"
                )));
            }
            let d = a + b;
            (d, vec![cycle_on(d, 0..a), cycle_on(d, a..d)])
        } else if let Some(n) = name.strip_prefix('z') {
            let n = parse_order(n, name)?;
            if n > MAX_ABELIAN_ORDER {
                return Err(Error::domain(format!(
                    "`{name}` exceeds order {MAX_ABELIAN_ORDER}"
                )));
            }
            (n, vec![cycle_on(n, 0..n)])
        } else if let Some(n) = name.strip_prefix('s') {
            let n = parse_order(n, name)?;
            if n > MAX_SYMMETRIC_DEGREE {
                return Err(Error::domain(format!(
                    "`{name}` exceeds degree {MAX_SYMMETRIC_DEGREE}"
                )));
            }
            (n, vec![cycle_on(n, 0..2.min(n)), cycle_on(n, 0..n)])
        } else if let Some(n) = name.strip_prefix('a') {
            let n = parse_order(n, name)?;
            if !(3..=MAX_SYMMETRIC_DEGREE).contains(&n) {
                return Err(Error::domain(format!(
                    "`{name}` needs degree 3..={MAX_SYMMETRIC_DEGREE}"
                )));
            }
            let long = if n % 2 == 1 {
                cycle_on(n, 0..n)
            } else {
                cycle_on(n, 1..n)
            };
            (n, vec![cycle_on(n, 0..3), long])
        } else {
            return Err(unknown());
        };
        Ok(TargetGroup {
            name: name.to_string(),
            degree,
            generators,
        })
    }

    pub fn carrier(&self) -> PermGroup {
        PermGroup::generated_by(self.degree, self.generators.clone()).expect("degrees agree")
    }
}

/// Homomorphisms found by [`find_homomorphisms`]; `complete` is false when
/// the search budget ran out first.
#[derive(Clone, Debug)]
pub struct HomSearch {
    pub quotients: Vec<FiniteQuotient>,
    pub complete: bool,
}

struct RelatorInfo {
    last: usize,
    // Position of `last` when it occurs exactly once in the relator.
    solvable_at: Option<usize>,
}

/// Searches, in a fixed order, for homomorphisms from `p` onto `target`,
/// keeping the first `max_homs` surjective ones. Each generator is assigned
/// in turn from the elements of the target; a relator is checked as soon as
/// all its generators are assigned, and a generator occurring once in such
/// a relator is solved for rather than enumerated. `node_budget` bounds the
/// number of partial assignments tried.
pub fn find_homomorphisms(
    p: &Presentation,
    target: &TargetGroup,
    max_homs: usize,
    node_budget: u64,
) -> Result<HomSearch> {
    let group = target.carrier();
    let order = group.order();
    let rank = p.rank();
    let degree = target.degree;
    let elements = group.elements();

    let infos: Vec<RelatorInfo> = p
        .relators()
        .iter()
        .map(|r| {
            let last = r
                .letters()
                .iter()
                .map(|l| l.generator())
                .max()
                .expect("nontrivial relator");
            let mut hits = r
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| l.generator() == last);
            let first = hits.next().map(|(i, _)| i);
            let solvable_at = if hits.next().is_none() { first } else { None };
            RelatorInfo { last, solvable_at }
        })
        .collect();

    // Elements allowed for each generator by the relators in it alone.
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(rank);
    for k in 0..rank {
        let own: Vec<usize> = p
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.letters().iter().all(|l| l.generator() == k))
            .map(|(i, _)| i)
            .collect();
        let allowed = (0..order)
            .filter(|&e| {
                let mut images = vec![Permutation::identity(degree); rank];
                images[k] = elements[e].clone();
                own.iter().all(|&i| {
                    evaluate_word(&p.relators()[i], &images, degree).is_ok_and(|v| v.is_identity())
                })
            })
            .collect();
        candidates.push(allowed);
    }

    let mut search = Search {
        p,
        infos: &infos,
        candidates: &candidates,
        group: &group,
        degree,
        max_homs,
        budget: node_budget,
        nodes: 0,
        assigned: Vec::with_capacity(rank),
        found: Vec::new(),
        exhausted_budget: false,
    };
    search.descend();
    let complete = !search.exhausted_budget;
    let quotients = search
        .found
        .into_iter()
        .enumerate()
        .map(|(i, images)| FiniteQuotient::new(format!("{}#{}", target.name, i + 1), p, images))
        .collect::<Result<_>>()?;
    Ok(HomSearch {
        quotients,
        complete,
    })
}

struct Search<'a> {
    p: &'a Presentation,
    infos: &'a [RelatorInfo],
    candidates: &'a [Vec<usize>],
    group: &'a PermGroup,
    degree: usize,
    max_homs: usize,
    budget: u64,
    nodes: u64,
    assigned: Vec<Permutation>,
    found: Vec<Vec<Permutation>>,
    exhausted_budget: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.found.len() >= self.max_homs || self.exhausted_budget
    }

    fn padded(&self) -> Vec<Permutation> {
        let mut images = self.assigned.clone();
        images.resize(self.p.rank(), Permutation::identity(self.degree));
        images
    }

    // Relators whose generators are all assigned evaluate to the identity.
    fn consistent(&self, k: usize) -> bool {
        let images = self.padded();
        self.p
            .relators()
            .iter()
            .zip(self.infos)
            .filter(|(_, info)| info.last == k)
            .all(|(r, _)| evaluate_word(r, &images, self.degree).is_ok_and(|v| v.is_identity()))
    }

    // Value forced on generator k by a relator in which it occurs once.
    fn forced(&self, k: usize) -> Option<Permutation> {
        let images = self.padded();
        self.p
            .relators()
            .iter()
            .zip(self.infos)
            .find_map(|(r, info)| {
                let pos = info.solvable_at.filter(|_| info.last == k)?;
                let letters = r.letters();
                let rank = self.p.rank();
                let prefix =
                    crate::word::Word::reduce(letters[..pos].iter().copied(), rank).ok()?;
                let suffix =
                    crate::word::Word::reduce(letters[pos + 1..].iter().copied(), rank).ok()?;
                let u = evaluate_word(&prefix, &images, self.degree).ok()?;
                let v = evaluate_word(&suffix, &images, self.degree).ok()?;
                // u x^s v = 1  =>  x^s = u^-1 v^-1
                let value = u.inverse().then(&v.inverse());
                Some(if letters[pos].is_inverse() {
                    value.inverse()
                } else {
                    value
                })
            })
    }

    fn descend(&mut self) {
        let k = self.assigned.len();
        if k == self.p.rank() {
            let order = self.group.order();
            if closure(&self.assigned, self.degree, Some(order)).is_some_and(|c| c.len() == order) {
                self.found.push(self.assigned.clone());
            }
            return;
        }
        let options: Vec<Permutation> = match self.forced(k) {
            Some(value) => vec![value],
            None => self.candidates[k]
                .iter()
                .map(|&e| self.group.elements()[e].clone())
                .collect(),
        };
        for value in options {
            if self.done() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted_budget = true;
                return;
            }
            self.assigned.push(value);
            if self.consistent(k) {
                self.descend();
            }
            self.assigned.pop();
        }
    }
}

/// Resolves a library name against `p`: up to `max_homs` surjective
/// homomorphisms, named `<name>#1`, `<name>#2`, ...
pub fn resolve(
    name: &str,
    p: &Presentation,
    max_homs: usize,
    node_budget: u64,
) -> Result<HomSearch> {
    find_homomorphisms(p, &TargetGroup::by_name(name)?, max_homs, node_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{fuchsian_quotient, SeifertInvariants};
    use crate::word::Alphabet;

    #[test]
    fn library_orders() {
        for (name, order) in [
            ("z1", 1),
            ("z5", 5),
            ("z1000", 1000),
            ("z5xz5", 25),
            ("z2xz4", 8),
            ("s1", 1),
            ("s2", 2),
            ("s3", 6),
            ("s5", 120),
            ("a3", 3),
            ("a4", 12),
            ("a5", 60),
            ("a6", 360),
        ] {
            assert_eq!(
                TargetGroup::by_name(name).unwrap().carrier().order(),
                order,
                "{name}"
            );
        }
        for bad in ["z0", "z1001", "s9", "a2", "q4", "z10xz101", "zx", ""] {
            assert!(TargetGroup::by_name(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn toy_presentation_onto_z5xz5() {
        let p = Presentation::parse("gens: x y\nrel: x^5\nrel: y^5\nrel: x y x^-1 y^-1\n").unwrap();
        let found = resolve("z5xz5", &p, 3, 1_000_000).unwrap();
        assert_eq!(found.quotients.len(), 3);
        for q in &found.quotients {
            q.validate_against(&p).unwrap();
        }
        assert_eq!(found.quotients[0].name(), "z5xz5#1");
    }

    #[test]
    fn no_surjection_onto_wrong_target() {
        // <x | x^5> has no surjection onto Z/3.
        let alpha = Alphabet::new(["x"]).unwrap();
        let p = Presentation::new(alpha.clone(), vec![alpha.parse_word("x^5").unwrap()]).unwrap();
        let found = resolve("z3", &p, 4, 1_000_000).unwrap();
        assert!(found.quotients.is_empty());
        assert!(found.complete);
        assert_eq!(resolve("z5", &p, 10, 1_000_000).unwrap().quotients.len(), 4);
    }

    #[test]
    fn triangle_group_onto_a5() {
        // <s1,s2,s3 | s1^2, s2^3, s3^5, s1 s2 s3> is A5.
        let inv = SeifertInvariants::new(0, 0, vec![(2, 1), (3, 1), (5, 2)]).unwrap();
        let p = fuchsian_quotient(&inv).unwrap();
        let found = resolve("a5", &p, 2, 1_000_000).unwrap();
        assert_eq!(found.quotients.len(), 2);
        assert!(resolve("s5", &p, 1, 1_000_000)
            .unwrap()
            .quotients
            .is_empty());
    }

    #[test]
    fn free_group_onto_s8() {
        let p = Presentation::free(Alphabet::standard(2));
        let found = resolve("s8", &p, 1, 10_000_000).unwrap();
        assert_eq!(found.quotients.len(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let p = Presentation::free(Alphabet::standard(3));
        let found = resolve("s4", &p, 1000, 10).unwrap();
        assert!(!found.complete);
    }
}
