//! Group-level shadows of Heegaard splittings and trisections: the tuple of
//! generators induced by each handlebody, the spin construction, stabilization
//! and obstructions to isotopy from finite quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nielsen::GeneratingTuple;
use crate::presentation::{
    fuchsian_quotient, vertical_system, Presentation, SeifertInvariants, VerticalChoice,
};
use crate::quotient::{distinguish_via_quotients, Distinction, DistinctionReport, FiniteQuotient};

/// A Heegaard splitting seen through the generators induced by one of its
/// handlebodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardData {
    pub group: Presentation,
    pub h1_tuple: GeneratingTuple,
    pub genus: usize,
}

impl HeegaardData {
    pub fn new(group: Presentation, h1_tuple: GeneratingTuple) -> Result<HeegaardData> {
        if h1_tuple.rank() != group.rank() {
            return Err(Error::RankMismatch {
                left: group.rank(),
                right: h1_tuple.rank(),
            });
        }
        let genus = h1_tuple.arity();
        Ok(HeegaardData {
            group,
            h1_tuple,
            genus,
        })
    }
}

/// The vertical splitting of `inv` picked out by `choice`, in the quotient
/// of the Seifert group by its center.
pub fn heegaard_from_vertical(
    inv: &SeifertInvariants,
    choice: &VerticalChoice,
    exponents: &BTreeMap<usize, i64>,
) -> Result<HeegaardData> {
    let group = fuchsian_quotient(inv)?;
    let tuple = vertical_system(inv, choice, exponents)?;
    debug_assert_eq!(tuple.arity(), inv.vertical_genus());
    HeegaardData::new(group, tuple)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrisectionData {
    pub group: Presentation,
    pub sectors: [GeneratingTuple; 3],
    pub g: usize,
    pub k: [usize; 3],
}

/// The spin of the underlying manifold: same group, and all three sectors
/// carry the handlebody's tuple. A genus `n` splitting gives a `(3n, n)`
/// trisection.
pub fn spin(h: &HeegaardData) -> TrisectionData {
    TrisectionData {
        group: h.group.clone(),
        sectors: [h.h1_tuple.clone(), h.h1_tuple.clone(), h.h1_tuple.clone()],
        g: 3 * h.genus,
        k: [h.genus; 3],
    }
}

fn sector_index(sector: usize) -> Result<usize> {
    if (1..=3).contains(&sector) {
        Ok(sector - 1)
    } else {
        Err(Error::domain(format!(
            "sector {sector} is not one of 1, 2, 3"
        )))
    }
}

impl TrisectionData {
    pub fn new(
        group: Presentation,
        sectors: [GeneratingTuple; 3],
        g: usize,
    ) -> Result<TrisectionData> {
        for t in &sectors {
            if t.rank() != group.rank() {
                return Err(Error::RankMismatch {
                    left: group.rank(),
                    right: t.rank(),
                });
            }
        }
        let k = [sectors[0].arity(), sectors[1].arity(), sectors[2].arity()];
        Ok(TrisectionData {
            group,
            sectors,
            g,
            k,
        })
    }

    pub fn is_balanced(&self) -> bool {
        self.k[0] == self.k[1] && self.k[1] == self.k[2]
    }

    /// Stabilizes in one sector (1, 2 or 3): that sector's tuple gains an
    /// identity entry and the other two are untouched.
    pub fn unbalanced_stabilize(&self, sector: usize) -> Result<TrisectionData> {
        let i = sector_index(sector)?;
        let mut out = self.clone();
        out.sectors[i] = out.sectors[i].padded();
        out.k[i] += 1;
        out.g += 1;
        Ok(out)
    }

    pub fn balanced_stabilize(&self) -> TrisectionData {
        let mut out = self.clone();
        for s in 1..=3 {
            out = out.unbalanced_stabilize(s).expect("valid sector");
        }
        out
    }

    /// Text form:
    ///
    /// ```text
    /// trisection v1
    /// g: 6
    /// k: 2 2 2
    /// group:
    /// gens: x y
    /// rel: x^5
    /// end
    /// sector 1: x, y
    /// sector 2: x, y
    /// sector 3: x, y
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "trisection v1\ng: {}\nk: {} {} {}\ngroup:\n",
            self.g, self.k[0], self.k[1], self.k[2]
        );
        out.push_str(&self.group.to_string());
        out.push_str("end\n");
        for (i, t) in self.sectors.iter().enumerate() {
            let body = t.format(self.group.alphabet());
            if body.is_empty() {
                out.push_str(&format!("sector {}:\n", i + 1));
            } else {
                out.push_str(&format!("sector {}: {body}\n", i + 1));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<TrisectionData> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        if lines.next() != Some("trisection v1") {
            return Err(Error::parse("expected `trisection v1` header"));
        }
        let mut g = None;
        let mut k = None;
        let mut group: Option<Presentation> = None;
        let mut sectors: [Option<GeneratingTuple>; 3] = [None, None, None];
        while let Some(line) = lines.next() {
            if line == "group:" {
                let block: Vec<&str> = lines.by_ref().take_while(|l| *l != "end").collect();
                group = Some(Presentation::parse(&block.join("\n"))?);
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(format!("bad line `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "g" => {
                    g = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| Error::parse(format!("bad g `{value}`")))?,
                    )
                }
                "k" => {
                    let ks = value
                        .split_whitespace()
                        .map(|s| {
                            s.parse::<usize>()
                                .map_err(|_| Error::parse(format!("bad k `{value}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let ks: [usize; 3] = ks
                        .try_into()
                        .map_err(|_| Error::parse("k needs three entries"))?;
                    k = Some(ks);
                }
                key => {
                    let index = key
                        .strip_prefix("sector")
                        .and_then(|s| s.trim().parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(format!("unknown key `{key}`")))?;
                    let i = sector_index(index).map_err(|e| Error::parse(e.to_string()))?;
                    let p = group
                        .as_ref()
                        .ok_or_else(|| Error::parse("sector before group block"))?;
                    sectors[i] = Some(GeneratingTuple::parse(p.alphabet(), value)?);
                }
            }
        }
        let group = group.ok_or_else(|| Error::parse("missing group block"))?;
        let g = g.ok_or_else(|| Error::parse("missing g line"))?;
        let [a, b, c] = sectors;
        let missing = || Error::parse("missing sector line");
        let t = TrisectionData::new(
            group,
            [
                a.ok_or_else(missing)?,
                b.ok_or_else(missing)?,
                c.ok_or_else(missing)?,
            ],
            g,
        )?;
        if let Some(k) = k {
            if k != t.k {
                return Err(Error::parse(format!(
                    "k line {k:?} disagrees with sector arities {:?}",
                    t.k
                )));
            }
        }
        Ok(t)
    }
}

impl fmt::Display for TrisectionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, ({}, {}, {}))",
            self.g, self.k[0], self.k[1], self.k[2]
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    /// Sector `i` is compared with sector `i`.
    Labeled,
    /// Sectors may be matched up by any permutation.
    Unlabeled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotopyVerdict {
    NotIsotopic,
    Inconclusive,
}

impl fmt::Display for IsotopyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsotopyVerdict::NotIsotopic => "NotIsotopic",
            IsotopyVerdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Sector `left` of the first trisection against sector `right` of the
/// second (both 1-based). `report` is `None` when the arities differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorComparison {
    pub left: usize,
    pub right: usize,
    pub report: Option<DistinctionReport>,
}

impl SectorComparison {
    pub fn is_distinct(&self) -> bool {
        match &self.report {
            None => true,
            Some(r) => matches!(r.verdict, Distinction::Distinct { .. }),
        }
    }
}

/// One way of matching sectors, `matching[i]` being the (1-based) sector of
/// the second trisection paired with sector `i + 1` of the first, and the
/// first pair that rules it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingOutcome {
    pub matching: [usize; 3],
    pub ruled_out_by: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrisectionComparison {
    pub mode: CompareMode,
    pub verdict: IsotopyVerdict,
    pub pairs: Vec<SectorComparison>,
    pub matchings: Vec<MatchingOutcome>,
}

const SECTOR_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Looks for an obstruction to an isotopy taking `t1` to `t2`. Nielsen
/// classes of the sectors are isotopy invariants, so a sector pair whose
/// images lie in different orbits of some quotient rules a matching out.
/// Never claims that the two are isotopic.
pub fn compare_trisections(
    t1: &TrisectionData,
    t2: &TrisectionData,
    quotients: &[FiniteQuotient],
    cap: usize,
    mode: CompareMode,
) -> Result<TrisectionComparison> {
    if t1.group != t2.group {
        return Err(Error::domain(
            "trisections have different group presentations",
        ));
    }
    let p = &t1.group;
    let perms: Vec<[usize; 3]> = match mode {
        CompareMode::Labeled => {
            for i in 0..3 {
                if t1.k[i] != t2.k[i] {
                    return Err(Error::ArityMismatch {
                        expected: t1.k[i],
                        found: t2.k[i],
                    });
                }
            }
            vec![[0, 1, 2]]
        }
        CompareMode::Unlabeled => {
            let compatible = SECTOR_PERMUTATIONS
                .iter()
                .any(|s| (0..3).all(|i| t1.k[i] == t2.k[s[i]]));
            if !compatible {
                return Err(Error::domain(format!(
                    "no matching of sectors has equal genera: {:?} vs {:?}",
                    t1.k, t2.k
                )));
            }
            SECTOR_PERMUTATIONS.to_vec()
        }
    };
    let needed: BTreeSet<(usize, usize)> = perms
        .iter()
        .flat_map(|s| (0..3).map(move |i| (i, s[i])))
        .collect();
    let mut pairs = Vec::with_capacity(needed.len());
    for &(i, j) in &needed {
        let report = if t1.k[i] == t2.k[j] {
            Some(distinguish_via_quotients(
                p,
                &t1.sectors[i],
                &t2.sectors[j],
                quotients,
                cap,
            )?)
        } else {
            None
        };
        pairs.push(SectorComparison {
            left: i + 1,
            right: j + 1,
            report,
        });
    }
    let distinct = |i: usize, j: usize| {
        pairs
            .iter()
            .find(|c| c.left == i + 1 && c.right == j + 1)
            .is_some_and(SectorComparison::is_distinct)
    };
    let matchings: Vec<MatchingOutcome> = perms
        .iter()
        .map(|s| MatchingOutcome {
            matching: [s[0] + 1, s[1] + 1, s[2] + 1],
            ruled_out_by: (0..3)
                .find(|&i| distinct(i, s[i]))
                .map(|i| (i + 1, s[i] + 1)),
        })
        .collect();
    let verdict = if matchings.iter().all(|m| m.ruled_out_by.is_some()) {
        IsotopyVerdict::NotIsotopic
    } else {
        IsotopyVerdict::Inconclusive
    };
    Ok(TrisectionComparison {
        mode,
        verdict,
        pairs,
        matchings,
    })
}

/// Comparison of one sector left untouched by the stabilizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntouchedSector {
    pub sector: usize,
    pub before: DistinctionReport,
    pub after: DistinctionReport,
    /// The sector's tuples in both trisections were identical before and
    /// after the sequence.
    pub unchanged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustnessReport {
    pub stab_sectors: BTreeSet<usize>,
    /// Sectors stabilized, in order, for each trisection.
    pub sequences: [Vec<usize>; 2],
    pub untouched: Vec<UntouchedSector>,
    pub final_shapes: [(usize, [usize; 3]); 2],
    /// Labeled comparison after one further balanced stabilization of both.
    pub balanced: Option<TrisectionComparison>,
}

impl RobustnessReport {
    /// Every untouched sector kept its tuples and its verdict.
    pub fn invariant(&self) -> bool {
        self.untouched
            .iter()
            .all(|u| u.unchanged && u.before.verdict == u.after.verdict)
    }
}

/// Stabilizes both trisections along independently drawn random sequences of
/// `sequence_len` sectors from `stab_sectors`, then compares every sector
/// outside `stab_sectors` before and after. With `balanced` set, both results
/// are also stabilized once in every sector and compared again.
#[allow(clippy::too_many_arguments)]
pub fn stabilization_robustness(
    t1: &TrisectionData,
    t2: &TrisectionData,
    stab_sectors: &BTreeSet<usize>,
    sequence_len: usize,
    seed: u64,
    quotients: &[FiniteQuotient],
    cap: usize,
    balanced: bool,
) -> Result<RobustnessReport> {
    for &s in stab_sectors {
        sector_index(s)?;
    }
    if stab_sectors.len() == 3 {
        return Err(Error::domain(
            "stabilizing every sector leaves no sector untouched",
        ));
    }
    if stab_sectors.is_empty() && sequence_len > 0 {
        return Err(Error::domain(
            "a nonempty sequence needs at least one sector to stabilize",
        ));
    }
    if t1.group != t2.group {
        return Err(Error::domain(
            "trisections have different group presentations",
        ));
    }
    let allowed: Vec<usize> = stab_sectors.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sequences: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut results = [t1.clone(), t2.clone()];
    for (seq, t) in sequences.iter_mut().zip(results.iter_mut()) {
        for _ in 0..sequence_len {
            let s = *allowed.choose(&mut rng).expect("nonempty");
            *t = t.unbalanced_stabilize(s)?;
            seq.push(s);
        }
    }
    let mut untouched = Vec::new();
    for sector in (1..=3).filter(|s| !stab_sectors.contains(s)) {
        let i = sector - 1;
        let p = &t1.group;
        let before = distinguish_via_quotients(p, &t1.sectors[i], &t2.sectors[i], quotients, cap)?;
        let after = distinguish_via_quotients(
            p,
            &results[0].sectors[i],
            &results[1].sectors[i],
            quotients,
            cap,
        )?;
        let unchanged =
            results[0].sectors[i] == t1.sectors[i] && results[1].sectors[i] == t2.sectors[i];
        untouched.push(UntouchedSector {
            sector,
            before,
            after,
            unchanged,
        });
    }
    let balanced = if balanced {
        let [a, b] = &results;
        Some(compare_trisections(
            &a.balanced_stabilize(),
            &b.balanced_stabilize(),
            quotients,
            cap,
            CompareMode::Labeled,
        )?)
    } else {
        None
    };
    let final_shapes = [(results[0].g, results[0].k), (results[1].g, results[1].k)];
    Ok(RobustnessReport {
        stab_sectors: stab_sectors.clone(),
        sequences,
        untouched,
        final_shapes,
        balanced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::FiniteQuotient;
    use crate::word::Alphabet;

    fn toy() -> (Presentation, FiniteQuotient) {
        let p = Presentation::parse("gens: x y\nrel: x^5\nrel: y^5\nrel: x y x^-1 y^-1\n").unwrap();
        let q = FiniteQuotient::parse(
            "z5xz5",
            &p,
            "degree: 10\nimage x: (0 1 2 3 4)\nimage y: (5 6 7 8 9)\n",
        )
        .unwrap();
        (p, q)
    }

    fn toy_pair() -> (TrisectionData, TrisectionData, FiniteQuotient) {
        let (p, q) = toy();
        let a = GeneratingTuple::parse(p.alphabet(), "x, y").unwrap();
        let b = GeneratingTuple::parse(p.alphabet(), "x^2, y").unwrap();
        let ha = HeegaardData::new(p.clone(), a).unwrap();
        let hb = HeegaardData::new(p, b).unwrap();
        (spin(&ha), spin(&hb), q)
    }

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn vertical_heegaard_data() {
        let inv = SeifertInvariants::new(0, -1, vec![(5, 2), (7, 2), (9, 2)]).unwrap();
        let choice = VerticalChoice::new(set(&[1, 2]), 3).unwrap();
        let h =
            heegaard_from_vertical(&inv, &choice, &inv.default_exponents(choice.subset())).unwrap();
        assert_eq!(h.genus, 2);
        assert_eq!(h.h1_tuple.format(h.group.alphabet()), "s1^2, s2^2");

        let choice = VerticalChoice::new(set(&[1]), 3).unwrap();
        assert_eq!(choice.excluded_q(), 2);
        let h =
            heegaard_from_vertical(&inv, &choice, &inv.default_exponents(choice.subset())).unwrap();
        assert_eq!(h.h1_tuple.format(h.group.alphabet()), "s1^2, s3");

        let single = SeifertInvariants::new(1, 0, vec![(3, 1)]).unwrap();
        assert!(VerticalChoice::new(set(&[1]), 1).is_err());
        assert_eq!(single.vertical_genus(), 2);
    }

    #[test]
    fn spin_shapes() {
        let (t, _, _) = toy_pair();
        assert_eq!((t.g, t.k), (6, [2, 2, 2]));
        assert!(t.sectors[0] == t.sectors[1] && t.sectors[1] == t.sectors[2]);
        assert!(t.is_balanced());

        let trivial = Presentation::free(Alphabet::standard(0));
        let h = HeegaardData::new(trivial, GeneratingTuple::basis(0)).unwrap();
        let s = spin(&h);
        assert_eq!((s.g, s.k), (0, [0, 0, 0]));
        assert!(s.sectors.iter().all(|t| t.arity() == 0));
    }

    #[test]
    fn stabilization_examples() {
        let (t, _, _) = toy_pair();
        let s1 = t.unbalanced_stabilize(1).unwrap();
        assert_eq!((s1.g, s1.k), (7, [3, 2, 2]));
        assert_eq!(s1.sectors[1], t.sectors[1]);
        assert_eq!(s1.sectors[2], t.sectors[2]);
        assert_eq!(s1.sectors[0].arity(), t.sectors[0].arity() + 1);
        let ab = s1.unbalanced_stabilize(2).unwrap();
        let ba = t
            .unbalanced_stabilize(2)
            .unwrap()
            .unbalanced_stabilize(1)
            .unwrap();
        assert_eq!(ab, ba);
        let b = t.balanced_stabilize();
        assert_eq!((b.g, b.k), (9, [3, 3, 3]));
        let c = t
            .unbalanced_stabilize(3)
            .unwrap()
            .unbalanced_stabilize(1)
            .unwrap()
            .unbalanced_stabilize(2)
            .unwrap();
        assert_eq!(b, c);
        assert!(t.unbalanced_stabilize(0).is_err());
        assert!(t.unbalanced_stabilize(4).is_err());
    }

    #[test]
    fn comparison_examples() {
        let (a, b, q) = toy_pair();
        let qs = vec![q];
        for mode in [CompareMode::Labeled, CompareMode::Unlabeled] {
            assert_eq!(
                compare_trisections(&a, &a, &qs, 10_000, mode)
                    .unwrap()
                    .verdict,
                IsotopyVerdict::Inconclusive
            );
            assert_eq!(
                compare_trisections(&a, &b, &qs, 10_000, mode)
                    .unwrap()
                    .verdict,
                IsotopyVerdict::NotIsotopic
            );
            assert_eq!(
                compare_trisections(&b, &a, &qs, 10_000, mode)
                    .unwrap()
                    .verdict,
                IsotopyVerdict::NotIsotopic
            );
            assert_eq!(
                compare_trisections(&a, &b, &[], 10_000, mode)
                    .unwrap()
                    .verdict,
                IsotopyVerdict::Inconclusive
            );
        }
        let other = Presentation::free(Alphabet::standard(2));
        let c = TrisectionData {
            group: other,
            ..a.clone()
        };
        assert!(compare_trisections(&a, &c, &qs, 10_000, CompareMode::Labeled).is_err());
    }

    #[test]
    fn unlabeled_sector_arities() {
        let (a, b, q) = toy_pair();
        let a1 = a.unbalanced_stabilize(1).unwrap();
        let b2 = b.unbalanced_stabilize(2).unwrap();
        assert!(compare_trisections(
            &a1,
            &b2,
            std::slice::from_ref(&q),
            10_000,
            CompareMode::Labeled
        )
        .is_err());
        let c = compare_trisections(
            &a1,
            &b2,
            std::slice::from_ref(&q),
            10_000,
            CompareMode::Unlabeled,
        )
        .unwrap();
        assert_eq!(c.matchings.len(), 6);
        assert_eq!(c.verdict, IsotopyVerdict::NotIsotopic);
        let a12 = a1.unbalanced_stabilize(2).unwrap();
        assert!(compare_trisections(&a12, &b, &[q], 10_000, CompareMode::Unlabeled).is_err());
    }

    #[test]
    fn robustness_examples() {
        let (a, b, q) = toy_pair();
        let qs = vec![q];
        let r = stabilization_robustness(&a, &b, &set(&[1, 2]), 20, 3, &qs, 10_000, false).unwrap();
        assert_eq!(r.untouched.len(), 1);
        assert_eq!(r.untouched[0].sector, 3);
        assert!(r.invariant());
        assert!(matches!(
            r.untouched[0].after.verdict,
            Distinction::Distinct { .. }
        ));
        assert_eq!(r.final_shapes[0].0, 26);

        let zero =
            stabilization_robustness(&a, &b, &set(&[1, 2]), 0, 3, &qs, 10_000, false).unwrap();
        let plain = compare_trisections(&a, &b, &qs, 10_000, CompareMode::Labeled).unwrap();
        let sector3 = plain
            .pairs
            .iter()
            .find(|c| c.left == 3)
            .unwrap()
            .report
            .clone()
            .unwrap();
        assert_eq!(zero.untouched[0].after, sector3);

        assert!(
            stabilization_robustness(&a, &b, &set(&[1, 2, 3]), 5, 3, &qs, 10_000, false).is_err()
        );
        assert!(stabilization_robustness(&a, &b, &set(&[4]), 5, 3, &qs, 10_000, false).is_err());

        let bal = stabilization_robustness(&a, &b, &set(&[1]), 2, 3, &qs, 10_000, true).unwrap();
        let cmp = bal.balanced.unwrap();
        assert_eq!(cmp.verdict, IsotopyVerdict::Inconclusive);
    }

    #[test]
    fn text_round_trip() {
        let (a, _, _) = toy_pair();
        let s = a.unbalanced_stabilize(2).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("trisection v1\ng: 7\nk: 2 3 2\ngroup:\n"));
        assert!(text.contains("sector 2: x, y, 1\n"));
        assert_eq!(TrisectionData::parse(&text).unwrap(), s);
        assert!(TrisectionData::parse(&text.replace("k: 2 3 2", "k: 2 2 2")).is_err());
        assert!(TrisectionData::parse("trisection v2\n").is_err());
    }
}
