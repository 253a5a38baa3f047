use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use nielsen_core::library::{resolve, TargetGroup};
use nielsen_core::presentation::{check_lm_hypotheses, VerticalChoice};
use nielsen_core::quotient::PermGroup;
use nielsen_core::trisection::heegaard_from_vertical;
use nielsen_core::{FiniteQuotient, GeneratingTuple, HeegaardData, Permutation, Presentation, SeifertInvariants};

use crate::args::PairSpec;
use crate::error::{CliError, CliResult, Context};

const HOM_SEARCH_BUDGET: u64 = 2_000_000;

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Two Heegaard data on the same group, plus the invariants when they came
/// from a Seifert fiber space.
pub struct Pair {
    pub a: HeegaardData,
    pub b: HeegaardData,
    pub labels: [String; 2],
    pub seifert: Option<SeifertInvariants>,
}

impl Pair {
    /// Set when the invariants satisfy the hypotheses under which Nielsen
    /// classes of vertical systems separate the manifolds up to
    /// diffeomorphism.
    pub fn annotation(&self) -> Option<String> {
        let inv = self.seifert.as_ref()?;
        check_lm_hypotheses(inv).holds.then(|| {
            "distinct Nielsen classes imply non-diffeomorphic for this family: generating systems \
             of these groups that are Nielsen equivalent after an automorphism are Nielsen equivalent"
                .to_string()
        })
    }
}

pub fn load_pair(spec: &PairSpec) -> CliResult<Pair> {
    match (&spec.group, &spec.sfs) {
        (Some(path), None) => {
            let p = Presentation::parse(&read(path)?).in_file(path)?;
            let (ta, tb) = match (&spec.tuple_a, &spec.tuple_b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(CliError::Usage("--group needs --tuple-a and --tuple-b".into())),
            };
            let (wa, wb) = (GeneratingTuple::parse(p.alphabet(), ta)?, GeneratingTuple::parse(p.alphabet(), tb)?);
            let a = HeegaardData::new(p.clone(), wa)?;
            let b = HeegaardData::new(p, wb)?;
            Ok(Pair { a, b, labels: [ta.clone(), tb.clone()], seifert: None })
        }
        (None, Some(sfs)) => {
            let inv = SeifertInvariants::parse(sfs)?;
            let (sa, sb) = match (&spec.subset_a, &spec.subset_b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(CliError::Usage("--sfs needs --subset-a and --subset-b".into())),
            };
            let build = |text: &str| -> CliResult<HeegaardData> {
                let subset = VerticalChoice::parse_subset(text)?;
                let choice = VerticalChoice::new(subset, inv.r())?;
                Ok(heegaard_from_vertical(&inv, &choice, &inv.default_exponents(choice.subset()))?)
            };
            let (a, b) = (build(sa)?, build(sb)?);
            Ok(Pair { a, b, labels: [format!("subset {sa}"), format!("subset {sb}")], seifert: Some(inv) })
        }
        _ => Err(CliError::Usage("give exactly one of --group or --sfs".into())),
    }
}

/// Resolves `--quotient` arguments against `p`: existing files are read as
/// quotient files, anything else as a library group name.
pub fn load_quotients(specs: &[String], p: &Presentation, max_homs: usize) -> CliResult<(Vec<FiniteQuotient>, Vec<String>)> {
    let mut quotients = Vec::new();
    let mut notes = Vec::new();
    for spec in specs {
        let path = Path::new(spec);
        if path.is_file() {
            let name = path.file_stem().map_or(spec.clone(), |s| s.to_string_lossy().into_owned());
            quotients.push(FiniteQuotient::parse(name, p, &read(path)?).in_file(path)?);
        } else if spec.contains('/') || spec.contains('.') {
            notes.push(format!("{spec}: no such quotient file, skipped"));
        } else {
            let found = resolve(spec, p, max_homs, HOM_SEARCH_BUDGET)?;
            if found.quotients.is_empty() {
                let why = if found.complete { "none exist" } else { "search budget ran out" };
                notes.push(format!("library group {spec}: no surjection found ({why})"));
            } else if !found.complete {
                notes.push(format!("library group {spec}: search budget ran out after {} surjections", found.quotients.len()));
            }
            quotients.extend(found.quotients);
        }
    }
    if quotients.is_empty() {
        notes.push("no usable quotients; comparisons are inconclusive".into());
    }
    Ok((quotients, notes))
}

/// A library group name, or a file with a `degree:` line followed by
/// `gen: <cycles>` lines.
pub fn load_perm_group(spec: &str, limit: usize) -> CliResult<(String, PermGroup)> {
    let path = Path::new(spec);
    if !path.is_file() {
        let target = TargetGroup::by_name(spec)?;
        return Ok((spec.to_string(), PermGroup::generated_by_bounded(target.degree, target.generators, limit)?));
    }
    let text = read(path)?;
    let mut degree = None;
    let mut gens = Vec::new();
    for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()) {
        let bad = || CliError::Input(format!("{}: bad line `{line}`", path.display()));
        let (key, value) = line.split_once(':').ok_or_else(bad)?;
        match key.trim() {
            "degree" => degree = Some(value.trim().parse::<usize>().map_err(|_| bad())?),
            "gen" => {
                let d = degree.ok_or_else(bad)?;
                gens.push(Permutation::parse_cycles(d, value).in_file(path)?);
            }
            _ => return Err(bad()),
        }
    }
    let degree = degree.ok_or_else(|| CliError::Input(format!("{}: missing degree line", path.display())))?;
    Ok((spec.to_string(), PermGroup::generated_by_bounded(degree, gens, limit)?))
}

pub fn parse_sectors(text: &str) -> CliResult<BTreeSet<usize>> {
    Ok(VerticalChoice::parse_subset(text)?)
}
