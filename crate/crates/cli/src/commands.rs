use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::Serialize;

use nielsen_core::nielsen::format_log;
use nielsen_core::presentation::{
    check_lm_hypotheses, classify_vertical_pair, enumerate_vertical_choices, format_subset, fuchsian_quotient,
    vertical_system, VerdictKind,
};
use nielsen_core::quotient::{
    distinguish_via_quotients, enumerate_generating_tuples, generated_subgroup_order, nielsen_orbit,
    partition_by_canonical,
};
use nielsen_core::spine::{connect_spines, format_spine_log, parse_spine_log};
use nielsen_core::trisection::{compare_trisections, spin, stabilization_robustness, CompareMode};
use nielsen_core::{Permutation, SeifertInvariants, Spine, TupleImage, VerticalChoice};

use crate::args::{Cli, OrbitArgs, PairSpec};
use crate::error::{CliError, CliResult, Context};
use crate::input::{load_pair, load_perm_group, load_quotients, parse_sectors, read};
use crate::report::{Comparison, Distinguish, Report, Shape, REPORT_VERSION};

// Carrier groups larger than this are refused by `orbit`.
const ORBIT_GROUP_LIMIT: usize = 1_000_000;

fn render<T: Serialize>(command: &'static str, body: T, notes: Vec<String>, summary: Vec<String>) -> String {
    let report = Report { version: REPORT_VERSION, command, body, notes, summary };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct Choice {
    subset: String,
    excluded_q: usize,
    tuple: String,
}

#[derive(Serialize)]
struct Hypotheses {
    holds: bool,
    reasons: Vec<String>,
}

#[derive(Serialize)]
struct QuotientCheck {
    a: usize,
    b: usize,
    result: Distinguish,
}

#[derive(Serialize)]
struct VerticalCensus {
    invariants: String,
    vertical_genus: usize,
    choice_count: usize,
    hypotheses: Hypotheses,
    choices: Vec<Choice>,
    matrix: Vec<Vec<String>>,
    reasons: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    quotient_checks: Vec<QuotientCheck>,
}

pub fn vertical_census(cli: &Cli, sfs: &str) -> CliResult<String> {
    let inv = SeifertInvariants::parse(sfs)?;
    let subsets = enumerate_vertical_choices(inv.r())?;
    let group = fuchsian_quotient(&inv)?;
    let mut choices = Vec::new();
    let mut tuples = Vec::new();
    for s in &subsets {
        let choice = VerticalChoice::new(s.clone(), inv.r())?;
        let t = vertical_system(&inv, &choice, &inv.default_exponents(s))?;
        choices.push(Choice {
            subset: format_subset(s),
            excluded_q: choice.excluded_q(),
            tuple: t.format(group.alphabet()),
        });
        tuples.push(t);
    }
    let mut matrix = Vec::new();
    let mut reasons = Vec::new();
    let mut counts = [0usize; 3];
    for (i, a) in subsets.iter().enumerate() {
        let mut row = Vec::new();
        let mut why = Vec::new();
        for (j, b) in subsets.iter().enumerate() {
            let v = classify_vertical_pair(&inv, a, b)?;
            if i < j {
                counts[v.kind as usize] += 1;
            }
            row.push(v.kind.to_string());
            why.push(v.reason);
        }
        matrix.push(row);
        reasons.push(why);
    }
    let mut notes = Vec::new();
    let mut quotient_checks = Vec::new();
    if !cli.quotients.is_empty() {
        let (quotients, qnotes) = load_quotients(&cli.quotients, &group, cli.homs)?;
        notes.extend(qnotes);
        for i in 0..tuples.len() {
            for j in i + 1..tuples.len() {
                let r = distinguish_via_quotients(&group, &tuples[i], &tuples[j], &quotients, cli.cap)?;
                quotient_checks.push(QuotientCheck { a: i, b: j, result: Distinguish::new(&r, cli.cap) });
            }
        }
    }
    let check = check_lm_hypotheses(&inv);
    let mut summary = vec![format!("{} vertical choices for {inv}", subsets.len())];
    summary.push(if check.holds {
        "classification hypotheses hold".to_string()
    } else {
        format!("classification hypotheses fail: {}", check.reasons.join("; "))
    });
    summary.push(format!(
        "pairs: {} Distinct, {} Equal, {} Unknown",
        counts[VerdictKind::Distinct as usize],
        counts[VerdictKind::Equal as usize],
        counts[VerdictKind::Unknown as usize]
    ));
    if !quotient_checks.is_empty() {
        let certified = quotient_checks.iter().filter(|q| q.result.verdict == "Distinct").count();
        summary.push(format!("{certified} of {} pairs certified distinct by quotients", quotient_checks.len()));
    }
    let body = VerticalCensus {
        invariants: inv.to_string(),
        vertical_genus: inv.vertical_genus(),
        choice_count: subsets.len(),
        hypotheses: Hypotheses { holds: check.holds, reasons: check.reasons },
        choices,
        matrix,
        reasons,
        quotient_checks,
    };
    Ok(render("vertical-census", body, notes, summary))
}

#[derive(Serialize)]
struct SpinCompare {
    inputs: [String; 2],
    heegaard_genus: [usize; 2],
    trisections: [Shape; 2],
    quotients: Vec<String>,
    comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annotation: Option<String>,
}

pub fn spin_compare(cli: &Cli, spec: &PairSpec) -> CliResult<String> {
    let pair = load_pair(spec)?;
    let (t1, t2) = (spin(&pair.a), spin(&pair.b));
    let (quotients, notes) = load_quotients(&cli.quotients, &pair.a.group, cli.homs)?;
    let mut comparisons = Vec::new();
    let mut summary = vec![format!("spun trisections {t1} and {t2}")];
    for mode in [CompareMode::Labeled, CompareMode::Unlabeled] {
        let c = compare_trisections(&t1, &t2, &quotients, cli.cap, mode)?;
        let json = Comparison::new(&c, t1.k, t2.k, cli.cap);
        let certificate = c
            .pairs
            .iter()
            .find_map(|p| match &p.report.as_ref()?.verdict {
                nielsen_core::quotient::Distinction::Distinct { quotient, .. } => {
                    Some(format!(" (sector {} vs {} via {quotient})", p.left, p.right))
                }
                _ => None,
            })
            .unwrap_or_default();
        summary.push(format!("{}: {}{certificate}", json.mode, c.verdict));
        comparisons.push(json);
    }
    let annotation = pair.annotation();
    if let Some(a) = &annotation {
        summary.push(a.clone());
    }
    let body = SpinCompare {
        inputs: pair.labels.clone(),
        heegaard_genus: [pair.a.genus, pair.b.genus],
        trisections: [(&t1).into(), (&t2).into()],
        quotients: quotients.iter().map(|q| q.name().to_string()).collect(),
        comparisons,
        annotation,
    };
    Ok(render("spin-compare", body, notes, summary))
}

#[derive(Serialize)]
struct OrbitReport {
    group: String,
    order: usize,
    tuple: Vec<String>,
    generated_order: usize,
    orbit_size: usize,
    truncated: bool,
    cap: usize,
    canonical: Option<Vec<String>>,
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CanonicalCheck {
    class_count: usize,
    agrees: bool,
}

#[derive(Serialize)]
struct CensusReport {
    group: String,
    order: usize,
    arity: usize,
    generating_tuples: usize,
    class_count: usize,
    class_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical_check: Option<CanonicalCheck>,
}

fn show(t: &TupleImage) -> Vec<String> {
    t.elements().iter().map(Permutation::to_string).collect()
}

pub fn orbit(cli: &Cli, args: &OrbitArgs) -> CliResult<String> {
    let (name, group) = load_perm_group(&args.group, ORBIT_GROUP_LIMIT)?;
    match (&args.tuple, args.census) {
        (Some(text), None) => {
            let elements = text
                .split(';')
                .map(|s| Permutation::parse_cycles(group.degree(), s))
                .collect::<nielsen_core::Result<Vec<_>>>()?;
            let t = TupleImage::new(elements, group.degree())?;
            let o = nielsen_orbit(&t, cli.cap);
            let mut summary = vec![if o.truncated {
                format!("orbit search stopped at the cap after {} states", o.size)
            } else {
                format!("orbit of {} tuples", o.size)
            }];
            summary.push(format!("entries generate a subgroup of order {}", generated_subgroup_order(&t)));
            let body = OrbitReport {
                group: name,
                order: group.order(),
                tuple: show(&t),
                generated_order: generated_subgroup_order(&t),
                orbit_size: o.size,
                truncated: o.truncated,
                cap: cli.cap,
                canonical: o.canonical.as_ref().map(show),
                witness: o.witness_log.as_ref().map(|w| format_log(w).lines().map(str::to_string).collect()),
            };
            Ok(render("orbit", body, Vec::new(), summary))
        }
        (None, Some(arity)) => {
            let census = enumerate_generating_tuples(&group, arity, args.budget)?;
            let canonical_check = if args.verify {
                let tuples: Vec<TupleImage> = census.classes.iter().flatten().map(|d| group.tuple_image(d)).collect();
                let partition = partition_by_canonical(&tuples, cli.cap)?;
                let mut offset = 0;
                let expected: BTreeSet<Vec<usize>> = census
                    .classes
                    .iter()
                    .map(|c| {
                        offset += c.len();
                        (offset - c.len()..offset).collect()
                    })
                    .collect();
                let agrees = partition.iter().cloned().collect::<BTreeSet<_>>() == expected;
                Some(CanonicalCheck { class_count: partition.len(), agrees })
            } else {
                None
            };
            let mut summary = vec![format!(
                "{} generating {arity}-tuples of {name} in {} Nielsen classes",
                census.generating_tuples(),
                census.class_count()
            )];
            if let Some(c) = &canonical_check {
                summary.push(format!(
                    "canonical forms give {} classes ({})",
                    c.class_count,
                    if c.agrees { "agree" } else { "DISAGREE" }
                ));
            }
            let body = CensusReport {
                group: name,
                order: census.order,
                arity,
                generating_tuples: census.generating_tuples(),
                class_count: census.class_count(),
                class_sizes: census.class_sizes(),
                canonical_check,
            };
            Ok(render("orbit", body, Vec::new(), summary))
        }
        _ => Err(CliError::Usage("give exactly one of --tuple or --census".into())),
    }
}

#[derive(Serialize)]
struct Untouched {
    sector: usize,
    tuples_unchanged: bool,
    verdict_unchanged: bool,
    before: Distinguish,
    after: Distinguish,
}

#[derive(Serialize)]
struct Robustness {
    inputs: [String; 2],
    stab_sectors: Vec<usize>,
    sequence_len: usize,
    seed: u64,
    sequences: [Vec<usize>; 2],
    final_shapes: [Shape; 2],
    quotients: Vec<String>,
    untouched: Vec<Untouched>,
    invariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    balanced: Option<Comparison>,
}

pub fn stab_robustness(cli: &Cli, spec: &PairSpec, sectors: &str, len: usize, balanced: bool) -> CliResult<String> {
    let stab = parse_sectors(sectors)?;
    let pair = load_pair(spec)?;
    let (t1, t2) = (spin(&pair.a), spin(&pair.b));
    let (quotients, notes) = load_quotients(&cli.quotients, &pair.a.group, cli.homs)?;
    let r = stabilization_robustness(&t1, &t2, &stab, len, cli.seed, &quotients, cli.cap, balanced)?;
    let mut summary = Vec::new();
    let untouched: Vec<Untouched> = r
        .untouched
        .iter()
        .map(|u| {
            let (before, after) = (Distinguish::new(&u.before, cli.cap), Distinguish::new(&u.after, cli.cap));
            summary.push(format!(
                "sector {}: tuples {}, verdict {} before and {} after",
                u.sector,
                if u.unchanged { "unchanged" } else { "CHANGED" },
                before.verdict,
                after.verdict
            ));
            Untouched {
                sector: u.sector,
                tuples_unchanged: u.unchanged,
                verdict_unchanged: u.before.verdict == u.after.verdict,
                before,
                after,
            }
        })
        .collect();
    let shape = |(g, k): (usize, [usize; 3])| Shape { g, k };
    let balanced = r.balanced.as_ref().map(|c| {
        let bump = |k: [usize; 3]| k.map(|x| x + 1);
        let json = Comparison::new(c, bump(r.final_shapes[0].1), bump(r.final_shapes[1].1), cli.cap);
        summary.push(format!("after a balanced stabilization: {}", c.verdict));
        json
    });
    summary.insert(0, format!("{} stabilizations per trisection in sectors {}", len, format_subset(&stab)));
    let body = Robustness {
        inputs: pair.labels.clone(),
        stab_sectors: stab.iter().copied().collect(),
        sequence_len: len,
        seed: cli.seed,
        sequences: r.sequences.clone(),
        final_shapes: [shape(r.final_shapes[0]), shape(r.final_shapes[1])],
        quotients: quotients.iter().map(|q| q.name().to_string()).collect(),
        untouched,
        invariant: r.invariant(),
        balanced,
    };
    Ok(render("stab-robustness", body, notes, summary))
}

#[derive(Serialize)]
struct SpineConnect {
    genus: usize,
    from: Vec<String>,
    to: Vec<String>,
    max_depth: usize,
    found: bool,
    moves: Option<Vec<String>>,
    nielsen_moves: Option<Vec<String>>,
    replays: Option<bool>,
}

fn load_spine(path: &PathBuf) -> CliResult<Spine> {
    Spine::parse(&read(path)?).in_file(path)
}

fn check_certificate(spine: &Spine, cert: &Option<PathBuf>, notes: &mut Vec<String>) -> CliResult<()> {
    let Some(path) = cert else { return Ok(()) };
    let moves = parse_spine_log(&read(path)?, spine.genus()).in_file(path)?;
    if !spine.verify_certificate(&moves).in_file(path)? {
        return Err(CliError::Input(format!("{}: certificate does not build the spine", path.display())));
    }
    notes.push(format!("{}: basis certificate verified", path.display()));
    Ok(())
}

pub fn spine_connect(
    from: &Option<PathBuf>,
    to: &PathBuf,
    certs: [&Option<PathBuf>; 2],
    max_depth: usize,
) -> CliResult<String> {
    let target = load_spine(to)?;
    let source = match from {
        Some(p) => load_spine(p)?,
        None => Spine::standard(target.genus()),
    };
    let mut notes = Vec::new();
    check_certificate(&source, certs[0], &mut notes)?;
    check_certificate(&target, certs[1], &mut notes)?;
    let path = connect_spines(&source, &target, max_depth)?;
    let lines = |s: &Spine| s.to_string().lines().map(str::to_string).collect::<Vec<_>>();
    let mut nielsen = None;
    let mut replays = None;
    if let Some(p) = &path {
        let mut log = Vec::new();
        for m in p {
            log.extend(m.as_nielsen(source.genus())?);
        }
        nielsen = Some(format_log(&log).lines().map(str::to_string).collect());
        replays = Some(source.apply_sequence(p)? == target);
    }
    let summary = vec![match &path {
        Some(p) => format!("connected by {} moves", p.len()),
        None => format!("no sequence of at most {max_depth} moves found (not a proof that none exists)"),
    }];
    let body = SpineConnect {
        genus: source.genus(),
        from: lines(&source),
        to: lines(&target),
        max_depth,
        found: path.is_some(),
        moves: path.as_ref().map(|p| format_spine_log(p).lines().map(str::to_string).collect()),
        nielsen_moves: nielsen,
        replays,
    };
    Ok(render("spine-connect", body, notes, summary))
}
