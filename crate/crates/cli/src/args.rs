use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use nielsen_core::quotient::{DEFAULT_CAP, DEFAULT_CENSUS_BUDGET};

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "nielsen", version, about = "Nielsen-class obstructions for Heegaard splittings and trisections")]
pub struct Cli {
    /// Most orbit states visited per search.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    pub cap: usize,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Quotient file or library group name (z12, z5xz5, s4, a5, ...). Repeatable.
    #[arg(long = "quotient", global = true, value_name = "FILE|NAME")]
    pub quotients: Vec<String>,

    /// Surjections kept per library group name.
    #[arg(long, global = true, default_value_t = 4, value_parser = positive)]
    pub homs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertical Heegaard splittings of a Seifert fiber space and their classification.
    VerticalCensus {
        /// Invariants, e.g. `g=0,e=-1,fibers=5/2,7/2,9/2`.
        #[arg(long)]
        sfs: String,
    },
    /// Spin two Heegaard splittings and look for obstructions to isotopy.
    SpinCompare(PairSpec),
    /// Nielsen orbit of a tuple in a finite group, or a census of all generating tuples.
    Orbit(OrbitArgs),
    /// Stabilize two trisections at random and recheck the untouched sectors.
    StabRobustness {
        #[command(flatten)]
        pair: PairSpec,
        /// Sectors allowed to be stabilized, e.g. `1,2`.
        #[arg(long, default_value = "1,2")]
        sectors: String,
        /// Stabilizations per trisection.
        #[arg(long = "len", default_value_t = 10)]
        len: usize,
        /// Finish with one balanced stabilization of both and compare again.
        #[arg(long)]
        balanced: bool,
    },
    /// Search for spine moves between two spines.
    SpineConnect {
        /// Spine file (`loop <i>: <word>` lines); defaults to the standard spine.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: PathBuf,
        /// Move log that builds `--from` out of the standard spine.
        #[arg(long)]
        from_certificate: Option<PathBuf>,
        /// Move log that builds `--to` out of the standard spine.
        #[arg(long)]
        to_certificate: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
    },
}

/// Two Heegaard splittings of one manifold, given either as tuples over a
/// presentation file or as vertical splittings of a Seifert fiber space.
#[derive(Args, Debug)]
pub struct PairSpec {
    /// Presentation file (`gens:` and `rel:` lines).
    #[arg(long, conflicts_with = "sfs")]
    pub group: Option<PathBuf>,
    /// First tuple, e.g. `x, y`.
    #[arg(long, requires = "group", allow_hyphen_values = true)]
    pub tuple_a: Option<String>,
    #[arg(long, requires = "group", allow_hyphen_values = true)]
    pub tuple_b: Option<String>,
    /// Seifert invariants; the splittings are vertical ones.
    #[arg(long)]
    pub sfs: Option<String>,
    /// Fibers picked up by the first splitting, e.g. `1,2`.
    #[arg(long, requires = "sfs")]
    pub subset_a: Option<String>,
    #[arg(long, requires = "sfs")]
    pub subset_b: Option<String>,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    /// Library group name or permutation group file (`degree:` and `gen:` lines).
    #[arg(long)]
    pub group: String,
    /// Tuple of elements in cycle notation, separated by `;`.
    #[arg(long, conflicts_with = "census")]
    pub tuple: Option<String>,
    /// Enumerate every generating tuple of this arity.
    #[arg(long, value_name = "ARITY")]
    pub census: Option<usize>,
    /// Largest number of tuples a census may visit.
    #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
    pub budget: u64,
    /// Also check the census classes against orbit canonical forms.
    #[arg(long)]
    pub verify: bool,
}
