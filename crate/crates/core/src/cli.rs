//! Command line front end.
//!
//! Every subcommand shares one set of optional parameters; values missing
//! on the command line are taken from the `--config` JSON file (same keys
//! as the long flags, with `-` replaced by `_`).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Deserialize;

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::kernel::{for_each_kernel, EdgeStats, MAX_DELTA};
use crate::oracle::{count_table, Family};
use crate::sampler::{build_tables, sample_graph, survey, trial_rng};
use crate::series::{estimate_ratio, graphs_series, ln_asymptotic_estimate, nonbipartite_series, profile};

#[derive(Parser, Debug)]
#[command(name = "sykcomb", version, about = "Counting, enumeration and sampling of fixed-order colored graphs")]
pub struct Cli {
    /// JSON file supplying defaults for any parameter.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "SYKCOMB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force class counts by order.
    Count(Params),
    /// Exact counts g_{n,delta} for n = 1..=N.
    Series(Params),
    /// Kernel catalog of a given excess.
    Kernels(Params),
    /// Uniform sampling with a statistics report.
    Sample(Params),
    /// Compare brute-force counts with the series.
    Check(Params),
    /// Asymptotic constants and estimate ratios.
    Asymptotics(Params),
    /// Convert a graph file, or one sampled graph, to JSON, DOT or
    /// constellation JSON.
    Export(Params),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Tsv,
    Json,
    Dot,
    Constellation,
}

#[derive(Args, Debug, Default, Clone)]
struct Params {
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    /// Size (half the number of vertices), or the largest size for tables.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Use the general (not necessarily bipartite) family.
    #[arg(long)]
    general: bool,
    /// Only dominant kernels.
    #[arg(long)]
    dominant: bool,
    /// Run the structural certificates on every sample.
    #[arg(long)]
    certificates: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Directory receiving each sample as JSON and DOT.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Graph JSON file to export.
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Keys accepted in a configuration file.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    q: Option<usize>,
    delta: Option<usize>,
    n: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    general: bool,
    dominant: bool,
    certificates: bool,
    format: Option<Format>,
    emit: Option<PathBuf>,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    threads: Option<usize>,
}

impl ConfigFile {
    fn params(&self) -> Params {
        Params {
            q: self.q,
            delta: self.delta,
            n: self.n,
            trials: self.trials,
            seed: self.seed,
            general: self.general,
            dominant: self.dominant,
            certificates: self.certificates,
            format: self.format,
            emit: self.emit.clone(),
            input: self.input.clone(),
        }
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// Bad configuration or request beyond module limits (exit 2).
    Config(String),
    /// `check` found a mismatch (exit 1).
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

impl Params {
    fn merge(self, file: &Params) -> Params {
        Params {
            q: self.q.or(file.q),
            delta: self.delta.or(file.delta),
            n: self.n.or(file.n),
            trials: self.trials.or(file.trials),
            seed: self.seed.or(file.seed),
            general: self.general || file.general,
            dominant: self.dominant || file.dominant,
            certificates: self.certificates || file.certificates,
            format: self.format.or(file.format),
            emit: self.emit.or_else(|| file.emit.clone()),
            input: self.input.or_else(|| file.input.clone()),
        }
    }

    fn need<T: Copy>(v: Option<T>, name: &str) -> Outcome<T> {
        v.ok_or_else(|| Failure::Config(format!("missing required parameter --{name}")))
    }

    fn q(&self, min: usize) -> Outcome<usize> {
        let q = Self::need(self.q, "q")?;
        if q < min {
            return Err(Error::UnsupportedQ { q, min }.into());
        }
        Ok(q)
    }

    fn delta(&self) -> Outcome<usize> {
        let d = Self::need(self.delta, "delta")?;
        if d > MAX_DELTA {
            return Err(Error::UnsupportedDelta { delta: d, max: MAX_DELTA }.into());
        }
        Ok(d)
    }

    fn n(&self) -> Outcome<usize> {
        let n = Self::need(self.n, "n")?;
        if n == 0 {
            return Err(Failure::Config("--n must be positive".into()));
        }
        Ok(n)
    }

    fn family(&self) -> Family {
        if self.general {
            Family::General
        } else {
            Family::Bipartite
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code. Output goes to `out` unless `--output` is given.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Outcome<()> {
    let file = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(Error::from)?;
            serde_json::from_str::<ConfigFile>(&text).map_err(|e| Failure::Config(format!("config file: {e}")))?
        }
        None => ConfigFile::default(),
    };
    if let Some(t) = cli.threads.or(file.threads) {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let output = cli.output.clone().or(file.output.clone());
    let defaults = file.params();
    let mut text = String::new();
    let result = match cli.command {
        Command::Count(p) => count(&p.merge(&defaults), &mut text),
        Command::Series(p) => series(&p.merge(&defaults), &mut text),
        Command::Kernels(p) => kernels(&p.merge(&defaults), &mut text),
        Command::Sample(p) => sample(&p.merge(&defaults), &mut text),
        Command::Check(p) => check(&p.merge(&defaults), &mut text),
        Command::Asymptotics(p) => asymptotics(&p.merge(&defaults), &mut text),
        Command::Export(p) => export(&p.merge(&defaults), &mut text),
    };
    // a mismatch report is still written
    match output {
        Some(path) => fs::write(path, &text).map_err(Error::from)?,
        None => out.write_all(text.as_bytes()).map_err(Error::from)?,
    }
    result
}

fn count(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(2)?;
    let n_max = p.n()?;
    let tables = (1..=n_max)
        .map(|n| count_table(q, n, p.family()))
        .collect::<Result<Vec<_>>>()?;
    match p.format.unwrap_or(Format::Tsv) {
        Format::Tsv => {
            for (i, t) in tables.iter().enumerate() {
                out.push_str(&t.to_tsv(i == 0));
            }
        }
        Format::Json => out.push_str(&to_json(&tables)?),
        f => return Err(Failure::Config(format!("count cannot produce {f:?} output"))),
    }
    Ok(())
}

fn counts(q: usize, delta: usize, n_max: usize, family: Family) -> Result<Vec<BigInt>> {
    let s = match family {
        Family::Bipartite => graphs_series(q, delta, n_max + 1)?,
        Family::General => nonbipartite_series(q, delta, n_max + 1)?,
    };
    Ok((1..=n_max).map(|n| s.coeff(n as i64)).collect())
}

fn series(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(3)?;
    let delta = p.delta()?;
    let n_max = p.n()?;
    for (i, g) in counts(q, delta, n_max, p.family())?.into_iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + 1, g);
    }
    Ok(())
}

fn kernels(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(3)?;
    let delta = p.delta()?;
    let format = p.format.unwrap_or(Format::Tsv);
    match format {
        Format::Json => {
            let mut all = Vec::new();
            for_each_kernel(q, delta, p.dominant, |k| all.push(serde_json::to_value(k.to_json_value())))?;
            let all = all.into_iter().collect::<std::result::Result<Vec<_>, _>>().map_err(Error::from)?;
            out.push_str(&to_json(&all)?);
        }
        Format::Tsv => {
            let mut profiles: std::collections::BTreeMap<EdgeStats, u64> = Default::default();
            for_each_kernel(q, delta, p.dominant, |k| *profiles.entry(k.edge_stats()).or_default() += 1)?;
            out.push_str("white\tcolored\tedges\tcc_equal\tcc_unequal\tcw_equal\tcw_unequal\tww_equal\tww_unequal\tkernels\n");
            for (s, c) in &profiles {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    s.white_vertices,
                    s.colored_vertices,
                    s.edges,
                    s.cc_equal,
                    s.cc_unequal,
                    s.cw_equal,
                    s.cw_unequal,
                    s.ww_equal,
                    s.ww_unequal,
                    c
                );
            }
        }
        f => return Err(Failure::Config(format!("kernels cannot produce {f:?} output"))),
    }
    Ok(())
}

fn sample(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(3)?;
    let delta = p.delta()?;
    let n = p.n()?;
    let trials = p.trials.unwrap_or(1);
    let seed = p.seed.unwrap_or(0);
    let tables = build_tables(q, delta, n)?;
    let report = survey(&tables, p.family(), trials, seed, p.certificates)?;
    if let Some(dir) = &p.emit {
        fs::create_dir_all(dir).map_err(Error::from)?;
        for t in 0..trials {
            let g = sample_graph(&tables, &mut trial_rng(seed, t), p.family())?;
            fs::write(dir.join(format!("sample_{t}.json")), g.to_json()).map_err(Error::from)?;
            fs::write(dir.join(format!("sample_{t}.dot")), g.to_dot()).map_err(Error::from)?;
        }
    }
    out.push_str(&to_json(&report)?);
    Ok(())
}

fn check(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(3)?;
    let n_max = p.n()?;
    let deltas: Vec<usize> = match p.delta {
        Some(_) => vec![p.delta()?],
        None => (0..=2).collect(),
    };
    let family = p.family();
    let mut ok = true;
    out.push_str("n\tdelta\toracle\tseries\tstatus\n");
    let series: Vec<Vec<BigInt>> = deltas
        .iter()
        .map(|&d| counts(q, d, n_max, family))
        .collect::<Result<_>>()?;
    for n in 1..=n_max {
        let table = count_table(q, n, family)?;
        for (i, &d) in deltas.iter().enumerate() {
            let oracle = BigInt::from(table.row(d).total);
            let expected = &series[i][n - 1];
            let matches = &oracle == expected;
            ok &= matches;
            let status = if matches { "ok" } else { "MISMATCH" };
            let _ = writeln!(out, "{n}\t{d}\t{oracle}\t{expected}\t{status}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

/// Fifteen significant digits.
fn float(x: f64) -> String {
    format!("{x:.14e}")
}

fn asymptotics(p: &Params, out: &mut String) -> Outcome<()> {
    let q = p.q(3)?;
    let delta = p.delta()?;
    let prof = profile(q, delta);
    let _ = writeln!(out, "q\t{q}");
    let _ = writeln!(out, "delta\t{delta}");
    let _ = writeln!(out, "z_c\t{}", prof.z_c);
    let _ = writeln!(out, "growth\t{}", float(prof.growth));
    let _ = writeln!(out, "kappa\t{}", float(prof.kappa));
    let _ = writeln!(out, "exponent\t{}", float(prof.exponent));
    if let Some(n_max) = p.n {
        let g = counts(q, delta, n_max, Family::Bipartite)?;
        out.push_str("n\tg\tln_estimate\tratio\n");
        for n in 1..=n_max {
            let gn = &g[n - 1];
            let ratio = if gn.is_positive() {
                float(estimate_ratio(gn, q, delta, n))
            } else {
                "0".to_string()
            };
            let _ = writeln!(out, "{n}\t{gn}\t{}\t{ratio}", float(ln_asymptotic_estimate(q, delta, n)));
        }
    }
    Ok(())
}

fn export(p: &Params, out: &mut String) -> Outcome<()> {
    let graph = match &p.input {
        Some(path) => ColoredGraph::from_json(&fs::read_to_string(path).map_err(Error::from)?)?,
        None => {
            let tables = build_tables(p.q(3)?, p.delta()?, p.n()?)?;
            sample_graph(&tables, &mut trial_rng(p.seed.unwrap_or(0), 0), p.family())?
        }
    };
    match p.format.unwrap_or(Format::Json) {
        Format::Json => out.push_str(&graph.to_json()),
        Format::Dot => out.push_str(&graph.to_dot()),
        Format::Constellation => out.push_str(&Constellation::psi(&graph)?.to_json()),
        Format::Tsv => return Err(Failure::Config("export cannot produce tsv output".into())),
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(())
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
