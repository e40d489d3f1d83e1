//! Command-line front end: `weyl`, `table`, `pages` and `verify`.
//!
//! Exit codes: 0 on success, 1 when a verification fails (or a runtime error
//! occurs), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cocyclelab_core::cohomology::{
    invariant_dims, kernel_table, spectral_pages, CohomologyTable, InvariantDims, SpectralPage,
};
use cocyclelab_core::rational::to_fraction_string;
use cocyclelab_core::root_system::{factors_label, parse_factors};
use cocyclelab_core::{longest_element, verify, Check, RootSystem, SimpleType, VerificationReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Default seed when neither `--seed` nor `COCYCLELAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "cocyclelab", version, about = "Weyl-group bookkeeping and cross-ratio cocycle checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Longest Weyl element, its action on the Cartan subalgebra and its signature.
    Weyl {
        /// Root system type, e.g. `G2` or `B2,A2`.
        #[arg(long = "type", value_parser = parse_type)]
        type_: Factors,
        #[arg(long, value_enum, default_value_t = WeylFormat::Json)]
        format: WeylFormat,
    },
    /// Kernel dimension table, one row per degree.
    Table {
        #[arg(long, value_parser = parse_type)]
        factors: Factors,
        #[arg(long)]
        max_degree: usize,
        /// Known dimensions of the group cohomology, `d0,d1,...`.
        #[arg(long, value_parser = parse_dims_list)]
        hg: Option<GroupDims>,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
    },
    /// First and second pages of the two spectral sequences.
    Pages {
        #[arg(long, value_parser = parse_type)]
        factors: Factors,
        #[arg(long, default_value_t = 4)]
        max_p: usize,
        #[arg(long, default_value_t = 4)]
        max_q: usize,
        #[arg(long, value_parser = parse_dims_list)]
        hg: Option<GroupDims>,
        #[arg(long, value_enum, default_value_t = PagesFormat::Text)]
        format: PagesFormat,
    },
    /// Seeded numerical verification of a cocycle property.
    Verify {
        /// One of cocycle_c3, cocycle_c4, alt_c3_fixed, alt_c4_zero, invariance_c3,
        /// invariance_c4, crossratio_invariance, reversal_c4.
        #[arg(long, value_parser = parse_check)]
        check: Check,
        /// Hyperbolic dimensions `n,m` of the two factors.
        #[arg(long, value_parser = parse_pair)]
        dims: (usize, usize),
        /// Number of independent random trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Bound on the worst normalised residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, env = "COCYCLELAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeylFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PagesFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFormat {
    Text,
    Json,
}

/// A product of simple types as given on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factors(pub Vec<SimpleType>);

fn parse_type(s: &str) -> Result<Factors, String> {
    parse_factors(s).map(Factors).map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<_> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|_| format!("bad dimension {a:?}"))?;
            let b = b.parse().map_err(|_| format!("bad dimension {b:?}"))?;
            if a < 2 || b < 2 {
                return Err("hyperbolic dimensions must be >= 2".into());
            }
            Ok((a, b))
        }
        _ => Err(format!("expected two comma-separated dimensions, got {s:?}")),
    }
}

/// Known dimensions of `H^p_m(G)`, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDims(pub Vec<u64>);

fn parse_dims_list(s: &str) -> Result<GroupDims, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| format!("bad dimension {x:?}"))
        })
        .collect::<Result<_, _>>()
        .map(GroupDims)
}

#[derive(Debug, Serialize)]
pub struct WeylJson {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub word_length: usize,
    /// One-based simple-reflection indices.
    pub word: Vec<usize>,
    pub action: Vec<Vec<String>>,
    pub basis: &'static str,
    pub s: usize,
    pub t: usize,
    pub minus_one: bool,
}

#[derive(Debug, Serialize)]
pub struct TableJson {
    pub factors: String,
    pub rank: usize,
    pub s: usize,
    pub t: usize,
    pub minus_one: bool,
    pub invariant_dims: InvariantDims,
    pub even_degree_corollary: bool,
    pub table: CohomologyTable,
    pub pages: Vec<SpectralPage>,
}

#[derive(Debug, Serialize)]
pub struct PagesJson {
    pub factors: String,
    pub pages: Vec<SpectralPage>,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    write!(out, "{}", e.render())
                }
                _ => write!(err, "{}", e.render()),
            };
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

type DispatchResult = Result<u8, Box<dyn std::error::Error>>;

fn dispatch(command: Command, out: &mut dyn Write) -> DispatchResult {
    match command {
        Command::Weyl { type_, format } => run_weyl(&type_.0, format, out),
        Command::Table {
            factors,
            max_degree,
            hg,
            format,
        } => run_table(&factors.0, max_degree, hg.as_ref().map(|h| h.0.as_slice()), format, out),
        Command::Pages {
            factors,
            max_p,
            max_q,
            hg,
            format,
        } => run_pages(&factors.0, max_p, max_q, hg.as_ref().map(|h| h.0.as_slice()), format, out),
        Command::Verify {
            check,
            dims,
            trials,
            tol,
            seed,
            format,
        } => run_verify(check, dims, trials, tol, seed, format, out),
    }
}

pub fn weyl_json(factors: &[SimpleType]) -> cocyclelab_core::Result<WeylJson> {
    let rs = RootSystem::new(factors)?;
    let rep = longest_element(&rs);
    Ok(WeylJson {
        type_label: rep.type_label.clone(),
        rank: rep.rank,
        word_length: rep.word_length(),
        word: rep.word.iter().map(|i| i + 1).collect(),
        action: rep
            .action
            .rows()
            .map(|row| row.iter().map(to_fraction_string).collect())
            .collect(),
        basis: "simple_roots",
        s: rep.signature.s,
        t: rep.signature.t,
        minus_one: rep.minus_one,
    })
}

fn run_weyl(factors: &[SimpleType], format: WeylFormat, out: &mut dyn Write) -> DispatchResult {
    let report = weyl_json(factors)?;
    match format {
        WeylFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        WeylFormat::Text => {
            writeln!(out, "type\t{}", report.type_label)?;
            writeln!(out, "rank\t{}", report.rank)?;
            writeln!(out, "word_length\t{}", report.word_length)?;
            let word: Vec<_> = report.word.iter().map(ToString::to_string).collect();
            writeln!(out, "word\t{}", word.join(" "))?;
            writeln!(out, "signature\t({}, {})", report.s, report.t)?;
            writeln!(out, "minus_one\t{}", report.minus_one)?;
            writeln!(out, "action (simple-root basis)")?;
            for row in &report.action {
                writeln!(out, "\t{}", row.join("\t"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Invariant dimensions and kernel table for a product of simple types.
pub fn table_json(
    factors: &[SimpleType],
    max_degree: usize,
    hg: Option<&[u64]>,
) -> cocyclelab_core::Result<TableJson> {
    let rs = RootSystem::new(factors)?;
    let rep = longest_element(&rs);
    let inv = invariant_dims(rep.signature, max_degree);
    let table = kernel_table(&inv, max_degree, hg);
    let pages = spectral_pages(&inv, max_degree, 4, hg);
    Ok(TableJson {
        factors: factors_label(factors),
        rank: rep.rank,
        s: rep.signature.s,
        t: rep.signature.t,
        minus_one: rep.minus_one,
        even_degree_corollary: cocyclelab_core::corollary_even_degree_check(&inv),
        invariant_dims: inv,
        table,
        pages,
    })
}

fn run_table(
    factors: &[SimpleType],
    max_degree: usize,
    hg: Option<&[u64]>,
    format: TableFormat,
    out: &mut dyn Write,
) -> DispatchResult {
    let report = table_json(factors, max_degree, hg)?;
    match format {
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        TableFormat::Tsv => {
            let with_hg = hg.is_some();
            let mut header = vec![
                "degree", "HA", "HA_w0", "HA_equiv", "NH", "NH_nalt", "NH_alt",
            ];
            if with_hg {
                header.extend(["HG", "H_alt", "H_total"]);
            }
            writeln!(out, "{}", header.join("\t"))?;
            let opt = |x: Option<u64>| x.map_or_else(|| "?".to_string(), |d| d.to_string());
            for row in &report.table.rows {
                let mut cells = vec![
                    row.degree.to_string(),
                    row.dim_ha.to_string(),
                    row.dim_ha_w0.to_string(),
                    row.dim_ha_equiv.to_string(),
                    row.dim_nh.to_string(),
                    row.dim_nh_nalt.to_string(),
                    row.dim_nh_alt.to_string(),
                ];
                if with_hg {
                    cells.extend([opt(row.dim_hg), opt(row.dim_h_alt), opt(row.dim_h_total)]);
                }
                writeln!(out, "{}", cells.join("\t"))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_pages(
    factors: &[SimpleType],
    max_p: usize,
    max_q: usize,
    hg: Option<&[u64]>,
    format: PagesFormat,
    out: &mut dyn Write,
) -> DispatchResult {
    let rs = RootSystem::new(factors)?;
    let rep = longest_element(&rs);
    let inv = invariant_dims(rep.signature, max_p.max(max_q));
    let pages = spectral_pages(&inv, max_p, max_q, hg);
    match format {
        PagesFormat::Json => {
            let report = PagesJson {
                factors: factors_label(factors),
                pages,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        PagesFormat::Text => {
            for page in &pages {
                writeln!(out, "{}", page.label.as_str())?;
                // p grows upwards, as in the usual picture
                for (p, row) in page.rows.iter().enumerate().rev() {
                    let cells: Vec<_> = row.iter().map(|e| format!("{:>10}", e.token())).collect();
                    writeln!(out, "{p:>3} |{}", cells.join(""))?;
                }
                let axis: Vec<_> = (0..=max_q).map(|q| format!("{q:>10}")).collect();
                writeln!(out, "    +{}", axis.join(""))?;
                writeln!(out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(
    check: Check,
    dims: (usize, usize),
    trials: usize,
    tol: f64,
    seed: u64,
    format: VerifyFormat,
    out: &mut dyn Write,
) -> DispatchResult {
    let report = verify(check, dims, trials, tol, seed)?;
    match format {
        VerifyFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        VerifyFormat::Text => write_report_text(&report, out)?,
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
}

fn write_report_text(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{}\t{}\ttrials={}\trejected={}\tmax_abs={:e}\tmax_rel={:e}\ttol={:e}\tseed={}",
        if r.pass { "PASS" } else { "FAIL" },
        r.check_name,
        r.trials,
        r.rejected,
        r.max_abs_residual,
        r.max_rel_residual,
        r.tolerance,
        r.seed
    )
}
