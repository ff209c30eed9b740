//! `repgrowth`: representation counts, cohomology, chief-series and growth
//! data for finite groups over finite fields, from the shell.
//!
//! Artifacts are canonical JSON (sorted keys, no timestamps), byte-identical
//! across runs with the same configuration, or CSV for the tabular
//! subcommands. With REPGROWTH_CACHE_DIR set, computation artifacts are
//! cached content-addressed by a hash of the canonical request; `check` and
//! `verify` always recompute.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 bad usage or
//! an exhausted budget.

use clap::{Args, Parser, Subcommand, ValueEnum};
use repgrowth_core::cohom::{h1_bar_oracle, h1_dim, lh1_search};
use repgrowth_core::crowns::{chief_series, epi_census, fp1_sup, ChiefFactorKind, TieBreak};
use repgrowth_core::fqlinalg::field_of_order;
use repgrowth_core::gmod::{chop_with_cap, GModule, IrreducibleDescriptor};
use repgrowth_core::groups::{FiniteGroup, GroupSpec};
use repgrowth_core::growth::{series_from_counts, series_product_eval};
use repgrowth_core::repcount::irreducibles;
use repgrowth_core::verify::{run_suite, SuiteReport, VerifyConfig, SUITE_NAMES};
use repgrowth_core::{Error, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "repgrowth",
    version,
    about = "Counts of irreducible modules, cohomology and chief-series data for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Seed for randomized chopping, recorded in every artifact.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Group enumeration cap (number of elements).
    #[arg(long = "cap-enum", global = true, default_value_t = repgrowth_core::groups::DEFAULT_ENUM_CAP)]
    cap_enum: usize,
    /// Dimension cap for module chopping.
    #[arg(long = "cap-chop", global = true, default_value_t = repgrowth_core::gmod::DEFAULT_CHOP_CAP)]
    cap_chop: usize,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Artifact format; csv is available for the tabular subcommands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate counts r(G,F,n) and r*(G,F,n) of irreducible modules.
    Irr {
        /// Group spec, e.g. "gstar 7 2", "sl 3 2", "product (sym 4) (cyclic 2)".
        #[arg(long)]
        group: String,
        /// Coefficient field order q = p^k.
        #[arg(long)]
        field: u64,
        /// Largest dimension tabulated.
        #[arg(long)]
        maxdim: usize,
    },
    /// Composition factors of the regular or natural permutation module.
    Chop {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: u64,
        /// Chop the regular module (the default).
        #[arg(long, conflicts_with = "perm")]
        regular: bool,
        /// Chop the natural permutation module instead.
        #[arg(long)]
        perm: bool,
    },
    /// First-cohomology dimensions of the regular module's composition factors.
    Cohom {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: u64,
        /// Recompute each H^1 with the bar resolution and report both.
        #[arg(long)]
        oracle: bool,
    },
    /// Least size of a faithful irreducible module with nonvanishing H^1.
    Lh1 {
        #[arg(long)]
        group: String,
        /// Largest module size inspected.
        #[arg(long)]
        bound: u64,
    },
    /// Chief series with per-factor structure data.
    Chief {
        #[arg(long)]
        group: String,
        /// Take the greatest minimal normal subgroup at each step instead of the least.
        #[arg(long)]
        greatest: bool,
    },
    /// Finiteness indicator: sup of ceil((delta + h')/r) over irreducible modules.
    Crown {
        #[arg(long)]
        group: String,
    },
    /// Census of epimorphisms onto a target group.
    Epi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        target: String,
        /// Search budget (generator tuples inspected).
        #[arg(long, default_value_t = 1 << 32)]
        budget: u64,
    },
    /// Truncated counting series sum r*(n) X^(n-1), optionally evaluated at q^-c.
    Series {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: u64,
        /// Number of coefficients kept.
        #[arg(long)]
        degree: usize,
        /// Evaluate at x = 1/field^c and report the exact rational value.
        #[arg(long = "eval-c")]
        eval_c: Option<u32>,
    },
    /// Engine self-checks on one group/field pair; exits 1 when any fails.
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: u64,
    },
    /// Named verification suites; exits 1 when any item fails.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

struct Artifact {
    result: Value,
    exit: u8,
    /// Rendered rows for subcommands with a tabular form.
    csv: Option<String>,
}

impl Artifact {
    fn plain(result: Value) -> Artifact {
        Artifact { result, exit: 0, csv: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let request = request_value(cli);
    let ext = match cli.flags.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    if cacheable(&cli.command) {
        if let Some(body) = cache_read(&request, ext)? {
            emit(&cli.flags.out, &body)?;
            return Ok(0);
        }
    }
    let artifact = dispatch(cli)?;
    let body = render(cli, &artifact)?;
    if cacheable(&cli.command) {
        cache_write(&request, ext, &body)?;
    }
    emit(&cli.flags.out, &body)?;
    Ok(artifact.exit)
}

fn dispatch(cli: &Cli) -> Result<Artifact> {
    let flags = &cli.flags;
    match &cli.command {
        Command::Irr { group, field, maxdim } => cmd_irr(flags, group, *field, *maxdim),
        Command::Chop { group, field, perm, .. } => cmd_chop(flags, group, *field, *perm),
        Command::Cohom { group, field, oracle } => cmd_cohom(flags, group, *field, *oracle),
        Command::Lh1 { group, bound } => cmd_lh1(flags, group, *bound),
        Command::Chief { group, greatest } => cmd_chief(flags, group, *greatest),
        Command::Crown { group } => cmd_crown(flags, group),
        Command::Epi { group, target, budget } => cmd_epi(flags, group, target, *budget),
        Command::Series { group, field, degree, eval_c } => {
            cmd_series(flags, group, *field, *degree, *eval_c)
        }
        Command::Check { group, field } => cmd_check(flags, group, *field),
        Command::Verify { suite } => cmd_verify(flags, suite),
    }
}

fn build_group(spec: &str, flags: &RunFlags) -> Result<Arc<FiniteGroup>> {
    GroupSpec::parse(spec)?.build(flags.cap_enum)
}

fn descriptor_value(d: &IrreducibleDescriptor) -> Value {
    json!({
        "dim": d.dim,
        "endo_degree": d.endo_degree,
        "absolutely_irreducible": d.absolutely_irreducible,
        "faithful": d.faithful,
        "fingerprint": d.fingerprint,
        "central_character": d.central_character,
    })
}

fn cmd_irr(flags: &RunFlags, group: &str, field: u64, maxdim: usize) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let f = field_of_order(field)?;
    let gi = irreducibles(&g, &f, maxdim, flags.seed, flags.cap_chop, None)?;
    let t = &gi.table;
    let r = t.r.clone().expect("chopped tables carry r");
    let cumulative = t.cumulative().expect("chopped tables carry r");
    let descriptors: Vec<Vec<Value>> = t
        .descriptors
        .iter()
        .map(|per_dim| per_dim.iter().map(descriptor_value).collect())
        .collect();
    let result = json!({
        "group": t.group,
        "p": t.p,
        "k": t.k,
        "max_dim": t.max_dim,
        "r": r,
        "r_star": t.r_star,
        "cumulative": cumulative,
        "descriptors": descriptors,
    });
    let mut csv = String::from("n,r,r_star,R\n");
    for n in 1..=t.max_dim {
        csv.push_str(&format!(
            "{n},{},{},{}\n",
            r[n - 1],
            t.r_star[n - 1],
            cumulative[n - 1]
        ));
    }
    Ok(Artifact { result, exit: 0, csv: Some(csv) })
}

fn cmd_chop(flags: &RunFlags, group: &str, field: u64, perm: bool) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let f = field_of_order(field)?;
    let m = if perm {
        GModule::permutation(g.clone(), f)?
    } else {
        GModule::regular(g.clone(), f, flags.cap_chop)?
    };
    let series = chop_with_cap(&m, flags.seed, flags.cap_chop)?;
    let factors: Vec<Value> = series
        .factors
        .iter()
        .map(|fac| {
            let mut v = descriptor_value(&fac.descriptor);
            v["multiplicity"] = json!(fac.multiplicity);
            v
        })
        .collect();
    let result = json!({
        "group": g.kind_summary(),
        "module": if perm { "permutation" } else { "regular" },
        "dim": m.dim(),
        "total_dim": series.total_dim(),
        "factors": factors,
    });
    let mut csv = String::from("dim,endo_degree,multiplicity,faithful\n");
    for fac in &series.factors {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fac.descriptor.dim, fac.descriptor.endo_degree, fac.multiplicity, fac.descriptor.faithful
        ));
    }
    Ok(Artifact { result, exit: 0, csv: Some(csv) })
}

fn cmd_cohom(flags: &RunFlags, group: &str, field: u64, oracle: bool) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let f = field_of_order(field)?;
    let reg = GModule::regular(g.clone(), f, flags.cap_chop)?;
    let series = chop_with_cap(&reg, flags.seed, flags.cap_chop)?;
    let mut factors = Vec::new();
    let mut csv = String::from("dim,endo_degree,multiplicity,h1\n");
    for fac in &series.factors {
        let (h1, _) = h1_dim(&fac.module)?;
        let mut v = descriptor_value(&fac.descriptor);
        v["multiplicity"] = json!(fac.multiplicity);
        v["h1"] = json!(h1);
        if oracle {
            v["h1_bar"] = json!(h1_bar_oracle(&fac.module)?);
        }
        csv.push_str(&format!(
            "{},{},{},{h1}\n",
            fac.descriptor.dim, fac.descriptor.endo_degree, fac.multiplicity
        ));
        factors.push(v);
    }
    let result = json!({
        "group": g.kind_summary(),
        "factors": factors,
    });
    Ok(Artifact { result, exit: 0, csv: Some(csv) })
}

fn cmd_lh1(flags: &RunFlags, group: &str, bound: u64) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let witness = lh1_search(&g, u128::from(bound), flags.seed, flags.cap_chop)?;
    let witness = witness.map(|w| {
        json!({
            "size": w.size as u64,
            "p": w.p,
            "k": w.k,
            "dim": w.dim,
            "h1": w.h1,
        })
    });
    Ok(Artifact::plain(json!({
        "group": g.kind_summary(),
        "bound": bound,
        "witness": witness,
    })))
}

fn cmd_chief(flags: &RunFlags, group: &str, greatest: bool) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let tie = if greatest { TieBreak::Greatest } else { TieBreak::Least };
    let series = chief_series(&g, tie)?;
    let factors: Vec<Value> = series
        .factors
        .iter()
        .map(|fac| match &fac.kind {
            ChiefFactorKind::Abelian { descriptor, .. } => json!({
                "order": fac.order,
                "frattini": fac.frattini,
                "abelian": true,
                "p": descriptor.p,
                "dim": descriptor.dim,
            }),
            ChiefFactorKind::NonAbelian { simple_order, copies, acting } => json!({
                "order": fac.order,
                "frattini": fac.frattini,
                "abelian": false,
                "simple_order": simple_order,
                "copies": copies,
                "acting_order": acting.order(),
            }),
        })
        .collect();
    let chain_orders: Vec<usize> = series.chain.iter().map(|c| c.len()).collect();
    Ok(Artifact::plain(json!({
        "group": g.kind_summary(),
        "order": g.order(),
        "tie_break": if greatest { "greatest" } else { "least" },
        "chain_orders": chain_orders,
        "factors": factors,
    })))
}

fn cmd_crown(flags: &RunFlags, group: &str) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let (sup, witness) = fp1_sup(&g, flags.seed, flags.cap_chop)?;
    let witness = witness.map(|d| json!({"p": d.p, "k": d.k, "dim": d.dim}));
    Ok(Artifact::plain(json!({
        "group": g.kind_summary(),
        "fp1_sup": sup,
        "witness": witness,
    })))
}

fn cmd_epi(flags: &RunFlags, group: &str, target: &str, budget: u64) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let t = build_group(target, flags)?;
    let census = epi_census(&g, &t, None, u128::from(budget))?;
    Ok(Artifact::plain(json!({
        "group": g.kind_summary(),
        "target": t.kind_summary(),
        "epis": census.epis,
        "classes": census.classes,
    })))
}

fn cmd_series(
    flags: &RunFlags,
    group: &str,
    field: u64,
    degree: usize,
    eval_c: Option<u32>,
) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let f = field_of_order(field)?;
    let gi = irreducibles(&g, &f, degree, flags.seed, flags.cap_chop, None)?;
    let series = series_from_counts(&gi.table, degree)?;
    let coefficients: Vec<u64> = (1..=degree).map(|n| series.coeff(n)).collect();
    let mut result = json!({
        "group": gi.table.group,
        "q": field,
        "degree": degree,
        "coefficients": coefficients,
    });
    if let Some(c) = eval_c {
        let value = series_product_eval(std::slice::from_ref(&series), degree, field, c);
        result["evaluation"] = json!({"c": c, "value": value.to_string()});
    }
    let mut csv = String::from("n,coefficient\n");
    for n in 1..=degree {
        csv.push_str(&format!("{n},{}\n", series.coeff(n)));
    }
    Ok(Artifact { result, exit: 0, csv: Some(csv) })
}

fn cmd_check(flags: &RunFlags, group: &str, field: u64) -> Result<Artifact> {
    let g = build_group(group, flags)?;
    let f = field_of_order(field)?;
    let mut items: Vec<(String, bool, String)> = Vec::new();

    let reg = GModule::regular(g.clone(), f.clone(), flags.cap_chop)?;
    let mut keysets = Vec::new();
    let mut conserved = true;
    for offset in 0..3 {
        let series = chop_with_cap(&reg, flags.seed + offset, flags.cap_chop)?;
        if series.total_dim() != g.order() {
            conserved = false;
        }
        let mut keys: Vec<(usize, (usize, usize, Vec<u16>))> = series
            .factors
            .iter()
            .map(|fac| (fac.multiplicity, fac.descriptor.sort_key()))
            .collect();
        keys.sort();
        keysets.push(keys);
    }
    items.push((
        "chop conservation".into(),
        conserved,
        format!("factor dimensions sum to |G| = {}", g.order()),
    ));
    items.push((
        "seed independence".into(),
        keysets.windows(2).all(|w| w[0] == w[1]),
        "identical factor multiset over three seeds".into(),
    ));

    if g.order() % (f.p as usize) != 0 {
        let series = chop_with_cap(&reg, flags.seed, flags.cap_chop)?;
        let total: usize = series
            .factors
            .iter()
            .map(|fac| {
                fac.descriptor.dim * fac.descriptor.dim / fac.descriptor.endo_degree
            })
            .sum();
        items.push((
            "semisimple accounting".into(),
            total == g.order(),
            format!("sum of dim^2/e over classes = {total}, |G| = {}", g.order()),
        ));
    }

    if g.order() <= 200 {
        let series = chop_with_cap(&reg, flags.seed, flags.cap_chop)?;
        let mut agree = true;
        for fac in series.factors.iter().filter(|fac| fac.descriptor.dim <= 4) {
            let (prop, _) = h1_dim(&fac.module)?;
            if prop != h1_bar_oracle(&fac.module)? {
                agree = false;
            }
        }
        items.push((
            "cohomology engines agree".into(),
            agree,
            "propagation equals bar resolution on factors of dim <= 4".into(),
        ));
    }

    let passed = items.iter().all(|(_, ok, _)| *ok);
    let rows: Vec<Value> = items
        .iter()
        .map(|(label, ok, detail)| json!({"label": label, "passed": ok, "detail": detail}))
        .collect();
    Ok(Artifact {
        result: json!({
            "group": g.kind_summary(),
            "q": field,
            "passed": passed,
            "items": rows,
        }),
        exit: u8::from(!passed),
        csv: None,
    })
}

fn suite_value(report: &SuiteReport) -> Value {
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|i| json!({"label": i.label, "passed": i.passed, "detail": i.detail}))
        .collect();
    json!({"suite": report.suite, "passed": report.passed(), "items": items})
}

fn cmd_verify(flags: &RunFlags, suite: &str) -> Result<Artifact> {
    let cfg = VerifyConfig {
        seed: flags.seed,
        enum_cap: flags.cap_enum,
        chop_cap: flags.cap_chop,
    };
    let reports: Vec<SuiteReport> = if suite == "all" {
        SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, &cfg))
            .collect::<Result<_>>()?
    } else {
        vec![run_suite(suite, &cfg)?]
    };
    let passed = reports.iter().all(SuiteReport::passed);
    let suites: Vec<Value> = reports.iter().map(suite_value).collect();
    Ok(Artifact {
        result: json!({"passed": passed, "suites": suites}),
        exit: u8::from(!passed),
        csv: None,
    })
}

/// The canonical request: subcommand, arguments, and the run configuration.
/// Its serialization keys the cache.
fn request_value(cli: &Cli) -> Value {
    let (name, args) = match &cli.command {
        Command::Irr { group, field, maxdim } => {
            ("irr", json!({"group": group, "field": field, "maxdim": maxdim}))
        }
        Command::Chop { group, field, perm, .. } => {
            ("chop", json!({"group": group, "field": field, "module": if *perm { "permutation" } else { "regular" }}))
        }
        Command::Cohom { group, field, oracle } => {
            ("cohom", json!({"group": group, "field": field, "oracle": oracle}))
        }
        Command::Lh1 { group, bound } => ("lh1", json!({"group": group, "bound": bound})),
        Command::Chief { group, greatest } => {
            ("chief", json!({"group": group, "greatest": greatest}))
        }
        Command::Crown { group } => ("crown", json!({"group": group})),
        Command::Epi { group, target, budget } => {
            ("epi", json!({"group": group, "target": target, "budget": budget}))
        }
        Command::Series { group, field, degree, eval_c } => {
            ("series", json!({"group": group, "field": field, "degree": degree, "eval_c": eval_c}))
        }
        Command::Check { group, field } => ("check", json!({"group": group, "field": field})),
        Command::Verify { suite } => ("verify", json!({"suite": suite})),
    };
    json!({
        "command": name,
        "args": args,
        "seed": cli.flags.seed,
        "cap_enum": cli.flags.cap_enum,
        "cap_chop": cli.flags.cap_chop,
        "format": match cli.flags.format { Format::Json => "json", Format::Csv => "csv" },
    })
}

fn cacheable(command: &Command) -> bool {
    !matches!(command, Command::Check { .. } | Command::Verify { .. })
}

fn render(cli: &Cli, artifact: &Artifact) -> Result<Vec<u8>> {
    match cli.flags.format {
        Format::Json => {
            let envelope = json!({
                "command": request_value(cli)["command"],
                "config": {
                    "seed": cli.flags.seed,
                    "cap_enum": cli.flags.cap_enum,
                    "cap_chop": cli.flags.cap_chop,
                },
                "result": artifact.result,
            });
            let mut body = serde_json::to_string_pretty(&envelope)
                .map_err(|e| Error::Invalid(format!("serialization: {e}")))?;
            body.push('\n');
            Ok(body.into_bytes())
        }
        Format::Csv => {
            let rows = artifact.csv.as_ref().ok_or_else(|| {
                Error::Invalid("csv output is not defined for this subcommand".into())
            })?;
            let header = format!(
                "# seed={} cap_enum={} cap_chop={}\n",
                cli.flags.seed, cli.flags.cap_enum, cli.flags.cap_chop
            );
            Ok((header + rows).into_bytes())
        }
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("REPGROWTH_CACHE_DIR").map(PathBuf::from)
}

fn cache_path(request: &Value, ext: &str) -> Option<PathBuf> {
    let dir = cache_dir()?;
    let canonical = request.to_string();
    let digest = Sha256::digest(canonical.as_bytes());
    let mut name = String::with_capacity(64 + 1 + ext.len());
    for byte in digest {
        name.push_str(&format!("{byte:02x}"));
    }
    name.push('.');
    name.push_str(ext);
    Some(dir.join(name))
}

fn cache_read(request: &Value, ext: &str) -> Result<Option<Vec<u8>>> {
    let Some(path) = cache_path(request, ext) else { return Ok(None) };
    match std::fs::read(&path) {
        Ok(bytes) => Ok(Some(bytes)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::Invalid(format!("cache read {}: {e}", path.display()))),
    }
}

fn cache_write(request: &Value, ext: &str, body: &[u8]) -> Result<()> {
    let Some(path) = cache_path(request, ext) else { return Ok(()) };
    let dir = path.parent().expect("cache path has a parent");
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Invalid(format!("cache dir {}: {e}", dir.display())))?;
    std::fs::write(&path, body)
        .map_err(|e| Error::Invalid(format!("cache write {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, body: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::Invalid(format!("write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body)
            .map_err(|e| Error::Invalid(format!("stdout: {e}"))),
    }
}
