//! The `hbasis` command line.
//!
//! Every data payload is a basis file (TOML) or a CSV table, written to
//! standard output or to `--emit FILE`. Each one embeds a manifest. CSV
//! payloads carry it as leading `#` lines. Wall time and other diagnostics go
//! to standard error, so payloads are byte-identical across reruns and thread
//! counts.
//!
//! Exit codes: 0 ok, 1 verification or optimality failure, 2 invalid or
//! infeasible input, 3 internal guard (overflow, budget, size limit).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toml::{Table, Value};

use crate::bounds::{
    hofmeister_lower, reports_for_hk, reports_for_hn, rohrbach, BoundReport, BoundValue,
};
use crate::construct::{build_theorem1, plan_params, ConstructionResult};
use crate::cover::{complement_size_bound, k_complement};
use crate::error::Error;
use crate::format::{
    emit_table, fmt_real, round_real, BasisDocument, Manifest, TableKind, TableRow, Verification,
};
use crate::search::{extremal_n, oracle_exhaustive, SearchResult};
use crate::sidon::{bose_chowla, is_bk};
use crate::sumset::{verify_basis, ResidueSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

pub const DEFAULT_BUDGET: u64 = 50_000_000;

const TOOL: &str = "hbasis";

#[derive(Debug, Parser)]
#[command(
    name = "hbasis",
    version,
    about = "Additive h-bases: build, verify, bound and search"
)]
pub struct Cli {
    /// Write the payload to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub emit: Option<PathBuf>,
    /// Worker threads for the parallel sumset kernels.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Seed for randomly generated test instances.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify a composite h-basis of [0, n].
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u32,
        #[arg(long, requires = "a")]
        k: Option<u32>,
        #[arg(long, requires = "k")]
        a: Option<u32>,
        /// Choose k and a automatically (the default).
        #[arg(long, conflicts_with_all = ["k", "a"])]
        auto: bool,
    },
    /// Check that the set in a basis file is an h-basis of [0, n].
    Verify {
        /// Defaults to `h` from the file.
        #[arg(long)]
        h: Option<u32>,
        /// Defaults to `n` from the file.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_name = "FILE")]
        set: PathBuf,
    },
    /// Bose–Chowla B_k set over GF(p^k).
    Sidon {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Greedy k-complement of a subset of Z_q.
    Complement {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        /// Residues read from the `elements` of a basis file.
        #[arg(
            long,
            value_name = "FILE",
            conflicts_with = "random_size",
            required_unless_present = "random_size"
        )]
        set: Option<PathBuf>,
        /// Draw this many distinct residues using --seed.
        #[arg(long, value_name = "S")]
        random_size: Option<u64>,
    },
    /// Evaluate every bound that applies to (h, k) or (h, n).
    Bounds {
        #[arg(long)]
        h: u32,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        k: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Exact n(h, k) by branch and bound.
    Search {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Use plain enumeration instead of branch and bound.
        #[arg(long)]
        oracle: bool,
    },
    /// CSV of n(h, k) for all 1 ≤ h ≤ h_max, 1 ≤ k ≤ k_max.
    Table {
        #[arg(long)]
        h_max: u32,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Verify { .. } => "verify",
            Command::Sidon { .. } => "sidon",
            Command::Complement { .. } => "complement",
            Command::Bounds { .. } => "bounds",
            Command::Search { .. } => "search",
            Command::Table { .. } => "table",
        }
    }
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Counterexample { .. } => EXIT_FAILED,
        Error::Overflow(_) | Error::TooLarge(_) => EXIT_GUARD,
        _ => EXIT_INVALID,
    }
}

/// A finished payload plus the exit code it reports.
struct Output {
    text: String,
    code: i32,
    notes: Vec<String>,
}

impl Output {
    fn new(text: String, code: i32) -> Self {
        Output {
            text,
            code,
            notes: Vec::new(),
        }
    }
}

fn int(v: u64) -> Value {
    i64::try_from(v)
        .map(Value::Integer)
        .unwrap_or_else(|_| Value::String(v.to_string()))
}

fn ints(vs: impl IntoIterator<Item = u64>) -> Value {
    Value::Array(vs.into_iter().map(int).collect())
}

fn manifest(subcommand: &str, parameters: Table, outcome: i32) -> Manifest {
    Manifest {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: subcommand.into(),
        parameters,
        outcome,
    }
}

fn csv_with_manifest(m: &Manifest, body: String) -> String {
    let mut head = format!(
        "# tool = {}\n# version = {}\n# subcommand = {}\n",
        m.tool, m.version, m.subcommand
    );
    for (key, value) in &m.parameters {
        head.push_str(&format!("# {key} = {value}\n"));
    }
    head.push_str(&format!("# outcome = {}\n", m.outcome));
    head + &body
}

fn read_document(path: &Path) -> Result<BasisDocument, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    BasisDocument::parse(&text)
}

/// Parses `argv` (program name first) and runs it. Payload goes to `out`
/// unless `--emit` is given; diagnostics go to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let started = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidParameter(
            "--threads must be at least 1".into(),
        )),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli))),
        None => dispatch(&cli),
    };
    let _ = writeln!(
        err,
        "{TOOL} {}: wall time {:.3} s",
        cli.command.name(),
        started.elapsed().as_secs_f64()
    );

    match result {
        Ok(output) => {
            for note in &output.notes {
                let _ = writeln!(err, "{note}");
            }
            let written = match &cli.emit {
                Some(path) => std::fs::write(path, &output.text)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => out.write_all(output.text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => output.code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Construct { n, h, k, a, .. } => construct(*n, *h, k.zip(*a)),
        Command::Verify { h, n, set } => verify(*h, *n, set),
        Command::Sidon { p, k } => sidon(*p, *k),
        Command::Complement {
            q,
            k,
            set,
            random_size,
        } => complement(*q, *k, set.as_deref(), *random_size, cli.seed.unwrap_or(0)),
        Command::Bounds { h, k, n, format } => bounds(*h, *k, *n, *format),
        Command::Search {
            h,
            k,
            budget,
            oracle,
        } => search(*h, *k, *budget, *oracle),
        Command::Table {
            h_max,
            k_max,
            budget,
        } => table(*h_max, *k_max, *budget),
    }
}

fn construct(n: u64, h: u32, overrides: Option<(u32, u32)>) -> Result<Output, Error> {
    let plan = plan_params(n, h, overrides)?;
    let result = build_theorem1(&plan)?;
    let code = if result.verified() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };

    let mut params = Table::new();
    params.insert("n".into(), int(n));
    params.insert("h".into(), int(h as u64));
    if let Some((k, a)) = overrides {
        params.insert("k".into(), int(k as u64));
        params.insert("a".into(), int(a as u64));
    }
    let doc = BasisDocument {
        h: Some(h),
        n: Some(n),
        elements: result.basis.elements().to_vec(),
        provenance: Some(construction_provenance(&result)),
        verification: Some(Verification {
            ok: result.verified(),
            checked_from: 0,
            checked_to: n,
            first_gap: result.certificate.first_gap,
        }),
        ledger: Some(construction_ledger(&result)),
        manifest: Some(manifest("construct", params, code)),
    };
    let mut output = Output::new(doc.to_text()?, code);
    if let Some(gap) = result.certificate.first_gap {
        output
            .notes
            .push(format!("verification failed: first gap {gap}"));
    }
    Ok(output)
}

fn construction_provenance(result: &ConstructionResult) -> Table {
    let plan = &result.plan;
    let mut t = Table::new();
    t.insert("construction".into(), Value::String("composite".into()));
    t.insert(
        "parameters".into(),
        Value::String(plan.feasibility.as_str().into()),
    );
    t.insert("p".into(), int(plan.p));
    t.insert("k".into(), int(plan.k as u64));
    t.insert("a".into(), int(plan.a as u64));
    t.insert("m".into(), int(plan.m));
    t.insert("q".into(), int(plan.q));
    t.insert("sidon_prime".into(), int(plan.sidon_prime));
    t.insert("sidon_order".into(), int(plan.sidon_order() as u64));
    t.insert("digit_base".into(), int(plan.predicted.digit_base));
    t.insert("tau".into(), Value::Float(round_real(plan.tau)));
    t
}

fn construction_ledger(result: &ConstructionResult) -> Table {
    let sizes = result.sizes();
    let plan = &result.plan;
    let mut t = Table::new();
    t.insert("size_a".into(), int(sizes.a as u64));
    t.insert("size_b".into(), int(sizes.b as u64));
    t.insert("size_c".into(), int(sizes.c as u64));
    t.insert("size_d".into(), int(sizes.d as u64));
    t.insert("overlap".into(), int(sizes.overlap() as u64));
    t.insert("size_g".into(), int(sizes.total as u64));
    t.insert("predicted_size_g".into(), int(plan.predicted.total()));
    t.insert(
        "ratio_to_nth_root".into(),
        Value::Float(round_real(result.ratio())),
    );
    t.insert("residues_of_h".into(), int(result.residues_of_h as u64));
    t.insert(
        "complement_family_sizes".into(),
        ints(
            result
                .complement
                .family_sizes()
                .into_iter()
                .map(|s| s as u64),
        ),
    );
    t.insert(
        "complement_complete".into(),
        Value::Boolean(result.complement.complete),
    );
    t.insert(
        "complement_over_budget".into(),
        Value::Boolean(result.complement.over_budget),
    );
    t
}

fn verify(h: Option<u32>, n: Option<u64>, path: &Path) -> Result<Output, Error> {
    let input = read_document(path)?;
    let h = match h {
        Some(h) => h,
        None => input.require_h()?,
    };
    let n = match n {
        Some(n) => n,
        None => input.require_n()?,
    };
    let basis = input.basis()?;
    let cert = verify_basis(&basis, h, n)?;
    let code = if cert.ok { EXIT_OK } else { EXIT_FAILED };

    let mut params = Table::new();
    params.insert("h".into(), int(h as u64));
    params.insert("n".into(), int(n));
    let doc = BasisDocument {
        h: Some(h),
        n: Some(n),
        elements: basis.elements().to_vec(),
        provenance: input.provenance,
        verification: Some(Verification {
            ok: cert.ok,
            checked_from: 0,
            checked_to: n,
            first_gap: cert.first_gap,
        }),
        ledger: None,
        manifest: Some(manifest("verify", params, code)),
    };
    Ok(Output::new(doc.to_text()?, code))
}

fn sidon(p: u64, k: u32) -> Result<Output, Error> {
    let set = bose_chowla(p, k)?;
    let modular = is_bk(&set.elements, k, Some(set.order_modulus));
    let integer = is_bk(&set.elements, k, None);
    let code = if modular && integer {
        EXIT_OK
    } else {
        EXIT_FAILED
    };

    let mut provenance = Table::new();
    provenance.insert("construction".into(), Value::String("bose-chowla".into()));
    provenance.insert("p".into(), int(p));
    provenance.insert("k".into(), int(k as u64));
    provenance.insert("modulus".into(), ints(set.field.modulus.iter().copied()));
    provenance.insert("order_modulus".into(), int(set.order_modulus));
    let mut ledger = Table::new();
    ledger.insert("size".into(), int(set.elements.len() as u64));
    ledger.insert("bk_modular".into(), Value::Boolean(modular));
    ledger.insert("bk_integer".into(), Value::Boolean(integer));

    let mut params = Table::new();
    params.insert("p".into(), int(p));
    params.insert("k".into(), int(k as u64));
    let doc = BasisDocument {
        h: None,
        n: None,
        elements: set.elements,
        provenance: Some(provenance),
        verification: None,
        ledger: Some(ledger),
        manifest: Some(manifest("sidon", params, code)),
    };
    Ok(Output::new(doc.to_text()?, code))
}

fn complement(
    q: u64,
    k: u32,
    set: Option<&Path>,
    random_size: Option<u64>,
    seed: u64,
) -> Result<Output, Error> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    let mut params = Table::new();
    params.insert("q".into(), int(q));
    params.insert("k".into(), int(k as u64));
    let base = match (set, random_size) {
        (Some(path), _) => ResidueSet::new(q, read_document(path)?.elements)?,
        (None, Some(size)) => {
            if size == 0 || size > q {
                return Err(Error::InvalidParameter(format!(
                    "random size must lie in [1, {q}]"
                )));
            }
            params.insert("random_size".into(), int(size));
            params.insert("seed".into(), int(seed));
            let len = usize::try_from(q).map_err(|_| Error::TooLarge("q".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picks = rand::seq::index::sample(&mut rng, len, size as usize);
            ResidueSet::new(q, picks.into_iter().map(|i| i as u64))?
        }
        (None, None) => {
            return Err(Error::InvalidParameter(
                "need --set or --random-size".into(),
            ))
        }
    };
    let family = k_complement(&base, k)?;
    let code = if family.complete {
        EXIT_OK
    } else {
        EXIT_FAILED
    };

    let mut ledger = Table::new();
    ledger.insert(
        "families".into(),
        Value::Array(
            family
                .families
                .iter()
                .map(|f| ints(f.members().iter().copied()))
                .collect(),
        ),
    );
    ledger.insert(
        "family_sizes".into(),
        ints(family.family_sizes().into_iter().map(|s| s as u64)),
    );
    ledger.insert("total_shifts".into(), int(family.total_shifts() as u64));
    ledger.insert(
        "size_bound".into(),
        int(complement_size_bound(q, base.len() as u64, k)),
    );
    ledger.insert("round_budget".into(), int(family.round_budget));
    ledger.insert("final_budget".into(), int(family.final_budget));
    ledger.insert("complete".into(), Value::Boolean(family.complete));
    ledger.insert("over_budget".into(), Value::Boolean(family.over_budget));

    let doc = BasisDocument {
        h: None,
        n: None,
        elements: base.members().to_vec(),
        provenance: None,
        verification: None,
        ledger: Some(ledger),
        manifest: Some(manifest("complement", params, code)),
    };
    Ok(Output::new(doc.to_text()?, code))
}

fn bound_row(h: u32, input: &'static str, input_value: u64, r: &BoundReport) -> TableRow {
    TableRow::Bound {
        h,
        input,
        input_value,
        name: r.name,
        direction: r.direction.as_str(),
        value: fmt_real(r.value.to_f64()),
        exact: r.value.exact_text().unwrap_or_default(),
        dropped: r.asymptotic_terms_dropped.unwrap_or_default().to_string(),
        precondition_met: r
            .precondition_met
            .map(|b| b.to_string())
            .unwrap_or_default(),
    }
}

fn bounds(h: u32, k: Option<u64>, n: Option<u64>, format: OutputFormat) -> Result<Output, Error> {
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    let (input, input_value, reports) = match (k, n) {
        (Some(k), _) => ("k", k, reports_for_hk(h, k)),
        (None, Some(n)) => ("n", n, reports_for_hn(h, n)),
        (None, None) => return Err(Error::InvalidParameter("need --k or --n".into())),
    };
    let mut params = Table::new();
    params.insert("h".into(), int(h as u64));
    params.insert(input.into(), int(input_value));
    params.insert(
        "format".into(),
        Value::String(match format {
            OutputFormat::Csv => "csv".into(),
            OutputFormat::Text => "text".into(),
        }),
    );
    let m = manifest("bounds", params, EXIT_OK);

    let text = match format {
        OutputFormat::Csv => {
            let rows: Vec<TableRow> = reports
                .iter()
                .map(|r| bound_row(h, input, input_value, r))
                .collect();
            csv_with_manifest(&m, emit_table(TableKind::Bound, &rows)?)
        }
        OutputFormat::Text => {
            let entries = reports
                .iter()
                .map(|r| {
                    let mut t = Table::new();
                    t.insert("name".into(), Value::String(r.name.into()));
                    t.insert(
                        "direction".into(),
                        Value::String(r.direction.as_str().into()),
                    );
                    t.insert("value".into(), Value::String(fmt_real(r.value.to_f64())));
                    if let Some(exact) = r.value.exact_text() {
                        t.insert("exact".into(), Value::String(exact));
                    }
                    if let Some(d) = r.asymptotic_terms_dropped {
                        t.insert("asymptotic_terms_dropped".into(), Value::String(d.into()));
                    }
                    if let Some(met) = r.precondition_met {
                        t.insert("precondition_met".into(), Value::Boolean(met));
                    }
                    Value::Table(t)
                })
                .collect();
            let mut doc = Table::new();
            doc.insert("h".into(), int(h as u64));
            doc.insert(input.into(), int(input_value));
            doc.insert("bound".into(), Value::Array(entries));
            doc.insert(
                "manifest".into(),
                Value::try_from(&m).map_err(|e| Error::Parse(e.to_string()))?,
            );
            toml::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))?
        }
    };
    Ok(Output::new(text, EXIT_OK))
}

fn run_search(h: u32, k: usize, budget: u64, oracle: bool) -> Result<SearchResult, Error> {
    if oracle {
        oracle_exhaustive(h, k, None)
    } else {
        extremal_n(h, k, budget)
    }
}

fn search(h: u32, k: usize, budget: u64, oracle: bool) -> Result<Output, Error> {
    let res = run_search(h, k, budget, oracle)?;
    let code = if res.proof_of_optimality {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let (lower, upper) = rohrbach(h, k as u64);

    let mut params = Table::new();
    params.insert("h".into(), int(h as u64));
    params.insert("k".into(), int(k as u64));
    params.insert("budget".into(), int(budget));
    params.insert("oracle".into(), Value::Boolean(oracle));
    let mut ledger = Table::new();
    ledger.insert(
        "method".into(),
        Value::String(
            if oracle {
                "exhaustive"
            } else {
                "branch-and-bound"
            }
            .into(),
        ),
    );
    ledger.insert("k".into(), int(k as u64));
    ledger.insert("value".into(), int(res.value));
    ledger.insert("nodes_explored".into(), int(res.nodes_explored));
    ledger.insert(
        "proof_of_optimality".into(),
        Value::Boolean(res.proof_of_optimality),
    );
    ledger.insert(
        "rohrbach_lower".into(),
        Value::String(BoundValue::Exact(lower).to_string()),
    );
    ledger.insert("rohrbach_upper".into(), Value::String(upper.to_string()));
    let doc = BasisDocument {
        h: Some(h),
        n: Some(res.value),
        elements: res.witness.elements().to_vec(),
        provenance: None,
        verification: None,
        ledger: Some(ledger),
        manifest: Some(manifest("search", params, code)),
    };
    Ok(Output::new(doc.to_text()?, code))
}

fn table(h_max: u32, k_max: usize, budget: u64) -> Result<Output, Error> {
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for h in 1..=h_max {
        for k in 1..=k_max {
            let res = extremal_n(h, k, budget)?;
            if !res.proof_of_optimality {
                code = EXIT_FAILED;
            }
            let (lower, upper) = rohrbach(h, k as u64);
            rows.push(TableRow::Search {
                h,
                k: k as u64,
                value: res.value,
                rohrbach_lower: BoundValue::Exact(lower).to_string(),
                rohrbach_upper: upper.to_string(),
                hofmeister_lower: BoundValue::Exact(hofmeister_lower(h, k as u64)).to_string(),
                proof_of_optimality: res.proof_of_optimality,
                nodes_explored: res.nodes_explored,
                witness: res.witness.elements().to_vec(),
            });
        }
    }
    let mut params = Table::new();
    params.insert("h_max".into(), int(h_max as u64));
    params.insert("k_max".into(), int(k_max as u64));
    params.insert("budget".into(), int(budget));
    let m = manifest("table", params, code);
    Ok(Output::new(
        csv_with_manifest(&m, emit_table(TableKind::Search, &rows)?),
        code,
    ))
}
