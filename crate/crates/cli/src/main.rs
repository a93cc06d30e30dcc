//! `wmas` - non-existence certificates for perfect codes in weakly metric
//! association schemes, exact dispersion profiles, desk-scale scheme
//! verification, and m-distance analysis of edge-colored graphs.
//!
//! Exit codes: 0 success, 1 violated invariant or failed check, 2 bad input.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wmas_core::certify::{
    self, master_test, nrt_threshold, reproduce_table, sumrank_threshold, sz_empirical_check,
    Regime, TableRow,
};
use wmas_core::dispersion;
use wmas_core::mdistance::{
    box_domain, is_l1_compatible, is_m_distance_regular, m_distance_matrices, to_scheme,
    triangle_inequality_check, ColoredGraph, GraphFile, MDistanceRegularity, MonomialOrder,
};
use wmas_core::scheme::{
    build_scheme_capped, is_perfect_code, lloyd_theorem_check, verify_axioms, CodeFile, SchemeDump,
    SchemeFamilyParams, DEFAULT_SIZE_CAP,
};

#[derive(Parser)]
#[command(
    name = "wmas",
    version,
    about = "Perfect-code non-existence certificates in weakly metric association schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the master non-existence test and print a certificate.
    Certify(CertifyArgs),
    /// Recompute one of the bundled reference tables from scratch.
    Table(TableArgs),
    /// Exact dispersion profile Π(0..e_max) of a scheme family.
    Dispersion(DispersionArgs),
    /// Non-existence threshold calculators.
    Threshold(ThresholdArgs),
    /// Build, verify, or export explicit desk-scale schemes.
    Scheme(SchemeArgs),
    /// Perfect-code checks against a JSON code file.
    Code(CodeArgs),
    /// Empirical Schwartz-Zippel zero-count check on random polynomials.
    Szcheck(SzArgs),
    /// m-distance analysis of an edge-colored graph.
    Mdist(MdistArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Lee,
    Sumrank,
    Mixed,
    Nrt,
    Johnson,
    Homogeneous,
    Clarkliang,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Tables,
    Corollary1,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Tables => Regime::Tables,
            RegimeArg::Corollary1 => Regime::Corollary1,
        }
    }
}

/// Scheme-family parameters shared by several subcommands. Which fields are
/// required depends on the family.
#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Alphabet / field size (lee, nrt, johnson, sumrank).
    #[arg(long)]
    q: Option<u32>,
    /// Length (lee, nrt, homogeneous, johnson).
    #[arg(long)]
    n: Option<u32>,
    /// Number of sum-rank blocks (uniform d x d blocks unless --blocks).
    #[arg(long)]
    t: Option<u32>,
    /// Per-block rank bound for uniform sum-rank blocks.
    #[arg(long)]
    d: Option<u32>,
    /// NRT block length.
    #[arg(long)]
    r: Option<u32>,
    /// Johnson weight.
    #[arg(long)]
    w: Option<u32>,
    /// Homogeneous alphabet exponent (alphabet Z_{2^k}).
    #[arg(long)]
    k: Option<u32>,
    /// Mixed block sizes as a comma list, e.g. --bounds 10,10,10
    /// (alphabet sizes default to 2; they do not affect Π or the bound).
    #[arg(long, value_delimiter = ',')]
    bounds: Option<Vec<u32>>,
    /// Explicit blocks "NxM,NxM" (sum-rank: rows x cols; mixed: length x alphabet).
    #[arg(long)]
    blocks: Option<String>,
}

impl FamilyArgs {
    fn resolve(&self, default_lee_n: Option<u32>) -> Result<SchemeFamilyParams> {
        let need = |v: Option<u32>, what: &str| {
            v.ok_or_else(|| anyhow!("--{what} is required for --family {}", self.family_name()))
        };
        let params = match self.family {
            FamilyKind::Lee => SchemeFamilyParams::Lee {
                q: need(self.q, "q")?,
                n: match (self.n, default_lee_n) {
                    (Some(n), _) => n,
                    (None, Some(n)) => n,
                    (None, None) => bail!("--n is required for --family lee"),
                },
            },
            FamilyKind::Nrt => SchemeFamilyParams::Nrt {
                q: self.q.unwrap_or(2),
                n: need(self.n, "n")?,
                r: need(self.r, "r")?,
            },
            FamilyKind::Sumrank => {
                let blocks = if let Some(spec) = &self.blocks {
                    parse_blocks(spec)?
                } else {
                    let t = need(self.t, "t")?;
                    let d = need(self.d, "d")?;
                    vec![(d, d); t as usize]
                };
                SchemeFamilyParams::Sumrank {
                    q: self.q.unwrap_or(2),
                    blocks,
                }
            }
            FamilyKind::Mixed => {
                let blocks = if let Some(spec) = &self.blocks {
                    parse_blocks(spec)?
                } else if let Some(bounds) = &self.bounds {
                    bounds.iter().map(|&b| (b, 2)).collect()
                } else {
                    bail!("--bounds or --blocks is required for --family mixed");
                };
                SchemeFamilyParams::Mixed { blocks }
            }
            FamilyKind::Johnson => {
                let w = need(self.w, "w")?;
                SchemeFamilyParams::Johnson {
                    q: self.q.unwrap_or(3),
                    w,
                    n: self.n.unwrap_or(2 * w + 1),
                }
            }
            FamilyKind::Homogeneous => SchemeFamilyParams::Homogeneous {
                k: need(self.k, "k")?,
                n: need(self.n, "n")?,
            },
            FamilyKind::Clarkliang => SchemeFamilyParams::Clarkliang,
        };
        params.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(params)
    }

    fn family_name(&self) -> &'static str {
        match self.family {
            FamilyKind::Lee => "lee",
            FamilyKind::Sumrank => "sumrank",
            FamilyKind::Mixed => "mixed",
            FamilyKind::Nrt => "nrt",
            FamilyKind::Johnson => "johnson",
            FamilyKind::Homogeneous => "homogeneous",
            FamilyKind::Clarkliang => "clarkliang",
        }
    }
}

fn parse_blocks(spec: &str) -> Result<Vec<(u32, u32)>> {
    spec.split(',')
        .map(|part| {
            let (a, b) = part
                .split_once(['x', 'X'])
                .ok_or_else(|| anyhow!("block '{part}' is not of the form NxM"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Covering radius e.
    #[arg(long)]
    e: u64,
    #[arg(long, value_enum, default_value = "tables")]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Which reference table to recompute (1..=4).
    #[arg(long)]
    id: u8,
    #[arg(long, value_enum, default_value = "md")]
    format: TableFormat,
}

#[derive(Args)]
struct DispersionArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    e_max: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Lee parameter s = floor(q/2).
    #[arg(long)]
    s: Option<u64>,
    /// Sum-rank ratio a = e/t.
    #[arg(long)]
    a: Option<f64>,
    /// NRT block length r.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeAction {
    Build,
    Verify,
    Eigen,
    Dump,
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(value_enum)]
    action: SchemeAction,
    #[command(flatten)]
    family: FamilyArgs,
    /// Size cap for the explicit construction.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: usize,
    /// Include the intersection-number tensor in `dump` output.
    #[arg(long)]
    with_intersection_numbers: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum CodeAction {
    /// Check a JSON code file for the perfect-code property (and the Lloyd
    /// condition on translation schemes).
    Check {
        #[arg(long)]
        file: String,
    },
}

#[derive(Args)]
struct CodeArgs {
    #[command(subcommand)]
    action: CodeAction,
}

#[derive(Args)]
struct SzArgs {
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    degree: u64,
    #[arg(long)]
    set_size: u64,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Deglex,
    Lex,
}

#[derive(Args)]
struct MdistArgs {
    /// Graph JSON: {"vertices": N, "edges": [[u, v, color], ...]}.
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value = "deglex")]
    order: OrderArg,
    /// Test m-distance-regularity and report the intersection tensor.
    #[arg(long)]
    check_regular: bool,
    /// Test L1 compatibility of the order on the attained distances.
    #[arg(long)]
    check_l1: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Certify(args) => certify_cmd(args),
        Command::Table(args) => table_cmd(args),
        Command::Dispersion(args) => dispersion_cmd(args),
        Command::Threshold(args) => threshold_cmd(args),
        Command::Scheme(args) => scheme_cmd(args),
        Command::Code(args) => code_cmd(args),
        Command::Szcheck(args) => szcheck_cmd(args),
        Command::Mdist(args) => mdist_cmd(args),
    }
}

fn certify_cmd(args: CertifyArgs) -> Result<ExitCode> {
    let family = args.family.resolve(Some(args.e as u32 + 1))?;
    let cert = master_test(&family, args.e, args.regime.into()).map_err(|e| anyhow!("{e}"))?;
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({ "certificate": cert }))?
        ),
        Format::Text => {
            println!("family:  {}", cert.family);
            println!("radius:  e = {}", cert.e);
            println!("regime:  {}", cert.regime);
            println!("Π(e):    {}", cert.pi);
            println!("bound:   e·|S|^(r-1) = {}", cert.bound);
            println!("verdict: {}", cert.verdict);
            for note in &cert.notes {
                println!("note:    {note}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn table_cmd(args: TableArgs) -> Result<ExitCode> {
    let rows = reproduce_table(args.id).map_err(|e| anyhow!("{e}"))?;
    match args.format {
        TableFormat::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        TableFormat::Csv => print_table_csv(args.id, &rows),
        TableFormat::Md => print_table_md(args.id, &rows),
    }
    Ok(ExitCode::SUCCESS)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn print_table_csv(id: u8, rows: &[TableRow]) {
    if id == 4 {
        println!("t,e,a,f_a,d,pi_minus_1,sz_bound,inequality,pi_display,bound_display,annotation");
        for r in rows {
            println!(
                "{},{},{},{:.3},{},{},{},{},{},{},{}",
                r.t.unwrap_or(0),
                r.e,
                r.a.unwrap_or(0.0),
                r.f_a.unwrap_or(0.0),
                r.d.unwrap_or(0),
                r.pi_minus_1,
                r.sz_bound,
                yes_no(r.inequality),
                r.pi_display.as_deref().unwrap_or(""),
                r.bound_display.as_deref().unwrap_or(""),
                r.annotation.as_deref().unwrap_or("")
            );
        }
    } else {
        println!("q,e,pi_minus_1,sz_bound,inequality,annotation");
        for r in rows {
            println!(
                "{},{},{},{},{},{}",
                r.q.unwrap_or(0),
                r.e,
                r.pi_minus_1,
                r.sz_bound,
                yes_no(r.inequality),
                r.annotation.as_deref().unwrap_or("")
            );
        }
    }
}

fn print_table_md(id: u8, rows: &[TableRow]) {
    if id == 4 {
        println!("| (t,e) | a | f(a) | d | Π(e)−1 | S-Z bound | Inequality |");
        println!("|---|---|---|---|---|---|---|");
        for r in rows {
            println!(
                "| ({},{}) | {} | {:.3} | {} | {} | {} | {} |",
                r.t.unwrap_or(0),
                r.e,
                r.a.unwrap_or(0.0),
                r.f_a.unwrap_or(0.0),
                r.d.unwrap_or(0),
                r.pi_display.as_deref().unwrap_or(""),
                r.bound_display.as_deref().unwrap_or(""),
                yes_no(r.inequality)
            );
        }
    } else {
        println!("| q | e | Π(e)−1 | S-Z bound | Inequality |");
        println!("|---|---|---|---|---|");
        for r in rows {
            println!(
                "| {} | {} | {} | {} | {} |",
                r.q.unwrap_or(0),
                r.e,
                r.pi_minus_1,
                r.sz_bound,
                yes_no(r.inequality)
            );
        }
    }
    for r in rows {
        if let Some(note) = &r.annotation {
            println!();
            println!("> e = {}: {note}", r.e);
        }
    }
}

fn dispersion_cmd(args: DispersionArgs) -> Result<ExitCode> {
    let family = args.family.resolve(None)?;
    let profile = dispersion::profile(&family, args.e_max).map_err(|e| anyhow!("{e}"))?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&profile)?),
        Format::Text => {
            println!("family: {}", profile.family);
            println!("{:>5} {:>24} {:>24}", "e", "Π(e)", "δ(e)");
            for (e, (v, d)) in profile.values.iter().zip(&profile.delta).enumerate() {
                println!("{e:>5} {v:>24} {d:>24}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn threshold_cmd(args: ThresholdArgs) -> Result<ExitCode> {
    match args.family {
        FamilyKind::Lee => {
            let s = args.s.context("--s is required for --family lee")?;
            if s < 2 {
                bail!("the Lee thresholds need s >= 2");
            }
            println!(
                "tables form     (s+1)·(s!)^2        = {}",
                certify::lee_threshold_tables(s)
            );
            println!(
                "corollary form  (s+1)·(s!)^(2/(s-1)) = {}",
                certify::lee_threshold_corollary(s)
            );
        }
        FamilyKind::Sumrank => {
            let a = args.a.context("--a is required for --family sumrank")?;
            let t = sumrank_threshold(a);
            println!("f(a) = (1+a)^(1+a)/a^a - 1 = {:.6}", t.exact);
            println!("linear approximation  e·a  = {:.6}", t.linear_approx);
        }
        FamilyKind::Nrt => {
            let r = args.r.context("--r is required for --family nrt")?;
            if r < 2 {
                bail!("the NRT threshold needs r >= 2");
            }
            println!("(r+1)·(r!)^(2/(r-1)) = {}", nrt_threshold(r));
        }
        _ => bail!("threshold supports --family lee|sumrank|nrt"),
    }
    Ok(ExitCode::SUCCESS)
}

fn scheme_cmd(args: SchemeArgs) -> Result<ExitCode> {
    let family = args.family.resolve(None)?;
    let scheme = build_scheme_capped(&family, args.cap).map_err(|e| anyhow!("{e}"))?;
    match args.action {
        SchemeAction::Build => {
            println!("family:      {}", family);
            println!("elements:    {}", scheme.size());
            println!("classes:     {}", scheme.class_count());
            println!("max d(i):    {}", scheme.d.iter().max().unwrap());
            println!("translation: {}", scheme.is_translation());
        }
        SchemeAction::Verify => match verify_axioms(&scheme) {
            Ok(tensor) => {
                println!(
                    "axioms hold: {} classes, intersection tensor computed ({} entries)",
                    scheme.class_count(),
                    tensor.class_count().pow(3)
                );
            }
            Err(violation) => {
                println!("axiom violation: {violation}");
                return Ok(ExitCode::FAILURE);
            }
        },
        SchemeAction::Eigen => {
            let table = scheme.eigen_table().map_err(|e| anyhow!("{e}"))?;
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
                Format::Text => {
                    println!("classes: {:?}", table.classes);
                    println!("exact:   {}", table.exact);
                    for (k, row) in table.values.iter().enumerate() {
                        let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.4}")).collect();
                        println!("P_{k:<3} {}", cells.join(" "));
                    }
                }
            }
        }
        SchemeAction::Dump => {
            let tensor = args
                .with_intersection_numbers
                .then(|| verify_axioms(&scheme))
                .transpose()
                .map_err(|v| anyhow!("axiom violation while dumping: {v}"))?;
            let dump = SchemeDump::new(&scheme, tensor.as_ref());
            println!("{}", serde_json::to_string_pretty(&dump)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn code_cmd(args: CodeArgs) -> Result<ExitCode> {
    let CodeAction::Check { file } = args.action;
    let raw = std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
    let code_file: CodeFile = serde_json::from_str(&raw).context("parsing code JSON")?;
    let scheme =
        build_scheme_capped(&code_file.space, DEFAULT_SIZE_CAP).map_err(|e| anyhow!("{e}"))?;
    let code = code_file.code();
    let report = is_perfect_code(&scheme, &code).map_err(|e| anyhow!("{e}"))?;
    println!("space:     {}", code_file.space);
    println!("codewords: {}", report.code_size);
    println!("radius:    {}", code.radius);
    println!("perfect:   {}", report.perfect);
    if let Some(witness) = &report.witness {
        println!("witness:   {witness:?}");
        return Ok(ExitCode::FAILURE);
    }
    match lloyd_theorem_check(&scheme, &code) {
        Ok(lloyd) => {
            println!(
                "lloyd:     Π(e) = {}, zero count {} >= {} required: {}",
                lloyd.pi,
                lloyd.zero_count,
                lloyd.required_zeros,
                if lloyd.pass { "pass" } else { "FAIL" }
            );
            if !lloyd.pass {
                return Ok(ExitCode::FAILURE);
            }
        }
        Err(wmas_core::Error::Unsupported { .. }) => {
            println!("lloyd:     skipped (no eigenvalue support for this scheme)");
        }
        Err(e) => return Err(anyhow!("{e}")),
    }
    Ok(ExitCode::SUCCESS)
}

fn szcheck_cmd(args: SzArgs) -> Result<ExitCode> {
    if args.vars < 1 || args.trials < 1 || args.degree < 1 || args.set_size < 1 {
        bail!("--vars, --degree, --set-size, and --trials must be positive");
    }
    let report = sz_empirical_check(
        args.vars,
        args.degree,
        args.set_size,
        args.trials,
        args.seed,
    );
    println!(
        "bound e·|S|^(n-1) = {}; max zero count {} ({}% of bound) over {} trials",
        report.bound,
        report.zero_counts.iter().max().unwrap(),
        (report.max_fill * 100.0).round(),
        report.trials
    );
    if report.all_within_bound {
        println!("all trials within the bound");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("BOUND EXCEEDED - this would falsify the zero-count lemma");
        Ok(ExitCode::FAILURE)
    }
}

fn mdist_cmd(args: MdistArgs) -> Result<ExitCode> {
    let raw =
        std::fs::read_to_string(&args.graph).with_context(|| format!("reading {}", args.graph))?;
    let file: GraphFile = serde_json::from_str(&raw).context("parsing graph JSON")?;
    let graph = ColoredGraph::from_file(&file).map_err(|e| anyhow!("{e}"))?;
    let m = graph.color_count();
    let order = match args.order {
        OrderArg::Deglex => MonomialOrder::deglex(m),
        OrderArg::Lex => MonomialOrder::lex(m),
    };

    let mats = m_distance_matrices(&graph, &order).map_err(|e| anyhow!("{e}"))?;
    let mut out = serde_json::json!({
        "vertices": graph.vertex_count(),
        "colors": m,
        "distances": mats.distances,
        "matrices": mats.distances.iter().enumerate().map(|(i, d)| {
            serde_json::json!({ "distance": d, "pairs": mats.triplets(i) })
        }).collect::<Vec<_>>(),
    });

    let mut failed = false;
    if args.check_l1 {
        let report = is_l1_compatible(&order, &box_domain(m, 6)).map_err(|e| anyhow!("{e}"))?;
        out["l1_compatible"] = serde_json::json!({
            "compatible": report.compatible,
            "witness": report.witness,
        });
        failed |= !report.compatible;
    }
    if args.check_regular {
        let result = is_m_distance_regular(&graph, &order).map_err(|e| anyhow!("{e}"))?;
        out["m_distance_regular"] = match &result {
            MDistanceRegularity::Regular { tensor } => {
                let d = tensor.distances.len();
                let p: Vec<Vec<Vec<u32>>> = (0..d)
                    .map(|a| {
                        (0..d)
                            .map(|b| (0..d).map(|c| tensor.get(a, b, c)).collect())
                            .collect()
                    })
                    .collect();
                serde_json::json!({ "regular": true, "p_tensor": p })
            }
            MDistanceRegularity::Irregular { witness } => serde_json::json!({
                "regular": false,
                "witness": format!("{witness:?}"),
            }),
            MDistanceRegularity::NotApplicable { missing_units } => serde_json::json!({
                "regular": false,
                "not_applicable_missing_units": missing_units,
            }),
        };
        // The WMAS bridge only applies for L1-compatible orders.
        if result.is_regular() {
            if let Ok(scheme) = to_scheme(&graph, &order) {
                out["bridge_scheme_axioms"] = serde_json::json!(verify_axioms(&scheme).is_ok());
            }
        }
    }
    let triangle = triangle_inequality_check(&graph, &order).map_err(|e| anyhow!("{e}"))?;
    out["triangle"] = serde_json::json!({
        "vector_holds": triangle.vector_holds,
        "scalar_holds": triangle.scalar_holds,
        "annotation": triangle.annotation,
    });

    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Text => {
            println!("vertices: {}, colors: {m}", graph.vertex_count());
            println!("attained m-distances ({}):", mats.distances.len());
            for d in &mats.distances {
                println!("  {d:?}");
            }
            if let Some(l1) = out.get("l1_compatible") {
                println!("L1-compatible: {l1}");
            }
            if let Some(reg) = out.get("m_distance_regular") {
                println!("m-distance-regular: {}", reg["regular"]);
                if let Some(bridge) = out.get("bridge_scheme_axioms") {
                    println!("bridge scheme passes axioms: {bridge}");
                }
            }
            println!(
                "triangle inequality: vector {}, scalar {:?}",
                triangle.vector_holds, triangle.scalar_holds
            );
        }
    }
    Ok(if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}
