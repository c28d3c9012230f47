//! Argument parsing and the subcommands.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trigen_core::certificate::{certified_bound, CertificateConfig, CertificatePlan};
use trigen_core::cyclo::{delta_capped, theta_capped, DEFAULT_CAP};
use trigen_core::exactpoly::factor;
use trigen_core::gf::{is_prime, make_ext, ExtField, FiniteField, PrimeField};
use trigen_core::matsp::{census, OrderConfig, Strategy};
use trigen_core::rigidity::{
    class_dim_semisimple, class_dim_unipotent, classify_adjoint_a, du_type_a, open_primes, table_lookup, table_rows,
    Family, GroupDescriptor, Isogeny, TableId, Triple, TripleVerdict,
};
use trigen_core::traceid::{canonical_words, generator_set, reduce_trace, Mode, TraceReducer, TraceWord};
use trigen_core::{derive_seed, Seed};

use crate::acceptance::{self, AcceptanceConfig, Tally};
use crate::format::{self, envelope};
use crate::parallel::par_map;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable overriding `--seed`.
pub const SEED_ENV: &str = "RIGIDITY_SEED";

#[derive(Debug, Parser)]
#[command(name = "trigen", version = crate::VERSION, about = "Rigidity of triangle-group triples and (3,3,c)-generation of Sp4(q)")]
pub struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: Seed,
    /// Worker threads for census, certificate and verify campaigns
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a hyperbolic triple for a simple algebraic group
    Classify(ClassifyArgs),
    /// Dump a classification table
    Tables(TablesArgs),
    /// Rigidity commands under one name
    #[command(subcommand)]
    Rigidity(RigidityCommand),
    /// Cyclotomic constraint polynomials
    Cyclo(CycloArgs),
    /// Candidate field degrees for (3,3,c)-generation of Sp4(p^r)
    Certificate(CertificateArgs),
    /// Search Sp4(q) for (a,b,c)-generating pairs
    Census(CensusArgs),
    /// Randomized identity and property campaigns
    Verify(VerifyArgs),
    /// Conjugacy class dimensions in SL_n
    Classdim(ClassdimArgs),
    /// Reduce a trace word to trace polynomials in short words
    Reduce(ReduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum RigidityCommand {
    Classify(ClassifyArgs),
    Tables(TablesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IsogenyArg {
    Adjoint,
    Sc,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// A, B, C, D, E6, E7, E8, F4 or G2
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: u32,
    /// Comma-separated triple such as 2,3,7
    #[arg(long)]
    pub triple: String,
    #[arg(long, value_enum, default_value = "adjoint")]
    pub isogeny: IsogenyArg,
    /// Characteristic, 0 for characteristic zero
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Table number: 1, 3 or 4
    #[arg(long)]
    pub which: u32,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CycloKind {
    Theta,
    Delta,
}

#[derive(Debug, Args)]
pub struct CycloArgs {
    #[arg(value_enum)]
    pub kind: CycloKind,
    #[arg(long)]
    pub c: u64,
    /// Also factor the reduction mod this prime
    #[arg(long)]
    pub p: Option<u64>,
    /// Largest accepted c
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CertificateArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub c: u64,
    /// Bound for PSp4(p^r) instead, read off the (p, 2c) certificate
    #[arg(long)]
    pub psp: bool,
    #[arg(long, default_value_t = 60)]
    pub max_c: u64,
    /// Largest field degree the enumeration may build
    #[arg(long, default_value_t = 48)]
    pub max_degree: u32,
    /// List every point in plain output
    #[arg(long)]
    pub points: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Field size, a prime power
    #[arg(long)]
    pub q: u64,
    /// Orders a,b,c of g1, g2 and g1 g2
    #[arg(long)]
    pub triple: String,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Largest group enumerated by closure
    #[arg(long, default_value_t = 1_000_000)]
    pub max_closure: u64,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Procesi,
    Rho,
    Annihilation,
    Reduce,
    Acceptance,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 101)]
    pub p: u64,
    /// Field degree over F_p
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Longest word for the reduce suite
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassdimArgs {
    #[arg(long)]
    pub n: u32,
    /// Jordan block sizes, e.g. 3,3
    #[arg(long, conflicts_with = "semisimple", required_unless_present = "semisimple")]
    pub unipotent: Option<String>,
    /// Eigenvalue multiplicities, e.g. 2,2,2
    #[arg(long)]
    pub semisimple: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    General,
    Symplectic,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Word in the letters 1, 2, -1, -2, e.g. 1,2,-1,2,1,2
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, value_enum, default_value = "general")]
    pub mode: ModeArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Violation(String),
    #[error(transparent)]
    Core(#[from] trigen_core::Error),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use trigen_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Core(e) => match e {
                E::Resource(_) => EXIT_RESOURCE,
                E::MixedContexts | E::Singular | E::Internal(_) => EXIT_VIOLATION,
                _ => EXIT_USAGE,
            },
            CliError::Format(_) | CliError::Io(_) => EXIT_VIOLATION,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    seed: Seed,
    threads: usize,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn header(&mut self) -> Result<()> {
        writeln!(self.out, "# trigen {} seed={}", crate::VERSION, self.seed)?;
        Ok(())
    }

    fn json(&mut self, kind: &str, body: Value) -> Result<()> {
        let doc = envelope(kind, self.seed, body);
        writeln!(self.out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command, writing results to `out` and
/// diagnostics to `err`. `env_seed` is the value of [`SEED_ENV`], if set. Returns the
/// process exit code.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let seed = match env_seed.map(|s| s.trim().parse::<u64>()) {
        None => cli.seed,
        Some(Ok(s)) => s,
        Some(Err(_)) => {
            let _ = writeln!(err, "error: {SEED_ENV} must be an unsigned 64-bit integer");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx { seed, threads: cli.threads.max(1), out };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => EXIT_OK,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<()> {
    match cmd {
        Command::Classify(a) | Command::Rigidity(RigidityCommand::Classify(a)) => cmd_classify(a, ctx),
        Command::Tables(a) | Command::Rigidity(RigidityCommand::Tables(a)) => cmd_tables(a, ctx),
        Command::Cyclo(a) => cmd_cyclo(a, ctx),
        Command::Certificate(a) => cmd_certificate(a, ctx),
        Command::Census(a) => cmd_census(a, ctx),
        Command::Verify(a) => cmd_verify(a, ctx),
        Command::Classdim(a) => cmd_classdim(a, ctx),
        Command::Reduce(a) => cmd_reduce(a, ctx),
    }
}

fn parse_family(s: &str) -> Result<Family> {
    Ok(match s.to_ascii_uppercase().as_str() {
        "A" => Family::A,
        "B" => Family::B,
        "C" => Family::C,
        "D" => Family::D,
        "E6" => Family::E6,
        "E7" => Family::E7,
        "E8" => Family::E8,
        "F4" => Family::F4,
        "G2" => Family::G2,
        _ => return Err(CliError::Usage(format!("unknown family {s:?}"))),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} {s:?}"))))
        .collect()
}

/// `q = p^m`.
fn prime_power(q: u64) -> Result<(u64, u32)> {
    let bad = || CliError::Usage(format!("{q} is not a prime power"));
    let p = (2..=q).find(|d| q % d == 0).ok_or_else(bad)?;
    let (mut n, mut m) = (q, 0);
    while n % p == 0 {
        n /= p;
        m += 1;
    }
    if n != 1 || !is_prime(p) {
        return Err(bad());
    }
    Ok((p, m))
}

fn cmd_classify(a: ClassifyArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let family = parse_family(&a.family)?;
    let triple = Triple::parse(&a.triple)?;
    if !triple.is_hyperbolic() {
        return Err(CliError::Core(trigen_core::Error::NotHyperbolic(triple.a() as u64, triple.b() as u64, triple.c() as u64)));
    }
    let isogeny = match a.isogeny {
        IsogenyArg::Adjoint => Isogeny::Adjoint,
        IsogenyArg::Sc => Isogeny::SimplyConnected,
    };
    let group = GroupDescriptor::new(family, a.rank, isogeny)?;
    let primes = open_primes(&group, triple);
    let formula: Option<TripleVerdict> = if family == Family::A && group.isogeny() == Isogeny::Adjoint {
        Some(classify_adjoint_a(a.rank, triple)?)
    } else {
        None
    };
    let verdict = match &formula {
        Some(v) => v.verdict,
        None => table_lookup(&group, triple, a.p)
            .ok_or_else(|| CliError::Usage(format!("no tabulated verdict for {group}")))?,
    };
    let du: Vec<(u32, u64)> = match &formula {
        Some(_) => triple.entries().iter().map(|&u| (u, du_type_a(a.rank, u))).collect(),
        None => Vec::new(),
    };
    if a.json {
        let mut body = json!({
            "group": group.to_string(),
            "triple": triple.entries(),
            "p": a.p,
            "verdict": verdict.as_str(),
            "method": if formula.is_some() { "formula" } else { "table" },
            "open_primes": primes,
        });
        if let Some(v) = &formula {
            body["S"] = json!(v.s);
            body["D"] = json!(v.d);
            body["d_u"] = Value::Array(du.iter().map(|(u, d)| json!({ "u": u, "d": d })).collect());
        }
        return ctx.json("classify", body);
    }
    ctx.header()?;
    let o = &mut ctx.out;
    writeln!(o, "group: {group}")?;
    writeln!(o, "triple: {triple}")?;
    writeln!(o, "verdict: {verdict}")?;
    if let Some(v) = &formula {
        let parts: Vec<String> = du.iter().map(|(u, d)| format!("d_{u} = {d}")).collect();
        writeln!(o, "{}", parts.join(", "))?;
        writeln!(o, "S = {}, D = {}", v.s, v.d)?;
    }
    let ps: Vec<String> = primes.iter().map(u64::to_string).collect();
    writeln!(o, "excluded primes: {}", ps.join(", "))?;
    Ok(())
}

fn cmd_tables(a: TablesArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let id = TableId::from_number(a.which).ok_or_else(|| CliError::Usage(format!("no table {}; use 1, 3 or 4", a.which)))?;
    let rows = table_rows(id);
    if a.json {
        return ctx.json("tables", json!({ "table": a.which, "rows": format::table_json(&rows) }));
    }
    ctx.header()?;
    if a.csv {
        format::write_table_csv(&mut ctx.out, &rows)?;
        return Ok(());
    }
    for r in rows {
        let pats: Vec<String> = r.triples.iter().map(ToString::to_string).collect();
        writeln!(ctx.out, "{:<10} {:<10} {}", r.name, r.prime, pats.join("; "))?;
    }
    Ok(())
}

fn cmd_cyclo(a: CycloArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let (name, poly) = match a.kind {
        CycloKind::Theta => ("theta", theta_capped(a.c, a.cap)?),
        CycloKind::Delta => ("delta", delta_capped(a.c, a.cap)?),
    };
    let reduction = match a.p {
        Some(p) => {
            let fp = PrimeField::new(p)?;
            let fac = factor(&poly.reduce(&fp), ctx.seed)?;
            Some((p, fac.degrees()))
        }
        None => None,
    };
    if a.json {
        let mut body = json!({
            "polynomial": name,
            "c": a.c,
            "coeffs": format::poly_json(&poly),
            "display": poly.to_string(),
        });
        if let Some((p, degs)) = &reduction {
            body["mod_p"] = json!({ "p": p, "factor_degrees": degs });
        }
        return ctx.json("cyclo", body);
    }
    ctx.header()?;
    writeln!(ctx.out, "{poly}")?;
    if let Some((p, degs)) = reduction {
        writeln!(ctx.out, "mod {p}: irreducible factor degrees {degs:?}")?;
    }
    Ok(())
}

fn cmd_certificate(a: CertificateArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    if a.psp && a.p == 2 {
        return Err(trigen_core::Error::Precondition("p = 2: PSp_4(2^r) is Sp_4(2^r), use the Sp_4 certificate".into()).into());
    }
    let c = if a.psp { a.c.checked_mul(2).ok_or_else(|| CliError::Usage("c too large".into()))? } else { a.c };
    let cfg = CertificateConfig { c_cap: a.max_c, degree_cap: a.max_degree };
    let plan = CertificatePlan::new(a.p, c, ctx.seed, cfg)?;
    let per_pair = par_map(plan.degree_pairs(), ctx.threads, |(dx, dy)| plan.points_for(dx, dy));
    let mut points = Vec::new();
    for pts in per_pair {
        points.extend(pts?);
    }
    let cert = plan.assemble(points);
    if !cert.verify()? {
        return Err(CliError::Violation("a certificate point fails re-evaluation".into()));
    }
    if a.json {
        let mut body = format::certificate_json(&cert);
        body["psp"] = json!(a.psp);
        if a.psp {
            body["psp_c"] = json!(a.c);
        }
        return ctx.json("certificate", body);
    }
    ctx.header()?;
    let o = &mut ctx.out;
    if a.psp {
        writeln!(o, "PSp4(p^r) with p = {}, (3,3,{}): r <= {} (from the c = {c} certificate)", a.p, a.c, certified_bound(&cert))?;
    }
    writeln!(o, "p = {}, c = {}", cert.p, cert.c)?;
    let mut by_r: BTreeMap<u32, usize> = BTreeMap::new();
    for pt in &cert.points {
        *by_r.entry(pt.r).or_default() += 1;
    }
    writeln!(o, "candidate r: {:?}", cert.candidate_rs)?;
    writeln!(o, "max r: {}", cert.max_r)?;
    let counts: Vec<String> = by_r.iter().map(|(r, n)| format!("r={r}: {n}")).collect();
    writeln!(o, "points: {} ({})", cert.points.len(), counts.join(", "))?;
    if a.points {
        for pt in &cert.points {
            let f = &pt.field;
            writeln!(
                o,
                "F_{}^{}: x={:?} y={:?} z={:?} r={}",
                f.prime(),
                f.degree(),
                pt.x,
                pt.y,
                pt.z,
                pt.r
            )?;
        }
    }
    Ok(())
}

fn cmd_census(a: CensusArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let (p, m) = prime_power(a.q)?;
    let abc: Vec<u64> = parse_list(&a.triple, "triple")?;
    let [x, y, z] = abc[..] else {
        return Err(CliError::Usage(format!("triple needs three entries: {:?}", a.triple)));
    };
    if abc.contains(&0) {
        return Err(CliError::Usage("orders must be positive".into()));
    }
    let field: ExtField = make_ext(p, m, 0)?;
    let threads = ctx.threads.min(a.samples.max(1));
    let jobs: Vec<(usize, usize)> = (0..threads).map(|i| (i, a.samples / threads + usize::from(i < a.samples % threads))).collect();
    let results = par_map(jobs, threads, |(i, n)| {
        let seed = if threads == 1 { ctx.seed } else { derive_seed(ctx.seed, i as u64) };
        let cfg = OrderConfig { strategy: Strategy::Auto, closure_limit: a.max_closure, seed, ..OrderConfig::default() };
        census(&field, x, y, &[z], n, &cfg)
    });
    let mut line = None;
    for r in results {
        let l = r?.remove(0);
        if line.is_none() || (l.found() && !line.as_ref().is_some_and(|x: &trigen_core::matsp::CensusEntry<ExtField>| x.found())) {
            line = Some(l);
        }
    }
    let line = line.ok_or_else(|| CliError::Usage("no samples".into()))?;
    if a.json {
        let witness = line.witness.as_ref().map(|(g1, g2)| json!([format::mat_json(g1), format::mat_json(g2)]));
        return ctx.json(
            "census",
            json!({
                "q": a.q, "a": x, "b": y, "c": z,
                "samples": a.samples,
                "found": line.found(),
                "witness": witness,
            }),
        );
    }
    ctx.header()?;
    if a.csv {
        format::write_census_csv(&mut ctx.out, std::slice::from_ref(&line))?;
        return Ok(());
    }
    let o = &mut ctx.out;
    match &line.witness {
        Some((g1, g2)) => {
            writeln!(o, "Sp4({}) is ({x},{y},{z})-generated", a.q)?;
            writeln!(o, "g1 = {}", format::mat_json(g1))?;
            writeln!(o, "g2 = {}", format::mat_json(g2))?;
        }
        None => writeln!(o, "Sp4({}): none found for ({x},{y},{z}) in {} samples", a.q, a.samples)?,
    }
    Ok(())
}

struct SuiteResult {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
    note: String,
}

fn suite_from(name: &'static str, t: Tally, note: String) -> SuiteResult {
    SuiteResult { name, checked: t.checked, failures: t.failures, note }
}

fn run_suite(s: Suite, a: &VerifyArgs, seed: Seed, threads: usize) -> Result<Vec<SuiteResult>> {
    let field = || make_ext(a.p, a.m, 0);
    let q = a.p.pow(a.m);
    Ok(match s {
        Suite::Procesi => {
            let f = field()?;
            vec![suite_from("procesi", acceptance::procesi_campaign(&f, seed, a.samples, threads), format!("q = {q}"))]
        }
        Suite::Rho => {
            let r = acceptance::character_fields_over(a.p, a.m, seed, a.samples);
            let note = format!("q = {q}, {} conforming pairs in {} draws, cases {:?}", r.pairs, r.attempts, r.cases);
            vec![SuiteResult { name: "rho", checked: r.pairs, failures: r.failures, note }]
        }
        Suite::Annihilation => {
            let (t, cs) = acceptance::annihilation_over(a.p, a.m, seed, a.samples);
            vec![suite_from("annihilation", t, format!("q = {q}, c covered {cs:?}"))]
        }
        Suite::Reduce => {
            let f = field()?;
            let mut reducer = TraceReducer::new();
            let mut polys = Vec::new();
            for w in canonical_words(a.max_len, Mode::General) {
                polys.push((trigen_core::matsp::GroupWord::new(w.letters())?, reducer.reduce(&w)?));
            }
            let gens = generator_set(Mode::General);
            let t = acceptance::reduction_on_field(&f, &polys, &gens, seed, a.samples);
            vec![suite_from("reduce", t, format!("q = {q}, {} words", polys.len()))]
        }
        Suite::Acceptance => acceptance::run_all(&AcceptanceConfig { seed, threads })
            .into_iter()
            .map(|o| SuiteResult {
                name: o.title,
                checked: 1,
                failures: if o.passed { Vec::new() } else { vec![o.detail.clone()] },
                note: o.to_string(),
            })
            .collect(),
        Suite::All => {
            let mut v = Vec::new();
            for s in [Suite::Procesi, Suite::Rho, Suite::Annihilation, Suite::Reduce] {
                v.extend(run_suite(s, a, seed, threads)?);
            }
            v
        }
    })
}

fn cmd_verify(a: VerifyArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    if !is_prime(a.p) || a.m == 0 {
        return Err(CliError::Usage(format!("need a prime p and m >= 1, got p = {}, m = {}", a.p, a.m)));
    }
    let results = run_suite(a.suite, &a, ctx.seed, ctx.threads)?;
    let failed: usize = results.iter().map(|r| r.failures.len()).sum();
    if a.json {
        let suites: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "checked": r.checked,
                    "failed": r.failures.len(),
                    "note": r.note,
                    "first_failure": r.failures.first(),
                })
            })
            .collect();
        ctx.json("verify", json!({ "suites": suites, "pass": failed == 0 }))?;
    } else {
        ctx.header()?;
        for r in &results {
            let status = if r.failures.is_empty() { "pass" } else { "FAIL" };
            writeln!(ctx.out, "{status} {}: {} checked, {} failed; {}", r.name, r.checked, r.failures.len(), r.note)?;
            if let Some(f) = r.failures.first() {
                writeln!(ctx.out, "  first violation: {f}")?;
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Violation(format!("{failed} violations")));
    }
    Ok(())
}

fn cmd_classdim(a: ClassdimArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let (kind, parts, dim) = match (&a.unipotent, &a.semisimple) {
        (Some(j), _) => {
            let parts: Vec<u32> = parse_list(j, "partition")?;
            let d = class_dim_unipotent(a.n, &parts)?;
            ("unipotent", parts, d)
        }
        (None, Some(s)) => {
            let parts: Vec<u32> = parse_list(s, "multiplicities")?;
            let d = class_dim_semisimple(a.n, &parts)?;
            ("semisimple", parts, d)
        }
        (None, None) => return Err(CliError::Usage("give --unipotent or --semisimple".into())),
    };
    if a.json {
        return ctx.json("classdim", json!({ "n": a.n, "class": kind, "parts": parts, "dim": dim }));
    }
    ctx.header()?;
    writeln!(ctx.out, "{dim}")?;
    Ok(())
}

fn cmd_reduce(a: ReduceArgs, ctx: &mut Ctx<'_>) -> Result<()> {
    let letters: Vec<i8> = parse_list(&a.word, "word")?;
    let mode = match a.mode {
        ModeArg::General => Mode::General,
        ModeArg::Symplectic => Mode::Symplectic,
    };
    let w = TraceWord::new(&letters, mode)?;
    let poly = reduce_trace(&w)?;
    if a.json {
        return ctx.json(
            "reduce",
            json!({ "word": w.letters(), "terms": format::trace_poly_json(&poly) }),
        );
    }
    ctx.header()?;
    writeln!(ctx.out, "t({w}) = {poly}")?;
    Ok(())
}
