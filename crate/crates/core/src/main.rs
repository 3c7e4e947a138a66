use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use neural_ideals::betti::{self, BettiJson, BettiTable, LinearStatus};
use neural_ideals::code::{self, NeuralCode, Pseudomonomial};
use neural_ideals::families::Family;
use neural_ideals::structure::{self, PivotRule, SplitCriterion};
use neural_ideals::verify::{self, Collection, RandomSuites, Scope, VerifyConfig};
use neural_ideals::{Error, FieldTag, MonomialIdeal};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PAIR: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "neural-ideals",
    version,
    about = "Homological invariants of polarized neural ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// pd, reg, Betti table, linearity and dominance of an ideal
    Invariants(IdealArgs),
    /// Multigraded and coarse Betti numbers of an ideal
    Betti(IdealArgs),
    /// Linear resolution / linear quotients via oracle, search and recursion
    CheckLinear(IdealArgs),
    /// Polarized neural ideal of a binary code file
    FromCode {
        file: PathBuf,
        /// Also print the invariant report of the resulting ideal
        #[arg(long)]
        invariants: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Polarize a file of pseudomonomials such as `x1*(1-x2)`
    Polarize {
        file: PathBuf,
        /// Neuron count (default: largest index that appears)
        #[arg(long)]
        n: Option<u32>,
    },
    /// Generate a named family member
    Family {
        #[arg(value_parser = |s: &str| s.parse::<Family>())]
        name: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        /// Recompute pd/reg with the oracle and compare with the expected values
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the structural results over polarized neural ideals
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Range over every polarized neural ideal, not only those generated
    /// in degree n
    #[arg(long)]
    all_polarized: bool,
    /// Skip the randomized code, dominant-set and scaling suites
    #[arg(long)]
    no_random: bool,
    /// Compare every table against the other field (default: on for exhaustive runs)
    #[arg(long)]
    field_check: Option<bool>,
    /// Look for equigenerated ideals of degree below n with linear
    /// resolution but no linear quotients
    #[arg(long)]
    search_lr_lq: bool,
    /// Include per-phase wall-clock seconds in the report
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Field::F2)]
    field: Field,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IdealArgs {
    /// Ideal file, or `-` for standard input
    file: PathBuf,
    /// Accept any squarefree ideal, not only polarized neural ones
    #[arg(long)]
    raw: bool,
    /// Neuron count (default: header or largest index)
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = Pivot::Last)]
    pivot: Pivot,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    F2,
    Q,
}

impl From<Field> for FieldTag {
    fn from(f: Field) -> FieldTag {
        match f {
            Field::F2 => FieldTag::F2,
            Field::Q => FieldTag::Rationals,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Pivot {
    Last,
    Smallest,
}

impl From<Pivot> for PivotRule {
    fn from(p: Pivot) -> PivotRule {
        match p {
            Pivot::Last => PivotRule::Last,
            Pivot::Smallest => PivotRule::Smallest,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::NeuronCount(_) => EXIT_PARSE,
            Error::PairViolation { .. } => EXIT_PAIR,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(text)
}

fn load_ideal(args: &IdealArgs) -> Result<MonomialIdeal, Failure> {
    let ideal = MonomialIdeal::parse(&read_input(&args.file)?, args.n)?;
    if !args.raw {
        ideal.clone().validate_polarized()?;
    }
    Ok(ideal)
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

#[derive(Serialize)]
struct BettiReport {
    schema: u32,
    #[serde(flatten)]
    table: BettiJson,
}

#[derive(Serialize)]
struct InvariantReport {
    neurons: u32,
    generators: Vec<String>,
    field: FieldTag,
    pd: usize,
    reg: u32,
    equigenerated_degree: Option<u32>,
    linear_resolution: LinearStatus,
    linear_quotients: Option<Vec<String>>,
    /// `None` unless the ideal is polarized and generated in degree n.
    recursive_containment: Option<bool>,
    recursive_intersection: Option<bool>,
    dominant: Option<Vec<(String, String)>>,
    lcm_regularity_bound: u32,
    betti: BettiJson,
}

fn invariant_report(
    ideal: &MonomialIdeal,
    field: FieldTag,
    pivot: PivotRule,
) -> Result<(InvariantReport, BettiTable), Failure> {
    let table = betti::betti_table(ideal, field)?;
    let linear = betti::linear_status(ideal, field)?;
    let lq = structure::linear_quotients_search(ideal)?;
    let [containment, intersection] = recursive_checks(ideal, pivot)?;
    let report = InvariantReport {
        neurons: ideal.neurons(),
        generators: ideal.gens().iter().map(|g| g.to_string()).collect(),
        field,
        pd: table.pd(),
        reg: table.reg(),
        equigenerated_degree: ideal.equigenerated_degree()?,
        linear_resolution: linear,
        linear_quotients: lq.map(|o| o.order.iter().map(|m| m.to_string()).collect()),
        recursive_containment: containment,
        recursive_intersection: intersection,
        dominant: betti::dominant_check(ideal).map(|w| {
            w.iter()
                .map(|(g, v)| (g.to_string(), v.to_string()))
                .collect()
        }),
        lcm_regularity_bound: betti::reg_upper_bound_lcm(ideal)?,
        betti: table.to_json(),
    };
    Ok((report, table))
}

/// Both recursive criteria, or `None` when the ideal is not a polarized
/// ideal generated in degree n.
fn recursive_checks(ideal: &MonomialIdeal, pivot: PivotRule) -> Result<[Option<bool>; 2], Failure> {
    let Ok(p) = ideal.clone().validate_polarized() else {
        return Ok([None, None]);
    };
    let mut out = [None, None];
    for (slot, criterion) in out
        .iter_mut()
        .zip([SplitCriterion::Containment, SplitCriterion::Intersection])
    {
        match structure::recursive_linear_check_with(&p, pivot, criterion) {
            Ok(b) => *slot = Some(b),
            Err(Error::NotEquigeneratedDegreeN { .. }) => return Ok([None, None]),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_invariants(ideal: &MonomialIdeal, r: &InvariantReport, table: &BettiTable) {
    println!("ideal: {ideal}");
    println!("neurons: {}", r.neurons);
    match r.equigenerated_degree {
        Some(d) => println!("generators: {} (degree {d})", r.generators.len()),
        None => println!("generators: {} (mixed degrees)", r.generators.len()),
    }
    println!("pd: {}", r.pd);
    println!("reg: {}", r.reg);
    println!("lcm regularity bound: {}", r.lcm_regularity_bound);
    match r.linear_resolution {
        LinearStatus::Linear => println!("linear resolution: yes"),
        LinearStatus::NotLinear => println!("linear resolution: no"),
        LinearStatus::NotEquigenerated => {
            println!("linear resolution: no (warning: not equigenerated, notion undefined)")
        }
    }
    match &r.linear_quotients {
        Some(order) => println!("linear quotients: yes ({})", order.join(", ")),
        None => println!("linear quotients: no"),
    }
    if let (Some(c), Some(i)) = (r.recursive_containment, r.recursive_intersection) {
        println!("recursive split check (containment): {}", yes_no(c));
        println!("recursive split check (intersection): {}", yes_no(i));
    }
    match &r.dominant {
        Some(w) => {
            let pairs: Vec<String> = w.iter().map(|(g, v)| format!("{g} -> {v}")).collect();
            println!("dominant: yes ({})", pairs.join(", "));
        }
        None => println!("dominant: no"),
    }
    println!("betti table ({:?}):", r.field);
    print!("{}", table.render_coarse());
}

fn cmd_invariants(args: &IdealArgs) -> CliResult {
    let ideal = load_ideal(args)?;
    let (report, table) = invariant_report(&ideal, args.out.field.into(), args.pivot.into())?;
    if args.out.json {
        print_json(&json!({ "schema": 1, "invariants": report }));
    } else {
        print_invariants(&ideal, &report, &table);
    }
    Ok(())
}

fn cmd_betti(args: &IdealArgs) -> CliResult {
    let ideal = load_ideal(args)?;
    let table = betti::betti_table(&ideal, args.out.field.into())?;
    if args.out.json {
        print_json(&BettiReport {
            schema: 1,
            table: table.to_json(),
        });
    } else {
        println!("pd: {}", table.pd());
        println!("reg: {}", table.reg());
        print!("{}", table.render_coarse());
        println!("multigraded:");
        for ((i, b), r) in table.fine() {
            println!("  beta_{i},{b} = {r}");
        }
    }
    Ok(())
}

fn cmd_check_linear(args: &IdealArgs) -> CliResult {
    let ideal = load_ideal(args)?;
    let field = args.out.field.into();
    let linear = betti::linear_status(&ideal, field)?;
    let lq = structure::linear_quotients_search(&ideal)?;
    let [containment, intersection] = recursive_checks(&ideal, args.pivot.into())?;
    if args.out.json {
        print_json(&json!({
            "schema": 1,
            "linear_resolution": linear,
            "linear_quotients": lq.as_ref().map(|o| o.order.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
            "recursive_containment": containment,
            "recursive_intersection": intersection,
        }));
    } else {
        println!("linear resolution (oracle): {linear:?}");
        match &lq {
            Some(o) => println!(
                "linear quotients: yes ({})",
                o.order
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            None => println!("linear quotients: no"),
        }
        match (containment, intersection) {
            (Some(c), Some(i)) => {
                println!("recursive split check (containment): {}", yes_no(c));
                println!("recursive split check (intersection): {}", yes_no(i));
            }
            _ => println!("recursive split check: n/a (not generated in degree n)"),
        }
    }
    Ok(())
}

fn cmd_from_code(file: &Path, with_invariants: bool, out: &OutputArgs) -> CliResult {
    let code = NeuralCode::parse(&read_input(file)?)?;
    let ideal = code::code_to_polarized_ideal(&code);
    if out.json {
        let report = if with_invariants && !ideal.is_zero() {
            Some(invariant_report(&ideal, out.field.into(), PivotRule::Last)?.0)
        } else {
            None
        };
        print_json(&json!({
            "schema": 1,
            "neurons": ideal.neurons(),
            "codewords": code.len(),
            "generators": ideal.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "invariants": report,
        }));
        return Ok(());
    }
    if ideal.is_zero() {
        println!(
            "# zero ideal: the code contains every word of length {}",
            code.neurons()
        );
    }
    print!("{}", ideal.render());
    if with_invariants && !ideal.is_zero() {
        let (report, table) = invariant_report(&ideal, out.field.into(), PivotRule::Last)?;
        println!();
        print_invariants(&ideal, &report, &table);
    }
    Ok(())
}

fn cmd_polarize(file: &Path, n: Option<u32>) -> CliResult {
    let text = read_input(file)?;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            lines.push((idx + 1, body));
        }
    }
    let inferred = lines
        .iter()
        .flat_map(|(_, l)| {
            l.split(|c: char| !c.is_ascii_digit())
                .filter_map(|t| t.parse::<u32>().ok())
        })
        .max();
    let n = n.or(inferred).ok_or_else(|| Failure {
        code: EXIT_PARSE,
        message: "cannot infer the neuron count".into(),
    })?;
    let mut pseudos: Vec<Pseudomonomial> = Vec::with_capacity(lines.len());
    for (lineno, body) in lines {
        let p = Pseudomonomial::parse(body, n).map_err(|m| Error::Parse {
            line: lineno,
            message: m,
        })?;
        pseudos.push(p);
    }
    let ideal = code::polarize_all(n, &code::minimize_pseudos(&pseudos));
    print!("{}", ideal.render());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_family(
    family: Family,
    n: u32,
    k: Option<u32>,
    i: Option<u32>,
    j: Option<u32>,
    check: bool,
    out: &OutputArgs,
) -> CliResult {
    let wanted = family.param();
    let given = [("k", k), ("i", i), ("j", j)];
    let param = given
        .iter()
        .find(|(name, _)| *name == wanted)
        .and_then(|(_, v)| *v)
        .ok_or_else(|| Failure {
            code: EXIT_PARSE,
            message: format!("family {family} needs --{wanted}"),
        })?;
    if let Some((extra, _)) = given
        .iter()
        .find(|(name, v)| *name != wanted && v.is_some())
    {
        return Err(Failure {
            code: EXIT_PARSE,
            message: format!("family {family} does not take --{extra}"),
        });
    }
    let ideal = family.build(n, param)?;
    let expected = family.expected(n, param);
    let computed = if check {
        Some(betti::invariants(&ideal, out.field.into())?)
    } else {
        None
    };
    let mismatch = computed.is_some_and(|c| {
        expected.pd.is_some_and(|pd| pd != c.pd) || expected.reg.is_some_and(|r| r != c.reg)
    });
    if out.json {
        print_json(&json!({
            "schema": 1,
            "family": family.name(),
            "n": n,
            wanted: param,
            "generators": ideal.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "expected": { "pd": expected.pd, "reg": expected.reg },
            "computed": computed,
            "check_passed": computed.map(|_| !mismatch),
        }));
    } else {
        println!("# family {family} n={n} {wanted}={param}");
        if let Some(pd) = expected.pd {
            println!("# expected pd: {pd}");
        }
        if let Some(reg) = expected.reg {
            println!("# expected reg: {reg}");
        }
        print!("{}", ideal.render());
        if let Some(c) = computed {
            let verdict = if mismatch { "MISMATCH" } else { "ok" };
            println!("# check: pd {} reg {} -> {verdict}", c.pd, c.reg);
        }
    }
    if mismatch {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!(
                "family {family} n={n} {wanted}={param} does not match its expected invariants"
            ),
        });
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult {
    let VerifyArgs {
        n,
        mode,
        seed,
        count,
        all_polarized,
        no_random,
        field_check,
        search_lr_lq,
        timings,
        ref out,
    } = *args;
    let mut cfg = match mode {
        Mode::Exhaustive => VerifyConfig::exhaustive(n),
        Mode::Sample => VerifyConfig::sample(n, seed, count),
    };
    if all_polarized {
        cfg.collection = Collection::AllPolarized;
    }
    cfg.field = out.field.into();
    if let Some(fc) = field_check {
        cfg.field_check = fc;
    }
    if !no_random {
        cfg.random = Some(RandomSuites::standard(seed));
    }
    cfg.lr_lq_search = search_lr_lq;
    let mut report = verify::run(&cfg)?;
    if !timings {
        report.timings = None;
    }
    if out.json {
        print_json(&report);
    } else {
        match report.scope {
            Scope::Exhaustive => println!(
                "verify n={n} {}: exhaustive, {} ideals ({} distinct)",
                report.collection.name(),
                report.examined,
                report.distinct
            ),
            Scope::Sample { seed, count } => println!(
                "verify n={n} {}: sample seed={seed} count={count}, {} distinct",
                report.collection.name(),
                report.distinct
            ),
        }
        println!("{:<24}{:>8}{:>8}{:>8}", "suite", "pass", "fail", "n/a");
        for (name, c) in report.suites.iter().chain(&report.random_suites) {
            println!(
                "{name:<24}{:>8}{:>8}{:>8}",
                c.passed, c.failed, c.not_applicable
            );
        }
        for f in &report.findings {
            println!(
                "finding [{}] ({}): {}",
                f.kind,
                f.ideal.join(", "),
                f.detail
            );
        }
        if report.findings.is_empty() {
            println!("findings: none");
        }
        if let Some(t) = &report.timings {
            for (phase, secs) in t {
                println!("time {phase}: {secs:.3}s");
            }
        }
    }
    if !report.passed() {
        for c in &report.counterexamples {
            eprintln!(
                "counterexample [{}] ({}): {}",
                c.suite,
                c.ideal.join(", "),
                c.detail
            );
        }
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{} counterexample(s)", report.counterexamples.len()),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants(a) => cmd_invariants(a),
        Command::Betti(a) => cmd_betti(a),
        Command::CheckLinear(a) => cmd_check_linear(a),
        Command::FromCode {
            file,
            invariants,
            out,
        } => cmd_from_code(file, *invariants, out),
        Command::Polarize { file, n } => cmd_polarize(file, *n),
        Command::Family {
            name,
            n,
            k,
            i,
            j,
            check,
            out,
        } => cmd_family(*name, *n, *k, *i, *j, *check, out),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
