use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use knotwalk::braid::{burau, full_twist_limit, full_twist_power, full_twist_word};
use knotwalk::corpus::{self, Presentation};
use knotwalk::invariants::{rho1_via_greens, KnotInvariants};
use knotwalk::verify::{verify, Goldens, CHECKS};
use knotwalk::{BraidWord, Error, Matrix, TangleChain, TwistedFamily, UprightDiagram};

#[derive(Parser)]
#[command(name = "knotwalk", version, about = "Alexander-type knot invariants and their limits under twisting")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial, ρ₁, Conway polynomial and δ₁ of one knot.
    Invariants {
        #[command(flatten)]
        knot: KnotSource,
        /// Treat the knot as positive when judging the sign of δ₁
        /// (default: the presentation has only positive crossings).
        #[arg(long)]
        positive: Option<bool>,
        /// Also compute ρ₁ from the inverse matrix and compare.
        #[arg(long)]
        greens: bool,
        /// Print the compiled diagram as JSON and stop.
        #[arg(long)]
        emit_diagram: bool,
    },
    /// Burau matrices of braids and full twists.
    Burau {
        /// Space-separated generator indices, negative for inverses.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "full_twist")]
        braid: Option<String>,
        /// Strand count of --braid.
        #[arg(long, requires = "braid")]
        n: Option<usize>,
        /// Full twist on this many strands.
        #[arg(long)]
        full_twist: Option<usize>,
        /// Power of the full twist.
        #[arg(long, default_value_t = 1, requires = "full_twist")]
        power: usize,
        /// The limit of the powers instead.
        #[arg(long, requires = "full_twist", conflicts_with = "power")]
        limit: bool,
    },
    /// The random-walk chain of a diagram.
    Chain {
        #[command(flatten)]
        knot: KnotSource,
        /// Compare det(I - A) with the signed multicycle sum.
        #[arg(long)]
        cartier_foata: bool,
        /// Numerically sum walks from state S to state T.
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        walk_sum: Option<Vec<usize>>,
        /// Value of T for --walk-sum.
        #[arg(long, default_value_t = 0.99)]
        at: f64,
        /// Longest walk for --walk-sum.
        #[arg(long, default_value_t = 60)]
        max_len: usize,
    },
    /// Twisted families and their limits.
    Family(FamilyArgs),
    /// Run the acceptance checks.
    Verify {
        /// Run only these checks (repeatable or comma-separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// JSON file overriding reference values.
        #[arg(long)]
        goldens: Option<PathBuf>,
        /// List the check names and stop.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Space-separated generator indices, negative for inverses.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Diagram JSON, inline.
    #[arg(long)]
    diagram: Option<String>,
    /// Diagram JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// A knot from the built-in corpus.
    #[arg(long)]
    knot: Option<String>,
}

#[derive(Args)]
struct KnotSource {
    #[command(flatten)]
    source: Source,
    /// Strand count of --braid (default: one more than the largest index).
    #[arg(long)]
    n: Option<usize>,
    /// Strand to cut the braid closure open at.
    #[arg(long, default_value_t = 1)]
    cut: usize,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family JSON file.
    #[arg(long, conflicts_with_all = ["family", "builtin"])]
    file: Option<PathBuf>,
    /// Family JSON, inline.
    #[arg(long, conflicts_with = "builtin")]
    family: Option<String>,
    /// A built-in family.
    #[arg(long)]
    builtin: Option<String>,
    /// Use the mirror family (t → −∞ behaviour).
    #[arg(long)]
    mirror: bool,
    /// lim d_t.
    #[arg(long)]
    growth_rate: bool,
    /// lim T^{tn(n-1)/2} Δ(K_t).
    #[arg(long)]
    alexander_limit: bool,
    /// det(I - A) of both limit chains and the exponent relating them to the
    /// Alexander limit.
    #[arg(long)]
    determinants: bool,
    /// d_t for this t.
    #[arg(long)]
    d_t: Option<i64>,
    /// d_t for t = 0..=t-max against the limit series.
    #[arg(long)]
    report: bool,
    #[arg(long, default_value_t = 6)]
    t_max: usize,
    /// Series depth for --report.
    #[arg(long, default_value_t = 6)]
    r0: i64,
    /// Print the diagram of K_t as JSON.
    #[arg(long)]
    diagram_at: Option<i64>,
}

enum Failure {
    Usage(String),
    Compute(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Invariants { knot, positive, greens, emit_diagram } => {
            invariants(json, &knot, positive, greens, emit_diagram)
        }
        Command::Burau { braid, n, full_twist, power, limit } => burau_cmd(json, braid, n, full_twist, power, limit),
        Command::Chain { knot, cartier_foata, walk_sum, at, max_len } => {
            chain(json, &knot, cartier_foata, walk_sum, at, max_len)
        }
        Command::Family(args) => family(json, &args),
        Command::Verify { only, goldens, list } => verify_cmd(json, &only, goldens, list),
    }
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_braid(text: &str, n: Option<usize>) -> Result<BraidWord, Failure> {
    let letters: Vec<i32> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::Usage(format!("bad braid letter {s:?}"))))
        .collect::<Result<_, _>>()?;
    let n = n.unwrap_or_else(|| letters.iter().map(|k| k.unsigned_abs() as usize + 1).max().unwrap_or(1));
    Ok(BraidWord::new(n, letters)?)
}

/// The presentation and whether it has only positive crossings.
fn presentation(k: &KnotSource) -> Result<(Presentation, bool), Failure> {
    let s = &k.source;
    let p = if let Some(text) = &s.braid {
        Presentation::Braid { braid: parse_braid(text, k.n)?, cut: k.cut }
    } else if let Some(text) = &s.diagram {
        Presentation::Diagram(UprightDiagram::from_json(text)?)
    } else if let Some(path) = &s.file {
        Presentation::Diagram(UprightDiagram::from_json(&read(path)?)?)
    } else {
        let name = s.knot.as_deref().unwrap_or_default();
        let known = corpus::find(name).ok_or_else(|| {
            let names: Vec<String> = corpus::knots().into_iter().map(|k| k.name).collect();
            Failure::Usage(format!("no built-in knot {name:?}; known: {}", names.join(", ")))
        })?;
        return Ok((known.presentation, known.positive));
    };
    let positive = match &p {
        Presentation::Braid { braid, .. } => !braid.is_empty() && braid.letters().iter().all(|&l| l > 0),
        Presentation::Diagram(d) => !d.crossings.is_empty() && d.crossings.iter().all(|c| c.sign > 0),
    };
    Ok((p, positive))
}

fn invariants(json: bool, k: &KnotSource, positive: Option<bool>, greens: bool, emit: bool) -> Outcome {
    let (p, all_positive) = presentation(k)?;
    let d = p.diagram()?;
    if emit {
        print_json(&d);
        return Ok(());
    }
    let inv = KnotInvariants::compute(&d, positive.unwrap_or(all_positive))?;
    let greens_agree = if greens { Some(rho1_via_greens(&d)? == inv.rho1) } else { None };
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let text = [
        ("alexander", inv.alexander.to_string()),
        ("conway", inv.conway.to_string()),
        ("rho1", inv.rho1.to_string()),
        ("rho1_reduced", opt(inv.rho1_reduced.as_ref().map(|r| r.to_string()))),
        ("delta1", opt(inv.delta1.as_ref().map(|r| r.to_string()))),
    ];
    if json {
        let display: serde_json::Map<String, Value> = text.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        print_json(&json!({
            "presentation": p,
            "invariants": inv,
            "display": display,
            "greens_agree": greens_agree,
        }));
    } else {
        for (k, v) in text {
            println!("{k:<13} {v}");
        }
        if let Some(agree) = greens_agree {
            println!("{:<13} {}", "greens", if agree { "agrees" } else { "DISAGREES" });
        }
        for f in &inv.findings {
            println!("finding: {f}");
        }
    }
    if greens_agree == Some(false) {
        return Err(Failure::Compute(Error::InvalidDiagram("the two ρ₁ routes disagree".into())));
    }
    Ok(())
}

fn matrix_json<R: knotwalk::ring::Ring + Serialize>(m: &Matrix<R>) -> Value {
    let rows: Vec<Vec<R>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    json!(rows)
}

fn burau_cmd(
    json: bool,
    braid: Option<String>,
    n: Option<usize>,
    twist: Option<usize>,
    power: usize,
    limit: bool,
) -> Outcome {
    let out = match (braid, twist) {
        (Some(text), _) => {
            let w = parse_braid(&text, n)?;
            let m = burau(&w);
            (m.to_string(), matrix_json(&m))
        }
        (None, Some(n)) if limit => {
            let m = full_twist_limit(n)?;
            (m.to_string(), matrix_json(&m))
        }
        (None, Some(n)) => {
            let m = full_twist_power(n, power)?;
            if m != burau(&full_twist_word(n)?.repeat(power)) {
                return Err(Failure::Compute(Error::Shape("closed form differs from the word product".into())));
            }
            (m.to_string(), matrix_json(&m))
        }
        (None, None) => return Err(Failure::Usage("give --braid or --full-twist".into())),
    };
    if json {
        print_json(&json!({ "matrix": out.1 }));
    } else {
        print!("{}", out.0);
    }
    Ok(())
}

fn chain(json: bool, k: &KnotSource, cf: bool, walk: Option<Vec<usize>>, at: f64, max_len: usize) -> Outcome {
    let d = presentation(k)?.0.diagram()?;
    let c = TangleChain::from_diagram(&d)?;
    let g = c.greens_matrix()?;
    let cf = if cf {
        let (lhs, rhs) = c.cartier_foata_check()?;
        Some((lhs, rhs))
    } else {
        None
    };
    let walk = match walk {
        Some(st) => {
            let (s, t) = (st[0], st[1]);
            let sum = c.walk_sum(s, t, max_len, at)?;
            Some((s, t, sum, c.green(s, t)?.eval_f64(at)))
        }
        None => None,
    };
    if json {
        print_json(&json!({
            "chain": c,
            "greens": matrix_json(&g),
            "cartier_foata": cf.as_ref().map(|(l, r)| json!({"det": l, "multicycles": r, "equal": l == r})),
            "walk_sum": walk.map(|(s, t, w, e)| json!({"from": s, "to": t, "at": at, "max_len": max_len, "sum": w, "green": e})),
        }));
    } else {
        println!("transition matrix\n{}", c.matrix());
        println!("Green's matrix\n{g}");
        if let Some((l, r)) = &cf {
            println!("det(I - A)        {l}");
            println!("multicycle sum    {r}");
        }
        if let Some((s, t, w, e)) = walk {
            println!("walks {s} -> {t} up to length {max_len} at T = {at}: {w:.12}, Green's entry {e:.12}");
        }
    }
    if cf.is_some_and(|(l, r)| l != r) {
        return Err(Failure::Compute(Error::Singular));
    }
    Ok(())
}

fn family(json: bool, a: &FamilyArgs) -> Outcome {
    let mut f = if let Some(path) = &a.file {
        TwistedFamily::from_json(&read(path)?)?
    } else if let Some(text) = &a.family {
        TwistedFamily::from_json(text)?
    } else if let Some(name) = &a.builtin {
        let all = corpus::families();
        let found = all.iter().find(|(n, _)| n == name).map(|(_, f)| f.clone());
        found.ok_or_else(|| {
            let names: Vec<&str> = all.iter().map(|(n, _)| *n).collect();
            Failure::Usage(format!("no built-in family {name:?}; known: {}", names.join(", ")))
        })?
    } else {
        return Err(Failure::Usage("give --file, --family or --builtin".into()));
    };
    if a.mirror {
        f = f.mirror();
    }
    if let Some(t) = a.diagram_at {
        print_json(&f.diagram_at(t)?);
        return Ok(());
    }
    let nothing = !(a.growth_rate || a.alexander_limit || a.determinants || a.report) && a.d_t.is_none();
    let mut out = serde_json::Map::new();
    let mut lines = Vec::new();
    if a.growth_rate || nothing {
        let g = f.growth_rate()?;
        lines.push(format!("growth rate      {}", g.to_factored_string()));
        out.insert("growth_rate".into(), json!({ "value": g, "display": g.to_factored_string() }));
    }
    if a.alexander_limit || nothing {
        let l = f.alexander_limit()?;
        lines.push(format!("Alexander limit  {}", l.to_factored_string()));
        out.insert("alexander_limit".into(), json!({ "value": l, "display": l.to_factored_string() }));
    }
    if a.determinants {
        let d = f.limit_determinants()?;
        lines.push(format!("det(I - A_inf)   {}", d.det_infinity.to_factored_string()));
        lines.push(format!("det(I - A_tau)   {}", d.det_tau.to_factored_string()));
        lines.push(format!("alpha            {}", d.alpha.map_or("-".into(), |x| x.to_string())));
        out.insert("determinants".into(), json!(d));
    }
    if let Some(t) = a.d_t {
        let d = f.d_t_empirical(t)?;
        lines.push(format!("d_{t}              {d}"));
        out.insert("d_t".into(), json!({ "t": t, "value": d, "display": d.to_string() }));
    }
    if a.report {
        let r = f.convergence_report(a.t_max, a.r0)?;
        lines.push(format!("limit series     {} + O(T^{})", r.limit_series, a.r0 + 1));
        for row in &r.rows {
            let depth = row.depth.map_or("-".into(), |x| x.to_string());
            lines.push(format!("t={:<3} depth {:>3}  d_t = {}", row.t, depth, row.d));
        }
        lines.push(format!("depth nondecreasing: {}", r.nondecreasing));
        lines.push(format!("rho1 pairwise distinct from t = {}", r.distinct_from));
        out.insert("report".into(), json!(r));
    }
    if json {
        print_json(&Value::Object(out));
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(())
}

fn verify_cmd(json: bool, only: &[String], goldens: Option<PathBuf>, list: bool) -> Outcome {
    if list {
        for c in CHECKS {
            println!("{c}");
        }
        return Ok(());
    }
    let g = match goldens {
        Some(path) => {
            serde_json::from_str(&read(&path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => Goldens::default(),
    };
    let report = verify(&g, (!only.is_empty()).then_some(only))?;
    if json {
        print_json(&report);
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            println!("{status} {:<18} {}", c.id, c.actual);
            if !c.passed {
                println!("     expected: {}", c.expected);
                println!("     actual:   {}", c.actual);
            }
            for n in &c.notes {
                println!("     note: {n}");
            }
        }
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        println!("{} checks, {failed} failed", report.checks.len());
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
