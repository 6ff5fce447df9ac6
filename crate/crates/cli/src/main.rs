use std::io::{self, Read, Write};
use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use proofcount::enumerator::{enumerate, size_within};
use proofcount::lambda_mu::{check_fair, is_eta_long, is_normal, parse_term, size, typecheck, Goal, TermEnv};
use proofcount::pse_gen::{build_within, count_within, Reuse};
use proofcount::pse_text::{pse_to_json, read_pse};
use proofcount::{formulae_of, ExtNat, Formula, Logic, Mode};

/// Count, list and check normal fair proofs of propositional formulas.
#[derive(Parser)]
#[command(name = "proofcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ModeArgs {
    /// classical, intuitionistic or minimal
    #[arg(long, default_value_t = Logic::Classical)]
    logic: Logic,
    /// Only count proofs in η-long form.
    #[arg(long)]
    eta_long: bool,
    /// Emit one JSON document.
    #[arg(long)]
    json: bool,
    /// Give up on equation systems with more variables than this.
    #[arg(long, default_value_t = 1_000_000)]
    max_variables: usize,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        Mode::new(self.logic, self.eta_long)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of proofs, or "omega".
    Count {
        /// Formula text, or `-` to read standard input.
        #[arg(required_unless_present = "corpus")]
        formula: Option<String>,
        /// Count every formula of a file, one per line.
        #[arg(long, conflicts_with = "formula")]
        corpus: Option<String>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// List proofs by increasing size.
    Enumerate {
        formula: String,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        max_size: u32,
        /// Stop at the largest size whose number of proofs is within this.
        #[arg(long)]
        limit: Option<u64>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Print the equation system, its goals and its least solution.
    Equations {
        formula: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Check a proof term against a formula.
    Check {
        formula: String,
        term: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Build formulas whose proof counts solve a polynomial system.
    Reverse {
        /// The system, as text or JSON, or `-` to read standard input.
        system: String,
        #[arg(long)]
        json: bool,
    },
}

/// Bad input, reported on standard error; or a rejected check, whose
/// report still goes to standard output.
enum Failure {
    Input(String),
    Rejected(String),
}

type Outcome = Result<String, Failure>;

fn input(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        Ok(arg.to_string())
    }
}

fn formula(arg: &str) -> Result<Formula, Failure> {
    let text = input(arg)?;
    text.trim()
        .parse()
        .map_err(|e| Failure::Input(format!("cannot parse formula: {e}")))
}

fn header(f: &Formula, m: &ModeArgs) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("formula".into(), json!(f.to_string()));
    doc.insert("logic".into(), json!(m.logic.name()));
    doc.insert("eta_long".into(), json!(m.eta_long));
    doc
}

fn pretty(doc: Map<String, Value>) -> String {
    serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialise")
}

fn count(f: &Formula, m: &ModeArgs) -> Result<ExtNat, Failure> {
    count_within(&Goal::closed(f.clone()), m.mode(), m.max_variables).map_err(|e| Failure::Input(e.to_string()))
}

fn run_count(f: &Formula, m: &ModeArgs) -> Outcome {
    let n = count(f, m)?;
    Ok(if m.json {
        let mut doc = header(f, m);
        doc.insert("count".into(), json!(n.to_string()));
        serde_json::to_string(&Value::Object(doc)).expect("JSON values serialise")
    } else {
        n.to_string()
    })
}

fn run_corpus(path: &str, m: &ModeArgs) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let parsed: Vec<Formula> = lines
        .iter()
        .map(|&(i, l)| l.parse().map_err(|e| Failure::Input(format!("line {i}: cannot parse formula: {e}"))))
        .collect::<Result<_, _>>()?;
    let out: Vec<Outcome> = parsed
        .par_iter()
        .map(|f| match run_count(f, m) {
            Ok(line) if !m.json => Ok(format!("{f}\t{line}")),
            other => other,
        })
        .collect();
    // Every line is computed before the first failure is reported.
    out.into_iter().collect::<Result<Vec<_>, _>>().map(|lines| lines.join("\n"))
}

fn run_enumerate(f: &Formula, max_size: usize, limit: Option<u64>, m: &ModeArgs) -> Outcome {
    let g = Goal::closed(f.clone());
    let mode = m.mode();
    let k = match limit {
        Some(l) => size_within(&g, mode, max_size, l).unwrap_or(0),
        None => max_size,
    };
    let terms = if k == 0 { Vec::new() } else { enumerate(&g, mode, k) };
    if m.json {
        let mut doc = header(f, m);
        doc.insert("count".into(), json!(count(f, m)?.to_string()));
        doc.insert("max_size".into(), json!(k));
        let proofs: Vec<Value> = terms
            .iter()
            .map(|t| json!({"size": size(t), "term": t.to_string()}))
            .collect();
        doc.insert("proofs".into(), Value::Array(proofs));
        Ok(pretty(doc))
    } else {
        Ok(terms
            .iter()
            .map(|t| format!("{}\t{t}", size(t)))
            .collect::<Vec<_>>()
            .join("\n"))
    }
}

fn run_equations(f: &Formula, m: &ModeArgs) -> Outcome {
    let sys = build_within(&Goal::closed(f.clone()), m.mode(), Reuse::default(), m.max_variables)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let sol = sys.solve();
    let names = sys.pse.names();
    if m.json {
        let mut doc = header(f, m);
        doc.insert("count".into(), json!(sol[sys.root()].to_string()));
        let pse = pse_to_json(&sys.pse);
        doc.insert("variables".into(), pse["variables"].clone());
        doc.insert("equations".into(), pse["equations"].clone());
        let goals: Map<String, Value> = names
            .iter()
            .zip(&sys.goals)
            .map(|(n, g)| (n.clone(), json!(g.to_string())))
            .collect();
        doc.insert("goals".into(), Value::Object(goals));
        let solution: Map<String, Value> = names
            .iter()
            .zip(&sol)
            .map(|(n, v)| (n.clone(), json!(v.to_string())))
            .collect();
        doc.insert("solution".into(), Value::Object(solution));
        Ok(pretty(doc))
    } else {
        let mut out = String::from("goals:\n");
        for (n, g) in names.iter().zip(&sys.goals) {
            out += &format!("  {n} : {g}\n");
        }
        out += "equations:\n";
        for line in sys.pse.to_string().lines() {
            out += &format!("  {line}\n");
        }
        out += "solution:\n";
        for (n, v) in names.iter().zip(&sol) {
            out += &format!("  {n} = {v}\n");
        }
        out += &format!("count: {}", sol[sys.root()]);
        Ok(out)
    }
}

fn run_check(f: &Formula, term: &str, m: &ModeArgs) -> Outcome {
    let g = Goal::closed(f.clone());
    let t = parse_term(term.trim(), &TermEnv::default()).map_err(|e| Failure::Input(format!("cannot parse term: {e}")))?;
    let mut results: Vec<(&str, Result<(), String>)> = Vec::new();
    let typed = typecheck(&g, &t);
    results.push(("typecheck", if typed { Ok(()) } else { Err("the term does not prove the formula".into()) }));
    results.push(("normal", if is_normal(&t) { Ok(()) } else { Err("the term contains a redex".into()) }));
    if typed {
        results.push(("fair", check_fair(&g, &t, m.logic).map_err(|e| e.to_string())));
        if !proofcount::lambda_mu::respects_logic(&g, &t, m.logic) {
            results.push(("logic", Err(format!("the term uses rules outside {} logic", m.logic))));
        }
        if m.eta_long {
            results.push(("eta-long", if is_eta_long(&g, &t) { Ok(()) } else { Err("the term is not η-long".into()) }));
        }
    }
    let ok = results.iter().all(|(_, r)| r.is_ok());
    let out = if m.json {
        let mut doc = header(f, m);
        doc.insert("term".into(), json!(t.to_string()));
        doc.insert("size".into(), json!(size(&t)));
        let checks: Map<String, Value> = results
            .iter()
            .map(|(name, r)| (name.to_string(), r.as_ref().err().map_or(json!(true), |e| json!(e))))
            .collect();
        doc.insert("checks".into(), Value::Object(checks));
        doc.insert("ok".into(), json!(ok));
        pretty(doc)
    } else {
        results
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => format!("{name}: ok"),
                Err(e) => format!("{name}: FAILED ({e})"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Rejected(out))
    }
}

fn run_reverse(system: &str, json_out: bool) -> Outcome {
    let s = read_pse(&input(system)?).map_err(|e| Failure::Input(format!("cannot read system: {e}")))?;
    let out = formulae_of(&s).map_err(|e| Failure::Input(e.to_string()))?;
    if json_out {
        let formulas: Map<String, Value> = s
            .names()
            .iter()
            .zip(&out.formulas)
            .map(|(n, f)| (n.clone(), json!(f.to_string())))
            .collect();
        let doc = json!({"atoms": out.atoms, "formulas": formulas});
        Ok(serde_json::to_string_pretty(&doc).expect("JSON values serialise"))
    } else {
        Ok(s.names()
            .iter()
            .zip(&out.formulas)
            .map(|(n, f)| format!("{n}: {f}"))
            .collect::<Vec<_>>()
            .join("\n"))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Count { formula: Some(f), mode, .. } => run_count(&formula(&f)?, &mode),
        Command::Count { corpus: Some(path), mode, .. } => run_corpus(&path, &mode),
        Command::Count { .. } => Err(Failure::Input("a formula or --corpus is required".into())),
        Command::Enumerate { formula: f, max_size, limit, mode } => {
            run_enumerate(&formula(&f)?, max_size as usize, limit, &mode)
        }
        Command::Equations { formula: f, mode } => run_equations(&formula(&f)?, &mode),
        Command::Check { formula: f, term, mode } => run_check(&formula(&f)?, &term, &mode),
        Command::Reverse { system, json } => run_reverse(&system, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(out)) => {
            let mut stdout = io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Rejected(report))) => {
            println!("{report}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(2),
    }
}
