use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kao::automaton::{build_nda, to_dot, Nda};
use kao::boolean::{all_atoms, render_atom};
use kao::derivatives::{delta, epsilon, zeta};
use kao::equivalence::decide;
use kao::harness::{cross_validate, GenConfig};
use kao::linsys::{closed_bounded, hat, is_atomic};
use kao::semantics::{default_slack, render_word, Letter, Oracle};
use kao::{parse_term, Exec, Signature, Term};

#[derive(Parser)]
#[command(name = "kao", version, about = "Equivalence checking for Kleene algebra with observations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SigArgs {
    /// Observables, comma separated (default: those used in the expressions)
    #[arg(long, value_delimiter = ',')]
    obs: Option<Vec<String>>,
    /// Actions, comma separated (default: those used in the expressions)
    #[arg(long, value_delimiter = ',')]
    act: Option<Vec<String>>,
    /// Print machine-readable JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two expressions are equivalent (exit 0 if so, 1 if not)
    Decide {
        #[command(flatten)]
        sig: SigArgs,
        left: String,
        right: String,
    },
    /// Show termination and the continuations of an expression for every letter
    Derive {
        #[command(flatten)]
        sig: SigArgs,
        expr: String,
    },
    /// Show the syntactic automaton of one or two expressions
    Automaton {
        #[command(flatten)]
        sig: SigArgs,
        /// Emit Graphviz
        #[arg(long)]
        dot: bool,
        /// Write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        left: String,
        right: Option<String>,
    },
    /// Print the equivalent atomic, closed form of an expression
    Hat {
        #[command(flatten)]
        sig: SigArgs,
        /// Also verify equivalence and bounded closedness
        #[arg(long)]
        check: bool,
        /// Word length bound for the closedness check
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        expr: String,
    },
    /// List the words of bounded length in the language of an expression
    Oracle {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        max_len: usize,
        /// Extra expansion length allowed (default: 2 * size + 2)
        #[arg(long)]
        slack: Option<usize>,
        expr: String,
    },
    /// Cross-check the deciders against the oracle on random pairs
    Crossval {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        /// Largest term size
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Word length bound for language comparisons
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        n_obs: usize,
        #[arg(long, default_value_t = 2)]
        n_act: usize,
        /// Run pairs one after another
        #[arg(long)]
        sequential: bool,
    },
}

type Failure = Box<dyn std::error::Error>;

fn signature(args: &SigArgs, exprs: &[&str]) -> Result<Signature, Failure> {
    Ok(Signature::with_defaults(args.obs.as_deref(), args.act.as_deref(), exprs)?)
}

fn parse(expr: &str, sig: &Signature) -> Result<Term, Failure> {
    Ok(parse_term(expr, sig)?)
}

fn render_set<'a>(ts: impl IntoIterator<Item = &'a Term>) -> Vec<String> {
    ts.into_iter().map(Term::render).collect()
}

fn letter_name(l: &Letter, sig: &Signature) -> String {
    match l {
        Letter::Atom(a) => render_atom(*a, sig),
        Letter::Action(x) => x.to_string(),
    }
}

fn describe(nda: &Nda, starts: &[kao::StateSet]) -> String {
    let sig = nda.signature();
    let mut out = String::new();
    for (i, q) in nda.states().iter().enumerate() {
        let mark = if nda.output(i) { " (accepting)" } else { "" };
        out.push_str(&format!("q{i}: {q}{mark}\n"));
    }
    for (k, s) in starts.iter().enumerate() {
        let names: Vec<String> = s.iter().map(|q| format!("q{q}")).collect();
        out.push_str(&format!("start {}: {{{}}}\n", k + 1, names.join(", ")));
    }
    for q in 0..nda.states().len() {
        for (li, l) in nda.letters().iter().enumerate() {
            let ts = nda.transition(q, li);
            if !ts.is_empty() {
                let names: Vec<String> = ts.iter().map(|t| format!("q{t}")).collect();
                out.push_str(&format!("q{q} --{}--> {}\n", letter_name(l, sig), names.join(", ")));
            }
        }
    }
    out
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Decide { sig, left, right } => {
            let s = signature(&sig, &[&left, &right])?;
            let (e, f) = (parse(&left, &s)?, parse(&right, &s)?);
            let verdict = decide(&e, &f, &s);
            if sig.json {
                writeln!(out, "{}", verdict.to_json(&s))?;
            } else {
                match &verdict {
                    kao::Verdict::Equivalent(r) => writeln!(out, "equivalent (relation of {} pairs)", r.len())?,
                    kao::Verdict::Inequivalent(w) => {
                        writeln!(out, "inequivalent")?;
                        writeln!(out, "witness: {}", render_word(w, &s))?;
                    }
                }
            }
            Ok(if verdict.is_equivalent() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Derive { sig, expr } => {
            let s = signature(&sig, &[&expr])?;
            let e = parse(&expr, &s)?;
            let actions: Vec<(String, Vec<String>)> =
                s.actions().iter().map(|a| (a.to_string(), render_set(&delta(&e, a, &s)))).collect();
            let atoms: Vec<(String, Vec<String>)> =
                all_atoms(&s).into_iter().map(|a| (render_atom(a, &s), render_set(&zeta(&e, a, &s)))).collect();
            if sig.json {
                let table = |rows: &[(String, Vec<String>)]| {
                    rows.iter().map(|(l, ts)| json!({"letter": l, "terms": ts})).collect::<Vec<_>>()
                };
                let v = json!({"epsilon": epsilon(&e), "delta": table(&actions), "zeta": table(&atoms)});
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "epsilon: {}", epsilon(&e) as u8)?;
                for (l, ts) in &actions {
                    writeln!(out, "delta {l}: {{{}}}", ts.join(", "))?;
                }
                for (l, ts) in &atoms {
                    writeln!(out, "zeta {l}: {{{}}}", ts.join(", "))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Automaton { sig, dot, output, left, right } => {
            let mut exprs = vec![left.as_str()];
            exprs.extend(right.as_deref());
            let s = signature(&sig, &exprs)?;
            let e = parse(&left, &s)?;
            let f = match &right {
                Some(r) => Some(parse(r, &s)?),
                None => None,
            };
            let (nda, u, v) = build_nda(&e, f.as_ref().unwrap_or(&e), &s);
            let starts = if f.is_some() { vec![u, v] } else { vec![u] };
            let text = if dot {
                to_dot(&nda, &starts)
            } else if sig.json {
                let states: Vec<_> = nda
                    .states()
                    .iter()
                    .enumerate()
                    .map(|(i, q)| json!({"term": q.render(), "accepting": nda.output(i)}))
                    .collect();
                let mut edges = Vec::new();
                for q in 0..nda.states().len() {
                    for (li, l) in nda.letters().iter().enumerate() {
                        for &t in nda.transition(q, li) {
                            edges.push(json!({"from": q, "letter": letter_name(l, &s), "to": t}));
                        }
                    }
                }
                let starts: Vec<Vec<usize>> = starts.iter().map(|st| st.iter().collect()).collect();
                format!("{}\n", json!({"states": states, "starts": starts, "transitions": edges}))
            } else {
                describe(&nda, &starts)
            };
            match output {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hat { sig, check, max_len, expr } => {
            let s = signature(&sig, &[&expr])?;
            let e = parse(&expr, &s)?;
            let h = hat(&e, &s);
            if !check {
                if sig.json {
                    writeln!(out, "{}", json!({"hat": h.render()}))?;
                } else {
                    writeln!(out, "{h}")?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let atomic = is_atomic(&h, &s);
            let equivalent = decide(&e, &h, &s).is_equivalent();
            let closed = closed_bounded(&h, max_len, default_slack(&h), &s)?;
            if sig.json {
                let v = json!({"hat": h.render(), "atomic": atomic, "equivalent": equivalent, "closed": closed, "max_len": max_len});
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{h}")?;
                writeln!(out, "atomic: {}", yes(atomic))?;
                writeln!(out, "equivalent: {}", yes(equivalent))?;
                writeln!(out, "closed up to length {max_len}: {}", yes(closed))?;
            }
            Ok(if atomic && equivalent && closed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Oracle { sig, max_len, slack, expr } => {
            let s = signature(&sig, &[&expr])?;
            let e = parse(&expr, &s)?;
            let m = slack.unwrap_or_else(|| default_slack(&e));
            let words = Oracle::new(&s).kao_language(&e, max_len, m)?;
            let rendered: Vec<String> = words.iter().map(|w| render_word(w, &s)).collect();
            if sig.json {
                writeln!(out, "{}", json!(rendered))?;
            } else {
                for w in rendered {
                    writeln!(out, "{w}")?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Crossval { seed, pairs, size, max_len, n_obs, n_act, sequential } => {
            let cfg = GenConfig { seed, max_size: size, n_obs, n_act, ..GenConfig::default() };
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            let report = cross_validate(&cfg, pairs, max_len, exec)?;
            out.write_all(report.to_json_lines().as_bytes())?;
            let s = report.summary();
            eprintln!(
                "{} pairs: {} equivalent, {} inequivalent, {} failures",
                s.pairs, s.equivalent, s.inequivalent, s.failures
            );
            Ok(if report.success() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
