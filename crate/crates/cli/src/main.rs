use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stylic::evacuation::{delta_direct, e_of, evac, jdt, JdtStrategy};
use stylic::stylic::{delta_word, n_tableau, pi, DEFAULT_ENUMERATION_LIMIT, FORCED_ENUMERATION_LIMIT};
use stylic::tableaux::p_tableau;
use stylic::verify::{run_all, run_suite, Suite, SuiteReport, VerifyOptions};
use stylic::{Alphabet, Error, LetterStyle, SetPartition, SkewPartition, StylicMonoid, Word};

#[derive(Parser)]
#[command(name = "styl", version, about = "Compute in the stylic monoid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one operation to a word, partition or skew partition.
    Compute {
        kind: Kind,
        input: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// List the elements, idempotents or J-order of Styl(A).
    Enumerate {
        what: What,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
        /// Allow n = 7.
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Schensted tableau of a word.
    #[value(name = "P")]
    P,
    /// N-tableau of a word.
    #[value(name = "N")]
    N,
    /// Set partition of a word.
    #[value(name = "pi")]
    Pi,
    /// Evacuation of a set partition.
    #[value(name = "evac")]
    Evac,
    /// The word θ(w).
    #[value(name = "theta")]
    Theta,
    /// The word δ(w).
    #[value(name = "delta")]
    Delta,
    /// Δ of a set partition.
    #[value(name = "Delta")]
    BigDelta,
    /// Rectification of a skew partition.
    #[value(name = "jdt")]
    Jdt,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Monoid,
    Idempotents,
    Jorder,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Compute { kind, input, n, json } => compute(kind, &input, Alphabet::new(n)?, json).map(|_| true),
        Command::Enumerate { what, n, json, dot, force } => enumerate(what, n, json, dot, force).map(|_| true),
        Command::Verify { suite, n, maxlen, seed, json, force } => {
            let limit = limit(n, force)?;
            let opts = VerifyOptions { maxlen, seed, limit };
            let reports = if suite == "all" {
                run_all(n, &opts)?
            } else {
                vec![run_suite(suite.parse::<Suite>()?, n, &opts)?]
            };
            print_reports(&reports, json);
            Ok(reports.iter().all(SuiteReport::passed))
        }
    }
}

fn limit(n: usize, force: bool) -> Result<usize, Error> {
    if n > DEFAULT_ENUMERATION_LIMIT && !force {
        return Err(Error::ResourceLimit(format!("n = {n} needs --force")));
    }
    if force && n == FORCED_ENUMERATION_LIMIT {
        eprintln!("warning: n = {n} builds 2^{n} column states and a large monoid");
    }
    Ok(if force { FORCED_ENUMERATION_LIMIT } else { DEFAULT_ENUMERATION_LIMIT })
}

fn or_empty(s: String) -> String {
    if s.is_empty() {
        "∅".to_string()
    } else {
        s
    }
}

fn word(input: &str, alphabet: Alphabet) -> Result<Word, Error> {
    let w: Word = input.parse()?;
    alphabet.check_word(&w)?;
    Ok(w)
}

fn partition(input: &str, alphabet: Alphabet) -> Result<SetPartition, Error> {
    let r: SetPartition = input.parse()?;
    alphabet.check_set(r.ground())?;
    Ok(r)
}

fn compute(kind: Kind, input: &str, alphabet: Alphabet, as_json: bool) -> Result<(), Error> {
    let style = LetterStyle::detect(input);
    let (text, value) = match kind {
        Kind::P => {
            let t = p_tableau(&word(input, alphabet)?);
            (or_empty(t.render(style)), json!(t))
        }
        Kind::N => {
            let t = n_tableau(&word(input, alphabet)?);
            (or_empty(t.render(style)), json!(t))
        }
        Kind::Pi => {
            let r = pi(&word(input, alphabet)?);
            (r.render(style), json!(r))
        }
        Kind::Theta => {
            let t = word(input, alphabet)?.theta(alphabet)?;
            (or_empty(t.render(style)), json!(t))
        }
        Kind::Delta => {
            let d = delta_word(&word(input, alphabet)?);
            (or_empty(d.render(style)), json!(d))
        }
        Kind::BigDelta => {
            let r = partition(input, alphabet)?;
            let d = delta_direct(&r)?;
            (d.render(style), json!({ "e": e_of(&r)?, "result": d }))
        }
        Kind::Evac => {
            let r = partition(input, alphabet)?;
            let mut chain = vec![r.clone()];
            while !chain.last().unwrap().is_empty() {
                let next = delta_direct(chain.last().unwrap())?;
                chain.push(next);
            }
            let e = evac(&r, alphabet)?;
            let mut text: Vec<String> =
                chain.iter().enumerate().map(|(i, p)| format!("Δ^{i}: {}", p.render(style))).collect();
            text.push(format!("evac: {}", e.render(style)));
            (text.join("\n"), json!({ "chain": chain, "evac": e }))
        }
        Kind::Jdt => {
            let s: SkewPartition = input.parse()?;
            alphabet.check_set(s.support())?;
            let r = jdt(&s, JdtStrategy::Lowest);
            (r.render(style), json!(r))
        }
    };
    if as_json {
        println!("{value}");
    } else {
        println!("{text}");
    }
    Ok(())
}

fn enumerate(what: What, n: usize, as_json: bool, dot: bool, force: bool) -> Result<(), Error> {
    let limit = limit(n, force)?;
    let m = StylicMonoid::enumerate_with_limit(Alphabet::new(n)?, limit)?;
    let style = LetterStyle::fitting(n as u8);
    let row = |i: usize| {
        let e = m.element(i);
        let w = e.canonical_word();
        let w = if w.is_empty() { "1".to_string() } else { w.render(style) };
        format!("{i}\t{w}\t{}\t{}", e.partition().render(style), e.boxes())
    };
    match what {
        What::Monoid if as_json => println!("{}", m.to_json()),
        What::Monoid => (0..m.len()).for_each(|i| println!("{}", row(i))),
        What::Idempotents => {
            let idem = m.idempotents();
            if as_json {
                let words: Vec<String> = idem.iter().map(|&i| m.element(i).canonical_word().render(style)).collect();
                println!("{}", json!({ "indices": idem, "words": words }));
            } else {
                idem.iter().for_each(|&i| println!("{}", row(i)));
            }
        }
        What::Jorder => {
            let j = m.j_order();
            if dot {
                print!("{}", j.to_dot(&m));
            } else if as_json {
                let value = json!({
                    "size": j.size,
                    "covers": j.covers,
                    "corank": j.corank,
                    "jTrivial": j.j_trivial,
                    "graded": j.graded,
                });
                println!("{value}");
            } else {
                for &(u, v) in &j.covers {
                    println!("{u} < {v}");
                }
            }
        }
    }
    Ok(())
}

fn print_reports(reports: &[SuiteReport], as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(reports).expect("serializable"));
        return;
    }
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{status} {} n={} checks={}", r.suite, r.n, r.checks);
        for note in &r.notes {
            println!("  {note}");
        }
        for f in &r.findings {
            println!("  finding: {f}");
        }
        for f in &r.failures {
            println!("  counterexample: {f}");
        }
    }
}
