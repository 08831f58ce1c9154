//! `mpv run <script>`: executes a geometry script and prints numbered
//! results, in the session style `o<N> = <value>`.
//!
//! Exit codes: 0 success, 1 failed assertion, 2 parse or runtime error
//! (including per-statement timeouts).

use std::path::PathBuf;
use std::process::exit;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use mpv_cli::{script, session};
use mpv_core::FieldSpec;
use session::{Record, RunError, Session};

#[derive(Parser)]
#[command(name = "mpv", about = "Multi-projective varieties and multi-rational maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script file.
    Run {
        script: PathBuf,
        /// Emit the results as a JSON array instead of text.
        #[arg(long)]
        json: bool,
        /// Seed for the session's random choices (points, probabilistic cuts).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the script's field: QQ or GF:<p>.
        #[arg(long)]
        field: Option<String>,
        /// Per-statement wall-clock limit in seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { script, json, seed, field, timeout } => run(script, json, seed, field, timeout),
    }
}

fn run(path: PathBuf, json: bool, seed: u64, field: Option<String>, timeout: Option<u64>) {
    let field = field.map(|s| parse_field(&s).unwrap_or_else(|e| fatal(&e)));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| fatal(&format!("cannot read {}: {}", path.display(), e)));
    let statements = script::parse_script(&text)
        .unwrap_or_else(|e| fatal(&format!("{}: {}", path.display(), e)));

    enum Event {
        Begin(usize),
        Done(Option<Record>),
        Failed(RunError),
        Finished,
    }

    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let mut session = Session::new(seed, field);
        for st in &statements {
            if tx.send(Event::Begin(st.line)).is_err() {
                return;
            }
            match session.execute(st) {
                Ok(rec) => {
                    if tx.send(Event::Done(rec)).is_err() {
                        return;
                    }
                }
                Err(e) => {
                    let _ = tx.send(Event::Failed(e));
                    return;
                }
            }
        }
        let _ = tx.send(Event::Finished);
    });

    let limit = timeout.map(Duration::from_secs);
    let mut records: Vec<Record> = Vec::new();
    let mut current_line = 0usize;
    let mut started = Instant::now();
    loop {
        let event = match limit {
            None => rx.recv().ok(),
            Some(limit) => {
                let waited = started.elapsed();
                let rest = limit.checked_sub(waited).unwrap_or(Duration::ZERO);
                match rx.recv_timeout(rest) {
                    Ok(e) => Some(e),
                    Err(mpsc::RecvTimeoutError::Timeout) => {
                        eprintln!(
                            "line {}: statement exceeded the {}s limit",
                            current_line,
                            limit.as_secs()
                        );
                        exit(2);
                    }
                    Err(mpsc::RecvTimeoutError::Disconnected) => None,
                }
            }
        };
        match event {
            Some(Event::Begin(line)) => {
                current_line = line;
                started = Instant::now();
            }
            Some(Event::Done(rec)) => {
                // between statements the clock must not keep running
                started = Instant::now();
                if let Some(rec) = rec {
                    if json {
                        records.push(rec);
                    } else {
                        print_text(&rec);
                    }
                }
            }
            Some(Event::Failed(e)) => {
                eprintln!("line {}: {}", e.line, e.msg);
                exit(if e.assert_failure { 1 } else { 2 });
            }
            Some(Event::Finished) | None => break,
        }
    }
    if json {
        let doc: Vec<_> = records.iter().map(|r| r.json.clone()).collect();
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    }
}

/// `o<N> = <value>`, continuation lines aligned under the value column.
fn print_text(rec: &Record) {
    let prefix = format!("o{} = ", rec.n);
    let pad = " ".repeat(prefix.len());
    for (i, line) in rec.text.lines().enumerate() {
        if i == 0 {
            println!("{}{}", prefix, line);
        } else {
            println!("{}{}", pad, line);
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = s.strip_prefix("GF:") {
        let p: u64 = p.parse().map_err(|_| format!("bad characteristic '{}'", p))?;
        return FieldSpec::prime_field(p).map_err(|e| e.to_string());
    }
    Err(format!("bad field '{}', use QQ or GF:<p>", s))
}

fn fatal(msg: &str) -> ! {
    eprintln!("{}", msg);
    exit(2)
}
