//! The `mukanren` command-line runner.
//!
//! Exit status is 0 on success, 1 for usage, file or program errors and 2
//! when the time limit is reached. Answers found before a timeout are
//! still printed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use super::ast::{parse_with, Count};
use super::eval::Interpreter;
use super::print::print_store;
use crate::framework::ConstraintSystem;
use crate::stdlib::standard_system;

#[derive(Parser, Debug)]
#[command(
    name = "mukanren",
    version,
    about = "Run microKanren programs with symbolic constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every query in a program file.
    Run(RunArgs),
}

#[derive(clap::Args, Debug)]
pub struct RunArgs {
    /// Program file.
    pub file: PathBuf,
    /// Answers to take per query, overriding the program.
    #[arg(long, conflicts_with = "all")]
    pub take: Option<usize>,
    /// Take every answer of every query.
    #[arg(long)]
    pub all: bool,
    /// Wall-clock limit in seconds for the whole run.
    #[arg(long, default_value_t = 10.0)]
    pub timeout: f64,
    /// Print the constraint store of each answer.
    #[arg(long)]
    pub stores: bool,
    /// Constraint system the program runs against.
    #[arg(long, value_enum, default_value_t = SystemChoice::Standard)]
    pub system: SystemChoice,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemChoice {
    EqualityOnly,
    Standard,
}

impl SystemChoice {
    pub fn system(self) -> ConstraintSystem {
        match self {
            SystemChoice::EqualityOnly => ConstraintSystem::equality_only(),
            SystemChoice::Standard => standard_system(),
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_TIMEOUT: i32 = 2;

enum Event {
    Line(String),
    Done,
}

/// Parses `args` (program name first) and runs the command, writing
/// answers to `out` and diagnostics to `err`. Returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    match cli.command {
        Command::Run(args) => run(&args, out, err),
    }
}

/// Runs one program file.
pub fn run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(args.timeout.is_finite() && args.timeout > 0.0) {
        let _ = writeln!(err, "error: --timeout must be a positive number of seconds");
        return EXIT_ERROR;
    }
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.file.display());
            return EXIT_ERROR;
        }
    };
    let system = args.system.system();
    let program = match parse_with(&text, &system) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{}:{e}", args.file.display());
            return EXIT_ERROR;
        }
    };
    let override_count = if args.all {
        Some(Count::All)
    } else {
        args.take.map(Count::Take)
    };

    let interp = Interpreter::new(&program, &system);
    let mut runs = Vec::with_capacity(program.queries.len());
    for q in &program.queries {
        match interp.answers(q, override_count.unwrap_or(q.count)) {
            Ok(a) => runs.push(a),
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", args.file.display());
                return EXIT_ERROR;
            }
        }
    }

    let cancel = Arc::new(AtomicBool::new(false));
    let (tx, rx) = mpsc::channel();
    let many = runs.len() > 1;
    let stores = args.stores;
    let flag = cancel.clone();
    thread::spawn(move || {
        for (i, answers) in runs.into_iter().enumerate() {
            if many && tx.send(Event::Line(format!(";; query {}", i + 1))).is_err() {
                return;
            }
            let mut found = false;
            for a in answers.with_cancel(flag.clone()) {
                found = true;
                let mut line = a.readback().to_string();
                if stores {
                    line.push_str("\n  ");
                    line.push_str(&print_store(&a.state));
                }
                if tx.send(Event::Line(line)).is_err() {
                    return;
                }
            }
            if flag.load(Ordering::Relaxed) {
                return;
            }
            if !found && tx.send(Event::Line("no answers".into())).is_err() {
                return;
            }
        }
        let _ = tx.send(Event::Done);
    });

    let deadline = Instant::now() + Duration::from_secs_f64(args.timeout);
    loop {
        let left = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(left) {
            Ok(Event::Line(l)) => {
                let _ = writeln!(out, "{l}");
                let _ = out.flush();
            }
            Ok(Event::Done) => return EXIT_OK,
            Err(mpsc::RecvTimeoutError::Timeout) => {
                cancel.store(true, Ordering::Relaxed);
                let _ = out.flush();
                let _ = writeln!(err, "timeout: no further answers within {}s", args.timeout);
                return EXIT_TIMEOUT;
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => {
                let _ = writeln!(err, "error: evaluation aborted");
                return EXIT_ERROR;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(text: &str, extra: &[&str]) -> (i32, String, String) {
        let dir = std::env::temp_dir().join(format!("mukanren-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("{:x}.mk", text.len() * 31 + extra.len()));
        std::fs::write(&path, text).unwrap();
        let mut args = vec![
            "mukanren".to_string(),
            "run".into(),
            path.display().to_string(),
        ];
        args.extend(extra.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with_args(args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn prints_answers_and_no_answers() {
        let (code, out, _) = run_text("(run 1 (q) (== q 'a)) (run 1 (q) fail)", &[]);
        assert_eq!(code, 0);
        assert_eq!(out, ";; query 1\na\n;; query 2\nno answers\n");
    }

    #[test]
    fn take_overrides_program_count() {
        let (code, out, _) = run_text("(run* (q) (disj (== q 'a) (== q 'b)))", &["--take", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "a\n");
    }

    #[test]
    fn divergence_times_out_with_code_two() {
        let text = "(define-relation (loop x) (loop x))
                    (run 2 (q) (disj (== q 'a) (loop q)))";
        let (code, out, err) = run_text(text, &["--timeout", "0.3"]);
        assert_eq!(code, 2);
        assert_eq!(out, "a\n");
        assert!(err.contains("timeout"), "{err}");
    }

    #[test]
    fn parse_errors_exit_one_with_position() {
        let (code, _, err) = run_text("(run 1 (q)\n  (== q 5))", &[]);
        assert_eq!(code, 1);
        assert!(err.contains(":2:"), "{err}");
    }

    #[test]
    fn bad_usage_exits_one_and_help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(main_with_args(["mukanren", "frob"], &mut out, &mut err), 1);
        assert_eq!(
            main_with_args(["mukanren", "--help"], &mut out, &mut err),
            0
        );
    }
}
