//! The `wadgeforge` command line. Every verb parses its inputs, makes one
//! library call and prints `key=value` lines.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on domain errors such as
//! malformed input or unsupported constructions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use wadgeforge_core::concil::{build_omega, member, ConcilError, Env, Expr};
use wadgeforge_core::game::{builtin_strategy, play, GameError, Rules};
use wadgeforge_core::ordinal::{h_map, h_preimage, Base, Cofinality, Ordinal, OrdinalError};
use wadgeforge_core::pda::concil_pda::{build_ce, build_sigma_omega_complete};
use wadgeforge_core::pda::named::{make_named, CodeAlphabet, Named};
use wadgeforge_core::pda::{Pda, PdaError};
use wadgeforge_core::words::{
    eraser_eval_index, h_decode, h_prefix, parse_letters, staged_eval_range, EraserCode, EraserMode, EvalError, Letter,
    Word, WordError,
};

use crate::config::{Config, ConfigError};
use crate::formats::{read_grid, read_pda, write_pda, FormatError};

#[derive(Debug, Parser)]
#[command(name = "wadgeforge", version, about = "Ordinals, conciliating sets and Büchi pushdown automata")]
pub struct Cli {
    /// Human readable output instead of key=value lines.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// key=value file with bounds (step_limit, game_rounds).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal arithmetic.
    #[command(subcommand)]
    Ord(OrdCommand),
    /// The map H from input degrees to conciliating degrees, or its inverse.
    Hmap {
        ordinal: String,
        #[arg(long)]
        invert: bool,
    },
    /// Builds an expression of the given conciliating degree.
    Omega { ordinal: String },
    /// Eraser evaluation of a word.
    Eval {
        word: String,
        #[arg(long, value_enum, default_value_t = Mode::Tilde)]
        mode: Mode,
        /// Apply erasers n, n-1, ..., 1 in turn.
        #[arg(long)]
        stages: Option<u32>,
    },
    /// Membership of a word in the language of an expression read from a file.
    Member {
        expr_file: PathBuf,
        word: String,
        #[command(flatten)]
        atoms: AtomArgs,
    },
    #[command(subcommand)]
    Pda(PdaCommand),
    #[command(subcommand)]
    Game(GameCommand),
    #[command(subcommand)]
    Code(CodeCommand),
}

#[derive(Debug, Subcommand)]
pub enum OrdCommand {
    /// Normalizes an ordinal expression.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = BaseArg::W)]
        base: BaseArg,
    },
    /// Compares two ordinal expressions.
    Cmp {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = BaseArg::W)]
        base: BaseArg,
    },
    /// Checks that the text is already in Cantor normal form.
    Cnf {
        expr: String,
        #[arg(long, value_enum, default_value_t = BaseArg::W)]
        base: BaseArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum PdaCommand {
    /// Writes a named automaton, or the C^e or completion construction of `--in`.
    Build {
        /// A language name (LB, LC, ..., HComplement), `ce` or `sigma-omega`.
        what: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base letters.
        #[arg(long, default_value = "01")]
        sigma: String,
        /// Marker level of the eraser code letters.
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Runs an automaton on a word.
    Run { file: PathBuf, word: String },
}

#[derive(Debug, Subcommand)]
pub enum GameCommand {
    /// Plays a bounded game between two expressions.
    Play {
        a: String,
        b: String,
        #[arg(long, value_enum)]
        s1: StrategyArg,
        #[arg(long, value_enum)]
        s2: StrategyArg,
        #[arg(long)]
        rounds: Option<usize>,
        /// Player 1 must open with a letter.
        #[arg(long)]
        strict_opening: bool,
        /// Also print one line per move.
        #[arg(long)]
        transcript: bool,
        #[command(flatten)]
        atoms: AtomArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCommand {
    /// The diagonal coding of a grid prefix.
    HPrefix { grid_file: PathBuf },
    /// Recovers the grid prefix from its coding.
    HDecode { word: String },
}

#[derive(Debug, Args)]
pub struct AtomArgs {
    /// Atom automaton, `id=file`.
    #[arg(long = "atom", value_name = "ID=FILE")]
    pub atoms: Vec<String>,
    /// Automaton for an atom's complement, `id=file`.
    #[arg(long = "co", value_name = "ID=FILE")]
    pub complements: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Tilde,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    /// ω
    W,
    /// ω₁
    W1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum StrategyArg {
    Copy,
    SkipForever,
    EmbedCopy,
}

impl StrategyArg {
    fn name(self) -> &'static str {
        match self {
            StrategyArg::Copy => "copy",
            StrategyArg::SkipForever => "skip_forever",
            StrategyArg::EmbedCopy => "embed_copy",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain { .. } => 2,
        }
    }
}

fn domain(kind: &'static str, e: impl ToString) -> CliError {
    CliError::Domain { kind, message: e.to_string() }
}

impl From<OrdinalError> for CliError {
    fn from(e: OrdinalError) -> Self {
        let kind = if matches!(e, OrdinalError::Parse { .. } | OrdinalError::NotNormal(_)) { "malformed" } else { "ordinal" };
        domain(kind, e)
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        domain("malformed", e)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        domain("malformed", e)
    }
}

impl From<PdaError> for CliError {
    fn from(e: PdaError) -> Self {
        domain("automaton", e)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        domain("config", e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NoStabilization { .. } => domain("no_stabilization", e),
            _ => domain("eval", e),
        }
    }
}

impl From<ConcilError> for CliError {
    fn from(e: ConcilError) -> Self {
        let kind = match &e {
            ConcilError::Parse { .. } => "malformed",
            ConcilError::Unsupported(_) => "unsupported",
            ConcilError::Precondition(_) => "precondition",
            ConcilError::CaseH(_) => "not_realizable",
            ConcilError::ForeignLetter(_) => "foreign_letter",
            ConcilError::UnknownAtom(_) | ConcilError::UnknownDegree(_) => "unknown_atom",
            ConcilError::Eval(EvalError::NoStabilization { .. }) => "no_stabilization",
            _ => "concil",
        };
        domain(kind, e)
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Concil(c) => c.into(),
            other => domain("game", other),
        }
    }
}

/// Collected output lines; each line is a list of `key=value` pairs.
#[derive(Debug, Default)]
pub struct Report {
    pretty: bool,
    lines: Vec<Vec<(&'static str, String)>>,
}

impl Report {
    fn line(&mut self, pairs: &[(&'static str, String)]) {
        self.lines.push(pairs.to_vec());
    }

    fn ord(&self, o: &Ordinal) -> String {
        if self.pretty {
            o.pretty()
        } else {
            o.to_string()
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for line in &self.lines {
            let sep = if self.pretty { ": " } else { "=" };
            let parts: Vec<String> = line.iter().map(|(k, v)| format!("{k}{sep}{v}")).collect();
            s.push_str(&parts.join(if self.pretty { ", " } else { " " }));
            s.push('\n');
        }
        s
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first). `env` looks up
/// environment variables, so tests can run without touching the process.
pub fn run<I, T>(args: I, env: &dyn Fn(&str) -> Option<String>) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput { code, stdout: text, stderr: String::new() }
            } else {
                RunOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut report = Report { pretty: cli.pretty, lines: Vec::new() };
    match execute(&cli, env, &mut report) {
        Ok(()) => RunOutput { code: 0, stdout: report.render(), stderr: String::new() },
        Err(e) => {
            let stderr = match &e {
                CliError::Usage(m) => format!("error: {m}\n"),
                CliError::Domain { kind, message } => format!("error={kind} message={message}\n"),
            };
            RunOutput { code: e.exit_code(), stdout: report.render(), stderr }
        }
    }
}

fn base(b: BaseArg) -> Base {
    match b {
        BaseArg::W => Base::Omega,
        BaseArg::W1 => Base::Omega1,
    }
}

fn mode(m: Mode) -> EraserMode {
    match m {
        Mode::Tilde => EraserMode::Tilde,
        Mode::Approx => EraserMode::Approx,
    }
}

fn cofinality(c: Cofinality) -> &'static str {
    match c {
        Cofinality::Zero => "0",
        Cofinality::One => "1",
        Cofinality::Omega => "w",
        Cofinality::Omega1 => "w1",
    }
}

fn kind(w: &Word) -> &'static str {
    if w.is_finite() {
        "finite"
    } else {
        "up"
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| domain("io", format!("{}: {e}", path.display())))
}

pub fn load_pda(path: &Path) -> Result<Pda, CliError> {
    Ok(read_pda(&read_file(path)?)?)
}

fn load_env(args: &AtomArgs) -> Result<Env, CliError> {
    let split = |s: &String| -> Result<(String, PathBuf), CliError> {
        let (id, file) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("expected ID=FILE, got {s:?}")))?;
        Ok((id.to_string(), PathBuf::from(file)))
    };
    let mut co = std::collections::BTreeMap::new();
    for s in &args.complements {
        let (id, file) = split(s)?;
        co.insert(id, load_pda(&file)?);
    }
    let mut env = Env::new();
    for s in &args.atoms {
        let (id, file) = split(s)?;
        let complement = co.remove(&id);
        env.insert(&id, load_pda(&file)?, complement);
    }
    if let Some(id) = co.keys().next() {
        return Err(CliError::Usage(format!("--co {id} has no matching --atom")));
    }
    Ok(env)
}

/// Evaluates with the single eraser index of `w`, or stages `n … 1`.
pub fn eval_word(w: &Word, m: EraserMode, stages: Option<u32>, limit: usize) -> Result<Word, EvalError> {
    if let Some(n) = stages {
        return staged_eval_range(w, 1, n, m, limit);
    }
    let indices: BTreeSet<u32> = w.letters().filter_map(|l| if let Letter::Eraser(j) = l { Some(*j) } else { None }).collect();
    match indices.len() {
        0 => Ok(w.clone()),
        1 => eraser_eval_index(w, *indices.first().expect("one index"), m, limit),
        _ => Err(EvalError::SeveralErasers),
    }
}

fn execute(cli: &Cli, env: &dyn Fn(&str) -> Option<String>, out: &mut Report) -> Result<(), CliError> {
    let config = Config::load(cli.config.as_deref(), env)?;
    match &cli.command {
        Command::Ord(op) => match op {
            OrdCommand::Eval { expr, base: b } => {
                let o = Ordinal::parse(base(*b), expr)?;
                out.line(&[("result", out.ord(&o))]);
                out.line(&[("cofinality", cofinality(o.cofinality()).into())]);
            }
            OrdCommand::Cmp { left, right, base: b } => {
                let l = Ordinal::parse(base(*b), left)?;
                let r = Ordinal::parse(base(*b), right)?;
                let rel = match l.compare(&r)? {
                    Ordering::Less => "lt",
                    Ordering::Equal => "eq",
                    Ordering::Greater => "gt",
                };
                out.line(&[("result", rel.into())]);
            }
            OrdCommand::Cnf { expr, base: b } => {
                let o = Ordinal::parse_cnf(base(*b), expr)?;
                out.line(&[("result", out.ord(&o))]);
            }
        },
        Command::Hmap { ordinal, invert: false } => {
            let a = Ordinal::parse(Base::Omega, ordinal)?;
            let h = h_map(&a)?;
            out.line(&[("result", out.ord(&h))]);
        }
        Command::Hmap { ordinal, invert: true } => {
            let d = Ordinal::parse(Base::Omega1, ordinal)?;
            match h_preimage(&d)? {
                Some(a) => out.line(&[("result", out.ord(&a))]),
                None => out.line(&[("result", "none".into())]),
            }
        }
        Command::Omega { ordinal } => {
            let d = Ordinal::parse(Base::Omega1, ordinal)?;
            let e = build_omega(&d)?;
            let got = e.degree()?;
            out.line(&[("expr", e.to_string())]);
            out.line(&[("degree", out.ord(&got))]);
        }
        Command::Eval { word, mode: m, stages } => {
            let w = Word::parse(word)?;
            match eval_word(&w, mode(*m), *stages, config.step_limit) {
                Ok(v) => out.line(&[("result", v.to_string()), ("kind", kind(&v).into())]),
                Err(EvalError::Undefined) => out.line(&[("result", "undefined".into()), ("kind", "undefined".into())]),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Member { expr_file, word, atoms } => {
            let expr: Expr = read_file(expr_file)?.trim().parse()?;
            let w = Word::parse(word)?;
            let env = load_env(atoms)?;
            let node = expr.compile(&env)?;
            out.line(&[("member", member(&node, &w)?.to_string())]);
        }
        Command::Pda(PdaCommand::Build { what, input, out: path, sigma, level }) => {
            let sigma = parse_letters(sigma, 0)?;
            let p = match what.as_str() {
                "ce" | "sigma-omega" => {
                    let file = input.as_ref().ok_or_else(|| CliError::Usage(format!("pda build {what} needs --in")))?;
                    let l = load_pda(file)?;
                    if what == "ce" {
                        build_ce(&l, &sigma)?
                    } else {
                        build_sigma_omega_complete(&l, &sigma)?
                    }
                }
                name => {
                    let named: Named = name.parse().map_err(|_| CliError::Usage(format!("unknown language {name}")))?;
                    make_named(named, &CodeAlphabet::new(sigma, EraserCode { level: *level, offset: 0 }))?
                }
            };
            let text = write_pda(&p);
            out.line(&[("states", p.states().len().to_string()), ("rules", p.rules().len().to_string())]);
            match path {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| domain("io", format!("{}: {e}", path.display())))?;
                    out.line(&[("out", path.display().to_string())]);
                }
                None => out.lines.extend(text.lines().map(|l| vec![("pda", l.to_string())])),
            }
        }
        Command::Pda(PdaCommand::Run { file, word }) => {
            let p = load_pda(file)?;
            let w = Word::parse(word)?;
            if let Some(l) = w.letters().find(|l| !p.alphabet().contains(l)) {
                return Err(domain("foreign_letter", format!("letter {l} is not in the alphabet")));
            }
            out.line(&[("accepted", p.accepts(&w).to_string())]);
        }
        Command::Game(GameCommand::Play { a, b, s1, s2, rounds, strict_opening, transcript, atoms }) => {
            let (ea, eb): (Expr, Expr) = (a.parse()?, b.parse()?);
            let env = load_env(atoms)?;
            let (na, nb) = (ea.compile(&env)?, eb.compile(&env)?);
            let shared: BTreeSet<Letter> = na.alphabet.intersection(&nb.alphabet).copied().collect();
            let st1 = builtin_strategy(s1.name(), &shared)?;
            let st2 = builtin_strategy(s2.name(), &shared)?;
            let rounds = rounds.unwrap_or(config.game_rounds);
            let rec = play(&na, &nb, st1.as_ref(), st2.as_ref(), rounds, Rules { strict_opening: *strict_opening })?;
            out.line(&[("outcome", rec.outcome.to_string())]);
            out.line(&[("x", rec.x.to_string()), ("y", rec.y.to_string())]);
            if *transcript {
                for (r, p, m) in &rec.transcript {
                    let p = if *p == wadgeforge_core::game::Player::One { "1" } else { "2" };
                    out.line(&[("round", r.to_string()), ("player", p.into()), ("move", m.to_string())]);
                }
            }
        }
        Command::Code(CodeCommand::HPrefix { grid_file }) => {
            let g = read_grid(&read_file(grid_file)?)?;
            out.line(&[("result", Word::finite(h_prefix(&g)).to_string())]);
        }
        Command::Code(CodeCommand::HDecode { word }) => {
            let w = Word::parse(word)?;
            if !w.is_finite() {
                return Err(domain("malformed", "only finite words code grid prefixes"));
            }
            let g = h_decode(w.stem()).ok_or_else(|| domain("malformed", "not the coding of a grid prefix"))?;
            out.line(&[("depth", g.depth().to_string())]);
            for r in g.rows() {
                out.line(&[("row", Word::finite(r.clone()).to_string())]);
            }
        }
    }
    Ok(())
}
