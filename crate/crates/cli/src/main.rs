//! `pebblegame`: solve two-player pebbling positions, compute pebbling
//! numbers, classify `(K_1 ∪ T) ∨ H` configurations, and run the
//! verification suites.
//!
//! Exit status: 0 on success, 1 if a suite reports disagreements, 2 on bad
//! input, 3 if a search exceeded its budget.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pebblegame::certificate::{infinity_certificate, InfinityCertificate};
use pebblegame::corpus::{diameter_two_exhibit, tree_exemplar};
use pebblegame::esg::{best_pick, solve_esg, EsgInstance, EsgPlayer, EsgState, JRule};
use pebblegame::family::{complete, complete_multipartite, grid, path, path_power};
use pebblegame::gst::{classify, view, Fallback, Rule};
use pebblegame::numbers::{combine_roots, eta_rooted_report, pi, pi_rooted, EtaOptions, EtaReport, EtaResult};
use pebblegame::verify::{run_suite, Suite, VerifyOptions};
use pebblegame::{Configuration, Game, GameState, Graph, GstDescriptor, Move, Player, Solver, Vertex};

#[derive(Parser, Debug)]
#[command(name = "pebblegame", version, about = "Exact solver for the two-player pebbling game")]
struct Cli {
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "PEBBLE_WORKERS")]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Winner of a configuration under optimal play, Mover first.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Write the optimal-play transcript here as JSON lines.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Classical pebbling number.
    Pi {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Two-player pebbling number.
    Eta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest configuration size searched.
        #[arg(long, default_value_t = 16)]
        budget: u32,
        /// Largest cut set tried by the certificate search; 0 disables it.
        #[arg(long, default_value_t = 4)]
        max_cut: usize,
        /// Omit the classical pebbling number from the report.
        #[arg(long)]
        skip_pi: bool,
    },
    /// Search for cut-set certificates that the two-player pebbling number is unbounded.
    CertifyInfinite {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 4)]
        max_cut: usize,
    },
    /// Classify a configuration on `(K_1 ∪ T) ∨ H`.
    Classify {
        #[command(flatten)]
        gst: GstArgs,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value_t = FallbackArg::Esg)]
        fallback: FallbackArg,
        /// Round rule for the element selecting game fallback.
        #[arg(long, value_enum, default_value_t = JRuleArg::CappedByX)]
        j_rule: JRuleArg,
    },
    /// Solve an element selecting game instance file.
    Esg { file: PathBuf },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        s_max: Option<usize>,
        #[arg(long)]
        t_max: Option<usize>,
        #[arg(long)]
        max_size: Option<u32>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Random instances drawn, where a suite samples.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall time; makes the report nondeterministic.
        #[arg(long)]
        timing: bool,
        /// Emit JSON (default).
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit one CSV row per oracle-sweep case.
        #[arg(long)]
        csv: bool,
    },
    /// Play against the engine.
    Play {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Read your moves from stdin; otherwise the engine plays both sides.
        #[arg(long)]
        interactive: bool,
        #[arg(long, value_enum, default_value_t = Side::Mover)]
        side: Side,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FamilyArg {
    Complete,
    Path,
    PathPower,
    Grid,
    Multipartite,
    Gst,
    TreeExemplar,
    DiameterTwoExhibit,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FallbackArg {
    Esg,
    BruteForce,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum JRuleArg {
    HalfK,
    CappedByX,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Side {
    Mover,
    Defender,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Graph file: `n root` then one `u v` edge per line.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Part sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    #[command(flatten)]
    gst: GstArgs,
    /// Root vertex; overrides the root stored with the graph.
    #[arg(long)]
    root: Option<Vertex>,
}

#[derive(Args, Debug)]
struct GstArgs {
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Edges of H over S-local labels, e.g. `0-1,1-2`.
    #[arg(long, value_delimiter = ',')]
    h: Vec<String>,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Configuration file: one count per vertex, whitespace separated.
    #[arg(long, conflicts_with = "counts")]
    config: Option<PathBuf>,
    /// Inline configuration, e.g. `"0 0 3"`.
    #[arg(long, allow_hyphen_values = true)]
    counts: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Budget(String),
}

impl From<pebblegame::Error> for CliError {
    fn from(e: pebblegame::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: pebblegame::Error| e.to_string())
}

fn read_file(p: &Path) -> CliResult<String> {
    fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))
}

fn need(v: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    v.ok_or_else(|| input(format!("--family {family} needs --{flag}")))
}

impl GstArgs {
    fn descriptor(&self) -> CliResult<GstDescriptor> {
        let s = self.s.ok_or_else(|| input("gst needs --s"))?;
        let t = self.t.ok_or_else(|| input("gst needs --t"))?;
        let edges = self
            .h
            .iter()
            .filter(|e| !e.is_empty())
            .map(|e| {
                let (a, b) = e.split_once('-').ok_or_else(|| input(format!("bad H edge `{e}`")))?;
                let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| input(format!("bad H edge `{e}`")));
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(GstDescriptor::new(s, t, edges)?)
    }

    fn label(&self) -> String {
        format!(
            "gst(s={},t={},h=[{}])",
            self.s.unwrap_or(0),
            self.t.unwrap_or(0),
            self.h.join(",")
        )
    }
}

impl GraphArgs {
    /// The graph and a display name. The root is applied when given.
    fn load(&self) -> CliResult<(Graph, String)> {
        let (g, name) = match (&self.graph, self.family) {
            (Some(p), _) => (Graph::parse_text(&read_file(p)?)?, p.display().to_string()),
            (None, Some(f)) => self.build(f)?,
            (None, None) => return Err(input("give --graph FILE or --family NAME")),
        };
        let g = match self.root {
            Some(r) => g.with_root(r)?,
            None => g,
        };
        Ok((g, name))
    }

    fn build(&self, f: FamilyArg) -> CliResult<(Graph, String)> {
        Ok(match f {
            FamilyArg::Complete => {
                let n = need(self.n, "n", "complete")?;
                (complete(n)?, format!("K{n}"))
            }
            FamilyArg::Path => {
                let n = need(self.n, "n", "path")?;
                (path(n)?, format!("P{n}"))
            }
            FamilyArg::PathPower => {
                let n = need(self.n, "n", "path-power")?;
                let k = need(self.k, "k", "path-power")?;
                (path_power(n, k)?, format!("P{n}^{k}"))
            }
            FamilyArg::Grid => {
                let m = need(self.m, "m", "grid")?;
                let n = need(self.n, "n", "grid")?;
                (grid(m, n)?, format!("grid({m},{n})"))
            }
            FamilyArg::Multipartite => {
                if self.parts.is_empty() {
                    return Err(input("--family multipartite needs --parts"));
                }
                let name = self.parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                (complete_multipartite(&self.parts)?, format!("K{{{name}}}"))
            }
            FamilyArg::Gst => (self.gst.descriptor()?.graph()?, self.gst.label()),
            FamilyArg::TreeExemplar => (tree_exemplar(), "tree-exemplar".into()),
            FamilyArg::DiameterTwoExhibit => (diameter_two_exhibit(), "diameter-2-exhibit".into()),
        })
    }

    fn load_rooted(&self) -> CliResult<(Graph, String, Vertex)> {
        let (g, name) = self.load()?;
        let r = g.root().ok_or_else(|| input("graph has no root; pass --root"))?;
        Ok((g, name, r))
    }
}

impl ConfigArgs {
    fn load(&self) -> CliResult<Configuration> {
        let text = match (&self.config, &self.counts) {
            (Some(p), _) => read_file(p)?,
            (None, Some(c)) => c.clone(),
            (None, None) => return Err(input("give --config FILE or --counts \"c0 c1 ...\"")),
        };
        Ok(Configuration::parse_text(&text)?)
    }
}

#[derive(Serialize)]
struct SolveReport {
    graph: String,
    root: Vertex,
    configuration: Configuration,
    winner: Player,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_move: Option<Move>,
}

#[derive(Serialize)]
struct PiReport {
    graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<Vertex>,
    pi: u32,
}

#[derive(Serialize)]
struct EtaCliReport {
    graph: String,
    /// The root attaining the reported value.
    root: Vertex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi: Option<u32>,
    eta: EtaResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<InfinityCertificate>,
    violations: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Configuration>,
    /// Per-root results when every root was searched.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    roots: Vec<EtaReport>,
}

#[derive(Serialize)]
struct RootCertificate {
    root: Vertex,
    certificate: Option<InfinityCertificate>,
}

#[derive(Serialize)]
struct CertifyReport {
    graph: String,
    max_cut: usize,
    roots: Vec<RootCertificate>,
}

#[derive(Serialize)]
struct ClassifyReport {
    k: usize,
    #[serde(rename = "C_T")]
    c_t: u32,
    #[serde(rename = "T_parities")]
    t_parities: Vec<&'static str>,
    rule: Rule,
    winner: Player,
}

#[derive(Serialize)]
struct EsgReport {
    universe: usize,
    sets: usize,
    rounds: usize,
    winner: EsgPlayer,
    /// A winning first pick for Mary, by label.
    #[serde(skip_serializing_if = "Option::is_none")]
    best_pick: Option<String>,
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> CliResult<()> {
        match &self.path {
            Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn json<T: Serialize>(&self, value: &T) -> CliResult<()> {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        self.write(&s)
    }
}

fn solve_cmd(out: &Output, graph: &GraphArgs, config: &ConfigArgs, transcript: Option<&Path>) -> CliResult<()> {
    let (g, name, root) = graph.load_rooted()?;
    let c = config.load()?;
    let solver = Solver::with_root(&g, root)?;
    let start = GameState::new(c.clone());
    let winner = solver.solve(&start)?;
    let best_move = (winner == Player::Mover)
        .then(|| solver.best_move(&start).ok())
        .flatten();
    if let Some(p) = transcript {
        let t = solver.game().play(&start, &mut solver.strategy(), &mut solver.strategy())?;
        let mut lines = String::new();
        for m in &t.moves {
            lines += &serde_json::to_string(m).expect("move serializes");
            lines.push('\n');
        }
        lines += &serde_json::to_string(&serde_json::json!({ "winner": t.winner })).unwrap();
        lines.push('\n');
        fs::write(p, lines).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    out.json(&SolveReport {
        graph: name,
        root,
        configuration: c,
        winner,
        best_move,
    })
}

fn pi_cmd(out: &Output, graph: &GraphArgs) -> CliResult<()> {
    let (g, name) = graph.load()?;
    let (root, value) = match g.root() {
        Some(r) => (Some(r), pi_rooted(&g, r)?),
        None => (None, pi(&g)?),
    };
    out.json(&PiReport { graph: name, root, pi: value })
}

fn eta_cmd(out: &Output, graph: &GraphArgs, budget: u32, max_cut: usize, skip_pi: bool) -> CliResult<()> {
    let (g, name) = graph.load()?;
    let opts = EtaOptions { budget, max_cut };
    let roots: Vec<Vertex> = match g.root() {
        Some(r) => vec![r],
        None => g.vertices().collect(),
    };
    let reports = roots
        .iter()
        .map(|&r| eta_rooted_report(&g, r, opts))
        .collect::<pebblegame::Result<Vec<_>>>()?;
    let eta = combine_roots(&reports);
    let attaining = reports
        .iter()
        .find(|r| r.result == eta)
        .expect("combined result comes from some root")
        .clone();
    let pi_value = match (skip_pi, g.root()) {
        (true, _) => None,
        (false, Some(r)) => Some(pi_rooted(&g, r)?),
        (false, None) => Some(pi(&g)?),
    };
    let certificate = match &eta {
        EtaResult::InfiniteCertified(c) => Some(c.clone()),
        _ => None,
    };
    let report = EtaCliReport {
        graph: name,
        root: attaining.root,
        pi: pi_value,
        eta: eta.clone(),
        certificate,
        violations: attaining.violations,
        witness: attaining.witness,
        roots: if reports.len() > 1 { reports } else { vec![] },
    };
    out.json(&report)?;
    if let EtaResult::ExceedsBudget(b) = eta {
        return Err(CliError::Budget(format!("Defender still wins at size {b}; raise --budget")));
    }
    Ok(())
}

fn certify_cmd(out: &Output, graph: &GraphArgs, max_cut: usize) -> CliResult<()> {
    let (g, name) = graph.load()?;
    let roots: Vec<Vertex> = match g.root() {
        Some(r) => vec![r],
        None => g.vertices().collect(),
    };
    let roots = roots
        .into_iter()
        .map(|root| {
            Ok(RootCertificate {
                root,
                certificate: infinity_certificate(&g, root, max_cut)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    out.json(&CertifyReport {
        graph: name,
        max_cut,
        roots,
    })
}

fn classify_cmd(out: &Output, gst: &GstArgs, config: &ConfigArgs, fallback: FallbackArg, j: JRuleArg) -> CliResult<()> {
    let desc = gst.descriptor()?;
    let c = config.load()?;
    let v = view(&desc, &c)?;
    let fallback = match (fallback, j) {
        (FallbackArg::BruteForce, _) => Fallback::BruteForce,
        (FallbackArg::Esg, JRuleArg::HalfK) => Fallback::Esg(JRule::HalfK),
        (FallbackArg::Esg, JRuleArg::CappedByX) => Fallback::Esg(JRule::CappedByX),
    };
    let outcome = classify(&desc, &c, fallback)?;
    let t_parities = desc
        .t_vertices()
        .map(|u| if c[u] % 2 == 0 { "even" } else { "odd" })
        .collect();
    out.json(&ClassifyReport {
        k: v.k,
        c_t: v.c_t,
        t_parities,
        rule: outcome.rule,
        winner: outcome.winner,
    })
}

fn esg_cmd(out: &Output, file: &Path) -> CliResult<()> {
    let inst = EsgInstance::parse_text(&read_file(file)?)?;
    let winner = solve_esg(&inst);
    let best = (winner == EsgPlayer::Mary)
        .then(|| best_pick(&inst, &EsgState::initial(&inst)))
        .flatten()
        .map(|e| inst.labels[e].clone());
    out.json(&EsgReport {
        universe: inst.universe_len(),
        sets: inst.sets.len(),
        rounds: inst.rounds,
        winner,
        best_pick: best,
    })
}

fn verify_cmd(out: &Output, suite: Suite, opts: VerifyOptions, csv_out: bool) -> CliResult<bool> {
    let report = run_suite(suite, &VerifyOptions { rows: csv_out, ..opts })?;
    if csv_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &report.rows {
            w.serialize(row).map_err(|e| input(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| input(e.to_string()))?;
        out.write(&String::from_utf8(bytes).expect("csv is utf-8"))?;
    } else {
        out.json(&report)?;
    }
    Ok(report.passed())
}

fn format_state(state: &GameState) -> String {
    format!("[{}] {} to move", state.config.to_text(), state.turn)
}

/// Reads moves as `from to` and answers with the engine's best move.
fn play_cmd(graph: &GraphArgs, config: &ConfigArgs, interactive: bool, side: Side) -> CliResult<()> {
    let (g, _, root) = graph.load_rooted()?;
    let c = config.load()?;
    let solver = Solver::with_root(&g, root)?;
    let game: &Game<'_> = solver.game();
    let mut state = GameState::new(c);
    let human = match side {
        Side::Mover => Player::Mover,
        Side::Defender => Player::Defender,
    };
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    let mut stdout = io::stdout();
    loop {
        if let Some(w) = game.terminal_winner(&state) {
            println!("{} | {w} wins", format_state(&state));
            return Ok(());
        }
        let m = if interactive && state.turn == human {
            let legal = game.legal_moves(&state);
            let listed: Vec<String> = legal.iter().map(|m| format!("{} {}", m.from, m.to)).collect();
            print!("{} | legal: {} > ", format_state(&state), listed.join(", "));
            stdout.flush().ok();
            let Some(line) = lines.next() else {
                println!();
                return Ok(());
            };
            let line = line.map_err(|e| input(e.to_string()))?;
            let nums: Vec<Option<Vertex>> = line.split_whitespace().map(|x| x.parse().ok()).collect();
            match nums[..] {
                [Some(from), Some(to)] if game.is_legal(&state, Move::new(from, to)) => Move::new(from, to),
                _ => {
                    println!("enter a legal move as `from to`");
                    continue;
                }
            }
        } else {
            let m = solver.best_move(&state)?;
            println!("{} | {} plays {} {}", format_state(&state), state.turn, m.from, m.to);
            m
        };
        state = game.apply_move(&state, m)?;
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input(e.to_string()))?;
    }
    let out = Output { path: cli.out };
    match cli.command {
        Command::Solve {
            graph,
            config,
            transcript,
        } => solve_cmd(&out, &graph, &config, transcript.as_deref())?,
        Command::Pi { graph } => pi_cmd(&out, &graph)?,
        Command::Eta {
            graph,
            budget,
            max_cut,
            skip_pi,
        } => eta_cmd(&out, &graph, budget, max_cut, skip_pi)?,
        Command::CertifyInfinite { graph, max_cut } => certify_cmd(&out, &graph, max_cut)?,
        Command::Classify {
            gst,
            config,
            fallback,
            j_rule,
        } => classify_cmd(&out, &gst, &config, fallback, j_rule)?,
        Command::Esg { file } => esg_cmd(&out, &file)?,
        Command::Verify {
            suite,
            s_max,
            t_max,
            max_size,
            n_max,
            samples,
            seed,
            timing,
            json: _,
            csv,
        } => {
            let opts = VerifyOptions {
                seed,
                s_max,
                t_max,
                max_size,
                n_max,
                samples,
                timing,
                rows: false,
            };
            return verify_cmd(&out, suite, opts, csv);
        }
        Command::Play {
            graph,
            config,
            interactive,
            side,
        } => play_cmd(&graph, &config, interactive, side)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
