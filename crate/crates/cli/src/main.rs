//! Command-line workbench for the (s, d)-spy game: exact solving, closed
//! forms, decomposition, Set-Cover reductions, and an interactive play mode.
//!
//! Exit codes: 0 = computed, 2 = input error, 3 = state budget exceeded.

use std::collections::HashSet;
use std::fs;
use std::io::{self, BufRead, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use spygame::expr::eval_text;
use spygame::formulas::{gn_join, gn_lex, gn_path, gn_spider, SpiderShape};
use spygame::game::{guard_moves, is_spy_winning, spy_moves, Configuration, GameParams, Turn};
use spygame::graph::{format_graph, parse_graph, Graph, SpiderKind};
use spygame::primeval::{decompose, fpt_guard_number};
use spygame::reduction::{build_reduction, verify_reduction, SetCoverInstance};
use spygame::solver::{
    env_state_budget, guard_number_with, solve_attractor_with, MoveOrder, SolveOptions,
    SolveResult, Winner,
};
use spygame::strategy::{tuple_move_legal, Outcome, Trace, TraceMove};
use spygame::{Error, Result};

#[derive(Parser)]
#[command(name = "spygame", version, about = "Exact solver and workbench for the (s, d)-spy game")]
struct Cli {
    /// Emit a single JSON object instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Graph input, either as an expression or as a file in the text format.
///
/// Expressions combine the atoms `P<n>`, `C<n>`, `K<n>`, and `file:<path>`
/// with the operators `box` (strong product), `cart` (cartesian product),
/// `lex` (lexicographic product), `+` (join), and `u` (disjoint union);
/// products bind tighter than `+`/`u`, and parentheses group.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph expression, e.g. "P5 box P5" or "(P3 + P3) u K1"
    #[arg(long)]
    graph: Option<String>,
    /// Graph file: a line `n <count>`, then one `u v` line per edge
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        match (&self.graph, &self.file) {
            (Some(expr), None) => eval_text(expr),
            (None, Some(path)) => parse_graph(&fs::read_to_string(path)?),
            _ => unreachable!("clap enforces exactly one input"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Spy,
    Guards,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Thin,
    Thick,
}

#[derive(Subcommand)]
enum Command {
    /// Decide who wins with k guards
    Solve {
        #[command(flatten)]
        input: GraphInput,
        /// Spy speed (edges per spy turn)
        #[arg(short)]
        s: usize,
        /// Surveillance distance
        #[arg(short)]
        d: usize,
        /// Number of guards
        #[arg(short)]
        k: usize,
        /// Guards place before the spy instead of after
        #[arg(long)]
        guards_first: bool,
    },
    /// Smallest guard count that wins, trying k = 1, 2, ...
    GuardNumber {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
        /// Largest k to try (default: the vertex count)
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Closed-form guard numbers for structured graphs
    Formula {
        #[command(subcommand)]
        formula: FormulaCommand,
    },
    /// Primeval decomposition of a (q, q-4) graph
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        /// Decomposition parameter q >= 4
        #[arg(short)]
        q: usize,
    },
    /// Guard number computed through the primeval decomposition
    FptGn {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        q: usize,
    },
    /// Build a Set-Cover reduction instance, optionally verifying it
    Reduce {
        /// Instance JSON file: {"universe": n, "sets": [[...], ...], "c": int}
        #[arg(long)]
        instance: PathBuf,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
        /// Check the cover/guard-number biconditional with the solver
        #[arg(long)]
        verify: bool,
        /// Write <prefix>.graph and <prefix>.json instead of printing the graph
        #[arg(long)]
        out: Option<String>,
    },
    /// Play one side interactively against the solver's strategy
    Play {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
        #[arg(short)]
        k: usize,
        /// Side you play; the machine plays the other one
        #[arg(long = "as", value_enum)]
        side: Side,
        /// Seed for randomized tie-breaking in the machine's play
        #[arg(long)]
        seed: Option<u64>,
        /// Round limit before the game is called undecided
        #[arg(long, default_value_t = 512)]
        max_rounds: usize,
        /// File the finished game's trace is appended to, one JSON per line
        #[arg(long, default_value = "spygame_play.jsonl")]
        transcript: PathBuf,
    },
}

#[derive(Subcommand)]
enum FormulaCommand {
    /// Path P_n: ceil(n / (2d + 2 + floor(2d/(s-1))))
    Path {
        /// Number of path vertices
        #[arg(short)]
        n: usize,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
    },
    /// Spider from its shape: kind, clique size, and head presence
    Spider {
        /// Leg pattern: thin (legs matched to the clique) or thick
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Clique size p >= 2
        #[arg(long)]
        clique_size: usize,
        /// The spider has a nonempty head
        #[arg(long)]
        with_head: bool,
        #[arg(short)]
        d: usize,
    },
    /// Join of two graphs (1 when d >= 1 or both parts complete, else 2)
    Join {
        /// Left graph expression
        #[arg(long)]
        g1: String,
        /// Right graph expression
        #[arg(long)]
        g2: String,
        #[arg(short)]
        d: usize,
    },
    /// Lexicographic product at d >= 2, from solver-computed factor guard numbers
    Lex {
        /// Left graph expression
        #[arg(long)]
        g1: String,
        /// Right graph expression
        #[arg(long)]
        g2: String,
        #[arg(short)]
        s: usize,
        #[arg(short)]
        d: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}

/// The solver budget, with the environment override applied.
fn solve_opts() -> SolveOptions {
    match env_state_budget() {
        Some(state_budget) => SolveOptions { state_budget },
        None => SolveOptions::default(),
    }
}

fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::Spy => "Spy",
        Winner::Guards => "Guards",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Solve { input, s, d, k, guards_first } => cmd_solve(json, &input, s, d, k, guards_first),
        Command::GuardNumber { input, s, d, max_k } => cmd_guard_number(json, &input, s, d, max_k),
        Command::Formula { formula } => cmd_formula(json, formula),
        Command::Decompose { input, q } => cmd_decompose(json, &input, q),
        Command::FptGn { input, s, d, q } => cmd_fpt_gn(json, &input, s, d, q),
        Command::Reduce { instance, s, d, verify, out } => cmd_reduce(json, &instance, s, d, verify, out),
        Command::Play { input, s, d, k, side, seed, max_rounds, transcript } => {
            cmd_play(json, &input, s, d, k, side, seed, max_rounds, &transcript)
        }
    }
}

fn cmd_solve(json: bool, input: &GraphInput, s: usize, d: usize, k: usize, guards_first: bool) -> Result<ExitCode> {
    let g = input.load()?;
    let params = GameParams::new(s, d, k)?;
    let res = solve_attractor_with(&g, &params, &solve_opts())?;
    let order = if guards_first { MoveOrder::GuardsFirst } else { MoveOrder::SpyFirst };
    let winner = res.winner(order);
    if json {
        println!(
            "{}",
            json!({
                "command": "solve",
                "n": g.n(),
                "s": s,
                "d": d,
                "k": k,
                "order": if guards_first { "guards-first" } else { "spy-first" },
                "winner": winner_name(winner),
            })
        );
    } else {
        match winner {
            Winner::Spy => println!("Spy wins"),
            Winner::Guards => println!("Guards win"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_guard_number(json: bool, input: &GraphInput, s: usize, d: usize, max_k: Option<usize>) -> Result<ExitCode> {
    let g = input.load()?;
    let max_k = max_k.unwrap_or(g.n()).max(1);
    let opts = solve_opts();
    let mut found = None;
    let mut budget_cut = None;
    for k in 1..=max_k {
        let params = GameParams::new(s, d, k)?;
        match solve_attractor_with(&g, &params, &opts) {
            Ok(res) => {
                if res.winner(MoveOrder::SpyFirst) == Winner::Guards {
                    found = Some(k);
                    break;
                }
            }
            Err(Error::BudgetExceeded { required, budget }) => {
                eprintln!(
                    "warning: state budget exceeded at k = {k} ({required} configurations > budget {budget}); \
                     largest solved k = {}",
                    k - 1
                );
                budget_cut = Some(k);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    // With every k <= bound - 1 solved and spy-won, gn >= bound.
    let bound = budget_cut.unwrap_or(max_k + 1);
    if json {
        println!(
            "{}",
            json!({
                "command": "guard-number",
                "n": g.n(),
                "s": s,
                "d": d,
                "max_k": max_k,
                "guard_number": found,
                "lower_bound": if found.is_some() { serde_json::Value::Null } else { json!(bound) },
                "budget_exceeded": budget_cut.is_some(),
            })
        );
    } else if let Some(k) = found {
        println!("{k}");
    } else {
        println!("unknown >= {bound}");
    }
    Ok(if budget_cut.is_some() { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn cmd_formula(json: bool, formula: FormulaCommand) -> Result<ExitCode> {
    let (detail, value) = match formula {
        FormulaCommand::Path { n, s, d } => {
            (json!({"formula": "path", "n": n, "s": s, "d": d}), gn_path(n, s, d)?)
        }
        FormulaCommand::Spider { kind, clique_size, with_head, d } => {
            let kind = match kind {
                KindArg::Thin => SpiderKind::Thin,
                KindArg::Thick => SpiderKind::Thick,
            };
            let shape = SpiderShape::new(kind, clique_size, !with_head)?;
            let detail = json!({
                "formula": "spider",
                "kind": if matches!(kind, SpiderKind::Thin) { "thin" } else { "thick" },
                "clique_size": clique_size,
                "with_head": with_head,
                "d": d,
            });
            (detail, gn_spider(&shape, d))
        }
        FormulaCommand::Join { g1, g2, d } => {
            let left = eval_text(&g1)?;
            let right = eval_text(&g2)?;
            (json!({"formula": "join", "g1": g1, "g2": g2, "d": d}), gn_join(&left, &right, d))
        }
        FormulaCommand::Lex { g1, g2, s, d } => {
            let left = eval_text(&g1)?;
            let right = eval_text(&g2)?;
            let opts = solve_opts();
            let gn1 = guard_number_with(&left, s, d, left.n(), &opts)?
                .ok_or_else(|| Error::InvalidParam("left factor has no winning guard count up to n".into()))?;
            let gn2 = guard_number_with(&right, s, d, right.n(), &opts)?
                .ok_or_else(|| Error::InvalidParam("right factor has no winning guard count up to n".into()))?;
            let iso = !left.isolated_vertices().is_empty();
            let detail = json!({
                "formula": "lex",
                "g1": g1,
                "g2": g2,
                "s": s,
                "d": d,
                "gn1": gn1,
                "gn2": gn2,
                "g1_has_isolated": iso,
            });
            (detail, gn_lex(gn1, gn2, iso, d)?)
        }
    };
    if json {
        let mut obj = json!({"command": "formula", "value": value});
        let map = obj.as_object_mut().unwrap();
        for (key, val) in detail.as_object().unwrap() {
            map.insert(key.clone(), val.clone());
        }
        println!("{obj}");
    } else {
        println!("{value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(json: bool, input: &GraphInput, q: usize) -> Result<ExitCode> {
    let g = input.load()?;
    let tree = decompose(&g, q)?;
    if json {
        println!("{}", json!({"command": "decompose", "n": g.n(), "q": q, "tree": tree.to_json()}));
    } else {
        print!("{}", tree.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fpt_gn(json: bool, input: &GraphInput, s: usize, d: usize, q: usize) -> Result<ExitCode> {
    let g = input.load()?;
    let value = fpt_guard_number(&g, s, d, q)?;
    if json {
        println!(
            "{}",
            json!({"command": "fpt-gn", "n": g.n(), "s": s, "d": d, "q": q, "guard_number": value})
        );
    } else {
        println!("{value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(
    json: bool,
    instance: &PathBuf,
    s: usize,
    d: usize,
    verify: bool,
    out: Option<String>,
) -> Result<ExitCode> {
    let inst = SetCoverInstance::from_json(&fs::read_to_string(instance)?)?;
    let red = build_reduction(&inst, s, d)?;
    let sidecar = red.sidecar_json();
    let graph_text = format_graph(&red.graph);
    let files = match &out {
        Some(prefix) => {
            let graph_path = format!("{prefix}.graph");
            let sidecar_path = format!("{prefix}.json");
            fs::write(&graph_path, &graph_text)?;
            fs::write(&sidecar_path, format!("{:#}\n", sidecar))?;
            Some((graph_path, sidecar_path))
        }
        None => None,
    };
    let report = if verify { Some(verify_reduction(&inst, s, d)?) } else { None };

    if json {
        println!(
            "{}",
            json!({
                "command": "reduce",
                "s": s,
                "d": d,
                "instance": serde_json::from_str::<serde_json::Value>(&inst.to_json())?,
                "params": sidecar,
                "graph": if files.is_some() { serde_json::Value::Null } else { json!(graph_text) },
                "files": files.as_ref().map(|(g, j)| json!({"graph": g, "sidecar": j})),
                "verify": report,
            })
        );
    } else {
        let p = red.params;
        println!(
            "{}: p={}, q={}, q'={}, K={}, r={}; graph has {} vertices and {} edges",
            p.case,
            p.p,
            p.q,
            p.qprime,
            p.k,
            p.r,
            red.graph.n(),
            red.graph.edge_count()
        );
        match &files {
            Some((g, j)) => println!("wrote {g} and {j}"),
            None => print!("{graph_text}"),
        }
        if let Some(rep) = &report {
            println!(
                "min cover {} (cover of size <= {} exists: {}); {} guards win: {}; biconditional: {}",
                rep.min_cover,
                inst.c(),
                rep.cover_exists,
                rep.params.k,
                rep.guards_win_at_k,
                rep.biconditional
            );
            if let Some(first) = rep.guards_first_win {
                println!("guards placed first win: {first}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The machine's player: the extracted winning strategy on its winning
/// region, the rank-greedy heuristic elsewhere. A seed randomizes the choice
/// among equally good moves; without one the first candidate is played.
struct Machine<'a> {
    res: &'a SolveResult,
    rng: Option<ChaCha8Rng>,
}

impl Machine<'_> {
    fn pick<T>(&mut self, mut candidates: Vec<T>) -> T {
        match self.rng.as_mut() {
            Some(rng) => {
                let i = rng.gen_range(0..candidates.len());
                candidates.swap_remove(i)
            }
            None => candidates.swap_remove(0),
        }
    }

    fn spy_place(&mut self, g: &Graph) -> usize {
        if let Some(v) = self.res.spy_witness {
            return v;
        }
        // Losing everywhere: start as remote as possible.
        let dist = self.res.distances();
        (0..g.n())
            .max_by_key(|&v| {
                (0..g.n())
                    .map(|u| if dist.is_finite(v, u) { dist.get(v, u) as u64 } else { 0 })
                    .sum::<u64>()
            })
            .unwrap_or(0)
    }

    fn spy_step(&mut self, g: &Graph, cfg: &Configuration) -> Result<usize> {
        let moves = spy_moves(g, self.res.params.s, cfg.spy);
        let mut ranks = Vec::with_capacity(moves.len());
        for &u in &moves {
            ranks.push(self.res.rank_of(&Configuration::new(Turn::GuardsToMove, u, cfg.guards().to_vec()))?);
        }
        if let Some(rank) = self.res.rank_of(cfg)? {
            if rank == 0 {
                return Ok(cfg.spy);
            }
            // Winning: any rank-decreasing successor keeps the win.
            let wins: Vec<usize> = moves
                .iter()
                .zip(&ranks)
                .filter(|(_, r)| r.is_some_and(|r| r < rank))
                .map(|(&u, _)| u)
                .collect();
            if !wins.is_empty() {
                return Ok(self.pick(wins));
            }
        }
        // Losing: grab the best winnable successor if the guards blunder;
        // otherwise maximize the distance to the nearest guard.
        if let Some(best) = ranks.iter().flatten().min().copied() {
            let cands: Vec<usize> = moves
                .iter()
                .zip(&ranks)
                .filter(|(_, r)| **r == Some(best))
                .map(|(&u, _)| u)
                .collect();
            return Ok(self.pick(cands));
        }
        let dist = self.res.distances();
        let nearest = |u: usize| cfg.guards().iter().map(|&q| dist.get(u, q)).min().unwrap();
        let far = moves.iter().map(|&u| nearest(u)).max().unwrap();
        let cands: Vec<usize> = moves.iter().copied().filter(|&u| nearest(u) == far).collect();
        Ok(self.pick(cands))
    }

    fn guards_place(&mut self, g: &Graph, spy: usize) -> Result<Vec<usize>> {
        // A placement the spy never escapes from if one exists (reservoir
        // sampled when seeded), otherwise the stall of maximal rank.
        let k = self.res.params.k;
        let mut chosen: Option<Vec<usize>> = None;
        let mut seen = 0u64;
        let mut stall: Option<(u32, Vec<usize>)> = None;
        let mut failure = None;
        for_each_sorted_tuple(g.n(), k, &mut |t| {
            let cfg = Configuration::new(Turn::SpyToMove, spy, t.to_vec());
            match self.res.rank_of(&cfg) {
                Err(e) => {
                    failure = Some(e);
                    true
                }
                Ok(None) => {
                    seen += 1;
                    match self.rng.as_mut() {
                        None => {
                            chosen = Some(t.to_vec());
                            true
                        }
                        Some(rng) => {
                            if rng.gen_range(0..seen) == 0 {
                                chosen = Some(t.to_vec());
                            }
                            false
                        }
                    }
                }
                Ok(Some(r)) => {
                    if stall.as_ref().is_none_or(|(br, _)| r > *br) {
                        stall = Some((r, t.to_vec()));
                    }
                    false
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(chosen.or(stall.map(|(_, t)| t)).expect("a graph has at least one guard placement"))
    }

    fn guards_step(&mut self, g: &Graph, cfg: &Configuration) -> Result<Vec<usize>> {
        let mut safe = Vec::new();
        let mut stall: Option<(u32, Vec<usize>)> = None;
        for t in guard_moves(g, cfg.guards()) {
            let succ = Configuration::new(Turn::SpyToMove, cfg.spy, t.clone());
            match self.res.rank_of(&succ)? {
                None => safe.push(t),
                Some(r) => {
                    if stall.as_ref().is_none_or(|(br, _)| r > *br) {
                        stall = Some((r, t));
                    }
                }
            }
        }
        if !safe.is_empty() {
            return Ok(self.pick(safe));
        }
        Ok(stall.expect("guards can always stay put").1)
    }
}

/// Calls `f` on every sorted k-tuple over `0..n` in lexicographic order
/// until it returns true.
fn for_each_sorted_tuple(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(n: usize, k: usize, lo: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in lo..n {
            cur.push(v);
            if rec(n, k, v, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(k);
    rec(n, k, 0, &mut cur, f);
}

/// Reads one line, prompting on stdout first. `None` on end of input.
fn read_line(lines: &mut impl Iterator<Item = io::Result<String>>, prompt: &str) -> Result<Option<String>> {
    print!("{prompt}");
    io::stdout().flush()?;
    match lines.next() {
        None => Ok(None),
        Some(line) => Ok(Some(line?.trim().to_string())),
    }
}

enum HumanMove<T> {
    Move(T),
    Quit,
}

/// Prompts until the human enters a legal spy answer: a reachable vertex id,
/// `pass` to stay, or `quit`.
fn human_spy_move(
    lines: &mut impl Iterator<Item = io::Result<String>>,
    legal: &[usize],
    stay: usize,
    prompt: &str,
) -> Result<HumanMove<usize>> {
    loop {
        let Some(line) = read_line(lines, prompt)? else {
            return Ok(HumanMove::Quit);
        };
        match line.as_str() {
            "quit" => return Ok(HumanMove::Quit),
            "pass" => return Ok(HumanMove::Move(stay)),
            text => match text.parse::<usize>() {
                Ok(v) if legal.contains(&v) => return Ok(HumanMove::Move(v)),
                Ok(v) => println!("illegal: {v} is not reachable; legal moves: {legal:?}"),
                Err(_) => println!("illegal: enter a vertex id, `pass`, or `quit`"),
            },
        }
    }
}

/// Prompts until the human enters a legal guards answer: `k` vertex ids,
/// `pass` to hold every position, or `quit`. `from` is `None` at placement
/// (anywhere is legal) and the current tuple afterwards.
fn human_guards_move(
    lines: &mut impl Iterator<Item = io::Result<String>>,
    g: &Graph,
    k: usize,
    from: Option<&[usize]>,
    prompt: &str,
) -> Result<HumanMove<Vec<usize>>> {
    loop {
        let Some(line) = read_line(lines, prompt)? else {
            return Ok(HumanMove::Quit);
        };
        match line.as_str() {
            "quit" => return Ok(HumanMove::Quit),
            "pass" => match from {
                Some(t) => return Ok(HumanMove::Move(t.to_vec())),
                None => println!("illegal: the guards have no positions to hold yet"),
            },
            text => {
                let ids: std::result::Result<Vec<usize>, _> =
                    text.split_whitespace().map(str::parse::<usize>).collect();
                let Ok(mut ids) = ids else {
                    println!("illegal: enter {k} vertex ids separated by spaces, `pass`, or `quit`");
                    continue;
                };
                if ids.len() != k {
                    println!("illegal: expected {k} vertex ids, got {}", ids.len());
                    continue;
                }
                if let Some(&v) = ids.iter().find(|&&v| v >= g.n()) {
                    println!("illegal: vertex {v} is out of range (graph has {} vertices)", g.n());
                    continue;
                }
                ids.sort_unstable();
                if let Some(t) = from {
                    if !tuple_move_legal(g, t, &ids) {
                        println!("illegal: {ids:?} is not reachable from {t:?} in one half-move");
                        continue;
                    }
                }
                return Ok(HumanMove::Move(ids));
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_play(
    json: bool,
    input: &GraphInput,
    s: usize,
    d: usize,
    k: usize,
    side: Side,
    seed: Option<u64>,
    max_rounds: usize,
    transcript: &PathBuf,
) -> Result<ExitCode> {
    let g = input.load()?;
    let params = GameParams::new(s, d, k)?;
    let res = solve_attractor_with(&g, &params, &solve_opts())?;
    let mut machine = Machine { res: &res, rng: seed.map(ChaCha8Rng::seed_from_u64) };
    let dist = res.distances();
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();

    println!(
        "({s},{d})-spy game with {k} guard(s) on a graph with {} vertices; you play the {}",
        g.n(),
        match side {
            Side::Spy => "spy",
            Side::Guards => "guards",
        }
    );
    println!("answers: vertex id(s), `pass` to stay, `quit` to stop");

    // Placements: the spy first, then the guards, knowing where she is.
    let spy_start = match side {
        Side::Spy => match human_spy_move(&mut lines, &(0..g.n()).collect::<Vec<_>>(), 0, "spy placement> ")? {
            HumanMove::Move(v) => v,
            HumanMove::Quit => return Ok(ExitCode::SUCCESS),
        },
        Side::Guards => {
            let v = machine.spy_place(&g);
            println!("the spy places at {v}");
            v
        }
    };
    let guard_start = match side {
        Side::Guards => {
            match human_guards_move(&mut lines, &g, k, None, &format!("guard placement ({k} ids)> "))? {
                HumanMove::Move(t) => t,
                HumanMove::Quit => return Ok(ExitCode::SUCCESS),
            }
        }
        Side::Spy => {
            let t = machine.guards_place(&g, spy_start)?;
            println!("the guards place at {t:?}");
            t
        }
    };

    let start = Configuration::new(Turn::SpyToMove, spy_start, guard_start);
    let mut trace =
        Trace { s, d, k, start: start.clone(), moves: Vec::new(), outcome: Outcome::TurnLimit };
    let mut finished = false;

    if is_spy_winning(dist, d, start.spy, start.guards()) {
        trace.outcome = Outcome::SpyEscaped;
        finished = true;
    }

    let mut seen: HashSet<Configuration> = HashSet::new();
    seen.insert(start.clone());
    let mut cfg = start;
    let mut round = 0;
    while !finished && round < max_rounds {
        round += 1;
        println!("round {round}: spy at {}, guards at {:?}", cfg.spy, cfg.guards());

        // Spy half-move.
        let legal = spy_moves(&g, s, cfg.spy);
        let to = match side {
            Side::Spy => match human_spy_move(&mut lines, &legal, cfg.spy, "spy move> ")? {
                HumanMove::Move(v) => v,
                HumanMove::Quit => break,
            },
            Side::Guards => {
                let v = machine.spy_step(&g, &cfg)?;
                println!("the spy moves to {v}");
                v
            }
        };
        trace.moves.push(TraceMove::Spy { to });
        cfg = Configuration::new(Turn::GuardsToMove, to, cfg.guards().to_vec());

        // Guards' half-move.
        let resp = match side {
            Side::Guards => {
                match human_guards_move(&mut lines, &g, k, Some(cfg.guards()), &format!("guards move ({k} ids)> "))? {
                    HumanMove::Move(t) => t,
                    HumanMove::Quit => break,
                }
            }
            Side::Spy => {
                let t = machine.guards_step(&g, &cfg)?;
                println!("the guards move to {t:?}");
                t
            }
        };
        trace.moves.push(TraceMove::Guards { to: resp.clone() });
        cfg = Configuration::new(Turn::SpyToMove, cfg.spy, resp);

        if is_spy_winning(dist, d, cfg.spy, cfg.guards()) {
            trace.outcome = Outcome::SpyEscaped;
            finished = true;
        } else if !seen.insert(cfg.clone()) {
            trace.outcome = Outcome::GuardsByRepetition;
            finished = true;
        }
    }

    match trace.outcome {
        Outcome::SpyEscaped => {
            println!("the spy escaped: she is farther than {d} from every guard")
        }
        Outcome::GuardsByRepetition => {
            println!("the guards contain the spy: a configuration repeated")
        }
        Outcome::TurnLimit => println!("game stopped without a decision"),
    }

    // Append the trace so sessions accumulate in one file.
    let mut file = fs::OpenOptions::new().create(true).append(true).open(transcript)?;
    let line = serde_json::to_string(&trace)?;
    writeln!(file, "{line}")?;
    if json {
        println!("{line}");
    } else {
        println!("transcript appended to {}", transcript.display());
    }
    Ok(ExitCode::SUCCESS)
}
