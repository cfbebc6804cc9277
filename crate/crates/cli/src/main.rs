use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use degen::degeneracy::{DEFAULT_MAX_DIM, DEFAULT_MAX_PAIRS};
use degen::gameio::{parse_game, parse_lpsystem, parse_witness, serialize_witness, WitnessDocument};
use degen::lpcheck::{is_lp_degenerate_with, DEFAULT_MAX_COLS};
use degen::reduction::{
    brute_force_sat_with, build_game_with, metadata, parse_dimacs, verify_built, witness_from_assignment,
    Assignment, CnfFormula, OracleStatus, ReductionReport, VerifyOptions, DEFAULT_SAT_VAR_CAP,
};
use degen::{
    best_response_set, check_side, gameio, support_of, verify_witness, winlose_nondegenerate_corrected,
    winlose_nondegenerate_paper, Budget, DegeneracyWitness, Execution, Rational, Side, Verdict,
};

const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Exact degeneracy checks for bimatrix games and linear systems")]
#[command(after_help = "Exit status: 0 when the command ran to completion (whatever the verdict), \
2 on input errors, 3 when a resource limit stopped the computation.")]
struct Cli {
    /// Worker threads for parallel searches (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Print a single-line JSON summary instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct BudgetArgs {
    /// Largest `rows + cols` the exhaustive search accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
    /// Largest number of (support, tie set) pairs the search may examine.
    #[arg(long, env = "DEGEN_BUDGET", default_value_t = DEFAULT_MAX_PAIRS)]
    budget: u64,
    /// Only search supports up to this size; a clean capped search reports UNKNOWN.
    #[arg(long)]
    max_support: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Row,
    Col,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a game is degenerate.
    Check {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the witness here instead of standard output.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Check a claimed degeneracy witness against a game.
    Witness { game: PathBuf, witness: PathBuf },
    /// Build the degeneracy game of a 3-CNF formula.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also solve the formula and write the witness of a satisfying assignment.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Print the construction metadata (n, D, epsilon, labels, conflicts).
        #[arg(long)]
        meta: bool,
        /// Most variables brute-force SAT accepts.
        #[arg(long, default_value_t = DEFAULT_SAT_VAR_CAP)]
        sat_cap: usize,
    },
    /// Brute-force satisfiability of a CNF formula.
    Sat {
        cnf: PathBuf,
        /// Most variables brute-force SAT accepts.
        #[arg(long, default_value_t = DEFAULT_SAT_VAR_CAP)]
        sat_cap: usize,
    },
    /// Build the game of a formula and cross-check satisfiability against degeneracy.
    VerifyReduction {
        cnf: PathBuf,
        /// Most variables brute-force SAT accepts.
        #[arg(long, default_value_t = DEFAULT_SAT_VAR_CAP)]
        sat_cap: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decide degeneracy of `Ax = b, x >= 0` by basis enumeration.
    Lp {
        system: PathBuf,
        /// Most columns of A accepted.
        #[arg(long, default_value_t = DEFAULT_MAX_COLS)]
        max_cols: usize,
    },
    /// Evaluate the win-lose nondegeneracy criteria.
    Winlose {
        game: PathBuf,
        /// Printed criterion: at most one nonzero entry per column of A and per row of B.
        #[arg(long)]
        paper: bool,
        /// Corrected criterion: exactly one nonzero entry per column of A (or A has one row), likewise for B.
        #[arg(long)]
        corrected: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<degen::Error> for Failure {
    fn from(e: degen::Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_INPUT };
        Failure { code, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: msg.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: degen::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

struct Ctx {
    json: bool,
    execution: Execution,
}

impl Ctx {
    fn budget(&self, b: &BudgetArgs) -> Budget {
        Budget {
            max_dim: b.max_dim,
            max_pairs: b.budget,
            max_support: b.max_support,
            execution: self.execution,
            ..Budget::default()
        }
    }

    fn emit(&self, text: &str, summary: Value) {
        if self.json {
            println!("{summary}");
        } else {
            print!("{text}");
        }
    }
}

fn values(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Degenerate(w) => json!({
            "verdict": v.label(),
            "side": w.side.as_str(),
            "support_size": w.support_size(),
            "best_responses": w.best_responses.len(),
            "value": w.best_responses.value.to_string(),
            "strategy": strings(w.strategy.probs()),
        }),
        Verdict::Nondegenerate => json!({ "verdict": v.label() }),
        Verdict::Unknown(reason) => json!({ "verdict": v.label(), "reason": reason }),
    }
}

fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::Degenerate(w) => format!(
            "DEGENERATE (support {}, best responses {}, u = {})",
            w.support_size(),
            w.best_responses.len(),
            w.best_responses.value
        ),
        Verdict::Nondegenerate => "NONDEGENERATE".into(),
        Verdict::Unknown(reason) => format!("UNKNOWN ({reason})"),
    }
}

fn witness_text(w: &DegeneracyWitness) -> String {
    serialize_witness(&WitnessDocument {
        side: w.side,
        strategy: w.strategy.clone(),
    })
}

fn combine(verdicts: &[(Side, Verdict)]) -> Verdict {
    if let Some((_, v)) = verdicts.iter().find(|(_, v)| v.is_degenerate()) {
        return v.clone();
    }
    if let Some((_, v)) = verdicts.iter().find(|(_, v)| v.is_unknown()) {
        return v.clone();
    }
    Verdict::Nondegenerate
}

fn cmd_check(ctx: &Ctx, path: &Path, side: SideArg, budget: &BudgetArgs, witness_out: Option<&Path>) -> CmdResult {
    let g = with_path(path, parse_game(&read(path)?))?;
    let budget = ctx.budget(budget);
    let sides: &[Side] = match side {
        SideArg::Row => &[Side::Row],
        SideArg::Col => &[Side::Column],
        SideArg::Both => &[Side::Row, Side::Column],
    };
    let verdicts: Vec<(Side, Verdict)> = sides.iter().map(|&s| (s, check_side(&g, s, &budget))).collect();
    let overall = combine(&verdicts);

    let mut text = format!("game {}x{}\n", g.rows(), g.cols());
    for (s, v) in &verdicts {
        let _ = writeln!(text, "{} side: {}", s.as_str(), verdict_line(v));
    }
    let _ = writeln!(text, "overall: {}", overall.label());

    let mut witness_path = Value::Null;
    if let Some(w) = overall.witness() {
        let doc = witness_text(w);
        match witness_out {
            Some(out) => {
                write(out, &doc)?;
                witness_path = json!(out.display().to_string());
                let _ = writeln!(text, "witness written to {}", out.display());
            }
            None => text.push_str(&doc),
        }
    }

    let mut summary = json!({
        "command": "check",
        "rows": g.rows(),
        "cols": g.cols(),
        "overall": overall.label(),
        "witness_path": witness_path,
    });
    for (s, v) in &verdicts {
        summary[format!("{}_side", s.as_str())] = verdict_json(v);
    }
    ctx.emit(&text, summary);
    Ok(if verdicts.iter().any(|(_, v)| v.is_unknown()) {
        EXIT_RESOURCE
    } else {
        0
    })
}

fn cmd_witness(ctx: &Ctx, game: &Path, witness: &Path) -> CmdResult {
    let g = with_path(game, parse_game(&read(game)?))?;
    let doc = with_path(witness, parse_witness(&read(witness)?))?;
    let m = doc.side.responder_matrix(&g);
    let br = with_path(witness, best_response_set(&m, &doc.strategy))?;
    let accepted = with_path(witness, verify_witness(&m, &doc.strategy))?;
    let k = support_of(&doc.strategy).len();
    let verdict = if accepted { "ACCEPT" } else { "REJECT" };
    let text = format!(
        "side {}\nsupport size k = {k}\nbest responses = {}\nu = {}\n{verdict}\n",
        doc.side.as_str(),
        br.len(),
        br.value
    );
    ctx.emit(
        &text,
        json!({
            "command": "witness",
            "side": doc.side.as_str(),
            "support_size": k,
            "best_responses": br.len(),
            "best_response_indices": br.indices,
            "value": br.value.to_string(),
            "verdict": verdict,
        }),
    );
    Ok(0)
}

fn load_cnf(path: &Path) -> Result<CnfFormula, Failure> {
    with_path(path, parse_dimacs(&read(path)?))
}

fn cmd_reduce(
    ctx: &Ctx,
    cnf: &Path,
    output: &Path,
    witness_out: Option<&Path>,
    meta: bool,
    sat_cap: usize,
) -> CmdResult {
    let f = load_cnf(cnf)?;
    let rg = build_game_with(&f, ctx.execution);
    write(output, &gameio::serialize_game(&rg.game))?;
    let mut text = format!(
        "wrote {}x{} game to {}\n",
        rg.game.rows(),
        rg.game.cols(),
        output.display()
    );
    if meta {
        text.push_str(&metadata(&rg));
    }
    let mut summary = json!({
        "command": "reduce",
        "n": rg.n(),
        "num_vars": f.num_vars(),
        "num_conflicts": rg.num_conflicts(),
        "rows": rg.game.rows(),
        "cols": rg.game.cols(),
        "epsilon": rg.epsilon.to_string(),
        "game_path": output.display().to_string(),
        "witness_path": Value::Null,
    });
    if let Some(out) = witness_out {
        match brute_force_sat_with(&f, sat_cap, ctx.execution) {
            Err(e) => {
                let fail = Failure::from(e);
                let _ = writeln!(text, "no witness written: {}", fail.msg);
                summary["sat"] = json!("UNKNOWN");
                ctx.emit(&text, summary);
                return Ok(fail.code);
            }
            Ok(None) => {
                text.push_str("UNSAT: no witness written\n");
                summary["sat"] = json!("UNSAT");
            }
            Ok(Some(a)) => {
                let w = witness_from_assignment(&rg, &a)?;
                if !verify_witness(rg.game.a(), &w.strategy)? {
                    return Err(Failure {
                        code: 1,
                        msg: "extracted witness failed verification".into(),
                    });
                }
                write(out, &witness_text(&w))?;
                let _ = writeln!(
                    text,
                    "SAT {a}\nwitness written to {} (support {}, best responses {})",
                    out.display(),
                    w.support_size(),
                    w.best_responses.len()
                );
                summary["sat"] = json!("SAT");
                summary["assignment"] = json!(a.to_string());
                summary["witness_path"] = json!(out.display().to_string());
                summary["support_size"] = json!(w.support_size());
                summary["best_responses"] = json!(w.best_responses.len());
            }
        }
    }
    ctx.emit(&text, summary);
    Ok(0)
}

fn cmd_sat(ctx: &Ctx, cnf: &Path, sat_cap: usize) -> CmdResult {
    let f = load_cnf(cnf)?;
    let result = brute_force_sat_with(&f, sat_cap, ctx.execution)?;
    let (verdict, assignment) = match &result {
        Some(a) => ("SAT", Some(a.to_string())),
        None => ("UNSAT", None),
    };
    let mut text = format!("{verdict}\n");
    if let Some(a) = &assignment {
        let _ = writeln!(text, "assignment {a}");
    }
    ctx.emit(
        &text,
        json!({
            "command": "sat",
            "num_vars": f.num_vars(),
            "num_clauses": f.num_clauses(),
            "verdict": verdict,
            "assignment": assignment,
        }),
    );
    Ok(0)
}

fn oracle_text(o: &OracleStatus) -> String {
    match o {
        OracleStatus::NotNeeded => "NOT NEEDED (satisfying assignment certifies degeneracy)".into(),
        OracleStatus::Skipped(r) => format!("SKIPPED({r})"),
        OracleStatus::Confirmed => "CONFIRMED (game nondegenerate)".into(),
        OracleStatus::Contradicted(r) => format!("CONTRADICTED({r})"),
    }
}

fn report_text(r: &ReductionReport, assignment: Option<&Assignment>) -> String {
    let mut text = format!(
        "game {}x{}, n = {}, D = {}\n",
        r.rows, r.cols, r.n, r.num_conflicts
    );
    match (assignment, &r.witness) {
        (Some(a), Some(w)) => {
            let _ = writeln!(text, "SAT {a}");
            let _ = writeln!(
                text,
                "witness: support {}, best responses {}, u = {}, {}",
                w.support,
                w.best_responses,
                w.value,
                if w.accepted { "ACCEPT" } else { "REJECT" }
            );
        }
        _ => text.push_str("UNSAT\n"),
    }
    let failed: Vec<&str> = r.audits.entries().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    if failed.is_empty() {
        text.push_str("audits PASS\n");
    } else {
        let _ = writeln!(text, "audits FAIL: {}", failed.join(", "));
    }
    let _ = writeln!(text, "oracle {}", oracle_text(&r.oracle));
    let verdict = match (r.consistent, &r.witness) {
        (true, Some(_)) => "CONSISTENT (witness verified, BR = n+1)".to_string(),
        (true, None) => match r.oracle {
            OracleStatus::Confirmed => "CONSISTENT (oracle confirms nondegenerate)".to_string(),
            _ => "CONSISTENT (audits pass; reverse direction not checked by oracle)".to_string(),
        },
        (false, _) => "INCONSISTENT".to_string(),
    };
    text.push_str(&verdict);
    text.push('\n');
    text
}

fn cmd_verify(ctx: &Ctx, cnf: &Path, sat_cap: usize, budget: &BudgetArgs) -> CmdResult {
    let f = load_cnf(cnf)?;
    let opts = VerifyOptions {
        sat_var_cap: sat_cap,
        budget: ctx.budget(budget),
    };
    let assignment = brute_force_sat_with(&f, sat_cap, ctx.execution)?;
    let rg = build_game_with(&f, ctx.execution);
    let r = verify_built(&rg, assignment.clone(), &opts)?;
    let text = report_text(&r, assignment.as_ref());
    let audits: serde_json::Map<String, Value> = r
        .audits
        .entries()
        .iter()
        .map(|(n, ok)| (n.to_string(), json!(ok)))
        .collect();
    let (oracle, reason) = match &r.oracle {
        OracleStatus::NotNeeded => ("NOT_NEEDED", None),
        OracleStatus::Skipped(s) => ("SKIPPED", Some(s.clone())),
        OracleStatus::Confirmed => ("CONFIRMED", None),
        OracleStatus::Contradicted(s) => ("CONTRADICTED", Some(s.clone())),
    };
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "support_size": w.support,
            "best_responses": w.best_responses,
            "value": w.value.to_string(),
            "accepted": w.accepted,
            "responders_as_predicted": w.responders_as_predicted,
        })
    });
    ctx.emit(
        &text,
        json!({
            "command": "verify-reduction",
            "n": r.n,
            "num_conflicts": r.num_conflicts,
            "rows": r.rows,
            "cols": r.cols,
            "sat": if r.satisfiable() { "SAT" } else { "UNSAT" },
            "assignment": assignment.map(|a| a.to_string()),
            "witness": witness,
            "audits": audits,
            "oracle": oracle,
            "oracle_reason": reason,
            "consistent": r.consistent,
        }),
    );
    Ok(0)
}

fn cmd_lp(ctx: &Ctx, path: &Path, max_cols: usize) -> CmdResult {
    let system = with_path(path, parse_lpsystem(&read(path)?))?;
    let v = is_lp_degenerate_with(&system, max_cols, ctx.execution)?;
    let (m, n) = (system.a().rows(), system.a().cols());
    let mut text = format!("system {m}x{n}, {} bases examined\n", v.subsets);
    let mut summary = json!({
        "command": "lp",
        "rows": m,
        "cols": n,
        "subsets": v.subsets.to_string(),
        "verdict": if v.degenerate { "DEGENERATE" } else { "NONDEGENERATE" },
    });
    match &v.certificate {
        Some(c) => {
            let cols = c.columns.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let zeros: Vec<usize> = c.zero_positions.iter().map(|&p| c.columns[p]).collect();
            let _ = writeln!(
                text,
                "DEGENERATE\nbasis {{{cols}}}\nsolution ({})\nzero at columns {zeros:?}",
                values(&c.solution).replace(' ', ",")
            );
            summary["basis"] = json!(c.columns);
            summary["solution"] = json!(strings(&c.solution));
            summary["zero_columns"] = json!(zeros);
        }
        None => text.push_str("NONDEGENERATE\n"),
    }
    ctx.emit(&text, summary);
    Ok(0)
}

fn nondegenerate_label(ok: bool) -> &'static str {
    if ok {
        "NONDEGENERATE"
    } else {
        "DEGENERATE"
    }
}

fn cmd_winlose(ctx: &Ctx, path: &Path, paper: bool, corrected: bool) -> CmdResult {
    let g = with_path(path, parse_game(&read(path)?))?;
    let corrected = corrected || !paper;
    let mut text = String::new();
    let mut summary = json!({ "command": "winlose", "rows": g.rows(), "cols": g.cols() });
    let mut results = Vec::new();
    if paper {
        let ok = with_path(path, winlose_nondegenerate_paper(&g))?;
        let _ = writeln!(text, "paper: {}", nondegenerate_label(ok));
        summary["paper"] = json!(nondegenerate_label(ok));
        results.push(ok);
    }
    if corrected {
        let ok = with_path(path, winlose_nondegenerate_corrected(&g))?;
        let _ = writeln!(text, "corrected: {}", nondegenerate_label(ok));
        summary["corrected"] = json!(nondegenerate_label(ok));
        results.push(ok);
    }
    if let [a, b] = results[..] {
        summary["discrepancy"] = json!(a != b);
        if a != b {
            text.push_str("discrepancy: the two criteria disagree on this game\n");
        }
    }
    ctx.emit(&text, summary);
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| input_error(format!("thread pool: {e}")))?;
    }
    let ctx = Ctx {
        json: cli.json,
        execution: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match &cli.command {
        Command::Check {
            game,
            side,
            budget,
            witness_out,
        } => cmd_check(&ctx, game, *side, budget, witness_out.as_deref()),
        Command::Witness { game, witness } => cmd_witness(&ctx, game, witness),
        Command::Reduce {
            cnf,
            output,
            witness_out,
            meta,
            sat_cap,
        } => cmd_reduce(&ctx, cnf, output, witness_out.as_deref(), *meta, *sat_cap),
        Command::Sat { cnf, sat_cap } => cmd_sat(&ctx, cnf, *sat_cap),
        Command::VerifyReduction { cnf, sat_cap, budget } => cmd_verify(&ctx, cnf, *sat_cap, budget),
        Command::Lp { system, max_cols } => cmd_lp(&ctx, system, *max_cols),
        Command::Winlose { game, paper, corrected } => cmd_winlose(&ctx, game, *paper, *corrected),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("degen: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
