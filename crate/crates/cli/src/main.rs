use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use domset_core::generators::GenParams;
use domset_core::graph::{format_vertex_set, undominated};
use domset_core::harness::{write_report, ReportFormat};
use domset_core::{
    build_lp, factor_report, gamma_branch_bound, generate_graph, parse_edge_list, parse_vertex_set, run_experiment,
    run_pipeline, verify_dominating_set, ExperimentConfig, Generator, Graph, GraphClass,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "domset",
    version,
    about = "Constant-round dominating set simulator for planar graph classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        leaves: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the three phases through the round engine.
    Run {
        #[arg(long)]
        class: GraphClass,
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include per-level greedy data.
        #[arg(long)]
        trace: bool,
    },
    /// Exact domination number by branch-and-bound.
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Solve the class's worst-case program and compose the factor.
    Lp {
        #[arg(long)]
        class: GraphClass,
        /// Write the program in plain text to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Check that a vertex set dominates a graph.
    Verify { file: PathBuf, domset: PathBuf },
    /// Run an experiment config and write its report.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Report file (`.json` for JSON, CSV otherwise).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn joined<'a>(set: impl IntoIterator<Item = &'a usize>) -> String {
    set.into_iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<ExitCode> {
    match command {
        Command::Gen {
            kind,
            rows,
            cols,
            n,
            leaves,
            seed,
            output,
        } => {
            let generator = Generator::from_kind(&kind, GenParams { rows, cols, n, leaves })?;
            let g = generate_graph(&generator, seed)?;
            emit(output.as_deref(), &g.to_edge_list(), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            class,
            file,
            json,
            trace,
        } => {
            let g = read_graph(&file)?;
            let res = run_pipeline(&g, class);
            let t = &res.trace;
            let warnings: Vec<String> = res.warnings.iter().map(ToString::to_string).collect();
            if json {
                let mut value = json!({
                    "class": class,
                    "n": g.n(),
                    "m": g.edge_count(),
                    "dominating_set": res.dominating_set,
                    "size": res.dominating_set.len(),
                    "d1": t.d1.len(),
                    "d2": t.d2.len(),
                    "d3": t.d3_len(),
                    "cleanup": t.cleanup.len(),
                    "rounds_used": t.rounds_used,
                    "warnings": warnings,
                });
                if trace {
                    value["trace"] = serde_json::to_value(t)?;
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "class: {class}")?;
                writeln!(out, "n: {}", g.n())?;
                writeln!(out, "m: {}", g.edge_count())?;
                writeln!(out, "size: {}", res.dominating_set.len())?;
                writeln!(out, "dominating_set: {}", joined(&res.dominating_set))?;
                writeln!(out, "d1: {}", t.d1.len())?;
                writeln!(out, "d2: {}", t.d2.len())?;
                writeln!(out, "d3: {}", t.d3_len())?;
                writeln!(out, "cleanup: {}", t.cleanup.len())?;
                writeln!(out, "rounds_used: {}", t.rounds_used)?;
                if trace {
                    writeln!(out, "D1: {}", joined(&t.d1))?;
                    writeln!(out, "D2: {}", joined(&t.d2))?;
                    for (level, delta) in t.deltas.iter().rev() {
                        writeln!(
                            out,
                            "level {level}: red={} max_residual={} delta={}",
                            t.r_sizes[level],
                            t.max_residual[level],
                            joined(delta)
                        )?;
                    }
                }
                for w in &warnings {
                    writeln!(out, "warning: {w}")?;
                }
            }
            if json {
                for w in &warnings {
                    eprintln!("warning: {w}");
                }
            }
            Ok(if warnings.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Exact { file, budget } => {
            anyhow::ensure!(budget >= 1, "budget must be at least 1");
            let g = read_graph(&file)?;
            let res = gamma_branch_bound(&g, budget);
            writeln!(out, "gamma: {}", res.gamma)?;
            writeln!(out, "witness: {}", joined(&res.witness))?;
            writeln!(out, "nodes_explored: {}", res.nodes_explored)?;
            writeln!(out, "exhausted: {}", res.exhausted)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lp { class, export } => {
            if let Some(path) = export {
                emit(Some(&path), &build_lp(class).export(), out)?;
            }
            let report = factor_report(class);
            writeln!(out, "{report}")?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, domset } => {
            let g = read_graph(&file)?;
            let text = fs::read_to_string(&domset).with_context(|| format!("reading {}", domset.display()))?;
            let set = parse_vertex_set(&text).with_context(|| format!("parsing {}", domset.display()))?;
            if verify_dominating_set(&g, &set)? {
                writeln!(out, "dominating: true")?;
                Ok(ExitCode::SUCCESS)
            } else {
                writeln!(out, "dominating: false")?;
                write!(out, "undominated:\n{}", format_vertex_set(&undominated(&g, &set)))?;
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench { config, output } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let rows = run_experiment(&cfg)?;
            let target = output.or_else(|| cfg.output.as_ref().map(|o| o.path.clone()));
            let format = match &target {
                Some(p) if p.extension().is_some_and(|e| e == "json") => ReportFormat::Json,
                Some(_) => ReportFormat::Csv,
                None => cfg.output.as_ref().map_or(ReportFormat::Csv, |o| o.format),
            };
            let mut buf = Vec::new();
            write_report(&rows, format, &mut buf)?;
            match &target {
                Some(path) => fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(&buf)?,
            }
            let flagged = rows.iter().filter(|r| !r.warnings.is_empty()).count();
            if flagged > 0 {
                eprintln!("warning: {flagged} instances violated class invariants");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = execute(cli.command, &mut out).and_then(|code| Ok(out.flush().map(|_| code)?));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Runs a command line the way `main` does: stdout text and exit code.
    fn domset(args: &[&str], dir: &Path) -> (u8, String) {
        let cli = match Cli::try_parse_from(std::iter::once("domset").chain(args.iter().copied())) {
            Ok(cli) => cli,
            Err(e) => return (e.exit_code() as u8, String::new()),
        };
        let mut command = cli.command;
        rebase(&mut command, dir);
        let mut out = Vec::new();
        let code = match execute(command, &mut out) {
            Ok(code) if code == ExitCode::SUCCESS => 0,
            Ok(code) if code == ExitCode::from(1) => 1,
            Ok(_) => unreachable!(),
            Err(_) => 2,
        };
        (code, String::from_utf8(out).unwrap())
    }

    fn rebase(command: &mut Command, dir: &Path) {
        let fix = |p: &mut PathBuf| *p = dir.join(&*p);
        match command {
            Command::Gen { output, .. } => output.iter_mut().for_each(fix),
            Command::Run { file, .. } | Command::Exact { file, .. } => fix(file),
            Command::Lp { export, .. } => export.iter_mut().for_each(fix),
            Command::Verify { file, domset } => {
                fix(file);
                fix(domset);
            }
            Command::Bench { config, output } => {
                fix(config);
                output.iter_mut().for_each(fix);
            }
        }
    }

    #[test]
    fn gen_run_exact_verify() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let (code, _) = domset(
            &["gen", "--kind", "complete_bipartite_2n", "--n", "10", "-o", "k.txt"],
            d,
        );
        assert_eq!(code, 0);
        assert!(fs::read_to_string(d.join("k.txt")).unwrap().starts_with("12 20\n"));

        let (code, text) = domset(&["run", "--class", "planar", "k.txt"], d);
        assert_eq!(code, 0);
        assert!(text.contains("dominating_set: 0 1\n"));
        assert!(text.contains("rounds_used: 126\n"));

        let (_, text) = domset(&["run", "--class", "planar", "k.txt", "--json"], d);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dominating_set"], json!([0, 1]));
        assert!(v.get("trace").is_none());
        let (_, text) = domset(&["run", "--class", "planar", "k.txt", "--json", "--trace"], d);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["trace"]["d2"], json!([0, 1]));

        let (_, text) = domset(&["exact", "k.txt"], d);
        assert!(text.starts_with("gamma: 2\nwitness: 0 1\n"));

        fs::write(d.join("good.txt"), "0\n1\n").unwrap();
        fs::write(d.join("bad.txt"), "0\n").unwrap();
        assert_eq!(
            domset(&["verify", "k.txt", "good.txt"], d),
            (0, "dominating: true\n".into())
        );
        let (code, text) = domset(&["verify", "k.txt", "bad.txt"], d);
        assert_eq!(code, 1);
        assert_eq!(text, "dominating: false\nundominated:\n1\n");
    }

    #[test]
    fn gen_to_stdout() {
        let dir = tempfile::tempdir().unwrap();
        let (code, text) = domset(&["gen", "--kind", "grid", "--rows", "2", "--cols", "2"], dir.path());
        assert_eq!(code, 0);
        assert_eq!(text, "4 4\n0 1\n0 2\n1 3\n2 3\n");
    }

    #[test]
    fn warnings_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        domset(
            &["gen", "--kind", "complete_bipartite_2n", "--n", "10", "-o", "k.txt"],
            d,
        );
        let (code, text) = domset(&["run", "--class", "girth5", "k.txt"], d);
        assert_eq!(code, 1);
        assert!(text.contains("warning: class invariant violated"));
    }

    #[test]
    fn input_errors_exit_two() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        fs::write(d.join("bad.txt"), "3 1\n0 5\n").unwrap();
        fs::write(d.join("loop.txt"), "3 1\n1 1\n").unwrap();
        fs::write(d.join("ok.txt"), "2 1\n0 1\n").unwrap();
        fs::write(d.join("set.txt"), "0\n9\n").unwrap();
        let cases: &[&[&str]] = &[
            &["run", "--class", "planar", "bad.txt"],
            &["run", "--class", "planar", "loop.txt"],
            &["run", "--class", "planar", "missing.txt"],
            &["run", "--class", "nonsense", "ok.txt"],
            &["exact", "bad.txt"],
            &["exact", "ok.txt", "--budget", "0"],
            &["verify", "ok.txt", "set.txt"],
            &["gen", "--kind", "grid", "--rows", "3"],
            &["gen", "--kind", "unknown", "--n", "3"],
            &["bench", "--config", "missing.toml"],
        ];
        for args in cases {
            assert_eq!(domset(args, d).0, 2, "{args:?}");
        }
    }

    #[test]
    fn lp_and_bench() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path();
        let (code, text) = domset(&["lp", "--class", "girth5", "--export", "g5.lp"], d);
        assert_eq!(code, 0);
        assert!(text.contains("lp_optimum: 4 "));
        assert!(fs::read_to_string(d.join("g5.lp"))
            .unwrap()
            .starts_with("maximize: 1 d1 +1 d2 +1 d3\n"));

        fs::write(
            d.join("exp.toml"),
            "class = \"planar\"\noracle_budget = 100000\n[[generators]]\nkind = \"grid\"\nsizes = [{ rows = 3, cols = 3 }]\nseeds = [1]\n",
        )
        .unwrap();
        assert_eq!(domset(&["bench", "--config", "exp.toml", "-o", "r.csv"], d).0, 0);
        let csv = fs::read_to_string(d.join("r.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "instance_id,n,m,class,d1,d2,d3,cleanup,rounds_used,alg_size,gamma,ratio,deltas,warnings"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&row[..4], ["grid-r3c3-s1", "9", "12", "planar"]);
        assert_eq!(row[10], "3");

        let (code, text) = domset(&["bench", "--config", "exp.toml"], d);
        assert_eq!(code, 0);
        assert!(text.starts_with("instance_id,"));
    }
}
