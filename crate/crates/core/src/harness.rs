//! Experiment configs and report rows.
//!
//! A config names a class, an oracle budget and a list of generator specs:
//!
//! ```toml
//! class = "planar"
//! oracle_budget = 10000000
//!
//! [output]
//! path = "report.csv"
//! format = "csv"
//!
//! [[generators]]
//! kind = "random_apollonian"
//! sizes = [{ n = 20 }, { n = 40 }]
//! seeds = [1, 2, 3]
//!
//! [[generators]]
//! kind = "file"
//! path = "k2_10.txt"
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::GraphClass;
use crate::error::{Error, Result};
use crate::generators::{generate_graph, GenParams, Generator};
use crate::graph::{parse_edge_list, Graph};
use crate::oracle::gamma_branch_bound;
use crate::phases::run_pipeline;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub class: GraphClass,
    /// Search-node budget for the exact oracle; absent disables it.
    #[serde(default)]
    pub oracle_budget: Option<u64>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    /// A generator kind, or `file` for an edge-list file.
    pub kind: String,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<GenParams>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

fn default_sizes() -> Vec<GenParams> {
    vec![GenParams::default()]
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config; relative paths inside it resolve against its directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::from_toml(&fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for spec in &mut cfg.generators {
            if let Some(p) = &mut spec.path {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        if let Some(out) = &mut cfg.output {
            if out.path.is_relative() {
                out.path = base.join(&out.path);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.generators.is_empty() {
            return bad("no generators".into());
        }
        if self.oracle_budget == Some(0) {
            return bad("oracle_budget must be positive".into());
        }
        for spec in &self.generators {
            if spec.seeds.is_empty() {
                return bad(format!("generator {}: empty seed list", spec.kind));
            }
            if spec.sizes.is_empty() {
                return bad(format!("generator {}: empty size list", spec.kind));
            }
            let zero = spec
                .sizes
                .iter()
                .any(|s| [s.rows, s.cols, s.n, s.leaves].contains(&Some(0)));
            if zero {
                return bad(format!("generator {}: sizes must be positive", spec.kind));
            }
            if spec.kind == "file" {
                if spec.path.is_none() {
                    return bad("generator file: missing path".into());
                }
            } else {
                for &size in &spec.sizes {
                    Generator::from_kind(&spec.kind, size)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub n: usize,
    pub m: usize,
    pub class: GraphClass,
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub cleanup: usize,
    pub rounds_used: usize,
    pub alg_size: usize,
    pub gamma: Option<usize>,
    pub ratio: Option<f64>,
    /// `|Δ_i|` from level `cap` down to 0, space separated.
    pub deltas: String,
    /// Warning messages joined with `; `.
    pub warnings: String,
}

enum Source {
    Generated(Generator, u64),
    File(PathBuf),
}

struct Job {
    id: String,
    source: Source,
}

fn size_label(p: &GenParams) -> String {
    let parts: Vec<String> = [("r", p.rows), ("c", p.cols), ("n", p.n), ("l", p.leaves)]
        .iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}{v}")))
        .collect();
    if parts.is_empty() {
        "default".into()
    } else {
        parts.join("")
    }
}

fn jobs(cfg: &ExperimentConfig) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    for spec in &cfg.generators {
        if spec.kind == "file" {
            let path = spec.path.clone().expect("validated");
            let name = path
                .file_name()
                .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
            out.push(Job {
                id: format!("file:{name}"),
                source: Source::File(path),
            });
            continue;
        }
        for &size in &spec.sizes {
            let generator = Generator::from_kind(&spec.kind, size)?;
            for &seed in &spec.seeds {
                out.push(Job {
                    id: format!("{}-{}-s{}", spec.kind, size_label(&size), seed),
                    source: Source::Generated(generator, seed),
                });
            }
        }
    }
    Ok(out)
}

/// Runs the pipeline (and the oracle, if budgeted) on a single graph.
pub fn report_row(id: &str, g: &Graph, class: GraphClass, oracle_budget: Option<u64>) -> ReportRow {
    let res = run_pipeline(g, class);
    let t = &res.trace;
    let gamma = oracle_budget
        .map(|budget| gamma_branch_bound(g, budget))
        .filter(|o| o.exhausted)
        .map(|o| o.gamma);
    let alg_size = res.dominating_set.len();
    let ratio = gamma.map(|gamma| {
        if gamma == 0 {
            1.0
        } else {
            alg_size as f64 / gamma as f64
        }
    });
    ReportRow {
        instance_id: id.to_string(),
        n: g.n(),
        m: g.edge_count(),
        class,
        d1: t.d1.len(),
        d2: t.d2.len(),
        d3: t.d3_len(),
        cleanup: t.cleanup.len(),
        rounds_used: t.rounds_used,
        alg_size,
        gamma,
        ratio,
        deltas: t
            .deltas
            .values()
            .rev()
            .map(|d| d.len().to_string())
            .collect::<Vec<_>>()
            .join(" "),
        warnings: res
            .warnings
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    }
}

/// One row per (generator, size, seed), in config order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    jobs(cfg)?
        .par_iter()
        .map(|job| {
            let g = match &job.source {
                Source::Generated(generator, seed) => generate_graph(generator, *seed)?,
                Source::File(path) => parse_edge_list(&fs::read_to_string(path)?)?,
            };
            Ok(report_row(&job.id, &g, cfg.class, cfg.oracle_budget))
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_report<W: Write>(rows: &[ReportRow], format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Csv => write_csv(rows, out),
        ReportFormat::Json => write_json(rows, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ExperimentConfig {
        ExperimentConfig::from_toml(text).unwrap()
    }

    #[test]
    fn grid_row() {
        let cfg = config(
            r#"
            class = "planar"
            oracle_budget = 100000
            [[generators]]
            kind = "grid"
            sizes = [{ rows = 3, cols = 3 }]
            seeds = [1]
            "#,
        );
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.instance_id, "grid-r3c3-s1");
        assert_eq!((row.n, row.m), (9, 12));
        assert_eq!(row.gamma, Some(3));
        assert_eq!(row.ratio, Some(row.alg_size as f64 / 3.0));
        assert!(row.ratio.unwrap() <= 20.0);
        assert_eq!(row.alg_size, row.d1 + row.d2 + row.d3 + row.cleanup);
        assert_eq!(row.rounds_used, 126);
        assert_eq!(row.deltas.split(' ').count(), 31);
    }

    #[test]
    fn star_row() {
        let cfg = config(
            r#"
            class = "planar"
            oracle_budget = 1000
            [[generators]]
            kind = "star"
            sizes = [{ leaves = 5 }]
            "#,
        );
        let row = &run_experiment(&cfg).unwrap()[0];
        assert_eq!((row.alg_size, row.gamma, row.ratio), (1, Some(1), Some(1.0)));
    }

    #[test]
    fn file_row_and_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        let k210 = Graph::from_edges(12, (0..2).flat_map(|u| (2..12).map(move |v| (u, v)))).unwrap();
        fs::write(dir.path().join("k2_10.txt"), k210.to_edge_list()).unwrap();
        let cfg_path = dir.path().join("exp.toml");
        fs::write(
            &cfg_path,
            "class = \"planar\"\noracle_budget = 1000\n[output]\npath = \"out.csv\"\n[[generators]]\nkind = \"file\"\npath = \"k2_10.txt\"\n",
        )
        .unwrap();
        let cfg = ExperimentConfig::from_file(&cfg_path).unwrap();
        assert_eq!(cfg.output.as_ref().unwrap().path, dir.path().join("out.csv"));
        let row = &run_experiment(&cfg).unwrap()[0];
        assert_eq!(row.instance_id, "file:k2_10.txt");
        assert_eq!((row.alg_size, row.gamma, row.ratio), (2, Some(2), Some(1.0)));
        assert_eq!(row.d2, 2);
    }

    #[test]
    fn rejects_bad_configs() {
        let cases = [
            "class = \"planar\"\ngenerators = []",
            "class = \"planar\"\n[[generators]]\nkind = \"path\"\nsizes = [{ n = 4 }]\nseeds = []",
            "class = \"planar\"\n[[generators]]\nkind = \"path\"\nsizes = [{ n = 0 }]",
            "class = \"planar\"\n[[generators]]\nkind = \"path\"",
            "class = \"planar\"\n[[generators]]\nkind = \"nope\"\nsizes = [{ n = 3 }]",
            "class = \"planar\"\n[[generators]]\nkind = \"file\"",
            "class = \"weird\"\n[[generators]]\nkind = \"dodecahedron\"",
            "class = \"planar\"\noracle_budget = 0\n[[generators]]\nkind = \"dodecahedron\"",
            "class = \"planar\"\ntypo = 1\n[[generators]]\nkind = \"dodecahedron\"",
        ];
        for text in cases {
            assert!(ExperimentConfig::from_toml(text).is_err(), "{text}");
        }
    }

    #[test]
    fn order_and_determinism() {
        let cfg = config(
            r#"
            class = "trifree"
            oracle_budget = 1000000
            [[generators]]
            kind = "random_trifree_planar"
            sizes = [{ n = 30 }, { n = 12 }]
            seeds = [5, 1, 3]
            [[generators]]
            kind = "cycle"
            sizes = [{ n = 8 }]
            "#,
        );
        let rows = run_experiment(&cfg).unwrap();
        let ids: Vec<&str> = rows.iter().map(|r| r.instance_id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "random_trifree_planar-n30-s5",
                "random_trifree_planar-n30-s1",
                "random_trifree_planar-n30-s3",
                "random_trifree_planar-n12-s5",
                "random_trifree_planar-n12-s1",
                "random_trifree_planar-n12-s3",
                "cycle-n8-s0",
            ]
        );
        assert!(rows.iter().all(|r| r.rounds_used == 78));
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        write_csv(&run_experiment(&cfg).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text
            .starts_with("instance_id,n,m,class,d1,d2,d3,cleanup,rounds_used,alg_size,gamma,ratio,deltas,warnings\n"));
    }

    #[test]
    fn json_mirrors_csv() {
        let cfg = config("class = \"girth5\"\n[[generators]]\nkind = \"dodecahedron\"");
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows[0].gamma, None);
        let mut buf = Vec::new();
        write_json(&rows, &mut buf).unwrap();
        let back: Vec<ReportRow> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn exhausted_budget_leaves_gamma_absent() {
        let g = generate_graph(&Generator::Grid { rows: 6, cols: 6 }, 0).unwrap();
        let row = report_row("g", &g, GraphClass::BipartitePlanar, Some(1));
        assert_eq!(row.gamma, None);
        assert_eq!(row.ratio, None);
    }
}
