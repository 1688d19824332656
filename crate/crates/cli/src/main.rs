use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ahg::json::{
    self, census_to_dto, classification_to_dto, config_from_json, report_to_csv, report_to_dto,
};
use ahg::{census_cached, check_table, parallel_search};
use ahg_core::census::{feasible_boundaries, type_is_feasible};
use ahg_core::classifier::{classify, interlacing_cells};
use ahg_core::hypergeo::{apex_points, is_algebraic, signature};
use ahg_core::named::load_named;
use ahg_core::PointConfig;
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ahg",
    about = "Classify algebraic A-hypergeometric functions of planar lattice configurations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigSource {
    /// Path to a configuration JSON file: {"r": 3, "points": [[x,y,z], ...]}
    #[arg(long, value_name = "PATH", conflicts_with = "named")]
    config: Option<PathBuf>,
    /// Built-in configuration name (e.g. A_2, A^(2)_3, A^(3)_{2,1},
    /// A^(1)_{2,1}, collinear_5)
    #[arg(long, value_name = "NAME")]
    named: Option<String>,
}

impl ConfigSource {
    fn load(&self) -> Result<PointConfig> {
        match (&self.config, &self.named) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                config_from_json(&text)
            }
            (None, Some(name)) => load_named(name).map_err(|e| anyhow!("{e}")),
            _ => bail!("exactly one of --config or --named is required"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the configuration admits algebraic parameter vectors
    Classify {
        #[command(flatten)]
        source: ConfigSource,
        /// Denominator bound for the parameter grid
        #[arg(long, default_value_t = 60)]
        dmax: i64,
    },
    /// Exhaustive bounded-denominator parameter search
    Search {
        #[command(flatten)]
        source: ConfigSource,
        #[arg(long)]
        dmax: i64,
        /// Detect and verify one-parameter families
        #[arg(long)]
        families: bool,
        /// Emit CSV rows instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Apex points and signature of one parameter vector
    Apex {
        #[command(flatten)]
        source: ConfigSource,
        /// Comma-separated rational coordinates, e.g. "1/3,2/3,1/2"
        #[arg(long)]
        beta: String,
    },
    /// Floor-tuple cells of the facet forms with one sample and signature each
    Cells {
        #[command(flatten)]
        source: ConfigSource,
    },
    /// Print or recompute-and-diff an embedded reference table
    Tables {
        /// Table id (1-7)
        #[arg(long)]
        id: u32,
        /// Recompute and compare; exit code 1 on mismatch
        #[arg(long)]
        check: bool,
        /// Override the per-key denominator bound
        #[arg(long)]
        dmax: Option<i64>,
        /// Restrict the check to these key configurations
        #[arg(long, value_delimiter = ';')]
        keys: Option<Vec<String>>,
    },
    /// Enumerate polygon classes of a type up to isomorphism
    Census {
        #[arg(long)]
        interior: usize,
        #[arg(long)]
        boundary: Option<usize>,
        /// JSON cache file to reuse across runs
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { source, dmax } => {
            let cfg = source.load()?;
            let result = classify(&cfg, dmax).map_err(|e| anyhow!("{e}"))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&classification_to_dto(&result))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            source,
            dmax,
            families,
            csv,
        } => {
            let cfg = source.load()?;
            let report = parallel_search(&cfg, dmax, families).map_err(|e| anyhow!("{e}"))?;
            if csv {
                print!("{}", report_to_csv(&report));
            } else {
                println!("{}", serde_json::to_string_pretty(&report_to_dto(&report))?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Apex { source, beta } => {
            let cfg = source.load()?;
            let beta = json::parse_param(&beta, cfg.dim())?;
            let apexes = apex_points(&cfg, &beta).map_err(|e| anyhow!("{e}"))?;
            let sig = signature(&cfg, &beta).map_err(|e| anyhow!("{e}"))?;
            let volume = ahg_core::polytope::simplex_volume(&cfg).map_err(|e| anyhow!("{e}"))?;
            let verdict = is_algebraic(&cfg, &beta)
                .ok()
                .map(|v| json::verdict_to_dto(&v));
            let dto = json::ApexDto {
                beta: json::beta_strings(&beta),
                apex_points: apexes
                    .iter()
                    .map(|p| p.iter().map(|c| c.to_string()).collect())
                    .collect(),
                signature: sig,
                volume,
                verdict,
            };
            println!("{}", serde_json::to_string_pretty(&dto)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cells { source } => {
            let cfg = source.load()?;
            let cells = interlacing_cells(&cfg).map_err(|e| anyhow!("{e}"))?;
            let dto: Vec<json::CellDto> = cells.iter().map(json::cell_to_dto).collect();
            println!("{}", serde_json::to_string_pretty(&dto)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables {
            id,
            check,
            dmax,
            keys,
        } => {
            if !check {
                let raw = ahg::fixtures::raw_table(id)?;
                println!("{}", serde_json::to_string_pretty(&serde_json::json!({
                    "table": raw.table,
                    "title": raw.title,
                    "keys": raw.keys.iter().map(|k| &k.config).collect::<Vec<_>>(),
                }))?);
                return Ok(ExitCode::SUCCESS);
            }
            let result = check_table(id, dmax, keys.as_deref())?;
            for key in &result.keys {
                println!("table {} :: {}", result.table, key.summary());
            }
            if result.pass {
                println!("table {}: PASS ({} keys)", result.table, result.keys.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("table {}: MISMATCH", result.table);
                Ok(ExitCode::from(1))
            }
        }
        Command::Census {
            interior,
            boundary,
            cache,
        } => {
            let bs: Vec<usize> = match boundary {
                Some(b) => vec![b],
                None => feasible_boundaries(interior)
                    .ok_or_else(|| anyhow!("--boundary is required when --interior 0"))?,
            };
            let mut out = Vec::new();
            for b in bs {
                if !type_is_feasible(interior, b) {
                    out.push(census_to_dto(interior, b, &[]));
                    continue;
                }
                if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
                    let text = fs::read_to_string(path)?;
                    if let Ok(cached) = serde_json::from_str::<Vec<json::CensusDto>>(&text) {
                        if let Some(hit) = cached
                            .iter()
                            .find(|c| c.polygon_type == [interior, b])
                        {
                            out.push(json::CensusDto {
                                polygon_type: hit.polygon_type,
                                count: hit.count,
                                classes: hit
                                    .classes
                                    .iter()
                                    .map(|p| json::PolygonDto {
                                        vertices: p.vertices.clone(),
                                    })
                                    .collect(),
                            });
                            continue;
                        }
                    }
                }
                let classes = census_cached(interior, b);
                out.push(census_to_dto(interior, b, &classes));
            }
            let total: usize = out.iter().map(|c| c.count).sum();
            if let Some(path) = cache {
                fs::write(&path, serde_json::to_string_pretty(&out)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            eprintln!("total classes: {total}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
