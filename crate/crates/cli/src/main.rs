//! `vecopt` -- Pareto set identification under polyhedral cone orders.
//!
//! Subcommands:
//!   pareto    true Pareto set and suboptimality-gap statistics of a dataset
//!   gaps      full pairwise gap table of a dataset
//!   simulate  noisy naive-elimination batteries over a (L, epsilon) grid
//!   budget    theoretical per-design sample budget
//!   beta      cone distortion constants (closed form and sampled)
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use vecopt::{
    DEFAULT_CONCENTRATION_C, beta_empirical, build_gap_table, gap_statistics, pac_budget,
    pareto_set,
};

use vecopt_cli::battery::ConeEntry;
use vecopt_cli::output;
use vecopt_cli::{
    BatteryConfig, CliError, CliResult, ConeSpec, DatasetSpec, load_dataset, run_battery,
};

const USAGE: &str = "\
vecopt -- Pareto set identification under polyhedral cone orders

USAGE:
  vecopt pareto   --data <csv> --cone <spec> [data flags] [--tol T] [--out-dir DIR]
  vecopt gaps     --data <csv> --cone <spec> [data flags] [--tol T] [--out-dir DIR]
  vecopt simulate --data <csv> --cone <spec> [--cone <spec> ...] --config <json>
                  [data flags] [--seed S] [--out-dir DIR]
  vecopt budget   --epsilon E --delta D --designs K --cone <spec>
                  [--sigma S] [--c C] [--beta B]
  vecopt beta     --cone <spec> [--samples N] [--seed S] [--write-cone PATH]

CONE SPECS:
  orthant:<D>      nonnegative orthant in D dimensions
  theta:<angle>    2-D sector of this angular width (radians; pi/4, 3pi/4, 1.2)
  <path>           JSON file {\"dim\": D, \"rows\": [[...], ...]}

DATA FLAGS:
  --objectives a,b   objective columns (default: all non-id columns)
  --negate a         columns to negate on load (minimize-type objectives)
  --id-col name      label column (default: row index)
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Err(err) = run(&args) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}

struct Flags {
    entries: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String]) -> CliResult<Self> {
        let mut entries = Vec::new();
        let mut iter = args.iter();
        while let Some(arg) = iter.next() {
            let name = arg
                .strip_prefix("--")
                .ok_or_else(|| CliError::Usage(format!("unexpected argument '{arg}'")))?;
            let value = iter
                .next()
                .ok_or_else(|| CliError::Usage(format!("flag --{name} needs a value")))?;
            entries.push((name.to_string(), value.clone()));
        }
        Ok(Flags { entries })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    fn get_all(&self, name: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    fn require(&self, name: &str) -> CliResult<&str> {
        self.get(name)
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{name}")))
    }

    fn get_parsed<T: std::str::FromStr>(&self, name: &str) -> CliResult<Option<T>> {
        match self.get(name) {
            None => Ok(None),
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("cannot parse --{name} value '{text}'"))),
        }
    }

    fn require_parsed<T: std::str::FromStr>(&self, name: &str) -> CliResult<T> {
        let text = self.require(name)?;
        text.parse()
            .map_err(|_| CliError::Usage(format!("cannot parse --{name} value '{text}'")))
    }
}

fn run(args: &[String]) -> CliResult<()> {
    let Some(command) = args.first() else {
        print!("{USAGE}");
        return Err(CliError::Usage("no subcommand given".into()));
    };
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "pareto" => cmd_pareto(&flags),
        "gaps" => cmd_gaps(&flags),
        "simulate" => cmd_simulate(&flags),
        "budget" => cmd_budget(&flags),
        "beta" => cmd_beta(&flags),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Usage(format!(
            "unknown subcommand '{other}' (try 'vecopt help')"
        ))),
    }
}

fn dataset_spec(flags: &Flags) -> CliResult<DatasetSpec> {
    let split = |name: &str| -> Vec<String> {
        flags
            .get(name)
            .map(|v| {
                v.split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .unwrap_or_default()
    };
    Ok(DatasetSpec {
        path: PathBuf::from(flags.require("data")?),
        objective_columns: split("objectives"),
        negate_columns: split("negate"),
        id_column: flags.get("id-col").map(|s| s.to_string()),
    })
}

fn tol(flags: &Flags) -> CliResult<f64> {
    Ok(flags.get_parsed("tol")?.unwrap_or(vecopt::DEFAULT_TOL))
}

fn out_file(dir: &Path, name: &str) -> CliResult<fs::File> {
    fs::create_dir_all(dir)?;
    Ok(fs::File::create(dir.join(name))?)
}

fn cmd_pareto(flags: &Flags) -> CliResult<()> {
    let spec = ConeSpec::parse(flags.require("cone")?)?;
    let design = load_dataset(&dataset_spec(flags)?)?;
    let cone = spec.build()?;
    let tol = tol(flags)?;

    let indices = pareto_set(&design, &cone, tol)?;
    let table = build_gap_table(&design, &cone, tol)?;
    let stats = gap_statistics(&table);

    match flags.get("out-dir") {
        Some(dir) => {
            let dir = Path::new(dir);
            output::write_pareto_json(&mut out_file(dir, "pareto.json")?, &indices)?;
            output::write_gap_stats_csv(&mut out_file(dir, "gap_stats.csv")?, &stats)?;
            println!(
                "wrote {} and {}",
                dir.join("pareto.json").display(),
                dir.join("gap_stats.csv").display()
            );
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            output::write_pareto_json(&mut out, &indices)?;
            output::write_gap_stats_csv(&mut out, &stats)?;
        }
    }
    Ok(())
}

fn cmd_gaps(flags: &Flags) -> CliResult<()> {
    let spec = ConeSpec::parse(flags.require("cone")?)?;
    let design = load_dataset(&dataset_spec(flags)?)?;
    let cone = spec.build()?;
    let table = build_gap_table(&design, &cone, tol(flags)?)?;

    match flags.get("out-dir") {
        Some(dir) => {
            let dir = Path::new(dir);
            table.write_pairwise_csv(&mut out_file(dir, "pairwise_gaps.csv")?)?;
            table.write_per_design_csv(&mut out_file(dir, "design_gaps.csv")?)?;
            println!(
                "wrote {} and {}",
                dir.join("pairwise_gaps.csv").display(),
                dir.join("design_gaps.csv").display()
            );
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            table.write_pairwise_csv(&mut out)?;
            table.write_per_design_csv(&mut out)?;
        }
    }
    Ok(())
}

fn cmd_simulate(flags: &Flags) -> CliResult<()> {
    let cone_specs = flags.get_all("cone");
    if cone_specs.is_empty() {
        return Err(CliError::Usage("simulate needs at least one --cone".into()));
    }
    let cones = cone_specs
        .iter()
        .map(|raw| {
            let spec = ConeSpec::parse(raw)?;
            Ok(ConeEntry {
                id: spec.id().to_string(),
                cone: spec.build()?,
                beta: spec.closed_form_beta(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let design = load_dataset(&dataset_spec(flags)?)?;

    let config_path = flags.require("config")?;
    let config_text = fs::read_to_string(config_path)
        .map_err(|e| CliError::Data(format!("cannot read config {config_path}: {e}")))?;
    let mut config = BatteryConfig::from_json(&config_text)?;
    if let Some(seed) = flags.get_parsed::<u64>("seed")? {
        config.seed = seed;
    }
    // A beta override applies to cones without a closed form.
    let cones: Vec<ConeEntry> = cones
        .into_iter()
        .map(|mut entry| {
            if entry.beta.is_none() {
                entry.beta = config.beta_override;
            }
            entry
        })
        .collect();

    let result = run_battery(&design, &cones, &config)?;

    let dir = PathBuf::from(flags.get("out-dir").unwrap_or("."));
    output::write_runs_jsonl(&mut out_file(&dir, "runs.jsonl")?, &result.records)?;
    output::write_aggregate_csv(&mut out_file(&dir, "aggregate.csv")?, &result.rows)?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for row in &result.rows {
        writeln!(
            out,
            "L={} epsilon={} cone={} success={}%",
            row.budget, row.epsilon, row.cone_id, row.summary.success_rate_percent
        )?;
    }
    writeln!(
        out,
        "wrote {} and {}",
        dir.join("runs.jsonl").display(),
        dir.join("aggregate.csv").display()
    )?;
    Ok(())
}

fn cmd_budget(flags: &Flags) -> CliResult<()> {
    let epsilon: f64 = flags.require_parsed("epsilon")?;
    let delta: f64 = flags.require_parsed("delta")?;
    let designs: usize = flags.require_parsed("designs")?;
    let sigma: f64 = flags.get_parsed("sigma")?.unwrap_or(1.0);
    let c: f64 = flags.get_parsed("c")?.unwrap_or(DEFAULT_CONCENTRATION_C);

    let spec = ConeSpec::parse(flags.require("cone")?)?;
    let cone = spec.build()?;
    let beta = match flags.get_parsed::<f64>("beta")? {
        Some(b) => b,
        None => spec.closed_form_beta().ok_or_else(|| {
            CliError::Usage("this cone has no closed-form distortion constant; pass --beta".into())
        })?,
    };

    let pairs = designs as f64 * (designs as f64 - 1.0);
    let delta_split = 2.0 * delta / pairs;
    let budget = pac_budget(epsilon, delta, designs, beta, c, sigma, cone.dim())?;
    println!("delta' = {delta_split:e}");
    println!("L = {budget}");
    Ok(())
}

fn cmd_beta(flags: &Flags) -> CliResult<()> {
    let spec = ConeSpec::parse(flags.require("cone")?)?;
    let cone = spec.build()?;
    let samples: usize = flags.get_parsed("samples")?.unwrap_or(10_000);
    let seed: u64 = flags.get_parsed("seed")?.unwrap_or(0);

    if let Some(path) = flags.get("write-cone") {
        let json =
            serde_json::to_string_pretty(&cone).map_err(|e| CliError::Data(e.to_string()))?;
        fs::write(path, json + "\n")?;
        println!("wrote {path}");
    }
    if let Some(beta) = spec.closed_form_beta() {
        println!("closed form: beta = {beta}");
    }
    let est = beta_empirical(&cone, samples, seed)?;
    println!(
        "sampled ({samples} draws): beta1 = {}, beta2 = {}, beta = {}",
        est.beta1, est.beta2, est.beta
    );
    Ok(())
}
