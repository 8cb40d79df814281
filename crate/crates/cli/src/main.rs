use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foulkes_core::abacus::block_label;
use foulkes_core::bounds::{ttt1_report, FoulkesData};
use foulkes_core::characters::{CacheOutcome, CharacterTable, TableCache};
use foulkes_core::plethysm::FoulkesCharacter;
use foulkes_core::setpart::verify_lemmas;
use foulkes_core::{Error, Partition};
use foulkes_cli::config::{Config, FileConfig, Overrides, CACHE_DIR_ENV};
use foulkes_cli::verify::{check_characters, check_foulkes_oracle, check_normalizer, seeded_pairs, DEFAULT_SPOT_PAIRS};
use foulkes_cli::{exit_code_for, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::json;

#[derive(Parser)]
#[command(name = "foulkes", version, about = "Foulkes characters, p-cores and decomposition-matrix bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML file with defaults for the options below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory holding chartab-<n>.json files.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Never write to the cache directory.
    #[arg(long, global = true)]
    read_only_cache: bool,
    #[arg(long, global = true)]
    enumeration_cap: Option<u64>,
    #[arg(long, global = true)]
    group_cap: Option<u64>,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// p-core, weight and block of a partition.
    #[command(visible_alias = "blocks")]
    Core {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        p: usize,
    },
    /// Foulkes character phi^(a^n).
    Foulkes {
        #[command(subcommand)]
        mode: FoulkesMode,
    },
    /// Decomposition-matrix column bounds for lambda.
    Bounds {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        lambda: Partition,
        /// Also list partitions outside the block of lambda.
        #[arg(long)]
        include_outside: bool,
    },
    /// Brute-force verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Build or check cached character tables.
    Chartab {
        #[command(subcommand)]
        action: ChartabAction,
    },
}

#[derive(Subcommand)]
enum FoulkesMode {
    /// <phi, chi^mu>
    Mult {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mu: Partition,
    },
    /// phi at a class given by its cycle type.
    Value {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: Partition,
    },
    /// Every multiplicity, reverse-lex in mu.
    All {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Fixed set partitions under R_as, with factorization when --n is given.
    Lemmas {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sylow subgroup of the brute-forced normalizer of Q_s.
    Normalizer {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: usize,
    },
    /// Orthogonality and degree sum of the character table of S_n.
    Characters {
        #[arg(long)]
        n: usize,
        /// Random pairs to check instead of all pairs.
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Plethysm values against enumerated fixed set partitions.
    FoulkesOracle {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum ChartabAction {
    Build {
        #[arg(long)]
        n: usize,
    },
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SPOT_PAIRS)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command, &config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn load_config(g: &Global) -> Result<Config, String> {
    let file = match &g.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let env = std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let flags = Overrides {
        cache_dir: g.cache_dir.clone(),
        read_only_cache: g.read_only_cache,
        enumeration_cap: g.enumeration_cap,
        group_cap: g.group_cap,
        max_degree: g.max_degree,
        json: g.json,
    };
    Config::resolve(file, env, flags)
}

fn emit(config: &Config, value: serde_json::Value, text: impl FnOnce() -> String) {
    if config.json() {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn status(passed: bool) -> u8 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn table(n: usize, config: &Config) -> Result<CharacterTable, Error> {
    eprintln!("character table of S_{n}: loading");
    let (table, outcome) = config.cache().load_or_compute(n, config.max_degree)?;
    match outcome {
        CacheOutcome::Loaded => eprintln!("character table of S_{n}: read from cache"),
        CacheOutcome::Computed => eprintln!("character table of S_{n}: computed"),
        CacheOutcome::Recomputed { reason } => {
            eprintln!("character table of S_{n}: cache file was corrupt ({reason}); recomputed")
        }
        CacheOutcome::Uncached => eprintln!("character table of S_{n}: computed (no cache)"),
    }
    Ok(table)
}

fn foulkes(a: usize, n: usize, config: &Config) -> Result<FoulkesCharacter, Error> {
    eprintln!("plethysm h_{n}[h_{a}]: expanding");
    FoulkesCharacter::new(a, n, config.max_degree)
}

fn run(command: Command, config: &Config) -> Result<u8, Error> {
    match command {
        Command::Core { lambda, p } => {
            if p < 2 {
                return Err(Error::OutOfRange(format!("p = {p} must be at least 2")));
            }
            let label = block_label(&lambda, p);
            emit(
                config,
                json!({ "lambda": lambda, "p": p, "core": label.core, "weight": label.weight, "block": label }),
                || format!("lambda  {lambda}\ncore    {}\nweight  {}\nblock   {label}\n", label.core, label.weight),
            );
            Ok(EXIT_OK)
        }
        Command::Foulkes { mode } => run_foulkes(mode, config),
        Command::Bounds {
            a,
            n,
            p,
            lambda,
            include_outside,
        } => {
            if lambda.size() != a * n {
                return Err(Error::SizeMismatch {
                    left: lambda.size(),
                    right: a * n,
                });
            }
            let phi = foulkes(a, n, config)?;
            let table = table(a * n, config)?;
            eprintln!("multiplicities: computing");
            let data = FoulkesData::new(&phi, &table)?;
            let report = ttt1_report(&data, p, &lambda, include_outside)?;
            emit(config, report.to_json(), || report.to_text());
            Ok(status(report.preconditions.all() && report.discrepancies.is_empty()))
        }
        Command::Verify { suite } => run_verify(suite, config),
        Command::Chartab { action } => run_chartab(action, config),
    }
}

fn run_foulkes(mode: FoulkesMode, config: &Config) -> Result<u8, Error> {
    match mode {
        FoulkesMode::Mult { a, n, mu } => {
            let phi = foulkes(a, n, config)?;
            if mu.size() != a * n {
                return Err(Error::SizeMismatch {
                    left: mu.size(),
                    right: a * n,
                });
            }
            let m = phi.multiplicity(&table(a * n, config)?, &mu)?;
            emit(config, json!({ "a": a, "n": n, "mu": mu, "multiplicity": m }), || format!("{m}\n"));
        }
        FoulkesMode::Value { a, n, class } => {
            let v = phi_value(a, n, &class, config)?;
            emit(config, json!({ "a": a, "n": n, "class": class, "value": v }), || format!("{v}\n"));
        }
        FoulkesMode::All { a, n } => {
            let phi = foulkes(a, n, config)?;
            let ms = phi.multiplicities(&table(a * n, config)?)?;
            let rows: Vec<_> = ms.iter().map(|(mu, m)| json!({ "mu": mu, "multiplicity": m })).collect();
            emit(config, json!({ "a": a, "n": n, "multiplicities": rows }), || {
                ms.iter().map(|(mu, m)| format!("{mu}\t{m}\n")).collect()
            });
        }
    }
    Ok(EXIT_OK)
}

fn phi_value(a: usize, n: usize, class: &Partition, config: &Config) -> Result<String, Error> {
    Ok(foulkes(a, n, config)?.value(class)?.to_string())
}

fn run_verify(suite: Suite, config: &Config) -> Result<u8, Error> {
    match suite {
        Suite::Lemmas { a, s, p, n } => {
            eprintln!("lemmas for a={a} s={s} p={p}: enumerating");
            let report = verify_lemmas(a, s, p, n, config.enumeration_cap)?;
            emit(config, serde_json::to_value(&report).expect("serializable"), || {
                let mut out = format!("fixed set partitions: {}\n", report.fixed_count);
                for c in &report.checks {
                    out += &format!("{:<4}  {:<26}  {}\n", pass_word(c.passed), c.name, c.detail);
                }
                out
            });
            Ok(status(report.passed()))
        }
        Suite::Normalizer { a, s, p } => {
            eprintln!("normalizer of Q_{s} in S_{}: sweeping", a * s * p);
            let report = check_normalizer(a, s, p, config.group_cap)?;
            emit(config, serde_json::to_value(&report).expect("serializable"), || {
                format!(
                    "{}  |N| = {}  |Sylow_{p}| = {}  |<D, Q>| = {}\n",
                    pass_word(report.passed),
                    report.normalizer_order,
                    report.sylow_order.map_or("none".to_string(), |x| x.to_string()),
                    report.target_order
                )
            });
            Ok(status(report.passed))
        }
        Suite::Characters { n, pairs, seed } => {
            let table = table(n, config)?;
            let pairs = pairs.map(|k| seeded_pairs(table.partitions().len(), k, seed));
            character_report(&table, pairs, config)
        }
        Suite::FoulkesOracle { a, n } => {
            let phi = foulkes(a, n, config)?;
            let table = table(a * n, config)?;
            eprintln!("set partitions of type ({a}^{n}): enumerating");
            let report = check_foulkes_oracle(&phi, &table, config.enumeration_cap)?;
            emit(config, serde_json::to_value(&report).expect("serializable"), || {
                let mut out = String::new();
                for r in &report.rows {
                    let ok = r.plethysm == r.enumerated;
                    out += &format!("{:<4}  {:<16}  {:>10}  {:>10}\n", pass_word(ok), r.class, r.plethysm, r.enumerated);
                }
                out += &format!(
                    "{:<4}  sum m deg = {} (orbit size {})\n",
                    pass_word(report.degree_sum_ok),
                    report.degree_sum,
                    report.orbit_size
                );
                out
            });
            Ok(status(report.passed()))
        }
    }
}

fn character_report(table: &CharacterTable, pairs: Option<Vec<(usize, usize)>>, config: &Config) -> Result<u8, Error> {
    let report = check_characters(table, pairs);
    emit(config, serde_json::to_value(&report).expect("serializable"), || {
        let mut out = format!(
            "{}  orthogonality on {} pairs of {} classes\n",
            pass_word(report.failed_pair.is_none()),
            report.pairs_checked,
            report.classes
        );
        if let Some((x, y)) = &report.failed_pair {
            out += &format!("      first failure: rows {x} and {y}\n");
        }
        out += &format!("{}  sum of squared degrees = {}!\n", pass_word(report.degree_sum_ok), report.n);
        out
    });
    Ok(status(report.passed()))
}

fn run_chartab(action: ChartabAction, config: &Config) -> Result<u8, Error> {
    match action {
        ChartabAction::Build { n } => {
            eprintln!("character table of S_{n}: computing");
            let table = CharacterTable::compute(n, config.max_degree)?;
            let path = TableCache::new(&config.cache_dir).store(&table)?.expect("cache dir set");
            let k = table.partitions().len();
            emit(config, json!({ "n": n, "path": path, "rows": k, "columns": k }), || {
                format!("{}  {k}x{k}\n", path.display())
            });
            Ok(EXIT_OK)
        }
        ChartabAction::Check { n, pairs, seed } => {
            let cache = TableCache::read_only(&config.cache_dir);
            let path = cache.path_for(n).expect("cache dir set");
            let Some(table) = cache.load(n)? else {
                eprintln!("error: no cached table at {}", path.display());
                return Ok(EXIT_FAILED);
            };
            let k = table.partitions().len();
            let pairs = if n <= 7 { None } else { Some(seeded_pairs(k, pairs, seed)) };
            character_report(&table, pairs, config)
        }
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
