//! Command-line driver: configuration, check suites and report emission.

pub mod campaigns;
pub mod config;
pub mod report;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

pub use campaigns::{Campaign, Runner};
pub use config::{Config, ConfigError};
pub use report::{CheckRecord, Outcome, Report};

/// Exit status for a configuration or usage error.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "depthzero", version, about = "Exact-arithmetic checks for depth-zero character identities")]
pub struct Cli {
    #[arg(value_enum)]
    pub campaign: Campaign,
    /// Residue-field sizes: a list `3,5,7` or a range `3-25`.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long = "q-max")]
    pub q_max: Option<String>,
    /// 1, 2 or both.
    #[arg(long)]
    pub kind: Option<String>,
    /// plus, minus or both.
    #[arg(long = "eta-branch")]
    pub eta_branch: Option<String>,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<String>,
    /// Comma-separated subset of json, csv, md.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub jobs: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<String>,
}

impl Cli {
    /// Defaults, then the config file, then the environment, then flags.
    pub fn config(&self) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        if let Some(p) = &self.config {
            cfg.apply_file(p)?;
        }
        if let Some(dir) = std::env::var_os(depthzero::ffield::CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
            cfg.cache_dir = Some(PathBuf::from(dir));
        }
        let flags = [
            ("q", &self.q),
            ("q_max", &self.q_max),
            ("kind", &self.kind),
            ("eta_branch", &self.eta_branch),
            ("out", &self.out),
            ("format", &self.format),
            ("jobs", &self.jobs),
            ("seed", &self.seed),
            ("cache_dir", &self.cache_dir),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.apply(k, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Run every check of `campaign` under `cfg` on a pool of `cfg.jobs` workers.
pub fn execute(campaign: Campaign, cfg: &Config) -> Report {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    pool.install(|| {
        let mut r = Runner::new(cfg);
        r.run(campaign);
        r.report
    })
}

/// Parse arguments, run, write reports; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    let cfg = match cli.config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let report = execute(cli.campaign, &cfg);
    for c in &report.checks {
        println!("{:<8} {}", c.outcome.label(), c.id);
    }
    match report::emit(&report, &cfg, &cfg.out, started) {
        Ok(paths) => {
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    }
    report.exit_code()
}
