//! Command-line front end: argument parsing, text/JSON/DOT rendering, a
//! content-addressed cache for enumerated crystals, and a `key = value`
//! configuration file for default Cartan type and rank.
//!
//! Exit status: 0 on success, 1 when a verification fails or a computation
//! errors, 2 on usage errors (bad flags, unknown types, malformed input).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coordring::{self, CoordRing, Sides};
use crate::crystal::{Binf, LusztigDatum};
use crate::measures::Measures;
use crate::preproj::PPModule;
use crate::repcheck::oracle;
use crate::rootdata::{parse_int_list, parse_word, CartanData, Weight};
use crate::symbolic::MultiPoly;
use crate::{Error, Result};

/// Environment variable overriding the cache root.
pub const CACHE_ENV: &str = "BIPERFECT_CACHE_DIR";
/// Environment variable naming a configuration file.
pub const CONFIG_ENV: &str = "BIPERFECT_CONFIG";
/// Bumping this invalidates every cache entry.
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENTRY_SCHEMA: &str = "biperfect.cache-entry.v1";

// ---------------------------------------------------------------- cache

/// Content-addressed store of rendered results. Entries are JSON files
/// named by the SHA-256 of their key; each records the SHA-256 of its
/// payload, which is re-checked on every read.
#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
    version: u32,
    lock_timeout: Duration,
}

/// Whether a value came from the cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into(), version: CACHE_VERSION, lock_timeout: Duration::from_secs(10) }
    }

    /// Same root, different schema version.
    pub fn with_version(mut self, version: u32) -> Self {
        self.version = version;
        self
    }

    pub fn with_lock_timeout(mut self, timeout: Duration) -> Self {
        self.lock_timeout = timeout;
        self
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn key_text(&self, kind: &str, cartan: &str, params: &str) -> String {
        format!("v{}|{cartan}|{kind}|{params}", self.version)
    }

    /// Path of the entry for a key.
    pub fn entry_path(&self, kind: &str, cartan: &str, params: &str) -> PathBuf {
        let key = self.key_text(kind, cartan, params);
        self.root.join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    /// The stored payload, or `None` on a miss. Entries whose key or
    /// payload hash does not match are deleted.
    pub fn get(&self, kind: &str, cartan: &str, params: &str) -> Result<Option<String>> {
        let path = self.entry_path(kind, cartan, params);
        let Ok(text) = fs::read_to_string(&path) else { return Ok(None) };
        let valid = serde_json::from_str::<Value>(&text).ok().and_then(|v| {
            let payload = v.get("payload")?.as_str()?.to_string();
            let ok = v.get("key")?.as_str()? == self.key_text(kind, cartan, params)
                && v.get("sha256")?.as_str()? == sha256_hex(payload.as_bytes());
            ok.then_some(payload)
        });
        if valid.is_none() {
            let _ = fs::remove_file(&path);
        }
        Ok(valid)
    }

    /// Store a payload under the single-writer lock.
    pub fn put(&self, kind: &str, cartan: &str, params: &str, payload: &str) -> Result<()> {
        fs::create_dir_all(&self.root)?;
        let path = self.entry_path(kind, cartan, params);
        let _lock = self.lock(&path)?;
        let entry = json!({
            "schema": CACHE_ENTRY_SCHEMA,
            "key": self.key_text(kind, cartan, params),
            "sha256": sha256_hex(payload.as_bytes()),
            "payload": payload,
        });
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Cached payload or a freshly computed (and stored) one.
    pub fn get_or_compute(
        &self,
        kind: &str,
        cartan: &str,
        params: &str,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<(String, CacheStatus)> {
        if let Some(p) = self.get(kind, cartan, params)? {
            return Ok((p, CacheStatus::Hit));
        }
        let payload = compute()?;
        self.put(kind, cartan, params, &payload)?;
        Ok((payload, CacheStatus::Miss))
    }

    fn lock(&self, entry: &Path) -> Result<LockGuard> {
        let path = entry.with_extension("lock");
        let start = Instant::now();
        loop {
            match fs::File::create_new(&path) {
                Ok(_) => return Ok(LockGuard { path }),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if start.elapsed() >= self.lock_timeout {
                        return Err(Error::LockTimeout(path.display().to_string()));
                    }
                    std::thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
}

struct LockGuard {
    path: PathBuf,
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

// ---------------------------------------------------------------- config

/// Defaults read from a `key = value` file (`#` starts a comment).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cartan_type: String,
    pub rank: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { cartan_type: "A".to_string(), rank: 2, cache_dir: None }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
            let v = v.trim();
            match k.trim() {
                "type" => c.cartan_type = v.to_string(),
                "rank" => c.rank = v.parse().map_err(|_| Error::Parse(format!("config line {}: bad rank {v}", n + 1)))?,
                "cache_dir" => c.cache_dir = Some(PathBuf::from(v)),
                other => return Err(Error::Parse(format!("config line {}: unknown key {other}", n + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

// ---------------------------------------------------------------- args

#[derive(Parser, Debug)]
#[command(name = "biperfect", version, about = "Crystals, MV polytopes, biperfect bases, shuffle measures and preprojective modules")]
struct Cli {
    /// Cartan type letter (default from config, else A).
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,
    /// Rank (default from config, else 2).
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Configuration file (key = value).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache root (overrides the environment and config).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate B(∞) to a given depth.
    Binf {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Include ẽ_i* edges.
        #[arg(long)]
        star: bool,
    },
    /// Elements of B(λ) inside B(∞).
    Blambda {
        #[arg(long)]
        lambda: String,
    },
    /// Weight and tensor product multiplicities from the crystal.
    Mult {
        #[command(subcommand)]
        kind: MultKind,
    },
    /// MV polytope of a Lusztig datum.
    Mvpolytope {
        #[arg(long)]
        word: String,
        #[arg(long)]
        data: String,
    },
    /// Biperfect bases of C[N].
    Cn {
        #[command(subcommand)]
        kind: CnKind,
    },
    /// Shuffle measures of a basis element or polynomial.
    Measure {
        #[command(subcommand)]
        kind: MeasureKind,
    },
    /// Preprojective algebra modules.
    Ppa {
        #[command(subcommand)]
        kind: PpaKind,
    },
    /// Representation-theory oracles.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Subcommand, Debug)]
enum MultKind {
    /// dim V(λ)_μ.
    Weight {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
    },
    /// c^ν_{λμ}; the full table when --nu is omitted.
    Tensor {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: Option<String>,
    },
}

#[derive(Args, Debug)]
struct GroupArg {
    /// sl2 or sl3 (sl4 where supported).
    #[arg(long, default_value = "sl3")]
    group: String,
}

#[derive(Subcommand, Debug)]
enum CnKind {
    /// Verify the explicit family on the weight box of the given size.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 6)]
        maxdeg: i64,
    },
    /// Constraint search for all biperfect families.
    Unique {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 4)]
        maxheight: i64,
        /// Impose left perfectness only.
        #[arg(long)]
        left_only: bool,
    },
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Basis key `x:a,b,c` or `y:a,b,c` for x^a z^b (xy−z)^c (sl2: `x:a`).
    #[arg(long, conflicts_with = "poly")]
    element: Option<String>,
    /// Polynomial in x, y, z (or x12, x13, …).
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Subcommand, Debug)]
enum MeasureKind {
    /// D̄(f).
    Dbar(ElementArgs),
    /// FT(D(f)).
    Ft(ElementArgs),
    /// Check FT(D(f)) against the pullback along t^{-1} n_x t n_x^{-1}.
    Check(ElementArgs),
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Module file (JSON).
    #[arg(long)]
    module: PathBuf,
}

#[derive(Subcommand, Debug)]
enum PpaKind {
    /// ξ_M.
    Xi(ModuleArgs),
    /// Submodules, ε, ε* and the Harder–Narasimhan polytope.
    Hn(ModuleArgs),
    /// χ of the composition-series variety of a given type.
    Chi {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleKind {
    /// Weyl character of V(λ).
    Character {
        #[arg(long)]
        lambda: String,
    },
}

// ---------------------------------------------------------------- driver

/// Rendered result and whether verification passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownCartanType(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotReduced(_)
            | Error::NotLongestWord(_)
            | Error::NotSimplyLaced(_)
            | Error::RankTooLarge { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotDominant(_)
            | Error::Parse(_)
            | Error::Json(_)
    )
}

/// Run the command line `args` (including the program name), writing the
/// artifact to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if !o.text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            if o.passed {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome> {
    let config_path = cli.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let config = match config_path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    let cache_root = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .or(config.cache_dir.clone());
    let cache = if cli.no_cache { None } else { cache_root.map(Cache::new) };
    let cartan_type = cli.cartan_type.clone().unwrap_or(config.cartan_type.clone());
    let rank = cli.rank.unwrap_or(config.rank);
    let cartan = || CartanData::parse(&format!("{cartan_type}{rank}"));
    let json_out = cli.format == Format::Json;
    if cli.format == Format::Dot && !matches!(cli.command, Command::Binf { .. } | Command::Blambda { .. }) {
        return Err(Error::Parse("--format dot applies to binf and blambda only".to_string()));
    }

    match &cli.command {
        Command::Binf { depth, star } => {
            let c = cartan()?;
            let params = format!("depth={depth};star={star};format={:?}", cli.format);
            let compute = || -> Result<String> {
                let g = Binf::new(&c)?.enumerate(*depth)?;
                Ok(match cli.format {
                    Format::Dot => g.to_dot(*star),
                    Format::Json => pretty(&g.to_json()),
                    Format::Text => {
                        let sizes: Vec<String> = g.level_sizes().iter().map(usize::to_string).collect();
                        let mut s = format!("B(infinity) {} depth {depth}: levels {}\n", c.name(), sizes.join(","));
                        for n in &g.nodes {
                            s.push_str(&format!(
                                "{} nu={} eps={:?} eps*={:?}\n",
                                n.element, n.nu, n.epsilon, n.epsilon_star
                            ));
                        }
                        s
                    }
                })
            };
            cached(cache.as_ref(), "binf", c.name(), &params, compute, err)
        }
        Command::Blambda { lambda } => {
            let c = cartan()?;
            let lam = parse_weight(&c, lambda)?;
            let params = format!("lambda={:?};format={:?}", lam.0, cli.format);
            let compute = || -> Result<String> { blambda(&c, &lam, cli.format) };
            cached(cache.as_ref(), "blambda", c.name(), &params, compute, err)
        }
        Command::Mult { kind } => mult(&cartan()?, kind, json_out),
        Command::Mvpolytope { word, data } => mvpolytope(&cartan()?, word, data, json_out),
        Command::Cn { kind } => cn(kind, json_out),
        Command::Measure { kind } => measure(kind, json_out),
        Command::Ppa { kind } => ppa(kind, json_out),
        Command::Oracle { kind: OracleKind::Character { lambda } } => {
            let c = cartan()?;
            let lam = parse_weight(&c, lambda)?;
            let ch = oracle::character(&c, &lam);
            if json_out {
                let terms: Vec<Value> = ch.iter().map(|(w, m)| json!({"weight": w.0, "multiplicity": m})).collect();
                Ok(Outcome::ok(pretty(&json!({
                    "schema": "biperfect.character.v1",
                    "cartan": c.name(),
                    "lambda": lam.0,
                    "dimension": oracle::weyl_dimension(&c, &lam),
                    "terms": terms,
                }))))
            } else {
                let mut s = format!("dim V({:?}) = {}\n", lam.0, oracle::weyl_dimension(&c, &lam));
                for (w, m) in &ch {
                    s.push_str(&format!("{:?} {m}\n", w.0));
                }
                Ok(Outcome::ok(s))
            }
        }
    }
}

fn cached(
    cache: Option<&Cache>,
    kind: &str,
    cartan: &str,
    params: &str,
    compute: impl FnOnce() -> Result<String>,
    err: &mut dyn Write,
) -> Result<Outcome> {
    match cache {
        None => Ok(Outcome::ok(compute()?)),
        Some(c) => {
            let (text, status) = c.get_or_compute(kind, cartan, params, compute)?;
            let _ = writeln!(err, "cache {}", if status == CacheStatus::Hit { "hit" } else { "miss" });
            Ok(Outcome::ok(text))
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_weight(c: &CartanData, s: &str) -> Result<Weight> {
    let v = parse_int_list(s)?;
    if v.len() != c.rank() {
        return Err(Error::DimensionMismatch { expected: c.rank(), got: v.len() });
    }
    Ok(Weight(v))
}

fn blambda(c: &CartanData, lam: &Weight, format: Format) -> Result<String> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.0.clone()));
    }
    let binf = Binf::new(c)?;
    // B(λ) sits in heights up to that of λ − w0 λ
    let low = c.apply_word_to_weight(&c.longest_word().0, lam);
    let span = c.weight_to_root(&lam.sub(&low)).ok_or(Error::NotWeightBasis("λ − w0λ".to_string()))?;
    let graph = binf.enumerate(span.height() as usize)?;
    let members = binf.b_lambda(&graph, lam)?;
    Ok(match format {
        Format::Json => {
            let nodes: Vec<Value> = members
                .iter()
                .map(|&k| json!({"datum": graph.nodes[k].element.0, "nu": graph.nodes[k].nu.0}))
                .collect();
            pretty(&json!({
                "schema": "biperfect.blambda.v1",
                "cartan": c.name(),
                "lambda": lam.0,
                "size": members.len(),
                "elements": nodes,
            }))
        }
        Format::Dot => {
            let mut s = "digraph blambda {\n".to_string();
            let keep: std::collections::BTreeSet<usize> = members.iter().copied().collect();
            let id = |k: usize| {
                let d: Vec<String> = graph.nodes[k].element.0.iter().map(u64::to_string).collect();
                format!("b_{}", d.join("_"))
            };
            for &k in &members {
                s.push_str(&format!("  {} [label=\"{}\"];\n", id(k), graph.nodes[k].element));
            }
            for e in graph.edges.iter().filter(|e| !e.star && keep.contains(&e.from) && keep.contains(&e.to)) {
                s.push_str(&format!("  {} -> {} [label=\"e{}\"];\n", id(e.from), id(e.to), e.label + 1));
            }
            s.push_str("}\n");
            s
        }
        Format::Text => {
            let mut s = format!("B({:?}) in {}: {} elements\n", lam.0, c.name(), members.len());
            for &k in &members {
                s.push_str(&format!("{} nu={}\n", graph.nodes[k].element, graph.nodes[k].nu));
            }
            s
        }
    })
}

fn mult(c: &CartanData, kind: &MultKind, json_out: bool) -> Result<Outcome> {
    let binf = Binf::new(c)?;
    match kind {
        MultKind::Weight { lambda, mu } => {
            let (lam, m) = (parse_weight(c, lambda)?, parse_weight(c, mu)?);
            let crystal = binf.weight_multiplicity(&lam, &m)?;
            let check = oracle::weight_multiplicity(c, &lam, &m);
            let text = if json_out {
                pretty(&json!({"schema": "biperfect.mult-weight.v1", "cartan": c.name(), "lambda": lam.0, "mu": m.0, "multiplicity": crystal, "oracle": check}))
            } else {
                format!("dim V({:?})_{:?} = {crystal} (oracle {check})\n", lam.0, m.0)
            };
            Ok(Outcome { text, passed: crystal == check })
        }
        MultKind::Tensor { lambda, mu, nu } => {
            let (lam, m) = (parse_weight(c, lambda)?, parse_weight(c, mu)?);
            let targets: Vec<Weight> = match nu {
                Some(n) => vec![parse_weight(c, n)?],
                None => oracle::tensor_decomposition(c, &lam, &m).into_keys().collect(),
            };
            let mut rows = Vec::new();
            let mut passed = true;
            for n in &targets {
                let crystal = binf.tensor_multiplicity(&lam, &m, n)?;
                let check = oracle::tensor_decomposition(c, &lam, &m).get(n).copied().unwrap_or(0);
                passed &= crystal == check;
                rows.push((n.clone(), crystal, check));
            }
            let text = if json_out {
                let table: Vec<Value> = rows.iter().map(|(n, a, b)| json!({"nu": n.0, "multiplicity": a, "oracle": b})).collect();
                pretty(&json!({"schema": "biperfect.mult-tensor.v1", "cartan": c.name(), "lambda": lam.0, "mu": m.0, "table": table}))
            } else {
                rows.iter().map(|(n, a, b)| format!("c^{:?}_{:?},{:?} = {a} (oracle {b})\n", n.0, lam.0, m.0)).collect()
            };
            Ok(Outcome { text, passed })
        }
    }
}

fn mvpolytope(c: &CartanData, word: &str, data: &str, json_out: bool) -> Result<Outcome> {
    let binf = Binf::new(c)?;
    let w = parse_word(word)?;
    let coords: Vec<u64> = parse_int_list(data)?
        .into_iter()
        .map(|x| u64::try_from(x).map_err(|_| Error::Parse(format!("negative Lusztig coordinate {x}"))))
        .collect::<Result<_>>()?;
    let b = binf.from_datum(&LusztigDatum { word: w, coords })?;
    let mv = binf.mv_polytope(&b)?;
    let data_all: Vec<LusztigDatum> = binf.words().map(|wd| binf.datum(&b, wd)).collect::<Result<_>>()?;
    let text = if json_out {
        let vs: Vec<Value> = mv.polytope.vertices().iter().map(|v| json!(v.0)).collect();
        let ds: Vec<Value> = data_all.iter().map(|d| json!({"word": d.word.one_based(), "datum": d.coords})).collect();
        pretty(&json!({"schema": "biperfect.mv-polytope.v1", "cartan": c.name(), "nu": mv.nu.0, "vertices": vs, "data": ds}))
    } else {
        let mut s = format!("weight {}\nvertices {}\n", mv.nu, mv.polytope);
        for d in &data_all {
            s.push_str(&format!("datum {d}\n"));
        }
        s
    };
    Ok(Outcome::ok(text))
}

fn ring_for(group: &str) -> Result<CoordRing> {
    match group.to_ascii_lowercase().as_str() {
        "sl2" => CoordRing::new(2),
        "sl3" => CoordRing::new(3),
        "sl4" => CoordRing::new(4),
        other => Err(Error::Parse(format!("unknown group {other} (expected sl2, sl3 or sl4)"))),
    }
}

fn cn(kind: &CnKind, json_out: bool) -> Result<Outcome> {
    match kind {
        CnKind::Verify { group, maxdeg } => {
            let family = match group.group.to_ascii_lowercase().as_str() {
                "sl2" => coordring::sl2_basis(*maxdeg),
                "sl3" => coordring::sl3_basis(*maxdeg),
                other => return Err(Error::Parse(format!("no explicit family for {other}"))),
            };
            let report = coordring::verify_biperfect(&family)?;
            let text = if json_out {
                pretty(&family.to_json(Some(&report)))
            } else {
                let mut s = format!(
                    "{} elements on {} weights: {}\n",
                    family.len(),
                    report.weights_checked,
                    if report.passed() { "biperfect" } else { "FAILED" }
                );
                for f in &report.failures {
                    s.push_str(&format!("  {f:?}\n"));
                }
                s
            };
            Ok(Outcome { text, passed: report.passed() })
        }
        CnKind::Unique { group, maxheight, left_only } => {
            let ring = ring_for(&group.group)?;
            let sides = if *left_only { Sides::LeftOnly } else { Sides::Both };
            let u = coordring::uniqueness_search(&ring, *maxheight, sides)?;
            let text = if json_out {
                let sols: Vec<Value> = u
                    .solutions
                    .iter()
                    .map(|s| {
                        json!({
                            "element": s.element.0,
                            "weight": s.weight.0,
                            "freedom": s.freedom,
                            "poly": s.poly.as_ref().map(|p| ring.to_text(p)),
                        })
                    })
                    .collect();
                pretty(&json!({"schema": "biperfect.uniqueness.v1", "unique": u.unique(), "consistent": u.consistent(), "solutions": sols}))
            } else {
                let mut s = format!(
                    "{} elements: {}\n",
                    u.solutions.len(),
                    if u.unique() { "unique" } else if u.consistent() { "not unique" } else { "inconsistent" }
                );
                for sol in &u.solutions {
                    let p = sol.poly.as_ref().map_or("-".to_string(), |p| ring.to_text(p));
                    s.push_str(&format!("{} freedom={} {p}\n", sol.element, sol.freedom));
                }
                s
            };
            Ok(Outcome { text, passed: u.consistent() })
        }
    }
}

/// Polynomial named by `--element` or `--poly`.
fn element_poly(ring: &CoordRing, args: &ElementArgs) -> Result<MultiPoly> {
    if let Some(p) = &args.poly {
        return ring.parse(p);
    }
    let key = args.element.as_deref().ok_or_else(|| Error::Parse("give --element or --poly".to_string()))?;
    let (head, exps) = key.split_once(':').ok_or_else(|| Error::Parse(format!("bad basis key {key}")))?;
    let e: Vec<u32> = parse_int_list(exps)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| Error::Parse(format!("negative exponent in {key}"))))
        .collect::<Result<_>>()?;
    match (ring.n(), head, e.as_slice()) {
        (2, "x", [a]) => Ok(ring.var(0, 1).pow(*a)),
        (3, "x" | "y", [a, b, c]) => {
            let lead = if head == "x" { ring.var(0, 1) } else { ring.var(1, 2) };
            let w = &(&ring.var(0, 1) * &ring.var(1, 2)) - &ring.var(0, 2);
            Ok(&(&lead.pow(*a) * &ring.var(0, 2).pow(*b)) * &w.pow(*c))
        }
        _ => Err(Error::Parse(format!("bad basis key {key} for SL{}", ring.n()))),
    }
}

fn measure(kind: &MeasureKind, json_out: bool) -> Result<Outcome> {
    let args = match kind {
        MeasureKind::Dbar(a) | MeasureKind::Ft(a) | MeasureKind::Check(a) => a,
    };
    let ring = ring_for(&args.group.group)?;
    let f = element_poly(&ring, args)?;
    let m = Measures::new(&ring);
    let names: Vec<String> = m.chart().variable_names();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let poly_text = ring.to_text(&f);
    match kind {
        MeasureKind::Dbar(_) => {
            let d = m.d_bar(&f).to_text(&refs);
            let text = if json_out {
                pretty(&json!({"schema": "biperfect.dbar.v1", "poly": poly_text, "dbar": d}))
            } else {
                format!("Dbar({poly_text}) = {d}\n")
            };
            Ok(Outcome::ok(text))
        }
        MeasureKind::Ft(_) => {
            let s = m.ft_d(&f).to_text();
            let text = if json_out {
                pretty(&json!({"schema": "biperfect.ft.v1", "poly": poly_text, "ft": s}))
            } else {
                format!("FT(D({poly_text})) = {s}\n")
            };
            Ok(Outcome::ok(text))
        }
        MeasureKind::Check(_) => {
            let r = m.morphism_check(&f);
            let (a, b, c) = (r.transform_matches(), r.zero_coefficient_matches(), r.d_bar_is_nx_inverse_value());
            let text = if json_out {
                pretty(&json!({
                    "schema": "biperfect.measure-check.v1",
                    "poly": poly_text,
                    "transform_equals_pullback": a,
                    "zero_coefficient_equals_dbar": b,
                    "dbar_equals_value_at_nx_inverse": c,
                }))
            } else {
                format!(
                    "FT(D(f)) = f(t^-1 n_x t n_x^-1): {a}\n[e^0] FT(D(f)) = Dbar(f): {b}\nDbar(f) = f(n_x^-1): {c}\n"
                )
            };
            Ok(Outcome { text, passed: a && b && c })
        }
    }
}

fn ppa(kind: &PpaKind, json_out: bool) -> Result<Outcome> {
    let path = match kind {
        PpaKind::Xi(m) | PpaKind::Hn(m) | PpaKind::Chi { module: m, .. } => &m.module,
    };
    let module = PPModule::from_json(&fs::read_to_string(path)?)?;
    module.require_relation()?;
    match kind {
        PpaKind::Xi(_) => {
            let functional = module.xi_functional()?;
            let poly = match module.xi() {
                Ok(p) => Some(CoordRing::new(module.cartan().rank() + 1)?.to_text(&p)),
                Err(Error::NotSimplyLaced(_)) | Err(Error::RankTooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
            let text = if json_out {
                let pairs: Vec<Value> = functional
                    .iter()
                    .map(|(s, c)| json!({"seq": s.iter().map(|i| i + 1).collect::<Vec<_>>(), "chi": c}))
                    .collect();
                pretty(&json!({"schema": "biperfect.xi.v1", "poly": poly, "pairings": pairs}))
            } else {
                let mut s = String::new();
                if let Some(p) = &poly {
                    s.push_str(&format!("xi = {p}\n"));
                }
                for (seq, c) in &functional {
                    let one: Vec<String> = seq.iter().map(|i| (i + 1).to_string()).collect();
                    s.push_str(&format!("chi({}) = {c}\n", one.join(",")));
                }
                s
            };
            Ok(Outcome::ok(text))
        }
        PpaKind::Hn(_) => {
            let subs = module.submodule_dimvectors()?;
            let hn = module.hn_polytope()?;
            let text = if json_out {
                pretty(&json!({
                    "schema": "biperfect.hn.v1",
                    "submodule_dimvectors": subs.iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
                    "vertices": hn.vertices().iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
                    "epsilon": module.epsilon(),
                    "epsilon_star": module.epsilon_star(),
                }))
            } else {
                let list: Vec<String> = subs.iter().map(ToString::to_string).collect();
                format!(
                    "submodules {{{}}}\nHN polytope {hn}\neps {:?}\neps* {:?}\n",
                    list.join(", "),
                    module.epsilon(),
                    module.epsilon_star()
                )
            };
            Ok(Outcome::ok(text))
        }
        PpaKind::Chi { seq, .. } => {
            let s: Vec<usize> = parse_word(seq)?.0;
            let report = module.chi_flag_report(&s, 0)?;
            let direct = module.chi_flag_direct(&s)?;
            let passed = direct.is_none_or(|d| d as i64 == report.chi);
            let text = if json_out {
                pretty(&json!({
                    "schema": "biperfect.chi.v1",
                    "chi": report.chi,
                    "primes": report.primes,
                    "counts": report.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "polynomial": report.polynomial.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "direct": direct,
                }))
            } else {
                let poly: Vec<String> = report.polynomial.iter().map(ToString::to_string).collect();
                format!(
                    "chi = {}\ncounting polynomial (ascending) [{}]\ndirect enumeration {}\n",
                    report.chi,
                    poly.join(", "),
                    direct.map_or("n/a".to_string(), |d| d.to_string())
                )
            };
            Ok(Outcome { text, passed })
        }
    }
}
