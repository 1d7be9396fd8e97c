//! Command-line front end: configure (n, k, m, truncation, seed), build the
//! atlas, compute transition maps, and run the verification suites.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed (or a transition is
//! singular), 2 usage or configuration errors.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::{json, Value};

use zgrass_core::grading::Grading;
use zgrass_core::grassmannian::{transition, Atlas};
use zgrass_core::sample::{algebra_suite_table, verification_ttable};
use zgrass_core::supermatrix::{BlockDims, KIndex};
use zgrass_core::verify::{
    verify_action, verify_algebra, verify_cocycle, verify_transitivity, ActionOptions,
    CocycleMode, CocycleOptions,
};
use zgrass_core::Error;

#[derive(Parser)]
#[command(
    name = "zgrass",
    about = "Exact engine for Z2^n-graded grassmannian atlases: build charts, \
             compute transition maps, verify the gluing identities",
    version
)]
struct Cli {
    /// Number of Z2 factors in the degree group
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Block sizes k_0,...,k_q ordered by the degree chain, e.g. 1,2,1,1
    #[arg(long, global = true)]
    k: Option<String>,

    /// Block sizes m_0,...,m_q ordered by the degree chain, e.g. 2,2,2,2
    #[arg(long, global = true)]
    m: Option<String>,

    /// Truncation order of the series ring
    #[arg(long, global = true, default_value_t = 3)]
    trunc: u32,

    /// Master seed for all randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputKind::Text)]
    output: OutputKind,

    /// Evaluate reported bodies at a rational point, e.g. x1=3/2,x2=-1
    #[arg(long, global = true)]
    eval_at: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputKind {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the degree chain, beta dimensions, and the chart tables
    Atlas,
    /// Compute the transition map between two charts
    Transition(TransitionArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TransitionArgs {
    /// Source chart index, blocks joined by '|', e.g. "1|1,2|1|2"
    #[arg(long)]
    from: String,
    /// Target chart index
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,

    /// Cocycle sweep scope
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,

    /// Sample size for pair/triple/tuple sweeps (default: sweep everything
    /// when small, otherwise 10)
    #[arg(long)]
    samples: Option<usize>,

    /// GL points drawn per gluing tuple
    #[arg(long, default_value_t = 1)]
    gl_points: usize,

    /// Randomized checks per law in the algebra suite
    #[arg(long, default_value_t = 1000)]
    count: usize,

    /// Test hook: perturb one transition map so the cocycle suite must fail
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cocycle,
    Action,
    Transitivity,
    Algebra,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Pairs,
    Triples,
    All,
}

struct Config {
    grading: Arc<Grading>,
    k: Option<BlockDims>,
    m: Option<BlockDims>,
    trunc: u32,
    seed: u64,
    output: OutputKind,
    eval_at: Option<BTreeMap<String, BigRational>>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_dims(grading: &Grading, text: &str, what: &str) -> Result<BlockDims, String> {
    let sizes = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad {what} entry {s:?}"))
        })
        .collect::<Result<Vec<usize>, String>>()?;
    BlockDims::new(grading, sizes).map_err(|e| e.to_string())
}

fn parse_eval(text: &str) -> Result<BTreeMap<String, BigRational>, String> {
    let mut out = BTreeMap::new();
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("bad assignment {part:?}, expected var=rational"))?;
        let q: BigRational = value
            .trim()
            .parse()
            .map_err(|_| format!("bad rational {value:?}"))?;
        out.insert(name.trim().to_string(), q);
    }
    Ok(out)
}

fn build_config(cli: &Cli) -> Result<Config, String> {
    let n = cli.n.ok_or("--n is required")?;
    let grading = Grading::new(n).map_err(|e| e.to_string())?;
    let k = cli
        .k
        .as_deref()
        .map(|t| parse_dims(&grading, t, "k"))
        .transpose()?;
    let m = cli
        .m
        .as_deref()
        .map(|t| parse_dims(&grading, t, "m"))
        .transpose()?;
    if cli.trunc == 0 {
        return Err("--trunc must be at least 1".into());
    }
    let eval_at = cli.eval_at.as_deref().map(parse_eval).transpose()?;
    Ok(Config {
        grading,
        k,
        m,
        trunc: cli.trunc,
        seed: cli.seed,
        output: cli.output,
        eval_at,
    })
}

fn require_shape(cfg: &Config) -> Result<(BlockDims, BlockDims), String> {
    let k = cfg.k.clone().ok_or("--k is required for this command")?;
    let m = cfg.m.clone().ok_or("--m is required for this command")?;
    zgrass_core::grassmannian::check_shape(&cfg.grading, &k, &m).map_err(|e| e.to_string())?;
    Ok((k, m))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    match &cli.command {
        Command::Atlas => cmd_atlas(&cfg),
        Command::Transition(args) => cmd_transition(&cfg, args),
        Command::Verify(args) => cmd_verify(&cfg, args),
    }
}

fn degrees_json(cfg: &Config) -> Vec<Value> {
    cfg.grading.degrees().iter().map(|d| d.to_json()).collect()
}

fn chain_text(cfg: &Config) -> String {
    cfg.grading
        .degrees()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" < ")
}

fn cmd_atlas(cfg: &Config) -> ExitCode {
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), Value::from(cfg.grading.n()));
    obj.insert("q".into(), Value::from(cfg.grading.q()));
    obj.insert("degrees".into(), Value::Array(degrees_json(cfg)));

    let mut text = format!(
        "n = {}, q = {}\ndegree chain: {}\n",
        cfg.grading.n(),
        cfg.grading.q(),
        chain_text(cfg)
    );

    if cfg.k.is_some() || cfg.m.is_some() {
        let (k, m) = match require_shape(cfg) {
            Ok(km) => km,
            Err(e) => return usage_error(&e),
        };
        let atlas = match Atlas::build(&cfg.grading, &k, &m, cfg.trunc) {
            Ok(a) => a,
            Err(e) => return usage_error(&e.to_string()),
        };
        let beta = atlas.beta().expect("shape already validated");
        obj.insert("k".into(), k.to_json());
        obj.insert("m".into(), m.to_json());
        obj.insert("beta".into(), beta.to_json());
        obj.insert("chartCount".into(), Value::from(atlas.charts().len()));
        obj.insert(
            "charts".into(),
            Value::Array(atlas.charts().iter().map(|c| c.to_json()).collect()),
        );
        text.push_str(&format!(
            "k = {k}, m = {m}\nbeta = {beta} ({} generators per chart)\ncharts: {}\n",
            beta.total(),
            atlas.charts().len()
        ));
        for c in atlas.charts() {
            text.push_str(&format!(
                "chart {}: {}\n",
                c.index(),
                c.generator_names().join(", ")
            ));
        }
    }

    match cfg.output {
        OutputKind::Json => println!(
            "{}",
            serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
        ),
        OutputKind::Text => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn cmd_transition(cfg: &Config, args: &TransitionArgs) -> ExitCode {
    let (k, m) = match require_shape(cfg) {
        Ok(km) => km,
        Err(e) => return usage_error(&e),
    };
    let parse_idx = |text: &str| -> Result<KIndex, String> {
        let idx = KIndex::parse(text).map_err(|e| e.to_string())?;
        idx.validate(&k, &m).map_err(|e| e.to_string())?;
        Ok(idx)
    };
    let from = match parse_idx(&args.from) {
        Ok(i) => i,
        Err(e) => return usage_error(&format!("--from: {e}")),
    };
    let to = match parse_idx(&args.to) {
        Ok(i) => i,
        Err(e) => return usage_error(&format!("--to: {e}")),
    };
    let build =
        |idx: &KIndex| zgrass_core::grassmannian::build_chart(&cfg.grading, &k, &m, idx, cfg.trunc);
    let source = match build(&from) {
        Ok(c) => c,
        Err(e) => return usage_error(&e.to_string()),
    };
    let target = match build(&to) {
        Ok(c) => c,
        Err(e) => return usage_error(&e.to_string()),
    };
    let map = match transition(&target, &source) {
        Ok(t) => t,
        Err(Error::SingularBody) => {
            eprintln!("error: {}", Error::SingularBody);
            return ExitCode::from(1);
        }
        Err(e) => return usage_error(&e.to_string()),
    };

    let mut v = map.to_json();
    if let Some(point) = &cfg.eval_at {
        let evals = eval_images(&target, &map, point);
        v.as_object_mut()
            .expect("transition json is an object")
            .insert("eval".into(), evals);
    }
    match cfg.output {
        OutputKind::Json => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        OutputKind::Text => {
            println!("transition {} -> {}", map.source(), map.target());
            for (g, img) in target.table().gens().iter().zip(map.images()) {
                println!("  {} -> {}", g.name, img.display());
            }
            println!(
                "certificate: {}",
                map.certificate().display(source.table().central_names())
            );
        }
    }
    ExitCode::SUCCESS
}

fn eval_images(
    target: &zgrass_core::grassmannian::Chart,
    map: &zgrass_core::grassmannian::TransitionMap,
    point: &BTreeMap<String, BigRational>,
) -> Value {
    use num::Zero;
    let names = map.substitution().image_table().central_names();
    let vals: Vec<BigRational> = names
        .iter()
        .map(|n| point.get(n).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    let mut out = serde_json::Map::new();
    for (g, img) in target.table().gens().iter().zip(map.images()) {
        let v = img
            .body()
            .eval(&vals)
            .map(|q| Value::from(q.to_string()))
            .unwrap_or(Value::Null);
        out.insert(g.name.clone(), v);
    }
    Value::Object(out)
}

fn cmd_verify(cfg: &Config, args: &VerifyArgs) -> ExitCode {
    let (k, m) = match require_shape(cfg) {
        Ok(km) => km,
        Err(e) => return usage_error(&e),
    };
    let atlas = match Atlas::build(&cfg.grading, &k, &m, cfg.trunc) {
        Ok(a) => a,
        Err(e) => return usage_error(&e.to_string()),
    };
    let report = match args.suite {
        Suite::Cocycle => {
            let mode = match args.mode {
                ModeArg::Pairs => CocycleMode::Pairs,
                ModeArg::Triples => CocycleMode::Triples,
                ModeArg::All => CocycleMode::All,
            };
            let charts = atlas.charts().len();
            let samples = args.samples.or(if charts * charts * charts > 512 {
                Some(10)
            } else {
                None
            });
            verify_cocycle(
                &atlas,
                &CocycleOptions {
                    mode,
                    samples,
                    seed: cfg.seed,
                    corrupt: args.corrupt,
                },
            )
        }
        Suite::Action => {
            let ttable = match verification_ttable(&cfg.grading, 2) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            let charts = atlas.charts().len();
            let tuples = args.samples.or(if charts.pow(4) > 256 {
                Some(10)
            } else {
                None
            });
            verify_action(
                &atlas,
                &ttable,
                &ActionOptions {
                    seed: cfg.seed,
                    tuples,
                    gl_points: args.gl_points,
                    lemma_samples: args.samples.unwrap_or(20),
                    law_samples: args.samples.unwrap_or(20),
                    retries: 25,
                },
            )
        }
        Suite::Transitivity => verify_transitivity(&atlas, cfg.seed),
        Suite::Algebra => {
            let table = match algebra_suite_table(&cfg.grading) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            verify_algebra(&table, cfg.trunc, cfg.seed, args.count)
        }
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };

    match cfg.output {
        OutputKind::Json => {
            let mut v = report.to_json();
            v.as_object_mut().expect("report json is an object").insert(
                "config".into(),
                json!({
                    "n": cfg.grading.n(),
                    "k": k.to_json(),
                    "m": m.to_json(),
                    "trunc": cfg.trunc,
                    "seed": cfg.seed,
                }),
            );
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("serializable")
            );
        }
        OutputKind::Text => print!("{}", report.render_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
