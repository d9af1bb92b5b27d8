use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use seclab::harness::{
    check_bounds_guarded, report_rows, save_trials, trials_path, write_results, ResultRow, Suite, SuiteConfig,
    SuiteReport, TrialDump, Verdict,
};
use seclab::instances::{
    gen_figure2, gen_groups_counterexample, gen_random_bipartite, gen_random_graph, gen_random_grouped,
    gen_random_hvm, instance_to_string, load_instance, reduce_hem_to_hvm, save_instance, HvmHypergraph, Instance,
};
use seclab::oracles::{
    greedy_hypergraph, greedy_matching, max_weight_forest, optimal_bipartite, optimal_hypergraph,
    EXACT_HYPERGRAPH_BUDGET,
};
use seclab::AnyInstance;

use crate::{GenerateArgs, Kind, RunArgs, Status, SweepArgs};

const DEFAULT_SEED: u64 = 0;
const DEFAULT_TRIALS: usize = 10_000;

/// Diagnostics go to stdout unless stdout carries data.
struct Say {
    to_stderr: bool,
}

impl Say {
    fn line(&self, text: impl AsRef<str>) {
        if self.to_stderr {
            eprintln!("{}", text.as_ref());
        } else {
            println!("{}", text.as_ref());
        }
    }
}

pub fn generate(args: GenerateArgs) -> Result<Status> {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let say = Say {
        to_stderr: args.out.is_none(),
    };
    say.line(format!("master_seed={seed}"));
    let inst: AnyInstance = match args.kind {
        Kind::RandomBipartite => Instance::Bipartite(gen_random_bipartite(args.nl, args.nr, args.p, args.law, seed)?),
        Kind::RandomHvm => Instance::Hvm(gen_random_hvm(args.nl, args.nr, args.d, args.options, args.law, seed)?),
        Kind::RandomGraph => Instance::Graph(gen_random_graph(args.n, args.p, args.law, seed)?),
        Kind::RandomGrouped => {
            Instance::Grouped(gen_random_grouped(args.nl, args.nr, args.p, args.groups, args.law, seed)?)
        }
        Kind::Counterexample => Instance::Grouped(gen_groups_counterexample(args.n, args.eps)?),
        Kind::Figure2 => Instance::Grouped(gen_figure2()),
    };
    match &args.out {
        Some(path) => save_instance(&inst, path).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", instance_to_string(&inst)),
    }
    for line in summary(&inst) {
        say.line(line);
    }
    Ok(Status::Pass)
}

fn hypergraph_summary(h: &HvmHypergraph<f64>, out: &mut Vec<String>) {
    out.push(format!("greedy={}", greedy_hypergraph(h).total_weight()));
    match optimal_hypergraph(h) {
        Ok(opt) => out.push(format!("opt={}", opt.total_weight())),
        Err(_) => out.push(format!("opt=unavailable ({} edges > {EXACT_HYPERGRAPH_BUDGET})", h.edges().len())),
    }
}

fn summary(inst: &AnyInstance) -> Vec<String> {
    let mut out = vec![format!("kind={}", inst.kind())];
    match inst {
        Instance::Bipartite(g) => {
            out.push(format!("left={} right={} edges={}", g.left_count(), g.right_count(), g.edges().len()));
            out.push(format!("greedy={}", greedy_matching(g).total_weight()));
            out.push(format!("opt={}", optimal_bipartite(g).total_weight()));
        }
        Instance::Hvm(h) => {
            out.push(format!("left={} right={} d={} edges={}", h.left_count(), h.right_count(), h.d(), h.edges().len()));
            hypergraph_summary(h, &mut out);
        }
        Instance::Hem(h) => {
            out.push(format!("vertices={} d={} edges={}", h.vertex_count(), h.d(), h.edges().len()));
            hypergraph_summary(&reduce_hem_to_hvm(h), &mut out);
        }
        Instance::Grouped(gi) => {
            let g = gi.base();
            out.push(format!(
                "left={} right={} edges={} groups={} mode={}",
                g.left_count(),
                g.right_count(),
                g.edges().len(),
                gi.groups().len(),
                gi.mode().as_str()
            ));
            out.push(format!("greedy={}", greedy_matching(g).total_weight()));
            out.push(format!("opt={}", optimal_bipartite(g).total_weight()));
        }
        Instance::Graph(g) => {
            out.push(format!("vertices={} edges={}", g.vertex_count(), g.edges().len()));
            out.push(format!("max_forest={}", max_weight_forest(g).total_weight()));
        }
    }
    out
}

fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load(path: &Path) -> Result<AnyInstance> {
    load_instance(path).with_context(|| format!("loading {}", path.display()))
}

fn describe(say: &Say, id: &str, report: &SuiteReport) {
    let rerun = if report.reran { " (re-run)" } else { "" };
    say.line(format!("{id} {} {} trials={}{rerun}", report.suite, report.param, report.trials));
    for c in &report.checks {
        let flag = if c.verdict == Verdict::Fail && !c.counts_as_failure() {
            " [not counted]"
        } else {
            ""
        };
        say.line(format!(
            "  {:<8} {} mean={:.6} se={:.6} opt={}{flag}",
            c.verdict.as_str(),
            c.bound_name,
            c.estimate.mean,
            c.estimate.std_error,
            c.opt_source.as_str()
        ));
    }
}

fn emit_rows(rows: &[ResultRow], out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
            write_results(rows, io::BufWriter::new(file))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_results(rows, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn status(failed: bool) -> Status {
    if failed {
        Status::BoundFailure
    } else {
        Status::Pass
    }
}

pub fn run(args: RunArgs) -> Result<Status> {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let say = Say {
        to_stderr: args.out.is_none(),
    };
    say.line(format!("master_seed={seed}"));
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let inst = load(&args.instance)?;
    let id = instance_id(&args.instance);
    let mut cfg = SuiteConfig::new(args.trials, seed).with_workers(args.workers);
    cfg.params.p = args.p;
    cfg.allow_fallback = args.allow_fallback;
    let report = check_bounds_guarded(&inst, args.suite, &cfg)?;
    describe(&say, &id, &report);
    emit_rows(&report_rows(&report, &id, seed), args.out.as_ref())?;
    if args.emit_trials {
        let csv = args.out.as_ref().expect("clap requires --out");
        save_trials(&[TrialDump::new(&report, &id, seed)], trials_path(csv))?;
    }
    Ok(status(report.failed()))
}

/// Defaults for `sweep`, overridden by flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    suite: Option<String>,
    p_grid: Option<Vec<f64>>,
    trials: Option<usize>,
    seed: Option<u64>,
    workers: Option<usize>,
    allow_fallback: Option<bool>,
}

fn read_config(path: &Path) -> Result<SweepConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") && !is_trials_file(&path) {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        bail!("no instance files (*.json) in {}", dir.display());
    }
    Ok(files)
}

fn is_trials_file(path: &Path) -> bool {
    path.file_name()
        .is_some_and(|n| n.to_string_lossy().ends_with(".trials.json"))
}

pub fn sweep(args: SweepArgs) -> Result<Status> {
    let config = match &args.config {
        Some(path) => read_config(path)?,
        None => SweepConfig::default(),
    };
    let seed = args.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let say = Say {
        to_stderr: args.out.is_none(),
    };
    say.line(format!("master_seed={seed}"));
    let suite = match (args.suite, &config.suite) {
        (Some(s), _) => s,
        (None, Some(s)) => s.parse::<Suite>()?,
        (None, None) => bail!("no suite given (use --suite or `suite` in the config)"),
    };
    let trials = args.trials.or(config.trials).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        bail!("trials must be at least 1");
    }
    let workers = args.workers.or(config.workers);
    let allow_fallback = args.allow_fallback || config.allow_fallback.unwrap_or(false);
    let grid = args.p_grid.or(config.p_grid);
    let grid: Vec<Option<f64>> = match grid {
        Some(g) if g.is_empty() => bail!("the p grid is empty"),
        Some(g) if suite.uses_p() => g.into_iter().map(Some).collect(),
        Some(_) => {
            say.line(format!("note: suite {suite} takes no p; the grid is ignored"));
            vec![None]
        }
        None => vec![None],
    };

    let files = instance_files(&args.dir)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for path in &files {
        let inst = load(path)?;
        let id = instance_id(path);
        for &p in &grid {
            let mut cfg = SuiteConfig::new(trials, seed).with_workers(workers);
            cfg.params.p = p;
            cfg.allow_fallback = allow_fallback;
            let report = check_bounds_guarded(&inst, suite, &cfg).with_context(|| format!("instance {id}"))?;
            describe(&say, &id, &report);
            failed |= report.failed();
            rows.extend(report_rows(&report, &id, seed));
        }
    }
    emit_rows(&rows, args.out.as_ref())?;
    Ok(status(failed))
}
