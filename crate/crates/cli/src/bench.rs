use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use cubic_tsp::generate::{generate, NAMED};
use cubic_tsp::solve;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Family::Random)]
    family: Family,
    /// Vertex counts as `start..end[:step]`, inclusive (random family).
    #[arg(long, default_value = "10..100:10")]
    sizes: String,
    /// Seeds as `start..end`, inclusive (random family).
    #[arg(long, default_value = "1..5")]
    seeds: String,
    /// Write one CSV row per instance.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Random,
    Named,
}

#[derive(Debug, Serialize)]
struct Row {
    instance: String,
    n: usize,
    tour: usize,
    bound: usize,
    ratio_to_n: f64,
    compressions: usize,
    split_offs: usize,
    deg2_adjacent: usize,
    deg2_distance2: usize,
    deg4_default: usize,
    deg4_alternative: usize,
    pass: bool,
    wall_ms: f64,
}

fn parse_range(text: &str, default_step: usize) -> anyhow::Result<Vec<u64>> {
    let (range, step) = match text.split_once(':') {
        Some((r, s)) => (r, s.trim().parse::<usize>().context("bad step")?),
        None => (text, default_step),
    };
    let (a, b) = range
        .split_once("..")
        .with_context(|| format!("expected start..end, got `{text}`"))?;
    let a: u64 = a
        .trim()
        .parse()
        .with_context(|| format!("bad range start `{a}`"))?;
    let b: u64 = b
        .trim()
        .parse()
        .with_context(|| format!("bad range end `{b}`"))?;
    if step == 0 || a > b {
        bail!("empty range `{text}`");
    }
    Ok((a..=b).step_by(step).collect())
}

fn run_one(instance: String) -> anyhow::Result<Row> {
    let g = generate(&instance).map_err(crate::invalid)?;
    let start = Instant::now();
    let sol = solve(&g).with_context(|| format!("solving {instance}"))?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let c = &sol.certificate;
    let count = |k: &str| c.gadgets.get(k).copied().unwrap_or(0);
    Ok(Row {
        n: c.n,
        tour: c.tour_length,
        bound: c.bound.unwrap_or(c.loose_bound),
        ratio_to_n: c.tour_length as f64 / c.n as f64,
        compressions: c.compressions,
        split_offs: c.split_offs,
        deg2_adjacent: count("deg2-adjacent"),
        deg2_distance2: count("deg2-distance2"),
        deg4_default: count("deg4-default"),
        deg4_alternative: count("deg4-alternative"),
        pass: c.passed() && 3 * c.tour_length <= 4 * c.n,
        wall_ms,
        instance,
    })
}

pub fn run(args: &BenchArgs) -> anyhow::Result<bool> {
    let instances: Vec<String> = match args.family {
        Family::Named => NAMED.iter().map(|s| s.to_string()).collect(),
        Family::Random => {
            let sizes = parse_range(&args.sizes, 2).map_err(crate::invalid)?;
            let seeds = parse_range(&args.seeds, 1).map_err(crate::invalid)?;
            if let Some(n) = sizes.iter().find(|&&n| n % 2 == 1 || n < 4) {
                return Err(crate::invalid(anyhow::anyhow!(
                    "size {n} is not an even number ≥ 4"
                )));
            }
            sizes
                .iter()
                .flat_map(|n| seeds.iter().map(move |s| format!("random:n={n},seed={s}")))
                .collect()
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()?;
    let rows: Vec<Row> = pool.install(|| {
        instances
            .into_par_iter()
            .map(run_one)
            .collect::<anyhow::Result<_>>()
    })?;

    if let Some(path) = &args.csv {
        let mut w =
            csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let worst = rows.iter().map(|r| r.ratio_to_n).fold(0.0, f64::max);
    let slowest = rows.iter().map(|r| r.wall_ms).fold(0.0, f64::max);
    println!(
        "instances={} failed={failed} max_ratio_to_n={worst:.4} max_wall_ms={slowest:.1}",
        rows.len()
    );
    for r in rows.iter().filter(|r| !r.pass) {
        println!("FAIL {} tour={} bound={}", r.instance, r.tour, r.bound);
    }
    Ok(failed == 0)
}
