//! Timing harness for the composition generators.
//!
//! A cell is one `(algorithm, n, k)` triple. Every cell runs `warmup`
//! discarded enumerations followed by `repetitions` timed ones. Outputs are
//! consumed through [`std::hint::black_box`] and never stored. The count for
//! each row comes from the memoized counter, computed before any timing.
//!
//! The reference machine's mean times at `n = 22, k = 11, [1, 7]` were
//! 0.89 s (successor), 1.42 s (binomial), 3.68 s (interval) and 6.29 s
//! (naive). Only their order is expected to carry over.

use std::fmt::Write as _;
use std::hint::black_box;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::counting::CountTable;
use crate::domain::{CompositionSpec, PartDomain};
use crate::error::{Error, Result};
use crate::generation::{generate, GeneratorKind};

/// Exact CSV header.
pub const CSV_HEADER: &str = "algorithm,n,k,a,b,count,node_expansions,seconds_mean,seconds_stddev";

/// How often, in emitted compositions, a run looks at the clock.
const TIMEOUT_STRIDE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Runtime against `n` at `k = n / 2`.
    Fig1,
    /// Runtime against `k` at `n = 22`.
    Fig2,
    /// Interval recursion over successor, against `k` at `n = 22`.
    Fig3,
    Custom,
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "custom" => Ok(Preset::Custom),
            _ => Err(format!("unknown preset `{s}` (expected fig1, fig2, fig3 or custom)")),
        }
    }
}

/// Which `k` values accompany each `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    HalfN,
    Fixed(usize),
    Sweep { k_min: usize, k_max: usize },
}

impl KRule {
    pub fn ks(self, n: u64) -> Vec<usize> {
        match self {
            KRule::HalfN => vec![(n / 2) as usize],
            KRule::Fixed(k) => vec![k],
            KRule::Sweep { k_min, k_max } => (k_min..=k_max).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub n_values: Vec<u64>,
    pub k_rule: KRule,
    pub a: u64,
    pub b: u64,
    pub algorithms: Vec<GeneratorKind>,
    pub repetitions: u32,
    pub warmup: u32,
    /// Wall-clock budget for a whole cell, warmup included.
    pub timeout: Duration,
}

impl ExperimentConfig {
    pub const DEFAULT_REPETITIONS: u32 = 10;
    pub const DEFAULT_WARMUP: u32 = 2;
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);

    pub fn custom(n_values: Vec<u64>, k_rule: KRule, a: u64, b: u64, algorithms: Vec<GeneratorKind>) -> Self {
        ExperimentConfig {
            preset: Preset::Custom,
            n_values,
            k_rule,
            a,
            b,
            algorithms,
            repetitions: Self::DEFAULT_REPETITIONS,
            warmup: Self::DEFAULT_WARMUP,
            timeout: Self::DEFAULT_TIMEOUT,
        }
    }

    /// `n` in 10, 12, ..., 22 with `k = n / 2`, all algorithms, `[1, 7]`.
    pub fn fig1() -> Self {
        let mut c = Self::custom(
            (10..=22).step_by(2).collect(),
            KRule::HalfN,
            1,
            7,
            GeneratorKind::ALL.to_vec(),
        );
        c.preset = Preset::Fig1;
        c
    }

    /// `n = 22`, `k` in 2..=22, all algorithms, `[1, 7]`.
    pub fn fig2() -> Self {
        let mut c = Self::custom(
            vec![22],
            KRule::Sweep { k_min: 2, k_max: 22 },
            1,
            7,
            GeneratorKind::ALL.to_vec(),
        );
        c.preset = Preset::Fig2;
        c
    }

    /// `n = 22`, `k` in 4..=20, interval recursion and successor, `[1, 7]`.
    pub fn fig3() -> Self {
        let algorithms = vec![GeneratorKind::IntervalRecursion, GeneratorKind::Successor];
        let mut c = Self::custom(vec![22], KRule::Sweep { k_min: 4, k_max: 20 }, 1, 7, algorithms);
        c.preset = Preset::Fig3;
        c
    }

    pub fn from_preset(preset: Preset) -> Option<Self> {
        match preset {
            Preset::Fig1 => Some(Self::fig1()),
            Preset::Fig2 => Some(Self::fig2()),
            Preset::Fig3 => Some(Self::fig3()),
            Preset::Custom => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.a > self.b {
            return Err(Error::InvertedInterval { a: self.a, b: self.b });
        }
        Ok(())
    }
}

/// One cell's measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub algorithm: GeneratorKind,
    pub n: u64,
    pub k: usize,
    pub a: u64,
    pub b: u64,
    pub count: BigUint,
    pub node_expansions: u64,
    /// Mean over the timed repetitions, or `f64::INFINITY` when the cell
    /// ran out of time.
    pub seconds: f64,
    pub seconds_stddev: f64,
    pub timed_out: bool,
}

/// Runs every cell in order: algorithm, then `n`, then `k`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    let domain = PartDomain::Interval {
        a: config.a,
        b: config.b,
    };
    let mut counts = CountTable::new(domain.clone());
    let mut rows = Vec::new();
    for &algorithm in &config.algorithms {
        for &n in &config.n_values {
            for k in config.k_rule.ks(n) {
                let spec = CompositionSpec::new(n, k, domain.clone());
                let count = counts.count(n, k);
                rows.push(run_cell(config, algorithm, &spec, count)?);
            }
        }
    }
    Ok(rows)
}

fn run_cell(
    config: &ExperimentConfig,
    algorithm: GeneratorKind,
    spec: &CompositionSpec,
    count: BigUint,
) -> Result<ExperimentRow> {
    let cell_start = Instant::now();
    let mut timed_out = false;
    let mut expansions = None;
    let mut samples = Vec::with_capacity(config.repetitions as usize);

    for rep in 0..config.warmup + config.repetitions {
        let mut seen = 0u64;
        let stats = generate(spec, algorithm, |parts| {
            black_box(parts);
            seen += 1;
            if seen.is_multiple_of(TIMEOUT_STRIDE) && cell_start.elapsed() > config.timeout {
                timed_out = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        if timed_out || cell_start.elapsed() > config.timeout {
            timed_out = true;
            break;
        }
        match expansions {
            None => expansions = Some(stats.node_expansions),
            Some(e) => assert_eq!(
                e, stats.node_expansions,
                "node expansions differ between runs of {algorithm} on {spec}"
            ),
        }
        if rep >= config.warmup {
            samples.push(stats.elapsed.as_secs_f64());
        }
    }

    let (seconds, seconds_stddev) = if timed_out {
        (f64::INFINITY, 0.0)
    } else {
        mean_and_stddev(&samples)
    };
    Ok(ExperimentRow {
        algorithm,
        n: spec.n,
        k: spec.k,
        a: config.a,
        b: config.b,
        count,
        node_expansions: expansions.unwrap_or(0),
        seconds,
        seconds_stddev,
        timed_out,
    })
}

/// Mean and sample standard deviation; the deviation of fewer than two
/// samples is 0.
pub fn mean_and_stddev(samples: &[f64]) -> (f64, f64) {
    if samples.is_empty() {
        return (0.0, 0.0);
    }
    let len = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / len;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (len - 1.0);
    (mean, var.sqrt())
}

/// Mean seconds of interval recursion divided by mean seconds of the
/// successor walker, per `k` in ascending order.
pub fn summarize_ratio(rows: &[ExperimentRow]) -> Result<Vec<(usize, f64)>> {
    let seconds =
        |kind: GeneratorKind, k: usize| rows.iter().find(|r| r.algorithm == kind && r.k == k).map(|r| r.seconds);
    let mut ks: Vec<usize> = rows
        .iter()
        .filter(|r| matches!(r.algorithm, GeneratorKind::IntervalRecursion | GeneratorKind::Successor))
        .map(|r| r.k)
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| {
            let slow = seconds(GeneratorKind::IntervalRecursion, k).ok_or(Error::MissingSeries {
                algorithm: GeneratorKind::IntervalRecursion,
                k,
            })?;
            let fast = seconds(GeneratorKind::Successor, k).ok_or(Error::MissingSeries {
                algorithm: GeneratorKind::Successor,
                k,
            })?;
            Ok((k, slow / fast))
        })
        .collect()
}

/// Formats like C's `%g`: 6 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-4, 1e6)`.
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_line(row: &ExperimentRow) -> String {
    let mut line = String::new();
    write!(
        line,
        "{},{},{},{},{},{},{},{},{}",
        row.algorithm,
        row.n,
        row.k,
        row.a,
        row.b,
        row.count,
        row.node_expansions,
        format_g(row.seconds),
        format_g(row.seconds_stddev)
    )
    .expect("writing to a String");
    line
}

/// Header plus one line per row, LF-terminated.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", csv_line(row))?;
    }
    Ok(())
}

/// CPU model, logical CPU count, OS and architecture.
pub fn environment_description() -> String {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|info| {
            info.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split_once(':'))
                .map(|(_, v)| v.trim().to_string())
        })
        .unwrap_or_else(|| "unknown cpu".into());
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    format!(
        "{cpu}, {threads} logical cpus, {} {}",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(algorithm: GeneratorKind, k: usize, seconds: f64) -> ExperimentRow {
        ExperimentRow {
            algorithm,
            n: 22,
            k,
            a: 1,
            b: 7,
            count: BigUint::from(1u8),
            node_expansions: 1,
            seconds,
            seconds_stddev: 0.0,
            timed_out: false,
        }
    }

    #[test]
    fn custom_cell_counts() {
        let mut config = ExperimentConfig::custom(vec![6], KRule::Fixed(5), 1, 3, GeneratorKind::ALL.to_vec());
        config.repetitions = 1;
        config.warmup = 0;
        let rows = run_experiment(&config).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows
            .iter()
            .all(|r| r.count == BigUint::from(5u8) && r.seconds >= 0.0 && !r.timed_out));
        let order: Vec<GeneratorKind> = rows.iter().map(|r| r.algorithm).collect();
        assert_eq!(order, GeneratorKind::ALL.to_vec());
        assert_eq!(rows[3].node_expansions, 5);
    }

    #[test]
    fn presets() {
        let f1 = ExperimentConfig::fig1();
        assert_eq!(f1.n_values, vec![10, 12, 14, 16, 18, 20, 22]);
        assert_eq!(f1.k_rule.ks(22), vec![11]);
        assert_eq!((f1.a, f1.b, f1.repetitions, f1.warmup), (1, 7, 10, 2));
        let f2 = ExperimentConfig::fig2();
        assert_eq!(f2.algorithms.len() * f2.k_rule.ks(22).len(), 84);
        let f3 = ExperimentConfig::fig3();
        assert_eq!(
            f3.algorithms,
            vec![GeneratorKind::IntervalRecursion, GeneratorKind::Successor]
        );
        assert_eq!(f3.k_rule.ks(22), (4..=20).collect::<Vec<_>>());
        assert_eq!(ExperimentConfig::from_preset(Preset::Custom), None);
        assert_eq!("fig2".parse::<Preset>(), Ok(Preset::Fig2));
        assert!("fig4".parse::<Preset>().is_err());
    }

    #[test]
    fn infeasible_cells_are_zero_rows() {
        let mut config = ExperimentConfig::fig2();
        config.k_rule = KRule::Sweep { k_min: 2, k_max: 3 };
        config.repetitions = 1;
        config.warmup = 0;
        let rows = run_experiment(&config).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.count == BigUint::from(0u8)));
    }

    #[test]
    fn timeout_sentinel() {
        let mut config = ExperimentConfig::custom(vec![22], KRule::Fixed(11), 1, 7, vec![GeneratorKind::NaiveSum]);
        config.timeout = Duration::ZERO;
        let rows = run_experiment(&config).unwrap();
        assert!(rows[0].timed_out);
        assert_eq!(rows[0].seconds, f64::INFINITY);
        assert!(csv_line(&rows[0]).ends_with(",inf,0"));
    }

    #[test]
    fn ratio_summary() {
        let rows = vec![
            row(GeneratorKind::Successor, 8, 0.5),
            row(GeneratorKind::IntervalRecursion, 8, 0.5),
            row(GeneratorKind::IntervalRecursion, 4, 3.0),
            row(GeneratorKind::Successor, 4, 1.5),
        ];
        assert_eq!(summarize_ratio(&rows).unwrap(), vec![(4, 2.0), (8, 1.0)]);
        let missing = vec![row(GeneratorKind::IntervalRecursion, 12, 1.0)];
        assert_eq!(
            summarize_ratio(&missing),
            Err(Error::MissingSeries {
                algorithm: GeneratorKind::Successor,
                k: 12
            })
        );
    }

    #[test]
    fn stddev_is_sample() {
        let (m, s) = mean_and_stddev(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - 1.2909944487358056).abs() < 1e-12);
        assert_eq!(mean_and_stddev(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn g_format() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.123456789, "0.123457"),
            (123456.7, "123457"),
            (1234567.0, "1.23457e+06"),
            (0.0000123456, "1.23456e-05"),
            (0.0001, "0.0001"),
            (2.5, "2.5"),
            (999999.5, "1e+06"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x), s, "{x}");
        }
    }

    #[test]
    fn csv_shape() {
        let mut out = Vec::new();
        write_csv(&[row(GeneratorKind::Successor, 11, 0.25)], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            format!("{CSV_HEADER}\nsuccessor,22,11,1,7,1,1,0.25,0\n")
        );
    }

    #[test]
    fn environment_is_one_line() {
        let env = environment_description();
        assert!(!env.is_empty() && !env.contains('\n'));
    }
}
