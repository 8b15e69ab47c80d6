//! Random Riemann scalar invariants and the timing experiment over their degree.

use std::fmt;
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dummy::CanonResult;
use crate::error::Result;
use crate::frontend::{
    canonicalize_merged_timed, g_from_configuration, merge_monomial, parse_definitions, parse_expression,
    CanonOptions, Commutation, Registry,
};

/// Riemann tensor with its pair antisymmetries and block symmetry.
pub const RIEMANN_DEFS: &str = "\
tensor R rank 4
gen -(1,2)
gen -(3,4)
gen +(1,3)(2,4)
metric symmetric
";

pub fn riemann_registry() -> Registry {
    parse_definitions(RIEMANN_DEFS).expect("built-in definitions parse")
}

/// A product of `degree` Riemann factors with every index contracted.
///
/// The pairing of the `4 * degree` slots is uniform over perfect matchings
/// (shuffle, then pair neighbours); each pair puts its upper index on either
/// slot with probability 1/2.
pub fn random_riemann_invariant(degree: usize, seed: u64) -> String {
    assert!(degree >= 1, "degree must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = 4 * degree;
    let mut order: Vec<usize> = (0..slots).collect();
    order.shuffle(&mut rng);
    let mut text: Vec<String> = vec![String::new(); slots];
    for (j, pair) in order.chunks(2).enumerate() {
        let name = format!("d{}", j + 1);
        let (up, down) = if rng.random_bool(0.5) { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
        text[up] = name.clone();
        text[down] = format!("-{name}");
    }
    text.chunks(4)
        .map(|f| format!("R({})", f.join(",")))
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Seed of one sample, derived from the run seed.
pub fn sample_seed(seed: u64, degree: usize, sample: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((degree as u64) << 32 | sample as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultKind {
    Canonical,
    Zero,
}

impl fmt::Display for ResultKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResultKind::Canonical => "canonical",
            ResultKind::Zero => "zero",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub min_degree: usize,
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub drop_zeros: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub degree: usize,
    pub sample: usize,
    pub seed: u64,
    pub nanoseconds: u128,
    pub kind: ResultKind,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Mean time in seconds per degree, skipping degrees without rows.
    pub fn means(&self) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64, usize)> = Vec::new();
        for r in &self.rows {
            match out.last_mut() {
                Some((d, sum, n)) if *d == r.degree => {
                    *sum += r.nanoseconds as f64;
                    *n += 1;
                }
                _ => out.push((r.degree, r.nanoseconds as f64, 1)),
            }
        }
        out.into_iter().map(|(d, sum, n)| (d, sum / n as f64 * 1e-9)).collect()
    }

    /// Data rows, then one `degree,mean,,<ns>,summary` row per degree.
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "degree,sample,seed,nanoseconds,result_kind")?;
        for r in &self.rows {
            writeln!(w, "{},{},{},{},{}", r.degree, r.sample, r.seed, r.nanoseconds, r.kind)?;
        }
        for (d, mean) in self.means() {
            writeln!(w, "{d},mean,,{:.0},summary", mean * 1e9)?;
        }
        Ok(())
    }

    pub fn write_plot_data(&self, mut w: impl Write) -> io::Result<()> {
        for (d, mean) in self.means() {
            writeln!(w, "{d} {mean:e}")?;
        }
        Ok(())
    }
}

/// Canonicalizes one invariant, returning its result kind and dummy-stage time.
pub fn time_invariant(registry: &Registry, text: &str, options: &CanonOptions) -> Result<(ResultKind, u128)> {
    let expr = parse_expression(text, registry)?;
    let merged = merge_monomial(&expr, registry, registry.metric, Commutation::Commuting)?;
    let g1 = g_from_configuration(&merged, &expr);
    let (result, _, elapsed) = canonicalize_merged_timed(&merged, &g1, options, None)?;
    let kind = match result {
        CanonResult::Canonical(_) => ResultKind::Canonical,
        CanonResult::Zero => ResultKind::Zero,
    };
    Ok((kind, elapsed.as_nanos()))
}

/// Runs the experiment sample by sample; each degree starts with one
/// discarded warm-up run.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let registry = riemann_registry();
    let options = CanonOptions::default();
    let mut report = BenchReport::default();
    for degree in config.min_degree.max(1)..=config.max_degree {
        let warm = random_riemann_invariant(degree, sample_seed(config.seed, degree, usize::MAX));
        time_invariant(&registry, &warm, &options)?;
        for sample in 0..config.samples {
            let seed = sample_seed(config.seed, degree, sample);
            let text = random_riemann_invariant(degree, seed);
            let (kind, nanoseconds) = time_invariant(&registry, &text, &options)?;
            if config.drop_zeros && kind == ResultKind::Zero {
                continue;
            }
            report.rows.push(BenchRow {
                degree,
                sample,
                seed,
                nanoseconds,
                kind,
            });
        }
    }
    Ok(report)
}

/// Least-squares slope and intercept of `ln y` against `ln x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::canonicalize;

    #[test]
    fn degree_one_is_a_self_contraction() {
        for seed in 0..20 {
            let text = random_riemann_invariant(1, seed);
            let expr = parse_expression(&text, &riemann_registry()).unwrap();
            assert_eq!(expr.factors.len(), 1);
            assert!(expr.index_counts().iter().all(|c| c.1 == 2));
        }
    }

    #[test]
    fn degree_three_has_six_pairs() {
        let text = random_riemann_invariant(3, 42);
        let expr = parse_expression(&text, &riemann_registry()).unwrap();
        assert_eq!(expr.factors.len(), 3);
        let counts = expr.index_counts();
        assert_eq!(counts.len(), 6);
        assert!(counts.iter().all(|c| c.1 == 2));
        for name in counts.iter().map(|c| &c.0) {
            let vars: Vec<bool> = expr
                .factors
                .iter()
                .flat_map(|f| &f.indices)
                .filter(|i| &i.name == name)
                .map(|i| i.up)
                .collect();
            assert_ne!(vars[0], vars[1]);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        assert_eq!(random_riemann_invariant(5, 7), random_riemann_invariant(5, 7));
        assert_ne!(random_riemann_invariant(5, 7), random_riemann_invariant(5, 8));
    }

    #[test]
    fn small_run_schema() {
        let report = run_bench(&BenchConfig {
            min_degree: 1,
            max_degree: 3,
            samples: 2,
            seed: 1,
            drop_zeros: false,
        })
        .unwrap();
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "degree,sample,seed,nanoseconds,result_kind");
        assert_eq!(lines.len(), 1 + 6 + 3);
        assert!(lines[1..7].iter().all(|l| l.split(',').count() == 5));
        assert!(lines[7..].iter().all(|l| l.ends_with(",summary")));
        let mut plot = Vec::new();
        report.write_plot_data(&mut plot).unwrap();
        assert_eq!(String::from_utf8(plot).unwrap().lines().count(), 3);
    }

    #[test]
    fn drop_zeros_removes_vanishing_rows() {
        let config = BenchConfig {
            min_degree: 1,
            max_degree: 2,
            samples: 10,
            seed: 3,
            drop_zeros: true,
        };
        let report = run_bench(&config).unwrap();
        assert!(report.rows.iter().all(|r| r.kind == ResultKind::Canonical));
    }

    #[test]
    fn seeds_are_reproducible() {
        let config = BenchConfig {
            min_degree: 2,
            max_degree: 3,
            samples: 3,
            seed: 9,
            drop_zeros: false,
        };
        let a: Vec<_> = run_bench(&config).unwrap().rows.into_iter().map(|r| (r.seed, r.kind)).collect();
        let b: Vec<_> = run_bench(&config).unwrap().rows.into_iter().map(|r| (r.seed, r.kind)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn invariants_canonicalize_idempotently() {
        let reg = riemann_registry();
        for degree in 1..=4 {
            for seed in 0..5 {
                let text = random_riemann_invariant(degree, seed);
                let once = canonicalize(&text, &reg, &CanonOptions::default()).unwrap();
                if once != "0" {
                    assert_eq!(canonicalize(&once, &reg, &CanonOptions::default()).unwrap(), once);
                }
            }
        }
    }

    #[test]
    fn fit_recovers_a_power_law() {
        let pts: Vec<(f64, f64)> = (2..10).map(|x| (x as f64, 3e-7 * (x as f64).powi(5))).collect();
        let (slope, intercept) = loglog_fit(&pts);
        assert!((slope - 5.0).abs() < 1e-9);
        assert!((intercept.exp() - 3e-7).abs() < 1e-15);
    }
}
