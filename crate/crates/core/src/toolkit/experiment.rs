use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use super::sample::{sample_rng, Sampler};
use crate::error::{Error, Result};
use crate::facing::facing_of_dissection;
use crate::params::{fineness, longest_degree_two_induced_path, Fineness};

pub const CSV_HEADER: &str = "n,seed,sample,chords,delta_dual,r_dual,f,deg2path";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub samples_per_size: usize,
    pub seed: u64,
    pub fineness_cap: usize,
    pub output_path: PathBuf,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::from_toml(&std::fs::read_to_string(path)?)?;
        if cfg.output_path.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.output_path = dir.join(&cfg.output_path);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::Config("sizes is empty".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 3) {
            return Err(Error::Config(format!("size {n} is below 3")));
        }
        if self.samples_per_size == 0 {
            return Err(Error::Config("samples_per_size must be at least 1".into()));
        }
        if self.fineness_cap == 0 {
            return Err(Error::Config("fineness_cap must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRecord {
    pub n: usize,
    pub sample_index: usize,
    pub chord_count: usize,
    pub delta_dual: usize,
    pub r_dual: Fineness,
    pub f: usize,
    pub deg2_path: usize,
}

/// Measures one sampled dissection.
pub fn sample_record(sampler: &Sampler, n: usize, seed: u64, index: usize, cap: usize) -> Result<SampleRecord> {
    let d = sampler.sample(&mut sample_rng(seed, n, index));
    let dual = facing_of_dissection(&d).gwl.h;
    let delta_dual = dual.max_degree();
    let f = d.facial_circumference();
    if delta_dual != f {
        return Err(Error::Violation(format!("max dual degree {delta_dual} differs from f = {f} for {d}")));
    }
    Ok(SampleRecord {
        n,
        sample_index: index,
        chord_count: d.chord_count(),
        delta_dual,
        r_dual: fineness(&dual, cap)?,
        f,
        deg2_path: longest_degree_two_induced_path(&d.graph()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentOutput {
    pub records: Vec<SampleRecord>,
    pub csv: String,
}

/// Samples every (size, index) in parallel and renders the CSV in
/// (size, index) order, with one summary row per size.
pub fn compute_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let mut records = Vec::new();
    for &n in &cfg.sizes {
        let sampler = Sampler::new(n)?;
        let rows: Vec<SampleRecord> = (0..cfg.samples_per_size)
            .into_par_iter()
            .map(|i| sample_record(&sampler, n, cfg.seed, i, cfg.fineness_cap))
            .collect::<Result<_>>()?;
        records.extend(rows);
    }
    let csv = render_csv(cfg, &records);
    Ok(ExperimentOutput { records, csv })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let out = compute_experiment(cfg)?;
    std::fs::write(&cfg.output_path, &out.csv)?;
    Ok(out)
}

fn render_csv(cfg: &ExperimentConfig, records: &[SampleRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for &n in &cfg.sizes {
        let rows: Vec<&SampleRecord> = records.iter().filter(|r| r.n == n).collect();
        for r in &rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.n, cfg.seed, r.sample_index, r.chord_count, r.delta_dual, r.r_dual, r.f, r.deg2_path
            )
            .unwrap();
        }
        let stat = |get: &dyn Fn(&SampleRecord) -> usize| {
            let max = rows.iter().map(|r| get(r)).max().unwrap_or(0);
            let mean = rows.iter().map(|r| get(r)).sum::<usize>() as f64 / rows.len() as f64;
            format!("{mean:.3}/{max}")
        };
        let r_mean = rows.iter().map(|r| r.r_dual.capped()).sum::<usize>() as f64 / rows.len() as f64;
        let r_max = if rows.iter().any(|r| matches!(r.r_dual, Fineness::CapExceeded(_))) {
            format!(">{}", cfg.fineness_cap)
        } else {
            rows.iter().map(|r| r.r_dual.capped()).max().unwrap_or(0).to_string()
        };
        writeln!(
            s,
            "{n},{},summary,{},{},{r_mean:.3}/{r_max},{},{}",
            cfg.seed,
            stat(&|r| r.chord_count),
            stat(&|r| r.delta_dual),
            stat(&|r| r.f),
            stat(&|r| r.deg2_path)
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sizes: Vec<usize>, samples: usize, seed: u64, out: PathBuf) -> ExperimentConfig {
        ExperimentConfig {
            sizes,
            samples_per_size: samples,
            seed,
            fineness_cap: 64,
            output_path: out,
        }
    }

    #[test]
    fn two_octagon_samples() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(vec![8], 2, 1, dir.path().join("out.csv"));
        let a = run_experiment(&c).unwrap();
        let first = std::fs::read(&c.output_path).unwrap();
        let lines: Vec<&str> = a.csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[3].starts_with("8,1,summary,"));
        run_experiment(&c).unwrap();
        assert_eq!(std::fs::read(&c.output_path).unwrap(), first);
    }

    #[test]
    fn triangles_are_fixed() {
        let out = compute_experiment(&cfg(vec![3], 5, 9, PathBuf::from("unused"))).unwrap();
        for r in &out.records {
            assert_eq!((r.chord_count, r.f, r.delta_dual), (0, 3, 3));
        }
        assert!(out.records.iter().all(|r| r.delta_dual == r.f));
    }

    #[test]
    fn cap_exceeded_is_recorded() {
        let mut c = cfg(vec![12], 3, 2, PathBuf::from("unused"));
        c.fineness_cap = 1;
        let out = compute_experiment(&c).unwrap();
        assert!(out.records.iter().all(|r| r.r_dual == Fineness::CapExceeded(1)));
        assert!(out.csv.lines().nth(1).unwrap().contains(",>1,"));
        assert!(out.csv.lines().last().unwrap().contains("1.000/>1"));
    }

    #[test]
    fn config_parsing() {
        let text = "sizes = [8, 16]\nsamples_per_size = 4\nseed = 7\nfineness_cap = 20\noutput_path = \"out.csv\"\n";
        let c = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(c.sizes, vec![8, 16]);
        assert!(ExperimentConfig::from_toml(&text.replace("[8, 16]", "[2]")).is_err());
        assert!(ExperimentConfig::from_toml(&text.replace("= 4", "= 0")).is_err());
        assert!(ExperimentConfig::from_toml("sizes = [8]\n").is_err());
    }
}
