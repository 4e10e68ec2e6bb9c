//! Table 1 and the orbit tables.

use anyhow::{bail, Result};
use probit_design::optimize::MAX_SWEEP_ATTRIBUTES;
use probit_design::{optimize_zstar, sweep_orbits, ModelKind, OrbitResult, SweepConfig};
use serde::Serialize;

use crate::output::{finish_csv, fixed, Format, Sink};

const TABLE1_COLUMNS: [usize; 7] = [1, 2, 4, 8, 10, 50, 100];

#[derive(Debug, Serialize)]
struct Table1Row {
    #[serde(rename = "K")]
    k: usize,
    z_star: f64,
    p_star: f64,
}

pub fn table1(kmax: usize, format: Format, full: bool, sink: &mut Sink) -> Result<()> {
    if kmax == 0 {
        bail!("--kmax must be at least 1");
    }
    let mut ks: Vec<usize> = TABLE1_COLUMNS.iter().copied().chain(1..=kmax).collect();
    ks.sort_unstable();
    ks.dedup();
    let rows = ks
        .into_iter()
        .map(|k| {
            let r = optimize_zstar((k + 1) as f64)?;
            Ok(Table1Row { k, z_star: r.z_star, p_star: r.p_star.value() })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => sink.json(&rows),
        Format::Csv => {
            let mut w = sink.csv();
            w.write_record(["K", "z_star", "p_star"])?;
            for r in &rows {
                w.write_record([r.k.to_string(), fixed(r.z_star, 3, full), fixed(r.p_star, 3, full)])?;
            }
            finish_csv(w)
        }
    }
}

/// Which orbit table to regenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitTable {
    /// Dependent utilities, qualitative attributes only, at indifference.
    Uniform,
    /// Independent utilities with a quantitative attribute.
    Independent,
    /// Dependent utilities with a sharp quantitative attribute.
    Sharp,
}

impl OrbitTable {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            2 => Ok(Self::Uniform),
            3 => Ok(Self::Independent),
            4 => Ok(Self::Sharp),
            other => bail!("table id must be 2, 3 or 4, got {other}"),
        }
    }

    pub fn default_kmin(self) -> usize {
        match self {
            Self::Uniform => 2,
            _ => 1,
        }
    }

    fn config(self, k: usize) -> SweepConfig {
        match self {
            Self::Uniform => SweepConfig::new(k, ModelKind::Dependent, false),
            Self::Independent => SweepConfig::new(k, ModelKind::Independent, true),
            Self::Sharp => SweepConfig::new(k, ModelKind::Dependent, true),
        }
    }
}

pub struct TableArgs {
    pub table: OrbitTable,
    pub kmin: usize,
    pub kmax: usize,
    pub sigma_t_sq: Option<f64>,
    pub partial: bool,
}

#[derive(Debug, Serialize)]
struct TableRow {
    #[serde(rename = "K")]
    k: usize,
    #[serde(flatten)]
    result: OrbitResult,
}

pub fn orbit_table(args: &TableArgs, format: Format, full: bool, sink: &mut Sink) -> Result<()> {
    if args.kmax > MAX_SWEEP_ATTRIBUTES {
        bail!("--kmax {} exceeds the limit {MAX_SWEEP_ATTRIBUTES}", args.kmax);
    }
    if args.kmin == 0 || args.kmin > args.kmax {
        bail!("need 1 <= kmin <= kmax, got {}..={}", args.kmin, args.kmax);
    }
    if let Some(st) = args.sigma_t_sq {
        if args.table == OrbitTable::Uniform && st != 0.0 {
            bail!("table 2 has no quantitative attribute, so --sigma-t-sq must be 0");
        }
    }
    let mut rows = Vec::new();
    for k in args.kmin..=args.kmax {
        let mut cfg = args.table.config(k);
        cfg.sigma_t_sq = args.sigma_t_sq.unwrap_or(0.0);
        cfg.include_partial = args.partial;
        rows.extend(sweep_orbits(&cfg)?.into_iter().map(|result| TableRow { k, result }));
    }
    match format {
        Format::Json => sink.json(&rows),
        Format::Csv => {
            let mut w = sink.csv();
            w.write_record(["K", "d12", "d13", "d23", "z1", "z2", "p1", "p2", "p3", "crit", "eff", "best"])?;
            for r in &rows {
                w.write_record(csv_row(r, full))?;
            }
            finish_csv(w)
        }
    }
}

fn csv_row(r: &TableRow, full: bool) -> Vec<String> {
    let res = &r.result;
    let [d12, d13, d23] = res.depth.depths();
    let (z1, z2) = match res.z_opt {
        Some([a, b]) => (fixed(a, 2, full), fixed(b, 2, full)),
        None => (String::new(), String::new()),
    };
    let p = &res.probs.probs;
    // identical second and third alternatives share one combined entry
    let merged = res.probs.ties.iter().any(|t| t.len() == 2 && t.contains(&1) && t.contains(&2));
    let (p2, p3) = if merged {
        (format!("({})", fixed(p[1] + p[2], 3, full)), String::new())
    } else {
        (fixed(p[1], 3, full), fixed(p[2], 3, full))
    };
    vec![
        r.k.to_string(),
        d12.to_string(),
        d13.to_string(),
        d23.to_string(),
        z1,
        z2,
        fixed(p[0], 3, full),
        p2,
        p3,
        fixed(res.crit, 3, full),
        fixed(res.eff, 3, full),
        u8::from(res.best).to_string(),
    ]
}
