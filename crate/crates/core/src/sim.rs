//! Single-node repair traffic under uniform failures.
//!
//! Every node failure is enumerated, so the averages carry no sampling
//! error. Formula mode evaluates [`exact_profile`]; execute mode encodes
//! random stripes, repairs every node and counts the symbols it actually
//! downloaded.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{
    comparator_bounds, exact_profile, render_decimal, CodeName, ComparatorTable, RatioKind,
    Rational,
};
use crate::code::{encode, CodeParams, CodeShape, DataMatrix};
use crate::decode::{verify_mds, DEFAULT_PATTERN_CAP};
use crate::error::Result;
use crate::galois::GaloisField;
use crate::repair::repair_node;

pub const SIM_HEADER: &str =
    "k,r,L,rate,gamma_sys,gamma_par,gamma_all,reduction_pct,mode,consistent";
pub const SWEEP_HEADER: &str =
    "k,proposed_all,oop_data_bound,c1_data_bound,c1_par_bound,rsr1_data_bound,msr_norm";

/// One parameter set of a simulation grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridEntry {
    pub k: usize,
    pub r: usize,
    pub l: usize,
    pub m: u32,
}

impl GridEntry {
    pub fn new(k: usize, r: usize, l: usize, m: u32) -> GridEntry {
        GridEntry { k, r, l, m }
    }

    pub fn shape(&self) -> Result<CodeShape> {
        CodeShape::new(self.k + self.r, self.k, self.l)
    }
}

/// The seven parameter sets of the published repair-traffic table.
pub fn table3_grid() -> Vec<GridEntry> {
    [
        (12, 4, 3),
        (24, 4, 3),
        (36, 4, 3),
        (52, 4, 3),
        (30, 5, 3),
        (36, 6, 3),
        (48, 8, 4),
    ]
    .into_iter()
    .map(|(k, r, l)| GridEntry::new(k, r, l, 8))
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimMode {
    Formula,
    Execute,
}

impl SimMode {
    pub fn label(self) -> &'static str {
        match self {
            SimMode::Formula => "formula",
            SimMode::Execute => "execute",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub grid: Vec<GridEntry>,
    pub mode: SimMode,
    /// Random stripes per parameter set in execute mode.
    pub trials: usize,
    pub seed: u64,
    /// Run the exhaustive MDS search before executing a row.
    pub verify: bool,
    pub pattern_cap: u128,
}

impl SimConfig {
    pub fn new(grid: Vec<GridEntry>, mode: SimMode) -> SimConfig {
        SimConfig {
            grid,
            mode,
            trials: 10,
            seed: 0,
            verify: true,
            pattern_cap: DEFAULT_PATTERN_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimRow {
    pub entry: GridEntry,
    pub rate: Rational,
    pub gamma_sys: Rational,
    pub gamma_par: Rational,
    pub gamma_all: Rational,
    pub reduction: Rational,
    pub mode: SimMode,
    /// Execute mode: every measurement matched the formula and every node
    /// was rebuilt correctly. Always true in formula mode.
    pub consistent: bool,
    /// Measured per-node bandwidth, identical across trials when consistent.
    pub measured: Option<Vec<usize>>,
    pub diagnostic: Option<String>,
}

fn formula_row(entry: GridEntry) -> Result<SimRow> {
    let p = exact_profile(&entry.shape()?);
    Ok(SimRow {
        entry,
        rate: p.rate(),
        gamma_sys: p.gamma_sys,
        gamma_par: p.gamma_par,
        gamma_all: p.gamma_all,
        reduction: p.rs_reduction,
        mode: SimMode::Formula,
        consistent: true,
        measured: None,
        diagnostic: None,
    })
}

fn execute_row(config: &SimConfig, index: usize, entry: GridEntry) -> Result<SimRow> {
    let mut row = formula_row(entry)?;
    row.mode = SimMode::Execute;
    let params = CodeParams::new(
        entry.k + entry.r,
        entry.k,
        entry.l,
        GaloisField::with_degree(entry.m)?,
    )?;
    if config.verify {
        let failure = match verify_mds(&params, config.pattern_cap) {
            Ok(report) if report.is_mds() => None,
            Ok(report) => Some(format!(
                "not MDS: {} of {} erasure patterns fail, first {:?}",
                report.failures.len(),
                report.patterns_checked,
                report.failures[0].erased
            )),
            Err(e) => Some(format!("MDS verification failed: {e}")),
        };
        if let Some(msg) = failure {
            row.consistent = false;
            row.diagnostic = Some(msg);
            return Ok(row);
        }
    }

    let (k, r, n) = (params.k(), params.r(), params.n());
    let predicted = exact_profile(params.shape()).per_node;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let mut totals = vec![0usize; n];
    let mut first: Option<Vec<usize>> = None;
    let mut problems = Vec::new();
    for trial in 0..config.trials {
        let data = DataMatrix::random(&params, &mut rng);
        let stripe = encode(&params, &data)?;
        let reports = (1..=n)
            .into_par_iter()
            .map(|node| repair_node(&params, &stripe, node))
            .collect::<Result<Vec<_>>>()?;
        let measured: Vec<usize> = reports.iter().map(|rep| rep.bandwidth).collect();
        for rep in &reports {
            if rep.recovered != stripe.row(rep.failed_node) {
                problems.push(format!(
                    "trial {trial}: node {} rebuilt incorrectly",
                    rep.failed_node
                ));
            }
        }
        for (t, b) in totals.iter_mut().zip(&measured) {
            *t += b;
        }
        match &first {
            None => first = Some(measured),
            Some(f) if *f != measured => {
                problems.push(format!("trial {trial}: bandwidth depends on the data"))
            }
            _ => {}
        }
    }
    if config.trials > 0 {
        let trials = config.trials as i64;
        let kr = (k * r) as i64;
        let data: usize = totals[..k].iter().sum();
        let parity: usize = totals[k..].iter().sum();
        let gamma_sys = Rational::new(data as i64, trials * k as i64 * kr);
        let gamma_par = Rational::new(parity as i64, trials * r as i64 * kr);
        let gamma_all = Rational::new((data + parity) as i64, trials * n as i64 * kr);
        if (gamma_sys, gamma_par, gamma_all) != (row.gamma_sys, row.gamma_par, row.gamma_all) {
            problems.push("averaged ratios differ from the formula".into());
        }
        if first.as_ref() != Some(&predicted) {
            problems.push("measured bandwidth differs from the prediction".into());
        }
        row.gamma_sys = gamma_sys;
        row.gamma_par = gamma_par;
        row.gamma_all = gamma_all;
        row.reduction = Rational::from_integer(1) - gamma_all;
    }
    row.measured = first;
    row.consistent = problems.is_empty();
    if !problems.is_empty() {
        row.diagnostic = Some(problems.join("; "));
    }
    Ok(row)
}

/// Runs every grid entry; rows come back in grid order.
pub fn simulate(config: &SimConfig) -> Result<Vec<SimRow>> {
    config
        .grid
        .par_iter()
        .enumerate()
        .map(|(i, &entry)| match config.mode {
            SimMode::Formula => formula_row(entry),
            SimMode::Execute => execute_row(config, i, entry),
        })
        .collect()
}

fn csv_line(row: &SimRow) -> String {
    let e = row.entry;
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        e.k,
        e.r,
        e.l,
        render_decimal(row.rate, 3),
        render_decimal(row.gamma_sys, 4),
        render_decimal(row.gamma_par, 4),
        render_decimal(row.gamma_all, 4),
        render_decimal(row.reduction * 100, 1),
        row.mode.label(),
        row.consistent
    )
}

/// CSV with a leading `# seed=...` comment and the column header.
pub fn to_csv(rows: &[SimRow], seed: u64) -> String {
    let mut out = format!("# seed={seed}\n{SIM_HEADER}\n");
    for row in rows {
        out.push_str(&csv_line(row));
        out.push('\n');
    }
    for row in rows {
        if let Some(d) = &row.diagnostic {
            let e = row.entry;
            let _ = writeln!(out, "# ({},{},{}): {d}", e.k, e.r, e.l);
        }
    }
    out
}

/// One point of a rate sweep: the implemented code against published
/// lower bounds of related codes at the same `(k, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub r: usize,
    pub l: usize,
    pub proposed_all: Rational,
    pub bounds: ComparatorTable,
    /// MSR bound normalized by `kr`.
    pub msr_norm: Rational,
}

/// Evaluates `k` over `k_range` at fixed `r` and group count `l`.
pub fn sweep_rate(r: usize, k_range: RangeInclusive<usize>, l: usize) -> Result<Vec<SweepRow>> {
    k_range
        .map(|k| {
            let shape = CodeShape::new(k + r, k, l)?;
            Ok(SweepRow {
                k,
                r,
                l,
                proposed_all: exact_profile(&shape).gamma_all,
                bounds: comparator_bounds(Some(k), r)?,
                msr_norm: Rational::new((k + r - 1) as i64, (k * r) as i64),
            })
        })
        .collect()
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let cell = |t: &ComparatorTable, code, kind| {
        t.get(code, kind)
            .map_or(String::new(), |v| format!("{v:.6}"))
    };
    let mut out = format!("{SWEEP_HEADER}\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.k,
            render_decimal(row.proposed_all, 6),
            cell(&row.bounds, CodeName::Oop, RatioKind::Data),
            cell(&row.bounds, CodeName::C1, RatioKind::Data),
            cell(&row.bounds, CodeName::C1, RatioKind::Parity),
            cell(&row.bounds, CodeName::RsrI, RatioKind::Data),
            render_decimal(row.msr_norm, 6),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid() {
        let config = SimConfig::new(vec![], SimMode::Execute);
        assert!(simulate(&config).unwrap().is_empty());
        assert_eq!(to_csv(&[], 3), format!("# seed=3\n{SIM_HEADER}\n"));
    }

    #[test]
    fn formula_first_row() {
        let rows = simulate(&SimConfig::new(
            table3_grid()[..1].to_vec(),
            SimMode::Formula,
        ))
        .unwrap();
        assert_eq!(
            csv_line(&rows[0]),
            "12,4,3,0.750,0.7014,0.4167,0.6302,37.0,formula,true"
        );
    }

    #[test]
    fn execute_worked_example() {
        let mut config = SimConfig::new(vec![GridEntry::new(10, 4, 3, 8)], SimMode::Execute);
        config.trials = 3;
        let rows = simulate(&config).unwrap();
        assert!(rows[0].consistent, "{:?}", rows[0].diagnostic);
        assert_eq!(render_decimal(rows[0].gamma_all, 4), "0.6357");
        assert_eq!(
            rows[0].measured.as_ref().unwrap().iter().sum::<usize>(),
            356
        );
    }

    #[test]
    fn execute_flags_unverifiable_rows() {
        let mut config = SimConfig::new(vec![GridEntry::new(10, 4, 3, 8)], SimMode::Execute);
        config.pattern_cap = 100;
        let rows = simulate(&config).unwrap();
        assert!(!rows[0].consistent);
        assert!(rows[0].diagnostic.as_ref().unwrap().contains("1001"));
    }

    #[test]
    fn sweep_endpoints() {
        let rows = sweep_rate(4, 4..=52, 3).unwrap();
        assert_eq!(rows.len(), 49);
        assert_eq!(
            render_decimal(rows.last().unwrap().proposed_all, 4),
            "0.6123"
        );
        let csv = sweep_to_csv(&rows);
        assert!(csv.starts_with(SWEEP_HEADER));
        assert_eq!(csv.lines().count(), 50);
    }
}
